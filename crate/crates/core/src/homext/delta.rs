use num_bigint::BigInt;
use num_traits::Zero;

use super::ext::{ext_group, ExtClass, ExtGroup};
use super::hom::{hom_group, HomGroup};
use super::ses::{classify, ShortExactSeq};
use crate::abgroup::{AbMap, FinGenAb};
use crate::error::{Error, Result};
use crate::intlin::{IntMatrix, Lattice, ModSolver};

/// A connecting morphism with the groups it is expressed against.
#[derive(Clone, Debug)]
pub struct ConnectingHom {
    pub hom: HomGroup,
    pub ext: ExtGroup,
    /// `hom.carrier() → ext.group()`.
    pub map: AbMap,
    /// The same map on piece coordinates → class coordinates.
    pub piece_matrix: IntMatrix,
}

impl ConnectingHom {
    fn assemble(hom: HomGroup, ext: ExtGroup, piece_matrix: IntMatrix) -> Self {
        let m = &(ext.to_canon() * &piece_matrix) * hom.from_carrier_matrix();
        let map = AbMap::from_raw(hom.carrier().clone(), ext.group().clone(), m);
        ConnectingHom {
            hom,
            ext,
            map,
            piece_matrix,
        }
    }

    pub fn is_surjective(&self) -> bool {
        self.map.is_epi()
    }
}

/// `δ: Hom(T, A) → Ext¹(T, B)`, `h ↦ η·h`, for `η: B ↪ E ↠ A`.
pub fn connecting_hom(s: &ShortExactSeq, t: &FinGenAb) -> Result<ConnectingHom> {
    let eta = classify(s)?;
    Ok(connecting_hom_of_class(&eta, t))
}

/// `δ` computed from the class alone.
pub fn connecting_hom_of_class(eta: &ExtClass, t: &FinGenAb) -> ConnectingHom {
    let (a, b) = (eta.quotient(), eta.sub());
    let hom = hom_group(t, a);
    let ext = ext_group(t, b);
    let nb = b.ngens();
    let mut rows: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); ext.len()];
    for (col, piece) in hom.pieces().iter().enumerate() {
        // the piece is step·E[k][i]; only torsion i and torsion k contribute
        let (k, i) = (piece.dst, piece.src);
        if i >= t.torsion_gens() || k >= a.torsion_gens() {
            continue;
        }
        let coef = &t.factors()[i] * &piece.step / &a.factors()[k];
        for j in 0..nb {
            let v = &coef * &eta.coords()[k * nb + j];
            if !v.is_zero() {
                rows[i * nb + j].push((col, v));
            }
        }
    }
    let m = IntMatrix::from_sparse_rows(ext.len(), hom.pieces().len(), rows);
    ConnectingHom::assemble(hom, ext, m)
}

/// The contravariant connecting morphism `Hom(B, T) → Ext¹(A, T)`,
/// `h ↦ h·η`, for `η: B ↪ E ↠ A`.
pub fn connecting_hom_dual(s: &ShortExactSeq, t: &FinGenAb) -> Result<ConnectingHom> {
    let eta = classify(s)?;
    Ok(connecting_hom_dual_of_class(&eta, t))
}

pub fn connecting_hom_dual_of_class(eta: &ExtClass, t: &FinGenAb) -> ConnectingHom {
    let (a, b) = (eta.quotient(), eta.sub());
    let hom = hom_group(b, t);
    let ext = ext_group(a, t);
    let (nb, nt) = (b.ngens(), t.ngens());
    let mut rows: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); ext.len()];
    for (col, piece) in hom.pieces().iter().enumerate() {
        // the piece is step·E[j][l]: coordinate l of each βᵢ moves to j
        let (j, l) = (piece.dst, piece.src);
        for i in 0..a.torsion_gens() {
            let v = &piece.step * &eta.coords()[i * nb + l];
            if !v.is_zero() {
                rows[i * nt + j].push((col, v));
            }
        }
    }
    let m = IntMatrix::from_sparse_rows(ext.len(), hom.pieces().len(), rows);
    ConnectingHom::assemble(hom, ext, m)
}

fn canonical_ext_map(from: &ExtGroup, to: &ExtGroup, naive: &IntMatrix) -> AbMap {
    let m = &(to.to_canon() * naive) * from.from_canon();
    AbMap::from_raw(from.group().clone(), to.group().clone(), m)
}

/// `Ext¹(T, k): Ext¹(T, B) → Ext¹(T, B')` on class coordinates.
pub fn ext_map_covariant_matrix(t: &FinGenAb, k: &AbMap) -> IntMatrix {
    let blocks: Vec<&IntMatrix> = vec![k.matrix(); t.torsion_gens()];
    IntMatrix::block_diagonal(&blocks)
}

/// `Ext¹(T, k)` for `k: B → B'` as a map of canonical groups.
pub fn ext_map_covariant(t: &FinGenAb, k: &AbMap) -> AbMap {
    let from = ext_group(t, k.source());
    let to = ext_group(t, k.target());
    canonical_ext_map(&from, &to, &ext_map_covariant_matrix(t, k))
}

/// `Ext¹(h, T): Ext¹(A, T) → Ext¹(A', T)` on class coordinates, for
/// `h: A' → A`.
pub fn ext_map_contravariant_matrix(h: &AbMap, t: &FinGenAb) -> IntMatrix {
    let (a_new, a) = (h.source(), h.target());
    let nt = t.ngens();
    let ht = h.matrix().transpose();
    let mut rows: Vec<Vec<(usize, BigInt)>> = Vec::with_capacity(a_new.torsion_gens() * nt);
    for (i, ai) in a_new.factors().iter().enumerate() {
        let coefs: Vec<(usize, BigInt)> = ht
            .row_entries(i)
            .iter()
            .filter(|(k, _)| *k < a.torsion_gens())
            .map(|(k, v)| (*k, ai * v / &a.factors()[*k]))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for j in 0..nt {
            rows.push(coefs.iter().map(|(k, c)| (k * nt + j, c.clone())).collect());
        }
    }
    IntMatrix::from_sparse_rows(rows.len(), a.torsion_gens() * nt, rows)
}

/// `Ext¹(h, T)` for `h: A' → A` as a map of canonical groups.
pub fn ext_map_contravariant(h: &AbMap, t: &FinGenAb) -> AbMap {
    let from = ext_group(h.target(), t);
    let to = ext_group(h.source(), t);
    canonical_ext_map(&from, &to, &ext_map_contravariant_matrix(h, t))
}

/// Exactness of `Hom(T, E) → Hom(T, A) → Ext¹(T, B)` at `Hom(T, A)`,
/// decided as equality of lattices in piece coordinates.
pub fn les_exact_at_hom(s: &ShortExactSeq, t: &FinGenAb) -> Result<bool> {
    let delta = connecting_hom(s, t)?;
    let hom_ta = &delta.hom;
    let moduli = hom_ta.piece_moduli();
    let n = moduli.len();
    let relations = Lattice::diagonal(&moduli);

    let hom_te = hom_group(t, s.middle());
    let images: Vec<Vec<BigInt>> = hom_te
        .piece_basis()
        .iter()
        .map(|phi| Ok(hom_ta.piece_coords(&s.g().compose(phi)?)))
        .collect::<Result<_>>()?;
    let image = Lattice::from_generators(n, &images).join(&relations);

    let kernel = ModSolver::new(&delta.piece_matrix, delta.ext.moduli())?.kernel_generators();
    let kernel = Lattice::from_generators(n, &kernel).join(&relations);
    Ok(image == kernel)
}

/// `η·γ` for every `γ` in a list, checked against the action directly.
pub fn check_pullbacks(eta: &ExtClass, maps: &[AbMap]) -> Result<Vec<ExtClass>> {
    maps.iter()
        .map(|h| {
            if h.target() != eta.quotient() {
                return Err(Error::EndpointMismatch("map does not land in the quotient".into()));
            }
            super::ext::pullback_action(eta, h)
        })
        .collect()
}
