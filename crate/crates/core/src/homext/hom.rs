use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::abgroup::{canonicalize, AbMap, FinGenAb};
use crate::intlin::{mod_floor, IntMatrix};

/// One cyclic piece of `Hom(A, B)`: the maps sending source generator
/// `src` to multiples of `step` times target generator `dst`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPiece {
    pub dst: usize,
    pub src: usize,
    /// Order of the piece; 0 for a free piece.
    pub order: BigInt,
    pub step: BigInt,
}

/// `Hom(A, B)` as a canonical group. Each pair of generators with a
/// nontrivial `Hom(ℤ(a), ℤ(b))` contributes a cyclic piece; the carrier is
/// the canonical form of the sum of the pieces.
#[derive(Clone, Debug)]
pub struct HomGroup {
    source: FinGenAb,
    target: FinGenAb,
    pieces: Vec<HomPiece>,
    carrier: FinGenAb,
    to_canon: IntMatrix,
    from_canon: IntMatrix,
}

pub fn hom_group(a: &FinGenAb, b: &FinGenAb) -> HomGroup {
    let mut pieces = Vec::new();
    for dst in 0..b.ngens() {
        let bm = b.modulus(dst);
        for src in 0..a.ngens() {
            let am = a.modulus(src);
            let (order, step) = match (am.is_zero(), bm.is_zero()) {
                (true, true) => (BigInt::zero(), BigInt::one()),
                (false, true) => continue,
                (true, false) => (bm.clone(), BigInt::one()),
                (false, false) => {
                    let g = am.gcd(&bm);
                    let step = &bm / &g;
                    (g, step)
                }
            };
            if order.is_one() {
                continue;
            }
            pieces.push(HomPiece {
                dst,
                src,
                order,
                step,
            });
        }
    }
    let rows: Vec<Vec<(usize, BigInt)>> = pieces
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.order.is_zero())
        .map(|(k, p)| vec![(k, p.order.clone())])
        .collect();
    let c = canonicalize(&IntMatrix::from_sparse_rows(rows.len(), pieces.len(), rows));
    HomGroup {
        source: a.clone(),
        target: b.clone(),
        pieces,
        carrier: c.group,
        to_canon: c.to_canon,
        from_canon: c.from_canon,
    }
}

impl HomGroup {
    pub fn source(&self) -> &FinGenAb {
        &self.source
    }

    pub fn target(&self) -> &FinGenAb {
        &self.target
    }

    pub fn carrier(&self) -> &FinGenAb {
        &self.carrier
    }

    pub fn pieces(&self) -> &[HomPiece] {
        &self.pieces
    }

    /// Orders of the pieces (0 for free), i.e. the moduli of piece coordinates.
    pub fn piece_moduli(&self) -> Vec<BigInt> {
        self.pieces.iter().map(|p| p.order.clone()).collect()
    }

    /// Coordinates of `f` in the pieces.
    pub fn piece_coords(&self, f: &AbMap) -> Vec<BigInt> {
        debug_assert!(f.source() == &self.source && f.target() == &self.target);
        self.pieces
            .iter()
            .map(|p| {
                let v = f.matrix().get(p.dst, p.src);
                debug_assert!((&v % &p.step).is_zero(), "map is well defined");
                mod_floor(&(v / &p.step), &p.order)
            })
            .collect()
    }

    /// The map with the given piece coordinates.
    pub fn from_piece_coords(&self, x: &[BigInt]) -> AbMap {
        let mut m = IntMatrix::zeros(self.target.ngens(), self.source.ngens());
        for (p, v) in self.pieces.iter().zip(x) {
            m.set(p.dst, p.src, v * &p.step);
        }
        AbMap::new(self.source.clone(), self.target.clone(), m).expect("pieces are homomorphisms")
    }

    /// Coordinates of `f` in the canonical carrier.
    pub fn decompose(&self, f: &AbMap) -> Vec<BigInt> {
        let x = self.piece_coords(f);
        self.carrier.reduce(&self.to_canon.mul_vec(&x))
    }

    pub fn recompose(&self, y: &[BigInt]) -> AbMap {
        self.from_piece_coords(&self.from_canon.mul_vec(y))
    }

    /// Maps corresponding to the canonical generators of the carrier.
    pub fn basis(&self) -> Vec<AbMap> {
        (0..self.carrier.ngens())
            .map(|k| self.recompose(&self.carrier.generator(k)))
            .collect()
    }

    /// Maps corresponding to the pieces (one per piece, in piece order).
    pub fn piece_basis(&self) -> Vec<AbMap> {
        (0..self.pieces.len())
            .map(|k| {
                let mut x = vec![BigInt::zero(); self.pieces.len()];
                x[k] = BigInt::one();
                self.from_piece_coords(&x)
            })
            .collect()
    }

    /// `piece coordinates → carrier` as a matrix.
    pub fn to_carrier_matrix(&self) -> &IntMatrix {
        &self.to_canon
    }

    /// `carrier → piece coordinates` as a matrix.
    pub fn from_carrier_matrix(&self) -> &IntMatrix {
        &self.from_canon
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> FinGenAb {
        FinGenAb::cyclic(n)
    }

    #[test]
    fn small_hom_groups() {
        assert_eq!(hom_group(&z(4), &z(6)).carrier(), &z(2));
        let b = FinGenAb::parse("Z(2)+Z(12)+Z").unwrap();
        assert_eq!(hom_group(&z(0), &b).carrier(), &b);
        assert!(hom_group(&z(2), &z(3)).carrier().is_trivial());
        assert!(hom_group(&z(2), &z(0)).carrier().is_trivial());
        assert_eq!(hom_group(&FinGenAb::free(2), &z(0)).carrier(), &FinGenAb::free(2));
    }

    #[test]
    fn decompose_recompose() {
        let a = FinGenAb::parse("Z(2)+Z(4)").unwrap();
        let b = FinGenAb::parse("Z(4)+Z(6)").unwrap();
        let h = hom_group(&a, &b);
        for f in h.basis() {
            assert_eq!(h.recompose(&h.decompose(&f)), f);
        }
        let f = h.recompose(&h.carrier().generator(0));
        let y = h.decompose(&f);
        assert_eq!(y, h.carrier().generator(0));
        // |Hom(ℤ(2)⊕ℤ(4), ℤ(2)⊕ℤ(12))| = 2·2·2·4
        assert_eq!(h.carrier().order(), Some(BigInt::from(32)));
    }
}
