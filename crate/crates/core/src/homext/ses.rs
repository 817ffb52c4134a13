use num_bigint::BigInt;
use num_traits::Zero;

use super::ext::{ext_group, ExtClass};
use crate::abgroup::{canonicalize, direct_sum, pullback, pushout, AbMap, FinGenAb};
use crate::error::{Error, Result};
use crate::intlin::{IntMatrix, ModSolver};

/// A short exact sequence `B ↪ E ↠ A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortExactSeq {
    f: AbMap,
    g: AbMap,
}

impl ShortExactSeq {
    /// Checks that `f` is mono, `g` is epi and `image(f) = kernel(g)`.
    pub fn new(f: AbMap, g: AbMap) -> Result<Self> {
        if f.target() != g.source() {
            return Err(Error::EndpointMismatch(format!(
                "f lands in {} but g starts at {}",
                f.target(),
                g.source()
            )));
        }
        if !f.is_mono() {
            return Err(Error::NotExact("f is not injective".into()));
        }
        if !g.is_epi() {
            return Err(Error::NotExact("g is not surjective".into()));
        }
        if !g.compose(&f)?.is_zero() {
            return Err(Error::NotExact("g∘f is not zero".into()));
        }
        let kernel = ModSolver::new(g.matrix(), &g.target().moduli())?.kernel_generators();
        let image = ModSolver::new(f.matrix(), &f.target().moduli())?;
        for x in kernel {
            if image.solve(&x)?.is_none() {
                return Err(Error::NotExact("kernel of g is larger than image of f".into()));
            }
        }
        Ok(ShortExactSeq { f, g })
    }

    pub(crate) fn new_unchecked(f: AbMap, g: AbMap) -> Self {
        ShortExactSeq { f, g }
    }

    pub fn f(&self) -> &AbMap {
        &self.f
    }

    pub fn g(&self) -> &AbMap {
        &self.g
    }

    pub fn sub(&self) -> &FinGenAb {
        self.f.source()
    }

    pub fn middle(&self) -> &FinGenAb {
        self.f.target()
    }

    pub fn quotient(&self) -> &FinGenAb {
        self.g.target()
    }
}

/// The extension `B ↪ E ↠ A` of the class: `E` is generated by `B` and
/// lifts `tᵢ` of the generators of `A`, with `aᵢtᵢ = βᵢ ∈ B`.
pub fn realize(c: &ExtClass) -> ShortExactSeq {
    let (a, b) = (c.quotient(), c.sub());
    let (na, nb) = (a.ngens(), b.ngens());
    let n = nb + na;
    let mut rows: Vec<Vec<(usize, BigInt)>> = b
        .factors()
        .iter()
        .enumerate()
        .map(|(j, d)| vec![(j, d.clone())])
        .collect();
    for (i, ai) in a.factors().iter().enumerate() {
        let mut row: Vec<(usize, BigInt)> = c.coords()[i * nb..(i + 1) * nb]
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, -x))
            .collect();
        row.push((nb + i, ai.clone()));
        rows.push(row);
    }
    let canon = canonicalize(&IntMatrix::from_sparse_rows(rows.len(), n, rows));
    let e = canon.group;
    let f = AbMap::from_raw(b.clone(), e.clone(), canon.to_canon.col_block(0, nb));
    let g_naive = IntMatrix::zeros(na, nb)
        .hstack(&IntMatrix::identity(na))
        .expect("same rows");
    let g = AbMap::from_raw(e, a.clone(), &g_naive * &canon.from_canon);
    ShortExactSeq::new_unchecked(f, g)
}

/// The class of an exact sequence.
pub fn classify(s: &ShortExactSeq) -> Result<ExtClass> {
    let (a, b) = (s.quotient(), s.sub());
    let ext = ext_group(a, b);
    let lift = ModSolver::new(s.g.matrix(), &a.moduli())?;
    let back = ModSolver::new(s.f.matrix(), &s.middle().moduli())?;
    // column i: a lift of the torsion generator i, then aᵢ times it
    let nt = a.torsion_gens();
    let gens = IntMatrix::identity(a.ngens()).col_block(0, nt);
    let y = lift
        .solve_matrix(&gens)?
        .ok_or_else(|| Error::NotExact("g is not surjective".into()))?;
    let ay = &y * &IntMatrix::diagonal(a.factors());
    let x = back
        .solve_matrix(&ay)?
        .ok_or_else(|| Error::NotExact("kernel of g is larger than image of f".into()))?;
    let coords: Vec<BigInt> = x.transpose().to_dense().into_iter().flatten().collect();
    Ok(ExtClass::from_reduced(a.clone(), b.clone(), ext.reduce(&coords)))
}

/// Pullback of the sequence along `h: A' → A`.
pub fn pullback_seq(s: &ShortExactSeq, h: &AbMap) -> Result<ShortExactSeq> {
    let p = pullback(&s.g, h)?;
    let zero = AbMap::zero(s.sub(), h.source());
    let f = p.mediator(&s.f, &zero)?;
    Ok(ShortExactSeq::new_unchecked(f, p.leg_c.clone()))
}

/// Pushout of the sequence along `k: B → B'`.
pub fn pushout_seq(s: &ShortExactSeq, k: &AbMap) -> Result<ShortExactSeq> {
    let p = pushout(&s.f, k)?;
    let zero = AbMap::zero(k.target(), s.quotient());
    let g = p.mediator(&s.g, &zero)?;
    Ok(ShortExactSeq::new_unchecked(p.leg_c.clone(), g))
}

/// `⊕ sᵢ: ⊕ Bᵢ ↪ ⊕ Eᵢ ↠ ⊕ Aᵢ`.
pub fn direct_sum_seq(seqs: &[ShortExactSeq]) -> Result<ShortExactSeq> {
    let subs: Vec<FinGenAb> = seqs.iter().map(|s| s.sub().clone()).collect();
    let mids: Vec<FinGenAb> = seqs.iter().map(|s| s.middle().clone()).collect();
    let quots: Vec<FinGenAb> = seqs.iter().map(|s| s.quotient().clone()).collect();
    let (sb, se, sa) = (direct_sum(&subs), direct_sum(&mids), direct_sum(&quots));
    let fs: Vec<AbMap> = seqs.iter().map(|s| s.f.clone()).collect();
    let gs: Vec<AbMap> = seqs.iter().map(|s| s.g.clone()).collect();
    Ok(ShortExactSeq::new_unchecked(
        sb.sum_map(&se, &fs)?,
        se.sum_map(&sa, &gs)?,
    ))
}

/// Baer sum by the classical construction: pull `s₁ ⊕ s₂` back along the
/// diagonal of `A` and push it out along the codiagonal of `B`.
pub fn baer_sum_geometric(s1: &ShortExactSeq, s2: &ShortExactSeq) -> Result<ShortExactSeq> {
    if s1.sub() != s2.sub() || s1.quotient() != s2.quotient() {
        return Err(Error::EndpointMismatch("sequences have different ends".into()));
    }
    let sum = direct_sum_seq(&[s1.clone(), s2.clone()])?;
    let delta = direct_sum(&[s1.quotient().clone(), s1.quotient().clone()]).diagonal()?;
    let nabla = direct_sum(&[s1.sub().clone(), s1.sub().clone()]).codiagonal()?;
    pushout_seq(&pullback_seq(&sum, &delta)?, &nabla)
}

/// A middle map `φ: E₁ → E₂` with `φ∘f₁ = f₂` and `g₂∘φ = g₁`, if the
/// sequences are equivalent. Any such map is an isomorphism.
///
/// The entries of `φ` are the unknowns of one linear system whose rows carry
/// their own moduli: the two commuting squares and well-definedness of `φ`.
pub fn equivalence(s1: &ShortExactSeq, s2: &ShortExactSeq) -> Result<Option<AbMap>> {
    if s1.sub() != s2.sub() || s1.quotient() != s2.quotient() {
        return Err(Error::EndpointMismatch("sequences have different ends".into()));
    }
    let (e1, e2, a) = (s1.middle(), s2.middle(), s1.quotient());
    let (n1, n2, nb, na) = (e1.ngens(), e2.ngens(), s1.sub().ngens(), a.ngens());
    let var = |r: usize, i: usize| r * n1 + i;
    let mut rows: Vec<Vec<(usize, BigInt)>> = Vec::new();
    let mut rhs = Vec::new();
    let mut moduli = Vec::new();
    // φ∘f₁ = f₂, one row per (r, b)
    for r in 0..n2 {
        for bcol in 0..nb {
            let row: Vec<(usize, BigInt)> = s1
                .f
                .matrix()
                .column(bcol)
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (var(r, i), v))
                .collect();
            rows.push(row);
            rhs.push(s2.f.matrix().get(r, bcol));
            moduli.push(e2.modulus(r));
        }
    }
    // well-definedness: dᵢ·φ[r][i] ≡ 0 mod mᵣ
    for r in 0..n2 {
        for i in 0..n1 {
            let d = e1.modulus(i);
            if d.is_zero() {
                continue;
            }
            rows.push(vec![(var(r, i), d)]);
            rhs.push(BigInt::zero());
            moduli.push(e2.modulus(r));
        }
    }
    // g₂∘φ = g₁, one row per (s, i)
    for s in 0..na {
        for i in 0..n1 {
            let row: Vec<(usize, BigInt)> = s2
                .g
                .matrix()
                .row_entries(s)
                .iter()
                .map(|(r, v)| (var(*r, i), v.clone()))
                .collect();
            rows.push(row);
            rhs.push(s1.g.matrix().get(s, i));
            moduli.push(a.modulus(s));
        }
    }
    let system = IntMatrix::from_sparse_rows(rows.len(), n1 * n2, rows);
    let Some(x) = ModSolver::new(&system, &moduli)?.solve(&rhs)? else {
        return Ok(None);
    };
    let dense: Vec<Vec<BigInt>> = x.chunks(n1.max(1)).take(n2).map(|c| c.to_vec()).collect();
    let phi = if n1 == 0 {
        IntMatrix::zeros(n2, 0)
    } else {
        IntMatrix::from_dense(dense, n1)?
    };
    let phi = AbMap::new(e1.clone(), e2.clone(), phi)?;
    debug_assert!(phi.is_iso());
    Ok(Some(phi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> FinGenAb {
        FinGenAb::cyclic(n)
    }

    fn class(a: &FinGenAb, b: &FinGenAb, c: &[i64]) -> ExtClass {
        ExtClass::new(a.clone(), b.clone(), c.iter().map(|&x| BigInt::from(x)).collect()).unwrap()
    }

    #[test]
    fn realize_small_classes() {
        let split = realize(&class(&z(2), &z(2), &[0]));
        assert_eq!(split.middle(), &FinGenAb::parse("Z(2)^2").unwrap());
        let nonsplit = realize(&class(&z(2), &z(2), &[1]));
        assert_eq!(nonsplit.middle(), &z(4));
        let s = realize(&class(&z(2), &z(0), &[1]));
        assert_eq!(s.middle(), &z(0));
        assert_eq!(s.f(), &AbMap::multiplication(&z(0), 2));
        for s in [split, nonsplit, s] {
            assert!(ShortExactSeq::new(s.f().clone(), s.g().clone()).is_ok());
        }
    }

    #[test]
    fn classify_known_sequences() {
        let times2 = ShortExactSeq::new(
            AbMap::multiplication(&z(0), 2),
            AbMap::new(z(0), z(2), IntMatrix::from_i64(&[&[1]])).unwrap(),
        )
        .unwrap();
        assert_eq!(classify(&times2).unwrap(), class(&z(2), &z(0), &[1]));
        let z4 = ShortExactSeq::new(
            AbMap::new(z(2), z(4), IntMatrix::from_i64(&[&[2]])).unwrap(),
            AbMap::new(z(4), z(2), IntMatrix::from_i64(&[&[1]])).unwrap(),
        )
        .unwrap();
        assert!(!classify(&z4).unwrap().is_split());
        let sum = direct_sum(&[z(2), z(2)]);
        let split = ShortExactSeq::new(sum.injection(0), sum.projection(1)).unwrap();
        assert!(classify(&split).unwrap().is_split());
    }

    #[test]
    fn rejects_non_exact() {
        let f = AbMap::new(z(2), z(4), IntMatrix::from_i64(&[&[2]])).unwrap();
        let zero = AbMap::zero(&z(4), &z(2));
        assert!(matches!(ShortExactSeq::new(f, zero), Err(Error::NotExact(_))));
        let f = AbMap::zero(&FinGenAb::zero(), &z(4));
        let g = AbMap::new(z(4), z(2), IntMatrix::from_i64(&[&[1]])).unwrap();
        assert!(ShortExactSeq::new(f, g).is_err());
    }

    #[test]
    fn roundtrip_and_equivalence() {
        let a = FinGenAb::parse("Z(2)+Z(4)").unwrap();
        let b = FinGenAb::parse("Z(4)+Z").unwrap();
        let e = ext_group(&a, &b);
        for c in e.enumerate(1 << 10).unwrap() {
            let s = realize(&c);
            assert_eq!(classify(&s).unwrap(), c);
            assert!(equivalence(&s, &s).unwrap().is_some());
        }
        let s1 = realize(&class(&z(2), &z(2), &[0]));
        let s2 = realize(&class(&z(2), &z(2), &[1]));
        assert!(equivalence(&s1, &s2).unwrap().is_none());
    }

    #[test]
    fn geometric_operations_match_coordinates() {
        let c = class(&z(4), &z(4), &[1]);
        let s = realize(&c);
        let sum = baer_sum_geometric(&s, &s).unwrap();
        assert_eq!(classify(&sum).unwrap(), class(&z(4), &z(4), &[2]));
        let i = AbMap::new(z(2), z(4), IntMatrix::from_i64(&[&[2]])).unwrap();
        let pb = pullback_seq(&s, &i).unwrap();
        assert_eq!(classify(&pb).unwrap(), super::super::pullback_action(&c, &i).unwrap());
        let k = AbMap::new(z(4), z(8), IntMatrix::from_i64(&[&[2]])).unwrap();
        let po = pushout_seq(&s, &k).unwrap();
        assert_eq!(classify(&po).unwrap(), super::super::pushout_action(&c, &k).unwrap());
    }
}
