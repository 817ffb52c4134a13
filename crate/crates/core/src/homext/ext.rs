use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::abgroup::{canonicalize, odometer, AbMap, FinGenAb};
use crate::error::{Error, Result};
use crate::intlin::{mod_floor, IntMatrix};

/// Indexing data for `Ext¹(A, B)`.
///
/// With `A = ℤʳ ⊕ ⊕ᵢ ℤ(aᵢ)` and `B` with generator moduli `bⱼ`, the group is
/// `⊕ᵢ B/aᵢB = ⊕ᵢⱼ ℤ(gcd(aᵢ, bⱼ))`. Class coordinates are indexed by
/// `(i, j)` row-major; components with `gcd = 1` are kept (always zero) so
/// indices stay regular.
#[derive(Clone, Debug)]
pub struct ExtGroup {
    a: FinGenAb,
    b: FinGenAb,
    moduli: Vec<BigInt>,
    group: FinGenAb,
    to_canon: IntMatrix,
    from_canon: IntMatrix,
}

pub fn ext_group(a: &FinGenAb, b: &FinGenAb) -> ExtGroup {
    let bm = b.moduli();
    let mut moduli = Vec::with_capacity(a.torsion_gens() * bm.len());
    for ai in a.factors() {
        for bj in &bm {
            moduli.push(ai.gcd(bj));
        }
    }
    let rows: Vec<Vec<(usize, BigInt)>> = moduli
        .iter()
        .enumerate()
        .map(|(k, m)| vec![(k, m.clone())])
        .collect();
    let c = canonicalize(&IntMatrix::from_sparse_rows(rows.len(), moduli.len(), rows));
    ExtGroup {
        a: a.clone(),
        b: b.clone(),
        moduli,
        group: c.group,
        to_canon: c.to_canon,
        from_canon: c.from_canon,
    }
}

impl ExtGroup {
    pub fn quotient(&self) -> &FinGenAb {
        &self.a
    }

    pub fn sub(&self) -> &FinGenAb {
        &self.b
    }

    /// The canonical form of the group.
    pub fn group(&self) -> &FinGenAb {
        &self.group
    }

    /// Moduli of the class coordinates.
    pub fn moduli(&self) -> &[BigInt] {
        &self.moduli
    }

    pub fn len(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moduli.is_empty()
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.b.ngens() + j
    }

    pub fn reduce(&self, coords: &[BigInt]) -> Vec<BigInt> {
        coords
            .iter()
            .zip(&self.moduli)
            .map(|(x, m)| mod_floor(x, m))
            .collect()
    }

    /// Class coordinates → element of the canonical group.
    pub fn to_element(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.group.reduce(&self.to_canon.mul_vec(coords))
    }

    /// Element of the canonical group → class coordinates.
    pub fn from_element(&self, y: &[BigInt]) -> Vec<BigInt> {
        self.reduce(&self.from_canon.mul_vec(y))
    }

    pub fn to_canon(&self) -> &IntMatrix {
        &self.to_canon
    }

    pub fn from_canon(&self) -> &IntMatrix {
        &self.from_canon
    }

    pub fn zero(&self) -> ExtClass {
        ExtClass {
            a: self.a.clone(),
            b: self.b.clone(),
            coords: vec![BigInt::zero(); self.len()],
        }
    }

    pub fn class(&self, coords: &[BigInt]) -> Result<ExtClass> {
        ExtClass::new(self.a.clone(), self.b.clone(), coords.to_vec())
    }

    /// All classes in lexicographic order of their coordinates, refusing
    /// groups with more than `budget` elements.
    pub fn enumerate(&self, budget: u64) -> Result<Vec<ExtClass>> {
        let order = self.group.order().expect("Ext of finitely generated groups is finite");
        if order > BigInt::from(budget) {
            return Err(Error::Unsupported(format!(
                "Ext group of order {} exceeds the enumeration budget {}",
                order, budget
            )));
        }
        Ok(odometer(&self.moduli)
            .into_iter()
            .map(|coords| ExtClass {
                a: self.a.clone(),
                b: self.b.clone(),
                coords,
            })
            .collect())
    }
}

/// An element of `Ext¹(A, B)`: extensions `B ↪ E ↠ A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtClass {
    a: FinGenAb,
    b: FinGenAb,
    coords: Vec<BigInt>,
}

impl ExtClass {
    pub fn new(a: FinGenAb, b: FinGenAb, coords: Vec<BigInt>) -> Result<Self> {
        let e = ext_group(&a, &b);
        if coords.len() != e.len() {
            return Err(Error::InvalidClass(format!(
                "{} coordinates given, Ext({}, {}) has {}",
                coords.len(),
                a,
                b,
                e.len()
            )));
        }
        let coords = e.reduce(&coords);
        Ok(ExtClass { a, b, coords })
    }

    pub(crate) fn from_reduced(a: FinGenAb, b: FinGenAb, coords: Vec<BigInt>) -> Self {
        ExtClass { a, b, coords }
    }

    pub fn zero(a: &FinGenAb, b: &FinGenAb) -> Self {
        ext_group(a, b).zero()
    }

    /// The quotient end `A`.
    pub fn quotient(&self) -> &FinGenAb {
        &self.a
    }

    /// The sub end `B`.
    pub fn sub(&self) -> &FinGenAb {
        &self.b
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_split(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn same_ends(&self, other: &ExtClass) -> Result<()> {
        if self.a != other.a || self.b != other.b {
            return Err(Error::EndpointMismatch(format!(
                "Ext({}, {}) versus Ext({}, {})",
                self.a, self.b, other.a, other.b
            )));
        }
        Ok(())
    }

    fn moduli(&self) -> Vec<BigInt> {
        let bm = self.b.moduli();
        self.a
            .factors()
            .iter()
            .flat_map(|ai| bm.iter().map(move |bj| ai.gcd(bj)))
            .collect()
    }
}

pub fn baer_sum(c1: &ExtClass, c2: &ExtClass) -> Result<ExtClass> {
    c1.same_ends(c2)?;
    let coords = c1
        .coords
        .iter()
        .zip(&c2.coords)
        .zip(c1.moduli())
        .map(|((x, y), m)| mod_floor(&(x + y), &m))
        .collect();
    Ok(ExtClass::from_reduced(c1.a.clone(), c1.b.clone(), coords))
}

pub fn negate(c: &ExtClass) -> ExtClass {
    let coords = c
        .coords
        .iter()
        .zip(c.moduli())
        .map(|(x, m)| mod_floor(&-x, &m))
        .collect();
    ExtClass::from_reduced(c.a.clone(), c.b.clone(), coords)
}

/// `η·h` for `h: A' → A`: pull the extension back to an extension of `A'`.
///
/// If `aₖtₖ = βₖ` in the middle and `h` sends generator `i` of `A'` (order
/// `a'`) to `Σₖ hₖᵢ eₖ`, then `a'·Σₖ hₖᵢ tₖ = Σₖ (a'hₖᵢ/aₖ) βₖ`, which
/// is the new coordinate row `i`.
pub fn pullback_action(c: &ExtClass, h: &AbMap) -> Result<ExtClass> {
    if h.target() != &c.a {
        return Err(Error::EndpointMismatch(format!(
            "cannot pull back Ext({}, {}) along a map into {}",
            c.a,
            c.b,
            h.target()
        )));
    }
    let target = ext_group(h.source(), &c.b);
    let nb = c.b.ngens();
    let ht = h.matrix().transpose();
    let mut coords = vec![BigInt::zero(); target.len()];
    for (i, a_new) in h.source().factors().iter().enumerate() {
        let out = &mut coords[i * nb..(i + 1) * nb];
        for (k, hki) in ht.row_entries(i) {
            if *k >= c.a.torsion_gens() {
                continue;
            }
            let ak = &c.a.factors()[*k];
            let coef = a_new * hki / ak;
            if coef.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += &coef * &c.coords[k * nb + j];
            }
        }
    }
    Ok(ExtClass::from_reduced(
        h.source().clone(),
        c.b.clone(),
        target.reduce(&coords),
    ))
}

/// `k·η` for `k: B → B'`: push the extension out along `k`.
pub fn pushout_action(c: &ExtClass, k: &AbMap) -> Result<ExtClass> {
    if k.source() != &c.b {
        return Err(Error::EndpointMismatch(format!(
            "cannot push Ext({}, {}) out along a map from {}",
            c.a,
            c.b,
            k.source()
        )));
    }
    let target = ext_group(&c.a, k.target());
    let (nb, nb2) = (c.b.ngens(), k.target().ngens());
    let mut coords = Vec::with_capacity(target.len());
    for i in 0..c.a.torsion_gens() {
        coords.extend(k.matrix().mul_vec(&c.coords[i * nb..(i + 1) * nb]));
    }
    debug_assert_eq!(coords.len(), c.a.torsion_gens() * nb2);
    Ok(ExtClass::from_reduced(
        c.a.clone(),
        k.target().clone(),
        target.reduce(&coords),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> FinGenAb {
        FinGenAb::cyclic(n)
    }

    fn class(a: u64, b: u64, c: &[i64]) -> ExtClass {
        ExtClass::new(z(a), z(b), c.iter().map(|&x| BigInt::from(x)).collect()).unwrap()
    }

    #[test]
    fn groups() {
        assert!(ext_group(&z(0), &z(6)).group().is_trivial());
        assert_eq!(ext_group(&z(4), &z(6)).group(), &z(2));
        assert_eq!(ext_group(&z(4), &z(12)).group(), &z(4));
        assert_eq!(ext_group(&z(3), &z(0)).group(), &z(3));
        assert_eq!(ext_group(&z(2), &z(3)).group(), &FinGenAb::zero());
    }

    #[test]
    fn baer_laws() {
        let c = class(4, 4, &[1]);
        let zero = ExtClass::zero(&z(4), &z(4));
        assert_eq!(baer_sum(&c, &zero).unwrap(), c);
        assert!(baer_sum(&c, &negate(&c)).unwrap().is_split());
        assert_eq!(baer_sum(&c, &c).unwrap(), class(4, 4, &[2]));
        assert!(baer_sum(&c, &class(2, 4, &[1])).is_err());
    }

    #[test]
    fn actions() {
        let c = class(2, 2, &[1]);
        assert_eq!(pullback_action(&c, &AbMap::identity(&z(2))).unwrap(), c);
        assert_eq!(pushout_action(&c, &AbMap::identity(&z(2))).unwrap(), c);
        assert!(pullback_action(&c, &AbMap::zero(&z(2), &z(2))).unwrap().is_split());
        // ℤ(4) → ℤ(2) reduction: pulls the nonsplit class to 2 ∈ ℤ(2) = 0
        let r = AbMap::new(z(4), z(2), IntMatrix::from_i64(&[&[1]])).unwrap();
        assert!(pullback_action(&c, &r).unwrap().is_split());
        // ℤ(2) → ℤ(4), 1 ↦ 2, pulls the generator of Ext(ℤ(4), ℤ(4)) to 1
        let i = AbMap::new(z(2), z(4), IntMatrix::from_i64(&[&[2]])).unwrap();
        assert_eq!(pullback_action(&class(4, 4, &[1]), &i).unwrap(), class(2, 4, &[1]));
        // ×2 on ℤ(4) acts as zero on Ext(ℤ(2), ℤ(4)) = ℤ(2)
        let two = AbMap::multiplication(&z(4), 2);
        assert!(pushout_action(&class(2, 4, &[1]), &two).unwrap().is_split());
    }

    #[test]
    fn enumeration_order() {
        let e = ext_group(&FinGenAb::parse("Z(2)^2").unwrap(), &z(2));
        let all = e.enumerate(16).unwrap();
        assert_eq!(all.len(), 4);
        assert!(all[0].is_split());
        assert_eq!(all[1].coords(), &[BigInt::zero(), BigInt::from(1)]);
        assert!(e.enumerate(3).is_err());
    }
}
