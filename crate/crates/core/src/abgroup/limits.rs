use super::map::cokernel_with_section;
use super::{direct_sum, kernel, AbMap, FinGenAb, SumDiagram};
use crate::error::{Error, Result};
use crate::intlin::IntMatrix;

/// Pushout of a span `B ←f− A −g→ C`, presented as the cokernel of
/// `(f, −g): A → B ⊕ C`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub object: FinGenAb,
    /// `B → P`.
    pub leg_b: AbMap,
    /// `C → P`.
    pub leg_c: AbMap,
    f: AbMap,
    g: AbMap,
    sum: SumDiagram,
    section: IntMatrix,
}

pub fn pushout(f: &AbMap, g: &AbMap) -> Result<Pushout> {
    if f.source() != g.source() {
        return Err(Error::EndpointMismatch(format!(
            "span legs start at {} and {}",
            f.source(),
            g.source()
        )));
    }
    let sum = direct_sum(&[f.target().clone(), g.target().clone()]);
    let phi = sum.pair(f.source(), &[f.clone(), g.neg()])?;
    let (object, q, section) = cokernel_with_section(&phi);
    Ok(Pushout {
        leg_b: q.compose(&sum.injection(0))?,
        leg_c: q.compose(&sum.injection(1))?,
        object,
        f: f.clone(),
        g: g.clone(),
        sum,
        section,
    })
}

impl Pushout {
    /// The unique `m: P → T` with `m∘leg_b = u` and `m∘leg_c = v`, for a
    /// cocone `u∘f = v∘g`.
    pub fn mediator(&self, u: &AbMap, v: &AbMap) -> Result<AbMap> {
        if u.compose(&self.f)? != v.compose(&self.g)? {
            return Err(Error::InvalidInput("test maps do not form a cocone".into()));
        }
        let w = self.sum.copair(u.target(), &[u.clone(), v.clone()])?;
        Ok(AbMap::from_raw(
            self.object.clone(),
            u.target().clone(),
            w.matrix() * &self.section,
        ))
    }

    /// `B ⊕ C → P`.
    pub fn projection(&self) -> Result<AbMap> {
        self.sum
            .copair(&self.object, &[self.leg_b.clone(), self.leg_c.clone()])
    }

    pub fn sum(&self) -> &SumDiagram {
        &self.sum
    }
}

/// Pullback of a cospan `B −f→ A ←g− C`, presented as the kernel of
/// `(f, −g): B ⊕ C → A`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub object: FinGenAb,
    /// `P → B`.
    pub leg_b: AbMap,
    /// `P → C`.
    pub leg_c: AbMap,
    f: AbMap,
    g: AbMap,
    sum: SumDiagram,
    inclusion: AbMap,
}

pub fn pullback(f: &AbMap, g: &AbMap) -> Result<Pullback> {
    if f.target() != g.target() {
        return Err(Error::EndpointMismatch(format!(
            "cospan legs end at {} and {}",
            f.target(),
            g.target()
        )));
    }
    let sum = direct_sum(&[f.source().clone(), g.source().clone()]);
    let phi = sum.copair(f.target(), &[f.clone(), g.neg()])?;
    let (object, inclusion) = kernel(&phi);
    Ok(Pullback {
        leg_b: sum.projection(0).compose(&inclusion)?,
        leg_c: sum.projection(1).compose(&inclusion)?,
        object,
        f: f.clone(),
        g: g.clone(),
        sum,
        inclusion,
    })
}

impl Pullback {
    /// The unique `m: T → P` with `leg_b∘m = u` and `leg_c∘m = v`, for a
    /// cone `f∘u = g∘v`.
    pub fn mediator(&self, u: &AbMap, v: &AbMap) -> Result<AbMap> {
        if self.f.compose(u)? != self.g.compose(v)? {
            return Err(Error::InvalidInput("test maps do not form a cone".into()));
        }
        let w = self.sum.pair(u.source(), &[u.clone(), v.clone()])?;
        self.inclusion
            .lift_through(&w)?
            .ok_or_else(|| Error::Inconsistent("cone does not lift into the pullback".into()))
    }

    /// `P → B ⊕ C`.
    pub fn inclusion(&self) -> &AbMap {
        &self.inclusion
    }

    pub fn sum(&self) -> &SumDiagram {
        &self.sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn z(n: u64) -> FinGenAb {
        FinGenAb::cyclic(n)
    }

    #[test]
    fn trivial_pushout() {
        let id = AbMap::identity(&z(2));
        let p = pushout(&id, &id).unwrap();
        assert_eq!(p.object, z(2));
        assert_eq!(p.leg_b.compose(&id).unwrap(), p.leg_c.compose(&id).unwrap());
    }

    #[test]
    fn pushout_along_inclusion() {
        let id = AbMap::identity(&z(2));
        let incl = AbMap::new(z(2), z(4), IntMatrix::from_i64(&[&[2]])).unwrap();
        let p = pushout(&id, &incl).unwrap();
        // |B ⊕ C| / |A| = 2·4 / 2
        assert_eq!(p.object.order(), Some(BigInt::from(4)));
        assert_eq!(p.object, z(4));
        // cocone into ℤ(8): u = 1 ↦ 4, v = 1 ↦ 2
        let u = AbMap::new(z(2), z(8), IntMatrix::from_i64(&[&[4]])).unwrap();
        let v = AbMap::new(z(4), z(8), IntMatrix::from_i64(&[&[2]])).unwrap();
        let m = p.mediator(&u, &v).unwrap();
        assert_eq!(m.compose(&p.leg_b).unwrap(), u);
        assert_eq!(m.compose(&p.leg_c).unwrap(), v);
        let q = p.projection().unwrap();
        assert!(q.annihilating_maps(&z(8)).unwrap().is_empty());
        assert_eq!(q.factor_through(&p.sum().copair(&z(8), &[u, v]).unwrap()).unwrap().unwrap(), m);
    }

    #[test]
    fn pushout_rejects_non_cocone() {
        let id = AbMap::identity(&z(2));
        let p = pushout(&id, &id).unwrap();
        let zero = AbMap::zero(&z(2), &z(2));
        assert!(p.mediator(&id, &zero).is_err());
    }

    #[test]
    fn trivial_pullback() {
        let id = AbMap::identity(&z(2));
        let p = pullback(&id, &id).unwrap();
        assert_eq!(p.object, z(2));
        let m = p.mediator(&id, &id).unwrap();
        assert_eq!(p.leg_b.compose(&m).unwrap(), id);
    }

    #[test]
    fn pullback_of_reductions() {
        // ℤ(4) → ℤ(2) ← ℤ(4): pairs with equal parity, order 8
        let r = AbMap::new(z(4), z(2), IntMatrix::from_i64(&[&[1]])).unwrap();
        let p = pullback(&r, &r).unwrap();
        assert_eq!(p.object.order(), Some(BigInt::from(8)));
        let id = AbMap::identity(&z(4));
        let m = p.mediator(&id, &id).unwrap();
        assert_eq!(p.leg_c.compose(&m).unwrap(), id);
        assert!(p.inclusion().is_mono());
    }
}
