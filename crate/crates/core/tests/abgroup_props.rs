mod common;

use abext::abgroup::{cokernel, direct_sum, kernel, pullback, pushout, AbMap, FinGenAb};
use abext::homext::{realize, ext_group};
use common::{finite_group, group, random_class, random_map, rng};
use num_bigint::BigInt;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn biproduct_identities(gs in prop::collection::vec(group(), 0..=3)) {
        let s = direct_sum(&gs);
        let mut total = AbMap::zero(s.total(), s.total());
        for i in 0..gs.len() {
            for j in 0..gs.len() {
                let pm = s.projection(i).compose(&s.injection(j)).unwrap();
                if i == j {
                    prop_assert_eq!(pm, AbMap::identity(&gs[i]));
                } else {
                    prop_assert!(pm.is_zero());
                }
            }
            total = total.add(&s.injection(i).compose(&s.projection(i)).unwrap()).unwrap();
        }
        prop_assert_eq!(total, AbMap::identity(s.total()));
    }

    #[test]
    fn kernel_and_cokernel(a in group(), b in group(), seed in any::<u64>()) {
        let f = random_map(&a, &b, &mut rng(seed));
        let (_, incl) = kernel(&f);
        prop_assert!(incl.is_mono());
        prop_assert!(f.compose(&incl).unwrap().is_zero());
        let (_, proj) = cokernel(&f);
        prop_assert!(proj.is_epi());
        prop_assert!(proj.compose(&f).unwrap().is_zero());
        // a map factors through the kernel exactly when f kills it
        let mut r = rng(seed ^ 1);
        for t in [FinGenAb::free(1), FinGenAb::cyclic(4), FinGenAb::cyclic(6)] {
            let w = random_map(&t, &a, &mut r);
            let killed = f.compose(&w).unwrap().is_zero();
            let lift = incl.lift_through(&w).unwrap();
            prop_assert_eq!(killed, lift.is_some());
            if let Some(l) = lift {
                prop_assert_eq!(incl.compose(&l).unwrap(), w);
            }
            // and dually through the cokernel
            let w = random_map(&b, &t, &mut r);
            let killed = w.compose(&f).unwrap().is_zero();
            prop_assert_eq!(killed, proj.factor_through(&w).unwrap().is_some());
        }
    }

    /// 50 random cocones per run: each is `h∘legs` for a random `h`, and the
    /// mediator must recover `h`. Uniqueness: the legs are jointly epi, so
    /// the homogeneous system `m∘leg_b = m∘leg_c = 0` has only `m = 0`.
    #[test]
    fn pushout_mediators(a in finite_group(), b in group(), c in group(), t in group(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_map(&a, &b, &mut r);
        let g = random_map(&a, &c, &mut r);
        let p = pushout(&f, &g).unwrap();
        prop_assert_eq!(p.leg_b.compose(&f).unwrap(), p.leg_c.compose(&g).unwrap());
        let h = random_map(&p.object, &t, &mut r);
        let (u, v) = (h.compose(&p.leg_b).unwrap(), h.compose(&p.leg_c).unwrap());
        let m = p.mediator(&u, &v).unwrap();
        prop_assert_eq!(&m, &h);
        let legs = p.sum().copair(&p.object, &[p.leg_b.clone(), p.leg_c.clone()]).unwrap();
        prop_assert!(legs.annihilating_maps(&t).unwrap().iter().all(|k| k.is_zero()));
        // finite orders: |P|·|image of (f, -g)| = |B ⊕ C|
        if let (Some(ob), Some(oc), Some(op)) = (b.order(), c.order(), p.object.order()) {
            prop_assert_eq!((&ob * &oc) % &op, BigInt::from(0));
        }
    }

    #[test]
    fn pullback_mediators(a in group(), b in group(), c in finite_group(), t in group(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_map(&b, &c, &mut r);
        let g = random_map(&a, &c, &mut r);
        let p = pullback(&f, &g).unwrap();
        prop_assert_eq!(f.compose(&p.leg_b).unwrap(), g.compose(&p.leg_c).unwrap());
        let h = random_map(&t, &p.object, &mut r);
        let (u, v) = (p.leg_b.compose(&h).unwrap(), p.leg_c.compose(&h).unwrap());
        prop_assert_eq!(p.mediator(&u, &v).unwrap(), h);
    }

    #[test]
    fn extension_orders_multiply(a in finite_group(), b in finite_group(), seed in any::<u64>()) {
        let c = random_class(&ext_group(&a, &b), &mut rng(seed));
        let s = realize(&c);
        prop_assert_eq!(s.middle().order().unwrap(), a.order().unwrap() * b.order().unwrap());
    }
}

#[test]
fn small_limits() {
    let z = FinGenAb::cyclic;
    let two = AbMap::new(z(2), z(4), abext::intlin::IntMatrix::from_i64(&[&[2]])).unwrap();
    let p = pushout(&AbMap::identity(&z(2)), &two).unwrap();
    assert_eq!(p.object, z(4));
    let p = pullback(&AbMap::identity(&z(2)), &AbMap::identity(&z(2))).unwrap();
    assert_eq!(p.object, z(2));
    assert_eq!(kernel(&AbMap::multiplication(&z(4), 2)).0, z(2));
    assert_eq!(cokernel(&AbMap::multiplication(&z(0), 2)).0, z(2));
}
