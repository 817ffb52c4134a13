mod common;

use abext::abgroup::{direct_sum, FinGenAb};
use abext::homext::{classify, ext_group};
use abext::universal::{
    build_universal_coextension, build_universal_extension, phi, phi_inverse_via_lim, psi,
    sufficient_condition_check,
};
use common::{random_class, rng};
use num_bigint::BigInt;
use proptest::prelude::*;

fn small_group() -> impl Strategy<Value = FinGenAb> {
    prop::collection::vec(prop::sample::select(&[2u64, 3, 4, 6][..]), 0..=2).prop_map(|m| {
        FinGenAb::from_moduli(&m.into_iter().map(BigInt::from).collect::<Vec<_>>())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn psi_and_phi_are_bijective(family in prop::collection::vec(small_group(), 0..=3), b in small_group()) {
        let p = psi(&family, &b).unwrap();
        prop_assert!(p.is_injective() && p.is_bijective());
        let f = phi(&family, &b).unwrap();
        prop_assert!(f.is_injective() && f.is_bijective());
    }

    #[test]
    fn phi_inverse_roundtrips(family in prop::collection::vec(small_group(), 1..=3), a in small_group(), seed in any::<u64>()) {
        let f = phi(&family, &a).unwrap();
        let mut r = rng(seed);
        let tuple: Vec<_> = f.factors.iter().map(|e| random_class(e, &mut r)).collect();
        let s = phi_inverse_via_lim(&tuple, &a).unwrap();
        prop_assert_eq!(f.apply(&classify(&s).unwrap()).unwrap(), tuple);
    }

    #[test]
    fn closure_under_sums_and_summands(b1 in small_group(), b2 in small_group(), a in small_group()) {
        let sum = direct_sum(&[b1.clone(), b2.clone()]).total().clone();
        // keep the index sets small enough to build quickly
        prop_assume!(ext_group(&sum, &a).group().order().unwrap() <= BigInt::from(64));
        prop_assume!(ext_group(&a, &sum).group().order().unwrap() <= BigInt::from(64));
        let u1 = build_universal_extension(&b1, &a).unwrap().is_universal();
        let u2 = build_universal_extension(&b2, &a).unwrap().is_universal();
        let us = build_universal_extension(&sum, &a).unwrap().is_universal();
        prop_assert!(u1 && u2 && us);
        let c = build_universal_coextension(&sum, &a).unwrap();
        prop_assert!(c.is_universal());
        prop_assert_eq!(
            c.sequence.middle().order().unwrap(),
            sum.order().unwrap().pow(c.x.len() as u32) * a.order().unwrap()
        );
    }

    #[test]
    fn sufficient_condition_is_consistent(a in small_group(), b in small_group()) {
        let r = sufficient_condition_check(&a, &b).unwrap();
        prop_assert!(r.monic && r.pushout_monic);
        let cert = build_universal_extension(&b, &a).unwrap();
        prop_assert!(cert.is_universal());
        prop_assert_eq!(r.classes, cert.x.len());
        let order = ext_group(&b, &a).group().order().unwrap();
        prop_assert_eq!(cert.degenerate, order == BigInt::from(1));
    }
}

#[test]
fn index_set_is_lexicographic() {
    let b = FinGenAb::parse("Z(2)+Z(4)").unwrap();
    let a = FinGenAb::cyclic(4);
    let cert = build_universal_extension(&b, &a).unwrap();
    let coords: Vec<_> = cert.x.iter().map(|c| c.coords().to_vec()).collect();
    let mut sorted = coords.clone();
    sorted.sort();
    assert_eq!(coords, sorted);
    assert_eq!(coords.len(), 8);
}
