//! Generators shared by the property tests.
#![allow(dead_code)]

use abext::abgroup::{AbMap, FinGenAb};
use abext::homext::{hom_group, ExtClass, ExtGroup};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MODULI: [u64; 8] = [2, 3, 4, 5, 6, 8, 9, 12];

/// A finite group on at most three cyclic generators.
pub fn finite_group() -> impl Strategy<Value = FinGenAb> {
    prop::collection::vec(prop::sample::select(&MODULI[..]), 0..=3).prop_map(|m| {
        FinGenAb::from_moduli(&m.into_iter().map(BigInt::from).collect::<Vec<_>>())
    })
}

/// A finitely generated group, free rank at most one.
pub fn group() -> impl Strategy<Value = FinGenAb> {
    (finite_group(), 0usize..=1).prop_map(|(t, r)| {
        let mut m = t.moduli();
        m.extend(std::iter::repeat(BigInt::from(0)).take(r));
        FinGenAb::from_moduli(&m)
    })
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random homomorphism: a random combination of the cyclic generators
/// of `Hom(a, b)`.
pub fn random_map(a: &FinGenAb, b: &FinGenAb, rng: &mut ChaCha8Rng) -> AbMap {
    let h = hom_group(a, b);
    let mut f = AbMap::zero(a, b);
    for (k, g) in h.basis().iter().enumerate() {
        let m = h.carrier().modulus(k).to_u64().unwrap_or(0);
        let c = if m == 0 { rng.gen_range(-4i64..=4) } else { rng.gen_range(0..m as i64) };
        f = f.add(&g.scale(&BigInt::from(c))).unwrap();
    }
    f
}

pub fn random_class(ext: &ExtGroup, rng: &mut ChaCha8Rng) -> ExtClass {
    let coords: Vec<BigInt> = ext
        .moduli()
        .iter()
        .map(|m| BigInt::from(rng.gen_range(0..m.to_u64().unwrap().max(1))))
        .collect();
    ext.class(&coords).unwrap()
}
