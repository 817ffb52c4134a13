use abext::suite::random_torsion_expr;
use abext::torsioncat::{
    classify, is_cotorsion, p_component, parse, quotient_closure_check, verdict_tp, Atom, Mult,
    TorsionExpr,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A quotient shape of `e`: cyclic summands shrink, unbounded families
/// may become Prüfer, cyclic or vanish, multiplicities may drop.
fn quotient_of(e: &TorsionExpr, rng: &mut ChaCha8Rng) -> TorsionExpr {
    let kept: Vec<(Atom, Mult)> = e.terms().iter().filter(|_| rng.gen_bool(0.8)).cloned().collect();
    let terms: Vec<(Atom, Mult)> = kept
        .into_iter()
        .map(|(a, m)| {
            let a = match a {
                Atom::Cyclic { p, k } => Atom::Cyclic { p, k: rng.gen_range(1..=k) },
                Atom::Unbounded(p) => match rng.gen_range(0..3) {
                    0 => Atom::Prufer(p),
                    1 => Atom::Cyclic { p, k: rng.gen_range(1..=6) },
                    _ => a,
                },
                other => other,
            };
            let m = match m {
                Mult::Finite(n) => Mult::Finite(rng.gen_range(1..=n)),
                Mult::Inf => Mult::Inf,
            };
            (a, m)
        })
        .collect();
    TorsionExpr::from_terms(terms).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn invariants(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_torsion_expr(&mut rng);
        let rep = classify(&e);
        // cotorsion implies universal
        prop_assert!(!rep.cotorsion || rep.universal_tz);
        prop_assert_eq!(rep.cotorsion, is_cotorsion(&e).cotorsion);
        // universal in torsion groups iff universal in p-groups for every p
        let all_p = e.primes().into_iter().all(|p| verdict_tp(&e, p));
        prop_assert_eq!(rep.universal_tz, all_p);
        for p in e.primes() {
            prop_assert_eq!(verdict_tp(&e, p), classify(&p_component(&e, p)).universal_tz);
        }
        // printing and parsing are inverse
        prop_assert_eq!(parse(&e.to_string()).unwrap(), e.clone());
        // universality passes to quotients
        let q = quotient_of(&e, &mut rng);
        let (ve, vq) = quotient_closure_check(&e, &q).unwrap();
        prop_assert_eq!((ve, vq), (rep.universal_tz, classify(&q).universal_tz));
        prop_assert!(!ve || vq);
    }
}
