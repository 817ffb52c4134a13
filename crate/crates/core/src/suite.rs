//! The acceptance criteria as runnable checks with a scorecard.
//!
//! Each criterion returns a [`CriterionResult`]; a criterion with a time
//! limit fails when it overruns. Random instances come from a ChaCha
//! stream seeded by the caller, so a run is reproducible.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::abgroup::{cokernel, direct_sum, AbMap, FinGenAb};
use crate::error::Result;
use crate::homext::{classify, ext_group, hom_group, pullback_action, ExtClass, ExtGroup};
use crate::oracle::{all_groups_up_to, enumerate_homs, ext_by_cocycles, ConcreteGroup, DEFAULT_BUDGET};
use crate::torsioncat::{
    ab4star_failure_witness, classify as classify_torsion, counterexample_witness, parse, Atom,
    Method, Mult, TorsionExpr,
};
use crate::universal::{
    build_universal_coextension, build_universal_extension, cyclic_generation_check, psi,
    psi_inverse_via_colim,
};

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {} [{:.2}s] {}: {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.elapsed.as_secs_f64(),
            self.title,
            self.detail
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id.to_string(),
            "title": self.title,
            "passed": self.passed,
            "detail": self.detail,
            "millis": self.elapsed.as_millis().to_string(),
            "limit_millis": self.limit.map(|l| l.as_millis().to_string()),
        })
    }
}

/// What a check reports: number of instances and the failures found.
struct Outcome {
    instances: usize,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            instances: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn record_result(&mut self, r: Result<bool>, what: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.record(ok, what),
            Err(e) => {
                self.instances += 1;
                self.failures.push(format!("{}: {}", what(), e));
            }
        }
    }
}

fn run(
    id: u32,
    title: &'static str,
    limit: Option<u64>,
    check: impl FnOnce() -> Outcome,
) -> CriterionResult {
    let start = Instant::now();
    let outcome = check();
    let elapsed = start.elapsed();
    let limit = limit.map(Duration::from_secs);
    let overran = limit.is_some_and(|l| elapsed > l);
    let mut detail = format!("{} instances, {} failures", outcome.instances, outcome.failures.len());
    if let Some(first) = outcome.failures.first() {
        detail.push_str(&format!("; first: {}", first));
    }
    if overran {
        detail.push_str(&format!("; exceeded {}s", limit.expect("set").as_secs()));
    }
    CriterionResult {
        id,
        title,
        passed: outcome.failures.is_empty() && outcome.instances > 0 && !overran,
        detail,
        elapsed,
        limit,
    }
}

fn concrete(g: &FinGenAb) -> ConcreteGroup {
    ConcreteGroup::from_fingen(g).expect("small group")
}

fn order_u64(g: &FinGenAb) -> Option<u64> {
    g.order().and_then(|o| o.to_u64())
}

fn random_class(ext: &ExtGroup, rng: &mut ChaCha8Rng) -> ExtClass {
    let coords: Vec<BigInt> = ext
        .moduli()
        .iter()
        .map(|m| BigInt::from(rng.gen_range(0..m.to_u64().expect("small modulus").max(1))))
        .collect();
    ext.class(&coords).expect("reduced coordinates")
}

pub fn criterion_1() -> CriterionResult {
    run(1, "Ext order equals the cocycle count", Some(60), || {
        let gs = all_groups_up_to(12);
        let mut out = Outcome::new();
        for a in &gs {
            for b in &gs {
                let r = ext_by_cocycles(&concrete(a), &concrete(b), DEFAULT_BUDGET).map(|o| {
                    let reps_agree = o.representatives.map_or(true, |r| r.len() as u64 == o.count);
                    order_u64(ext_group(a, b).group()) == Some(o.count) && reps_agree
                });
                out.record_result(r, || format!("Ext({}, {})", a, b));
            }
        }
        out
    })
}

pub fn criterion_2() -> CriterionResult {
    run(2, "Hom order equals the enumerated homomorphisms", Some(30), || {
        let gs = all_groups_up_to(12);
        let mut out = Outcome::new();
        for a in &gs {
            for b in &gs {
                let r = enumerate_homs(&concrete(a), &concrete(b), DEFAULT_BUDGET)
                    .map(|h| order_u64(hom_group(a, b).carrier()) == Some(h.len() as u64));
                out.record_result(r, || format!("Hom({}, {})", a, b));
            }
        }
        out
    })
}

pub fn criterion_3() -> CriterionResult {
    run(3, "Ext(Z(n), G) is G/nG", Some(10), || {
        let mut out = Outcome::new();
        for g in all_groups_up_to(16) {
            for n in 1..=12u64 {
                let quotient = cokernel(&AbMap::multiplication(&g, n as i64)).0;
                let ext = ext_group(&FinGenAb::cyclic(n), &g);
                out.record(ext.group() == &quotient, || format!("n = {}, G = {}", n, g));
            }
        }
        out
    })
}

pub fn criterion_4(seed: u64) -> CriterionResult {
    run(4, "Psi is bijective and inverted by the codiagonal pushout", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gs = all_groups_up_to(16);
        let mut out = Outcome::new();
        for _ in 0..200 {
            let k = rng.gen_range(1..=3);
            let family: Vec<FinGenAb> = (0..k).map(|_| gs.choose(&mut rng).cloned().expect("nonempty")).collect();
            let b = gs.choose(&mut rng).cloned().expect("nonempty");
            let r = (|| -> Result<bool> {
                let p = psi(&family, &b)?;
                if !p.is_bijective() {
                    return Ok(false);
                }
                let tuple: Vec<ExtClass> = p.factors.iter().map(|f| random_class(f, &mut rng)).collect();
                let s = psi_inverse_via_colim(&tuple, &b)?;
                Ok(p.apply(&classify(&s)?)? == tuple)
            })();
            let names: Vec<String> = family.iter().map(|g| g.to_string()).collect();
            out.record_result(r, || format!("family [{}] with B = {}", names.join(", "), b));
        }
        out
    })
}

pub fn criterion_5() -> CriterionResult {
    run(5, "Universal (co)extension conditions hold and agree", Some(120), || {
        let gs = all_groups_up_to(8);
        let mut out = Outcome::new();
        for b in &gs {
            for a in &gs {
                let r = build_universal_extension(b, a).map(|c| c.is_universal());
                out.record_result(r, || format!("extension B = {}, A = {}", b, a));
                let r = build_universal_coextension(b, a).map(|c| c.is_universal());
                out.record_result(r, || format!("co-extension B = {}, A = {}", b, a));
            }
        }
        out
    })
}

pub fn criterion_6(seed: u64) -> CriterionResult {
    run(6, "Ext is cyclic over End(B^(X))", None, || {
        let gs = all_groups_up_to(8);
        let mut out = Outcome::new();
        for b in &gs {
            for a in &gs {
                if ext_group(b, a).group().order().is_some_and(|o| o > BigInt::from(4)) {
                    continue;
                }
                let r = (|| -> Result<bool> {
                    let cert = build_universal_extension(b, a)?;
                    let report = cyclic_generation_check(&cert, seed)?;
                    let eta = classify(&cert.sequence)?;
                    let mut ok = report.surjective && report.witnesses.len() == 5;
                    for (class, gamma) in &report.witnesses {
                        ok &= &pullback_action(&eta, gamma)? == class;
                    }
                    Ok(ok)
                })();
                out.record_result(r, || format!("B = {}, A = {}", b, a));
            }
        }
        out
    })
}

pub fn criterion_7(seed: u64) -> CriterionResult {
    run(7, "Universal extensions close under sums and summands", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let small = all_groups_up_to(4);
        let mut out = Outcome::new();
        let universal = |b: &FinGenAb, a: &FinGenAb| build_universal_extension(b, a).map(|c| c.is_universal());
        for _ in 0..100 {
            let b1 = small.choose(&mut rng).cloned().expect("nonempty");
            let b2 = small.choose(&mut rng).cloned().expect("nonempty");
            let a = small.choose(&mut rng).cloned().expect("nonempty");
            let sum = direct_sum(&[b1.clone(), b2.clone()]).total().clone();
            let r = (|| -> Result<bool> {
                let (u1, u2, us) = (universal(&b1, &a)?, universal(&b2, &a)?, universal(&sum, &a)?);
                let coproduct = !(u1 && u2) || us;
                let summand = !us || (u1 && u2);
                Ok(coproduct && summand)
            })();
            out.record_result(r, || format!("B1 = {}, B2 = {}, A = {}", b1, b2, a));
        }
        out
    })
}

/// Expression, universal verdict, cotorsion verdict, witness prime.
pub const TORSION_FIXTURES: &[(&str, bool, bool, Option<u64>)] = &[
    ("0", true, true, None),
    ("Z(2)", true, true, None),
    ("Z(2^3)^inf", true, true, None),
    ("Z(3^inf)", true, true, None),
    ("Z(2^inf)^inf+Z(2^5)^7", true, true, None),
    ("Z(12)+Z(7^inf)", true, true, None),
    ("Z(2^2)^inf+Z(3^4)+Z(5^inf)^inf", true, true, None),
    ("U(2)", false, false, Some(2)),
    ("U(3)", false, false, Some(3)),
    ("U(5)+Z(5^inf)", false, false, Some(5)),
    ("Z(2)+U(3)", false, false, Some(3)),
    ("U(7)+U(2)", false, false, Some(2)),
    ("W", true, false, None),
    ("W+Z(2^inf)", true, false, None),
    ("U(2)+W", false, false, Some(2)),
];

pub fn criterion_8() -> CriterionResult {
    run(8, "Torsion classifier fixtures", None, || {
        let mut out = Outcome::new();
        for &(text, universal, cotorsion, witness) in TORSION_FIXTURES {
            let r = parse(text).map(|e| {
                let rep = classify_torsion(&e);
                rep.universal_tz == universal && rep.cotorsion == cotorsion && rep.witness_prime == witness
            });
            out.record_result(r, || format!("\"{}\"", text));
        }
        out
    })
}

/// A random expression over the primes 2, 3, 5, 7 with up to four terms.
pub fn random_torsion_expr(rng: &mut ChaCha8Rng) -> TorsionExpr {
    const PRIMES: [u64; 4] = [2, 3, 5, 7];
    let n = rng.gen_range(0..=4);
    let terms = (0..n).map(|_| {
        let p = *PRIMES.choose(rng).expect("nonempty");
        let atom = match rng.gen_range(0..4) {
            0 => Atom::Cyclic { p, k: rng.gen_range(1..=5) },
            1 => Atom::Prufer(p),
            2 => Atom::Unbounded(p),
            _ => Atom::AllPrimesCyclic,
        };
        let mult = if rng.gen_bool(0.3) {
            Mult::Inf
        } else {
            Mult::Finite(rng.gen_range(1..=3))
        };
        (atom, mult)
    });
    TorsionExpr::from_terms(terms.collect::<Vec<_>>()).expect("small multiplicities")
}

pub fn criterion_9(seed: u64) -> CriterionResult {
    run(9, "Cotorsion implies universal", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Outcome::new();
        for _ in 0..1000 {
            let e = random_torsion_expr(&mut rng);
            let rep = classify_torsion(&e);
            out.record(!rep.cotorsion || rep.universal_tz, || e.to_string());
        }
        out
    })
}

pub fn criterion_10() -> CriterionResult {
    run(10, "Counterexample witnesses grow as 2^N", Some(30), || {
        let mut out = Outcome::new();
        for n in 1..=8u32 {
            let expected = BigInt::from(2u32).pow(n);
            let method = if n <= 4 { Method::BruteForce } else { Method::FastPath };
            let r = (|| -> Result<bool> {
                let w = counterexample_witness(2, n, method, DEFAULT_BUDGET)?;
                let v = ab4star_failure_witness(2, n, method, DEFAULT_BUDGET)?;
                let mut ok = w.order == expected && v.order == expected;
                if n == 4 {
                    ok &= counterexample_witness(2, n, Method::FastPath, DEFAULT_BUDGET)?.order == w.order;
                    ok &= ab4star_failure_witness(2, n, Method::FastPath, DEFAULT_BUDGET)?.order == v.order;
                }
                Ok(ok)
            })();
            out.record_result(r, || format!("N = {}", n));
        }
        out
    })
}

/// Every criterion in order.
pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(seed),
        criterion_5(),
        criterion_6(seed),
        criterion_7(seed),
        criterion_8(),
        criterion_9(seed),
        criterion_10(),
    ]
}

pub fn scorecard(results: &[CriterionResult]) -> Value {
    let passed = results.iter().filter(|r| r.passed).count();
    json!({
        "criteria": results.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        "passed": passed.to_string(),
        "total": results.len().to_string(),
        "all_passed": passed == results.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_table_is_large_enough() {
        assert!(TORSION_FIXTURES.len() >= 12);
        assert!(TORSION_FIXTURES.iter().any(|f| f.0 == "W" && f.1 && !f.2));
    }

    #[test]
    fn cheap_criteria_pass() {
        assert!(criterion_8().passed);
        assert!(criterion_9(3).passed);
        assert!(criterion_10().passed);
    }
}
