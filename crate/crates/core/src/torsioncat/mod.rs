//! Symbolic torsion abelian groups and their classification.
//!
//! An expression is a direct sum of atoms with multiplicities:
//!
//! * `Z(p^k)`: the cyclic group of order `pᵏ`;
//! * `Z(p^inf)`: the Prüfer `p`-group;
//! * `U(p)`: the unbounded family `⊕_{n≥1} ℤ(pⁿ)`;
//! * `W`: `⊕_p ℤ(p)` over all primes.
//!
//! A torsion group is co-Ext¹-universal in the category of torsion groups
//! exactly when every `p`-primary reduced part is bounded, and it is
//! cotorsion exactly when its whole reduced part is bounded (divisible plus
//! bounded). Multiplicities never matter for either predicate, so `inf`
//! stands for any infinite cardinal and no cardinal arithmetic is done.

mod parse;
mod witness;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub use parse::{parse, parse_finite_group};
pub use witness::{ab4star_failure_witness, counterexample_witness, Method, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Cyclic { p: u64, k: u32 },
    Prufer(u64),
    Unbounded(u64),
    AllPrimesCyclic,
}

impl Atom {
    pub fn prime(&self) -> Option<u64> {
        match *self {
            Atom::Cyclic { p, .. } | Atom::Prufer(p) | Atom::Unbounded(p) => Some(p),
            Atom::AllPrimesCyclic => None,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Atom::Cyclic { p, k: 1 } => write!(f, "Z({})", p),
            Atom::Cyclic { p, k } => write!(f, "Z({}^{})", p, k),
            Atom::Prufer(p) => write!(f, "Z({}^inf)", p),
            Atom::Unbounded(p) => write!(f, "U({})", p),
            Atom::AllPrimesCyclic => write!(f, "W"),
        }
    }
}

/// Multiplicity of an atom; `Inf` is any infinite cardinal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mult {
    Finite(u64),
    Inf,
}

impl Mult {
    fn checked_add(self, other: Mult) -> Option<Mult> {
        match (self, other) {
            (Mult::Finite(a), Mult::Finite(b)) => a.checked_add(b).map(Mult::Finite),
            _ => Some(Mult::Inf),
        }
    }
}

impl fmt::Display for Mult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mult::Finite(m) => write!(f, "{}", m),
            Mult::Inf => write!(f, "inf"),
        }
    }
}

/// A torsion group in normal form: atoms sorted, each appearing once.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TorsionExpr {
    terms: Vec<(Atom, Mult)>,
}

impl TorsionExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Normalizes an arbitrary term list: sorts atoms and merges repeats.
    pub fn from_terms(terms: impl IntoIterator<Item = (Atom, Mult)>) -> Result<Self> {
        let mut v: Vec<(Atom, Mult)> = terms.into_iter().collect();
        v.sort_by_key(|(a, _)| *a);
        let mut out: Vec<(Atom, Mult)> = Vec::with_capacity(v.len());
        for (a, m) in v {
            if let Mult::Finite(0) = m {
                continue;
            }
            match out.last_mut() {
                Some((last, lm)) if *last == a => {
                    *lm = lm
                        .checked_add(m)
                        .ok_or_else(|| Error::InvalidInput("multiplicity overflow".into()))?;
                }
                _ => out.push((a, m)),
            }
        }
        Ok(TorsionExpr { terms: out })
    }

    pub fn terms(&self) -> &[(Atom, Mult)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Primes named explicitly by some atom (`W` names none).
    pub fn primes(&self) -> BTreeSet<u64> {
        self.terms.iter().filter_map(|(a, _)| a.prime()).collect()
    }

    pub fn has_all_primes(&self) -> bool {
        self.terms.iter().any(|(a, _)| *a == Atom::AllPrimesCyclic)
    }

    fn filter(&self, keep: impl Fn(&Atom) -> bool) -> TorsionExpr {
        TorsionExpr {
            terms: self.terms.iter().filter(|(a, _)| keep(a)).cloned().collect(),
        }
    }
}

impl fmt::Display for TorsionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (a, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{}", a)?;
            if *m != Mult::Finite(1) {
                write!(f, "^{}", m)?;
            }
        }
        Ok(())
    }
}

/// The `p`-primary component; `W` contributes one copy of `ℤ(p)`.
pub fn p_component(e: &TorsionExpr, p: u64) -> TorsionExpr {
    let terms = e.terms.iter().filter_map(|&(a, m)| match a {
        Atom::AllPrimesCyclic => Some((Atom::Cyclic { p, k: 1 }, m)),
        _ if a.prime() == Some(p) => Some((a, m)),
        _ => None,
    });
    TorsionExpr::from_terms(terms).expect("no new overflow beyond the input")
}

/// `(divisible, reduced)`: Prüfer atoms against everything else.
pub fn divisible_reduced_split(e: &TorsionExpr) -> (TorsionExpr, TorsionExpr) {
    (
        e.filter(|a| matches!(a, Atom::Prufer(_))),
        e.filter(|a| !matches!(a, Atom::Prufer(_))),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeEntry {
    pub p: u64,
    pub divisible: TorsionExpr,
    pub reduced: TorsionExpr,
    pub bounded: bool,
    /// `p^k` annihilating the reduced part, when bounded.
    pub bound: Option<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub primes: Vec<PrimeEntry>,
    /// `W` is present: every prime has a `ℤ(p)` summand.
    pub all_primes_cyclic: bool,
    pub universal_tz: bool,
    pub cotorsion: bool,
    /// Smallest prime whose reduced part is unbounded.
    pub witness_prime: Option<u64>,
}

impl ClassificationReport {
    /// Verdict in the category of `p`-groups for the `p`-component.
    pub fn verdict_tp(&self, p: u64) -> bool {
        self.primes
            .iter()
            .find(|e| e.p == p)
            .map_or(true, |e| e.bounded)
    }

    pub fn to_json(&self) -> Value {
        let primes: Vec<Value> = self
            .primes
            .iter()
            .map(|e| {
                json!({
                    "p": e.p.to_string(),
                    "divisible": e.divisible.to_string(),
                    "reduced": e.reduced.to_string(),
                    "bounded": e.bounded,
                    "bound": e.bound.as_ref().map(|b| b.to_string()),
                })
            })
            .collect();
        json!({
            "primes": primes,
            "all_primes_cyclic": self.all_primes_cyclic,
            "universal_TZ": self.universal_tz,
            "cotorsion": self.cotorsion,
            "witness_prime": self.witness_prime.map(|p| p.to_string()),
        })
    }
}

fn prime_entry(e: &TorsionExpr, p: u64) -> PrimeEntry {
    let (divisible, reduced) = divisible_reduced_split(&p_component(e, p));
    let bounded = !reduced
        .terms
        .iter()
        .any(|(a, _)| matches!(a, Atom::Unbounded(_)));
    let bound = bounded.then(|| {
        let k = reduced
            .terms
            .iter()
            .filter_map(|(a, _)| match a {
                Atom::Cyclic { k, .. } => Some(*k),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        BigInt::from(p).pow(k)
    });
    PrimeEntry {
        p,
        divisible,
        reduced,
        bounded,
        bound,
    }
}

pub fn classify(e: &TorsionExpr) -> ClassificationReport {
    let primes: Vec<PrimeEntry> = e.primes().into_iter().map(|p| prime_entry(e, p)).collect();
    let witness_prime = primes.iter().find(|x| !x.bounded).map(|x| x.p);
    let universal_tz = witness_prime.is_none();
    let all_primes_cyclic = e.has_all_primes();
    ClassificationReport {
        cotorsion: universal_tz && !all_primes_cyclic,
        primes,
        all_primes_cyclic,
        universal_tz,
        witness_prime,
    }
}

/// Verdict for the `p`-component alone, in the category of `p`-groups.
pub fn verdict_tp(e: &TorsionExpr, p: u64) -> bool {
    classify(&p_component(e, p)).universal_tz
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CotorsionReport {
    pub cotorsion: bool,
    /// An integer annihilating the reduced part, when there is one.
    pub bound: Option<BigInt>,
    pub divisible: TorsionExpr,
    pub reduced: TorsionExpr,
}

/// Cotorsion test by the divisible-plus-bounded decomposition.
pub fn is_cotorsion(e: &TorsionExpr) -> CotorsionReport {
    let report = classify(e);
    let (divisible, reduced) = divisible_reduced_split(e);
    let bound = report.cotorsion.then(|| {
        report
            .primes
            .iter()
            .filter_map(|x| x.bound.clone())
            .fold(BigInt::one(), |a, b| a * b)
    });
    CotorsionReport {
        cotorsion: report.cotorsion,
        bound,
        divisible,
        reduced,
    }
}

/// How many copies of `ℤ(p^j)`-or-larger cyclic quotients a summand list
/// can supply; `None` means unlimited.
fn cyclic_supply(e: &TorsionExpr, p: u64, j: u32) -> Option<u64> {
    let mut total: u64 = 0;
    for (a, m) in p_component(e, p).terms {
        let counts = match a {
            Atom::Cyclic { k, .. } => k >= j,
            Atom::Unbounded(_) => return None,
            _ => false,
        };
        if counts {
            match m {
                Mult::Inf => return None,
                Mult::Finite(m) => total = total.saturating_add(m),
            }
        }
    }
    Some(total)
}

fn atom_mult(e: &TorsionExpr, atom: Atom) -> Option<Mult> {
    e.terms.iter().find(|(a, _)| *a == atom).map(|(_, m)| *m)
}

/// Checks that `q` has the shape of a quotient of `e` and that universality
/// passes from `e` to `q`. Returns `(verdict(e), verdict(q))`.
///
/// Per prime: a Prüfer summand of `q` needs a Prüfer summand or `U(p)` in
/// `e`; `U(p)` in `q` needs `U(p)` in `e`; for every `j` the number of
/// cyclic summands of exponent `≥ j` in `q` is at most what `e` supplies.
/// `W` in `q` needs `W` in `e`.
pub fn quotient_closure_check(e: &TorsionExpr, q: &TorsionExpr) -> Result<(bool, bool)> {
    if q.has_all_primes() && !e.has_all_primes() {
        return Err(Error::NotAQuotient("W needs W in the source".into()));
    }
    for p in q.primes() {
        let qp = p_component(q, p);
        let has_u = atom_mult(e, Atom::Unbounded(p)).is_some();
        if let Some(m) = atom_mult(&qp, Atom::Prufer(p)) {
            let supply = atom_mult(e, Atom::Prufer(p));
            if !has_u && supply.map_or(true, |s| s < m) {
                return Err(Error::NotAQuotient(format!(
                    "Z({}^inf)^{} is not a quotient of the source",
                    p, m
                )));
            }
        }
        if atom_mult(&qp, Atom::Unbounded(p)).is_some() && !has_u {
            return Err(Error::NotAQuotient(format!("U({}) needs U({})", p, p)));
        }
        let max_k = qp
            .terms
            .iter()
            .filter_map(|(a, _)| match a {
                Atom::Cyclic { k, .. } => Some(*k),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        for j in 1..=max_k {
            let need = cyclic_supply(&qp, p, j);
            let have = cyclic_supply(e, p, j);
            let ok = match (need, have) {
                (_, None) => true,
                (None, Some(_)) => false,
                (Some(n), Some(h)) => n <= h,
            };
            if !ok {
                return Err(Error::NotAQuotient(format!(
                    "too many cyclic summands of order at least {}^{}",
                    p, j
                )));
            }
        }
    }
    let (ve, vq) = (classify(e).universal_tz, classify(q).universal_tz);
    if ve && !vq {
        return Err(Error::Inconsistent(format!(
            "quotient {} of universal {} classified as not universal",
            q, e
        )));
    }
    Ok((ve, vq))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> TorsionExpr {
        parse(s).unwrap()
    }

    #[test]
    fn components() {
        assert_eq!(p_component(&t("Z(12)"), 2), t("Z(4)"));
        assert_eq!(p_component(&t("W"), 5), t("Z(5)"));
        assert!(p_component(&t("U(3)"), 2).is_zero());
        assert_eq!(p_component(&t("W+Z(5)"), 5), t("Z(5)^2"));
    }

    #[test]
    fn splits() {
        let (d, r) = divisible_reduced_split(&t("Z(2^inf)^inf + Z(4)"));
        assert_eq!(d.terms(), &[(Atom::Prufer(2), Mult::Inf)]);
        assert_eq!(r.terms(), &[(Atom::Cyclic { p: 2, k: 2 }, Mult::Finite(1))]);
        let (d, r) = divisible_reduced_split(&t("Z(3^inf)"));
        assert_eq!(d, t("Z(3^inf)"));
        assert!(r.is_zero());
        let (d, r) = divisible_reduced_split(&t("U(2)"));
        assert!(d.is_zero());
        assert_eq!(r, t("U(2)"));
    }

    #[test]
    fn classification() {
        let r = classify(&t("U(2)"));
        assert!(!r.universal_tz);
        assert_eq!(r.witness_prime, Some(2));
        let r = classify(&t("Z(5^inf)^3 + Z(5^2)^inf"));
        assert!(r.universal_tz && r.cotorsion);
        assert_eq!(r.primes[0].bound, Some(BigInt::from(25)));
        let r = classify(&t("W"));
        assert!(r.universal_tz && !r.cotorsion);
    }

    #[test]
    fn cotorsion() {
        let c = is_cotorsion(&t("Z(2)^inf"));
        assert!(c.cotorsion);
        assert_eq!(c.bound, Some(BigInt::from(2)));
        assert!(!is_cotorsion(&t("U(7)")).cotorsion);
        assert!(!is_cotorsion(&t("W")).cotorsion);
        assert_eq!(is_cotorsion(&t("Z(12)+Z(3^inf)")).bound, Some(BigInt::from(12)));
    }

    #[test]
    fn display_roundtrip() {
        for s in ["Z(2^3)+Z(2)^3", "U(3)+Z(3^inf)^inf", "W+Z(5)", "0"] {
            let e = t(s);
            assert_eq!(t(&e.to_string()), e);
        }
    }

    #[test]
    fn quotients() {
        assert_eq!(quotient_closure_check(&t("Z(4)^inf"), &t("Z(2)^inf")).unwrap(), (true, true));
        assert_eq!(quotient_closure_check(&t("Z(2^inf)"), &t("Z(2^inf)")).unwrap(), (true, true));
        assert_eq!(quotient_closure_check(&t("U(2)"), &t("Z(2^5)")).unwrap(), (false, true));
        assert!(matches!(
            quotient_closure_check(&t("Z(2)"), &t("Z(4)")),
            Err(Error::NotAQuotient(_))
        ));
        assert!(quotient_closure_check(&t("Z(2)^3"), &t("Z(2)^4")).is_err());
        assert!(quotient_closure_check(&t("Z(4)"), &t("U(2)")).is_err());
        assert!(quotient_closure_check(&t("Z(3)"), &t("W")).is_err());
    }
}
