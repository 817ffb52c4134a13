//! Finite shadows of the two infinite counterexamples.
//!
//! Both witnesses live in `∏_{n≤N} ℤ(pⁿ)` and both equal `p^N`: the
//! relevant coordinates are units, so coordinate `n` has order exactly `pⁿ`
//! and the order of the whole vector is the largest of these. The brute
//! force enumerates the full search space and takes the minimum; the fast
//! path returns `p^N` from the unit argument.

use num_bigint::BigInt;
use primal_check::miller_rabin as is_prime64;
use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    BruteForce,
    FastPath,
    /// Brute force when the search space fits the budget, fast path otherwise.
    Auto,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub p: u64,
    pub n: u32,
    pub order: BigInt,
    /// `BruteForce` or `FastPath`; never `Auto`.
    pub method: Method,
    /// Size of the brute-force search space.
    pub space: BigInt,
}

impl Witness {
    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p.to_string(),
            "N": self.n.to_string(),
            "order": self.order.to_string(),
            "method": match self.method {
                Method::BruteForce => "brute_force",
                _ => "fast_path",
            },
            "search_space": self.space.to_string(),
        })
    }
}

fn check_args(p: u64, n: u32) -> Result<()> {
    if !is_prime64(p) {
        return Err(Error::InvalidInput(format!("{} is not prime", p)));
    }
    if n == 0 {
        return Err(Error::InvalidInput("N must be at least 1".into()));
    }
    Ok(())
}

/// Order of `x` in `ℤ(p^n)`, as an exponent of `p`.
fn order_exp(x: u64, p: u64, n: u32) -> u32 {
    if x == 0 {
        return 0;
    }
    let mut v = 0;
    let mut y = x;
    while y % p == 0 && v < n {
        y /= p;
        v += 1;
    }
    n - v
}

/// Minimal order over `∏ₙ choices(n)` of the vector with coordinates
/// `value(n, c)`; coordinates are independent so the order is the largest
/// coordinate order, but every tuple is visited.
fn brute_min(
    p: u64,
    n_max: u32,
    choices: impl Fn(u32) -> u64,
    value: impl Fn(u32, u64) -> u64,
) -> u32 {
    let counts: Vec<u64> = (1..=n_max).map(&choices).collect();
    let mut idx = vec![0u64; n_max as usize];
    let mut best = u32::MAX;
    loop {
        let ord = (1..=n_max)
            .map(|n| order_exp(value(n, idx[n as usize - 1]), p, n))
            .max()
            .unwrap_or(0);
        best = best.min(ord);
        // odometer, last coordinate fastest
        let mut i = n_max as usize;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < counts[i] {
                break;
            }
            idx[i] = 0;
        }
    }
}

fn resolve(method: Method, space: &BigInt, budget: u64) -> Result<Method> {
    let fits = space <= &BigInt::from(budget);
    match method {
        Method::Auto if fits => Ok(Method::BruteForce),
        Method::Auto | Method::FastPath => Ok(Method::FastPath),
        Method::BruteForce if fits => Ok(Method::BruteForce),
        Method::BruteForce => Err(Error::BudgetExceeded(format!(
            "search space {} exceeds budget {}",
            space, budget
        ))),
    }
}

/// Minimal order of `x − p·α` over all `α ∈ ∏_{n≤N} ℤ(pⁿ)`, `x` the
/// all-ones vector. The search space has `p^{N(N+1)/2}` points.
pub fn counterexample_witness(p: u64, n: u32, method: Method, budget: u64) -> Result<Witness> {
    check_args(p, n)?;
    let space = BigInt::from(p).pow(n * (n + 1) / 2);
    let method = resolve(method, &space, budget)?;
    let exp = match method {
        Method::BruteForce => brute_min(
            p,
            n,
            |k| p.pow(k),
            |k, a| {
                let m = p.pow(k);
                (1 + m - (p * a) % m) % m
            },
        ),
        _ => n,
    };
    Ok(Witness {
        p,
        n,
        order: BigInt::from(p).pow(exp),
        method,
        space,
    })
}

/// Minimal order of a preimage of the all-ones vector under
/// `∏_{n≤N} ℤ(pⁿ) → ∏ ℤ(p)`, the product of the reductions. Preimages have
/// `aₙ = 1 + p·t`, so the search space has `∏ p^{n−1}` points.
pub fn ab4star_failure_witness(p: u64, n: u32, method: Method, budget: u64) -> Result<Witness> {
    check_args(p, n)?;
    let space = BigInt::from(p).pow(n * (n - 1) / 2);
    let method = resolve(method, &space, budget)?;
    let exp = match method {
        Method::BruteForce => brute_min(p, n, |k| p.pow(k - 1), |_, t| 1 + p * t),
        _ => n,
    };
    Ok(Witness {
        p,
        n,
        order: BigInt::from(p).pow(exp),
        method,
        space,
    })
}
