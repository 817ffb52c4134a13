//! Group-expression syntax.
//!
//! ```text
//! expr  := "0" | term ("+" term)*
//! term  := atom ("^" mult)?
//! atom  := "Z(" p "^" k ")" | "Z(" p "^inf)" | "Z(" n ")" | "U(" p ")" | "W" | "Z"
//! mult  := nat | "inf"
//! ```
//!
//! Whitespace between tokens is ignored. `Z(n)` with composite `n` is split
//! into prime-power cyclics. The bare `Z` (free of rank one) is only legal
//! for finitely generated groups, and the infinite atoms only for torsion
//! groups.

use num_bigint::BigInt;
use primal_check::miller_rabin as is_prime64;

use super::{Atom, Mult, TorsionExpr};
use crate::abgroup::FinGenAb;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum RawAtom {
    Free,
    /// `Z(n)`, not yet split; `n ≥ 1`.
    Cyclic(u64),
    PrimePower(u64, u32),
    Prufer(u64),
    Unbounded(u64),
    AllPrimes,
}

#[derive(Clone, Debug)]
struct RawTerm {
    atom: RawAtom,
    mult: Mult,
    pos: usize,
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        position,
        message: message.into(),
    })
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = match self.peek() {
                Some(x) => format!("'{}'", x as char),
                None => "end of input".into(),
            };
            err(self.pos, format!("expected '{}', found {}", c as char, found))
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    /// A decimal natural number, with the byte offset where it starts.
    fn number(&mut self) -> Result<(u64, usize)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return err(start, "expected a number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match text.parse::<u64>() {
            Ok(v) => Ok((v, start)),
            Err(_) => err(start, "number too large"),
        }
    }

    fn prime(&mut self) -> Result<u64> {
        let (p, at) = self.number()?;
        if !is_prime64(p) {
            return err(at, format!("{} is not prime", p));
        }
        Ok(p)
    }

    fn mult(&mut self) -> Result<Mult> {
        if self.eat_keyword("inf") {
            return Ok(Mult::Inf);
        }
        let (m, at) = self.number()?;
        if m == 0 {
            return err(at, "multiplicity must be positive");
        }
        Ok(Mult::Finite(m))
    }

    fn atom(&mut self) -> Result<RawAtom> {
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(b'W') => {
                self.pos += 1;
                Ok(RawAtom::AllPrimes)
            }
            Some(b'U') => {
                self.pos += 1;
                self.expect(b'(')?;
                let p = self.prime()?;
                self.expect(b')')?;
                Ok(RawAtom::Unbounded(p))
            }
            Some(b'Z') => {
                self.pos += 1;
                if !self.eat(b'(') {
                    return Ok(RawAtom::Free);
                }
                let (n, n_at) = self.number()?;
                let atom = if self.eat(b'^') {
                    if !is_prime64(n) {
                        return err(n_at, format!("{} is not prime", n));
                    }
                    if self.eat_keyword("inf") {
                        RawAtom::Prufer(n)
                    } else {
                        let (k, k_at) = self.number()?;
                        if k == 0 {
                            return err(k_at, "exponent must be at least 1");
                        }
                        let k = u32::try_from(k).or_else(|_| err(k_at, "exponent too large"))?;
                        if n.checked_pow(k).is_none() {
                            return err(k_at, "prime power too large");
                        }
                        RawAtom::PrimePower(n, k)
                    }
                } else {
                    if n == 0 {
                        return err(n_at, "cyclic order must be positive");
                    }
                    RawAtom::Cyclic(n)
                };
                self.expect(b')')?;
                Ok(atom)
            }
            Some(c) => err(at, format!("unexpected '{}'", c as char)),
            None => err(at, "unexpected end of input"),
        }
    }

    fn expr(&mut self) -> Result<Vec<RawTerm>> {
        let mut terms = Vec::new();
        if self.peek() == Some(b'0') {
            self.pos += 1;
        } else {
            loop {
                self.skip_ws();
                let pos = self.pos;
                let atom = self.atom()?;
                let mult = if self.eat(b'^') {
                    self.mult()?
                } else {
                    Mult::Finite(1)
                };
                terms.push(RawTerm { atom, mult, pos });
                if !self.eat(b'+') {
                    break;
                }
            }
        }
        if let Some(c) = self.peek() {
            return err(self.pos, format!("unexpected '{}'", c as char));
        }
        Ok(terms)
    }
}

fn raw_terms(text: &str) -> Result<Vec<RawTerm>> {
    Cursor {
        src: text.as_bytes(),
        pos: 0,
    }
    .expr()
}

const TRIAL_LIMIT: u64 = 1 << 22;

/// Prime factorization by trial division up to `TRIAL_LIMIT`. The cofactor
/// left over is then a prime, the square of a prime, or a product of two or
/// more distinct primes above the limit; the last case gives `None`.
fn factorize(mut n: u64) -> Option<Vec<(u64, u32)>> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d < TRIAL_LIMIT && d * d <= n {
        if n % d == 0 {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        if is_prime64(n) {
            out.push((n, 1));
        } else {
            let r = (n as f64).sqrt().round() as u64;
            let r = (r.saturating_sub(1)..=r + 1).find(|r| r.checked_mul(*r) == Some(n))?;
            if !is_prime64(r) {
                return None;
            }
            out.push((r, 2));
        }
    }
    Some(out)
}

/// Parses a torsion expression into normal form.
pub fn parse(text: &str) -> Result<TorsionExpr> {
    let mut terms = Vec::new();
    for t in raw_terms(text)? {
        match t.atom {
            RawAtom::Free => {
                return err(t.pos, "free summand Z is not a torsion group");
            }
            RawAtom::Cyclic(n) => {
                let Some(factors) = factorize(n) else {
                    return err(t.pos + 2, format!("cannot factor {}", n));
                };
                for (p, k) in factors {
                    terms.push((Atom::Cyclic { p, k }, t.mult));
                }
            }
            RawAtom::PrimePower(p, k) => terms.push((Atom::Cyclic { p, k }, t.mult)),
            RawAtom::Prufer(p) => terms.push((Atom::Prufer(p), t.mult)),
            RawAtom::Unbounded(p) => terms.push((Atom::Unbounded(p), t.mult)),
            RawAtom::AllPrimes => terms.push((Atom::AllPrimesCyclic, t.mult)),
        }
    }
    TorsionExpr::from_terms(terms)
}

/// Parses a finitely generated group such as `Z(4)+Z(6)+Z^2`.
pub fn parse_finite_group(text: &str) -> Result<FinGenAb> {
    let mut moduli: Vec<BigInt> = Vec::new();
    for t in raw_terms(text)? {
        let m = match t.mult {
            Mult::Finite(m) => m,
            Mult::Inf => {
                return err(t.pos, "infinite multiplicity in a finitely generated group");
            }
        };
        let modulus = match t.atom {
            RawAtom::Free => BigInt::from(0),
            RawAtom::Cyclic(n) => BigInt::from(n),
            RawAtom::PrimePower(p, k) => BigInt::from(p).pow(k),
            _ => {
                return err(t.pos, "infinite torsion atom in a finitely generated group");
            }
        };
        if m > 1 << 20 {
            return err(t.pos, "multiplicity too large");
        }
        moduli.extend(std::iter::repeat(modulus).take(m as usize));
    }
    Ok(FinGenAb::from_moduli(&moduli))
}
