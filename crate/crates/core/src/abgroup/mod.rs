//! Finitely generated abelian groups in invariant-factor form, morphisms
//! between them, and the finite limits and colimits the universal
//! constructions are built from.
//!
//! A group `ℤʳ ⊕ ℤ(d₁) ⊕ … ⊕ ℤ(dₖ)` has `k + r` canonical generators:
//! the torsion generators first (moduli `d₁ | d₂ | … | dₖ`, all `≥ 2`), then
//! the free ones (modulus 0). Elements are integer vectors reduced
//! componentwise modulo these moduli.

mod limits;
mod map;
mod sum;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intlin::{mod_floor, Engine, IntMatrix, Track};

pub use limits::{pullback, pushout, Pullback, Pushout};
pub use map::{cokernel, image, kernel, subgroup, AbMap};
pub use sum::{codiagonal, diagonal, direct_sum, SumDiagram};

/// `ℤ^rank ⊕ ℤ(d₁) ⊕ … ⊕ ℤ(dₖ)` with `2 ≤ d₁ | d₂ | … | dₖ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinGenAb {
    rank: usize,
    factors: Arc<[BigInt]>,
}

impl FinGenAb {
    /// Validates canonical form.
    pub fn new(rank: usize, factors: Vec<BigInt>) -> Result<Self> {
        for (i, d) in factors.iter().enumerate() {
            if d < &BigInt::from(2) {
                return Err(Error::InvalidInput(format!(
                    "invariant factor {} must be at least 2",
                    d
                )));
            }
            if let Some(next) = factors.get(i + 1) {
                if !(next % d).is_zero() {
                    return Err(Error::InvalidInput(format!(
                        "invariant factor {} does not divide {}",
                        d, next
                    )));
                }
            }
        }
        Ok(FinGenAb {
            rank,
            factors: factors.into(),
        })
    }

    /// The group `⊕ ℤ/mᵢ` for an arbitrary list of cyclic orders
    /// (0 meaning ℤ, 1 meaning the trivial group), brought to canonical form.
    pub fn from_moduli(moduli: &[BigInt]) -> Self {
        let rows: Vec<Vec<(usize, BigInt)>> = moduli
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(i, m)| vec![(i, m.abs())])
            .collect();
        let rel = IntMatrix::from_sparse_rows(rows.len(), moduli.len(), rows);
        canonicalize(&rel).group
    }

    pub fn zero() -> Self {
        FinGenAb {
            rank: 0,
            factors: Arc::from(Vec::new()),
        }
    }

    pub fn free(rank: usize) -> Self {
        FinGenAb {
            rank,
            factors: Arc::from(Vec::new()),
        }
    }

    /// `ℤ(n)`; `n = 1` gives the trivial group and `n = 0` gives ℤ.
    pub fn cyclic(n: u64) -> Self {
        Self::from_moduli(&[BigInt::from(n)])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn torsion_gens(&self) -> usize {
        self.factors.len()
    }

    pub fn ngens(&self) -> usize {
        self.factors.len() + self.rank
    }

    /// Modulus of canonical generator `i` (0 for free generators).
    pub fn modulus(&self, i: usize) -> BigInt {
        self.factors.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn moduli(&self) -> Vec<BigInt> {
        let mut m = self.factors.to_vec();
        m.extend(std::iter::repeat(BigInt::zero()).take(self.rank));
        m
    }

    pub fn is_trivial(&self) -> bool {
        self.ngens() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Order of a finite group; `None` when the group has free rank.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.factors.iter().fold(BigInt::one(), |a, d| a * d))
    }

    /// Smallest `n > 0` with `n·G = 0`; `None` when the group has free rank.
    pub fn exponent(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.factors.last().cloned().unwrap_or_else(BigInt::one))
    }

    /// Torsion subgroup: the free rank is dropped.
    pub fn torsion_part(&self) -> FinGenAb {
        FinGenAb {
            rank: 0,
            factors: self.factors.clone(),
        }
    }

    /// Reduces a coordinate vector to normal form.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        debug_assert_eq!(v.len(), self.ngens());
        v.iter()
            .enumerate()
            .map(|(i, x)| match self.factors.get(i) {
                Some(d) => mod_floor(x, d),
                None => x.clone(),
            })
            .collect()
    }

    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Unit vector of canonical generator `i`.
    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.ngens()];
        v[i] = BigInt::one();
        v
    }

    /// All elements of a finite group in lexicographic order of their
    /// normal-form coordinates, refusing groups larger than `budget`.
    pub fn elements(&self, budget: u64) -> Result<Vec<Vec<BigInt>>> {
        let order = self
            .order()
            .ok_or_else(|| Error::Unsupported("cannot enumerate an infinite group".into()))?;
        if order > BigInt::from(budget) {
            return Err(Error::BudgetExceeded(format!(
                "group of order {} exceeds enumeration budget {}",
                order, budget
            )));
        }
        Ok(odometer(&self.factors))
    }

    /// Parses an expression such as `Z(4)+Z(6)+Z^2` (composite orders are
    /// allowed; `Z` and `Z^r` denote free summands).
    pub fn parse(text: &str) -> Result<Self> {
        crate::torsioncat::parse_finite_group(text)
    }
}

/// All tuples `0 ≤ xᵢ < bounds[i]`, first coordinate most significant.
pub(crate) fn odometer(bounds: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut out = vec![Vec::new()];
    for b in bounds {
        let mut next = Vec::new();
        for prefix in &out {
            let mut k = BigInt::zero();
            while &k < b {
                let mut p = prefix.clone();
                p.push(k.clone());
                next.push(p);
                k += 1;
            }
        }
        out = next;
    }
    out
}

impl fmt::Display for FinGenAb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.factors.iter().map(|d| format!("Z({})", d)).collect();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{}", r)),
        }
        write!(f, "{}", parts.join("+"))
    }
}

impl fmt::Debug for FinGenAb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinGenAb({})", self)
    }
}

/// A canonical form together with the coordinate change from the
/// presentation's generators.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub group: FinGenAb,
    /// `ngens(group) × n`: presentation coordinates → canonical coordinates.
    pub to_canon: IntMatrix,
    /// `n × ngens(group)`: canonical generator → representative in ℤⁿ.
    pub from_canon: IntMatrix,
}

/// Canonical form of `ℤⁿ / rowspace(relations)`, where `n` is the number
/// of columns.
pub fn canonicalize(relations: &IntMatrix) -> Canonical {
    let n = relations.cols();
    let nonzero: Vec<usize> = (0..relations.rows())
        .filter(|&i| !relations.row_entries(i).is_empty())
        .collect();
    let rel = relations.select_rows(&nonzero);
    let core = Engine::run(
        &rel,
        Track {
            u: false,
            v: true,
            v_inv: true,
        },
    );
    let v = core.v.expect("tracked");
    let v_inv = core.v_inv.expect("tracked");

    let mut kept = Vec::new();
    let mut factors = Vec::new();
    for (k, d) in core.diag.iter().enumerate() {
        if !d.is_one() {
            kept.push(k);
            factors.push(d.clone());
        }
    }
    let rank = n - core.diag.len();
    kept.extend(core.diag.len()..n);

    let to_canon = v.transpose().select_rows(&kept);
    let from_canon = v_inv.select_rows(&kept).transpose();
    let group = FinGenAb {
        rank,
        factors: factors.into(),
    };
    let to_canon = to_canon.reduce_rows(&group.moduli());
    Canonical {
        group,
        to_canon,
        from_canon,
    }
}
