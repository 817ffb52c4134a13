use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use super::snf::{Engine, Track};
use crate::error::{Error, Result};

/// Reusable solver for `M·x ≡ b` where row `i` is read modulo `moduli[i]`
/// (modulus 0 means the row lives in ℤ).
///
/// The system is rewritten as `[M | diag(moduli)]·(x, y) = b` over ℤ and
/// the Smith form of the augmented matrix is computed once, so many
/// right-hand sides can be solved cheaply.
pub struct ModSolver {
    unknowns: usize,
    rows: usize,
    diag: Vec<BigInt>,
    u: IntMatrix,
    /// First `unknowns` rows of `V`.
    v_top: IntMatrix,
    aug_cols: usize,
}

impl ModSolver {
    pub fn new(m: &IntMatrix, moduli: &[BigInt]) -> Result<Self> {
        if moduli.len() != m.rows() {
            return Err(Error::DimensionMismatch(format!(
                "{} moduli for {} rows",
                moduli.len(),
                m.rows()
            )));
        }
        let aug = augment(m, moduli);
        let core = Engine::run(
            &aug,
            Track {
                u: true,
                v: true,
                v_inv: false,
            },
        );
        let v = core.v.expect("tracked");
        Ok(ModSolver {
            unknowns: m.cols(),
            rows: m.rows(),
            diag: core.diag,
            u: core.u.expect("tracked"),
            v_top: v.row_block(0, m.cols()),
            aug_cols: aug.cols(),
        })
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    /// A solution of `M·x ≡ b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has {} entries, expected {}",
                b.len(),
                self.rows
            )));
        }
        let w = self.u.mul_vec(b);
        let rank = self.diag.len();
        if w[rank..].iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
        let mut z = vec![BigInt::zero(); self.aug_cols];
        for k in 0..rank {
            let (q, r) = (&w[k] / &self.diag[k], &w[k] % &self.diag[k]);
            if !r.is_zero() {
                return Ok(None);
            }
            z[k] = q;
        }
        Ok(Some(self.v_top.mul_vec(&z)))
    }

    /// Solves `M·X ≡ B` column by column with sparse products, or `None`
    /// when some column is inconsistent.
    pub fn solve_matrix(&self, b: &IntMatrix) -> Result<Option<IntMatrix>> {
        if b.rows() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand sides have {} rows, expected {}",
                b.rows(),
                self.rows
            )));
        }
        let w = self.u.checked_mul(b)?;
        let rank = self.diag.len();
        if (rank..w.rows()).any(|i| !w.row_entries(i).is_empty()) {
            return Ok(None);
        }
        let mut z: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); self.aug_cols];
        for (k, d) in self.diag.iter().enumerate() {
            for (j, x) in w.row_entries(k) {
                let (q, r) = (x / d, x % d);
                if !r.is_zero() {
                    return Ok(None);
                }
                z[k].push((*j, q));
            }
        }
        let z = IntMatrix::from_sparse_rows(self.aug_cols, b.cols(), z);
        Ok(Some(self.v_top.checked_mul(&z)?))
    }

    /// Generators of the lattice `{x : M·x ≡ 0}`.
    pub fn kernel_generators(&self) -> Vec<Vec<BigInt>> {
        let rank = self.diag.len();
        let cols = self.v_top.columns();
        cols.into_iter()
            .skip(rank)
            .filter(|c| c.iter().any(|x| !x.is_zero()))
            .collect()
    }

    /// Whether `x ↦ M·x` maps onto the product of the cyclic row quotients.
    pub fn is_surjective(&self) -> bool {
        self.diag.len() == self.rows && self.diag.iter().all(|d| d.is_one())
    }
}

/// `[M | diag(m)]` keeping only the columns for nonzero moduli.
pub(crate) fn augment(m: &IntMatrix, moduli: &[BigInt]) -> IntMatrix {
    let nz: Vec<usize> = (0..moduli.len()).filter(|&i| !moduli[i].is_zero()).collect();
    let mut rows: Vec<Vec<(usize, BigInt)>> = (0..m.rows()).map(|i| m.row_entries(i).to_vec()).collect();
    for (k, &i) in nz.iter().enumerate() {
        rows[i].push((m.cols() + k, moduli[i].clone()));
    }
    IntMatrix::from_sparse_rows(m.rows(), m.cols() + nz.len(), rows)
}

/// Solves `M·x ≡ b` row-wise modulo `moduli`.
pub fn solve_mod(m: &IntMatrix, b: &[BigInt], moduli: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    ModSolver::new(m, moduli)?.solve(b)
}

/// Whether the induced map `ℤⁿ → ⊕ ℤ/moduli[i]` is onto.
pub fn is_surjective_mod(m: &IntMatrix, moduli: &[BigInt]) -> Result<bool> {
    Ok(ModSolver::new(m, moduli)?.is_surjective())
}
