use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{mod_floor, IntMatrix};

/// Row-style Hermite normal form: the nonzero rows of the result span the
/// same lattice as the rows of `m`, are in echelon form with positive
/// pivots, and entries above each pivot are reduced into `[0, pivot)`.
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    let cols = m.cols();
    let mut a = m.to_dense();
    let mut top = 0;
    for c in 0..cols {
        if top == a.len() {
            break;
        }
        // gcd-combine all rows at or below `top` into row `top`
        for i in top + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let ext = a[top][c].extended_gcd(&a[i][c]);
            let (x, y, g) = (ext.x, ext.y, ext.gcd);
            let (p, q) = (&a[top][c] / &g, &a[i][c] / &g);
            let (rt, ri) = (a[top].clone(), a[i].clone());
            for j in 0..cols {
                a[top][j] = &x * &rt[j] + &y * &ri[j];
                a[i][j] = &p * &ri[j] - &q * &rt[j];
            }
        }
        if a[top][c].is_zero() {
            continue;
        }
        if a[top][c].is_negative() {
            for v in a[top].iter_mut() {
                *v = -&*v;
            }
        }
        let piv = a[top][c].clone();
        for i in 0..top {
            let q = a[i][c].div_floor(&piv);
            if !q.is_zero() {
                let pivot_row = a[top].clone();
                for j in 0..cols {
                    a[i][j] -= &q * &pivot_row[j];
                }
            }
        }
        top += 1;
    }
    a.truncate(top);
    IntMatrix::from_dense(a, cols).expect("rectangular")
}

/// A sublattice of ℤⁿ kept in Hermite normal form, so equality of lattices
/// is equality of bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: IntMatrix,
}

impl Lattice {
    pub fn from_generators(dim: usize, generators: &[Vec<BigInt>]) -> Self {
        let dense: Vec<Vec<BigInt>> = generators.to_vec();
        let m = IntMatrix::from_dense(dense, dim).expect("generator length");
        Lattice {
            dim,
            basis: hnf(&m),
        }
    }

    /// The lattice `⊕ moduli[i]·ℤ` (modulus 0 contributes nothing).
    pub fn diagonal(moduli: &[BigInt]) -> Self {
        let gens: Vec<Vec<BigInt>> = moduli
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(i, m)| {
                let mut v = vec![BigInt::zero(); moduli.len()];
                v[i] = m.clone();
                v
            })
            .collect();
        Self::from_generators(moduli.len(), &gens)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn join(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        let m = self.basis.vstack(&other.basis).expect("same dim");
        Lattice {
            dim: self.dim,
            basis: hnf(&m),
        }
    }

    /// Membership by reduction against the echelon basis.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut r = v.to_vec();
        for i in 0..self.basis.rows() {
            let row = self.basis.row_entries(i);
            let (pc, pv) = &row[0];
            if r[*pc].is_zero() {
                continue;
            }
            if !(&r[*pc] % pv).is_zero() {
                return false;
            }
            let q = &r[*pc] / pv;
            for (c, x) in row {
                r[*c] -= &q * x;
            }
        }
        r.iter().all(Zero::is_zero)
    }
}

/// Reduces `v` componentwise modulo `moduli` (zero modulus: untouched).
pub fn reduce_vec(v: &[BigInt], moduli: &[BigInt]) -> Vec<BigInt> {
    v.iter().zip(moduli).map(|(x, m)| mod_floor(x, m)).collect()
}
