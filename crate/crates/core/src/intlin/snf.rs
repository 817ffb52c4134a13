//! Smith normal form with unimodular transforms.
//!
//! The elimination works on a sparse copy of the input and always pivots on
//! the nonzero entry of smallest absolute value. Transforms are accumulated
//! alongside: row operations go into `U`, column operations into `V` and
//! (inverted) into `V⁻¹`. `U` and `V` are not unique; only `D` is canonical.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

type SparseVec = BTreeMap<usize, BigInt>;

/// `U·M·V = D` with `U`, `V` unimodular and `D` in Smith form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `v`, tracked during elimination.
    pub v_inv: IntMatrix,
}

impl SnfDecomposition {
    /// Nonzero diagonal entries of `D`, in divisibility order.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i))
            .take_while(|v| !v.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

/// Computes the Smith normal form of `m`. Any shape is accepted, including
/// matrices with zero rows or columns.
pub fn snf(m: &IntMatrix) -> SnfDecomposition {
    let core = Engine::run(m, Track::all());
    let (rows, cols) = m.shape();
    let mut d = IntMatrix::zeros(rows, cols);
    for (k, p) in core.diag.iter().enumerate() {
        d.set(k, k, p.clone());
    }
    SnfDecomposition {
        u: core.u.expect("tracked"),
        d,
        v: core.v.expect("tracked"),
        v_inv: core.v_inv.expect("tracked"),
    }
}

#[derive(Clone, Copy)]
pub(crate) struct Track {
    pub u: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl Track {
    pub fn all() -> Self {
        Track {
            u: true,
            v: true,
            v_inv: true,
        }
    }
}

/// Result of the elimination with the transforms that were asked for.
pub(crate) struct SnfCore {
    pub diag: Vec<BigInt>,
    pub u: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    pub v_inv: Option<IntMatrix>,
}

pub(crate) struct Engine {
    rows: Vec<SparseVec>,
    col_index: Vec<BTreeSet<usize>>,
    u: Option<Vec<SparseVec>>,
    v: Option<Vec<SparseVec>>,
    v_inv: Option<Vec<SparseVec>>,
    pivots: Vec<(usize, usize, BigInt)>,
    lower_bound: BigInt,
}

fn identity_vecs(n: usize) -> Vec<SparseVec> {
    (0..n)
        .map(|i| {
            let mut s = SparseVec::new();
            s.insert(i, BigInt::one());
            s
        })
        .collect()
}

fn axpy(target: &mut SparseVec, q: &BigInt, source: &[(usize, BigInt)]) {
    for (k, v) in source {
        let prod = q * v;
        match target.get_mut(k) {
            Some(t) => {
                *t += prod;
                if t.is_zero() {
                    target.remove(k);
                }
            }
            None => {
                target.insert(*k, prod);
            }
        }
    }
}

fn entries(v: &SparseVec) -> Vec<(usize, BigInt)> {
    v.iter().map(|(k, x)| (*k, x.clone())).collect()
}

impl Engine {
    pub fn run(m: &IntMatrix, track: Track) -> SnfCore {
        let (nr, nc) = m.shape();
        let mut rows = Vec::with_capacity(nr);
        let mut col_index = vec![BTreeSet::new(); nc];
        for i in 0..nr {
            let mut r = SparseVec::new();
            for (c, v) in m.row_entries(i) {
                r.insert(*c, v.clone());
                col_index[*c].insert(i);
            }
            rows.push(r);
        }
        let mut e = Engine {
            rows,
            col_index,
            u: track.u.then(|| identity_vecs(nr)),
            v: track.v.then(|| identity_vecs(nc)),
            v_inv: track.v_inv.then(|| identity_vecs(nc)),
            pivots: Vec::new(),
            lower_bound: BigInt::one(),
        };
        while let Some((r, c)) = e.smallest_entry() {
            e.eliminate_at(r, c);
        }
        e.finish(nr, nc)
    }

    fn smallest_entry(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                let a = v.abs();
                if a == self.lower_bound {
                    return Some((r, *c));
                }
                if best.as_ref().map_or(true, |(_, _, b)| a < *b) {
                    best = Some((r, *c, a));
                }
            }
        }
        best.map(|(r, c, _)| (r, c))
    }

    /// row `target` += q · row `source`
    fn row_axpy(&mut self, target: usize, q: &BigInt, source: usize) {
        let src = entries(&self.rows[source]);
        for (c, v) in &src {
            let prod = q * v;
            let row = &mut self.rows[target];
            match row.get_mut(c) {
                Some(t) => {
                    *t += prod;
                    if t.is_zero() {
                        row.remove(c);
                        self.col_index[*c].remove(&target);
                    }
                }
                None => {
                    row.insert(*c, prod);
                    self.col_index[*c].insert(target);
                }
            }
        }
        if let Some(u) = self.u.as_mut() {
            let src = entries(&u[source]);
            axpy(&mut u[target], q, &src);
        }
    }

    /// col `target` += q · col `source`
    fn col_axpy(&mut self, target: usize, q: &BigInt, source: usize) {
        let src_rows: Vec<usize> = self.col_index[source].iter().copied().collect();
        for r in src_rows {
            let prod = q * &self.rows[r][&source];
            let row = &mut self.rows[r];
            match row.get_mut(&target) {
                Some(t) => {
                    *t += prod;
                    if t.is_zero() {
                        row.remove(&target);
                        self.col_index[target].remove(&r);
                    }
                }
                None => {
                    row.insert(target, prod);
                    self.col_index[target].insert(r);
                }
            }
        }
        if let Some(v) = self.v.as_mut() {
            let src = entries(&v[source]);
            axpy(&mut v[target], q, &src);
        }
        if let Some(vi) = self.v_inv.as_mut() {
            let src = entries(&vi[target]);
            axpy(&mut vi[source], &-q, &src);
        }
    }

    fn eliminate_at(&mut self, mut r: usize, mut c: usize) {
        loop {
            let p = self.rows[r][&c].clone();

            // clear column c below/above the pivot
            let others: Vec<usize> = self.col_index[c].iter().copied().filter(|&i| i != r).collect();
            for r2 in others {
                let q = &self.rows[r2][&c] / &p;
                if !q.is_zero() {
                    self.row_axpy(r2, &-q, r);
                }
            }
            if let Some(r2) = self.smallest_in_col(c, r) {
                r = r2;
                continue;
            }

            // clear row r; column c now holds only the pivot
            let others: Vec<usize> = self.rows[r].keys().copied().filter(|&j| j != c).collect();
            for c2 in others {
                let q = &self.rows[r][&c2] / &p;
                if !q.is_zero() {
                    self.col_axpy(c2, &-q, c);
                }
            }
            if let Some(c2) = self.smallest_in_row(r, c) {
                c = c2;
                continue;
            }

            let pa = p.abs();
            if pa != self.lower_bound && !pa.is_one() {
                if let Some(r2) = self.non_multiple_row(&pa, r) {
                    self.row_axpy(r, &BigInt::one(), r2);
                    continue;
                }
            }

            self.rows[r].remove(&c);
            self.col_index[c].remove(&r);
            self.pivots.push((r, c, p));
            self.lower_bound = pa;
            return;
        }
    }

    fn smallest_in_col(&self, c: usize, skip: usize) -> Option<usize> {
        self.col_index[c]
            .iter()
            .filter(|&&i| i != skip)
            .min_by_key(|&&i| self.rows[i][&c].abs())
            .copied()
    }

    fn smallest_in_row(&self, r: usize, skip: usize) -> Option<usize> {
        self.rows[r]
            .iter()
            .filter(|(j, _)| **j != skip)
            .min_by_key(|(_, v)| v.abs())
            .map(|(j, _)| *j)
    }

    fn non_multiple_row(&self, p: &BigInt, skip: usize) -> Option<usize> {
        self.rows.iter().enumerate().find_map(|(i, row)| {
            (i != skip && row.values().any(|v| !(v % p).is_zero())).then_some(i)
        })
    }

    fn finish(self, nr: usize, nc: usize) -> SnfCore {
        let mut row_order: Vec<usize> = self.pivots.iter().map(|(r, _, _)| *r).collect();
        let mut col_order: Vec<usize> = self.pivots.iter().map(|(_, c, _)| *c).collect();
        let used_r: BTreeSet<usize> = row_order.iter().copied().collect();
        let used_c: BTreeSet<usize> = col_order.iter().copied().collect();
        row_order.extend((0..nr).filter(|i| !used_r.contains(i)));
        col_order.extend((0..nc).filter(|j| !used_c.contains(j)));

        let negative: BTreeSet<usize> = self
            .pivots
            .iter()
            .filter(|(_, _, p)| p.is_negative())
            .map(|(r, _, _)| *r)
            .collect();
        let diag = self.pivots.iter().map(|(_, _, p)| p.abs()).collect();

        let u = self.u.map(|u| {
            let rows = row_order
                .iter()
                .map(|&r| {
                    let flip = negative.contains(&r);
                    u[r].iter()
                        .map(|(k, x)| (*k, if flip { -x } else { x.clone() }))
                        .collect()
                })
                .collect();
            IntMatrix::from_sparse_rows(nr, nr, rows)
        });
        let v = self.v.map(|v| {
            let mut rows = vec![Vec::new(); nc];
            for (new, &old) in col_order.iter().enumerate() {
                for (k, x) in &v[old] {
                    rows[*k].push((new, x.clone()));
                }
            }
            IntMatrix::from_sparse_rows(nc, nc, rows)
        });
        let v_inv = self.v_inv.map(|vi| {
            let rows = col_order.iter().map(|&c| entries(&vi[c])).collect();
            IntMatrix::from_sparse_rows(nc, nc, rows)
        });
        SnfCore { diag, u, v, v_inv }
    }
}
