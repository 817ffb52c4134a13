use num_bigint::BigInt;
use num_traits::Zero;

use super::{canonicalize, FinGenAb};
use crate::error::{Error, Result};
use crate::intlin::{mod_floor, IntMatrix, ModSolver};

/// A homomorphism between canonical groups. Column `i` of the matrix is the
/// image of source generator `i`; the matrix is kept reduced modulo the
/// target moduli, so `==` is equality of maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbMap {
    source: FinGenAb,
    target: FinGenAb,
    matrix: IntMatrix,
}

impl AbMap {
    /// Checks shape and well-definedness.
    pub fn new(source: FinGenAb, target: FinGenAb, matrix: IntMatrix) -> Result<Self> {
        if matrix.shape() != (target.ngens(), source.ngens()) {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{}, expected {}x{} for {} -> {}",
                matrix.rows(),
                matrix.cols(),
                target.ngens(),
                source.ngens(),
                source,
                target
            )));
        }
        let map = Self::from_raw(source, target, matrix);
        if let Some(i) = map.ill_defined_column() {
            return Err(Error::IllDefinedMap(format!(
                "generator {} of order {} is sent to an element of larger order",
                i,
                map.source.modulus(i)
            )));
        }
        Ok(map)
    }

    /// Trusted constructor; only reduces. Callers guarantee well-definedness.
    pub(crate) fn from_raw(source: FinGenAb, target: FinGenAb, matrix: IntMatrix) -> Self {
        debug_assert_eq!(matrix.shape(), (target.ngens(), source.ngens()));
        let matrix = matrix.reduce_rows(&target.moduli());
        AbMap {
            source,
            target,
            matrix,
        }
    }

    /// First source generator whose relation is not respected.
    fn ill_defined_column(&self) -> Option<usize> {
        let mut bad = None;
        for j in 0..self.matrix.rows() {
            let t = self.target.modulus(j);
            for (i, v) in self.matrix.row_entries(j) {
                let d = self.source.modulus(*i);
                let ok = if t.is_zero() {
                    d.is_zero()
                } else {
                    mod_floor(&(v * &d), &t).is_zero()
                };
                if !ok {
                    bad = Some(bad.map_or(*i, |b: usize| b.min(*i)));
                }
            }
        }
        bad
    }

    pub fn identity(g: &FinGenAb) -> Self {
        AbMap {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMatrix::identity(g.ngens()),
        }
    }

    pub fn zero(source: &FinGenAb, target: &FinGenAb) -> Self {
        AbMap {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.ngens(), source.ngens()),
        }
    }

    /// Multiplication by `k` on `g`.
    pub fn multiplication(g: &FinGenAb, k: i64) -> Self {
        Self::from_raw(
            g.clone(),
            g.clone(),
            IntMatrix::identity(g.ngens()).scale(&BigInt::from(k)),
        )
    }

    pub fn source(&self) -> &FinGenAb {
        &self.source
    }

    pub fn target(&self) -> &FinGenAb {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.target.reduce(&self.matrix.mul_vec(x))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &AbMap) -> Result<AbMap> {
        if first.target != self.source {
            return Err(Error::EndpointMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source, self.target, first.source, first.target
            )));
        }
        Ok(Self::from_raw(
            first.source.clone(),
            self.target.clone(),
            &self.matrix * &first.matrix,
        ))
    }

    fn same_ends(&self, other: &AbMap) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::EndpointMismatch(format!(
                "{} -> {} versus {} -> {}",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &AbMap) -> Result<AbMap> {
        self.same_ends(other)?;
        Ok(Self::from_raw(
            self.source.clone(),
            self.target.clone(),
            &self.matrix + &other.matrix,
        ))
    }

    pub fn sub(&self, other: &AbMap) -> Result<AbMap> {
        self.same_ends(other)?;
        Ok(Self::from_raw(
            self.source.clone(),
            self.target.clone(),
            &self.matrix - &other.matrix,
        ))
    }

    pub fn neg(&self) -> AbMap {
        Self::from_raw(self.source.clone(), self.target.clone(), -&self.matrix)
    }

    pub fn scale(&self, k: &BigInt) -> AbMap {
        Self::from_raw(self.source.clone(), self.target.clone(), self.matrix.scale(k))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Generators of `{x ∈ ℤⁿ : f(x) = 0}`, `n = ngens(source)`.
    fn kernel_lattice(&self) -> Vec<Vec<BigInt>> {
        ModSolver::new(&self.matrix, &self.target.moduli())
            .expect("shape")
            .kernel_generators()
    }

    pub fn is_mono(&self) -> bool {
        self.kernel_lattice()
            .iter()
            .all(|x| self.source.is_zero_element(x))
    }

    pub fn is_epi(&self) -> bool {
        ModSolver::new(&self.matrix, &self.target.moduli())
            .expect("shape")
            .is_surjective()
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    /// Some `x` with `f(x) = y`, if one exists.
    pub fn preimage(&self, y: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        let s = ModSolver::new(&self.matrix, &self.target.moduli())?;
        Ok(s.solve(y)?.map(|x| self.source.reduce(&x)))
    }

    /// The unique `h` with `self ∘ h = w`, when `self` is mono and `w`
    /// lands in its image; `None` when `w` does not factor.
    pub fn lift_through(&self, w: &AbMap) -> Result<Option<AbMap>> {
        if w.target != self.target {
            return Err(Error::EndpointMismatch(format!(
                "{} does not land in {}",
                w.target, self.target
            )));
        }
        let s = ModSolver::new(&self.matrix, &self.target.moduli())?;
        match s.solve_matrix(&w.matrix)? {
            Some(m) => Ok(Some(AbMap::new(w.source.clone(), self.source.clone(), m)?)),
            None => Ok(None),
        }
    }

    /// Some `h` with `h ∘ self = w`, when one exists. Solved as a linear
    /// system in the entries of `h`, including the constraint that `h` is
    /// well defined on its source.
    pub fn factor_through(&self, w: &AbMap) -> Result<Option<AbMap>> {
        if w.source != self.source {
            return Err(Error::EndpointMismatch(format!(
                "{} does not start at {}",
                w.source, self.source
            )));
        }
        let system = self.factor_system();
        let n_mid = self.target.ngens();
        let mut out_rows = Vec::with_capacity(w.target.ngens());
        for t in 0..w.target.ngens() {
            let moduli = vec![w.target.modulus(t); system.rows()];
            let s = ModSolver::new(&system, &moduli)?;
            let mut rhs = w.matrix.row_dense(t);
            rhs.extend(std::iter::repeat(BigInt::zero()).take(n_mid));
            match s.solve(&rhs)? {
                Some(x) => out_rows.push(x),
                None => return Ok(None),
            }
        }
        let m = IntMatrix::from_dense(out_rows, n_mid)?;
        Ok(Some(AbMap::new(self.target.clone(), w.target.clone(), m)?))
    }

    /// Generators of `{h : h ∘ self = 0}` for maps into `t`; all of them are
    /// zero exactly when `self` is epi, i.e. factorizations are unique.
    pub fn annihilating_maps(&self, t: &FinGenAb) -> Result<Vec<AbMap>> {
        let system = self.factor_system();
        let n_mid = self.target.ngens();
        let mut out = Vec::new();
        for r in 0..t.ngens() {
            let moduli = vec![t.modulus(r); system.rows()];
            let s = ModSolver::new(&system, &moduli)?;
            for x in s.kernel_generators() {
                let mut m = IntMatrix::zeros(t.ngens(), n_mid);
                for (j, v) in x.into_iter().enumerate() {
                    m.set(r, j, v);
                }
                let h = AbMap::from_raw(self.target.clone(), t.clone(), m);
                if !h.is_zero() {
                    out.push(h);
                }
            }
        }
        Ok(out)
    }

    /// For one row of an unknown `h: target → T` with modulus `t`, the
    /// row vector `x` must satisfy `x·M ≡ w_r` and `mᵢ·xᵢ ≡ 0` for each
    /// generator `i` of `target`, all modulo `t`. Returns the stacked system.
    fn factor_system(&self) -> IntMatrix {
        let n_src = self.source.ngens();
        let n_mid = self.target.ngens();
        let mut rows = Vec::with_capacity(n_src + n_mid);
        let mt = self.matrix.transpose();
        for i in 0..n_src {
            rows.push(mt.row_entries(i).to_vec());
        }
        for i in 0..n_mid {
            let m = self.target.modulus(i);
            rows.push(if m.is_zero() { vec![] } else { vec![(i, m)] });
        }
        IntMatrix::from_sparse_rows(n_src + n_mid, n_mid, rows)
    }
}

/// The subgroup of `g` generated by the given elements, as a canonical
/// group with its inclusion.
pub fn subgroup(g: &FinGenAb, generators: &[Vec<BigInt>]) -> (FinGenAb, AbMap) {
    let gens = IntMatrix::from_columns(g.ngens(), generators);
    let solver = ModSolver::new(&gens, &g.moduli()).expect("shape");
    let relations = solver.kernel_generators();
    let rel = IntMatrix::from_dense(relations, generators.len()).expect("shape");
    let c = canonicalize(&rel);
    let incl = AbMap::from_raw(c.group.clone(), g.clone(), &gens * &c.from_canon);
    (c.group, incl)
}

pub fn kernel(f: &AbMap) -> (FinGenAb, AbMap) {
    subgroup(&f.source, &f.kernel_lattice())
}

pub fn image(f: &AbMap) -> (FinGenAb, AbMap) {
    subgroup(&f.target, &f.matrix.columns())
}

/// `target / image(f)` with the projection.
pub fn cokernel(f: &AbMap) -> (FinGenAb, AbMap) {
    let (c, proj, _) = cokernel_with_section(f);
    (c, proj)
}

/// Cokernel plus a set-theoretic section: column `k` of the returned
/// matrix is a representative in `f.target()` of cokernel generator `k`.
pub(crate) fn cokernel_with_section(f: &AbMap) -> (FinGenAb, AbMap, IntMatrix) {
    let n = f.target.ngens();
    let mut rows: Vec<Vec<(usize, BigInt)>> = f
        .target
        .factors()
        .iter()
        .enumerate()
        .map(|(i, d)| vec![(i, d.clone())])
        .collect();
    let mt = f.matrix.transpose();
    for i in 0..mt.rows() {
        rows.push(mt.row_entries(i).to_vec());
    }
    let rel = IntMatrix::from_sparse_rows(rows.len(), n, rows);
    let c = canonicalize(&rel);
    let proj = AbMap::from_raw(f.target.clone(), c.group.clone(), c.to_canon);
    (c.group, proj, c.from_canon)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn z(n: u64) -> FinGenAb {
        FinGenAb::cyclic(n)
    }

    #[test]
    fn well_definedness() {
        // ℤ(2) → ℤ(4), 1 ↦ 2 is fine; 1 ↦ 1 is not
        assert!(AbMap::new(z(2), z(4), IntMatrix::from_i64(&[&[2]])).is_ok());
        assert!(matches!(
            AbMap::new(z(2), z(4), IntMatrix::from_i64(&[&[1]])),
            Err(Error::IllDefinedMap(_))
        ));
        // torsion cannot map nontrivially to ℤ
        assert!(AbMap::new(z(2), z(0), IntMatrix::from_i64(&[&[1]])).is_err());
        assert!(AbMap::new(z(0), z(3), IntMatrix::from_i64(&[&[5]])).is_ok());
        assert!(matches!(
            AbMap::new(z(2), z(4), IntMatrix::from_i64(&[&[1, 0]])),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn equality_is_modulo_relations() {
        let a = AbMap::new(z(0), z(4), IntMatrix::from_i64(&[&[1]])).unwrap();
        let b = AbMap::new(z(0), z(4), IntMatrix::from_i64(&[&[5]])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn kernels_and_cokernels() {
        let two_z4 = AbMap::multiplication(&z(4), 2);
        assert_eq!(kernel(&two_z4).0, z(2));
        let two_z = AbMap::multiplication(&z(0), 2);
        assert_eq!(cokernel(&two_z).0, z(2));
        assert_eq!(kernel(&AbMap::identity(&z(6))).0, FinGenAb::zero());
        let (k, incl) = kernel(&two_z4);
        assert!(incl.is_mono());
        assert!(two_z4.compose(&incl).unwrap().is_zero());
        assert_eq!(k.order(), Some(BigInt::from(2)));
        let (_, proj) = cokernel(&two_z4);
        assert!(proj.is_epi());
        assert!(proj.compose(&two_z4).unwrap().is_zero());
    }

    #[test]
    fn mono_and_epi() {
        let two_z = AbMap::multiplication(&z(0), 2);
        assert!(two_z.is_mono() && !two_z.is_epi());
        let red = AbMap::new(z(4), z(2), IntMatrix::from_i64(&[&[1]])).unwrap();
        assert!(red.is_epi() && !red.is_mono());
    }

    #[test]
    fn kernel_factorization() {
        // any map killed by ×2 on ℤ(4) factors through its kernel
        let f = AbMap::multiplication(&z(4), 2);
        let (_, incl) = kernel(&f);
        let w = AbMap::new(z(2), z(4), IntMatrix::from_i64(&[&[2]])).unwrap();
        assert!(f.compose(&w).unwrap().is_zero());
        let h = incl.lift_through(&w).unwrap().unwrap();
        assert_eq!(incl.compose(&h).unwrap(), w);
    }

    #[test]
    fn cokernel_factorization_is_unique() {
        let f = AbMap::multiplication(&z(0), 2);
        let (c, proj) = cokernel(&f);
        let w = AbMap::new(z(0), z(6), IntMatrix::from_i64(&[&[3]])).unwrap();
        assert!(w.compose(&f).unwrap().is_zero());
        let h = proj.factor_through(&w).unwrap().unwrap();
        assert_eq!(h.source(), &c);
        assert_eq!(h.compose(&proj).unwrap(), w);
        assert!(proj.annihilating_maps(&z(6)).unwrap().is_empty());
        // ×2 is not epi, so maps out of ℤ killing it exist
        assert!(!f.annihilating_maps(&z(6)).unwrap().is_empty());
        // and w = id does not factor through ×2's cokernel
        let id = AbMap::identity(&z(0));
        assert!(proj.factor_through(&id).unwrap().is_none());
    }

    #[test]
    fn preimages() {
        let f = AbMap::multiplication(&z(6), 2);
        assert!(f.preimage(&big(&[1])).unwrap().is_none());
        let x = f.preimage(&big(&[4])).unwrap().unwrap();
        assert_eq!(f.apply(&x), big(&[4]));
    }
}
