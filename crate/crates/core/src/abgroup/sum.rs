use num_bigint::BigInt;
use num_traits::Zero;

use super::{canonicalize, AbMap, FinGenAb};
use crate::error::{Error, Result};
use crate::intlin::IntMatrix;

/// A finite biproduct `⊕ Aᵢ` with its injections `μᵢ` and projections `πᵢ`.
///
/// The total group is canonicalized, so it is generally not the naive
/// concatenation of the summands; `to_canon` and `from_canon` convert
/// between the concatenated coordinates and the canonical ones.
#[derive(Clone, Debug)]
pub struct SumDiagram {
    summands: Vec<FinGenAb>,
    total: FinGenAb,
    offsets: Vec<usize>,
    to_canon: IntMatrix,
    from_canon: IntMatrix,
}

pub fn direct_sum(groups: &[FinGenAb]) -> SumDiagram {
    let mut offsets = Vec::with_capacity(groups.len() + 1);
    let mut moduli = Vec::new();
    for g in groups {
        offsets.push(moduli.len());
        moduli.extend(g.moduli());
    }
    offsets.push(moduli.len());
    let n = moduli.len();
    let rows: Vec<Vec<(usize, BigInt)>> = moduli
        .iter()
        .enumerate()
        .filter(|(_, m)| !m.is_zero())
        .map(|(i, m)| vec![(i, m.clone())])
        .collect();
    let c = canonicalize(&IntMatrix::from_sparse_rows(rows.len(), n, rows));
    SumDiagram {
        summands: groups.to_vec(),
        total: c.group,
        offsets,
        to_canon: c.to_canon,
        from_canon: c.from_canon,
    }
}

impl SumDiagram {
    pub fn summands(&self) -> &[FinGenAb] {
        &self.summands
    }

    pub fn total(&self) -> &FinGenAb {
        &self.total
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// `μᵢ: Aᵢ → ⊕ Aⱼ`.
    pub fn injection(&self, i: usize) -> AbMap {
        let (o, n) = (self.offsets[i], self.summands[i].ngens());
        AbMap::from_raw(
            self.summands[i].clone(),
            self.total.clone(),
            self.to_canon.col_block(o, n),
        )
    }

    /// `πᵢ: ⊕ Aⱼ → Aᵢ`.
    pub fn projection(&self, i: usize) -> AbMap {
        let (o, n) = (self.offsets[i], self.summands[i].ngens());
        AbMap::from_raw(
            self.total.clone(),
            self.summands[i].clone(),
            self.from_canon.row_block(o, n),
        )
    }

    pub fn injections(&self) -> Vec<AbMap> {
        (0..self.len()).map(|i| self.injection(i)).collect()
    }

    pub fn projections(&self) -> Vec<AbMap> {
        (0..self.len()).map(|i| self.projection(i)).collect()
    }

    /// Element of the total group with the given summand components.
    pub fn embed(&self, parts: &[Vec<BigInt>]) -> Vec<BigInt> {
        let naive: Vec<BigInt> = parts.iter().flatten().cloned().collect();
        self.total.reduce(&self.to_canon.mul_vec(&naive))
    }

    /// The map `⊕ Aᵢ → T` restricting to `maps[i]` on summand `i`.
    pub fn copair(&self, target: &FinGenAb, maps: &[AbMap]) -> Result<AbMap> {
        self.check_len(maps.len())?;
        let mut block = IntMatrix::zeros(target.ngens(), 0);
        for (i, m) in maps.iter().enumerate() {
            if m.source() != &self.summands[i] || m.target() != target {
                return Err(Error::EndpointMismatch(format!(
                    "copairing component {} has ends {} -> {}",
                    i,
                    m.source(),
                    m.target()
                )));
            }
            block = block.hstack(m.matrix())?;
        }
        Ok(AbMap::from_raw(
            self.total.clone(),
            target.clone(),
            &block * &self.from_canon,
        ))
    }

    /// The map `T → ⊕ Aᵢ` whose components are `maps[i]`.
    pub fn pair(&self, source: &FinGenAb, maps: &[AbMap]) -> Result<AbMap> {
        self.check_len(maps.len())?;
        let mut block = IntMatrix::zeros(0, source.ngens());
        for (i, m) in maps.iter().enumerate() {
            if m.target() != &self.summands[i] || m.source() != source {
                return Err(Error::EndpointMismatch(format!(
                    "pairing component {} has ends {} -> {}",
                    i,
                    m.source(),
                    m.target()
                )));
            }
            block = block.vstack(m.matrix())?;
        }
        Ok(AbMap::from_raw(
            source.clone(),
            self.total.clone(),
            &self.to_canon * &block,
        ))
    }

    /// `⊕ fᵢ: ⊕ Aᵢ → ⊕ Bᵢ` where `self` is the domain diagram.
    pub fn sum_map(&self, codomain: &SumDiagram, maps: &[AbMap]) -> Result<AbMap> {
        self.check_len(maps.len())?;
        codomain.check_len(maps.len())?;
        for (i, m) in maps.iter().enumerate() {
            if m.source() != &self.summands[i] || m.target() != &codomain.summands[i] {
                return Err(Error::EndpointMismatch(format!(
                    "summand map {} has ends {} -> {}",
                    i,
                    m.source(),
                    m.target()
                )));
            }
        }
        let blocks: Vec<&IntMatrix> = maps.iter().map(AbMap::matrix).collect();
        let diag = IntMatrix::block_diagonal(&blocks);
        let m = &(&codomain.to_canon * &diag) * &self.from_canon;
        Ok(AbMap::from_raw(self.total.clone(), codomain.total.clone(), m))
    }

    /// `∇: A^(n) → A`; every summand must be `A`.
    pub fn codiagonal(&self) -> Result<AbMap> {
        let a = self.common_summand()?;
        let ids = vec![AbMap::identity(&a); self.len()];
        self.copair(&a, &ids)
    }

    /// `Δ: A → Aⁿ`; every summand must be `A`.
    pub fn diagonal(&self) -> Result<AbMap> {
        let a = self.common_summand()?;
        let ids = vec![AbMap::identity(&a); self.len()];
        self.pair(&a, &ids)
    }

    fn common_summand(&self) -> Result<FinGenAb> {
        let first = self
            .summands
            .first()
            .ok_or_else(|| Error::InvalidInput("empty family has no common summand".into()))?;
        if self.summands.iter().any(|s| s != first) {
            return Err(Error::InvalidInput("summands differ".into()));
        }
        Ok(first.clone())
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n != self.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} maps for {} summands",
                n,
                self.len()
            )));
        }
        Ok(())
    }
}

/// `∇: A^(x) → A`.
pub fn codiagonal(a: &FinGenAb, x: usize) -> Result<AbMap> {
    direct_sum(&vec![a.clone(); x]).codiagonal()
}

/// `Δ: A → A^x`.
pub fn diagonal(a: &FinGenAb, x: usize) -> Result<AbMap> {
    direct_sum(&vec![a.clone(); x]).diagonal()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> FinGenAb {
        FinGenAb::cyclic(n)
    }

    fn assert_biproduct(s: &SumDiagram) {
        let mut total = AbMap::zero(s.total(), s.total());
        for i in 0..s.len() {
            for j in 0..s.len() {
                let pm = s.projection(i).compose(&s.injection(j)).unwrap();
                if i == j {
                    assert_eq!(pm, AbMap::identity(&s.summands()[i]));
                } else {
                    assert!(pm.is_zero());
                }
            }
            total = total
                .add(&s.injection(i).compose(&s.projection(i)).unwrap())
                .unwrap();
        }
        assert_eq!(total, AbMap::identity(s.total()));
    }

    #[test]
    fn sums() {
        let s = direct_sum(&[z(2), z(2)]);
        assert_eq!(s.total(), &FinGenAb::from_moduli(&[2.into(), 2.into()]));
        assert_biproduct(&s);
        let s = direct_sum(&[]);
        assert!(s.total().is_trivial());
        assert_biproduct(&s);
        let s = direct_sum(&[z(2), z(4)]);
        assert_eq!(s.total().factors(), &[BigInt::from(2), BigInt::from(4)]);
        assert_biproduct(&s);
        // summands that recombine: ℤ(2) ⊕ ℤ(3) ⊕ ℤ ⊕ ℤ(4)
        let s = direct_sum(&[z(2), z(3), z(0), z(4)]);
        assert_eq!(s.total().to_string(), "Z(2)+Z(12)+Z");
        assert_biproduct(&s);
    }

    #[test]
    fn diagonals() {
        let nabla = codiagonal(&z(2), 2).unwrap();
        assert_eq!(nabla.matrix(), &IntMatrix::from_i64(&[&[1, 1]]));
        let delta = diagonal(&z(3), 3).unwrap();
        assert_eq!(delta.matrix(), &IntMatrix::from_i64(&[&[1], &[1], &[1]]));
        let s = direct_sum(&[z(5), z(5)]);
        let both = s.codiagonal().unwrap().compose(&s.diagonal().unwrap()).unwrap();
        assert_eq!(both, AbMap::multiplication(&z(5), 2));
        assert!(codiagonal(&z(5), 0).is_err());
    }

    #[test]
    fn sum_of_maps() {
        let dom = direct_sum(&[z(2), z(0)]);
        let cod = direct_sum(&[z(4), z(0)]);
        let f = AbMap::new(z(2), z(4), IntMatrix::from_i64(&[&[2]])).unwrap();
        let g = AbMap::multiplication(&z(0), 3);
        let h = dom.sum_map(&cod, &[f.clone(), g.clone()]).unwrap();
        assert_eq!(cod.projection(0).compose(&h).unwrap(), f.compose(&dom.projection(0)).unwrap());
        assert_eq!(cod.projection(1).compose(&h).unwrap(), g.compose(&dom.projection(1)).unwrap());
    }
}
