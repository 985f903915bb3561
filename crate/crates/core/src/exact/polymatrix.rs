//! Square matrices whose entries are [`SparsePoly`] over a shared registry.

use std::fmt;

use super::poly::SparsePoly;
use super::qmatrix::QMatrix;
use super::rational::Rational;
use super::registry::VarRegistry;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    dim: usize,
    registry: VarRegistry,
    entries: Vec<SparsePoly>,
}

impl PolyMatrix {
    pub fn zero(dim: usize, registry: &VarRegistry) -> Self {
        PolyMatrix { dim, registry: registry.clone(), entries: vec![SparsePoly::zero(registry); dim * dim] }
    }

    pub fn identity(dim: usize, registry: &VarRegistry) -> Self {
        PolyMatrix::from_rational(&QMatrix::identity(dim), registry)
    }

    pub fn from_rational(m: &QMatrix, registry: &VarRegistry) -> Self {
        let n = m.dim();
        let mut out = PolyMatrix::zero(n, registry);
        for (i, j, v) in m.nonzero_entries() {
            out.entries[i * n + j] = SparsePoly::constant(registry, v.clone());
        }
        out
    }

    /// Builds from row-major entries; all are embedded into their merged registry.
    pub fn from_entries(dim: usize, entries: Vec<SparsePoly>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: entries.len() });
        }
        let registry = entries.iter().fold(VarRegistry::empty(), |acc, p| acc.merge(p.registry()));
        let entries = entries.iter().map(|p| p.embed(&registry)).collect();
        Ok(PolyMatrix { dim, registry, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn registry(&self) -> &VarRegistry {
        &self.registry
    }

    /// Zero-based access.
    pub fn get(&self, i: usize, j: usize) -> &SparsePoly {
        &self.entries[i * self.dim + j]
    }

    pub fn embed(&self, target: &VarRegistry) -> PolyMatrix {
        if &self.registry == target {
            return self.clone();
        }
        PolyMatrix {
            dim: self.dim,
            registry: target.clone(),
            entries: self.entries.iter().map(|p| p.embed(target)).collect(),
        }
    }

    fn aligned(&self, other: &PolyMatrix) -> Result<(PolyMatrix, PolyMatrix)> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let reg = self.registry.merge(&other.registry);
        Ok((self.embed(&reg), other.embed(&reg)))
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        let (a, b) = self.aligned(other)?;
        let n = a.dim;
        let mut out = PolyMatrix::zero(n, &a.registry);
        for i in 0..n {
            for k in 0..n {
                let x = a.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let y = b.get(k, j);
                    if !y.is_zero() {
                        out.entries[i * n + j].add_product_assign(x, y);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Right multiplication by a rational matrix.
    pub fn mul_rational(&self, other: &QMatrix) -> Result<PolyMatrix> {
        if self.dim != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim() });
        }
        let n = self.dim;
        let mut out = PolyMatrix::zero(n, &self.registry);
        for i in 0..n {
            for k in 0..n {
                let x = self.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let c = other.get(k, j);
                    if !c.is_zero() {
                        out.entries[i * n + j].add_scaled_assign(x, c);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        let (mut a, b) = self.aligned(other)?;
        for (x, y) in a.entries.iter_mut().zip(&b.entries) {
            x.add_scaled_assign(y, &Rational::one());
        }
        Ok(a)
    }

    pub fn trace(&self) -> SparsePoly {
        let mut t = SparsePoly::zero(&self.registry);
        for i in 0..self.dim {
            t.add_scaled_assign(self.get(i, i), &Rational::one());
        }
        t
    }

    /// Trace of `self * other` without forming the full product.
    pub fn trace_of_product(&self, other: &PolyMatrix) -> Result<SparsePoly> {
        let (a, b) = self.aligned(other)?;
        let mut t = SparsePoly::zero(&a.registry);
        for i in 0..a.dim {
            for k in 0..a.dim {
                let (x, y) = (a.get(i, k), b.get(k, i));
                if !x.is_zero() && !y.is_zero() {
                    t.add_product_assign(x, y);
                }
            }
        }
        Ok(t)
    }

    pub fn map_entries(&self, f: impl Fn(&SparsePoly) -> Result<SparsePoly>) -> Result<PolyMatrix> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        PolyMatrix::from_entries(self.dim, entries)
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_neutral() {
        let reg = VarRegistry::geometry(1);
        let tau = SparsePoly::var(&reg, "tau").unwrap();
        let a =
            PolyMatrix::from_entries(2, vec![tau.clone(), SparsePoly::one(&reg), SparsePoly::zero(&reg), &tau * &tau])
                .unwrap();
        assert_eq!(PolyMatrix::identity(2, &reg).mul(&a).unwrap(), a);
    }

    #[test]
    fn trace_of_jordan_evolution() {
        let reg = VarRegistry::geometry(1);
        let tau = SparsePoly::var(&reg, "tau").unwrap();
        let m = PolyMatrix::from_entries(
            2,
            vec![SparsePoly::one(&reg), -&tau, SparsePoly::zero(&reg), SparsePoly::one(&reg)],
        )
        .unwrap();
        assert_eq!(m.trace().as_constant(), Some(Rational::from_int(2)));
    }

    #[test]
    fn dimension_mismatch() {
        let reg = VarRegistry::geometry(1);
        let a = PolyMatrix::identity(2, &reg);
        let b = PolyMatrix::identity(3, &reg);
        assert!(matches!(a.mul(&b), Err(Error::DimensionMismatch { .. })));
    }
}
