//! Local observables and their conformal multiplet decomposition under `ad_L`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{QMatrix, Rational};
use crate::theory::Theory;

/// An endomorphism of the state space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observable {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub matrix: QMatrix,
}

impl Observable {
    pub fn new(matrix: QMatrix) -> Self {
        Observable { label: None, matrix }
    }

    pub fn labeled(label: impl Into<String>, matrix: QMatrix) -> Self {
        Observable { label: Some(label.into()), matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

/// The piece of an observable lying in `Conf_Δ(V)`: `[L, matrix] = Δ·matrix`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConformalComponent {
    pub delta: Rational,
    pub matrix: QMatrix,
}

impl ConformalComponent {
    /// Exact eigenvector check against `L`.
    pub fn is_eigenvector(&self, dilation: &QMatrix) -> Result<bool> {
        Ok(dilation.commutator(&self.matrix)? == self.matrix.scale(&self.delta))
    }
}

/// `E_ij` with one-based indices.
pub fn matrix_unit(i: usize, j: usize, n: usize) -> Result<Observable> {
    if i == 0 || j == 0 || i > n || j > n {
        return Err(Error::IndexOutOfRange { i, j, n });
    }
    let mut m = QMatrix::zero(n);
    m.set(i - 1, j - 1, Rational::one());
    Ok(Observable::labeled(format!("E{i}{j}"), m))
}

fn check_dim(o: &Observable, theory: &Theory) -> Result<()> {
    if o.dim() != theory.dim() {
        return Err(Error::DimensionMismatch { expected: theory.dim(), found: o.dim() });
    }
    Ok(())
}

/// Splits `o` into `ad_L` eigencomponents, in increasing `Δ`. Entry `(i,j)`
/// belongs to `Δ = σᵢ - σⱼ`. The zero observable has no components.
pub fn decompose(o: &Observable, theory: &Theory) -> Result<Vec<ConformalComponent>> {
    check_dim(o, theory)?;
    let weights = theory.dilation_weights()?;
    let n = theory.dim();
    let mut parts: BTreeMap<Rational, QMatrix> = BTreeMap::new();
    for (i, j, v) in o.matrix.nonzero_entries() {
        parts.entry(&weights[i] - &weights[j]).or_insert_with(|| QMatrix::zero(n)).set(i, j, v.clone());
    }
    Ok(parts.into_iter().map(|(delta, matrix)| ConformalComponent { delta, matrix }).collect())
}

/// `Δ` when `o` lies in a single multiplet; `None` otherwise (including `o = 0`).
pub fn conformal_dimension(o: &Observable, theory: &Theory) -> Result<Option<Rational>> {
    let comps = decompose(o, theory)?;
    Ok(match comps.as_slice() {
        [single] => Some(single.delta.clone()),
        _ => None,
    })
}

/// The Δ=0 (topological) subalgebra in the matrix-unit basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TopologicalAlgebra {
    /// One-based `(i, j)` of the spanning matrix units.
    pub basis: Vec<(usize, usize)>,
    /// Every product of two basis units stays in the span.
    pub closed: bool,
    /// `ad_L(AB) = ad_L(A)B + A·ad_L(B)` held on every basis pair.
    pub derivation_holds: bool,
    /// A pair `(A, B)` of basis units with `AB ≠ BA`, if any.
    pub noncommuting_pair: Option<((usize, usize), (usize, usize))>,
}

impl TopologicalAlgebra {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

pub fn topological_algebra(theory: &Theory) -> Result<TopologicalAlgebra> {
    let weights = theory.dilation_weights()?;
    let n = theory.dim();
    let basis: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| weights[i] == weights[j])
        .map(|(i, j)| (i + 1, j + 1))
        .collect();
    let in_span: BTreeSet<(usize, usize)> = basis.iter().copied().collect();
    let l = theory.dilation();
    let ad = |m: &QMatrix| l.commutator(m);

    let units: Vec<QMatrix> =
        basis.iter().map(|&(i, j)| matrix_unit(i, j, n).map(|o| o.matrix)).collect::<Result<_>>()?;
    let mut closed = true;
    let mut derivation_holds = true;
    let mut noncommuting_pair = None;
    for (a_idx, a) in units.iter().enumerate() {
        for (b_idx, b) in units.iter().enumerate() {
            let ab = a * b;
            if !ab.nonzero_entries().all(|(i, j, _)| in_span.contains(&(i + 1, j + 1))) {
                closed = false;
            }
            let lhs = ad(&ab)?;
            let rhs = &(&ad(a)? * b) + &(a * &ad(b)?);
            if lhs != rhs {
                derivation_holds = false;
            }
            if noncommuting_pair.is_none() && ab != b * a {
                noncommuting_pair = Some((basis[a_idx], basis[b_idx]));
            }
        }
    }
    Ok(TopologicalAlgebra { basis, closed, derivation_holds, noncommuting_pair })
}
