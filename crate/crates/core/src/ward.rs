//! Conformal Ward identities on the circle.
//!
//! Scaling the whole geometry by `lambda` must agree with transforming each
//! insertion by `lambda^{ad_L}`. Both sides are computed independently: the
//! left side by grading the unscaled correlator, the right side from the
//! multiplet decomposition of every observable.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::correlators::{correlator, correlator_of};
use crate::error::{Error, Result};
use crate::exact::{PolyJson, PolyMatrix, Rational, SparsePoly, VarRegistry, LAMBDA};
use crate::observables::{conformal_dimension, decompose, Observable};
use crate::theory::Theory;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WardReport {
    /// Correlator with `tau, g_k` replaced by `lambda·tau, lambda·g_k`.
    pub lhs: SparsePoly,
    /// Correlator of the `lambda^{ad_L}`-transformed observables.
    pub rhs: SparsePoly,
    pub equal: bool,
    /// Coefficient of `lambda^Δ` in the right side, per total dimension `Δ`.
    pub by_delta: BTreeMap<i32, SparsePoly>,
}

impl Serialize for WardReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            equal: bool,
            lhs: PolyJson,
            rhs: PolyJson,
            by_delta: BTreeMap<String, PolyJson>,
        }
        Repr {
            equal: self.equal,
            lhs: self.lhs.to_json(),
            rhs: self.rhs.to_json(),
            by_delta: self.by_delta.iter().map(|(d, p)| (d.to_string(), p.to_json())).collect(),
        }
        .serialize(serializer)
    }
}

fn integer_delta(delta: &Rational) -> Result<i32> {
    delta
        .to_i64()
        .and_then(|d| i32::try_from(d).ok())
        .ok_or_else(|| Error::Unsupported(format!("non-integer conformal dimension {delta}")))
}

/// `lambda^{ad_L} O = Σ_Δ lambda^Δ O_Δ` as a Laurent polynomial matrix.
pub fn lambda_transform(o: &Observable, theory: &Theory, registry: &VarRegistry) -> Result<PolyMatrix> {
    let reg = registry.with_lambda();
    let n = theory.dim();
    let mut entries = vec![SparsePoly::zero(&reg); n * n];
    for comp in decompose(o, theory)? {
        let d = integer_delta(&comp.delta)?;
        for (i, j, v) in comp.matrix.nonzero_entries() {
            entries[i * n + j] = SparsePoly::monomial(&reg, &[(LAMBDA, d)], v.clone())?;
        }
    }
    PolyMatrix::from_entries(n, entries)
}

pub fn ward_check_general(theory: &Theory, observables: &[Observable]) -> Result<WardReport> {
    // Canonical (diagonal, integer-spaced) L only.
    for w in theory.dilation_weights()? {
        integer_delta(&w)?;
    }
    let lhs = correlator(theory, observables)?.grade_scale()?;
    let reg = lhs.registry().clone();
    let transformed = observables.iter().map(|o| lambda_transform(o, theory, &reg)).collect::<Result<Vec<_>>>()?;
    let rhs = correlator_of(theory, &transformed)?.embed(&reg);
    let by_delta = rhs.split_by_lambda()?;
    Ok(WardReport { equal: lhs == rhs, lhs, rhs, by_delta })
}

/// Conformal dimensions of each insertion; errors on the first non-conformal one.
pub fn dimensions(theory: &Theory, observables: &[Observable]) -> Result<Vec<Rational>> {
    observables
        .iter()
        .enumerate()
        .map(|(index, o)| conformal_dimension(o, theory)?.ok_or(Error::NonConformal { index }))
        .collect()
}

/// True iff every monomial of the correlator has total degree `degree`
/// (the zero polynomial passes for any degree).
pub fn homogeneity_check(p: &SparsePoly, degree: i64) -> bool {
    p.is_homogeneous(degree)
}

/// For conformal insertions: the correlator is homogeneous of degree `ΣΔᵢ`.
pub fn ward_check_graded(theory: &Theory, observables: &[Observable]) -> Result<bool> {
    let total: Rational = dimensions(theory, observables)?.into_iter().sum();
    let c = correlator(theory, observables)?;
    Ok(match total.to_i64() {
        Some(d) => homogeneity_check(&c, d),
        None => c.is_zero(),
    })
}

/// For conformal insertions with negative (or non-integer) `ΣΔᵢ` the
/// correlator must vanish identically. Returns `true` vacuously otherwise;
/// `false` means the vanishing rule was violated.
pub fn vanishing_check(theory: &Theory, observables: &[Observable]) -> Result<bool> {
    let total: Rational = dimensions(theory, observables)?.into_iter().sum();
    if !total.is_negative() && total.is_integer() {
        return Ok(true);
    }
    Ok(correlator(theory, observables)?.is_zero())
}
