//! Evolution operators `e^{-tH}` and circle correlators.
//!
//! An n-point correlator on a circle of circumference `tau` with gaps
//! `g1, …, g_{n-1}` between consecutive insertions is
//!
//! ```text
//! Tr( e^{-(tau - Σg)H} O1 e^{-g1 H} O2 … e^{-g_{n-1} H} On )
//! ```
//!
//! Nilpotency of `H` truncates every exponential, so the result is an exact
//! polynomial in `tau, g1, …, g_{n-1}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{gap_name, PolyJson, PolyMatrix, QMatrix, Rational, SparsePoly, VarRegistry, TAU};
use crate::observables::Observable;
use crate::partitions::Partition;
use crate::theory::{nilpotency_index, Theory};

/// `Σ_{k<N} (-t)^k H^k / k!` for nilpotent `H`; refused otherwise.
pub fn evolution_of(hamiltonian: &QMatrix, t: &SparsePoly) -> Result<PolyMatrix> {
    let n_index = nilpotency_index(hamiltonian).ok_or(Error::NotNilpotent)?;
    Ok(truncated_exp(hamiltonian, n_index, t))
}

/// `e^{-tH}` for the theory's Hamiltonian; `t` may be any polynomial.
pub fn evolution(theory: &Theory, t: &SparsePoly) -> PolyMatrix {
    truncated_exp(theory.hamiltonian(), theory.nilpotency_index(), t)
}

fn truncated_exp(h: &QMatrix, terms: usize, t: &SparsePoly) -> PolyMatrix {
    let n = h.dim();
    let reg = t.registry();
    let minus_t = -t;
    let mut entries = vec![SparsePoly::zero(reg); n * n];
    let mut t_pow = SparsePoly::one(reg);
    for (k, hk) in h.powers(terms).iter().enumerate() {
        let weight = t_pow.scale(&Rational::inv_factorial(k));
        for (i, j, v) in hk.nonzero_entries() {
            entries[i * n + j].add_scaled_assign(&weight, v);
        }
        t_pow = &t_pow * &minus_t;
    }
    PolyMatrix::from_entries(n, entries).expect("square").embed(reg)
}

/// Registry `[tau, g1, …, g_{n-1}]` for `n` insertions (`[tau]` when `n ≤ 1`).
pub fn geometry_registry(points: usize) -> VarRegistry {
    VarRegistry::geometry(points.max(1))
}

/// `Z(t1) Z(t2) = Z(t1 + t2)` as an exact two-variable identity.
pub fn cutting_axiom_check(theory: &Theory) -> bool {
    let reg = VarRegistry::new(["t1", "t2"]).expect("valid registry");
    let t1 = SparsePoly::var(&reg, "t1").expect("t1");
    let t2 = SparsePoly::var(&reg, "t2").expect("t2");
    let lhs = evolution(theory, &t1).mul(&evolution(theory, &t2)).expect("same dim");
    lhs == evolution(theory, &(&t1 + &t2))
}

/// `Tr e^{-tau H}`.
pub fn circle_partition_function(theory: &Theory) -> SparsePoly {
    let reg = geometry_registry(0);
    evolution(theory, &SparsePoly::var(&reg, TAU).expect("tau")).trace()
}

fn check_dims(theory: &Theory, observables: &[Observable]) -> Result<()> {
    if let Some(o) = observables.iter().find(|o| o.dim() != theory.dim()) {
        return Err(Error::DimensionMismatch { expected: theory.dim(), found: o.dim() });
    }
    Ok(())
}

/// Circle correlator of rational observables, insertion order as given.
pub fn correlator(theory: &Theory, observables: &[Observable]) -> Result<SparsePoly> {
    check_dims(theory, observables)?;
    let inserts: Vec<Insertion> = observables.iter().map(|o| Insertion::Constant(&o.matrix)).collect();
    circle_product(theory, &inserts, geometry_registry(observables.len()))
}

/// Circle correlator of polynomial-valued observables (e.g. `lambda`-weighted ones).
pub fn correlator_of(theory: &Theory, observables: &[PolyMatrix]) -> Result<SparsePoly> {
    if let Some(o) = observables.iter().find(|o| o.dim() != theory.dim()) {
        return Err(Error::DimensionMismatch { expected: theory.dim(), found: o.dim() });
    }
    let geo = geometry_registry(observables.len());
    let reg = observables.iter().fold(geo, |acc, o| acc.merge(o.registry()));
    let inserts: Vec<Insertion> = observables.iter().map(Insertion::Poly).collect();
    circle_product(theory, &inserts, reg)
}

enum Insertion<'a> {
    Constant(&'a QMatrix),
    Poly(&'a PolyMatrix),
}

fn circle_product(theory: &Theory, inserts: &[Insertion], reg: VarRegistry) -> Result<SparsePoly> {
    let tau = SparsePoly::var(&reg, TAU)?;
    let gaps: Vec<SparsePoly> =
        (1..inserts.len()).map(|k| SparsePoly::var(&reg, &gap_name(k))).collect::<Result<_>>()?;
    let lead = gaps.iter().fold(tau, |acc, g| &acc - g);

    let Some((last, init)) = inserts.split_last() else {
        return Ok(evolution(theory, &lead).trace());
    };
    let mut product = evolution(theory, &lead);
    for (k, o) in init.iter().enumerate() {
        product = match o {
            Insertion::Constant(m) => product.mul_rational(m)?,
            Insertion::Poly(m) => product.mul(m)?,
        };
        product = product.mul(&evolution(theory, &gaps[k]))?;
    }
    match last {
        Insertion::Constant(m) => product.trace_of_product(&PolyMatrix::from_rational(m, &reg)),
        Insertion::Poly(m) => product.trace_of_product(m),
    }
}

/// The double-sum form of the two-point correlator:
/// `Σ_{k,m<N} (g1-tau)^k (-g1)^m / (k! m!) · Tr(H^k O1 H^m O2)`.
pub fn two_point_expansion(theory: &Theory, o1: &Observable, o2: &Observable) -> Result<SparsePoly> {
    check_dims(theory, &[o1.clone(), o2.clone()])?;
    let reg = geometry_registry(2);
    let tau = SparsePoly::var(&reg, TAU)?;
    let g1 = SparsePoly::var(&reg, &gap_name(1))?;
    let a = &g1 - &tau;
    let b = -&g1;
    let n = theory.nilpotency_index();
    let powers = theory.hamiltonian().powers(n);
    let mut sum = SparsePoly::zero(&reg);
    for (k, hk) in powers.iter().enumerate() {
        let left = &(hk * &o1.matrix);
        for (m, hm) in powers.iter().enumerate() {
            let tr = (left * &(hm * &o2.matrix)).trace();
            if tr.is_zero() {
                continue;
            }
            let coef = &(&tr * &Rational::inv_factorial(k)) * &Rational::inv_factorial(m);
            let term = (&a.pow(k as u32) * &b.pow(m as u32)).scale(&coef);
            sum = &sum + &term;
        }
    }
    Ok(sum)
}

/// `{"partition":[...], "observables":[...]}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelatorRequest {
    pub partition: Partition,
    pub observables: Vec<Observable>,
}

/// Polynomial JSON plus `n_points` and `total_degree` (null for the zero polynomial).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelatorResponse {
    #[serde(flatten)]
    pub polynomial: PolyJson,
    pub n_points: usize,
    pub total_degree: Option<i64>,
}

impl CorrelatorResponse {
    pub fn new(p: &SparsePoly, n_points: usize) -> Self {
        CorrelatorResponse { polynomial: p.to_json(), n_points, total_degree: p.total_degree() }
    }
}
