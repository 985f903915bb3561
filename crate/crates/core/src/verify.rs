//! The full invariant suite over every theory up to a given rank.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::correlators::{circle_partition_function, correlator, cutting_axiom_check, two_point_expansion};
use crate::error::Result;
use crate::exact::{QMatrix, Rational};
use crate::observables::{matrix_unit, topological_algebra, Observable};
use crate::partitions::{enumerate_partitions, Partition};
use crate::random::RationalSampler;
use crate::theory::{
    ad_spectrum, check_dilation_pair, conjugate_theory, find_dilation, is_conformal, nilpotency_index, Theory,
};
use crate::ward::{dimensions, vanishing_check, ward_check_general, ward_check_graded};

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub rank_max: usize,
    pub seed: u64,
    /// Random samples per theory for the randomized checks.
    pub trials: usize,
    /// Largest number of insertions in Ward checks.
    pub max_points: usize,
    /// Matrix-unit tuples are enumerated exhaustively up to this rank.
    pub exhaustive_rank: usize,
    /// Extra Hamiltonians asserted to be conformal.
    pub candidates: Vec<QMatrix>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { rank_max: 5, seed: 0, trials: 25, max_points: 3, exhaustive_rank: 4, candidates: Vec::new() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl CheckSummary {
    fn new(name: &str) -> Self {
        CheckSummary { name: name.to_string(), ..Default::default() }
    }

    fn record(&mut self, outcome: Outcome) {
        match outcome {
            Ok(()) => self.passed += 1,
            Err(msg) => {
                self.failed += 1;
                self.counterexample.get_or_insert(msg);
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub rank_max: usize,
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<CheckSummary>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckSummary::ok)
    }

    pub fn check(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verify rank_max={} seed={} trials={}", self.rank_max, self.seed, self.trials)?;
        for c in &self.checks {
            let status = if c.ok() { "ok  " } else { "FAIL" };
            writeln!(f, "{status} {:<26} passed {:>7}  failed {:>5}", c.name, c.passed, c.failed)?;
        }
        for c in self.checks.iter().filter(|c| !c.ok()) {
            if let Some(ce) = &c.counterexample {
                writeln!(f, "counterexample [{}]: {ce}", c.name)?;
            }
        }
        write!(f, "result: {}", if self.all_passed() { "PASS" } else { "FAIL" })
    }
}

/// `Err` carries a human-readable counterexample.
type Outcome = std::result::Result<(), String>;

fn expect(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn internal(e: crate::error::Error) -> String {
    format!("internal error: {e}")
}

fn labels(obs: &[Observable]) -> String {
    let names: Vec<String> = obs.iter().map(|o| o.label.clone().unwrap_or_else(|| format!("{:?}", o.matrix))).collect();
    format!("[{}]", names.join(", "))
}

fn units(n: usize) -> Vec<Observable> {
    (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).map(|(i, j)| matrix_unit(i, j, n).expect("in range")).collect()
}

/// All tuples of length `1..=max_len` over `items`, shortest first.
fn tuples<T: Clone>(items: &[T], max_len: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<T>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|prefix| {
                items.iter().map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn theory_seed(seed: u64, p: &Partition, salt: u64) -> u64 {
    let mut h = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    for &x in p.parts() {
        h = h.wrapping_mul(0x100_0000_01B3).wrapping_add(x as u64 + 1);
    }
    h
}

/// Runs `f` over theories in parallel and records outcomes in theory order.
fn per_theory<F>(name: &str, theories: &[Theory], f: F) -> CheckSummary
where
    F: Fn(&Theory) -> Vec<Outcome> + Sync,
{
    let results: Vec<Vec<Outcome>> = theories.par_iter().map(&f).collect();
    let mut summary = CheckSummary::new(name);
    for outcome in results.into_iter().flatten() {
        summary.record(outcome);
    }
    summary
}

pub fn all_theories(rank_max: usize) -> Vec<Theory> {
    (1..=rank_max).flat_map(enumerate_partitions).map(|p| Theory::build(&p).expect("nonempty partition")).collect()
}

fn ward_general_outcome(t: &Theory, obs: &[Observable]) -> Outcome {
    let r = ward_check_general(t, obs).map_err(internal)?;
    expect(r.equal, || {
        format!("partition {}; observables {}; lhs: {}; rhs: {}", t.partition(), labels(obs), r.lhs, r.rhs)
    })
}

fn graded_outcome(t: &Theory, obs: &[Observable]) -> Outcome {
    let deltas = dimensions(t, obs).map_err(internal)?;
    let total: Rational = deltas.iter().cloned().sum();
    let graded = ward_check_graded(t, obs).map_err(internal)?;
    let report = ward_check_general(t, obs).map_err(internal)?;
    let single_piece = match report.by_delta.len() {
        0 => true,
        1 => total.to_i64() == report.by_delta.keys().next().map(|&d| d as i64),
        _ => false,
    };
    expect(graded && single_piece, || {
        let c = correlator(t, obs).map(|p| p.to_string()).unwrap_or_default();
        format!("partition {}; observables {}; ΣΔ = {total}; correlator: {c}", t.partition(), labels(obs))
    })
}

pub fn run(config: &VerifyConfig) -> VerifyReport {
    let theories = all_theories(config.rank_max);
    let trials = config.trials;
    let mut checks = Vec::new();

    // Zero spectrum: built theories, random conjugates, and supplied candidates.
    let mut conformality = per_theory("conformality", &theories, |t| {
        let mut rng = RationalSampler::new(theory_seed(config.seed, t.partition(), 1));
        let mut out = vec![expect(is_conformal(t.hamiltonian()), || format!("partition {}", t.partition()))];
        for _ in 0..trials {
            let s = rng.invertible(t.dim());
            let h = t.hamiltonian().conjugate_by(&s).expect("invertible");
            out.push(expect(is_conformal(&h), || format!("partition {}; conjugated H = {h:?}", t.partition())));
        }
        out
    });
    for (k, h) in config.candidates.iter().enumerate() {
        conformality.record(expect(is_conformal(h), || {
            let dil = if find_dilation(h).is_some() { "a dilation generator exists" } else { "no L solves [L,H] = -H" };
            format!(
                "candidate #{k} H = {h:?}: H^{} = {:?} is nonzero (spectrum not zero); {dil}",
                h.dim(),
                h.pow(h.dim())
            )
        }));
    }
    checks.push(conformality);

    checks.push(per_theory("dilation_commutator", &theories, |t| {
        let canonical = check_dilation_pair(t.hamiltonian(), t.dilation()).unwrap_or(false);
        let found = find_dilation(t.hamiltonian())
            .map(|s| check_dilation_pair(t.hamiltonian(), &s.dilation).unwrap_or(false))
            .unwrap_or(false);
        vec![
            expect(canonical, || format!("partition {}: [L,H] != -H", t.partition())),
            expect(found, || format!("partition {}: find_dilation failed", t.partition())),
        ]
    }));
    let mut dilation_existence = CheckSummary::new("dilation_existence");
    for (k, h) in config.candidates.iter().enumerate() {
        // A dilation generator exists exactly when H is nilpotent.
        dilation_existence.record(expect(is_conformal(h) == find_dilation(h).is_some(), || {
            format!("candidate #{k} H = {h:?}: nilpotency and dilation existence disagree")
        }));
    }
    if !config.candidates.is_empty() {
        checks.push(dilation_existence);
    }

    checks.push(per_theory("nilpotency_index", &theories, |t| {
        let n = nilpotency_index(t.hamiltonian());
        vec![expect(n == Some(t.partition().largest()), || {
            format!("partition {}: index {n:?} != λ₁ = {}", t.partition(), t.partition().largest())
        })]
    }));

    checks.push(per_theory("cutting_axiom", &theories, |t| {
        vec![expect(cutting_axiom_check(t), || format!("partition {}", t.partition()))]
    }));

    checks.push(per_theory("circle_partition_function", &theories, |t| {
        let z = circle_partition_function(t);
        vec![expect(z.as_constant() == Some(Rational::from_int(t.dim() as i64)), || {
            format!("partition {}: Tr e^(-tau H) = {z}", t.partition())
        })]
    }));

    checks.push(per_theory("ad_spectrum", &theories, |t| {
        let report = match ad_spectrum(t) {
            Ok(r) => r,
            Err(e) => return vec![Err(internal(e))],
        };
        let contents = t.partition().contents();
        let mut expected: BTreeMap<Rational, usize> = BTreeMap::new();
        for &ci in &contents {
            for &cj in &contents {
                *expected.entry(Rational::from_int(ci as i64 - cj as i64)).or_insert(0) += 1;
            }
        }
        vec![expect(report.ad_spectrum == expected, || {
            format!("partition {}: {:?} vs contents {:?}", t.partition(), report.ad_spectrum, expected)
        })]
    }));

    checks.push(per_theory("ward_general", &theories, |t| {
        let mut out = Vec::new();
        if t.dim() <= config.exhaustive_rank {
            for obs in tuples(&units(t.dim()), config.max_points) {
                out.push(ward_general_outcome(t, &obs));
            }
        }
        let mut rng = RationalSampler::new(theory_seed(config.seed, t.partition(), 2));
        for k in 0..trials {
            let obs = rng.observables(t.dim(), 1 + k % config.max_points.max(1));
            out.push(ward_general_outcome(t, &obs));
        }
        out
    }));

    checks.push(per_theory("ward_graded", &theories, |t| {
        let exhaustive = t.dim() <= config.exhaustive_rank;
        let all = units(t.dim());
        let tuples_here = if exhaustive { tuples(&all, config.max_points) } else { tuples(&all, 2) };
        tuples_here.iter().map(|obs| graded_outcome(t, obs)).collect()
    }));

    checks.push(per_theory("vanishing", &theories, |t| {
        let all = units(t.dim());
        let depth = if t.dim() <= config.exhaustive_rank { config.max_points } else { 2 };
        tuples(&all, depth)
            .iter()
            .map(|obs| {
                let ok = vanishing_check(t, obs).map_err(internal)?;
                expect(ok, || {
                    format!("partition {}; observables {}: ΣΔ < 0 but correlator nonzero", t.partition(), labels(obs))
                })
            })
            .collect()
    }));

    checks.push(per_theory("two_point_expansion", &theories, |t| {
        let all = units(t.dim());
        let mut out = Vec::new();
        for a in &all {
            for b in &all {
                let pair = [a.clone(), b.clone()];
                let outcome = (|| -> Result<Outcome> {
                    let direct = correlator(t, &pair)?;
                    let expansion = two_point_expansion(t, a, b)?;
                    Ok(expect(direct == expansion, || {
                        format!(
                            "partition {}; observables {}; direct: {direct}; expansion: {expansion}",
                            t.partition(),
                            labels(&pair)
                        )
                    }))
                })()
                .unwrap_or_else(|e| Err(internal(e)));
                out.push(outcome);
            }
        }
        out
    }));

    checks.push(per_theory("topological_closure", &theories, |t| {
        vec![match topological_algebra(t) {
            Ok(alg) => expect(alg.closed && alg.derivation_holds, || {
                format!("partition {}: Δ=0 span not closed", t.partition())
            }),
            Err(e) => Err(internal(e)),
        }]
    }));

    checks.push(per_theory("conjugation_invariance", &theories, |t| {
        let mut rng = RationalSampler::new(theory_seed(config.seed, t.partition(), 3));
        (0..trials)
            .map(|k| {
                let s = rng.invertible(t.dim());
                let obs = rng.observables(t.dim(), k % (config.max_points + 1));
                let outcome = (|| -> Result<Outcome> {
                    let conj = conjugate_theory(t, &s)?;
                    let moved: Vec<Observable> =
                        obs.iter().map(|o| o.matrix.conjugate_by(&s).map(Observable::new)).collect::<Result<_>>()?;
                    let before = correlator(t, &obs)?;
                    let after = correlator(&conj, &moved)?;
                    Ok(expect(before == after && conj.partition() == t.partition(), || {
                        format!(
                            "partition {}; {} random observables; before: {before}; after: {after}",
                            t.partition(),
                            obs.len()
                        )
                    }))
                })()
                .unwrap_or_else(|e| Err(internal(e)));
                outcome
            })
            .collect()
    }));

    VerifyReport { rank_max: config.rank_max, seed: config.seed, trials, checks }
}
