//! Browser bindings for the partition explorer in `www/index.html`.
//!
//! Each exported function takes plain strings and returns a JSON string.
//! The `*_json` functions hold the logic so it can be tested natively.

use std::collections::HashMap;

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use confqm::correlators::correlator;
use confqm::exact::gap_name;
use confqm::observables::{conformal_dimension, matrix_unit, topological_algebra};
use confqm::theory::ad_spectrum;
use confqm::ward::ward_check_general;
use confqm::{Observable, Partition, Rational, Theory};

/// Largest rank the page will build; keeps the browser responsive.
pub const MAX_RANK: usize = 8;

fn parse_theory(partition: &str) -> Result<Theory, String> {
    let p: Partition = partition.trim().parse().map_err(|e| format!("{e}"))?;
    if p.rank() > MAX_RANK {
        return Err(format!("rank {} exceeds the demo limit of {MAX_RANK}", p.rank()));
    }
    Theory::build(&p).map_err(|e| e.to_string())
}

/// Parses insertions like `"2,1 1,2"` (1-based matrix units).
fn parse_units(units: &str, n: usize) -> Result<Vec<Observable>, String> {
    units
        .split(|c: char| c.is_whitespace() || c == ';')
        .filter(|s| !s.is_empty())
        .map(|tok| {
            let (i, j) = tok
                .trim_start_matches(['E', 'e'])
                .split_once(',')
                .ok_or_else(|| format!("expected `i,j`, got `{tok}`"))?;
            let i: usize = i.trim().parse().map_err(|_| format!("bad row in `{tok}`"))?;
            let j: usize = j.trim().parse().map_err(|_| format!("bad column in `{tok}`"))?;
            matrix_unit(i, j, n).map_err(|e| e.to_string())
        })
        .collect()
}

fn rows(m: &confqm::QMatrix) -> Vec<Vec<String>> {
    m.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

pub fn describe_theory_json(partition: &str) -> Result<String, String> {
    let t = parse_theory(partition)?;
    let spec = ad_spectrum(&t).map_err(|e| e.to_string())?;
    let topo = topological_algebra(&t).map_err(|e| e.to_string())?;
    let spectrum: Vec<Value> = spec.ad_spectrum.iter().map(|(d, k)| json!([d.to_string(), k])).collect();
    Ok(json!({
        "partition": t.partition().parts(),
        "diagram": t.partition().diagram(),
        "dim": t.dim(),
        "nilpotency_index": t.nilpotency_index(),
        "H": rows(t.hamiltonian()),
        "L": rows(t.dilation()),
        "contents": t.partition().contents(),
        "ad_spectrum": spectrum,
        "topological_dim": topo.dimension(),
        "noncommuting_pair": topo.noncommuting_pair,
    })
    .to_string())
}

pub fn unit_correlator_json(partition: &str, units: &str) -> Result<String, String> {
    let t = parse_theory(partition)?;
    let obs = parse_units(units, t.dim())?;
    let c = correlator(&t, &obs).map_err(|e| e.to_string())?;
    let report = ward_check_general(&t, &obs).map_err(|e| e.to_string())?;
    let deltas = obs
        .iter()
        .map(|o| conformal_dimension(o, &t).map(|d| d.map(|x| x.to_string())))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let by_delta: Vec<Value> = report.by_delta.iter().map(|(d, p)| json!([d, p.to_string()])).collect();
    Ok(json!({
        "correlator": c.to_string(),
        "deltas": deltas,
        "ward_lhs": report.lhs.to_string(),
        "ward_rhs": report.rhs.to_string(),
        "ward_equal": report.equal,
        "by_delta": by_delta,
    })
    .to_string())
}

/// Samples the correlator at `tau` while sweeping `g1` over `[0, tau]`;
/// any further gaps are held at zero.
pub fn sample_correlator_json(partition: &str, units: &str, tau: u32, samples: u32) -> Result<String, String> {
    let t = parse_theory(partition)?;
    let obs = parse_units(units, t.dim())?;
    let c = correlator(&t, &obs).map_err(|e| e.to_string())?;
    let samples = samples.clamp(2, 400);
    let tau_q = Rational::from_int(tau as i64);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for k in 0..=samples {
        let g1 = &tau_q * &Rational::new(k as i64, samples as i64);
        let mut point = HashMap::from([("tau".to_string(), tau_q.clone())]);
        for m in 1..obs.len() {
            let v = if m == 1 { g1.clone() } else { Rational::zero() };
            point.insert(gap_name(m), v);
        }
        let y = c.eval(&point).map_err(|e| e.to_string())?;
        xs.push(g1.to_f64());
        ys.push(y.to_f64());
    }
    Ok(json!({ "correlator": c.to_string(), "g1": xs, "value": ys }).to_string())
}

fn to_js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn describe_theory(partition: &str) -> Result<String, JsError> {
    to_js(describe_theory_json(partition))
}

#[wasm_bindgen]
pub fn unit_correlator(partition: &str, units: &str) -> Result<String, JsError> {
    to_js(unit_correlator_json(partition, units))
}

#[wasm_bindgen]
pub fn sample_correlator(partition: &str, units: &str, tau: u32, samples: u32) -> Result<String, JsError> {
    to_js(sample_correlator_json(partition, units, tau, samples))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn describes_two_two() {
        let v = parse(&describe_theory_json("2,2").unwrap());
        assert_eq!(v["dim"], 4);
        assert_eq!(v["H"][0][1], "1");
        assert_eq!(v["H"][2][3], "1");
        assert_eq!(v["topological_dim"], 8);
        assert!(!v["noncommuting_pair"].is_null());
    }

    #[test]
    fn unit_pair_on_single_block() {
        let v = parse(&unit_correlator_json("2", "2,1 2,1").unwrap());
        assert_eq!(v["correlator"], "tau*g1 - g1^2");
        assert_eq!(v["ward_equal"], true);
        assert_eq!(v["deltas"], json!(["1", "1"]));
    }

    #[test]
    fn sampled_curve_is_a_parabola() {
        let v = parse(&sample_correlator_json("2", "E2,1 E2,1", 4, 4).unwrap());
        assert_eq!(v["value"], json!([0.0, 3.0, 4.0, 3.0, 0.0]));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(describe_theory_json("1,2").is_err());
        assert!(describe_theory_json("9").is_err());
        assert!(unit_correlator_json("2", "3,1").is_err());
        assert!(unit_correlator_json("2", "21").is_err());
    }
}
