//! Command implementations for the `confqm` binary.
//!
//! Every command renders its full output to a `String` so that identical
//! arguments give byte-identical output.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use confqm::correlators::{correlator, CorrelatorRequest, CorrelatorResponse};
use confqm::observables::{conformal_dimension, topological_algebra};
use confqm::theory::ad_spectrum;
use confqm::verify::{self, VerifyConfig};
use confqm::ward::ward_check_general;
use confqm::{enumerate_partitions, Observable, Partition, QMatrix, Rational, Theory};

/// Largest rank accepted by `enumerate`.
pub const RANK_CAP: usize = 30;

#[derive(Parser, Debug)]
#[command(name = "confqm", version, about = "Finite-rank conformal quantum mechanics, exactly")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List every conformal theory of a given rank (one per partition).
    Enumerate {
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Hamiltonian, dilation generator and ad_L spectrum of one theory.
    Theory {
        #[arg(long)]
        partition: Partition,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Circle correlator of the observables in a JSON file.
    Correlate(ObservableArgs),
    /// General Ward identity for the observables in a JSON file.
    Ward(ObservableArgs),
    /// Run the full invariant suite.
    Verify {
        /// Largest rank checked.
        #[arg(long, default_value_t = 5)]
        rank: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        max_points: usize,
        /// JSON rational matrix asserted to be a conformal Hamiltonian (repeatable).
        #[arg(long)]
        hamiltonian: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Args, Debug)]
pub struct ObservableArgs {
    /// Overrides the partition given in the observables file.
    #[arg(long)]
    pub partition: Option<Partition>,
    /// Either `{"partition": [...], "observables": [...]}` or a bare list of observables.
    #[arg(long)]
    pub observables: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

/// Rendered output and process exit code (0 success, 1 verification failure).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, code: 0 }
    }
}

/// Errors returned here are usage/input errors (exit code 2).
pub fn execute(command: &Command) -> anyhow::Result<Output> {
    match command {
        Command::Enumerate { rank, format } => enumerate(*rank, *format).map(Output::ok),
        Command::Theory { partition, format } => theory(partition, *format).map(Output::ok),
        Command::Correlate(args) => correlate(args).map(Output::ok),
        Command::Ward(args) => ward(args),
        Command::Verify { rank, seed, trials, max_points, hamiltonian, format } => {
            if *rank == 0 {
                bail!("--rank must be at least 1");
            }
            let candidates = hamiltonian.iter().map(|p| read_matrix(p)).collect::<anyhow::Result<Vec<_>>>()?;
            let config = VerifyConfig {
                rank_max: *rank,
                seed: *seed,
                trials: *trials,
                max_points: (*max_points).max(1),
                candidates,
                ..VerifyConfig::default()
            };
            let report = verify::run(&config);
            let stdout = match format {
                Format::Text => format!("{report}\n"),
                Format::Json => json(&report)?,
            };
            Ok(Output { stdout, code: if report.all_passed() { 0 } else { 1 } })
        }
    }
}

fn json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn build(partition: &Partition) -> anyhow::Result<Theory> {
    Theory::build(partition).with_context(|| format!("cannot build theory for partition `{partition}`"))
}

fn spectrum_map(t: &Theory) -> anyhow::Result<BTreeMap<Rational, usize>> {
    Ok(ad_spectrum(t)?.ad_spectrum)
}

fn format_spectrum(m: &BTreeMap<Rational, usize>) -> String {
    let parts: Vec<String> = m.iter().map(|(d, k)| format!("{d}:{k}")).collect();
    format!("{{{}}}", parts.join(", "))
}

#[derive(Serialize)]
struct EnumerateEntry {
    partition: Partition,
    dim: usize,
    #[serde(rename = "N")]
    nilpotency_index: usize,
    #[serde(rename = "H")]
    hamiltonian: QMatrix,
    ad_spectrum: BTreeMap<Rational, usize>,
}

pub fn enumerate(rank: usize, format: Format) -> anyhow::Result<String> {
    if rank == 0 || rank > RANK_CAP {
        bail!("--rank must be between 1 and {RANK_CAP}, got {rank}");
    }
    let entries = enumerate_partitions(rank)
        .map(|p| {
            let t = build(&p)?;
            Ok(EnumerateEntry {
                dim: t.dim(),
                nilpotency_index: t.nilpotency_index(),
                hamiltonian: t.hamiltonian().clone(),
                ad_spectrum: spectrum_map(&t)?,
                partition: p,
            })
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    match format {
        Format::Json => json(&entries),
        Format::Text => {
            let mut out = format!("rank {rank}: {} conformal theories\n", entries.len());
            for e in &entries {
                out += &format!(
                    "{:<16} dim={} N={} ad_L={}\n",
                    e.partition.to_string(),
                    e.dim,
                    e.nilpotency_index,
                    format_spectrum(&e.ad_spectrum)
                );
            }
            Ok(out)
        }
    }
}

pub fn theory(partition: &Partition, format: Format) -> anyhow::Result<String> {
    let t = build(partition)?;
    match format {
        Format::Json => json(&t.to_json()),
        Format::Text => {
            let spec = ad_spectrum(&t)?;
            let topo = topological_algebra(&t)?;
            let contents: Vec<String> = partition.contents().iter().map(|c| c.to_string()).collect();
            let mut out = format!("partition {partition}\n{}\n", partition.diagram());
            out += &format!("dim {}  nilpotency index N = {}\n", t.dim(), t.nilpotency_index());
            out += &format!("H =\n{}\nL =\n{}\n", t.hamiltonian(), t.dilation());
            out += &format!("contents c(i) = [{}]\n", contents.join(", "));
            out += &format!("ad_L spectrum {}\n", format_spectrum(&spec.ad_spectrum));
            out += &format!(
                "topological algebra: dim {}, {}\n",
                topo.dimension(),
                match topo.noncommuting_pair {
                    Some(((a, b), (c, d))) => format!("noncommutative (E{a}{b} E{c}{d} != E{c}{d} E{a}{b})"),
                    None => "commutative".to_string(),
                }
            );
            Ok(out)
        }
    }
}

fn read_matrix(path: &Path) -> anyhow::Result<QMatrix> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing matrix in {}", path.display()))
}

/// Loads observables and the theory they live in, checking dimensions.
pub fn load_request(args: &ObservableArgs) -> anyhow::Result<(Theory, Vec<Observable>)> {
    let path = &args.observables;
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("malformed JSON in {}", path.display()))?;
    let (file_partition, observables) = if value.is_array() {
        let obs: Vec<Observable> =
            serde_json::from_str(&text).with_context(|| format!("invalid observable list in {}", path.display()))?;
        (None, obs)
    } else {
        let req: CorrelatorRequest =
            serde_json::from_str(&text).with_context(|| format!("invalid correlator request in {}", path.display()))?;
        (Some(req.partition), req.observables)
    };
    let partition = args
        .partition
        .clone()
        .or(file_partition)
        .ok_or_else(|| anyhow!("no partition given (use --partition or a request object)"))?;
    let t = build(&partition)?;
    for (k, o) in observables.iter().enumerate() {
        if o.dim() != t.dim() {
            bail!(
                "observable #{k}{} has dimension {}, partition {partition} has dimension {}",
                o.label.as_ref().map(|l| format!(" ({l})")).unwrap_or_default(),
                o.dim(),
                t.dim()
            );
        }
    }
    Ok((t, observables))
}

#[derive(Serialize)]
struct CorrelateJson {
    #[serde(flatten)]
    response: CorrelatorResponse,
    /// Conformal dimension of each insertion (null if not conformal).
    deltas: Vec<Option<Rational>>,
    delta_sum: Option<Rational>,
    /// Homogeneous of degree `delta_sum`; null when some insertion is not conformal.
    homogeneous: Option<bool>,
}

pub fn correlate(args: &ObservableArgs) -> anyhow::Result<String> {
    let (t, obs) = load_request(args)?;
    let p = correlator(&t, &obs)?;
    let deltas = obs.iter().map(|o| conformal_dimension(o, &t)).collect::<confqm::Result<Vec<_>>>()?;
    let delta_sum: Option<Rational> = deltas.iter().cloned().sum::<Option<Rational>>();
    let homogeneous = delta_sum.as_ref().map(|d| match d.to_i64() {
        Some(d) => p.is_homogeneous(d),
        None => p.is_zero(),
    });
    let out = CorrelateJson { response: CorrelatorResponse::new(&p, obs.len()), deltas, delta_sum, homogeneous };
    match args.format {
        Format::Json => json(&out),
        Format::Text => {
            let mut s = format!("correlator: {p}\n");
            s += &format!("n_points: {}\n", out.response.n_points);
            s += &format!(
                "total_degree: {}\n",
                out.response.total_degree.map(|d| d.to_string()).unwrap_or_else(|| "none (zero)".into())
            );
            let ds: Vec<String> =
                out.deltas.iter().map(|d| d.as_ref().map(|x| x.to_string()).unwrap_or_else(|| "-".into())).collect();
            s += &format!("deltas: [{}]\n", ds.join(", "));
            match (&out.delta_sum, out.homogeneous) {
                (Some(sum), Some(h)) => s += &format!("delta_sum: {sum}\nhomogeneous: {h}\n"),
                _ => s += "delta_sum: n/a (non-conformal insertion)\n",
            }
            Ok(s)
        }
    }
}

pub fn ward(args: &ObservableArgs) -> anyhow::Result<Output> {
    let (t, obs) = load_request(args)?;
    let report = ward_check_general(&t, &obs)?;
    let stdout = match args.format {
        Format::Json => json(&report)?,
        Format::Text => {
            let mut s = format!("lhs: {}\nrhs: {}\n", report.lhs, report.rhs);
            for (d, p) in &report.by_delta {
                s += &format!("delta {d}: {p}\n");
            }
            s += &format!("equal: {}\n", report.equal);
            s
        }
    };
    Ok(Output { stdout, code: if report.equal { 0 } else { 1 } })
}
