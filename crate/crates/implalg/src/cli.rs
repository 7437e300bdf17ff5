//! Subcommands. Each returns the bytes for stdout, the exit code and any
//! notices for stderr; `main` only does the printing.

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use implalg_core::algebra::ImplicationAlgebra;
use implalg_core::hypergraph::Hypergraph;
use implalg_core::iso::hypergraph_iso_witness;
use implalg_core::polymatroid::{
    recognize_boolean, rho_of_hypergraph, PolymatroidViolation, Rejection,
};
use implalg_core::profile::{
    check_realizability_conditions, compute_profile, ConditionFailure, Verdict,
};
use implalg_core::synth::{realize_to_hypergraph, Realization, SynthError};
use serde::Serialize;
use thiserror::Error;

use crate::dot::incidence_dot;
use crate::format::{
    family_json, indices, parse_hypergraph, parse_profile, parse_rho, HypergraphJson, Intent,
    ProfileJson, RhoJson,
};
use crate::verify::verify_corpus;

#[derive(Debug, Parser)]
#[command(
    name = "implalg",
    version,
    about = "Implication algebras, hypergraphs and Boolean polymatroids"
)]
pub struct Args {
    /// Indent JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Print hypergraph results as Graphviz incidence graphs (realize, recognize).
    #[arg(long, global = true)]
    pub dot: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Implication profile of the algebra of a hypergraph.
    Profile { file: PathBuf },
    /// Graphical polymatroid (union sizes) of a hypergraph.
    Rho { file: PathBuf },
    /// Decide isomorphism of two hypergraphs; exit 1 if they differ.
    Iso { first: PathBuf, second: PathBuf },
    /// Check a profile against the realizability conditions; exit 1 on failure.
    CheckProfile { file: PathBuf },
    /// Build a hypergraph with the given profile.
    Realize { file: PathBuf },
    /// Decide whether a polymatroid table is Boolean and recover its edges.
    Recognize { file: PathBuf },
    /// Run every structural check over the small Sperner hypergraphs.
    VerifyCorpus {
        max_vertices: usize,
        max_edges: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Condition(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Condition(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

fn input(e: impl ToString) -> CliError {
    CliError::Input(e.to_string())
}

#[derive(Debug, Default)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub notices: Vec<String>,
}

/// Runs a command; errors carry no stdout.
pub fn run(args: &Args) -> Result<Outcome, (CliError, Vec<String>)> {
    let mut notices = Vec::new();
    match execute(args, &mut notices) {
        Ok((code, stdout)) => Ok(Outcome {
            code,
            stdout,
            notices,
        }),
        Err(e) => Err((e, notices)),
    }
}

fn execute(args: &Args, notices: &mut Vec<String>) -> Result<(u8, String), CliError> {
    let dot_ok = matches!(
        args.command,
        Command::Realize { .. } | Command::Recognize { .. }
    );
    if args.dot && !dot_ok {
        return Err(input("--dot applies only to realize and recognize"));
    }
    let pretty = args.pretty;
    let json = |v: &dyn erased::Render| v.render(pretty);
    let (code, stdout) = match &args.command {
        Command::Profile { file } => {
            let algebra = read_algebra(file, notices)?;
            let p = compute_profile(&algebra).map_err(input)?;
            (0, json(&ProfileJson(&p)))
        }
        Command::Rho { file } => {
            let h = parse_hypergraph(&read(file)?).map_err(input)?.hypergraph;
            let rho = rho_of_hypergraph(&h).map_err(input)?;
            (0, json(&RhoJson(&rho)))
        }
        Command::Iso { first, second } => {
            let h1 = read_hypergraph(first, notices)?;
            let h2 = read_hypergraph(second, notices)?;
            match hypergraph_iso_witness(&h1, &h2).map_err(input)? {
                Some(w) => (
                    0,
                    json(&IsoJson {
                        isomorphic: true,
                        witness: Some(w.pairs().map(|(i, j)| [i, j]).collect()),
                    }),
                ),
                None => (
                    1,
                    json(&IsoJson {
                        isomorphic: false,
                        witness: None,
                    }),
                ),
            }
        }
        Command::CheckProfile { file } => {
            let p = parse_profile(&read(file)?).map_err(input)?;
            match check_realizability_conditions(&p) {
                Verdict::Pass => (0, json(&VerdictJson::pass())),
                Verdict::Fail(f) => (1, json(&VerdictJson::fail(&f))),
            }
        }
        Command::Realize { file } => {
            let p = parse_profile(&read(file)?).map_err(input)?;
            let r = realize_to_hypergraph(&p).map_err(|e| match e {
                SynthError::ConditionsFail(_) => CliError::Condition(e.to_string()),
                SynthError::TooManyVertices => input(e),
                _ => CliError::Internal(e.to_string()),
            })?;
            (0, realization_output(&r, None, args.dot, pretty))
        }
        Command::Recognize { file } => {
            let rho = parse_rho(&read(file)?).map_err(input)?;
            match recognize_boolean(&rho) {
                Ok(rec) => (
                    0,
                    realization_output(
                        &rec.realization,
                        Some(rec.reading.name()),
                        args.dot,
                        pretty,
                    ),
                ),
                Err(e) if e.is_internal() => return Err(CliError::Internal(e.to_string())),
                Err(e) => (1, json(&RejectionJson::of(&e))),
            }
        }
        Command::VerifyCorpus {
            max_vertices,
            max_edges,
        } => {
            let report = verify_corpus(*max_vertices, *max_edges).map_err(input)?;
            (if report.all_passed { 0 } else { 1 }, json(&report))
        }
    };
    Ok((code, stdout))
}

mod erased {
    use serde::Serialize;

    /// Object-safe serialization straight to text, so key order is kept.
    pub trait Render {
        fn render(&self, pretty: bool) -> String;
    }

    impl<T: Serialize> Render for T {
        fn render(&self, pretty: bool) -> String {
            let mut s = if pretty {
                serde_json::to_string_pretty(self)
            } else {
                serde_json::to_string(self)
            }
            .expect("output types serialize");
            s.push('\n');
            s
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    let mut text = String::new();
    if path == Path::new("-") {
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| input(format!("stdin: {e}")))?;
    } else {
        text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

/// Parses a hypergraph file and reduces it to its maximal edges, noting
/// when that changed anything.
fn read_hypergraph(path: &Path, notices: &mut Vec<String>) -> Result<Hypergraph, CliError> {
    let parsed =
        parse_hypergraph(&read(path)?).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let h = parsed.hypergraph;
    if parsed.intent == Intent::Algebra || h.is_sperner() {
        return Ok(h);
    }
    let reduced = h.maximal_reduction();
    notices.push(format!(
        "{}: input not Sperner; reduced {} → {} edges",
        path.display(),
        h.edge_count(),
        reduced.edge_count()
    ));
    Ok(reduced)
}

fn read_algebra(path: &Path, notices: &mut Vec<String>) -> Result<ImplicationAlgebra, CliError> {
    let h = read_hypergraph(path, notices)?;
    ImplicationAlgebra::from_hypergraph(&h).map_err(input)
}

#[derive(Serialize)]
struct IsoJson {
    isomorphic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<[usize; 2]>>,
}

#[derive(Serialize)]
struct VerdictJson {
    verdict: &'static str,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    failure: Option<FailureJson>,
}

#[derive(Serialize)]
struct FailureJson {
    clause: &'static str,
    #[serde(rename = "A", skip_serializing_if = "Option::is_none")]
    a: Option<Vec<usize>>,
    pair: [Vec<usize>; 2],
}

impl FailureJson {
    fn of(f: &ConditionFailure) -> Self {
        FailureJson {
            clause: f.clause.name(),
            a: f.a.map(indices),
            pair: [indices(f.witness.s1), indices(f.witness.s2)],
        }
    }
}

impl VerdictJson {
    fn pass() -> Self {
        VerdictJson {
            verdict: "pass",
            failure: None,
        }
    }

    fn fail(f: &ConditionFailure) -> Self {
        VerdictJson {
            verdict: "fail",
            failure: Some(FailureJson::of(f)),
        }
    }
}

#[derive(Serialize, Default)]
struct RejectionJson {
    verdict: &'static str,
    stage: u8,
    reason: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    subset: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    superset: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pair: Option<[Vec<usize>; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    conditions: Option<FailureJson>,
}

impl RejectionJson {
    fn of(e: &Rejection) -> Self {
        let mut out = RejectionJson {
            verdict: "reject",
            stage: e.stage(),
            reason: e.to_string(),
            ..Default::default()
        };
        match e {
            Rejection::NotPolymatroid(PolymatroidViolation::NotMonotone { subset, superset }) => {
                out.subset = Some(indices(*subset));
                out.superset = Some(indices(*superset));
            }
            Rejection::NotPolymatroid(PolymatroidViolation::NotSubmodular { s1, s2 }) => {
                out.pair = Some([indices(*s1), indices(*s2)]);
            }
            Rejection::NegativeProfile { subset } => out.subset = Some(indices(*subset)),
            Rejection::ConditionsFail(f) => out.conditions = Some(FailureJson::of(f)),
            _ => {}
        }
        out
    }
}

#[derive(Serialize)]
struct DegeneracyEntry {
    kind: &'static str,
    indices: Vec<usize>,
}

#[derive(Serialize)]
struct RealizationJson<'a> {
    #[serde(flatten)]
    hypergraph: HypergraphJson<'a>,
    /// One label list per profile index, before duplicates are merged.
    family: Vec<Vec<&'a str>>,
    status: String,
    degeneracy: Vec<DegeneracyEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reading: Option<&'static str>,
}

fn realization_output(
    r: &Realization,
    reading: Option<&'static str>,
    dot: bool,
    pretty: bool,
) -> String {
    if dot {
        return incidence_dot(&r.hypergraph);
    }
    let d = &r.degeneracy;
    let degeneracy = d
        .coinciding
        .iter()
        .map(|g| DegeneracyEntry {
            kind: "coinciding",
            indices: g.clone(),
        })
        .chain(d.nested.iter().map(|&(i, j)| DegeneracyEntry {
            kind: "nested",
            indices: vec![i, j],
        }))
        .chain(d.empty.iter().map(|&i| DegeneracyEntry {
            kind: "empty",
            indices: vec![i],
        }))
        .collect();
    let names = r.hypergraph.vertex_names();
    erased::Render::render(
        &RealizationJson {
            hypergraph: HypergraphJson::new(&r.hypergraph),
            family: family_json(names, &r.family),
            status: d.to_string(),
            degeneracy,
            reading,
        },
        pretty,
    )
}
