//! `starcodes` command-line front end.
//!
//! Exit codes: 0 all checks pass, 3 a verified claim failed, 2 usage or
//! budget error, 1 I/O error.

mod manifest;
mod schema;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use starcodes::claims::{self, outcome_of, Claim, ClaimParams, Outcome};
use starcodes::codes::{decode, CodeRule, CodeSet};
use starcodes::coloring::{build_total_coloring, sphere_coloring};
use starcodes::decomp::decompose;
use starcodes::stargraph::{implicit_census, DEFAULT_VERTEX_BUDGET};
use starcodes::{MultisetPerm, StarGraph};

use manifest::{Certificate, RunManifest};

#[derive(Parser)]
#[command(name = "starcodes", version, about = "Star multiset transposition graphs and their perfect codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build ST^ell_k and export it, or sweep it implicitly with --census.
    Build {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long, value_enum, default_value_t = Format::Edges)]
        format: Format,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Degree census over rank/unrank without storing adjacency. Emits JSON.
        #[arg(long)]
        census: bool,
        /// DOT only: fill vertices with the total coloring (ell = 2) or the
        /// sphere coloring for position --i (ell = 3).
        #[arg(long)]
        color_vertices: bool,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_VERTEX_BUDGET)]
        budget: u64,
        #[arg(long)]
        timing: bool,
    },
    /// Verify one claim on one instance and emit a JSON certificate.
    Verify {
        /// One of thm1, cor2, cor3, cor5, thm2-eset, thm2-partition,
        /// thm2-decomp, thm2-total-coloring, thm2-almost, girth.
        claim: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_VERTEX_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        timing: bool,
    },
    /// Remove Sigma_i and the color-i edges, then census and certify the components.
    Decompose {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ell: usize,
        /// Defaults to k*ell - 1.
        #[arg(long)]
        i: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_VERTEX_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Component vertex lists, one word per line, blank line between components.
        #[arg(long)]
        components_out: Option<PathBuf>,
        /// Isomorphism witnesses as JSON maps from component word to reference word.
        #[arg(long)]
        witnesses_out: Option<PathBuf>,
        #[arg(long)]
        timing: bool,
    },
    /// Print the code words dominating WORD, one per line.
    Decode {
        word: String,
        #[arg(long, value_enum)]
        code: CodeKind,
        #[arg(long)]
        i: usize,
        /// Inferred from the word when omitted.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        ell: Option<usize>,
    },
    /// Print the members of S_i or Sigma_i, one word per line.
    Code {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long, value_enum)]
        code: CodeKind,
        #[arg(long)]
        i: usize,
        #[arg(long, default_value_t = DEFAULT_VERTEX_BUDGET)]
        budget: u64,
    },
    /// Run every claim on every instance up to the given sizes.
    Matrix {
        #[arg(long)]
        max_k: usize,
        #[arg(long)]
        max_ell: usize,
        #[arg(long, default_value_t = DEFAULT_VERTEX_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Table)]
        format: MatrixFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        timing: bool,
    },
    /// Print the JSON schema of a report type.
    Schema {
        #[arg(value_enum)]
        name: schema::SchemaName,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edges,
    Dot,
    Graph6,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixFormat {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CodeKind {
    #[value(name = "S")]
    S,
    #[value(name = "Sigma")]
    Sigma,
}

impl CodeKind {
    fn rule(self, i: usize) -> CodeRule {
        match self {
            CodeKind::S => CodeRule::FirstEntry(i),
            CodeKind::Sigma => CodeRule::PositionMatch(i),
        }
    }
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<starcodes::Error> for Failure {
    fn from(e: starcodes::Error) -> Self {
        let mut msg = e.to_string();
        if let starcodes::Error::BudgetExceeded { k, ell, .. } = e {
            msg.push_str(&format!(
                "; raise --budget, or use `build --k {k} --ell {ell} --census` for an implicit sweep"
            ));
        }
        Failure::Usage(msg)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome3 = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn sink(out: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit_json<T: Serialize>(value: &T, out: Option<&Path>) -> io::Result<()> {
    let mut w = sink(out)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(io::Error::other)?;
    writeln!(w)?;
    w.flush()
}

fn run(command: Command) -> Outcome3 {
    match command {
        Command::Build {
            k,
            ell,
            format,
            out,
            census,
            color_vertices,
            i,
            budget,
            timing,
        } => {
            let started = timing.then(Instant::now);
            if census {
                let report = implicit_census(k, ell)?;
                let mut manifest = RunManifest::new("build")
                    .instance(k, ell)
                    .parameter("mode", "census");
                let ok = report.regular;
                manifest.finish(if ok { "regular" } else { "irregular" }, started);
                emit_json(&Certificate { manifest, report }, out.as_deref())?;
                return Ok(ok);
            }
            let g = StarGraph::build_with_budget(k, ell, budget)?;
            let mut w = sink(out.as_deref())?;
            match format {
                Format::Edges => g.write_edge_list(&mut w)?,
                Format::Graph6 => writeln!(w, "{}", g.to_graph6())?,
                Format::Dot => {
                    let colors = if color_vertices {
                        Some(match ell {
                            2 => build_total_coloring(&g)?.vertex_color,
                            3 => sphere_coloring(&g, i.unwrap_or(k * ell - 1))?.0.vertex_color,
                            _ => {
                                return Err(Failure::Usage(
                                    "--color-vertices needs ell = 2 or ell = 3".into(),
                                ))
                            }
                        })
                    } else {
                        None
                    };
                    g.write_dot(&mut w, colors.as_deref())?;
                }
            }
            w.flush()?;
            Ok(true)
        }
        Command::Verify {
            claim,
            k,
            ell,
            i,
            budget,
            out,
            timing,
        } => {
            let started = timing.then(Instant::now);
            let claim: Claim = claim.parse().map_err(|e: claims::UnknownClaim| Failure::Usage(e.to_string()))?;
            if let Some(why) = claim.inapplicable(k, ell) {
                return Err(Failure::Usage(format!("{claim} does not apply to k = {k}, ell = {ell}: {why}")));
            }
            let params = ClaimParams { k, ell, i, budget };
            let report = claims::run_claim(claim, params)?;
            let outcome = outcome_of(&report);
            let mut manifest = RunManifest::new("verify")
                .instance(k, ell)
                .parameter("claim", claim);
            manifest.i = i;
            manifest.budget = Some(budget);
            manifest.finish(outcome.symbol(), started);
            emit_json(&Certificate { manifest, report }, out.as_deref())?;
            Ok(outcome != Outcome::Fail)
        }
        Command::Decompose {
            k,
            ell,
            i,
            budget,
            out,
            components_out,
            witnesses_out,
            timing,
        } => {
            let started = timing.then(Instant::now);
            let i = i.unwrap_or(k * ell - 1);
            let g = StarGraph::build_with_budget(k, ell, budget)?;
            let d = decompose(&g, i)?;
            if let Some(path) = components_out {
                let mut w = sink(Some(&path))?;
                for (n, c) in d.components.iter().enumerate() {
                    if n > 0 {
                        writeln!(w)?;
                    }
                    for &v in c {
                        writeln!(w, "{}", g.word(v))?;
                    }
                }
                w.flush()?;
            }
            if let Some(path) = witnesses_out {
                let reference = StarGraph::build(k - 1, ell)?;
                let maps: Vec<Option<std::collections::BTreeMap<String, String>>> = d
                    .witnesses
                    .iter()
                    .map(|w| {
                        w.as_ref().map(|w| {
                            w.component
                                .iter()
                                .zip(&w.image)
                                .map(|(&a, &b)| (g.word(a).to_string(), reference.word(b).to_string()))
                                .collect()
                        })
                    })
                    .collect();
                emit_json(&maps, Some(&path))?;
            }
            let ok = d.census.consistent();
            let mut manifest = RunManifest::new("decompose").instance(k, ell);
            manifest.i = Some(i);
            manifest.budget = Some(budget);
            manifest.finish(if ok { "pass" } else { "FAIL" }, started);
            emit_json(&Certificate { manifest, report: d.census }, out.as_deref())?;
            Ok(ok)
        }
        Command::Decode { word, code, i, k, ell } => {
            let v = match (k, ell) {
                (Some(k), Some(ell)) => MultisetPerm::parse(&word, k, ell)?,
                (None, None) => MultisetPerm::parse_infer(&word)?,
                _ => return Err(Failure::Usage("give both --k and --ell, or neither".into())),
            };
            let s = CodeSet::from_rule(code.rule(i), v.k(), v.ell())?;
            let mut w = sink(None)?;
            for p in decode(&v, &s) {
                writeln!(w, "{p}")?;
            }
            w.flush()?;
            Ok(true)
        }
        Command::Code { k, ell, code, i, budget } => {
            let n = starcodes::count_vertices(k, ell)?;
            if n > budget {
                return Err(starcodes::Error::BudgetExceeded { k, ell, required: n, budget }.into());
            }
            let s = CodeSet::from_rule(code.rule(i), k, ell)?;
            let mut w = sink(None)?;
            w.write_all(s.to_text().as_bytes())?;
            w.flush()?;
            Ok(true)
        }
        Command::Matrix {
            max_k,
            max_ell,
            budget,
            format,
            out,
            timing,
        } => {
            let started = timing.then(Instant::now);
            let m = claims::matrix(max_k, max_ell, budget)?;
            let ok = !m.any_failed();
            match format {
                MatrixFormat::Table => {
                    let mut w = sink(out.as_deref())?;
                    w.write_all(m.render().as_bytes())?;
                    w.flush()?;
                }
                MatrixFormat::Json => {
                    let mut manifest = RunManifest::new("matrix")
                        .parameter("max_k", max_k)
                        .parameter("max_ell", max_ell);
                    manifest.budget = Some(budget);
                    let summary = match (ok, m.partial) {
                        (true, false) => "pass",
                        (true, true) => "pass (partial)",
                        (false, false) => "FAIL",
                        (false, true) => "FAIL (partial)",
                    };
                    manifest.finish(summary, started);
                    emit_json(&Certificate { manifest, report: m }, out.as_deref())?;
                }
            }
            Ok(ok)
        }
        Command::Schema { name } => {
            let mut w = sink(None)?;
            w.write_all(schema::render(name).as_bytes())?;
            w.flush()?;
            Ok(true)
        }
    }
}
