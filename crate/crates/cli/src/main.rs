use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use gsvkit::constructions::{self, Partition};
use gsvkit::geometry;
use gsvkit::gscheck;
use gsvkit::io;
use gsvkit::matroid::{self, Matroid, WeightVector};
use gsvkit::ops::{self, IrreducibilityVerdict};
use gsvkit::verify;
use gsvkit::{ItemSet, Rational, Valuation};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "gsvkit", version, about = "Exact tools for gross-substitutes valuations and matroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test the exchange property; exits 1 when it fails.
    GsCheck { valuation: PathBuf },
    /// Print the merge (max-convolution) of two valuations.
    Merge { a: PathBuf, b: PathBuf },
    /// Print the endowment of a valuation by a bundle.
    Endow {
        valuation: PathBuf,
        /// Items such as "1,3".
        #[arg(long)]
        set: ItemSet,
    },
    /// Look for a decomposition, then for a geometric irreducibility certificate.
    Irreducible {
        valuation: PathBuf,
        /// Directory of extra candidate factors (*.json valuations).
        #[arg(long)]
        candidates: Option<PathBuf>,
    },
    #[command(subcommand)]
    Matroid(MatroidCommand),
    /// Faces of the regular subdivision induced by a valuation.
    Faces {
        valuation: PathBuf,
        #[arg(long)]
        full_only: bool,
    },
    #[command(subcommand)]
    Make(MakeCommand),
    /// Represent a valuation on at most three items by a weighted bipartite graph.
    FitOxs { valuation: PathBuf },
    /// Run the built-in verification claims.
    Verify {
        /// Claim ids, or "all".
        #[arg(long, value_delimiter = ',', default_value = "all")]
        scope: Vec<String>,
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        /// Also write the reports to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum MatroidCommand {
    /// All labeled matroids on [n].
    Enum {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Exhaustive union-irreducibility test.
    Irr { matroid: PathBuf },
}

#[derive(Subcommand)]
enum MakeCommand {
    Partition {
        /// Number of items; defaults to the largest item named in --parts.
        #[arg(long)]
        n: Option<usize>,
        /// Parts separated by "|", e.g. "1,2|3,4".
        #[arg(long)]
        parts: String,
        #[arg(long, value_parser = parse_rational)]
        a: Rational,
        #[arg(long, value_parser = parse_rational)]
        b: Rational,
    },
    WeightedRank {
        matroid: PathBuf,
        #[arg(long, value_parser = parse_weights)]
        w: WeightVector,
    },
    SplitOrigin {
        matroid: PathBuf,
        #[arg(long, value_parser = parse_weights)]
        w: WeightVector,
        #[arg(long, value_parser = parse_rational)]
        c: Rational,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    gsvkit::rational::parse(s).map_err(|e| e.to_string())
}

fn parse_weights(s: &str) -> Result<WeightVector, String> {
    let w = s.split(',').map(|x| parse_rational(x.trim())).collect::<Result<Vec<_>, _>>()?;
    WeightVector::new(w).map_err(|e| e.to_string())
}

fn read_valuation(path: &Path) -> Result<Valuation> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    io::valuation_from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_matroid(path: &Path) -> Result<Matroid> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    io::matroid_from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn face_json(f: &geometry::Face) -> Value {
    json!({"points": f.points(), "dimension": f.dimension()})
}

/// Writes JSON to stdout; a closed pipe (as with `| head`) is not an error.
fn print(v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("JSON values serialize");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn verdict_json(verdict: &IrreducibilityVerdict) -> Value {
    match verdict {
        IrreducibilityVerdict::CertifiedIrreducible { face } => {
            json!({"status": verdict.status(), "face": face_json(face)})
        }
        IrreducibilityVerdict::Reducible { left, right } => json!({
            "status": verdict.status(),
            "left": io::valuation_to_json(left),
            "right": io::valuation_to_json(right),
        }),
        IrreducibilityVerdict::Unknown => json!({"status": verdict.status()}),
    }
}

fn irreducible(v: &Valuation, dir: Option<&Path>) -> Result<Value> {
    let mut candidates = ops::default_candidates(v)?;
    if let Some(dir) = dir {
        let mut paths: Vec<PathBuf> = fs::read_dir(dir)
            .with_context(|| format!("reading {}", dir.display()))?
            .map(|e| e.map(|e| e.path()))
            .collect::<std::io::Result<_>>()?;
        paths.sort();
        for p in paths.iter().filter(|p| p.extension().is_some_and(|e| e == "json")) {
            candidates.push(read_valuation(p)?);
        }
    }
    let refuted = ops::refute_irreducible(v, &candidates);
    let verdict = if matches!(refuted, IrreducibilityVerdict::Reducible { .. }) {
        refuted
    } else {
        ops::certify_irreducible(v)?
    };
    let mut out = verdict_json(&verdict);
    out["candidates_tried"] = json!(candidates.len());
    Ok(out)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::GsCheck { valuation } => {
            let v = read_valuation(&valuation)?;
            let (gs, witness) = gscheck::is_gross_substitutes(&v);
            print(&json!({"gross_substitutes": gs, "witness": witness}));
            return Ok(if gs { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Merge { a, b } => {
            print(&io::valuation_to_json(&ops::merge(&read_valuation(&a)?, &read_valuation(&b)?)));
        }
        Command::Endow { valuation, set } => {
            print(&io::valuation_to_json(&ops::endow(&read_valuation(&valuation)?, set)?));
        }
        Command::Irreducible { valuation, candidates } => {
            print(&irreducible(&read_valuation(&valuation)?, candidates.as_deref())?);
        }
        Command::Matroid(MatroidCommand::Enum { n, count_only }) => {
            let all = matroid::enumerate_matroids(ItemSet::full(n))?;
            if count_only {
                print(&json!({"n": n, "count": all.len()}));
            } else {
                print(&json!({"n": n, "count": all.len(), "matroids": all.iter().map(io::matroid_to_json).collect::<Vec<_>>()}));
            }
        }
        Command::Matroid(MatroidCommand::Irr { matroid }) => {
            let m = read_matroid(&matroid)?;
            let cert = matroid::is_irreducible_matroid(&m)?;
            let witness = cert.witness.as_ref().map(|(a, b)| json!([io::matroid_to_json(a), io::matroid_to_json(b)]));
            print(&json!({
                "irreducible": cert.irreducible,
                "witness": witness,
                "passes_connectivity_filter": cert.passes_connectivity_filter,
            }));
        }
        Command::Faces { valuation, full_only } => {
            let v = read_valuation(&valuation)?;
            let faces = if full_only { geometry::full_dimensional_faces(&v)? } else { geometry::enumerate_faces(&v)? };
            print(&json!({"count": faces.len(), "faces": faces.iter().map(face_json).collect::<Vec<_>>()}));
        }
        Command::Make(MakeCommand::Partition { n, parts, a, b }) => {
            let n = match n {
                Some(n) => n,
                None => parts
                    .split(['|', ','])
                    .filter_map(|x| x.trim().parse::<usize>().ok())
                    .max()
                    .context("--parts names no items")?,
            };
            let pi = Partition::parse(n, &parts)?;
            print(&io::valuation_to_json(&constructions::partition_valuation(&pi, a, b)?));
        }
        Command::Make(MakeCommand::WeightedRank { matroid, w }) => {
            print(&io::valuation_to_json(&matroid::weighted_rank(&read_matroid(&matroid)?, &w)?));
        }
        Command::Make(MakeCommand::SplitOrigin { matroid, w, c }) => {
            print(&io::valuation_to_json(&constructions::split_origin_valuation(&read_matroid(&matroid)?, &w, c)?));
        }
        Command::FitOxs { valuation } => {
            let b = constructions::oxs_fit(&read_valuation(&valuation)?)?;
            print(&serde_json::to_value(&b)?);
        }
        Command::Verify { scope, seed, json } => {
            let known: Vec<&str> = verify::claims().iter().map(|(id, _)| *id).collect();
            if let Some(bad) = scope.iter().find(|s| *s != "all" && !known.contains(&s.as_str())) {
                bail!("unknown claim id {bad:?}; known ids: {}", known.join(", "));
            }
            let reports = verify::run_claims(&scope, seed);
            for r in &reports {
                eprintln!("{:<30} {} ({} ms)", r.claim, if r.passed { "PASS" } else { "FAIL" }, r.elapsed_ms);
            }
            let value = serde_json::to_value(&reports)?;
            if let Some(path) = json {
                fs::write(&path, serde_json::to_string_pretty(&value)?).with_context(|| format!("writing {}", path.display()))?;
            }
            print(&value);
            let all_passed = reports.iter().all(|r| r.passed);
            return Ok(if all_passed { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
