use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use gq_core::counting::{replay_lemma, LemmaId, ProofTrace};
use gq_core::design::{design_from_partition, write_design};
use gq_core::geometry::GeometryFile;
use gq_core::report::{all_suites, run_verification, VerifyOptions};
use gq_core::srg::{local_partition, point_graph};
use gq_core::{build_quadric_quadrangle, parse_geometry, write_geometry, GQParams};

/// Build Q(5,4) over GF(4), check its structure, and replay the counting argument for GQ(4,16).
#[derive(Parser, Debug)]
#[command(name = "gq416", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build Q(5,4) and write it as a geometry file.
    Construct {
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run verification suites on a geometry file.
    Verify {
        input: PathBuf,
        /// Run every suite (the default when no --suite is given).
        #[arg(long, conflicts_with = "suite")]
        all: bool,
        /// Run only this suite; repeatable.
        #[arg(long)]
        suite: Vec<String>,
        /// Sample this many random triads instead of the exhaustive scan.
        #[arg(long)]
        sample: Option<usize>,
        /// Non-edges sampled (besides the canonical one) for per-non-edge suites.
        #[arg(long, default_value_t = 50)]
        nonedges: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use every non-edge for per-non-edge suites.
        #[arg(long)]
        deep: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Replay proof traces of the counting argument.
    Replay {
        /// Lemma ids (L3.4, R3.5, L3.12, L3.13, L3.14, L3.15).
        ids: Vec<String>,
        #[arg(long, conflicts_with = "ids")]
        all: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Write the design on A for one non-edge in the design text format.
    ExportDesign {
        input: PathBuf,
        /// Non-edge as `p,q`; defaults to the first non-edge.
        #[arg(long, value_parser = parse_pair)]
        non_edge: Option<(usize, usize)>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List suite ids.
    Suites,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (p, q) = s.split_once(',').ok_or("expected p,q")?;
    let p = p.trim().parse().map_err(|e| format!("{p}: {e}"))?;
    let q = q.trim().parse().map_err(|e| format!("{q}: {e}"))?;
    Ok((p, q))
}

/// Outcome of a command that ran to completion.
enum Verdict {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<Verdict> {
    match command {
        Command::Construct { output } => construct(&output),
        Command::Verify { input, all: _, suite, sample, nonedges, seed, deep, format, output } => {
            let opts = VerifyOptions { suites: suite, triad_sample: sample, nonedge_sample: nonedges, seed, deep };
            verify(&input, &opts, format, output.as_deref())
        }
        Command::Replay { ids, all: _, format } => replay(&ids, format),
        Command::ExportDesign { input, non_edge, output } => export_design(&input, non_edge, output.as_deref()),
        Command::Suites => {
            for id in all_suites() {
                println!("{id}");
            }
            Ok(Verdict::Pass)
        }
    }
}

fn construct(output: &Path) -> Result<Verdict> {
    let s = build_quadric_quadrangle();
    let text = write_geometry(&s, GQParams::Q54);
    fs::write(output, text).with_context(|| format!("writing {}", output.display()))?;
    println!("{} points, {} lines -> {}", s.point_count(), s.line_count(), output.display());
    Ok(Verdict::Pass)
}

fn load(input: &Path) -> Result<GeometryFile> {
    let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    parse_geometry(&text).with_context(|| format!("parsing {}", input.display()))
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verify(input: &Path, opts: &VerifyOptions, format: Format, output: Option<&Path>) -> Result<Verdict> {
    let file = load(input)?;
    if file.params != GQParams::Q54 {
        bail!("{}: header declares GQ({}, {}), expected GQ(4, 16)", input.display(), file.params.s, file.params.t);
    }
    let report = run_verification(&file.structure, opts)?;
    let text = match format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.render_text(),
    };
    emit(&text, output)?;
    if output.is_some() {
        let status = if report.passed() { "PASS" } else { "FAIL" };
        println!("{status}: {} suites", report.entries.len());
    }
    Ok(if report.passed() { Verdict::Pass } else { Verdict::Fail })
}

fn replay(ids: &[String], format: Format) -> Result<Verdict> {
    let ids: Vec<LemmaId> = if ids.is_empty() {
        LemmaId::ALL.to_vec()
    } else {
        ids.iter().map(|s| s.parse::<LemmaId>()).collect::<Result<_, _>>()?
    };
    let traces: Vec<ProofTrace> = ids.into_iter().map(replay_lemma).collect();
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&traces)?),
        Format::Text => {
            let blocks: Vec<String> = traces.iter().map(|t| t.to_string()).collect();
            println!("{}", blocks.join("\n\n"));
        }
    }
    Ok(if traces.iter().all(ProofTrace::passes) { Verdict::Pass } else { Verdict::Fail })
}

fn export_design(input: &Path, non_edge: Option<(usize, usize)>, output: Option<&Path>) -> Result<Verdict> {
    let file = load(input)?;
    let g = point_graph(&file.structure);
    let (p, q) = match non_edge {
        Some(pq) => pq,
        None => g.canonical_non_edge().context("geometry has no non-collinear pair")?,
    };
    let part = local_partition(&g, p, q)?;
    let (design, _) = design_from_partition(&g, &part)?;
    emit(&write_design(&design), output)?;
    Ok(Verdict::Pass)
}
