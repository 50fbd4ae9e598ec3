use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nori_cli::commands::{run_command, Command, Options, Source};
use serde_json::json;

#[derive(Parser)]
#[command(name = "nori", version, about = "Pointed torsors over finite Galois data")]
struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    machine: bool,
    /// Worker threads for parallel enumeration.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for randomized checks in `verify`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of randomized cases per seed.
    #[arg(long, global = true, default_value_t = 32)]
    cases: usize,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct SourceArgs {
    /// Model file or built-in example id.
    source: Option<String>,
    /// Torsor name inside the model file.
    torsor: Option<String>,
    /// Built-in example id.
    #[arg(long, conflicts_with = "source")]
    example: Option<String>,
    /// Example parameter (n, p or l).
    #[arg(long, visible_aliases = ["p", "l"])]
    n: Option<usize>,
}

#[derive(Args)]
struct BaseArgs {
    /// Named base: real, trivial or cyclotomic.
    #[arg(long, default_value = "real")]
    base: String,
    #[arg(long, default_value_t = 12)]
    bound: usize,
    /// Prime for the cyclotomic base.
    #[arg(long, default_value_t = 5)]
    p: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate a model file.
    Validate { file: PathBuf },
    /// Saturation subgroup of a torsor.
    Saturate(SourceArgs),
    /// Component stabilizer and geometric image.
    Image(SourceArgs),
    /// Fibre product of two morphisms with a common target.
    FiberProduct { file: PathBuf, first: String, second: String },
    /// Saturated triples of a named base up to a bound.
    Enumerate(BaseArgs),
    /// Inverse limit of the system of saturated triples.
    Limit(BaseArgs),
    /// Normality of the geometric image and descent of the quotient.
    SequenceCheck(SourceArgs),
    /// Run the checks of a built-in example.
    Verify {
        id: String,
        #[arg(long, visible_aliases = ["p", "l"])]
        n: Option<usize>,
    },
    /// Write the system of saturated triples as a TGF graph.
    ExportGraph {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long)]
        out: PathBuf,
    },
}

fn source(a: SourceArgs) -> Result<Source, String> {
    if let Some(id) = a.example {
        return Ok(Source::Example { id, param: a.n });
    }
    match (a.source, a.torsor) {
        (Some(file), Some(torsor)) => Ok(Source::Model { file: file.into(), torsor }),
        (Some(id), None) => Ok(Source::Example { id, param: a.n }),
        _ => Err("expected a model file and torsor name, or an example id".into()),
    }
}

fn command(c: Cmd) -> Result<Command, String> {
    Ok(match c {
        Cmd::Validate { file } => Command::Validate { file },
        Cmd::Saturate(a) => Command::Saturate(source(a)?),
        Cmd::Image(a) => Command::Image(source(a)?),
        Cmd::FiberProduct { file, first, second } => Command::FiberProduct { file, first, second },
        Cmd::Enumerate(b) => Command::Enumerate { base: b.base, bound: b.bound, p: b.p },
        Cmd::Limit(b) => Command::Limit { base: b.base, bound: b.bound, p: b.p },
        Cmd::SequenceCheck(a) => Command::SequenceCheck(source(a)?),
        Cmd::Verify { id, n } => Command::Verify { id, param: n },
        Cmd::ExportGraph { base: b, out } => Command::ExportGraph { base: b.base, bound: b.bound, p: b.p, out },
    })
}

fn fail(machine: bool, name: &str, kind: &str, message: String, position: Option<(usize, usize)>) -> ExitCode {
    if machine {
        let doc = json!({
            "command": name,
            "status": "error",
            "error": {
                "kind": kind,
                "message": message,
                "line": position.map(|p| p.0),
                "column": position.map(|p| p.1),
            },
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    } else {
        eprintln!("error: {kind}: {message}");
    }
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    let opts = Options { seed: cli.seed, cases: cli.cases };
    let cmd = match command(cli.command) {
        Ok(c) => c,
        Err(msg) => return fail(cli.machine, "usage", "UsageError", msg, None),
    };
    match run_command(&cmd, &opts) {
        Ok(report) => {
            if cli.machine {
                print!("{}", report.machine());
            } else {
                print!("{}", report.human());
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => fail(cli.machine, cmd.name(), e.kind(), e.to_string(), e.position()),
    }
}
