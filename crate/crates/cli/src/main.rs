use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use twistk::commands::{run, Command, GrModeArg};

#[derive(Parser)]
#[command(name = "twistk", version, about = "Exact K-theory of finite-dimensional algebras with involution")]
struct Cli {
    /// Report format on stdout.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for every randomized step.
    #[arg(long, default_value_t = 1, global = true)]
    seed: u64,
    /// Only run suite cases whose id starts with this prefix.
    #[arg(long, global = true)]
    filter: Option<String>,
    /// Worker threads for the suite.
    #[arg(long, default_value_t = 1, global = true)]
    parallel: usize,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    output: Option<String>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Complexified,
    Real,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dimension, center, radical, Wedderburn factors and involution data.
    Analyze {
        #[arg(long)]
        spec: String,
    },
    /// Central idempotents and simple factors.
    Wedderburn {
        #[arg(long)]
        spec: String,
    },
    K0 {
        #[arg(long)]
        spec: String,
    },
    /// KR of the trivial bundle with the given fiber over a finite Real space.
    Kr {
        #[arg(long)]
        fiber: String,
        /// point, swap, fixed:N, doubled:N or perm:i,j,...
        #[arg(long, default_value = "point")]
        space: String,
    },
    /// Grothendieck-Witt group of epsilon-symmetric forms.
    Gr {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        epsilon: i64,
        #[arg(long, default_value = "point")]
        space: String,
        #[arg(long, value_enum, default_value_t = Mode::Complexified)]
        mode: Mode,
    },
    Balanced {
        #[arg(long)]
        spec: String,
    },
    /// Compare K0 of the crossed product with that of its matrix algebra.
    Morita {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Invariants of forms at a point, optionally diagonalizing a Gram matrix.
    Gw {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        epsilon: i64,
        #[arg(long)]
        gram: Option<String>,
    },
    /// Forms side against K-theory side of the Grothendieck-Witt comparison.
    Crosscheck {
        #[arg(long)]
        spec: String,
        #[arg(long, allow_negative_numbers = true)]
        epsilon: Option<i64>,
    },
    /// Run every named verification case.
    Suite,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        Cmd::Analyze { spec } => Command::Analyze { spec },
        Cmd::Wedderburn { spec } => Command::Wedderburn { spec },
        Cmd::K0 { spec } => Command::K0 { spec },
        Cmd::Kr { fiber, space } => Command::Kr { fiber, space },
        Cmd::Gr { spec, epsilon, space, mode } => {
            let mode = match mode {
                Mode::Complexified => GrModeArg::Complexified,
                Mode::Real => GrModeArg::Real,
            };
            Command::Gr { spec, epsilon, space, mode }
        }
        Cmd::Balanced { spec } => Command::Balanced { spec },
        Cmd::Morita { spec, n } => Command::Morita { spec, n },
        Cmd::Gw { spec, epsilon, gram } => Command::Gw { spec, epsilon, gram },
        Cmd::Crosscheck { spec, epsilon } => Command::Crosscheck { spec, epsilon },
        Cmd::Suite => Command::Suite { filter: cli.filter.clone(), parallel: cli.parallel },
    };
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    let mut report = run(&command, &echo.join(" "), cli.seed);
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    match cli.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    if let Some(path) = &cli.output {
        if let Err(e) = fs::write(path, report.to_json()) {
            eprintln!("twistk: cannot write {path}: {e}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(report.status.exit_code())
}
