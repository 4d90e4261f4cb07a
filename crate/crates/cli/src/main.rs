use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use trimin::report::{run, Command, Format, RunConfig};

#[derive(Parser)]
#[command(name = "trimin", version, about = "Verification toolkit for minimum triangle density")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Write the output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json, global = true)]
    format: FormatArg,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Worker threads (defaults to all cores).
    #[arg(long, env = "TRIMIN_THREADS", global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Flag-algebra identity suite, including resolve-fe, id5 and id6.
    Identities,
    /// Extremal curve table over an evenly spaced grid of edge densities.
    Hcurve {
        #[arg(long, default_value_t = 0.5)]
        from: f64,
        #[arg(long, default_value_t = 0.95)]
        to: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
    },
    /// Exact minimum clique counts for every edge count at order n.
    Brute {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        r: usize,
    },
    /// Exact statistics of the extremal family member.
    Construct {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        n: usize,
    },
    /// Densities of the join limit at edge density a.
    Join {
        #[arg(long)]
        a: f64,
        #[arg(long, default_value_t = 4)]
        level: usize,
    },
    /// Numerical minimization over complete partite limits.
    Ratios {
        #[arg(long)]
        a: f64,
    },
    /// Grow a triangle-free graph (first graph6 line of INPUT) to s edges.
    Grow {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        s: usize,
    },
    /// Graphs near the Goodman bound at the Turán edge count.
    Stability {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
    },
    /// Search for the flag triple of the id5 relation.
    ResolveFe,
    /// Every check in one JSON summary.
    ReportAll,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        Cmd::Identities => Command::Identities,
        Cmd::Hcurve { from, to, steps } => Command::Hcurve { from, to, steps },
        Cmd::Brute { n, r } => Command::Brute { n, r },
        Cmd::Construct { a, n } => Command::Construct { a, n },
        Cmd::Join { a, level } => Command::Join { a, level },
        Cmd::Ratios { a } => Command::Ratios { a },
        Cmd::Grow { input, s } => Command::Grow { input, s },
        Cmd::Stability { n, t, delta } => Command::Stability { n, t, delta },
        Cmd::ResolveFe => Command::ResolveFe,
        Cmd::ReportAll => Command::ReportAll,
    };
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
        FormatArg::Text => Format::Text,
    };
    let cfg = RunConfig {
        command,
        format,
        seed: cli.seed,
        threads: cli.threads,
    };
    let out = match run(&cfg) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &out.body),
        None => {
            print!("{}", out.body);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(out.exit_code() as u8)
}
