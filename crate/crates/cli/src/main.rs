use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hurwitz::generate::Kind;
use hurwitz::stability::CriterionSet;
use hurwitz_cli::commands::{self, CliError, Outcome, Settings, TOL_ENV};
use hurwitz_cli::EXIT_ERROR;

/// Hurwitz stability of monic matrix polynomials.
#[derive(Parser)]
#[command(name = "hurwitz", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide stability of a polynomial file (exit 0 stable, 1 unstable, 2 inconclusive).
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "all")]
        criterion: CriterionArg,
        /// Skip the eigenvalue cross-check.
        #[arg(long)]
        no_oracle: bool,
        /// Also report Markov, Hankel, Bezout and HN sections of R_F, R_zF, Rt_F, Rt_zF.
        #[arg(long)]
        fractions: bool,
    },
    /// Classify Q·P⁻¹ from a fraction file (exit 0 certified, 1 not HN, 2 inconclusive).
    Hn {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Print Markov parameters up to s_N and classes of requested Hankel matrices.
    Markov {
        file: PathBuf,
        #[arg(short = 'n', long, default_value_t = 8)]
        n: usize,
        /// Classify H_k; may be repeated.
        #[arg(long = "hankel", value_name = "K")]
        hankel: Vec<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Write a seeded random polynomial file.
    Gen {
        #[arg(short, long)]
        p: usize,
        #[arg(short = 'n', long)]
        degree: usize,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; stdout when omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    /// Relative definiteness tolerance (default 1e-9, or $HURWITZ_TOL_DEF).
    #[arg(long)]
    tol_def: Option<f64>,
    /// Relative rank tolerance.
    #[arg(long)]
    tol_rank: Option<f64>,
    /// Side of the n×n upper half-plane grid used for the Im R scan.
    #[arg(long)]
    grid: Option<usize>,
    /// Print the report as compact JSON.
    #[arg(long)]
    json: bool,
    /// Print the report as indented JSON.
    #[arg(long)]
    pretty: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum CriterionArg {
    Markov,
    Alt,
    Hn,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Stable,
    Unstable,
    Boundary,
}

impl Common {
    fn settings(&self) -> Result<Settings, CliError> {
        let env = std::env::var(TOL_ENV).ok();
        let mut tol = commands::default_tolerances(env.as_deref())?;
        for (flag, value) in [("--tol-def", self.tol_def), ("--tol-rank", self.tol_rank)] {
            if value.is_some_and(|x| !(x.is_finite() && x > 0.0)) {
                return Err(CliError::Usage(format!("{flag} must be a positive number")));
            }
        }
        if let Some(x) = self.tol_def {
            tol = tol.with_definiteness(x);
        }
        if let Some(x) = self.tol_rank {
            tol = tol.with_rank(x);
        }
        if self.grid.is_some_and(|n| n < 2) {
            return Err(CliError::Usage("--grid must be at least 2".into()));
        }
        Ok(Settings { tol, grid: self.grid, ..Settings::default() })
    }

    fn print(&self, outcome: &Outcome) {
        if self.pretty {
            println!("{}", serde_json::to_string_pretty(&outcome.report).expect("serializable"));
        } else if self.json {
            println!("{}", outcome.report);
        } else {
            print!("{}", outcome.summary);
        }
    }
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Analyze { file, common, criterion, no_oracle, fractions } => {
            let criteria = match criterion {
                CriterionArg::Markov => CriterionSet::Markov,
                CriterionArg::Alt => CriterionSet::Alt,
                CriterionArg::Hn => CriterionSet::Hn,
                CriterionArg::All => CriterionSet::All,
            };
            let settings = Settings { criteria, oracle: !no_oracle, fractions, ..common.settings()? };
            let outcome = commands::analyze(&file.display().to_string(), &read(&file)?, &settings)?;
            common.print(&outcome);
            Ok(outcome.code)
        }
        Command::Hn { file, common } => {
            let outcome = commands::hn(&file.display().to_string(), &read(&file)?, &common.settings()?)?;
            common.print(&outcome);
            Ok(outcome.code)
        }
        Command::Markov { file, n, hankel, common } => {
            let outcome =
                commands::markov(&file.display().to_string(), &read(&file)?, n, &hankel, &common.settings()?)?;
            for w in outcome.report["warnings"].as_array().into_iter().flatten() {
                eprintln!("warning: {}", w.as_str().unwrap_or_default());
            }
            common.print(&outcome);
            Ok(outcome.code)
        }
        Command::Gen { p, degree, kind, seed, out } => {
            let kind = match kind {
                KindArg::Stable => Kind::Stable,
                KindArg::Unstable => Kind::Unstable,
                KindArg::Boundary => Kind::Boundary,
            };
            let text = commands::gen(p, degree, kind, seed)?;
            match out {
                Some(path) => {
                    std::fs::write(&path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
                }
                None => print!("{text}"),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
