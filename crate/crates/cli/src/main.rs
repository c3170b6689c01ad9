//! `toribundle`: exact invariants of bundles on tori and rational noncommutative tori.

mod commands;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "toribundle", version, about = "Exact invariants of bundles on tori and rational noncommutative tori")]
pub struct Cli {
    /// Output style.
    #[arg(long, value_enum, global = true, default_value = "human")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Orient {
    Standard,
    Reversed,
}

#[derive(Args, Clone, Debug)]
pub struct ThetaArg {
    /// Skew matrix as inline JSON or @file.
    #[arg(long)]
    pub theta: Option<String>,
    /// Shorthand for the 2x2 form with off-diagonal entry p/q.
    #[arg(long, allow_hyphen_values = true)]
    pub planar: Option<String>,
}

#[derive(Args, Clone, Debug)]
pub struct BundleArg {
    /// Rank q of X(q, a).
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
    /// Twist parameter a of X(q, a).
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, value_enum, default_value = "standard")]
    pub orientation: Orient,
    /// Compute through the numerical clutching loop instead of the exact class.
    #[arg(long)]
    pub clutching: bool,
    /// Sample count for the clutching loop (default 64*q*(|a|+1)).
    #[arg(long)]
    pub samples: Option<usize>,
    /// Snap tolerance in turns.
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
}

#[derive(Subcommand)]
pub enum Command {
    /// Rank of E_theta, the square root of [(Z^n + im theta) : Z^n].
    QTheta(ThetaArg),
    /// Block normal form T theta T^t = [[0,D,0],[-D,0,0],[0,0,0]].
    NormalForm(ThetaArg),
    /// Decide whether C(T^n_theta) (x) M_m and C(T^n_theta') (x) M_m' are isomorphic.
    Iso {
        #[arg(long)]
        theta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        planar: Option<String>,
        #[arg(long)]
        theta2: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        planar2: Option<String>,
        #[arg(long, default_value = "1")]
        m: String,
        #[arg(long, default_value = "1")]
        m2: String,
        /// Bound on visited orbit states.
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
        /// Decide through line-bundle twists of E_theta instead.
        #[arg(long)]
        via_bundles: bool,
    },
    /// Twist of X(q, a) on T^2.
    Twist(BundleArg),
    /// omega of End X(q, a) as c/q.
    Omega(BundleArg),
    /// Classify the projectively flat class with rank q and first Chern class c1.
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        /// Alternating integer form as inline JSON or @file; zero if omitted.
        #[arg(long)]
        c1: Option<String>,
    },
    /// Exact cocycle check of the factor N_(u,v)(s,t) = N(s)^v.
    CocycleCheck {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print factor records for |gamma_i| <= radius.
        #[arg(long)]
        dump: Option<i64>,
        /// Print the clutching loop sampled at this many steps as CSV.
        #[arg(long)]
        csv: Option<usize>,
    },
    /// Projective representation realizing E_theta.
    Rep(ThetaArg),
    /// Classification tables.
    Table {
        #[command(subcommand)]
        kind: TableKind,
    },
}

#[derive(Subcommand)]
pub enum TableKind {
    /// Matrix bundles End X(q, a) on T^2 for a = 0..q-1.
    Bundles {
        #[arg(long)]
        q: String,
    },
    /// Planar theta = p/d for d up to the bound, grouped into isomorphism classes.
    Theta {
        #[arg(long, default_value_t = 6)]
        max_den: u32,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = commands::run(&cli);
    print!("{}", outcome.stdout);
    if let Some(err) = &outcome.stderr {
        eprintln!("error: {}", commands::ascii(err));
    }
    ExitCode::from(outcome.code)
}
