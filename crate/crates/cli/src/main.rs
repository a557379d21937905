//! `logalg`: log-algebraic polynomials, Frobenius data and L-values of Drinfeld modules from
//! the command line. Results are printed as versioned JSON.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "logalg", version, about = "Log-algebraic polynomials and L-values of Drinfeld modules over F_q[T]")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Size of the constant field F_q (a prime power).
    #[arg(long, global = true)]
    pub q: Option<u64>,
    /// Modulus of F_q over F_p as ascending coefficients, e.g. "1,1,1" for u^2+u+1.
    #[arg(long, global = true, value_name = "COEFFS")]
    pub fq_modulus: Option<String>,
    /// Coefficients of φ_T = T + κ_1 τ + … + κ_r τ^r, comma separated, e.g. "T^5+2*T^4,T".
    #[arg(long, global = true)]
    pub kappa: Option<String>,
    /// Degree of the working extension F_(q^k) for character values.
    #[arg(long, global = true, default_value_t = 1)]
    pub k: u32,
    /// ∞-adic precision: series are kept above T^(-prec).
    #[arg(long, global = true, default_value_t = 40)]
    pub prec: i64,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Write the JSON document here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Frobenius data at a monic irreducible f: b_l, c_f, P_f and Q_f^v.
    Charpoly {
        #[arg(long)]
        f: String,
    },
    /// The coefficients μ(a) of L(φ^v, s-1), for the given monics or every monic up to --depth.
    Mu {
        /// Comma-separated monic polynomials.
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// The log-algebraic polynomial E(β, z).
    Logalg {
        #[arg(long, default_value = "1")]
        beta: String,
        /// log-recursion or exp-sum.
        #[arg(long, default_value = "log-recursion")]
        strategy: String,
    },
    /// A Goss L-value as a Laurent series in 1/T.
    Lvalue {
        /// L(φ^v, s) instead of L(φ, s).
        #[arg(long)]
        dual: bool,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        s: i64,
        /// Twist by the character of this index modulo a monic irreducible, e.g. "T,1".
        #[arg(long = "char", value_name = "P,INDEX")]
        character: Option<String>,
        /// Number of degree blocks to sum (default: the largest affordable one).
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Run a verification suite (or "all") and report per-case results.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite name, or "all".
    pub suite: String,
    #[arg(long)]
    pub qmax: Option<u64>,
    #[arg(long)]
    pub dmax: Option<usize>,
    #[arg(long)]
    pub rmax: Option<usize>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub corpus: Option<usize>,
    #[arg(long)]
    pub mu_depth: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub tolerance: Option<i64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            let text = out.doc.to_json() + "\n";
            if let Some(path) = &cli.global.output {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{text}");
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
