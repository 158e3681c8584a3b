mod commands;
mod error;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;
use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "dyckhike", version, about = "Exact powers and evolution of boson ladder operators via Dyck path sums")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json", env = "DYCKHIKE_FORMAT")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignChoice {
    Plus,
    Minus,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variable {
    Auto,
    R,
    S,
}

#[derive(Debug, Args)]
pub struct OperatorArgs {
    /// Operator A, e.g. "a[0]^3" or "ad[0]*a[2] + ad[1]*a[3]".
    #[arg(long, env = "DYCKHIKE_EXPR")]
    pub expr: String,
    /// Vacuum state annihilated by A, e.g. "|0,5>".
    #[arg(long, default_value = "|0>", env = "DYCKHIKE_VAC")]
    pub vac: String,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    /// Evaluation points, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, env = "DYCKHIKE_R")]
    pub r: Vec<f64>,
    /// Evenly spaced points "start:stop:count", appended to --r.
    #[arg(long, value_parser = commands::parse_range)]
    pub r_range: Option<commands::Range>,
    /// Emit only (r, value) pairs.
    #[arg(long)]
    pub plot_data: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Number of Dyck paths of length k from height d1 to height d2.
    CountPaths {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        d1: usize,
        #[arg(long)]
        d2: usize,
    },
    /// Lists the Dyck words of a path specification (written right to left).
    EnumeratePaths {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        d1: usize,
        #[arg(long)]
        d2: usize,
        /// Maximum number of words to list.
        #[arg(long, default_value_t = 1000)]
        limit: usize,
    },
    /// Ladder products of A on its vacuum and their interpolating polynomial.
    LambdaMu {
        #[command(flatten)]
        op: OperatorArgs,
        #[arg(long, default_value_t = 8, env = "DYCKHIKE_P_MAX")]
        p_max: usize,
        /// Polynomial degree (defaults to the order of A).
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Coefficients of (A† ± A)^k on the vacuum in the normalized ladder basis.
    Power {
        #[command(flatten)]
        op: OperatorArgs,
        #[arg(long, env = "DYCKHIKE_K")]
        k: usize,
        #[arg(long, value_enum, default_value = "plus", env = "DYCKHIKE_SIGN")]
        sign: Sign,
    },
    /// Amplitudes of exp[r(A† - A)] on the vacuum from the order-K Taylor series.
    Evolve {
        #[command(flatten)]
        op: OperatorArgs,
        #[arg(long = "K", env = "DYCKHIKE_ORDER")]
        order: usize,
        #[arg(long, allow_negative_numbers = true, env = "DYCKHIKE_R")]
        r: f64,
        /// Bits of the reported floats (at least 53).
        #[arg(long, default_value_t = 53, env = "DYCKHIKE_PRECISION")]
        precision: u32,
        /// Only report these levels.
        #[arg(long, value_delimiter = ',')]
        d2: Vec<usize>,
        #[arg(long, value_enum, default_value = "minus", env = "DYCKHIKE_SIGN")]
        sign: Sign,
    },
    /// Vacuum expectation amplitude from the order-K Taylor series.
    Vev {
        #[command(flatten)]
        op: OperatorArgs,
        #[arg(long = "K", env = "DYCKHIKE_ORDER")]
        order: usize,
        #[command(flatten)]
        points: PointArgs,
        #[arg(long, value_enum, default_value = "minus", env = "DYCKHIKE_SIGN")]
        sign: Sign,
    },
    /// [L/M] Padé approximant of the vacuum amplitude series.
    Pade {
        #[command(flatten)]
        op: OperatorArgs,
        #[arg(long = "L")]
        l: usize,
        /// Denominator degree (defaults to L).
        #[arg(long = "M")]
        m: Option<usize>,
        /// Expansion variable; auto uses r² for even series.
        #[arg(long, value_enum, default_value = "auto")]
        variable: Variable,
        #[command(flatten)]
        points: PointArgs,
        /// Include exact numerator and denominator coefficients.
        #[arg(long)]
        coefficients: bool,
        #[arg(long, value_enum, default_value = "minus", env = "DYCKHIKE_SIGN")]
        sign: Sign,
    },
    /// Compares engine coefficients with brute-force Fock-space application.
    OracleCheck {
        #[command(flatten)]
        op: OperatorArgs,
        #[arg(long, default_value_t = 6, env = "DYCKHIKE_K_MAX")]
        k_max: usize,
        #[arg(long, value_enum, default_value = "both", env = "DYCKHIKE_SIGN")]
        sign: SignChoice,
        #[arg(long, default_value_t = 4096, env = "DYCKHIKE_MAX_QUANTA")]
        max_quanta: u64,
        #[arg(long, default_value_t = 4096, env = "DYCKHIKE_MAX_PER_MODE")]
        max_per_mode: u64,
    },
}

fn run(cli: Cli) -> Result<output::Report, CliError> {
    match cli.command {
        Command::CountPaths { k, d1, d2 } => commands::count_paths(k, d1, d2),
        Command::EnumeratePaths { k, d1, d2, limit } => commands::enumerate_paths(k, d1, d2, limit),
        Command::LambdaMu { op, p_max, degree } => commands::lambda_mu(&op, p_max, degree),
        Command::Power { op, k, sign } => commands::power(&op, k, sign),
        Command::Evolve {
            op,
            order,
            r,
            precision,
            d2,
            sign,
        } => commands::evolve(&op, order, r, precision, &d2, sign),
        Command::Vev {
            op,
            order,
            points,
            sign,
        } => commands::vev(&op, order, &points, sign),
        Command::Pade {
            op,
            l,
            m,
            variable,
            points,
            coefficients,
            sign,
        } => commands::pade(&op, l, m.unwrap_or(l), variable, &points, coefficients, sign),
        Command::OracleCheck {
            op,
            k_max,
            sign,
            max_quanta,
            max_per_mode,
        } => commands::oracle_check(&op, k_max, sign, max_quanta, max_per_mode),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let format = cli.format;
    let result = run(cli).and_then(|report| {
        let mut out = std::io::stdout().lock();
        report.write(format, &mut out)?;
        out.flush()?;
        Ok(report.exit_code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("dyckhike: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
