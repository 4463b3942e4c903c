mod commands;
mod output;
mod selfcheck;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use twist_torsion::algebra::Numeric;
use twist_torsion::holonomy::FamilySign;
use twist_torsion::words::{parse_knot_spec, TwistKnot};

use output::{Failure, Format};

#[derive(Parser, Debug)]
#[command(
    name = "twist-torsion",
    version,
    about = "Riley polynomials, adjoint torsion and cusp shapes of twist knots"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Working precision in bits for numerical commands.
    #[arg(long, global = true, default_value_t = 128)]
    precision: usize,
    /// Seed for root finding and random sample points.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Cross-check results (independent paths, reference data) and exit 1 on mismatch.
    #[arg(long, global = true)]
    verify: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RileyPath {
    Matrix,
    Closed,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsionPath {
    Det,
    Trace,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignArg {
    #[value(name = "+", alias = "plus")]
    Plus,
    #[value(name = "-", alias = "minus")]
    Minus,
}

impl From<SignArg> for FamilySign {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Plus => FamilySign::Plus,
            SignArg::Minus => FamilySign::Minus,
        }
    }
}

fn knot_arg(raw: &str) -> Result<TwistKnot, String> {
    parse_knot_spec(raw).map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Riley polynomial φ(s, u).
    Riley {
        #[arg(long, value_parser = knot_arg)]
        knot: TwistKnot,
        #[arg(long, value_enum, default_value_t = RileyPath::Closed)]
        path: RileyPath,
    },
    /// Torsion on the character variety, or at the parabolic representations.
    Torsion {
        #[arg(long, value_parser = knot_arg)]
        knot: TwistKnot,
        #[arg(long)]
        at_holonomy: bool,
        #[arg(long, value_enum, default_value_t = TorsionPath::Det)]
        path: TorsionPath,
    },
    /// Torsion polynomial numerator and denominator in t.
    TorsionPoly {
        #[arg(long, value_parser = knot_arg)]
        knot: TwistKnot,
    },
    /// Roots of φ(1, u) and the peripheral identities at each non-real root.
    Holonomy {
        #[arg(long, value_parser = knot_arg)]
        knot: TwistKnot,
    },
    /// Cusp shapes of the parabolic representations.
    CuspShape {
        #[arg(long, value_parser = knot_arg)]
        knot: TwistKnot,
    },
    /// Defining polynomial Φ_m(a, b) of the non-abelian characters of J(2, 2m).
    Charvar {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        /// Compare with the direct alternating sum and with numeric Riley characters.
        #[arg(long)]
        oracle: bool,
    },
    /// Torsion at the holonomy for J(2, ±2m), m = 1..max-m.
    Tables {
        #[arg(long, default_value_t = 10)]
        max_m: i64,
    },
    /// Torsion and Riley polynomials of 3_1, 5_2, 4_1 and 6_1.
    Examples,
    /// Log-log growth of |T| at the geometric root against crossing number.
    Asymptotics {
        #[arg(long, value_enum, default_value_t = SignArg::Minus, allow_hyphen_values = true)]
        sign: SignArg,
        #[arg(long, default_value_t = 5)]
        from: i64,
        #[arg(long, default_value_t = 50)]
        to: i64,
    },
    /// Closed form against symbolic torsion at random points of the curve.
    Crosscheck {
        #[arg(long, value_parser = knot_arg)]
        knot: TwistKnot,
        #[arg(long, default_value_t = 50)]
        points: usize,
    },
    /// Run every cross-path invariant and report pass/fail with timings.
    Selfcheck,
}

pub struct Ctx {
    pub format: Format,
    pub num: Numeric,
    pub seed: u64,
    pub verify: bool,
}

fn run(cli: Cli) -> Result<(), Failure> {
    let num = Numeric::new(cli.precision).map_err(|e| Failure::Usage(e.to_string()))?;
    let ctx = Ctx {
        format: cli.format,
        num,
        seed: cli.seed,
        verify: cli.verify,
    };
    match cli.command {
        Command::Riley { knot, path } => commands::riley(&ctx, &knot, path),
        Command::Torsion {
            knot,
            at_holonomy,
            path,
        } => commands::torsion(&ctx, &knot, at_holonomy, path),
        Command::TorsionPoly { knot } => commands::torsion_poly(&ctx, &knot),
        Command::Holonomy { knot } => commands::holonomy(&ctx, &knot),
        Command::CuspShape { knot } => commands::cusp_shape(&ctx, &knot),
        Command::Charvar { m, oracle } => commands::charvar(&ctx, m, oracle),
        Command::Tables { max_m } => commands::tables(&ctx, max_m),
        Command::Examples => commands::examples(&ctx),
        Command::Asymptotics { sign, from, to } => commands::asymptotics(&ctx, sign.into(), from, to),
        Command::Crosscheck { knot, points } => commands::crosscheck(&ctx, &knot, points),
        Command::Selfcheck => selfcheck::run(&ctx),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
