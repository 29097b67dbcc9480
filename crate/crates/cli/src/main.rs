//! `homlie`: exact checks and computations for multiplicative Hom-Lie algebras.
//!
//! Exit status: 0 success or true verdict, 1 false verdict, 2 bad input or
//! usage, 3 two independent criteria disagreed.

mod check;
mod compute;
mod input;
mod outcome;
mod suite;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use homlie::algebra_core::{parse_scalar, Scalar};
use homlie::theorem_suite::IdentityId;

use compute::{BracketKind, Coefficients, CohomologyArgs};
use suite::{FixtureKind, MutationArg, SuiteArgs};

fn scalar(s: &str) -> Result<Scalar, String> {
    parse_scalar(s).map_err(|e| e.to_string())
}

#[derive(Parser)]
#[command(name = "homlie", version, about = "Exact computations for multiplicative Hom-Lie algebras over Q")]
struct Cli {
    /// Print the machine-readable report instead of the summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a structure or an operator.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Graded bracket of two cochains, printed as cochain JSON.
    Bracket {
        #[arg(long, value_enum)]
        kind: BracketKind,
        #[arg(long)]
        algebra: PathBuf,
        /// Codomain algebra for --kind cup (defaults to --algebra).
        #[arg(long)]
        target: Option<PathBuf>,
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
    },
    /// Dimensions of cochains, cocycles, coboundaries and cohomology in one degree.
    Cohomology {
        #[arg(long)]
        algebra: PathBuf,
        /// adjoint | trivial | rep:FILE | morphism:FILE | relative:FILE
        #[arg(long)]
        coefficients: Coefficients,
        #[arg(long)]
        degree: usize,
        /// Scales the differential (trivial, relative).
        #[arg(long, allow_hyphen_values = true, value_parser = scalar)]
        lambda: Option<Scalar>,
        /// Relative Rota-Baxter operator; switches relative coefficients to D_R.
        #[arg(long)]
        op: Option<PathBuf>,
        /// Target algebra for morphism coefficients.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Deformations of morphisms.
    #[command(subcommand)]
    Deform(DeformCmd),
    /// Run the randomized identity suite.
    VerifyTheorems(VerifyArgs),
    /// Emit a built-in structure as JSON.
    #[command(subcommand)]
    Fixture(FixtureCmd),
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Hom-Jacobi and multiplicativity of an algebra file ("-" for stdin).
    Structure { file: PathBuf },
    /// Nijenhuis operator, with its deformed bracket.
    Nijenhuis {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        op: PathBuf,
    },
    /// Rota-Baxter operator of a given weight.
    Rotabaxter {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        op: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_parser = scalar, default_value = "0")]
        weight: Scalar,
    },
    /// Relative Rota-Baxter operator with respect to an action.
    RelativeRb {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        action: PathBuf,
        #[arg(long)]
        op: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_parser = scalar, default_value = "0")]
        weight: Scalar,
    },
    /// Morphism of Hom-Lie algebras.
    Morphism {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        target: Option<PathBuf>,
        #[arg(long)]
        morphism: PathBuf,
    },
}

#[derive(Subcommand)]
enum DeformCmd {
    /// Extend a finite-order deformation of a morphism as far as the obstructions allow.
    Extend {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        target: Option<PathBuf>,
        #[arg(long)]
        morphism: PathBuf,
        /// Higher terms φ₁ … φ_N as {"terms": [matrix, ...]}.
        #[arg(long)]
        terms: Option<PathBuf>,
        #[arg(long)]
        to_order: usize,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = 3)]
    max_arity: usize,
    /// Built-in fixture by name; repeatable. Defaults to every built-in fixture.
    #[arg(long = "fixture")]
    fixtures: Vec<String>,
    /// Algebra file; repeatable.
    #[arg(long = "algebra")]
    algebras: Vec<PathBuf>,
    /// Identity by name or number; repeatable. Defaults to all.
    #[arg(long = "identity")]
    identities: Vec<IdentityId>,
    #[arg(long, value_enum, hide = true)]
    mutate: Option<MutationArg>,
}

#[derive(Subcommand)]
enum FixtureCmd {
    /// Jackson sl2 with parameter q on the basis (e, h, f).
    JacksonSl2 {
        #[arg(long, allow_hyphen_values = true, value_parser = scalar)]
        q: Scalar,
    },
    /// The three-dimensional family with parameters a, b, c, d.
    Threedim {
        #[arg(long, allow_hyphen_values = true, value_parser = scalar, default_value = "0")]
        a: Scalar,
        #[arg(long, allow_hyphen_values = true, value_parser = scalar, default_value = "0")]
        b: Scalar,
        #[arg(long, allow_hyphen_values = true, value_parser = scalar, default_value = "0")]
        c: Scalar,
        #[arg(long, allow_hyphen_values = true, value_parser = scalar, default_value = "0")]
        d: Scalar,
    },
    /// Abelian algebra with identity twist.
    Abelian {
        #[arg(long)]
        dim: usize,
    },
    /// A named built-in algebra.
    Named { name: String },
    /// The diagonal action of a named algebra on two copies of itself.
    DoubledAction { name: String },
}

fn run(cli: &Cli) -> outcome::Run {
    match &cli.command {
        Command::Check(c) => match c {
            CheckCmd::Structure { file } => check::structure(file),
            CheckCmd::Nijenhuis { algebra, op } => check::nijenhuis(algebra, op),
            CheckCmd::Rotabaxter { algebra, op, weight } => check::rotabaxter(algebra, op, weight),
            CheckCmd::RelativeRb { algebra, action, op, weight } => check::relative_rb(algebra, action, op, weight),
            CheckCmd::Morphism { algebra, target, morphism } => check::morphism(algebra, target.as_deref(), morphism),
        },
        Command::Bracket { kind, algebra, target, p, q } => compute::bracket(*kind, algebra, target.as_deref(), p, q),
        Command::Cohomology { algebra, coefficients, degree, lambda, op, target } => compute::cohomology(CohomologyArgs {
            algebra,
            target: target.as_deref(),
            coefficients,
            degree: *degree,
            lambda: lambda.as_ref(),
            op: op.as_deref(),
        }),
        Command::Deform(DeformCmd::Extend { algebra, target, morphism, terms, to_order }) => {
            compute::deform(algebra, target.as_deref(), morphism, terms.as_deref(), *to_order)
        }
        Command::VerifyTheorems(v) => suite::verify(SuiteArgs {
            seed: v.seed,
            trials: v.trials,
            max_arity: v.max_arity,
            fixtures: &v.fixtures,
            algebras: &v.algebras,
            identities: &v.identities,
            mutation: v.mutate,
        }),
        Command::Fixture(f) => suite::fixture(match f {
            FixtureCmd::JacksonSl2 { q } => FixtureKind::Jackson(q),
            FixtureCmd::Threedim { a, b, c, d } => FixtureKind::ThreeDim([a, b, c, d]),
            FixtureCmd::Abelian { dim } => FixtureKind::Abelian(*dim),
            FixtureCmd::Named { name } => FixtureKind::Named(name),
            FixtureCmd::DoubledAction { name } => FixtureKind::DoubledAction(name),
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => out.emit(cli.json),
        Err(e) => e.exit(),
    }
}
