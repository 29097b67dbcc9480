//! `verify-theorems` and `fixture`.

use std::fmt::Write;
use std::path::{Path, PathBuf};

use homlie::algebra_core::Scalar;
use homlie::hom_structures::{abelian, doubled_action, fixture_3dim, fixture_jackson_sl2, named_fixture, FIXTURE_NAMES};
use homlie::io::{AlgebraJson, RepresentationJson};
use homlie::theorem_suite::{run_selected, Context, IdentityId, Mutation, VerifyConfig};

use crate::input;
use crate::outcome::{CliError, Outcome, Run};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum MutationArg {
    UnsignedCup,
}

pub struct SuiteArgs<'a> {
    pub seed: u64,
    pub trials: usize,
    pub max_arity: usize,
    pub fixtures: &'a [String],
    pub algebras: &'a [PathBuf],
    pub identities: &'a [IdentityId],
    pub mutation: Option<MutationArg>,
}

pub fn verify(a: SuiteArgs) -> Run {
    if a.max_arity == 0 {
        return Err(CliError::Input("--max-arity must be at least 1".into()));
    }
    let mut contexts = Vec::new();
    for name in a.fixtures {
        contexts.push(Context::new(name.clone(), named_fixture(name)?.into_algebra()?));
    }
    for path in a.algebras {
        let label = if path == Path::new("-") { "<stdin>".to_string() } else { path.display().to_string() };
        contexts.push(Context::new(label, input::algebra(path)?));
    }
    if contexts.is_empty() {
        for name in FIXTURE_NAMES {
            contexts.push(Context::new(name, named_fixture(name)?.into_algebra()?));
        }
    }
    let ids: Vec<IdentityId> = if a.identities.is_empty() { IdentityId::ALL.to_vec() } else { a.identities.to_vec() };
    let cfg = VerifyConfig {
        trials: a.trials,
        seed: a.seed,
        max_arity: a.max_arity,
        mutation: a.mutation.map(|MutationArg::UnsignedCup| Mutation::UnsignedCup),
    };
    let report = run_selected(&contexts, &ids, &cfg);
    let mut human = String::new();
    for r in &report.reports {
        let _ = writeln!(
            human,
            "{} {:>2} {:<22} {:<14} {} trials{}",
            if r.passed { "PASS" } else { "FAIL" },
            r.number,
            r.identity.name(),
            r.algebra,
            r.trials,
            if r.passed { String::new() } else { format!(", {} failures", r.failures.len()) }
        );
        if let Some(f) = r.failures.first() {
            let _ = writeln!(human, "     trial {} (stream {}): {}", f.trial, f.stream, f.statement);
            if !f.tuple.is_empty() {
                let _ = writeln!(human, "     at basis tuple {:?}: {} vs {}", f.tuple, f.lhs, f.rhs);
            }
        }
    }
    let failed = report.reports.iter().filter(|r| !r.passed).count();
    let _ = writeln!(
        human,
        "{} of {} checks passed (seed {}, {} trials, max arity {})",
        report.reports.len() - failed,
        report.reports.len(),
        report.seed,
        report.trials,
        report.max_arity
    );
    Ok(Outcome::new(report.passed, human, &report))
}

pub enum FixtureKind<'a> {
    Jackson(&'a Scalar),
    ThreeDim([&'a Scalar; 4]),
    Abelian(usize),
    Named(&'a str),
    DoubledAction(&'a str),
}

pub fn fixture(kind: FixtureKind) -> Run {
    Ok(match kind {
        FixtureKind::Jackson(q) => Outcome::data(&AlgebraJson::from_raw(&fixture_jackson_sl2(q))),
        FixtureKind::ThreeDim([a, b, c, d]) => Outcome::data(&AlgebraJson::from_raw(&fixture_3dim(a, b, c, d))),
        FixtureKind::Abelian(n) => Outcome::data(&AlgebraJson::from_raw(abelian(n).raw())),
        FixtureKind::Named(name) => Outcome::data(&AlgebraJson::from_raw(&named_fixture(name)?)),
        FixtureKind::DoubledAction(name) => {
            let alg = named_fixture(name)?.into_algebra()?;
            Outcome::data(&RepresentationJson::from_action(&doubled_action(&alg)?))
        }
    })
}
