//! `bracket`, `cohomology` and `deform extend`.

use std::fmt::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use homlie::algebra_core::{int, Scalar};
use homlie::brackets::{cup_bracket, derived_bracket, fn_bracket, nr_bracket};
use homlie::deformations::{check_order_deformation, extend, obstruction, MorphismDeformation};
use homlie::differentials::{CochainComplexSpec, CohomologyReport, ComplexKind};
use homlie::io::{CochainJson, TermsJson};
use homlie::multilinear::Cochain;
use serde::Serialize;

use crate::input;
use crate::outcome::{CliError, Outcome, Run};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum BracketKind {
    Nr,
    Cup,
    Fn,
    Derived,
}

pub fn bracket(kind: BracketKind, alg_path: &Path, target: Option<&Path>, p: &Path, q: &Path) -> Run {
    let alg = input::algebra(alg_path)?;
    let out = if kind == BracketKind::Cup {
        let h = match target {
            Some(t) => input::algebra(t)?,
            None => alg.clone(),
        };
        let p = input::cochain(p, alg.space(), h.space())?;
        let q = input::cochain(q, alg.space(), h.space())?;
        cup_bracket(&p, &q, &h)?
    } else {
        if target.is_some() {
            return Err(CliError::Input("--target only applies to --kind cup".into()));
        }
        let p = input::cochain(p, alg.space(), alg.space())?;
        let q = input::cochain(q, alg.space(), alg.space())?;
        match kind {
            BracketKind::Nr => nr_bracket(&p, &q)?,
            BracketKind::Fn => fn_bracket(&p, &q, &alg)?,
            BracketKind::Derived => derived_bracket(&p, &q, &alg)?,
            BracketKind::Cup => unreachable!(),
        }
    };
    Ok(Outcome::data(&CochainJson::from_cochain(&out)))
}

/// `adjoint | trivial | rep:FILE | morphism:FILE | relative:FILE`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Adjoint,
    Trivial,
    Rep(PathBuf),
    Morphism(PathBuf),
    Relative(PathBuf),
}

impl FromStr for Coefficients {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let file = |rest: &str| {
            if rest.is_empty() {
                Err(format!("`{s}` needs a file after the colon"))
            } else {
                Ok(PathBuf::from(rest))
            }
        };
        match s.split_once(':') {
            None if s == "adjoint" => Ok(Coefficients::Adjoint),
            None if s == "trivial" => Ok(Coefficients::Trivial),
            Some(("rep", f)) => file(f).map(Coefficients::Rep),
            Some(("morphism", f)) => file(f).map(Coefficients::Morphism),
            Some(("relative", f)) => file(f).map(Coefficients::Relative),
            _ => Err(format!("unknown coefficients `{s}`; expected adjoint, trivial, rep:FILE, morphism:FILE or relative:FILE")),
        }
    }
}

#[derive(Serialize)]
struct CohomologyOutput {
    complex: &'static str,
    #[serde(flatten)]
    report: CohomologyReport,
}

pub struct CohomologyArgs<'a> {
    pub algebra: &'a Path,
    pub target: Option<&'a Path>,
    pub coefficients: &'a Coefficients,
    pub degree: usize,
    pub lambda: Option<&'a Scalar>,
    pub op: Option<&'a Path>,
}

pub fn cohomology(a: CohomologyArgs) -> Run {
    let alg = input::algebra(a.algebra)?;
    let only = |flag: &str, used: bool, allowed: bool| {
        if used && !allowed {
            Err(CliError::Input(format!("{flag} does not apply to these coefficients")))
        } else {
            Ok(())
        }
    };
    let relative = matches!(a.coefficients, Coefficients::Relative(_));
    only("--lambda", a.lambda.is_some(), relative || *a.coefficients == Coefficients::Trivial)?;
    only("--op", a.op.is_some(), relative)?;
    only("--target", a.target.is_some(), matches!(a.coefficients, Coefficients::Morphism(_)))?;
    let lambda = a.lambda.cloned().unwrap_or_else(|| int(0));
    let (complex, kind) = match a.coefficients {
        Coefficients::Adjoint => ("hom_rep", ComplexKind::HomRep(alg.adjoint())),
        Coefficients::Trivial => match a.lambda {
            None => ("trivial", ComplexKind::Trivial { coefficients: alg.space().clone(), algebra: alg }),
            Some(l) => ("scaled_trivial", ComplexKind::ScaledTrivial { algebra: alg, lambda: l.clone() }),
        },
        Coefficients::Rep(f) => ("hom_rep", ComplexKind::HomRep(input::representation(f, &alg)?)),
        Coefficients::Morphism(f) => ("morphism_twisted", ComplexKind::MorphismTwisted(input::morphism(f, &alg, a.target)?)),
        Coefficients::Relative(f) => {
            let action = input::action(f, &alg)?;
            match a.op {
                None => ("relative", ComplexKind::Relative { action, lambda }),
                Some(op) => {
                    let operator = input::operator(op, action.acted().space(), alg.space())?;
                    ("relative_rb", ComplexKind::RelativeRb { action, operator, lambda })
                }
            }
        }
    };
    let spec = CochainComplexSpec::new(kind)?;
    if a.degree < spec.lowest_degree() {
        return Err(CliError::Input(format!("this complex starts in degree {}", spec.lowest_degree())));
    }
    let report = spec.cohomology(a.degree)?;
    Ok(Outcome::data(&CohomologyOutput { complex, report }))
}

#[derive(Serialize)]
struct StepOutput {
    order: usize,
    obstruction: CochainJson,
    obstruction_is_cocycle: bool,
    obstruction_is_zero: bool,
    class_vanishes: bool,
    extended: bool,
}

#[derive(Serialize)]
struct DeformOutput {
    start_order: usize,
    requested_order: usize,
    reached_order: usize,
    steps: Vec<StepOutput>,
    /// φ₁ … φ_N of the final deformation.
    terms: TermsJson,
    revalidated: bool,
}

pub fn deform(alg_path: &Path, target: Option<&Path>, phi_path: &Path, terms: Option<&Path>, to_order: usize) -> Run {
    let source = input::algebra(alg_path)?;
    let phi = input::morphism(phi_path, &source, target)?;
    let (g, h) = (phi.source().space().clone(), phi.target().space().clone());
    let higher: Vec<Cochain> = match terms {
        None => Vec::new(),
        Some(t) => {
            let j: TermsJson = input::parse(t)?;
            let mats = j.to_mats(h.dim(), g.dim()).map_err(|e| CliError::Input(format!("{}: {e}", t.display())))?;
            mats.iter().map(|m| Cochain::from_linear_map(g.clone(), h.clone(), m)).collect::<homlie::Result<_>>()?
        }
    };
    let start = MorphismDeformation::new(phi.clone(), higher)?;
    if !check_order_deformation(&start) {
        let (n, w) = start.order_failure().expect("failed check has a witness");
        let l = g.labels();
        return Err(CliError::Input(format!(
            "given terms fail the order-{n} equation at ({},{}): {} vs {}",
            l[w.pair.0],
            l[w.pair.1],
            w.lhs.render(h.labels()),
            w.rhs.render(h.labels())
        )));
    }
    let mut current = start.clone();
    let mut steps = Vec::new();
    let mut human = String::new();
    while current.order() < to_order {
        let ob = obstruction(&current)?;
        let order = current.order() + 1;
        let next = extend(&current)?;
        let _ = writeln!(
            human,
            "order {order}: obstruction {}, class {}",
            if ob.cocycle.is_zero() { "zero" } else { "nonzero cocycle" },
            if next.is_some() { "vanishes, extended" } else { "nonzero, cannot extend" }
        );
        steps.push(StepOutput {
            order,
            obstruction: CochainJson::from_cochain(&ob.cocycle),
            obstruction_is_cocycle: true,
            obstruction_is_zero: ob.cocycle.is_zero(),
            class_vanishes: ob.is_coboundary,
            extended: next.is_some(),
        });
        match next {
            Some(n) => current = n,
            None => break,
        }
    }
    // round trip: rebuild from the bare terms and re-run every order equation
    let rebuilt = MorphismDeformation::new(phi, current.terms()[1..].to_vec())?;
    let revalidated = check_order_deformation(&rebuilt);
    if !revalidated {
        return Err(CliError::Inconsistent("extended deformation fails re-validation".into()));
    }
    let reached = current.order();
    let _ = writeln!(human, "reached order {reached} of {to_order}");
    let mats: Vec<_> = current.terms()[1..].iter().map(|c| c.to_matrix()).collect::<homlie::Result<_>>()?;
    let out = DeformOutput {
        start_order: start.order(),
        requested_order: to_order,
        reached_order: reached,
        steps,
        terms: TermsJson::from_mats(&mats),
        revalidated,
    };
    Ok(Outcome::new(reached >= to_order, human, &out))
}
