//! `check ...`: yes/no questions about structures and operators.

use std::fmt::Write;
use std::path::Path;

use homlie::algebra_core::{format_scalar, Scalar};
use homlie::brackets::nr_bracket;
use homlie::hom_structures::HomLieAlgebra;
use homlie::io::{AlgebraJson, JsonScalar, RepresentationJson};
use homlie::operators::{
    induced_structures, mc_residual, nijenhuis_check, nijenhuis_deformation_check, relative_rb_check, rota_baxter_check, Dgla,
    LinearOperator, RenderedWitness,
};
use serde::Serialize;

use crate::input;
use crate::outcome::{CliError, Outcome, Run};

#[derive(Serialize)]
struct JacobiLine {
    triple: [String; 3],
    cyclic_sum: String,
}

#[derive(Serialize)]
struct MultiplicativityLine {
    pair: [String; 2],
    twisted_bracket: String,
    bracket_of_twists: String,
}

#[derive(Serialize)]
struct StructureReport {
    dim: usize,
    hom_jacobi: bool,
    multiplicative: bool,
    /// [μ,μ]_NR = 0, only defined when μ intertwines α.
    #[serde(skip_serializing_if = "Option::is_none")]
    mc_nr: Option<bool>,
    jacobi_failures: Vec<JacobiLine>,
    multiplicativity_failures: Vec<MultiplicativityLine>,
    messages: Vec<String>,
    verdict: bool,
}

pub fn structure(path: &Path) -> Run {
    let raw = input::raw(path)?;
    let l = raw.space().labels().to_vec();
    let jacobi: Vec<JacobiLine> = raw
        .hom_jacobi_failures()
        .into_iter()
        .map(|f| JacobiLine {
            triple: [l[f.triple.0].clone(), l[f.triple.1].clone(), l[f.triple.2].clone()],
            cyclic_sum: f.cyclic_sum.render(&l),
        })
        .collect();
    let mult: Vec<MultiplicativityLine> = raw
        .multiplicativity_failures()
        .into_iter()
        .map(|f| MultiplicativityLine {
            pair: [l[f.pair.0].clone(), l[f.pair.1].clone()],
            twisted_bracket: f.twisted_bracket.render(&l),
            bracket_of_twists: f.bracket_of_twists.render(&l),
        })
        .collect();
    let hom_jacobi = jacobi.is_empty();
    let multiplicative = mult.is_empty();
    let mc_nr = if raw.mu().is_compatible() { Some(nr_bracket(raw.mu(), raw.mu())?.is_zero()) } else { None };
    if mc_nr.is_some_and(|mc| mc != hom_jacobi) {
        return Err(CliError::Inconsistent(format!("Hom-Jacobi cyclic sums say {hom_jacobi} but [μ,μ]_NR = 0 says {}", !hom_jacobi)));
    }
    let mut messages = Vec::new();
    for f in &jacobi {
        messages.push(format!("Hom-Jacobi fails at ({},{},{}): cyclic sum {}", f.triple[0], f.triple[1], f.triple[2], f.cyclic_sum));
    }
    for f in &mult {
        messages.push(format!("multiplicativity fails at ({},{}): {} vs {}", f.pair[0], f.pair[1], f.twisted_bracket, f.bracket_of_twists));
    }
    let verdict = hom_jacobi && multiplicative;
    let mut human = String::new();
    let yn = |b: bool| if b { "holds" } else { "fails" };
    let _ = writeln!(human, "Hom-Jacobi: {}", yn(hom_jacobi));
    let _ = writeln!(human, "multiplicativity: {}", yn(multiplicative));
    for m in &messages {
        let _ = writeln!(human, "  {m}");
    }
    let _ = writeln!(human, "{}", if verdict { "multiplicative Hom-Lie algebra" } else { "not a multiplicative Hom-Lie algebra" });
    let report = StructureReport {
        dim: raw.dim(),
        hom_jacobi,
        multiplicative,
        mc_nr,
        jacobi_failures: jacobi,
        multiplicativity_failures: mult,
        messages,
        verdict,
    };
    Ok(Outcome::new(verdict, human, &report))
}

#[derive(Serialize)]
struct ParameterLine {
    t: JsonScalar,
    hom_jacobi: bool,
}

#[derive(Serialize)]
struct NijenhuisDetails {
    deformed_algebra: AlgebraJson,
    deformed_is_coboundary: bool,
    is_morphism: bool,
    compatible_parameters: Vec<ParameterLine>,
    fn_square_closed: bool,
}

#[derive(Serialize)]
struct OperatorReport<D: Serialize> {
    check: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight: Option<JsonScalar>,
    holds: bool,
    mc_residual_zero: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<RenderedWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    details: Option<D>,
}

fn witness_line(what: &str, lhs: &str, rhs: &str, w: &RenderedWitness) -> String {
    format!("not {what}: {lhs} = {} but {rhs} = {} at ({},{})", w.lhs, w.rhs, w.pair[0], w.pair[1])
}

pub fn nijenhuis(alg_path: &Path, op: &Path) -> Run {
    let alg = input::algebra(alg_path)?;
    let n = LinearOperator::try_from(input::operator(op, alg.space(), alg.space())?)?;
    let v = nijenhuis_check(&n, &alg)?;
    let l = alg.space().labels();
    let witness = v.witness.as_ref().map(|w| w.render(l, l));
    let mut human = String::new();
    let details = if v.holds {
        // every consequence below is a theorem, so a failure is ours
        let r = nijenhuis_deformation_check(&n, &alg).map_err(|e| CliError::Inconsistent(e.to_string()))?;
        if !r.all_pass() {
            return Err(CliError::Inconsistent(format!("Nijenhuis consequences fail: {r:?}")));
        }
        human.push_str("Nijenhuis operator\n");
        human.push_str("  [,]^N is Hom-Lie and equals δ_Hom N; N is a morphism from it\n");
        human.push_str("  μ + t[,]^N satisfies Hom-Jacobi for t in {1, -1, 1/2, 3}\n");
        Some(NijenhuisDetails {
            deformed_algebra: AlgebraJson::from_raw(r.deformed.raw()),
            deformed_is_coboundary: r.deformed_is_coboundary,
            is_morphism: r.is_morphism,
            compatible_parameters: r
                .compatible_parameters
                .into_iter()
                .map(|(t, ok)| ParameterLine { t: JsonScalar(t), hom_jacobi: ok })
                .collect(),
            fn_square_closed: r.fn_square_closed,
        })
    } else {
        let w = witness.as_ref().expect("failing check has a witness");
        human.push_str(&witness_line("a Nijenhuis operator", "[Nx,Ny]", "N[x,y]^N", w));
        human.push('\n');
        None
    };
    let report =
        OperatorReport { check: "nijenhuis", weight: None, holds: v.holds, mc_residual_zero: v.residual.is_zero(), witness, details };
    Ok(Outcome::new(v.holds, human, &report))
}

pub fn rotabaxter(alg_path: &Path, op: &Path, weight: &Scalar) -> Run {
    let alg = input::algebra(alg_path)?;
    let r = LinearOperator::try_from(input::operator(op, alg.space(), alg.space())?)?;
    let v = rota_baxter_check(&r, &alg, weight)?;
    let l = alg.space().labels();
    let witness = v.witness.as_ref().map(|w| w.render(l, l));
    let human = match &witness {
        None => format!("Rota-Baxter operator of weight {}\n", format_scalar(weight)),
        Some(w) => {
            format!("{}\n", witness_line(&format!("a Rota-Baxter operator of weight {}", format_scalar(weight)), "[Rx,Ry]", "R[x,y]^R", w))
        }
    };
    let report = OperatorReport::<()> {
        check: "rotabaxter",
        weight: Some(JsonScalar(weight.clone())),
        holds: v.holds,
        mc_residual_zero: v.residual.is_zero(),
        witness,
        details: None,
    };
    Ok(Outcome::new(v.holds, human, &report))
}

#[derive(Serialize)]
struct RelativeDetails {
    graph_closed: bool,
    induced_algebra: AlgebraJson,
    induced_representation: RepresentationJson,
}

pub fn relative_rb(alg_path: &Path, action_path: &Path, op: &Path, weight: &Scalar) -> Run {
    let alg = input::algebra(alg_path)?;
    let action = input::action(action_path, &alg)?;
    let r = LinearOperator::try_from(input::operator(op, action.acted().space(), alg.space())?)?;
    let v = relative_rb_check(&r, &action, weight)?;
    let witness = v.witness.as_ref().map(|w| w.render(action.acted().space().labels(), alg.space().labels()));
    let (human, details) = if v.holds {
        let ind = induced_structures(&r, &action, weight).map_err(|e| CliError::Inconsistent(e.to_string()))?;
        let human = format!(
            "relative Rota-Baxter operator of weight {}\n  graph is a subalgebra; induced bracket and representation verified\n",
            format_scalar(weight)
        );
        let details = RelativeDetails {
            graph_closed: v.graph_closed,
            induced_algebra: AlgebraJson::from_raw(ind.algebra.raw()),
            induced_representation: RepresentationJson::from_representation(&ind.representation),
        };
        (human, Some(details))
    } else {
        let w = witness.as_ref().expect("failing check has a witness");
        let what = format!("a relative Rota-Baxter operator of weight {}", format_scalar(weight));
        (format!("{}\n", witness_line(&what, "[Rh,Rk]", "R(Rh⋄k - Rk⋄h + λ[h,k])", w)), None)
    };
    let report = OperatorReport {
        check: "relative-rb",
        weight: Some(JsonScalar(weight.clone())),
        holds: v.holds,
        mc_residual_zero: v.residual.is_zero(),
        witness,
        details,
    };
    Ok(Outcome::new(v.holds, human, &report))
}

#[derive(Serialize)]
struct MorphismReport {
    check: &'static str,
    holds: bool,
    /// D φ + ½[φ,φ]_C = 0; absent when φ does not intertwine the twists.
    #[serde(skip_serializing_if = "Option::is_none")]
    mc_residual_zero: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    failure: Option<String>,
}

pub fn morphism(alg_path: &Path, target: Option<&Path>, phi_path: &Path) -> Run {
    let source: HomLieAlgebra = input::algebra(alg_path)?;
    let phi = input::morphism(phi_path, &source, target)?;
    let failure = phi.failure();
    let c = phi.as_cochain();
    let mc = if c.is_compatible() {
        let dgla = Dgla::Morphism { source: phi.source().clone(), target: phi.target().clone() };
        Some(mc_residual(&c, &dgla)?.is_zero())
    } else {
        None
    };
    let holds = failure.is_none();
    if mc.is_some_and(|m| m != holds) {
        return Err(CliError::Inconsistent(format!(
            "morphism check: pointwise says {holds} but the Maurer-Cartan residual says {}",
            !holds
        )));
    }
    let human = match &failure {
        None => "morphism of Hom-Lie algebras\n".to_string(),
        Some(f) => format!("not a morphism: {f}\n"),
    };
    let report = MorphismReport { check: "morphism", holds, mc_residual_zero: mc, failure };
    Ok(Outcome::new(holds, human, &report))
}
