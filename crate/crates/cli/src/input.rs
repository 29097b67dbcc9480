//! Reading structures from files or stdin; every error carries the path.

use std::io::Read;
use std::path::Path;
use std::sync::atomic::{AtomicBool, Ordering};

use homlie::hom_structures::{HomLieAction, HomLieAlgebra, HomMorphism, RawHomStructure};
use homlie::io::{from_json, AlgebraJson, CochainJson, MorphismJson, OperatorJson, RepresentationJson};
use homlie::multilinear::{Cochain, Space};
use serde::de::DeserializeOwned;

use crate::outcome::CliError;

static STDIN_TAKEN: AtomicBool = AtomicBool::new(false);

fn name(path: &Path) -> String {
    if path == Path::new("-") {
        "<stdin>".into()
    } else {
        path.display().to_string()
    }
}

pub fn read(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        if STDIN_TAKEN.swap(true, Ordering::SeqCst) {
            return Err(CliError::Input("stdin (\"-\") can be used for only one argument".into()));
        }
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Input(format!("<stdin>: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Runs `f` and prefixes any input error with the file name.
fn at<T>(path: &Path, r: homlie::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| match CliError::from(e) {
        CliError::Input(m) => CliError::Input(format!("{}: {m}", name(path))),
        other => other,
    })
}

pub fn parse<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = read(path)?;
    Ok(from_json(&text, &name(path))?)
}

pub fn raw(path: &Path) -> Result<RawHomStructure, CliError> {
    let j: AlgebraJson = parse(path)?;
    at(path, j.to_raw())
}

pub fn algebra(path: &Path) -> Result<HomLieAlgebra, CliError> {
    let j: AlgebraJson = parse(path)?;
    at(path, j.to_algebra())
}

pub fn action(path: &Path, alg: &HomLieAlgebra) -> Result<HomLieAction, CliError> {
    let j: RepresentationJson = parse(path)?;
    at(path, j.to_action(alg))
}

pub fn representation(path: &Path, alg: &HomLieAlgebra) -> Result<homlie::hom_structures::Representation, CliError> {
    let j: RepresentationJson = parse(path)?;
    at(path, j.to_representation(alg))
}

pub fn cochain(path: &Path, domain: &Space, codomain: &Space) -> Result<Cochain, CliError> {
    let j: CochainJson = parse(path)?;
    at(path, j.to_cochain(domain, codomain))
}

/// A linear map given as a matrix or an arity-1 cochain.
pub fn operator(path: &Path, domain: &Space, codomain: &Space) -> Result<Cochain, CliError> {
    let j: OperatorJson = parse(path)?;
    let m = at(path, j.to_mat(domain, codomain))?;
    at(path, Cochain::from_linear_map(domain.clone(), codomain.clone(), &m))
}

/// φ: source → target, where the target is `--target`, else embedded in the file, else the source.
pub fn morphism(path: &Path, source: &HomLieAlgebra, target: Option<&Path>) -> Result<HomMorphism, CliError> {
    let j: MorphismJson = parse(path)?;
    let target = match (target, &j.target) {
        (Some(t), _) => algebra(t)?,
        (None, Some(t)) => at(path, t.to_algebra())?,
        (None, None) => source.clone(),
    };
    let m = at(path, homlie::io::MatrixJson { matrix: j.matrix }.to_mat(target.dim(), source.dim()))?;
    at(path, HomMorphism::new(source.clone(), target, m))
}
