//! JSON forms of algebras, representations, cochains and linear maps.
//!
//! Indices are 1-based. Scalars may be written as integers or "p/q" strings
//! ("2/4" is accepted and normalized); decimals are rejected. Output always uses
//! canonical strings, so serialize∘parse is a fixed point after one pass.

use std::fmt;

use serde::de::{self, DeserializeOwned, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra_core::{format_scalar, int, parse_scalar, Mat, Scalar, Vector};
use crate::error::{Error, Result};
use crate::hom_structures::{BilinearMap, HomLieAction, HomLieAlgebra, RawHomStructure, Representation};
use crate::multilinear::{increasing_tuples, Cochain, Space, TwistedSpace};

/// A rational read from an integer or a "p/q" string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonScalar(pub Scalar);

impl Serialize for JsonScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_scalar(&self.0))
    }
}

impl<'de> Deserialize<'de> for JsonScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = JsonScalar;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a \"p/q\" string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<JsonScalar, E> {
                Ok(JsonScalar(int(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<JsonScalar, E> {
                Ok(JsonScalar(Scalar::from_integer(v.into())))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<JsonScalar, E> {
                Err(E::custom(format!("decimal {v} is not exact; write it as \"p/q\"")))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<JsonScalar, E> {
                parse_scalar(v).map(JsonScalar).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

fn scalars(v: &[JsonScalar]) -> Vec<Scalar> {
    v.iter().map(|s| s.0.clone()).collect()
}

fn json_vector(v: &Vector) -> Vec<JsonScalar> {
    v.entries().iter().cloned().map(JsonScalar).collect()
}

fn vector_at(v: &[JsonScalar], dim: usize, at: &str) -> Result<Vector> {
    if v.len() != dim {
        return Err(Error::Parse(format!("{at}: expected {dim} entries, found {}", v.len())));
    }
    Ok(Vector::new(scalars(v)))
}

fn square_at(rows: &[Vec<JsonScalar>], dim: usize, at: &str) -> Result<Mat> {
    matrix_at(rows, dim, dim, at)
}

fn matrix_at(rows: &[Vec<JsonScalar>], r: usize, c: usize, at: &str) -> Result<Mat> {
    if rows.len() != r {
        return Err(Error::Parse(format!("{at}: expected {r} rows, found {}", rows.len())));
    }
    let mut out = Vec::with_capacity(r);
    for (k, row) in rows.iter().enumerate() {
        if row.len() != c {
            return Err(Error::Parse(format!("{at}[{k}]: expected {c} entries, found {}", row.len())));
        }
        out.push(scalars(row));
    }
    if r == 0 {
        return Ok(Mat::zeros(0, c));
    }
    Mat::from_rows(out)
}

fn json_matrix(m: &Mat) -> Vec<Vec<JsonScalar>> {
    m.to_rows().into_iter().map(|r| r.into_iter().map(JsonScalar).collect()).collect()
}

fn index_at(i: usize, dim: usize, at: &str) -> Result<usize> {
    if i == 0 || i > dim {
        return Err(Error::Parse(format!("{at}: index {i} out of range 1..={dim}")));
    }
    Ok(i - 1)
}

/// Parses `text`, naming `source` in error messages.
pub fn from_json<T: DeserializeOwned>(text: &str, source: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{source}: {e}")))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub value: Vec<JsonScalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub dim: usize,
    pub alpha: Vec<Vec<JsonScalar>>,
    #[serde(default)]
    pub brackets: Vec<BracketJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
}

fn brackets_at(list: &[BracketJson], dim: usize, at: &str) -> Result<Vec<(usize, usize, Vector)>> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(list.len());
    for (k, b) in list.iter().enumerate() {
        let here = format!("{at}[{k}]");
        let i = index_at(b.i, dim, &format!("{here}.i"))?;
        let j = index_at(b.j, dim, &format!("{here}.j"))?;
        if i >= j {
            return Err(Error::Parse(format!("{here}: need i < j, found i = {}, j = {}", b.i, b.j)));
        }
        if !seen.insert((i, j)) {
            return Err(Error::Parse(format!("{here}: duplicate bracket pair ({}, {})", b.i, b.j)));
        }
        out.push((i, j, vector_at(&b.value, dim, &format!("{here}.value"))?));
    }
    Ok(out)
}

fn labelled_space(alpha: Mat, basis: &Option<Vec<String>>, dim: usize, at: &str) -> Result<Space> {
    if let Some(b) = basis {
        if b.len() != dim {
            return Err(Error::Parse(format!("{at}.basis: expected {dim} labels, found {}", b.len())));
        }
    }
    TwistedSpace::with_labels(alpha, basis.clone())
}

fn bracket_list(mu: &Cochain) -> Vec<BracketJson> {
    mu.tuples()
        .iter()
        .zip(mu.values())
        .filter(|(_, v)| !v.is_zero())
        .map(|(t, v)| BracketJson { i: t[0] + 1, j: t[1] + 1, value: json_vector(v) })
        .collect()
}

impl AlgebraJson {
    /// Structure with no axioms checked.
    pub fn to_raw(&self) -> Result<RawHomStructure> {
        let alpha = square_at(&self.alpha, self.dim, "alpha")?;
        let space = labelled_space(alpha, &self.basis, self.dim, "algebra")?;
        RawHomStructure::from_brackets(space, &brackets_at(&self.brackets, self.dim, "brackets")?)
    }

    pub fn to_algebra(&self) -> Result<HomLieAlgebra> {
        self.to_raw()?.into_algebra()
    }

    pub fn from_raw(raw: &RawHomStructure) -> Self {
        AlgebraJson {
            dim: raw.dim(),
            alpha: json_matrix(raw.space().alpha()),
            brackets: bracket_list(raw.mu()),
            basis: Some(raw.space().labels().to_vec()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionEntryJson {
    pub g: usize,
    pub v: usize,
    pub value: Vec<JsonScalar>,
}

/// A module (V, β) with g ⋄ v on basis pairs; `brackets` makes V a Hom-Lie algebra for actions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationJson {
    pub module_dim: usize,
    pub beta: Vec<Vec<JsonScalar>>,
    #[serde(default)]
    pub action: Vec<ActionEntryJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brackets: Option<Vec<BracketJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
}

impl RepresentationJson {
    fn module(&self) -> Result<Space> {
        let beta = square_at(&self.beta, self.module_dim, "beta")?;
        labelled_space(beta, &self.basis, self.module_dim, "representation")
    }

    fn action_map(&self, g: usize) -> Result<BilinearMap> {
        let n = self.module_dim;
        let mut map = BilinearMap::zero(g, n, n);
        let mut seen = std::collections::HashSet::new();
        for (k, e) in self.action.iter().enumerate() {
            let here = format!("action[{k}]");
            let i = index_at(e.g, g, &format!("{here}.g"))?;
            let j = index_at(e.v, n, &format!("{here}.v"))?;
            if !seen.insert((i, j)) {
                return Err(Error::Parse(format!("{here}: duplicate entry ({}, {})", e.g, e.v)));
            }
            map.set(i, j, vector_at(&e.value, n, &format!("{here}.value"))?)?;
        }
        Ok(map)
    }

    pub fn to_representation(&self, alg: &HomLieAlgebra) -> Result<Representation> {
        Representation::new(alg.clone(), self.module()?, self.action_map(alg.dim())?)
    }

    /// Action on the Hom-Lie algebra given by `brackets` (abelian when absent).
    pub fn to_action(&self, alg: &HomLieAlgebra) -> Result<HomLieAction> {
        let module = self.module()?;
        let list = self.brackets.clone().unwrap_or_default();
        let acted = RawHomStructure::from_brackets(module.clone(), &brackets_at(&list, self.module_dim, "brackets")?)?.into_algebra()?;
        let rep = Representation::new(alg.clone(), module, self.action_map(alg.dim())?)?;
        HomLieAction::new(rep, acted)
    }

    pub fn from_representation(rep: &Representation) -> Self {
        let (g, n, _) = rep.action().dims();
        let mut action = Vec::new();
        for i in 0..g {
            for j in 0..n {
                let v = rep.action().basis(i, j);
                if !v.is_zero() {
                    action.push(ActionEntryJson { g: i + 1, v: j + 1, value: json_vector(v) });
                }
            }
        }
        RepresentationJson {
            module_dim: n,
            beta: json_matrix(rep.module().alpha()),
            action,
            brackets: None,
            basis: Some(rep.module().labels().to_vec()),
        }
    }

    pub fn from_action(action: &HomLieAction) -> Self {
        let mut out = Self::from_representation(action.representation());
        out.brackets = Some(bracket_list(action.acted().mu()));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffJson {
    pub tuple: Vec<usize>,
    pub value: Vec<JsonScalar>,
}

/// Values on strictly increasing basis tuples; omitted tuples are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainJson {
    pub arity: usize,
    #[serde(default)]
    pub coeffs: Vec<CoeffJson>,
}

impl CochainJson {
    pub fn to_cochain(&self, domain: &Space, codomain: &Space) -> Result<Cochain> {
        let (d, c) = (domain.dim(), codomain.dim());
        if self.arity == 0 {
            return Err(Error::ZeroArity("cochain JSON"));
        }
        let tuples = increasing_tuples(d, self.arity);
        let mut values: Vec<Option<Vector>> = vec![None; tuples.len()];
        for (k, e) in self.coeffs.iter().enumerate() {
            let here = format!("coeffs[{k}]");
            if e.tuple.len() != self.arity {
                return Err(Error::Parse(format!("{here}.tuple: expected {} indices", self.arity)));
            }
            let idx = e.tuple.iter().map(|&i| index_at(i, d, &format!("{here}.tuple"))).collect::<Result<Vec<_>>>()?;
            if idx.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Parse(format!("{here}.tuple: indices must be strictly increasing")));
            }
            let pos = tuples.iter().position(|t| *t == idx).expect("increasing tuple enumerated");
            if values[pos].replace(vector_at(&e.value, c, &format!("{here}.value"))?).is_some() {
                return Err(Error::Parse(format!("{here}: duplicate tuple {:?}", e.tuple)));
            }
        }
        let values = values.into_iter().map(|v| v.unwrap_or_else(|| Vector::zeros(c))).collect();
        Cochain::new(self.arity, domain.clone(), codomain.clone(), values)
    }

    pub fn from_cochain(f: &Cochain) -> Self {
        let coeffs = f
            .tuples()
            .iter()
            .zip(f.values())
            .filter(|(_, v)| !v.is_zero())
            .map(|(t, v)| CoeffJson { tuple: t.iter().map(|i| i + 1).collect(), value: json_vector(v) })
            .collect();
        CochainJson { arity: f.arity(), coeffs }
    }
}

/// Column j is the image of the j-th basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub matrix: Vec<Vec<JsonScalar>>,
}

impl MatrixJson {
    pub fn to_mat(&self, rows: usize, cols: usize) -> Result<Mat> {
        matrix_at(&self.matrix, rows, cols, "matrix")
    }

    pub fn from_mat(m: &Mat) -> Self {
        MatrixJson { matrix: json_matrix(m) }
    }
}

/// A linear map given either as a matrix or as an arity-1 cochain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OperatorJson {
    Matrix(MatrixJson),
    Cochain(CochainJson),
}

impl OperatorJson {
    pub fn to_mat(&self, domain: &Space, codomain: &Space) -> Result<Mat> {
        match self {
            OperatorJson::Matrix(m) => m.to_mat(codomain.dim(), domain.dim()),
            OperatorJson::Cochain(c) => {
                if c.arity != 1 {
                    return Err(Error::ArityMismatch { expected: 1, found: c.arity });
                }
                c.to_cochain(domain, codomain)?.to_matrix()
            }
        }
    }
}

/// φ as a matrix; the target algebra defaults to the source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismJson {
    pub matrix: Vec<Vec<JsonScalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<AlgebraJson>,
}

/// Higher terms φ₁, φ₂, … of a deformation, each a matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermsJson {
    pub terms: Vec<Vec<Vec<JsonScalar>>>,
}

impl TermsJson {
    pub fn to_mats(&self, rows: usize, cols: usize) -> Result<Vec<Mat>> {
        self.terms.iter().enumerate().map(|(k, m)| matrix_at(m, rows, cols, &format!("terms[{k}]"))).collect()
    }

    pub fn from_mats(ms: &[Mat]) -> Self {
        TermsJson { terms: ms.iter().map(json_matrix).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom_structures::{fixture_b, fixture_jackson_sl2};

    #[test]
    fn algebra_round_trip() {
        let b = fixture_b();
        let json = AlgebraJson::from_raw(b.raw());
        let text = to_json(&json);
        let back: AlgebraJson = from_json(&text, "test").unwrap();
        assert_eq!(back.to_algebra().unwrap(), b);
        assert_eq!(to_json(&AlgebraJson::from_raw(&back.to_raw().unwrap())), text);
    }

    #[test]
    fn rationals_normalize() {
        let j: JsonScalar = from_json("\"2/4\"", "t").unwrap();
        assert_eq!(to_json(&j).trim(), "\"1/2\"");
        assert!(from_json::<JsonScalar>("0.5", "t").is_err());
        assert!(from_json::<JsonScalar>("\"1/0\"", "t").is_err());
        let k: JsonScalar = from_json("-3", "t").unwrap();
        assert_eq!(k.0, int(-3));
    }

    #[test]
    fn malformed_algebras_rejected() {
        let dup = r#"{"dim":2,"alpha":[[1,0],[0,1]],"brackets":[{"i":1,"j":2,"value":[1,0]},{"i":1,"j":2,"value":[0,1]}]}"#;
        let e = from_json::<AlgebraJson>(dup, "t").unwrap().to_raw().unwrap_err();
        assert!(e.to_string().contains("duplicate"), "{e}");
        let short = r#"{"dim":2,"alpha":[[1,0],[0,1]],"brackets":[{"i":1,"j":2,"value":[1]}]}"#;
        assert!(from_json::<AlgebraJson>(short, "t").unwrap().to_raw().is_err());
        let range = r#"{"dim":2,"alpha":[[1,0],[0,1]],"brackets":[{"i":1,"j":3,"value":[1,0]}]}"#;
        assert!(from_json::<AlgebraJson>(range, "t").unwrap().to_raw().unwrap_err().to_string().contains("out of range"));
        let order = r#"{"dim":2,"alpha":[[1,0],[0,1]],"brackets":[{"i":2,"j":1,"value":[1,0]}]}"#;
        assert!(from_json::<AlgebraJson>(order, "t").unwrap().to_raw().is_err());
    }

    #[test]
    fn jackson_keeps_labels() {
        let j = AlgebraJson::from_raw(&fixture_jackson_sl2(&int(2)));
        assert_eq!(j.basis.as_deref(), Some(&["e".to_string(), "h".into(), "f".into()][..]));
    }

    #[test]
    fn cochain_round_trip() {
        let b = fixture_b();
        let mu = b.mu().clone();
        let j = CochainJson::from_cochain(&mu);
        assert_eq!(j.to_cochain(b.space(), b.space()).unwrap(), mu);
        let bad = CochainJson { arity: 2, coeffs: vec![CoeffJson { tuple: vec![2, 1], value: json_vector(&Vector::zeros(3)) }] };
        assert!(bad.to_cochain(b.space(), b.space()).is_err());
    }
}
