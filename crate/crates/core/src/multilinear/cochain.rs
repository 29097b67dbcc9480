use std::collections::HashMap;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use super::shuffle::sort_with_sign;
use super::space::{same_space, Space};
use crate::algebra_core::{kernel_basis, Mat, Scalar, Vector};
use crate::error::{Error, Result};

pub(crate) type Sparse = Vec<(usize, Scalar)>;

pub(crate) fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Colexicographic rank of a strictly increasing tuple.
pub(crate) fn colex_rank(tuple: &[usize]) -> usize {
    tuple.iter().enumerate().map(|(i, &c)| binom(c, i + 1)).sum()
}

fn colex_tuples(dim: usize, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for last in n - 1..dim {
        for mut t in colex_tuples(last, n - 1) {
            t.push(last);
            out.push(t);
        }
    }
    out
}

type TupleCache = Mutex<HashMap<(usize, usize), Arc<Vec<Vec<usize>>>>>;

/// Strictly increasing n-tuples from 0..dim, position equal to colex rank. Memoized.
pub fn increasing_tuples(dim: usize, n: usize) -> Arc<Vec<Vec<usize>>> {
    static CACHE: OnceLock<TupleCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("tuple cache poisoned").get(&(dim, n)) {
        return hit.clone();
    }
    let fresh = Arc::new(colex_tuples(dim, n));
    cache.lock().expect("tuple cache poisoned").entry((dim, n)).or_insert(fresh).clone()
}

/// Skew-symmetric multilinear map Λⁿ(domain) → codomain, stored on increasing basis tuples.
///
/// Arity is at least 1. Compatibility with the twists is a checked property, not an invariant.
#[derive(Clone, Debug)]
pub struct Cochain {
    arity: usize,
    domain: Space,
    codomain: Space,
    values: Vec<Vector>,
}

impl Cochain {
    pub fn new(arity: usize, domain: Space, codomain: Space, values: Vec<Vector>) -> Result<Self> {
        if arity == 0 {
            return Err(Error::ZeroArity("Cochain::new"));
        }
        let expected = binom(domain.dim(), arity);
        if values.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: values.len() });
        }
        if let Some(v) = values.iter().find(|v| v.dim() != codomain.dim()) {
            return Err(Error::DimensionMismatch { expected: codomain.dim(), found: v.dim() });
        }
        Ok(Cochain { arity, domain, codomain, values })
    }

    pub fn zero(arity: usize, domain: Space, codomain: Space) -> Self {
        assert!(arity >= 1, "cochains have arity at least 1");
        let values = vec![Vector::zeros(codomain.dim()); binom(domain.dim(), arity)];
        Cochain { arity, domain, codomain, values }
    }

    /// Tabulates `f` on increasing 0-based tuples.
    pub fn from_fn(arity: usize, domain: Space, codomain: Space, mut f: impl FnMut(&[usize]) -> Vector) -> Self {
        assert!(arity >= 1, "cochains have arity at least 1");
        let values: Vec<Vector> = increasing_tuples(domain.dim(), arity).iter().map(|t| f(t)).collect();
        debug_assert!(values.iter().all(|v| v.dim() == codomain.dim()));
        Cochain { arity, domain, codomain, values }
    }

    /// The linear map with matrix `m` (columns are images of basis vectors).
    pub fn from_linear_map(domain: Space, codomain: Space, m: &Mat) -> Result<Self> {
        if m.cols() != domain.dim() {
            return Err(Error::DimensionMismatch { expected: domain.dim(), found: m.cols() });
        }
        if m.rows() != codomain.dim() {
            return Err(Error::DimensionMismatch { expected: codomain.dim(), found: m.rows() });
        }
        Ok(Cochain::from_fn(1, domain, codomain, |t| m.column(t[0])))
    }

    /// Matrix of an arity-1 cochain.
    pub fn to_matrix(&self) -> Result<Mat> {
        if self.arity != 1 {
            return Err(Error::ArityMismatch { expected: 1, found: self.arity });
        }
        Ok(Mat::from_columns(self.codomain.dim(), &self.values))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn domain(&self) -> &Space {
        &self.domain
    }

    pub fn codomain(&self) -> &Space {
        &self.codomain
    }

    /// Values on increasing tuples, in colex order.
    pub fn values(&self) -> &[Vector] {
        &self.values
    }

    pub fn tuples(&self) -> Arc<Vec<Vec<usize>>> {
        increasing_tuples(self.domain.dim(), self.arity)
    }

    /// Value on a strictly increasing tuple.
    pub fn value(&self, increasing: &[usize]) -> &Vector {
        &self.values[colex_rank(increasing)]
    }

    /// Value on an arbitrary tuple of basis indices.
    pub fn eval_basis(&self, indices: &[usize]) -> Result<Vector> {
        self.check_arity(indices.len())?;
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.domain.dim()) {
            return Err(Error::DimensionMismatch { expected: self.domain.dim(), found: bad + 1 });
        }
        Ok(match sort_with_sign(indices) {
            None => Vector::zeros(self.codomain.dim()),
            Some((sorted, sign)) if sign.is_minus() => -self.value(&sorted),
            Some((sorted, _)) => self.value(&sorted).clone(),
        })
    }

    /// Multilinear, alternating extension to arbitrary vectors.
    pub fn evaluate(&self, args: &[Vector]) -> Result<Vector> {
        self.check_arity(args.len())?;
        if let Some(v) = args.iter().find(|v| v.dim() != self.domain.dim()) {
            return Err(Error::DimensionMismatch { expected: self.domain.dim(), found: v.dim() });
        }
        let sparse: Vec<Sparse> = args.iter().map(Vector::support).collect();
        let refs: Vec<&[(usize, Scalar)]> = sparse.iter().map(Vec::as_slice).collect();
        Ok(self.eval_sparse(&refs))
    }

    fn check_arity(&self, found: usize) -> Result<()> {
        if found != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found });
        }
        Ok(())
    }

    /// Expansion over the supports of the arguments; repeated indices contribute nothing.
    pub(crate) fn eval_sparse(&self, args: &[&[(usize, Scalar)]]) -> Vector {
        debug_assert_eq!(args.len(), self.arity);
        let mut out = Vector::zeros(self.codomain.dim());
        let mut chosen = Vec::with_capacity(self.arity);
        self.expand(args, &mut chosen, &Scalar::one(), &mut out);
        out
    }

    fn expand(&self, args: &[&[(usize, Scalar)]], chosen: &mut Vec<usize>, coef: &Scalar, out: &mut Vector) {
        let slot = chosen.len();
        if slot == args.len() {
            let (sorted, sign) = sort_with_sign(chosen).expect("distinct by construction");
            let c = if sign.is_minus() { -coef } else { coef.clone() };
            out.add_scaled(&c, self.value(&sorted));
            return;
        }
        for (i, x) in args[slot] {
            if chosen.contains(i) {
                continue;
            }
            chosen.push(*i);
            self.expand(args, chosen, &(coef * x), out);
            chosen.pop();
        }
    }

    /// f ∘ α^{∧n} (every argument twisted by the domain map).
    pub fn pullback_by_twist(&self) -> Cochain {
        let alpha = self.domain.alpha();
        let cols: Vec<Sparse> = (0..self.domain.dim()).map(|i| alpha.column(i).support()).collect();
        Cochain::from_fn(self.arity, self.domain.clone(), self.codomain.clone(), |t| {
            let args: Vec<&[(usize, Scalar)]> = t.iter().map(|&i| cols[i].as_slice()).collect();
            self.eval_sparse(&args)
        })
    }

    /// m ∘ f, landing in `codomain`.
    pub fn post_compose(&self, m: &Mat, codomain: Space) -> Cochain {
        assert_eq!(m.cols(), self.codomain.dim(), "post-composition dimension mismatch");
        assert_eq!(m.rows(), codomain.dim(), "post-composition dimension mismatch");
        Cochain { arity: self.arity, domain: self.domain.clone(), codomain, values: self.values.iter().map(|v| m.mul_vec(v)).collect() }
    }

    /// β ∘ f = f ∘ α^{∧n} on every increasing basis tuple.
    pub fn is_compatible(&self) -> bool {
        let beta = self.codomain.alpha();
        let pulled = self.pullback_by_twist();
        self.values.iter().zip(&pulled.values).all(|(v, w)| beta.mul_vec(v) == *w)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Vector::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Cochain {
        Cochain { values: self.values.iter().map(|v| v.scale(c)).collect(), ..self.clone() }
    }

    pub fn same_shape(&self, other: &Cochain) -> bool {
        self.arity == other.arity && same_space(&self.domain, &other.domain) && same_space(&self.codomain, &other.codomain)
    }

    pub fn try_add(&self, other: &Cochain) -> Result<Cochain> {
        self.shape_check(other)?;
        Ok(self + other)
    }

    fn shape_check(&self, other: &Cochain) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        if !self.same_shape(other) {
            return Err(Error::SpaceMismatch);
        }
        Ok(())
    }

    /// First increasing tuple where the two tables differ, with both values.
    pub fn first_difference(&self, other: &Cochain) -> Option<(Vec<usize>, Vector, Vector)> {
        let tuples = self.tuples();
        self.values
            .iter()
            .zip(&other.values)
            .position(|(a, b)| a != b)
            .map(|k| (tuples[k].clone(), self.values[k].clone(), other.values[k].clone()))
    }

    /// Flat coordinates: tuple-major, codomain index minor.
    pub fn to_coords(&self) -> Vector {
        Vector::new(self.values.iter().flat_map(|v| v.entries().iter().cloned()).collect())
    }

    pub fn from_coords(arity: usize, domain: Space, codomain: Space, coords: &Vector) -> Result<Cochain> {
        let cd = codomain.dim();
        let expected = binom(domain.dim(), arity) * cd;
        if coords.dim() != expected {
            return Err(Error::DimensionMismatch { expected, found: coords.dim() });
        }
        let values = if cd == 0 {
            vec![Vector::zeros(0); binom(domain.dim(), arity)]
        } else {
            coords.entries().chunks(cd).map(|c| Vector::new(c.to_vec())).collect()
        };
        Cochain::new(arity, domain, codomain, values)
    }

    /// Human-readable table using the basis labels.
    pub fn render(&self) -> String {
        let dl = self.domain.labels();
        let cl = self.codomain.labels();
        let mut lines = Vec::new();
        for (t, v) in self.tuples().iter().zip(&self.values) {
            if v.is_zero() {
                continue;
            }
            let args: Vec<&str> = t.iter().map(|&i| dl[i].as_str()).collect();
            lines.push(format!("({}) -> {}", args.join(","), v.render(cl)));
        }
        if lines.is_empty() {
            "0".to_string()
        } else {
            lines.join("\n")
        }
    }
}

impl PartialEq for Cochain {
    fn eq(&self, other: &Self) -> bool {
        self.same_shape(other) && self.values == other.values
    }
}

impl Eq for Cochain {}

impl Add for &Cochain {
    type Output = Cochain;
    /// Panics when the shapes differ; see [`Cochain::try_add`].
    fn add(self, rhs: &Cochain) -> Cochain {
        assert!(self.same_shape(rhs), "cochain shape mismatch in addition");
        Cochain { values: self.values.iter().zip(&rhs.values).map(|(a, b)| a + b).collect(), ..self.clone() }
    }
}

impl Sub for &Cochain {
    type Output = Cochain;
    fn sub(self, rhs: &Cochain) -> Cochain {
        assert!(self.same_shape(rhs), "cochain shape mismatch in subtraction");
        Cochain { values: self.values.iter().zip(&rhs.values).map(|(a, b)| a - b).collect(), ..self.clone() }
    }
}

impl Neg for &Cochain {
    type Output = Cochain;
    fn neg(self) -> Cochain {
        Cochain { values: self.values.iter().map(|a| -a).collect(), ..self.clone() }
    }
}

/// Element of C⁰: a vector fixed by the twist of its space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degree0Cochain {
    space: Space,
    value: Vector,
}

impl Degree0Cochain {
    pub fn new(space: Space, value: Vector) -> Result<Self> {
        if value.dim() != space.dim() {
            return Err(Error::DimensionMismatch { expected: space.dim(), found: value.dim() });
        }
        if space.alpha().mul_vec(&value) != value {
            return Err(Error::NotCompatible);
        }
        Ok(Degree0Cochain { space, value })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn value(&self) -> &Vector {
        &self.value
    }

    /// Basis of {v : βv = v}.
    pub fn basis(space: &Space) -> Vec<Degree0Cochain> {
        let fixed = space.alpha() - &Mat::identity(space.dim());
        kernel_basis(&fixed).into_iter().map(|v| Degree0Cochain { space: space.clone(), value: v }).collect()
    }
}

/// Basis of the compatible n-cochains, the kernel of f ↦ β∘f − f∘α^{∧n}.
pub fn compatibility_basis(domain: &Space, codomain: &Space, arity: usize) -> Vec<Cochain> {
    assert!(arity >= 1, "cochains have arity at least 1");
    let unknowns = binom(domain.dim(), arity) * codomain.dim();
    let columns: Vec<Vector> = (0..unknowns)
        .map(|u| {
            let mut coords = Vector::zeros(unknowns);
            coords[u] = Scalar::one();
            let unit = Cochain::from_coords(arity, domain.clone(), codomain.clone(), &coords).expect("sized");
            let pushed = unit.post_compose(codomain.alpha(), codomain.clone());
            (&pushed - &unit.pullback_by_twist()).to_coords()
        })
        .collect();
    let operator = Mat::from_columns(unknowns, &columns);
    kernel_basis(&operator).into_iter().map(|v| Cochain::from_coords(arity, domain.clone(), codomain.clone(), &v).expect("sized")).collect()
}

/// Coordinates of compatible cochains in the given basis, as the columns of a matrix.
#[cfg(test)]
fn basis_matrix(basis: &[Cochain], rows: usize) -> Mat {
    Mat::from_columns(rows, &basis.iter().map(Cochain::to_coords).collect::<Vec<_>>())
}

/// Σ cᵢ·bᵢ, or zero of the given shape when the basis is empty.
pub fn combine(basis: &[Cochain], coeffs: &[Scalar], arity: usize, domain: &Space, codomain: &Space) -> Cochain {
    let mut out = Cochain::zero(arity, domain.clone(), codomain.clone());
    for (b, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, v) in out.values.iter_mut().zip(&b.values) {
            o.add_scaled(c, v);
        }
    }
    out
}
