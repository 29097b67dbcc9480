//! Hom-Lie algebras, representations, actions and morphisms.

mod fixtures;

use num_traits::Zero;

use crate::algebra_core::{int, Mat, Scalar, Vector};
use crate::error::{Error, Result};
use crate::multilinear::{same_space, Cochain, Space, TwistedSpace};

pub use fixtures::{
    abelian, fixture_3dim, fixture_b, fixture_jackson_sl2, heisenberg4_lie, named_fixture, sl2_lie, yau_heis4, yau_sl2, FIXTURE_NAMES,
};

/// Bilinear map A × B → C stored on basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearMap {
    left: usize,
    right: usize,
    out: usize,
    table: Vec<Vector>,
}

impl BilinearMap {
    pub fn zero(left: usize, right: usize, out: usize) -> Self {
        BilinearMap { left, right, out, table: vec![Vector::zeros(out); left * right] }
    }

    /// `f(i, j)` is the image of the basis pair (e_i, e_j).
    pub fn from_fn(left: usize, right: usize, out: usize, mut f: impl FnMut(usize, usize) -> Vector) -> Self {
        let mut table = Vec::with_capacity(left * right);
        for i in 0..left {
            for j in 0..right {
                let v = f(i, j);
                assert_eq!(v.dim(), out, "bilinear value has wrong dimension");
                table.push(v);
            }
        }
        BilinearMap { left, right, out, table }
    }

    pub fn set(&mut self, i: usize, j: usize, v: Vector) -> Result<()> {
        if i >= self.left || j >= self.right {
            return Err(Error::Parse(format!("basis pair ({}, {}) out of range", i + 1, j + 1)));
        }
        if v.dim() != self.out {
            return Err(Error::DimensionMismatch { expected: self.out, found: v.dim() });
        }
        self.table[i * self.right + j] = v;
        Ok(())
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.left, self.right, self.out)
    }

    pub fn basis(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.right + j]
    }

    pub fn apply(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zeros(self.out);
        for (i, a) in x.support() {
            for (j, b) in y.support() {
                out.add_scaled(&(&a * &b), self.basis(i, j));
            }
        }
        out
    }
}

/// Candidate (𝔤, [,], α) with only skew-symmetry guaranteed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawHomStructure {
    space: Space,
    mu: Cochain,
}

/// Basis pair where α[x,y] ≠ [αx,αy].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicativityFailure {
    pub pair: (usize, usize),
    pub twisted_bracket: Vector,
    pub bracket_of_twists: Vector,
}

/// Basis triple with a nonzero Hom-Jacobi cyclic sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiFailure {
    pub triple: (usize, usize, usize),
    pub cyclic_sum: Vector,
}

impl RawHomStructure {
    pub fn new(space: Space, mu: Cochain) -> Result<Self> {
        if mu.arity() != 2 {
            return Err(Error::ArityMismatch { expected: 2, found: mu.arity() });
        }
        if !same_space(mu.domain(), &space) || !same_space(mu.codomain(), &space) {
            return Err(Error::SpaceMismatch);
        }
        Ok(RawHomStructure { space, mu })
    }

    /// Builds μ from bracket values on basis pairs (i < j, 0-based); unlisted pairs are zero.
    pub fn from_brackets(space: Space, brackets: &[(usize, usize, Vector)]) -> Result<Self> {
        let n = space.dim();
        let mut table = vec![None; crate::multilinear::binom(n, 2)];
        let tuples = crate::multilinear::increasing_tuples(n, 2);
        for (i, j, v) in brackets {
            if i >= j || *j >= n {
                return Err(Error::Parse(format!("bracket pair ({}, {}) must satisfy 1 ≤ i < j ≤ {n}", i + 1, j + 1)));
            }
            if v.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.dim() });
            }
            let k = tuples.iter().position(|t| t[0] == *i && t[1] == *j).expect("pair enumerated");
            if table[k].replace(v.clone()).is_some() {
                return Err(Error::Parse(format!("duplicate bracket pair ({}, {})", i + 1, j + 1)));
            }
        }
        let values = table.into_iter().map(|v| v.unwrap_or_else(|| Vector::zeros(n))).collect();
        let mu = Cochain::new(2, space.clone(), space.clone(), values)?;
        Ok(RawHomStructure { space, mu })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn mu(&self) -> &Cochain {
        &self.mu
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        self.mu.evaluate(&[x.clone(), y.clone()]).expect("dimensions checked by caller")
    }

    /// Cyclic sum [αx,[y,z]] + [αy,[z,x]] + [αz,[x,y]].
    pub fn jacobiator(&self, x: &Vector, y: &Vector, z: &Vector) -> Vector {
        let a = self.space.alpha();
        let mut s = self.bracket(&a.mul_vec(x), &self.bracket(y, z));
        s += &self.bracket(&a.mul_vec(y), &self.bracket(z, x));
        s += &self.bracket(&a.mul_vec(z), &self.bracket(x, y));
        s
    }

    pub fn hom_jacobi_failures(&self) -> Vec<JacobiFailure> {
        let n = self.dim();
        let e = |i| Vector::basis(n, i);
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let s = self.jacobiator(&e(i), &e(j), &e(k));
                    if !s.is_zero() {
                        out.push(JacobiFailure { triple: (i, j, k), cyclic_sum: s });
                    }
                }
            }
        }
        out
    }

    /// Direct cyclic-sum check on every increasing basis triple.
    pub fn check_hom_jacobi(&self) -> bool {
        self.hom_jacobi_failures().is_empty()
    }

    pub fn multiplicativity_failures(&self) -> Vec<MultiplicativityFailure> {
        let n = self.dim();
        let a = self.space.alpha();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = a.mul_vec(self.mu.value(&[i, j]));
                let rhs = self.bracket(&a.column(i), &a.column(j));
                if lhs != rhs {
                    out.push(MultiplicativityFailure { pair: (i, j), twisted_bracket: lhs, bracket_of_twists: rhs });
                }
            }
        }
        out
    }

    pub fn check_multiplicative(&self) -> bool {
        self.mu.is_compatible()
    }

    pub fn into_algebra(self) -> Result<HomLieAlgebra> {
        HomLieAlgebra::new(self.space, self.mu)
    }
}

/// Multiplicative Hom-Lie algebra (𝔤, [,], α); both axioms verified at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomLieAlgebra {
    raw: RawHomStructure,
}

impl HomLieAlgebra {
    pub fn new(space: Space, mu: Cochain) -> Result<Self> {
        let raw = RawHomStructure::new(space, mu)?;
        if let Some(f) = raw.multiplicativity_failures().first() {
            let l = raw.space.labels();
            return Err(Error::NotHomLie(format!(
                "multiplicativity fails at ({},{}): {} vs {}",
                l[f.pair.0],
                l[f.pair.1],
                f.twisted_bracket.render(l),
                f.bracket_of_twists.render(l)
            )));
        }
        if let Some(f) = raw.hom_jacobi_failures().first() {
            let l = raw.space.labels();
            return Err(Error::NotHomLie(format!(
                "Hom-Jacobi fails at ({},{},{}): {}",
                l[f.triple.0],
                l[f.triple.1],
                l[f.triple.2],
                f.cyclic_sum.render(l)
            )));
        }
        Ok(HomLieAlgebra { raw })
    }

    pub fn from_brackets(space: Space, brackets: &[(usize, usize, Vector)]) -> Result<Self> {
        RawHomStructure::from_brackets(space, brackets)?.into_algebra()
    }

    pub fn space(&self) -> &Space {
        &self.raw.space
    }

    pub fn mu(&self) -> &Cochain {
        &self.raw.mu
    }

    pub fn dim(&self) -> usize {
        self.raw.dim()
    }

    pub fn alpha(&self) -> &Mat {
        self.raw.space.alpha()
    }

    pub fn raw(&self) -> &RawHomStructure {
        &self.raw
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        self.raw.bracket(x, y)
    }

    /// ad: x ⋄ y = [x, y].
    pub fn adjoint(&self) -> Representation {
        let n = self.dim();
        let action = BilinearMap::from_fn(n, n, n, |i, j| self.bracket(&Vector::basis(n, i), &Vector::basis(n, j)));
        Representation { algebra: self.clone(), module: self.space().clone(), action }
    }

    /// The adjoint representation read as an action of 𝔤 on itself.
    pub fn adjoint_action(&self) -> HomLieAction {
        HomLieAction { rep: self.adjoint(), acted: self.clone() }
    }

    /// ⋄ = 0 on the module (V, β).
    pub fn trivial_representation(&self, module: Space) -> Representation {
        let action = BilinearMap::zero(self.dim(), module.dim(), module.dim());
        Representation { algebra: self.clone(), module, action }
    }
}

/// Twisted module (V, ⋄, β) for a Hom-Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    algebra: HomLieAlgebra,
    module: Space,
    action: BilinearMap,
}

impl Representation {
    pub fn new(algebra: HomLieAlgebra, module: Space, action: BilinearMap) -> Result<Self> {
        let rep = Representation { algebra, module, action };
        if let Some(w) = rep.failure() {
            return Err(Error::NotRepresentation(w));
        }
        Ok(rep)
    }

    pub fn algebra(&self) -> &HomLieAlgebra {
        &self.algebra
    }

    pub fn module(&self) -> &Space {
        &self.module
    }

    pub fn action(&self) -> &BilinearMap {
        &self.action
    }

    pub fn act(&self, x: &Vector, v: &Vector) -> Vector {
        self.action.apply(x, v)
    }

    /// First violated axiom on basis elements, if any.
    pub fn failure(&self) -> Option<String> {
        let g = self.algebra.dim();
        let m = self.module.dim();
        if self.action.dims() != (g, m, m) {
            return Some(format!("action has shape {:?}, expected {:?}", self.action.dims(), (g, m, m)));
        }
        let alpha = self.algebra.alpha();
        let beta = self.module.alpha();
        for i in 0..g {
            for v in 0..m {
                let lhs = beta.mul_vec(self.action.basis(i, v));
                let rhs = self.act(&alpha.column(i), &beta.column(v));
                if lhs != rhs {
                    return Some(format!("β(x⋄v) ≠ α(x)⋄β(v) at basis pair ({}, {})", i + 1, v + 1));
                }
            }
        }
        for i in 0..g {
            for j in i + 1..g {
                let xi = Vector::basis(g, i);
                let xj = Vector::basis(g, j);
                let br = self.algebra.bracket(&xi, &xj);
                for v in 0..m {
                    let lhs = self.act(&br, &beta.column(v));
                    let mut rhs = self.act(&alpha.column(i), self.action.basis(j, v));
                    rhs -= &self.act(&alpha.column(j), self.action.basis(i, v));
                    if lhs != rhs {
                        return Some(format!("[x,y]⋄β(v) ≠ α(x)⋄(y⋄v) − α(y)⋄(x⋄v) at basis triple ({}, {}, {})", i + 1, j + 1, v + 1));
                    }
                }
            }
        }
        None
    }

    pub fn check(&self) -> bool {
        self.failure().is_none()
    }
}

/// Action of a Hom-Lie algebra 𝔤 on a Hom-Lie algebra 𝔥 by twisted derivations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomLieAction {
    rep: Representation,
    acted: HomLieAlgebra,
}

impl HomLieAction {
    pub fn new(rep: Representation, acted: HomLieAlgebra) -> Result<Self> {
        if !same_space(rep.module(), acted.space()) {
            return Err(Error::NotAction("module space differs from the acted algebra".into()));
        }
        let a = HomLieAction { rep, acted };
        if let Some(w) = a.failure() {
            return Err(Error::NotAction(w));
        }
        Ok(a)
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }

    pub fn acting(&self) -> &HomLieAlgebra {
        self.rep.algebra()
    }

    pub fn acted(&self) -> &HomLieAlgebra {
        &self.acted
    }

    pub fn failure(&self) -> Option<String> {
        if let Some(w) = self.rep.failure() {
            return Some(w);
        }
        let g = self.acting().dim();
        let h = self.acted.dim();
        let alpha = self.acting().alpha();
        let beta = self.acted.alpha();
        for x in 0..g {
            for i in 0..h {
                for j in i + 1..h {
                    let hi = Vector::basis(h, i);
                    let hj = Vector::basis(h, j);
                    let lhs = self.rep.act(&alpha.column(x), &self.acted.bracket(&hi, &hj));
                    let mut rhs = self.acted.bracket(self.rep.action.basis(x, i), &beta.column(j));
                    rhs += &self.acted.bracket(&beta.column(i), self.rep.action.basis(x, j));
                    if lhs != rhs {
                        return Some(format!("α(x)⋄[h,k] ≠ [x⋄h,β(k)] + [β(h),x⋄k] at basis triple ({}, {}, {})", x + 1, i + 1, j + 1));
                    }
                }
            }
        }
        None
    }

    pub fn check(&self) -> bool {
        self.failure().is_none()
    }
}

/// Candidate morphism φ: source → target; see [`HomMorphism::check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomMorphism {
    source: HomLieAlgebra,
    target: HomLieAlgebra,
    map: Mat,
}

impl HomMorphism {
    pub fn new(source: HomLieAlgebra, target: HomLieAlgebra, map: Mat) -> Result<Self> {
        if map.cols() != source.dim() {
            return Err(Error::DimensionMismatch { expected: source.dim(), found: map.cols() });
        }
        if map.rows() != target.dim() {
            return Err(Error::DimensionMismatch { expected: target.dim(), found: map.rows() });
        }
        Ok(HomMorphism { source, target, map })
    }

    pub fn source(&self) -> &HomLieAlgebra {
        &self.source
    }

    pub fn target(&self) -> &HomLieAlgebra {
        &self.target
    }

    pub fn map(&self) -> &Mat {
        &self.map
    }

    /// φ as an element of C¹(source, target).
    pub fn as_cochain(&self) -> Cochain {
        Cochain::from_linear_map(self.source.space().clone(), self.target.space().clone(), &self.map)
            .expect("shape checked at construction")
    }

    pub fn failure(&self) -> Option<String> {
        let sl = self.source.space().labels();
        let lhs = self.target.alpha() * &self.map;
        let rhs = &self.map * self.source.alpha();
        if lhs != rhs {
            return Some("β∘φ ≠ φ∘α".to_string());
        }
        let n = self.source.dim();
        for i in 0..n {
            for j in i + 1..n {
                let img = self.map.mul_vec(self.source.mu().value(&[i, j]));
                let br = self.target.bracket(&self.map.column(i), &self.map.column(j));
                if img != br {
                    let tl = self.target.space().labels();
                    return Some(format!("φ[x,y] ≠ [φx,φy] at ({},{}): {} vs {}", sl[i], sl[j], img.render(tl), br.render(tl)));
                }
            }
        }
        None
    }

    pub fn check(&self) -> bool {
        self.failure().is_none()
    }
}

pub fn check_morphism(phi: &HomMorphism) -> bool {
    phi.check()
}

/// (𝔤, a∘[,], a) from a Lie algebra (untwisted Jacobi bracket) and an endomorphism a of it.
pub fn yau_twist(lie_mu: &Cochain, a: &Mat) -> Result<HomLieAlgebra> {
    let dim = lie_mu.domain().dim();
    let labels = lie_mu.domain().labels().to_vec();
    let plain = TwistedSpace::with_labels(Mat::identity(dim), Some(labels.clone()))?;
    let lie_mu = Cochain::new(2, plain.clone(), plain.clone(), lie_mu.values().to_vec())?;
    let lie = RawHomStructure::new(plain, lie_mu)?;
    if let Some(f) = lie.hom_jacobi_failures().first() {
        return Err(Error::NotHomLie(format!("input bracket fails Jacobi at {:?}", f.triple)));
    }
    if a.rows() != dim || a.cols() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: a.rows().max(a.cols()) });
    }
    for i in 0..dim {
        for j in i + 1..dim {
            if a.mul_vec(lie.mu().value(&[i, j])) != lie.bracket(&a.column(i), &a.column(j)) {
                return Err(Error::NotLieHomomorphism(format!("a[x,y] ≠ [ax,ay] at ({},{})", labels[i], labels[j])));
            }
        }
    }
    let space = TwistedSpace::with_labels(a.clone(), Some(labels))?;
    let values = lie.mu().values().iter().map(|v| a.mul_vec(v)).collect();
    HomLieAlgebra::new(space.clone(), Cochain::new(2, space.clone(), space, values)?)
}

/// [x,y] = x·y − y·x for a Hom-associative product with twist a.
pub fn commutator_hom_lie(product: &BilinearMap, a: &Mat) -> Result<RawHomStructure> {
    let (l, r, o) = product.dims();
    if l != r || r != o {
        return Err(Error::DimensionMismatch { expected: l, found: r.max(o) });
    }
    if a.rows() != l || a.cols() != l {
        return Err(Error::DimensionMismatch { expected: l, found: a.rows() });
    }
    for i in 0..l {
        for j in 0..l {
            for k in 0..l {
                let lhs = product.apply(&a.column(i), product.basis(j, k));
                let rhs = product.apply(product.basis(i, j), &a.column(k));
                if lhs != rhs {
                    return Err(Error::NotHomAssociative(format!(
                        "α(x)·(y·z) ≠ (x·y)·α(z) at basis triple ({}, {}, {})",
                        i + 1,
                        j + 1,
                        k + 1
                    )));
                }
            }
        }
    }
    let space = TwistedSpace::new(a.clone())?;
    let mu = Cochain::from_fn(2, space.clone(), space.clone(), |t| product.basis(t[0], t[1]) - product.basis(t[1], t[0]));
    RawHomStructure::new(space, mu)
}

/// 𝔤 ⊕ 𝔥 with [(x,h),(y,k)] = ([x,y], x⋄k − y⋄h + λ[h,k]) and twist α ⊕ β.
pub fn semidirect_weight(action: &HomLieAction, lambda: &Scalar) -> Result<HomLieAlgebra> {
    let g = action.acting();
    let h = action.acted();
    let (gd, hd) = (g.dim(), h.dim());
    let space = g.space().direct_sum(h.space());
    let split = |t: usize| -> (Vector, Vector) {
        if t < gd {
            (Vector::basis(gd, t), Vector::zeros(hd))
        } else {
            (Vector::zeros(gd), Vector::basis(hd, t - gd))
        }
    };
    let rep = action.representation();
    let mu = Cochain::from_fn(2, space.clone(), space.clone(), |t| {
        let (x, hh) = split(t[0]);
        let (y, k) = split(t[1]);
        let first = g.bracket(&x, &y);
        let mut second = rep.act(&x, &k);
        second -= &rep.act(&y, &hh);
        if !lambda.is_zero() {
            second.add_scaled(lambda, &h.bracket(&hh, &k));
        }
        first.concat(&second)
    });
    HomLieAlgebra::new(space, mu)
}

/// 𝔤 acting diagonally, x ⋄ (y,h) = ([x,y],[x,h]), on the weight-one semidirect square 𝔤 ⋉ 𝔤.
///
/// A non-adjoint action available for every algebra; (y,h) ↦ −λy is a relative
/// Rota-Baxter operator of weight λ for it.
pub fn doubled_action(alg: &HomLieAlgebra) -> Result<HomLieAction> {
    let acted = semidirect_weight(&alg.adjoint_action(), &int(1))?;
    let n = alg.dim();
    let action = BilinearMap::from_fn(n, 2 * n, 2 * n, |x, t| {
        let xv = Vector::basis(n, x);
        let (y, h) = if t < n { (Vector::basis(n, t), Vector::zeros(n)) } else { (Vector::zeros(n), Vector::basis(n, t - n)) };
        alg.bracket(&xv, &y).concat(&alg.bracket(&xv, &h))
    });
    let rep = Representation::new(alg.clone(), acted.space().clone(), action)?;
    HomLieAction::new(rep, acted)
}

/// The relative Rota-Baxter operator (y,h) ↦ −λy on [`doubled_action`].
pub fn doubled_action_operator(alg: &HomLieAlgebra, lambda: &Scalar) -> Mat {
    let n = alg.dim();
    let mut m = Mat::zeros(n, 2 * n);
    for i in 0..n {
        m.set(i, i, -lambda.clone());
    }
    m
}
