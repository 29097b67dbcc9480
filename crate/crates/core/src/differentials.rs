//! Coboundary operators and cohomology dimensions over ℚ.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::algebra_core::{mat_rank, solve_linear, Mat, Scalar, Vector};
use crate::brackets::{cup_bracket, derived_bracket_rel};
use crate::error::{Error, Result};
use crate::hom_structures::{HomLieAction, HomLieAlgebra, HomMorphism, Representation};
use crate::multilinear::{binom, combine, compatibility_basis, contract, same_space, Cochain, Degree0Cochain, Space, Sparse};
use crate::operators::relative_rb_pointwise;

fn require_compatible(f: &Cochain) -> Result<()> {
    if f.is_compatible() {
        Ok(())
    } else {
        Err(Error::NotCompatible)
    }
}

/// Σ_{i<j} (−1)^{i+j} f([xᵢ,xⱼ], αx₁, …, α̂xᵢ, …, α̂xⱼ, …) using the bracket and twist of `alg`.
fn bracket_sum(f: &Cochain, alg: &HomLieAlgebra) -> Cochain {
    let n = f.arity();
    let space = alg.space();
    let alpha = space.alpha();
    let cols: Vec<Sparse> = (0..space.dim()).map(|i| alpha.column(i).support()).collect();
    let cod = f.codomain().dim();
    Cochain::from_fn(n + 1, space.clone(), f.codomain().clone(), |t| {
        let mut acc = Vector::zeros(cod);
        for i in 0..=n {
            for j in i + 1..=n {
                let br = alg.mu().value(&[t[i], t[j]]).support();
                if br.is_empty() {
                    continue;
                }
                let mut args: Vec<&[(usize, Scalar)]> = Vec::with_capacity(n);
                args.push(&br);
                args.extend((0..=n).filter(|&k| k != i && k != j).map(|k| cols[t[k]].as_slice()));
                let v = f.eval_sparse(&args);
                if (i + j) % 2 == 0 {
                    acc += &v;
                } else {
                    acc -= &v;
                }
            }
        }
        acc
    })
}

/// δ_Hom without the compatibility check; callers guarantee f ∈ C^n(𝔤, V).
pub(crate) fn delta_hom_unchecked(f: &Cochain, rep: &Representation) -> Cochain {
    let n = f.arity();
    let alg = rep.algebra();
    let twist = alg.space().power(n - 1);
    let action = rep.action();
    let sum = bracket_sum(f, alg);
    let tuples = sum.tuples();
    let mut rest = Vec::with_capacity(n);
    let values: Vec<Vector> = tuples
        .iter()
        .zip(sum.values())
        .map(|(t, v)| {
            let mut acc = v.clone();
            for i in 0..=n {
                rest.clear();
                rest.extend(t.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, &x)| x));
                let term = action.apply(&twist.column(t[i]), f.value(&rest));
                // (−1)^{(i+1)+1}
                if i % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            acc
        })
        .collect();
    Cochain::new(n + 1, sum.domain().clone(), sum.codomain().clone(), values).expect("same shape")
}

/// The coboundary of the Hom-Lie algebra with coefficients in `rep`.
pub fn delta_hom(f: &Cochain, rep: &Representation) -> Result<Cochain> {
    if !same_space(f.domain(), rep.algebra().space()) || !same_space(f.codomain(), rep.module()) {
        return Err(Error::SpaceMismatch);
    }
    require_compatible(f)?;
    Ok(delta_hom_unchecked(f, rep))
}

/// (δv)(x) = x ⋄ v.
pub fn delta_hom0(v: &Degree0Cochain, rep: &Representation) -> Result<Cochain> {
    if !same_space(v.space(), rep.module()) {
        return Err(Error::SpaceMismatch);
    }
    let alg = rep.algebra();
    let n = alg.dim();
    Ok(Cochain::from_fn(1, alg.space().clone(), rep.module().clone(), |t| rep.act(&Vector::basis(n, t[0]), v.value())))
}

/// D: the coboundary with trivial coefficients; only the bracket sum survives.
pub fn d_trivial(f: &Cochain, alg: &HomLieAlgebra) -> Result<Cochain> {
    if !same_space(f.domain(), alg.space()) {
        return Err(Error::SpaceMismatch);
    }
    require_compatible(f)?;
    Ok(bracket_sum(f, alg))
}

/// D_φ f = Df + [φ, f]_C.
pub fn d_phi(f: &Cochain, phi: &HomMorphism) -> Result<Cochain> {
    if let Some(w) = phi.failure() {
        return Err(Error::NotMorphism(w));
    }
    d_phi_unchecked(f, phi)
}

pub(crate) fn d_phi_unchecked(f: &Cochain, phi: &HomMorphism) -> Result<Cochain> {
    let df = d_trivial(f, phi.source())?;
    Ok(&df + &cup_bracket(&phi.as_cochain(), f, phi.target())?)
}

/// δ^tr f = −i_μ f.
pub fn delta_tr(f: &Cochain, alg: &HomLieAlgebra) -> Result<Cochain> {
    if !same_space(f.domain(), alg.space()) || !same_space(f.codomain(), alg.space()) {
        return Err(Error::SpaceMismatch);
    }
    Ok(-&contract(alg.mu(), f)?)
}

/// d_λ f = λ δ^tr f.
pub fn d_lambda(f: &Cochain, alg: &HomLieAlgebra, lambda: &Scalar) -> Result<Cochain> {
    Ok(delta_tr(f, alg)?.scale(lambda))
}

/// d̃_λ f = λ Σ_{i<j} (−1)^{i+j} f([hᵢ,hⱼ]_𝔥, βh₁, …) for f ∈ C(𝔥, 𝔤).
pub fn d_lambda_tilde(f: &Cochain, h: &HomLieAlgebra, lambda: &Scalar) -> Result<Cochain> {
    Ok(d_trivial(f, h)?.scale(lambda))
}

/// D_R f = d̃_λ f + [R, f]_D^~.
pub fn d_r(f: &Cochain, r: &Cochain, lambda: &Scalar, action: &HomLieAction) -> Result<Cochain> {
    if !relative_rb_pointwise(r, action, lambda)? {
        return Err(Error::NotRelativeRotaBaxter);
    }
    d_r_unchecked(f, r, lambda, action)
}

fn d_r_unchecked(f: &Cochain, r: &Cochain, lambda: &Scalar, action: &HomLieAction) -> Result<Cochain> {
    Ok(&d_lambda_tilde(f, action.acted(), lambda)? + &derived_bracket_rel(r, f, action.representation())?)
}

/// The complexes whose cohomology can be computed.
#[derive(Clone, Debug)]
pub enum ComplexKind {
    /// δ_Hom on C(𝔤, V); starts in degree 0.
    HomRep(Representation),
    /// D on C(𝔤, W) for a twisted space W; starts in degree 1.
    Trivial { algebra: HomLieAlgebra, coefficients: Space },
    /// D_φ on C(𝔤, 𝔥); starts in degree 1.
    MorphismTwisted(HomMorphism),
    /// d_λ on C(𝔤, 𝔤); starts in degree 1.
    ScaledTrivial { algebra: HomLieAlgebra, lambda: Scalar },
    /// d̃_λ on C(𝔥, 𝔤); starts in degree 1.
    Relative { action: HomLieAction, lambda: Scalar },
    /// D_R on C(𝔥, 𝔤); starts in degree 1.
    RelativeRb { action: HomLieAction, operator: Cochain, lambda: Scalar },
}

/// An element of some degree of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexElement {
    Degree0(Degree0Cochain),
    Cochain(Cochain),
}

/// A validated complex with memoized cochain bases.
#[derive(Debug)]
pub struct CochainComplexSpec {
    kind: ComplexKind,
    bases: Mutex<HashMap<usize, Arc<Vec<Cochain>>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub degree: usize,
    pub dim_cochains: usize,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub dim_cohomology: usize,
}

impl CochainComplexSpec {
    pub fn new(kind: ComplexKind) -> Result<Self> {
        match &kind {
            ComplexKind::MorphismTwisted(phi) => {
                if let Some(w) = phi.failure() {
                    return Err(Error::NotMorphism(w));
                }
            }
            ComplexKind::RelativeRb { action, operator, lambda } => {
                if !relative_rb_pointwise(operator, action, lambda)? {
                    return Err(Error::NotRelativeRotaBaxter);
                }
            }
            ComplexKind::Trivial { .. } | ComplexKind::HomRep(_) | ComplexKind::ScaledTrivial { .. } | ComplexKind::Relative { .. } => {}
        }
        Ok(CochainComplexSpec { kind, bases: Mutex::new(HashMap::new()) })
    }

    pub fn kind(&self) -> &ComplexKind {
        &self.kind
    }

    pub fn lowest_degree(&self) -> usize {
        match self.kind {
            ComplexKind::HomRep(_) => 0,
            _ => 1,
        }
    }

    /// (domain, coefficient space) of the cochains.
    pub fn spaces(&self) -> (Space, Space) {
        match &self.kind {
            ComplexKind::HomRep(rep) => (rep.algebra().space().clone(), rep.module().clone()),
            ComplexKind::Trivial { algebra, coefficients } => (algebra.space().clone(), coefficients.clone()),
            ComplexKind::MorphismTwisted(phi) => (phi.source().space().clone(), phi.target().space().clone()),
            ComplexKind::ScaledTrivial { algebra, .. } => (algebra.space().clone(), algebra.space().clone()),
            ComplexKind::Relative { action, .. } | ComplexKind::RelativeRb { action, .. } => {
                (action.acted().space().clone(), action.acting().space().clone())
            }
        }
    }

    /// Basis of C^n for n ≥ 1.
    pub fn cochain_basis(&self, n: usize) -> Arc<Vec<Cochain>> {
        assert!(n >= 1);
        if let Some(hit) = self.bases.lock().expect("basis cache poisoned").get(&n) {
            return hit.clone();
        }
        let (d, c) = self.spaces();
        let fresh = Arc::new(compatibility_basis(&d, &c, n));
        self.bases.lock().expect("basis cache poisoned").entry(n).or_insert(fresh).clone()
    }

    /// Number of coordinates of a degree-n element.
    fn ambient(&self, n: usize) -> usize {
        let (d, c) = self.spaces();
        if n == 0 {
            c.dim()
        } else {
            binom(d.dim(), n) * c.dim()
        }
    }

    fn elements(&self, n: usize) -> Vec<ComplexElement> {
        if n == 0 {
            match &self.kind {
                ComplexKind::HomRep(rep) => Degree0Cochain::basis(rep.module()).into_iter().map(ComplexElement::Degree0).collect(),
                _ => Vec::new(),
            }
        } else {
            self.cochain_basis(n).iter().cloned().map(ComplexElement::Cochain).collect()
        }
    }

    pub fn dim(&self, n: usize) -> usize {
        if n < self.lowest_degree() {
            0
        } else if n == 0 {
            self.elements(0).len()
        } else {
            self.cochain_basis(n).len()
        }
    }

    /// The differential on an element already known to lie in the complex.
    pub fn apply(&self, e: &ComplexElement) -> Result<Cochain> {
        match (&self.kind, e) {
            (ComplexKind::HomRep(rep), ComplexElement::Degree0(v)) => delta_hom0(v, rep),
            (_, ComplexElement::Degree0(_)) => Err(Error::ZeroArity("this complex")),
            (ComplexKind::HomRep(rep), ComplexElement::Cochain(f)) => delta_hom(f, rep),
            (ComplexKind::Trivial { algebra, .. }, ComplexElement::Cochain(f)) => d_trivial(f, algebra),
            (ComplexKind::MorphismTwisted(phi), ComplexElement::Cochain(f)) => d_phi_unchecked(f, phi),
            (ComplexKind::ScaledTrivial { algebra, lambda }, ComplexElement::Cochain(f)) => d_lambda(f, algebra, lambda),
            (ComplexKind::Relative { action, lambda }, ComplexElement::Cochain(f)) => d_lambda_tilde(f, action.acted(), lambda),
            (ComplexKind::RelativeRb { action, operator, lambda }, ComplexElement::Cochain(f)) => {
                d_r_unchecked(f, operator, lambda, action)
            }
        }
    }

    /// Matrix of d: C^n → C^{n+1}; columns are images of the basis, rows ambient coordinates.
    pub fn matrix(&self, n: usize) -> Result<Mat> {
        let rows = self.ambient(n + 1);
        let cols = self.elements(n).iter().map(|e| Ok(self.apply(e)?.to_coords())).collect::<Result<Vec<_>>>()?;
        Ok(Mat::from_columns(rows, &cols))
    }

    /// d_{n+1} ∘ d_n = 0 on the whole basis of C^n.
    pub fn squares_to_zero(&self, n: usize) -> Result<bool> {
        if n < self.lowest_degree() {
            return Ok(true);
        }
        for e in self.elements(n) {
            let once = self.apply(&e)?;
            if !self.apply(&ComplexElement::Cochain(once))?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn cohomology(&self, n: usize) -> Result<CohomologyReport> {
        if n < self.lowest_degree() {
            return Ok(CohomologyReport { degree: n, dim_cochains: 0, dim_cocycles: 0, dim_coboundaries: 0, dim_cohomology: 0 });
        }
        let dim_cochains = self.dim(n);
        let dim_cocycles = dim_cochains - mat_rank(&self.matrix(n)?);
        let dim_coboundaries = if n == self.lowest_degree() { 0 } else { mat_rank(&self.matrix(n - 1)?) };
        if dim_coboundaries > dim_cocycles {
            return Err(Error::Inconsistent(format!("B^{n} exceeds Z^{n}; the differential does not square to zero")));
        }
        Ok(CohomologyReport { degree: n, dim_cochains, dim_cocycles, dim_coboundaries, dim_cohomology: dim_cocycles - dim_coboundaries })
    }

    /// A preimage of the cocycle `c` under d, or `None` when its class is nonzero.
    pub fn is_coboundary(&self, c: &Cochain) -> Result<Option<ComplexElement>> {
        let n = c.arity();
        let (d, cod) = self.spaces();
        if !same_space(c.domain(), &d) || !same_space(c.codomain(), &cod) {
            return Err(Error::SpaceMismatch);
        }
        require_compatible(c)?;
        if !self.apply(&ComplexElement::Cochain(c.clone()))?.is_zero() {
            return Err(Error::NotCocycle);
        }
        if n == self.lowest_degree() {
            if !c.is_zero() {
                return Ok(None);
            }
            return Ok(Some(ComplexElement::Degree0(Degree0Cochain::new(cod.clone(), Vector::zeros(cod.dim()))?)));
        }
        let basis = self.elements(n - 1);
        let m = self.matrix(n - 1)?;
        let Some(x) = solve_linear(&m, &c.to_coords())? else {
            return Ok(None);
        };
        let preimage = if n - 1 == 0 {
            let mut v = Vector::zeros(cod.dim());
            for (e, k) in basis.iter().zip(x.entries()) {
                if let ComplexElement::Degree0(b) = e {
                    v.add_scaled(k, b.value());
                }
            }
            ComplexElement::Degree0(Degree0Cochain::new(cod, v)?)
        } else {
            let cochains: Vec<Cochain> = self.cochain_basis(n - 1).iter().cloned().collect();
            ComplexElement::Cochain(combine(&cochains, x.entries(), n - 1, &d, &cod))
        };
        debug_assert!(self.apply(&preimage).map(|img| img == *c).unwrap_or(false));
        Ok(Some(preimage))
    }
}

/// Convenience wrapper: cohomology report of `spec` in degree `n`.
pub fn cohomology(spec: &CochainComplexSpec, n: usize) -> Result<CohomologyReport> {
    spec.cohomology(n)
}

/// Convenience wrapper around [`CochainComplexSpec::is_coboundary`].
pub fn is_coboundary(c: &Cochain, spec: &CochainComplexSpec) -> Result<Option<ComplexElement>> {
    spec.is_coboundary(c)
}

impl ComplexElement {
    pub fn is_zero(&self) -> bool {
        match self {
            ComplexElement::Degree0(v) => v.value().is_zero(),
            ComplexElement::Cochain(c) => c.is_zero(),
        }
    }
}
