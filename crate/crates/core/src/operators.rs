//! Nijenhuis and (relative) Rota-Baxter operators, each checked two independent ways.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra_core::{frac, int, Mat, Scalar, Vector};
use crate::brackets::{cup_bracket, derived_bracket, derived_bracket_rel, fn_bracket};
use crate::differentials::{d_lambda, d_lambda_tilde, d_trivial, delta_hom};
use crate::error::{Error, Result};
use crate::hom_structures::{semidirect_weight, BilinearMap, HomLieAction, HomLieAlgebra, HomMorphism, RawHomStructure, Representation};
use crate::multilinear::{compatibility_basis, same_space, Cochain, Space};

/// Linear map intertwining the twists: τ_cod ∘ T = T ∘ τ_dom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearOperator {
    cochain: Cochain,
}

impl LinearOperator {
    pub fn new(domain: Space, codomain: Space, m: &Mat) -> Result<Self> {
        Self::try_from(Cochain::from_linear_map(domain, codomain, m)?)
    }

    /// Endomorphism of an algebra's underlying space.
    pub fn on(alg: &HomLieAlgebra, m: &Mat) -> Result<Self> {
        Self::new(alg.space().clone(), alg.space().clone(), m)
    }

    pub fn as_cochain(&self) -> &Cochain {
        &self.cochain
    }

    pub fn matrix(&self) -> Mat {
        self.cochain.to_matrix().expect("arity one")
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        self.cochain.evaluate(std::slice::from_ref(v)).expect("dimension checked by caller")
    }
}

impl TryFrom<Cochain> for LinearOperator {
    type Error = Error;
    fn try_from(c: Cochain) -> Result<Self> {
        if c.arity() != 1 {
            return Err(Error::ArityMismatch { expected: 1, found: c.arity() });
        }
        if !c.is_compatible() {
            return Err(Error::NotCompatible);
        }
        Ok(LinearOperator { cochain: c })
    }
}

/// A basis pair where an operator identity fails, with both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairWitness {
    pub pair: (usize, usize),
    pub lhs: Vector,
    pub rhs: Vector,
}

/// Outcome of a dual-criterion operator check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorVerdict {
    pub holds: bool,
    pub witness: Option<PairWitness>,
    /// Maurer-Cartan residual; zero iff the identity holds.
    pub residual: Cochain,
}

fn first_pair_failure(dim: usize, mut sides: impl FnMut(&Vector, &Vector) -> (Vector, Vector)) -> Option<PairWitness> {
    for i in 0..dim {
        for j in i + 1..dim {
            let (lhs, rhs) = sides(&Vector::basis(dim, i), &Vector::basis(dim, j));
            if lhs != rhs {
                return Some(PairWitness { pair: (i, j), lhs, rhs });
            }
        }
    }
    None
}

fn require_endo(n: &LinearOperator, alg: &HomLieAlgebra) -> Result<()> {
    let c = n.as_cochain();
    if !same_space(c.domain(), alg.space()) || !same_space(c.codomain(), alg.space()) {
        return Err(Error::SpaceMismatch);
    }
    Ok(())
}

fn agree(direct: bool, residual: &Cochain, what: &str) -> Result<()> {
    if direct != residual.is_zero() {
        return Err(Error::Inconsistent(format!(
            "{what}: pointwise identity says {direct} but the Maurer-Cartan residual says {}",
            residual.is_zero()
        )));
    }
    Ok(())
}

/// [x,y]^N = [Nx,y] + [x,Ny] − N[x,y].
pub fn deformed_bracket_n(n: &LinearOperator, alg: &HomLieAlgebra) -> Result<Cochain> {
    require_endo(n, alg)?;
    let d = alg.dim();
    Ok(Cochain::from_fn(2, alg.space().clone(), alg.space().clone(), |t| {
        let (x, y) = (Vector::basis(d, t[0]), Vector::basis(d, t[1]));
        let mut v = &alg.bracket(&n.apply(&x), &y) + &alg.bracket(&x, &n.apply(&y));
        v -= &n.apply(alg.mu().value(t));
        v
    }))
}

/// [Nx,Ny] = N[x,y]^N on basis pairs, cross-checked against [N,N]_FN = 0.
pub fn nijenhuis_check(n: &LinearOperator, alg: &HomLieAlgebra) -> Result<OperatorVerdict> {
    let deformed = deformed_bracket_n(n, alg)?;
    let witness = first_pair_failure(alg.dim(), |x, y| {
        (alg.bracket(&n.apply(x), &n.apply(y)), n.apply(&deformed.evaluate(&[x.clone(), y.clone()]).expect("sized")))
    });
    let residual = fn_bracket(n.as_cochain(), n.as_cochain(), alg)?;
    agree(witness.is_none(), &residual, "Nijenhuis check")?;
    Ok(OperatorVerdict { holds: witness.is_none(), witness, residual })
}

pub fn is_nijenhuis(n: &LinearOperator, alg: &HomLieAlgebra) -> Result<bool> {
    Ok(nijenhuis_check(n, alg)?.holds)
}

/// Sample values of t for which μ + t·[,]^N is tested.
pub fn deformation_parameters() -> Vec<Scalar> {
    vec![int(1), int(-1), frac(1, 2), int(3)]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NijenhuisReport {
    /// (𝔤, [,]^N, α) as a verified Hom-Lie algebra.
    pub deformed: HomLieAlgebra,
    /// [,]^N = δ_Hom N.
    pub deformed_is_coboundary: bool,
    /// N: (𝔤,[,]^N,α) → (𝔤,[,],α) is a morphism.
    pub is_morphism: bool,
    /// Parameters t for which μ + t[,]^N satisfies Hom-Jacobi.
    pub compatible_parameters: Vec<(Scalar, bool)>,
    /// δ_Hom([N,N]_FN) = 0.
    pub fn_square_closed: bool,
}

impl NijenhuisReport {
    pub fn all_pass(&self) -> bool {
        self.deformed_is_coboundary && self.is_morphism && self.fn_square_closed && self.compatible_parameters.iter().all(|(_, ok)| *ok)
    }
}

/// Structures induced by a Nijenhuis operator.
pub fn nijenhuis_deformation_check(n: &LinearOperator, alg: &HomLieAlgebra) -> Result<NijenhuisReport> {
    if !is_nijenhuis(n, alg)? {
        return Err(Error::NotNijenhuis);
    }
    let bracket = deformed_bracket_n(n, alg)?;
    let ad = alg.adjoint();
    let deformed_is_coboundary = bracket == delta_hom(n.as_cochain(), &ad)?;
    let deformed = HomLieAlgebra::new(alg.space().clone(), bracket.clone())?;
    let is_morphism = HomMorphism::new(deformed.clone(), alg.clone(), n.matrix())?.check();
    let compatible_parameters = deformation_parameters()
        .into_iter()
        .map(|t| {
            let mu = alg.mu() + &bracket.scale(&t);
            let raw = RawHomStructure::new(alg.space().clone(), mu)?;
            Ok((t, raw.check_hom_jacobi()))
        })
        .collect::<Result<Vec<_>>>()?;
    let sq = fn_bracket(n.as_cochain(), n.as_cochain(), alg)?;
    let fn_square_closed = delta_hom(&sq, &ad)?.is_zero();
    Ok(NijenhuisReport { deformed, deformed_is_coboundary, is_morphism, compatible_parameters, fn_square_closed })
}

/// [x,y]^R = [Rx,y] + [x,Ry] + λ[x,y].
pub fn rb_deformed_bracket(r: &LinearOperator, alg: &HomLieAlgebra, lambda: &Scalar) -> Result<Cochain> {
    require_endo(r, alg)?;
    let d = alg.dim();
    Ok(Cochain::from_fn(2, alg.space().clone(), alg.space().clone(), |t| {
        let (x, y) = (Vector::basis(d, t[0]), Vector::basis(d, t[1]));
        let mut v = &alg.bracket(&r.apply(&x), &y) + &alg.bracket(&x, &r.apply(&y));
        v.add_scaled(lambda, alg.mu().value(t));
        v
    }))
}

/// [Rx,Ry] = R([x,y]^R) on basis pairs, cross-checked against d_λR + ½[R,R]_D = 0.
pub fn rota_baxter_check(r: &LinearOperator, alg: &HomLieAlgebra, lambda: &Scalar) -> Result<OperatorVerdict> {
    let deformed = rb_deformed_bracket(r, alg, lambda)?;
    let witness = first_pair_failure(alg.dim(), |x, y| {
        (alg.bracket(&r.apply(x), &r.apply(y)), r.apply(&deformed.evaluate(&[x.clone(), y.clone()]).expect("sized")))
    });
    let residual = mc_residual(r.as_cochain(), &Dgla::Derived { algebra: alg.clone(), lambda: lambda.clone() })?;
    agree(witness.is_none(), &residual, "Rota-Baxter check")?;
    Ok(OperatorVerdict { holds: witness.is_none(), witness, residual })
}

pub fn is_rota_baxter(r: &LinearOperator, alg: &HomLieAlgebra, lambda: &Scalar) -> Result<bool> {
    Ok(rota_baxter_check(r, alg, lambda)?.holds)
}

fn require_relative(r: &Cochain, action: &HomLieAction) -> Result<()> {
    if r.arity() != 1 {
        return Err(Error::ArityMismatch { expected: 1, found: r.arity() });
    }
    if !same_space(r.domain(), action.acted().space()) || !same_space(r.codomain(), action.acting().space()) {
        return Err(Error::SpaceMismatch);
    }
    if !r.is_compatible() {
        return Err(Error::NotCompatible);
    }
    Ok(())
}

/// Rh⋄k − Rk⋄h + λ[h,k]_𝔥 on basis pairs.
fn relative_inner(r: &Cochain, action: &HomLieAction, lambda: &Scalar) -> Cochain {
    let rep = action.representation();
    let h = action.acted();
    let d = h.dim();
    let rm = r.to_matrix().expect("arity one");
    Cochain::from_fn(2, h.space().clone(), h.space().clone(), |t| {
        let (x, y) = (Vector::basis(d, t[0]), Vector::basis(d, t[1]));
        let mut v = &rep.act(&rm.column(t[0]), &y) - &rep.act(&rm.column(t[1]), &x);
        v.add_scaled(lambda, h.mu().value(t));
        v
    })
}

fn relative_witness(r: &Cochain, action: &HomLieAction, lambda: &Scalar) -> Option<PairWitness> {
    let g = action.acting();
    let rm = r.to_matrix().expect("arity one");
    let inner = relative_inner(r, action, lambda);
    let d = action.acted().dim();
    first_pair_failure(d, |x, y| {
        let lhs = g.bracket(&rm.mul_vec(x), &rm.mul_vec(y));
        let rhs = rm.mul_vec(&inner.evaluate(&[x.clone(), y.clone()]).expect("sized"));
        (lhs, rhs)
    })
}

/// Pointwise relative Rota-Baxter identity only.
pub fn relative_rb_pointwise(r: &Cochain, action: &HomLieAction, lambda: &Scalar) -> Result<bool> {
    require_relative(r, action)?;
    Ok(relative_witness(r, action, lambda).is_none())
}

/// Gr(R) = {(Rh, h)} closed under the weight-λ semidirect bracket.
pub fn relative_rb_graph_closed(r: &Cochain, action: &HomLieAction, lambda: &Scalar) -> Result<bool> {
    require_relative(r, action)?;
    let sd = semidirect_weight(action, lambda)?;
    let rm = r.to_matrix()?;
    let (gd, hd) = (action.acting().dim(), action.acted().dim());
    let lift = |i: usize| rm.column(i).concat(&Vector::basis(hd, i));
    for i in 0..hd {
        for j in i + 1..hd {
            let w = sd.bracket(&lift(i), &lift(j));
            let (wg, wh) = w.entries().split_at(gd);
            if rm.mul_vec(&Vector::new(wh.to_vec())).entries() != wg {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Verdict of the three relative criteria, which must agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeVerdict {
    pub holds: bool,
    pub witness: Option<PairWitness>,
    pub graph_closed: bool,
    pub residual: Cochain,
}

pub fn relative_rb_check(r: &LinearOperator, action: &HomLieAction, lambda: &Scalar) -> Result<RelativeVerdict> {
    let c = r.as_cochain();
    require_relative(c, action)?;
    let witness = relative_witness(c, action, lambda);
    let graph_closed = relative_rb_graph_closed(c, action, lambda)?;
    let residual = mc_residual(c, &Dgla::RelativeDerived { action: action.clone(), lambda: lambda.clone() })?;
    let pointwise = witness.is_none();
    if pointwise != graph_closed || pointwise != residual.is_zero() {
        return Err(Error::Inconsistent(format!(
            "relative Rota-Baxter criteria disagree: pointwise {pointwise}, graph {graph_closed}, Maurer-Cartan {}",
            residual.is_zero()
        )));
    }
    Ok(RelativeVerdict { holds: pointwise, witness, graph_closed, residual })
}

pub fn is_relative_rb(r: &LinearOperator, action: &HomLieAction, lambda: &Scalar) -> Result<bool> {
    Ok(relative_rb_check(r, action, lambda)?.holds)
}

/// (𝔥, [,]_𝔥^R, β) and its representation h ⋄̃ x = [Rh, x] + R(x ⋄ h) on (𝔤, α).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedStructures {
    pub algebra: HomLieAlgebra,
    pub representation: Representation,
}

pub fn induced_structures(r: &LinearOperator, action: &HomLieAction, lambda: &Scalar) -> Result<InducedStructures> {
    let c = r.as_cochain();
    if !relative_rb_pointwise(c, action, lambda)? {
        return Err(Error::NotRelativeRotaBaxter);
    }
    let bracket = relative_inner(c, action, lambda);
    let algebra = HomLieAlgebra::new(action.acted().space().clone(), bracket)
        .map_err(|e| Error::InducedStructure(format!("induced bracket: {e}")))?;
    let g = action.acting();
    let rep = action.representation();
    let rm = r.matrix();
    let (hd, gd) = (algebra.dim(), g.dim());
    let tilde = BilinearMap::from_fn(hd, gd, gd, |h, x| {
        let xv = Vector::basis(gd, x);
        &g.bracket(&rm.column(h), &xv) + &rm.mul_vec(&rep.act(&xv, &Vector::basis(hd, h)))
    });
    let representation = Representation::new(algebra.clone(), g.space().clone(), tilde)
        .map_err(|e| Error::InducedStructure(format!("induced representation: {e}")))?;
    let morphism = HomMorphism::new(algebra.clone(), g.clone(), rm)?;
    if let Some(w) = morphism.failure() {
        return Err(Error::InducedStructure(format!("R is not a morphism from the induced algebra: {w}")));
    }
    Ok(InducedStructures { algebra, representation })
}

/// Differential graded Lie algebras whose Maurer-Cartan elements are the operators above.
#[derive(Clone, Debug)]
pub enum Dgla {
    /// (C(𝔤,𝔥), [,]_C, D): morphisms.
    Morphism { source: HomLieAlgebra, target: HomLieAlgebra },
    /// (C(𝔤,𝔤), [,]_D, d_λ): Rota-Baxter operators of weight λ.
    Derived { algebra: HomLieAlgebra, lambda: Scalar },
    /// (C(𝔥,𝔤), [,]_D^~, d̃_λ): relative Rota-Baxter operators of weight λ.
    RelativeDerived { action: HomLieAction, lambda: Scalar },
}

/// ds + ½[s,s] in the selected algebra.
pub fn mc_residual(s: &Cochain, dgla: &Dgla) -> Result<Cochain> {
    if !s.is_compatible() {
        return Err(Error::NotCompatible);
    }
    let half = frac(1, 2);
    match dgla {
        Dgla::Morphism { source, target } => Ok(&d_trivial(s, source)? + &cup_bracket(s, s, target)?.scale(&half)),
        Dgla::Derived { algebra, lambda } => Ok(&d_lambda(s, algebra, lambda)? + &derived_bracket(s, s, algebra)?.scale(&half)),
        Dgla::RelativeDerived { action, lambda } => {
            Ok(&d_lambda_tilde(s, action.acted(), lambda)? + &derived_bracket_rel(s, s, action.representation())?.scale(&half))
        }
    }
}

/// Every map with entries in `values` intertwining the twists.
pub fn bounded_operators(domain: &Space, codomain: &Space, values: &[Scalar]) -> Vec<LinearOperator> {
    let basis = compatibility_basis(domain, codomain, 1);
    let coords: Vec<Vector> = basis.iter().map(Cochain::to_coords).collect();
    // Kernel bases from reduced echelon form carry a unit at a private "free" coordinate.
    let free: Vec<usize> = coords
        .iter()
        .enumerate()
        .map(|(k, v)| {
            (0..v.dim())
                .find(|&i| v[i] == int(1) && coords.iter().enumerate().all(|(l, w)| l == k || w[i].is_zero()))
                .expect("echelon kernel basis has free coordinates")
        })
        .collect();
    let total = values.len().pow(basis.len() as u32);
    (0..total)
        .into_par_iter()
        .filter_map(|mut idx| {
            let mut c = Cochain::zero(1, domain.clone(), codomain.clone());
            for b in &basis {
                let v = &values[idx % values.len()];
                idx /= values.len();
                c = &c + &b.scale(v);
            }
            let entries_ok = c.to_coords().entries().iter().all(|x| values.contains(x));
            debug_assert!(free.iter().all(|&i| values.contains(&c.to_coords()[i])));
            entries_ok.then_some(LinearOperator { cochain: c })
        })
        .collect()
}

/// Nijenhuis operators with entries in `values`.
pub fn search_nijenhuis(alg: &HomLieAlgebra, values: &[Scalar]) -> Result<Vec<LinearOperator>> {
    let found: Vec<Result<Option<LinearOperator>>> =
        bounded_operators(alg.space(), alg.space(), values).into_par_iter().map(|n| Ok(is_nijenhuis(&n, alg)?.then_some(n))).collect();
    found.into_iter().filter_map(|r| r.transpose()).collect()
}

/// Witness line for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RenderedWitness {
    pub pair: [String; 2],
    pub lhs: String,
    pub rhs: String,
}

impl PairWitness {
    pub fn render(&self, domain_labels: &[String], codomain_labels: &[String]) -> RenderedWitness {
        RenderedWitness {
            pair: [domain_labels[self.pair.0].clone(), domain_labels[self.pair.1].clone()],
            lhs: self.lhs.render(codomain_labels),
            rhs: self.rhs.render(codomain_labels),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brackets::theta;
    use crate::hom_structures::{fixture_b, yau_sl2};

    fn scalar_op(alg: &HomLieAlgebra, c: Scalar) -> LinearOperator {
        LinearOperator::on(alg, &Mat::identity(alg.dim()).scale(&c)).unwrap()
    }

    #[test]
    fn deformed_bracket_cases() {
        let g = fixture_b();
        assert_eq!(deformed_bracket_n(&scalar_op(&g, int(1)), &g).unwrap(), *g.mu());
        assert!(deformed_bracket_n(&scalar_op(&g, int(0)), &g).unwrap().is_zero());
        for n in bounded_operators(g.space(), g.space(), &[int(-1), int(0), int(1)]).iter().take(40) {
            assert_eq!(deformed_bracket_n(n, &g).unwrap(), delta_hom(n.as_cochain(), &g.adjoint()).unwrap());
        }
    }

    #[test]
    fn scalar_nijenhuis() {
        let g = yau_sl2();
        for c in [int(0), int(1), int(-2), frac(1, 2)] {
            let n = scalar_op(&g, c.clone());
            assert!(is_nijenhuis(&n, &g).unwrap());
            let report = nijenhuis_deformation_check(&n, &g).unwrap();
            assert!(report.all_pass());
            assert_eq!(*report.deformed.mu(), g.mu().scale(&c));
        }
    }

    #[test]
    fn rb_bracket_and_scalar_operators() {
        let g = fixture_b();
        for lambda in [int(0), int(1), int(2), frac(-1, 2)] {
            let zero = scalar_op(&g, int(0));
            assert_eq!(rb_deformed_bracket(&zero, &g, &lambda).unwrap(), g.mu().scale(&lambda));
            assert!(is_rota_baxter(&zero, &g, &lambda).unwrap());
            assert!(is_rota_baxter(&scalar_op(&g, -lambda.clone()), &g, &lambda).unwrap());
            for r in bounded_operators(g.space(), g.space(), &[int(-1), int(0), int(2)]).iter().step_by(7) {
                let expect = &g.mu().scale(&lambda) - &theta(r.as_cochain(), &g).unwrap();
                assert_eq!(rb_deformed_bracket(r, &g, &lambda).unwrap(), expect);
                let v = rota_baxter_check(r, &g, &lambda).unwrap();
                if let Some(w) = &v.witness {
                    assert_eq!(v.residual.value(&[w.pair.0, w.pair.1]), &(&w.lhs - &w.rhs));
                }
            }
        }
        let two_id = scalar_op(&g, int(2));
        assert!(!is_rota_baxter(&two_id, &g, &int(0)).unwrap());
    }

    #[test]
    fn relative_zero_and_adjoint_specialization() {
        let g = fixture_b();
        let act = g.adjoint_action();
        for lambda in [int(0), int(1), frac(-1, 2)] {
            let zero = scalar_op(&g, int(0));
            assert!(is_relative_rb(&zero, &act, &lambda).unwrap());
            for r in bounded_operators(g.space(), g.space(), &[int(-1), int(0), int(1)]).iter().step_by(5) {
                assert_eq!(is_relative_rb(r, &act, &lambda).unwrap(), is_rota_baxter(r, &g, &lambda).unwrap());
            }
        }
        let ind = induced_structures(&scalar_op(&g, int(0)), &act, &int(0)).unwrap();
        assert!(ind.algebra.mu().is_zero());
        let lambda = int(2);
        let r = scalar_op(&g, -lambda.clone());
        let ind = induced_structures(&r, &act, &lambda).unwrap();
        assert_eq!(*ind.algebra.mu(), rb_deformed_bracket(&r, &g, &lambda).unwrap());
    }

    #[test]
    fn morphism_mc_residual() {
        let g = fixture_b();
        let id = scalar_op(&g, int(1));
        let dgla = Dgla::Morphism { source: g.clone(), target: g.clone() };
        assert!(mc_residual(id.as_cochain(), &dgla).unwrap().is_zero());
        let derived = Dgla::Derived { algebra: g.clone(), lambda: int(1) };
        assert!(mc_residual(scalar_op(&g, int(0)).as_cochain(), &derived).unwrap().is_zero());
        let two = scalar_op(&g, int(2));
        assert!(!mc_residual(two.as_cochain(), &dgla).unwrap().is_zero());
    }

    #[test]
    fn bounded_search_respects_value_set() {
        let g = fixture_b();
        let ops = bounded_operators(g.space(), g.space(), &[int(-1), int(0), int(1)]);
        assert_eq!(ops.len(), 243);
        let found = search_nijenhuis(&g, &[int(-1), int(0), int(1)]).unwrap();
        assert!(found.len() >= 3);
    }
}
