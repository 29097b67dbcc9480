//! Truncated deformations φ₀ + tφ₁ + … + t^Nφ_N of a Hom-Lie algebra morphism.

use serde::Serialize;

use crate::algebra_core::{frac, Vector};
use crate::brackets::cup_bracket;
use crate::differentials::{d_phi, CochainComplexSpec, ComplexElement, ComplexKind};
use crate::error::{Error, Result};
use crate::hom_structures::HomMorphism;
use crate::multilinear::{same_space, Cochain};
use crate::operators::PairWitness;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismDeformation {
    base: HomMorphism,
    /// terms[0] = φ.
    terms: Vec<Cochain>,
}

/// Ob = −½ Σ_{i+j=N+1, i,j≥1} [φᵢ,φⱼ]_C together with its class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionClass {
    pub cocycle: Cochain,
    pub is_coboundary: bool,
    /// ψ with D_φ ψ = Ob when the class vanishes.
    pub preimage: Option<Cochain>,
}

impl MorphismDeformation {
    /// φ plus higher terms φ₁…φ_N, each a compatible map 𝔤 → 𝔥.
    pub fn new(base: HomMorphism, higher: Vec<Cochain>) -> Result<Self> {
        if let Some(w) = base.failure() {
            return Err(Error::NotMorphism(w));
        }
        let (g, h) = (base.source().space(), base.target().space());
        for (k, t) in higher.iter().enumerate() {
            if t.arity() != 1 || !same_space(t.domain(), g) || !same_space(t.codomain(), h) {
                return Err(Error::InvalidDeformation(format!("term {} is not a map 𝔤 → 𝔥", k + 1)));
            }
            if !t.is_compatible() {
                return Err(Error::InvalidDeformation(format!("term {} does not intertwine the twists", k + 1)));
            }
        }
        let mut terms = vec![base.as_cochain()];
        terms.extend(higher);
        Ok(MorphismDeformation { base, terms })
    }

    pub fn base(&self) -> &HomMorphism {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn terms(&self) -> &[Cochain] {
        &self.terms
    }

    /// First order n and basis pair where φ_n[x,y] ≠ Σ_{i+j=n}[φᵢx, φⱼy].
    pub fn order_failure(&self) -> Option<(usize, PairWitness)> {
        let g = self.base.source();
        let h = self.base.target();
        let d = g.dim();
        let mats: Vec<_> = self.terms.iter().map(|t| t.to_matrix().expect("arity one")).collect();
        for n in 0..=self.order() {
            for i in 0..d {
                for j in i + 1..d {
                    let lhs = mats[n].mul_vec(g.mu().value(&[i, j]));
                    let mut rhs = Vector::zeros(h.dim());
                    for a in 0..=n {
                        rhs += &h.bracket(&mats[a].column(i), &mats[n - a].column(j));
                    }
                    if lhs != rhs {
                        return Some((n, PairWitness { pair: (i, j), lhs, rhs }));
                    }
                }
            }
        }
        None
    }

    fn complex(&self) -> Result<CochainComplexSpec> {
        CochainComplexSpec::new(ComplexKind::MorphismTwisted(self.base.clone()))
    }
}

pub fn check_order_deformation(d: &MorphismDeformation) -> bool {
    d.order_failure().is_none()
}

fn obstruction_cocycle(d: &MorphismDeformation) -> Result<Cochain> {
    let target = d.base.target();
    let next = d.order() + 1;
    let mut sum = Cochain::zero(2, d.base.source().space().clone(), target.space().clone());
    for i in 1..next {
        sum = &sum + &cup_bracket(&d.terms[i], &d.terms[next - i], target)?;
    }
    Ok(sum.scale(&frac(-1, 2)))
}

pub fn obstruction(d: &MorphismDeformation) -> Result<ObstructionClass> {
    if let Some((n, w)) = d.order_failure() {
        return Err(Error::InvalidDeformation(format!("order-{n} equation fails at basis pair ({}, {})", w.pair.0 + 1, w.pair.1 + 1)));
    }
    let cocycle = obstruction_cocycle(d)?;
    if !d_phi(&cocycle, &d.base)?.is_zero() {
        return Err(Error::Inconsistent("obstruction is not a D_φ-cocycle".into()));
    }
    let preimage = match d.complex()?.is_coboundary(&cocycle)? {
        Some(ComplexElement::Cochain(p)) => Some(p),
        Some(ComplexElement::Degree0(_)) | None => None,
    };
    Ok(ObstructionClass { cocycle, is_coboundary: preimage.is_some(), preimage })
}

/// Order N+1 deformation with D_φ(φ_{N+1}) = Ob, or `None` if the obstruction class is nonzero.
pub fn extend(d: &MorphismDeformation) -> Result<Option<MorphismDeformation>> {
    let ob = obstruction(d)?;
    let Some(next) = ob.preimage else {
        return Ok(None);
    };
    let mut terms = d.terms.clone();
    terms.push(next);
    let out = MorphismDeformation { base: d.base.clone(), terms };
    if let Some((n, w)) = out.order_failure() {
        return Err(Error::Inconsistent(format!(
            "extension fails the order-{n} equation at basis pair ({}, {})",
            w.pair.0 + 1,
            w.pair.1 + 1
        )));
    }
    Ok(Some(out))
}

/// One step of iterated extension, for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionStep {
    pub order: usize,
    pub obstruction_is_cocycle: bool,
    pub obstruction_is_zero: bool,
    pub extended: bool,
}

/// Extends repeatedly up to `to_order`, stopping at the first nonzero obstruction class.
pub fn extend_to(d: &MorphismDeformation, to_order: usize) -> Result<(MorphismDeformation, Vec<ExtensionStep>)> {
    let mut current = d.clone();
    let mut steps = Vec::new();
    while current.order() < to_order {
        let ob = obstruction(&current)?;
        let order = current.order() + 1;
        let zero = ob.cocycle.is_zero();
        match extend(&current)? {
            Some(next) => {
                steps.push(ExtensionStep { order, obstruction_is_cocycle: true, obstruction_is_zero: zero, extended: true });
                current = next;
            }
            None => {
                steps.push(ExtensionStep { order, obstruction_is_cocycle: true, obstruction_is_zero: zero, extended: false });
                break;
            }
        }
    }
    Ok((current, steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::{int, Mat};
    use crate::hom_structures::{fixture_b, HomLieAlgebra};
    use crate::multilinear::compatibility_basis;

    fn identity_of(g: &HomLieAlgebra) -> HomMorphism {
        HomMorphism::new(g.clone(), g.clone(), Mat::identity(g.dim())).unwrap()
    }

    #[test]
    fn order_zero_is_the_morphism() {
        let g = fixture_b();
        let d = MorphismDeformation::new(identity_of(&g), vec![]).unwrap();
        assert!(check_order_deformation(&d));
        assert_eq!(d.order(), 0);
    }

    #[test]
    fn zero_terms_extend_by_zero() {
        let g = fixture_b();
        let zero = Cochain::zero(1, g.space().clone(), g.space().clone());
        let d = MorphismDeformation::new(identity_of(&g), vec![zero]).unwrap();
        let ob = obstruction(&d).unwrap();
        assert!(ob.cocycle.is_zero() && ob.is_coboundary);
        let (ext, steps) = extend_to(&d, 4).unwrap();
        assert_eq!(ext.order(), 4);
        assert!(steps.iter().all(|s| s.extended));
        assert!(check_order_deformation(&ext));
    }

    #[test]
    fn corrupted_first_order_term_fails() {
        let g = fixture_b();
        let phi = identity_of(&g);
        let spec = CochainComplexSpec::new(ComplexKind::MorphismTwisted(phi.clone())).unwrap();
        let basis = spec.cochain_basis(1);
        let cocycle = basis.iter().find(|b| d_phi(b, &phi).unwrap().is_zero());
        let broken = basis.iter().find(|b| !d_phi(b, &phi).unwrap().is_zero()).unwrap();
        if let Some(c) = cocycle {
            assert!(check_order_deformation(&MorphismDeformation::new(phi.clone(), vec![c.clone()]).unwrap()));
        }
        let d = MorphismDeformation::new(phi, vec![broken.clone()]).unwrap();
        let (n, _) = d.order_failure().unwrap();
        assert_eq!(n, 1);
        assert!(matches!(obstruction(&d), Err(Error::InvalidDeformation(_))));
    }

    #[test]
    fn incompatible_term_rejected() {
        let g = fixture_b();
        let bad =
            Cochain::from_linear_map(g.space().clone(), g.space().clone(), &Mat::from_int_rows(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]))
                .unwrap();
        assert!(MorphismDeformation::new(identity_of(&g), vec![bad]).is_err());
        let ok = compatibility_basis(g.space(), g.space(), 1)[0].scale(&int(0));
        assert!(MorphismDeformation::new(identity_of(&g), vec![ok]).is_ok());
    }
}
