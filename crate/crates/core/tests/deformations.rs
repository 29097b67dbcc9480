//! Extension of morphism deformations across fixtures.

use homlie::algebra_core::{int, kernel_basis, Mat, Scalar};
use homlie::deformations::{check_order_deformation, extend, extend_to, obstruction, MorphismDeformation};
use homlie::differentials::{d_phi, CochainComplexSpec, ComplexKind};
use homlie::hom_structures::{named_fixture, HomLieAlgebra, HomMorphism};
use homlie::multilinear::{combine, Cochain};
use homlie::Error;

fn algebra(name: &str) -> HomLieAlgebra {
    named_fixture(name).unwrap().into_algebra().unwrap()
}

fn identity(g: &HomLieAlgebra) -> HomMorphism {
    HomMorphism::new(g.clone(), g.clone(), Mat::identity(g.dim())).unwrap()
}

/// Basis of Z¹ of the D_φ complex.
fn cocycles(phi: &HomMorphism) -> Vec<Cochain> {
    let spec = CochainComplexSpec::new(ComplexKind::MorphismTwisted(phi.clone())).unwrap();
    let basis = spec.cochain_basis(1);
    let (d, c) = spec.spaces();
    kernel_basis(&spec.matrix(1).unwrap()).iter().map(|k| combine(&basis, k.entries(), 1, &d, &c)).collect()
}

fn h2(phi: &HomMorphism) -> usize {
    let spec = CochainComplexSpec::new(ComplexKind::MorphismTwisted(phi.clone())).unwrap();
    spec.cohomology(2).unwrap().dim_cohomology
}

#[test]
fn rigid_targets_extend_to_order_four() {
    for name in ["yau-sl2", "sl2"] {
        let phi = identity(&algebra(name));
        assert_eq!(h2(&phi), 0, "{name}");
        for z in cocycles(&phi) {
            let d = MorphismDeformation::new(phi.clone(), vec![z]).unwrap();
            let (ext, steps) = extend_to(&d, 4).unwrap();
            assert_eq!(ext.order(), 4, "{name}");
            assert!(steps.iter().all(|s| s.extended && s.obstruction_is_cocycle));
            assert!(check_order_deformation(&ext));
        }
    }
}

#[test]
fn obstructions_are_closed_even_when_nonzero() {
    let g = algebra("yau-heis4");
    let cases = [identity(&g), HomMorphism::new(g.clone(), g.clone(), Mat::zeros(g.dim(), g.dim())).unwrap()];
    let mut blocked = 0;
    for phi in cases {
        assert!(h2(&phi) > 0);
        let z = cocycles(&phi);
        // small integer combinations of the first two cocycles
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                let c: Vec<Scalar> = (0..z.len()).map(|k| int([a, b].get(k).copied().unwrap_or(1))).collect();
                let first = combine(&z, &c, 1, phi.source().space(), phi.target().space());
                let mut d = MorphismDeformation::new(phi.clone(), vec![first]).unwrap();
                while d.order() < 4 {
                    let ob = obstruction(&d).unwrap();
                    assert!(d_phi(&ob.cocycle, &phi).unwrap().is_zero());
                    match extend(&d).unwrap() {
                        Some(next) => {
                            assert!(ob.is_coboundary);
                            assert_eq!(d_phi(next.terms().last().unwrap(), &phi).unwrap(), ob.cocycle);
                            d = next;
                        }
                        None => {
                            assert!(!ob.is_coboundary && !ob.cocycle.is_zero());
                            blocked += 1;
                            break;
                        }
                    }
                }
            }
        }
    }
    assert!(blocked > 0, "expected at least one obstructed deformation");
}

#[test]
fn zero_morphism_into_another_algebra() {
    let (g, h) = (algebra("fixture-b"), algebra("yau-sl2"));
    let zero = HomMorphism::new(g.clone(), h.clone(), Mat::zeros(h.dim(), g.dim())).unwrap();
    assert!(zero.check());
    let d = MorphismDeformation::new(zero, Vec::new()).unwrap();
    let (ext, _) = extend_to(&d, 3).unwrap();
    assert!(check_order_deformation(&ext));
}

#[test]
fn invalid_inputs_are_rejected() {
    let g = algebra("fixture-b");
    let not_morphism = HomMorphism::new(g.clone(), g.clone(), Mat::diagonal(&[int(1), int(2), int(1)])).unwrap();
    assert!(matches!(MorphismDeformation::new(not_morphism, Vec::new()), Err(Error::NotMorphism(_))));
    // diag(1,0,1) intertwines the twists but is not a first-order term
    let bad = Cochain::from_linear_map(g.space().clone(), g.space().clone(), &Mat::diagonal(&[int(1), int(0), int(1)])).unwrap();
    let d = MorphismDeformation::new(identity(&g), vec![bad]).unwrap();
    assert!(!check_order_deformation(&d));
    assert!(matches!(obstruction(&d), Err(Error::InvalidDeformation(_))));
}
