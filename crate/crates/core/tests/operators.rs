//! Operator checks against each other and against hand-computed cases.

use homlie::algebra_core::{frac, int, Mat, Scalar};
use homlie::hom_structures::{named_fixture, HomLieAlgebra};
use homlie::multilinear::{combine, compatibility_basis};
use homlie::operators::{deformed_bracket_n, is_nijenhuis, is_relative_rb, is_rota_baxter, rb_deformed_bracket, LinearOperator};
use proptest::prelude::*;

const NAMES: [&str; 4] = ["fixture-b", "fixture-b-alt", "yau-sl2", "yau-heis4"];

fn algebra(k: usize) -> HomLieAlgebra {
    named_fixture(NAMES[k]).unwrap().into_algebra().unwrap()
}

fn operator(g: &HomLieAlgebra, coeffs: &[i64]) -> LinearOperator {
    let basis = compatibility_basis(g.space(), g.space(), 1);
    let c: Vec<Scalar> = (0..basis.len()).map(|i| int(coeffs[i % coeffs.len()])).collect();
    LinearOperator::try_from(combine(&basis, &c, 1, g.space(), g.space())).unwrap()
}

fn weight(k: usize) -> Scalar {
    [int(0), int(1), int(2), frac(-1, 2)][k].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The adjoint action turns relative Rota-Baxter operators into ordinary ones.
    #[test]
    fn relative_on_adjoint_is_plain(k in 0usize..4, w in 0usize..4, coeffs in proptest::collection::vec(-1i64..=1, 1..8)) {
        let g = algebra(k);
        let r = operator(&g, &coeffs);
        let l = weight(w);
        prop_assert_eq!(is_relative_rb(&r, &g.adjoint_action(), &l).unwrap(), is_rota_baxter(&r, &g, &l).unwrap());
    }

    /// R of weight λ ⇔ −λ − R of weight λ.
    #[test]
    fn rota_baxter_reflection(k in 0usize..4, w in 0usize..4, coeffs in proptest::collection::vec(-1i64..=1, 1..8)) {
        let g = algebra(k);
        let r = operator(&g, &coeffs);
        let l = weight(w);
        let reflected = Mat::identity(g.dim()).scale(&-&l);
        let reflected = LinearOperator::on(&g, &(&reflected - &r.matrix())).unwrap();
        prop_assert_eq!(is_rota_baxter(&r, &g, &l).unwrap(), is_rota_baxter(&reflected, &g, &l).unwrap());
    }

    /// N is Nijenhuis iff N + c·id is, for rational c.
    #[test]
    fn nijenhuis_shift_invariant(k in 0usize..4, coeffs in proptest::collection::vec(-1i64..=1, 1..8), c in -3i64..=3) {
        let g = algebra(k);
        let n = operator(&g, &coeffs);
        let shifted = LinearOperator::on(&g, &(&n.matrix() + &Mat::identity(g.dim()).scale(&int(c)))).unwrap();
        prop_assert_eq!(is_nijenhuis(&n, &g).unwrap(), is_nijenhuis(&shifted, &g).unwrap());
    }
}

#[test]
fn scalar_deformed_brackets() {
    let g = algebra(0);
    let c = frac(3, 2);
    let n = LinearOperator::on(&g, &Mat::identity(g.dim()).scale(&c)).unwrap();
    // [x,y]^N = 2c[x,y] − c[x,y] = c[x,y]
    assert_eq!(deformed_bracket_n(&n, &g).unwrap(), g.mu().scale(&c));
    // [x,y]^R = (2c + λ)[x,y]
    let l = int(1);
    assert_eq!(rb_deformed_bracket(&n, &g, &l).unwrap(), g.mu().scale(&(&c * int(2) + &l)));
}

#[test]
fn incompatible_operator_rejected() {
    let g = algebra(0);
    // α = diag(1,2,2): mixing e1 with e2 breaks compatibility
    let m = Mat::from_int_rows(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
    assert!(LinearOperator::on(&g, &m).is_err());
}
