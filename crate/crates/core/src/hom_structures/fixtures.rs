//! Example algebras used by tests, the CLI and the identity suite.

use num_traits::One;

use super::{yau_twist, HomLieAlgebra, RawHomStructure};
use crate::algebra_core::{frac, int, Mat, Scalar, Vector};
use crate::error::{Error, Result};
use crate::multilinear::TwistedSpace;

/// Multiplicative fixtures run by default in the identity suite.
/// Default fixtures for the identity suite.
pub const FIXTURE_NAMES: [&str; 5] = ["abelian2", "fixture-b", "fixture-b-alt", "yau-sl2", "yau-heis4"];

fn labels(names: &[&str]) -> Option<Vec<String>> {
    Some(names.iter().map(|s| s.to_string()).collect())
}

fn v(entries: Vec<Scalar>) -> Vector {
    Vector::new(entries)
}

/// Jackson sl₂ on the basis (e, h, f): [h,e] = 2e, [e,f] = (1+q)/2·h, [h,f] = −2q·f,
/// α = diag(q, q, q²). Multiplicative only for q ∈ {0, 1}.
pub fn fixture_jackson_sl2(q: &Scalar) -> RawHomStructure {
    let z = int(0);
    let alpha = Mat::diagonal(&[q.clone(), q.clone(), q * q]);
    let space = TwistedSpace::with_labels(alpha, labels(&["e", "h", "f"])).expect("square");
    let half = (Scalar::one() + q) * frac(1, 2);
    RawHomStructure::from_brackets(
        space,
        &[
            (0, 1, v(vec![int(-2), z.clone(), z.clone()])),
            (0, 2, v(vec![z.clone(), half, z.clone()])),
            (1, 2, v(vec![z.clone(), z, -(q * int(2))])),
        ],
    )
    .expect("well-formed table")
}

/// [e₁,e₂] = a e₁ + b e₃, [e₁,e₃] = c e₂, [e₂,e₃] = d e₁ + 2a e₃, α = diag(1, 2, 2).
pub fn fixture_3dim(a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar) -> RawHomStructure {
    let z = int(0);
    let alpha = Mat::diagonal(&[int(1), int(2), int(2)]);
    let space = TwistedSpace::new(alpha).expect("square");
    RawHomStructure::from_brackets(
        space,
        &[
            (0, 1, v(vec![a.clone(), z.clone(), b.clone()])),
            (0, 2, v(vec![z.clone(), c.clone(), z.clone()])),
            (1, 2, v(vec![d.clone(), z, a * int(2)])),
        ],
    )
    .expect("well-formed table")
}

/// The multiplicative member a = d = 0, b = c = 1 of the three-dimensional family.
pub fn fixture_b() -> HomLieAlgebra {
    fixture_3dim(&int(0), &int(1), &int(1), &int(0)).into_algebra().expect("fixture B is a Hom-Lie algebra")
}

/// Zero bracket, identity twist.
pub fn abelian(dim: usize) -> HomLieAlgebra {
    let space = TwistedSpace::untwisted(dim);
    RawHomStructure::from_brackets(space, &[]).and_then(RawHomStructure::into_algebra).expect("abelian")
}

/// Classical sl₂ on (e, h, f).
pub fn sl2_lie() -> HomLieAlgebra {
    fixture_jackson_sl2(&int(1)).into_algebra().expect("sl2 is a Lie algebra")
}

/// Heisenberg [x,y] = z plus a central w, untwisted.
pub fn heisenberg4_lie() -> HomLieAlgebra {
    let space = TwistedSpace::with_labels(Mat::identity(4), labels(&["x", "y", "z", "w"])).expect("square");
    HomLieAlgebra::from_brackets(space, &[(0, 1, Vector::from_ints(&[0, 0, 1, 0]))]).expect("Heisenberg")
}

/// sl₂ twisted by the automorphism diag(2, 1, 1/2).
pub fn yau_sl2() -> HomLieAlgebra {
    yau_twist(sl2_lie().mu(), &Mat::diagonal(&[int(2), int(1), frac(1, 2)])).expect("diagonal automorphism")
}

/// Heisenberg twisted by the non-diagonal endomorphism x↦x, y↦x+y, z↦z, w↦w+z.
pub fn yau_heis4() -> HomLieAlgebra {
    let a = Mat::from_int_rows(&[&[1, 1, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 1], &[0, 0, 0, 1]]);
    yau_twist(heisenberg4_lie().mu(), &a).expect("endomorphism of the Heisenberg algebra")
}

pub fn named_fixture(name: &str) -> Result<RawHomStructure> {
    let alg = match name {
        "abelian2" => abelian(2),
        "fixture-b" => fixture_b(),
        // another multiplicative member of the same family
        "fixture-b-alt" => fixture_3dim(&int(0), &int(3), &frac(-1, 2), &int(0)).into_algebra()?,
        "yau-sl2" => yau_sl2(),
        "yau-heis4" => yau_heis4(),
        "sl2" => sl2_lie(),
        _ => return Err(Error::Parse(format!("unknown fixture {name:?}"))),
    };
    Ok(alg.raw().clone())
}
