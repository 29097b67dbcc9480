//! Graded brackets on cochains: Nijenhuis-Richardson, cup, Frölicher-Nijenhuis and derived,
//! the maps θ and θ̃, and the brackets on pairs (P, E).
//!
//! Degree conventions: NR uses arity − 1, every other bracket uses arity.

use crate::algebra_core::{Scalar, Vector};
use crate::differentials::delta_hom_unchecked;
use crate::error::{Error, Result};
use crate::hom_structures::{HomLieAlgebra, Representation};
use crate::multilinear::{contract, insert, same_space, shuffles, Cochain, Sparse};

/// c + (−1)^e · d.
pub(crate) fn add_signed(c: &Cochain, e: usize, d: &Cochain) -> Cochain {
    if e.is_multiple_of(2) {
        c + d
    } else {
        c - d
    }
}

fn require_endo(alg: &HomLieAlgebra, cs: &[&Cochain]) -> Result<()> {
    for c in cs {
        if !same_space(c.domain(), alg.space()) || !same_space(c.codomain(), alg.space()) {
            return Err(Error::SpaceMismatch);
        }
    }
    Ok(())
}

/// [P,Q]_NR = i_P Q − (−1)^{(m−1)(n−1)} i_Q P.
pub fn nr_bracket(p: &Cochain, q: &Cochain) -> Result<Cochain> {
    if !same_space(p.domain(), q.domain()) {
        return Err(Error::SpaceMismatch);
    }
    let (m, n) = (p.arity(), q.arity());
    Ok(add_signed(&contract(p, q)?, (m - 1) * (n - 1) + 1, &contract(q, p)?))
}

/// Sign treatment of the cup bracket's shuffle sum. Only the identity suite's mutation
/// check uses anything other than `Signed`.
#[doc(hidden)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CupSigns {
    Signed,
    Unsigned,
}

/// [P,Q]_C(x…) = Σ_{Sh(m,n)} sign · [β^{n−1}P(…), β^{m−1}Q(…)]_𝔥 for P, Q ∈ C(𝔤,𝔥).
pub fn cup_bracket(p: &Cochain, q: &Cochain, target: &HomLieAlgebra) -> Result<Cochain> {
    cup_bracket_with(p, q, target, CupSigns::Signed)
}

#[doc(hidden)]
pub fn cup_bracket_with(p: &Cochain, q: &Cochain, target: &HomLieAlgebra, signs: CupSigns) -> Result<Cochain> {
    if !same_space(p.domain(), q.domain()) {
        return Err(Error::SpaceMismatch);
    }
    if !same_space(p.codomain(), target.space()) || !same_space(q.codomain(), target.space()) {
        return Err(Error::SpaceMismatch);
    }
    let (m, n) = (p.arity(), q.arity());
    let beta = target.space();
    let tp = p.post_compose(&beta.power(n - 1), beta.clone());
    let tq = q.post_compose(&beta.power(m - 1), beta.clone());
    let sizes = [m, n];
    let all = shuffles(&sizes);
    let cod = beta.dim();
    let mu = target.mu();
    let mut head = Vec::with_capacity(m);
    let mut tail = Vec::with_capacity(n);
    Ok(Cochain::from_fn(m + n, p.domain().clone(), beta.clone(), |t| {
        let mut acc = Vector::zeros(cod);
        for sh in all.iter() {
            head.clear();
            head.extend(sh.block(&sizes, 0).iter().map(|&i| t[i]));
            tail.clear();
            tail.extend(sh.block(&sizes, 1).iter().map(|&i| t[i]));
            let a: Sparse = tp.value(&head).support();
            if a.is_empty() {
                continue;
            }
            let b: Sparse = tq.value(&tail).support();
            if b.is_empty() {
                continue;
            }
            let v = mu.eval_sparse(&[&a, &b]);
            if signs == CupSigns::Signed && sh.sign.is_minus() {
                acc -= &v;
            } else {
                acc += &v;
            }
        }
        acc
    }))
}

/// θf = −i_f μ.
pub fn theta(f: &Cochain, alg: &HomLieAlgebra) -> Result<Cochain> {
    require_endo(alg, &[f])?;
    Ok(-&insert(f, alg.mu())?)
}

/// [P,Q]_FN = [P,Q]_C + (−1)^m i_{δP} Q − (−1)^{(m+1)n} i_{δQ} P with adjoint δ.
pub fn fn_bracket(p: &Cochain, q: &Cochain, alg: &HomLieAlgebra) -> Result<Cochain> {
    require_endo(alg, &[p, q])?;
    let (m, n) = (p.arity(), q.arity());
    let ad = alg.adjoint();
    let dp = delta_hom_unchecked(p, &ad);
    let dq = delta_hom_unchecked(q, &ad);
    let cup = cup_bracket(p, q, alg)?;
    let with_p = add_signed(&cup, m, &insert(&dp, q)?);
    Ok(add_signed(&with_p, (m + 1) * n + 1, &insert(&dq, p)?))
}

/// [P,Q]_D = [P,Q]_C + i_{θP} Q − (−1)^{mn} i_{θQ} P.
pub fn derived_bracket(p: &Cochain, q: &Cochain, alg: &HomLieAlgebra) -> Result<Cochain> {
    require_endo(alg, &[p, q])?;
    let (m, n) = (p.arity(), q.arity());
    let cup = cup_bracket(p, q, alg)?;
    let with_p = &cup + &insert(&theta(p, alg)?, q)?;
    Ok(add_signed(&with_p, m * n + 1, &insert(&theta(q, alg)?, p)?))
}

fn require_relative(rep: &Representation, cs: &[&Cochain]) -> Result<()> {
    for c in cs {
        if !same_space(c.domain(), rep.module()) || !same_space(c.codomain(), rep.algebra().space()) {
            return Err(Error::SpaceMismatch);
        }
    }
    Ok(())
}

/// (θ̃P)(h₁…h_{n+1}) = Σᵢ (−1)^{n+i} P(…ĥᵢ…) ⋄ β^{n−1}hᵢ for P ∈ C(𝔥,𝔤).
pub fn theta_tilde(p: &Cochain, rep: &Representation) -> Result<Cochain> {
    require_relative(rep, &[p])?;
    let n = p.arity();
    let module = rep.module().clone();
    let twist = module.power(n - 1);
    let action = rep.action();
    let mut rest = Vec::with_capacity(n);
    Ok(Cochain::from_fn(n + 1, module.clone(), module.clone(), |t| {
        let mut acc = Vector::zeros(module.dim());
        for i in 0..=n {
            rest.clear();
            rest.extend(t.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, &x)| x));
            let v = action.apply(p.value(&rest), &twist.column(t[i]));
            // 1-based position i + 1
            if (n + i + 1).is_multiple_of(2) {
                acc += &v;
            } else {
                acc -= &v;
            }
        }
        acc
    }))
}

/// [P,Q]_D^~ = [P,Q]_C + ĩ_{θ̃P} Q − (−1)^{mn} ĩ_{θ̃Q} P, cup taken in 𝔤.
pub fn derived_bracket_rel(p: &Cochain, q: &Cochain, rep: &Representation) -> Result<Cochain> {
    require_relative(rep, &[p, q])?;
    let (m, n) = (p.arity(), q.arity());
    let cup = cup_bracket(p, q, rep.algebra())?;
    let with_p = &cup + &insert(&theta_tilde(p, rep)?, q)?;
    Ok(add_signed(&with_p, m * n + 1, &insert(&theta_tilde(q, rep)?, p)?))
}

/// (P, E) with P ∈ C^{m+1}(𝔤,𝔤), E ∈ C^m(𝔤,𝔥), of degree m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPair {
    upper: Cochain,
    lower: Cochain,
}

impl GradedPair {
    pub fn new(upper: Cochain, lower: Cochain) -> Result<Self> {
        if upper.arity() != lower.arity() + 1 {
            return Err(Error::ArityMismatch { expected: lower.arity() + 1, found: upper.arity() });
        }
        if !same_space(upper.domain(), upper.codomain()) || !same_space(upper.domain(), lower.domain()) {
            return Err(Error::SpaceMismatch);
        }
        Ok(GradedPair { upper, lower })
    }

    pub fn upper(&self) -> &Cochain {
        &self.upper
    }

    pub fn lower(&self) -> &Cochain {
        &self.lower
    }

    pub fn degree(&self) -> usize {
        self.lower.arity()
    }

    pub fn is_zero(&self) -> bool {
        self.upper.is_zero() && self.lower.is_zero()
    }

    pub fn scale(&self, c: &Scalar) -> GradedPair {
        GradedPair { upper: self.upper.scale(c), lower: self.lower.scale(c) }
    }

    pub fn add(&self, other: &GradedPair) -> GradedPair {
        GradedPair { upper: &self.upper + &other.upper, lower: &self.lower + &other.lower }
    }
}

/// [(P,E),(Q,F)]_⋉ = ([P,Q]_NR, [E,F]_C + i_P F − (−1)^{mn} i_Q E).
pub fn semidirect_graded_bracket(a: &GradedPair, b: &GradedPair, target: &HomLieAlgebra) -> Result<GradedPair> {
    let (m, n) = (a.degree(), b.degree());
    let upper = nr_bracket(&a.upper, &b.upper)?;
    let cup = cup_bracket(&a.lower, &b.lower, target)?;
    let lower = add_signed(&(&cup + &insert(&a.upper, &b.lower)?), m * n + 1, &insert(&b.upper, &a.lower)?);
    GradedPair::new(upper, lower)
}

/// ⟦(P,E),(Q,F)⟧ = ([P,Q]_NR + [E,Q]_FN − (−1)^{mn}[F,P]_FN, [E,F]_FN + i_P F − (−1)^{mn} i_Q E).
pub fn bicrossed_bracket(a: &GradedPair, b: &GradedPair, alg: &HomLieAlgebra) -> Result<GradedPair> {
    require_endo(alg, &[&a.upper, &a.lower, &b.upper, &b.lower])?;
    let (m, n) = (a.degree(), b.degree());
    let upper = &nr_bracket(&a.upper, &b.upper)? + &fn_bracket(&a.lower, &b.upper, alg)?;
    let upper = add_signed(&upper, m * n + 1, &fn_bracket(&b.lower, &a.upper, alg)?);
    let lower = &fn_bracket(&a.lower, &b.lower, alg)? + &insert(&a.upper, &b.lower)?;
    let lower = add_signed(&lower, m * n + 1, &insert(&b.upper, &a.lower)?);
    GradedPair::new(upper, lower)
}

/// Ψ(P,E) = (P + (−1)^m δE, E), carrying ⟦,⟧ to [,]_⋉.
pub fn bicrossed_to_semidirect(a: &GradedPair, alg: &HomLieAlgebra) -> Result<GradedPair> {
    require_endo(alg, &[&a.upper, &a.lower])?;
    let de = delta_hom_unchecked(&a.lower, &alg.adjoint());
    GradedPair::new(add_signed(&a.upper, a.degree(), &de), a.lower.clone())
}

/// ρ(P)E = i_P E.
pub fn rho_action(p: &Cochain, e: &Cochain) -> Result<Cochain> {
    insert(p, e)
}

/// ψ(E)P = [E,P]_FN.
pub fn psi_action(e: &Cochain, p: &Cochain, alg: &HomLieAlgebra) -> Result<Cochain> {
    fn_bracket(e, p, alg)
}
