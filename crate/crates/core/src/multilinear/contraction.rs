//! Insertion of one cochain into the leading slots of another.

use super::cochain::{Cochain, Sparse};
use super::shuffle::shuffles;
use super::space::same_space;
use crate::algebra_core::{Scalar, Vector};
use crate::error::{Error, Result};

/// (f ⊳ Q)(x…) = Σ_{Sh(m,n−1)} sign · Q(f(x_σ(1..m)), τ^{m−1}x_σ(m+1)…)
/// where f: Λᵐ X → X, Q: Λⁿ X → Y and τ is the twist of X.
pub fn insert(f: &Cochain, q: &Cochain) -> Result<Cochain> {
    if !same_space(f.domain(), f.codomain()) || !same_space(f.codomain(), q.domain()) {
        return Err(Error::SpaceMismatch);
    }
    let space = q.domain().clone();
    let (m, n) = (f.arity(), q.arity());
    let sizes = [m, n - 1];
    let all = shuffles(&sizes);
    let twist = space.power(m - 1);
    let cols: Vec<Sparse> = (0..space.dim()).map(|i| twist.column(i).support()).collect();
    let cod = q.codomain().dim();
    Ok(Cochain::from_fn(m + n - 1, space.clone(), q.codomain().clone(), |t| {
        let mut acc = Vector::zeros(cod);
        let mut head = Vec::with_capacity(m);
        for sh in all.iter() {
            head.clear();
            head.extend(sh.block(&sizes, 0).iter().map(|&p| t[p]));
            let inner = f.value(&head).support();
            if inner.is_empty() {
                continue;
            }
            let mut args: Vec<&[(usize, Scalar)]> = Vec::with_capacity(n);
            args.push(&inner);
            args.extend(sh.block(&sizes, 1).iter().map(|&p| cols[t[p]].as_slice()));
            let v = q.eval_sparse(&args);
            if sh.sign.is_minus() {
                acc -= &v;
            } else {
                acc += &v;
            }
        }
        acc
    }))
}

/// i_P Q for P, Q ∈ C(𝔤,𝔤).
pub fn contract(p: &Cochain, q: &Cochain) -> Result<Cochain> {
    if !same_space(q.domain(), q.codomain()) {
        return Err(Error::SpaceMismatch);
    }
    insert(p, q)
}

/// ĩ_f P for f ∈ C(𝔥,𝔥) and P ∈ C(𝔥,𝔤).
pub fn contract_mixed(f: &Cochain, p: &Cochain) -> Result<Cochain> {
    insert(f, p)
}
