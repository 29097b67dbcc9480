//! Slow reference formulas used to cross-check the fast bracket code.
//!
//! Shuffles come from filtering every permutation of S_n, signs from counting
//! inversions, and cochains are evaluated by full multilinear expansion. Nothing
//! here touches the memoized shuffle tables or the contraction routines.

use crate::algebra_core::{Scalar, Vector};
use crate::hom_structures::HomLieAlgebra;
use crate::multilinear::Cochain;

/// All permutations of 0..n in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Signature of a permutation, as ±1.
pub fn signature(perm: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Shuffles for consecutive blocks of the given sizes, with signs.
pub fn shuffles(sizes: &[usize]) -> Vec<(Vec<usize>, i64)> {
    let n: usize = sizes.iter().sum();
    permutations(n)
        .into_iter()
        .filter(|p| {
            let mut start = 0;
            sizes.iter().all(|&s| {
                let ok = p[start..start + s].windows(2).all(|w| w[0] < w[1]);
                start += s;
                ok
            })
        })
        .map(|p| {
            let s = signature(&p);
            (p, s)
        })
        .collect()
}

fn twist(alg_alpha: &crate::algebra_core::Mat, k: usize, v: &Vector) -> Vector {
    let mut out = v.clone();
    for _ in 0..k {
        out = alg_alpha.mul_vec(&out);
    }
    out
}

fn eval(f: &Cochain, args: &[Vector]) -> Vector {
    f.evaluate(args).expect("argument count matches arity")
}

fn accumulate(acc: &mut Vector, sign: i64, v: &Vector) {
    acc.add_scaled(&Scalar::from_integer(sign.into()), v);
}

fn basis_args(dim: usize, t: &[usize]) -> Vec<Vector> {
    t.iter().map(|&i| Vector::basis(dim, i)).collect()
}

/// [αx,[y,z]] + [αy,[z,x]] + [αz,[x,y]] for the bracket `mu` and twist `alpha`.
pub fn hom_jacobiator(mu: &Cochain) -> Cochain {
    let space = mu.domain().clone();
    let alpha = space.alpha().clone();
    let d = space.dim();
    Cochain::from_fn(3, space.clone(), space, |t| {
        let x = basis_args(d, t);
        let br = |a: &Vector, b: &Vector| eval(mu, &[a.clone(), b.clone()]);
        let mut acc = Vector::zeros(d);
        for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            acc += &br(&twist(&alpha, 1, &x[a]), &br(&x[b], &x[c]));
        }
        acc
    })
}

/// δ_Hom with adjoint coefficients, straight from the two-sum definition.
pub fn delta_hom_adjoint(f: &Cochain, alg: &HomLieAlgebra) -> Cochain {
    let n = f.arity();
    let alpha = alg.alpha().clone();
    let d = alg.dim();
    Cochain::from_fn(n + 1, alg.space().clone(), alg.space().clone(), |t| {
        let x = basis_args(d, t);
        let mut acc = Vector::zeros(d);
        for i in 0..=n {
            let rest: Vec<Vector> = (0..=n).filter(|&k| k != i).map(|k| x[k].clone()).collect();
            let term = alg.bracket(&twist(&alpha, n - 1, &x[i]), &eval(f, &rest));
            // positions are 1-based in the sign: (−1)^{(i+1)+1}
            accumulate(&mut acc, if i % 2 == 0 { 1 } else { -1 }, &term);
        }
        for i in 0..=n {
            for j in i + 1..=n {
                let mut args = vec![alg.bracket(&x[i], &x[j])];
                args.extend((0..=n).filter(|&k| k != i && k != j).map(|k| twist(&alpha, 1, &x[k])));
                accumulate(&mut acc, if (i + j) % 2 == 0 { 1 } else { -1 }, &eval(f, &args));
            }
        }
        acc
    })
}

/// [P,Q]_C into the bracket of `target`.
pub fn cup(p: &Cochain, q: &Cochain, target: &HomLieAlgebra) -> Cochain {
    let (m, n) = (p.arity(), q.arity());
    let beta = target.alpha().clone();
    let d = p.domain().dim();
    let sh = shuffles(&[m, n]);
    Cochain::from_fn(m + n, p.domain().clone(), target.space().clone(), |t| {
        let x = basis_args(d, t);
        let mut acc = Vector::zeros(target.dim());
        for (s, sign) in &sh {
            let pa: Vec<Vector> = s[..m].iter().map(|&k| x[k].clone()).collect();
            let qa: Vec<Vector> = s[m..].iter().map(|&k| x[k].clone()).collect();
            let term = target.bracket(&twist(&beta, n - 1, &eval(p, &pa)), &twist(&beta, m - 1, &eval(q, &qa)));
            accumulate(&mut acc, *sign, &term);
        }
        acc
    })
}

/// Σ_{Sh(m,n−1)} ± Q(f(x_σ…), α^{m−1}x…).
pub fn insert(f: &Cochain, q: &Cochain) -> Cochain {
    let (m, n) = (f.arity(), q.arity());
    let alpha = f.domain().alpha().clone();
    let d = f.domain().dim();
    let sh = shuffles(&[m, n - 1]);
    Cochain::from_fn(m + n - 1, f.domain().clone(), q.codomain().clone(), |t| {
        let x = basis_args(d, t);
        let mut acc = Vector::zeros(q.codomain().dim());
        for (s, sign) in &sh {
            let inner: Vec<Vector> = s[..m].iter().map(|&k| x[k].clone()).collect();
            let mut args = vec![eval(f, &inner)];
            args.extend(s[m..].iter().map(|&k| twist(&alpha, m - 1, &x[k])));
            accumulate(&mut acc, *sign, &eval(q, &args));
        }
        acc
    })
}

/// θf = Σᵢ (−1)^{n+i} [f(x̂ᵢ), α^{n−1}xᵢ].
pub fn theta(f: &Cochain, alg: &HomLieAlgebra) -> Cochain {
    let n = f.arity();
    let alpha = alg.alpha().clone();
    let d = alg.dim();
    Cochain::from_fn(n + 1, alg.space().clone(), alg.space().clone(), |t| {
        let x = basis_args(d, t);
        let mut acc = Vector::zeros(d);
        for i in 0..=n {
            let rest: Vec<Vector> = (0..=n).filter(|&k| k != i).map(|k| x[k].clone()).collect();
            let term = alg.bracket(&eval(f, &rest), &twist(&alpha, n - 1, &x[i]));
            accumulate(&mut acc, if (n + i + 1).is_multiple_of(2) { 1 } else { -1 }, &term);
        }
        acc
    })
}

/// The three-sum expansion of [P,Q]_FN, with δ_Hom taken from [`delta_hom_adjoint`].
pub fn fn_explicit(p: &Cochain, q: &Cochain, alg: &HomLieAlgebra) -> Cochain {
    let (m, n) = (p.arity(), q.arity());
    let alpha = alg.alpha().clone();
    let d = alg.dim();
    let dp = delta_hom_adjoint(p, alg);
    let dq = delta_hom_adjoint(q, alg);
    let sh_c = shuffles(&[m, n]);
    let sh_p = shuffles(&[m + 1, n - 1]);
    let sh_q = shuffles(&[n + 1, m - 1]);
    let sign_p: i64 = if m % 2 == 0 { 1 } else { -1 };
    let sign_q: i64 = if ((m + 1) * n) % 2 == 0 { -1 } else { 1 };
    Cochain::from_fn(m + n, alg.space().clone(), alg.space().clone(), |t| {
        let x = basis_args(d, t);
        let pick = |idx: &[usize]| -> Vec<Vector> { idx.iter().map(|&k| x[k].clone()).collect() };
        let mut acc = Vector::zeros(d);
        for (s, sign) in &sh_c {
            let term = alg.bracket(&twist(&alpha, n - 1, &eval(p, &pick(&s[..m]))), &twist(&alpha, m - 1, &eval(q, &pick(&s[m..]))));
            accumulate(&mut acc, *sign, &term);
        }
        for (s, sign) in &sh_p {
            let mut args = vec![eval(&dp, &pick(&s[..=m]))];
            args.extend(s[m + 1..].iter().map(|&k| twist(&alpha, m, &x[k])));
            accumulate(&mut acc, sign * sign_p, &eval(q, &args));
        }
        for (s, sign) in &sh_q {
            let mut args = vec![eval(&dq, &pick(&s[..=n]))];
            args.extend(s[n + 1..].iter().map(|&k| twist(&alpha, n, &x[k])));
            accumulate(&mut acc, sign * sign_q, &eval(p, &args));
        }
        acc
    })
}

/// The expansion of [P,Q]_D over Sh(m,n), Sh(m,1,n−1) and Sh(n,1,m−1).
pub fn derived_explicit(p: &Cochain, q: &Cochain, alg: &HomLieAlgebra) -> Cochain {
    let (m, n) = (p.arity(), q.arity());
    let alpha = alg.alpha().clone();
    let d = alg.dim();
    let sh_c = shuffles(&[m, n]);
    let sh_p = shuffles(&[m, 1, n - 1]);
    let sh_q = shuffles(&[n, 1, m - 1]);
    let sign_q: i64 = if (m * n) % 2 == 0 { 1 } else { -1 };
    Cochain::from_fn(m + n, alg.space().clone(), alg.space().clone(), |t| {
        let x = basis_args(d, t);
        let pick = |idx: &[usize]| -> Vec<Vector> { idx.iter().map(|&k| x[k].clone()).collect() };
        let mut acc = Vector::zeros(d);
        for (s, sign) in &sh_c {
            let term = alg.bracket(&twist(&alpha, n - 1, &eval(p, &pick(&s[..m]))), &twist(&alpha, m - 1, &eval(q, &pick(&s[m..]))));
            accumulate(&mut acc, *sign, &term);
        }
        for (s, sign) in &sh_p {
            let inner = alg.bracket(&eval(p, &pick(&s[..m])), &twist(&alpha, m - 1, &x[s[m]]));
            let mut args = vec![inner];
            args.extend(s[m + 1..].iter().map(|&k| twist(&alpha, m, &x[k])));
            accumulate(&mut acc, -sign, &eval(q, &args));
        }
        for (s, sign) in &sh_q {
            let inner = alg.bracket(&eval(q, &pick(&s[..n])), &twist(&alpha, n - 1, &x[s[n]]));
            let mut args = vec![inner];
            args.extend(s[n + 1..].iter().map(|&k| twist(&alpha, n, &x[k])));
            accumulate(&mut acc, sign * sign_q, &eval(p, &args));
        }
        acc
    })
}
