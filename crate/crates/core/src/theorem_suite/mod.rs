//! Randomized exact verification of the bracket, differential and operator identities.
//!
//! Every trial draws integer combinations (coefficients in [−3,3]) of compatibility
//! bases, so samples are genuine Hom-cochains. Each trial owns a ChaCha8 stream
//! keyed by (identity, trial), which makes reports independent of thread scheduling.

pub mod oracle;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::algebra_core::{frac, int, kernel_basis, Scalar};
use crate::brackets::{
    bicrossed_bracket, bicrossed_to_semidirect, cup_bracket, cup_bracket_with, derived_bracket, fn_bracket, nr_bracket, psi_action,
    rho_action, semidirect_graded_bracket, theta, CupSigns, GradedPair,
};
use crate::differentials::{d_lambda, d_r, delta_hom, CochainComplexSpec, ComplexKind};
use crate::error::{Error, Result};
use crate::hom_structures::{doubled_action, doubled_action_operator, HomLieAction, HomLieAlgebra, RawHomStructure, Representation};
use crate::multilinear::{combine, contract, Cochain};
use crate::operators::{
    induced_structures, is_rota_baxter, mc_residual, relative_rb_graph_closed, relative_rb_pointwise, Dgla, LinearOperator,
};

macro_rules! identities {
    ($($variant:ident = $num:literal, $name:literal, $summary:literal;)*) => {
        /// One checkable statement.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum IdentityId {
            $($variant),*
        }

        impl IdentityId {
            pub const ALL: [IdentityId; 24] = [$(IdentityId::$variant),*];

            /// Catalogue number, 1-based.
            pub fn number(self) -> usize {
                match self {
                    $(IdentityId::$variant => $num),*
                }
            }

            pub fn name(self) -> &'static str {
                match self {
                    $(IdentityId::$variant => $name),*
                }
            }

            pub fn summary(self) -> &'static str {
                match self {
                    $(IdentityId::$variant => $summary),*
                }
            }
        }
    };
}

identities! {
    McHomlie = 1, "mc_homlie", "[μ,μ]_NR = −2·(Hom-Jacobi cyclic sum); zero iff Hom-Jacobi";
    NrGradedLie = 2, "nr_graded_lie", "[,]_NR graded skew and Jacobi, degree = arity − 1";
    CupGradedLie = 3, "cup_graded_lie", "[,]_C graded skew and Jacobi";
    CupViaTheta = 4, "cup_via_theta", "[P,Q]_C = (−1)^n (i_P θQ − θ i_P Q)";
    CupViaDelta = 5, "cup_via_delta", "[P,Q]_C = i_P δQ + (−1)^{m−1} i_{δP}Q + (−1)^m δ(i_P Q)";
    DeltaCupDerivation = 6, "delta_cup_derivation", "δ[P,Q]_C = [δP,Q]_C + (−1)^m [P,δQ]_C";
    CupTrivialCohomology = 7, "cup_trivial_cohomology", "cocycles P,Q: [P,Q]_C = δ((−1)^m i_P Q)";
    ThetaCupDerivation = 8, "theta_cup_derivation", "θ[P,Q]_C = (−1)^n [θP,Q]_C + [P,θQ]_C";
    PreLie = 9, "pre_lie", "graded right pre-Lie identity of P⊙Q = i_Q P";
    RhoIsAction = 10, "rho_is_action", "ρ(P) = i_P is an action of the NR algebra on the cup algebra";
    SemidirectJacobi = 11, "semidirect_jacobi", "[,]_⋉ graded skew and Jacobi";
    GraphDeltaClosed = 12, "graph_delta_closed", "δ[P,Q]_FN = [δP,δQ]_NR; Gr((−1)^•δ) closed under [,]_⋉";
    FnGradedLie = 13, "fn_graded_lie", "[,]_FN graded skew and Jacobi";
    FnTwoFormulas = 14, "fn_two_formulas", "defining, explicit and NR forms of [,]_FN agree";
    MatchedPairAxioms = 15, "matched_pair_axioms", "(NR, FN, ρ, ψ) satisfy the four matched-pair identities";
    BicrossedJacobi = 16, "bicrossed_jacobi", "⟦,⟧ graded Lie and Ψ carries it to [,]_⋉";
    GraphThetaClosed = 17, "graph_theta_closed", "θ[P,Q]_D = [θP,θQ]_NR; Gr(θ) closed under [,]_⋉";
    DerivedGradedLie = 18, "derived_graded_lie", "[,]_D graded skew and Jacobi";
    DerivedTwoFormulas = 19, "derived_two_formulas", "defining and explicit forms of [,]_D agree";
    DLambdaDerivation = 20, "d_lambda_derivation", "d_λ = λ(δ + (−1)^{n−1}θ) squares to zero and derives [,]_D";
    ThetaSquared = 21, "theta_squared", "θ²f = (−1)^n (θδ − δθ) f";
    RbLemma = 22, "rb_lemma", "[μ,R]_C = i_{θR}μ and θ(d_λR) = −λ[μ,θR]_NR";
    RelativeConsistency = 23, "relative_consistency", "pointwise, graph and Maurer-Cartan relative Rota-Baxter criteria agree";
    DRMatchesInduced = 24, "d_r_matches_induced", "D_R equals δ_Hom of the induced algebra and representation";
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    /// Accepts the snake_case name or the catalogue number.
    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == s || s.parse::<usize>().ok() == Some(id.number()))
            .ok_or_else(|| Error::Parse(format!("unknown identity '{s}'")))
    }
}

impl Serialize for IdentityId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Deliberate defects used to show that the suite can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mutation {
    /// Drop the shuffle signs from the cup product used by the cup identities.
    UnsignedCup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub trials: usize,
    pub seed: u64,
    pub max_arity: usize,
    pub mutation: Option<Mutation>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { trials: 50, seed: 0, max_arity: 3, mutation: None }
    }
}

/// A failed statement within one trial. `tuple` is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub trial: usize,
    pub stream: u64,
    pub statement: String,
    pub tuple: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub identity: IdentityId,
    pub number: usize,
    pub algebra: String,
    pub trials: usize,
    pub passed: bool,
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub trials: usize,
    pub max_arity: usize,
    pub mutation: Option<Mutation>,
    pub passed: bool,
    pub reports: Vec<VerificationReport>,
}

struct RelativeModel {
    action: HomLieAction,
    bases: CochainComplexSpec,
}

/// An algebra plus memoized bases; share one across identities.
pub struct Context {
    name: String,
    algebra: HomLieAlgebra,
    adjoint: Representation,
    complex: CochainComplexSpec,
    cocycles: Mutex<HashMap<usize, Arc<Vec<Cochain>>>>,
    relative: OnceLock<std::result::Result<RelativeModel, String>>,
}

impl Context {
    pub fn new(name: impl Into<String>, algebra: HomLieAlgebra) -> Self {
        let adjoint = algebra.adjoint();
        let complex = CochainComplexSpec::new(ComplexKind::HomRep(adjoint.clone())).expect("no validation for hom_rep");
        Context { name: name.into(), algebra, adjoint, complex, cocycles: Mutex::new(HashMap::new()), relative: OnceLock::new() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &HomLieAlgebra {
        &self.algebra
    }

    /// Compatibility basis of C^n(𝔤,𝔤).
    pub fn basis(&self, n: usize) -> Arc<Vec<Cochain>> {
        self.complex.cochain_basis(n)
    }

    /// Basis of the δ_Hom-cocycles in C^n(𝔤,𝔤).
    pub fn cocycle_basis(&self, n: usize) -> Result<Arc<Vec<Cochain>>> {
        if let Some(hit) = self.cocycles.lock().expect("cocycle cache poisoned").get(&n) {
            return Ok(hit.clone());
        }
        let basis = self.basis(n);
        let space = self.algebra.space();
        let kernel = kernel_basis(&self.complex.matrix(n)?);
        let fresh: Vec<Cochain> = kernel.iter().map(|k| combine(&basis, k.entries(), n, space, space)).collect();
        Ok(self.cocycles.lock().expect("cocycle cache poisoned").entry(n).or_insert(Arc::new(fresh)).clone())
    }

    /// 𝔤 acting diagonally on 𝔤 ⋉ 𝔤, the non-adjoint action used by the relative identities.
    pub fn relative_action(&self) -> Result<&HomLieAction> {
        self.relative_model().map(|m| &m.action)
    }

    fn relative_model(&self) -> Result<&RelativeModel> {
        self.relative
            .get_or_init(|| {
                let action = doubled_action(&self.algebra).map_err(|e| e.to_string())?;
                let bases =
                    CochainComplexSpec::new(ComplexKind::Relative { action: action.clone(), lambda: int(0) }).map_err(|e| e.to_string())?;
                Ok(RelativeModel { action, bases })
            })
            .as_ref()
            .map_err(|e| Error::Inconsistent(format!("relative model: {e}")))
    }
}

/// Pieces that can be compared and combined in graded identities.
trait Element: Sized {
    fn plus(&self, other: &Self) -> Self;
    fn signed(&self, e: usize) -> Self;
    /// (component, 0-based tuple, lhs, rhs) at the first disagreement.
    fn mismatch(&self, other: &Self) -> Option<(&'static str, Vec<usize>, String, String)>;
}

fn sign(e: usize) -> Scalar {
    if e.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

fn cochain_mismatch(a: &Cochain, b: &Cochain) -> Option<(Vec<usize>, String, String)> {
    if !a.same_shape(b) {
        return Some((Vec::new(), format!("arity {}", a.arity()), format!("arity {}", b.arity())));
    }
    let labels = a.codomain().labels();
    a.first_difference(b).map(|(t, l, r)| (t, l.render(labels), r.render(labels)))
}

impl Element for Cochain {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn signed(&self, e: usize) -> Self {
        if e.is_multiple_of(2) {
            self.clone()
        } else {
            -self
        }
    }

    fn mismatch(&self, other: &Self) -> Option<(&'static str, Vec<usize>, String, String)> {
        cochain_mismatch(self, other).map(|(t, l, r)| ("", t, l, r))
    }
}

impl Element for GradedPair {
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }

    fn signed(&self, e: usize) -> Self {
        self.scale(&sign(e))
    }

    fn mismatch(&self, other: &Self) -> Option<(&'static str, Vec<usize>, String, String)> {
        if let Some((t, l, r)) = cochain_mismatch(self.upper(), other.upper()) {
            return Some(("upper", t, l, r));
        }
        cochain_mismatch(self.lower(), other.lower()).map(|(t, l, r)| ("lower", t, l, r))
    }
}

/// The cup product as seen by the cup identities, honouring the configured mutation.
fn mutated_cup(p: &Cochain, q: &Cochain, alg: &HomLieAlgebra, cfg: &VerifyConfig) -> Result<Cochain> {
    let signs = match cfg.mutation {
        Some(Mutation::UnsignedCup) => CupSigns::Unsigned,
        None => CupSigns::Signed,
    };
    cup_bracket_with(p, q, alg, signs)
}

struct Trial<'a> {
    ctx: &'a Context,
    cfg: &'a VerifyConfig,
    index: usize,
    stream: u64,
    rng: ChaCha8Rng,
    failures: Vec<Failure>,
}

impl<'a> Trial<'a> {
    fn arity(&mut self) -> usize {
        self.rng.gen_range(1..=self.cfg.max_arity.max(1))
    }

    fn coeffs(&mut self, n: usize) -> Vec<Scalar> {
        (0..n).map(|_| int(self.rng.gen_range(-3..=3))).collect()
    }

    fn combination_of(
        &mut self,
        basis: &[Cochain],
        arity: usize,
        dom: &crate::multilinear::Space,
        cod: &crate::multilinear::Space,
    ) -> Cochain {
        let c = self.coeffs(basis.len());
        combine(basis, &c, arity, dom, cod)
    }

    fn cochain(&mut self, arity: usize) -> Cochain {
        let basis = self.ctx.basis(arity);
        let space = self.ctx.algebra.space().clone();
        self.combination_of(&basis, arity, &space, &space)
    }

    fn random(&mut self) -> (Cochain, usize) {
        let a = self.arity();
        (self.cochain(a), a)
    }

    fn cocycle(&mut self, arity: usize) -> Result<Cochain> {
        let basis = self.ctx.cocycle_basis(arity)?;
        let space = self.ctx.algebra.space().clone();
        Ok(self.combination_of(&basis, arity, &space, &space))
    }

    /// (P, E) of degree k: P ∈ C^{k+1}, E ∈ C^k.
    fn pair(&mut self) -> Result<(GradedPair, usize)> {
        let k = self.arity();
        let lower = self.cochain(k);
        let upper = self.cochain(k + 1);
        Ok((GradedPair::new(upper, lower)?, k))
    }

    fn lambda(&mut self) -> Scalar {
        [int(1), int(2), frac(-1, 2), int(0)][self.rng.gen_range(0..4)].clone()
    }

    fn fail(&mut self, statement: String, tuple: Vec<usize>, lhs: String, rhs: String) {
        self.failures.push(Failure {
            trial: self.index,
            stream: self.stream,
            statement,
            tuple: tuple.into_iter().map(|i| i + 1).collect(),
            lhs,
            rhs,
        });
    }

    fn eq<T: Element>(&mut self, statement: &str, lhs: &T, rhs: &T) {
        if let Some((part, t, l, r)) = lhs.mismatch(rhs) {
            let statement = if part.is_empty() { statement.to_string() } else { format!("{statement} [{part}]") };
            self.fail(statement, t, l, r);
        }
    }

    fn agree(&mut self, statement: &str, lhs: bool, rhs: bool) {
        if lhs != rhs {
            self.fail(statement.to_string(), Vec::new(), lhs.to_string(), rhs.to_string());
        }
    }

    fn cup(&self, p: &Cochain, q: &Cochain) -> Result<Cochain> {
        mutated_cup(p, q, &self.ctx.algebra, self.cfg)
    }

    fn delta(&self, f: &Cochain) -> Result<Cochain> {
        delta_hom(f, &self.ctx.adjoint)
    }

    fn theta(&self, f: &Cochain) -> Result<Cochain> {
        theta(f, &self.ctx.algebra)
    }

    /// Graded skew-symmetry and Jacobi for `br` with the given degrees.
    fn graded_lie<T: Element>(
        &mut self,
        label: &str,
        [(a, p), (b, q), (c, _)]: [(&T, usize); 3],
        br: impl Fn(&T, &T) -> Result<T>,
    ) -> Result<()> {
        let ab = br(a, b)?;
        self.eq(&format!("{label}: [b,a] = −(−1)^(|a||b|)[a,b]"), &br(b, a)?, &ab.signed(p * q + 1));
        let lhs = br(a, &br(b, c)?)?;
        let rhs = br(&ab, c)?.plus(&br(b, &br(a, c)?)?.signed(p * q));
        self.eq(&format!("{label}: [a,[b,c]] = [[a,b],c] + (−1)^(|a||b|)[b,[a,c]]"), &lhs, &rhs);
        Ok(())
    }
}

fn run_trial(id: IdentityId, t: &mut Trial) -> Result<()> {
    let alg = t.ctx.algebra.clone();
    let mu = alg.mu().clone();
    match id {
        IdentityId::McHomlie => {
            let candidate = if t.index.is_multiple_of(2) {
                let c = [int(1), int(-1), int(2), int(-3), frac(1, 2)][t.rng.gen_range(0..5)].clone();
                mu.scale(&c)
            } else {
                &mu + &t.cochain(2)
            };
            let square = nr_bracket(&candidate, &candidate)?;
            t.eq("[μ,μ]_NR = −2·J(μ)", &square, &oracle::hom_jacobiator(&candidate).scale(&int(-2)));
            let jacobi = RawHomStructure::new(alg.space().clone(), candidate)?.check_hom_jacobi();
            t.agree("[μ,μ]_NR = 0 iff Hom-Jacobi", square.is_zero(), jacobi);
        }
        IdentityId::NrGradedLie => {
            let (a, x) = t.random();
            let (b, y) = t.random();
            let (c, z) = t.random();
            t.graded_lie("NR", [(&a, x - 1), (&b, y - 1), (&c, z - 1)], nr_bracket)?;
        }
        IdentityId::CupGradedLie => {
            let (a, x) = t.random();
            let (b, y) = t.random();
            let (c, z) = t.random();
            let cfg = t.cfg;
            t.graded_lie("cup", [(&a, x), (&b, y), (&c, z)], |p, q| mutated_cup(p, q, &alg, cfg))?;
        }
        IdentityId::CupViaTheta => {
            let (p, _) = t.random();
            let (q, n) = t.random();
            let inner = &contract(&p, &t.theta(&q)?)? - &t.theta(&contract(&p, &q)?)?;
            let lhs = t.cup(&p, &q)?;
            t.eq("[P,Q]_C = (−1)^n (i_P θQ − θ i_P Q)", &lhs, &inner.signed(n));
        }
        IdentityId::CupViaDelta => {
            let (p, m) = t.random();
            let (q, _) = t.random();
            let rhs =
                &(&contract(&p, &t.delta(&q)?)? + &contract(&t.delta(&p)?, &q)?.signed(m - 1)) + &t.delta(&contract(&p, &q)?)?.signed(m);
            let lhs = t.cup(&p, &q)?;
            t.eq("[P,Q]_C = i_P δQ + (−1)^(m−1) i_δP Q + (−1)^m δ(i_P Q)", &lhs, &rhs);
        }
        IdentityId::DeltaCupDerivation => {
            let (p, m) = t.random();
            let (q, _) = t.random();
            let lhs = t.delta(&cup_bracket(&p, &q, &alg)?)?;
            let rhs = &cup_bracket(&t.delta(&p)?, &q, &alg)? + &cup_bracket(&p, &t.delta(&q)?, &alg)?.signed(m);
            t.eq("δ[P,Q]_C = [δP,Q]_C + (−1)^m [P,δQ]_C", &lhs, &rhs);
        }
        IdentityId::CupTrivialCohomology => {
            let m = t.arity();
            let n = t.arity();
            let p = t.cocycle(m)?;
            let q = t.cocycle(n)?;
            let c = cup_bracket(&p, &q, &alg)?;
            let preimage = contract(&p, &q)?.signed(m);
            t.eq("[P,Q]_C = δ((−1)^m i_P Q) for cocycles", &c, &t.delta(&preimage)?);
            let solved = t.ctx.complex.is_coboundary(&c)?;
            t.agree("[P,Q]_C is a coboundary", solved.is_some(), true);
        }
        IdentityId::ThetaCupDerivation => {
            let (p, _) = t.random();
            let (q, n) = t.random();
            let lhs = t.theta(&cup_bracket(&p, &q, &alg)?)?;
            let rhs = &cup_bracket(&t.theta(&p)?, &q, &alg)?.signed(n) + &cup_bracket(&p, &t.theta(&q)?, &alg)?;
            t.eq("θ[P,Q]_C = (−1)^n [θP,Q]_C + [P,θQ]_C", &lhs, &rhs);
        }
        IdentityId::PreLie => {
            let (p, m) = t.random();
            let (q, n) = t.random();
            let (r, _) = t.random();
            let lhs = &contract(&contract(&p, &q)?, &r)? - &contract(&p, &contract(&q, &r)?)?;
            let rhs = &contract(&contract(&q, &p)?, &r)? - &contract(&q, &contract(&p, &r)?)?;
            t.eq("i_(i_P Q) R − i_P i_Q R = (−1)^((m−1)(n−1)) (i_(i_Q P) R − i_Q i_P R)", &lhs, &rhs.signed((m - 1) * (n - 1)));
        }
        IdentityId::RhoIsAction => {
            let (p, a) = t.random();
            let (q, b) = t.random();
            let (e, k) = t.random();
            let (f, _) = t.random();
            let (m, n) = (a - 1, b - 1);
            let lhs = rho_action(&nr_bracket(&p, &q)?, &e)?;
            let rhs = &rho_action(&p, &rho_action(&q, &e)?)? + &rho_action(&q, &rho_action(&p, &e)?)?.signed(m * n + 1);
            t.eq("ρ([P,Q]_NR)E = ρ(P)ρ(Q)E − (−1)^(mn) ρ(Q)ρ(P)E", &lhs, &rhs);
            let lhs = rho_action(&p, &cup_bracket(&e, &f, &alg)?)?;
            let rhs = &cup_bracket(&rho_action(&p, &e)?, &f, &alg)? + &cup_bracket(&e, &rho_action(&p, &f)?, &alg)?.signed(m * k);
            t.eq("ρ(P)[E,F]_C = [ρ(P)E,F]_C + (−1)^(mk) [E,ρ(P)F]_C", &lhs, &rhs);
        }
        IdentityId::SemidirectJacobi => {
            let (a, x) = t.pair()?;
            let (b, y) = t.pair()?;
            let (c, z) = t.pair()?;
            t.graded_lie("semidirect", [(&a, x), (&b, y), (&c, z)], |u, v| semidirect_graded_bracket(u, v, &alg))?;
        }
        IdentityId::GraphDeltaClosed => {
            let (p, _) = t.random();
            let (q, _) = t.random();
            let lhs = t.delta(&fn_bracket(&p, &q, &alg)?)?;
            let rhs = nr_bracket(&t.delta(&p)?, &t.delta(&q)?)?;
            t.eq("δ[P,Q]_FN = [δP,δQ]_NR", &lhs, &rhs);
            let (e, m) = t.random();
            let (f, n) = t.random();
            let a = GradedPair::new(t.delta(&e)?.signed(m), e)?;
            let b = GradedPair::new(t.delta(&f)?.signed(n), f)?;
            let br = semidirect_graded_bracket(&a, &b, &alg)?;
            let expected = t.delta(br.lower())?.signed(m + n);
            t.eq("Gr((−1)^•δ) closed under [,]_⋉", br.upper(), &expected);
        }
        IdentityId::FnGradedLie => {
            let (a, x) = t.random();
            let (b, y) = t.random();
            let (c, z) = t.random();
            t.graded_lie("FN", [(&a, x), (&b, y), (&c, z)], |p, q| fn_bracket(p, q, &alg))?;
        }
        IdentityId::FnTwoFormulas => {
            let (p, m) = t.random();
            let (q, _) = t.random();
            let defining = fn_bracket(&p, &q, &alg)?;
            t.eq("[P,Q]_FN defining = explicit", &defining, &oracle::fn_explicit(&p, &q, &alg));
            let nr_form = &nr_bracket(&p, &t.delta(&q)?)? + &t.delta(&contract(&p, &q)?)?.signed(m);
            t.eq("[P,Q]_FN = [P,δQ]_NR + (−1)^m δ(i_P Q)", &defining, &nr_form);
        }
        IdentityId::MatchedPairAxioms => {
            let (p, a) = t.random();
            let (q, b) = t.random();
            let (e, k) = t.random();
            let (f, l) = t.random();
            let (m, n) = (a - 1, b - 1);
            let fnb = |x: &Cochain, y: &Cochain| fn_bracket(x, y, &alg);
            let psi = |x: &Cochain, y: &Cochain| psi_action(x, y, &alg);

            let lhs = rho_action(&nr_bracket(&p, &q)?, &e)?;
            let rhs = &rho_action(&p, &rho_action(&q, &e)?)? + &rho_action(&q, &rho_action(&p, &e)?)?.signed(m * n + 1);
            t.eq("ρ([P,Q]_NR)E = ρ(P)ρ(Q)E − (−1)^(mn) ρ(Q)ρ(P)E", &lhs, &rhs);

            let lhs = rho_action(&p, &fnb(&e, &f)?)?;
            let rhs = &(&(&fnb(&rho_action(&p, &e)?, &f)? + &fnb(&e, &rho_action(&p, &f)?)?.signed(m * k))
                + &rho_action(&psi(&f, &p)?, &e)?.signed((m + k) * l))
                + &rho_action(&psi(&e, &p)?, &f)?.signed(m * k + 1);
            t.eq("ρ(P)[E,F]_FN matched-pair expansion", &lhs, &rhs);

            let lhs = psi(&fnb(&e, &f)?, &p)?;
            let rhs = &psi(&e, &psi(&f, &p)?)? + &psi(&f, &psi(&e, &p)?)?.signed(k * l + 1);
            t.eq("ψ([E,F]_FN)P = ψ(E)ψ(F)P − (−1)^(kl) ψ(F)ψ(E)P", &lhs, &rhs);

            let lhs = psi(&e, &nr_bracket(&p, &q)?)?;
            let rhs = &(&(&nr_bracket(&psi(&e, &p)?, &q)? + &nr_bracket(&p, &psi(&e, &q)?)?.signed(k * m))
                + &psi(&rho_action(&q, &e)?, &p)?.signed((k + m) * n))
                + &psi(&rho_action(&p, &e)?, &q)?.signed(k * m + 1);
            t.eq("ψ(E)[P,Q]_NR matched-pair expansion", &lhs, &rhs);
        }
        IdentityId::BicrossedJacobi => {
            let (a, x) = t.pair()?;
            let (b, y) = t.pair()?;
            let (c, z) = t.pair()?;
            t.graded_lie("bicrossed", [(&a, x), (&b, y), (&c, z)], |u, v| bicrossed_bracket(u, v, &alg))?;
            let lhs = bicrossed_to_semidirect(&bicrossed_bracket(&a, &b, &alg)?, &alg)?;
            let rhs = semidirect_graded_bracket(&bicrossed_to_semidirect(&a, &alg)?, &bicrossed_to_semidirect(&b, &alg)?, &alg)?;
            t.eq("Ψ⟦a,b⟧ = [Ψa,Ψb]_⋉", &lhs, &rhs);
        }
        IdentityId::GraphThetaClosed => {
            let (p, _) = t.random();
            let (q, _) = t.random();
            let lhs = t.theta(&derived_bracket(&p, &q, &alg)?)?;
            let rhs = nr_bracket(&t.theta(&p)?, &t.theta(&q)?)?;
            t.eq("θ[P,Q]_D = [θP,θQ]_NR", &lhs, &rhs);
            let a = GradedPair::new(t.theta(&p)?, p)?;
            let b = GradedPair::new(t.theta(&q)?, q)?;
            let br = semidirect_graded_bracket(&a, &b, &alg)?;
            t.eq("Gr(θ) closed under [,]_⋉", br.upper(), &t.theta(br.lower())?);
        }
        IdentityId::DerivedGradedLie => {
            let (a, x) = t.random();
            let (b, y) = t.random();
            let (c, z) = t.random();
            t.graded_lie("derived", [(&a, x), (&b, y), (&c, z)], |p, q| derived_bracket(p, q, &alg))?;
        }
        IdentityId::DerivedTwoFormulas => {
            let (p, _) = t.random();
            let (q, _) = t.random();
            t.eq("[P,Q]_D defining = explicit", &derived_bracket(&p, &q, &alg)?, &oracle::derived_explicit(&p, &q, &alg));
        }
        IdentityId::DLambdaDerivation => {
            let lambda = t.lambda();
            let (p, m) = t.random();
            let (q, _) = t.random();
            let d = |f: &Cochain| d_lambda(f, &alg, &lambda);
            let lhs = d(&derived_bracket(&p, &q, &alg)?)?;
            let rhs = &derived_bracket(&d(&p)?, &q, &alg)? + &derived_bracket(&p, &d(&q)?, &alg)?.signed(m);
            t.eq("d_λ[P,Q]_D = [d_λP,Q]_D + (−1)^m [P,d_λQ]_D", &lhs, &rhs);
            t.eq("d_λ² = 0", &d(&d(&p)?)?, &Cochain::zero(m + 2, alg.space().clone(), alg.space().clone()));
            let via_delta = (&t.delta(&p)? + &t.theta(&p)?.signed(m - 1)).scale(&lambda);
            t.eq("d_λ = λ(δ + (−1)^(n−1) θ)", &d(&p)?, &via_delta);
        }
        IdentityId::ThetaSquared => {
            let (f, n) = t.random();
            let lhs = t.theta(&t.theta(&f)?)?;
            let rhs = (&t.theta(&t.delta(&f)?)? - &t.delta(&t.theta(&f)?)?).signed(n);
            t.eq("θ²f = (−1)^n (θδ − δθ) f", &lhs, &rhs);
        }
        IdentityId::RbLemma => {
            let lambda = t.lambda();
            let r = t.cochain(1);
            let tr = t.theta(&r)?;
            t.eq("[μ,R]_C = i_θR μ", &cup_bracket(&mu, &r, &alg)?, &contract(&tr, &mu)?);
            let lhs = t.theta(&d_lambda(&r, &alg, &lambda)?)?;
            let rhs = nr_bracket(&mu, &tr)?.scale(&-lambda.clone());
            t.eq("θ(d_λR) = −λ[μ,θR]_NR", &lhs, &rhs);
        }
        IdentityId::RelativeConsistency => {
            let lambda = t.lambda();
            let model = t.ctx.relative_model()?;
            let action = &model.action;
            let known = doubled_action_operator(&alg, &lambda);
            let known = Cochain::from_linear_map(action.acted().space().clone(), alg.space().clone(), &known)?;
            let basis = model.bases.cochain_basis(1);
            let (hs, gs) = (action.acted().space().clone(), alg.space().clone());
            let random = t.combination_of(&basis, 1, &hs, &gs);
            let r = match t.index % 4 {
                0 => known,
                1 => &known + &random.scale(&frac(1, 3)),
                _ => random,
            };
            let pointwise = relative_rb_pointwise(&r, action, &lambda)?;
            let graph = relative_rb_graph_closed(&r, action, &lambda)?;
            let dgla = Dgla::RelativeDerived { action: action.clone(), lambda: lambda.clone() };
            let mc = mc_residual(&r, &dgla)?.is_zero();
            t.agree("relative pointwise vs graph closure", pointwise, graph);
            t.agree("relative pointwise vs Maurer-Cartan", pointwise, mc);
            if t.index.is_multiple_of(4) {
                t.agree("(y,h) ↦ −λy is relative Rota-Baxter", pointwise, true);
            }
            let s = t.cochain(1);
            let adjoint = alg.adjoint_action();
            let plain = is_rota_baxter(&LinearOperator::try_from(s.clone())?, &alg, &lambda)?;
            t.agree("adjoint relative criterion = Rota-Baxter criterion", relative_rb_pointwise(&s, &adjoint, &lambda)?, plain);
        }
        IdentityId::DRMatchesInduced => {
            let lambda = t.lambda();
            let model = t.ctx.relative_model()?;
            let action = &model.action;
            let (hs, gs) = (action.acted().space().clone(), alg.space().clone());
            let r = if t.index % 3 == 2 {
                Cochain::zero(1, hs.clone(), gs.clone())
            } else {
                Cochain::from_linear_map(hs.clone(), gs.clone(), &doubled_action_operator(&alg, &lambda))?
            };
            let induced = induced_structures(&LinearOperator::try_from(r.clone())?, action, &lambda)?;
            let n = t.arity();
            let basis = model.bases.cochain_basis(n);
            let f = t.combination_of(&basis, n, &hs, &gs);
            let dr = d_r(&f, &r, &lambda, action)?;
            t.eq("D_R f = δ_induced f", &dr, &delta_hom(&f, &induced.representation)?);
            t.eq("D_R² = 0", &d_r(&dr, &r, &lambda, action)?, &Cochain::zero(n + 2, hs, gs));
        }
    }
    Ok(())
}

fn stream_id(id: IdentityId, trial: usize) -> u64 {
    ((id.number() as u64) << 32) | trial as u64
}

/// Runs `cfg.trials` independent trials of one identity.
pub fn verify(id: IdentityId, ctx: &Context, cfg: &VerifyConfig) -> VerificationReport {
    let per_trial: Vec<Vec<Failure>> = (0..cfg.trials)
        .into_par_iter()
        .map(|index| {
            let stream = stream_id(id, index);
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(stream);
            let mut trial = Trial { ctx, cfg, index, stream, rng, failures: Vec::new() };
            if let Err(e) = run_trial(id, &mut trial) {
                trial.fail(format!("error: {e}"), Vec::new(), String::new(), String::new());
            }
            trial.failures
        })
        .collect();
    let failures: Vec<Failure> = per_trial.into_iter().flatten().collect();
    VerificationReport {
        identity: id,
        number: id.number(),
        algebra: ctx.name.clone(),
        trials: cfg.trials,
        passed: failures.is_empty(),
        failures,
    }
}

/// Every identity in `ids` over every algebra, in input order.
pub fn run_selected(contexts: &[Context], ids: &[IdentityId], cfg: &VerifyConfig) -> SuiteReport {
    let reports: Vec<VerificationReport> = contexts
        .iter()
        .flat_map(|ctx| ids.iter().map(move |&id| (ctx, id)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(ctx, id)| verify(id, ctx, cfg))
        .collect();
    SuiteReport {
        seed: cfg.seed,
        trials: cfg.trials,
        max_arity: cfg.max_arity,
        mutation: cfg.mutation,
        passed: reports.iter().all(|r| r.passed),
        reports,
    }
}

/// Every identity over every named algebra.
pub fn run_all(algebras: &[(String, HomLieAlgebra)], cfg: &VerifyConfig) -> SuiteReport {
    let contexts: Vec<Context> = algebras.iter().map(|(n, a)| Context::new(n.clone(), a.clone())).collect();
    run_selected(&contexts, &IdentityId::ALL, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom_structures::{abelian, fixture_b};

    fn quick() -> VerifyConfig {
        VerifyConfig { trials: 4, seed: 7, max_arity: 2, mutation: None }
    }

    #[test]
    fn names_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), id);
            assert_eq!(id.number().to_string().parse::<IdentityId>().unwrap(), id);
        }
        assert!("nope".parse::<IdentityId>().is_err());
        let numbers: Vec<usize> = IdentityId::ALL.iter().map(|i| i.number()).collect();
        assert_eq!(numbers, (1..=24).collect::<Vec<_>>());
    }

    #[test]
    fn mc_homlie_single_trial() {
        let ctx = Context::new("fixture-b", fixture_b());
        let r = verify(IdentityId::McHomlie, &ctx, &VerifyConfig { trials: 1, ..quick() });
        assert!(r.passed, "{:?}", r.failures);
    }

    #[test]
    fn abelian_cup_passes() {
        let ctx = Context::new("abelian2", abelian(2));
        assert!(verify(IdentityId::CupGradedLie, &ctx, &quick()).passed);
    }

    #[test]
    fn empty_algebra_list() {
        let r = run_all(&[], &quick());
        assert!(r.reports.is_empty() && r.passed);
    }

    #[test]
    fn every_identity_quick_on_fixture_b() {
        let ctx = Context::new("fixture-b", fixture_b());
        let r = run_selected(std::slice::from_ref(&ctx), &IdentityId::ALL, &quick());
        for rep in &r.reports {
            assert!(rep.passed, "{}: {:?}", rep.identity, rep.failures.first());
        }
    }
}
