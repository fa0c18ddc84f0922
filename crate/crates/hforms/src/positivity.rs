//! Positivity of invariant forms.
//!
//! A real `(n−k, n−k)`-form `Ω` induces a sesquilinear pairing on `Λ^{k,0}`,
//!
//! ```text
//! Q(α, β) = i^{k} (−1)^{k(k−1)/2} · vol-coefficient(α ∧ β̄ ∧ Ω),
//! ```
//!
//! (more generally `i^{p−q}` on bidegree `(p, q)` arguments).  This module
//! decides the three positivity notions that matter for such a datum:
//!
//! * **positive definiteness** of the Gram matrix of `Q` on all of
//!   `Λ^{k,0}` — decided exactly by Sylvester's criterion, with a violating
//!   vector when it fails;
//! * **transversality** — strict positivity of `Q` on nonzero decomposable
//!   `(k,0)`-forms only; refutations are exact decomposable witnesses found
//!   by deterministic and randomized searches, while the positive direction
//!   is only ever claimed via positive definiteness;
//! * **strong positivity** — an explicit presentation
//!   `Ω = i^{k²} Σ_j ψ_j ∧ ψ̄_j` with decomposable `ψ_j`, checked by exact
//!   re-expansion.
//!
//! For coefficients depending on the analytic parameter, positivity is
//! decided on the whole ray `U = |u|² ≥ 0` through fraction-free principal
//! minors and derivative-chain certificates; refutations come with a real
//! parameter value at which an interval evaluation certifies failure.
//!
//! The final section inverts the `(n−1)`-st power map on metrics: a
//! positive `(n−1, n−1)`-form `Φ` has a unique Hermitian metric root `F`
//! with `F^{n−1}/(n−1)! = Φ`, rational whenever the relevant determinant
//! root is.

use crate::exterior::{ExteriorError, Form, MultiIndexPair};
use crate::linalg::{self, QMatrix};
use crate::scalar::{q, AnalyticScalar, GaussRational, RayCertificate, Scalar, C64, Q};
use crate::{SearchConfig, Verdict};
use num::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

// ---------------------------------------------------------------------------
// The pairing and its Gram matrices
// ---------------------------------------------------------------------------

fn mul_i_pow<S: Scalar>(x: S, k: u32) -> S {
    let mut out = x;
    for _ in 0..(k % 4) {
        out = out.mul_i();
    }
    out
}

/// `i^{p−q} (−1)^{k(k−1)/2} x` for `k = p + q`.
fn pairing_sign<S: Scalar>(x: S, p: u32, q_anti: u32) -> S {
    let k = p + q_anti;
    let e = (i64::from(p) - i64::from(q_anti)).rem_euclid(4) as u32;
    let mut out = mul_i_pow(x, e);
    if (k * k.saturating_sub(1) / 2) % 2 == 1 {
        out = out.neg();
    }
    out
}

/// The pairing `Q(α, β)` of two `(p, q)`-forms against the datum `omega`,
/// an `(n−p−q, n−p−q)`-form.  Fails only when the degrees do not combine
/// to a multiple of the volume form.
pub fn pairing_value<S: Scalar>(
    omega: &Form<S>,
    alpha: &Form<S>,
    beta: &Form<S>,
    p: u32,
    q_anti: u32,
) -> Result<S, ExteriorError> {
    let raw = alpha.wedge(&beta.conjugate()).wedge(omega).vol_coefficient()?;
    Ok(pairing_sign(raw, p, q_anti))
}

/// The Gram matrix of the pairing induced by `omega` on a family of
/// `(p, q)`-forms.
#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix<S: Scalar> {
    /// Bidegree `(p, q)` of the arguments.
    pub bidegree: (u32, u32),
    /// The forms the pairing was evaluated on.
    pub basis: Vec<Form<S>>,
    /// `entries[a][b] = Q(basis[a], basis[b])`; Hermitian.
    pub entries: Vec<Vec<S>>,
}

impl<S: Scalar> GramMatrix<S> {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Numeric evaluation of every entry at the parameter value `u`.
    pub fn to_numeric(&self, u: C64) -> Vec<Vec<C64>> {
        linalg::to_numeric(&self.entries, u)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GramError {
    #[error("the pairing datum is not a real form")]
    NotReal,
    #[error("{what} is not concentrated in bidegree ({p}, {q})")]
    BidegreeMismatch { what: String, p: u32, q: u32 },
    #[error("the Gram matrix is not Hermitian")]
    NotHermitian,
}

/// Gram matrix of the pairing induced by `omega` on the given `(p, q)`-forms.
///
/// Validates that `omega` is a real form concentrated in bidegree
/// `(n−p−q, n−p−q)`, that every basis element is concentrated in `(p, q)`,
/// and that the resulting matrix is Hermitian.
pub fn gram_q<S: Scalar>(
    omega: &Form<S>,
    p: u32,
    q_anti: u32,
    basis: &[Form<S>],
) -> Result<GramMatrix<S>, GramError> {
    let n = omega.n();
    let k = p + q_anti;
    if u32::from(n) < k || omega.bigraded_part(u32::from(n) - k, u32::from(n) - k) != *omega {
        return Err(GramError::BidegreeMismatch {
            what: "the pairing datum".into(),
            p: u32::from(n).saturating_sub(k),
            q: u32::from(n).saturating_sub(k),
        });
    }
    if !omega.is_real() {
        return Err(GramError::NotReal);
    }
    for (i, b) in basis.iter().enumerate() {
        if b.bigraded_part(p, q_anti) != *b {
            return Err(GramError::BidegreeMismatch {
                what: format!("basis element {i}"),
                p,
                q: q_anti,
            });
        }
    }
    let dim = basis.len();
    let mut entries = vec![vec![S::zero(); dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            entries[a][b] = pairing_value(omega, &basis[a], &basis[b], p, q_anti)
                .expect("degrees were validated");
        }
    }
    for a in 0..dim {
        for b in a..dim {
            if !entries[b][a].conj().sub(&entries[a][b]).is_zero() {
                return Err(GramError::NotHermitian);
            }
        }
    }
    Ok(GramMatrix { bidegree: (p, q_anti), basis: basis.to_vec(), entries })
}

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

/// Sylvester-style evidence for positive definiteness on `Λ^{k,0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PdEvidence<S: Scalar> {
    /// Leading principal minors of the Gram matrix on the monomial basis;
    /// all positive (on the whole ray, for analytic coefficients).
    pub leading_minors: Vec<S>,
    /// For analytic coefficients: one ray-positivity certificate per minor.
    pub ray_certificates: Option<Vec<RayCertificate>>,
}

/// A form whose self-pairing is not strictly positive.
#[derive(Clone, Debug, PartialEq)]
pub struct NonPositiveWitness<S: Scalar> {
    /// The violating `(k, 0)`-form; decomposable when produced by the
    /// transversality search.
    pub form: Form<S>,
    /// Its self-pairing `Q(form, form)`.
    pub value: S,
    /// For analytic coefficients with a nonzero `value`: a real rational
    /// value of the coordinate `u` at which an interval evaluation
    /// certifies `value ≤ 0`.
    pub at: Option<Q>,
}

/// Outcome of a positivity decision.  `Transverse` is only produced on
/// sound grounds: either positive definiteness holds (which dominates
/// positivity on decomposables) or an explicit certificate was checked.
/// Failed searches end in `Inconclusive`, never in an unproved claim.
#[derive(Clone, Debug, PartialEq)]
pub enum PositivityVerdict<S: Scalar> {
    /// Presented as `i^{k²} Σ_j ψ_j ∧ ψ̄_j` with decomposable `ψ_j`.
    StronglyPositive { generators: Vec<Form<S>> },
    /// The Gram matrix on all of `Λ^{k,0}` is positive definite.
    PositiveDefinite(PdEvidence<S>),
    /// Strictly positive on nonzero decomposable `(k, 0)`-forms.
    Transverse {
        /// Whether the claim follows from positive definiteness.
        via_positive_definite: bool,
        /// Decomposables examined by the search before the claim.
        samples_checked: usize,
    },
    /// A form with non-positive self-pairing exists.
    NotPositive(NonPositiveWitness<S>),
    Inconclusive { reason: String },
}

impl<S: Scalar> PositivityVerdict<S> {
    /// Short summary keyword for reports and logs.
    pub fn word(&self) -> &'static str {
        match self {
            PositivityVerdict::StronglyPositive { .. } => "strongly positive",
            PositivityVerdict::PositiveDefinite(_) => "positive definite",
            PositivityVerdict::Transverse { .. } => "transverse",
            PositivityVerdict::NotPositive(_) => "not positive",
            PositivityVerdict::Inconclusive { .. } => "inconclusive",
        }
    }

    /// Whether the verdict affirms positivity (in any of the three senses).
    pub fn is_positive(&self) -> bool {
        matches!(
            self,
            PositivityVerdict::StronglyPositive { .. }
                | PositivityVerdict::PositiveDefinite(_)
                | PositivityVerdict::Transverse { .. }
        )
    }

    pub fn witness(&self) -> Option<&NonPositiveWitness<S>> {
        match self {
            PositivityVerdict::NotPositive(w) => Some(w),
            _ => None,
        }
    }
}

/// The bidegree `(p, p)` of a real square-bidegree form, or a reason why
/// it has none.
fn square_bidegree<S: Scalar>(omega: &Form<S>) -> Result<u32, String> {
    if !omega.is_real() {
        return Err("the pairing datum is not a real form".into());
    }
    match omega.bidegree() {
        Some((p, qd)) if p == qd => Ok(p),
        Some(_) => Err("the pairing datum is not concentrated in bidegree (p, p)".into()),
        None => Err("the zero form has no bidegree".into()),
    }
}

fn monomial_basis<S: Scalar>(n: u8, k: u32) -> (Vec<MultiIndexPair>, Vec<Form<S>>) {
    let pairs = Form::<S>::basis(n, k, 0);
    let forms = pairs
        .iter()
        .map(|ix| Form::from_coordinates(n, std::slice::from_ref(ix), &[S::one()]))
        .collect();
    (pairs, forms)
}

// ---------------------------------------------------------------------------
// Positive definiteness
// ---------------------------------------------------------------------------

/// Combine Gauss-rational coordinates against a basis of forms.
fn combine<S: Scalar>(basis: &[Form<S>], coords: &[GaussRational]) -> Form<S> {
    let n = basis.first().expect("nonempty basis").n();
    let mut out = Form::zero(n);
    for (b, c) in basis.iter().zip(coords) {
        if !c.is_zero() {
            out = &out + &b.scale(&S::from_gauss(c));
        }
    }
    out
}

/// Sylvester decision for an exact Hermitian Gram matrix: `Proven` carries
/// the positive leading principal minors, `Refuted` an explicit vector with
/// non-positive self-pairing (the Schur-complement witness of the first
/// failing minor, expressed against the Gram basis).
pub fn gram_positive_definite(
    gram: &GramMatrix<GaussRational>,
) -> Verdict<PdEvidence<GaussRational>, NonPositiveWitness<GaussRational>> {
    let minors = linalg::leading_principal_minors(&gram.entries);
    for (idx, minor) in minors.iter().enumerate() {
        if minor.is_real() && minor.re().is_positive() {
            continue;
        }
        let w = linalg::sylvester_witness(&gram.entries, idx + 1);
        let value = linalg::quad_form(&gram.entries, &w);
        let form = combine(&gram.basis, &w);
        return Verdict::Refuted(NonPositiveWitness { form, value, at: None });
    }
    Verdict::Proven(PdEvidence { leading_minors: minors, ray_certificates: None })
}

/// Decide whether the pairing induced by the real `(p, p)`-form `omega` is
/// positive definite on `Λ^{n−p,0}`, by Sylvester's criterion on the
/// monomial Gram matrix.  A failure is returned as an explicit vector with
/// non-positive self-pairing (the Schur complement witness of the first
/// failing minor).
pub fn is_positive_definite(omega: &Form<GaussRational>) -> PositivityVerdict<GaussRational> {
    let n = omega.n();
    let p = match square_bidegree(omega) {
        Ok(p) => p,
        Err(reason) => return PositivityVerdict::Inconclusive { reason },
    };
    let k = u32::from(n) - p;
    let (_, basis) = monomial_basis::<GaussRational>(n, k);
    let gram = match gram_q(omega, k, 0, &basis) {
        Ok(g) => g,
        Err(e) => return PositivityVerdict::Inconclusive { reason: e.to_string() },
    };
    match gram_positive_definite(&gram) {
        Verdict::Proven(ev) => PositivityVerdict::PositiveDefinite(ev),
        Verdict::Refuted(w) => PositivityVerdict::NotPositive(w),
        Verdict::Inconclusive { reason } => PositivityVerdict::Inconclusive { reason },
    }
}

/// Ray decision for an analytic Hermitian Gram matrix on `U ≥ 0`:
/// fraction-free leading principal minors, then a derivative-chain
/// positivity certificate per minor.  When a minor fails on the ray, a
/// numeric eigenvector at a sampled real point is rounded to rational
/// coordinates (against the Gram basis) and certified by exact interval
/// evaluation.
pub fn gram_positive_definite_analytic(
    gram: &GramMatrix<AnalyticScalar>,
) -> Verdict<PdEvidence<AnalyticScalar>, NonPositiveWitness<AnalyticScalar>> {
    let minors = linalg::bareiss_leading_minors_analytic(&gram.entries);
    let mut certificates = Vec::with_capacity(minors.len());
    let mut failed = minors.len() < gram.dim();
    for minor in &minors {
        let Some(pol) = minor.as_upolynomial() else {
            return Verdict::inconclusive(
                "a principal minor depends on the phase of u, not only on U = |u|²",
            );
        };
        match crate::scalar::sign_on_ray(&pol) {
            Verdict::Proven(cert) => certificates.push(cert),
            Verdict::Refuted(_) => {
                failed = true;
                break;
            }
            Verdict::Inconclusive { reason } => {
                return Verdict::Inconclusive {
                    reason: format!("sign of a principal minor undecided on the ray: {reason}"),
                }
            }
        }
    }
    if failed {
        return match analytic_witness_search(gram) {
            Some(w) => Verdict::Refuted(w),
            None => Verdict::inconclusive(
                "a principal minor fails positivity on the ray, but no witness \
                 vector could be certified at the sampled points",
            ),
        };
    }
    Verdict::Proven(PdEvidence {
        leading_minors: minors,
        ray_certificates: Some(certificates),
    })
}

/// Positive definiteness on `Λ^{n−p,0}` for analytic coefficients, decided
/// on the whole ray `U ≥ 0` via [`gram_positive_definite_analytic`].
pub fn is_positive_definite_analytic(
    omega: &Form<AnalyticScalar>,
) -> PositivityVerdict<AnalyticScalar> {
    let n = omega.n();
    let p = match square_bidegree(omega) {
        Ok(p) => p,
        Err(reason) => return PositivityVerdict::Inconclusive { reason },
    };
    let k = u32::from(n) - p;
    let (_, basis) = monomial_basis::<AnalyticScalar>(n, k);
    let gram = match gram_q(omega, k, 0, &basis) {
        Ok(g) => g,
        Err(e) => return PositivityVerdict::Inconclusive { reason: e.to_string() },
    };
    match gram_positive_definite_analytic(&gram) {
        Verdict::Proven(ev) => PositivityVerdict::PositiveDefinite(ev),
        Verdict::Refuted(w) => PositivityVerdict::NotPositive(w),
        Verdict::Inconclusive { reason } => PositivityVerdict::Inconclusive { reason },
    }
}

/// Real rational sample points for the coordinate `u` (so `U = u²`).
const REAL_POINT_FAN: [(i64, i64); 10] =
    [(0, 1), (1, 2), (3, 4), (1, 1), (5, 4), (3, 2), (2, 1), (5, 2), (3, 1), (4, 1)];

/// Hunt for a vector with certifiably non-positive self-pairing: numeric
/// minimum eigenvectors at real sample points, rounded to Gauss-rational
/// coordinates and re-verified by exact interval evaluation.
fn analytic_witness_search(
    gram: &GramMatrix<AnalyticScalar>,
) -> Option<NonPositiveWitness<AnalyticScalar>> {
    let dim = gram.dim();
    for (num, den) in REAL_POINT_FAN {
        let u0 = q(num, den);
        let point = C64::new(u0.to_f64().unwrap_or(0.0), 0.0);
        let h = gram.to_numeric(point);
        let (vals, vecs) = linalg::jacobi_hermitian(&h);
        if vals.is_empty() || vals[0] >= 1.0e-7 {
            continue;
        }
        for max_den in [64, 4096, 1 << 20] {
            let w: Vec<GaussRational> = (0..dim)
                .map(|i| {
                    GaussRational::new(
                        linalg::rationalize(vecs[i][0].re, max_den),
                        linalg::rationalize(vecs[i][0].im, max_den),
                    )
                })
                .collect();
            if w.iter().all(GaussRational::is_zero) {
                continue;
            }
            let mut value = AnalyticScalar::zero();
            for (i, wi) in w.iter().enumerate() {
                for (j, wj) in w.iter().enumerate() {
                    let c = &wi.conj() * wj;
                    value = value.add(&gram.entries[i][j].mul(&AnalyticScalar::from_gauss(c)));
                }
            }
            let form = combine(&gram.basis, &w);
            if form.is_zero() {
                continue;
            }
            if value.is_zero() {
                return Some(NonPositiveWitness { form, value, at: None });
            }
            if !value.is_real() {
                continue;
            }
            if let Some((_, hi)) = value.eval_interval_real(&u0, &q(1, 1_000_000_000)) {
                if !hi.is_positive() {
                    return Some(NonPositiveWitness { form, value, at: Some(u0) });
                }
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Transversality
// ---------------------------------------------------------------------------

/// Whether `form` is certifiably decomposable: zero or a single monomial
/// always is; in degree ≤ 1 everything is; in degree 2 the Plücker test
/// `ψ ∧ ψ = 0` decides.
fn is_certifiably_decomposable<S: Scalar>(form: &Form<S>, k: u32) -> bool {
    k <= 1 || form.num_terms() <= 1 || (k == 2 && form.wedge(form).is_zero())
}

/// Decide transversality of the real `(p, p)`-form `omega`: strict
/// positivity of the induced pairing on nonzero decomposable
/// `(n−p, 0)`-forms.
///
/// Positive definiteness (checked first) proves it; a decomposable
/// violating vector refutes it.  Otherwise a deterministic wave of
/// near-monomial decomposables and a seeded random search over products of
/// `(1,0)`-forms look for a refutation, with hill-descent refinement of the
/// best candidate; every hit is re-verified in exact arithmetic.  A search
/// that finds nothing returns `Inconclusive` — sampling alone never proves
/// transversality.
pub fn is_transverse(
    omega: &Form<GaussRational>,
    config: &SearchConfig,
) -> PositivityVerdict<GaussRational> {
    let n = omega.n();
    let p = match square_bidegree(omega) {
        Ok(p) => p,
        Err(reason) => return PositivityVerdict::Inconclusive { reason },
    };
    let k = u32::from(n) - p;
    match is_positive_definite(omega) {
        PositivityVerdict::PositiveDefinite(_) => {
            return PositivityVerdict::Transverse {
                via_positive_definite: true,
                samples_checked: 0,
            }
        }
        PositivityVerdict::NotPositive(w) => {
            if is_certifiably_decomposable(&w.form, k) {
                return PositivityVerdict::NotPositive(w);
            }
        }
        _ => {}
    }

    let mut checked = 0usize;
    let mut best: Option<(Q, Vec<Form<GaussRational>>)> = None;

    let consider = |factors: &[Form<GaussRational>],
                        checked: &mut usize,
                        best: &mut Option<(Q, Vec<Form<GaussRational>>)>|
     -> Option<NonPositiveWitness<GaussRational>> {
        let mut psi = Form::one(n);
        for f in factors {
            psi = psi.wedge(f);
        }
        if psi.is_zero() {
            return None;
        }
        *checked += 1;
        let value = pairing_value(omega, &psi, &psi, k, 0).expect("degrees match");
        debug_assert!(value.is_real());
        if !value.re().is_positive() {
            return Some(NonPositiveWitness { form: psi, value, at: None });
        }
        let ratio = value.re() / &form_norm_sqr(&psi);
        if best.as_ref().map_or(true, |(r, _)| ratio < *r) {
            *best = Some((ratio, factors.to_vec()));
        }
        None
    };

    // Deterministic wave: monomials φ^S, then single-factor perturbations
    // φ^{s₁} ∧ … ∧ (φ^{s_t} ± φ^b) ∧ … and their ±i variants.
    let subsets: Vec<Vec<u8>> =
        Form::<GaussRational>::basis(n, k, 0).iter().map(|ix| ix.hol.to_vec()).collect();
    for s in &subsets {
        let factors: Vec<Form<GaussRational>> =
            s.iter().map(|j| Form::coframe(n, *j)).collect();
        if let Some(w) = consider(&factors, &mut checked, &mut best) {
            return PositivityVerdict::NotPositive(w);
        }
        for t in 0..s.len() {
            for b in 1..=n {
                if s.contains(&b) {
                    continue;
                }
                for c in [
                    GaussRational::one(),
                    GaussRational::one().neg(),
                    GaussRational::i(),
                    GaussRational::i().neg(),
                ] {
                    let mut factors: Vec<Form<GaussRational>> =
                        s.iter().map(|j| Form::coframe(n, *j)).collect();
                    factors[t] = &factors[t] + &Form::coframe(n, b).scale(&c);
                    if let Some(w) = consider(&factors, &mut checked, &mut best) {
                        return PositivityVerdict::NotPositive(w);
                    }
                }
            }
        }
    }

    // Randomized wave: products of k random (1,0)-forms.
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed ^ 0x7472616e73);
    for _ in 0..config.transverse_samples {
        let factors: Vec<Form<GaussRational>> =
            (0..k).map(|_| random_one_form(n, &mut rng)).collect();
        if let Some(w) = consider(&factors, &mut checked, &mut best) {
            return PositivityVerdict::NotPositive(w);
        }
    }

    // Hill descent on the best candidate's factors.
    if let Some((mut ratio, mut factors)) = best {
        let mut stale = 0usize;
        for round in 0..config.transverse_refinements {
            let step = q(1, 1 << (1 + round / 8).min(20));
            let mut improved = false;
            for t in 0..factors.len() {
                for b in 1..=n {
                    for c in [
                        GaussRational::from_rational(step.clone()),
                        GaussRational::from_rational(-&step),
                        GaussRational::from_rational(step.clone()).mul_i(),
                        GaussRational::from_rational(-&step).mul_i(),
                    ] {
                        let mut cand = factors.clone();
                        cand[t] = &cand[t] + &Form::coframe(n, b).scale(&c);
                        let mut psi = Form::one(n);
                        for f in &cand {
                            psi = psi.wedge(f);
                        }
                        if psi.is_zero() {
                            continue;
                        }
                        checked += 1;
                        let value =
                            pairing_value(omega, &psi, &psi, k, 0).expect("degrees match");
                        if !value.re().is_positive() {
                            return PositivityVerdict::NotPositive(NonPositiveWitness {
                                form: psi,
                                value,
                                at: None,
                            });
                        }
                        let r = value.re() / &form_norm_sqr(&psi);
                        if r < ratio {
                            ratio = r;
                            factors = cand;
                            improved = true;
                        }
                    }
                }
            }
            if improved {
                stale = 0;
            } else {
                stale += 1;
                if stale >= 16 {
                    break;
                }
            }
        }
    }

    PositivityVerdict::Inconclusive {
        reason: format!(
            "not positive definite, and no decomposable violation among {checked} candidates"
        ),
    }
}

/// Transversality for analytic coefficients: the positive-definiteness
/// shortcut on the ray, then a deterministic wave of near-monomial
/// decomposables whose self-pairings are refuted, where possible, by exact
/// interval evaluation at real sample points.
pub fn is_transverse_analytic(omega: &Form<AnalyticScalar>) -> PositivityVerdict<AnalyticScalar> {
    let n = omega.n();
    let p = match square_bidegree(omega) {
        Ok(p) => p,
        Err(reason) => return PositivityVerdict::Inconclusive { reason },
    };
    let k = u32::from(n) - p;
    match is_positive_definite_analytic(omega) {
        PositivityVerdict::PositiveDefinite(_) => {
            return PositivityVerdict::Transverse {
                via_positive_definite: true,
                samples_checked: 0,
            }
        }
        PositivityVerdict::NotPositive(w) => {
            if is_certifiably_decomposable(&w.form, k) {
                return PositivityVerdict::NotPositive(w);
            }
        }
        _ => {}
    }

    let mut checked = 0usize;
    let subsets: Vec<Vec<u8>> =
        Form::<AnalyticScalar>::basis(n, k, 0).iter().map(|ix| ix.hol.to_vec()).collect();
    let mut candidates: Vec<Form<AnalyticScalar>> = Vec::new();
    for s in &subsets {
        let mut psi = Form::one(n);
        for j in s {
            psi = psi.wedge(&Form::coframe(n, *j));
        }
        candidates.push(psi);
    }
    for a in 0..candidates.len() {
        for b in a + 1..candidates.len() {
            for c in [AnalyticScalar::one(), AnalyticScalar::one().neg()] {
                let cand = &candidates[a] + &candidates[b].scale(&c);
                if is_certifiably_decomposable(&cand, k) {
                    candidates.push(cand);
                }
            }
        }
    }
    for psi in &candidates {
        if psi.is_zero() {
            continue;
        }
        checked += 1;
        let value = pairing_value(omega, psi, psi, k, 0).expect("degrees match");
        if value.is_zero() {
            return PositivityVerdict::NotPositive(NonPositiveWitness {
                form: psi.clone(),
                value,
                at: None,
            });
        }
        if !value.is_real() {
            continue;
        }
        for (num, den) in REAL_POINT_FAN {
            let u0 = q(num, den);
            if let Some((_, hi)) = value.eval_interval_real(&u0, &q(1, 1_000_000_000)) {
                if !hi.is_positive() {
                    return PositivityVerdict::NotPositive(NonPositiveWitness {
                        form: psi.clone(),
                        value,
                        at: Some(u0),
                    });
                }
            }
        }
    }
    PositivityVerdict::Inconclusive {
        reason: format!(
            "not positive definite on the ray, and no decomposable violation among \
             {checked} deterministic candidates"
        ),
    }
}

fn form_norm_sqr(f: &Form<GaussRational>) -> Q {
    let mut acc = Q::zero();
    for (_, c) in f.terms() {
        acc += c.norm_sqr();
    }
    acc
}

fn random_one_form<R: Rng>(n: u8, rng: &mut R) -> Form<GaussRational> {
    let mut f = Form::zero(n);
    for j in 1..=n {
        let den = if rng.gen_bool(0.5) { 1 } else { 2 };
        let c = GaussRational::new(
            q(rng.gen_range(-2..=2), den),
            q(rng.gen_range(-2..=2), den),
        );
        if !c.is_zero() {
            f = &f + &Form::coframe(n, j).scale(&c);
        }
    }
    f
}

// ---------------------------------------------------------------------------
// Strong positivity
// ---------------------------------------------------------------------------

/// A decomposable `(k, 0)`-form, presented so that decomposability is
/// checkable: either as an explicit product of `(1,0)`-forms, or as a
/// `(2,0)`-form subject to the Plücker identity `ψ ∧ ψ = 0`.
#[derive(Clone, Debug, PartialEq)]
pub enum DecomposableGen<S: Scalar> {
    /// `ψ = f₁ ∧ … ∧ f_k` with each `f_t` of bidegree `(1, 0)`.
    Factors(Vec<Form<S>>),
    /// A `(2, 0)`-form with `ψ ∧ ψ = 0`.
    TwoForm(Form<S>),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CertificateError {
    #[error("generator {index} is not a decomposable form of degree ({degree}, 0)")]
    NotDecomposable { index: usize, degree: u32 },
}

/// A checked presentation `Ω = i^{k²} Σ_j ψ_j ∧ ψ̄_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct StrongPositivityCertificate<S: Scalar> {
    /// The validated decomposable generators `ψ_j`.
    pub generators: Vec<Form<S>>,
}

fn generator_form<S: Scalar>(gen: &DecomposableGen<S>, n: u8, k: u32) -> Option<Form<S>> {
    match gen {
        DecomposableGen::Factors(fs) => {
            if fs.len() != k as usize {
                return None;
            }
            let mut acc = Form::one(n);
            for f in fs {
                if f.bigraded_part(1, 0) != *f {
                    return None;
                }
                acc = acc.wedge(f);
            }
            Some(acc)
        }
        DecomposableGen::TwoForm(f) => {
            if k != 2 || f.bigraded_part(2, 0) != *f || !f.wedge(f).is_zero() {
                return None;
            }
            Some(f.clone())
        }
    }
}

/// Expand `i^{k²} Σ_j ψ_j ∧ ψ̄_j` for validated decomposable generators of
/// degree `(k, 0)`, returning the sum and the generator forms.
pub fn strongly_positive_sum<S: Scalar>(
    n: u8,
    k: u32,
    gens: &[DecomposableGen<S>],
) -> Result<(Form<S>, Vec<Form<S>>), CertificateError> {
    let mut sum = Form::zero(n);
    let mut forms = Vec::with_capacity(gens.len());
    for (index, gen) in gens.iter().enumerate() {
        let psi = generator_form(gen, n, k)
            .ok_or(CertificateError::NotDecomposable { index, degree: k })?;
        let term = mul_i_pow(GaussRational::one(), k * k);
        sum = &sum + &psi.wedge(&psi.conjugate()).scale(&S::from_gauss(&term));
        forms.push(psi);
    }
    Ok((sum, forms))
}

/// Check a strong-positivity certificate: validate that every generator is
/// decomposable of the right degree, re-expand the sum exactly, and compare
/// with `omega`.  `Refuted` carries the residual `omega − sum`.
pub fn check_strong_positivity_certificate<S: Scalar>(
    omega: &Form<S>,
    gens: &[DecomposableGen<S>],
) -> Result<Verdict<StrongPositivityCertificate<S>, Form<S>>, CertificateError> {
    let n = omega.n();
    let p = match square_bidegree(omega) {
        Ok(p) => p,
        Err(reason) => return Ok(Verdict::Inconclusive { reason }),
    };
    let (sum, forms) = strongly_positive_sum(n, p, gens)?;
    let residual = omega - &sum;
    if residual.is_zero() {
        Ok(Verdict::Proven(StrongPositivityCertificate { generators: forms }))
    } else {
        Ok(Verdict::Refuted(residual))
    }
}

/// Positivity verdict from an explicit certificate.  A certificate that
/// fails to reproduce the form proves nothing, so that case (and any
/// malformed generator) degrades to `Inconclusive`.
pub fn verdict_from_certificate<S: Scalar>(
    omega: &Form<S>,
    gens: &[DecomposableGen<S>],
) -> PositivityVerdict<S> {
    match check_strong_positivity_certificate(omega, gens) {
        Ok(Verdict::Proven(cert)) => {
            PositivityVerdict::StronglyPositive { generators: cert.generators }
        }
        Ok(Verdict::Refuted(_)) => PositivityVerdict::Inconclusive {
            reason: "the certificate does not reproduce the form".into(),
        },
        Ok(Verdict::Inconclusive { reason }) => PositivityVerdict::Inconclusive { reason },
        Err(e) => PositivityVerdict::Inconclusive { reason: e.to_string() },
    }
}

// ---------------------------------------------------------------------------
// Random positive data
// ---------------------------------------------------------------------------

/// A random strongly positive `(k, k)`-form together with its certificate.
///
/// One generator per `k`-element subset `S ⊆ {1,…,n}`: a perturbation of
/// the coordinate plane `φ^S` by small multiples of the other coframe
/// elements, scaled by a random positive rational.  Generators are resampled
/// until their span is all of `Λ^{k,0}`, which makes the result positive
/// definite (the wedge pairing into the volume form is perfect), not merely
/// strongly positive.
pub fn random_strongly_positive<R: Rng>(
    n: u8,
    k: u32,
    rng: &mut R,
) -> (Form<GaussRational>, Vec<DecomposableGen<GaussRational>>) {
    assert!(k >= 1 && k <= u32::from(n));
    let pairs = Form::<GaussRational>::basis(n, k, 0);
    let subsets: Vec<Vec<u8>> = pairs.iter().map(|ix| ix.hol.to_vec()).collect();
    for attempt in 0..32 {
        let mut gens = Vec::new();
        for s in &subsets {
            let mut factors = Vec::new();
            for (t, j) in s.iter().enumerate() {
                let mut f = Form::coframe(n, *j);
                if attempt + 1 < 32 {
                    for l in 1..=n {
                        if s.contains(&l) {
                            continue;
                        }
                        let c = GaussRational::new(
                            q(rng.gen_range(-1..=1), 8),
                            q(rng.gen_range(-1..=1), 8),
                        );
                        if !c.is_zero() {
                            f = &f + &Form::coframe(n, l).scale(&c);
                        }
                    }
                }
                if t == 0 {
                    let scale = q(rng.gen_range(1..=4), 2);
                    f = f.scale_q(&scale);
                }
                factors.push(f);
            }
            gens.push(DecomposableGen::Factors(factors));
        }
        let (omega, forms) =
            strongly_positive_sum(n, k, &gens).expect("generators are products by construction");
        let rows: Vec<Vec<GaussRational>> = forms
            .iter()
            .map(|f| f.coordinates(&pairs).expect("generators live in bidegree (k, 0)"))
            .collect();
        if linalg::rank_gauss(&rows) == pairs.len() {
            return (omega, gens);
        }
    }
    unreachable!("the unperturbed coordinate-plane generators always span");
}

/// A random positive definite invariant Hermitian metric
/// `F = i Σ H_{jk} φ^j ∧ φ̄^k`: the identity plus a small random Hermitian
/// perturbation, kept diagonally dominant so that positivity is automatic.
pub fn random_hermitian_metric<R: Rng>(n: u8, rng: &mut R) -> Form<GaussRational> {
    let dim = usize::from(n);
    let den = 4 * i64::from(n);
    let mut h = linalg::identity(dim);
    for j in 0..dim {
        for k in j..dim {
            let c = if j == k {
                GaussRational::from_rational(q(rng.gen_range(0..=1), den))
            } else {
                GaussRational::new(q(rng.gen_range(-1..=1), den), q(rng.gen_range(-1..=1), den))
            };
            h[j][k] = &h[j][k] + &c;
            if j != k {
                h[k][j] = &h[k][j] + &c.conj();
            }
        }
    }
    let mut f = Form::zero(n);
    for j in 0..dim {
        for k in 0..dim {
            if h[j][k].is_zero() {
                continue;
            }
            f = &f
                + &Form::monomial(n, &[j as u8 + 1], &[k as u8 + 1], h[j][k].mul_i());
        }
    }
    f
}

// ---------------------------------------------------------------------------
// The (n−1)-st root of a positive (n−1, n−1)-form
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub enum RootMetricOutcome {
    /// The root is rational: `F^{n−1}/(n−1)!` reproduces the input exactly.
    Exact(Form<GaussRational>),
    /// The root exists but involves an irrational determinant root; the
    /// metric is returned numerically with the max-norm residual of
    /// `F^{n−1}/(n−1)! −` input.
    Numeric { metric: Form<C64>, residual: f64 },
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RootMetricError {
    #[error("the input must be a nonzero real form of bidegree (n−1, n−1) with n ≥ 2")]
    WrongDegree,
    #[error("the associated Hermitian matrix is not positive definite")]
    NotPositive,
}

/// `H_{jk}` = volume coefficient of `i φ^j ∧ φ̄^k ∧ Φ`: the Hermitian
/// matrix a candidate `(n−1, n−1)`-form pairs out against the metric
/// monomials.  When `Φ = F^{n−1}/(n−1)!` for `F = i Σ M_{jk} φ^j ∧ φ̄^k`,
/// this recovers the transposed adjugate of `M`.
fn paired_matrix(phi: &Form<GaussRational>) -> QMatrix {
    let n = phi.n();
    let dim = usize::from(n);
    let mut h = vec![vec![GaussRational::zero(); dim]; dim];
    for (j, row) in h.iter_mut().enumerate() {
        for (k, entry) in row.iter_mut().enumerate() {
            let w = Form::coframe(n, j as u8 + 1)
                .mul_i()
                .wedge(&Form::coframe_bar(n, k as u8 + 1))
                .wedge(phi);
            *entry = w.vol_coefficient().expect("(n, n) by construction");
        }
    }
    h
}

fn rational_nth_root(x: &Q, r: u32) -> Option<Q> {
    if !x.is_positive() {
        return None;
    }
    if r == 1 {
        return Some(x.clone());
    }
    let num_root = x.numer().nth_root(r);
    let den_root = x.denom().nth_root(r);
    if num::pow(num_root.clone(), r as usize) == *x.numer()
        && num::pow(den_root.clone(), r as usize) == *x.denom()
    {
        Some(Q::new(num_root, den_root))
    } else {
        None
    }
}

/// Invert the power map on metrics: given a positive `(n−1, n−1)`-form
/// `Φ`, find the unique Hermitian metric `F` with `F^{n−1}/(n−1)! = Φ`.
///
/// The paired matrix `H` of `Φ` must be the transposed adjugate of the
/// metric matrix `M`, which forces `M = c · (Hᵀ)^{−1}` with
/// `c^{n−1} = det H`.  Positivity of `Φ` in the needed sense is exactly
/// positive definiteness of `H`.  When `det H` has a rational `(n−1)`-st
/// root the answer is exact (and the round-trip identity holds by
/// construction); otherwise the metric is computed numerically and returned
/// with its residual.
pub fn root_metric(phi: &Form<GaussRational>) -> Result<RootMetricOutcome, RootMetricError> {
    let n = phi.n();
    if n < 2 || phi.is_zero() {
        return Err(RootMetricError::WrongDegree);
    }
    let p = u32::from(n) - 1;
    if phi.bigraded_part(p, p) != *phi {
        return Err(RootMetricError::WrongDegree);
    }
    if !phi.is_real() {
        return Err(RootMetricError::NotPositive);
    }
    let h = paired_matrix(phi);
    if linalg::hermitian_is_pd(&h) != Some(true) {
        return Err(RootMetricError::NotPositive);
    }
    let det = linalg::det(&h).re().clone();
    match rational_nth_root(&det, p) {
        Some(c) => {
            let hinv = linalg::inverse(&h).expect("positive definite");
            let scale = GaussRational::from_rational(c);
            let dim = usize::from(n);
            let mut f = Form::zero(n);
            for j in 0..dim {
                for k in 0..dim {
                    let m_jk = &hinv[k][j] * &scale;
                    if m_jk.is_zero() {
                        continue;
                    }
                    f = &f + &Form::monomial(n, &[j as u8 + 1], &[k as u8 + 1], m_jk.mul_i());
                }
            }
            debug_assert!({
                let fact: u32 = (1..=p).product();
                let power = f.wedge_pow(p).scale_q(&q(1, i64::from(fact)));
                power == *phi
            });
            Ok(RootMetricOutcome::Exact(f))
        }
        None => {
            let (metric, residual) = numeric_root_core(&phi.eval_u(C64::new(0.0, 0.0)))?;
            Ok(RootMetricOutcome::Numeric { metric, residual })
        }
    }
}

/// Numeric-only variant of [`root_metric`], for forms that are already
/// floating point.  Returns the metric and the round-trip residual.
pub fn root_metric_numeric(phi: &Form<C64>) -> Result<(Form<C64>, f64), RootMetricError> {
    let n = phi.n();
    if n < 2 || phi.is_zero() {
        return Err(RootMetricError::WrongDegree);
    }
    let p = u32::from(n) - 1;
    if phi.bigraded_part(p, p) != *phi {
        return Err(RootMetricError::WrongDegree);
    }
    numeric_root_core(phi)
}

fn numeric_root_core(phi: &Form<C64>) -> Result<(Form<C64>, f64), RootMetricError> {
    let n = phi.n();
    let dim = usize::from(n);
    let p = u32::from(n) - 1;
    let mut h = vec![vec![C64::new(0.0, 0.0); dim]; dim];
    for (j, row) in h.iter_mut().enumerate() {
        for (k, entry) in row.iter_mut().enumerate() {
            let w = Form::<C64>::coframe(n, j as u8 + 1)
                .mul_i()
                .wedge(&Form::coframe_bar(n, k as u8 + 1))
                .wedge(phi);
            *entry = w.vol_coefficient().expect("(n, n) by construction");
        }
    }
    let (vals, _) = linalg::jacobi_hermitian(&h);
    let scale_ref = vals.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if vals.iter().any(|v| *v <= 1.0e-12 * scale_ref.max(1.0)) {
        return Err(RootMetricError::NotPositive);
    }
    let det: f64 = vals.iter().product();
    let c = det.powf(1.0 / f64::from(p));
    let hinv = linalg::numeric_inverse(&h).ok_or(RootMetricError::NotPositive)?;
    let mut f = Form::zero(n);
    for j in 0..dim {
        for k in 0..dim {
            let m_jk = hinv[k][j] * c;
            f = &f + &Form::monomial(n, &[j as u8 + 1], &[k as u8 + 1], m_jk * C64::new(0.0, 1.0));
        }
    }
    let fact: u32 = (1..=p).product();
    let power = f.wedge_pow(p).scale(&C64::new(1.0 / f64::from(fact), 0.0));
    let diff = &power - phi;
    let residual = diff.terms().map(|(_, c)| c.norm()).fold(0.0f64, f64::max);
    Ok((f, residual))
}

// ---------------------------------------------------------------------------
// Witness verification
// ---------------------------------------------------------------------------

/// Re-check a non-positivity witness from scratch: the form is nonzero, the
/// recorded value is its exact self-pairing, and the value is a real
/// non-positive number.
pub fn verify_nonpositive_witness(
    omega: &Form<GaussRational>,
    witness: &NonPositiveWitness<GaussRational>,
) -> bool {
    if witness.form.is_zero() {
        return false;
    }
    let Ok(p) = square_bidegree(omega) else { return false };
    let k = u32::from(omega.n()) - p;
    let Ok(value) = pairing_value(omega, &witness.form, &witness.form, k, 0) else {
        return false;
    };
    value == witness.value && value.is_real() && !value.re().is_positive()
}

/// Re-check an analytic non-positivity witness: the recorded value is the
/// exact self-pairing, and it is either identically zero or certified
/// non-positive at the recorded real point by interval evaluation.
pub fn verify_nonpositive_witness_analytic(
    omega: &Form<AnalyticScalar>,
    witness: &NonPositiveWitness<AnalyticScalar>,
) -> bool {
    if witness.form.is_zero() {
        return false;
    }
    let Ok(p) = square_bidegree(omega) else { return false };
    let k = u32::from(omega.n()) - p;
    let Ok(value) = pairing_value(omega, &witness.form, &witness.form, k, 0) else {
        return false;
    };
    if value != witness.value {
        return false;
    }
    if value.is_zero() {
        return true;
    }
    let Some(at) = &witness.at else { return false };
    match value.eval_interval_real(at, &q(1, 1_000_000_000)) {
        Some((_, hi)) => !hi.is_positive(),
        None => false,
    }
}
