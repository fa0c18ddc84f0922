//! A non-invariant Hodge–Riemann balanced structure on Iwasawa × ℂ.
//!
//! The complex dimension is four: three Iwasawa directions with
//! `dφ³ = −φ^{12}` and one flat coordinate direction with `φ⁴ = du`.
//! Coefficients live in the analytic ring `ℚ(i)[u, ū, e^{±U}]` with
//! `U = |u|²`, so the exterior differential combines the structure
//! equations with the coordinate rule `du = φ⁴`, `dū = φ̄⁴`.
//!
//! [`verify_all`] rebuilds every quantity of the construction — the closed
//! positive `(2, 2)`-form `Ω`, the Hermitian form `ω₀`, the diagonalizing
//! `(2, 0)`-basis `Ψ`, the primitive `(1, 1)`-basis `Ξ`, and the `3 × 3`
//! interaction block `B` — and checks the whole structure as
//! coefficient-level identities in the ring.  Positivity on the ray
//! `U ≥ 0` is certified by derivative-chain ray certificates, and every
//! identity is re-checked numerically at seeded sample points, including a
//! metric root round-trip.  The restriction `u ≡ 0` is also exercised: the
//! invariant core cannot carry such a structure, and the obstruction scan
//! exhibits the responsible coframe direction.

use crate::exterior::{standard_kaehler, Form};
use crate::hodge_riemann::check_hr_balanced;
use crate::lie_complex::ComplexLieAlgebra;
use crate::linalg;
use crate::obstructions::{nilpotent_verdict, StructureConclusion, WitnessKind};
use crate::positivity::{gram_q, pairing_value, root_metric_numeric, GramMatrix};
use crate::scalar::{q, sign_on_ray, AnalyticScalar, GaussRational, Q, C64};
use crate::Verdict;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use std::fmt::Write as _;

/// Default number of numeric sample points.
pub const DEFAULT_SAMPLES: u32 = 32;

const SAMPLE_SEED: u64 = 0x4957_4153_4157_4143;
const TOLERANCE: f64 = 1.0e-9;

/// Shorthand for `(re + im·i) · uᵃ ūᵇ e^{mU}`.
fn t(re: i64, im: i64, a: u32, b: u32, m: i32) -> AnalyticScalar {
    AnalyticScalar::term(GaussRational::new(q(re, 1), q(im, 1)), a, b, m)
}

fn sum(parts: &[AnalyticScalar]) -> AnalyticScalar {
    parts.iter().fold(AnalyticScalar::zero(), |acc, p| &acc + p)
}

/// The value of an analytic scalar at `u = 0`, exactly.
fn at_zero(s: &AnalyticScalar) -> GaussRational {
    s.terms()
        .filter(|(e, _)| e.a == 0 && e.b == 0)
        .fold(GaussRational::zero(), |acc, (_, c)| &acc + c)
}

// ---------------------------------------------------------------------------
// The structure
// ---------------------------------------------------------------------------

/// The ambient algebra: Iwasawa × ℂ with the fourth direction carrying the
/// analytic coordinate.
pub fn algebra() -> ComplexLieAlgebra {
    crate::catalog::iwasawa_times_c_analytic()
}

/// The closed positive-definite `(2, 2)`-form `Ω`.
pub fn big_omega() -> Form<AnalyticScalar> {
    let one = AnalyticScalar::one;
    let mixed_diag = |hol: &[u8; 2]| {
        Form::monomial(4, hol, hol, &one() + &t(1, 0, 1, 1, 2))
    };
    sum_forms(&[
        Form::monomial(4, &[1, 2], &[1, 2], t(1, 0, 0, 0, 1)),
        Form::monomial(4, &[1, 3], &[1, 3], one()),
        mixed_diag(&[1, 4]),
        Form::monomial(4, &[2, 3], &[2, 3], one()),
        mixed_diag(&[2, 4]),
        Form::monomial(4, &[3, 4], &[3, 4], &t(1, 0, 0, 0, 1) + &t(1, 0, 1, 1, 1)),
        Form::monomial(4, &[1, 2], &[3, 4], t(1, 0, 1, 0, 1)),
        Form::monomial(4, &[3, 4], &[1, 2], t(1, 0, 0, 1, 1)),
    ])
}

/// The Hermitian form `ω₀ = i(φ^{1 1̄} + φ^{2 2̄} + e^{−U} φ^{3 3̄} + φ^{4 4̄})`.
pub fn omega_zero() -> Form<AnalyticScalar> {
    sum_forms(&[
        Form::monomial(4, &[1], &[1], t(0, 1, 0, 0, 0)),
        Form::monomial(4, &[2], &[2], t(0, 1, 0, 0, 0)),
        Form::monomial(4, &[3], &[3], t(0, 1, 0, 0, -1)),
        Form::monomial(4, &[4], &[4], t(0, 1, 0, 0, 0)),
    ])
}

/// The `(2, 0)`-basis that diagonalizes the pairing of `Ω`:
/// `Ψ¹ = e^U(φ^{12} − ū φ^{34})`, then the five monomials
/// `φ^{13}, φ^{14}, φ^{23}, φ^{24}, φ^{34}`.
pub fn psi_basis() -> Vec<Form<AnalyticScalar>> {
    let one = AnalyticScalar::one;
    vec![
        &Form::monomial(4, &[1, 2], &[], t(1, 0, 0, 0, 1))
            - &Form::monomial(4, &[3, 4], &[], t(1, 0, 0, 1, 1)),
        Form::monomial(4, &[1, 3], &[], one()),
        Form::monomial(4, &[1, 4], &[], one()),
        Form::monomial(4, &[2, 3], &[], one()),
        Form::monomial(4, &[2, 4], &[], one()),
        Form::monomial(4, &[3, 4], &[], one()),
    ]
}

/// Diagonal of the pairing of `Ω` on [`psi_basis`]:
/// `e^{3U}, 1 + U e^{2U}, 1, 1 + U e^{2U}, 1, e^U`.
pub fn psi_gram_diagonal() -> Vec<AnalyticScalar> {
    let quad = || &AnalyticScalar::one() + &t(1, 0, 1, 1, 2);
    vec![
        t(1, 0, 0, 0, 3),
        quad(),
        AnalyticScalar::one(),
        quad(),
        AnalyticScalar::one(),
        t(1, 0, 0, 0, 1),
    ]
}

/// `(2U + 1)e^U + 1 + e^{−U}`: the coefficient tying `φ^{1 1̄}` and
/// `φ^{2 2̄}` to `φ^{4 4̄}` inside the primitive space.
fn g_coef() -> AnalyticScalar {
    sum(&[t(2, 0, 1, 1, 1), t(1, 0, 0, 0, 1), t(1, 0, 0, 0, 0), t(1, 0, 0, 0, -1)])
}

/// `2U e^U + 1 + 2e^{−U}`: the analogous coefficient for `φ^{3 3̄}`.
fn h_coef() -> AnalyticScalar {
    sum(&[t(2, 0, 1, 1, 1), t(1, 0, 0, 0, 0), t(2, 0, 0, 0, -1)])
}

/// The fifteen-element basis of the primitive `(1, 1)`-space of
/// `ω₀ ∧ Ω`, chosen so that the pairing Gram matrix is diagonal apart
/// from the leading `3 × 3` block.
pub fn xi_basis() -> Vec<Form<AnalyticScalar>> {
    let one = AnalyticScalar::one;
    let three = || AnalyticScalar::from_int(3);
    vec![
        &Form::monomial(4, &[1], &[1], three()) - &Form::monomial(4, &[4], &[4], g_coef()),
        &Form::monomial(4, &[2], &[2], three()) - &Form::monomial(4, &[4], &[4], g_coef()),
        &Form::monomial(4, &[3], &[3], t(3, 0, 0, 0, -1))
            - &Form::monomial(4, &[4], &[4], h_coef()),
        Form::monomial(4, &[1], &[2], one()),
        &Form::monomial(4, &[1], &[3], one()) + &Form::monomial(4, &[4], &[2], t(1, 0, 0, 1, 1)),
        Form::monomial(4, &[1], &[4], one()),
        Form::monomial(4, &[2], &[1], one()),
        &Form::monomial(4, &[2], &[3], one()) - &Form::monomial(4, &[4], &[1], t(1, 0, 0, 1, 1)),
        &Form::monomial(4, &[3], &[2], one()) - &Form::monomial(4, &[1], &[4], t(1, 0, 1, 0, 1)),
        &Form::monomial(4, &[3], &[1], one()) + &Form::monomial(4, &[2], &[4], t(1, 0, 1, 0, 1)),
        Form::monomial(4, &[2], &[4], one()),
        Form::monomial(4, &[3], &[4], one()),
        Form::monomial(4, &[4], &[1], one()),
        Form::monomial(4, &[4], &[2], one()),
        Form::monomial(4, &[4], &[3], one()),
    ]
}

/// The symmetric `3 × 3` interaction block:  the pairing Gram matrix on
/// the first three elements of [`xi_basis`] equals `3B`.
pub fn b_matrix() -> Vec<Vec<AnalyticScalar>> {
    let two = GaussRational::from_int(2);
    let b11 = g_coef().scale(&two);
    let b12 = sum(&[t(1, 0, 1, 1, 1), t(-1, 0, 0, 0, 1), t(2, 0, 0, 0, 0), t(2, 0, 0, 0, -1)]);
    let b13 = sum(&[t(1, 0, 1, 1, 1), t(1, 0, 0, 0, 1), t(2, 0, 0, 0, 0)]);
    let b33 = h_coef().scale(&two);
    vec![
        vec![b11.clone(), b12.clone(), b13.clone()],
        vec![b12, b11, b13.clone()],
        vec![b13.clone(), b13, b33],
    ]
}

/// The printed expansion of `ω₀ ∧ Ω`:
/// `3i φ^{123 1̄2̄3̄} + i(2U e^{2U} + e^U + 2) φ^{124 1̄2̄4̄}
///  + i((2U+1)e^U + 1 + e^{−U}) (φ^{134 1̄3̄4̄} + φ^{234 2̄3̄4̄})`.
pub fn product_expansion() -> Form<AnalyticScalar> {
    let side = g_coef().mul_i();
    sum_forms(&[
        Form::monomial(4, &[1, 2, 3], &[1, 2, 3], t(0, 3, 0, 0, 0)),
        Form::monomial(
            4,
            &[1, 2, 4],
            &[1, 2, 4],
            sum(&[t(0, 2, 1, 1, 2), t(0, 1, 0, 0, 1), t(0, 2, 0, 0, 0)]),
        ),
        Form::monomial(4, &[1, 3, 4], &[1, 3, 4], side.clone()),
        Form::monomial(4, &[2, 3, 4], &[2, 3, 4], side),
    ])
}

/// `det B = 6e^{−U}(U + 1)(e^{2U}(3U + 1) + 3e^U + 2)(e^{2U}(3U − 1) + 4)`.
pub fn det_b_factored() -> AnalyticScalar {
    let u_plus_1 = &t(1, 0, 1, 1, 0) + &AnalyticScalar::one();
    let f1 = sum(&[t(3, 0, 1, 1, 2), t(1, 0, 0, 0, 2), t(3, 0, 0, 0, 1), t(2, 0, 0, 0, 0)]);
    let f2 = sum(&[t(3, 0, 1, 1, 2), t(-1, 0, 0, 0, 2), t(4, 0, 0, 0, 0)]);
    &(&(&t(6, 0, 0, 0, -1) * &u_plus_1) * &f1) * &f2
}

/// The expanded form of the same determinant:
/// `6e^{−U}(U + 1)(e^{4U}(9U² − 1) + e^{3U}(9U − 3) + 2e^{2U}(9U + 1) + 12e^U + 8)`.
fn det_b_expanded() -> AnalyticScalar {
    let u_plus_1 = &t(1, 0, 1, 1, 0) + &AnalyticScalar::one();
    let poly = sum(&[
        t(9, 0, 2, 2, 4),
        t(-1, 0, 0, 0, 4),
        t(9, 0, 1, 1, 3),
        t(-3, 0, 0, 0, 3),
        t(18, 0, 1, 1, 2),
        t(2, 0, 0, 0, 2),
        t(12, 0, 0, 0, 1),
        t(8, 0, 0, 0, 0),
    ]);
    &(&t(6, 0, 0, 0, -1) * &u_plus_1) * &poly
}

/// `det B₂ₓ₂ = 3(U + 1)(e^{2U}(5U + 1) + 4e^U + 4)` for the leading
/// `2 × 2` minor (the block of `B` without its third row and column).
pub fn det_b_leading_factored() -> AnalyticScalar {
    let u_plus_1 = &t(1, 0, 1, 1, 0) + &AnalyticScalar::one();
    let inner = sum(&[t(5, 0, 1, 1, 2), t(1, 0, 0, 0, 2), t(4, 0, 0, 0, 1), t(4, 0, 0, 0, 0)]);
    (&u_plus_1 * &inner).scale(&GaussRational::from_int(3))
}

fn sum_forms(parts: &[Form<AnalyticScalar>]) -> Form<AnalyticScalar> {
    parts.iter().fold(Form::zero(4), |acc, p| &acc + p)
}

fn det2(m: &[Vec<AnalyticScalar>]) -> AnalyticScalar {
    &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
}

fn det3(m: &[Vec<AnalyticScalar>]) -> AnalyticScalar {
    let c0 = &(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1]);
    let c1 = &(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0]);
    let c2 = &(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0]);
    &(&(&m[0][0] * &c0) - &(&m[0][1] * &c1)) + &(&m[0][2] * &c2)
}

fn det3_numeric(m: &[Vec<C64>]) -> C64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Restriction of an analytic-coefficient form to the invariant slice
/// `u = 0`, with exact rational output.
pub fn invariant_restriction(f: &Form<AnalyticScalar>) -> Form<GaussRational> {
    f.map_scalars(at_zero)
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

/// Outcome of one named identity check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    /// The verified identity, or the offending identity with its residual.
    pub detail: String,
}

impl CheckResult {
    fn pass(name: &'static str, detail: impl Into<String>) -> Self {
        CheckResult { name, passed: true, detail: detail.into() }
    }

    fn fail(name: &'static str, detail: impl Into<String>) -> Self {
        CheckResult { name, passed: false, detail: detail.into() }
    }
}

/// Aggregated verification outcome; see [`verify_all`].
#[derive(Clone, Debug)]
pub struct IwasawaCReport {
    pub samples: u32,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    /// `det B` at `U = 0`, computed both by evaluating the factorization
    /// and by a direct rational determinant (both must give 108).
    pub det_b_at_zero: Q,
    /// Largest relative residual over all numeric sample checks.
    pub max_numeric_residual: f64,
}

impl IwasawaCReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn check_omega_closed(g: &ComplexLieAlgebra, omega: &Form<AnalyticScalar>) -> CheckResult {
    let name = "omega-closed";
    if !omega.is_real() {
        return CheckResult::fail(name, "Ω is not a real form");
    }
    let d = g.d(omega);
    if d.is_zero() {
        CheckResult::pass(name, "dΩ = 0 exactly in the analytic ring")
    } else {
        CheckResult::fail(name, format!("dΩ ≠ 0; residual {d}"))
    }
}

fn check_psi_gram(gram: &GramMatrix<AnalyticScalar>) -> CheckResult {
    let name = "psi-gram-diagonal";
    let expected = psi_gram_diagonal();
    for a in 0..gram.dim() {
        for b in 0..gram.dim() {
            let want = if a == b { expected[a].clone() } else { AnalyticScalar::zero() };
            if gram.entries[a][b] != want {
                return CheckResult::fail(
                    name,
                    format!(
                        "Q(Ψ{}, Ψ{}) = {}, expected {}",
                        a + 1,
                        b + 1,
                        gram.entries[a][b],
                        want
                    ),
                );
            }
        }
    }
    CheckResult::pass(
        name,
        "the pairing of Ω on the Ψ basis is diagonal with values e^{3U}, 1 + U e^{2U}, 1, \
         1 + U e^{2U}, 1, e^U; all thirty off-diagonal entries vanish exactly",
    )
}

fn check_product_expansion(product: &Form<AnalyticScalar>) -> CheckResult {
    let name = "product-expansion";
    let expected = product_expansion();
    if *product == expected {
        CheckResult::pass(name, "ω₀ ∧ Ω matches its four-term expansion coefficient by coefficient")
    } else {
        CheckResult::fail(name, format!("ω₀ ∧ Ω differs from the expansion by {}", product - &expected))
    }
}

/// A scalar that vanishes nowhere: a single monomial `c·e^{mU}`.
fn is_unit(s: &AnalyticScalar) -> bool {
    let mut it = s.terms();
    match (it.next(), it.next()) {
        (Some((e, _)), None) => e.a == 0 && e.b == 0,
        _ => false,
    }
}

/// Pointwise independence at every point of the coordinate line, by
/// unit-pivot elimination: repeatedly find a column whose only remaining
/// nonzero entry is a nowhere-vanishing monomial; success exhibits a square
/// submatrix that is triangular (up to permutation) with unit diagonal.
fn independent_everywhere(rows: &[Vec<AnalyticScalar>]) -> bool {
    if rows.is_empty() {
        return true;
    }
    let cols = rows[0].len();
    let mut row_open = vec![true; rows.len()];
    let mut col_open = vec![true; cols];
    for _ in 0..rows.len() {
        let mut advanced = false;
        'columns: for c in 0..cols {
            if !col_open[c] {
                continue;
            }
            let mut only: Option<usize> = None;
            for (r, row) in rows.iter().enumerate() {
                if row_open[r] && !row[c].is_zero() {
                    if only.is_some() {
                        continue 'columns;
                    }
                    only = Some(r);
                }
            }
            let Some(r) = only else { continue };
            if !is_unit(&rows[r][c]) {
                continue;
            }
            row_open[r] = false;
            col_open[c] = false;
            advanced = true;
            break;
        }
        if !advanced {
            return false;
        }
    }
    true
}

fn check_xi_primitive(
    xi: &[Form<AnalyticScalar>],
    product: &Form<AnalyticScalar>,
) -> CheckResult {
    let name = "xi-primitive-basis";
    for (i, form) in xi.iter().enumerate() {
        let wedge = form.wedge(product);
        if !wedge.is_zero() {
            return CheckResult::fail(
                name,
                format!("Ξ{} ∧ ω₀ ∧ Ω ≠ 0; residual {wedge}", i + 1),
            );
        }
    }
    let basis = Form::<AnalyticScalar>::basis(4, 1, 1);
    let rows: Vec<Vec<AnalyticScalar>> = xi
        .iter()
        .map(|f| f.coordinates(&basis).expect("Ξ is a (1,1)-form"))
        .collect();
    if independent_everywhere(&rows) {
        CheckResult::pass(
            name,
            "all fifteen Ξ lie in the primitive space of ω₀ ∧ Ω and are independent at every \
             point (unit-pivot elimination)",
        )
    } else {
        CheckResult::fail(name, "no unit-pivot elimination order; independence not certified")
    }
}

fn check_xi_gram(gram: &GramMatrix<AnalyticScalar>) -> CheckResult {
    let name = "xi-gram-block";
    let b = b_matrix();
    let three = GaussRational::from_int(3);
    for a in 0..gram.dim() {
        for c in 0..gram.dim() {
            let entry = &gram.entries[a][c];
            if a < 3 && c < 3 {
                let want = b[a][c].scale(&three);
                if *entry != want {
                    return CheckResult::fail(
                        name,
                        format!("Q′(Ξ{}, Ξ{}) = {entry}, expected {want} = 3·B entry", a + 1, c + 1),
                    );
                }
            } else if a != c {
                if !entry.is_zero() {
                    return CheckResult::fail(
                        name,
                        format!("Q′(Ξ{}, Ξ{}) = {entry}, expected 0", a + 1, c + 1),
                    );
                }
            } else {
                let Some(p) = entry.as_upolynomial() else {
                    return CheckResult::fail(
                        name,
                        format!("Q′(Ξ{0}, Ξ{0}) = {entry} is not a polynomial in U", a + 1),
                    );
                };
                if !sign_on_ray(&p).is_proven() {
                    return CheckResult::fail(
                        name,
                        format!("Q′(Ξ{0}, Ξ{0}) = {entry} lacks a positivity certificate", a + 1),
                    );
                }
            }
        }
    }
    CheckResult::pass(
        name,
        "the pairing Gram matrix on the Ξ basis is diagonal apart from the leading block, \
         the block equals 3B entry by entry, and every later diagonal entry carries a ray \
         positivity certificate",
    )
}

fn check_determinants(report_det: &mut Q) -> CheckResult {
    let name = "b-determinants";
    let b = b_matrix();
    let det = det3(&b);
    if det != det_b_factored() {
        return CheckResult::fail(name, format!("det B = {det} does not match its factorization"));
    }
    if det != det_b_expanded() {
        return CheckResult::fail(name, "the two printed forms of det B disagree".to_string());
    }
    let leading = det2(&b);
    if leading != det_b_leading_factored() {
        return CheckResult::fail(
            name,
            format!("the leading 2×2 minor {leading} does not match its factorization"),
        );
    }
    // det B at U = 0 by two routes: evaluate the factorization, and take a
    // direct rational determinant of B(0).
    let from_factorization = at_zero(&det_b_factored());
    let b_zero: Vec<Vec<GaussRational>> =
        b.iter().map(|row| row.iter().map(at_zero).collect()).collect();
    let direct = linalg::det(&b_zero);
    if from_factorization != GaussRational::from_int(108) || direct != GaussRational::from_int(108)
    {
        return CheckResult::fail(
            name,
            format!(
                "det B(0) should be 108; factorization gives {from_factorization}, direct \
                 determinant gives {direct}"
            ),
        );
    }
    *report_det = from_factorization.re().clone();
    CheckResult::pass(
        name,
        "det B matches both printed factorizations; det B(0) = 108 by evaluating the \
         factorization and by a direct 3×3 determinant",
    )
}

fn check_sylvester_ray() -> CheckResult {
    let name = "sylvester-ray";
    let b = b_matrix();
    let minors = [b[0][0].clone(), det2(&b), det3(&b)];
    for (k, minor) in minors.iter().enumerate() {
        let Some(p) = minor.as_upolynomial() else {
            return CheckResult::fail(
                name,
                format!("leading minor {} is not a polynomial in U", k + 1),
            );
        };
        if !sign_on_ray(&p).is_proven() {
            return CheckResult::fail(
                name,
                format!("no ray positivity certificate for leading minor {}", k + 1),
            );
        }
    }
    // The last factor of det B is the only one that is not visibly
    // positive: f(U) = e^{2U}(3U − 1) + 4 has f(0) = 3 and
    // f′(U) = e^{2U}(6U + 1).
    let f = sum(&[t(3, 0, 1, 1, 2), t(-1, 0, 0, 0, 2), t(4, 0, 0, 0, 0)])
        .as_upolynomial()
        .expect("f is a polynomial in U");
    let f_prime = sum(&[t(6, 0, 1, 1, 2), t(1, 0, 0, 0, 2)])
        .as_upolynomial()
        .expect("f′ is a polynomial in U");
    if f.eval_at_zero() != q(3, 1) || f.derivative() != f_prime {
        return CheckResult::fail(name, "the derivative chain for e^{2U}(3U − 1) + 4 is wrong");
    }
    if !sign_on_ray(&f).is_proven() {
        return CheckResult::fail(name, "no ray certificate for e^{2U}(3U − 1) + 4");
    }
    CheckResult::pass(
        name,
        "all three leading principal minors of B carry ray positivity certificates; the \
         critical factor e^{2U}(3U − 1) + 4 has value 3 at 0 and derivative e^{2U}(6U + 1)",
    )
}

fn check_product_closed(
    g: &ComplexLieAlgebra,
    product: &Form<AnalyticScalar>,
) -> CheckResult {
    let name = "product-del-closed";
    let del = g.del(product);
    if !del.is_zero() {
        return CheckResult::fail(name, format!("∂(ω₀ ∧ Ω) ≠ 0; residual {del}"));
    }
    let d = g.d(product);
    if !d.is_zero() {
        return CheckResult::fail(name, format!("d(ω₀ ∧ Ω) ≠ 0; residual {d}"));
    }
    // The only non-closed summand of ω₀:
    // ∂(e^{−U} φ^{3 3̄}) = e^{−U}(ū φ^{34 3̄} − φ^{12 3̄}).
    let lhs = g.del(&Form::monomial(4, &[3], &[3], t(1, 0, 0, 0, -1)));
    let rhs = &Form::monomial(4, &[3, 4], &[3], t(1, 0, 0, 1, -1))
        - &Form::monomial(4, &[1, 2], &[3], t(1, 0, 0, 0, -1));
    if lhs != rhs {
        return CheckResult::fail(name, format!("∂(e^{{−U}} φ^{{3 3̄}}) = {lhs}, expected {rhs}"));
    }
    CheckResult::pass(
        name,
        "∂(ω₀ ∧ Ω) = 0 and d(ω₀ ∧ Ω) = 0 exactly; the summand identity \
         ∂(e^{−U} φ^{3 3̄}) = e^{−U}(ū φ^{34 3̄} − φ^{12 3̄}) holds",
    )
}

fn check_non_invariance(product: &Form<AnalyticScalar>) -> CheckResult {
    let name = "non-invariance";
    let depends = product.terms().any(|(_, c)| c.as_gauss().is_none());
    if depends {
        CheckResult::pass(
            name,
            "ω₀ ∧ Ω is closed yet has coordinate-dependent coefficients: the structure is \
             genuinely non-invariant",
        )
    } else {
        CheckResult::fail(name, "every coefficient of ω₀ ∧ Ω is constant")
    }
}

fn check_invariant_core() -> CheckResult {
    let name = "invariant-core-obstruction";
    let core = crate::catalog::iwasawa_times_c();
    let big_zero = invariant_restriction(&big_omega());
    let omega_zero_zero = invariant_restriction(&omega_zero());
    if omega_zero_zero != standard_kaehler::<GaussRational>(4) {
        return CheckResult::fail(name, "ω₀ does not restrict to the standard form at u = 0");
    }
    if core.d(&big_zero).is_zero() {
        return CheckResult::fail(name, "the restriction of Ω is closed on the invariant core");
    }
    let candidate = check_hr_balanced(
        &core,
        &standard_kaehler::<GaussRational>(4),
        &omega_zero_zero,
        &big_zero,
    );
    if !candidate.is_refuted() {
        return CheckResult::fail(
            name,
            "the restricted structure unexpectedly passes on the invariant core",
        );
    }
    match nilpotent_verdict(&core) {
        Ok(Verdict::Proven(StructureConclusion::Obstructed(hit)))
            if hit.alpha == Form::coframe(4, 3)
                && hit.witness.kind == WitnessKind::OneFormDelClosed =>
        {
            CheckResult::pass(
                name,
                "at u = 0 the restriction of Ω is no longer closed, the restricted candidate is \
                 refuted, and the scan exhibits the third coframe direction as a holomorphic-\
                 square obstruction: the invariant core admits no such structure at all",
            )
        }
        other => CheckResult::fail(
            name,
            format!("expected the third coframe direction as obstruction, got {other:?}"),
        ),
    }
}

fn relative(diff: f64, scale: f64) -> f64 {
    diff / scale.max(1.0)
}

/// Record a residual and report whether it is within tolerance.
fn within(worst: &mut f64, r: f64) -> bool {
    if r > *worst {
        *worst = r;
    }
    r <= TOLERANCE
}

fn check_numeric_samples(
    samples: u32,
    seed: u64,
    gram_psi: &GramMatrix<AnalyticScalar>,
    gram_xi: &GramMatrix<AnalyticScalar>,
    product: &Form<AnalyticScalar>,
    max_residual: &mut f64,
) -> (CheckResult, CheckResult) {
    let name = "numeric-samples";
    let root_name = "root-metric-roundtrip";
    let big = big_omega();
    let omega0 = omega_zero();
    let psi = psi_basis();
    let xi = xi_basis();
    let b = b_matrix();
    let expansion = product_expansion();
    let det_expected = det_b_factored();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut root_worst = 0.0f64;
    for _ in 0..samples {
        let lim = std::f64::consts::SQRT_2;
        let u = C64::new(rng.gen_range(-lim..=lim), rng.gen_range(-lim..=lim));
        let big_num = big.eval_u(u);
        let omega0_num = omega0.eval_u(u);
        let product_num = omega0_num.wedge(&big_num);

        // The product expansion, recomputed with floating-point wedges.
        let diff = &product_num - &expansion.eval_u(u);
        let scale = product.max_abs_eval(u);
        let r = relative(diff.terms().map(|(_, c)| c.norm()).fold(0.0, f64::max), scale);
        if !within(&mut worst, r) {
            return (
                CheckResult::fail(name, format!("ω₀ ∧ Ω expansion residual {r:.3e} at u = {u}")),
                CheckResult::fail(root_name, "skipped after a failed sample".to_string()),
            );
        }

        // Both Gram matrices, recomputed numerically entry by entry.
        let psi_num: Vec<Form<C64>> = psi.iter().map(|f| f.eval_u(u)).collect();
        let sym_psi = gram_psi.to_numeric(u);
        for a in 0..psi_num.len() {
            for c in 0..psi_num.len() {
                let numeric = pairing_value(&big_num, &psi_num[a], &psi_num[c], 2, 0)
                    .expect("degrees match");
                let r = relative((numeric - sym_psi[a][c]).norm(), sym_psi[a][c].norm());
                if !within(&mut worst, r) {
                    return (
                        CheckResult::fail(
                            name,
                            format!("Ψ Gram entry ({a}, {c}) residual {r:.3e} at u = {u}"),
                        ),
                        CheckResult::fail(root_name, "skipped after a failed sample".to_string()),
                    );
                }
            }
        }
        let xi_num: Vec<Form<C64>> = xi.iter().map(|f| f.eval_u(u)).collect();
        let sym_xi = gram_xi.to_numeric(u);
        for a in 0..xi_num.len() {
            for c in 0..xi_num.len() {
                let numeric = pairing_value(&big_num, &xi_num[a], &xi_num[c], 1, 1)
                    .expect("degrees match");
                let r = relative((numeric - sym_xi[a][c]).norm(), sym_xi[a][c].norm());
                if !within(&mut worst, r) {
                    return (
                        CheckResult::fail(
                            name,
                            format!("Ξ Gram entry ({a}, {c}) residual {r:.3e} at u = {u}"),
                        ),
                        CheckResult::fail(root_name, "skipped after a failed sample".to_string()),
                    );
                }
            }
        }

        // Primitivity, the B block, and its determinant.
        for (i, xf) in xi_num.iter().enumerate() {
            let wedge = xf.wedge(&product_num);
            let r = relative(
                wedge.terms().map(|(_, c)| c.norm()).fold(0.0, f64::max),
                scale,
            );
            if !within(&mut worst, r) {
                return (
                    CheckResult::fail(
                        name,
                        format!("Ξ{} primitivity residual {r:.3e} at u = {u}", i + 1),
                    ),
                    CheckResult::fail(root_name, "skipped after a failed sample".to_string()),
                );
            }
        }
        let b_num: Vec<Vec<C64>> =
            b.iter().map(|row| row.iter().map(|e| e.eval(u)).collect()).collect();
        let det_num = det3_numeric(&b_num);
        let det_sym = det_expected.eval(u);
        let r = relative((det_num - det_sym).norm(), det_sym.norm());
        if !within(&mut worst, r) {
            return (
                CheckResult::fail(name, format!("det B residual {r:.3e} at u = {u}")),
                CheckResult::fail(root_name, "skipped after a failed sample".to_string()),
            );
        }

        // Metric root round-trip on the positive (3, 3)-form.
        match root_metric_numeric(&product_num) {
            Ok((_, residual)) => {
                let r = relative(residual, scale);
                if r > root_worst {
                    root_worst = r;
                }
                if r > TOLERANCE {
                    return (
                        CheckResult::pass(name, format!("max residual {worst:.3e}")),
                        CheckResult::fail(
                            root_name,
                            format!("round-trip residual {r:.3e} at u = {u}"),
                        ),
                    );
                }
            }
            Err(e) => {
                return (
                    CheckResult::pass(name, format!("max residual {worst:.3e}")),
                    CheckResult::fail(root_name, format!("no metric root at u = {u}: {e}")),
                );
            }
        }
    }
    *max_residual = worst.max(root_worst);
    (
        CheckResult::pass(
            name,
            format!(
                "all identities re-verified in floating point at {samples} sample points; max \
                 relative residual {worst:.3e}"
            ),
        ),
        CheckResult::pass(
            root_name,
            format!(
                "the metric root of ω₀ ∧ Ω round-trips at every sample; max relative residual \
                 {root_worst:.3e}"
            ),
        ),
    )
}

/// Run the whole verification suite: the exact ring identities, the ray
/// positivity certificates, the numeric sample cross-checks, and the
/// invariant-core obstruction.  Every check lands in the report; nothing
/// panics on failure.
pub fn verify_all(samples: u32) -> IwasawaCReport {
    verify_all_seeded(samples, SAMPLE_SEED)
}

/// [`verify_all`] with an explicit seed for the numeric sampling; the exact
/// ring identities are unaffected, only the floating-point cross-check
/// points move.
pub fn verify_all_seeded(samples: u32, seed: u64) -> IwasawaCReport {
    let g = algebra();
    let big = big_omega();
    let omega0 = omega_zero();
    let product = omega0.wedge(&big);
    let psi = psi_basis();
    let xi = xi_basis();

    let mut checks = Vec::new();
    let mut det_b_at_zero = q(0, 1);
    let mut max_numeric_residual = 0.0f64;

    checks.push(check_omega_closed(&g, &big));
    match gram_q(&big, 2, 0, &psi) {
        Ok(gram_psi) => {
            checks.push(check_psi_gram(&gram_psi));
            checks.push(check_product_expansion(&product));
            checks.push(check_xi_primitive(&xi, &product));
            match gram_q(&big, 1, 1, &xi) {
                Ok(gram_xi) => {
                    checks.push(check_xi_gram(&gram_xi));
                    checks.push(check_determinants(&mut det_b_at_zero));
                    checks.push(check_sylvester_ray());
                    checks.push(check_product_closed(&g, &product));
                    let (numeric, root) = check_numeric_samples(
                        samples,
                        seed,
                        &gram_psi,
                        &gram_xi,
                        &product,
                        &mut max_numeric_residual,
                    );
                    checks.push(numeric);
                    checks.push(root);
                }
                Err(e) => checks.push(CheckResult::fail("xi-gram-block", e.to_string())),
            }
        }
        Err(e) => checks.push(CheckResult::fail("psi-gram-diagonal", e.to_string())),
    }
    checks.push(check_non_invariance(&product));
    checks.push(check_invariant_core());

    IwasawaCReport {
        samples,
        seed,
        checks,
        det_b_at_zero,
        max_numeric_residual,
    }
}

/// Multi-line human-readable rendering of a report.
pub fn render_report(report: &IwasawaCReport) -> String {
    let mut out = String::new();
    for check in &report.checks {
        let _ = writeln!(
            out,
            "[{}] {}: {}",
            if check.passed { "pass" } else { "FAIL" },
            check.name,
            check.detail
        );
    }
    let _ = writeln!(
        out,
        "det B(0) = {}; {} samples, max numeric residual {:.3e}",
        report.det_b_at_zero, report.samples, report.max_numeric_residual
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{IndexSet, MultiIndexPair};

    #[test]
    fn printed_coefficients_match() {
        let big = big_omega();
        let idx = |hol: &[u8], anti: &[u8]| {
            MultiIndexPair::new(IndexSet::from_ascending(hol), IndexSet::from_ascending(anti))
        };
        assert_eq!(
            big.coefficient(&idx(&[3, 4], &[3, 4])),
            &t(1, 0, 0, 0, 1) + &t(1, 0, 1, 1, 1)
        );
        assert_eq!(omega_zero().coefficient(&idx(&[3], &[3])), t(0, 1, 0, 0, -1));
        let xi8 = &xi_basis()[7];
        let expected = &Form::monomial(4, &[2], &[3], AnalyticScalar::one())
            - &Form::monomial(4, &[4], &[1], t(1, 0, 0, 1, 1));
        assert_eq!(*xi8, expected);
    }

    #[test]
    fn omega_is_closed_and_numerically_flat() {
        let g = algebra();
        let big = big_omega();
        assert!(big.is_real());
        let d = g.d(&big);
        assert!(d.is_zero());
        assert!(d.max_abs_eval(C64::new(1.0, 1.0)) < 1.0e-9);
    }

    #[test]
    fn psi_gram_is_the_printed_diagonal() {
        let gram = gram_q(&big_omega(), 2, 0, &psi_basis()).expect("valid Gram data");
        let diag = psi_gram_diagonal();
        for a in 0..6 {
            for b in 0..6 {
                let want = if a == b { diag[a].clone() } else { AnalyticScalar::zero() };
                assert_eq!(gram.entries[a][b], want, "entry ({a}, {b})");
            }
        }
        assert_eq!(gram.entries[2][2], AnalyticScalar::one());
    }

    #[test]
    fn determinant_identities_hold() {
        let b = b_matrix();
        assert_eq!(det3(&b), det_b_factored());
        assert_eq!(det3(&b), det_b_expanded());
        assert_eq!(det2(&b), det_b_leading_factored());
        assert_eq!(at_zero(&det_b_factored()), GaussRational::from_int(108));
        let b_zero: Vec<Vec<GaussRational>> =
            b.iter().map(|row| row.iter().map(at_zero).collect()).collect();
        assert_eq!(linalg::det(&b_zero), GaussRational::from_int(108));
        assert_eq!(b_zero[0][0], GaussRational::from_int(6));
        assert_eq!(b_zero[0][1], GaussRational::from_int(3));
    }

    #[test]
    fn verify_all_passes() {
        let report = verify_all(6);
        for failure in report.failures() {
            panic!("{}: {}", failure.name, failure.detail);
        }
        assert!(report.all_passed());
        assert_eq!(report.det_b_at_zero, q(108, 1));
        assert!(report.max_numeric_residual < 1.0e-9);
    }
}
