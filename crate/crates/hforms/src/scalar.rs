//! Exact scalar arithmetic for invariant and weakly non-invariant coefficients.
//!
//! Three nested rings cover every coefficient that appears in the geometry:
//!
//! * [`GaussRational`] — complex numbers with rational real and imaginary
//!   parts.  These are the structure constants of the Lie algebras and the
//!   coefficients of invariant forms.
//! * [`AnalyticScalar`] — finite sums `c · u^a · ū^b · e^{mU}` with
//!   `c` Gauss-rational, `a, b ∈ ℕ`, `m ∈ ℤ` and `U := |u|² = u·ū`.  This ring
//!   is closed under products, conjugation and the Wirtinger derivatives
//!   `∂/∂u`, `∂/∂ū` (using `∂U/∂u = ū`), which is exactly what the one
//!   non-invariant coordinate direction requires.
//! * [`UPolynomial`] — finite sums `c · U^k · e^{mU}` with rational `c`.
//!   Restrictions of real analytic scalars to the ray `U ≥ 0` land here, and
//!   this is where exact sign decisions happen.
//!
//! Sign decisions on the ray (`sign_on_ray`) return a three-state
//! [`RaySign`]: positivity is certified by a derivative chain (value at the
//! origin plus recursive non-negativity of the derivative), refutation by a
//! rational point together with an interval enclosure of the exponentials,
//! and everything else is reported inconclusive rather than guessed.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::rational::Ratio;
use num::traits::{One, Signed, ToPrimitive, Zero};

use crate::Verdict;

/// Exact rational numbers used everywhere in the crate.
pub type Q = Ratio<BigInt>;

/// Double-precision complex numbers for numeric cross-checks.
pub type C64 = num::complex::Complex<f64>;

/// Build a rational from an integer pair, panicking on zero denominator.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Build an integer rational.
pub fn qi(num: i64) -> Q {
    Q::from_integer(BigInt::from(num))
}

// ---------------------------------------------------------------------------
// GaussRational
// ---------------------------------------------------------------------------

/// A complex number with rational real and imaginary parts.
///
/// The representation is canonical: two reduced rationals.  Equality is
/// therefore structural equality, and hashing/ordering agree with it.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaussRational {
    re: Q,
    im: Q,
}

impl GaussRational {
    pub fn new(re: Q, im: Q) -> Self {
        GaussRational { re, im }
    }

    pub fn from_rational(re: Q) -> Self {
        GaussRational { re, im: Q::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(qi(n))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRational { re: Q::zero(), im: Q::one() }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn re(&self) -> &Q {
        &self.re
    }

    pub fn im(&self) -> &Q {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRational { re: self.re.clone(), im: -self.im.clone() }
    }

    /// Multiplication by `i` (quarter turn).
    pub fn mul_i(&self) -> Self {
        GaussRational { re: -self.im.clone(), im: self.re.clone() }
    }

    /// Squared modulus `re² + im²`, a non-negative rational.
    pub fn norm_sqr(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussRational { re: &self.re / &n, im: -(&self.im / &n) })
    }

    /// Exact division; `None` when dividing by zero.
    pub fn div_exact(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|inv| self * &inv)
    }

    pub fn to_c64(&self) -> C64 {
        C64::new(
            self.re.to_f64().expect("rational out of f64 range"),
            self.im.to_f64().expect("rational out of f64 range"),
        )
    }

    /// Powers of `i` as exact scalars: `i_pow(k) = i^k`.
    pub fn i_pow(k: u32) -> Self {
        match k % 4 {
            0 => Self::one(),
            1 => Self::i(),
            2 => -&Self::one(),
            _ => -&Self::i(),
        }
    }
}

macro_rules! gauss_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl<'a, 'b> std::ops::$trait<&'b GaussRational> for &'a GaussRational {
            type Output = GaussRational;
            fn $method(self, rhs: &'b GaussRational) -> GaussRational {
                let $a = self;
                let $b = rhs;
                $body
            }
        }
        impl std::ops::$trait<GaussRational> for GaussRational {
            type Output = GaussRational;
            fn $method(self, rhs: GaussRational) -> GaussRational {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    };
}

gauss_binop!(Add, add, |a, b| GaussRational { re: &a.re + &b.re, im: &a.im + &b.im });
gauss_binop!(Sub, sub, |a, b| GaussRational { re: &a.re - &b.re, im: &a.im - &b.im });
gauss_binop!(Mul, mul, |a, b| GaussRational {
    re: &a.re * &b.re - &a.im * &b.im,
    im: &a.re * &b.im + &a.im * &b.re,
});

impl std::ops::Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl std::ops::Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        -&self
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for GaussRational {
    /// Prints in the scalar literal syntax: `p/q` for reals, `(p/q+r/s i)`
    /// otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_negative() {
            write!(f, "({}-{}i)", self.re, -self.im.clone())
        } else {
            write!(f, "({}+{}i)", self.re, self.im)
        }
    }
}

// ---------------------------------------------------------------------------
// AnalyticScalar
// ---------------------------------------------------------------------------

/// Exponents of a single analytic monomial `u^a · ū^b · e^{mU}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct AnalyticExp {
    /// Power of `u`.
    pub a: u32,
    /// Power of `ū`.
    pub b: u32,
    /// Integer multiple of `U` in the exponential.
    pub m: i32,
}

/// A finite sum `Σ c · u^a · ū^b · e^{mU}` with Gauss-rational coefficients.
///
/// Canonical form: the term map never stores zero coefficients, so equality
/// of maps is equality of scalars (the monomials are linearly independent as
/// real-analytic functions of `u`).
#[derive(Clone, PartialEq, Eq)]
pub struct AnalyticScalar {
    terms: BTreeMap<AnalyticExp, GaussRational>,
}

impl AnalyticScalar {
    pub fn zero() -> Self {
        AnalyticScalar { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_gauss(GaussRational::one())
    }

    pub fn from_gauss(c: GaussRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(AnalyticExp { a: 0, b: 0, m: 0 }, c);
        }
        AnalyticScalar { terms }
    }

    pub fn from_rational(r: Q) -> Self {
        Self::from_gauss(GaussRational::from_rational(r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_gauss(GaussRational::from_int(n))
    }

    /// The coordinate `u`.
    pub fn var_u() -> Self {
        Self::term(GaussRational::one(), 1, 0, 0)
    }

    /// The conjugate coordinate `ū`.
    pub fn var_ubar() -> Self {
        Self::term(GaussRational::one(), 0, 1, 0)
    }

    /// The exponential `e^{mU}`.
    pub fn exp_u(m: i32) -> Self {
        Self::term(GaussRational::one(), 0, 0, m)
    }

    /// A single term `c · u^a · ū^b · e^{mU}`.
    pub fn term(c: GaussRational, a: u32, b: u32, m: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(AnalyticExp { a, b, m }, c);
        }
        AnalyticScalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AnalyticExp, &GaussRational)> {
        self.terms.iter()
    }

    fn insert_term(&mut self, e: AnalyticExp, c: GaussRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = &*o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn conj(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.insert_term(AnalyticExp { a: e.b, b: e.a, m: e.m }, c.conj());
        }
        out
    }

    pub fn mul_i(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.insert_term(*e, c.mul_i());
        }
        out
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        let mut out = Self::zero();
        for (e, t) in &self.terms {
            out.insert_term(*e, t * c);
        }
        out
    }

    /// Wirtinger derivative `∂/∂u`.  On a monomial:
    /// `∂(u^a ū^b e^{mU}) = a·u^{a-1} ū^b e^{mU} + m·u^a ū^{b+1} e^{mU}`.
    pub fn partial_u(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e.a > 0 {
                out.insert_term(
                    AnalyticExp { a: e.a - 1, b: e.b, m: e.m },
                    c * &GaussRational::from_int(e.a as i64),
                );
            }
            if e.m != 0 {
                out.insert_term(
                    AnalyticExp { a: e.a, b: e.b + 1, m: e.m },
                    c * &GaussRational::from_int(e.m as i64),
                );
            }
        }
        out
    }

    /// Wirtinger derivative `∂/∂ū`.
    pub fn partial_ubar(&self) -> Self {
        self.conj().partial_u().conj()
    }

    /// Numeric evaluation at a point of the complex plane.
    pub fn eval(&self, u: C64) -> C64 {
        let ubar = u.conj();
        let big_u = (u * ubar).re;
        let mut acc = C64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = c.to_c64();
            t *= u.powu(e.a);
            t *= ubar.powu(e.b);
            t *= (f64::from(e.m) * big_u).exp();
            acc += t;
        }
        acc
    }

    /// True when the scalar equals its own conjugate (a real-valued function).
    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// The constant term, when the scalar is a plain Gauss rational.
    pub fn as_gauss(&self) -> Option<GaussRational> {
        if self.is_zero() {
            return Some(GaussRational::zero());
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.a == 0 && e.b == 0 && e.m == 0 {
                return Some(c.clone());
            }
        }
        None
    }

    /// Reinterpret as a polynomial in `U` when every term has `a == b` and a
    /// real coefficient; such scalars are exactly the real radial ones.
    pub fn as_upolynomial(&self) -> Option<UPolynomial> {
        let mut out = UPolynomial::zero();
        for (e, c) in &self.terms {
            if e.a != e.b || !c.is_real() {
                return None;
            }
            out.insert_term(e.a, e.m, c.re().clone());
        }
        Some(out)
    }

    /// Multiply by `e^{sU}`.
    fn shift_m(&self, s: i32) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.insert_term(AnalyticExp { a: e.a, b: e.b, m: e.m + s }, c.clone());
        }
        out
    }

    /// Exact division in the ring; `None` when the quotient does not exist.
    ///
    /// After clearing exponential prefactors both operands live in the
    /// polynomial ring `ℚ(i)[u, ū, e^U]`.  Repeated leading-term division in
    /// the lexicographic monomial order terminates, and succeeds exactly when
    /// the quotient lies in the ring: for an exact quotient the leading term
    /// of the remainder is always divisible by the divisor's leading term.
    pub fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let ma = self.terms.keys().map(|e| e.m).min().unwrap();
        let mb = rhs.terms.keys().map(|e| e.m).min().unwrap();
        let mut rem = self.shift_m(-ma);
        let den = rhs.shift_m(-mb);
        let (eb, cb) = {
            let (e, c) = den.terms.last_key_value().unwrap();
            (*e, c.clone())
        };
        let mut quo = Self::zero();
        while !rem.is_zero() {
            let (er, cr) = {
                let (e, c) = rem.terms.last_key_value().unwrap();
                (*e, c.clone())
            };
            if er.a < eb.a || er.b < eb.b || er.m < eb.m {
                return None;
            }
            let qc = cr.div_exact(&cb)?;
            let qt = Self::term(qc, er.a - eb.a, er.b - eb.b, er.m - eb.m);
            rem = &rem - &(&qt * &den);
            quo = &quo + &qt;
        }
        Some(quo.shift_m(ma - mb))
    }

    /// Certified interval evaluation on the real axis: exact rational bounds
    /// `lo ≤ f(u₀) ≤ hi` at the real point `u = u₀`, for real-valued scalars
    /// (`None` otherwise).  Exponential enclosures are tightened until the
    /// width drops below `target_width` or the iteration cap is reached.
    pub fn eval_interval_real(&self, u0: &Q, target_width: &Q) -> Option<(Q, Q)> {
        if !self.is_real() {
            return None;
        }
        let u0sq = u0 * u0;
        let mut depth = 12usize;
        loop {
            let (mut lo, mut hi) = (Q::zero(), Q::zero());
            for (e, c) in &self.terms {
                // At u = ū = u₀ the imaginary parts cancel in conjugate
                // pairs, so only the real part of each coefficient counts.
                let factor = c.re() * &pow_q(u0, e.a + e.b);
                if factor.is_zero() {
                    continue;
                }
                let x = qi(i64::from(e.m)) * &u0sq;
                let (elo, ehi) = exp_interval(&x, depth);
                if factor.is_negative() {
                    lo += &factor * &ehi;
                    hi += &factor * &elo;
                } else {
                    lo += &factor * &elo;
                    hi += &factor * &ehi;
                }
            }
            if &(&hi - &lo) <= target_width || depth > 200 {
                return Some((lo, hi));
            }
            depth *= 2;
        }
    }
}

impl std::ops::Add<&AnalyticScalar> for &AnalyticScalar {
    type Output = AnalyticScalar;
    fn add(self, rhs: &AnalyticScalar) -> AnalyticScalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(*e, c.clone());
        }
        out
    }
}

impl std::ops::Sub<&AnalyticScalar> for &AnalyticScalar {
    type Output = AnalyticScalar;
    fn sub(self, rhs: &AnalyticScalar) -> AnalyticScalar {
        self + &(-rhs)
    }
}

impl std::ops::Mul<&AnalyticScalar> for &AnalyticScalar {
    type Output = AnalyticScalar;
    fn mul(self, rhs: &AnalyticScalar) -> AnalyticScalar {
        let mut out = AnalyticScalar::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.insert_term(
                    AnalyticExp { a: e1.a + e2.a, b: e1.b + e2.b, m: e1.m + e2.m },
                    c1 * c2,
                );
            }
        }
        out
    }
}

impl std::ops::Neg for &AnalyticScalar {
    type Output = AnalyticScalar;
    fn neg(self) -> AnalyticScalar {
        let mut out = AnalyticScalar::zero();
        for (e, c) in &self.terms {
            out.insert_term(*e, -c);
        }
        out
    }
}

impl fmt::Debug for AnalyticScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for AnalyticScalar {
    /// Prints in the scalar literal syntax, e.g. `u ~u E[2]` for `u·ū·e^{2U}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            if !(c == &GaussRational::one() && (e.a, e.b, e.m) != (0, 0, 0)) {
                factors.push(format!("{}", c));
            }
            for _ in 0..e.a {
                factors.push("u".into());
            }
            for _ in 0..e.b {
                factors.push("~u".into());
            }
            if e.m != 0 {
                factors.push(format!("E[{}]", e.m));
            }
            if factors.is_empty() {
                factors.push("1".into());
            }
            write!(f, "{}", factors.join(" "))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// UPolynomial
// ---------------------------------------------------------------------------

/// A finite sum `Σ c · U^k · e^{mU}` with rational coefficients, viewed as a
/// function of `U ≥ 0`.
///
/// This is the ring `ℚ[U][X, X⁻¹]` with `X = e^U`, an integral domain; the
/// term map stores no zeros, so equality is canonical.
#[derive(Clone, PartialEq, Eq)]
pub struct UPolynomial {
    /// `(k, m) ↦ c` for the term `c · U^k · e^{mU}`.
    terms: BTreeMap<(u32, i32), Q>,
}

impl UPolynomial {
    pub fn zero() -> Self {
        UPolynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        let mut p = Self::zero();
        p.insert_term(0, 0, c);
        p
    }

    /// The monomial `c · U^k · e^{mU}`.
    pub fn term(c: Q, k: u32, m: i32) -> Self {
        let mut p = Self::zero();
        p.insert_term(k, m, c);
        p
    }

    /// The variable `U`.
    pub fn var_u() -> Self {
        Self::term(Q::one(), 1, 0)
    }

    /// The exponential `e^{mU}`.
    pub fn exp(m: i32) -> Self {
        Self::term(Q::one(), 0, m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, i32), &Q)> {
        self.terms.iter()
    }

    fn insert_term(&mut self, k: u32, m: i32, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((k, m)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero();
        for (&(k, m), t) in &self.terms {
            out.insert_term(k, m, t * c);
        }
        out
    }

    /// Derivative with respect to `U`:
    /// `(c U^k e^{mU})' = (c·k·U^{k-1} + c·m·U^k) e^{mU}`.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (&(k, m), c) in &self.terms {
            if k > 0 {
                out.insert_term(k - 1, m, c * qi(k as i64));
            }
            if m != 0 {
                out.insert_term(k, m, c * qi(m as i64));
            }
        }
        out
    }

    /// Exact value at `U = 0` (only the `U^0` terms contribute; `e^0 = 1`).
    pub fn eval_at_zero(&self) -> Q {
        let mut acc = Q::zero();
        for (&(k, _), c) in &self.terms {
            if k == 0 {
                acc += c;
            }
        }
        acc
    }

    pub fn eval_f64(&self, u: f64) -> f64 {
        let mut acc = 0.0;
        for (&(k, m), c) in &self.terms {
            acc += c.to_f64().unwrap() * u.powi(k as i32) * (f64::from(m) * u).exp();
        }
        acc
    }

    /// Smallest exponential weight present, 0 for the zero polynomial.
    pub fn min_m(&self) -> i32 {
        self.terms.keys().map(|&(_, m)| m).min().unwrap_or(0)
    }

    /// Multiply by `e^{sU}` (a positive function, so signs are preserved).
    pub fn shift_exp(&self, s: i32) -> Self {
        let mut out = Self::zero();
        for (&(k, m), c) in &self.terms {
            out.insert_term(k, m + s, c.clone());
        }
        out
    }

    pub fn all_coeffs_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Interval evaluation at a rational point: returns exact rational bounds
    /// `lo ≤ p(u0) ≤ hi`, tightening the exponential enclosures until the
    /// width drops below `target_width` (or the iteration cap is reached).
    pub fn eval_interval(&self, u0: &Q, target_width: &Q) -> (Q, Q) {
        let mut depth = 12usize;
        loop {
            let (mut lo, mut hi) = (Q::zero(), Q::zero());
            for (&(k, m), c) in &self.terms {
                let upow = pow_q(u0, k);
                let x = qi(m as i64) * u0;
                let (elo, ehi) = exp_interval(&x, depth);
                // c · u0^k is a single exact rational; the interval comes
                // only from the exponential factor.
                let factor = c * &upow;
                let (tlo, thi) = if factor.is_negative() {
                    (&factor * &ehi, &factor * &elo)
                } else {
                    (&factor * &elo, &factor * &ehi)
                };
                lo += tlo;
                hi += thi;
            }
            if &(&hi - &lo) <= target_width || depth > 200 {
                return (lo, hi);
            }
            depth *= 2;
        }
    }

    /// Exact embedding into the analytic ring via `U^k = u^k ū^k`.
    pub fn to_analytic(&self) -> AnalyticScalar {
        let mut out = AnalyticScalar::zero();
        for (&(k, m), c) in &self.terms {
            out = &out
                + &AnalyticScalar::term(GaussRational::from_rational(c.clone()), k, k, m);
        }
        out
    }

    /// Exact division in the ring; `None` when the quotient does not exist.
    ///
    /// Both operands are written as `e^{m₀U} · p(X)` with `X = e^U` and
    /// `p ∈ ℚ[U][X]` having a nonzero constant coefficient.  The exponential
    /// prefactors divide trivially, and long division of the polynomial
    /// parts in `X` — with exact coefficient division in `ℚ[U]` at each
    /// step — succeeds precisely when the quotient lies in the ring: the
    /// quotient's leading coefficient always equals `lc(num)/lc(den)`.
    pub fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let ma = self.min_m();
        let mb = rhs.min_m();
        let a = self.shift_exp(-ma);
        let b = rhs.shift_exp(-mb);
        // Dense polynomials in X; entry j holds the ℚ[U] coefficient of X^j.
        let to_x = |p: &UPolynomial| -> Vec<Vec<Q>> {
            let max_m = p.terms.keys().map(|&(_, m)| m).max().unwrap() as usize;
            let mut rows: Vec<Vec<Q>> = vec![Vec::new(); max_m + 1];
            for (&(k, m), c) in &p.terms {
                let row = &mut rows[m as usize];
                if row.len() <= k as usize {
                    row.resize(k as usize + 1, Q::zero());
                }
                row[k as usize] = c.clone();
            }
            rows
        };
        let mut rem = to_x(&a);
        let den = to_x(&b);
        let dn = den.len() - 1;
        let mut quot: Vec<Vec<Q>> = vec![Vec::new(); rem.len().saturating_sub(dn)];
        loop {
            while rem.last().is_some_and(|r| r.iter().all(|c| c.is_zero())) {
                rem.pop();
            }
            if rem.is_empty() {
                break;
            }
            if rem.len() - 1 < dn {
                return None;
            }
            let deg = rem.len() - 1 - dn;
            let qc = upoly_div_exact(rem.last().unwrap(), den.last().unwrap())?;
            for (j, dcoef) in den.iter().enumerate() {
                if dcoef.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let prod = upoly_mul(&qc, dcoef);
                upoly_sub_assign(&mut rem[deg + j], &prod);
            }
            quot[deg] = qc;
        }
        let mut out = Self::zero();
        for (j, coeffs) in quot.into_iter().enumerate() {
            for (k, c) in coeffs.into_iter().enumerate() {
                out.insert_term(k as u32, j as i32 + ma - mb, c);
            }
        }
        Some(out)
    }
}

/// Dense `ℚ[U]` helpers for the exact division routine.
fn upoly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn upoly_sub_assign(a: &mut Vec<Q>, b: &[Q]) {
    if a.len() < b.len() {
        a.resize(b.len(), Q::zero());
    }
    for (i, y) in b.iter().enumerate() {
        a[i] -= y;
    }
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

/// Exact division in `ℚ[U]`; `None` if the remainder is nonzero.
fn upoly_div_exact(num: &[Q], den: &[Q]) -> Option<Vec<Q>> {
    let mut num: Vec<Q> = num.to_vec();
    while num.last().is_some_and(|c| c.is_zero()) {
        num.pop();
    }
    let mut den: Vec<Q> = den.to_vec();
    while den.last().is_some_and(|c| c.is_zero()) {
        den.pop();
    }
    if den.is_empty() {
        return None;
    }
    if num.is_empty() {
        return Some(Vec::new());
    }
    if num.len() < den.len() {
        return None;
    }
    let mut quot = vec![Q::zero(); num.len() - den.len() + 1];
    while !num.is_empty() && num.len() >= den.len() {
        let q = num.last().unwrap() / den.last().unwrap();
        let deg = num.len() - den.len();
        quot[deg] = q.clone();
        for (i, d) in den.iter().enumerate() {
            num[deg + i] -= &q * d;
        }
        while num.last().is_some_and(|c| c.is_zero()) {
            num.pop();
        }
    }
    if num.is_empty() {
        Some(quot)
    } else {
        None
    }
}

fn pow_q(x: &Q, k: u32) -> Q {
    let mut acc = Q::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

impl std::ops::Add<&UPolynomial> for &UPolynomial {
    type Output = UPolynomial;
    fn add(self, rhs: &UPolynomial) -> UPolynomial {
        let mut out = self.clone();
        for (&(k, m), c) in &rhs.terms {
            out.insert_term(k, m, c.clone());
        }
        out
    }
}

impl std::ops::Sub<&UPolynomial> for &UPolynomial {
    type Output = UPolynomial;
    fn sub(self, rhs: &UPolynomial) -> UPolynomial {
        self + &(-rhs)
    }
}

impl std::ops::Mul<&UPolynomial> for &UPolynomial {
    type Output = UPolynomial;
    fn mul(self, rhs: &UPolynomial) -> UPolynomial {
        let mut out = UPolynomial::zero();
        for (&(k1, m1), c1) in &self.terms {
            for (&(k2, m2), c2) in &rhs.terms {
                out.insert_term(k1 + k2, m1 + m2, c1 * c2);
            }
        }
        out
    }
}

impl std::ops::Neg for &UPolynomial {
    type Output = UPolynomial;
    fn neg(self) -> UPolynomial {
        let mut out = UPolynomial::zero();
        for (&(k, m), c) in &self.terms {
            out.insert_term(k, m, -c.clone());
        }
        out
    }
}

impl fmt::Debug for UPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for UPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(k, m), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", c)?;
            for _ in 0..k {
                write!(f, " U")?;
            }
            if m != 0 {
                write!(f, " E[{}]", m)?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Exponential enclosures
// ---------------------------------------------------------------------------

/// Exact rational bounds `lo ≤ e^x ≤ hi` for rational `x`, from the Taylor
/// series with an explicit geometric remainder bound.  `depth` is the number
/// of series terms; enclosures shrink as it grows.
pub fn exp_interval(x: &Q, depth: usize) -> (Q, Q) {
    if x.is_zero() {
        return (Q::one(), Q::one());
    }
    if x.is_negative() {
        let (lo, hi) = exp_interval(&-x.clone(), depth);
        // e^x = 1 / e^{-x}; inverting swaps the bounds.
        return (Q::one() / hi, Q::one() / lo);
    }
    // Choose N large enough that x/(N+2) < 1 so the tail is geometric.
    let mut n = depth.max(4);
    while Q::from_integer(BigInt::from(n as i64 + 2)) <= *x {
        n *= 2;
    }
    let mut sum = Q::one();
    let mut term = Q::one();
    for i in 1..=n {
        term = term * x / qi(i as i64);
        sum += term.clone();
    }
    // Tail: term_{n+1} / (1 - x/(n+2)) bounds the remaining series.
    let t_next = term * x / qi(n as i64 + 1);
    let ratio = x / qi(n as i64 + 2);
    let tail = t_next / (Q::one() - ratio);
    (sum.clone(), sum + tail)
}

// ---------------------------------------------------------------------------
// Sign decisions on U ≥ 0
// ---------------------------------------------------------------------------

/// Outcome of an exact sign decision on the ray `U ≥ 0`: positivity with a
/// derivative-chain certificate, or a rational point where it fails.
pub type RaySign = Verdict<RayCertificate, RayRefutation>;

/// A rational point where positivity fails, with a certified enclosure of
/// the value there (`value_hi ≤ 0` proves the failure).
#[derive(Clone, Debug, PartialEq)]
pub struct RayRefutation {
    pub at: Q,
    pub value_lo: Q,
    pub value_hi: Q,
}

/// Positivity certificate: a chain `p = p₀, p₁ = p₀', …` where the last
/// entry has only non-negative coefficients and every entry has
/// `pᵢ(0) ≥ 0` (strictly for `p₀`).  Checking the certificate only requires
/// differentiation and sign inspection of rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct RayCertificate {
    /// Exponential normalization: the chain certifies `e^{shift·U} · p`.
    pub shift: i32,
    /// Values at 0 along the chain, starting with `p(0) > 0`.
    pub values_at_zero: Vec<Q>,
    /// Depth of the chain (number of derivatives taken).
    pub depth: usize,
}

/// Decide whether `p(U) > 0` for every `U ≥ 0`.
///
/// Positivity is proved by the derivative chain: `p(0) > 0` together with a
/// recursive proof that `p'` is non-negative on the ray (a polynomial with
/// non-negative coefficients is the base case).  Scaling by `e^{sU} > 0`
/// first makes the chain terminate in practice for quotients with negative
/// exponential weights.  Refutations are found by interval evaluation at a
/// fixed fan of rational sample points.
pub fn sign_on_ray(p: &UPolynomial) -> RaySign {
    const MAX_DEPTH: usize = 48;
    if p.is_zero() {
        return RaySign::Refuted(RayRefutation {
            at: Q::zero(),
            value_lo: Q::zero(),
            value_hi: Q::zero(),
        });
    }
    let v0 = p.eval_at_zero();
    if !v0.is_positive() {
        return RaySign::Refuted(RayRefutation {
            at: Q::zero(),
            value_lo: v0.clone(),
            value_hi: v0,
        });
    }
    // Normalize away negative exponential weights: sign(e^{sU} p) = sign(p).
    let shift = -p.min_m().min(0);
    let q0 = p.shift_exp(shift);
    let mut values = vec![q0.eval_at_zero()];
    let mut cur = q0.derivative();
    let mut depth = 0usize;
    loop {
        if cur.all_coeffs_nonnegative() {
            return RaySign::Proven(RayCertificate { shift, values_at_zero: values, depth });
        }
        if depth >= MAX_DEPTH {
            break;
        }
        let v = cur.eval_at_zero();
        if v.is_negative() {
            break;
        }
        values.push(v);
        cur = cur.derivative();
        depth += 1;
    }
    // Certificate chain failed; look for a refutation point.
    for (num, den) in [
        (0i64, 1i64),
        (1, 4),
        (1, 2),
        (1, 1),
        (3, 2),
        (2, 1),
        (3, 1),
        (4, 1),
        (6, 1),
        (8, 1),
        (12, 1),
        (16, 1),
        (24, 1),
    ] {
        let u0 = q(num, den);
        let width = q(1, 1_000_000);
        let (lo, hi) = p.eval_interval(&u0, &width);
        if !hi.is_positive() {
            return RaySign::Refuted(RayRefutation { at: u0, value_lo: lo, value_hi: hi });
        }
    }
    RaySign::inconclusive("no positivity certificate within derivative budget and no sampled refutation point")
}

/// Re-check a positivity certificate from scratch.  Used by tests and by
/// report verification: the certificate must reproduce under differentiation.
pub fn verify_ray_certificate(p: &UPolynomial, cert: &RayCertificate) -> bool {
    if p.is_zero() || !p.eval_at_zero().is_positive() {
        return false;
    }
    let mut cur = p.shift_exp(cert.shift);
    if cur.eval_at_zero() != cert.values_at_zero[0] {
        return false;
    }
    cur = cur.derivative();
    for expected in cert.values_at_zero.iter().skip(1) {
        if cur.all_coeffs_nonnegative() {
            return true;
        }
        let v = cur.eval_at_zero();
        if v.is_negative() || &v != expected {
            return false;
        }
        cur = cur.derivative();
    }
    cur.all_coeffs_nonnegative()
}

// ---------------------------------------------------------------------------
// The Scalar abstraction
// ---------------------------------------------------------------------------

/// Ring operations shared by all coefficient types of exterior forms.
///
/// Implementors: [`GaussRational`] (invariant coefficients),
/// [`AnalyticScalar`] (one non-invariant complex direction), and [`C64`]
/// (numeric cross-checks).
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn mul_i(&self) -> Self;
    fn from_gauss(c: &GaussRational) -> Self;
    fn from_int(n: i64) -> Self {
        Self::from_gauss(&GaussRational::from_int(n))
    }
    /// Numeric evaluation; constants ignore the point.
    fn eval(&self, u: C64) -> C64;
}

/// Scalars that know their own Wirtinger derivatives along the
/// distinguished complex coordinate.
///
/// Constant rings return `None`; the analytic ring returns
/// `(∂/∂u, ∂/∂ū)`.  The exterior differential uses this to extend the
/// structure-equation Leibniz rule to coordinate-dependent coefficients.
pub trait DifferentiableScalar: Scalar {
    fn wirtinger(&self) -> Option<(Self, Self)>;
}

impl DifferentiableScalar for GaussRational {
    fn wirtinger(&self) -> Option<(Self, Self)> {
        None
    }
}

impl DifferentiableScalar for AnalyticScalar {
    fn wirtinger(&self) -> Option<(Self, Self)> {
        Some((self.partial_u(), self.partial_ubar()))
    }
}

impl DifferentiableScalar for C64 {
    fn wirtinger(&self) -> Option<(Self, Self)> {
        None
    }
}

impl Scalar for GaussRational {
    fn zero() -> Self {
        GaussRational::zero()
    }
    fn one() -> Self {
        GaussRational::one()
    }
    fn is_zero(&self) -> bool {
        GaussRational::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        GaussRational::conj(self)
    }
    fn mul_i(&self) -> Self {
        GaussRational::mul_i(self)
    }
    fn from_gauss(c: &GaussRational) -> Self {
        c.clone()
    }
    fn eval(&self, _u: C64) -> C64 {
        self.to_c64()
    }
}

impl Scalar for AnalyticScalar {
    fn zero() -> Self {
        AnalyticScalar::zero()
    }
    fn one() -> Self {
        AnalyticScalar::one()
    }
    fn is_zero(&self) -> bool {
        AnalyticScalar::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        AnalyticScalar::conj(self)
    }
    fn mul_i(&self) -> Self {
        AnalyticScalar::mul_i(self)
    }
    fn from_gauss(c: &GaussRational) -> Self {
        AnalyticScalar::from_gauss(c.clone())
    }
    fn eval(&self, u: C64) -> C64 {
        AnalyticScalar::eval(self, u)
    }
}

impl Scalar for C64 {
    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        num::complex::Complex::conj(self)
    }
    fn mul_i(&self) -> Self {
        self * C64::new(0.0, 1.0)
    }
    fn from_gauss(c: &GaussRational) -> Self {
        c.to_c64()
    }
    fn eval(&self, _u: C64) -> C64 {
        *self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> GaussRational {
        GaussRational::new(q(re_n, re_d), q(im_n, im_d))
    }

    #[test]
    fn gauss_product_of_conjugate_pair() {
        // (1+i)(1-i) = 2
        let a = g(1, 1, 1, 1);
        let b = g(1, 1, -1, 1);
        assert_eq!(&a * &b, GaussRational::from_int(2));
    }

    #[test]
    fn gauss_inverse_roundtrip() {
        let a = g(3, 4, -2, 7);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, GaussRational::one());
    }

    #[test]
    fn gauss_display_literals() {
        assert_eq!(format!("{}", GaussRational::from_int(2)), "2");
        assert_eq!(format!("{}", g(1, 2, 0, 1)), "1/2");
        assert_eq!(format!("{}", g(0, 1, 1, 1)), "(0+1i)");
        assert_eq!(format!("{}", g(1, 2, -3, 4)), "(1/2-3/4i)");
    }

    #[test]
    fn analytic_conjugation_swaps_u_and_ubar() {
        // conj(u e^U) = ū e^U
        let p = &AnalyticScalar::var_u() * &AnalyticScalar::exp_u(1);
        let expected = &AnalyticScalar::var_ubar() * &AnalyticScalar::exp_u(1);
        assert_eq!(p.conj(), expected);
    }

    #[test]
    fn analytic_product_merges_exponentials() {
        // e^U · (U e^U) = U e^{2U}
        let u_big = &AnalyticScalar::var_u() * &AnalyticScalar::var_ubar();
        let p = &AnalyticScalar::exp_u(1) * &(&u_big * &AnalyticScalar::exp_u(1));
        let expected = &u_big * &AnalyticScalar::exp_u(2);
        assert_eq!(p, expected);
    }

    #[test]
    fn wirtinger_derivative_of_exponentials() {
        // ∂/∂u e^U = ū e^U
        let p = AnalyticScalar::exp_u(1);
        assert_eq!(
            p.partial_u(),
            &AnalyticScalar::var_ubar() * &AnalyticScalar::exp_u(1)
        );
        // ∂/∂u e^{-U} = -ū e^{-U}
        let p = AnalyticScalar::exp_u(-1);
        assert_eq!(
            p.partial_u(),
            -&(&AnalyticScalar::var_ubar() * &AnalyticScalar::exp_u(-1))
        );
    }

    #[test]
    fn wirtinger_derivative_product_rule_case() {
        // ∂/∂u (u e^U) = e^U + U e^U, cross-checked below by central finite
        // differences in the holomorphic direction at u = 0.7 + 0.3i.
        let p = &AnalyticScalar::var_u() * &AnalyticScalar::exp_u(1);
        let d = p.partial_u();
        let u_big = &AnalyticScalar::var_u() * &AnalyticScalar::var_ubar();
        let expected = &AnalyticScalar::exp_u(1) + &(&u_big * &AnalyticScalar::exp_u(1));
        assert_eq!(d, expected);

        // Finite-difference oracle: for f(u, ū) treated with ū frozen,
        // ∂f/∂u ≈ [f(u+h, ū) - f(u-h, ū)] / 2h.  Freezing ū means evaluating
        // the formal monomials with independent u and ū arguments.
        let eval_frozen = |s: &AnalyticScalar, u: C64, ubar: C64| -> C64 {
            let mut acc = C64::new(0.0, 0.0);
            for (e, c) in s.terms() {
                let mut t = c.to_c64();
                t *= u.powu(e.a);
                t *= ubar.powu(e.b);
                t *= ((u * ubar) * f64::from(e.m)).exp();
                acc += t;
            }
            acc
        };
        let u0 = C64::new(0.7, 0.3);
        let ubar0 = u0.conj();
        let h = 1e-6;
        let fd = (eval_frozen(&p, u0 + h, ubar0) - eval_frozen(&p, u0 - h, ubar0))
            / C64::new(2.0 * h, 0.0);
        let exact = eval_frozen(&d, u0, ubar0);
        assert!((fd - exact).norm() < 1e-7, "fd={fd} exact={exact}");
    }

    #[test]
    fn analytic_eval_points() {
        assert_eq!(AnalyticScalar::exp_u(1).eval(C64::new(0.0, 0.0)), C64::new(1.0, 0.0));
        // U e^{2U} at u = 1: U = 1, value e².
        let u_big = &AnalyticScalar::var_u() * &AnalyticScalar::var_ubar();
        let p = &u_big * &AnalyticScalar::exp_u(2);
        let v = p.eval(C64::new(1.0, 0.0));
        assert!((v.re - 2.0f64.exp()).abs() < 1e-12 && v.im.abs() < 1e-15);
        // ū e^U at u = i: conj(i) = -i, U = 1, so the value is -i·e.
        let p = &AnalyticScalar::var_ubar() * &AnalyticScalar::exp_u(1);
        let v = p.eval(C64::new(0.0, 1.0));
        assert!((v - C64::new(0.0, -std::f64::consts::E)).norm() < 1e-12);
    }

    #[test]
    fn upolynomial_exact_division() {
        // (e^{2U}(3U+1) + 3e^U + 2)(e^{2U}(3U-1) + 4) / (e^{2U}(3U-1) + 4)
        let g1 = &(&UPolynomial::term(qi(3), 1, 2) + &UPolynomial::term(qi(1), 0, 2))
            + &(&UPolynomial::term(qi(3), 0, 1) + &UPolynomial::constant(qi(2)));
        let f = &(&UPolynomial::term(qi(3), 1, 2) - &UPolynomial::term(qi(1), 0, 2))
            + &UPolynomial::constant(qi(4));
        let prod = &g1 * &f;
        assert_eq!(prod.div_exact(&f).unwrap(), g1);
        assert_eq!(prod.div_exact(&g1).unwrap(), f);
        // Non-divisible pair
        let p = UPolynomial::var_u();
        let d = &UPolynomial::var_u() + &UPolynomial::one();
        assert!(p.div_exact(&d).is_none());
    }

    #[test]
    fn upolynomial_division_with_negative_weights() {
        let a = &UPolynomial::term(qi(2), 1, -1) + &UPolynomial::term(qi(5), 0, 2);
        let b = &UPolynomial::term(qi(1), 2, -1) + &UPolynomial::one();
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b).unwrap(), a);
    }

    #[test]
    fn exp_enclosure_brackets_truth() {
        for (n, d) in [(0i64, 1i64), (1, 1), (1, 2), (-3, 2), (5, 1), (-2, 1)] {
            let x = q(n, d);
            let (lo, hi) = exp_interval(&x, 24);
            let truth = (n as f64 / d as f64).exp();
            assert!(lo.to_f64().unwrap() <= truth + 1e-15);
            assert!(hi.to_f64().unwrap() >= truth - 1e-15);
            assert!((hi - lo).to_f64().unwrap() < 1e-6);
        }
    }

    #[test]
    fn sign_on_ray_certifies_shifted_exponential() {
        // e^{2U}(3U - 1) + 4 is positive on the ray: value 3 at 0, derivative
        // e^{2U}(6U + 1) has non-negative coefficients.
        let f = &(&UPolynomial::term(qi(3), 1, 2) - &UPolynomial::term(qi(1), 0, 2))
            + &UPolynomial::constant(qi(4));
        match sign_on_ray(&f) {
            RaySign::Proven(cert) => {
                assert_eq!(cert.values_at_zero[0], qi(3));
                assert!(verify_ray_certificate(&f, &cert));
            }
            other => panic!("expected positivity, got {other:?}"),
        }
    }

    #[test]
    fn sign_on_ray_trivial_and_refuted() {
        assert!(sign_on_ray(&UPolynomial::one()).is_proven());
        // e^{2U}(3U - 1) is negative at 0.
        let p = &UPolynomial::term(qi(3), 1, 2) - &UPolynomial::term(qi(1), 0, 2);
        match sign_on_ray(&p) {
            RaySign::Refuted(w) => {
                assert_eq!(w.at, Q::zero());
                assert_eq!(w.value_hi, qi(-1));
            }
            other => panic!("expected refutation, got {other:?}"),
        }
        // U e^U is zero at the origin, so strict positivity fails there.
        let p = UPolynomial::term(qi(1), 1, 1);
        assert!(matches!(sign_on_ray(&p), RaySign::Refuted { .. }));
    }

    #[test]
    fn sign_on_ray_interior_refutation() {
        // (U-1)² - 1/4 + e^{-10U}/100: negative near U = 1 but positive at 0.
        let p = &(&(&UPolynomial::term(qi(1), 2, 0) - &UPolynomial::term(qi(2), 1, 0))
            + &UPolynomial::constant(q(3, 4)))
            + &UPolynomial::term(q(1, 100), 0, -10);
        match sign_on_ray(&p) {
            RaySign::Refuted(w) => {
                assert!(!w.value_hi.is_positive());
                assert!(w.at.is_positive());
            }
            other => panic!("expected refutation, got {other:?}"),
        }
    }

    proptest! {
        #[test]
        fn analytic_ring_axioms(
            a_exp in 0u32..3, b_exp in 0u32..3, m in -2i32..3,
            c_re in -5i64..6, c_im in -5i64..6,
            a2 in 0u32..3, b2 in 0u32..3, m2 in -2i32..3,
            d_re in -5i64..6, d_im in -5i64..6,
        ) {
            let x = AnalyticScalar::term(g(c_re, 1, c_im, 1), a_exp, b_exp, m);
            let y = AnalyticScalar::term(g(d_re, 1, d_im, 1), a2, b2, m2);
            let z = &AnalyticScalar::var_u() + &AnalyticScalar::exp_u(1);
            // commutativity and associativity spot checks
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            // distributivity
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            // conjugation is a ring involution
            prop_assert_eq!(x.conj().conj(), x.clone());
            prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
            // Leibniz rule for the Wirtinger derivative
            let lhs = (&x * &y).partial_u();
            let rhs = &(&x.partial_u() * &y) + &(&x * &y.partial_u());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn numeric_evaluation_is_ring_homomorphism(
            a_exp in 0u32..3, b_exp in 0u32..3, m in -2i32..3,
            c_re in -5i64..6, c_im in -5i64..6,
            a2 in 0u32..3, b2 in 0u32..3, m2 in -2i32..3,
            d_re in -5i64..6, d_im in -5i64..6,
            ure in -20i32..20, uim in -20i32..20,
        ) {
            let x = AnalyticScalar::term(g(c_re, 1, c_im, 1), a_exp, b_exp, m);
            let y = AnalyticScalar::term(g(d_re, 1, d_im, 1), a2, b2, m2);
            let u = C64::new(f64::from(ure) / 10.0, f64::from(uim) / 10.0);
            let sum_err = ((&x + &y).eval(u) - (x.eval(u) + y.eval(u))).norm();
            let prod = (&x * &y).eval(u);
            let prod_err = (prod - x.eval(u) * y.eval(u)).norm();
            let scale = 1.0 + prod.norm();
            prop_assert!(sum_err < 1e-9 * scale);
            prop_assert!(prod_err < 1e-9 * scale);
        }
    }
}
