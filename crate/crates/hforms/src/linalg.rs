//! Linear algebra over the exact scalar rings, plus a small numeric
//! Hermitian eigensolver for search heuristics.
//!
//! Exact routines (Gauss rationals): reduced row echelon form, rank, kernel
//! bases, determinants, inverses, leading principal minors, characteristic
//! polynomials (Faddeev–LeVerrier), and positive-(semi)definiteness of
//! Hermitian matrices.  For Hermitian matrices all eigenvalues are real, so
//! positive semidefiniteness is equivalent to the sign pattern
//! `(−1)^m c_m ≥ 0` of the characteristic polynomial
//! `det(xI − A) = Σ c_m x^{k−m}` — an exact test with no root isolation.
//!
//! Fraction-free routines ([`UPolynomial`] entries): Bareiss elimination,
//! whose pivots are exactly the leading principal minors; every division it
//! performs is exact in the coefficient ring.
//!
//! Numeric routines (`C64` entries): cyclic Jacobi diagonalization for
//! Hermitian matrices and Gauss–Jordan inversion.  These never decide
//! anything by themselves — their output is always re-verified exactly by
//! the callers.

use num::traits::Signed;

use crate::scalar::{AnalyticScalar, GaussRational, Scalar, UPolynomial, C64, Q};

pub type QMatrix = Vec<Vec<GaussRational>>;
pub type CMatrix = Vec<Vec<C64>>;

// ---------------------------------------------------------------------------
// Exact routines over the Gauss rationals
// ---------------------------------------------------------------------------

pub fn identity(k: usize) -> QMatrix {
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { GaussRational::one() } else { GaussRational::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let rows = a.len();
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    let mut acc = GaussRational::zero();
                    for k in 0..inner {
                        acc = &acc + &(&a[i][k] * &b[k][j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &QMatrix, x: &[GaussRational]) -> Vec<GaussRational> {
    a.iter()
        .map(|row| {
            let mut acc = GaussRational::zero();
            for (c, xi) in row.iter().zip(x) {
                acc = &acc + &(c * xi);
            }
            acc
        })
        .collect()
}

pub fn conj_transpose(a: &QMatrix) -> QMatrix {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| (0..rows).map(|i| a[i][j].conj()).collect())
        .collect()
}

/// Reduced row echelon form; returns the reduced matrix and the pivot
/// column indices.
pub fn rref(rows: &[Vec<GaussRational>]) -> (QMatrix, Vec<usize>) {
    let mut m: QMatrix = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for col in 0..ncols {
        let Some(pr) = (r..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][col].inverse().expect("pivot is nonzero");
        for c in &mut m[r] {
            *c = &*c * &inv;
        }
        for i in 0..nrows {
            if i != r && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for c in 0..ncols {
                    let delta = &factor * &m[r][c];
                    m[i][c] = &m[i][c] - &delta;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == nrows {
            break;
        }
    }
    (m, pivots)
}

pub fn rank_gauss(rows: &[Vec<GaussRational>]) -> usize {
    rref(rows).1.len()
}

/// Basis of the right kernel `{x : A·x = 0}`.
pub fn kernel_basis(rows: &[Vec<GaussRational>]) -> Vec<Vec<GaussRational>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let (m, pivots) = rref(rows);
    let pivot_of_col: Vec<Option<usize>> = {
        let mut v = vec![None; ncols];
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = Some(r);
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut x = vec![GaussRational::zero(); ncols];
        x[free] = GaussRational::one();
        for (col, pr) in pivot_of_col.iter().enumerate() {
            if let Some(r) = pr {
                x[col] = -&m[*r][free];
            }
        }
        basis.push(x);
    }
    basis
}

/// One solution of `A·x = b`, or `None` when inconsistent.
pub fn solve(a: &QMatrix, b: &[GaussRational]) -> Option<Vec<GaussRational>> {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let aug: Vec<Vec<GaussRational>> = (0..nrows)
        .map(|i| {
            let mut row = a[i].clone();
            row.push(b[i].clone());
            row
        })
        .collect();
    let (m, pivots) = rref(&aug);
    if pivots.contains(&ncols) {
        return None; // pivot in the constant column
    }
    let mut x = vec![GaussRational::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][ncols].clone();
    }
    Some(x)
}

/// Coefficients expressing `target` in the span of `vectors`, or `None`.
pub fn in_span(vectors: &[Vec<GaussRational>], target: &[GaussRational]) -> Option<Vec<GaussRational>> {
    if vectors.is_empty() {
        return target.iter().all(GaussRational::is_zero).then(Vec::new);
    }
    let dim = target.len();
    let a: QMatrix = (0..dim)
        .map(|i| vectors.iter().map(|v| v[i].clone()).collect())
        .collect();
    let x = solve(&a, target)?;
    // solve() only fails on inconsistency, so x is a valid coordinate vector.
    Some(x)
}

pub fn det(a: &QMatrix) -> GaussRational {
    let k = a.len();
    let mut m = a.to_vec();
    let mut acc = GaussRational::one();
    for col in 0..k {
        let Some(pr) = (col..k).find(|&i| !m[i][col].is_zero()) else {
            return GaussRational::zero();
        };
        if pr != col {
            m.swap(col, pr);
            acc = -acc;
        }
        acc = &acc * &m[col][col];
        let inv = m[col][col].inverse().unwrap();
        for i in col + 1..k {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] * &inv;
            for j in col..k {
                let delta = &f * &m[col][j];
                m[i][j] = &m[i][j] - &delta;
            }
        }
    }
    acc
}

pub fn inverse(a: &QMatrix) -> Option<QMatrix> {
    let k = a.len();
    let aug: Vec<Vec<GaussRational>> = (0..k)
        .map(|i| {
            let mut row = a[i].clone();
            for j in 0..k {
                row.push(if i == j { GaussRational::one() } else { GaussRational::zero() });
            }
            row
        })
        .collect();
    let (m, pivots) = rref(&aug);
    if pivots.len() != k || pivots.iter().enumerate().any(|(r, &c)| r != c) {
        return None;
    }
    Some((0..k).map(|i| m[i][k..].to_vec()).collect())
}

/// Leading principal minors `det A[..k, ..k]` for `k = 1..=n`.
pub fn leading_principal_minors(a: &QMatrix) -> Vec<GaussRational> {
    (1..=a.len())
        .map(|k| {
            let sub: QMatrix = a[..k].iter().map(|row| row[..k].to_vec()).collect();
            det(&sub)
        })
        .collect()
}

/// Characteristic polynomial coefficients `c_0..c_k` with
/// `det(xI − A) = Σ_m c_m x^{k−m}`, by Faddeev–LeVerrier.
pub fn char_poly(a: &QMatrix) -> Vec<GaussRational> {
    let k = a.len();
    let mut coeffs = vec![GaussRational::one()];
    let mut m = a.clone();
    for step in 1..=k {
        let mut tr = GaussRational::zero();
        for i in 0..k {
            tr = &tr + &m[i][i];
        }
        let c = -&tr.div_exact(&GaussRational::from_int(step as i64)).unwrap();
        coeffs.push(c.clone());
        if step == k {
            break;
        }
        for i in 0..k {
            m[i][i] = &m[i][i] + &c;
        }
        m = mat_mul(a, &m);
    }
    coeffs
}

pub fn is_hermitian(a: &QMatrix) -> bool {
    let k = a.len();
    a.iter().all(|row| row.len() == k)
        && (0..k).all(|i| (0..k).all(|j| a[i][j] == a[j][i].conj()))
}

/// Exact positive-semidefiniteness of a Hermitian matrix: all eigenvalues
/// are real, so PSD is equivalent to `(−1)^m c_m ≥ 0` for every coefficient
/// of the characteristic polynomial (elementary symmetric functions of the
/// eigenvalues).  Returns `None` when the matrix is not Hermitian.
pub fn hermitian_is_psd(a: &QMatrix) -> Option<bool> {
    if !is_hermitian(a) {
        return None;
    }
    let coeffs = char_poly(a);
    Some(coeffs.iter().enumerate().all(|(m, c)| {
        if !c.is_real() {
            return false;
        }
        let e_m = if m % 2 == 1 { -c.re().clone() } else { c.re().clone() };
        !e_m.is_negative()
    }))
}

/// Exact positive-definiteness of a Hermitian matrix via Sylvester's
/// criterion.  Returns `None` when the matrix is not Hermitian.
pub fn hermitian_is_pd(a: &QMatrix) -> Option<bool> {
    if !is_hermitian(a) {
        return None;
    }
    Some(leading_principal_minors(a)
        .iter()
        .all(|d| d.is_real() && d.re().is_positive()))
}

/// For a Hermitian matrix failing Sylvester at stage `k` (leading minors
/// `d_1,…,d_{k−1} > 0`, `d_k ≤ 0`), a vector `w` with
/// `w^* A w = d_k / d_{k−1} ≤ 0`: take the last column of the k×k block,
/// solve the (k−1)-block against it, and append 1.
pub fn sylvester_witness(a: &QMatrix, k: usize) -> Vec<GaussRational> {
    let mut w = Vec::new();
    if k > 1 {
        let block: QMatrix = a[..k - 1].iter().map(|r| r[..k - 1].to_vec()).collect();
        let col: Vec<GaussRational> = (0..k - 1).map(|i| a[i][k - 1].clone()).collect();
        let inv = inverse(&block).expect("leading block is invertible");
        let sol = mat_vec(&inv, &col);
        w.extend(sol.into_iter().map(|x| -&x));
    }
    w.push(GaussRational::one());
    while w.len() < a.len() {
        w.push(GaussRational::zero());
    }
    w
}

/// The Hermitian quadratic form `w^* A w`.
pub fn quad_form(a: &QMatrix, w: &[GaussRational]) -> GaussRational {
    let mut acc = GaussRational::zero();
    for (i, wi) in w.iter().enumerate() {
        for (j, wj) in w.iter().enumerate() {
            acc = &acc + &(&(&wi.conj() * &a[i][j]) * wj);
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// Fraction-free routines over the exp-polynomial ring
// ---------------------------------------------------------------------------

/// Leading principal minors of a square matrix over the exp-polynomial
/// ring, by Bareiss fraction-free elimination: after step `k` the pivot
/// equals the k-th leading principal minor, and every division is exact.
///
/// Stops after the first zero pivot (the remaining minors are not needed
/// for Sylvester-style positivity: one non-positive minor already refutes).
pub fn bareiss_leading_minors(a: &[Vec<UPolynomial>]) -> Vec<UPolynomial> {
    let n = a.len();
    let mut m: Vec<Vec<UPolynomial>> = a.to_vec();
    let mut minors = Vec::new();
    let mut prev = UPolynomial::one();
    for k in 0..n {
        let pivot = m[k][k].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() || k + 1 == n {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&pivot * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss division is exact in an integral domain");
            }
        }
        prev = pivot;
    }
    minors
}

/// Fraction-free leading principal minors over the analytic coefficient
/// ring.  As with [`bareiss_leading_minors`], entry `k` is the `(k+1)×(k+1)`
/// leading principal minor; the sweep stops after the first zero pivot.
pub fn bareiss_leading_minors_analytic(a: &[Vec<AnalyticScalar>]) -> Vec<AnalyticScalar> {
    let n = a.len();
    let mut m: Vec<Vec<AnalyticScalar>> = a.to_vec();
    let mut minors = Vec::new();
    let mut prev = AnalyticScalar::one();
    for k in 0..n {
        let pivot = m[k][k].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() || k + 1 == n {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&pivot * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss division is exact in an integral domain");
            }
        }
        prev = pivot;
    }
    minors
}

// ---------------------------------------------------------------------------
// Numeric routines
// ---------------------------------------------------------------------------

/// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Returns eigenvalues in ascending order and the matching orthonormal
/// eigenvectors as columns (`vectors[i][j]` = component `i` of eigenvector
/// `j`).
pub fn jacobi_hermitian(h: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = h.len();
    let mut a = h.clone();
    let mut v: CMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
                .collect()
        })
        .collect();
    let scale: f64 = a
        .iter()
        .flat_map(|row| row.iter().map(|c| c.norm()))
        .fold(0.0, f64::max)
        .max(1.0);
    for _sweep in 0..120 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                off += a[i][j].norm_sqr();
            }
        }
        if off.sqrt() < 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q_col in p + 1..n {
                let apq = a[p][q_col];
                if apq.norm() < 1e-300 {
                    continue;
                }
                // Phase scaling turns the (p,q) entry real and positive;
                // then a real Jacobi rotation zeroes it.
                let phase = apq / apq.norm();
                let beta = apq.norm();
                let alpha = a[p][p].re;
                let gamma = a[q_col][q_col].re;
                let tau = (gamma - alpha) / (2.0 * beta);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Columns of the rotation G (identity elsewhere):
                //   G[p][p] = c,            G[p][q] = s
                //   G[q][p] = −s·conj(ph),  G[q][q] = c·conj(ph)
                // with ph = phase of a_pq, acting as A ← G^* A G.
                let gpp = C64::new(c, 0.0);
                let gpq = C64::new(s, 0.0);
                let gqp = -phase.conj() * s;
                let gqq = phase.conj() * c;
                for i in 0..n {
                    let aip = a[i][p];
                    let aiq = a[i][q_col];
                    a[i][p] = aip * gpp + aiq * gqp;
                    a[i][q_col] = aip * gpq + aiq * gqq;
                }
                for j in 0..n {
                    let apj = a[p][j];
                    let aqj = a[q_col][j];
                    a[p][j] = gpp.conj() * apj + gqp.conj() * aqj;
                    a[q_col][j] = gpq.conj() * apj + gqq.conj() * aqj;
                }
                for i in 0..n {
                    let vip = v[i][p];
                    let viq = v[i][q_col];
                    v[i][p] = vip * gpp + viq * gqp;
                    v[i][q_col] = vip * gpq + viq * gqq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].re.partial_cmp(&a[j][j].re).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| a[i][i].re).collect();
    let vectors: CMatrix = (0..n)
        .map(|i| order.iter().map(|&j| v[i][j]).collect())
        .collect();
    (values, vectors)
}

/// Gauss–Jordan inverse with partial pivoting; `None` for (numerically)
/// singular input.
pub fn numeric_inverse(a: &CMatrix) -> Option<CMatrix> {
    let n = a.len();
    let mut m: Vec<Vec<C64>> = (0..n)
        .map(|i| {
            let mut row = a[i].clone();
            for j in 0..n {
                row.push(if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) });
            }
            row
        })
        .collect();
    for col in 0..n {
        let (pr, pv) = (col..n)
            .map(|i| (i, m[i][col].norm()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())?;
        if pv < 1e-300 {
            return None;
        }
        m.swap(col, pr);
        let inv = C64::new(1.0, 0.0) / m[col][col];
        for c in m[col].iter_mut() {
            *c *= inv;
        }
        for i in 0..n {
            if i != col {
                let f = m[i][col];
                if f.norm() == 0.0 {
                    continue;
                }
                for c in 0..2 * n {
                    let delta = f * m[col][c];
                    m[i][c] -= delta;
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n..].to_vec()).collect())
}

pub fn numeric_mat_vec(a: &CMatrix, x: &[C64]) -> Vec<C64> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(c, xi)| c * xi).sum())
        .collect()
}

/// Convert an exact matrix to its numeric shadow at a point `u`.
pub fn to_numeric<S: Scalar>(a: &[Vec<S>], u: C64) -> CMatrix {
    a.iter().map(|row| row.iter().map(|c| c.eval(u)).collect()).collect()
}

/// Round a float to a nearby rational with bounded denominator, by
/// continued fractions.
pub fn rationalize(x: f64, max_den: i64) -> Q {
    use num::BigInt;
    if !x.is_finite() {
        return Q::from_integer(BigInt::from(0));
    }
    let negative = x < 0.0;
    let mut x = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    for _ in 0..40 {
        let a = x.floor();
        if a > 1e17 {
            break;
        }
        let ai = a as i128;
        let p2 = ai * p1 + p0;
        let q2 = ai * q1 + q0;
        if q2 > i128::from(max_den) {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = x - a;
        if frac < 1e-12 {
            break;
        }
        x = 1.0 / frac;
    }
    let mut r = Q::new(BigInt::from(p1), BigInt::from(q1.max(1)));
    if negative {
        r = -r;
    }
    r
}
