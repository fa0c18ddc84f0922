//! Invert the power map on Hermitian metrics: given a positive
//! (n−1, n−1)-form Φ, recover the unique metric F with F^{n−1}/(n−1)! = Φ.
//!
//! The inversion is exact whenever the determinant of the paired Hermitian
//! matrix has a rational (n−1)-st root — in particular for diagonal rational
//! metrics — and falls back to a floating-point root with a reported
//! residual otherwise.
//!
//! Run with `cargo run --example root_metric`.

use hforms::exterior::Form;
use hforms::positivity::{random_strongly_positive, root_metric, RootMetricOutcome};
use hforms::scalar::{q, GaussRational};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn main() {
    // An exact case: a diagonal rational metric on n = 3.
    let n = 3u8;
    let weights = [q(1, 1), q(2, 1), q(9, 2)];
    let mut f = Form::zero(n);
    for j in 1..=n {
        let a = weights[usize::from(j) - 1].clone();
        f = &f + &Form::monomial(n, &[j], &[j], GaussRational::new(q(0, 1), a));
    }
    let phi = f.wedge_pow(2).scale_q(&q(1, 2));
    println!("F  = {f}");
    println!("Φ  = F²/2! = {phi}");
    match root_metric(&phi).expect("Φ is positive") {
        RootMetricOutcome::Exact(metric) => {
            println!("root recovered exactly; matches F: {}", metric == f);
        }
        RootMetricOutcome::Numeric { .. } => unreachable!("diagonal rational roots are exact"),
    }

    // Exactness is not limited to diagonal metrics: squaring any rational
    // metric on n = 3 yields a paired matrix whose determinant is a perfect
    // square, so the inversion stays in rational arithmetic throughout.
    let mut g = Form::zero(n);
    for (j, a) in [(1u8, q(2, 1)), (2, q(2, 1)), (3, q(1, 1))] {
        g = &g + &Form::monomial(n, &[j], &[j], GaussRational::new(q(0, 1), a));
    }
    g = &(&g + &Form::monomial(n, &[1], &[2], GaussRational::i()))
        + &Form::monomial(n, &[2], &[1], GaussRational::i());
    let phi = g.wedge_pow(2).scale_q(&q(1, 2));
    println!();
    println!("G  = {g}");
    match root_metric(&phi).expect("Φ is positive") {
        RootMetricOutcome::Exact(metric) => {
            println!("root recovered exactly; matches G: {}", metric == g);
        }
        RootMetricOutcome::Numeric { .. } => unreachable!("rational squares on n = 3 root exactly"),
    }

    // An irrational case: a positive (2, 2)-form given directly rather than
    // as a square. Its root F = Σ fⱼ·iφ^{j j̄} must satisfy f₁f₂ = 2 and
    // f₁f₃ = f₂f₃ = 1, forcing f₁ = √2, so the inversion falls back to
    // floating point and reports its round-trip residual.
    let mut phi = Form::zero(n);
    for (jk, a) in [([1u8, 2u8], q(2, 1)), ([1, 3], q(1, 1)), ([2, 3], q(1, 1))] {
        phi = &phi + &Form::monomial(n, &jk, &jk, GaussRational::new(a, q(0, 1)));
    }
    println!();
    println!("Φ  = {phi}");
    match root_metric(&phi).expect("Φ is positive") {
        RootMetricOutcome::Exact(metric) => println!("root is exact: {metric}"),
        RootMetricOutcome::Numeric { residual, .. } => {
            println!("root is numeric with round-trip residual {residual:.3e}");
        }
    }

    // Random strongly positive (n−1, n−1)-forms round-trip within 1e−9.
    println!();
    let mut rng = ChaCha12Rng::seed_from_u64(5);
    for round in 1..=4 {
        let n = if round % 2 == 0 { 4u8 } else { 3 };
        let (phi, _) = random_strongly_positive(n, u32::from(n) - 1, &mut rng);
        match root_metric(&phi).expect("strongly positive forms have metric roots") {
            RootMetricOutcome::Exact(_) => println!("sample {round} (n = {n}): exact root"),
            RootMetricOutcome::Numeric { residual, .. } => {
                println!("sample {round} (n = {n}): numeric root, residual {residual:.3e}");
            }
        }
    }
}
