//! The classical Hodge–Riemann bilinear conditions, checked exactly.
//!
//! Given a Hermitian form ω and a top-degree datum Ω of bidegree
//! (n−2, n−2), the pairing `Q(α, β) = i^{p−q} (−1)^{k(k−1)/2} vol(α ∧ β̄ ∧ Ω)`
//! must be positive definite on (2,0) and on the ω-primitive part of (1,1).
//! For the standard Kähler form with Ω = ω^{n−2}/(n−2)! this is the classical
//! statement; products of distinct strongly positive forms also satisfy the
//! (2,0)/(0,2) half, which the last section samples.
//!
//! Run with `cargo run --example classical_hodge_riemann`.

use hforms::exterior::standard_kaehler;
use hforms::hodge_riemann::check_hodge_riemann;
use hforms::positivity::random_strongly_positive;
use hforms::scalar::{q, GaussRational};
use hforms::Verdict;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn main() {
    for n in [3u8, 4, 5] {
        let omega = standard_kaehler::<GaussRational>(n);
        let factorial: i64 = (1..=i64::from(n) - 2).product();
        let big = omega.wedge_pow(u32::from(n) - 2).scale_q(&q(1, factorial));
        let verdict = check_hodge_riemann(&omega, &big);
        match verdict {
            Verdict::Proven(evidence) => println!(
                "n = {n}: proven; Gram blocks of sizes {} (2,0) and {} (primitive 1,1), \
                 splitting coefficient {}",
                evidence.gram_20.dim(),
                evidence.gram_11.dim(),
                evidence.splitting_coefficient,
            ),
            other => println!("n = {n}: {other:?}"),
        }
    }

    println!();
    println!("Products of random strongly positive forms (n = 4):");
    let mut rng = ChaCha12Rng::seed_from_u64(2);
    for round in 1..=3 {
        let (omega0, _) = random_strongly_positive(4, 1, &mut rng);
        let (omega1, _) = random_strongly_positive(4, 1, &mut rng);
        let (omega2, _) = random_strongly_positive(4, 1, &mut rng);
        let verdict = check_hodge_riemann(&omega0, &omega1.wedge(&omega2));
        println!("  sample {round}: {verdict}");
    }
    println!("A refutation at bidegree (2,0) or (0,2) never occurs for such products;");
    println!("at (1,1) the primitive part may degenerate, which reports as inconclusive");
    println!("or as a non-positivity witness at (1,1) — both are expected outcomes.");
}
