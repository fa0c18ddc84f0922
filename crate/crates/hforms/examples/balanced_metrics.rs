//! Decide balancedness of invariant Hermitian metrics two ways.
//!
//! A metric with fundamental form F is balanced when d(F^{n−1}) = 0.  On a
//! unimodular algebra this is equivalent to the coframe-wise criterion
//! `F^{n−1} ∧ dα^j = 0` for every coframe direction j, which needs no
//! (2n−1)-form expansion.  Both routes are exact and must agree.
//!
//! Run with `cargo run --example balanced_metrics`.

use hforms::catalog;
use hforms::exterior::standard_kaehler;
use hforms::hodge_riemann::{invariant_balanced_criterion, is_balanced};
use hforms::positivity::random_hermitian_metric;
use hforms::scalar::GaussRational;
use hforms::Verdict;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn main() {
    // The classic positive example: the standard metric on the complex
    // Heisenberg algebra is balanced (though the algebra carries no Kähler
    // metric at all).
    let g = catalog::iwasawa();
    let f = standard_kaehler::<GaussRational>(3);
    println!("complex Heisenberg algebra, standard metric:");
    println!("  is_balanced: {}", is_balanced(&g, &f));
    println!(
        "  coframe-wise criterion: {}",
        invariant_balanced_criterion(&g, &f).expect("unimodular")
    );

    // A refuted example: a generic metric on the same algebra is usually
    // not balanced, and the criterion names the offending direction.
    let mut rng = ChaCha12Rng::seed_from_u64(11);
    println!();
    println!("random Hermitian metrics on random unimodular algebras:");
    for round in 1..=6 {
        let g = catalog::random_unimodular(if round % 2 == 0 { 4 } else { 3 }, &mut rng);
        let f = random_hermitian_metric(g.n(), &mut rng);
        let direct = is_balanced(&g, &f);
        let criterion = invariant_balanced_criterion(&g, &f).expect("unimodular");
        let agree = matches!(
            (&direct, &criterion),
            (Verdict::Proven(_), Verdict::Proven(_)) | (Verdict::Refuted(_), Verdict::Refuted(_))
        );
        println!("  sample {round} (n = {}): {direct}; routes agree: {agree}", g.n());
        if let Verdict::Refuted(witness) = &criterion {
            println!(
                "      offending direction: j = {} ({}conjugated)",
                witness.coframe_index,
                if witness.conjugated { "" } else { "not " }
            );
        }
    }
}
