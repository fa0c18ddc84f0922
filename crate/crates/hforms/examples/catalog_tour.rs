//! Run the full check suite over every built-in algebra and print a
//! compact verdict table.
//!
//! Each row summarizes one algebra: whether it validates, whether it is
//! unimodular and nilpotent, and what the obstruction machinery concludes
//! about invariant Hodge–Riemann balanced structures on it.
//!
//! Run with `cargo run --example catalog_tour`.

use hforms::catalog;
use hforms::report::{run_suite, CheckSelection, CheckStatus};
use hforms::SearchConfig;

fn main() {
    let config = SearchConfig::default().with_budget(0.25);
    println!(
        "{:<28} {:>2}  {:<12} {:<12} {:<12} {:<14}",
        "algebra", "n", "nilpotent", "scan", "cone-pk", "hr-balanced"
    );
    for entry in catalog::catalog() {
        let report = run_suite(entry.name, &entry.algebra, &CheckSelection::All, &config);
        let status = |name: &str| -> &'static str {
            report
                .checks
                .iter()
                .find(|c| c.name == name)
                .map(|c| c.status.word())
                .unwrap_or("-")
        };
        println!(
            "{:<28} {:>2}  {:<12} {:<12} {:<12} {:<14}",
            entry.name,
            entry.algebra.n(),
            status("nilpotent"),
            status("scan-oneform"),
            status("cone-pk"),
            status("hr-balanced"),
        );
        if let Some(check) =
            report.checks.iter().find(|c| c.status == CheckStatus::Obstructed)
        {
            if let Some(witness) = &check.witness {
                let kind = witness
                    .pointer("/witness/kind")
                    .or_else(|| witness.pointer("/kind"))
                    .and_then(|v| v.as_str())
                    .unwrap_or("?");
                println!("{:<28}      first witness: {kind}", "");
            }
        }
    }
    println!();
    println!("Statuses: clear/proven are conclusive positives, obstructed/refuted are");
    println!("conclusive negatives with embedded witnesses, inconclusive means the");
    println!("search budget ran out before a certificate was found.");
}
