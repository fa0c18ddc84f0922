//! Parse, validate, and canonically re-print an algebra file.
//!
//! The grammar is line-oriented: a header `algebra <name> n=<dim>`, one
//! `d a<j> = <sum>` structure equation per non-closed coframe direction,
//! and optional `meta <key> <value>` tags.  Monomials are written
//! `a<j>^a<k>`, `a<j>^~a<k>`, or `~a<j>^~a<k>` with rational or complex
//! coefficients; `#` starts a comment.
//!
//! Run with `cargo run --example parse_algebra [path]` — without a path, a
//! built-in sample (the complex Heisenberg algebra) is used.

use hforms::parse;
use hforms::Verdict;

const SAMPLE: &str = "\
# The complex Heisenberg algebra: one structure equation.
algebra iwasawa n=3
d a3 = -a1^a2
";

fn main() {
    let (source, text) = match std::env::args().nth(1) {
        Some(path) => match std::fs::read_to_string(&path) {
            Ok(text) => (path, text),
            Err(e) => {
                eprintln!("error: {path}: {e}");
                std::process::exit(1);
            }
        },
        None => ("<built-in sample>".to_string(), SAMPLE.to_string()),
    };

    let file = match parse::parse(&text) {
        Ok(file) => file,
        Err(e) => {
            // Parse errors always carry a 1-based line and column.
            eprintln!("error: {source}: {e}");
            std::process::exit(1);
        }
    };

    println!("parsed `{}` with n = {}", file.name, file.n);
    match file.validate() {
        Verdict::Proven(_) => println!("validated: integrable, Jacobi identity holds"),
        Verdict::Refuted(issue) => println!("invalid: {issue}"),
        Verdict::Inconclusive { reason } => println!("inconclusive: {reason}"),
    }

    println!();
    println!("canonical form:");
    print!("{}", file.print());

    println!();
    println!("For contrast, a malformed input and its positioned error:");
    let bad = "algebra broken n=2\nd a1 = ~a1^a2\n";
    match parse::parse(bad) {
        Err(e) => println!("  {e}"),
        Ok(_) => unreachable!("the sample is malformed"),
    }
}
