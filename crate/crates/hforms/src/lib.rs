//! Exact invariant exterior calculus on Lie algebras with complex
//! structures, with three-state positivity verdicts.
//!
//! The crate decides questions of the shape "is this invariant form
//! positive / balanced / an obstruction witness" *exactly* where possible
//! and reports `Inconclusive` otherwise — it never silently falls back to
//! floating point for a verdict.  Numeric evaluation exists only as a
//! cross-check and as a search heuristic whose findings are re-verified in
//! exact arithmetic.
//!
//! Module map:
//!
//! * [`scalar`] — exact coefficient rings (Gauss rationals, analytic scalars
//!   in one complex variable, polynomials in `U = |u|²` and `e^U`) and sign
//!   decisions on the ray `U ≥ 0`.
//! * [`exterior`] — complexified exterior algebra on a basis
//!   `φ¹, …, φⁿ, φ̄¹, …, φ̄ⁿ`, with wedge, conjugation, contraction, and the
//!   bigraded pieces.
//! * [`linalg`] — exact linear algebra over the scalar rings (kernels,
//!   determinants, principal minors, positive-semidefinite certificates) and
//!   a small numeric Hermitian eigensolver for searches.
//! * [`lie_complex`] — Lie algebras with integrable complex structures,
//!   presented by the differential on invariant (1,0)-forms, plus the
//!   induced Chevalley–Eilenberg differential and its `∂`/`∂̄` parts.
//! * [`positivity`] — strong positivity certificates, transversality, and
//!   positive-definiteness of Hodge–Riemann pairings.
//! * [`hodge_riemann`] — the bilinear pairing attached to a top-degree-form
//!   datum, primitive subspaces, balanced metrics, and the full
//!   Hodge–Riemann property checker.
//! * [`obstructions`] — cohomological obstruction scans: one-form witnesses,
//!   cone-image searches with exact positive-semidefinite re-verification,
//!   and structure-based verdicts for nilpotent and complex-parallelizable
//!   algebras, including the family with an abelian complex structure and a
//!   distinguished central direction.
//! * [`catalog`] — built-in example algebras and random generators.
//! * [`parse`] — the `algebra` text format (tokenizer, parser, printer).
//! * [`report`] — JSON reports with content hashes for reproducible runs.
//! * [`iwasawa_c`] — the product of the Iwasawa manifold's algebra with a
//!   complex line, its distinguished balanced metric of Hodge–Riemann type,
//!   and the golden-value verification suite.
//! * [`cli`] — the `hforms` command-line front end.

pub mod catalog;
pub mod cli;
pub mod exterior;
pub mod hodge_riemann;
pub mod iwasawa_c;
pub mod lie_complex;
pub mod linalg;
pub mod obstructions;
pub mod parse;
pub mod positivity;
pub mod report;
pub mod scalar;

use std::fmt;

/// Budgets and seeds for the randomized searches (transversality sampling,
/// cone-image feasibility).  All searches are deterministic given a config.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    /// Root seed; per-restart seeds are derived from it.
    pub seed: u64,
    /// Random restarts for the semidefinite feasibility ascent.
    pub restarts: usize,
    /// Iteration cap per ascent restart.
    pub ascent_iters: usize,
    /// Random decomposables sampled by the transversality search.
    pub transverse_samples: usize,
    /// Local refinement rounds on the best transversality candidate.
    pub transverse_refinements: usize,
    /// Numeric cross-check sample count (points `u` in the disk `|u| ≤ 2`).
    pub samples: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0x68666f726d73, // "hforms"
            restarts: 64,
            ascent_iters: 500,
            transverse_samples: 10_000,
            transverse_refinements: 50,
            samples: 32,
        }
    }
}

impl SearchConfig {
    /// Scale every budget by `factor` (seeds unchanged), rounding up.
    pub fn with_budget(&self, factor: f64) -> Self {
        assert!(factor > 0.0);
        let scale = |x: usize| ((x as f64 * factor).ceil() as usize).max(1);
        SearchConfig {
            seed: self.seed,
            restarts: scale(self.restarts),
            ascent_iters: scale(self.ascent_iters),
            transverse_samples: scale(self.transverse_samples),
            transverse_refinements: scale(self.transverse_refinements),
            samples: scale(self.samples),
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        SearchConfig { seed, ..self.clone() }
    }
}

/// A three-state verdict: proved with a certificate, refuted with a witness,
/// or undecided with a reason.
///
/// `Proven`/`Refuted` always carry enough data to re-check the claim
/// independently; `Inconclusive` states why the decision was out of reach
/// (budget, non-coercible scalars, unsupported shape, …).
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict<P, R> {
    Proven(P),
    Refuted(R),
    Inconclusive { reason: String },
}

impl<P, R> Verdict<P, R> {
    pub fn is_proven(&self) -> bool {
        matches!(self, Verdict::Proven(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Verdict::Inconclusive { .. })
    }

    pub fn inconclusive(reason: impl Into<String>) -> Self {
        Verdict::Inconclusive { reason: reason.into() }
    }

    /// Short summary keyword for reports and CLI output.
    pub fn word(&self) -> &'static str {
        match self {
            Verdict::Proven(_) => "proven",
            Verdict::Refuted(_) => "refuted",
            Verdict::Inconclusive { .. } => "inconclusive",
        }
    }
}

impl<P, R> fmt::Display for Verdict<P, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Inconclusive { reason } => write!(f, "inconclusive ({reason})"),
            other => write!(f, "{}", other.word()),
        }
    }
}
