//! Schema-versioned JSON reports for scripted runs.
//!
//! [`run_suite`] executes a selection of checks against one algebra and
//! aggregates the outcomes.  Reports are reproducible bit for bit given the
//! same configuration and engine version: the canonical rendering strips
//! wall-clock timing, every randomized search is seeded from the config,
//! and the algebra is identified by the SHA-256 of its canonical file
//! rendering.  Every `proven` / `refuted` / `obstructed` entry embeds its
//! re-verifiable witness as form literals.

use crate::exterior::{standard_kaehler, Form};
use crate::hodge_riemann::{check_hr_balanced, HodgeRiemannFailure, HrBalancedFailure};
use crate::lie_complex::{ComplexLieAlgebra, JWitness, ValidationFailure, ValidationFailureKind};
use crate::obstructions::{
    cone_image_search, scan_oneform_obstruction, ConeSearchMode, ObstructionWitness,
    OneFormObstruction, PrimitivityJustification, StructureConclusion, WitnessCertificate,
    WitnessKind,
};
use crate::parse::AlgebraFile;
use crate::scalar::{q, GaussRational, Scalar};
use crate::{SearchConfig, Verdict};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

/// Names accepted by `--check`, in execution order.
pub const CHECK_NAMES: &[&str] = &[
    "validate",
    "unimodular",
    "abelian-j",
    "commutator-j",
    "nilpotent",
    "scan-oneform",
    "cone-pk",
    "cone-cpd",
    "cone-hrt",
    "hr-balanced",
];

/// Which checks [`run_suite`] executes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckSelection {
    All,
    Named(Vec<String>),
}

impl CheckSelection {
    fn includes(&self, name: &str) -> bool {
        match self {
            CheckSelection::All => true,
            CheckSelection::Named(list) => list.iter().any(|x| x == name),
        }
    }
}

/// Outcome class of one check, ordered by severity for exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    /// Conclusively unobjectionable (certificate embedded where one exists).
    Clear,
    /// A positive structure was certified.
    Proven,
    /// A structural fact, neither good nor bad for exit purposes.
    Info,
    /// A candidate structure was refuted.
    Refuted,
    /// An obstruction witness rules out a whole class of structures.
    Obstructed,
    /// The check could not decide within its budget or scope.
    Inconclusive,
}

impl CheckStatus {
    pub fn word(self) -> &'static str {
        match self {
            CheckStatus::Clear => "clear",
            CheckStatus::Proven => "proven",
            CheckStatus::Info => "info",
            CheckStatus::Refuted => "refuted",
            CheckStatus::Obstructed => "obstructed",
            CheckStatus::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub status: CheckStatus,
    pub summary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlgebraIdentity {
    pub name: String,
    pub n: u8,
    /// SHA-256 of `source`.
    pub sha256: String,
    /// Canonical rendering in the algebra file grammar.
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub seed: u64,
    pub restarts: usize,
    pub ascent_iters: usize,
    pub transverse_samples: usize,
    pub transverse_refinements: usize,
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub engine: String,
    pub algebra: AlgebraIdentity,
    pub config: ConfigEcho,
    pub checks: Vec<CheckEntry>,
    /// Wall-clock milliseconds per check; excluded from the canonical
    /// rendering so that reports compare bit for bit across runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, u64>>,
}

impl Report {
    /// `0` all clear, `2` any refutation/obstruction, `3` any inconclusive.
    pub fn exit_code(&self) -> i32 {
        let any = |s: CheckStatus| self.checks.iter().any(|c| c.status == s);
        if any(CheckStatus::Refuted) || any(CheckStatus::Obstructed) {
            2
        } else if any(CheckStatus::Inconclusive) {
            3
        } else {
            0
        }
    }

    /// The reproducible rendering: pretty JSON without timing.
    pub fn canonical_json(&self) -> String {
        let mut stripped = self.clone();
        stripped.timing_ms = None;
        serde_json::to_string_pretty(&stripped).expect("report serializes")
    }

    /// Pretty JSON including per-check timing.
    pub fn json_with_timing(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per check for terminal output.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "algebra {} (n = {}, sha256 {})\n",
            self.algebra.name,
            self.algebra.n,
            &self.algebra.sha256[..12]
        ));
        for check in &self.checks {
            out.push_str(&format!(
                "[{:>12}] {}: {}\n",
                check.status.word(),
                check.name,
                check.summary
            ));
        }
        out
    }
}

fn sha256_hex(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

// ---------------------------------------------------------------------------
// Witness serialization (form literals)
// ---------------------------------------------------------------------------

fn form_literal<S: Scalar>(f: &Form<S>) -> Value {
    Value::String(f.to_string())
}

fn witness_kind_name(kind: WitnessKind) -> &'static str {
    match kind {
        WitnessKind::OneFormDelClosed => "one-form-del-closed",
        WitnessKind::OneFormDelbarClosed => "one-form-delbar-closed",
        WitnessKind::ConePositiveImage => "cone-positive-image",
        WitnessKind::RankOneImage => "rank-one-image",
    }
}

fn certificate_json(certificate: &WitnessCertificate) -> Value {
    let pairs_json = |pairs: &[(crate::scalar::Q, Form<GaussRational>)]| -> Value {
        pairs
            .iter()
            .map(|(c, f)| json!({ "coefficient": c.to_string(), "form": f.to_string() }))
            .collect()
    };
    match certificate {
        WitnessCertificate::HolomorphicSquares { pairs, decomposable } => json!({
            "type": "holomorphic-squares",
            "pairs": pairs_json(pairs),
            "decomposable": decomposable,
        }),
        WitnessCertificate::PrimitiveSquares { pairs, justification } => json!({
            "type": "primitive-squares",
            "pairs": pairs_json(pairs),
            "primitivity": match justification {
                PrimitivityJustification::Metric(f) => json!({
                    "against": "explicit-balanced-metric",
                    "fundamental": form_literal(f),
                }),
                PrimitivityJustification::DelbarImage(alpha) => json!({
                    "against": "every-invariant-balanced-metric",
                    "alpha": form_literal(alpha),
                }),
            },
        }),
    }
}

/// The full re-verifiable content of an obstruction witness.
pub fn obstruction_witness_json(w: &ObstructionWitness) -> Value {
    json!({
        "kind": witness_kind_name(w.kind),
        "gamma": form_literal(&w.gamma),
        "image_bidegree": [w.image_bidegree.0, w.image_bidegree.1],
        "image": form_literal(&w.image),
        "certificate": certificate_json(&w.certificate),
        "sketch": w.proof_sketch(),
    })
}

pub fn one_form_obstruction_json(hit: &OneFormObstruction) -> Value {
    json!({
        "alpha": form_literal(&hit.alpha),
        "witness": obstruction_witness_json(&hit.witness),
    })
}

fn validation_failure_json(failure: &ValidationFailure) -> Value {
    let (kind, residual) = match &failure.kind {
        ValidationFailureKind::NonIntegrable(f) => ("non-integrable", f),
        ValidationFailureKind::JacobiFailure(f) => ("jacobi-failure", f),
    };
    json!({
        "coframe_index": failure.coframe_index,
        "kind": kind,
        "residual": form_literal(residual),
    })
}

fn j_witness_json(w: &JWitness) -> Value {
    let coords = |v: &[GaussRational]| -> Value {
        v.iter().map(|c| Value::String(c.to_string())).collect()
    };
    json!({ "vector": coords(&w.vector), "j_image": coords(&w.j_image) })
}

fn hr_failure_json(failure: &HrBalancedFailure<GaussRational>) -> Value {
    match failure {
        HrBalancedFailure::Factorization { residual } => json!({
            "failure": "factorization",
            "residual": form_literal(residual),
        }),
        HrBalancedFailure::OmegaNotClosed { differential } => json!({
            "failure": "omega-not-closed",
            "differential": form_literal(differential),
        }),
        HrBalancedFailure::ProductNotClosed { differential } => json!({
            "failure": "product-not-closed",
            "differential": form_literal(differential),
        }),
        HrBalancedFailure::HodgeRiemann(HodgeRiemannFailure::DegenerateSplitting) => json!({
            "failure": "degenerate-splitting",
        }),
        HrBalancedFailure::HodgeRiemann(HodgeRiemannFailure::NotPositive {
            bidegree,
            witness,
        }) => json!({
            "failure": "not-positive",
            "bidegree": [bidegree.0, bidegree.1],
            "witness_form": form_literal(&witness.form),
            "self_pairing": witness.value.to_string(),
        }),
    }
}

// ---------------------------------------------------------------------------
// The checks
// ---------------------------------------------------------------------------

fn entry(name: &str, status: CheckStatus, summary: impl Into<String>) -> CheckEntry {
    CheckEntry { name: name.to_string(), status, summary: summary.into(), witness: None }
}

fn entry_with(
    name: &str,
    status: CheckStatus,
    summary: impl Into<String>,
    witness: Value,
) -> CheckEntry {
    CheckEntry {
        name: name.to_string(),
        status,
        summary: summary.into(),
        witness: Some(witness),
    }
}

fn check_validate(g: &ComplexLieAlgebra) -> CheckEntry {
    match g.validate() {
        Verdict::Proven(ok) => entry(
            "validate",
            CheckStatus::Clear,
            format!("integrable complex structure, Jacobi identity holds (n = {})", ok.n),
        ),
        Verdict::Refuted(failure) => entry_with(
            "validate",
            CheckStatus::Refuted,
            format!("structure equations rejected at coframe index {}", failure.coframe_index),
            validation_failure_json(&failure),
        ),
        Verdict::Inconclusive { reason } => entry("validate", CheckStatus::Inconclusive, reason),
    }
}

fn check_unimodular(g: &ComplexLieAlgebra) -> CheckEntry {
    let value = g.is_unimodular();
    entry(
        "unimodular",
        CheckStatus::Info,
        if value { "trace(ad) = 0: compatible with cocompact lattices" } else { "not unimodular" },
    )
}

fn check_abelian_j(g: &ComplexLieAlgebra) -> CheckEntry {
    let value = g.is_abelian_j();
    entry(
        "abelian-j",
        CheckStatus::Info,
        if value {
            "the complex structure is abelian: d(Λ^{1,0}) ⊂ Λ^{1,1}"
        } else {
            "the complex structure is not abelian"
        },
    )
}

fn check_commutator_j(g: &ComplexLieAlgebra) -> CheckEntry {
    match g.commutator_j_invariant() {
        Verdict::Proven(ok) => entry(
            "commutator-j",
            CheckStatus::Info,
            format!("the commutator ideal (real dimension {}) is J-invariant", ok.dim),
        ),
        Verdict::Refuted(witness) => entry_with(
            "commutator-j",
            CheckStatus::Info,
            "the commutator ideal is not J-invariant",
            j_witness_json(&witness),
        ),
        Verdict::Inconclusive { reason } => {
            entry("commutator-j", CheckStatus::Inconclusive, reason)
        }
    }
}

fn check_nilpotent(g: &ComplexLieAlgebra) -> CheckEntry {
    match crate::obstructions::nilpotent_verdict(g) {
        Err(e) => entry("nilpotent", CheckStatus::Info, format!("not applicable: {e}")),
        Ok(Verdict::Proven(StructureConclusion::AlreadyAbelian)) => entry(
            "nilpotent",
            CheckStatus::Clear,
            "abelian: no structural obstruction of this shape",
        ),
        Ok(Verdict::Proven(StructureConclusion::Obstructed(hit))) => entry_with(
            "nilpotent",
            CheckStatus::Obstructed,
            "nilpotent non-abelian: a one-form witness rules out invariant \
             Hodge–Riemann balanced structures",
            one_form_obstruction_json(&hit),
        ),
        Ok(Verdict::Refuted(never)) => match never {},
        Ok(Verdict::Inconclusive { reason }) => {
            entry("nilpotent", CheckStatus::Inconclusive, reason)
        }
    }
}

fn check_scan_oneform(g: &ComplexLieAlgebra) -> CheckEntry {
    match scan_oneform_obstruction(g) {
        Err(e) => entry("scan-oneform", CheckStatus::Info, format!("not applicable: {e}")),
        Ok(Verdict::Proven(cert)) => entry(
            "scan-oneform",
            CheckStatus::Clear,
            format!(
                "every ∂∂̄-closed (1,0)-form is closed (subspace dimension {})",
                cert.basis.len()
            ),
        ),
        Ok(Verdict::Refuted(hit)) => entry_with(
            "scan-oneform",
            CheckStatus::Obstructed,
            "a ∂∂̄-closed one-form with nonzero differential yields an obstruction witness",
            one_form_obstruction_json(&hit),
        ),
        Ok(Verdict::Inconclusive { reason }) => {
            entry("scan-oneform", CheckStatus::Inconclusive, reason)
        }
    }
}

fn cone_entry(
    name: &str,
    g: &ComplexLieAlgebra,
    mode: &ConeSearchMode,
    config: &SearchConfig,
) -> CheckEntry {
    let n = u32::from(g.n());
    if n < 3 {
        return entry(name, CheckStatus::Clear, "trivial below three complex dimensions");
    }
    let p = n - 2;
    match cone_image_search(g, mode, p, config) {
        Verdict::Refuted(witness) => entry_with(
            name,
            CheckStatus::Obstructed,
            format!("same-sign square decomposition of an exact ({}, {}) image", n - p, n - p),
            obstruction_witness_json(&witness),
        ),
        Verdict::Proven(never) => match never {},
        // An empty candidate space is conclusive: no witness of this shape
        // exists at all, as opposed to the budget running out.
        Verdict::Inconclusive { reason } if reason.starts_with("no invariant form of degree") => {
            entry(name, CheckStatus::Clear, reason)
        }
        Verdict::Inconclusive { reason } => entry(name, CheckStatus::Inconclusive, reason),
    }
}

fn check_cone_hrt(g: &ComplexLieAlgebra, config: &SearchConfig) -> CheckEntry {
    let name = "cone-hrt";
    let n = u32::from(g.n());
    if n < 3 {
        return entry(name, CheckStatus::Clear, "trivial below three complex dimensions");
    }
    let fundamental = standard_kaehler::<GaussRational>(g.n());
    let mode = ConeSearchMode::PrimitiveSemidefinite { fundamental };
    cone_entry(name, g, &mode, config)
}

fn grid_candidates(n: u8) -> Vec<(String, Form<GaussRational>)> {
    let mut graded = Form::zero(n);
    for k in 1..=n {
        let c = GaussRational::new(q(0, 1), q(i64::from(k), 1));
        graded = &graded + &Form::monomial(n, &[k], &[k], c);
    }
    vec![
        ("standard".to_string(), standard_kaehler::<GaussRational>(n)),
        ("graded-diagonal".to_string(), graded),
    ]
}

fn check_hr_balanced_grid(g: &ComplexLieAlgebra) -> CheckEntry {
    let name = "hr-balanced";
    // A one-form witness refutes every invariant candidate at once, so it
    // takes precedence over the grid.
    if let Ok(Verdict::Refuted(hit)) = scan_oneform_obstruction(g) {
        return entry_with(
            name,
            CheckStatus::Refuted,
            "no invariant Hodge–Riemann balanced structure exists: one-form witness",
            one_form_obstruction_json(&hit),
        );
    }
    let n = g.n();
    if n < 2 {
        return entry(name, CheckStatus::Inconclusive, "needs n ≥ 2");
    }
    let factorial: i64 = (1..i64::from(n)).product();
    let mut failures = Vec::new();
    for (label, f) in grid_candidates(n) {
        let big = f.wedge_pow(u32::from(n) - 2).scale_q(&q(1, factorial));
        match check_hr_balanced(g, &f, &f, &big) {
            Verdict::Proven(_) => {
                return entry(
                    name,
                    CheckStatus::Proven,
                    format!(
                        "certified structure with F = ω = {label} metric and Ω = F^{}/{}!",
                        n - 2,
                        n - 1
                    ),
                )
            }
            Verdict::Refuted(failure) => failures.push(json!({
                "candidate": label,
                "refutation": hr_failure_json(&failure),
            })),
            Verdict::Inconclusive { .. } => {}
        }
    }
    entry_with(
        name,
        CheckStatus::Inconclusive,
        "no candidate on the diagonal grid was certified and no universal witness was found",
        Value::Array(failures),
    )
}

fn run_check(name: &str, g: &ComplexLieAlgebra, config: &SearchConfig) -> CheckEntry {
    let body = || match name {
        "validate" => check_validate(g),
        "unimodular" => check_unimodular(g),
        "abelian-j" => check_abelian_j(g),
        "commutator-j" => check_commutator_j(g),
        "nilpotent" => check_nilpotent(g),
        "scan-oneform" => check_scan_oneform(g),
        "cone-pk" => cone_entry("cone-pk", g, &ConeSearchMode::DecomposableForms, config),
        "cone-cpd" => cone_entry("cone-cpd", g, &ConeSearchMode::PositiveSemidefinite, config),
        "cone-hrt" => check_cone_hrt(g, config),
        "hr-balanced" => check_hr_balanced_grid(g),
        other => entry(other, CheckStatus::Inconclusive, "unknown check"),
    };
    // The suite must survive any single check, so a panic degrades to an
    // inconclusive entry instead of aborting the run.
    catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|_| {
        entry(name, CheckStatus::Inconclusive, "internal error: the check panicked")
    })
}

/// Run the selected checks against `g` and aggregate a [`Report`].
/// Independent checks run in parallel; assembly order is fixed by
/// [`CHECK_NAMES`], and all searches derive their randomness from
/// `config.seed`, so the canonical report is deterministic.
pub fn run_suite(
    name: &str,
    g: &ComplexLieAlgebra,
    selection: &CheckSelection,
    config: &SearchConfig,
) -> Report {
    let source = AlgebraFile::from_algebra(name, g).print();
    let selected: Vec<&str> =
        CHECK_NAMES.iter().copied().filter(|c| selection.includes(c)).collect();

    let outcomes: Vec<(CheckEntry, u64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|&check_name| {
                scope.spawn(move || {
                    let started = Instant::now();
                    let entry = run_check(check_name, g, config);
                    (entry, started.elapsed().as_millis() as u64)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("check thread joins")).collect()
    });

    let mut checks = Vec::new();
    let mut timing = BTreeMap::new();
    for (entry, ms) in outcomes {
        timing.insert(entry.name.clone(), ms);
        checks.push(entry);
    }

    Report {
        schema: 1,
        engine: format!("hforms {}", env!("CARGO_PKG_VERSION")),
        algebra: AlgebraIdentity {
            name: name.to_string(),
            n: g.n(),
            sha256: sha256_hex(&source),
            source,
        },
        config: ConfigEcho {
            seed: config.seed,
            restarts: config.restarts,
            ascent_iters: config.ascent_iters,
            transverse_samples: config.transverse_samples,
            transverse_refinements: config.transverse_refinements,
            samples: config.samples,
        },
        checks,
        timing_ms: Some(timing),
    }
}

// ---------------------------------------------------------------------------
// The iwasawa-c report section
// ---------------------------------------------------------------------------

/// The `iwasawa_c` JSON section: verification outcomes plus every displayed
/// quantity of the construction, echoed as literals.
pub fn iwasawa_c_json(report: &crate::iwasawa_c::IwasawaCReport) -> Value {
    use crate::iwasawa_c as iw;
    let forms = |v: Vec<Form<crate::scalar::AnalyticScalar>>| -> Value {
        v.iter().map(|f| Value::String(f.to_string())).collect()
    };
    let scalars = |v: Vec<crate::scalar::AnalyticScalar>| -> Value {
        v.iter().map(|s| Value::String(s.to_string())).collect()
    };
    json!({
        "schema": 1,
        "section": "iwasawa_c",
        "engine": format!("hforms {}", env!("CARGO_PKG_VERSION")),
        "samples": report.samples,
        "seed": report.seed,
        "all_passed": report.all_passed(),
        "det_b_at_zero": report.det_b_at_zero.to_string(),
        "max_numeric_residual": report.max_numeric_residual,
        "checks": report
            .checks
            .iter()
            .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
            .collect::<Value>(),
        "quantities": {
            "omega_big": iw::big_omega().to_string(),
            "omega_zero": iw::omega_zero().to_string(),
            "product": iw::product_expansion().to_string(),
            "psi": forms(iw::psi_basis()),
            "psi_gram_diagonal": scalars(iw::psi_gram_diagonal()),
            "xi": forms(iw::xi_basis()),
            "b_matrix": iw::b_matrix()
                .iter()
                .map(|row| row.iter().map(|e| Value::String(e.to_string())).collect())
                .collect::<Vec<Value>>(),
            "det_b": iw::det_b_factored().to_string(),
            "det_b_leading": iw::det_b_leading_factored().to_string(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn quick_config() -> SearchConfig {
        SearchConfig::default().with_budget(0.05)
    }

    #[test]
    fn the_torus_report_is_all_clear() {
        let g = catalog::torus(3);
        let report = run_suite("torus3", &g, &CheckSelection::All, &quick_config());
        assert_eq!(report.exit_code(), 0, "{}", report.render_text());
        let by_name = |n: &str| {
            report.checks.iter().find(|c| c.name == n).unwrap_or_else(|| panic!("{n} missing"))
        };
        assert_eq!(by_name("validate").status, CheckStatus::Clear);
        assert_eq!(by_name("nilpotent").status, CheckStatus::Clear);
        assert_eq!(by_name("scan-oneform").status, CheckStatus::Clear);
        // The d-image is empty on the torus, which is conclusive.
        assert_eq!(by_name("cone-pk").status, CheckStatus::Clear);
        assert_eq!(by_name("cone-cpd").status, CheckStatus::Clear);
        assert_eq!(by_name("cone-hrt").status, CheckStatus::Clear);
        assert_eq!(by_name("hr-balanced").status, CheckStatus::Proven);
    }

    #[test]
    fn the_iwasawa_report_refutes_hr_balanced_via_the_one_form_witness() {
        let g = catalog::iwasawa();
        let report = run_suite("iwasawa", &g, &CheckSelection::All, &quick_config());
        assert_eq!(report.exit_code(), 2);
        let hr = report.checks.iter().find(|c| c.name == "hr-balanced").expect("entry");
        assert_eq!(hr.status, CheckStatus::Refuted);
        let witness = hr.witness.as_ref().expect("embedded witness");
        assert_eq!(witness["witness"]["kind"], "one-form-del-closed");
        let nil = report.checks.iter().find(|c| c.name == "nilpotent").expect("entry");
        assert_eq!(nil.status, CheckStatus::Obstructed);
    }

    #[test]
    fn canonical_reports_reproduce_bit_for_bit() {
        let g = catalog::iwasawa_times_c();
        let config = quick_config();
        let a = run_suite("iwasawa-c", &g, &CheckSelection::All, &config);
        let b = run_suite("iwasawa-c", &g, &CheckSelection::All, &config);
        assert_eq!(a.canonical_json(), b.canonical_json());
        assert!(!a.canonical_json().contains("timing"));
        assert!(a.json_with_timing().contains("timing_ms"));
    }

    #[test]
    fn selections_restrict_the_run() {
        let g = catalog::torus(2);
        let selection = CheckSelection::Named(vec!["validate".into(), "unimodular".into()]);
        let report = run_suite("torus2", &g, &selection, &quick_config());
        assert_eq!(report.checks.len(), 2);
        assert_eq!(report.checks[0].name, "validate");
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn hashes_identify_the_algebra() {
        let a = run_suite(
            "torus2",
            &catalog::torus(2),
            &CheckSelection::Named(vec!["validate".into()]),
            &quick_config(),
        );
        let b = run_suite(
            "torus3",
            &catalog::torus(3),
            &CheckSelection::Named(vec!["validate".into()]),
            &quick_config(),
        );
        assert_ne!(a.algebra.sha256, b.algebra.sha256);
        assert_eq!(a.algebra.sha256.len(), 64);
    }

    #[test]
    fn the_iwasawa_c_section_echoes_the_construction() {
        let report = crate::iwasawa_c::verify_all(2);
        let value = iwasawa_c_json(&report);
        assert_eq!(value["schema"], 1);
        assert_eq!(value["all_passed"], true);
        assert_eq!(value["det_b_at_zero"], "108");
        let quantities = &value["quantities"];
        assert!(quantities["omega_big"].as_str().expect("literal").contains("E[1]"));
        assert_eq!(quantities["psi"].as_array().expect("list").len(), 6);
        assert_eq!(quantities["xi"].as_array().expect("list").len(), 15);
    }
}
