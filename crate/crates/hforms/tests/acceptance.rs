//! The acceptance suite: one test per acceptance criterion, each printing a
//! single `acceptance [pass|FAIL] …` line.  Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines for
//! passing criteria as well.

use hforms::catalog;
use hforms::exterior::{standard_kaehler, Form};
use hforms::hodge_riemann::{
    check_hodge_riemann, invariant_balanced_criterion, is_balanced, HodgeRiemannFailure,
};
use hforms::iwasawa_c;
use hforms::lie_complex::ComplexLieAlgebra;
use hforms::obstructions::{
    classify_abelian_ideal_family, nilpotent_verdict, scan_oneform_obstruction,
    verify_obstruction_witness, FamilyClass, FamilyClassification, StructureConclusion,
    WitnessCertificate, WitnessKind,
};
use hforms::parse::{self, AlgebraFile};
use hforms::positivity::{
    is_positive_definite, is_transverse, random_hermitian_metric, random_strongly_positive,
    root_metric, verdict_from_certificate, PositivityVerdict, RootMetricOutcome,
};
use hforms::scalar::{q, GaussRational, C64};
use hforms::{SearchConfig, Verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use std::panic::catch_unwind;
use std::time::{Duration, Instant};

/// Prints the criterion line when the test ends — `pass` if [`Criterion::pass`]
/// ran, `FAIL` if the test unwound first.
struct Criterion {
    title: &'static str,
    passed: bool,
    started: Instant,
}

impl Criterion {
    fn start(title: &'static str) -> Self {
        Criterion { title, passed: false, started: Instant::now() }
    }

    fn pass(mut self) {
        self.passed = true;
    }
}

impl Drop for Criterion {
    fn drop(&mut self) {
        println!(
            "acceptance [{}] {} ({:.2?})",
            if self.passed { "pass" } else { "FAIL" },
            self.title,
            self.started.elapsed()
        );
    }
}

fn gauss(re: i64, im: i64) -> GaussRational {
    GaussRational::new(q(re, 1), q(im, 1))
}

fn is_abelian(g: &ComplexLieAlgebra) -> bool {
    (1..=g.n()).all(|j| g.structure_equation(j).is_zero())
}

#[test]
fn golden_suite_verifies_in_time() {
    let criterion =
        Criterion::start("analytic balanced structure: all checks pass in under 10 s");
    let started = Instant::now();
    let report = iwasawa_c::verify_all(iwasawa_c::DEFAULT_SAMPLES);
    let elapsed = started.elapsed();
    assert!(
        report.all_passed(),
        "failed checks: {:?}",
        report.failures().map(|c| (&c.name, &c.detail)).collect::<Vec<_>>()
    );
    assert!(report.checks.len() >= 10, "only {} checks ran", report.checks.len());
    assert_eq!(report.det_b_at_zero, q(108, 1));
    assert!(report.max_numeric_residual <= 1.0e-9);
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:.2?}");
    criterion.pass();
}

#[test]
fn det_b_at_zero_matches_by_two_routes() {
    let criterion =
        Criterion::start("det B(0) = 108 by the factorization and by direct cofactor expansion");
    let origin = C64::new(0.0, 0.0);
    // Route 1: the factored determinant, specialized at u = 0 (every factor
    // is integer-valued there, so the f64 arithmetic below is exact).
    assert_eq!(iwasawa_c::det_b_factored().eval(origin), C64::new(108.0, 0.0));
    // Route 2: the matrix itself at u = 0 and a pure-integer cofactor
    // expansion, with the entries pinned first.
    let b: Vec<Vec<i64>> = iwasawa_c::b_matrix()
        .iter()
        .map(|row| {
            row.iter()
                .map(|entry| {
                    let value = entry.eval(origin);
                    assert_eq!(value.im, 0.0);
                    assert_eq!(value.re.fract(), 0.0);
                    value.re as i64
                })
                .collect()
        })
        .collect();
    assert_eq!(b, vec![vec![6, 3, 3], vec![3, 6, 3], vec![3, 3, 6]]);
    let minor = |r: &[i64; 2], c: &[i64; 2]| -> i64 {
        b[r[0] as usize][c[0] as usize] * b[r[1] as usize][c[1] as usize]
            - b[r[0] as usize][c[1] as usize] * b[r[1] as usize][c[0] as usize]
    };
    let direct = b[0][0] * minor(&[1, 2], &[1, 2]) - b[0][1] * minor(&[1, 2], &[0, 2])
        + b[0][2] * minor(&[1, 2], &[0, 1]);
    assert_eq!(direct, 108);
    criterion.pass();
}

fn assert_obstructed_both_routes(g: &ComplexLieAlgebra, label: &str) {
    match nilpotent_verdict(g) {
        Ok(Verdict::Proven(StructureConclusion::Obstructed(hit))) => assert!(
            verify_obstruction_witness(g, &hit.witness),
            "{label}: the structural witness fails re-verification"
        ),
        other => panic!("{label}: expected a structural obstruction, got {other:?}"),
    }
    match scan_oneform_obstruction(g) {
        Ok(Verdict::Refuted(hit)) => assert!(
            verify_obstruction_witness(g, &hit.witness),
            "{label}: the scan witness fails re-verification"
        ),
        other => panic!("{label}: expected a scan refutation, got {other:?}"),
    }
}

#[test]
fn nilpotent_entries_obstruct_and_tori_clear() {
    let criterion = Criterion::start(
        "nilpotent non-abelian algebras yield verified witnesses by both routes; tori \
         are clear (< 5 s)",
    );
    let started = Instant::now();
    for n in 2..=5 {
        let torus = catalog::torus(n);
        assert!(
            matches!(
                nilpotent_verdict(&torus),
                Ok(Verdict::Proven(StructureConclusion::AlreadyAbelian))
            ),
            "torus{n} is not clear"
        );
        assert!(
            matches!(scan_oneform_obstruction(&torus), Ok(Verdict::Proven(_))),
            "torus{n} scan is not clear"
        );
    }
    let mut covered = Vec::new();
    for entry in catalog::catalog() {
        let g = &entry.algebra;
        if !g.is_nilpotent() || is_abelian(g) {
            continue;
        }
        assert_obstructed_both_routes(g, entry.name);
        covered.push(entry.name);
    }
    assert!(covered.contains(&"iwasawa") && covered.contains(&"iwasawa-c"), "{covered:?}");
    let mut rng = ChaCha12Rng::seed_from_u64(0x6163636570743033);
    for k in 0..3u8 {
        let g = catalog::random_nilpotent(3 + k % 2, &mut rng);
        assert!(g.validate().is_proven() && g.is_nilpotent() && !is_abelian(&g));
        assert_obstructed_both_routes(&g, "random nilpotent");
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:.2?}");
    criterion.pass();
}

#[test]
fn family_dichotomy_produces_verified_certificates() {
    let criterion = Criterion::start(
        "abelian-ideal family: 5 Kähler points re-verified, 5 obstructed points with \
         verified rank-one witnesses",
    );
    let z = GaussRational::zero;
    let one = GaussRational::one;
    let i_s = GaussRational::i;

    let kaehler_points: Vec<(Vec<GaussRational>, Vec<GaussRational>)> = vec![
        (vec![z(), z(), z()], vec![z(), one(), one()]),
        (vec![z(), z(), z()], vec![one(), one(), one()]),
        (vec![one(), z(), z()], vec![one(), one(), z()]),
        (vec![i_s(), gauss(2, 0), z()], vec![one(), one(), one()]),
        (vec![gauss(1, 1), z(), one()], vec![gauss(2, 0), one(), one()]),
    ];
    for (v, lambda) in &kaehler_points {
        let FamilyClassification { algebra, class } = classify_abelian_ideal_family(v, lambda);
        match class {
            FamilyClass::Kaehler { form } => {
                assert!(algebra.d(&form).is_zero(), "form not closed at {v:?}, {lambda:?}");
                assert!(
                    matches!(is_positive_definite(&form), PositivityVerdict::PositiveDefinite(_)),
                    "form not positive definite at {v:?}, {lambda:?}"
                );
            }
            other => panic!("expected a Kähler certificate at {v:?}, {lambda:?}: {other:?}"),
        }
    }

    let obstructed_points: Vec<(Vec<GaussRational>, Vec<GaussRational>)> = vec![
        (vec![i_s(), z(), z()], vec![z(), z(), z()]),
        (vec![one(), z(), z()], vec![z(), z(), one()]),
        (vec![i_s(), one(), z()], vec![z(), one(), one()]),
        (vec![z(), gauss(2, 0), z()], vec![one(), z(), one()]),
        (vec![gauss(0, 2), i_s(), z()], vec![z(), z(), z()]),
    ];
    for (v, lambda) in &obstructed_points {
        let FamilyClassification { algebra, class } = classify_abelian_ideal_family(v, lambda);
        match class {
            FamilyClass::Obstructed { witness } => {
                assert!(
                    verify_obstruction_witness(&algebra, &witness),
                    "witness fails re-verification at {v:?}, {lambda:?}"
                );
                assert_eq!(witness.kind, WitnessKind::RankOneImage);
                assert_eq!(witness.image_bidegree, (2, 2));
                match &witness.certificate {
                    WitnessCertificate::HolomorphicSquares { pairs, decomposable } => {
                        assert!(*decomposable, "image not decomposable at {v:?}, {lambda:?}");
                        assert_eq!(pairs.len(), 1);
                    }
                    other => panic!("expected a rank-one square certificate, got {other:?}"),
                }
            }
            other => panic!("expected an obstruction at {v:?}, {lambda:?}: {other:?}"),
        }
    }

    // The branch with no closed directions, pinned exactly: with
    // v = (i, 1, 0), λ = (0, 1, 1) the normalization is the identity and
    // β = α^{3 2̄3̄} + (v̄₃/λ̄₃) α^{3 1̄2̄} has ∂β = i α^{13 1̄3̄}, so the
    // doubled square of α^{13} is the witness image.
    let (v, lambda) = &obstructed_points[2];
    let g = catalog::abelian_ideal_family(v, lambda);
    let plain = Form::monomial(4, &[3], &[2, 3], one());
    assert_eq!(
        g.del(&plain),
        &Form::monomial(4, &[1, 3], &[1, 3], i_s())
            + &Form::monomial(4, &[1, 3], &[1, 2], v[1].conj())
    );
    let beta = &plain + &Form::monomial(4, &[3], &[1, 2], one());
    assert_eq!(g.del(&beta), Form::monomial(4, &[1, 3], &[1, 3], i_s()));
    match classify_abelian_ideal_family(v, lambda).class {
        FamilyClass::Obstructed { witness } => {
            assert_eq!(witness.image, Form::monomial(4, &[1, 3], &[1, 3], gauss(2, 0)));
            match &witness.certificate {
                WitnessCertificate::HolomorphicSquares { pairs, .. } => {
                    assert_eq!(pairs[0].0, q(2, 1));
                    assert_eq!(pairs[0].1, Form::monomial(4, &[1, 3], &[], one()));
                }
                other => panic!("unexpected certificate {other:?}"),
            }
        }
        other => panic!("expected the pinned obstruction: {other:?}"),
    }
    criterion.pass();
}

#[test]
fn balanced_equivalence_on_random_unimodular_algebras() {
    let criterion = Criterion::start(
        "balanced ⇔ coframe-wise criterion on 20 random unimodular algebras with random \
         Hermitian metrics",
    );
    let mut rng = ChaCha12Rng::seed_from_u64(0x6163636570743035);
    let mut proven = 0usize;
    let mut refuted = 0usize;
    while proven + refuted < 20 {
        let n = rng.gen_range(3..=4u8);
        let g = catalog::random_unimodular(n, &mut rng);
        assert!(g.validate().is_proven());
        let f = random_hermitian_metric(g.n(), &mut rng);
        let direct = is_balanced(&g, &f);
        let criterion_verdict =
            invariant_balanced_criterion(&g, &f).expect("the algebra is unimodular");
        match (&direct, &criterion_verdict) {
            (Verdict::Proven(_), Verdict::Proven(_)) => proven += 1,
            (Verdict::Refuted(_), Verdict::Refuted(_)) => refuted += 1,
            (a, b) => panic!("disagreement on a random algebra: {} vs {}", a, b),
        }
    }
    assert!(proven >= 1 && refuted >= 1, "one-sided sample: {proven} proven, {refuted} refuted");
    criterion.pass();
}

#[test]
fn positivity_cone_certificates_are_sound() {
    let criterion = Criterion::start(
        "200 certified strongly positive forms pass definiteness and transversality; 200 \
         sign-broken forms never certify",
    );
    let config = SearchConfig::default();
    let mut rng = ChaCha12Rng::seed_from_u64(0x6163636570743036);
    let mut positive = 0usize;
    let mut broken = 0usize;
    while positive < 200 || broken < 200 {
        let n = if rng.gen_bool(0.5) { 3u8 } else { 4 };
        let k = rng.gen_range(1..u32::from(n));
        let (omega, gens) = random_strongly_positive(n, k, &mut rng);
        if positive < 200 {
            assert!(
                matches!(
                    verdict_from_certificate(&omega, &gens),
                    PositivityVerdict::StronglyPositive { .. }
                ),
                "certificate did not certify its own sum (n = {n}, k = {k})"
            );
            assert!(
                matches!(is_positive_definite(&omega), PositivityVerdict::PositiveDefinite(_)),
                "certified form not positive definite (n = {n}, k = {k})"
            );
            assert!(
                matches!(
                    is_transverse(&omega, &config),
                    PositivityVerdict::Transverse { .. }
                ),
                "certified form not transverse (n = {n}, k = {k})"
            );
            positive += 1;
        }
        if broken < 200 {
            // Flip the sign of one diagonal coefficient; the perturbed form
            // is outside the positivity cones and the stale certificate must
            // not certify it.
            let (hol, coefficient) = omega
                .terms()
                .find(|(ix, _)| ix.hol == ix.anti)
                .map(|(ix, c)| (ix.hol.to_vec(), c.clone()))
                .expect("a strongly positive form has a diagonal term");
            let doubled = &coefficient * &GaussRational::from_int(2);
            let perturbed = &omega - &Form::monomial(n, &hol, &hol, doubled);
            if matches!(is_positive_definite(&perturbed), PositivityVerdict::PositiveDefinite(_)) {
                continue;
            }
            assert!(
                !matches!(
                    verdict_from_certificate(&perturbed, &gens),
                    PositivityVerdict::StronglyPositive { .. }
                ),
                "a stale certificate certified a non-positive form (n = {n}, k = {k})"
            );
            broken += 1;
        }
    }
    criterion.pass();
}

#[test]
fn classical_hodge_riemann_holds() {
    let criterion = Criterion::start(
        "standard metrics prove the pairing conditions for n = 3, 4, 5; random strongly \
         positive tuples never refute at (2,0)/(0,2)",
    );
    for n in [3u8, 4, 5] {
        let omega = standard_kaehler::<GaussRational>(n);
        let factorial: i64 = (1..=i64::from(n) - 2).product();
        let big = omega.wedge_pow(u32::from(n) - 2).scale_q(&q(1, factorial));
        assert!(
            check_hodge_riemann(&omega, &big).is_proven(),
            "standard structure not proven at n = {n}"
        );
    }
    let mut rng = ChaCha12Rng::seed_from_u64(0x6163636570743037);
    for round in 0..20 {
        let (omega0, _) = random_strongly_positive(4, 1, &mut rng);
        let (omega1, _) = random_strongly_positive(4, 1, &mut rng);
        let (omega2, _) = random_strongly_positive(4, 1, &mut rng);
        let big = omega1.wedge(&omega2);
        if let Verdict::Refuted(HodgeRiemannFailure::NotPositive { bidegree, witness }) =
            check_hodge_riemann(&omega0, &big)
        {
            assert!(
                bidegree != (2, 0) && bidegree != (0, 2),
                "round {round}: refuted at {bidegree:?} with witness {}",
                witness.form
            );
        }
    }
    criterion.pass();
}

#[test]
fn metric_roots_round_trip() {
    let criterion = Criterion::start(
        "metric root: exact on diagonal rational metrics, residual ≤ 1e−9 on 50 random \
         positive forms",
    );
    for n in [3u8, 4] {
        let weights = [q(1, 1), q(2, 1), q(3, 2), q(5, 1)];
        let mut f = Form::zero(n);
        for j in 1..=n {
            let a = &weights[usize::from(j) - 1];
            f = &f + &Form::monomial(n, &[j], &[j], GaussRational::new(q(0, 1), a.clone()));
        }
        let factorial: i64 = (1..i64::from(n)).product();
        let phi = f.wedge_pow(u32::from(n) - 1).scale_q(&q(1, factorial));
        match root_metric(&phi) {
            Ok(RootMetricOutcome::Exact(metric)) => assert_eq!(metric, f),
            other => panic!("expected the exact diagonal root at n = {n}, got {other:?}"),
        }
    }
    let mut rng = ChaCha12Rng::seed_from_u64(0x6163636570743038);
    for round in 0..50 {
        let n = if round % 2 == 0 { 3u8 } else { 4 };
        let (phi, _) = random_strongly_positive(n, u32::from(n) - 1, &mut rng);
        match root_metric(&phi) {
            Ok(RootMetricOutcome::Exact(metric)) => {
                let factorial: i64 = (1..i64::from(n)).product();
                let back = metric.wedge_pow(u32::from(n) - 1).scale_q(&q(1, factorial));
                assert_eq!(back, phi, "round {round}: exact root does not round-trip");
            }
            Ok(RootMetricOutcome::Numeric { residual, .. }) => {
                assert!(residual <= 1.0e-9, "round {round}: residual {residual:.3e}");
            }
            Err(e) => panic!("round {round}: no metric root: {e}"),
        }
    }
    criterion.pass();
}

#[test]
fn differential_identities_hold_on_random_forms() {
    let criterion =
        Criterion::start("d² = ∂² = ∂̄² = ∂∂̄ + ∂̄∂ = 0 on 500 random forms, exactly");
    let algebras = catalog::catalog();
    let mut rng = ChaCha12Rng::seed_from_u64(0x6163636570743039);
    let mut count = 0usize;
    while count < 500 {
        let g = &algebras[rng.gen_range(0..algebras.len())].algebra;
        let n = g.n();
        let p = rng.gen_range(0..=u32::from(n));
        let q_anti = rng.gen_range(0..=u32::from(n));
        let basis = Form::<GaussRational>::basis(n, p, q_anti);
        if basis.is_empty() {
            continue;
        }
        let coords: Vec<GaussRational> = basis
            .iter()
            .map(|_| gauss(rng.gen_range(-2..=2), rng.gen_range(-2..=2)))
            .collect();
        let f = Form::from_coordinates(n, &basis, &coords);
        if f.is_zero() {
            continue;
        }
        assert!(g.d(&g.d(&f)).is_zero(), "d² ≠ 0 at ({p}, {q_anti}) on n = {n}");
        assert!(g.del(&g.del(&f)).is_zero(), "∂² ≠ 0 at ({p}, {q_anti}) on n = {n}");
        assert!(g.delbar(&g.delbar(&f)).is_zero(), "∂̄² ≠ 0 at ({p}, {q_anti}) on n = {n}");
        assert!(
            (&g.del(&g.delbar(&f)) + &g.delbar(&g.del(&f))).is_zero(),
            "∂∂̄ + ∂̄∂ ≠ 0 at ({p}, {q_anti}) on n = {n}"
        );
        count += 1;
    }
    criterion.pass();
}

#[test]
fn parser_round_trips_and_rejects_malformed_input() {
    let criterion = Criterion::start(
        "parse ∘ print is the identity on the catalog; 24 malformed inputs give positioned \
         errors and never panic",
    );
    for entry in catalog::catalog() {
        let file = AlgebraFile::from_algebra(entry.name, &entry.algebra);
        let text = file.print();
        let reparsed = parse::parse(&text)
            .unwrap_or_else(|e| panic!("{}: canonical print fails to parse: {e}", entry.name));
        assert_eq!(reparsed, file, "{}: round-trip changed the file", entry.name);
        assert_eq!(reparsed.to_algebra(), entry.algebra, "{}: algebra changed", entry.name);
    }
    let analytic = AlgebraFile::from_algebra("iwasawa-c", &catalog::iwasawa_times_c_analytic());
    let reparsed = parse::parse(&analytic.print()).expect("analytic tag parses");
    assert_eq!(reparsed.to_algebra().analytic_direction(), Some(4));

    let corpus: [&str; 24] = [
        "",
        "algebra",
        "algebra x",
        "algebra x n=",
        "algebra x n=0",
        "algebra x n=12",
        "algebra x n=3 trailing",
        "algebra x n=three",
        "algebra x n=3\nd = a1^a2",
        "algebra x n=3\nd a9 = a1^a2",
        "algebra x n=3\nd a1 a2^a3",
        "algebra x n=3\nd a1 = a1^",
        "algebra x n=3\nd a1 = ^a2",
        "algebra x n=3\nd a1 = a1^~a2 +",
        "algebra x n=3\nd a1 = ~a1^a2",
        "algebra x n=3\nd a1 = 1/0 a1^a2",
        "algebra x n=3\nd a1 = (2+i a1^a2",
        "algebra x n=3\nd a1 = a1^a2\nd a1 = 0",
        "algebra x n=3\nmeta",
        "algebra x n=3\nmeta analytic 9",
        "algebra x n=3\nd a1 = a2^a3\nmeta analytic 1",
        "algebra x n=3\nfoo bar",
        "algebra x n=3\nd a1 = 2 a2 ^ a3 junk",
        "algebra x n=3\nd a1 = 0 + a2^a3",
    ];
    for text in corpus {
        match catch_unwind(|| parse::parse(text)) {
            Ok(Err(e)) => {
                assert!(e.line >= 1 && e.column >= 1, "unpositioned error for {text:?}: {e}")
            }
            Ok(Ok(_)) => panic!("malformed input parsed: {text:?}"),
            Err(_) => panic!("the parser panicked on {text:?}"),
        }
    }
    criterion.pass();
}
