//! Acceptance suite: every release-gating criterion in one place, one
//! pass/fail line each. Run with `cargo test -p distkit-core --test
//! acceptance -- --nocapture` to see the lines.

mod common;

use std::time::Instant;

use common::{finite_difference_apply, observability_rank, worked_distinguishable, worked_indistinguishable};
use distkit_core::testgen::{
    gen_indistinguishable_pair, gen_random_pairs, oracle_determinant_decision, GenConfig, Prng,
};
use distkit_core::{
    apply_operator, certify_witness, decide, poly_det, rat_rank, synthesize_witness,
    CPoly, ComplexRational, DiffOperator, PolyExpSignal, Rational, SignalTerm,
    SystemPair, Tolerances, Verdict, Witness, WitnessData,
};

struct Outcome {
    label: &'static str,
    detail: String,
    pass: bool,
}

fn record(results: &mut Vec<Outcome>, label: &'static str, r: Result<String, String>) {
    let (pass, detail) = match r {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    println!("criterion {label}: {} — {detail}", if pass { "PASS" } else { "FAIL" });
    results.push(Outcome {
        label,
        detail,
        pass,
    });
}

#[test]
fn acceptance_criteria() {
    println!();
    let mut results = Vec::new();

    // Shared 200-pair stream: n_i ≤ 3, m, k ≤ 2, entries in {−2..2}.
    let pairs = gen_random_pairs(&GenConfig::desk_scale(0xD15C0, 200));

    let t0 = Instant::now();
    let mut reports = Vec::with_capacity(pairs.len());
    let mut disagreements = 0usize;
    for pair in &pairs {
        // decide() errors out on route disagreement; count instead of abort.
        match decide(pair) {
            Ok(r) => reports.push(Some(r)),
            Err(e) => {
                eprintln!("route disagreement: {e}");
                disagreements += 1;
                reports.push(None);
            }
        }
    }
    let elapsed = t0.elapsed().as_secs_f64();
    record(
        &mut results,
        "1 (route agreement)",
        if disagreements == 0 && elapsed < 60.0 {
            Ok(format!("200/200 pairs agree across both routes in {elapsed:.1} s"))
        } else {
            Err(format!("{disagreements} disagreements, {elapsed:.1} s"))
        },
    );

    // 2. Determinant oracle on square pencils plus the worked scalar pairs.
    {
        let mut checked = 0usize;
        let mut mismatches = 0usize;
        let worked = [worked_distinguishable(), worked_indistinguishable()];
        let worked_reports: Vec<_> = worked.iter().map(|p| decide(p).ok()).collect();
        for (pair, report) in pairs
            .iter()
            .zip(&reports)
            .chain(worked.iter().zip(&worked_reports))
        {
            let cs = pair.combine();
            if cs.output_dim() != cs.input_dim() {
                continue;
            }
            let Some(report) = report else { continue };
            checked += 1;
            match oracle_determinant_decision(&cs) {
                Ok(v) if v == report.verdict => {}
                Ok(_) => mismatches += 1,
                Err(e) => {
                    eprintln!("oracle error: {e}");
                    mismatches += 1;
                }
            }
        }
        record(
            &mut results,
            "2 (determinant oracle)",
            if mismatches == 0 && checked > 0 {
                Ok(format!("oracle agrees on all {checked} square-pencil pairs"))
            } else {
                Err(format!("{mismatches} mismatches out of {checked}"))
            },
        );
    }

    // 3. Witness soundness on every indistinguishable verdict from the
    // stream; collected for the T-independence criterion.
    let tol = Tolerances::default();
    let mut certified: Vec<(SystemPair, Witness)> = Vec::new();
    {
        let mut failures = Vec::new();
        let mut count = 0usize;
        for (pair, report) in pairs.iter().zip(&reports) {
            let Some(report) = report else { continue };
            if report.verdict != Verdict::Indistinguishable {
                continue;
            }
            count += 1;
            let cs = pair.combine();
            let scale = 1.0
                + cs.pencil()
                    .entries()
                    .iter()
                    .flat_map(|p| p.coeffs())
                    .map(|c| c.to_f64().abs())
                    .fold(0.0f64, f64::max);
            match synthesize_witness(&cs, report.defect.as_ref().unwrap(), &tol) {
                Ok(w) => {
                    let residual_ok = w.residual <= 1e-9 * scale;
                    match certify_witness(pair, &w, 1.0, 1001) {
                        Ok(cert) if cert.pass && residual_ok => {
                            certified.push((pair.clone(), w));
                        }
                        Ok(cert) => failures.push(format!(
                            "deviation {:.2e} (tol {:.2e}), residual {:.2e}",
                            cert.max_deviation, cert.tolerance, w.residual
                        )),
                        Err(e) => failures.push(e.to_string()),
                    }
                }
                Err(e) => failures.push(format!("synthesis: {e}")),
            }
        }
        record(
            &mut results,
            "3 (witness soundness)",
            if failures.is_empty() && count > 0 {
                Ok(format!("all {count} indistinguishable pairs yield certified witnesses"))
            } else {
                Err(format!("{}/{count} failed: {:?}", failures.len(), failures.first()))
            },
        );
    }

    // 4. Planted ground truth: 100 constructed pairs, planted witnesses.
    {
        let mut bad = Vec::new();
        for seed in 0..100u64 {
            let planted = gen_indistinguishable_pair(seed);
            match decide(&planted.pair) {
                Ok(r) if r.verdict == Verdict::Indistinguishable => {}
                Ok(_) => {
                    bad.push(format!("seed {seed}: decided distinguishable"));
                    continue;
                }
                Err(e) => {
                    bad.push(format!("seed {seed}: {e}"));
                    continue;
                }
            }
            match certify_witness(&planted.pair, &planted.witness, 1.0, 1001) {
                Ok(cert) if cert.pass => certified.push((planted.pair.clone(), planted.witness.clone())),
                Ok(cert) => bad.push(format!(
                    "seed {seed}: planted witness deviates {:.2e}",
                    cert.max_deviation
                )),
                Err(e) => bad.push(format!("seed {seed}: {e}")),
            }
        }
        record(
            &mut results,
            "4 (planted ground truth)",
            if bad.is_empty() {
                Ok("100/100 planted pairs decided indistinguishable with certified witnesses".into())
            } else {
                Err(format!("{} failures: {:?}", bad.len(), bad.first()))
            },
        );
    }

    // 5. Worked scalar pairs, exact values.
    {
        let mut problems: Vec<String> = Vec::new();

        let d_pair = worked_distinguishable();
        let d_report = decide(&d_pair).unwrap();
        let det = poly_det(&d_pair.combine().pencil()).unwrap();
        if d_report.verdict != Verdict::Distinguishable || d_report.defect.is_some() {
            problems.push("distinguishable pair misclassified".into());
        }
        if det != distkit_core::Poly::from_ints(&[-1]) {
            problems.push(format!("pencil determinant is {det}, expected -1"));
        }
        if !d_report.route_pencil.last_invariant_factor.is_constant() {
            problems.push("defect not constant".into());
        }

        let i_pair = worked_indistinguishable();
        let i_report = decide(&i_pair).unwrap();
        let i_det = poly_det(&i_pair.combine().pencil()).unwrap();
        if i_report.verdict != Verdict::Indistinguishable {
            problems.push("indistinguishable pair misclassified".into());
        }
        if i_det != distkit_core::Poly::from_ints(&[0, 1]) {
            problems.push(format!("pencil determinant is {i_det}, expected λ"));
        }
        match synthesize_witness(&i_pair.combine(), i_report.defect.as_ref().unwrap(), &tol) {
            Ok(w) => {
                match &w.data {
                    WitnessData::Exact { lambda0, xi, x10, x20 } => {
                        let want = [
                            ComplexRational::one(),
                            ComplexRational::one(),
                            ComplexRational::from_int(-1),
                        ];
                        if !lambda0.is_zero() {
                            problems.push(format!("λ₀ = {lambda0}, expected 0"));
                        }
                        if x10[0] != want[0] || x20[0] != want[1] || xi[0] != want[2] {
                            problems.push(format!(
                                "witness ({}, {}, {}), expected (1, 1, -1)",
                                x10[0], x20[0], xi[0]
                            ));
                        }
                    }
                    _ => problems.push("expected an exact witness".into()),
                }
                match certify_witness(&i_pair, &w, 1.0, 1001) {
                    Ok(cert) if cert.max_deviation <= 1e-12 => {
                        certified.push((i_pair.clone(), w));
                    }
                    Ok(cert) => problems.push(format!(
                        "deviation {:.2e} exceeds 1e-12",
                        cert.max_deviation
                    )),
                    Err(e) => problems.push(e.to_string()),
                }
            }
            Err(e) => problems.push(e.to_string()),
        }
        // The hand-written witness itself replays to ≤ 1e-12 as well.
        let hand = Witness {
            data: WitnessData::Exact {
                lambda0: ComplexRational::zero(),
                xi: vec![ComplexRational::from_int(-1)],
                x10: vec![ComplexRational::one()],
                x20: vec![ComplexRational::one()],
            },
            residual: 0.0,
        };
        match certify_witness(&i_pair, &hand, 1.0, 1001) {
            Ok(cert) if cert.max_deviation <= 1e-12 => {}
            Ok(cert) => problems.push(format!(
                "hand witness deviates {:.2e}",
                cert.max_deviation
            )),
            Err(e) => problems.push(e.to_string()),
        }
        record(
            &mut results,
            "5 (worked examples)",
            if problems.is_empty() {
                Ok("verdicts, determinants, witness (1, 1, -1) at λ₀ = 0, deviations ≤ 1e-12".into())
            } else {
                Err(problems.join("; "))
            },
        );
    }

    // 6. Identical systems are never distinguishable.
    {
        let mut cfg = GenConfig::desk_scale(0x1DE4, 50);
        cfg.m_range = (0, 2);
        let mut bad = Vec::new();
        for (i, sys) in distkit_core::testgen::gen_random_systems(&cfg).into_iter().enumerate() {
            let pair = SystemPair::new(sys.clone(), sys).unwrap();
            match decide(&pair) {
                Ok(r) if r.verdict == Verdict::Indistinguishable => {
                    let cs = pair.combine();
                    match synthesize_witness(&cs, r.defect.as_ref().unwrap(), &tol) {
                        Ok(w) => match certify_witness(&pair, &w, 1.0, 1001) {
                            Ok(cert) if cert.pass => certified.push((pair.clone(), w)),
                            Ok(cert) => bad.push(format!(
                                "system {i}: deviation {:.2e}",
                                cert.max_deviation
                            )),
                            Err(e) => bad.push(format!("system {i}: {e}")),
                        },
                        Err(e) => bad.push(format!("system {i}: synthesis {e}")),
                    }
                }
                Ok(_) => bad.push(format!("system {i}: decided distinguishable")),
                Err(e) => bad.push(format!("system {i}: {e}")),
            }
        }
        record(
            &mut results,
            "6 (identical systems)",
            if bad.is_empty() {
                Ok("50/50 self-pairs indistinguishable with certified witnesses".into())
            } else {
                Err(format!("{} failures: {:?}", bad.len(), bad.first()))
            },
        );
    }

    // 7. Automation regression: m = 0 verdict equals the observability
    // oracle on the combined (C, A).
    {
        let mut cfg = GenConfig::desk_scale(0xA070, 50);
        cfg.m_range = (0, 0);
        let mut mism = 0usize;
        for pair in gen_random_pairs(&cfg) {
            let cs = pair.combine();
            let observable = observability_rank(cs.c(), cs.a()) == cs.state_dim();
            let verdict = decide(&pair).unwrap().verdict;
            let expected = if observable {
                Verdict::Distinguishable
            } else {
                Verdict::Indistinguishable
            };
            if verdict != expected {
                mism += 1;
            }
        }
        record(
            &mut results,
            "7 (automation m = 0)",
            if mism == 0 {
                Ok("50/50 verdicts equal the observability-rank oracle".into())
            } else {
                Err(format!("{mism} disagreements with the oracle"))
            },
        );
    }

    // 8. Operator calculus: finite-difference shift identity and exact
    // algebraic identities.
    {
        let mut prng = Prng::new(0x09E8_u64 ^ 0x8888);
        let h = Rational::new(1, 10_000);
        let mut fd_failures = 0usize;
        let mut fd_checked = 0usize;
        while fd_checked < 100 {
            let (op, sig, t) = random_probe_triple(&mut prng);
            let exact_sig = apply_operator(&op, &sig);
            let exact = common::eval_signal_fix(&exact_sig, &t);
            let op_coeffs: Vec<(Rational, Rational)> = (0..op.poly().coeffs().len())
                .map(|j| {
                    let c = op.poly().coeff(j);
                    (c.re, c.im)
                })
                .collect();
            let probed = finite_difference_apply(&op_coeffs, &sig, &t, &h);
            let magnitude = exact[0].norm_f64();
            if magnitude < 1e-2 {
                continue;
            }
            fd_checked += 1;
            let diff = exact[0].sub(&probed[0]).norm_f64();
            if diff > 1e-6 * magnitude {
                fd_failures += 1;
            }
        }

        let mut alg_failures = 0usize;
        for _ in 0..100 {
            let (p, sig, _) = random_probe_triple(&mut prng);
            let (q, sig2, _) = random_probe_triple(&mut prng);
            let _ = sig2;
            let sum_op = DiffOperator::new(p.poly() + q.poly());
            let lhs = apply_operator(&sum_op, &sig);
            let rhs = apply_operator(&p, &sig)
                .add(&apply_operator(&q, &sig))
                .unwrap();
            if lhs != rhs {
                alg_failures += 1;
            }
            let prod = p.mul(&q);
            if apply_operator(&prod, &sig) != apply_operator(&p, &apply_operator(&q, &sig)) {
                alg_failures += 1;
            }
            if apply_operator(&prod, &sig) != apply_operator(&q, &apply_operator(&p, &sig)) {
                alg_failures += 1;
            }
        }
        record(
            &mut results,
            "8 (operator calculus)",
            if fd_failures == 0 && alg_failures == 0 {
                Ok("shift identity within 1e-6 on 100 probes; algebra exact on 100 triples".into())
            } else {
                Err(format!(
                    "{fd_failures} finite-difference failures, {alg_failures} algebra failures"
                ))
            },
        );
    }

    // 9. Cayley–Hamilton truncation stability.
    {
        let mut mism = 0usize;
        for pair in gen_random_pairs(&GenConfig::desk_scale(0xCA41, 50)) {
            let cs = pair.combine();
            let n = cs.state_dim();
            if rat_rank(&cs.truncated_matrix(n)) != rat_rank(&cs.truncated_matrix(n + 5)) {
                mism += 1;
            }
        }
        record(
            &mut results,
            "9 (truncation stability)",
            if mism == 0 {
                Ok("rank stationary from depth n₁+n₂ to n₁+n₂+5 on 50/50 systems".into())
            } else {
                Err(format!("{mism} rank changes"))
            },
        );
    }

    // 10. Horizon independence of certification.
    {
        let mut bad = 0usize;
        for (pair, w) in &certified {
            let certs: Vec<_> = [0.5, 1.0, 5.0]
                .iter()
                .map(|&h| certify_witness(pair, w, h, 1001).ok())
                .collect();
            let verdicts: Vec<bool> = certs
                .iter()
                .map(|c| c.as_ref().is_some_and(|c| c.pass))
                .collect();
            if !(verdicts[0] == verdicts[1] && verdicts[1] == verdicts[2]) {
                bad += 1;
                for c in certs.iter().flatten() {
                    eprintln!(
                        "horizon {}: deviation {:.3e} vs tolerance {:.3e} (pass {})",
                        c.horizon, c.max_deviation, c.tolerance, c.pass
                    );
                }
            }
        }
        record(
            &mut results,
            "10 (horizon independence)",
            if bad == 0 && !certified.is_empty() {
                Ok(format!(
                    "same certification verdict at horizons 0.5/1/5 on all {} witnesses",
                    certified.len()
                ))
            } else {
                Err(format!("{bad} horizon-dependent verdicts"))
            },
        );
    }

    let failed: Vec<&Outcome> = results.iter().filter(|o| !o.pass).collect();
    assert!(
        failed.is_empty(),
        "acceptance failures: {:?}",
        failed
            .iter()
            .map(|o| format!("criterion {}: {}", o.label, o.detail))
            .collect::<Vec<_>>()
    );
}

fn random_probe_triple(prng: &mut Prng) -> (DiffOperator, PolyExpSignal, Rational) {
    let small = |prng: &mut Prng| -> Rational {
        Rational::new((prng.below(7) as i64) - 3, [1, 2][prng.below(2)])
    };
    let op = loop {
        let deg = prng.below(4);
        let coeffs: Vec<ComplexRational> = (0..=deg)
            .map(|_| ComplexRational::new(small(prng), Rational::zero()))
            .collect();
        let p = CPoly::new(coeffs);
        if !p.is_zero() {
            break DiffOperator::new(p);
        }
    };
    let sig = loop {
        let lambda = ComplexRational::new(small(prng), small(prng));
        let deg = prng.below(3);
        let coeffs = vec![CPoly::new(
            (0..=deg)
                .map(|_| ComplexRational::new(small(prng), Rational::zero()))
                .collect(),
        )];
        let s = PolyExpSignal::new(1, vec![SignalTerm { lambda, coeffs }]).unwrap();
        if !s.is_zero() {
            break s;
        }
    };
    let t = Rational::new(prng.below(19) as i64 + 1, 20);
    (op, sig, t)
}
