//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured numbers (run with `--nocapture` to see them).

mod common;

use common::{omitted_value, random_poly, random_poly_zero_const, rng};
use koebe_poly::*;
use rand::Rng;
use std::time::Instant;

fn cplx(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

#[test]
fn criterion_1_involution_bitwise() {
    let start = Instant::now();
    let mut rng = rng(101);
    for _ in 0..1000 {
        let nominal = rng.gen_range(0..=16);
        // Trailing zeros included: actual degree can be anything <= nominal.
        let len = rng.gen_range(0..=nominal + 1);
        let coeffs: Vec<Complex> = (0..len)
            .map(|_| cplx(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)))
            .collect();
        let q = Polynomial::new(coeffs, nominal).unwrap();
        let twice = q.n_inverse().n_inverse();
        for (a, b) in q.coeffs().iter().zip(twice.coeffs()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("criterion 1 (involution, 1000 polynomials, {elapsed:?}): PASS");
}

#[test]
fn criterion_2_open_disk_duality() {
    let start = Instant::now();
    let mut rng = rng(102);
    let mut agree = 0;
    let mut marginal = 0;
    for _ in 0..200 {
        let degree = rng.gen_range(1..=8);
        let chi = random_poly(&mut rng, degree); // |a_n| >= 0.1 by construction
        let root_side = match is_schur_stable(&chi, 1e-9) {
            Ok(v) => match v.verdict {
                Stability::Stable => Ternary::Holds,
                Stability::Unstable => Ternary::Fails,
                Stability::Marginal => Ternary::Marginal,
            },
            Err(Error::NonConvergence) => Ternary::Marginal,
            Err(e) => panic!("unexpected error: {e}"),
        };
        let omitted_side = zero_omitted_closed_disk(&chi.n_inverse(), 1e-9).unwrap();
        if root_side == Ternary::Marginal || omitted_side == Ternary::Marginal {
            marginal += 1;
            continue;
        }
        assert_eq!(
            root_side, omitted_side,
            "duality sides disagree on {chi:?}"
        );
        agree += 1;
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    assert!(agree >= 150, "too many marginal exclusions ({marginal})");
    println!(
        "criterion 2 (open-disk stability duality, {agree}/200 non-marginal agree, \
         {marginal} marginal, {elapsed:?}): PASS"
    );
}

#[test]
fn criterion_3_closed_disk_duality() {
    let mut rng = rng(103);
    let mut checked = 0;
    while checked < 200 {
        let degree = rng.gen_range(2..=8);
        let q = random_poly_zero_const(&mut rng, degree);
        let Some(w) = omitted_value(&mut rng, &q) else { continue };
        let chi = q.subtract_const(w); // a_0 = -w != 0
        let chistar = chi.n_inverse();
        let rs = find_roots(&chistar).unwrap();
        let cls = classify_roots(&rs, &koebe_poly::Disk::unit_closed(), 1e-9);
        for (root, verdict) in rs.roots.iter().zip(&cls.verdicts) {
            assert_ne!(
                *verdict,
                RootLocation::Outside,
                "root {root} of the reversal strictly outside the closed disk (|root| = {})",
                root.norm()
            );
        }
        checked += 1;
    }
    println!("criterion 3 (closed-disk stability duality, 200 instances): PASS");
}

#[test]
fn criterion_4_coefficient_bounds_and_sharpness() {
    let mut rng = rng(104);
    let mut checked = 0;
    while checked < 200 {
        let degree = rng.gen_range(2..=8);
        let q = random_poly_zero_const(&mut rng, degree);
        let Some(w) = omitted_value(&mut rng, &q) else { continue };
        let rep = lemma3_bound_check(&q, w).unwrap();
        assert!(rep.pass, "bound violated for {q:?} at w = {w}");
        for row in &rep.rows {
            assert!(row.slack >= -1e-10 * row.bound);
        }
        checked += 1;
    }
    // Sharpness: the extremal attains equality in every k.
    let w = cplx(0.6, -0.45);
    for n in 1..=8 {
        let q = extremal_lemma3(n, w).unwrap();
        let rep = lemma3_bound_check(&q, w).unwrap();
        for row in &rep.rows {
            assert!(
                row.slack.abs() <= 1e-9 * row.bound,
                "n = {n}, k = {}: slack {} not within 1e-9 relative",
                row.k,
                row.slack
            );
        }
    }
    println!("criterion 4 (coefficient bounds on 200 instances + extremal equality n = 1..8): PASS");
}

#[test]
fn criterion_5_inradius_oracle_vs_norm() {
    let start = Instant::now();
    let mut rng = rng(105);
    let mut min_slack = f64::INFINITY;
    for _ in 0..100 {
        let degree = rng.gen_range(2..=8);
        let q = random_poly_zero_const(&mut rng, degree);
        let bound = q.norm_nq();
        let est = inradius_oracle(&q, 1.0, 4096).unwrap();
        assert!(
            est.value >= bound - 5e-3,
            "oracle inradius {} below guaranteed bound {} for {q:?}",
            est.value,
            bound
        );
        if est.value.is_finite() {
            min_slack = min_slack.min(est.value - bound);
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "took {elapsed:?}");
    println!(
        "criterion 5 (guaranteed inradius, 100 polynomials, grid 4096, min slack {min_slack:.2e}, \
         {elapsed:?}): PASS"
    );
}

#[test]
fn criterion_6_covering_sharpness() {
    let mut worst_rel = 0.0f64;
    for n in 2..=6usize {
        for &r in &[0.5, 1.0, 2.0] {
            let q = extremal_corollary3(n, r).unwrap();
            let target = r / n as f64;
            let est = inradius_oracle(&q, r, 4096).unwrap();
            let rel = (est.value - target).abs() / target;
            assert!(
                rel <= 1e-3,
                "n = {n}, R = {r}: oracle {} vs target {target} (rel {rel:.2e})",
                est.value
            );
            worst_rel = worst_rel.max(rel);
            let cert = covering_lower_bound(&q, r).unwrap();
            assert!((cert.bound - target).abs() <= 1e-12 * target);
            assert_eq!(
                cert.status,
                CoveringStatus::Verified,
                "interior spot-check failed for n = {n}, R = {r}"
            );
        }
    }
    println!(
        "criterion 6 (covering-bound sharpness, n = 2..6, R in {{0.5, 1, 2}}, \
         worst oracle deviation {worst_rel:.2e} relative): PASS"
    );
}

#[test]
fn criterion_7_distortion_witnesses() {
    let mut rng = rng(107);
    for _ in 0..500 {
        let degree = rng.gen_range(1..=8);
        let p = random_poly(&mut rng, degree);
        let z1 = cplx(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let z2 = cplx(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let wit = distortion_witness(&p, z1, z2).unwrap();
        let p_z2 = p.evaluate(z2).unwrap();
        assert!(
            wit.residual <= 1e-8 * (1.0 + p_z2.norm()),
            "residual {} too large for {p:?} at ({z1}, {z2})",
            wit.residual
        );
        assert!(
            wit.slack >= -1e-9 * (1.0 + wit.lhs),
            "negative slack {} for {p:?} at ({z1}, {z2})",
            wit.slack
        );
        if wit.branch == WitnessBranch::Constructive {
            assert!(
                wit.eta.norm() <= degree as f64 * wit.w.norm() * (1.0 + 1e-9),
                "|η| = {} beyond n|w| = {}",
                wit.eta.norm(),
                degree as f64 * wit.w.norm()
            );
        }
    }

    // Hand-derived cases for p = z^2.
    let p = Polynomial::from_real(&[0.0, 0.0, 1.0]).unwrap();
    let wit = distortion_witness(&p, cplx(1.0, 0.0), cplx(0.0, 0.0)).unwrap();
    assert!(wit.slack.abs() <= 1e-12, "slack {} at (1, 0)", wit.slack);
    let wit = distortion_witness(&p, cplx(1.0, 0.0), cplx(0.0, 1.0)).unwrap();
    let expected = 2.0 - 2.0f64.sqrt();
    assert!(
        (wit.slack - expected).abs() <= 1e-12,
        "slack {} vs 2 - sqrt(2) at (1, i)",
        wit.slack
    );
    println!("criterion 7 (distortion bound, 500 random witnesses + 2 hand-derived cases): PASS");
}

#[test]
fn criterion_8_rootfinder_certificates() {
    let mut rng = rng(108);
    for _ in 0..200 {
        let degree = rng.gen_range(1..=12);
        let p = random_poly(&mut rng, degree);
        let rs = find_roots(&p).unwrap();
        for (r, res) in rs.roots.iter().zip(&rs.residuals) {
            assert!(*res <= 1e-10 * rs.scale * (1.0 + r.norm()).powi(degree as i32));
        }
        if degree <= 10 && rs.converged {
            let lead = p.coeff(degree);
            let sum: Complex = rs.roots.iter().sum();
            let sum_expect = -p.coeff(degree - 1) / lead;
            assert!((sum - sum_expect).norm() <= 1e-8 * (1.0 + sum_expect.norm()));
            let prod: Complex = rs.roots.iter().product();
            let sign = if degree % 2 == 0 { 1.0 } else { -1.0 };
            let prod_expect = p.coeff(0) / lead * sign;
            assert!((prod - prod_expect).norm() <= 1e-8 * (1.0 + prod_expect.norm()));
        }
    }
    // The documented multiple-root case at relaxed accuracy.
    let p = Polynomial::from_real(&[-0.125, 0.75, -1.5, 1.0]).unwrap(); // (z - 0.5)^3
    let rs = find_roots(&p).unwrap();
    for r in &rs.roots {
        assert!((r - cplx(0.5, 0.0)).norm() <= 1e-5, "triple root off: {r}");
    }
    println!("criterion 8 (root residual certificates, Vieta, (z-0.5)^3 at 1e-5): PASS");
}

#[test]
fn criterion_9_cli_examples_and_round_trip() {
    use std::io::Write;
    use std::process::{Command, Stdio};

    let bin = env!("CARGO_BIN_EXE_koebe-poly");
    let run = |args: &[&str], stdin: &str| -> (i32, String) {
        let mut child = Command::new(bin)
            .args(args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::piped())
            .spawn()
            .expect("spawn CLI");
        child
            .stdin
            .as_mut()
            .unwrap()
            .write_all(stdin.as_bytes())
            .unwrap();
        let out = child.wait_with_output().unwrap();
        (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
    };

    // Documented example 1: 4-inverse of z is z^3.
    let (code, out) = run(
        &["inverse"],
        r#"{"coeffs": [[0,0],[1,0]], "nominal_degree": 4}"#,
    );
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], "koebe-poly/1");
    let coeffs = v["result"]["polynomial"]["coeffs"].as_array().unwrap();
    assert_eq!(coeffs.len(), 5);
    for (k, c) in coeffs.iter().enumerate() {
        let expect = if k == 3 { 1.0 } else { 0.0 };
        assert_eq!(c[0], expect, "coefficient {k}");
        assert_eq!(c[1], 0.0);
    }

    // Documented example 2: norm of z + z^2 + z^3/3 is 1/3.
    let input2 = format!(
        r#"{{"coeffs": [[0,0],[1,0],[1,0],[{},0]]}}"#,
        1.0 / 3.0
    );
    let (code, out) = run(&["norm"], &input2);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let norm = v["result"]["norm_nq"].as_f64().unwrap();
    assert!((norm - 1.0 / 3.0).abs() <= 1e-15);

    // Documented example 3: z - 2 is unstable, and that is exit 0.
    let (code, out) = run(&["stability"], r#"{"coeffs": [[-2,0],[1,0]]}"#);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["verdict"], "unstable");

    // Determinism round-trip: identical bytes on a second run, and the
    // embedded inputs re-run to the identical report.
    let (_, again) = run(&["stability"], r#"{"coeffs": [[-2,0],[1,0]]}"#);
    assert_eq!(out, again);
    assert_eq!(koebe_poly::cli::rerun(&out).unwrap(), out);

    // Exit codes: parse error 1, precondition violation 3.
    let (code, _) = run(&["norm"], "not json");
    assert_eq!(code, 1);
    let (code, _) = run(
        &["stability"],
        r#"{"coeffs": [[1,0],[1,0],[0,0]], "nominal_degree": 2}"#,
    );
    assert_eq!(code, 3);

    println!("criterion 9 (CLI examples, exit codes, deterministic round-trip): PASS");
}
