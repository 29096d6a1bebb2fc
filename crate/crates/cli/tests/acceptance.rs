//! Acceptance suite: one pass/fail line per criterion.
//!
//! Runs without the libtest harness so the summary is always printed. Exits
//! non-zero if any criterion fails.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};
use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use elliptic_lab_core::elliptic::{invert_lambda_ratio, lambda_ratio, landen_descend};
use elliptic_lab_core::identity::{
    invariance_grid, log_integral_1, log_integral_2, open_grid, relative_spread, route_reports,
};
use elliptic_lab_core::legendre::ramanujan_check;
use elliptic_lab_core::{
    a_direct, complete_k, verify_device_symmetry, verify_proof_chain, ChainConfig, HallInput,
    Modulus, ParamPair, QuadratureSpec,
};
use statrs::function::gamma::gamma;

const BIN: &str = env!("CARGO_BIN_EXE_elliptic-lab");

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

/// `|a - b| / max(1, |a|, |b|)`
fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / 1f64.max(a.abs()).max(b.abs())
}

fn tenths() -> Vec<f64> {
    (1..=9).map(|i| i as f64 / 10.0).collect()
}

/// Trapezoid rule for `∫_0^{π/2} dθ/√(1 - k² sin²θ)`. The integrand is smooth
/// and periodic, so the error decays geometrically in the node count.
fn k_trapezoid(k: f64) -> f64 {
    let n = 400;
    let h = FRAC_PI_2 / n as f64;
    let f = |t: f64| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt();
    let inner: f64 = (1..n).map(|i| f(i as f64 * h)).sum();
    h * (0.5 * f(0.0) + inner + 0.5 * f(FRAC_PI_2))
}

fn invariance_grid_81() -> Verdict {
    let spec = QuadratureSpec::default();
    let grid = open_grid(9).unwrap();
    let start = Instant::now();
    let rows = match invariance_grid(&grid, &grid, 1e-9, &spec) {
        Ok(rows) => rows,
        Err(e) => return verdict(false, format!("error: {e}")),
    };
    let elapsed = start.elapsed();
    let worst = rows
        .iter()
        .map(|(_, r)| r.relative_diff())
        .fold(0.0, f64::max);
    let fails = rows.iter().filter(|(_, r)| !r.pass).count();
    verdict(
        rows.len() == 81 && fails == 0 && elapsed <= Duration::from_secs(60),
        format!(
            "{} pairs, {fails} fail, max rel diff {worst:.2e} (tol 1e-9), {:.2?}",
            rows.len(),
            elapsed
        ),
    )
}

fn route_agreement_25() -> Verdict {
    let spec = QuadratureSpec::default();
    let grid = [0.1, 0.3, 0.5, 0.7, 0.9];
    let mut worst: f64 = 0.0;
    for &p in &grid {
        for &q in &grid {
            let pair = ParamPair::new(p, q).unwrap();
            match route_reports(&pair, &spec) {
                Ok(r) => worst = worst.max(relative_spread(&r)),
                Err(e) => return verdict(false, format!("({p}, {q}): {e}")),
            }
        }
    }
    verdict(
        worst <= 1e-8,
        format!("25 pairs, max pairwise spread {worst:.2e} (tol 1e-8)"),
    )
}

fn elliptic_kernel() -> Verdict {
    let closed = gamma(0.25).powi(2) / (4.0 * PI.sqrt());
    let k = complete_k(Modulus::new(FRAC_1_SQRT_2).unwrap()).unwrap();
    let d_const = (k - closed).abs();
    let d_quad = tenths()
        .into_iter()
        .map(|m| {
            let agm = complete_k(Modulus::new(m).unwrap()).unwrap();
            rel(agm, k_trapezoid(m))
        })
        .fold(0.0, f64::max);
    verdict(
        d_const <= 1e-13 && (closed - 1.8540746773013719).abs() <= 1e-15 && d_quad <= 1e-11,
        format!("|K(1/√2) - Γ(1/4)²/(4√π)| = {d_const:.2e} (tol 1e-13), AGM vs quadrature {d_quad:.2e} (tol 1e-11)"),
    )
}

fn degenerate_corner() -> Verdict {
    let pair = ParamPair::new(1e-6, 1e-6).unwrap();
    match a_direct(&pair, &QuadratureSpec::default()) {
        Ok(a) => {
            let d = (a.value - PI * PI / 2.0).abs();
            verdict(d <= 1e-5, format!("|A - π²/2| = {d:.2e} (tol 1e-5)"))
        }
        Err(e) => verdict(false, format!("error: {e}")),
    }
}

fn proof_chain() -> Verdict {
    let pair = ParamPair::new(0.6, 0.3).unwrap();
    let start = Instant::now();
    let report = match verify_proof_chain(&pair, &ChainConfig::default()) {
        Ok(r) => r,
        Err(e) => return verdict(false, format!("error: {e}")),
    };
    let elapsed = start.elapsed();
    let additions = report
        .entries
        .iter()
        .filter(|e| e.id.starts_with("legendre-addition/"))
        .count();
    let failed: Vec<_> = report
        .entries
        .iter()
        .filter(|e| !e.pass)
        .map(|e| e.id.as_str())
        .collect();
    verdict(
        report.all_pass() && additions == 5 && elapsed <= Duration::from_secs(30),
        format!(
            "{} entries, {additions} addition samples, failing {failed:?}, {elapsed:.2?}",
            report.entries.len()
        ),
    )
}

fn log_integrals() -> Verdict {
    let spec = QuadratureSpec::default();
    let mut worst: f64 = 0.0;
    for a in tenths() {
        for check in [log_integral_1, log_integral_2] {
            match check(a, &spec) {
                Ok((lhs, rhs)) => worst = worst.max(rel(lhs, rhs)),
                Err(e) => return verdict(false, format!("α = {a}: {e}")),
            }
        }
    }
    verdict(
        worst <= 1e-10,
        format!("α ∈ 0.1..0.9, max diff {worst:.2e} (tol 1e-10)"),
    )
}

fn ramanujan() -> Verdict {
    let mut worst: f64 = 0.0;
    for q in tenths() {
        match ramanujan_check(q, 1e-10) {
            Ok(entries) => {
                for e in entries {
                    worst = worst.max(rel(e.lhs, e.rhs));
                }
            }
            Err(e) => return verdict(false, format!("q = {q}: {e}")),
        }
    }
    verdict(
        worst <= 1e-10,
        format!("q ∈ 0.1..0.9, both relations, max diff {worst:.2e} (tol 1e-10)"),
    )
}

fn landen() -> Verdict {
    let mut worst: f64 = 0.0;
    for i in 0..10 {
        let s = 0.05 + 0.1 * i as f64;
        match landen_descend(s) {
            Ok((lhs, rhs)) => worst = worst.max(rel(lhs, rhs)),
            Err(e) => return verdict(false, format!("s = {s}: {e}")),
        }
    }
    verdict(
        worst <= 1e-12,
        format!("s ∈ 0.05..0.95, max diff {worst:.2e} (tol 1e-12)"),
    )
}

fn lambda_inversion() -> Verdict {
    let mut worst: f64 = 0.0;
    for lambda in [0.25, 0.5, 1.0, 2.0, 4.0] {
        let back = invert_lambda_ratio(lambda).and_then(lambda_ratio);
        match back {
            Ok(b) => worst = worst.max((b - lambda).abs() / lambda),
            Err(e) => return verdict(false, format!("λ = {lambda}: {e}")),
        }
    }
    let f2 = invert_lambda_ratio(2.0).map(|m| m.k()).unwrap_or(f64::NAN);
    let d2 = (f2 - FRAC_1_SQRT_2).abs();
    verdict(
        worst <= 1e-10 && d2 <= 1e-12,
        format!("max roundtrip {worst:.2e} (tol 1e-10), |f(2) - 1/√2| = {d2:.2e} (tol 1e-12)"),
    )
}

fn device_symmetry() -> Verdict {
    let spec = QuadratureSpec::default();
    let grid = [0.3, 0.8, 1.5, 3.0];
    let mut worst: f64 = 0.0;
    let mut fails = 0;
    for &lf in &grid {
        for &lp in &grid {
            let report = HallInput::new(lf, lp)
                .and_then(|input| verify_device_symmetry(&input, 1e-8, &spec));
            match report {
                Ok(r) => {
                    worst = worst.max(r.relative_diff());
                    fails += usize::from(!r.pass);
                }
                Err(e) => return verdict(false, format!("({lf}, {lp}): {e}")),
            }
        }
    }
    verdict(
        fails == 0,
        format!("16 points, {fails} fail, max rel diff {worst:.2e} (tol 1e-8)"),
    )
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("ELLIPTIC_LAB_CONFIG")
        .output()
        .expect("binary runs")
}

fn cli_contract() -> Verdict {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let mut problems = Vec::new();
    let mut expect = |what: &str, out: &Output, code: i32| {
        if out.status.code() != Some(code) {
            problems.push(format!("{what}: exit {:?}, want {code}", out.status.code()));
        }
    };

    let bad_p = run(&["a", "--p", "1.2", "--q", "0.5"]);
    expect("a --p 1.2", &bad_p, 2);
    let names_flag = String::from_utf8_lossy(&bad_p.stderr).contains("--p");

    expect(
        "verify invariance",
        &run(&[
            "verify",
            "invariance",
            "--p",
            "0.6",
            "--q",
            "0.3",
            "--tol",
            "1e-9",
        ]),
        0,
    );
    expect(
        "verify chain",
        &run(&["verify", "chain", "--p", "0.6", "--q", "0.3"]),
        0,
    );
    expect(
        "verify hall-symmetry",
        &run(&[
            "verify",
            "hall-symmetry",
            "--lambda-f",
            "1.5",
            "--lambda-p",
            "0.8",
        ]),
        0,
    );
    expect(
        "failing verification",
        &run(&[
            "verify",
            "invariance",
            "--p",
            "0.6",
            "--q",
            "0.3",
            "--tol",
            "1e-300",
        ]),
        1,
    );

    let shallow = path("shallow.conf");
    std::fs::write(&shallow, "max-levels = 1\n").unwrap();
    expect(
        "non-converged quadrature",
        &run(&["a", "--p", "0.5", "--q", "0.5", "--config", &shallow]),
        1,
    );

    let unwritable = path("missing/dir/g.csv");
    expect(
        "unwritable --out",
        &run(&["sweep", "--out", &unwritable]),
        2,
    );

    let (g1, g2) = (path("g1.csv"), path("g2.csv"));
    expect(
        "sweep 9x9",
        &run(&["sweep", "--p-steps", "9", "--q-steps", "9", "--out", &g1]),
        0,
    );
    expect(
        "sweep 9x9 rerun",
        &run(&["sweep", "--p-steps", "9", "--q-steps", "9", "--out", &g2]),
        0,
    );
    let (b1, b2) = (
        std::fs::read(&g1).unwrap_or_default(),
        std::fs::read(&g2).unwrap_or_default(),
    );
    let text = String::from_utf8_lossy(&b1);
    let header_ok = text.lines().next() == Some("p,q,p_comp,q_comp,a_pq,a_pcqc,abs_diff,pass");
    let rows_ok = text.lines().count() == 82 && text.lines().skip(1).all(|l| l.ends_with(",true"));

    let a1 = run(&[
        "a", "--p", "0.5", "--q", "0.5", "--route", "all", "--format", "json",
    ]);
    let a2 = run(&[
        "a", "--p", "0.5", "--q", "0.5", "--route", "all", "--format", "json",
    ]);
    let identical = b1 == b2 && !b1.is_empty() && a1.stdout == a2.stdout && !a1.stdout.is_empty();

    let pass = problems.is_empty() && names_flag && header_ok && rows_ok && identical;
    verdict(
        pass,
        format!(
            "exit codes {}, diagnostic names --p {names_flag}, header {header_ok}, 81 passing rows {rows_ok}, byte-identical reruns {identical}",
            if problems.is_empty() { "ok".to_string() } else { problems.join("; ") }
        ),
    )
}

fn main() {
    assert!(Path::new(BIN).exists(), "binary missing at {BIN}");
    let criteria: [(&str, fn() -> Verdict); 11] = [
        ("invariance grid", invariance_grid_81),
        ("route agreement", route_agreement_25),
        ("elliptic kernel", elliptic_kernel),
        ("degenerate corner", degenerate_corner),
        ("proof chain", proof_chain),
        ("closed-form log integrals", log_integrals),
        ("Ramanujan relations", ramanujan),
        ("Landen identity", landen),
        ("λ-inversion roundtrip", lambda_inversion),
        ("device symmetry", device_symmetry),
        ("CLI contract", cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        failed += usize::from(!v.pass);
        println!(
            "criterion {:>2} {} {name}: {}",
            i + 1,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
