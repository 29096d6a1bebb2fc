use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::ValueEnum;
use elliptic_lab_core::identity::{invariance_grid, open_grid, relative_spread, route_reports};
use elliptic_lab_core::{
    hall_g, verify_device_symmetry, verify_invariance, verify_proof_chain, ChainConfig, HallInput,
    ParamPair, QuadratureSpec, Route, Rule,
};
use serde_json::{Map, Number, Value as Json};

use crate::config::Config;
use crate::output::{real, Format, OutputRecord};
use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Direct,
    Theta,
    Lemma,
    Final,
    All,
}

impl FromStr for RouteArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    /// tanh-sinh
    De,
    /// adaptive Gauss-Kronrod 7/15
    Gk,
}

impl FromStr for RuleArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepFormat {
    Csv,
    Json,
}

impl FromStr for SweepFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

pub const SWEEP_HEADER: [&str; 8] = [
    "p", "q", "p_comp", "q_comp", "a_pq", "a_pcqc", "abs_diff", "pass",
];

/// What a command produced: text for stdout and the exit status.
pub struct Outcome {
    pub stdout: String,
    pub ok: bool,
    pub note: Option<String>,
}

fn open_unit(flag: &str, x: f64) -> Result<f64, Failure> {
    if x > 0.0 && x < 1.0 {
        Ok(x)
    } else {
        Err(Failure::Usage(format!(
            "{flag} must lie in (0, 1), got {x}"
        )))
    }
}

fn positive(flag: &str, x: f64) -> Result<f64, Failure> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(Failure::Usage(format!(
            "{flag} must be positive and finite, got {x}"
        )))
    }
}

fn pair(cfg: &Config, p: Option<f64>, q: Option<f64>) -> Result<ParamPair, Failure> {
    let p = open_unit("--p", cfg.require(p, "p")?)?;
    let q = open_unit("--q", cfg.require(q, "q")?)?;
    ParamPair::new(p, q).map_err(Failure::from)
}

/// Quadrature settings from `quad-tol`, `max-levels` and `rule`, or `tol`
/// when the command's tolerance is itself a quadrature tolerance.
fn quadrature(cfg: &Config, tol: Option<f64>) -> Result<QuadratureSpec, Failure> {
    let d = QuadratureSpec::default();
    let tol = match tol {
        Some(t) => t,
        None => positive("--quad-tol", cfg.get_or(None, "quad-tol", d.abs_tol)?)?,
    };
    let levels = cfg.get_or(None, "max-levels", d.max_levels)?;
    let rule = match cfg.get_or(None, "rule", RuleArg::De)? {
        RuleArg::De => Rule::DoubleExponential,
        RuleArg::Gk => Rule::AdaptiveGauss,
    };
    QuadratureSpec::new(tol, tol, levels, rule).map_err(Failure::from)
}

pub fn cmd_a(
    cfg: &Config,
    p: Option<f64>,
    q: Option<f64>,
    route: Option<RouteArg>,
    tol: Option<f64>,
    format: Option<Format>,
) -> Result<Outcome, Failure> {
    let pair = pair(cfg, p, q)?;
    let route = cfg.get_or(route, "route", RouteArg::Direct)?;
    let tol = positive(
        "--tol",
        cfg.get_or(tol, "tol", QuadratureSpec::default().abs_tol)?,
    )?;
    let format = cfg.get_or(format, "format", Format::Text)?;
    let spec = quadrature(cfg, Some(tol))?;

    let mut rec = OutputRecord::new("a");
    rec.input("p", pair.p())
        .input("q", pair.q())
        .input("route", route.to_possible_value().unwrap().get_name())
        .input("tol", tol);

    let single = match route {
        RouteArg::Direct => Some(Route::Direct),
        RouteArg::Theta => Some(Route::ThetaForm),
        RouteArg::Lemma => Some(Route::LemmaReduced),
        RouteArg::Final => Some(Route::FinalForm),
        RouteArg::All => None,
    };
    let mut converged = true;
    match single {
        Some(r) => {
            let est = r.evaluate(&pair, &spec)?;
            let key = format!("a_{}", r.name());
            rec.output(&key, est.value).bound(&key, est.error_bound);
            converged = est.converged;
        }
        None => {
            let reports = route_reports(&pair, &spec)?;
            for r in &reports {
                let key = format!("a_{}", r.route.name());
                rec.output(&key, r.value).bound(&key, r.error_bound);
                converged &= r.converged;
            }
            rec.output("spread", relative_spread(&reports));
        }
    }
    rec.output("converged", converged);
    Ok(Outcome {
        stdout: rec.render(format),
        ok: converged,
        note: (!converged).then(|| "quadrature did not converge".to_string()),
    })
}

pub fn cmd_verify_invariance(
    cfg: &Config,
    p: Option<f64>,
    q: Option<f64>,
    tol: Option<f64>,
    format: Option<Format>,
) -> Result<Outcome, Failure> {
    let pair = pair(cfg, p, q)?;
    let tol = positive("--tol", cfg.get_or(tol, "tol", 1e-9)?)?;
    let format = cfg.get_or(format, "format", Format::Text)?;
    let spec = quadrature(cfg, None)?;
    let report = verify_invariance(&pair, tol, &spec)?;

    let mut rec = OutputRecord::new("verify invariance");
    rec.input("p", pair.p())
        .input("q", pair.q())
        .input("tol", tol);
    rec.output("p_comp", pair.p_comp())
        .output("q_comp", pair.q_comp())
        .output("a_pq", report.a_pq)
        .output("a_pcqc", report.a_pcqc)
        .output("abs_diff", report.abs_diff)
        .output("tolerance", report.tolerance);
    rec.bound("abs_diff", report.error_bound);
    rec.pass = Some(report.pass);
    Ok(verdict(rec, format, report.pass))
}

pub fn cmd_verify_chain(
    cfg: &Config,
    p: Option<f64>,
    q: Option<f64>,
    tol: Option<f64>,
    format: Option<Format>,
) -> Result<Outcome, Failure> {
    let pair = pair(cfg, p, q)?;
    let defaults = ChainConfig::default();
    let tol = positive("--tol", cfg.get_or(tol, "tol", defaults.tolerance)?)?;
    let format = cfg.get_or(format, "format", Format::Text)?;
    let config = ChainConfig {
        tolerance: tol,
        // the addition formula is a nested integral and is held to a looser bound
        addition_tolerance: tol * defaults.addition_tolerance / defaults.tolerance,
        spec: quadrature(cfg, None)?,
        ..defaults
    };
    let report = verify_proof_chain(&pair, &config)?;

    let mut rec = OutputRecord::new("verify chain");
    rec.input("p", pair.p())
        .input("q", pair.q())
        .input("tol", tol);
    for e in &report.entries {
        rec.output(&format!("{}.lhs", e.id), e.lhs)
            .output(&format!("{}.rhs", e.id), e.rhs)
            .output(&format!("{}.abs_diff", e.id), e.abs_diff)
            .output(&format!("{}.tolerance", e.id), e.tolerance)
            .output(&format!("{}.pass", e.id), e.pass);
        if let Some(d) = &e.diagnostic {
            rec.output(&format!("{}.diagnostic", e.id), d.as_str());
        }
    }
    let pass = report.all_pass();
    rec.pass = Some(pass);
    Ok(verdict(rec, format, pass))
}

fn hall_input(
    cfg: &Config,
    lambda_f: Option<f64>,
    lambda_p: Option<f64>,
) -> Result<HallInput, Failure> {
    let lf = positive("--lambda-f", cfg.require(lambda_f, "lambda-f")?)?;
    let lp = positive("--lambda-p", cfg.require(lambda_p, "lambda-p")?)?;
    HallInput::new(lf, lp).map_err(Failure::from)
}

pub fn cmd_verify_hall(
    cfg: &Config,
    lambda_f: Option<f64>,
    lambda_p: Option<f64>,
    tol: Option<f64>,
    format: Option<Format>,
) -> Result<Outcome, Failure> {
    let input = hall_input(cfg, lambda_f, lambda_p)?;
    let tol = positive("--tol", cfg.get_or(tol, "tol", 1e-8)?)?;
    let format = cfg.get_or(format, "format", Format::Text)?;
    let spec = quadrature(cfg, None)?;
    let report = verify_device_symmetry(&input, tol, &spec)?;

    let mut rec = OutputRecord::new("verify hall-symmetry");
    rec.input("lambda_f", input.lambda_f())
        .input("lambda_p", input.lambda_p())
        .input("tol", tol);
    rec.output("normalized", report.a_pq)
        .output("normalized_substituted", report.a_pcqc)
        .output("abs_diff", report.abs_diff)
        .output("tolerance", report.tolerance);
    rec.bound("abs_diff", report.error_bound);
    rec.pass = Some(report.pass);
    Ok(verdict(rec, format, report.pass))
}

pub fn cmd_hall_g(
    cfg: &Config,
    lambda_f: Option<f64>,
    lambda_p: Option<f64>,
    tol: Option<f64>,
    format: Option<Format>,
) -> Result<Outcome, Failure> {
    let input = hall_input(cfg, lambda_f, lambda_p)?;
    let tol = positive(
        "--tol",
        cfg.get_or(tol, "tol", QuadratureSpec::default().abs_tol)?,
    )?;
    let format = cfg.get_or(format, "format", Format::Text)?;
    let spec = quadrature(cfg, Some(tol))?;
    let r = hall_g(&input, &spec)?;

    let mut rec = OutputRecord::new("hall g");
    rec.input("lambda_f", input.lambda_f())
        .input("lambda_p", input.lambda_p())
        .input("tol", tol);
    rec.output("f", input.f().k())
        .output("p", input.p().k())
        .output("g", r.g)
        .output("normalized", r.normalized)
        .output("converged", r.converged);
    rec.bound("g", r.error_bound);
    Ok(Outcome {
        stdout: rec.render(format),
        ok: r.converged,
        note: (!r.converged).then(|| "quadrature did not converge".to_string()),
    })
}

fn verdict(rec: OutputRecord, format: Format, pass: bool) -> Outcome {
    Outcome {
        stdout: rec.render(format),
        ok: pass,
        note: (!pass).then(|| "verification failed".to_string()),
    }
}

pub fn cmd_sweep(
    cfg: &Config,
    p_steps: Option<usize>,
    q_steps: Option<usize>,
    out: Option<PathBuf>,
    tol: Option<f64>,
    format: Option<SweepFormat>,
) -> Result<Outcome, Failure> {
    let steps = |flag: &str, key: &str, v: Option<usize>| -> Result<Vec<f64>, Failure> {
        let n = cfg.get_or(v, key, 9)?;
        if n < 2 {
            return Err(Failure::Usage(format!(
                "{flag} must be at least 2, got {n}"
            )));
        }
        open_grid(n).map_err(Failure::from)
    };
    let ps = steps("--p-steps", "p-steps", p_steps)?;
    let qs = steps("--q-steps", "q-steps", q_steps)?;
    let tol = positive("--tol", cfg.get_or(tol, "tol", 1e-9)?)?;
    let out = cfg.pick(out, "out")?;
    let format = cfg.get_or(format, "format", SweepFormat::Csv)?;
    let spec = quadrature(cfg, None)?;

    // fail on an unwritable path before doing any work
    let file = match &out {
        Some(path) => Some(create(path)?),
        None => None,
    };

    let rows = invariance_grid(&ps, &qs, tol, &spec)?;
    let failures = rows.iter().filter(|(_, r)| !r.pass).count();
    let body = match format {
        SweepFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(SWEEP_HEADER).map_err(io_failure)?;
            for (pair, r) in &rows {
                w.write_record([
                    real(pair.p()),
                    real(pair.q()),
                    real(pair.p_comp()),
                    real(pair.q_comp()),
                    real(r.a_pq),
                    real(r.a_pcqc),
                    real(r.abs_diff),
                    r.pass.to_string(),
                ])
                .map_err(io_failure)?;
            }
            w.into_inner().map_err(|e| io_failure(e.into_error()))?
        }
        SweepFormat::Json => {
            let num = |x: f64| {
                if x.is_finite() {
                    Json::Number(
                        Number::from_str(&real(x)).expect("formatted real is a JSON number"),
                    )
                } else {
                    Json::Null
                }
            };
            let list = rows
                .iter()
                .map(|(pair, r)| {
                    let values = [
                        num(pair.p()),
                        num(pair.q()),
                        num(pair.p_comp()),
                        num(pair.q_comp()),
                        num(r.a_pq),
                        num(r.a_pcqc),
                        num(r.abs_diff),
                        Json::Bool(r.pass),
                    ];
                    let row: Map<String, Json> = SWEEP_HEADER
                        .iter()
                        .map(|k| k.to_string())
                        .zip(values)
                        .collect();
                    Json::Object(row)
                })
                .collect();
            let mut s =
                serde_json::to_string_pretty(&Json::Array(list)).expect("JSON tree serialises");
            s.push('\n');
            s.into_bytes()
        }
    };

    let note = (failures > 0).then(|| format!("{failures} of {} grid points failed", rows.len()));
    match (out, file) {
        (Some(path), Some(mut f)) => {
            f.write_all(&body).map_err(|e| {
                Failure::Usage(format!("--out: cannot write {}: {e}", path.display()))
            })?;
            Ok(Outcome {
                stdout: format!(
                    "wrote {} rows to {} ({} pass)\n",
                    rows.len(),
                    path.display(),
                    rows.len() - failures
                ),
                ok: failures == 0,
                note,
            })
        }
        _ => Ok(Outcome {
            stdout: String::from_utf8(body).expect("output is UTF-8"),
            ok: failures == 0,
            note,
        }),
    }
}

fn create(path: &Path) -> Result<File, Failure> {
    File::create(path)
        .map_err(|e| Failure::Usage(format!("--out: cannot create {}: {e}", path.display())))
}

fn io_failure(e: impl std::fmt::Display) -> Failure {
    Failure::Numerical(format!("cannot assemble output: {e}"))
}
