//! The double integral
//!
//! ```text
//! A(p, q) = ∫_0^π dx ∫_0^x dy  1 / (√(1 - p cos x) · √(1 + q cos y))
//! ```
//!
//! evaluated four independent ways, its invariance under
//! `(p, q) -> (√(1-p²), √(1-q²))`, and a numerical check of every identity
//! used to establish that invariance.
//!
//! The four routes are:
//!
//! 1. [`a_direct`]: the defining iterated integral over the triangle.
//! 2. [`a_theta_form`]: half-angle form
//!    `4/√((1-p)(1+q)) ∫_0^{π/2} dθ/√(1 - α sin²θ) F(θ, √β)` with
//!    `α = 2p/(p-1)`, `β = 2q/(1+q)`.
//! 3. [`a_lemma_reduced`]: the same prefactor times a pair of single
//!    integrals of products of complete integrals (see [`lemma_rhs`]).
//! 4. [`a_final_form`]: two single integrals weighted by `P_{-1/4}`, whose
//!    two addends trade places under the complement map.

use std::cell::Cell;
use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use rayon::prelude::*;

use crate::elliptic::{self, complete_k, Modulus, YKernelParams};
use crate::error::{domain, Result};
use crate::legendre::{self, LegendreArg};
use crate::quad::{self, Estimate, Point, QuadratureSpec, Sample};
use crate::report::{ChainEntry, ChainReport, InvarianceReport};

/// `(p, q) ∈ (0,1)²` together with `p' = √(1-p²)`, `q' = √(1-q²)`.
///
/// The complements are computed once; [`ParamPair::complement`] swaps the
/// stored values, so applying it twice is exactly the identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamPair {
    p: f64,
    q: f64,
    p_comp: f64,
    q_comp: f64,
}

impl ParamPair {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(domain("p", p, "0 < p < 1"));
        }
        if !(q > 0.0 && q < 1.0) {
            return Err(domain("q", q, "0 < q < 1"));
        }
        Ok(Self {
            p,
            q,
            p_comp: ((1.0 - p) * (1.0 + p)).sqrt(),
            q_comp: ((1.0 - q) * (1.0 + q)).sqrt(),
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }
    pub fn q(&self) -> f64 {
        self.q
    }
    pub fn p_comp(&self) -> f64 {
        self.p_comp
    }
    pub fn q_comp(&self) -> f64 {
        self.q_comp
    }

    /// `(p', q')` as a pair whose complement is `(p, q)`.
    pub fn complement(&self) -> Self {
        Self {
            p: self.p_comp,
            q: self.q_comp,
            p_comp: self.p,
            q_comp: self.q,
        }
    }

    /// `p' = p` and `q' = q` to within a few ulps.
    pub fn is_fixed_point(&self) -> bool {
        let close = |a: f64, b: f64| (a - b).abs() <= 4.0 * f64::EPSILON * a.max(b);
        close(self.p, self.p_comp) && close(self.q, self.q_comp)
    }

    /// `4 / √((1-p)(1+q))`.
    fn prefactor(&self) -> f64 {
        4.0 / ((1.0 - self.p) * (1.0 + self.q)).sqrt()
    }
}

/// `(α, β)` with `β ∈ (0,1)` and `α < 1`; `α` may be negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaParams {
    alpha: f64,
    beta: f64,
}

impl LemmaParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta < 1.0) {
            return Err(domain("beta", beta, "0 < beta < 1"));
        }
        if !(alpha < 1.0 && alpha.is_finite()) {
            return Err(domain("alpha", alpha, "alpha < 1"));
        }
        Ok(Self { alpha, beta })
    }

    /// `α = 2p/(p-1) < 0`, `β = 2q/(1+q)`.
    pub fn from_pair(pair: &ParamPair) -> Self {
        Self {
            alpha: 2.0 * pair.p / (pair.p - 1.0),
            beta: 2.0 * pair.q / (1.0 + pair.q),
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    Direct,
    ThetaForm,
    LemmaReduced,
    FinalForm,
}

impl Route {
    pub const ALL: [Route; 4] = [
        Route::Direct,
        Route::ThetaForm,
        Route::LemmaReduced,
        Route::FinalForm,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Route::Direct => "direct",
            Route::ThetaForm => "theta",
            Route::LemmaReduced => "lemma",
            Route::FinalForm => "final",
        }
    }

    pub fn evaluate(&self, pair: &ParamPair, spec: &QuadratureSpec) -> Result<Estimate> {
        match self {
            Route::Direct => a_direct(pair, spec),
            Route::ThetaForm => a_theta_form(pair, spec),
            Route::LemmaReduced => a_lemma_reduced(pair, spec),
            Route::FinalForm => a_final_form(pair, spec),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RouteReport {
    pub route: Route,
    pub value: f64,
    pub error_bound: f64,
    pub converged: bool,
}

/// Evaluates all four routes.
pub fn route_reports(pair: &ParamPair, spec: &QuadratureSpec) -> Result<Vec<RouteReport>> {
    Route::ALL
        .iter()
        .map(|route| {
            let est = route.evaluate(pair, spec)?;
            Ok(RouteReport {
                route: *route,
                value: est.value,
                error_bound: est.error_bound,
                converged: est.converged,
            })
        })
        .collect()
}

/// Largest pairwise difference among the route values, divided by the smallest value.
pub fn relative_spread(reports: &[RouteReport]) -> f64 {
    let max = reports.iter().map(|r| r.value).fold(f64::MIN, f64::max);
    let min = reports.iter().map(|r| r.value).fold(f64::MAX, f64::min);
    (max - min) / min.abs()
}

// ---------------------------------------------------------------------------
// routes

/// Route 1: the defining iterated integral.
pub fn a_direct(pair: &ParamPair, spec: &QuadratureSpec) -> Result<Estimate> {
    let (p, q) = (pair.p, pair.q);
    // 1 - p cos x = (1-p) + 2p sin²(x/2),  1 + q cos y = (1-q) + 2q cos²(y/2)
    let (one_minus_p, one_minus_q) = (1.0 - p, 1.0 - q);
    quad::integrate_triangular(
        |x, y| {
            let outer = one_minus_p + 2.0 * p * (0.5 * x).sin().powi(2);
            let inner = one_minus_q + 2.0 * q * (0.5 * y).cos().powi(2);
            1.0 / (outer * inner).sqrt()
        },
        PI,
        spec,
    )
}

/// Route 2: the half-angle form with the inner integral as `F(θ, √β)`.
pub fn a_theta_form(pair: &ParamPair, spec: &QuadratureSpec) -> Result<Estimate> {
    let est = lemma_lhs(LemmaParams::from_pair(pair), spec)?;
    Ok(est.scale(pair.prefactor()))
}

/// `∫_0^{π/2} dθ/√(1 - α sin²θ) ∫_0^θ dφ/√(1 - β sin²φ)`.
pub fn lemma_lhs(params: LemmaParams, spec: &QuadratureSpec) -> Result<Estimate> {
    let LemmaParams { alpha, beta } = params;
    let k = Modulus::with_complement(beta.sqrt(), (1.0 - beta).sqrt())?;
    let inner_spec = spec.tightened(quad::INNER_TIGHTENING);
    let inner_ok = Cell::new(true);
    let est = quad::integrate_uncertain(
        |pt| {
            let f = elliptic::incomplete_f_with(pt.x, k, &inner_spec)?;
            if !f.converged {
                inner_ok.set(false);
            }
            let weight = 1.0 / (1.0 - alpha * pt.x.sin().powi(2)).sqrt();
            Ok(Sample {
                value: weight * f.value,
                uncertainty: weight * f.error_bound,
            })
        },
        0.0,
        FRAC_PI_2,
        spec,
    )?;
    Ok(Estimate {
        converged: est.converged && inner_ok.get(),
        ..est
    })
}

/// Route 3: the prefactor times [`lemma_rhs`] at `α = 2p/(p-1)`, `β = 2q/(1+q)`.
pub fn a_lemma_reduced(pair: &ParamPair, spec: &QuadratureSpec) -> Result<Estimate> {
    let (below, above) = lemma_pieces(LemmaParams::from_pair(pair), spec)?;
    Ok((below + above).scale(pair.prefactor()))
}

/// Right side of the single-integral reduction:
///
/// ```text
/// (1/π) ∫_0^β K(√(1-β)) K(√t) / ((√(1-t) + √(1-α)) √(1-t)) dt
///   + (1/π) ∫_β^1 K(√β) K(√(1-t)) / ((√(1-t) + √(1-α)) √(1-t)) dt
/// ```
///
/// Evaluated in real arithmetic for any `α < 1`, including the negative
/// values used by route 3.
pub fn lemma_rhs(params: LemmaParams, spec: &QuadratureSpec) -> Result<Estimate> {
    let (below, above) = lemma_pieces(params, spec)?;
    Ok(below + above)
}

/// The two addends of [`lemma_rhs`], split at `t = β`.
pub fn lemma_pieces(params: LemmaParams, spec: &QuadratureSpec) -> Result<(Estimate, Estimate)> {
    let LemmaParams { alpha, beta } = params;
    let root_alpha = (1.0 - alpha).sqrt();
    let one_minus_beta = 1.0 - beta;
    let k_beta = complete_k(Modulus::with_complement(
        beta.sqrt(),
        one_minus_beta.sqrt(),
    )?)?;
    let k_beta_comp = complete_k(Modulus::with_complement(
        one_minus_beta.sqrt(),
        beta.sqrt(),
    )?)?;

    let below = quad::integrate_uncertain(
        |pt| {
            let one_minus_t = one_minus_beta + pt.to_b;
            let r = one_minus_t.sqrt();
            let k = complete_k(Modulus::with_complement(pt.x.sqrt(), r)?)?;
            Ok(Sample::from(k_beta_comp * k / ((r + root_alpha) * r)))
        },
        0.0,
        beta,
        spec,
    )?;
    let above = quad::integrate_uncertain(
        |pt| {
            let r = pt.to_b.sqrt();
            let k = complete_k(Modulus::with_complement(r, pt.x.sqrt())?)?;
            Ok(Sample::from(k_beta * k / ((r + root_alpha) * r)))
        },
        beta,
        1.0,
        spec,
    )?;
    Ok((below.scale(1.0 / PI), above.scale(1.0 / PI)))
}

/// Route 4: the `P_{-1/4}`-weighted representation
///
/// ```text
/// ∫_0^{(1-q')/(1+q')} 2√2 P(1-2q'²) K(√s) / ((1-√s)√(1-p) + (1+√s)√(1+p)) ds/√s
///   + (the same with q' -> q, p -> p')
/// ```
pub fn a_final_form(pair: &ParamPair, spec: &QuadratureSpec) -> Result<Estimate> {
    let first = final_addend((pair.p, pair.p_comp), (pair.q_comp, pair.q), spec)?;
    let second = final_addend((pair.p_comp, pair.p), (pair.q, pair.q_comp), spec)?;
    Ok(first + second)
}

/// One addend of [`a_final_form`]. Each argument is a `(value, complement)`
/// pair; `upper` plays the role of `q'` in the first addend.
fn final_addend(
    (p, p_comp): (f64, f64),
    (upper, upper_comp): (f64, f64),
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let weight = 2.0 * SQRT_2 * legendre::p_quarter(LegendreArg::new(upper * upper)?)?;
    // 1 - u = u'²/(1+u), likewise √(1-p) = p'/√(1+p)
    let s_max = upper_comp * upper_comp / ((1.0 + upper) * (1.0 + upper));
    let root_minus = p_comp / (1.0 + p).sqrt();
    let root_plus = (1.0 + p).sqrt();
    quad::integrate_uncertain(
        |pt: Point| {
            let s = pt.x;
            let rs = s.sqrt();
            let k = complete_k(Modulus::with_complement(rs, (1.0 - s).sqrt())?)?;
            let denom = (1.0 - rs) * root_minus + (1.0 + rs) * root_plus;
            Ok(Sample::from(weight * k / (denom * rs)))
        },
        0.0,
        s_max,
        spec,
    )
}

// ---------------------------------------------------------------------------
// invariance

/// Compares `A(p, q)` and `A(p', q')` through route 1.
///
/// `rel_tol` is relative to `A(p, q)`; the report carries the resulting
/// absolute tolerance. At the fixed point `p = p' = q = q' = 1/√2` a single
/// evaluation is made and the difference is exactly zero.
pub fn verify_invariance(
    pair: &ParamPair,
    rel_tol: f64,
    spec: &QuadratureSpec,
) -> Result<InvarianceReport> {
    if !(rel_tol > 0.0) {
        return Err(domain("tolerance", rel_tol, "tolerance > 0"));
    }
    let a = a_direct(pair, spec)?;
    if pair.is_fixed_point() {
        return Ok(InvarianceReport::new(
            a.value,
            a.value,
            rel_tol * a.value.abs(),
            a.error_bound,
        ));
    }
    let b = a_direct(&pair.complement(), spec)?;
    Ok(InvarianceReport::new(
        a.value,
        b.value,
        rel_tol * a.value.abs(),
        a.error_bound + b.error_bound,
    ))
}

/// `linspace(0.1, 0.9, steps)`.
pub fn open_grid(steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(domain("steps", steps as f64, "steps >= 2"));
    }
    let step = 0.8 / (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            if i + 1 == steps {
                0.9
            } else {
                0.1 + step * i as f64
            }
        })
        .collect())
}

/// Invariance verdicts for every `(p, q)` of the product grid, p-major.
///
/// Points are evaluated in parallel; the output order depends only on the grid.
pub fn invariance_grid(
    ps: &[f64],
    qs: &[f64],
    rel_tol: f64,
    spec: &QuadratureSpec,
) -> Result<Vec<(ParamPair, InvarianceReport)>> {
    let pairs = ps
        .iter()
        .flat_map(|&p| qs.iter().map(move |&q| ParamPair::new(p, q)))
        .collect::<Result<Vec<_>>>()?;
    pairs
        .par_iter()
        .map(|pair| Ok((*pair, verify_invariance(pair, rel_tol, spec)?)))
        .collect()
}

// ---------------------------------------------------------------------------
// proof chain

/// Settings for [`verify_proof_chain`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainConfig {
    /// Number of `U` values at which the addition formula is checked.
    pub samples: usize,
    /// Relative tolerance for every entry except the addition formula.
    pub tolerance: f64,
    /// Relative tolerance for the addition-formula entries.
    pub addition_tolerance: f64,
    pub spec: QuadratureSpec,
}

impl Default for ChainConfig {
    fn default() -> Self {
        Self {
            samples: 5,
            tolerance: 1e-9,
            addition_tolerance: 1e-8,
            spec: QuadratureSpec::default(),
        }
    }
}

/// `(α, β)` with `0 < β < α < 1` for checking the addition formula and the
/// closed-form logarithmic integrals: `β = 2q/(1+q)`,
/// `α = max(2p/(1+p), β + 0.1)`, falling back to `(0.7, 0.3)` when that
/// leaves `(0, 1)`.
pub fn in_range_lemma_params(pair: &ParamPair) -> LemmaParams {
    let beta = 2.0 * pair.q / (1.0 + pair.q);
    let alpha = (2.0 * pair.p / (1.0 + pair.p)).max(beta + 0.1);
    if beta > 0.0 && beta < alpha && alpha < 1.0 {
        LemmaParams { alpha, beta }
    } else {
        LemmaParams {
            alpha: 0.7,
            beta: 0.3,
        }
    }
}

/// Checks, at the given pair, each identity on the way from the defining
/// integral to the manifestly symmetric representation.
///
/// Entries, in order:
/// `K-integral-repn/beta`, `K-integral-repn/1-beta`,
/// `legendre-addition/U=…` (one per sample), `log-integral-1`,
/// `log-integral-2`, `ramanujan-1`, `ramanujan-2`, `landen`,
/// `sqrt-split/+`, `sqrt-split/-`, `route-agreement`.
///
/// A computation that fails produces a failed entry with a diagnostic
/// rather than aborting the report.
pub fn verify_proof_chain(pair: &ParamPair, config: &ChainConfig) -> Result<ChainReport> {
    if config.samples < 1 {
        return Err(domain("samples", config.samples as f64, "samples >= 1"));
    }
    let spec = &config.spec;
    let tol = config.tolerance;
    let lemma = LemmaParams::from_pair(pair);
    let in_range = in_range_lemma_params(pair);
    let mut entries = Vec::new();

    let mut push = |id: String, result: Result<ChainEntry>| {
        entries.push(result.unwrap_or_else(|e| ChainEntry::failed(id, e.to_string())));
    };

    for (label, lambda) in [("beta", lemma.beta), ("1-beta", 1.0 - lemma.beta)] {
        let id = format!("K-integral-repn/{label}");
        push(
            id.clone(),
            (|| {
                let params = YKernelParams::new(lambda)?;
                let lhs = elliptic::k_from_y_kernel(params, spec)?.value;
                let rhs = complete_k(Modulus::new(lambda.sqrt())?)?;
                Ok(ChainEntry::compare(id, lhs, rhs, tol))
            })(),
        );
    }

    for i in 1..=config.samples {
        let u = i as f64 / (config.samples + 1) as f64;
        let id = format!("legendre-addition/U={u:.6}");
        push(
            id.clone(),
            addition_formula(in_range, u, spec)
                .map(|(l, r)| ChainEntry::compare(id, l, r, config.addition_tolerance)),
        );
    }

    push(
        "log-integral-1".into(),
        log_integral_1(in_range.alpha, spec)
            .map(|(l, r)| ChainEntry::compare("log-integral-1", l, r, tol)),
    );
    push(
        "log-integral-2".into(),
        log_integral_2(in_range.alpha, spec)
            .map(|(l, r)| ChainEntry::compare("log-integral-2", l, r, tol)),
    );

    match legendre::ramanujan_check(pair.q, tol) {
        Ok(found) => entries.extend(found),
        Err(e) => {
            entries.push(ChainEntry::failed("ramanujan-1", e.to_string()));
            entries.push(ChainEntry::failed("ramanujan-2", e.to_string()));
        }
    }

    let mut push = |id: String, result: Result<ChainEntry>| {
        entries.push(result.unwrap_or_else(|e| ChainEntry::failed(id, e.to_string())));
    };

    let one_minus_qc = pair.q * pair.q / (1.0 + pair.q_comp);
    let s = one_minus_qc / (1.0 + pair.q_comp);
    push(
        "landen".into(),
        elliptic::landen_descend(s).map(|(l, r)| ChainEntry::compare("landen", l, r, tol)),
    );

    let [plus, minus] = sqrt_split(pair.p)?;
    push(
        "sqrt-split/+".into(),
        Ok(ChainEntry::compare("sqrt-split/+", plus.0, plus.1, tol)),
    );
    push(
        "sqrt-split/-".into(),
        Ok(ChainEntry::compare("sqrt-split/-", minus.0, minus.1, tol)),
    );

    push(
        "route-agreement".into(),
        route_reports(pair, spec).map(|reports| {
            let max = reports.iter().map(|r| r.value).fold(f64::MIN, f64::max);
            let min = reports.iter().map(|r| r.value).fold(f64::MAX, f64::min);
            ChainEntry::compare("route-agreement", max, min, tol)
        }),
    );

    Ok(ChainReport { entries })
}

/// Both sides of the Legendre-type addition formula at `U`, for `0 < β < α < 1`:
///
/// ```text
/// π/Y_α(U) ∫_U^1 du/Y_β(u)
///   = ∫_0^1 2α K(√(1-β)) V dV / ((1 - αUV) Y_α(V))
///   + ∫_0^1 2α K(√β) V dV / ((1 - (1-αU)V) Y_{1-α}(V))
///   - ∫_{(1-α)/(1-β)}^1 dX/Y_{1-β}(X) ∫_{(1-(1-β)X)/α}^1 αV dV / ((1 - αUV) Y_α(V))
/// ```
pub fn addition_formula(params: LemmaParams, u: f64, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    let LemmaParams { alpha, beta } = params;
    if !(0.0 < beta && beta < alpha && alpha < 1.0) {
        return Err(domain("alpha", alpha, "0 < beta < alpha < 1"));
    }
    if !(u > 0.0 && u < 1.0) {
        return Err(domain("U", u, "0 < U < 1"));
    }
    let y_alpha = YKernelParams::new(alpha)?;
    let y_beta = YKernelParams::new(beta)?;
    let y_alpha_c = YKernelParams::new(1.0 - alpha)?;
    let y_beta_c = YKernelParams::new(1.0 - beta)?;
    let k_beta = complete_k(Modulus::new(beta.sqrt())?)?;
    let k_beta_c = complete_k(Modulus::new((1.0 - beta).sqrt())?)?;

    let tail = quad::integrate_points(|pt| 1.0 / y_beta.eval_split(pt.x, pt.to_b), u, 1.0, spec)?;
    let lhs = PI / y_alpha.eval_split(u, 1.0 - u) * tail.value;

    let first = quad::integrate_points(
        |pt| pt.x / ((1.0 - alpha * u * pt.x) * y_alpha.eval_split(pt.x, pt.to_b)),
        0.0,
        1.0,
        spec,
    )?;
    let second = quad::integrate_points(
        |pt| pt.x / ((1.0 - (1.0 - alpha * u) * pt.x) * y_alpha_c.eval_split(pt.x, pt.to_b)),
        0.0,
        1.0,
        spec,
    )?;

    // Inner variable v = 1 - V runs over (0, (1-β)(X - X0)/α).
    let x0 = (1.0 - alpha) / (1.0 - beta);
    let inner_spec = spec.tightened(quad::INNER_TIGHTENING);
    let third = quad::integrate_uncertain(
        |outer| {
            let width = (1.0 - beta) * outer.from_a / alpha;
            let inner = quad::integrate_points(
                |pt| {
                    let v = pt.x;
                    let big_v = 1.0 - v;
                    alpha * big_v / ((1.0 - alpha * u * big_v) * y_alpha.eval_split(big_v, v))
                },
                0.0,
                width,
                &inner_spec,
            )?;
            let w = 1.0 / y_beta_c.eval_split(outer.x, outer.to_b);
            Ok(Sample {
                value: w * inner.value,
                uncertainty: w * inner.error_bound,
            })
        },
        x0,
        1.0,
        spec,
    )?;

    let rhs =
        2.0 * alpha * k_beta_c * first.value + 2.0 * alpha * k_beta * second.value - third.value;
    Ok((lhs, rhs))
}

/// `∫_0^1 ln(1-αV)/Y_α(V) dV` and its closed form `K(√α) ln(1-α)`.
pub fn log_integral_1(alpha: f64, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    let y = YKernelParams::new(alpha)?;
    let lhs = quad::integrate_points(
        |pt| (-alpha * pt.x).ln_1p() / y.eval_split(pt.x, pt.to_b),
        0.0,
        1.0,
        spec,
    )?;
    let k = complete_k(Modulus::with_complement(
        alpha.sqrt(),
        (1.0 - alpha).sqrt(),
    )?)?;
    Ok((lhs.value, k * (1.0 - alpha).ln()))
}

/// `∫_0^1 ln[(1-(1-α)V)/(1-V)]/Y_{1-α}(V) dV` and its closed form
/// `π K(√α) + K(√(1-α)) ln(1-α)`.
pub fn log_integral_2(alpha: f64, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    let y = YKernelParams::new(1.0 - alpha)?;
    let lhs = quad::integrate_points(
        |pt| {
            // 1 - (1-α)V = α + (1-α)(1-V)
            let numerator = alpha + (1.0 - alpha) * pt.to_b;
            (numerator.ln() - pt.to_b.ln()) / y.eval_split(pt.x, pt.to_b)
        },
        0.0,
        1.0,
        spec,
    )?;
    let m = Modulus::with_complement(alpha.sqrt(), (1.0 - alpha).sqrt())?;
    let rhs = PI * complete_k(m)? + complete_k(m.complement())? * (1.0 - alpha).ln();
    Ok((lhs.value, rhs))
}

/// `√((1+p')/2) ± √((1-p')/2)` against `√(1±p)`, for `0 <= p <= 1`.
/// Returns `[(lhs₊, rhs₊), (lhs₋, rhs₋)]`.
pub fn sqrt_split(p: f64) -> Result<[(f64, f64); 2]> {
    if !(0.0..=1.0).contains(&p) {
        return Err(domain("p", p, "0 <= p <= 1"));
    }
    let pc = ((1.0 - p) * (1.0 + p)).sqrt();
    let a = (0.5 * (1.0 + pc)).sqrt();
    let b = (0.5 * (1.0 - pc)).sqrt();
    Ok([(a + b, (1.0 + p).sqrt()), (a - b, (1.0 - p).sqrt())])
}
