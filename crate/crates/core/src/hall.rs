//! Hall-geometry factor of a plate with resistance ratios `λ_f`, `λ_p`.
//!
//! ```text
//! G = 1/(K'(k_p) K(k_f)) ∫_0^1 dx inner(x) / (√(1-x²) √(1 - (1-k_f²)(1-x²)))
//! inner(x) = ∫_0^x dy / (√(1 - k_p² y²) √(1-y²))
//! ```
//!
//! with `k_p = (1-p)/(1+p)`, `k_f = (1-f)/(1+f)`, and the moduli recovered from
//! `λ_f = 2K(f)/K'(f)`, `λ_p = K'(p)/(2K(p))`. The normalised factor
//! `G/√(λ_f λ_p)` is unchanged by `(λ_f, λ_p) -> (2/λ_f, 2/λ_p)`.
//!
//! The inner integral is the incomplete integral `F(arcsin x, k_p)`. A
//! variant with `√(1 - k_p²(1-y²))` in place of `√(1 - k_p² y²)` is available
//! as [`HallKernel::Reflected`]; it does not have the substitution symmetry.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::elliptic::{complete_k, complete_k_comp, invert_lambda_ratio, lambda_ratio, Modulus};
use crate::error::{domain, Result};
use crate::quad::{self, QuadratureSpec};
use crate::report::InvarianceReport;

/// Inner-integrand variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HallKernel {
    /// `1/(√(1 - k²y²) √(1-y²))`, i.e. `inner(x) = F(arcsin x, k)`.
    #[default]
    Incomplete,
    /// `1/(√(1 - k²(1-y²)) √(1-y²))`.
    Reflected,
}

/// Resistance ratios and the moduli they determine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HallInput {
    lambda_f: f64,
    lambda_p: f64,
    /// `(2/λ_f, 2/λ_p)`, kept so that substituting twice is exact.
    dual: (f64, f64),
    f: Modulus,
    p: Modulus,
}

impl HallInput {
    pub fn new(lambda_f: f64, lambda_p: f64) -> Result<Self> {
        Self::with_dual(lambda_f, lambda_p, (2.0 / lambda_f, 2.0 / lambda_p))
    }

    fn with_dual(lambda_f: f64, lambda_p: f64, dual: (f64, f64)) -> Result<Self> {
        if !(lambda_f > 0.0 && lambda_f.is_finite()) {
            return Err(domain("lambda_f", lambda_f, "lambda_f > 0"));
        }
        if !(lambda_p > 0.0 && lambda_p.is_finite()) {
            return Err(domain("lambda_p", lambda_p, "lambda_p > 0"));
        }
        let f = invert_lambda_ratio(lambda_f)?;
        // K'(p)/(2K(p)) is the reciprocal of 2K(p)/K'(p)
        let p = invert_lambda_ratio(1.0 / lambda_p)?;
        Ok(Self {
            lambda_f,
            lambda_p,
            dual,
            f,
            p,
        })
    }

    pub fn lambda_f(&self) -> f64 {
        self.lambda_f
    }
    pub fn lambda_p(&self) -> f64 {
        self.lambda_p
    }
    pub fn f(&self) -> Modulus {
        self.f
    }
    pub fn p(&self) -> Modulus {
        self.p
    }

    /// The input at `(2/λ_f, 2/λ_p)`.
    pub fn substituted(&self) -> Result<Self> {
        Self::with_dual(self.dual.0, self.dual.1, (self.lambda_f, self.lambda_p))
    }

    /// `λ = 2/λ` for both ratios (i.e. both equal √2) up to a few ulps.
    pub fn is_fixed_point(&self) -> bool {
        let close = |a: f64, b: f64| (a - b).abs() <= 4.0 * f64::EPSILON * a.max(b);
        close(self.lambda_f, self.dual.0) && close(self.lambda_p, self.dual.1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HallResult {
    pub g: f64,
    /// `G / √(λ_f λ_p)`
    pub normalized: f64,
    pub error_bound: f64,
    pub converged: bool,
}

/// `(1-m)/(1+m)` as a modulus, with complement `2√m/(1+m)`.
fn landen_modulus(m: Modulus) -> Result<Modulus> {
    let one_plus = 1.0 + m.k();
    // 1 - m = m'²/(1+m)
    let k = m.kc() * m.kc() / (one_plus * one_plus);
    let kc = 2.0 * m.k().sqrt() / one_plus;
    Modulus::with_complement(k, kc)
}

/// `G` directly from the moduli `f` and `p`.
pub fn hall_g_direct(f: Modulus, p: Modulus, spec: &QuadratureSpec) -> Result<HallResult> {
    hall_g_direct_with(f, p, HallKernel::default(), spec)
}

pub fn hall_g_direct_with(
    f: Modulus,
    p: Modulus,
    kernel: HallKernel,
    spec: &QuadratureSpec,
) -> Result<HallResult> {
    for (name, m) in [("f", f), ("p", p)] {
        if !(m.k() > 0.0 && m.kc() > 0.0) {
            return Err(domain(name, m.k(), "0 < modulus < 1"));
        }
    }
    let kp = landen_modulus(p)?;
    let kf = landen_modulus(f)?;
    let (kp2, kpc2) = (kp.k() * kp.k(), kp.kc() * kp.kc());
    let (kf2, kfc2) = (kf.k() * kf.k(), kf.kc() * kf.kc());

    let integral = quad::integrate_triangular_points(
        |outer, inner| {
            let x = outer.x;
            let y = inner.x;
            let one_minus_y = outer.to_b + inner.to_b;
            let root_y = (one_minus_y * (1.0 + y)).sqrt();
            let modular = match kernel {
                HallKernel::Incomplete => 1.0 - kp2 * y * y,
                // 1 - k²(1-y²) = k'² + k²y²
                HallKernel::Reflected => kpc2 + kp2 * y * y,
            };
            let root_x = (outer.to_b * (1.0 + x)).sqrt();
            // 1 - (1-k_f²)(1-x²) = k_f² + k_f'² x²
            let outer_factor = (kf2 + kfc2 * x * x).sqrt();
            1.0 / (modular.sqrt() * root_y * root_x * outer_factor)
        },
        1.0,
        spec,
    )?;
    let scale = 1.0 / (complete_k_comp(kp)? * complete_k(kf)?);
    let g = integral.scale(scale);
    let lambda_f = lambda_ratio(f)?;
    let lambda_p = 1.0 / lambda_ratio(p)?;
    Ok(HallResult {
        g: g.value,
        normalized: g.value / (lambda_f * lambda_p).sqrt(),
        error_bound: g.error_bound,
        converged: g.converged,
    })
}

/// `G(λ_f, λ_p)` and its normalised form.
pub fn hall_g(input: &HallInput, spec: &QuadratureSpec) -> Result<HallResult> {
    let r = hall_g_direct(input.f, input.p, spec)?;
    Ok(HallResult {
        normalized: r.g / (input.lambda_f * input.lambda_p).sqrt(),
        ..r
    })
}

/// Compares `G/√(λ_f λ_p)` at `(λ_f, λ_p)` and at `(2/λ_f, 2/λ_p)`.
///
/// `rel_tol` is relative to the first normalised value. At the fixed point
/// `λ_f = λ_p = √2` only one evaluation is made.
pub fn verify_device_symmetry(
    input: &HallInput,
    rel_tol: f64,
    spec: &QuadratureSpec,
) -> Result<InvarianceReport> {
    if !(rel_tol > 0.0) {
        return Err(domain("tolerance", rel_tol, "tolerance > 0"));
    }
    let a = hall_g(input, spec)?;
    let tolerance = rel_tol * a.normalized.abs();
    if input.is_fixed_point() {
        return Ok(InvarianceReport::new(
            a.normalized,
            a.normalized,
            tolerance,
            a.error_bound,
        ));
    }
    let image = input.substituted()?;
    let b = hall_g(&image, spec)?;
    let bound = a.error_bound / (input.lambda_f * input.lambda_p).sqrt()
        + b.error_bound / (image.lambda_f * image.lambda_p).sqrt();
    Ok(InvarianceReport::new(
        a.normalized,
        b.normalized,
        tolerance,
        bound,
    ))
}

/// Modulus at which `K = K'`.
pub fn self_complementary() -> Modulus {
    Modulus::with_complement(FRAC_1_SQRT_2, FRAC_1_SQRT_2).expect("1/√2 is a valid modulus")
}
