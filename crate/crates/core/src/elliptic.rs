//! Complete and incomplete elliptic integrals of the first kind.
//!
//! # Argument convention
//!
//! Every function here takes the **modulus** `k`, never the parameter
//! `m = k²`. An expression written `K(√t)` maps to
//! `complete_k(Modulus::new(t.sqrt()))`, or better, when `1 - t` is known
//! accurately, to `Modulus::with_complement(t.sqrt(), (1.0 - t).sqrt())`.
//!
//! [`Modulus`] stores `k` together with its complement `k' = √(1-k²)`. The
//! complete integral is evaluated as `K(k) = π / (2·agm(1, k'))`, so a modulus
//! close to 1 keeps full relative accuracy as long as `k'` is supplied
//! directly.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{domain, Error, Result};
use crate::quad::{self, Estimate, QuadratureSpec};

/// Elliptic modulus with its complement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Modulus {
    k: f64,
    kc: f64,
}

impl Modulus {
    /// `0 <= k <= 1`. The complement is computed as `√((1-k)(1+k))`.
    pub fn new(k: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&k) {
            return Err(domain("k", k, "0 <= k <= 1"));
        }
        Ok(Self {
            k,
            kc: ((1.0 - k) * (1.0 + k)).sqrt(),
        })
    }

    /// Modulus from a known pair `(k, k')`; `k² + k'² = 1` is the caller's
    /// responsibility and is only checked loosely.
    pub fn with_complement(k: f64, kc: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&k) {
            return Err(domain("k", k, "0 <= k <= 1"));
        }
        if !(0.0..=1.0).contains(&kc) {
            return Err(domain("k'", kc, "0 <= k' <= 1"));
        }
        if (k * k + kc * kc - 1.0).abs() > 1e-12 {
            return Err(domain("k² + k'²", k * k + kc * kc, "k² + k'² = 1"));
        }
        Ok(Self { k, kc })
    }

    /// Modulus whose complement is `kc`.
    pub fn from_complement(kc: f64) -> Result<Self> {
        Ok(Self::new(kc)?.complement())
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// `k' = √(1 - k²)`.
    pub fn kc(&self) -> f64 {
        self.kc
    }

    /// The parameter `m = k²`.
    pub fn parameter(&self) -> f64 {
        self.k * self.k
    }

    /// Swaps `k` and `k'`.
    pub fn complement(&self) -> Self {
        Self {
            k: self.kc,
            kc: self.k,
        }
    }
}

/// Arithmetic-geometric mean of two positive numbers.
pub fn agm(a0: f64, b0: f64) -> Result<f64> {
    if !(a0 > 0.0 && a0.is_finite()) {
        return Err(domain("a0", a0, "a0 > 0"));
    }
    if !(b0 > 0.0 && b0.is_finite()) {
        return Err(domain("b0", b0, "b0 > 0"));
    }
    let (mut a, mut b) = (a0, b0);
    // Quadratic convergence: even agm(1, 1e-300) needs fewer than 20 steps.
    for _ in 0..64 {
        if (a - b).abs() <= 4.0 * f64::EPSILON * a {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    Ok(0.5 * (a + b))
}

/// Complete elliptic integral of the first kind, `K(k) = ∫_0^{π/2} dθ/√(1 - k² sin²θ)`.
pub fn complete_k(k: Modulus) -> Result<f64> {
    if k.kc <= 0.0 {
        return Err(domain("k", k.k, "0 <= k < 1 (K diverges at k = 1)"));
    }
    Ok(PI / (2.0 * agm(1.0, k.kc)?))
}

/// Complementary integral `K'(k) = K(√(1 - k²))`.
pub fn complete_k_comp(k: Modulus) -> Result<f64> {
    if k.k <= 0.0 {
        return Err(domain("k", k.k, "0 < k <= 1 (K' diverges at k = 0)"));
    }
    Ok(PI / (2.0 * agm(1.0, k.k)?))
}

/// Incomplete integral `F(φ, k) = ∫_0^φ dθ/√(1 - k² sin²θ)` at default tolerances.
pub fn incomplete_f(phi: f64, k: Modulus) -> Result<f64> {
    incomplete_f_with(phi, k, &QuadratureSpec::default()).map(|e| e.value)
}

/// [`incomplete_f`] with an explicit quadrature spec, returning the full estimate.
pub fn incomplete_f_with(phi: f64, k: Modulus, spec: &QuadratureSpec) -> Result<Estimate> {
    if !(0.0..=FRAC_PI_2).contains(&phi) {
        return Err(domain("phi", phi, "0 <= phi <= π/2"));
    }
    if k.kc <= 0.0 {
        return Err(domain("k", k.k, "0 <= k < 1"));
    }
    if phi == 0.0 {
        return Ok(Estimate::exact(0.0));
    }
    let m = k.parameter();
    quad::integrate(|t| 1.0 / (1.0 - m * t.sin().powi(2)).sqrt(), 0.0, phi, spec)
}

/// Parameter of the algebraic kernel `Y_λ(X) = √(X(1-X)(1-λX))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YKernelParams {
    lambda: f64,
}

impl YKernelParams {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(domain("lambda", lambda, "0 < lambda < 1"));
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `Y_λ` at a node where `1 - X` is known separately.
    pub(crate) fn eval_split(&self, x: f64, one_minus_x: f64) -> f64 {
        (x * one_minus_x * (1.0 - self.lambda * x)).sqrt()
    }
}

/// `Y_λ(X) = √(X(1-X)(1-λX))` for `0 < X < 1`.
pub fn y_kernel(x: f64, params: YKernelParams) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(domain("X", x, "0 < X < 1"));
    }
    Ok(params.eval_split(x, 1.0 - x))
}

/// `½∫_0^1 dX / Y_λ(X)`, which equals `K(√λ)`.
pub fn k_from_y_kernel(params: YKernelParams, spec: &QuadratureSpec) -> Result<Estimate> {
    let est = quad::integrate_points(|pt| 1.0 / params.eval_split(pt.x, pt.to_b), 0.0, 1.0, spec)?;
    Ok(est.scale(0.5))
}

/// Both sides of the descending Landen transformation
/// `K(√s) = K(2s^{1/4}/(1+√s)) / (1+√s)`, each evaluated independently.
pub fn landen_descend(s: f64) -> Result<(f64, f64)> {
    if !(s > 0.0 && s < 1.0) {
        return Err(domain("s", s, "0 < s < 1"));
    }
    let root = s.sqrt();
    let lhs = complete_k(Modulus::with_complement(root, (1.0 - s).sqrt())?)?;
    let k2 = 2.0 * root.sqrt() / (1.0 + root);
    // complement of 2u/(1+u²) is (1-u²)/(1+u²), free of cancellation near s = 1
    let k2c = (1.0 - root) / (1.0 + root);
    let rhs = complete_k(Modulus::with_complement(k2.min(1.0), k2c)?)? / (1.0 + root);
    Ok((lhs, rhs))
}

/// `2K(f)/K'(f)`, strictly increasing in `f` from 0 to ∞.
pub fn lambda_ratio(f: Modulus) -> Result<f64> {
    Ok(2.0 * complete_k(f)? / complete_k_comp(f)?)
}

/// Solves `2K(f)/K'(f) = lambda_target` for the modulus `f`.
///
/// Uses `ratio(f') = 4 / ratio(f)` to reduce every target to `λ <= 2`, i.e.
/// `f <= 1/√2`, then bisects on `ln f`. Targets above 2 return the
/// complement of the reduced root, so `f` near 1 keeps an exact `k'`.
///
/// Since `λ ≈ π / ln(4/f)` for small `f`, targets below about `0.0045` (or
/// above about `880`) need a modulus under `1e-300` and are reported as
/// [`Error::Accuracy`].
pub fn invert_lambda_ratio(lambda_target: f64) -> Result<Modulus> {
    if !(lambda_target > 0.0 && lambda_target.is_finite()) {
        return Err(domain("lambda", lambda_target, "0 < lambda < ∞"));
    }
    if lambda_target == 2.0 {
        return Modulus::new(std::f64::consts::FRAC_1_SQRT_2);
    }
    let (target, reflect) = if lambda_target > 2.0 {
        (4.0 / lambda_target, true)
    } else {
        (lambda_target, false)
    };

    let ratio_at = |ln_f: f64| -> Result<f64> { lambda_ratio(Modulus::new(ln_f.exp())?) };
    let mut lo = LN_F_FLOOR;
    let mut hi = std::f64::consts::FRAC_1_SQRT_2.ln();
    if target < ratio_at(lo)? {
        return Err(Error::Accuracy {
            what: "lambda-ratio inversion (target outside representable range)",
            limit: 0,
        });
    }
    for _ in 0..BISECTION_CAP {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if ratio_at(mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let root = Modulus::new((0.5 * (lo + hi)).exp())?;
    Ok(if reflect { root.complement() } else { root })
}

/// ln of the smallest modulus the inversion brackets (about 1e-300).
const LN_F_FLOOR: f64 = -690.0;
const BISECTION_CAP: usize = 200;
