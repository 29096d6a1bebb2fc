//! The Legendre function `P_{-1/4}(1 - 2t) = ₂F₁(1/4, 3/4; 1; t)`.
//!
//! Three evaluators are provided:
//!
//! * [`p_quarter_series`]: the Gauss series, used for `t <= 3/4`;
//! * [`p_quarter_integral`]: the Euler-type integral
//!   `(1/(√2 π)) ∫_0^1 [u(1-tu)/(1-u)]^{-1/4} du/(1-u)`, test and cross-check only;
//! * [`p_quarter_via_k`]: the bridge `P_{-1/4}(1-2q²) = 2K(√(2q/(1+q))) / (π√(1+q))`
//!   with `q = √t`, evaluated through the AGM.
//!
//! [`p_quarter`] dispatches between the series and the bridge.

use std::f64::consts::{PI, SQRT_2};

use crate::elliptic::{complete_k, Modulus};
use crate::error::{domain, Error, Result};
use crate::quad::{self, Estimate, QuadratureSpec};
use crate::report::ChainEntry;

/// Largest `t` served by the series.
pub const SERIES_LIMIT: f64 = 0.75;
pub const SERIES_TERM_CAP: usize = 10_000;

/// Hypergeometric argument `t ∈ [0, 1)`; the Legendre argument is `1 - 2t`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LegendreArg(f64);

impl LegendreArg {
    pub fn new(t: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&t) {
            return Err(domain("t", t, "0 <= t < 1"));
        }
        Ok(Self(t))
    }

    pub fn t(&self) -> f64 {
        self.0
    }

    /// The Legendre-function argument `1 - 2t`.
    pub fn argument(&self) -> f64 {
        1.0 - 2.0 * self.0
    }
}

/// `Σ (1/4)_n (3/4)_n / (n!)² tⁿ` for `t <= 3/4`.
pub fn p_quarter_series(t: LegendreArg) -> Result<f64> {
    let t = t.0;
    if t > SERIES_LIMIT {
        return Err(domain(
            "t",
            t,
            "t <= 3/4 for the series; use p_quarter_via_k beyond",
        ));
    }
    let mut sum = 1.0;
    let mut term = 1.0;
    // Term ratios are below t, so the tail after a term is at most term·t/(1-t).
    let tail_factor = t / (1.0 - t);
    for n in 0..SERIES_TERM_CAP {
        let nf = n as f64;
        term *= (nf + 0.25) * (nf + 0.75) / ((nf + 1.0) * (nf + 1.0)) * t;
        sum += term;
        if term * tail_factor <= 1e-17 * sum {
            return Ok(sum);
        }
    }
    Err(Error::Accuracy {
        what: "P_{-1/4} hypergeometric series",
        limit: SERIES_TERM_CAP,
    })
}

/// Integral representation at default tolerances.
pub fn p_quarter_integral(t: LegendreArg) -> Result<f64> {
    p_quarter_integral_with(t, &QuadratureSpec::default()).map(|e| e.value)
}

pub fn p_quarter_integral_with(t: LegendreArg, spec: &QuadratureSpec) -> Result<Estimate> {
    let t = t.0;
    let one_minus_t = 1.0 - t;
    let est = quad::integrate_points(
        |pt| {
            // 1 - t·u written so it stays accurate as u -> 1
            let one_minus_tu = one_minus_t + t * pt.to_b;
            pt.x.powf(-0.25) * one_minus_tu.powf(-0.25) * pt.to_b.powf(-0.75)
        },
        0.0,
        1.0,
        spec,
    )?;
    Ok(est.scale(1.0 / (SQRT_2 * PI)))
}

/// AGM-backed evaluation through the complete elliptic integral.
pub fn p_quarter_via_k(t: LegendreArg) -> Result<f64> {
    let q = t.0.sqrt();
    let k = Modulus::with_complement((2.0 * q / (1.0 + q)).sqrt(), ((1.0 - q) / (1.0 + q)).sqrt())?;
    Ok(2.0 * complete_k(k)? / (PI * (1.0 + q).sqrt()))
}

/// Production evaluator: series up to `t = 3/4`, the K bridge beyond.
pub fn p_quarter(t: LegendreArg) -> Result<f64> {
    if t.0 <= SERIES_LIMIT {
        p_quarter_series(t)
    } else {
        p_quarter_via_k(t)
    }
}

/// `P_{-1/4}` without the K bridge: series where it applies, otherwise the integral.
fn p_quarter_independent(t: f64) -> Result<f64> {
    let arg = LegendreArg::new(t)?;
    if t <= SERIES_LIMIT {
        p_quarter_series(arg)
    } else {
        p_quarter_integral(arg)
    }
}

/// Checks both relations between `K` and `P_{-1/4}`:
///
/// * `K(√(2q/(1+q))) = (π/2)√(1+q) P_{-1/4}(1-2q²)`
/// * `K(√((1-q)/(1+q))) = (π/2)√((1+q)/2) P_{-1/4}(2q²-1)`
///
/// `P_{-1/4}` comes from the series or the integral only, never from
/// [`p_quarter_via_k`], so the relations are tested rather than assumed.
pub fn ramanujan_check(q: f64, rel_tol: f64) -> Result<Vec<ChainEntry>> {
    if !(q > 0.0 && q < 1.0) {
        return Err(domain("q", q, "0 < q < 1"));
    }
    let big = (2.0 * q / (1.0 + q)).sqrt();
    let small = ((1.0 - q) / (1.0 + q)).sqrt();

    let lhs1 = complete_k(Modulus::with_complement(big, small)?)?;
    let rhs1 = 0.5 * PI * (1.0 + q).sqrt() * p_quarter_independent(q * q)?;

    let lhs2 = complete_k(Modulus::with_complement(small, big)?)?;
    let t2 = (1.0 - q) * (1.0 + q);
    let rhs2 = 0.5 * PI * (0.5 * (1.0 + q)).sqrt() * p_quarter_independent(t2)?;

    Ok(vec![
        ChainEntry::compare("ramanujan-1", lhs1, rhs1, rel_tol),
        ChainEntry::compare("ramanujan-2", lhs2, rhs2, rel_tol),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arg(t: f64) -> LegendreArg {
        LegendreArg::new(t).unwrap()
    }

    #[test]
    fn normalisation_at_origin() {
        assert_eq!(p_quarter_series(arg(0.0)).unwrap(), 1.0);
        assert!((p_quarter_integral(arg(0.0)).unwrap() - 1.0).abs() < 1e-13);
        assert!((p_quarter_via_k(arg(0.0)).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn series_matches_integral() {
        let s = p_quarter_series(arg(0.5)).unwrap();
        let i = p_quarter_integral(arg(0.5)).unwrap();
        assert!((s - i).abs() < 1e-12, "{s} {i}");
        let s = p_quarter_series(arg(0.75)).unwrap();
        let i = p_quarter_integral(arg(0.75)).unwrap();
        assert!((s - i).abs() < 1e-11, "{s} {i}");
    }

    #[test]
    fn bridge_matches_series_and_integral() {
        let s = p_quarter_series(arg(0.25)).unwrap();
        let b = p_quarter_via_k(arg(0.25)).unwrap();
        let k = complete_k(Modulus::new((2.0f64 / 3.0).sqrt()).unwrap()).unwrap();
        assert!((b - 2.0 / (PI * 1.5f64.sqrt()) * k).abs() < 1e-15);
        assert!((s - b).abs() < 1e-12);
        for t in [0.9, 0.99] {
            let i = p_quarter_integral(arg(t)).unwrap();
            let b = p_quarter_via_k(arg(t)).unwrap();
            assert!((i - b).abs() < 1e-9, "t={t}: {i} {b}");
        }
    }

    #[test]
    fn domain_errors() {
        assert!(LegendreArg::new(1.0).is_err());
        assert!(LegendreArg::new(-0.1).is_err());
        assert!(matches!(
            p_quarter_series(arg(0.8)),
            Err(Error::Domain { name: "t", .. })
        ));
        assert!(ramanujan_check(0.0, 1e-10).is_err());
        assert!(ramanujan_check(1.0, 1e-10).is_err());
    }

    #[test]
    fn dispatch_switches_at_three_quarters() {
        assert_eq!(
            p_quarter(arg(0.75)).unwrap(),
            p_quarter_series(arg(0.75)).unwrap()
        );
        assert_eq!(
            p_quarter(arg(0.8)).unwrap(),
            p_quarter_via_k(arg(0.8)).unwrap()
        );
    }

    #[test]
    fn ramanujan_examples() {
        for q in [0.5, 0.9] {
            let entries = ramanujan_check(q, 1e-10).unwrap();
            for e in &entries {
                assert!(e.abs_diff < 1e-10, "q={q} {e:?}");
            }
        }
        let near = ramanujan_check(1e-4, 1e-10).unwrap();
        assert!((near[0].lhs - std::f64::consts::FRAC_PI_2).abs() < 1e-4);
        assert!((near[0].rhs - std::f64::consts::FRAC_PI_2).abs() < 1e-4);
    }
}
