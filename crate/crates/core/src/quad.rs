//! One-dimensional quadrature with endpoint-singularity support.
//!
//! The default rule is double-exponential (tanh-sinh) quadrature. Its nodes
//! cluster doubly exponentially toward both endpoints, so integrands with
//! inverse-square-root, fractional-power or logarithmic endpoint behaviour
//! are integrated to near machine precision without special treatment.
//!
//! Integrands that are singular at an endpoint should use the [`Point`]
//! flavoured entry points: every node carries its distances to both ends of
//! the interval, computed without cancellation, so a factor such as
//! `1/sqrt(1 - x)` can be written as `1/sqrt(pt.to_b)` and stays accurate even
//! where `1 - x` is far below the spacing of doubles near 1.
//!
//! An adaptive Gauss-Kronrod (7/15) rule is also provided for smooth
//! cross-checks.

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;

use crate::error::{domain, Error, Result};

/// Quadrature rule family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Rule {
    #[default]
    DoubleExponential,
    /// Global adaptive Gauss-Kronrod 7/15. The error estimate is the
    /// Kronrod-Gauss difference per panel, which can understate the error
    /// next to a strong endpoint singularity such as `x^-0.9`.
    AdaptiveGauss,
}

/// Tolerances and rule selection for a quadrature call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Refinement depth cap. For the double-exponential rule the step size
    /// is halved at most this many times; for adaptive Gauss at most
    /// `2^max_levels` subintervals are created.
    pub max_levels: u32,
    pub rule: Rule,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_levels: 12,
            rule: Rule::DoubleExponential,
        }
    }
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_levels: u32, rule: Rule) -> Result<Self> {
        let spec = Self {
            abs_tol,
            rel_tol,
            max_levels,
            rule,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Default spec with `abs_tol = rel_tol = tol`.
    pub fn with_tol(tol: f64) -> Result<Self> {
        Self::new(
            tol,
            tol,
            Self::default().max_levels,
            Rule::DoubleExponential,
        )
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(domain("abs_tol", self.abs_tol, "abs_tol > 0"));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(domain("rel_tol", self.rel_tol, "rel_tol > 0"));
        }
        if self.max_levels < 1 {
            return Err(domain(
                "max_levels",
                self.max_levels as f64,
                "max_levels >= 1",
            ));
        }
        Ok(())
    }

    /// Same rule and depth with both tolerances divided by `factor`.
    pub fn tightened(&self, factor: f64) -> Self {
        Self {
            abs_tol: self.abs_tol / factor,
            rel_tol: self.rel_tol / factor,
            ..*self
        }
    }

    /// The error a converged estimate of `value` may carry.
    pub fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Result of a quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error_bound: f64,
    pub evaluations: usize,
    /// `true` only if `error_bound <= spec.target(value)` for the spec used.
    pub converged: bool,
}

impl Estimate {
    /// An exactly known value (no error, no evaluations).
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            error_bound: 0.0,
            evaluations: 0,
            converged: true,
        }
    }

    pub fn scale(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            error_bound: self.error_bound * factor.abs(),
            ..self
        }
    }
}

/// Sum of two independent estimates; bounds add.
impl std::ops::Add for Estimate {
    type Output = Self;
    fn add(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            error_bound: self.error_bound + other.error_bound,
            evaluations: self.evaluations + other.evaluations,
            converged: self.converged && other.converged,
        }
    }
}

/// A quadrature node inside `(a, b)`.
///
/// `from_a = x - a` and `to_b = b - x` are computed directly from the node
/// transformation, not by subtracting rounded abscissae.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub from_a: f64,
    pub to_b: f64,
}

/// An integrand value together with an absolute uncertainty, used when the
/// integrand is itself the output of a numerical procedure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub value: f64,
    pub uncertainty: f64,
}

impl From<f64> for Sample {
    fn from(value: f64) -> Self {
        Self {
            value,
            uncertainty: 0.0,
        }
    }
}

/// Integrate `f` over `(a, b)`.
///
/// Nodes whose rounded abscissa would coincide with an endpoint are dropped,
/// so `f` is never called at `a` or `b`. For integrands singular at `b`
/// prefer [`integrate_points`], which keeps full accuracy there.
pub fn integrate<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn(f64) -> f64,
{
    run(
        |pt| Ok(Sample::from(f(pt.x))),
        a,
        b,
        spec,
        NodeGuard::StrictlyInside,
    )
}

/// Integrate `f` over `(a, b)`, handing each node's endpoint distances to the integrand.
pub fn integrate_points<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn(Point) -> f64,
{
    run(
        |pt| Ok(Sample::from(f(pt))),
        a,
        b,
        spec,
        NodeGuard::PositiveDistance,
    )
}

/// Integrate an integrand whose values carry their own uncertainty.
///
/// The uncertainties are integrated alongside the values and added to the
/// reported error bound.
pub fn integrate_uncertain<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Estimate>
where
    F: FnMut(Point) -> Result<Sample>,
{
    run(f, a, b, spec, NodeGuard::PositiveDistance)
}

/// Iterated integral `∫_0^upper dx ∫_0^x dy g(x, y)` over the triangle `0 < y < x < upper`.
pub fn integrate_triangular<G>(g: G, upper: f64, spec: &QuadratureSpec) -> Result<Estimate>
where
    G: Fn(f64, f64) -> f64,
{
    integrate_triangular_points(|outer, inner| g(outer.x, inner.x), upper, spec)
}

/// Triangular iterated integral with node distances exposed for both variables.
///
/// `outer` is a node of `(0, upper)`, `inner` a node of `(0, outer.x)`. The
/// inner integrals run at the outer tolerance divided by 100 and their error
/// bounds are propagated into the outer estimate; if any inner integral fails
/// to converge the result is marked unconverged.
pub fn integrate_triangular_points<G>(g: G, upper: f64, spec: &QuadratureSpec) -> Result<Estimate>
where
    G: Fn(Point, Point) -> f64,
{
    if !(upper > 0.0 && upper.is_finite()) {
        return Err(domain("upper", upper, "upper > 0"));
    }
    let inner_spec = spec.tightened(INNER_TIGHTENING);
    let inner_ok = Cell::new(true);
    let inner_evals = Cell::new(0usize);
    let outer = integrate_uncertain(
        |o| {
            let est = integrate_points(|i| g(o, i), 0.0, o.x, &inner_spec)?;
            if !est.converged {
                inner_ok.set(false);
            }
            inner_evals.set(inner_evals.get() + est.evaluations);
            Ok(Sample {
                value: est.value,
                uncertainty: est.error_bound,
            })
        },
        0.0,
        upper,
        spec,
    )?;
    Ok(Estimate {
        evaluations: outer.evaluations + inner_evals.get(),
        converged: outer.converged && inner_ok.get(),
        ..outer
    })
}

/// Factor by which nested inner integrals are tightened relative to the outer one.
pub const INNER_TIGHTENING: f64 = 100.0;

#[derive(Clone, Copy, PartialEq, Eq)]
enum NodeGuard {
    /// The rounded abscissa must satisfy `a < x < b`.
    StrictlyInside,
    /// Only the exact distance to the nearer endpoint must be positive.
    PositiveDistance,
}

fn run<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec, guard: NodeGuard) -> Result<Estimate>
where
    F: FnMut(Point) -> Result<Sample>,
{
    spec.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(domain("b - a", b - a, "finite interval"));
    }
    if !(a < b) {
        return Err(domain("b - a", b - a, "a < b"));
    }
    match spec.rule {
        Rule::DoubleExponential => tanh_sinh(f, a, b, spec, guard),
        Rule::AdaptiveGauss => gauss_kronrod(f, a, b, spec),
    }
}

fn checked(pt: Point, sample: Sample) -> Result<Sample> {
    if sample.value.is_finite() && sample.uncertainty.is_finite() {
        Ok(sample)
    } else {
        Err(Error::NonFinite {
            x: pt.x,
            value: sample.value,
        })
    }
}

// ---------------------------------------------------------------------------
// tanh-sinh

/// Terms below this fraction of the running absolute sum end a tail walk.
const TAIL_CUTOFF: f64 = 1e-20;
/// Hard cap on |t|; beyond it the endpoint distance underflows anyway.
const T_CAP: f64 = 7.0;

/// Node data for `t >= 0`, shared by the mirrored pair `±t`.
struct DeNode {
    weight: f64,
    near: f64,
    far: f64,
}

fn de_node(t: f64, half: f64) -> DeNode {
    let u = FRAC_PI_2 * t.sinh();
    let e = (-2.0 * u).exp();
    let denom = 1.0 + e;
    // 1 - tanh(u) = 2e/(1+e), sech^2(u) = 4e/(1+e)^2
    DeNode {
        weight: half * FRAC_PI_2 * t.cosh() * 4.0 * e / (denom * denom),
        near: half * 2.0 * e / denom,
        far: half * 2.0 / denom,
    }
}

struct SideWalk {
    done: bool,
    small: u8,
}

fn tanh_sinh<F>(
    mut f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
    guard: NodeGuard,
) -> Result<Estimate>
where
    F: FnMut(Point) -> Result<Sample>,
{
    let half = 0.5 * (b - a);
    let mid = a + half;

    let mut sum = 0.0; // Σ w f over every node so far
    let mut abs_sum = 0.0; // Σ |w f|
    let mut unc_sum = 0.0; // Σ w·uncertainty
    let mut evaluations = 0usize;

    let centre = Point {
        x: mid,
        from_a: half,
        to_b: half,
    };
    let s = checked(centre, f(centre)?)?;
    let w0 = half * FRAC_PI_2;
    sum += w0 * s.value;
    abs_sum += (w0 * s.value).abs();
    unc_sum += w0 * s.uncertainty;
    evaluations += 1;

    let mut h = 1.0;
    let mut previous = f64::NAN;
    let mut last = Estimate {
        value: 0.0,
        error_bound: f64::INFINITY,
        evaluations: 0,
        converged: false,
    };
    let min_level = spec.max_levels.min(2);

    for level in 0..=spec.max_levels {
        let (start, stride) = if level == 0 { (1u64, 1u64) } else { (1, 2) };
        if level > 0 {
            h *= 0.5;
        }
        let mut left = SideWalk {
            done: false,
            small: 0,
        };
        let mut right = SideWalk {
            done: false,
            small: 0,
        };
        let mut k = start;
        while !(left.done && right.done) {
            let t = k as f64 * h;
            if t > T_CAP {
                break;
            }
            let node = de_node(t, half);
            for (side, walk) in [(-1.0, &mut left), (1.0, &mut right)] {
                if walk.done {
                    continue;
                }
                if !(node.near >= f64::MIN_POSITIVE) {
                    walk.done = true;
                    continue;
                }
                let pt = if side > 0.0 {
                    Point {
                        x: b - node.near,
                        from_a: node.far,
                        to_b: node.near,
                    }
                } else {
                    Point {
                        x: a + node.near,
                        from_a: node.near,
                        to_b: node.far,
                    }
                };
                if guard == NodeGuard::StrictlyInside && !(pt.x > a && pt.x < b) {
                    walk.done = true;
                    continue;
                }
                let s = checked(pt, f(pt)?)?;
                evaluations += 1;
                let term = node.weight * s.value;
                sum += term;
                abs_sum += term.abs();
                unc_sum += node.weight * s.uncertainty;
                if term.abs() <= TAIL_CUTOFF * abs_sum {
                    walk.small += 1;
                    if walk.small >= 2 {
                        walk.done = true;
                    }
                } else {
                    walk.small = 0;
                }
            }
            k += stride;
        }

        let value = h * sum;
        let roundoff = 8.0 * f64::EPSILON * h * abs_sum;
        let propagated = h * unc_sum;
        let difference = if level == 0 {
            f64::INFINITY
        } else {
            (value - previous).abs()
        };
        let error_bound = difference + roundoff + propagated;
        last = Estimate {
            value,
            error_bound,
            evaluations,
            converged: level >= min_level && error_bound <= spec.target(value),
        };
        if last.converged {
            return Ok(last);
        }
        previous = value;
    }
    Ok(last)
}

// ---------------------------------------------------------------------------
// adaptive Gauss-Kronrod 7/15

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_0,
];
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5 and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F>(f: &mut F, a: f64, b: f64, lo: f64, hi: f64, evals: &mut usize) -> Result<Panel>
where
    F: FnMut(Point) -> Result<Sample>,
{
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut eval = |x: f64| -> Result<Sample> {
        let pt = Point {
            x,
            from_a: x - a,
            to_b: b - x,
        };
        *evals += 1;
        checked(pt, f(pt)?)
    };
    let fc = eval(centre)?;
    let mut kronrod = WGK[7] * fc.value;
    let mut gauss = WG[3] * fc.value;
    let mut abs = (WGK[7] * fc.value).abs();
    let mut unc = WGK[7] * fc.uncertainty;
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(centre - dx)?;
        let f2 = eval(centre + dx)?;
        kronrod += WGK[j] * (f1.value + f2.value);
        abs += WGK[j] * (f1.value.abs() + f2.value.abs());
        unc += WGK[j] * (f1.uncertainty + f2.uncertainty);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1.value + f2.value);
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs() + 50.0 * f64::EPSILON * abs * half + unc * half;
    Ok(Panel {
        lo,
        hi,
        value,
        error,
    })
}

fn gauss_kronrod<F>(mut f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Estimate>
where
    F: FnMut(Point) -> Result<Sample>,
{
    let max_panels = 1usize << spec.max_levels.min(16);
    let mut evaluations = 0;
    let mut heap = BinaryHeap::new();
    heap.push(gk15(&mut f, a, b, a, b, &mut evaluations)?);

    loop {
        let value: f64 = heap.iter().map(|p| p.value).sum();
        let error: f64 = heap.iter().map(|p| p.error).sum();
        let converged = error <= spec.target(value);
        if converged || heap.len() >= max_panels {
            return Ok(Estimate {
                value,
                error_bound: error,
                evaluations,
                converged,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let split = 0.5 * (worst.lo + worst.hi);
        if !(split > worst.lo && split < worst.hi) {
            // Panel cannot be bisected further in floating point.
            heap.push(worst);
            let value: f64 = heap.iter().map(|p| p.value).sum();
            let error: f64 = heap.iter().map(|p| p.error).sum();
            return Ok(Estimate {
                value,
                error_bound: error,
                evaluations,
                converged: false,
            });
        }
        heap.push(gk15(&mut f, a, b, worst.lo, split, &mut evaluations)?);
        heap.push(gk15(&mut f, a, b, split, worst.hi, &mut evaluations)?);
    }
}
