//! Numerics for complete elliptic integrals and an invariant double integral.
//!
//! The crate evaluates
//!
//! ```text
//! A(p, q) = ∫_0^π dx ∫_0^x dy  1 / (√(1 - p cos x) · √(1 + q cos y))
//! ```
//!
//! by four independent routes, checks `A(p, q) = A(√(1-p²), √(1-q²))`, checks
//! each elliptic-integral identity that the equality rests on, and computes
//! the Hall-geometry factor whose substitution symmetry leads to it.
//!
//! Modules, bottom up:
//!
//! * [`quad`]: tanh-sinh and adaptive Gauss-Kronrod quadrature, iterated
//!   triangular integrals.
//! * [`elliptic`]: AGM, `K`, `K'`, `F(φ, k)`, Landen's transformation, the
//!   `λ = 2K/K'` inversion.
//! * [`legendre`]: `P_{-1/4}` by series, integral and the `K` bridge.
//! * [`identity`]: the four routes to `A`, the invariance verdict and the
//!   proof-chain verifier.
//! * [`hall`]: the Hall-geometry factor and its device symmetry.

pub mod elliptic;
pub mod error;
pub mod hall;
pub mod identity;
pub mod legendre;
pub mod quad;
pub mod report;

pub use elliptic::{agm, complete_k, complete_k_comp, incomplete_f, Modulus};
pub use error::{Error, Result};
pub use hall::{hall_g, verify_device_symmetry, HallInput, HallKernel, HallResult};
pub use identity::{
    a_direct, a_final_form, a_lemma_reduced, a_theta_form, verify_invariance, verify_proof_chain,
    ChainConfig, LemmaParams, ParamPair, Route, RouteReport,
};
pub use quad::{Estimate, QuadratureSpec, Rule};
pub use report::{ChainEntry, ChainReport, InvarianceReport};
