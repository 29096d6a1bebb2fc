//! Pass/fail evidence records shared by the verification routines.

/// One checked identity: both sides, their distance, and the verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainEntry {
    pub id: String,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_diff: f64,
    /// Absolute tolerance the entry was judged against.
    pub tolerance: f64,
    pub pass: bool,
    /// Set when an intermediate computation failed; the entry then fails.
    pub diagnostic: Option<String>,
}

impl ChainEntry {
    /// Compares `lhs` and `rhs` at relative tolerance `rel_tol`, scaled by
    /// `max(1, |lhs|, |rhs|)` so that values near zero are judged absolutely.
    pub fn compare(id: impl Into<String>, lhs: f64, rhs: f64, rel_tol: f64) -> Self {
        let tolerance = rel_tol * 1f64.max(lhs.abs()).max(rhs.abs());
        Self::with_abs_tolerance(id, lhs, rhs, tolerance)
    }

    pub fn with_abs_tolerance(id: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let abs_diff = (lhs - rhs).abs();
        Self {
            id: id.into(),
            lhs,
            rhs,
            abs_diff,
            tolerance,
            pass: abs_diff.is_finite() && abs_diff <= tolerance,
            diagnostic: None,
        }
    }

    /// A failed entry for a computation that could not be completed.
    pub fn failed(id: impl Into<String>, diagnostic: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            lhs: f64::NAN,
            rhs: f64::NAN,
            abs_diff: f64::NAN,
            tolerance: 0.0,
            pass: false,
            diagnostic: Some(diagnostic.into()),
        }
    }
}

/// Ordered list of checked identities.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ChainReport {
    pub entries: Vec<ChainEntry>,
}

impl ChainReport {
    pub fn all_pass(&self) -> bool {
        !self.entries.is_empty() && self.entries.iter().all(|e| e.pass)
    }

    pub fn get(&self, id: &str) -> Option<&ChainEntry> {
        self.entries.iter().find(|e| e.id == id)
    }
}

/// Verdict on an invariance `F(x) = F(x*)` for a point and its image.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvarianceReport {
    pub a_pq: f64,
    pub a_pcqc: f64,
    pub abs_diff: f64,
    /// Absolute tolerance the difference was judged against.
    pub tolerance: f64,
    pub pass: bool,
    /// Combined quadrature error bound of the two evaluations.
    pub error_bound: f64,
}

impl InvarianceReport {
    pub(crate) fn new(a_pq: f64, a_pcqc: f64, tolerance: f64, error_bound: f64) -> Self {
        let abs_diff = (a_pq - a_pcqc).abs();
        Self {
            a_pq,
            a_pcqc,
            abs_diff,
            tolerance,
            pass: abs_diff <= tolerance,
            error_bound,
        }
    }

    pub fn relative_diff(&self) -> f64 {
        self.abs_diff / self.a_pq.abs()
    }
}
