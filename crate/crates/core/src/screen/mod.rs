//! Non-existence screening for candidate tight designs.
//!
//! A candidate is built from a Fisher certificate: the size b_{n,T} and the
//! inner products ±αᵢ (plus 0 when ε = 1). Each test reports whether it is
//! applicable and, if so, whether it eliminates the candidate. The final
//! verdict is `Eliminated` iff some applicable test eliminates.

mod bounds;
mod checks;
mod kvalue;
mod report;
mod scan;

use serde::Serialize;
use thiserror::Error;

pub use bounds::{
    cited_bound, dgs_bound, musin_bound, nozaki2_bound, u_bound, CitedBound, CitedKind,
    CITED_BOUNDS,
};
pub use checks::{
    inv_alpha_integer_test, lrs_test, nozaki_antipodal_even, nozaki_antipodal_odd,
    rationality_requirement, rationality_test, s1_two_point_angles, s1_two_point_test,
    sub_index_test,
};
pub use report::{build_candidate, screen_range, screen_tight, CandidateTight, ScreenReport};
pub use scan::{
    integrality_scan, inv_alpha_integrality_hits, remainder_decomposition, remainder_nonintegral,
    working_certificate, RemainderDecomposition,
};

use crate::fisher::FisherError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScreenError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Fisher(#[from] FisherError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Eliminated,
    Inconclusive,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Eliminated => "eliminated",
            Outcome::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TestResult {
    pub name: String,
    pub applicable: bool,
    pub verdict: Outcome,
    pub witness: String,
}

impl TestResult {
    pub fn not_applicable(name: &str, why: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            applicable: false,
            verdict: Outcome::Inconclusive,
            witness: why.into(),
        }
    }

    pub fn decided(name: &str, verdict: Outcome, witness: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            applicable: true,
            verdict,
            witness: witness.into(),
        }
    }

    pub fn eliminates(&self) -> bool {
        self.applicable && self.verdict == Outcome::Eliminated
    }
}

/// Combined verdict: any applicable elimination wins, then any applicable
/// inconclusive result, otherwise pass.
pub fn combine(tests: &[TestResult]) -> Outcome {
    let applicable = tests.iter().filter(|t| t.applicable);
    let mut out = Outcome::Pass;
    for t in applicable {
        match t.verdict {
            Outcome::Eliminated => return Outcome::Eliminated,
            Outcome::Inconclusive => out = Outcome::Inconclusive,
            Outcome::Pass => {}
        }
    }
    out
}

/// Short human-readable rendering of an exact value.
pub(crate) fn fmt_value(v: &crate::algebraic::RealAlgebraic) -> String {
    use crate::algebraic::RealAlgebraic;
    match v {
        _ if v.is_rational() => v.as_rational().expect("rational").to_string(),
        RealAlgebraic::Quad(q) => format!("{q} ~ {}", v.decimal(10)),
        RealAlgebraic::Root(_) => format!("~ {}", v.decimal(10)),
    }
}
