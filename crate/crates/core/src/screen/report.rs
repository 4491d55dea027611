//! Candidate construction, the ordered test run, and report rendering.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::bounds::{cited_bound, CitedKind};
use super::checks::{
    dgs_test, inv_alpha_integer_test, lrs_test, musin_test, nozaki_antipodal_even,
    nozaki_antipodal_odd, rationality_test, s1_two_point_test, sub_index_test,
};
use super::scan::working_certificate;
use super::{combine, fmt_value, Outcome, ScreenError, TestResult};
use crate::algebraic::RealAlgebraic;
use crate::exact::{big, parse_rational};
use crate::fisher::{value_to_json, FisherError, HarmonicIndexSet, Witness};

/// A hypothetical tight design: |Y| = b_{n,T} and I(Y) = {±αᵢ} ∪ {0 if
/// `has_zero`}.
#[derive(Debug, Clone)]
pub struct CandidateTight {
    pub n: i64,
    pub index_set: HarmonicIndexSet,
    pub size: RealAlgebraic,
    /// αᵢ², ascending, all in (0, 1).
    pub alpha_sq: Vec<RealAlgebraic>,
    /// αᵢ = √(αᵢ²).
    pub inner_products: Vec<RealAlgebraic>,
    pub has_zero: bool,
    /// False when the certificate came from the LP-valid fallback.
    pub conforming: bool,
}

impl CandidateTight {
    /// Number of inner products of Y, signs counted.
    pub fn s_y(&self) -> i64 {
        2 * self.alpha_sq.len() as i64 + self.has_zero as i64
    }

    /// s for the antipodal double X = Y ∪ (−Y), which adds −1.
    pub fn s_x(&self) -> i64 {
        self.s_y() + 1
    }

    pub fn size_x(&self) -> RealAlgebraic {
        self.size
            .eval_poly(&crate::poly::Poly::from_ints(&[0, 2]))
            .expect("polynomial in a real value")
    }
}

pub fn build_candidate(n: i64, ts: &HarmonicIndexSet) -> Result<CandidateTight, FisherError> {
    let cert = working_certificate(n, ts)?;
    let one = RealAlgebraic::rational(big(1));
    let alpha_sq: Vec<RealAlgebraic> = cert
        .minimizers
        .iter()
        .filter(|u| u.signum() > 0 && u.compare(&one).is_lt())
        .cloned()
        .collect();
    let has_zero = match cert.witness {
        Witness::Product { .. } => cert.epsilon == 1,
        Witness::Minimum(_) => cert.minimizers.iter().any(RealAlgebraic::is_zero),
    };
    let inner_products = alpha_sq
        .iter()
        .map(|u| u.sqrt())
        .collect::<Result<_, _>>()?;
    Ok(CandidateTight {
        n,
        index_set: ts.clone(),
        size: cert.b,
        alpha_sq,
        inner_products,
        has_zero,
        conforming: cert.conforming,
    })
}

#[derive(Debug, Clone)]
pub struct ScreenReport {
    pub n: i64,
    pub index_set: HarmonicIndexSet,
    /// None when no Fisher-type form exists; the `fisher_form` test then
    /// carries the reason.
    pub candidate: Option<CandidateTight>,
    pub tests: Vec<TestResult>,
    pub known_example: bool,
    pub verdict: Outcome,
}

fn integrality_test(size: &RealAlgebraic) -> TestResult {
    if size.is_integer() {
        TestResult::decided(
            "integrality",
            Outcome::Pass,
            format!("b = {}", fmt_value(size)),
        )
    } else {
        TestResult::decided(
            "integrality",
            Outcome::Eliminated,
            format!("b = {} is not an integer", fmt_value(size)),
        )
    }
}

fn cited_test(n: i64, ts: &HarmonicIndexSet, size: &RealAlgebraic) -> TestResult {
    let name = "cited_bound";
    let Some(c) = cited_bound(n, ts.indices()) else {
        return TestResult::not_applicable(name, "no published bound for this case");
    };
    let shown = c.value.unwrap_or("coincides with b");
    match c.kind {
        CitedKind::Sdp => TestResult::decided(
            name,
            Outcome::Inconclusive,
            format!("SDP bound {shown} (cited, out of scope)"),
        ),
        CitedKind::Lp => {
            let v = RealAlgebraic::rational(parse_rational(shown).expect("table literal"));
            if v.compare(size).is_lt() {
                TestResult::decided(
                    name,
                    Outcome::Eliminated,
                    format!(
                        "LP upper bound {shown} < b = {} (cited, not computed)",
                        fmt_value(size)
                    ),
                )
            } else {
                TestResult::decided(
                    name,
                    Outcome::Pass,
                    format!("LP upper bound {shown} (cited)"),
                )
            }
        }
    }
}

/// Runs the tests in this order: S¹ two-point family, cardinality bounds
/// (Musin, DGS, sub-index), rationality, LRS, Nozaki (1), Nozaki (2),
/// 1/α integrality, integrality of b, cited bounds.
pub fn screen_tight(n: i64, ts: &HarmonicIndexSet) -> Result<ScreenReport, ScreenError> {
    if n < 2 {
        return Err(ScreenError::Domain(format!(
            "n must be at least 2, got {n}"
        )));
    }
    let cand = match build_candidate(n, ts) {
        Ok(c) => c,
        Err(
            e @ (FisherError::NoSolution { .. }
            | FisherError::ComplexCoefficients { .. }
            | FisherError::InvalidMinimizers(_)),
        ) => {
            let t = TestResult::decided(
                "fisher_form",
                Outcome::Eliminated,
                format!("no Fisher-type form exists: {e}"),
            );
            return Ok(ScreenReport {
                n,
                index_set: ts.clone(),
                candidate: None,
                tests: vec![t],
                known_example: false,
                verdict: Outcome::Eliminated,
            });
        }
        Err(e) => return Err(e.into()),
    };
    let size = &cand.size;
    let size_x = cand.size_x();
    let two_distance = cand.alpha_sq.len() == 1 && !cand.has_zero;
    let mut tests = vec![s1_two_point_test(n, ts, size)];
    tests.push(if two_distance {
        musin_test(n, size)
    } else {
        TestResult::not_applicable("musin", "I(Y) is not {+-alpha}")
    });
    tests.push(dgs_test(n, cand.s_y().max(1), size));
    tests.push(sub_index_test(n, ts, size));
    tests.push(rationality_test(n, cand.s_x(), &cand.alpha_sq, &size_x));
    tests.push(if two_distance {
        lrs_test(n, &cand.inner_products[0], size)
    } else {
        TestResult::not_applicable("lrs", "I(Y) is not {+-alpha}")
    });
    let nozaki = if cand.has_zero {
        nozaki_antipodal_even(n, &cand.alpha_sq, &size_x)
    } else {
        nozaki_antipodal_odd(n, &cand.alpha_sq, &size_x)
    };
    tests.extend(nozaki);
    tests.push(if cand.has_zero && cand.alpha_sq.len() == 1 {
        inv_alpha_integer_test(n, &cand.alpha_sq[0], size)
    } else {
        TestResult::not_applicable("inv_alpha", "I(Y) is not {0, +-alpha}")
    });
    tests.push(integrality_test(size));
    tests.push(cited_test(n, ts, size));
    let known_example = tests[0].applicable && tests[0].verdict == Outcome::Pass;
    // An explicit design settles existence regardless of the other tests.
    let verdict = if known_example {
        Outcome::Pass
    } else {
        combine(&tests)
    };
    Ok(ScreenReport {
        n,
        index_set: ts.clone(),
        candidate: Some(cand),
        tests,
        known_example,
        verdict,
    })
}

/// Reports for every n in [lo, hi], ascending; the parallel run yields the
/// same reports in the same order.
pub fn screen_range(
    ts: &HarmonicIndexSet,
    lo: i64,
    hi: i64,
    parallel: bool,
) -> Result<Vec<ScreenReport>, ScreenError> {
    if lo < 2 || hi < lo {
        return Err(ScreenError::Domain(format!(
            "need 2 <= lo <= hi, got {lo}..{hi}"
        )));
    }
    if parallel {
        (lo..=hi)
            .into_par_iter()
            .map(|n| screen_tight(n, ts))
            .collect()
    } else {
        (lo..=hi).map(|n| screen_tight(n, ts)).collect()
    }
}

fn values_json(vs: &[RealAlgebraic]) -> Value {
    Value::Array(vs.iter().map(value_to_json).collect())
}

impl ScreenReport {
    /// The tests that eliminated the candidate.
    pub fn eliminated_by(&self) -> Vec<&str> {
        self.tests
            .iter()
            .filter(|t| t.eliminates())
            .map(|t| t.name.as_str())
            .collect()
    }

    pub fn test(&self, name: &str) -> Option<&TestResult> {
        self.tests.iter().find(|t| t.name == name)
    }

    pub fn to_json(&self) -> Value {
        self.to_json_with(12)
    }

    /// JSON with decimals rendered to `digits` places.
    pub fn to_json_with(&self, digits: usize) -> Value {
        let candidate = self.candidate.as_ref().map_or(Value::Null, |c| {
            json!({
                "size": value_to_json(&c.size),
                "size_decimal": c.size.decimal(digits),
                "alpha_sq": values_json(&c.alpha_sq),
                "alpha_sq_decimal": c.alpha_sq.iter().map(|v| v.decimal(digits)).collect::<Vec<_>>(),
                "inner_products_decimal": c.inner_products.iter().map(|v| v.decimal(digits)).collect::<Vec<_>>(),
                "has_zero": c.has_zero,
                "conforming": c.conforming,
            })
        });
        json!({
            "n": self.n,
            "T": self.index_set.indices(),
            "candidate": candidate,
            "tests": self.tests,
            "known_example": self.known_example,
            "verdict": self.verdict,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let size = self
            .candidate
            .as_ref()
            .map_or("-".to_string(), |c| fmt_value(&c.size));
        let _ = writeln!(
            s,
            "n = {}  T = {}  b = {}  verdict: {}{}",
            self.n,
            self.index_set,
            size,
            self.verdict,
            if self.known_example {
                " (known example)"
            } else {
                ""
            }
        );
        for t in &self.tests {
            let v = if t.applicable {
                t.verdict.to_string()
            } else {
                "n/a".into()
            };
            let _ = writeln!(s, "  {:<14} {:<13} {}", t.name, v, t.witness);
        }
        s
    }
}
