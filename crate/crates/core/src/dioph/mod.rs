//! Bounded Diophantine searches: integral points on y² = cubic, products of
//! shifted n that are E times a square, and the square-class case analysis
//! that leads to them.
//!
//! Searches are complete inside their range and claim nothing outside it.

mod catalog;
mod classes;
mod curve;

use num_bigint::BigInt;
use std::str::FromStr;

use serde_json::{json, Number, Value};
use thiserror::Error;

pub use catalog::{run_case, CaseResult, CaseRow, CASES};
pub use classes::{
    local_obstructions, qr_obstruction, same_parity_factorizations, solve_for_n,
    square_class_cases, LinearFactor, Obstruction, Relation, SquareClassCase,
};
pub use curve::{
    integral_points_bounded, integral_points_on_cubic, product_square_search, CubicCurve,
};

/// Largest range a single search accepts.
pub const MAX_RANGE: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiophError {
    #[error("curve is singular (discriminant 0)")]
    Singular,
    #[error("range of {0} values exceeds the limit of {MAX_RANGE}")]
    RangeTooLarge(u128),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub(crate) fn check_range(lo: i64, hi: i64) -> Result<(), DiophError> {
    if hi < lo {
        return Err(DiophError::Invalid(format!("empty range {lo}..{hi}")));
    }
    let len = (hi as i128 - lo as i128 + 1) as u128;
    if len > MAX_RANGE as u128 {
        return Err(DiophError::RangeTooLarge(len));
    }
    Ok(())
}

/// `case-id,x,y` rows with a header.
pub fn points_to_csv(case_id: &str, points: &[(i64, BigInt)]) -> String {
    let mut s = String::from("case-id,x,y\n");
    for (x, y) in points {
        s.push_str(&format!("{case_id},{x},{y}\n"));
    }
    s
}

pub fn points_to_json(case_id: &str, points: &[(i64, BigInt)]) -> Value {
    let pts: Vec<Value> = points
        .iter()
        .map(|(x, y)| json!({"x": x, "y": int_json(y)}))
        .collect();
    json!({"case": case_id, "points": pts})
}

pub(crate) fn int_json(v: &BigInt) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("integer literal"))
}
