//! Named searches, each reproducing one Diophantine step of the
//! non-existence arguments.

use num_bigint::BigInt;
use num_integer::Roots;
use serde_json::{json, Value};

use super::{
    check_range, int_json, integral_points_bounded, product_square_search,
    same_parity_factorizations, solve_for_n, square_class_cases, CubicCurve, DiophError,
    LinearFactor, Relation,
};

pub const CASES: &[&str] = &[
    "curve-168b2",
    "table-7-5",
    "curve-231",
    "parity-400",
    "curve-462",
    "curve-924",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseRow {
    pub id: String,
    pub x: i64,
    pub y: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseResult {
    pub case: String,
    pub description: String,
    pub range: (i64, i64),
    pub rows: Vec<CaseRow>,
    pub note: String,
}

fn default_range(name: &str) -> Option<(i64, i64)> {
    Some(match name {
        "curve-168b2" => (-1_000_000, 1_000_000),
        "table-7-5" => (9, 10_000),
        "curve-231" => (2, 10_000),
        "parity-400" => (2, 10_000),
        "curve-462" | "curve-924" => (-10_000, 10_000),
        _ => return None,
    })
}

fn rows(id: &str, pts: Vec<(i64, BigInt)>) -> Vec<CaseRow> {
    pts.into_iter()
        .map(|(x, y)| CaseRow {
            id: id.to_string(),
            x,
            y,
        })
        .collect()
}

const UNVERIFIED: &str =
    "complete inside the range only; completeness beyond it is cited, not verified";

/// Runs a catalog case over `range`, or its default range.
pub fn run_case(name: &str, range: Option<(i64, i64)>) -> Result<CaseResult, DiophError> {
    let Some(default) = default_range(name) else {
        return Err(DiophError::Invalid(format!(
            "unknown case {name:?}; known cases: {}",
            CASES.join(", ")
        )));
    };
    let (lo, hi) = range.unwrap_or(default);
    check_range(lo, hi)?;
    let mut note = UNVERIFIED.to_string();
    let (description, out) = match name {
        "curve-168b2" => {
            let c = CubicCurve::new(1, -12, 0)?;
            (
                "y^2 = x^3 + x^2 - 12x (LMFDB 168.b2)",
                rows("points", integral_points_bounded(&c, lo, hi)?),
            )
        }
        "curve-462" => {
            let c = CubicCurve::new(0, -462 * 462, 0)?;
            (
                "y^2 = x(x^2 - 462^2)",
                rows("points", integral_points_bounded(&c, lo, hi)?),
            )
        }
        "curve-924" => {
            let c = CubicCurve::new(0, -924 * 924, 0)?;
            (
                "y^2 = x(x^2 - 924^2), the image of (n+12)(n+16)(n+20) = 231y^2 under x = 231(n+16)",
                rows("points", integral_points_bounded(&c, lo, hi)?),
            )
        }
        "curve-231" => (
            "(n+12)(n+16)(n+20) = 231y^2",
            rows("points", product_square_search(&[12, 16, 20], 231, lo, hi)?),
        ),
        "table-7-5" => {
            let factors = [
                LinearFactor::shift(-8),
                LinearFactor::shift(12),
                LinearFactor::shift(16),
                LinearFactor::new(23, -172),
            ];
            let relation = [Relation {
                members: vec![0, 1, 2, 3],
                multiplier: 15,
            }];
            let mut es: Vec<u64> = square_class_cases(&factors, &relation)
                .iter()
                .map(|c| c.product_class(&[0, 1, 2]))
                .collect();
            es.sort_unstable();
            es.dedup();
            let mut out = Vec::new();
            for e in &es {
                let pts = product_square_search(&[-8, 12, 16], *e as i64, lo, hi)?;
                out.extend(rows(&format!("E={e}"), pts));
            }
            let big: Vec<String> = out
                .iter()
                .filter(|r| r.x >= 170)
                .map(|r| r.x.to_string())
                .collect();
            note = format!(
                "E in {{{}}}; n >= 170: {{{}}}; {UNVERIFIED}",
                es.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
                big.join(",")
            );
            ("(n-8)(n+12)(n+16) = E y^2 for each square class E", out)
        }
        "parity-400" => {
            let pairs = same_parity_factorizations(400);
            let mut out: Vec<CaseRow> = pairs
                .iter()
                .map(|&(a, b)| CaseRow {
                    id: "pair".into(),
                    x: a as i64,
                    y: BigInt::from(b),
                })
                .collect();
            for n in solve_for_n(&pairs, 6, -20) {
                if n < lo || n > hi {
                    continue;
                }
                let v = n * n + 6 * n - 20;
                out.push(CaseRow {
                    id: "n".into(),
                    x: n,
                    y: BigInt::from((v * v - 400).sqrt()),
                });
            }
            note = "exhaustive: every factor pair of 400 is listed".into();
            (
                "(n^2+6n-20+u)(n^2+6n-20-u) = 400 over same-parity factor pairs",
                out,
            )
        }
        _ => unreachable!("checked above"),
    };
    Ok(CaseResult {
        case: name.to_string(),
        description: description.to_string(),
        range: (lo, hi),
        rows: out,
        note,
    })
}

impl CaseResult {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("case-id,x,y\n");
        for r in &self.rows {
            s.push_str(&format!("{}/{},{},{}\n", self.case, r.id, r.x, r.y));
        }
        s
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| json!({"id": r.id, "x": r.x, "y": int_json(&r.y)}))
            .collect();
        json!({
            "case": self.case,
            "description": self.description,
            "range": [self.range.0, self.range.1],
            "rows": rows,
            "note": self.note,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{}: {}\nrange [{}, {}], {} row(s)\n",
            self.case,
            self.description,
            self.range.0,
            self.range.1,
            self.rows.len()
        );
        for r in &self.rows {
            s.push_str(&format!("  {:<8} x = {:<8} y = {}\n", r.id, r.x, r.y));
        }
        s.push_str(&format!("note: {}\n", self.note));
        s
    }
}
