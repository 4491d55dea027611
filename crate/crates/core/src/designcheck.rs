//! Checking explicit point sets with the moment functional
//! M_k(Y) = Σ_{x,y∈Y} Q_{n,k}(x·y), which is ≥ 0 and vanishes exactly when
//! Y is a design of harmonic index k.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::exact::{
    frac, int, parse_rational, BigRational, QuadraticNumber, RationalInterval, SqrtSum,
};
use crate::fisher::{rational_from_json, rational_to_json};
use crate::orthopoly::{chebyshev_t, gegenbauer, OrthoError};
use crate::realroots::real_roots;

const MAX_POINTS: usize = 4096;
const MAX_DIM: usize = 64;
const MAX_INPUT: usize = 1 << 22;

#[derive(Debug, Error)]
pub enum DesignError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("point set parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Ortho(#[from] OrthoError),
}

fn parse_err<T>(msg: impl Into<String>) -> Result<T, DesignError> {
    Err(DesignError::Parse(msg.into()))
}

/// Norm tolerance for points given by interval coordinates.
pub fn norm_tolerance() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10).pow(20))
}

fn interval_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10).pow(40))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Coord {
    Exact(SqrtSum),
    Interval(RationalInterval),
}

impl Coord {
    pub fn rational(r: BigRational) -> Self {
        Coord::Exact(SqrtSum::rational(r))
    }

    fn enclose(&self) -> RationalInterval {
        match self {
            Coord::Exact(s) => s.to_interval(&interval_width()),
            Coord::Interval(iv) => iv.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    n: usize,
    points: Vec<Vec<Coord>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Moment {
    Exact(SqrtSum),
    Interval(RationalInterval),
}

impl Moment {
    pub fn is_exact(&self) -> bool {
        matches!(self, Moment::Exact(_))
    }

    pub fn enclosure(&self) -> RationalInterval {
        match self {
            Moment::Exact(s) => s.to_interval(&interval_width()),
            Moment::Interval(iv) => iv.clone(),
        }
    }

    /// Certified M ≤ tol.
    pub fn at_most(&self, tol: &BigRational) -> bool {
        match self {
            Moment::Exact(s) => s.is_zero() || s.sub(&SqrtSum::rational(tol.clone())).signum() <= 0,
            Moment::Interval(iv) => iv.hi <= *tol,
        }
    }
}

impl std::fmt::Display for Moment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Moment::Exact(s) => write!(f, "{s}"),
            Moment::Interval(iv) => write!(f, "{iv}"),
        }
    }
}

fn dot_exact(x: &[Coord], y: &[Coord]) -> Option<SqrtSum> {
    let mut acc = SqrtSum::zero();
    for (a, b) in x.iter().zip(y) {
        match (a, b) {
            (Coord::Exact(a), Coord::Exact(b)) => acc = acc.add(&a.mul(b)),
            _ => return None,
        }
    }
    Some(acc)
}

fn dot_interval(x: &[Coord], y: &[Coord]) -> RationalInterval {
    x.iter().zip(y).fold(
        RationalInterval::point(BigRational::zero()),
        |acc, (a, b)| acc.add(&a.enclose().mul(&b.enclose())),
    )
}

impl PointSet {
    pub fn new(points: Vec<Vec<Coord>>) -> Result<Self, DesignError> {
        let Some(first) = points.first() else {
            return Err(DesignError::Domain("point set is empty".into()));
        };
        let n = first.len();
        if !(2..=MAX_DIM).contains(&n) {
            return Err(DesignError::Domain(format!(
                "dimension must be in 2..={MAX_DIM}, got {n}"
            )));
        }
        if points.len() > MAX_POINTS {
            return Err(DesignError::Domain(format!(
                "at most {MAX_POINTS} points are supported"
            )));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != n {
                return Err(DesignError::Domain(format!(
                    "point {i} has {} coordinates, expected {n}",
                    p.len()
                )));
            }
            if !is_unit(p) {
                return Err(DesignError::Domain(format!(
                    "point {i} is not a unit vector"
                )));
            }
        }
        Ok(Self { n, points })
    }

    pub fn from_json(s: &str) -> Result<Self, DesignError> {
        if s.len() > MAX_INPUT {
            return parse_err("input too large");
        }
        let v: Value = serde_json::from_str(s).or_else(|e| parse_err(e.to_string()))?;
        let Value::Array(rows) = v else {
            return parse_err("expected an array of points");
        };
        let points = rows
            .iter()
            .map(|row| match row {
                Value::Array(cs) if cs.len() <= MAX_DIM => cs.iter().map(coord_from_json).collect(),
                Value::Array(_) => parse_err("too many coordinates"),
                _ => parse_err("each point must be an array"),
            })
            .collect::<Result<Vec<Vec<Coord>>, _>>()?;
        Self::new(points)
    }

    /// Rational coordinates as {num, den}; anything else as an enclosure.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .points
            .iter()
            .map(|p| {
                Value::Array(
                    p.iter()
                        .map(|c| match c {
                            Coord::Exact(s) => match s.to_quadratic() {
                                Some(q) if q.is_rational() => rational_to_json(q.rational_part()),
                                _ => interval_json(&c.enclose()),
                            },
                            Coord::Interval(iv) => interval_json(iv),
                        })
                        .collect(),
                )
            })
            .collect();
        Value::Array(rows)
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<Coord>] {
        &self.points
    }

    pub fn is_exact(&self) -> bool {
        self.points
            .iter()
            .flatten()
            .all(|c| matches!(c, Coord::Exact(_)))
    }

    pub fn union(&self, other: &PointSet) -> Result<PointSet, DesignError> {
        if self.n != other.n {
            return Err(DesignError::Domain("dimensions differ".into()));
        }
        let mut points = self.points.clone();
        points.extend(other.points.iter().cloned());
        PointSet::new(points)
    }

    pub fn antipodal(&self) -> PointSet {
        let points = self
            .points
            .iter()
            .map(|p| {
                p.iter()
                    .map(|c| match c {
                        Coord::Exact(s) => Coord::Exact(s.neg()),
                        Coord::Interval(iv) => Coord::Interval(iv.neg()),
                    })
                    .collect()
            })
            .collect();
        PointSet { n: self.n, points }
    }
}

fn interval_json(iv: &RationalInterval) -> Value {
    json!({"lo": rational_to_json(&iv.lo), "hi": rational_to_json(&iv.hi)})
}

fn is_unit(p: &[Coord]) -> bool {
    if let Some(s) = dot_exact(p, p) {
        return s == SqrtSum::rational(BigRational::one());
    }
    let tol = norm_tolerance();
    let iv = dot_interval(p, p);
    iv.lo >= BigRational::one() - &tol && iv.hi <= BigRational::one() + &tol
}

fn bound_from_json(v: &Value) -> Result<BigRational, DesignError> {
    match v {
        Value::Object(_) => rational_from_json(v).or_else(|e| parse_err(e.0)),
        Value::Number(n) => parse_rational(&n.to_string()).or_else(|e| parse_err(e.to_string())),
        Value::String(s) => parse_rational(s).or_else(|e| parse_err(e.to_string())),
        _ => parse_err("interval end must be a number, string or {num, den}"),
    }
}

fn coord_from_json(v: &Value) -> Result<Coord, DesignError> {
    if v.get("num").is_some() {
        return Ok(Coord::rational(
            rational_from_json(v).or_else(|e| parse_err(e.0))?,
        ));
    }
    if let (Some(lo), Some(hi)) = (v.get("lo"), v.get("hi")) {
        let iv = RationalInterval::new(bound_from_json(lo)?, bound_from_json(hi)?)
            .or_else(|_| parse_err("interval with lo > hi"))?;
        return Ok(Coord::Interval(iv));
    }
    parse_err("coordinate must be {num, den} or {lo, hi}")
}

/// M_k(Y) over all ordered pairs, diagonal included.
pub fn moment(y: &PointSet, k: u32) -> Result<Moment, DesignError> {
    if k < 1 {
        return Err(DesignError::Domain("degree k must be at least 1".into()));
    }
    let q = gegenbauer(y.n as i64, k as i64)?;
    let m = y.points.len();
    let q1 = q.eval(&BigRational::one());
    // Diagonal terms are Q(1) each; off-diagonal pairs are counted twice.
    if y.is_exact() {
        let off = (0..m)
            .into_par_iter()
            .map(|i| {
                (i + 1..m).fold(SqrtSum::zero(), |acc, j| {
                    let d = dot_exact(&y.points[i], &y.points[j]).expect("exact point set");
                    acc.add(&q.eval_sqrtsum(&d))
                })
            })
            .reduce(SqrtSum::zero, |a, b| a.add(&b));
        let total = off
            .mul(&SqrtSum::rational(int(2)))
            .add(&SqrtSum::rational(q1 * int(m as i64)));
        return Ok(Moment::Exact(total));
    }
    let zero = || RationalInterval::point(BigRational::zero());
    let off = (0..m)
        .into_par_iter()
        .map(|i| {
            (i + 1..m).fold(zero(), |acc, j| {
                acc.add(&q.eval_interval(&dot_interval(&y.points[i], &y.points[j])))
            })
        })
        .reduce(zero, |a, b| a.add(&b));
    let total = off.scale(&int(2)).add_rational(&(q1 * int(m as i64)));
    Ok(Moment::Interval(total))
}

/// (k, M_k(Y) ≤ tolerance) for each k in T. Interval moments must be
/// certified below the tolerance, so tolerance 0 needs exact coordinates.
pub fn is_harmonic_index_design(
    y: &PointSet,
    ts: &[u32],
    tolerance: &BigRational,
) -> Result<Vec<(u32, bool)>, DesignError> {
    if tolerance.is_negative() {
        return Err(DesignError::Domain("tolerance must be non-negative".into()));
    }
    ts.iter()
        .map(|&k| Ok((k, moment(y, k)?.at_most(tolerance))))
        .collect()
}

fn sqrt_sum(d: i64, c: BigRational) -> SqrtSum {
    SqrtSum::from(&QuadraticNumber::new(BigRational::zero(), c, d.into()).expect("squarefree"))
}

/// cos(mπ/12) exactly.
fn cos_twelfth(m: i64) -> SqrtSum {
    let m = m.rem_euclid(24);
    if m > 12 {
        return cos_twelfth(24 - m);
    }
    if m > 6 {
        return cos_twelfth(12 - m).neg();
    }
    let r = |a, b| SqrtSum::rational(frac(a, b));
    match m {
        0 => r(1, 1),
        1 => sqrt_sum(6, frac(1, 4)).add(&sqrt_sum(2, frac(1, 4))),
        2 => sqrt_sum(3, frac(1, 2)),
        3 => sqrt_sum(2, frac(1, 2)),
        4 => r(1, 2),
        5 => sqrt_sum(6, frac(1, 4)).sub(&sqrt_sum(2, frac(1, 4))),
        _ => SqrtSum::zero(),
    }
}

/// {(1, 0), (cos θ, sin θ)} with θ = jπ/(2e): a tight design of harmonic
/// index 2e on S¹ for odd j. Exact when θ is a multiple of π/12.
pub fn trivial_s1_design(e: u32, j: i64) -> Result<PointSet, DesignError> {
    if e < 1 || e > 10_000 {
        return Err(DesignError::Domain(format!(
            "e must be in 1..=10000, got {e}"
        )));
    }
    if j % 2 == 0 {
        return Err(DesignError::Domain(format!("j must be odd, got {j}")));
    }
    let e = e as i64;
    let first = vec![Coord::rational(int(1)), Coord::rational(int(0))];
    if (6 * j) % e == 0 {
        let m = 6 * j / e;
        let second = vec![
            Coord::Exact(cos_twelfth(m)),
            Coord::Exact(cos_twelfth(6 - m)),
        ];
        return PointSet::new(vec![first, second]);
    }
    // Reduce to θ' = mπ/(2e) in (0, π); cos θ' is a simple zero of
    // U_{2e−1} = T'_{2e}/(2e), whose zeros descend in m.
    let r = j.rem_euclid(4 * e);
    let (m, upper) = if r < 2 * e {
        (r, true)
    } else {
        (4 * e - r, false)
    };
    let u = chebyshev_t(2 * e as u32).derivative();
    let width = interval_width();
    let roots = real_roots(&u, &frac(1, 1 << 20));
    let idx = (2 * e - 1 - m) as usize;
    let c = roots[idx].refined(&width).interval().clone();
    let one = RationalInterval::point(BigRational::one());
    let s2 = one.sub(&c.mul(&c));
    let s2 = RationalInterval::new(s2.lo.clone().max(BigRational::zero()), s2.hi.clone())
        .expect("ordered");
    let mut s = s2.sqrt(&width).expect("non-negative");
    if !upper {
        s = s.neg();
    }
    PointSet::new(vec![first, vec![Coord::Interval(c), Coord::Interval(s)]])
}
