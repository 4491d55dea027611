//! Integral points on y² = x³ + a₂x² + a₄x + a₆ and on ∏(n + cᵢ) = E·y²,
//! by exact integer square roots over a bounded range.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::{check_range, DiophError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CubicCurve {
    pub a2: i64,
    pub a4: i64,
    pub a6: i64,
}

impl CubicCurve {
    pub fn new(a2: i64, a4: i64, a6: i64) -> Result<Self, DiophError> {
        let c = Self { a2, a4, a6 };
        if c.discriminant().is_zero() {
            return Err(DiophError::Singular);
        }
        Ok(c)
    }

    /// Discriminant of the cubic x³ + a₂x² + a₄x + a₆.
    pub fn discriminant(&self) -> BigInt {
        let (b, c, d) = (
            BigInt::from(self.a2),
            BigInt::from(self.a4),
            BigInt::from(self.a6),
        );
        18 * &b * &c * &d - 4 * b.pow(3) * &d + b.pow(2) * c.pow(2) - 4 * c.pow(3) - 27 * d.pow(2)
    }

    pub fn rhs(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        ((&x + self.a2) * &x + self.a4) * &x + self.a6
    }
}

fn square_root(v: &BigInt) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    let r = v.sqrt();
    (&r * &r == *v).then_some(r)
}

/// Chunked parallel filter over [lo, hi] that keeps ascending order.
fn scan<F>(lo: i64, hi: i64, f: F) -> Vec<(i64, BigInt)>
where
    F: Fn(i64) -> Option<BigInt> + Sync,
{
    const CHUNK: i64 = 1 << 16;
    let starts: Vec<i64> = (0..=((hi - lo) / CHUNK)).map(|k| lo + k * CHUNK).collect();
    starts
        .into_par_iter()
        .map(|s| {
            let e = (s + CHUNK - 1).min(hi);
            (s..=e)
                .filter_map(|x| f(x).map(|y| (x, y)))
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .concat()
}

/// Every x in [lo, hi] with rhs(x) a perfect square, paired with y ≥ 0.
pub fn integral_points_bounded(
    curve: &CubicCurve,
    lo: i64,
    hi: i64,
) -> Result<Vec<(i64, BigInt)>, DiophError> {
    check_range(lo, hi)?;
    Ok(scan(lo, hi, |x| square_root(&curve.rhs(x))))
}

/// Same search without the nonsingularity requirement.
pub fn integral_points_on_cubic(
    a2: i64,
    a4: i64,
    a6: i64,
    lo: i64,
    hi: i64,
) -> Result<Vec<(i64, BigInt)>, DiophError> {
    integral_points_bounded(&CubicCurve { a2, a4, a6 }, lo, hi)
}

/// All n in [lo, hi] with ∏(n + cᵢ) = E·y², y ≥ 0.
pub fn product_square_search(
    shifts: &[i64],
    e: i64,
    lo: i64,
    hi: i64,
) -> Result<Vec<(i64, BigInt)>, DiophError> {
    if e < 1 {
        return Err(DiophError::Invalid(format!(
            "multiplier must be positive, got {e}"
        )));
    }
    if shifts.is_empty() {
        return Err(DiophError::Invalid("no shifts".into()));
    }
    check_range(lo, hi)?;
    let e_big = BigInt::from(e);
    Ok(scan(lo, hi, |n| {
        let p: BigInt = shifts.iter().map(|c| BigInt::from(n) + c).product();
        if !(&p % &e_big).is_zero() {
            return None;
        }
        square_root(&(p / &e_big))
    }))
}
