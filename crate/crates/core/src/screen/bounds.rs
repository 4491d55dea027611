//! Integer cardinality bounds and the table of cited upper bounds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::ScreenError;
use crate::orthopoly::binomial;

/// n(n+1)/2, the bound for two-distance sets.
pub fn musin_bound(n: i64) -> Result<BigInt, ScreenError> {
    if n < 2 {
        return Err(ScreenError::Domain(format!(
            "n must be at least 2, got {n}"
        )));
    }
    Ok(BigInt::from(n) * BigInt::from(n + 1) / 2)
}

/// C(n+s−1, n−1) + C(n+s−2, n−1) for s-distance sets.
pub fn dgs_bound(n: i64, s: i64) -> Result<BigInt, ScreenError> {
    if n < 2 || s < 1 {
        return Err(ScreenError::Domain(format!(
            "need n >= 2 and s >= 1, got n={n}, s={s}"
        )));
    }
    Ok(binomial(n + s - 1, n - 1) + binomial(n + s - 2, n - 1))
}

/// U(h) = ⌊1/2 + √(h²/(2h−2) + 1/4)⌋, the largest k ≥ 1 with
/// (2k−1)²(h−1) ≤ (2h−1)(h+1).
pub fn u_bound(h: &BigInt) -> Result<BigInt, ScreenError> {
    if *h < BigInt::from(2) {
        return Err(ScreenError::Domain(format!(
            "h must be at least 2, got {h}"
        )));
    }
    let x: BigInt = (2 * h - 1) * (h + 1) / (h - 1);
    let mut j = x.sqrt();
    if j.is_even() {
        j -= 1;
    }
    Ok((j + 1) / 2)
}

/// ⌊√(2N²/(N+1))⌋, the cap on the integers of the second statement.
pub fn nozaki2_bound(n_big: &BigInt) -> BigInt {
    let q: BigInt = 2 * n_big * n_big / (n_big + BigInt::one());
    q.sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CitedKind {
    /// LP upper bound for s-distance sets; eliminates when below the size.
    Lp,
    /// SDP bound; out of scope, recorded only.
    Sdp,
}

#[derive(Debug, Clone, Copy)]
pub struct CitedBound {
    pub index_set: &'static [u32],
    pub n: i64,
    pub kind: CitedKind,
    /// Decimal value as published, or None when only reported as coinciding
    /// with b_{n,T}.
    pub value: Option<&'static str>,
}

/// Published upper bounds for the s-distance sets a tight design would be.
pub const CITED_BOUNDS: &[CitedBound] = &[
    CitedBound {
        index_set: &[8, 4],
        n: 8,
        kind: CitedKind::Sdp,
        value: Some("50.23"),
    },
    CitedBound {
        index_set: &[8, 2],
        n: 4,
        kind: CitedKind::Sdp,
        value: Some("8.9981"),
    },
    CitedBound {
        index_set: &[12, 8, 4],
        n: 5,
        kind: CitedKind::Lp,
        value: Some("30.2656"),
    },
    CitedBound {
        index_set: &[12, 8, 4],
        n: 6,
        kind: CitedKind::Lp,
        value: Some("59.8173"),
    },
    CitedBound {
        index_set: &[12, 8, 4],
        n: 9,
        kind: CitedKind::Sdp,
        value: None,
    },
    CitedBound {
        index_set: &[12, 8, 4],
        n: 13,
        kind: CitedKind::Sdp,
        value: None,
    },
    CitedBound {
        index_set: &[12, 8, 4],
        n: 16,
        kind: CitedKind::Sdp,
        value: None,
    },
    CitedBound {
        index_set: &[12, 8, 4],
        n: 20,
        kind: CitedKind::Lp,
        value: Some("9405.11"),
    },
    CitedBound {
        index_set: &[12, 8, 4],
        n: 23,
        kind: CitedKind::Lp,
        value: Some("17926.1"),
    },
];

pub fn cited_bound(n: i64, ts: &[u32]) -> Option<&'static CitedBound> {
    CITED_BOUNDS.iter().find(|c| c.n == n && c.index_set == ts)
}
