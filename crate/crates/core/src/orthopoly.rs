//! Gegenbauer polynomials Q_{n,k} in the normalization Q_{n,k}(1) = dim Harm_k(R^n),
//! and physicists' Hermite polynomials.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{big, frac, int, BigRational};
pub use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrthoError {
    #[error("dimension n must be at least 2, got {0}")]
    Dimension(i64),
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// h_k^n = C(n+k−1, n−1) − C(n+k−3, n−1).
pub fn harm_dim(n: i64, k: i64) -> Result<BigInt, OrthoError> {
    if n < 2 {
        return Err(OrthoError::Dimension(n));
    }
    Ok(binomial(n + k - 1, n - 1) - binomial(n + k - 3, n - 1))
}

fn cache() -> &'static Mutex<HashMap<(i64, i64), Poly>> {
    static CACHE: OnceLock<Mutex<HashMap<(i64, i64), Poly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Q_{n,k} via λ_{k+1}Q_{k+1} = x·Q_k − (1 − λ_{k−1})Q_{k−1} with
/// λ_k = k/(n+2k−2), Q_0 = 1, Q_1 = n·x. At n = 2 this yields 2T_k.
pub fn gegenbauer(n: i64, k: i64) -> Result<Poly, OrthoError> {
    if n < 2 {
        return Err(OrthoError::Dimension(n));
    }
    if k < 0 {
        return Ok(Poly::zero());
    }
    if let Some(p) = cache().lock().expect("cache lock").get(&(n, k)) {
        return Ok(p.clone());
    }
    let lambda = |j: i64| {
        if j == 0 {
            BigRational::zero()
        } else {
            frac(j, n + 2 * j - 2)
        }
    };
    let mut prev = Poly::one();
    let mut cur = Poly::from_ints(&[0, n]);
    if k == 0 {
        cur = prev.clone();
    }
    for j in 1..k {
        let next = &(&Poly::x() * &cur) - &prev.scale(&(BigRational::one() - lambda(j - 1)));
        let next = next.scale(&lambda(j + 1).recip());
        prev = cur;
        cur = next;
    }
    cache()
        .lock()
        .expect("cache lock")
        .insert((n, k), cur.clone());
    Ok(cur)
}

/// H_0 = 1, H_1 = 2x, H_{t+1} = 2x·H_t − 2t·H_{t−1}.
pub fn hermite(t: u32) -> Poly {
    let mut prev = Poly::one();
    if t == 0 {
        return prev;
    }
    let mut cur = Poly::from_ints(&[0, 2]);
    for j in 1..t {
        let next = &Poly::from_ints(&[0, 2]) * &cur;
        let next = &next - &prev.scale(&int(2 * j as i64));
        prev = cur;
        cur = next;
    }
    cur
}

/// Chebyshev T_k, used for exact cos(jπ/(2e)) enclosures.
pub fn chebyshev_t(k: u32) -> Poly {
    let mut prev = Poly::one();
    if k == 0 {
        return prev;
    }
    let mut cur = Poly::x();
    for _ in 1..k {
        let next = &(&Poly::from_ints(&[0, 2]) * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

pub fn harm_dim_rational(n: i64, k: i64) -> Result<BigRational, OrthoError> {
    harm_dim(n, k).map(big)
}
