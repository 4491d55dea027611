//! Integrality scans of b_{n,T} and the remainder argument for large n.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::ScreenError;
use crate::exact::{big, rational_sqrt, BigRational};
use crate::fisher::{
    bound_formula, bound_formula_at, closed_form_with, fisher_bound_single,
    match_coefficients_with, BoundCertificate, FisherError, HarmonicIndexSet, MatchPolicy,
};
use crate::poly::Poly;
use crate::realroots::real_roots;

/// The certificate screening works from: strict matching, the LP-valid
/// solution when no strict one exists, and the catalogued closed form when
/// the matching is not unique or has no solution.
pub fn working_certificate(n: i64, ts: &HarmonicIndexSet) -> Result<BoundCertificate, FisherError> {
    if ts.len() == 1 {
        return fisher_bound_single(n, ts.t1());
    }
    match match_coefficients_with(n, ts, MatchPolicy::Strict) {
        Ok(c) => Ok(c),
        Err(FisherError::InvalidMinimizers(why)) => {
            match_coefficients_with(n, ts, MatchPolicy::LpValid)
                .or_else(|_| closed_form_with(n, ts, MatchPolicy::LpValid))
                .map_err(|_| FisherError::InvalidMinimizers(why))
        }
        Err(
            e @ (FisherError::MultipleSolutions(_)
            | FisherError::NoSolution { .. }
            | FisherError::Underdetermined),
        ) => closed_form_with(n, ts, MatchPolicy::Strict).map_err(|_| e),
        Err(e) => Err(e),
    }
}

/// b_{n,T} exactly: the rational formula where one is known, otherwise the
/// working certificate's b.
fn integral_bound(n: i64, ts: &HarmonicIndexSet) -> Result<Option<BigInt>, FisherError> {
    if bound_formula(ts).is_some() {
        return Ok(bound_formula_at(n, ts)
            .filter(|b| b.is_integer())
            .map(|b| b.to_integer()));
    }
    let c = working_certificate(n, ts)?;
    Ok(c.b
        .as_rational()
        .filter(|b| b.is_integer())
        .map(|b| b.to_integer()))
}

/// Every n in [lo, hi] with b_{n,T} an integer, ascending. Values of n
/// where no bound exists are skipped.
pub fn integrality_scan(
    ts: &HarmonicIndexSet,
    lo: i64,
    hi: i64,
) -> Result<Vec<(i64, BigInt)>, ScreenError> {
    if lo < 2 || hi < lo {
        return Err(ScreenError::Domain(format!(
            "need 2 <= lo <= hi, got {lo}..{hi}"
        )));
    }
    let found: Vec<Option<(i64, BigInt)>> = (lo..=hi)
        .into_par_iter()
        .map(|n| integral_bound(n, ts).ok().flatten().map(|b| (n, b)))
        .collect();
    Ok(found.into_iter().flatten().collect())
}

/// n in [lo, hi] where both b_{n,T} ∈ ℤ and 1/α ∈ ℤ for the single positive
/// minimizer α² (the I(Y) = {0, ±α} shape).
pub fn inv_alpha_integrality_hits(
    ts: &HarmonicIndexSet,
    lo: i64,
    hi: i64,
) -> Result<Vec<i64>, ScreenError> {
    let integral = integrality_scan(ts, lo, hi)?;
    let mut hits = Vec::new();
    for (n, _) in integral {
        let Ok(c) = working_certificate(n, ts) else {
            continue;
        };
        let ok = c.minimizers.iter().filter(|u| u.signum() > 0).all(|u| {
            u.as_rational()
                .and_then(|r| rational_sqrt(&r.recip()))
                .is_some_and(|k| k.is_integer())
        });
        if ok && c.minimizers.iter().any(|u| u.signum() > 0) {
            hits.push(n);
        }
    }
    Ok(hits)
}

/// b = Qt(n) + R(n)/D(n) with d·Qt integer-valued on integers. When
/// 0 < |d·R(n)/D(n)| < 1 the bound cannot be an integer.
#[derive(Debug, Clone)]
pub struct RemainderDecomposition {
    pub quotient: Poly,
    pub remainder: Poly,
    pub denominator: Poly,
    pub d: BigInt,
    /// Smallest n₀ with 0 < |d·R(n)/D(n)| < 1 for all n ≥ n₀.
    pub threshold: i64,
}

fn lcm_of_denominators(p: &Poly) -> BigInt {
    p.coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

fn remainder_condition(d: &BigInt, r: &Poly, den: &Poly, n: i64) -> bool {
    let x = big(n);
    let dv = den.eval(&x);
    if dv.is_zero() {
        return false;
    }
    let v = (r.eval(&x) * big(d.clone()) / dv).abs();
    v.is_positive() && v < BigRational::one()
}

pub fn remainder_decomposition(ts: &HarmonicIndexSet) -> Option<RemainderDecomposition> {
    let (num, den) = bound_formula(ts)?;
    if den.degree() == 0 {
        return None;
    }
    let (quotient, remainder) = num.div_rem(&den).ok()?;
    let d = lcm_of_denominators(&quotient);
    let dr = remainder.scale(&big(d.clone()));
    let critical = &(&den * &den) - &(&dr * &dr);
    let mut last = BigRational::zero();
    for p in [&critical, &remainder, &den] {
        if p.degree() > 0 {
            if let Some(r) = real_roots(&p.squarefree(), &crate::exact::frac(1, 1 << 10)).last() {
                last = last.max(r.interval().hi.clone());
            }
        }
    }
    let mut threshold = last
        .ceil()
        .to_integer()
        .try_into()
        .unwrap_or(i64::MAX - 1)
        .max(2);
    // Past the last root the sign pattern is fixed, so the condition at the
    // first n decides every larger n; walk back to the true cutoff.
    if !remainder_condition(&d, &remainder, &den, threshold) {
        return None;
    }
    while threshold > 2 && remainder_condition(&d, &remainder, &den, threshold - 1) {
        threshold -= 1;
    }
    Some(RemainderDecomposition {
        quotient,
        remainder,
        denominator: den,
        d,
        threshold,
    })
}

/// Exact check of the remainder argument at one n.
pub fn remainder_nonintegral(dec: &RemainderDecomposition, n: i64) -> bool {
    let x = big(n);
    (dec.quotient.eval(&x) * big(dec.d.clone())).is_integer()
        && remainder_condition(&dec.d, &dec.remainder, &dec.denominator, n)
}
