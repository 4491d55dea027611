//! The individual screening tests. Inner products are passed as squares
//! u = β² (exact), sizes as exact values.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Zero;

use super::bounds::{dgs_bound, musin_bound, nozaki2_bound, u_bound};
use super::kvalue::decide_all;
use super::{fmt_value, Outcome, TestResult};
use crate::algebraic::RealAlgebraic;
use crate::exact::{big, rational_sqrt};
use crate::fisher::{
    fisher_bound_single, match_coefficients_with, match_solutions, FisherError, HarmonicIndexSet,
    MatchPolicy,
};
use crate::orthopoly::binomial;
use crate::poly::Poly;

fn exact(v: &BigInt) -> RealAlgebraic {
    RealAlgebraic::rational(big(v.clone()))
}

fn at_least(size: &RealAlgebraic, v: &BigInt) -> bool {
    size.compare(&exact(v)) != Ordering::Less
}

fn greater(size: &RealAlgebraic, v: &BigInt) -> bool {
    size.compare(&exact(v)) == Ordering::Greater
}

/// Musin's n(n+1)/2 for I(Y) = {±α}.
pub fn musin_test(n: i64, size: &RealAlgebraic) -> TestResult {
    let bound = musin_bound(n).expect("n >= 2");
    if greater(size, &bound) {
        TestResult::decided(
            "musin",
            Outcome::Eliminated,
            format!("|Y| = {} > n(n+1)/2 = {bound}", fmt_value(size)),
        )
    } else {
        TestResult::decided("musin", Outcome::Pass, format!("|Y| <= {bound}"))
    }
}

pub fn dgs_test(n: i64, s: i64, size: &RealAlgebraic) -> TestResult {
    let bound = dgs_bound(n, s).expect("n >= 2, s >= 1");
    if greater(size, &bound) {
        TestResult::decided(
            "dgs",
            Outcome::Eliminated,
            format!("|Y| = {} > {bound} for s = {s}", fmt_value(size)),
        )
    } else {
        TestResult::decided("dgs", Outcome::Pass, format!("|Y| <= {bound} for s = {s}"))
    }
}

/// Larman–Rogers–Seidel for a two-distance set {±α} of size > 2n + 3:
/// (1 − α)/(1 + α) = (k − 1)/k with 2 ≤ k and (2k − 1)² ≤ 2n.
pub fn lrs_test(n: i64, alpha: &RealAlgebraic, size: &RealAlgebraic) -> TestResult {
    let name = "lrs";
    if !greater(size, &BigInt::from(2 * n + 3)) {
        return TestResult::not_applicable(name, format!("|Y| <= 2n + 3 = {}", 2 * n + 3));
    }
    let ratio = alpha
        .eval_ratio(&Poly::from_ints(&[1, -1]), &Poly::from_ints(&[1, 1]))
        .expect("alpha > 0");
    let k = alpha
        .eval_ratio(&Poly::from_ints(&[1, 1]), &Poly::from_ints(&[0, 2]))
        .expect("alpha > 0");
    let shown = format!("c^2/d^2 = {}, k = {}", fmt_value(&ratio), fmt_value(&k));
    match k
        .as_rational()
        .filter(|r| r.is_integer())
        .map(|r| r.to_integer())
    {
        Some(k)
            if k >= BigInt::from(2) && {
                let j: BigInt = 2 * &k - 1;
                &j * &j <= BigInt::from(2 * n)
            } =>
        {
            TestResult::decided(name, Outcome::Pass, shown)
        }
        Some(_) => TestResult::decided(
            name,
            Outcome::Eliminated,
            format!("{shown} outside 2 <= k <= (1 + sqrt(2n))/2"),
        ),
        None => TestResult::decided(
            name,
            Outcome::Eliminated,
            format!("{shown} is not an integer"),
        ),
    }
}

fn statement(
    name: &str,
    n_big: BigInt,
    threshold: BigInt,
    size_x: &RealAlgebraic,
    us: &[RealAlgebraic],
    which: &[usize],
    inv_sqrt: bool,
    first: bool,
) -> TestResult {
    if !at_least(size_x, &threshold) {
        return TestResult::not_applicable(
            name,
            format!("|X| = {} < {threshold}", fmt_value(size_x)),
        );
    }
    let bound = if first {
        u_bound(&n_big).expect("N >= 2")
    } else {
        nozaki2_bound(&n_big)
    };
    let (ok, text) = decide_all(us, which, inv_sqrt, &bound);
    let text = format!("N = {n_big}, |k| <= {bound}; {text}");
    match ok {
        Some(true) => TestResult::decided(name, Outcome::Pass, text),
        Some(false) => TestResult::decided(name, Outcome::Eliminated, text),
        None => TestResult::decided(name, Outcome::Inconclusive, text),
    }
}

/// Antipodal X with I(X) = {−1, ±β₁, …}, s = 2·len + 1 ≥ 5. Returns the
/// results of statements (1) and (2).
pub fn nozaki_antipodal_odd(
    n: i64,
    beta_sq: &[RealAlgebraic],
    size_x: &RealAlgebraic,
) -> [TestResult; 2] {
    let s = 2 * beta_sq.len() as i64 + 1;
    if s < 5 {
        let why = format!("s = {s} < 5");
        return [
            TestResult::not_applicable("nozaki_1", &why),
            TestResult::not_applicable("nozaki_2", why),
        ];
    }
    let all: Vec<usize> = (0..beta_sq.len()).collect();
    let n1 = binomial(n + s - 4, s - 3);
    let n2 = binomial(n + s - 3, s - 2);
    [
        statement(
            "nozaki_1",
            n1.clone(),
            4 * n1,
            size_x,
            beta_sq,
            &all,
            false,
            true,
        ),
        statement(
            "nozaki_2",
            n2.clone(),
            4 * n2 + 2,
            size_x,
            beta_sq,
            &all,
            true,
            false,
        ),
    ]
}

/// Antipodal X with I(X) = {−1, 0, ±β₂, …}, s = 2·len + 2 ≥ 4, where
/// `beta_sq` lists the non-zero squares. Statement (2) skips β₁ = 0.
pub fn nozaki_antipodal_even(
    n: i64,
    beta_sq: &[RealAlgebraic],
    size_x: &RealAlgebraic,
) -> [TestResult; 2] {
    let s = 2 * beta_sq.len() as i64 + 2;
    if s < 4 {
        let why = format!("s = {s} < 4");
        return [
            TestResult::not_applicable("nozaki_1", &why),
            TestResult::not_applicable("nozaki_2", why),
        ];
    }
    let mut with_zero = vec![RealAlgebraic::rational(Zero::zero())];
    with_zero.extend_from_slice(beta_sq);
    let n1 = binomial(n + s - 3, s - 2);
    let n2 = binomial(n + s - 4, s - 3);
    let all0: Vec<usize> = (0..with_zero.len()).collect();
    let all: Vec<usize> = (0..beta_sq.len()).collect();
    [
        statement(
            "nozaki_1",
            n1.clone(),
            4 * n1,
            size_x,
            &with_zero,
            &all0,
            false,
            true,
        ),
        statement(
            "nozaki_2",
            n2.clone(),
            4 * n2 + 2,
            size_x,
            beta_sq,
            &all,
            true,
            false,
        ),
    ]
}

/// Whether an antipodal s-distance set of this size must have rational
/// inner products: s ≥ 4 and |X| ≥ 4·C(n+s−3, s−2) + 2.
pub fn rationality_requirement(n: i64, s: i64, size_x: &RealAlgebraic) -> bool {
    s >= 4 && at_least(size_x, &(4 * binomial(n + s - 3, s - 2) + 2))
}

pub fn rationality_test(
    n: i64,
    s: i64,
    beta_sq: &[RealAlgebraic],
    size_x: &RealAlgebraic,
) -> TestResult {
    let name = "rationality";
    if !rationality_requirement(n, s, size_x) {
        return TestResult::not_applicable(name, format!("s = {s}, |X| below 4 C(n+s-3, s-2) + 2"));
    }
    for (i, u) in beta_sq.iter().enumerate() {
        let rational = u.as_rational().and_then(|r| rational_sqrt(&r)).is_some();
        if !rational {
            return TestResult::decided(
                name,
                Outcome::Eliminated,
                format!(
                    "beta_{}^2 = {} is not the square of a rational",
                    i + 1,
                    fmt_value(u)
                ),
            );
        }
    }
    TestResult::decided(name, Outcome::Pass, "all inner products rational")
}

/// I(Y) = {0, ±α} with |Y| > 2n forces 1/α ∈ ℤ.
pub fn inv_alpha_integer_test(
    n: i64,
    alpha_sq: &RealAlgebraic,
    size: &RealAlgebraic,
) -> TestResult {
    let name = "inv_alpha";
    if !greater(size, &BigInt::from(2 * n)) {
        return TestResult::not_applicable(name, format!("|Y| <= 2n = {}", 2 * n));
    }
    let inv = alpha_sq
        .as_rational()
        .filter(|r| !r.is_zero())
        .map(|r| r.recip());
    match inv
        .as_ref()
        .and_then(|r| rational_sqrt(r))
        .filter(|r| r.is_integer())
    {
        Some(k) => TestResult::decided(name, Outcome::Pass, format!("1/alpha = {k}")),
        None => TestResult::decided(
            name,
            Outcome::Eliminated,
            format!(
                "1/alpha^2 = {} is not a perfect square integer",
                inv.map_or_else(|| "irrational".into(), |r| r.to_string())
            ),
        ),
    }
}

/// Odd j in [1, 2t₁) such that two points at angle jπ/t₁ on S¹ form a design
/// of harmonic index T: t·j/t₁ must be an odd integer for every t ∈ T.
pub fn s1_two_point_angles(ts: &HarmonicIndexSet) -> Vec<u32> {
    let t1 = ts.t1();
    (1..2 * t1)
        .step_by(2)
        .filter(|j| {
            ts.indices()
                .iter()
                .all(|t| (t * j) % t1 == 0 && ((t * j) / t1) % 2 == 1)
        })
        .collect()
}

pub fn s1_two_point_test(n: i64, ts: &HarmonicIndexSet, size: &RealAlgebraic) -> TestResult {
    let name = "s1_two_point";
    if n != 2 || *size != RealAlgebraic::rational(big(2)) {
        return TestResult::not_applicable(name, "only for n = 2 with b = 2");
    }
    match s1_two_point_angles(ts).first() {
        Some(j) => TestResult::decided(
            name,
            Outcome::Pass,
            format!(
                "known example: two points at angle {}pi/{}",
                if *j == 1 {
                    String::new()
                } else {
                    j.to_string()
                },
                ts.t1()
            ),
        ),
        None => TestResult::decided(
            name,
            Outcome::Eliminated,
            "no angle j pi/t1 makes every t j/t1 odd",
        ),
    }
}

fn sub_bound(n: i64, s: &HarmonicIndexSet) -> Option<RealAlgebraic> {
    if s.len() == 1 {
        return fisher_bound_single(n, s.t1()).ok().map(|c| c.b);
    }
    match match_coefficients_with(n, s, MatchPolicy::LpValid) {
        Ok(c) => Some(c.b),
        Err(FisherError::MultipleSolutions(_)) => {
            match_solutions(n, s).ok()?.into_iter().next().map(|c| c.b)
        }
        Err(_) => None,
    }
}

/// A design of index T is a design of every S ⊂ T, so |Y| ≥ b_{n,S}.
pub fn sub_index_test(n: i64, ts: &HarmonicIndexSet, size: &RealAlgebraic) -> TestResult {
    let name = "sub_index";
    let k = ts.len();
    if k < 2 || k > 8 {
        return TestResult::not_applicable(name, "needs 2 to 8 indices");
    }
    let mut best: Option<(HarmonicIndexSet, RealAlgebraic)> = None;
    for mask in 1..(1u32 << k) - 1 {
        let sub: Vec<u32> = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| ts.indices()[i])
            .collect();
        let s = HarmonicIndexSet::new(sub).expect("subset of a valid set");
        if s.len() > 1 && !s.has_matching_shape() {
            continue;
        }
        if let Some(b) = sub_bound(n, &s) {
            if best
                .as_ref()
                .map_or(true, |(_, v)| b.compare(v) == Ordering::Greater)
            {
                best = Some((s, b));
            }
        }
    }
    let Some((s, b)) = best else {
        return TestResult::not_applicable(name, "no sub-index bound available");
    };
    let text = format!("max sub-index bound b_{{n,{s}}} = {}", fmt_value(&b));
    if b.compare(size) == Ordering::Greater {
        TestResult::decided(
            name,
            Outcome::Eliminated,
            format!("{text} > |Y| = {}", fmt_value(size)),
        )
    } else {
        TestResult::decided(name, Outcome::Pass, text)
    }
}
