//! The integers k_i = ∏_{j≠i} (1 − u_j)/(u_i − u_j) of the antipodal
//! s-distance theorems, optionally divided by √u_i, decided exactly.
//!
//! Routes, in order: arithmetic in a common quadratic field; evaluation in
//! Q(u_i) when the u's are exactly the roots of a squarefree rational P (then
//! k_i = P(1)/((1 − u_i)P'(u_i))); interval enclosures refined until no
//! admissible integer remains or the width floor is reached.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::fmt_value;
use crate::algebraic::RealAlgebraic;
use crate::exact::{frac, rational_sqrt, BigRational, QuadraticNumber, RationalInterval};
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum KDecision {
    /// An integer with |k| within the bound.
    Admissible(BigInt),
    /// Not an integer, or out of bounds.
    Fails(String),
    Undecided(String),
}

enum Exact {
    Value(RealAlgebraic),
    /// k² and the sign of k.
    Square(RealAlgebraic, i32),
}

fn quadratic_route(us: &[RealAlgebraic], i: usize, inv_sqrt: bool) -> Option<Exact> {
    let qs: Vec<&QuadraticNumber> = us.iter().map(|u| u.as_quadratic()).collect::<Option<_>>()?;
    let one = QuadraticNumber::one();
    let mut k = one.clone();
    for (j, u) in qs.iter().enumerate() {
        if j != i {
            let term = one.try_sub(u).ok()?.try_div(&qs[i].try_sub(u).ok()?).ok()?;
            k = k.try_mul(&term).ok()?;
        }
    }
    if !inv_sqrt {
        return Some(Exact::Value(k.into()));
    }
    let sign = k.signum();
    let k2 = k.try_mul(&k).ok()?.try_div(qs[i]).ok()?;
    Some(Exact::Square(k2.into(), sign))
}

fn polynomial_route(us: &[RealAlgebraic], i: usize, inv_sqrt: bool) -> Option<Exact> {
    let mut factors: Vec<Poly> = Vec::new();
    for u in us {
        let p = u.defining_poly().monic();
        if !factors.contains(&p) {
            factors.push(p);
        }
    }
    let p = factors.iter().fold(Poly::one(), |acc, f| &acc * f);
    if p.degree() != us.len() || !p.gcd(&p.derivative()).is_constant() {
        return None;
    }
    let p1 = p.eval(&BigRational::one());
    let den = &Poly::from_ints(&[1, -1]) * &p.derivative();
    let k = us[i].eval_ratio(&Poly::constant(p1.clone()), &den).ok()?;
    if !inv_sqrt {
        return Some(Exact::Value(k));
    }
    let den2 = &(&den * &den) * &Poly::x();
    let k2 = us[i].eval_ratio(&Poly::constant(&p1 * &p1), &den2).ok()?;
    Some(Exact::Square(k2, k.signum()))
}

fn within(k: &BigInt, bound: &BigInt) -> bool {
    k.abs() <= *bound
}

fn decide_exact(e: Exact, bound: &BigInt) -> KDecision {
    let int = match &e {
        Exact::Value(v) => v
            .as_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer()),
        Exact::Square(k2, sign) => k2
            .as_rational()
            .and_then(|r| rational_sqrt(&r))
            .filter(|r| r.is_integer())
            .map(|r| {
                if *sign < 0 {
                    -r.to_integer()
                } else {
                    r.to_integer()
                }
            }),
    };
    let shown = match &e {
        Exact::Value(v) => format!("k = {}", fmt_value(v)),
        Exact::Square(k2, _) => format!("k^2 = {}", fmt_value(k2)),
    };
    match int {
        Some(k) if within(&k, bound) => KDecision::Admissible(k),
        Some(k) => KDecision::Fails(format!("k = {k} exceeds the bound {bound}")),
        None => KDecision::Fails(format!("{shown} is not an integer")),
    }
}

fn enclose(
    us: &[RealAlgebraic],
    i: usize,
    inv_sqrt: bool,
    w: &BigRational,
) -> Option<RationalInterval> {
    let ivs: Vec<RationalInterval> = us.iter().map(|u| u.to_interval(w)).collect();
    let one = RationalInterval::point(BigRational::one());
    let mut num = one.clone();
    let mut den = one.clone();
    for (j, v) in ivs.iter().enumerate() {
        if j != i {
            num = num.mul(&one.sub(v));
            den = den.mul(&ivs[i].sub(v));
        }
    }
    let k = num.div(&den).ok()?;
    if !inv_sqrt {
        return Some(k);
    }
    k.div(&ivs[i].sqrt(w).ok()?).ok()
}

fn interval_route(us: &[RealAlgebraic], i: usize, inv_sqrt: bool, bound: &BigInt) -> KDecision {
    let floor = BigRational::new(BigInt::one(), BigInt::from(10).pow(60));
    let mut w = frac(1, 1 << 30);
    loop {
        if let Some(k) = enclose(us, i, inv_sqrt, &w) {
            let lo = k.lo.ceil().to_integer().max(-bound.clone());
            let hi = k.hi.floor().to_integer().min(bound.clone());
            if lo > hi {
                return KDecision::Fails(format!(
                    "k in {} contains no admissible integer",
                    short(&k)
                ));
            }
            if k.width() < floor {
                return KDecision::Undecided(format!("k in {} after refining to 1e-60", short(&k)));
            }
        }
        if w < floor {
            return KDecision::Undecided("enclosure did not separate".into());
        }
        w = &w * &w;
    }
}

fn short(iv: &RationalInterval) -> String {
    use crate::exact::decimal;
    format!("[{}, {}]", decimal(&iv.lo, 12), decimal(&iv.hi, 12))
}

/// Decides whether k_i (or k_i/√u_i) is an integer with |k| ≤ bound. The
/// u's must be distinct, positive except possibly one zero, and below 1.
pub(crate) fn decide_k(
    us: &[RealAlgebraic],
    i: usize,
    inv_sqrt: bool,
    bound: &BigInt,
) -> KDecision {
    debug_assert!(!inv_sqrt || !us[i].is_zero());
    if let Some(e) = quadratic_route(us, i, inv_sqrt).or_else(|| polynomial_route(us, i, inv_sqrt))
    {
        return decide_exact(e, bound);
    }
    interval_route(us, i, inv_sqrt, bound)
}

/// Elimination, pass or undecided over all k_i of one statement.
pub(crate) fn decide_all(
    us: &[RealAlgebraic],
    which: &[usize],
    inv_sqrt: bool,
    bound: &BigInt,
) -> (Option<bool>, String) {
    let mut notes = Vec::new();
    let mut undecided = false;
    for &i in which {
        match decide_k(us, i, inv_sqrt, bound) {
            KDecision::Fails(why) => return (Some(false), format!("k_{}: {why}", i + 1)),
            KDecision::Admissible(k) => notes.push(format!("k_{} = {k}", i + 1)),
            KDecision::Undecided(why) => {
                undecided = true;
                notes.push(format!("k_{}: {why}", i + 1));
            }
        }
    }
    let text = notes.join("; ");
    if undecided {
        (None, text)
    } else {
        (
            Some(true),
            if text.is_empty() {
                "no k_i to check".into()
            } else {
                text
            },
        )
    }
}
