//! Exact number tower: rationals, real quadratic numbers `a + b√d`, sums of
//! square roots, and rational intervals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("operands live in different quadratic fields (radicands {0} and {1})")]
    MixedRadicands(BigInt, BigInt),
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative number")]
    NegativeRadicand,
    #[error("invalid interval: lo > hi")]
    InvalidInterval,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Exact integer square root if `m` is a perfect square.
pub fn exact_sqrt(m: &BigInt) -> Option<BigInt> {
    if m.is_negative() {
        return None;
    }
    let r = m.sqrt();
    if &r * &r == *m {
        Some(r)
    } else {
        None
    }
}

pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    Some(BigRational::new(
        exact_sqrt(r.numer())?,
        exact_sqrt(r.denom())?,
    ))
}

const FULL_FACTOR_LIMIT: u64 = 8_000_000_000_000_000_000;
const TRIAL_LIMIT: u64 = 2_000_000;

/// Splits `m = s · r²` with `s` squarefree. Inputs beyond ~8e18 are trial
/// divided up to 2e6 and the cofactor kept unless it is a perfect square.
pub fn squarefree_part(m: &BigUint) -> (BigUint, BigUint) {
    if m.is_zero() {
        return (BigUint::one(), BigUint::zero());
    }
    let mut rest = m.clone();
    let mut sf = BigUint::one();
    let mut root = BigUint::one();
    let limit = if *m <= BigUint::from(FULL_FACTOR_LIMIT) {
        m.sqrt().to_u64().unwrap_or(u64::MAX) + 1
    } else {
        TRIAL_LIMIT
    };
    let mut p: u64 = 2;
    while p <= limit {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e > 0 {
            root *= pb.pow(e / 2);
            if e % 2 == 1 {
                sf *= &pb;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > BigUint::one() {
        let r = rest.sqrt();
        if &r * &r == rest {
            root *= r;
        } else {
            sf *= rest;
        }
    }
    (sf, root)
}

fn squarefree_int(m: &BigInt) -> (BigInt, BigInt) {
    let (s, r) = squarefree_part(m.magnitude());
    (BigInt::from(s), BigInt::from(r))
}

/// Element `a + b√d` of a real quadratic field; `d` is squarefree and
/// `d = 0` exactly when `b = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    a: BigRational,
    b: BigRational,
    d: BigInt,
}

impl QuadraticNumber {
    pub fn new(a: BigRational, b: BigRational, d: BigInt) -> Result<Self, ExactError> {
        if d.is_negative() {
            return Err(ExactError::NegativeRadicand);
        }
        if b.is_zero() || d.is_zero() {
            return Ok(Self::rational(a));
        }
        let (s, r) = squarefree_int(&d);
        let b = b * big(r);
        if s.is_one() {
            return Ok(Self::rational(a + b));
        }
        Ok(Self { a, b, d: s })
    }

    pub fn rational(a: BigRational) -> Self {
        Self {
            a,
            b: BigRational::zero(),
            d: BigInt::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    /// √r for a non-negative rational r.
    pub fn sqrt_of(r: &BigRational) -> Result<Self, ExactError> {
        if r.is_negative() {
            return Err(ExactError::NegativeRadicand);
        }
        let den = r.denom().clone();
        Self::new(
            BigRational::zero(),
            BigRational::new(BigInt::one(), den.clone()),
            r.numer() * den,
        )
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn radical_coeff(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.a.is_integer()
    }

    pub fn conjugate(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }

    /// a² − b²d
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * big(self.d.clone())
    }

    pub fn trace(&self) -> BigRational {
        &self.a * int(2)
    }

    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        // a and b√d have opposite signs: compare a² with b²d.
        match (&self.a * &self.a).cmp(&(&self.b * &self.b * big(self.d.clone()))) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    /// Re-express `other` over this number's radicand when the fields agree.
    fn common(&self, other: &Self) -> Result<(BigInt, BigRational, BigRational), ExactError> {
        if other.b.is_zero() {
            return Ok((self.d.clone(), self.b.clone(), BigRational::zero()));
        }
        if self.b.is_zero() || self.d == other.d {
            return Ok((other.d.clone(), self.b.clone(), other.b.clone()));
        }
        // √d2 = (√(d1·d2)/d1)·√d1 when d1·d2 is a perfect square.
        let prod = &self.d * &other.d;
        match exact_sqrt(&prod) {
            Some(r) => Ok((
                self.d.clone(),
                self.b.clone(),
                &other.b * BigRational::new(r, self.d.clone()),
            )),
            None => Err(ExactError::MixedRadicands(self.d.clone(), other.d.clone())),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        let (d, b1, b2) = self.common(other)?;
        Self::new(&self.a + &other.a, b1 + b2, d)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.try_add(&-other.clone())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        let (d, b1, b2) = self.common(other)?;
        let dd = big(d.clone());
        let a = &self.a * &other.a + &b1 * &b2 * dd;
        let b = &self.a * &b2 + &b1 * &other.a;
        Self::new(a, b, d)
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Self::new(&self.a / &n, -&self.b / &n, self.d.clone())
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ExactError> {
        if other.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        self.common(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn add_rational(&self, r: &BigRational) -> Self {
        Self {
            a: &self.a + r,
            b: self.b.clone(),
            d: self.d.clone(),
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            a: &self.a * r,
            b: &self.b * r,
            d: self.d.clone(),
        }
    }

    /// Monic minimal polynomial coefficients (ascending): [c0, c1, 1] or [−a, 1].
    pub fn minimal_poly(&self) -> Vec<BigRational> {
        if self.is_rational() {
            vec![-self.a.clone(), BigRational::one()]
        } else {
            vec![self.norm(), -self.trace(), BigRational::one()]
        }
    }

    pub fn to_interval(&self, precision: &BigRational) -> RationalInterval {
        if self.is_rational() {
            return RationalInterval::point(self.a.clone());
        }
        let babs = self.b.abs();
        let mut k: u32 = 8;
        loop {
            let sq = sqrt_enclosure(&self.d, k);
            let w = &sq.hi - &sq.lo;
            if &w * &babs <= *precision {
                let t = sq.scale(&self.b);
                return t.add_rational(&self.a);
            }
            k *= 2;
        }
    }

    pub fn to_f64(&self) -> f64 {
        let iv = self.to_interval(&frac(1, 1_000_000_000_000_000));
        rat_to_f64(&iv.lo)
    }

    /// Exact comparison, refining intervals when the fields differ.
    pub fn compare(&self, other: &Self) -> Ordering {
        if let Ok(diff) = self.try_sub(other) {
            return diff.signum().cmp(&0);
        }
        // Distinct irrational fields: the numbers cannot be equal.
        let mut prec = frac(1, 1 << 20);
        loop {
            let x = self.to_interval(&prec);
            let y = other.to_interval(&prec);
            if x.hi < y.lo {
                return Ordering::Less;
            }
            if y.hi < x.lo {
                return Ordering::Greater;
            }
            prec = &prec * &prec;
        }
    }
}

impl std::ops::Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl From<BigRational> for QuadraticNumber {
    fn from(r: BigRational) -> Self {
        Self::rational(r)
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        let (sign, b) = if self.b.is_negative() {
            ("-", -self.b.clone())
        } else {
            ("+", self.b.clone())
        };
        let coeff = if b.is_one() {
            String::new()
        } else {
            format!("{}*", b)
        };
        if self.a.is_zero() {
            let lead = if sign == "-" { "-" } else { "" };
            write!(f, "{}{}sqrt({})", lead, coeff, self.d)
        } else {
            write!(f, "{} {} {}sqrt({})", self.a, sign, coeff, self.d)
        }
    }
}

pub fn sign_of(r: &BigRational) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub fn rat_to_f64(r: &BigRational) -> f64 {
    // Scale to keep enough significant bits for huge or tiny values.
    let n = r.numer();
    let d = r.denom();
    let shift = n.bits() as i64 - d.bits() as i64 - 60;
    let q = if shift > 0 {
        BigRational::new(n.clone(), d << shift as usize)
    } else {
        BigRational::new(n << (-shift) as usize, d.clone())
    };
    let approx = q.to_integer().to_f64().unwrap_or(f64::NAN);
    approx * 2f64.powi(shift as i32)
}

/// [isqrt(d·4^k)/2^k, (isqrt(d·4^k)+1)/2^k] encloses √d.
fn sqrt_enclosure(d: &BigInt, k: u32) -> RationalInterval {
    let scale = BigInt::one() << k as usize;
    let s = (d * &scale * &scale).sqrt();
    let lo = BigRational::new(s.clone(), scale.clone());
    let hi = if &s * &s == d * &scale * &scale {
        lo.clone()
    } else {
        BigRational::new(s + 1, scale)
    };
    RationalInterval { lo, hi }
}

/// √r enclosure for a non-negative rational with width about 2^-k relative.
pub fn sqrt_rational_interval(r: &BigRational, precision: &BigRational) -> RationalInterval {
    match QuadraticNumber::sqrt_of(r) {
        Ok(q) => q.to_interval(precision),
        Err(_) => RationalInterval::point(BigRational::zero()),
    }
}

/// Closed interval [lo, hi] with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self, ExactError> {
        if lo > hi {
            return Err(ExactError::InvalidInterval);
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: BigRational) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = if self.lo > other.lo {
            &self.lo
        } else {
            &other.lo
        };
        let hi = if self.hi < other.hi {
            &self.hi
        } else {
            &other.hi
        };
        (lo <= hi).then(|| Self {
            lo: lo.clone(),
            hi: hi.clone(),
        })
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Self { lo, hi }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let a = &self.lo * r;
        let b = &self.hi * r;
        if a <= b {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }

    pub fn add_rational(&self, r: &BigRational) -> Self {
        Self {
            lo: &self.lo + r,
            hi: &self.hi + r,
        }
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.contains_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    pub fn div(&self, o: &Self) -> Result<Self, ExactError> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::point(BigRational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        if e % 2 == 0 && self.contains_zero() {
            acc.lo = BigRational::zero();
        }
        acc
    }

    /// Enclosure of √x over a non-negative interval.
    pub fn sqrt(&self, precision: &BigRational) -> Result<Self, ExactError> {
        if self.lo.is_negative() {
            return Err(ExactError::NegativeRadicand);
        }
        let lo = sqrt_rational_interval(&self.lo, precision).lo;
        let hi = sqrt_rational_interval(&self.hi, precision).hi;
        Ok(Self { lo, hi })
    }

    pub fn hull(&self, o: &Self) -> Self {
        let lo = if self.lo < o.lo {
            self.lo.clone()
        } else {
            o.lo.clone()
        };
        let hi = if self.hi > o.hi {
            self.hi.clone()
        } else {
            o.hi.clone()
        };
        Self { lo, hi }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Decimal rendering of a rational, truncated toward zero after `digits`.
pub fn decimal(r: &BigRational, digits: usize) -> String {
    let neg = r.is_negative();
    let a = r.abs();
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = (a * big(scale.clone())).to_integer();
    let (ip, fp) = scaled.div_rem(&scale);
    let mut s = String::new();
    if neg && !scaled.is_zero() {
        s.push('-');
    }
    s.push_str(&ip.to_string());
    if digits > 0 {
        let f = fp.to_string();
        s.push('.');
        s.push_str(&"0".repeat(digits - f.len()));
        s.push_str(&f);
    }
    s
}

/// Parses `p`, `p/q`, decimals `1.25`, scientific `1e-30`, and `p/q` with
/// either side in those forms.
pub fn parse_rational(s: &str) -> Result<BigRational, ExactError> {
    let t = s.trim();
    let err = || ExactError::Parse(s.to_string());
    if t.is_empty() || t.len() > 4096 {
        return Err(err());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = parse_decimal(p.trim()).ok_or_else(err)?;
        let q = parse_decimal(q.trim()).ok_or_else(err)?;
        if q.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        return Ok(p / q);
    }
    parse_decimal(t).ok_or_else(err)
}

fn parse_decimal(t: &str) -> Option<BigRational> {
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    if !(-4000..=4000).contains(&exp) {
        return None;
    }
    let (neg, body) = match mant.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty() {
        return None;
    }
    if !ip.bytes().chain(fp.bytes()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{}{}", ip, fp);
    let n: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    let e = exp - fp.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if e >= 0 {
        big(n * ten.pow(e as u32))
    } else {
        BigRational::new(n, ten.pow((-e) as u32))
    };
    if neg {
        r = -r;
    }
    Some(r)
}

/// Exact element Σ c_d √d over squarefree d ≥ 1 (d = 1 is the rational part).
/// Closed under + and ×; zero-testing is exact by linear independence of
/// square roots of distinct squarefree integers.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SqrtSum {
    terms: BTreeMap<BigInt, BigRational>,
}

impl SqrtSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rational(r: BigRational) -> Self {
        let mut s = Self::zero();
        s.push(BigInt::one(), r);
        s
    }

    fn push(&mut self, d: BigInt, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self
            .terms
            .entry(d.clone())
            .or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&d);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_quadratic(&self) -> Option<QuadraticNumber> {
        let one = BigInt::one();
        let a = self
            .terms
            .get(&one)
            .cloned()
            .unwrap_or_else(BigRational::zero);
        let irr: Vec<_> = self.terms.iter().filter(|(d, _)| **d != one).collect();
        match irr.len() {
            0 => Some(QuadraticNumber::rational(a)),
            1 => QuadraticNumber::new(a, irr[0].1.clone(), irr[0].0.clone()).ok(),
            _ => None,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut s = self.clone();
        for (d, c) in &o.terms {
            s.push(d.clone(), c.clone());
        }
        s
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(d, c)| (d.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut s = Self::zero();
        for (d1, c1) in &self.terms {
            for (d2, c2) in &o.terms {
                let g = d1.gcd(d2);
                let d = (d1 / &g) * (d2 / &g);
                s.push(d, c1 * c2 * big(g));
            }
        }
        s
    }

    pub fn to_interval(&self, precision: &BigRational) -> RationalInterval {
        let n = self.terms.len().max(1);
        let each = precision / int(n as i64);
        let mut acc = RationalInterval::point(BigRational::zero());
        for (d, c) in &self.terms {
            let q = QuadraticNumber::new(BigRational::zero(), c.clone(), d.clone())
                .expect("squarefree radicand");
            acc = acc.add(&q.to_interval(&each));
        }
        acc
    }

    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let mut prec = frac(1, 1 << 30);
        loop {
            let iv = self.to_interval(&prec);
            if iv.is_positive() {
                return 1;
            }
            if iv.is_negative() {
                return -1;
            }
            prec = &prec * &prec;
        }
    }
}

impl From<&QuadraticNumber> for SqrtSum {
    fn from(q: &QuadraticNumber) -> Self {
        let mut s = SqrtSum::rational(q.rational_part().clone());
        if !q.is_rational() {
            s.push(q.radicand().clone(), q.radical_coeff().clone());
        }
        s
    }
}

impl fmt::Display for SqrtSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(d, c)| {
                if d.is_one() {
                    c.to_string()
                } else {
                    format!("{}*sqrt({})", c, d)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
