//! Sturm-sequence root counting and isolation, exact recovery of rational
//! and quadratic roots, and certified minimization of even polynomials on
//! [−1, 1].

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebraic::RealAlgebraic;
use crate::exact::{frac, int, BigRational, ExactError, QuadraticNumber, RationalInterval};
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("polynomial is not even")]
    NotEven,
    #[error("polynomial degree too small")]
    Degree,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("root selection failed: {0}")]
    Selection(String),
}

/// 10⁻³⁰
pub fn default_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10).pow(30))
}

/// Sturm chain of `p` (after squarefree reduction). Remainders are scaled by
/// positive constants only.
pub fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let p0 = p.squarefree().primitive();
    let mut chain = vec![p0.clone()];
    if p0.degree() == 0 {
        return chain;
    }
    chain.push(p0.derivative().primitive());
    loop {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        let r = -&r;
        let l = r.primitive_ints();
        let mut g = BigInt::zero();
        for c in &l {
            g = g.gcd(c);
        }
        chain.push(r.scale(&BigRational::new(BigInt::one(), g)));
    }
    chain
}

fn variations(chain: &[Poly], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last = 0;
    for p in chain {
        let s = p.sign_at(x);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct real roots in the half-open interval (lo, hi].
pub fn sturm_count(p: &Poly, iv: &RationalInterval) -> usize {
    if p.is_zero() || p.degree() == 0 {
        return 0;
    }
    let chain = sturm_chain(p);
    count_with_chain(&chain, &iv.lo, &iv.hi)
}

fn count_with_chain(chain: &[Poly], lo: &BigRational, hi: &BigRational) -> usize {
    if lo >= hi {
        return 0;
    }
    variations(chain, lo).saturating_sub(variations(chain, hi))
}

/// A real algebraic number: the unique root of a squarefree integer
/// polynomial inside a closed rational interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatedRoot {
    poly: Poly,
    interval: RationalInterval,
    sign_at_lo: i32,
}

impl IsolatedRoot {
    /// Checks that `poly` has exactly one root in `interval`.
    pub fn new(poly: &Poly, interval: RationalInterval) -> Result<Self, RootError> {
        if poly.is_zero() {
            return Err(RootError::ZeroPolynomial);
        }
        let q = poly.squarefree().primitive();
        let at_lo = q.sign_at(&interval.lo);
        let n = sturm_count(&q, &interval) + usize::from(at_lo == 0);
        if n != 1 {
            return Err(RootError::Selection(format!("{} roots in {}", n, interval)));
        }
        if interval.lo == interval.hi || at_lo == 0 {
            let r = interval.lo.clone();
            return Ok(Self {
                poly: q,
                interval: RationalInterval::point(r),
                sign_at_lo: 0,
            });
        }
        Ok(Self {
            poly: q,
            interval,
            sign_at_lo: at_lo,
        })
    }

    fn raw(poly: Poly, interval: RationalInterval) -> Self {
        let s = poly.sign_at(&interval.lo);
        Self {
            poly,
            interval,
            sign_at_lo: s,
        }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn interval(&self) -> &RationalInterval {
        &self.interval
    }

    pub fn sign_at_lo(&self) -> i32 {
        self.sign_at_lo
    }

    pub fn exact_value(&self) -> Option<&BigRational> {
        (self.interval.lo == self.interval.hi).then_some(&self.interval.lo)
    }

    /// Bisects until the interval width is at most `width`.
    pub fn refine(&mut self, width: &BigRational) {
        while self.interval.width() > *width {
            self.bisect();
        }
    }

    pub fn bisect(&mut self) {
        if self.interval.lo == self.interval.hi {
            return;
        }
        let m = self.interval.mid();
        let s = self.poly.sign_at(&m);
        if s == 0 {
            self.interval = RationalInterval::point(m);
            self.sign_at_lo = 0;
        } else if s == self.sign_at_lo {
            self.interval.lo = m;
        } else {
            self.interval.hi = m;
        }
    }

    pub fn refined(&self, width: &BigRational) -> Self {
        let mut r = self.clone();
        r.refine(width);
        r
    }

    /// Does `q` vanish at this root? Exact: gcd roots inside the interval.
    pub fn is_root_of(&self, q: &Poly) -> bool {
        if q.is_zero() {
            return true;
        }
        if let Some(r) = self.exact_value() {
            return q.eval(r).is_zero();
        }
        let g = self.poly.gcd(q);
        if g.degree() == 0 {
            return false;
        }
        g.sign_at(&self.interval.lo) == 0 || sturm_count(&g, &self.interval) > 0
    }

    /// Restricts the defining polynomial to the factor of `p` that holds the root.
    pub fn restrict_to_factor(&mut self, factor: &Poly) {
        let f = factor.squarefree().primitive();
        if self.is_root_of(&f) {
            self.poly = f;
        } else if let Some(co) = self.poly.exact_div(&f) {
            self.poly = co.squarefree().primitive();
        }
    }

    pub fn compare_rational(&self, r: &BigRational) -> Ordering {
        if let Some(v) = self.exact_value() {
            return v.cmp(r);
        }
        if self.interval.hi < *r {
            return Ordering::Less;
        }
        if self.interval.lo > *r {
            return Ordering::Greater;
        }
        // r lies inside the open isolating interval.
        match self.poly.sign_at(r) {
            0 => Ordering::Equal,
            s if s == self.sign_at_lo => Ordering::Greater,
            _ => Ordering::Less,
        }
    }
}

impl fmt::Display for IsolatedRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root of {} in {}", self.poly, self.interval)
    }
}

/// Isolates every distinct real root of `p` in the closed interval,
/// sorted ascending, each with width at most `width`.
pub fn isolate_roots(p: &Poly, iv: &RationalInterval, width: &BigRational) -> Vec<IsolatedRoot> {
    if p.is_zero() || p.degree() == 0 {
        return vec![];
    }
    let q = p.squarefree().primitive();
    let chain = sturm_chain(&q);
    let mut out = Vec::new();
    let mut lo = iv.lo.clone();
    if q.sign_at(&lo) == 0 {
        out.push(IsolatedRoot {
            poly: q.clone(),
            interval: RationalInterval::point(lo.clone()),
            sign_at_lo: 0,
        });
        // Step right past the exact root without skipping another one.
        let mut step = (&iv.hi - &lo) / int(2);
        while !step.is_zero() {
            let cand = &lo + &step;
            if q.sign_at(&cand) != 0 && count_with_chain(&chain, &lo, &cand) == 0 {
                lo = cand;
                break;
            }
            step /= int(2);
        }
    }
    let mut stack = vec![(lo, iv.hi.clone())];
    let mut found = Vec::new();
    while let Some((a, b)) = stack.pop() {
        let c = count_with_chain(&chain, &a, &b);
        if c == 0 {
            continue;
        }
        if c == 1 {
            let r = if q.sign_at(&b) == 0 {
                IsolatedRoot {
                    poly: q.clone(),
                    interval: RationalInterval::point(b),
                    sign_at_lo: 0,
                }
            } else {
                IsolatedRoot::raw(q.clone(), RationalInterval { lo: a, hi: b })
            };
            found.push(r);
            continue;
        }
        let mut m = (&a + &b) / int(2);
        let mut k = 3;
        while q.sign_at(&m) == 0 {
            m = &a + (&b - &a) * frac(k, 2 * k + 1);
            k += 1;
        }
        stack.push((a, m.clone()));
        stack.push((m, b));
    }
    for mut r in found {
        r.refine(width);
        out.push(r);
    }
    out.sort_by(|x, y| x.interval.lo.cmp(&y.interval.lo));
    out
}

/// All real roots of `p`.
pub fn real_roots(p: &Poly, width: &BigRational) -> Vec<IsolatedRoot> {
    let b = p.root_bound();
    isolate_roots(
        p,
        &RationalInterval {
            lo: -b.clone(),
            hi: b,
        },
        width,
    )
}

/// Rational with least denominator in the closed interval [lo, hi].
pub fn simplest_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    if !lo.is_positive() && !hi.is_negative() {
        return BigRational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi.clone(), &-lo.clone());
    }
    let fl = lo.floor();
    if fl == *lo {
        return lo.clone();
    }
    let up = &fl + BigRational::one();
    if up <= *hi {
        return up;
    }
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

/// Exact form of a real root: rational, quadratic, or left isolated on a
/// squarefree factor.
pub fn classify(root: &IsolatedRoot) -> RealAlgebraic {
    if let Some(r) = root.exact_value() {
        return RealAlgebraic::rational(r.clone());
    }
    let q = root.poly.clone();
    let ints = q.primitive_ints();
    let lc = ints.last().cloned().unwrap_or_else(BigInt::one).abs();
    match q.degree() {
        1 => return RealAlgebraic::rational(-q.coeff(0) / q.coeff(1)),
        2 => return RealAlgebraic::Quad(quadratic_root(&q, root)),
        _ => {}
    }
    if !may_have_small_factor(&ints) {
        return RealAlgebraic::Root(root.clone());
    }
    if let Some(r) = rational_candidate(root, &lc) {
        return RealAlgebraic::rational(r);
    }
    // Quadratic factor through a second real root.
    let tight = BigRational::new(BigInt::one(), &lc * &lc * 4);
    for other in real_roots(&q, &frac(1, 4)) {
        if same_root(root, &other) {
            continue;
        }
        let mut me = root.clone();
        let mut o = other;
        loop {
            let s = me.interval.add(&o.interval);
            let p = me.interval.mul(&o.interval);
            if s.width() < tight && p.width() < tight {
                let sr = simplest_between(&s.lo, &s.hi);
                let pr = simplest_between(&p.lo, &p.hi);
                let g = Poly::new(vec![pr, -sr, BigRational::one()]);
                if q.exact_div(&g).is_some() && root.is_root_of(&g) {
                    return RealAlgebraic::Quad(quadratic_root(&g, root));
                }
                break;
            }
            me.bisect();
            o.bisect();
        }
    }
    RealAlgebraic::Root(root.clone())
}

/// False when some prime p ∤ lc proves that no factor of degree 1 or 2
/// exists over Q: such a factor would leave a root in F_p or an irreducible
/// quadratic factor mod p, i.e. a nontrivial gcd with x^{p²} − x.
fn may_have_small_factor(ints: &[BigInt]) -> bool {
    let d = ints.len() - 1;
    let mut tried = 0;
    for p in (3u64..1000).filter(|p| (2..*p).take_while(|q| q * q <= *p).all(|q| p % q != 0)) {
        let pb = BigInt::from(p);
        let f: Vec<u64> = ints
            .iter()
            .map(|c| c.mod_floor(&pb).try_into().expect("reduced"))
            .collect();
        if f[d] == 0 {
            continue;
        }
        tried += 1;
        if tried > 20 {
            break;
        }
        let f = modp::monic(f, p);
        let xp2 = modp::pow_x(p * p, &f, p);
        let mut h = xp2;
        // h = x^{p²} − x mod f
        if h.len() < 2 {
            h.resize(2, 0);
        }
        h[1] = (h[1] + p - 1) % p;
        if modp::gcd(f, h, p).len() == 1 {
            return false;
        }
    }
    true
}

/// Dense polynomials over F_p, ascending coefficients, no trailing zeros.
mod modp {
    fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv(a: u64, p: u64) -> u64 {
        let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    pub fn monic(a: Vec<u64>, p: u64) -> Vec<u64> {
        let a = trim(a);
        let l = inv(*a.last().expect("nonzero"), p);
        a.into_iter().map(|c| c * l % p).collect()
    }

    fn rem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
        let dm = m.len() - 1;
        let li = inv(m[dm], p);
        a = trim(a);
        while a.len() > dm {
            let k = a.len() - 1 - dm;
            let c = a[a.len() - 1] * li % p;
            for (i, mi) in m.iter().enumerate() {
                a[k + i] = (a[k + i] + p - c * mi % p) % p;
            }
            a = trim(a);
        }
        a
    }

    fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut c = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                c[i + j] = (c[i + j] + x * y) % p;
            }
        }
        rem(c, m, p)
    }

    /// x^e mod m.
    pub fn pow_x(mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut r = rem(vec![1], m, p);
        let mut b = rem(vec![0, 1], m, p);
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(&r, &b, m, p);
            }
            b = mulmod(&b, &b, m, p);
            e >>= 1;
        }
        r
    }

    /// Monic gcd; a constant gcd is returned as [1].
    pub fn gcd(a: Vec<u64>, b: Vec<u64>, p: u64) -> Vec<u64> {
        let (mut a, mut b) = (trim(a), trim(b));
        while !b.is_empty() {
            let r = rem(a, &b, p);
            a = b;
            b = r;
        }
        monic(a, p)
    }
}

/// Two isolations of roots of the same polynomial denote the same number.
fn same_root(a: &IsolatedRoot, b: &IsolatedRoot) -> bool {
    match a.interval.intersect(&b.interval) {
        None => false,
        Some(i) => a.poly.sign_at(&i.lo) == 0 || sturm_count(&a.poly, &i) > 0,
    }
}

fn rational_candidate(root: &IsolatedRoot, lc: &BigInt) -> Option<BigRational> {
    let w = BigRational::new(BigInt::one(), lc * lc + BigInt::one());
    let r = root.refined(&w);
    if let Some(v) = r.exact_value() {
        return Some(v.clone());
    }
    let s = simplest_between(&r.interval.lo, &r.interval.hi);
    (s.denom() <= lc && r.poly.eval(&s).is_zero()).then_some(s)
}

/// The root of the quadratic `g` that lies in the isolating interval.
fn quadratic_root(g: &Poly, root: &IsolatedRoot) -> QuadraticNumber {
    let a = g.coeff(2);
    let b = g.coeff(1);
    let c = g.coeff(0);
    let disc = &b * &b - int(4) * &a * &c;
    let sq = QuadraticNumber::sqrt_of(&disc).expect("real root implies nonnegative discriminant");
    let two_a = QuadraticNumber::rational(&a * int(2));
    let minus_b = QuadraticNumber::rational(-b);
    let r1 = minus_b.try_add(&sq).unwrap().try_div(&two_a).unwrap();
    let lo = QuadraticNumber::rational(root.interval.lo.clone());
    let hi = QuadraticNumber::rational(root.interval.hi.clone());
    if r1.compare(&lo) != Ordering::Less && r1.compare(&hi) != Ordering::Greater {
        r1
    } else {
        minus_b.try_sub(&sq).unwrap().try_div(&two_a).unwrap()
    }
}

/// Certified minimum of an even polynomial on [−1, 1].
#[derive(Debug, Clone)]
pub struct MinCertificate {
    /// Non-negative argmin points x, ascending.
    pub argmin_points: Vec<RealAlgebraic>,
    /// The same points as u = x².
    pub argmin_u: Vec<RealAlgebraic>,
    pub min_value: RealAlgebraic,
    /// Multiplicity of each argmin as a zero of p − min (in x).
    pub multiplicity_pattern: Vec<u32>,
}

pub fn minimize_even_on_unit(p: &Poly) -> Result<MinCertificate, RootError> {
    if !p.is_even() {
        return Err(RootError::NotEven);
    }
    if p.degree() < 2 {
        return Err(RootError::Degree);
    }
    let q = p.even_to_u();
    let unit = RationalInterval {
        lo: BigRational::zero(),
        hi: BigRational::one(),
    };
    let mut cands = vec![RealAlgebraic::rational(BigRational::zero())];
    for r in isolate_roots(&q.derivative(), &unit, &frac(1, 1 << 20)) {
        let v = classify(&r);
        if v.is_rational_value(&BigRational::zero()) || v.is_rational_value(&BigRational::one()) {
            continue;
        }
        cands.push(v);
    }
    cands.push(RealAlgebraic::rational(BigRational::one()));
    // Enclosures rule out most critical points before exact evaluation.
    let w = frac(1, 1 << 40);
    let encl: Vec<RationalInterval> = cands
        .iter()
        .map(|u| q.eval_interval(&u.to_interval(&w)))
        .collect();
    let min_hi = encl.iter().map(|e| &e.hi).min().expect("nonempty").clone();
    let cands: Vec<RealAlgebraic> = cands
        .into_iter()
        .zip(&encl)
        .filter(|(_, e)| e.lo <= min_hi)
        .map(|(u, _)| u)
        .collect();
    let values: Vec<RealAlgebraic> = cands
        .iter()
        .map(|u| u.eval_poly(&q))
        .collect::<Result<_, _>>()?;
    let mut best = 0;
    for i in 1..values.len() {
        if values[i].compare(&values[best]) == Ordering::Less {
            best = i;
        }
    }
    let min_value = values[best].clone();
    let mut argmin_u = Vec::new();
    let mut mult = Vec::new();
    for (u, v) in cands.iter().zip(&values) {
        if v.compare(&min_value) == Ordering::Equal {
            let m = multiplicity_at(&q, u)?;
            // u = 0 is a zero of order m in u, hence 2m in x.
            argmin_u.push(u.clone());
            mult.push(if u.is_zero() { 2 * m } else { m });
        }
    }
    let argmin_points = argmin_u
        .iter()
        .map(|u| u.sqrt())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MinCertificate {
        argmin_points,
        argmin_u,
        min_value,
        multiplicity_pattern: mult,
    })
}

/// Order of vanishing of q − q(u) at u.
fn multiplicity_at(q: &Poly, u: &RealAlgebraic) -> Result<u32, RootError> {
    let mut d = q.derivative();
    let mut m = 1;
    while !d.is_zero() && u.eval_poly(&d)?.is_zero() {
        d = d.derivative();
        m += 1;
    }
    Ok(m)
}

impl MinCertificate {
    /// c = −min.
    pub fn depth(&self) -> RealAlgebraic {
        self.min_value.neg()
    }
}
