//! Exact real algebraic numbers: quadratic closed forms where they exist,
//! isolated roots otherwise, plus arithmetic in Q(θ) = Q[x]/(p).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact::{
    decimal, frac, int, rat_to_f64, BigRational, ExactError, QuadraticNumber, RationalInterval,
};
use crate::poly::Poly;
use crate::realroots::{classify, isolate_roots, real_roots, sturm_count, IsolatedRoot, RootError};

#[derive(Debug, Clone)]
pub enum RealAlgebraic {
    Quad(QuadraticNumber),
    Root(IsolatedRoot),
}

impl PartialEq for RealAlgebraic {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl From<QuadraticNumber> for RealAlgebraic {
    fn from(q: QuadraticNumber) -> Self {
        RealAlgebraic::Quad(q)
    }
}

impl From<BigRational> for RealAlgebraic {
    fn from(r: BigRational) -> Self {
        RealAlgebraic::rational(r)
    }
}

impl RealAlgebraic {
    pub fn rational(r: BigRational) -> Self {
        RealAlgebraic::Quad(QuadraticNumber::rational(r))
    }

    pub fn as_quadratic(&self) -> Option<&QuadraticNumber> {
        match self {
            RealAlgebraic::Quad(q) => Some(q),
            RealAlgebraic::Root(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            RealAlgebraic::Quad(q) => q.to_rational().cloned(),
            RealAlgebraic::Root(r) => r.exact_value().cloned(),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn is_rational_value(&self, v: &BigRational) -> bool {
        self.as_rational().as_ref() == Some(v)
    }

    pub fn is_integer(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_integer())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RealAlgebraic::Quad(q) => q.is_zero(),
            RealAlgebraic::Root(r) => r.is_root_of(&Poly::x()),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            RealAlgebraic::Quad(q) => q.signum(),
            RealAlgebraic::Root(r) => match r.compare_rational(&BigRational::zero()) {
                Ordering::Less => -1,
                Ordering::Equal => 0,
                Ordering::Greater => 1,
            },
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            RealAlgebraic::Quad(q) => RealAlgebraic::Quad(-q.clone()),
            RealAlgebraic::Root(r) => {
                let p = r.poly().compose(&Poly::from_ints(&[0, -1]));
                let iv = r.interval().neg();
                RealAlgebraic::Root(IsolatedRoot::new(&p, iv).expect("negated isolation"))
            }
        }
    }

    /// Enclosing interval of width at most `width`.
    pub fn to_interval(&self, width: &BigRational) -> RationalInterval {
        match self {
            RealAlgebraic::Quad(q) => q.to_interval(width),
            RealAlgebraic::Root(r) => r.refined(width).interval().clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        let iv = self.to_interval(&BigRational::new(BigInt::one(), BigInt::from(10).pow(20)));
        rat_to_f64(&iv.mid())
    }

    /// Decimal rendering with `digits` fractional digits (truncated, the
    /// enclosure width kept below one unit of the last digit).
    pub fn decimal(&self, digits: usize) -> String {
        if let Some(r) = self.as_rational() {
            return decimal(&r, digits);
        }
        let w = BigRational::new(BigInt::one(), BigInt::from(10).pow(digits as u32 + 3));
        decimal(&self.to_interval(&w).mid(), digits)
    }

    /// Defining polynomial (minimal for rational and quadratic values).
    pub fn defining_poly(&self) -> Poly {
        match self {
            RealAlgebraic::Quad(q) => Poly::new(q.minimal_poly()).primitive(),
            RealAlgebraic::Root(r) => r.poly().clone(),
        }
    }

    pub fn as_isolated(&self) -> IsolatedRoot {
        match self {
            RealAlgebraic::Root(r) => r.clone(),
            RealAlgebraic::Quad(q) => {
                let p = Poly::new(q.minimal_poly());
                if q.is_rational() {
                    return IsolatedRoot::new(
                        &p,
                        RationalInterval::point(q.rational_part().clone()),
                    )
                    .expect("rational root");
                }
                // Separate from the conjugate, which differs by 2b√d.
                let mut w = frac(1, 16);
                loop {
                    let iv = q.to_interval(&w);
                    if let Ok(r) = IsolatedRoot::new(&p, iv) {
                        return r;
                    }
                    w = &w * &w;
                }
            }
        }
    }

    /// Exact comparison.
    pub fn compare(&self, other: &Self) -> Ordering {
        if let (RealAlgebraic::Quad(a), RealAlgebraic::Quad(b)) = (self, other) {
            return a.compare(b);
        }
        if let Some(r) = other.as_rational() {
            return self.as_isolated().compare_rational(&r);
        }
        if let Some(r) = self.as_rational() {
            return other.as_isolated().compare_rational(&r).reverse();
        }
        let mut a = self.as_isolated();
        let mut b = other.as_isolated();
        let g = a.poly().gcd(b.poly());
        if g.degree() > 0 {
            if let Some(i) = a.interval().intersect(b.interval()) {
                if g.sign_at(&i.lo) == 0 || sturm_count(&g, &i) > 0 {
                    return Ordering::Equal;
                }
            }
        }
        loop {
            if a.interval().hi < b.interval().lo {
                return Ordering::Less;
            }
            if b.interval().hi < a.interval().lo {
                return Ordering::Greater;
            }
            a.bisect();
            b.bisect();
        }
    }

    pub fn eval_poly(&self, g: &Poly) -> Result<RealAlgebraic, RootError> {
        match self {
            RealAlgebraic::Quad(q) => Ok(RealAlgebraic::Quad(g.eval_quadratic(q)?)),
            RealAlgebraic::Root(_) => NumberField::new(self).value(g),
        }
    }

    /// g(θ)/h(θ).
    pub fn eval_ratio(&self, g: &Poly, h: &Poly) -> Result<RealAlgebraic, RootError> {
        match self {
            RealAlgebraic::Quad(q) => {
                let den = h.eval_quadratic(q)?;
                Ok(RealAlgebraic::Quad(g.eval_quadratic(q)?.try_div(&den)?))
            }
            RealAlgebraic::Root(_) => {
                let mut k = NumberField::new(self);
                let inv = k.inv(h)?;
                let num = k.mul(g, &inv);
                k.value(&num)
            }
        }
    }

    /// Non-negative square root.
    pub fn sqrt(&self) -> Result<RealAlgebraic, RootError> {
        if self.signum() < 0 {
            return Err(RootError::Exact(ExactError::NegativeRadicand));
        }
        if let Some(r) = self.as_rational() {
            return Ok(RealAlgebraic::Quad(QuadraticNumber::sqrt_of(&r)?));
        }
        let m = self.defining_poly().u_to_even();
        let mut w = frac(1, 1 << 16);
        loop {
            let u = self.to_interval(&w);
            let x = u.sqrt(&(&w * &w))?;
            if let Ok(r) = IsolatedRoot::new(&m, x) {
                return Ok(classify(&r));
            }
            w = &w * &w;
        }
    }

    pub fn to_rational_interval_string(&self) -> String {
        self.to_interval(&frac(1, 1_000_000)).to_string()
    }
}

impl fmt::Display for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealAlgebraic::Quad(q) => write!(f, "{}", q),
            RealAlgebraic::Root(r) => write!(f, "{}", r),
        }
    }
}

/// Q(θ) = Q[x]/(p) for an isolated real root θ. Zero divisors are removed
/// lazily by replacing p with the factor that holds θ.
#[derive(Debug, Clone)]
pub struct NumberField {
    theta: IsolatedRoot,
}

impl NumberField {
    pub fn new(theta: &RealAlgebraic) -> Self {
        Self {
            theta: theta.as_isolated(),
        }
    }

    pub fn from_root(theta: IsolatedRoot) -> Self {
        Self { theta }
    }

    pub fn generator(&self) -> &IsolatedRoot {
        &self.theta
    }

    pub fn degree(&self) -> usize {
        self.theta.poly().degree()
    }

    pub fn reduce(&self, h: &Poly) -> Poly {
        h.rem(self.theta.poly())
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&(a * b))
    }

    pub fn is_zero(&self, h: &Poly) -> bool {
        self.theta.is_root_of(h)
    }

    pub fn inv(&mut self, h: &Poly) -> Result<Poly, RootError> {
        loop {
            let hr = self.reduce(h);
            let (g, s, _) = hr.ext_gcd(self.theta.poly());
            if g.degree() == 0 && !g.is_zero() {
                return Ok(self.reduce(&s));
            }
            if self.theta.is_root_of(&g) {
                return Err(RootError::Exact(ExactError::DivisionByZero));
            }
            self.theta.restrict_to_factor(&g);
        }
    }

    pub fn enclose(&mut self, h: &Poly, width: &BigRational) -> RationalInterval {
        self.theta.refine(width);
        h.eval_interval(self.theta.interval())
    }

    pub fn sign(&mut self, h: &Poly) -> i32 {
        if self.is_zero(h) {
            return 0;
        }
        let hr = self.reduce(h);
        loop {
            let e = hr.eval_interval(self.theta.interval());
            if e.is_positive() {
                return 1;
            }
            if e.is_negative() {
                return -1;
            }
            for _ in 0..8 {
                self.theta.bisect();
            }
        }
    }

    /// Characteristic polynomial of multiplication by h on Q[x]/(p).
    pub fn charpoly(&self, h: &Poly) -> Poly {
        let d = self.degree();
        let hr = self.reduce(h);
        let mut a = vec![vec![BigRational::zero(); d]; d];
        let mut col = hr;
        for j in 0..d {
            for (i, row) in a.iter_mut().enumerate() {
                row[j] = col.coeff(i);
            }
            col = self.reduce(&(&col * &Poly::x()));
        }
        faddeev_leverrier(&a)
    }

    /// The real number h(θ) in exact form.
    pub fn value(&mut self, h: &Poly) -> Result<RealAlgebraic, RootError> {
        let hr = self.reduce(h);
        if hr.degree() == 0 {
            return Ok(RealAlgebraic::rational(hr.coeff(0)));
        }
        if let Some(r) = self.theta.exact_value() {
            return Ok(RealAlgebraic::rational(hr.eval(r)));
        }
        if self.is_zero(&hr) {
            return Ok(RealAlgebraic::rational(BigRational::zero()));
        }
        let chi = self.charpoly(&hr).squarefree();
        let mut w = self.theta.interval().width() / int(4);
        loop {
            let e = self.enclose(&hr, &w);
            let at_lo = usize::from(chi.sign_at(&e.lo) == 0);
            if sturm_count(&chi, &e) + at_lo == 1 {
                let r = IsolatedRoot::new(&chi, e)?;
                return Ok(classify(&r));
            }
            w = &w / int(1 << 16);
        }
    }

    /// Sturm-style count and exact roots in (0, 1) of P(u) = Σ c_k(θ) u^k.
    pub fn roots_in_unit(&mut self, coeffs: &[Poly]) -> Result<FieldRoots, RootError> {
        let mut c: Vec<Poly> = coeffs.iter().map(|p| self.reduce(p)).collect();
        while c.last().is_some_and(|p| self.is_zero(p)) {
            c.pop();
        }
        let deg = c.len().saturating_sub(1);
        if deg == 0 {
            return Ok(FieldRoots {
                degree: 0,
                roots: vec![],
                repeated: false,
                boundary: false,
            });
        }
        let boundary =
            self.is_zero(&c[0]) || self.is_zero(&c.iter().fold(Poly::zero(), |a, b| &a + b));
        let chain = self.sturm_chain(&c)?;
        let repeated = chain.last().is_some_and(|g| g.len() > 1);
        let count = self.variations(&chain, &BigRational::zero()) as i64
            - self.variations(&chain, &BigRational::one()) as i64;
        let count = count.max(0) as usize
            - usize::from(self.is_zero(&c.iter().fold(Poly::zero(), |a, b| &a + b)) && count > 0);
        if count == 0 {
            return Ok(FieldRoots {
                degree: deg,
                roots: vec![],
                repeated,
                boundary,
            });
        }
        if deg == 1 {
            let num = -&c[0];
            let inv = self.inv(&c[1])?;
            let r = self.value(&self.mul(&num, &inv))?;
            return Ok(FieldRoots {
                degree: 1,
                roots: vec![r],
                repeated,
                boundary,
            });
        }
        let norm = self.norm_poly(&c);
        let open = RationalInterval {
            lo: BigRational::zero(),
            hi: BigRational::one(),
        };
        let cands: Vec<IsolatedRoot> = isolate_roots(&norm, &open, &frac(1, 1 << 10))
            .into_iter()
            .filter(|r| {
                r.exact_value()
                    .map_or(true, |v| !v.is_zero() && !v.is_one())
            })
            .collect();
        let mut keep = Vec::new();
        for cand in cands {
            if !self.excludes(&c, &cand) {
                keep.push(cand);
            }
        }
        if keep.len() != count {
            return Err(RootError::Selection(format!(
                "expected {} roots in (0,1), {} candidates",
                count,
                keep.len()
            )));
        }
        let roots = keep.iter().map(classify).collect();
        Ok(FieldRoots {
            degree: deg,
            roots,
            repeated,
            boundary,
        })
    }

    /// True when interval evaluation proves P(r; θ) ≠ 0.
    fn excludes(&mut self, c: &[Poly], r: &IsolatedRoot) -> bool {
        let mut rr = r.clone();
        let mut w = frac(1, 1 << 20);
        let floor = BigRational::new(BigInt::one(), BigInt::from(10).pow(80));
        while w > floor {
            rr.refine(&w);
            self.theta.refine(&w);
            let ti = self.theta.interval().clone();
            let ri = rr.interval().clone();
            let mut acc = RationalInterval::point(BigRational::zero());
            for ck in c.iter().rev() {
                acc = acc.mul(&ri).add(&ck.eval_interval(&ti));
            }
            if !acc.contains_zero() {
                return true;
            }
            w = &w * &w;
        }
        false
    }

    /// N(u) = ∏ over conjugates of P(u; θ_i), by interpolation of
    /// determinants of multiplication matrices.
    pub fn norm_poly(&self, c: &[Poly]) -> Poly {
        let d = self.degree();
        let m = c.len() - 1;
        let npts = m * d + 1;
        let xs: Vec<BigRational> = (0..npts as i64).map(int).collect();
        let mut ys = Vec::with_capacity(npts);
        for x in &xs {
            let mut h = Poly::zero();
            let mut pw = BigRational::one();
            for ck in c {
                h = &h + &ck.scale(&pw);
                pw *= x;
            }
            ys.push(self.norm(&h));
        }
        interpolate(&xs, &ys)
    }

    /// Determinant of multiplication by h.
    pub fn norm(&self, h: &Poly) -> BigRational {
        let d = self.degree();
        let hr = self.reduce(h);
        let mut a = vec![vec![BigRational::zero(); d]; d];
        let mut col = hr;
        for j in 0..d {
            for (i, row) in a.iter_mut().enumerate() {
                row[j] = col.coeff(i);
            }
            col = self.reduce(&(&col * &Poly::x()));
        }
        determinant(a)
    }

    /// Sturm chain over Q(θ); each element is a coefficient list.
    fn sturm_chain(&mut self, p: &[Poly]) -> Result<Vec<Vec<Poly>>, RootError> {
        let dp: Vec<Poly> = p
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&int(i as i64)))
            .collect();
        let mut chain = vec![p.to_vec(), dp];
        loop {
            let n = chain.len();
            let r = self.poly_rem(&chain[n - 2], &chain[n - 1])?;
            if r.is_empty() {
                break;
            }
            chain.push(r.iter().map(|c| -c).collect());
        }
        Ok(chain)
    }

    fn trim(&self, mut v: Vec<Poly>) -> Vec<Poly> {
        while v.last().is_some_and(|p| self.is_zero(p)) {
            v.pop();
        }
        v
    }

    fn poly_rem(&mut self, a: &[Poly], b: &[Poly]) -> Result<Vec<Poly>, RootError> {
        let b = self.trim(b.to_vec());
        let mut r = self.trim(a.to_vec());
        let lb = self.inv(b.last().expect("nonzero divisor"))?;
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let q = self.mul(r.last().unwrap(), &lb);
            for (j, bj) in b.iter().enumerate() {
                r[shift + j] = self.reduce(&(&r[shift + j] - &self.mul(&q, bj)));
            }
            r.pop();
            r = self.trim(r);
        }
        Ok(r)
    }

    fn variations(&mut self, chain: &[Vec<Poly>], x: &BigRational) -> usize {
        let mut count = 0;
        let mut last = 0;
        for p in chain {
            let mut h = Poly::zero();
            for c in p.iter().rev() {
                h = &h.scale(x) + c;
            }
            let s = self.sign(&h);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }
}

/// Roots of a polynomial over Q(θ) lying in (0, 1).
#[derive(Debug, Clone)]
pub struct FieldRoots {
    pub degree: usize,
    pub roots: Vec<RealAlgebraic>,
    /// gcd(P, P′) is non-constant.
    pub repeated: bool,
    /// 0 or 1 is a root.
    pub boundary: bool,
}

pub fn faddeev_leverrier(a: &[Vec<BigRational>]) -> Poly {
    let n = a.len();
    let mut c = vec![BigRational::zero(); n + 1];
    c[n] = BigRational::one();
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigRational::zero();
                for l in 0..n {
                    if !a[i][l].is_zero() && !m[l][j].is_zero() {
                        s += &a[i][l] * &m[l][j];
                    }
                }
                if i == j {
                    s += &c[n - k + 1];
                }
                next[i][j] = s;
            }
        }
        m = next;
        let mut tr = BigRational::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &a[i][l] * &m[l][i];
            }
        }
        c[n - k] = -tr / int(k as i64);
    }
    Poly::new(c)
}

pub fn determinant(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for k in col..n {
                let v = &f * &a[col][k];
                a[r][k] -= v;
            }
        }
    }
    det
}

/// Lagrange interpolation through (xs, ys).
pub fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Poly {
    let mut acc = Poly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = Poly::one();
        let mut den = BigRational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = &basis * &Poly::new(vec![-xj.clone(), BigRational::one()]);
                den *= xi - xj;
            }
        }
        acc = &acc + &basis.scale(&(yi / den));
    }
    acc
}

/// All real roots of `p` in exact form, ascending.
pub fn exact_real_roots(p: &Poly) -> Vec<RealAlgebraic> {
    real_roots(p, &frac(1, 1 << 10))
        .iter()
        .map(classify)
        .collect()
}

pub fn abs_cmp_one(x: &RealAlgebraic) -> Ordering {
    let a = if x.signum() < 0 { x.neg() } else { x.clone() };
    a.compare(&RealAlgebraic::rational(BigRational::one()))
}

pub fn is_negative_rational(r: &BigRational) -> bool {
    r.is_negative()
}
