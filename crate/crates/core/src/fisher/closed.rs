//! Explicit formulas for the seven catalogued index sets, used as an
//! independent oracle for the generic matcher.

use num_traits::{One, Signed, Zero};

use super::cert::{assemble, Assembled, BoundCertificate};
use super::matching::{select_index, MatchPolicy};
use super::{FisherError, HarmonicIndexSet};
use crate::algebraic::{NumberField, RealAlgebraic};
use crate::exact::{int, BigRational, QuadraticNumber};
use crate::poly::Poly;
use crate::realroots::{classify, default_width, real_roots};

pub const CATALOG: [&[u32]; 7] = [
    &[8, 4],
    &[6, 4],
    &[6, 2],
    &[8, 6],
    &[8, 2],
    &[10, 6, 2],
    &[12, 8, 4],
];

pub fn closed_form(n: i64, ts: &HarmonicIndexSet) -> Result<BoundCertificate, FisherError> {
    closed_form_with(n, ts, MatchPolicy::Strict)
}

/// One candidate read off the formulas; `None` fields are left to the
/// product identity.
struct Paper {
    generator: RealAlgebraic,
    f_polys: Vec<Poly>,
    z_polys: Vec<Poly>,
    f: Vec<RealAlgebraic>,
    minimizers: Option<Vec<RealAlgebraic>>,
    c: Option<RealAlgebraic>,
    b: Option<RealAlgebraic>,
}

pub fn closed_form_with(
    n: i64,
    ts: &HarmonicIndexSet,
    policy: MatchPolicy,
) -> Result<BoundCertificate, FisherError> {
    if n < 2 {
        return Err(FisherError::Domain(format!(
            "dimension n must be at least 2, got {n}"
        )));
    }
    let p = |k: i64| int(n + k);
    let papers = match ts.indices() {
        [8, 4] => {
            let f4 = p(4) * p(5) * p(14) / (int(60) * p(12));
            let z = [p(12).recip() * int(14), int(21) / (p(8) * p(12))];
            let den = p(8) * p(12);
            let d = (int(7) * p(5) * p(8)).to_integer();
            let lo = QuadraticNumber::new(int(7) * p(8) / &den, int(-2) / &den, d.clone())?;
            let hi = QuadraticNumber::new(int(7) * p(8) / &den, int(2) / &den, d)?;
            let c = int(n) * p(1) * p(4) * p(5) * p(10) * p(14) / (int(160) * p(8) * p(12));
            let b = p(1) * p(2) * p(5) * p(6) / int(252);
            vec![rational_paper(
                &[f4],
                &z,
                Some(vec![lo, hi]),
                Some(c),
                Some(b),
            )?]
        }
        [6, 4] => {
            if n > 4 {
                return Err(FisherError::Domain(format!(
                    "f4 is complex for n = {n} >= 5"
                )));
            }
            let s = QuadraticNumber::sqrt_of(&-(p(6) * p(-4)))?;
            let mut out = Vec::new();
            for sf in [1, -1] {
                for sa in [1, -1] {
                    let f4 = s
                        .scale(&(int(2 * sf) * p(8)))
                        .add_rational(&(p(6) * p(-12)))
                        .scale(&(p(10) / (int(10) * p(4) * p(6))));
                    let a2 = s
                        .scale(&int(sa))
                        .add_rational(&(int(2) * p(6)))
                        .scale(&(int(3) / (p(4) * p(6))));
                    out.push(quad_paper(
                        &[f4],
                        &[a2.clone()],
                        Some(vec![a2]),
                        None,
                        None,
                    )?);
                }
            }
            out
        }
        [6, 2] => {
            let f2 = p(-2) * p(4) * p(10) / (int(32) * p(8));
            let a2 = int(15) / (int(2) * p(8));
            let c = p(2) * p(6) * p(10) * (int(7 * n - 4)) / (int(192) * p(8));
            let b = int(n) * p(4) * (int(2 * n + 1) * int(2 * n + 1)) / (int(15) * int(7 * n - 4));
            vec![rational_paper(
                &[f2],
                &[a2.clone()],
                Some(vec![QuadraticNumber::rational(a2)]),
                Some(c),
                Some(b),
            )?]
        }
        [8, 2] => {
            let f2 = p(-2) * p(4) * p(5) * p(6) * p(14) / (int(90) * p(12) * p(12));
            let d = (int(42) * p(5) * p(10)).to_integer();
            let r = (p(10) * p(12)).recip();
            let lo = QuadraticNumber::new(int(7) / p(12), -r.clone(), d.clone())?;
            let hi = QuadraticNumber::new(int(7) / p(12), r, d)?;
            let cubic = int(n * n * n + 27 * n * n + 356 * n - 240);
            let c = p(2) * p(4) * p(5) * p(8) * p(14) * &cubic
                / (int(240) * p(10) * p(12) * p(12) * p(12));
            let sq = int(n * n + 15 * n + 8);
            let b = int(n) * p(6) * p(5) * &sq * &sq / (int(168) * cubic);
            vec![pair_paper(f2_only(f2), lo, hi, Some(c), Some(b))?]
        }
        [10, 6, 2] => {
            if n == 8 {
                return Err(FisherError::Domain("f6 and f2 have a pole at n = 8".into()));
            }
            let f6 = p(-2) * p(8) * p(18) * int(13 * n + 28) / (int(1344) * p(-8) * p(16));
            let f2 = p(-2)
                * p(4)
                * p(8)
                * p(14)
                * p(18)
                * int(37 * n * n * n - 742 * n * n + 1792 * n + 20256)
                / (int(129024) * p(-8) * p(-8) * p(12) * p(16));
            let rad = int(15) * p(-8) * p(12) * int(43 * n * n - 244 * n - 1952);
            if rad.is_negative() {
                return Err(FisherError::Domain(format!(
                    "α², β² are complex for n = {n}"
                )));
            }
            let den = int(4) * p(-8) * p(12) * p(16);
            let base = int(45) * p(-8) * p(12) / &den;
            let d = rad.to_integer();
            let r = den.recip();
            let (lo, hi) = if den.is_positive() {
                (
                    QuadraticNumber::new(base.clone(), -r.clone(), d.clone())?,
                    QuadraticNumber::new(base, r, d)?,
                )
            } else {
                (
                    QuadraticNumber::new(base.clone(), r.clone(), d.clone())?,
                    QuadraticNumber::new(base, -r, d)?,
                )
            };
            let q = int(4 * n * n * n - 10 * n * n - 143 * n - 84);
            let b = int(n) * p(4) * p(8) * &q * &q
                / (int(45)
                    * int(781 * n.pow(4) - 9548 * n.pow(3) + 10128 * n * n + 160960 * n - 108032));
            let fs = vec![QuadraticNumber::rational(f6), QuadraticNumber::rational(f2)];
            vec![pair_paper(fs, lo, hi, None, Some(b))?]
        }
        [12, 8, 4] => {
            let f8 = p(8) * p(9) * p(22) / (int(180) * p(20));
            let f4 = p(4) * p(5) * p(8) * p(9) * p(18) * p(22) / (int(7200) * p(16) * p(20));
            let z1 = int(33) / p(20);
            let z2 = int(231) / (p(16) * p(20));
            let z3 = int(231) / (p(12) * p(16) * p(20));
            let b = p(1) * p(2) * p(5) * p(6) * p(9) * p(10) / int(27720);
            vec![rational_paper(
                &[f8, f4],
                &[z1, z2, z3],
                None,
                None,
                Some(b),
            )?]
        }
        [8, 6] => eight_six(n)?,
        _ => return Err(FisherError::UnsupportedIndexSet(ts.to_string())),
    };
    let mut papers = papers;
    dedupe(&mut papers);
    let asm: Vec<Assembled> = papers
        .iter()
        .map(|c| assemble(n, ts, &c.generator, &c.f_polys, &c.z_polys))
        .collect::<Result<_, _>>()?;
    let (i, conforming) = select_index(&asm, policy)?;
    let chosen = papers.swap_remove(i);
    let mut cert = asm[i].clone().into_certificate(n, ts, conforming);
    for ((_, v), w) in cert.coeffs[1..].iter_mut().zip(chosen.f) {
        *v = w;
    }
    if let Some(mut mins) = chosen.minimizers {
        mins.sort_by(|a, b| a.compare(b));
        cert.minimizers = mins;
    }
    if let Some(c) = chosen.c {
        cert.c = c;
    }
    if let Some(b) = chosen.b {
        cert.b = b;
    }
    Ok(cert)
}

fn f2_only(f: BigRational) -> Vec<QuadraticNumber> {
    vec![QuadraticNumber::rational(f)]
}

fn dedupe(v: &mut Vec<Paper>) {
    let mut out: Vec<Paper> = Vec::new();
    for p in v.drain(..) {
        let dup = out.iter().any(|q| {
            q.f.iter().zip(&p.f).all(|(a, b)| a == b)
                && same_values(&q.generator, &q.z_polys, &p.generator, &p.z_polys)
        });
        if !dup {
            out.push(p);
        }
    }
    *v = out;
}

fn same_values(g1: &RealAlgebraic, z1: &[Poly], g2: &RealAlgebraic, z2: &[Poly]) -> bool {
    let mut k1 = NumberField::new(g1);
    let mut k2 = NumberField::new(g2);
    z1.iter()
        .zip(z2)
        .all(|(a, b)| match (k1.value(a), k2.value(b)) {
            (Ok(x), Ok(y)) => x == y,
            _ => false,
        })
}

/// Expresses quadratic numbers over one generator √d (or 0 when all rational).
fn common_field(vals: &[QuadraticNumber]) -> Result<(RealAlgebraic, Vec<Poly>), FisherError> {
    let d = vals
        .iter()
        .find(|v| !v.is_rational())
        .map(|v| v.radicand().clone());
    match d {
        None => Ok((
            RealAlgebraic::rational(BigRational::zero()),
            vals.iter()
                .map(|v| Poly::constant(v.rational_part().clone()))
                .collect(),
        )),
        Some(d) => {
            let gen = QuadraticNumber::new(BigRational::zero(), BigRational::one(), d.clone())?;
            let mut out = Vec::new();
            for v in vals {
                if !v.is_rational() && *v.radicand() != d {
                    return Err(crate::exact::ExactError::MixedRadicands(
                        d.clone(),
                        v.radicand().clone(),
                    )
                    .into());
                }
                out.push(Poly::new(vec![
                    v.rational_part().clone(),
                    v.radical_coeff().clone(),
                ]));
            }
            Ok((RealAlgebraic::Quad(gen), out))
        }
    }
}

fn quad_paper(
    f: &[QuadraticNumber],
    z_tail: &[QuadraticNumber],
    minimizers: Option<Vec<QuadraticNumber>>,
    c: Option<BigRational>,
    b: Option<BigRational>,
) -> Result<Paper, FisherError> {
    let mut all: Vec<QuadraticNumber> = f.to_vec();
    all.extend_from_slice(z_tail);
    let (generator, polys) = common_field(&all)?;
    let f_polys = polys[..f.len()].to_vec();
    let mut z_polys = vec![Poly::one()];
    z_polys.extend_from_slice(&polys[f.len()..]);
    Ok(Paper {
        generator,
        f_polys,
        z_polys,
        f: f.iter().cloned().map(RealAlgebraic::Quad).collect(),
        minimizers: minimizers.map(|v| v.into_iter().map(RealAlgebraic::Quad).collect()),
        c: c.map(RealAlgebraic::rational),
        b: b.map(RealAlgebraic::rational),
    })
}

fn rational_paper(
    f: &[BigRational],
    z_tail: &[BigRational],
    minimizers: Option<Vec<QuadraticNumber>>,
    c: Option<BigRational>,
    b: Option<BigRational>,
) -> Result<Paper, FisherError> {
    let fq: Vec<QuadraticNumber> = f.iter().cloned().map(QuadraticNumber::rational).collect();
    let zq: Vec<QuadraticNumber> = z_tail
        .iter()
        .cloned()
        .map(QuadraticNumber::rational)
        .collect();
    quad_paper(&fq, &zq, minimizers, c, b)
}

/// Two minimizers given explicitly; Z₁ = α² + β², Z₂ = α²β².
fn pair_paper(
    f: Vec<QuadraticNumber>,
    lo: QuadraticNumber,
    hi: QuadraticNumber,
    c: Option<BigRational>,
    b: Option<BigRational>,
) -> Result<Paper, FisherError> {
    let z1 = lo.try_add(&hi)?;
    let z2 = lo.try_mul(&hi)?;
    quad_paper(&f, &[z1, z2], Some(vec![lo, hi]), c, b)
}

/// {8,6}: Z₁ is a root of the cubic obtained from the three matching
/// relations; the Cardano expression picks which one.
fn eight_six(n: i64) -> Result<Vec<Paper>, FisherError> {
    if n < 4 {
        return Err(FisherError::Domain(format!(
            "the Cardano form needs n >= 4, got {n}"
        )));
    }
    let p = |k: i64| int(n + k);
    let dd = p(6) * p(8) * p(10);
    // f6 = (n+14)/2 · (1 − (n+12)Z₁/14)
    let f6 = Poly::new(vec![p(14) / int(2), -(p(14) * p(12)) / int(28)]);
    let x = Poly::x();
    let inner = &Poly::constant(int(210) / (p(10) * p(12)))
        - &f6.scale(&(int(840) / (p(8) * p(12) * p(14))));
    let z2_num = Poly::new(vec![int(-28 * 15), int(45) * p(10)]);
    let cubic = &(&x.pow(3).scale(&dd) + &z2_num.scale(&int(2))) - &(&x * &inner).scale(&dd);
    let roots: Vec<RealAlgebraic> = real_roots(&cubic.squarefree(), &default_width())
        .iter()
        .map(classify)
        .collect();
    let mut picked: Vec<usize> = Vec::new();
    for z in cardano_branches(n) {
        let (best, dist) = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (i, (r.to_f64() - z).abs()))
            .fold((usize::MAX, f64::INFINITY), |acc, x| {
                if x.1 < acc.1 {
                    x
                } else {
                    acc
                }
            });
        if best != usize::MAX && dist < 1e-6 * (1.0 + z.abs()) && !picked.contains(&best) {
            picked.push(best);
        }
    }
    if picked.is_empty() {
        return Err(FisherError::Domain(
            "no real Cardano branch matches a root of the Z₁ cubic".into(),
        ));
    }
    let mut out = Vec::new();
    for i in picked {
        let theta = roots[i].clone();
        let mut k = NumberField::new(&theta);
        let inv = k.inv(&x.scale(&dd))?;
        let z2 = k.mul(&z2_num, &inv);
        let f6v = k.value(&f6)?;
        out.push(Paper {
            generator: theta,
            f_polys: vec![f6.clone()],
            z_polys: vec![Poly::one(), x.clone(), z2],
            f: vec![f6v],
            minimizers: None,
            c: None,
            b: None,
        });
    }
    Ok(out)
}

/// Real values of 2w/D + 40(n+3)/((n+8)w) + 10/(n+8) over the three cube
/// roots w of 10g (floating point, used only to pick a root).
fn cardano_branches(n: i64) -> Vec<f64> {
    let nf = n as f64;
    let sq = (nf * (nf - 4.0) / ((nf + 6.0) * (nf + 10.0))).sqrt();
    let g = (-(nf - 2.0) * (nf + 3.0) + (nf + 3.0) * (nf + 8.0) * sq)
        * (nf + 6.0).powi(2)
        * (nf + 10.0).powi(2);
    let d = (nf + 6.0) * (nf + 8.0) * (nf + 10.0);
    let w0 = (10.0 * g).cbrt();
    let mut out = Vec::new();
    for k in 0..3 {
        let ang = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
        let (wr, wi) = (w0 * ang.cos(), w0 * ang.sin());
        let m2 = wr * wr + wi * wi;
        if m2 == 0.0 {
            continue;
        }
        let s = 40.0 * (nf + 3.0) / (nf + 8.0);
        let re = 2.0 * wr / d + s * wr / m2 + 10.0 / (nf + 8.0);
        let im = 2.0 * wi / d - s * wi / m2;
        if im.abs() <= 1e-7 * (1.0 + re.abs()) {
            out.push(re);
        }
    }
    out
}

/// b_{n,T} as a rational function num(n)/den(n) for the catalogued sets
/// whose bound is rational in n.
pub fn bound_formula(ts: &HarmonicIndexSet) -> Option<(Poly, Poly)> {
    let lin = |k: i64| Poly::from_ints(&[k, 1]);
    let prod = |ps: &[Poly]| ps.iter().fold(Poly::one(), |acc, p| &acc * p);
    let n = Poly::x();
    let c = |k: i64| Poly::constant(int(k));
    Some(match ts.indices() {
        [8, 4] => (prod(&[lin(1), lin(2), lin(5), lin(6)]), c(252)),
        [6, 2] => (
            prod(&[n, lin(4), Poly::from_ints(&[1, 2]).pow(2)]),
            prod(&[c(15), Poly::from_ints(&[-4, 7])]),
        ),
        [8, 2] => (
            prod(&[n, lin(6), lin(5), Poly::from_ints(&[8, 15, 1]).pow(2)]),
            prod(&[c(168), Poly::from_ints(&[-240, 356, 27, 1])]),
        ),
        [10, 6, 2] => (
            prod(&[
                n,
                lin(4),
                lin(8),
                Poly::from_ints(&[-84, -143, -10, 4]).pow(2),
            ]),
            prod(&[
                c(45),
                Poly::from_ints(&[-108032, 160960, 10128, -9548, 781]),
            ]),
        ),
        [12, 8, 4] => (
            prod(&[lin(1), lin(2), lin(5), lin(6), lin(9), lin(10)]),
            c(27720),
        ),
        _ => return None,
    })
}

/// The value of `bound_formula` at n, when the denominator does not vanish.
pub fn bound_formula_at(n: i64, ts: &HarmonicIndexSet) -> Option<BigRational> {
    let (num, den) = bound_formula(ts)?;
    let d = den.eval(&int(n));
    (!d.is_zero()).then(|| num.eval(&int(n)) / d)
}
