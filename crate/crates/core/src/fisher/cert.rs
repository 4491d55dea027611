use num_traits::One;

use super::{FisherError, HarmonicIndexSet};
use crate::algebraic::{NumberField, RealAlgebraic};
use crate::exact::{big, BigRational};
use crate::orthopoly::{gegenbauer, harm_dim};
use crate::poly::Poly;
use crate::realroots::{minimize_even_on_unit, MinCertificate};

/// One Fisher bound instance with a machine-checkable witness.
#[derive(Debug, Clone)]
pub struct BoundCertificate {
    pub n: i64,
    pub index_set: HarmonicIndexSet,
    /// (tᵢ, f_{tᵢ}) in the order of the index set; f_{t₁} = 1.
    pub coeffs: Vec<(u32, RealAlgebraic)>,
    pub leading_a: BigRational,
    pub epsilon: u32,
    /// Positive minimizers αᵢ² (u-coordinates), ascending. Single-index
    /// certificates list every argmin u, including 0 when attained.
    pub minimizers: Vec<RealAlgebraic>,
    pub c: RealAlgebraic,
    pub b: RealAlgebraic,
    pub residual_zero: bool,
    /// All αᵢ² real, distinct and inside (0, 1). False only for certificates
    /// accepted under `MatchPolicy::LpValid`.
    pub conforming: bool,
    pub witness: Witness,
}

#[derive(Debug, Clone)]
pub enum Witness {
    /// f_{tᵢ} (i ≥ 2) and Z₀..Z_m as polynomials in one real generator θ.
    Product {
        generator: RealAlgebraic,
        f: Vec<Poly>,
        z: Vec<Poly>,
    },
    /// Certified minimum of Q_{n,t} (single index).
    Minimum(MinCertificate),
}

impl BoundCertificate {
    pub fn coeff(&self, t: u32) -> Option<&RealAlgebraic> {
        self.coeffs.iter().find(|(s, _)| *s == t).map(|(_, v)| v)
    }

    /// Largest minimizer, the paper's α².
    pub fn alpha_sq(&self) -> Option<&RealAlgebraic> {
        self.minimizers.last()
    }

    pub fn elementary_symmetric(&self) -> Option<Vec<RealAlgebraic>> {
        match &self.witness {
            Witness::Product { generator, z, .. } => {
                let mut k = NumberField::new(generator);
                z.iter().skip(1).map(|p| k.value(p).ok()).collect()
            }
            Witness::Minimum(_) => None,
        }
    }
}

/// Everything the product form determines, evaluated exactly.
#[derive(Debug, Clone)]
pub(crate) struct Assembled {
    pub generator: RealAlgebraic,
    pub f_polys: Vec<Poly>,
    pub z_polys: Vec<Poly>,
    pub f: Vec<RealAlgebraic>,
    pub a: BigRational,
    pub c: RealAlgebraic,
    pub b: Option<RealAlgebraic>,
    pub minimizers: Vec<RealAlgebraic>,
    pub repeated: bool,
    pub boundary: bool,
    pub residual_zero: bool,
    pub m: usize,
}

impl Assembled {
    pub fn strict_ok(&self) -> bool {
        self.lp_ok() && self.minimizers.len() == self.m && !self.repeated && !self.boundary
    }

    /// F = a·u^ε·P² ≥ 0 holds for any real solution; only c > 0 is needed.
    pub fn lp_ok(&self) -> bool {
        self.residual_zero && self.c.signum() > 0 && self.b.is_some()
    }

    pub fn into_certificate(
        self,
        n: i64,
        ts: &HarmonicIndexSet,
        conforming: bool,
    ) -> BoundCertificate {
        let mut coeffs = vec![(ts.t1(), RealAlgebraic::rational(BigRational::one()))];
        coeffs.extend(ts.indices()[1..].iter().copied().zip(self.f));
        BoundCertificate {
            n,
            index_set: ts.clone(),
            coeffs,
            leading_a: self.a,
            epsilon: ts.epsilon(),
            minimizers: self.minimizers,
            c: self.c,
            b: self.b.expect("checked by lp_ok"),
            residual_zero: self.residual_zero,
            conforming,
            witness: Witness::Product {
                generator: self.generator,
                f: self.f_polys,
                z: self.z_polys,
            },
        }
    }
}

/// L(u) coefficients as polynomials in θ.
pub(crate) fn l_coeffs(
    n: i64,
    ts: &HarmonicIndexSet,
    f: &[Poly],
) -> Result<Vec<Poly>, FisherError> {
    let q1 = gegenbauer(n, ts.t1() as i64)?.even_to_u();
    let mut l: Vec<Poly> = q1
        .coeffs()
        .iter()
        .map(|c| Poly::constant(c.clone()))
        .collect();
    for (t, fp) in ts.indices()[1..].iter().zip(f) {
        let q = gegenbauer(n, *t as i64)?.even_to_u();
        for (d, c) in q.coeffs().iter().enumerate() {
            l[d] = &l[d] + &fp.scale(c);
        }
    }
    Ok(l)
}

pub(crate) fn assemble(
    n: i64,
    ts: &HarmonicIndexSet,
    generator: &RealAlgebraic,
    f: &[Poly],
    z: &[Poly],
) -> Result<Assembled, FisherError> {
    let eps = ts.epsilon() as usize;
    let m = ts.m() as usize;
    if f.len() + 1 != ts.len() || z.len() != m + 1 {
        return Err(FisherError::Shape(format!(
            "witness sizes f={} z={} for {}",
            f.len(),
            z.len(),
            ts
        )));
    }
    let mut k = NumberField::new(generator);
    let l = l_coeffs(n, ts, f)?;
    let a = gegenbauer(n, ts.t1() as i64)?.even_to_u().leading();
    // P(u) = Σ (−1)^k Z_k u^{m−k}, ascending.
    let pc: Vec<Poly> = (0..=m)
        .map(|j| {
            if (m - j) % 2 == 0 {
                z[m - j].clone()
            } else {
                -&z[m - j]
            }
        })
        .collect();
    let mut g = vec![Poly::zero(); 2 * m + 1 + eps];
    for (i, pi) in pc.iter().enumerate() {
        for (j, pj) in pc.iter().enumerate() {
            g[i + j + eps] = &g[i + j + eps] + &k.mul(pi, pj).scale(&a);
        }
    }
    let residual_zero = l.len() == g.len() && (1..l.len()).all(|d| k.is_zero(&(&l[d] - &g[d])));
    let c_poly = k.reduce(&(&g[0] - &l[0]));
    let c = k.value(&c_poly)?;
    let b = if c.is_zero() {
        None
    } else {
        let num = l.iter().fold(c_poly.clone(), |acc, p| &acc + p);
        Some(generator.eval_ratio(&num, &c_poly)?)
    };
    let roots = k.roots_in_unit(&pc)?;
    let fv = f
        .iter()
        .map(|p| k.value(p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Assembled {
        generator: generator.clone(),
        f_polys: f.to_vec(),
        z_polys: z.to_vec(),
        f: fv,
        a,
        c,
        b,
        minimizers: roots.roots,
        repeated: roots.repeated,
        boundary: roots.boundary,
        residual_zero,
        m,
    })
}

/// Result of `verify_certificate`; `tag` names the first failed condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub ok: bool,
    pub tag: Option<&'static str>,
}

impl Verdict {
    fn pass() -> Self {
        Verdict {
            ok: true,
            tag: None,
        }
    }

    fn fail(tag: &'static str) -> Self {
        Verdict {
            ok: false,
            tag: Some(tag),
        }
    }
}

fn same_list(x: &[RealAlgebraic], y: &[RealAlgebraic]) -> bool {
    x.len() == y.len() && x.iter().zip(y).all(|(a, b)| a == b)
}

/// Checks the identity L + c = a·u^ε·∏(u − αᵢ²)², c > 0, min(c + L) = 0 on
/// [−1, 1], and b = (c + L(1))/c, all exactly.
pub fn verify_certificate(cert: &BoundCertificate) -> Verdict {
    if cert.c.signum() <= 0 {
        return Verdict::fail("NegativeC");
    }
    let ts = &cert.index_set;
    if cert.epsilon != ts.epsilon() {
        return Verdict::fail("ShapeMismatch");
    }
    if cert.coeffs.len() != ts.len()
        || cert
            .coeffs
            .iter()
            .zip(ts.indices())
            .any(|((s, _), t)| s != t)
        || !cert.coeffs[0].1.is_rational_value(&BigRational::one())
    {
        return Verdict::fail("CoefficientMismatch");
    }
    let lead = match gegenbauer(cert.n, ts.t1() as i64) {
        Ok(q) => q.leading(),
        Err(_) => return Verdict::fail("Domain"),
    };
    if cert.leading_a != lead {
        return Verdict::fail("LeadingMismatch");
    }
    match &cert.witness {
        Witness::Product { generator, f, z } => verify_product(cert, generator, f, z),
        Witness::Minimum(mc) => verify_minimum(cert, mc),
    }
}

fn verify_product(
    cert: &BoundCertificate,
    generator: &RealAlgebraic,
    f: &[Poly],
    z: &[Poly],
) -> Verdict {
    let asm = match assemble(cert.n, &cert.index_set, generator, f, z) {
        Ok(a) => a,
        Err(_) => return Verdict::fail("WitnessInvalid"),
    };
    if !asm.residual_zero || asm.c != cert.c {
        return Verdict::fail("IdentityFailed");
    }
    if cert.coeffs[1..]
        .iter()
        .zip(&asm.f)
        .any(|((_, v), w)| v != w)
    {
        return Verdict::fail("CoefficientMismatch");
    }
    if !same_list(&cert.minimizers, &asm.minimizers) {
        return Verdict::fail("MinimizerMismatch");
    }
    if cert.conforming && !asm.strict_ok() {
        return Verdict::fail("NonConforming");
    }
    if cert.epsilon == 0 && cert.minimizers.is_empty() {
        return Verdict::fail("MinimumNotZero");
    }
    match &asm.b {
        Some(b) if *b == cert.b => {}
        _ => return Verdict::fail("BoundMismatch"),
    }
    if !cert.residual_zero {
        return Verdict::fail("IdentityFailed");
    }
    Verdict::pass()
}

fn verify_minimum(cert: &BoundCertificate, mc: &MinCertificate) -> Verdict {
    if cert.index_set.len() != 1 {
        return Verdict::fail("ShapeMismatch");
    }
    let t = cert.index_set.t1() as i64;
    let (q, h) = match (gegenbauer(cert.n, t), harm_dim(cert.n, t)) {
        (Ok(q), Ok(h)) => (q, big(h)),
        _ => return Verdict::fail("Domain"),
    };
    let fresh = match minimize_even_on_unit(&q) {
        Ok(m) => m,
        Err(_) => return Verdict::fail("WitnessInvalid"),
    };
    if fresh.min_value != mc.min_value || !same_list(&fresh.argmin_u, &mc.argmin_u) {
        return Verdict::fail("WitnessMismatch");
    }
    if fresh.depth() != cert.c {
        return Verdict::fail("IdentityFailed");
    }
    if !same_list(&cert.minimizers, &fresh.argmin_u) {
        return Verdict::fail("MinimizerMismatch");
    }
    let b = match single_bound(&q, &h, &fresh.argmin_u[0]) {
        Ok(b) => b,
        Err(_) => return Verdict::fail("BoundMismatch"),
    };
    if b != cert.b {
        return Verdict::fail("BoundMismatch");
    }
    if !cert.residual_zero {
        return Verdict::fail("IdentityFailed");
    }
    Verdict::pass()
}

/// b = 1 + h/c at an argmin u*, i.e. (h − q(u*))/(−q(u*)).
pub(crate) fn single_bound(
    q: &Poly,
    h: &BigRational,
    u: &RealAlgebraic,
) -> Result<RealAlgebraic, FisherError> {
    let qu = q.even_to_u();
    let num = &Poly::constant(h.clone()) - &qu;
    Ok(u.eval_ratio(&num, &-&qu)?)
}
