use num_traits::{One, Zero};

use super::cert::{assemble, single_bound, Assembled, BoundCertificate, Witness};
use super::mpoly::MPoly;
use super::{FisherError, HarmonicIndexSet};
use crate::algebraic::{determinant, RealAlgebraic};
use crate::exact::{big, int, BigRational};
use crate::orthopoly::{gegenbauer, harm_dim};
use crate::poly::Poly;
use crate::realroots::{classify, default_width, minimize_even_on_unit, real_roots};

/// Which real solutions of the matching system are accepted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MatchPolicy {
    /// All αᵢ² real, distinct and in (0, 1).
    #[default]
    Strict,
    /// Also accept solutions where some αᵢ² falls outside (0, 1); the test
    /// function stays non-negative, so the bound is still valid.
    LpValid,
}

/// b_{n,t} = 1 + h_t/c_{n,t} with c_{n,t} = −min Q_{n,t} on [−1, 1].
pub fn fisher_bound_single(n: i64, t: u32) -> Result<BoundCertificate, FisherError> {
    if n < 2 {
        return Err(FisherError::Domain(format!(
            "dimension n must be at least 2, got {n}"
        )));
    }
    if t < 2 || t % 2 != 0 {
        return Err(FisherError::Domain(format!(
            "t must be even and at least 2, got {t}"
        )));
    }
    let ts = HarmonicIndexSet::single(t)?;
    let q = gegenbauer(n, t as i64)?;
    let h = big(harm_dim(n, t as i64)?);
    let mc = minimize_even_on_unit(&q)?;
    let c = mc.depth();
    if c.signum() <= 0 {
        return Err(FisherError::InvalidMinimizers(format!(
            "min of Q_{{{n},{t}}} is not negative"
        )));
    }
    let b = single_bound(&q, &h, &mc.argmin_u[0])?;
    Ok(BoundCertificate {
        n,
        index_set: ts.clone(),
        coeffs: vec![(t, RealAlgebraic::rational(BigRational::one()))],
        leading_a: q.leading(),
        epsilon: ts.epsilon(),
        minimizers: mc.argmin_u.clone(),
        c,
        b,
        residual_zero: true,
        conforming: true,
        witness: Witness::Minimum(mc),
    })
}

pub fn match_coefficients(n: i64, ts: &HarmonicIndexSet) -> Result<BoundCertificate, FisherError> {
    match_coefficients_with(n, ts, MatchPolicy::Strict)
}

/// Solves Q_{t₁} + Σ f_{tᵢ}Q_{tᵢ} = a·u^ε·∏(u − αᵢ²)² − c exactly.
pub fn match_coefficients_with(
    n: i64,
    ts: &HarmonicIndexSet,
    policy: MatchPolicy,
) -> Result<BoundCertificate, FisherError> {
    if n < 2 {
        return Err(FisherError::Domain(format!(
            "dimension n must be at least 2, got {n}"
        )));
    }
    if ts.len() == 1 && !ts.has_matching_shape() {
        return fisher_bound_single(n, ts.t1());
    }
    if !ts.has_matching_shape() {
        return Err(FisherError::Shape(format!(
            "{} has {} indices but the form needs m + ε = {}",
            ts,
            ts.len(),
            ts.m() + ts.epsilon()
        )));
    }
    let assembled = candidates(n, ts)?;
    let (i, conforming) = select_index(&assembled, policy)?;
    Ok(assembled[i].clone().into_certificate(n, ts, conforming))
}

/// Every solution of the matching system that yields a conforming
/// certificate, ordered by b descending. Empty when none qualifies.
pub fn match_solutions(
    n: i64,
    ts: &HarmonicIndexSet,
) -> Result<Vec<BoundCertificate>, FisherError> {
    if n < 2 {
        return Err(FisherError::Domain(format!(
            "dimension n must be at least 2, got {n}"
        )));
    }
    if ts.len() == 1 && !ts.has_matching_shape() {
        return Ok(vec![fisher_bound_single(n, ts.t1())?]);
    }
    if !ts.has_matching_shape() {
        return Err(FisherError::Shape(format!(
            "{ts} does not have the matching shape"
        )));
    }
    let mut out: Vec<BoundCertificate> = candidates(n, ts)?
        .into_iter()
        .filter(Assembled::strict_ok)
        .map(|a| a.into_certificate(n, ts, true))
        .collect();
    out.sort_by(|x, y| y.b.compare(&x.b));
    Ok(out)
}

fn candidates(n: i64, ts: &HarmonicIndexSet) -> Result<Vec<Assembled>, FisherError> {
    let sys = System::build(n, ts)?;
    sys.solve()?
        .iter()
        .map(|(th, f, z)| assemble(n, ts, th, f, z))
        .collect()
}

/// Picks the unique acceptable solution.
pub(crate) fn select_index(
    cands: &[Assembled],
    policy: MatchPolicy,
) -> Result<(usize, bool), FisherError> {
    let strict: Vec<usize> = (0..cands.len()).filter(|&i| cands[i].strict_ok()).collect();
    match strict.len() {
        1 => return Ok((strict[0], true)),
        0 => {}
        k => return Err(FisherError::MultipleSolutions(k)),
    }
    if policy == MatchPolicy::LpValid {
        let lp: Vec<usize> = (0..cands.len()).filter(|&i| cands[i].lp_ok()).collect();
        match lp.len() {
            1 => return Ok((lp[0], false)),
            0 => {}
            k => return Err(FisherError::MultipleSolutions(k)),
        }
    }
    if cands.iter().any(|a| a.residual_zero && a.repeated) {
        return Err(FisherError::Shape("coincident minimizers αᵢ² = αⱼ²".into()));
    }
    let why: Vec<String> = cands
        .iter()
        .map(|a| {
            if a.c.signum() <= 0 {
                "c <= 0".to_string()
            } else {
                format!("{} of {} minimizers in (0,1)", a.minimizers.len(), a.m)
            }
        })
        .collect();
    Err(FisherError::InvalidMinimizers(why.join("; ")))
}

/// The matching system in the unknowns f_{t₂}, …, f_{t_ℓ}.
struct System {
    nv: usize,
    z: Vec<MPoly>,
    cons: Vec<MPoly>,
    /// Variable order for pivoting: lowest index t first.
    order: Vec<usize>,
}

/// σ_k = Σ_{i+j=k} Z_i Z_j over 0 ≤ i, j ≤ m.
fn sigma(z: &[MPoly], k: usize, nv: usize) -> MPoly {
    let m = z.len() - 1;
    let mut acc = MPoly::zero(nv);
    for i in 0..=m.min(k) {
        let j = k - i;
        if j <= m {
            acc = &acc + &(&z[i] * &z[j]);
        }
    }
    acc
}

impl System {
    fn build(n: i64, ts: &HarmonicIndexSet) -> Result<Self, FisherError> {
        let nv = ts.len() - 1;
        let e = ts.e() as usize;
        let eps = ts.epsilon() as usize;
        let m = ts.m() as usize;
        let q1 = gegenbauer(n, ts.t1() as i64)?.even_to_u();
        let mut l: Vec<MPoly> = q1
            .coeffs()
            .iter()
            .map(|c| MPoly::constant(nv, c.clone()))
            .collect();
        for (i, t) in ts.indices()[1..].iter().enumerate() {
            let q = gegenbauer(n, *t as i64)?.even_to_u();
            let fi = MPoly::var(nv, i);
            for (d, c) in q.coeffs().iter().enumerate() {
                l[d] = &l[d] + &fi.scale(c);
            }
        }
        let a = q1.leading();
        let big_e = 2 * m + eps - 1;
        // m̂_k = (−1)^k L_{e−k}/a, halved for odd k; m_k(Z) = σ_k/2 or σ_k.
        let half = BigRational::new(1.into(), 2.into());
        let mhat: Vec<MPoly> = (0..=big_e)
            .map(|k| {
                let mut s = l[e - k].scale(&a.recip());
                if k % 2 == 1 {
                    s = s.scale(&-&half);
                }
                s
            })
            .collect();
        let mut z = vec![MPoly::constant(nv, BigRational::one())];
        for k in 1..=m {
            let mut rest = MPoly::zero(nv);
            for i in 1..k {
                rest = &rest + &(&z[i] * &z[k - i]);
            }
            let zk = if k % 2 == 1 {
                &mhat[k] - &rest.scale(&half)
            } else {
                (&mhat[k] - &rest).scale(&half)
            };
            z.push(zk);
        }
        let mut cons = Vec::new();
        for k in m + 1..=big_e {
            let mut mk = sigma(&z, k, nv);
            if k % 2 == 1 {
                mk = mk.scale(&half);
            }
            cons.push(&mk - &mhat[k]);
        }
        let mut order: Vec<usize> = (0..nv).collect();
        order.sort_by_key(|&i| ts.indices()[i + 1]);
        Ok(Self { nv, z, cons, order })
    }

    /// Eliminates variables that occur linearly with a constant coefficient,
    /// lowest index first, until one constraint in at most one unknown is left.
    fn eliminate(&self) -> Result<(Vec<MPoly>, Vec<Option<MPoly>>, Vec<usize>), FisherError> {
        let mut cons: Vec<MPoly> = self.cons.iter().filter(|c| !c.is_zero()).cloned().collect();
        let mut subs: Vec<Option<MPoly>> = vec![None; self.nv];
        let mut remaining = self.order.clone();
        while !remaining.is_empty() && (cons.len() > 1 || (cons.len() == 1 && remaining.len() > 1))
        {
            let mut pivot = None;
            'search: for &v in &remaining {
                for (ci, c) in cons.iter().enumerate() {
                    if c.degree_in(v) == 1 {
                        if let Some(k) = c.coeff_in(v, 1).as_constant() {
                            if !k.is_zero() {
                                pivot = Some((v, ci, k));
                                break 'search;
                            }
                        }
                    }
                }
            }
            let Some((v, ci, k)) = pivot else {
                return Err(FisherError::Underdetermined);
            };
            let expr = cons[ci].coeff_in(v, 0).scale(&-k.recip());
            for s in subs.iter_mut().flatten() {
                *s = s.substitute(v, &expr);
            }
            subs[v] = Some(expr.clone());
            cons.remove(ci);
            cons = cons
                .iter()
                .map(|c| c.substitute(v, &expr))
                .filter(|c| !c.is_zero())
                .collect();
            remaining.retain(|&w| w != v);
        }
        Ok((cons, subs, remaining))
    }

    /// Real solutions as (θ, f-polynomials, Z-polynomials) over Q(θ).
    #[allow(clippy::type_complexity)]
    fn solve(&self) -> Result<Vec<(RealAlgebraic, Vec<Poly>, Vec<Poly>)>, FisherError> {
        let (cons, subs, remaining) = self.eliminate()?;
        let resolve = |p: &MPoly, v: Option<usize>| -> Poly {
            let mut p = p.clone();
            for (i, s) in subs.iter().enumerate() {
                if let Some(s) = s {
                    p = p.substitute(i, s);
                }
            }
            match v {
                Some(v) => p.to_univariate(v).expect("eliminated"),
                None => Poly::constant(p.as_constant().expect("eliminated")),
            }
        };
        let var = |i: usize| MPoly::var(self.nv, i);
        match remaining.len() {
            0 => {
                if let Some(r) = cons
                    .iter()
                    .find_map(|c| c.as_constant().filter(|r| !r.is_zero()))
                {
                    return Err(FisherError::NoSolution { residual: r });
                }
                let f = (0..self.nv).map(|i| resolve(&var(i), None)).collect();
                let z = self.z.iter().map(|p| resolve(p, None)).collect();
                Ok(vec![(RealAlgebraic::rational(BigRational::zero()), f, z)])
            }
            1 => {
                let v = remaining[0];
                let Some(h) = cons.first() else {
                    return Err(FisherError::Underdetermined);
                };
                let h = h.to_univariate(v).expect("one unknown left");
                if h.is_constant() {
                    return Err(FisherError::NoSolution {
                        residual: h.coeff(0),
                    });
                }
                let roots = real_roots(&h.squarefree(), &default_width());
                if roots.is_empty() {
                    return Err(FisherError::ComplexCoefficients {
                        discriminant: discriminant(&h.primitive()),
                    });
                }
                let f: Vec<Poly> = (0..self.nv).map(|i| resolve(&var(i), Some(v))).collect();
                let z: Vec<Poly> = self.z.iter().map(|p| resolve(p, Some(v))).collect();
                Ok(roots
                    .iter()
                    .map(|r| (classify(r), f.clone(), z.clone()))
                    .collect())
            }
            _ => Err(FisherError::Underdetermined),
        }
    }
}

/// Discriminant (−1)^{d(d−1)/2}·Res(h, h′)/lc(h), via the Sylvester matrix.
pub fn discriminant(h: &Poly) -> BigRational {
    let d = h.degree();
    if d < 1 {
        return BigRational::zero();
    }
    if d == 1 {
        return BigRational::one();
    }
    let dh = h.derivative();
    let e = dh.degree();
    let size = d + e;
    let mut rows = Vec::with_capacity(size);
    for i in 0..e {
        let mut row = vec![BigRational::zero(); size];
        for j in 0..=d {
            row[i + j] = h.coeff(d - j);
        }
        rows.push(row);
    }
    for i in 0..d {
        let mut row = vec![BigRational::zero(); size];
        for j in 0..=e {
            row[i + j] = dh.coeff(e - j);
        }
        rows.push(row);
    }
    let res = determinant(rows);
    let s = if (d * (d - 1) / 2) % 2 == 0 {
        int(1)
    } else {
        int(-1)
    };
    s * res / h.leading()
}
