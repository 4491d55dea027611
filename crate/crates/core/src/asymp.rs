//! Large-n behaviour of the single-index bounds.
//!
//! With x₁ the largest zero of H_{2e−1},
//! c_{n,2e} ~ A·nᵉ and b_{n,2e} ~ B·nᵉ where
//! A = −H_{2e}(x₁)/(2ᵉ(2e)!) and B = −2ᵉ/H_{2e}(x₁).
//! Both constants live in Q(x₁²) and are computed there exactly.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use thiserror::Error;

use crate::algebraic::{NumberField, RealAlgebraic};
use crate::exact::{decimal, BigRational, RationalInterval};
use crate::fisher::{fisher_bound_single, FisherError};
use crate::orthopoly::hermite;
use crate::poly::Poly;
use crate::realroots::{classify, real_roots, IsolatedRoot, RootError};

#[derive(Debug, Error)]
pub enum AsympError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Fisher(#[from] FisherError),
    #[error(transparent)]
    Root(#[from] RootError),
}

#[derive(Debug, Clone)]
pub struct AsymptoticConstants {
    pub e: u32,
    /// Largest zero of H_{2e−1}.
    pub x1: IsolatedRoot,
    pub x1_sq: RealAlgebraic,
    pub a: RealAlgebraic,
    pub b: RealAlgebraic,
    field: NumberField,
    a_elem: Poly,
    b_elem: Poly,
}

fn factorial(k: u32) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

impl AsymptoticConstants {
    /// A·B·(2e)! reduced in Q(x₁²); exactly 1 when the constants are right.
    pub fn product_identity(&self) -> BigRational {
        let p = self.field.mul(&self.a_elem, &self.b_elem);
        debug_assert!(p.degree() == 0);
        p.coeff(0) * BigRational::from_integer(factorial(2 * self.e))
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }
}

pub fn asymptotic_constants(e: u32) -> Result<AsymptoticConstants, AsympError> {
    if e < 2 {
        return Err(AsympError::Domain(format!("e must be at least 2, got {e}")));
    }
    if e > 40 {
        return Err(AsympError::Domain(format!("e = {e} is too large")));
    }
    let h_odd = hermite(2 * e - 1);
    let h_even = hermite(2 * e);
    let width = BigRational::new(One::one(), BigInt::from(10).pow(12));
    let x1 = real_roots(&h_odd, &width)
        .pop()
        .expect("odd Hermite polynomials have real zeros");

    // H_{2e−1}(x)/x and H_{2e}(x) are even; pass to u = x².
    let g = h_odd
        .exact_div(&Poly::x())
        .expect("odd polynomial")
        .even_to_u();
    let k = h_even.even_to_u();
    let u1 = real_roots(&g, &width)
        .pop()
        .expect("positive zero of H_{2e-1}/x");
    let x1_sq = classify(&u1);
    let mut field = NumberField::new(&x1_sq);

    let two_e = BigRational::from_integer(BigInt::from(2).pow(e));
    let scale_a = -(two_e.clone() * BigRational::from_integer(factorial(2 * e))).recip();
    let a_elem = field.reduce(&k.scale(&scale_a));
    let b_elem = field.inv(&k)?.scale(&-two_e);
    let a = field.value(&a_elem)?;
    let b = field.value(&b_elem)?;
    if a.signum() <= 0 || b.signum() <= 0 {
        return Err(AsympError::Domain(format!(
            "non-positive constants for e = {e}"
        )));
    }
    Ok(AsymptoticConstants {
        e,
        x1,
        x1_sq,
        a,
        b,
        field,
        a_elem,
        b_elem,
    })
}

#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    pub n: i64,
    pub c_ratio: RationalInterval,
    pub b_ratio: RationalInterval,
    /// Enclosure of |b_{n,2e}/nᵉ − B|.
    pub deviation: RationalInterval,
}

#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub constants: AsymptoticConstants,
    pub rows: Vec<ConvergenceRow>,
}

fn abs_interval(iv: &RationalInterval) -> RationalInterval {
    if iv.contains_zero() {
        let m = std::cmp::max(iv.lo.abs(), iv.hi.abs());
        RationalInterval::new(BigRational::from_integer(0.into()), m).expect("ordered")
    } else if iv.is_negative() {
        iv.neg()
    } else {
        iv.clone()
    }
}

fn width_for(precision: usize) -> BigRational {
    BigRational::new(One::one(), BigInt::from(10).pow(precision as u32 + 4))
}

pub fn convergence_report(
    e: u32,
    n_list: &[i64],
    precision: usize,
) -> Result<ConvergenceReport, AsympError> {
    let constants = asymptotic_constants(e)?;
    if let Some(&n) = n_list.iter().find(|&&n| n < 3) {
        return Err(AsympError::Domain(format!("n must be at least 3, got {n}")));
    }
    let w = width_for(precision);
    let big_b = constants.b.to_interval(&w);
    let rows = n_list
        .par_iter()
        .map(|&n| -> Result<ConvergenceRow, AsympError> {
            let cert = fisher_bound_single(n, 2 * e)?;
            let ne = BigRational::from_integer(BigInt::from(n).pow(e));
            let inv = ne.recip();
            // Scale the target width so the ratios keep it after division.
            let wn = &w * &ne;
            let c_ratio = cert.c.to_interval(&wn).scale(&inv);
            let b_ratio = cert.b.to_interval(&wn).scale(&inv);
            let deviation = abs_interval(&b_ratio.sub(&big_b));
            Ok(ConvergenceRow {
                n,
                c_ratio,
                b_ratio,
                deviation,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ConvergenceReport { constants, rows })
}

impl ConvergenceReport {
    pub fn to_csv(&self, precision: usize) -> String {
        let mut out = String::from("n,c_ratio,b_ratio,deviation\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.n,
                decimal(&r.c_ratio.mid(), precision),
                decimal(&r.b_ratio.mid(), precision),
                decimal(&r.deviation.mid(), precision),
            ));
        }
        out
    }
}
