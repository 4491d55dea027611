//! Sparse multivariate polynomials over Q, just enough for the matching
//! system (a handful of unknowns, low degree).

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exact::BigRational;
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        p.push(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.push(e, BigRational::one());
        p
    }

    fn push(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry(e.clone())
            .or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if no variable occurs.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            p.push(e.clone(), v * c);
        }
        p
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn occurs(&self, i: usize) -> bool {
        self.degree_in(i) > 0
    }

    /// Coefficient of x_i^k, as a polynomial in the other variables.
    pub fn coeff_in(&self, i: usize, k: u32) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            if e[i] == k {
                let mut e2 = e.clone();
                e2[i] = 0;
                p.push(e2, v.clone());
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.nvars, BigRational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Replace x_i by `s`.
    pub fn substitute(&self, i: usize, s: &MPoly) -> Self {
        let d = self.degree_in(i);
        let mut acc = Self::zero(self.nvars);
        let mut pw = Self::constant(self.nvars, BigRational::one());
        for k in 0..=d {
            acc = &acc + &(&self.coeff_in(i, k) * &pw);
            if k < d {
                pw = &pw * s;
            }
        }
        acc
    }

    /// View as a univariate polynomial in x_i; None if another variable occurs.
    pub fn to_univariate(&self, i: usize) -> Option<Poly> {
        let d = self.degree_in(i) as usize;
        let mut c = vec![BigRational::zero(); d + 1];
        for (e, v) in &self.terms {
            if e.iter().enumerate().any(|(j, &k)| j != i && k > 0) {
                return None;
            }
            c[e[i] as usize] += v;
        }
        Some(Poly::new(c))
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        let mut p = self.clone();
        for (e, v) in &o.terms {
            p.push(e.clone(), v.clone());
        }
        p
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        let mut p = self.clone();
        for (e, v) in &o.terms {
            p.push(e.clone(), -v);
        }
        p
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        let mut p = MPoly::zero(self.nvars);
        for (e1, v1) in &self.terms {
            for (e2, v2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.push(e, v1 * v2);
            }
        }
        p
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-BigRational::one())
    }
}
