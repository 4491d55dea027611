//! Fisher-type lower bounds b_{n,T}.
//!
//! Single indices go through the certified minimum of Q_{n,t}. Index sets are
//! solved by matching L = Q_{t₁} + Σ f_{tᵢ}Q_{tᵢ} against
//! a·u^ε·∏(u − αᵢ²)² − c in u = x², eliminating the f's exactly.

mod cert;
mod closed;
mod json;
mod matching;
pub mod mpoly;

use std::fmt;

use thiserror::Error;

use crate::exact::BigRational;
use crate::orthopoly::OrthoError;
use crate::realroots::RootError;

pub use cert::{verify_certificate, BoundCertificate, Verdict, Witness};
pub use closed::{bound_formula, bound_formula_at, closed_form, closed_form_with, CATALOG};
pub use json::{
    certificate_from_json, certificate_to_json, rational_from_json, rational_to_json,
    value_from_json, value_to_json, value_to_json_width, CertificateParseError,
};
pub use matching::{
    fisher_bound_single, match_coefficients, match_coefficients_with, match_solutions, MatchPolicy,
};

/// Largest index accepted from untrusted input.
pub const MAX_INDEX: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HarmonicIndexSet {
    indices: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexSetError {
    #[error("index set is empty")]
    Empty,
    #[error("index {0} is not an even integer >= 2")]
    NotEven(String),
    #[error("indices must be strictly decreasing")]
    NotDecreasing,
    #[error("index {0} exceeds the supported maximum {MAX_INDEX}")]
    TooLarge(u32),
}

impl HarmonicIndexSet {
    pub fn new(indices: Vec<u32>) -> Result<Self, IndexSetError> {
        if indices.is_empty() {
            return Err(IndexSetError::Empty);
        }
        for &t in &indices {
            if t < 2 || t % 2 != 0 {
                return Err(IndexSetError::NotEven(t.to_string()));
            }
            if t > MAX_INDEX {
                return Err(IndexSetError::TooLarge(t));
            }
        }
        if indices.windows(2).any(|w| w[0] <= w[1]) {
            return Err(IndexSetError::NotDecreasing);
        }
        Ok(Self { indices })
    }

    pub fn single(t: u32) -> Result<Self, IndexSetError> {
        Self::new(vec![t])
    }

    /// Parses a comma list such as "12,8,4".
    pub fn parse(s: &str) -> Result<Self, IndexSetError> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}');
        if s.trim().is_empty() {
            return Err(IndexSetError::Empty);
        }
        let mut v = Vec::new();
        for part in s.split(',') {
            let p = part.trim();
            let t: u32 = p
                .parse()
                .map_err(|_| IndexSetError::NotEven(p.chars().take(32).collect()))?;
            v.push(t);
            if v.len() > 64 {
                return Err(IndexSetError::NotDecreasing);
            }
        }
        Self::new(v)
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn t1(&self) -> u32 {
        self.indices[0]
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// e = t₁/2.
    pub fn e(&self) -> u32 {
        self.t1() / 2
    }

    /// ε = e mod 2: whether the form carries a factor u = x².
    pub fn epsilon(&self) -> u32 {
        self.e() % 2
    }

    /// Number of positive minimizers m = (t₁ − 2ε)/4.
    pub fn m(&self) -> u32 {
        (self.t1() - 2 * self.epsilon()) / 4
    }

    /// ℓ = m + ε.
    pub fn has_matching_shape(&self) -> bool {
        self.len() as u32 == self.m() + self.epsilon()
    }
}

impl fmt::Display for HarmonicIndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|t| t.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FisherError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no solution: consistency residual {residual}")]
    NoSolution { residual: BigRational },
    #[error("complex coefficients: discriminant {discriminant}")]
    ComplexCoefficients { discriminant: BigRational },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("no valid minimizer configuration: {0}")]
    InvalidMinimizers(String),
    #[error("{0} valid solutions; the matching is not unique")]
    MultipleSolutions(usize),
    #[error("the matching system is underdetermined")]
    Underdetermined,
    #[error("index set {0} is not in the closed-form catalog")]
    UnsupportedIndexSet(String),
    #[error(transparent)]
    Index(#[from] IndexSetError),
    #[error(transparent)]
    Root(#[from] RootError),
}

impl From<OrthoError> for FisherError {
    fn from(e: OrthoError) -> Self {
        FisherError::Domain(e.to_string())
    }
}

impl From<crate::exact::ExactError> for FisherError {
    fn from(e: crate::exact::ExactError) -> Self {
        FisherError::Root(RootError::Exact(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_set_shape() {
        let t = HarmonicIndexSet::parse("10,6,2").unwrap();
        assert_eq!((t.e(), t.epsilon(), t.m()), (5, 1, 2));
        assert!(t.has_matching_shape());
        let t = HarmonicIndexSet::parse("12, 8, 4").unwrap();
        assert_eq!((t.epsilon(), t.m()), (0, 3));
        assert!(t.has_matching_shape());
        assert!(!HarmonicIndexSet::single(6).unwrap().has_matching_shape());
        assert!(HarmonicIndexSet::single(4).unwrap().has_matching_shape());
        assert_eq!(t.to_string(), "{12,8,4}");
    }

    #[test]
    fn index_set_rejects() {
        assert_eq!(HarmonicIndexSet::parse(""), Err(IndexSetError::Empty));
        assert_eq!(
            HarmonicIndexSet::parse("4,8"),
            Err(IndexSetError::NotDecreasing)
        );
        assert_eq!(
            HarmonicIndexSet::parse("8,8"),
            Err(IndexSetError::NotDecreasing)
        );
        assert!(matches!(
            HarmonicIndexSet::parse("5"),
            Err(IndexSetError::NotEven(_))
        ));
        assert!(matches!(
            HarmonicIndexSet::parse("0"),
            Err(IndexSetError::NotEven(_))
        ));
        assert!(matches!(
            HarmonicIndexSet::parse("x"),
            Err(IndexSetError::NotEven(_))
        ));
        assert!(matches!(
            HarmonicIndexSet::parse("1000"),
            Err(IndexSetError::TooLarge(1000))
        ));
    }
}
