//! Exact Fisher-type lower bounds for spherical designs of harmonic index T,
//! with certified minima, non-existence screening and Diophantine searches.

pub mod algebraic;
pub mod asymp;
pub mod cli;
pub mod designcheck;
pub mod dioph;
pub mod exact;
pub mod fisher;
pub mod orthopoly;
pub mod poly;
pub mod realroots;
pub mod screen;
