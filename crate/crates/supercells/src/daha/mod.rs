//! The double affine Hecke algebra of GL_n in its polynomial
//! representation, and DAHA-Jones polynomials of iterated torus knots.
//!
//! Coefficients are exact: the τ-images are evaluated over Laurent
//! polynomials in q^{1/2}, t^{1/2}, and rational functions appear only in
//! Macdonald polynomials and the final normalization.

mod coeff;
mod expr;
mod jones;
mod macdonald;
mod poly;
mod selftest;

pub use coeff::Coeff;
pub use expr::{gamma_lift, tau_matrix, x_images, y_images, Letter, MonoWord, OperatorExpr, Tau, TauWord};
pub use jones::{
    a_degree_bound, a_node, apply_gamma, column_weight, daha_jones, daha_jones_from_e, daha_jones_raw, daha_superpolynomial, knot_words,
    specialize_at_node, DahaSuper,
};
pub use macdonald::{
    coinvariant, column_p, evaluate_at_rho, is_dominant, macdonald_e, macdonald_eval_product, macdonald_p,
    macdonald_p_with_lead, symmetrize,
};
pub use poly::{Weight, XPoly};
pub use selftest::{relation_failures, selftest, SelftestReport};

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DahaError {
    #[error("Newton pair ({0}, {1}) is not coprime and positive")]
    BadPair(u64, u64),
    #[error("empty Newton pair list")]
    NoPairs,
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i32>),
    #[error("ω_{k} is not a weight of GL_{n}")]
    WeightTooLarge { k: usize, n: usize },
    #[error("eigenproblem is degenerate: {0}")]
    Degenerate(String),
    #[error("DAHA-Jones value keeps a denominator: {0}")]
    ResidualDenominator(String),
    #[error("a-stabilization failed: {0}")]
    Stabilization(String),
}

/// An iterated torus knot given by Newton pairs (r_i, s_i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotPresentation {
    pub r: Vec<u64>,
    pub s: Vec<u64>,
}

impl KnotPresentation {
    pub fn new(r: Vec<u64>, s: Vec<u64>) -> Result<KnotPresentation, DahaError> {
        if r.is_empty() || r.len() != s.len() {
            return Err(DahaError::NoPairs);
        }
        for (&a, &b) in r.iter().zip(&s) {
            if a == 0 || b == 0 || a.gcd(&b) != 1 {
                return Err(DahaError::BadPair(a, b));
            }
        }
        Ok(KnotPresentation { r, s })
    }

    pub fn torus(r: u64, s: u64) -> Result<KnotPresentation, DahaError> {
        Self::new(vec![r], vec![s])
    }

    /// Parse "3:2,2:3".
    pub fn parse(text: &str) -> Result<KnotPresentation, DahaError> {
        let mut r = Vec::new();
        let mut s = Vec::new();
        for pair in text.split(',') {
            let (a, b) = pair.split_once(':').ok_or(DahaError::NoPairs)?;
            let a: u64 = a.trim().parse().map_err(|_| DahaError::NoPairs)?;
            let b: u64 = b.trim().parse().map_err(|_| DahaError::NoPairs)?;
            r.push(a);
            s.push(b);
        }
        Self::new(r, s)
    }

    pub fn cable(&self) -> Vec<u64> {
        newton_to_cable(&self.r, &self.s)
    }
}

/// Cabling parameters a₁ = s₁, a_i = a_{i−1} r_{i−1} r_i + s_i.
pub fn newton_to_cable(r: &[u64], s: &[u64]) -> Vec<u64> {
    let mut a: Vec<u64> = Vec::with_capacity(r.len());
    for i in 0..r.len() {
        let v = if i == 0 { s[0] } else { a[i - 1] * r[i - 1] * r[i] + s[i] };
        a.push(v);
    }
    a
}

#[cfg(test)]
mod tests;
