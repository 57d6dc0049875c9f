//! Cells of the generalized Jacobian factor as explicit polynomial systems.
//!
//! Every cell of a flag is cut out by polynomial equations in λ-variables
//! (the tail coefficients of the module generators). Straightforward
//! elimination removes variables that occur linearly with a unit
//! coefficient; whatever survives is counted over finite fields and
//! matched against a small catalogue of cell types.

mod build;
mod classify;
mod count;
mod elim;
mod run;

pub use build::{
    build_equations, build_generators, multiply_by_f, reduce, EqSource, FlagEquations, Generator, GeneratorTemplate,
    Series, VarInfo, VarOrder,
};
pub use classify::{classify_cell, classify_residual, default_fields, CellType, Classification};
pub use count::{count_points, count_points_over, CountError, DEFAULT_BUDGET};
pub use elim::{eliminate, eliminate_with, Pivot, ResidualSystem};
pub use run::{analyze_flag, run_cells, CellOptions, CellRecord};

use crate::semigroup::{family_semigroup, semigroup_from_generators, CofiniteSet, Semigroup};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CellError {
    #[error("flag step {0} does not replace a generator of the previous module")]
    MalformedFlag(usize),
    #[error("too many λ-variables ({0})")]
    TooManyVariables(usize),
    #[error("ring parameters do not define a plane curve singularity")]
    BadRing,
    #[error("residual system does not match any known cell type")]
    UnknownType,
    #[error(transparent)]
    Count(#[from] CountError),
}

/// k[[x, f]] with x = z^p and f a polynomial in z with leading term z^{f₀}.
#[derive(Clone, Debug)]
pub struct RingSpec {
    pub p: usize,
    /// `(coefficient, exponent)` terms of f, exponents increasing.
    pub f: Vec<(i64, usize)>,
    pub semigroup: Semigroup,
    /// Extra series length beyond the conductor of each Δ.
    pub trunc_margin: usize,
}

impl RingSpec {
    /// k[[z^p, z^q]].
    pub fn torus(p: usize, q: usize) -> Result<RingSpec, CellError> {
        let (p, q) = (p.min(q), p.max(q));
        let semigroup = semigroup_from_generators(&[p, q]).map_err(|_| CellError::BadRing)?;
        Ok(RingSpec { p, f: vec![(1, q)], semigroup, trunc_margin: 0 })
    }

    /// k[[z⁴, z⁶ + zᵛ]].
    pub fn family(v: i64) -> Result<RingSpec, CellError> {
        let semigroup = family_semigroup(v).map_err(|_| CellError::BadRing)?;
        Ok(RingSpec { p: 4, f: vec![(1, 6), (1, v as usize)], semigroup, trunc_margin: 0 })
    }

    pub fn delta(&self) -> usize {
        self.semigroup.delta
    }

    pub fn with_margin(mut self, margin: usize) -> RingSpec {
        self.trunc_margin = margin;
        self
    }

    /// Leading exponent of f.
    pub fn q(&self) -> usize {
        self.f[0].1
    }

    /// Series are truncated at the conductor of Δ: everything from there on
    /// lies in any module with valuation set Δ, so the margin only serves
    /// as a check.
    pub fn trunc_len(&self, delta: &CofiniteSet) -> usize {
        delta.conductor() + self.trunc_margin
    }
}

#[cfg(test)]
mod tests;
