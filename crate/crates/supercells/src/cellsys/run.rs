//! One record per flag: build, eliminate, classify.

use super::{
    build_equations, build_generators, classify_residual, default_fields, eliminate_with, CellError, CellType,
    FlagEquations, Pivot, RingSpec, VarOrder,
};
use crate::exactalg::{GaloisField, Int, LaurentQTA};
use crate::gmod::{enumerate_flags, DeltaFlag};
use rayon::prelude::*;
use serde::Serialize;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct CellOptions {
    pub order: VarOrder,
    pub equations: FlagEquations,
    pub pivot: Pivot,
    pub fields: Vec<Arc<GaloisField>>,
}

impl Default for CellOptions {
    fn default() -> Self {
        CellOptions {
            order: VarOrder::default(),
            equations: FlagEquations::default(),
            pivot: Pivot::default(),
            fields: default_fields(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellRecord {
    /// Primitive added elements of Δ₀ and of the top module.
    pub d0_dag: Vec<usize>,
    pub d_top_dag: Vec<usize>,
    /// g₁ < … < g_ℓ.
    pub added: Vec<usize>,
    pub ell: usize,
    pub kappa: usize,
    pub potential_dim: usize,
    pub cell_type: CellType,
    pub lambda_count: usize,
    pub residual_equations: usize,
    /// `(field size, points)` behind the classification, empty for solved cells.
    pub counts: Vec<(u64, Int)>,
}

impl CellRecord {
    /// Contribution q^κ a^ℓ t^{∂} P(1/t) of the cell, ∂ = rk²δ.
    pub fn contribution(&self, partial: usize) -> Option<LaurentQTA> {
        self.cell_type.contribution(self.kappa, self.ell, partial, self.potential_dim)
    }

    /// Number of points over 𝔽_T predicted by the type.
    pub fn predicted_count(&self, t: u64) -> Option<Int> {
        match self.cell_type {
            CellType::NonAdmissible => Some(Int::ZERO),
            ty => ty.count_at(self.potential_dim, t),
        }
    }
}

pub fn analyze_flag(flag: &DeltaFlag, ring: &RingSpec, opts: &CellOptions) -> Result<CellRecord, CellError> {
    let template = build_generators(flag, ring, opts.order)?;
    let eqs = build_equations(&template, ring, opts.equations);
    let res = eliminate_with(eqs.into_iter().map(|(_, e)| e).collect(), template.var_count(), opts.pivot);
    let class = classify_residual(&res, &opts.fields).map_err(CellError::Count)?;
    Ok(CellRecord {
        d0_dag: flag.dset_at(0).primitive,
        d_top_dag: flag.dset_at(flag.len()).primitive,
        added: flag.added.clone(),
        ell: flag.len(),
        kappa: flag.kappa(),
        potential_dim: class.potential_dim,
        cell_type: class.cell_type,
        lambda_count: template.var_count(),
        residual_equations: res.equations.len(),
        counts: class.counts,
    })
}

/// Every flag of length ≤ `max_ell` over the standard rank-`rank` modules of
/// the ring, in enumeration order.
pub fn run_cells(ring: &RingSpec, rank: usize, max_ell: usize, opts: &CellOptions) -> Result<Vec<CellRecord>, CellError> {
    let flags: Vec<DeltaFlag> = (0..=max_ell).flat_map(|ell| enumerate_flags(&ring.semigroup, rank, ell)).collect();
    flags.par_iter().map(|f| analyze_flag(f, ring, opts)).collect()
}
