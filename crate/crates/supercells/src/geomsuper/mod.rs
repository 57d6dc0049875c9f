//! Geometric superpolynomials assembled from classified cells, identities
//! they should satisfy, and a brute-force module count over small prime
//! fields to check the cells against.

mod oracle;

pub use oracle::{oracle_compare, oracle_compare_torus, oracle_enumerate, OracleCounts, OracleError, OracleKey, OracleOptions};

use crate::cellsys::{CellRecord, CellType};
use crate::exactalg::{Exp, Int, LaurentQTA, Var};
use crate::semigroup::Semigroup;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("{0} cells could not be classified")]
    Unclassified(usize),
    #[error("t-exponent {0}/2 is not an integer at most ∂")]
    BadTExponent(i32),
}

/// Superpolynomial with the cells that could not be used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assembly {
    pub h: LaurentQTA,
    /// Indices into the cell list of UNKNOWN cells.
    pub unknown: Vec<usize>,
}

/// Σ over cells of q^κ a^ℓ t^{∂} P(1/t), ∂ = rk²δ.
///
/// In strict mode an UNKNOWN cell is an error; otherwise it is skipped and
/// reported in [`Assembly::unknown`].
pub fn motivic_superpolynomial(cells: &[CellRecord], rank: usize, delta: usize, strict: bool) -> Result<Assembly, GeomError> {
    let partial = rank * rank * delta;
    let mut h = LaurentQTA::zero();
    let mut unknown = Vec::new();
    for (i, c) in cells.iter().enumerate() {
        match c.cell_type {
            CellType::NonAdmissible => {}
            CellType::Unknown => unknown.push(i),
            _ => h = &h + &c.contribution(partial).expect("classified cell"),
        }
    }
    if strict && !unknown.is_empty() {
        return Err(GeomError::Unclassified(unknown.len()));
    }
    Ok(Assembly { h, unknown })
}

/// Σ dim H^{BM}_{2i} q^{κ} t^{∂−i} a^ℓ, with the Betti numbers read off
/// from the E-polynomial of each cell type. Odd homology is assumed to
/// vanish, so this agrees with the motivic polynomial by construction on
/// every run where both are defined.
pub fn singular_superpolynomial(cells: &[CellRecord], rank: usize, delta: usize) -> Result<LaurentQTA, GeomError> {
    let partial = (rank * rank * delta) as i64;
    let mut betti: BTreeMap<(usize, usize, i64), i64> = BTreeMap::new();
    let mut missing = 0;
    for c in cells {
        let Some(tmpl) = c.cell_type.template() else {
            if c.cell_type == CellType::Unknown {
                missing += 1;
            }
            continue;
        };
        for (k, &b) in tmpl.iter().enumerate() {
            let i = c.potential_dim as i64 - 1 + k as i64;
            *betti.entry((c.kappa, c.ell, i)).or_default() += b;
        }
    }
    if missing > 0 {
        return Err(GeomError::Unclassified(missing));
    }
    let mut h = LaurentQTA::zero();
    for ((kappa, ell, i), b) in betti {
        h.add_term(Exp::new(2 * kappa as i32, 2 * (partial - i) as i32, ell as u32), &Int::from(b));
    }
    Ok(h)
}

/// Σ_cells q^κ a^ℓ · #cell(𝔽_T), using each cell's type.
pub fn count_generating_function(cells: &[CellRecord], t: u64) -> LaurentQTA {
    let mut out = LaurentQTA::zero();
    for c in cells {
        if let Some(n) = c.predicted_count(t) {
            out.add_term(Exp::new(2 * c.kappa as i32, 0, c.ell as u32), &n);
        }
    }
    out
}

/// T^{∂}·H(q, 1/T, a) as a polynomial in q and a.
pub fn at_inverse_field_size(h: &LaurentQTA, partial: usize, t: u64) -> Result<LaurentQTA, GeomError> {
    let mut out = LaurentQTA::zero();
    let tt = Int::from(t);
    for (e, c) in h.terms() {
        if e.t2 % 2 != 0 || e.t2 / 2 > partial as i32 {
            return Err(GeomError::BadTExponent(e.t2));
        }
        let k = (partial as i32 - e.t2 / 2) as u32;
        out.add_term(Exp::new(e.q2, 0, e.a), &(c * &tt.pow(k)));
    }
    Ok(out)
}

/// Does T^{∂} H(q, 1/T, a) equal the point-count generating function?
pub fn check_count_identity(h: &LaurentQTA, cells: &[CellRecord], partial: usize, t: u64) -> bool {
    at_inverse_field_size(h, partial, t).is_ok_and(|lhs| lhs == count_generating_function(cells, t))
}

/// Cells outside 0 ≤ dev ≤ δ·rk and 0 ≤ ℓ ≤ rk·(m−1).
///
/// Flag cells may have dimension above ∂, so t-exponents below zero are
/// legitimate in this normalization and are not checked here.
pub fn index_range_violations(cells: &[CellRecord], rank: usize, semigroup: &Semigroup) -> Vec<usize> {
    cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.kappa - c.ell > semigroup.delta * rank || c.ell > rank * (semigroup.multiplicity - 1))
        .map(|(i, _)| i)
        .collect()
}

/// q^{rk²δ} t^{rkδ} H(1/t, 1/q, a): the normalization with nonnegative
/// t-exponents bounded by rk·δ.
pub fn dual_normalization(h: &LaurentQTA, rank: usize, delta: usize) -> LaurentQTA {
    let (sq, st) = ((2 * rank * rank * delta) as i32, (2 * rank * delta) as i32);
    LaurentQTA::from_terms(h.terms().map(|(e, c)| (Exp::new(sq - e.t2, st - e.q2, e.a), c.clone())))
}

/// Inverse of [`dual_normalization`]; the two coincide only for rk = 1.
pub fn from_dual_normalization(h: &LaurentQTA, rank: usize, delta: usize) -> LaurentQTA {
    let (sq, st) = ((2 * rank * rank * delta) as i32, (2 * rank * delta) as i32);
    LaurentQTA::from_terms(h.terms().map(|(e, c)| (Exp::new(st - e.t2, sq - e.q2, e.a), c.clone())))
}

/// (1 − q)·Σ_{γ∈Γ} q^γ, a polynomial since Γ contains everything from the conductor on.
pub fn alexander_polynomial(semigroup: &Semigroup) -> LaurentQTA {
    let mut out = LaurentQTA::zero();
    for g in 0..semigroup.conductor {
        if semigroup.contains(g as i64) {
            out.add_term(Exp::new(2 * g as i32, 0, 0), &Int::ONE);
            out.add_term(Exp::new(2 * (g as i32 + 1), 0, 0), &Int::from(-1));
        }
    }
    out.add_term(Exp::new(2 * semigroup.conductor as i32, 0, 0), &Int::ONE);
    out
}

/// H(q, t = q, a = −1) − (1 − q)Σ_{γ∈Γ} q^γ; zero when the identity holds.
pub fn alexander_difference(h: &LaurentQTA, semigroup: &Semigroup) -> LaurentQTA {
    let s = h
        .specialize(&[(Var::T, LaurentQTA::q()), (Var::A, LaurentQTA::constant(-1))])
        .expect("integral t-exponents");
    &s - &alexander_polynomial(semigroup)
}

pub fn check_alexander(h: &LaurentQTA, semigroup: &Semigroup) -> Result<(), LaurentQTA> {
    let d = alexander_difference(h, semigroup);
    if d.is_zero() {
        Ok(())
    } else {
        Err(d)
    }
}

/// H_rk(q, 1, a) = H_1(q, 1, a)^rk; the error carries the difference.
pub fn check_t1_power(h_rank: &LaurentQTA, h_one: &LaurentQTA, rank: u32) -> Result<(), LaurentQTA> {
    let one = [(Var::T, LaurentQTA::one())];
    let lhs = h_rank.specialize(&one).expect("t = 1");
    let rhs = h_one.specialize(&one).expect("t = 1").pow(rank);
    let d = &lhs - &rhs;
    if d.is_zero() {
        Ok(())
    } else {
        Err(d)
    }
}

/// Contribution of every (ℓ, dev) stratum.
pub fn decompose(cells: &[CellRecord], rank: usize, delta: usize) -> BTreeMap<(usize, usize), LaurentQTA> {
    let partial = rank * rank * delta;
    let mut out: BTreeMap<(usize, usize), LaurentQTA> = BTreeMap::new();
    for c in cells {
        if let Some(h) = c.contribution(partial) {
            let e = out.entry((c.ell, c.kappa - c.ell)).or_default();
            *e = &*e + &h;
        }
    }
    out
}

#[cfg(test)]
mod tests;
