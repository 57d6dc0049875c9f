//! Cell types.
//!
//! A residual system with potential dimension N is matched by its point
//! counts against the catalogue below, each written as T^{N−1}·P(T) with
//! T the field size. The catalogue values at T = 3 are pairwise distinct,
//! so one count over 𝔽₃ picks the candidate and further fields confirm it.

use super::count::{count_points, CountError};
use super::ResidualSystem;
use crate::exactalg::{Exp, GaloisField, Int, LaurentQTA};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CellType {
    A,
    X,
    Y,
    Z,
    W,
    L,
    M,
    N,
    NonAdmissible,
    Unknown,
}

impl CellType {
    pub const TEMPLATES: [CellType; 8] =
        [CellType::A, CellType::X, CellType::Y, CellType::Z, CellType::W, CellType::L, CellType::M, CellType::N];

    /// Coefficients (lowest first) of P(T), where the count is T^{N−1}·P(T).
    pub fn template(self) -> Option<&'static [i64]> {
        Some(match self {
            CellType::A => &[0, 1],
            CellType::X => &[-1, 1],
            CellType::Y => &[-1, 2],
            CellType::Z => &[-2, 2],
            CellType::W => &[-2, 3],
            CellType::L => &[-1, 0, 1],
            CellType::M => &[-1, 1, 1],
            CellType::N => &[-1, 0, 1, 1],
            CellType::NonAdmissible | CellType::Unknown => return None,
        })
    }

    /// Number of points over 𝔽_T of a cell of this type with potential dimension `n`.
    pub fn count_at(self, n: usize, t: u64) -> Option<Int> {
        let tmpl = self.template()?;
        let t = Int::from(t);
        let mut acc = Int::ZERO;
        for (i, &c) in tmpl.iter().enumerate() {
            // T^{n−1+i}; n = 0 only makes sense when the constant term vanishes.
            let e = n as i64 - 1 + i as i64;
            if c == 0 {
                continue;
            }
            if e < 0 {
                return None;
            }
            acc += &(&Int::from(c) * &t.pow(e as u32));
        }
        Some(acc)
    }

    /// Whether the cell contributes q^κ a^ℓ at t = 1 (the others contribute 0).
    pub fn survives_t1(self) -> bool {
        matches!(self, CellType::A | CellType::Y | CellType::W | CellType::M | CellType::N)
    }

    /// q^κ a^ℓ t^{∂} P_N(1/t): the contribution of one cell.
    pub fn contribution(self, kappa: usize, ell: usize, partial: usize, n: usize) -> Option<LaurentQTA> {
        let tmpl = self.template()?;
        let mut h = LaurentQTA::zero();
        for (i, &c) in tmpl.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let deg = n as i64 - 1 + i as i64;
            let e = Exp::new(2 * kappa as i32, 2 * (partial as i64 - deg) as i32, ell as u32);
            h.add_term(e, &Int::from(c));
        }
        Some(h)
    }

    pub fn label(self) -> &'static str {
        match self {
            CellType::A => "A",
            CellType::X => "X",
            CellType::Y => "Y",
            CellType::Z => "Z",
            CellType::W => "W",
            CellType::L => "L",
            CellType::M => "M",
            CellType::N => "N",
            CellType::NonAdmissible => "NONADMISSIBLE",
            CellType::Unknown => "UNKNOWN",
        }
    }

    pub fn from_label(s: &str) -> Option<CellType> {
        Self::TEMPLATES
            .into_iter()
            .chain([CellType::NonAdmissible, CellType::Unknown])
            .find(|t| t.label() == s)
    }
}

impl fmt::Display for CellType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub cell_type: CellType,
    pub potential_dim: usize,
    /// `(field size, number of points)` samples behind the verdict.
    pub counts: Vec<(u64, Int)>,
}

/// Fields used for classification: 𝔽₃ first, then 𝔽₉ to confirm.
pub fn default_fields() -> Vec<std::sync::Arc<GaloisField>> {
    vec![GaloisField::new(3, 1), GaloisField::new(3, 2)]
}

/// Classify a residual system by point counts over `fields`.
pub fn classify_residual(res: &ResidualSystem, fields: &[std::sync::Arc<GaloisField>]) -> Result<Classification, CountError> {
    let pd = res.potential_dim();
    if res.inconsistent.is_some() || pd < 0 {
        let n = pd.max(0) as usize;
        return Ok(Classification { cell_type: CellType::NonAdmissible, potential_dim: n, counts: Vec::new() });
    }
    let n = pd as usize;
    if res.equations.is_empty() {
        return Ok(Classification { cell_type: CellType::A, potential_dim: n, counts: Vec::new() });
    }
    let mut counts = Vec::with_capacity(fields.len());
    for f in fields {
        counts.push((f.size as u64, count_points(res, f)?));
    }
    let cell_type = if counts.iter().all(|(_, c)| c.is_zero()) {
        CellType::NonAdmissible
    } else {
        CellType::TEMPLATES
            .into_iter()
            .find(|t| counts.iter().all(|(q, c)| t.count_at(n, *q).as_ref() == Some(c)))
            .unwrap_or(CellType::Unknown)
    };
    Ok(Classification { cell_type, potential_dim: n, counts })
}

/// [`classify_residual`] over the default fields.
pub fn classify_cell(res: &ResidualSystem) -> Result<Classification, CountError> {
    classify_residual(res, &default_fields())
}
