//! Pipelines shared by the command line and the acceptance run.

use crate::cellsys::{run_cells, CellError, CellOptions, CellRecord, CellType, RingSpec};
use crate::daha::{daha_superpolynomial, DahaError, KnotPresentation};
use crate::exactalg::{Exp, GaloisField, LaurentError, LaurentQTA, Var};
use crate::geomsuper::{from_dual_normalization, motivic_superpolynomial, GeomError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Cell(#[from] CellError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Daha(#[from] DahaError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error("{0}")]
    Io(String),
    #[error("Newton pairs {0:?} do not match the ring")]
    Mismatch(Vec<u64>),
    #[error("no plane curve ring is known for Newton pairs {0}")]
    NoRing(String),
    #[error("no bundled table for v = {0}")]
    NoTable(i64),
    #[error("half-integer exponent {0:?} has no integral image")]
    HalfInteger(Exp),
    #[error("nothing to compare against")]
    NothingToCompare,
}

/// Ring given either as a torus ring or as a member of ⟨4, 6, 6+v⟩.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingChoice {
    Torus { p: usize, q: usize },
    Family { v: i64 },
}

impl RingChoice {
    pub fn spec(&self) -> Result<RingSpec, CellError> {
        match *self {
            RingChoice::Torus { p, q } => RingSpec::torus(p, q),
            RingChoice::Family { v } => RingSpec::family(v),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompareMode {
    #[default]
    Full,
    /// Only a^ℓ with ℓ ≤ the configured maximum.
    ATruncated,
    /// Both sides at t = 1.
    TEqualsOne,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    pub ring: Option<RingChoice>,
    /// Newton pairs "r:s,r:s".
    pub newton: Option<String>,
    pub rank: usize,
    /// Longest flag; `None` means the full range rk·(m − 1).
    pub max_ell: Option<usize>,
    #[serde(default)]
    pub trunc_margin: usize,
    #[serde(default = "default_true")]
    pub strict: bool,
    #[serde(default)]
    pub mode: CompareMode,
    /// Fields 𝔽_{p^m} used for point counts, as (p, m).
    #[serde(default = "default_fields")]
    pub fields: Vec<(u32, u32)>,
    /// Where the CLI writes its main output; standard output when absent.
    #[serde(default)]
    pub output: Option<std::path::PathBuf>,
    /// JSON polynomial used instead of the DAHA side.
    pub golden: Option<std::path::PathBuf>,
    /// The golden file uses the normalization q^{rk²δ} t^{rkδ} H(1/t, 1/q, a).
    #[serde(default)]
    pub golden_dual: bool,
}

fn default_true() -> bool {
    true
}

fn default_fields() -> Vec<(u32, u32)> {
    vec![(3, 1), (3, 2)]
}

/// Generators of the semigroup of an iterated torus knot with r₁ > s₁:
/// s₁R, r₁R, a₂r₃⋯r_l, …, a_l with R = r₂⋯r_l.
pub fn knot_semigroup_generators(knot: &KnotPresentation) -> Vec<usize> {
    let a = knot.cable();
    let tail = |from: usize| knot.r[from..].iter().product::<u64>();
    let mut gens = vec![(knot.s[0] * tail(1)) as usize, (knot.r[0] * tail(1)) as usize];
    for i in 1..knot.r.len() {
        gens.push((a[i] * tail(i + 1)) as usize);
    }
    gens.sort_unstable();
    gens
}

/// A ring with the singularity type of the knot, when one is available.
pub fn ring_for_knot(knot: &KnotPresentation) -> Result<RingSpec, HarnessError> {
    let err = || HarnessError::NoRing(format!("{:?}/{:?}", knot.r, knot.s));
    match knot.r.len() {
        1 => Ok(RingSpec::torus(knot.s[0] as usize, knot.r[0] as usize)?),
        2 if knot.r[0] == 3 && knot.s[0] == 2 && knot.r[1] == 2 => {
            let v = 6 + knot.s[1] as i64;
            RingSpec::family(v).map_err(|_| err())
        }
        _ => Err(err()),
    }
}

impl RunConfig {
    pub fn knot(&self) -> Result<Option<KnotPresentation>, HarnessError> {
        self.newton.as_deref().map(KnotPresentation::parse).transpose().map_err(Into::into)
    }

    /// The ring, from `ring` or derived from the Newton pairs; when both are
    /// given their semigroups must agree.
    pub fn ring_spec(&self) -> Result<RingSpec, HarnessError> {
        let from_knot = self.knot()?.map(|k| (knot_semigroup_generators(&k), ring_for_knot(&k)));
        match (&self.ring, from_knot) {
            (Some(r), None) => Ok(r.spec()?.with_margin(self.trunc_margin)),
            (None, Some((_, spec))) => Ok(spec?.with_margin(self.trunc_margin)),
            (Some(r), Some((gens, _))) => {
                let spec = r.spec()?;
                let mut own = spec.semigroup.minimal_generators();
                own.sort_unstable();
                if own != gens {
                    return Err(HarnessError::Mismatch(gens.iter().map(|&g| g as u64).collect()));
                }
                Ok(spec.with_margin(self.trunc_margin))
            }
            (None, None) => Err(HarnessError::NothingToCompare),
        }
    }

    pub fn flag_bound(&self, ring: &RingSpec) -> usize {
        self.max_ell.unwrap_or(self.rank * (ring.semigroup.multiplicity - 1))
    }

    pub fn cell_options(&self) -> CellOptions {
        let fields = self.fields.iter().map(|&(p, m)| GaloisField::new(p, m)).collect();
        CellOptions { fields, ..CellOptions::default() }
    }

    /// Defaults for everything but the ring and the rank.
    pub fn new(ring: Option<RingChoice>, newton: Option<String>, rank: usize) -> RunConfig {
        RunConfig {
            ring,
            newton,
            rank,
            max_ell: None,
            trunc_margin: 0,
            strict: true,
            mode: CompareMode::Full,
            fields: default_fields(),
            output: None,
            golden: None,
            golden_dual: false,
        }
    }
}

/// Run all cells and assemble the motivic superpolynomial.
pub fn geometric_side(
    ring: &RingSpec,
    rank: usize,
    max_ell: usize,
    strict: bool,
    opts: &CellOptions,
) -> Result<(Vec<CellRecord>, LaurentQTA), HarnessError> {
    let cells = run_cells(ring, rank, max_ell, opts)?;
    let h = motivic_superpolynomial(&cells, rank, ring.delta(), strict)?.h;
    Ok((cells, h))
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub mode: CompareMode,
    pub geometric: LaurentQTA,
    pub other: LaurentQTA,
    /// geometric − other, after the mode's projection.
    pub difference: LaurentQTA,
    pub equal: bool,
}

/// Project a polynomial according to the comparison mode.
pub fn project(h: &LaurentQTA, mode: CompareMode, max_ell: usize) -> LaurentQTA {
    match mode {
        CompareMode::Full => h.clone(),
        CompareMode::ATruncated => h.truncate_a(max_ell as u32),
        CompareMode::TEqualsOne => h.specialize(&[(Var::T, LaurentQTA::one())]).expect("t = 1 is exact"),
    }
}

/// Compare the motivic superpolynomial with the DAHA side or a golden file.
pub fn check_conjecture(config: &RunConfig) -> Result<ConjectureReport, HarnessError> {
    let ring = config.ring_spec()?;
    let max_ell = config.flag_bound(&ring);
    let (_, geometric) = geometric_side(&ring, config.rank, max_ell, config.strict, &config.cell_options())?;
    let other = match (&config.golden, config.knot()?) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
            let g = LaurentQTA::from_json(&text)?;
            if config.golden_dual {
                from_dual_normalization(&g, config.rank, ring.delta())
            } else {
                g
            }
        }
        (None, Some(knot)) => daha_superpolynomial(&knot, config.rank)?.h,
        (None, None) => return Err(HarnessError::NothingToCompare),
    };
    let lhs = project(&geometric, config.mode, max_ell);
    let rhs = project(&other, config.mode, max_ell);
    let difference = &lhs - &rhs;
    Ok(ConjectureReport { mode: config.mode, equal: difference.is_zero(), geometric, other, difference })
}

/// t = q_st², q = (q_st t_st)², a = a_st² t_st, then divided by the lowest
/// power of a_st. The result is stored with q ↦ q_st, t ↦ t_st, a ↦ a_st.
pub fn khr_substitution(h: &LaurentQTA) -> Result<LaurentQTA, HarnessError> {
    let mut out = LaurentQTA::zero();
    for (e, c) in h.terms() {
        if e.q2 % 2 != 0 || e.t2 % 2 != 0 {
            return Err(HarnessError::HalfInteger(*e));
        }
        let (i, j, k) = (e.q2 / 2, e.t2 / 2, e.a as i32);
        out.add_term(Exp::new(2 * (2 * i + 2 * j), 2 * (2 * i + k), 2 * k as u32), c);
    }
    let low = out.terms().map(|(e, _)| e.a).min().unwrap_or(0);
    Ok(LaurentQTA::from_terms(out.terms().map(|(e, c)| (Exp::new(e.q2, e.t2, e.a - low), c.clone()))))
}

/// One row of a cell-type table.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TableRow {
    /// Primitive added elements of Δ₀; absent when a table lists top sets only.
    pub d0: Option<Vec<usize>>,
    pub d_top: Vec<usize>,
    pub potential_dim: usize,
    #[serde(rename = "type")]
    pub cell_type: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TypeTable {
    pub generators: Vec<usize>,
    pub rank: usize,
    pub max_ell: usize,
    /// "top": rows are keyed by the top set only; "pair": by (Δ₀, top).
    pub key: String,
    pub rows: Vec<TableRow>,
}

impl TypeTable {
    pub fn by_top(&self) -> bool {
        self.key == "top"
    }
}

/// Bundled type tables of ⟨4, 6, 6+v⟩ in rank 2.
pub fn bundled_table(v: i64) -> Result<TypeTable, HarnessError> {
    let text = match v {
        7 => include_str!("../tests/fixtures/cell_types_4_6_13_rank2.json"),
        9 => include_str!("../tests/fixtures/cell_types_4_6_15_rank2.json"),
        15 => include_str!("../tests/fixtures/cell_types_4_6_21_rank2.json"),
        _ => return Err(HarnessError::NoTable(v)),
    };
    Ok(serde_json::from_str(text).expect("bundled table is valid JSON"))
}

/// Rows for every admissible cell that needed point counting, ordered by
/// the deviation of Δ₀ (of the top module when keyed by top), then by flag
/// length and the D† sets. Repeated rows are dropped.
pub fn table_rows(cells: &[CellRecord], by_top: bool) -> Vec<TableRow> {
    let mut keyed: Vec<((usize, usize), TableRow)> = cells
        .iter()
        .filter(|c| c.residual_equations > 0 && c.cell_type != CellType::NonAdmissible)
        .map(|c| {
            let dev = if by_top { c.kappa } else { c.kappa - c.ell };
            let row = TableRow {
                d0: (!by_top).then(|| c.d0_dag.clone()),
                d_top: c.d_top_dag.clone(),
                potential_dim: c.potential_dim,
                cell_type: c.cell_type.label().to_string(),
            };
            ((dev, c.ell), row)
        })
        .collect();
    keyed.sort();
    let mut seen = BTreeSet::new();
    keyed.into_iter().filter(|(_, r)| seen.insert(r.clone())).map(|(_, r)| r).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub v: i64,
    pub max_ell: usize,
    pub rows: Vec<TableRow>,
    /// Bundled rows that no cell reproduces.
    pub misses: Vec<TableRow>,
    /// Emitted rows absent from the bundled table.
    pub extras: usize,
}

/// Recompute the rank-2 type table of ⟨4, 6, 6+v⟩ and compare it with the
/// bundled one.
pub fn reproduce_tables(v: i64, max_ell: Option<usize>, opts: &CellOptions) -> Result<TableReport, HarnessError> {
    let table = bundled_table(v)?;
    let max_ell = max_ell.unwrap_or(table.max_ell);
    let ring = RingSpec::family(v)?;
    let cells = run_cells(&ring, table.rank, max_ell, opts)?;
    let rows = table_rows(&cells, table.by_top());
    let bundled: BTreeSet<&TableRow> = table.rows.iter().collect();
    let extras = rows.iter().filter(|r| !bundled.contains(r)).count();
    let misses = if max_ell >= table.max_ell { table_misses(&table, &cells) } else { Vec::new() };
    Ok(TableReport { v, max_ell, rows, misses, extras })
}

/// Rows of `table` that no cell reproduces.
pub fn table_misses(table: &TypeTable, cells: &[CellRecord]) -> Vec<TableRow> {
    let found: BTreeSet<(Option<Vec<usize>>, Vec<usize>, usize, String)> = cells
        .iter()
        .filter(|c| c.ell <= table.max_ell)
        .map(|c| {
            let d0 = (!table.by_top()).then(|| c.d0_dag.clone());
            (d0, c.d_top_dag.clone(), c.potential_dim, c.cell_type.label().to_string())
        })
        .collect();
    table
        .rows
        .iter()
        .filter(|r| {
            let d0 = if table.by_top() { None } else { r.d0.clone() };
            !found.contains(&(d0, r.d_top.clone(), r.potential_dim, r.cell_type.clone()))
        })
        .cloned()
        .collect()
}

/// Non-admissible 1-flags whose two modules are admissible:
/// `(Δ₀†, Δ₁†)` together with the ℓ = 0 types of both modules.
pub fn nonadmissible_one_flags(cells: &[CellRecord]) -> Vec<(Vec<usize>, Vec<usize>, CellType, CellType)> {
    let zero: std::collections::BTreeMap<&Vec<usize>, CellType> =
        cells.iter().filter(|c| c.ell == 0).map(|c| (&c.d0_dag, c.cell_type)).collect();
    let mut out: Vec<_> = cells
        .iter()
        .filter(|c| c.ell == 1 && c.cell_type == CellType::NonAdmissible)
        .filter_map(|c| {
            let a = *zero.get(&c.d0_dag)?;
            let b = *zero.get(&c.d_top_dag)?;
            (a != CellType::NonAdmissible && b != CellType::NonAdmissible).then(|| (c.d0_dag.clone(), c.d_top_dag.clone(), a, b))
        })
        .collect();
    out.sort_by(|x, y| (&x.0, &x.1).cmp(&(&y.0, &y.1)));
    out.dedup_by(|x, y| x.0 == y.0 && x.1 == y.1);
    out
}
