//! Generator templates, the canonical reduction R_Δ and cell equations.
//!
//! A module M with merged valuation set Δ is a free k[[x]]-module, x = z^p,
//! on one generator per residue class modulo P = rk·p. The generator of a
//! class starts at the least element of Δ in that class and carries one
//! λ-variable for every gap of Δ above it. Subtracting x-power multiples of
//! generators at positions of Δ, from the bottom up, is the reduction; its
//! remainder vanishes exactly when the series lies in M.

use super::{CellError, RingSpec};
use crate::exactalg::{Int, MultiPoly, VarId};
use crate::gmod::DeltaFlag;
use crate::semigroup::CofiniteSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub lead: usize,
    /// `(exponent, variable)` pairs, exponents increasing.
    pub tail: Vec<(usize, VarId)>,
}

/// Naming data for one λ-variable: which generator it belongs to and where.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarInfo {
    /// `Some(c)` for the class-c generator of M₀, `None` for a flag generator.
    pub class: Option<usize>,
    /// Flag level of the generator (0 for M₀'s basis, i for h_i).
    pub level: usize,
    pub exponent: usize,
}

impl VarInfo {
    pub fn name(&self) -> String {
        match self.class {
            Some(c) => format!("l{}_{}", c, self.exponent),
            None => format!("h{}_{}", self.level, self.exponent),
        }
    }
}

/// Order in which λ-variables receive ids; elimination prefers low ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum VarOrder {
    /// Generators by increasing leading exponent, then tail exponent.
    #[default]
    ByGenerator,
    /// Tail exponent first, then leading exponent.
    ByExponent,
    /// Reverse of `ByGenerator`.
    ByGeneratorReversed,
    /// Generators by increasing leading exponent, tail exponents decreasing.
    ByGeneratorTailDown,
}

#[derive(Clone, Debug)]
pub struct GeneratorTemplate {
    pub rank: usize,
    /// P = rk·p, the period of x-multiplication in the merged scale.
    pub period: usize,
    /// Δ₀, …, Δ_ℓ.
    pub levels: Vec<CofiniteSet>,
    /// Basis of M₀, indexed by residue class mod P.
    pub base: Vec<Generator>,
    /// Flag generators h₁, …, h_ℓ.
    pub flag: Vec<Generator>,
    /// For each hᵢ, the class it replaces.
    pub replaced: Vec<usize>,
    pub vars: Vec<VarInfo>,
}

impl GeneratorTemplate {
    pub fn var_count(&self) -> usize {
        self.vars.len()
    }

    /// Basis of Mᵢ indexed by class.
    pub fn basis_at(&self, i: usize) -> Vec<Generator> {
        let mut b = self.base.clone();
        for j in 0..i {
            b[self.replaced[j]] = self.flag[j].clone();
        }
        b
    }
}

/// Least element of each class modulo `period` inside `set`.
fn apery(set: &CofiniteSet, period: usize) -> Vec<usize> {
    (0..period)
        .map(|c| (0..).map(|k| c + k * period).find(|&x| set.contains(x as i64)).unwrap())
        .collect()
}

pub fn build_generators(flag: &DeltaFlag, ring: &RingSpec, order: VarOrder) -> Result<GeneratorTemplate, CellError> {
    let rank = flag.base.rank;
    let period = rank * ring.p;
    let levels: Vec<CofiniteSet> = (0..=flag.len()).map(|i| flag.level(i)).collect();
    let d0 = &levels[0];
    let leads = apery(d0, period);

    // Raw (generator, exponent) slots before numbering.
    struct Slot {
        gen: usize,
        lead: usize,
        exponent: usize,
        info: VarInfo,
    }
    let mut slots: Vec<Slot> = Vec::new();
    for (c, &e) in leads.iter().enumerate() {
        for k in d0.gaps().into_iter().filter(|&k| k > e) {
            slots.push(Slot { gen: c, lead: e, exponent: k, info: VarInfo { class: Some(c), level: 0, exponent: k } });
        }
    }
    let mut replaced = Vec::new();
    let mut current_leads = leads.clone();
    for (i, &g) in flag.added.iter().enumerate() {
        let c = g % period;
        if current_leads[c] != g + period {
            return Err(CellError::MalformedFlag(g));
        }
        current_leads[c] = g;
        replaced.push(c);
        let gen = period + i;
        for k in levels[i + 1].gaps().into_iter().filter(|&k| k > g) {
            slots.push(Slot { gen, lead: g, exponent: k, info: VarInfo { class: None, level: i + 1, exponent: k } });
        }
    }
    let key = |s: &Slot| -> (i64, i64, i64) {
        let (l, g, k) = (s.lead as i64, s.gen as i64, s.exponent as i64);
        match order {
            VarOrder::ByGenerator => (l, g, k),
            VarOrder::ByExponent => (k, l, g),
            VarOrder::ByGeneratorReversed => (-l, -g, -k),
            VarOrder::ByGeneratorTailDown => (l, g, -k),
        }
    };
    slots.sort_by_key(key);
    if slots.len() > VarId::MAX as usize {
        return Err(CellError::TooManyVariables(slots.len()));
    }
    let mut base: Vec<Generator> = leads.iter().map(|&e| Generator { lead: e, tail: Vec::new() }).collect();
    let mut fl: Vec<Generator> = flag.added.iter().map(|&g| Generator { lead: g, tail: Vec::new() }).collect();
    let mut vars = Vec::with_capacity(slots.len());
    for (id, s) in slots.iter().enumerate() {
        let target = if s.gen < period { &mut base[s.gen] } else { &mut fl[s.gen - period] };
        target.tail.push((s.exponent, id as VarId));
        vars.push(s.info.clone());
    }
    for g in base.iter_mut().chain(fl.iter_mut()) {
        g.tail.sort_unstable();
    }
    Ok(GeneratorTemplate { rank, period, levels, base, flag: fl, replaced, vars })
}

/// A truncated series with polynomial coefficients; positions ≥ `len` are dropped.
#[derive(Clone, Debug)]
pub struct Series {
    pub coeffs: Vec<MultiPoly>,
}

impl Series {
    pub fn zero(len: usize) -> Series {
        Series { coeffs: vec![MultiPoly::zero(); len] }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `self += k · z^shift · g`.
    pub fn add_generator(&mut self, g: &Generator, shift: usize, k: &Int) {
        let n = self.coeffs.len();
        if g.lead + shift < n {
            let pos = g.lead + shift;
            self.coeffs[pos] = self.coeffs[pos].add(&MultiPoly::constant(k.clone()));
        }
        for &(e, v) in &g.tail {
            if e + shift >= n {
                break;
            }
            let pos = e + shift;
            self.coeffs[pos] = self.coeffs[pos].add_scaled(&MultiPoly::var(v), k);
        }
    }
}

/// `f · g` in the merged scale: each term `c·z^s` of f shifts by rk·s.
pub fn multiply_by_f(g: &Generator, ring: &RingSpec, rank: usize, len: usize) -> Series {
    let mut s = Series::zero(len);
    for &(c, e) in &ring.f {
        s.add_generator(g, rank * e, &Int::from(c));
    }
    s
}

/// Reduce `y` against `basis` (indexed by class mod `period`) over `delta`.
/// Returns the remainder as `(gap exponent, coefficient)` pairs.
pub fn reduce(mut y: Series, basis: &[Generator], period: usize, delta: &CofiniteSet) -> Vec<(usize, MultiPoly)> {
    let n = y.len();
    let mut out = Vec::new();
    for k in 0..n {
        if y.coeffs[k].is_zero() {
            continue;
        }
        let coef = std::mem::take(&mut y.coeffs[k]);
        if !delta.contains(k as i64) {
            out.push((k, coef));
            continue;
        }
        let b = &basis[k % period];
        debug_assert!(b.lead <= k && (k - b.lead) % period == 0);
        let shift = k - b.lead;
        for &(e, v) in &b.tail {
            let pos = e + shift;
            if pos >= n {
                break;
            }
            let term = coef.mul_var(v);
            y.coeffs[pos] = y.coeffs[pos].sub(&term);
        }
    }
    out
}

/// Where an equation came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqSource {
    /// Coefficient at `exponent` of R_{Δ_level}(f·b) for the class-`class` basis element.
    Module { level: usize, class: usize, exponent: usize },
    /// Coefficient at `exponent` of R_{Δ_level}(b_old − x·h_level).
    Containment { level: usize, exponent: usize },
}

/// Which module conditions enter a flag system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FlagEquations {
    /// Module conditions at every level plus all containments.
    #[default]
    AllLevels,
    /// Module conditions at the top level only, plus all containments.
    TopOnly,
}

pub fn build_equations(
    t: &GeneratorTemplate,
    ring: &RingSpec,
    which: FlagEquations,
) -> Vec<(EqSource, MultiPoly)> {
    let ell = t.flag.len();
    let mut eqs = Vec::new();
    let levels: Vec<usize> = match which {
        FlagEquations::AllLevels => (0..=ell).collect(),
        FlagEquations::TopOnly => vec![ell],
    };
    for &i in &levels {
        let delta = &t.levels[i];
        let n = ring.trunc_len(delta);
        let basis = t.basis_at(i);
        for (c, b) in basis.iter().enumerate() {
            let y = multiply_by_f(b, ring, t.rank, n);
            for (k, e) in reduce(y, &basis, t.period, delta) {
                eqs.push((EqSource::Module { level: i, class: c, exponent: k }, e));
            }
        }
    }
    for i in 1..=ell {
        let delta = &t.levels[i];
        let n = ring.trunc_len(delta);
        let basis = t.basis_at(i);
        let prev = t.basis_at(i - 1);
        let c = t.replaced[i - 1];
        let mut y = Series::zero(n);
        y.add_generator(&prev[c], 0, &Int::ONE);
        y.add_generator(&t.flag[i - 1], t.period, &Int::from(-1));
        for (k, e) in reduce(y, &basis, t.period, delta) {
            eqs.push((EqSource::Containment { level: i, exponent: k }, e));
        }
    }
    eqs
}
