//! Direct enumeration of standard modules and flags over 𝔽_p.
//!
//! Every standard module M ⊂ 𝒪^rk contains z^𝖼𝒪^rk, so it is a subspace of
//! (𝒪/z^𝖼)^rk invariant under x = z^p and f. Coordinates are indexed by the
//! merged valuation rk·k + i of z^k ε_i. A subspace is stored through its
//! echelon rows, one per pivot, and the pivot set is its Δ below rk·𝖼.
//! Rows are filled in from the highest pivot down, and a row is rejected as
//! soon as x·row or f·row falls outside the span of the rows above it.

use crate::cellsys::{CellRecord, RingSpec};
use crate::gmod::reconstruct;
use crate::torusdim::{torus_cells, TorusRing};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("rk·𝖼 = {size} exceeds the limit {limit} over 𝔽_{prime}")]
    TooLarge { size: usize, limit: usize, prime: u32 },
    #[error("{0} is not a prime")]
    NotPrime(u32),
}

#[derive(Clone, Debug)]
pub struct OracleOptions {
    pub prime: u32,
    pub max_ell: usize,
    /// Largest allowed rk·𝖼; `None` uses 10 over 𝔽₂ and 8 otherwise.
    pub size_limit: Option<usize>,
}

/// Stratum of a count: flag length, the added set D of Δ₀ and g₁ < … < g_ℓ.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OracleKey {
    pub ell: usize,
    pub d0: Vec<usize>,
    pub added: Vec<usize>,
}

impl OracleKey {
    pub fn dev(&self) -> usize {
        self.d0.len()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleCounts {
    pub prime: u32,
    pub counts: BTreeMap<OracleKey, u64>,
    /// p = 2 on a ring that is not monomial.
    pub bad_reduction: bool,
}

impl OracleCounts {
    /// Total count of each (ℓ, dev) stratum.
    pub fn by_stratum(&self) -> BTreeMap<(usize, usize), u64> {
        let mut out = BTreeMap::new();
        for (k, n) in &self.counts {
            *out.entry((k.ell, k.dev())).or_default() += n;
        }
        out
    }
}

type Vector = Vec<u8>;

struct Space {
    n: usize,
    p: u8,
    /// Multiplication operators as lists of (shift, coefficient).
    ops: Vec<Vec<(usize, u8)>>,
}

impl Space {
    fn apply(&self, op: &[(usize, u8)], v: &[u8]) -> Vector {
        let mut out = vec![0u8; self.n];
        for (j, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(s, k) in op {
                if j + s < self.n {
                    out[j + s] = ((out[j + s] as u32 + c as u32 * k as u32) % self.p as u32) as u8;
                }
            }
        }
        out
    }

    /// Is `v` in the span of `rows` (indexed by pivot)?
    fn in_span(&self, mut v: Vector, rows: &[Option<Vector>]) -> bool {
        for j in 0..self.n {
            let c = v[j];
            if c == 0 {
                continue;
            }
            let Some(r) = &rows[j] else { return false };
            let neg = self.p - c;
            for (k, &x) in r.iter().enumerate().skip(j) {
                if x != 0 {
                    v[k] = ((v[k] as u32 + neg as u32 * x as u32) % self.p as u32) as u8;
                }
            }
        }
        true
    }

    fn invariant(&self, v: &[u8], rows: &[Option<Vector>]) -> bool {
        self.ops.iter().all(|op| self.in_span(self.apply(op, v), rows))
    }
}

/// Iterate over all vectors with a 1 at `lead`, zeros at `fixed_zero`
/// positions and below `lead`, and arbitrary values elsewhere.
fn for_each_row(space: &Space, lead: usize, pivots: &[bool], mut visit: impl FnMut(&Vector)) {
    let free: Vec<usize> = (lead + 1..space.n).filter(|&j| !pivots[j]).collect();
    let mut v = vec![0u8; space.n];
    v[lead] = 1;
    loop {
        visit(&v);
        let mut k = 0;
        loop {
            if k == free.len() {
                return;
            }
            let j = free[k];
            v[j] += 1;
            if v[j] < space.p {
                break;
            }
            v[j] = 0;
            k += 1;
        }
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Count standard modules and their flags of length ≤ `max_ell` over 𝔽_p,
/// stratified by Δ-flag.
pub fn oracle_enumerate(ring: &RingSpec, rank: usize, opts: &OracleOptions) -> Result<OracleCounts, OracleError> {
    let p = opts.prime;
    if !is_prime(p) {
        return Err(OracleError::NotPrime(p));
    }
    let c = ring.semigroup.conductor;
    let n = rank * c;
    let limit = opts.size_limit.unwrap_or(if p == 2 { 10 } else { 8 });
    if n > limit {
        return Err(OracleError::TooLarge { size: n, limit, prime: p });
    }
    let modp = |x: i64| x.rem_euclid(p as i64) as u8;
    let ops = vec![
        vec![(rank * ring.p, 1u8)],
        ring.f.iter().map(|&(k, e)| (rank * e, modp(k))).filter(|&(_, k)| k != 0).collect(),
    ];
    let space = Space { n, p: p as u8, ops };

    // Candidate pivot sets: the standard part plus any subset of the rest
    // that is closed under the shifts by rk·(generators of Γ).
    let standard: Vec<bool> = (0..n).map(|j| ring.semigroup.contains((j / rank) as i64)).collect();
    let extra: Vec<usize> = (0..n).filter(|&j| !standard[j]).collect();
    let gens = ring.semigroup.minimal_generators();
    let closed = |s: &[bool]| {
        (0..n).filter(|&j| s[j]).all(|j| gens.iter().all(|&h| j + rank * h >= n || s[j + rank * h]))
    };

    let mut out = OracleCounts { prime: p, counts: BTreeMap::new(), bad_reduction: p == 2 && ring.f.len() > 1 };
    for mask in 0u64..(1u64 << extra.len()) {
        let mut pivots = standard.clone();
        for (b, &j) in extra.iter().enumerate() {
            if mask >> b & 1 == 1 {
                pivots[j] = true;
            }
        }
        if !closed(&pivots) {
            continue;
        }
        let d0: Vec<usize> = extra.iter().copied().filter(|&j| pivots[j]).collect();
        let order: Vec<usize> = (0..n).rev().filter(|&j| pivots[j]).collect();
        let mut rows: Vec<Option<Vector>> = vec![None; n];
        fill(&space, &order, 0, &pivots, &mut rows, &mut |rows| {
            flags(&space, &pivots, rows, None, &mut Vec::new(), opts.max_ell, &d0, &mut out.counts);
        });
    }
    Ok(out)
}

fn fill(
    space: &Space,
    order: &[usize],
    k: usize,
    pivots: &[bool],
    rows: &mut Vec<Option<Vector>>,
    done: &mut dyn FnMut(&mut Vec<Option<Vector>>),
) {
    if k == order.len() {
        done(rows);
        return;
    }
    let lead = order[k];
    let mut candidates = Vec::new();
    for_each_row(space, lead, pivots, |v| {
        if space.invariant(v, rows) {
            candidates.push(v.clone());
        }
    });
    for v in candidates {
        rows[lead] = Some(v);
        fill(space, order, k + 1, pivots, rows, done);
        rows[lead] = None;
    }
}

fn flags(
    space: &Space,
    pivots: &[bool],
    rows: &mut Vec<Option<Vector>>,
    after: Option<usize>,
    added: &mut Vec<usize>,
    max_ell: usize,
    d0: &[usize],
    counts: &mut BTreeMap<OracleKey, u64>,
) {
    *counts.entry(OracleKey { ell: added.len(), d0: d0.to_vec(), added: added.clone() }).or_default() += 1;
    if added.len() == max_ell {
        return;
    }
    let start = after.map_or(0, |g| g + 1);
    for g in start..space.n {
        if pivots[g] {
            continue;
        }
        let mut next = pivots.to_vec();
        next[g] = true;
        let mut candidates = Vec::new();
        for_each_row(space, g, &next, |w| {
            // x·w and f·w have valuation above g, so they must already lie in M.
            if space.invariant(w, rows) {
                candidates.push(w.clone());
            }
        });
        for w in candidates {
            rows[g] = Some(w);
            added.push(g);
            flags(space, &next, rows, Some(g), added, max_ell, d0, counts);
            added.pop();
            rows[g] = None;
        }
    }
}

/// Strata where p^N, with N from the closed torus-ring dimension formulas,
/// disagrees with the oracle: `(key, p^N, from oracle)`.
pub fn oracle_compare_torus(ring: &TorusRing, oracle: &OracleCounts, max_ell: usize) -> Vec<(OracleKey, u64, u64)> {
    let mut predicted: BTreeMap<OracleKey, u64> = BTreeMap::new();
    for (flag, n) in torus_cells(ring, max_ell) {
        let key = OracleKey { ell: flag.len(), d0: flag.dset_at(0).elements, added: flag.added.clone() };
        *predicted.entry(key).or_default() += (oracle.prime as u64).pow(n as u32);
    }
    diff(&predicted, &oracle.counts)
}

fn diff(predicted: &BTreeMap<OracleKey, u64>, found: &BTreeMap<OracleKey, u64>) -> Vec<(OracleKey, u64, u64)> {
    let mut keys: Vec<&OracleKey> = predicted.keys().chain(found.keys()).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .filter_map(|k| {
            let a = predicted.get(k).copied().unwrap_or(0);
            let b = found.get(k).copied().unwrap_or(0);
            (a != b).then(|| (k.clone(), a, b))
        })
        .collect()
}

/// Strata where the cells' predicted counts disagree with the oracle:
/// `(key, from cells, from oracle)`.
pub fn oracle_compare(cells: &[CellRecord], oracle: &OracleCounts, ring: &RingSpec, rank: usize) -> Vec<(OracleKey, u64, u64)> {
    let mut predicted: BTreeMap<OracleKey, u64> = BTreeMap::new();
    for c in cells {
        let key = OracleKey { ell: c.ell, d0: reconstruct(&c.d0_dag, &ring.semigroup, rank), added: c.added.clone() };
        let n = c.predicted_count(oracle.prime as u64).and_then(|x| x.to_i64()).unwrap_or(-1);
        *predicted.entry(key).or_default() += n.max(0) as u64;
    }
    diff(&predicted, &oracle.counts)
}
