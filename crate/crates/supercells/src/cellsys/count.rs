//! Point counts of residual systems over finite fields.
//!
//! The counter works on polynomials over 𝔽_q and combines four moves:
//! splitting into variable-disjoint blocks, solving a variable that occurs
//! linearly with a constant coefficient, the isolated-variable identity
//!
//!   #{a·v + b = 0, S} = #S − #{a = 0, S} + q·#{a = 0, b = 0, S}
//!
//! for a variable v met in a single equation, and plain branching on the
//! most frequent variable when nothing else applies.

use super::ResidualSystem;
use crate::exactalg::field::ZERO;
use crate::exactalg::{GaloisField, Int, Mono, MultiPoly, VarId};
use rustc_hash::{FxHashMap, FxHashSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CountError {
    #[error("cell too large for brute force ({0} branch steps)")]
    TooLarge(u64),
}

/// Polynomial over 𝔽_q with log-coded coefficients, terms sorted by monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Fp(Vec<(Mono, u32)>);

impl Fp {
    fn from_map(acc: FxHashMap<Mono, u32>) -> Fp {
        let mut terms: Vec<(Mono, u32)> = acc.into_iter().filter(|(_, c)| *c != ZERO).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Fp(terms)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn constant(&self) -> Option<u32> {
        match self.0.as_slice() {
            [] => Some(ZERO),
            [(m, c)] if m.is_one() => Some(*c),
            _ => None,
        }
    }

    fn vars(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self.0.iter().flat_map(|(m, _)| m.exponents().into_iter().map(|(v, _)| v)).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    fn add_into(acc: &mut FxHashMap<Mono, u32>, f: &GaloisField, m: Mono, c: u32) {
        if c == ZERO {
            return;
        }
        let e = acc.entry(m).or_insert(ZERO);
        *e = f.add(*e, c);
    }

    fn subst_const(&self, f: &GaloisField, v: VarId, c: u32) -> Fp {
        let mut acc = FxHashMap::default();
        for (m, k) in &self.0 {
            let (s, e) = m.split_var(v);
            let val = if e == 0 { *k } else { f.mul(*k, f.pow(c, e)) };
            Fp::add_into(&mut acc, f, s, val);
        }
        Fp::from_map(acc)
    }

    fn mul(&self, f: &GaloisField, other: &Fp) -> Fp {
        let mut acc = FxHashMap::default();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &other.0 {
                Fp::add_into(&mut acc, f, m1.mul(m2), f.mul(*c1, *c2));
            }
        }
        Fp::from_map(acc)
    }

    /// Replace `v` by `value`; `powers[k] = value^k`.
    fn subst_poly(&self, f: &GaloisField, v: VarId, powers: &mut Vec<Fp>) -> Fp {
        let mut acc = FxHashMap::default();
        for (m, k) in &self.0 {
            let (s, e) = m.split_var(v);
            if e == 0 {
                Fp::add_into(&mut acc, f, s, *k);
                continue;
            }
            while powers.len() <= e as usize {
                let next = powers.last().unwrap().mul(f, &powers[1]);
                powers.push(next);
            }
            for (m2, c2) in &powers[e as usize].0 {
                Fp::add_into(&mut acc, f, s.mul(m2), f.mul(*k, *c2));
            }
        }
        Fp::from_map(acc)
    }

    /// `(a, b)` with `self = a·v + b` when `self` has degree ≤ 1 in `v`.
    fn split_linear(&self, f: &GaloisField, v: VarId) -> Option<(Fp, Fp)> {
        let mut a = FxHashMap::default();
        let mut b = FxHashMap::default();
        for (m, k) in &self.0 {
            let (s, e) = m.split_var(v);
            match e {
                0 => Fp::add_into(&mut b, f, s, *k),
                1 => Fp::add_into(&mut a, f, s, *k),
                _ => return None,
            }
        }
        Some((Fp::from_map(a), Fp::from_map(b)))
    }

    fn monic(self, f: &GaloisField) -> Fp {
        match self.0.first() {
            Some(&(_, c)) if c != 0 => {
                let inv = f.inv(c);
                Fp(self.0.into_iter().map(|(m, k)| (m, f.mul(k, inv))).collect())
            }
            _ => self,
        }
    }
}

struct Counter<'a> {
    f: &'a GaloisField,
    q: Int,
    steps: u64,
    budget: u64,
}

impl Counter<'_> {
    fn q_pow(&self, e: usize) -> Int {
        self.q.pow(e as u32)
    }

    /// Number of points of `eqs` in 𝔽_q^{vars}.
    fn count(&mut self, eqs: Vec<Fp>, vars: &[VarId]) -> Result<Int, CountError> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(CountError::TooLarge(self.steps));
        }
        let mut set: FxHashSet<Fp> = FxHashSet::default();
        let mut list = Vec::new();
        for e in eqs {
            if e.is_zero() {
                continue;
            }
            if e.constant().is_some() {
                return Ok(Int::ZERO);
            }
            let e = e.monic(self.f);
            if set.insert(e.clone()) {
                list.push(e);
            }
        }
        if list.is_empty() {
            return Ok(self.q_pow(vars.len()));
        }
        let bound: Vec<Vec<VarId>> = list.iter().map(|e| e.vars()).collect();
        let mut used: Vec<VarId> = bound.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        let free = vars.len() - used.len();
        let scale = self.q_pow(free);

        // Variable-disjoint blocks.
        let blocks = components(&bound);
        if blocks.len() > 1 {
            let mut total = scale;
            for block in blocks {
                let sub: Vec<Fp> = block.iter().map(|&i| list[i].clone()).collect();
                let mut vs: Vec<VarId> = block.iter().flat_map(|&i| bound[i].iter().copied()).collect();
                vs.sort_unstable();
                vs.dedup();
                let c = self.count(sub, &vs)?;
                if c.is_zero() {
                    return Ok(Int::ZERO);
                }
                total = &total * &c;
            }
            return Ok(total);
        }

        // A variable with constant coefficient in a linear occurrence.
        for (i, e) in list.iter().enumerate() {
            for &v in &bound[i] {
                if let Some((a, b)) = e.split_linear(self.f, v) {
                    if let Some(ac) = a.constant() {
                        if ac != ZERO {
                            // v = −b/a
                            let k = self.f.neg(self.f.inv(ac));
                            let value = Fp(b.0.into_iter().map(|(m, c)| (m, self.f.mul(c, k))).collect());
                            let mut powers = vec![Fp(vec![(Mono::one(), 0)]), value];
                            let rest: Vec<Fp> = list
                                .iter()
                                .enumerate()
                                .filter(|&(j, _)| j != i)
                                .map(|(_, x)| x.subst_poly(self.f, v, &mut powers))
                                .collect();
                            let vs: Vec<VarId> = used.iter().copied().filter(|&w| w != v).collect();
                            return Ok(&scale * &self.count(rest, &vs)?);
                        }
                    }
                }
            }
        }

        // A variable met in exactly one equation, linearly.
        let mut occurrences: FxHashMap<VarId, usize> = FxHashMap::default();
        for b in &bound {
            for &v in b {
                *occurrences.entry(v).or_default() += 1;
            }
        }
        for (i, e) in list.iter().enumerate() {
            for &v in &bound[i] {
                if occurrences[&v] != 1 {
                    continue;
                }
                if let Some((a, b)) = e.split_linear(self.f, v) {
                    let rest: Vec<Fp> = list.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()).collect();
                    let vs: Vec<VarId> = used.iter().copied().filter(|&w| w != v).collect();
                    let all = self.count(rest.clone(), &vs)?;
                    let mut with_a = rest.clone();
                    with_a.push(a.clone());
                    let a_zero = self.count(with_a.clone(), &vs)?;
                    with_a.push(b);
                    let ab_zero = self.count(with_a, &vs)?;
                    let c = &(&all - &a_zero) + &(&self.q * &ab_zero);
                    return Ok(&scale * &c);
                }
            }
        }

        // Branch on the most frequent variable.
        let v = *occurrences.iter().max_by_key(|(v, n)| (**n, std::cmp::Reverse(**v))).unwrap().0;
        let vs: Vec<VarId> = used.iter().copied().filter(|&w| w != v).collect();
        let mut total = Int::ZERO;
        let values: Vec<u32> = self.f.elements().collect();
        for c in values {
            let sub: Vec<Fp> = list.iter().map(|x| x.subst_const(self.f, v, c)).collect();
            total += &self.count(sub, &vs)?;
        }
        Ok(&scale * &total)
    }
}

fn components(bound: &[Vec<VarId>]) -> Vec<Vec<usize>> {
    let n = bound.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let mut owner: FxHashMap<VarId, usize> = FxHashMap::default();
    for (i, vs) in bound.iter().enumerate() {
        for &v in vs {
            if let Some(&j) = owner.get(&v) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            } else {
                owner.insert(v, i);
            }
        }
    }
    let mut groups: FxHashMap<usize, Vec<usize>> = FxHashMap::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}

/// Number of solutions of `equations` in 𝔽^{n} where `n` counts every variable,
/// bound or not.
pub fn count_points_over(equations: &[MultiPoly], n_vars: usize, field: &GaloisField, budget: u64) -> Result<Int, CountError> {
    let eqs: Vec<Fp> = equations
        .iter()
        .map(|e| {
            let r = e.reduce_mod(field);
            Fp::from_map(r.terms.into_iter().collect())
        })
        .collect();
    let mut bound: Vec<VarId> = equations.iter().flat_map(|e| e.variables()).collect();
    bound.sort_unstable();
    bound.dedup();
    let mut counter = Counter { f: field, q: Int::from(field.size as u64), steps: 0, budget };
    let c = counter.count(eqs, &bound)?;
    Ok(&c * &counter.q_pow(n_vars - bound.len()))
}

/// Points of the residual cell over 𝔽_{p^m}, free variables included.
pub fn count_points(res: &ResidualSystem, field: &GaloisField) -> Result<Int, CountError> {
    if let Some(c) = &res.inconsistent {
        if field.from_int(c) != ZERO {
            return Ok(Int::ZERO);
        }
    }
    let eqs: Vec<MultiPoly> = res.equations.iter().filter(|e| e.as_constant().is_none()).cloned().collect();
    count_points_over(&eqs, res.remaining_vars(), field, DEFAULT_BUDGET)
}

pub const DEFAULT_BUDGET: u64 = 50_000_000;
