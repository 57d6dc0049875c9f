//! Sparse multivariate polynomials in numbered λ-variables.
//!
//! [`MultiPoly`] is the integer carrier used to generate and eliminate cell
//! equations. [`FieldPoly`] is its reduction into some 𝔽_{p^m}, with
//! coefficients in the log code of [`GaloisField`].

use super::field::{GaloisField, ZERO};
use super::int::Int;
use rustc_hash::FxHashMap;
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::fmt;

pub type VarId = u16;

/// A monomial stored as the sorted multiset of its variables
/// (`λ₃²λ₇` is `[3, 3, 7]`).
///
/// Ordering is by degree, then lexicographic on the sorted list. This is a
/// monomial order, so multiplying every term of a sorted polynomial by one
/// monomial keeps it sorted.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub SmallVec<[VarId; 6]>);

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mono {
    pub fn one() -> Mono {
        Mono(SmallVec::new())
    }

    pub fn var(v: VarId) -> Mono {
        let mut s = SmallVec::new();
        s.push(v);
        Mono(s)
    }

    pub fn from_exponents(exps: &[(VarId, u32)]) -> Mono {
        let mut s: SmallVec<[VarId; 6]> = SmallVec::new();
        for &(v, e) in exps {
            for _ in 0..e {
                s.push(v);
            }
        }
        s.sort_unstable();
        Mono(s)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree_in(&self, v: VarId) -> u32 {
        self.0.iter().filter(|&&w| w == v).count() as u32
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let (a, b) = (&self.0, &other.0);
        let mut out: SmallVec<[VarId; 6]> = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i] <= b[j] {
                out.push(a[i]);
                i += 1;
            } else {
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Mono(out)
    }

    pub fn mul_var(&self, v: VarId) -> Mono {
        let mut out = self.0.clone();
        let pos = out.partition_point(|&w| w <= v);
        out.insert(pos, v);
        Mono(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn divide(&self, other: &Mono) -> Option<Mono> {
        let mut out: SmallVec<[VarId; 6]> = SmallVec::new();
        let (a, b) = (&self.0, &other.0);
        let mut j = 0;
        for &w in a.iter() {
            if j < b.len() && b[j] == w {
                j += 1;
            } else if j < b.len() && b[j] < w {
                return None;
            } else {
                out.push(w);
            }
        }
        (j == b.len()).then_some(Mono(out))
    }

    /// Remove every occurrence of `v`, returning the stripped monomial and the exponent.
    pub fn split_var(&self, v: VarId) -> (Mono, u32) {
        let mut out = SmallVec::new();
        let mut e = 0;
        for &w in &self.0 {
            if w == v {
                e += 1;
            } else {
                out.push(w);
            }
        }
        (Mono(out), e)
    }

    /// Grouped `(variable, exponent)` pairs.
    pub fn exponents(&self) -> Vec<(VarId, u32)> {
        let mut out: Vec<(VarId, u32)> = Vec::new();
        for &w in &self.0 {
            match out.last_mut() {
                Some((v, e)) if *v == w => *e += 1,
                _ => out.push((w, 1)),
            }
        }
        out
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .exponents()
            .into_iter()
            .map(|(v, e)| if e == 1 { format!("x{v}") } else { format!("x{v}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Polynomial over ℤ; terms sorted by [`Mono`] order, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: Vec<(Mono, Int)>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: Vec::new() }
    }

    pub fn constant(c: impl Into<Int>) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            MultiPoly { terms: vec![(Mono::one(), c)] }
        }
    }

    pub fn var(v: VarId) -> Self {
        MultiPoly { terms: vec![(Mono::var(v), Int::ONE)] }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Mono, Int)>) -> Self {
        let mut acc: FxHashMap<Mono, Int> = FxHashMap::default();
        for (m, c) in it {
            let e = acc.entry(m).or_default();
            *e += &c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: FxHashMap<Mono, Int>) -> Self {
        let mut terms: Vec<(Mono, Int)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        MultiPoly { terms }
    }

    pub fn terms(&self) -> &[(Mono, Int)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if this is a constant polynomial (including zero).
    pub fn as_constant(&self) -> Option<Int> {
        match self.terms.as_slice() {
            [] => Some(Int::ZERO),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn degree(&self) -> usize {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn variables(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self.terms.iter().flat_map(|(m, _)| m.0.iter().copied()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        self.terms.iter().any(|(m, _)| m.0.contains(&v))
    }

    /// If `v` enters only through the single monomial `v` itself, return its
    /// coefficient.
    pub fn linear_constant_coeff(&self, v: VarId) -> Option<Int> {
        let mut found: Option<Int> = None;
        for (m, c) in &self.terms {
            if m.0.contains(&v) {
                if m.0.len() != 1 || found.is_some() {
                    return None;
                }
                found = Some(c.clone());
            }
        }
        found
    }

    pub fn neg(&self) -> Self {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, k: &Int) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn mul_var(&self, v: VarId) -> Self {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.mul_var(v), c.clone())).collect() }
    }

    pub fn mul_mono(&self, mono: &Mono) -> Self {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect() }
    }

    /// `self + k·other`, by a linear merge of the sorted term lists.
    pub fn add_scaled(&self, other: &MultiPoly, k: &Int) -> Self {
        if k.is_zero() || other.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0.clone(), &b[j].1 * k));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 + &(&b[j].1 * k);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), c * k)));
        MultiPoly { terms: out }
    }

    /// In-place `self += k·other·v` for a single variable `v`.
    pub fn add_scaled_var_assign(&mut self, other: &MultiPoly, k: &Int, v: VarId) {
        if other.is_zero() {
            return;
        }
        let shifted = other.mul_var(v);
        *self = self.add_scaled(&shifted, k);
    }

    pub fn add(&self, other: &MultiPoly) -> Self {
        self.add_scaled(other, &Int::ONE)
    }

    pub fn sub(&self, other: &MultiPoly) -> Self {
        self.add_scaled(other, &Int::from(-1))
    }

    pub fn mul(&self, other: &MultiPoly) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.len() == 1 {
            let (m, c) = &other.terms[0];
            return MultiPoly { terms: self.terms.iter().map(|(x, d)| (x.mul(m), d * c)).collect() };
        }
        if self.len() == 1 {
            return other.mul(self);
        }
        let mut acc: FxHashMap<Mono, Int> = FxHashMap::default();
        acc.reserve(self.len() * other.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e = acc.entry(m1.mul(m2)).or_default();
                *e += &(c1 * c2);
            }
        }
        Self::from_map(acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Replace `v` by `value`; `powers` caches `value^k`.
    pub fn substitute_cached(&self, v: VarId, powers: &mut Vec<MultiPoly>) -> Self {
        if !self.contains_var(v) {
            return self.clone();
        }
        let mut rest: Vec<(Mono, Int)> = Vec::new();
        let mut by_exp: Vec<Vec<(Mono, Int)>> = Vec::new();
        for (m, c) in &self.terms {
            let (stripped, e) = m.split_var(v);
            if e == 0 {
                rest.push((m.clone(), c.clone()));
            } else {
                let e = e as usize;
                if by_exp.len() < e {
                    by_exp.resize(e, Vec::new());
                }
                by_exp[e - 1].push((stripped, c.clone()));
            }
        }
        let mut acc: FxHashMap<Mono, Int> = FxHashMap::default();
        for (m, c) in rest {
            acc.insert(m, c);
        }
        for (idx, group) in by_exp.into_iter().enumerate() {
            if group.is_empty() {
                continue;
            }
            let e = idx + 1;
            while powers.len() <= e {
                let next = powers.last().unwrap().mul(&powers[1]);
                powers.push(next);
            }
            let pw = &powers[e];
            for (m, c) in group {
                for (m2, c2) in &pw.terms {
                    let entry = acc.entry(m.mul(m2)).or_default();
                    *entry += &(&c * c2);
                }
            }
        }
        Self::from_map(acc)
    }

    pub fn substitute(&self, v: VarId, value: &MultiPoly) -> Self {
        let mut powers = vec![MultiPoly::constant(1), value.clone()];
        self.substitute_cached(v, &mut powers)
    }

    /// Rename variables through `map` (variables missing from the map keep their id).
    pub fn rename(&self, map: &FxHashMap<VarId, VarId>) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let mut vs: SmallVec<[VarId; 6]> = m.0.iter().map(|v| *map.get(v).unwrap_or(v)).collect();
            vs.sort_unstable();
            (Mono(vs), c.clone())
        }))
    }

    /// Content: gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> Int {
        let mut g = Int::ZERO;
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn reduce_mod(&self, field: &GaloisField) -> FieldPoly {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let x = field.from_int(c);
                (x != ZERO).then(|| (m.clone(), x))
            })
            .collect();
        FieldPoly { terms }
    }

    pub fn eval_int(&self, values: &dyn Fn(VarId) -> Int) -> Int {
        let mut acc = Int::ZERO;
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &v in &m.0 {
                t = &t * &values(v);
            }
            acc += &t;
        }
        acc
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c}*{m:?}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Polynomial over a finite field, coefficients in log code.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FieldPoly {
    pub terms: Vec<(Mono, u32)>,
}

impl FieldPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn variables(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self.terms.iter().flat_map(|(m, _)| m.0.iter().copied()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Evaluate with `values[v]` in log code.
    pub fn eval(&self, f: &GaloisField, values: &[u32]) -> u32 {
        let mut acc = ZERO;
        for (m, c) in &self.terms {
            let mut t = *c;
            for &v in &m.0 {
                t = f.mul(t, values[v as usize]);
                if t == ZERO {
                    break;
                }
            }
            acc = f.add(acc, t);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(v: VarId) -> MultiPoly {
        MultiPoly::var(v)
    }

    #[test]
    fn basic_arithmetic() {
        let p = x(0).add(&x(1));
        let sq = p.mul(&p);
        let expect = x(0).mul(&x(0)).add(&x(0).mul(&x(1)).scale(&Int::from(2))).add(&x(1).mul(&x(1)));
        assert_eq!(sq, expect);
        assert_eq!(sq.sub(&expect), MultiPoly::zero());
        assert_eq!(p.pow(3).degree(), 3);
    }

    #[test]
    fn mul_var_keeps_order() {
        let p = MultiPoly::from_terms(vec![
            (Mono::from_exponents(&[(1, 1)]), Int::from(1)),
            (Mono::from_exponents(&[(1, 1), (2, 1)]), Int::from(1)),
            (Mono::from_exponents(&[(0, 2)]), Int::from(1)),
        ]);
        for v in 0..4 {
            let q = p.mul_var(v);
            let mut sorted = q.terms().to_vec();
            sorted.sort_by(|a, b| a.0.cmp(&b.0));
            assert_eq!(sorted.as_slice(), q.terms());
        }
    }

    #[test]
    fn substitution_and_linear_detection() {
        // e = x0 - x1*x2 + 3
        let e = x(0).sub(&x(1).mul(&x(2))).add(&MultiPoly::constant(3));
        assert_eq!(e.linear_constant_coeff(0), Some(Int::ONE));
        assert_eq!(e.linear_constant_coeff(1), None);
        let s = e.substitute(1, &x(0).add(&MultiPoly::constant(1)));
        let expect = x(0).sub(&x(0).mul(&x(2))).sub(&x(2)).add(&MultiPoly::constant(3));
        assert_eq!(s, expect);
        let sq = x(1).mul(&x(1)).substitute(1, &x(0).add(&x(2)));
        assert_eq!(sq, x(0).add(&x(2)).pow(2));
    }

    #[test]
    fn reduction_mod_three() {
        let f = GaloisField::new(3, 1);
        let e = x(0).scale(&Int::from(3)).add(&MultiPoly::constant(2));
        let r = e.reduce_mod(&f);
        assert_eq!(r.terms.len(), 1);
        assert_eq!(r.eval(&f, &[ZERO]), f.from_int(&Int::from(2)));
    }
}
