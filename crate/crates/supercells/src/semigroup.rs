//! Numerical semigroups and cofinite subsets of ℤ₊.

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("not a numerical semigroup")]
    NotNumerical,
    #[error("family parameter v must be odd and greater than 6, got {0}")]
    BadFamilyParameter(i64),
}

/// A subset of ℤ₊ containing every integer from `conductor` on.
///
/// Membership below the conductor is a bit vector; `conductor` is always
/// the least such bound, so `conductor - 1` is absent whenever it is positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CofiniteSet {
    bits: Vec<bool>,
}

impl CofiniteSet {
    /// Build from a membership predicate known to hold on `[bound, ∞)`.
    pub fn from_predicate(bound: usize, pred: impl Fn(usize) -> bool) -> CofiniteSet {
        let mut bits: Vec<bool> = (0..bound).map(pred).collect();
        while bits.last() == Some(&true) {
            bits.pop();
        }
        CofiniteSet { bits }
    }

    pub fn from_elements_below(bound: usize, elements: impl IntoIterator<Item = usize>) -> CofiniteSet {
        let mut bits = vec![false; bound];
        for e in elements {
            if e < bound {
                bits[e] = true;
            }
        }
        while bits.last() == Some(&true) {
            bits.pop();
        }
        CofiniteSet { bits }
    }

    /// All of ℤ₊.
    pub fn everything() -> CofiniteSet {
        CofiniteSet { bits: Vec::new() }
    }

    #[inline]
    pub fn contains(&self, x: i64) -> bool {
        if x < 0 {
            return false;
        }
        let x = x as usize;
        x >= self.bits.len() || self.bits[x]
    }

    pub fn conductor(&self) -> usize {
        self.bits.len()
    }

    pub fn gaps(&self) -> Vec<usize> {
        (0..self.bits.len()).filter(|&i| !self.bits[i]).collect()
    }

    pub fn elements_below(&self, bound: usize) -> Vec<usize> {
        (0..bound).filter(|&i| self.contains(i as i64)).collect()
    }

    /// γ(b) = |[b, ∞) \ Δ|; negative `b` counts from 0.
    pub fn gap_count(&self, b: i64) -> usize {
        let start = b.max(0) as usize;
        (start..self.bits.len()).filter(|&i| !self.bits[i]).count()
    }

    pub fn insert(&self, x: usize) -> CofiniteSet {
        let mut out = self.clone();
        if x < out.bits.len() {
            out.bits[x] = true;
        }
        while out.bits.last() == Some(&true) {
            out.bits.pop();
        }
        out
    }

    pub fn is_subset(&self, other: &CofiniteSet) -> bool {
        (0..self.bits.len().max(other.bits.len())).all(|i| !self.contains(i as i64) || other.contains(i as i64))
    }

    pub fn union(&self, other: &CofiniteSet) -> CofiniteSet {
        let n = self.bits.len().max(other.bits.len());
        CofiniteSet::from_predicate(n, |i| self.contains(i as i64) || other.contains(i as i64))
    }

    pub fn intersection(&self, other: &CofiniteSet) -> CofiniteSet {
        let n = self.bits.len().max(other.bits.len());
        CofiniteSet::from_predicate(n, |i| self.contains(i as i64) && other.contains(i as i64))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Semigroup {
    pub generators: Vec<usize>,
    pub set: CofiniteSet,
    pub delta: usize,
    pub conductor: usize,
    pub multiplicity: usize,
}

#[derive(Serialize)]
pub struct SemigroupInfo {
    pub generators: Vec<usize>,
    pub gaps: Vec<usize>,
    pub delta: usize,
    pub conductor: usize,
    pub multiplicity: usize,
}

impl Semigroup {
    #[inline]
    pub fn contains(&self, x: i64) -> bool {
        self.set.contains(x)
    }

    pub fn gaps(&self) -> Vec<usize> {
        self.set.gaps()
    }

    pub fn gap_count(&self, b: i64) -> usize {
        self.set.gap_count(b)
    }

    /// Minimal generating set (generators that are not sums of smaller elements).
    pub fn minimal_generators(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for g in 1..=self.conductor + self.multiplicity {
            if !self.contains(g as i64) {
                continue;
            }
            let decomposable = (1..g).any(|a| self.contains(a as i64) && self.contains((g - a) as i64));
            if !decomposable {
                out.push(g);
            }
        }
        out
    }

    pub fn info(&self) -> SemigroupInfo {
        SemigroupInfo {
            generators: self.generators.clone(),
            gaps: self.gaps(),
            delta: self.delta,
            conductor: self.conductor,
            multiplicity: self.multiplicity,
        }
    }

    /// Symmetric (Gorenstein) test: `g` is a gap iff `c − 1 − g ∈ Γ`, for `0 ≤ g < c`.
    pub fn is_symmetric(&self) -> bool {
        let c = self.conductor as i64;
        (0..c).all(|g| self.contains(g) != self.contains(c - 1 - g))
    }
}

pub fn semigroup_from_generators(gens: &[usize]) -> Result<Semigroup, SemigroupError> {
    if gens.is_empty() || gens.contains(&0) {
        return Err(SemigroupError::NotNumerical);
    }
    let g = gens.iter().fold(0usize, |acc, &x| acc.gcd(&x));
    if g != 1 {
        return Err(SemigroupError::NotNumerical);
    }
    let lo = *gens.iter().min().unwrap();
    let hi = *gens.iter().max().unwrap();
    // Schur's bound: the Frobenius number is below (lo - 1)(hi - 1).
    let bound = lo * hi + 1;
    let mut member = vec![false; bound];
    member[0] = true;
    for x in 1..bound {
        member[x] = gens.iter().any(|&g| g <= x && member[x - g]);
    }
    let set = CofiniteSet::from_predicate(bound, |x| member[x]);
    let conductor = set.conductor();
    let delta = set.gaps().len();
    Ok(Semigroup { generators: gens.to_vec(), set, delta, conductor, multiplicity: lo })
}

/// Γ = ⟨4, 6, 6+v⟩, the value semigroup of k[[z⁴, z⁶+zᵛ]].
pub fn family_semigroup(v: i64) -> Result<Semigroup, SemigroupError> {
    if v <= 6 || v % 2 == 0 {
        return Err(SemigroupError::BadFamilyParameter(v));
    }
    let v = v as usize;
    let s = semigroup_from_generators(&[4, 6, 6 + v])?;
    assert_eq!(s.delta, 5 + (v - 1) / 2, "δ formula for the family fails");
    Ok(s)
}

pub fn gap_count(set: &CofiniteSet, b: i64) -> usize {
    set.gap_count(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn trefoil_semigroup() {
        let s = semigroup_from_generators(&[2, 3]).unwrap();
        assert_eq!(s.gaps(), vec![1]);
        assert_eq!((s.delta, s.conductor, s.multiplicity), (1, 2, 2));
        assert_eq!(s.gap_count(0), 1);
        assert_eq!(s.gap_count(2), 0);
    }

    #[test]
    fn family_members() {
        let s7 = family_semigroup(7).unwrap();
        assert_eq!((s7.delta, s7.conductor), (8, 16));
        assert_eq!(s7.gap_count(0), 8);
        let s9 = family_semigroup(9).unwrap();
        assert_eq!((s9.delta, s9.conductor), (9, 18));
        assert_eq!(s9.gaps(), vec![1, 2, 3, 5, 7, 9, 11, 13, 17]);
        let s15 = family_semigroup(15).unwrap();
        assert_eq!(s15.generators, vec![4, 6, 21]);
        assert_eq!(s15.delta, 12);
        assert!(family_semigroup(8).is_err());
        assert!(family_semigroup(5).is_err());
    }

    #[test]
    fn rejects_non_numerical() {
        assert_eq!(semigroup_from_generators(&[4, 6]), Err(SemigroupError::NotNumerical));
    }

    #[test]
    fn everything_has_no_gaps() {
        let z = CofiniteSet::everything();
        assert_eq!(z.gap_count(0), 0);
        assert_eq!(z.gap_count(17), 0);
    }

    #[test]
    fn symmetry_of_plane_curve_semigroups() {
        for gens in [vec![2, 3], vec![2, 5], vec![3, 4], vec![3, 5], vec![4, 6, 13], vec![4, 6, 15], vec![4, 6, 21]] {
            let s = semigroup_from_generators(&gens).unwrap();
            assert!(s.is_symmetric(), "{gens:?}");
            assert_eq!(s.conductor, 2 * s.delta);
        }
        // The shifted form g ↦ c − g fails already for ⟨2,3⟩: 2 − 1 = 1 is a gap.
        let s = semigroup_from_generators(&[2, 3]).unwrap();
        assert!(!s.contains(s.conductor as i64 - 1));
    }

    proptest! {
        #[test]
        fn gap_count_monotone(a in 2usize..9, b in 2usize..15) {
            prop_assume!(a.gcd(&b) == 1);
            let s = semigroup_from_generators(&[a, b]).unwrap();
            prop_assert_eq!(s.gap_count(0), s.delta);
            for x in 0..(s.conductor as i64 + 3) {
                prop_assert!(s.gap_count(x + 1) <= s.gap_count(x));
            }
            prop_assert_eq!(s.gap_count(s.conductor as i64), 0);
            prop_assert_eq!(s.multiplicity, a.min(b));
            prop_assert!(s.is_symmetric());
            prop_assert_eq!(s.delta, (a - 1) * (b - 1) / 2);
            for x in 0..s.conductor as i64 {
                for y in 0..s.conductor as i64 {
                    if s.contains(x) && s.contains(y) {
                        prop_assert!(s.contains(x + y));
                    }
                }
            }
        }
    }
}
