//! Standard Γ-modules in rank one and their rank-rk incarnations.
//!
//! In rank rk the module is recorded through its merged valuation set
//! Δ = ⋃ᵢ (i + rk·Δ⁽ⁱ⁾), i.e. the valuation of `z^{k/rk}` is `k`. This is a
//! module over rk·Γ, and all D-sets below live in the same merged scale.

use crate::semigroup::{CofiniteSet, Semigroup};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GmodError {
    #[error("p-basis needs a two-generated semigroup")]
    NotTwoGenerated,
    #[error("components over different semigroups")]
    MixedBases,
    #[error("adding {0} does not give a module")]
    NotAModule(usize),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GammaModule {
    pub base: Semigroup,
    pub delta: CofiniteSet,
}

impl GammaModule {
    pub fn new(base: &Semigroup, delta: CofiniteSet) -> GammaModule {
        GammaModule { base: base.clone(), delta }
    }

    pub fn semigroup_itself(base: &Semigroup) -> GammaModule {
        GammaModule::new(base, base.set.clone())
    }

    pub fn deg(&self) -> usize {
        self.delta.gaps().len()
    }

    pub fn dev(&self) -> usize {
        self.base.gaps().iter().filter(|&&g| self.delta.contains(g as i64)).count()
    }

    pub fn is_module(&self) -> bool {
        is_module_over(&self.delta, &self.base, 1)
    }

    pub fn is_standard(&self) -> bool {
        self.base.set.is_subset(&self.delta)
    }
}

/// Is `set` closed under adding `scale·γ` for γ ∈ Γ?
pub fn is_module_over(set: &CofiniteSet, base: &Semigroup, scale: usize) -> bool {
    let gens = base.minimal_generators();
    (0..set.conductor()).all(|x| {
        !set.contains(x as i64) || gens.iter().all(|&g| set.contains((x + scale * g) as i64))
    })
}

/// Every standard Γ-module, in a fixed order (by the bit pattern of added gaps).
pub fn enumerate_standard_modules(base: &Semigroup) -> Vec<GammaModule> {
    let gaps = base.gaps();
    let gens = base.minimal_generators();
    let c = base.conductor;
    // Decide gaps from the top down; including a gap requires every
    // generator translate to be present already.
    let mut out = Vec::new();
    let mut member: Vec<bool> = (0..c).map(|x| base.contains(x as i64)).collect();
    fn rec(
        idx: usize,
        gaps: &[usize],
        gens: &[usize],
        member: &mut Vec<bool>,
        c: usize,
        base: &Semigroup,
        out: &mut Vec<GammaModule>,
    ) {
        if idx == 0 {
            let set = CofiniteSet::from_predicate(c, |x| member[x]);
            out.push(GammaModule::new(base, set));
            return;
        }
        let g = gaps[idx - 1];
        rec(idx - 1, gaps, gens, member, c, base, out);
        let closed = gens.iter().all(|&h| g + h >= c || member[g + h]);
        if closed {
            member[g] = true;
            rec(idx - 1, gaps, gens, member, c, base, out);
            member[g] = false;
        }
    }
    rec(gaps.len(), &gaps, &gens, &mut member, c, base, &mut out);
    out
}

/// Minimal elements of Δ in the residue classes `j·q mod p`, for Γ = ⟨p, q⟩.
pub fn p_basis(m: &GammaModule, p: usize, q: usize) -> Result<Vec<usize>, GmodError> {
    if m.base.minimal_generators() != vec![p.min(q), p.max(q)] {
        return Err(GmodError::NotTwoGenerated);
    }
    Ok((0..p)
        .map(|j| {
            let r = (j * q) % p;
            (0..).map(|k| r + k * p).find(|&x| m.delta.contains(x as i64)).unwrap()
        })
        .collect())
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RankModule {
    pub rank: usize,
    pub components: Vec<GammaModule>,
    pub merged: CofiniteSet,
}

impl RankModule {
    pub fn base(&self) -> &Semigroup {
        &self.components[0].base
    }

    pub fn dev(&self) -> usize {
        self.components.iter().map(|c| c.dev()).sum()
    }

    pub fn deg(&self) -> usize {
        self.components.iter().map(|c| c.deg()).sum()
    }

    pub fn minimal(base: &Semigroup, rank: usize) -> RankModule {
        rank_module(&vec![GammaModule::semigroup_itself(base); rank]).unwrap()
    }

    /// Split a merged rk·Γ-module into components.
    pub fn from_merged(base: &Semigroup, rank: usize, merged: &CofiniteSet) -> RankModule {
        let components = (0..rank)
            .map(|i| {
                let bound = merged.conductor() / rank + 2;
                GammaModule::new(base, CofiniteSet::from_predicate(bound, |x| merged.contains((i + rank * x) as i64)))
            })
            .collect();
        RankModule { rank, components, merged: merged.clone() }
    }
}

pub fn rank_module(components: &[GammaModule]) -> Result<RankModule, GmodError> {
    let rank = components.len();
    assert!(rank >= 1);
    let base = &components[0].base;
    if components.iter().any(|c| &c.base != base) {
        return Err(GmodError::MixedBases);
    }
    let bound = rank * (components.iter().map(|c| c.delta.conductor()).max().unwrap() + 1);
    let merged = CofiniteSet::from_predicate(bound, |x| components[x % rank].delta.contains((x / rank) as i64));
    Ok(RankModule { rank, components: components.to_vec(), merged })
}

/// The standard part ⋃ᵢ (i + rk·Γ) of the merged scale.
pub fn standard_part(base: &Semigroup, rank: usize) -> CofiniteSet {
    let bound = rank * (base.conductor + 1);
    CofiniteSet::from_predicate(bound, |x| base.contains((x / rank) as i64))
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, PartialOrd, Ord)]
pub struct DSet {
    pub elements: Vec<usize>,
    pub primitive: Vec<usize>,
}

/// Added gaps of a merged set Δ ⊇ standard part.
pub fn dset_of(merged: &CofiniteSet, base: &Semigroup, rank: usize) -> DSet {
    let elements: Vec<usize> = (0..rank * (base.conductor + 1))
        .filter(|&x| merged.contains(x as i64) && !base.contains((x / rank) as i64))
        .collect();
    let primitive = primitive_of(&elements, base, rank);
    DSet { elements, primitive }
}

pub fn dset(m: &RankModule) -> DSet {
    dset_of(&m.merged, m.base(), m.rank)
}

fn primitive_of(elements: &[usize], base: &Semigroup, rank: usize) -> Vec<usize> {
    elements
        .iter()
        .copied()
        .filter(|&d| {
            !elements
                .iter()
                .any(|&e| e < d && (d - e) % rank == 0 && base.contains(((d - e) / rank) as i64))
        })
        .collect()
}

pub fn dset_primitive(d: &DSet) -> Vec<usize> {
    d.primitive.clone()
}

/// D = (D† + rk·Γ) minus the standard part.
pub fn reconstruct(primitive: &[usize], base: &Semigroup, rank: usize) -> Vec<usize> {
    let top = rank * (base.conductor + 1);
    let mut out: Vec<usize> = (0..top)
        .filter(|&x| !base.contains((x / rank) as i64))
        .filter(|&x| primitive.iter().any(|&d| d <= x && (x - d) % rank == 0 && base.contains(((x - d) / rank) as i64)))
        .collect();
    out.sort_unstable();
    out
}

/// All standard rank-rk modules, as products of rank-one modules.
pub fn enumerate_rank_modules(base: &Semigroup, rank: usize) -> Vec<RankModule> {
    let ones = enumerate_standard_modules(base);
    let mut out = Vec::new();
    let mut idx = vec![0usize; rank];
    loop {
        let comps: Vec<GammaModule> = idx.iter().map(|&i| ones[i].clone()).collect();
        out.push(rank_module(&comps).unwrap());
        let mut k = 0;
        loop {
            if k == rank {
                return out;
            }
            idx[k] += 1;
            if idx[k] < ones.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// A full increasing chain Δ₀ ⊂ Δ₁ ⊂ … with Δᵢ = Δᵢ₋₁ ∪ {gᵢ}, g₁ < g₂ < ….
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DeltaFlag {
    pub base: RankModule,
    pub added: Vec<usize>,
}

impl DeltaFlag {
    pub fn len(&self) -> usize {
        self.added.len()
    }

    pub fn is_empty(&self) -> bool {
        self.added.is_empty()
    }

    /// Merged set Δᵢ.
    pub fn level(&self, i: usize) -> CofiniteSet {
        let mut s = self.base.merged.clone();
        for &g in &self.added[..i] {
            s = s.insert(g);
        }
        s
    }

    pub fn top(&self) -> CofiniteSet {
        self.level(self.added.len())
    }

    pub fn dset_at(&self, i: usize) -> DSet {
        dset_of(&self.level(i), self.base.base(), self.base.rank)
    }

    /// κ = |D_ℓ| = dev(Δ₀) + ℓ.
    pub fn kappa(&self) -> usize {
        self.base.dev() + self.added.len()
    }
}

/// Can `g` be added to the merged rk·Γ-module `set`?
pub fn can_add(set: &CofiniteSet, g: usize, base: &Semigroup, rank: usize) -> bool {
    !set.contains(g as i64) && base.minimal_generators().iter().all(|&h| set.contains((g + rank * h) as i64))
}

/// Addable values of `set` above `after`.
pub fn addable(set: &CofiniteSet, base: &Semigroup, rank: usize, after: Option<usize>) -> Vec<usize> {
    let gens = base.minimal_generators();
    let start = after.map(|a| a + 1).unwrap_or(0);
    (start..set.conductor())
        .filter(|&g| !set.contains(g as i64) && gens.iter().all(|&h| set.contains((g + rank * h) as i64)))
        .collect()
}

/// All flags of length exactly `ell` over all standard rank-rk modules.
pub fn enumerate_flags(base: &Semigroup, rank: usize, ell: usize) -> Vec<DeltaFlag> {
    let mut out = Vec::new();
    for m in enumerate_rank_modules(base, rank) {
        extend_flags(&m, base, rank, ell, &mut out);
    }
    out
}

/// All flags of length `ell` starting at `m`.
pub fn extend_flags(m: &RankModule, base: &Semigroup, rank: usize, ell: usize, out: &mut Vec<DeltaFlag>) {
    fn rec(
        m: &RankModule,
        set: &CofiniteSet,
        added: &mut Vec<usize>,
        base: &Semigroup,
        rank: usize,
        ell: usize,
        out: &mut Vec<DeltaFlag>,
    ) {
        if added.len() == ell {
            out.push(DeltaFlag { base: m.clone(), added: added.clone() });
            return;
        }
        for g in addable(set, base, rank, added.last().copied()) {
            added.push(g);
            let next = set.insert(g);
            rec(m, &next, added, base, rank, ell, out);
            added.pop();
        }
    }
    rec(m, &m.merged, &mut Vec::new(), base, rank, ell, out);
}

/// Output `j` is the union of all `(j+1)`-fold intersections of the inputs.
pub fn sort_components(components: &[CofiniteSet]) -> Vec<CofiniteSet> {
    let n = components.len();
    let bound = components.iter().map(|c| c.conductor()).max().unwrap_or(0);
    (0..n)
        .map(|j| {
            CofiniteSet::from_predicate(bound, |x| {
                components.iter().filter(|c| c.contains(x as i64)).count() > j
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{family_semigroup, semigroup_from_generators};
    use proptest::prelude::*;

    #[test]
    fn trefoil_modules() {
        let s = semigroup_from_generators(&[2, 3]).unwrap();
        let ms = enumerate_standard_modules(&s);
        assert_eq!(ms.len(), 2);
        assert!(ms.iter().any(|m| m.delta == CofiniteSet::everything()));
    }

    #[test]
    fn family_module_counts() {
        assert_eq!(enumerate_standard_modules(&family_semigroup(7).unwrap()).len(), 25);
        assert_eq!(enumerate_standard_modules(&family_semigroup(15).unwrap()).len(), 41);
    }

    #[test]
    fn p_bases() {
        let s = semigroup_from_generators(&[2, 3]).unwrap();
        let z = GammaModule::new(&s, CofiniteSet::everything());
        assert_eq!(p_basis(&z, 2, 3).unwrap(), vec![0, 1]);
        assert_eq!(p_basis(&GammaModule::semigroup_itself(&s), 2, 3).unwrap(), vec![0, 3]);
        let s34 = semigroup_from_generators(&[3, 4]).unwrap();
        assert_eq!(p_basis(&GammaModule::semigroup_itself(&s34), 3, 4).unwrap(), vec![0, 4, 8]);
    }

    #[test]
    fn rank_two_examples() {
        let s = semigroup_from_generators(&[2, 3]).unwrap();
        let z = GammaModule::new(&s, CofiniteSet::everything());
        let m = rank_module(&[z.clone(), z]).unwrap();
        assert_eq!(m.merged, CofiniteSet::everything());
        assert_eq!(m.dev(), 2 * s.delta);
        let min = RankModule::minimal(&s, 2);
        assert_eq!(min.dev(), 0);
        assert!(dset(&min).elements.is_empty());
        assert_eq!(min.merged, standard_part(&s, 2));
    }

    #[test]
    fn worked_reconstruction() {
        let s = family_semigroup(9).unwrap();
        assert_eq!(reconstruct(&[5, 18, 22], &s, 2), vec![5, 18, 22, 26, 34, 35]);
    }

    #[test]
    fn v7_has_primitive_5_14_18() {
        let s = family_semigroup(7).unwrap();
        let found = enumerate_rank_modules(&s, 2).iter().any(|m| dset(m).primitive == vec![5, 14, 18]);
        assert!(found);
    }

    #[test]
    fn v9_flag_pair_exists() {
        let s = family_semigroup(9).unwrap();
        let flags = enumerate_flags(&s, 2, 1);
        let hit = flags
            .iter()
            .any(|f| f.dset_at(0).primitive == vec![18, 22, 35] && f.dset_at(1).primitive == vec![5, 18, 22]);
        assert!(hit);
    }

    #[test]
    fn trefoil_flags() {
        let s = semigroup_from_generators(&[2, 3]).unwrap();
        let f = enumerate_flags(&s, 1, 1);
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].added, vec![1]);
        assert_eq!(enumerate_flags(&s, 1, 0).len(), 2);
    }

    #[test]
    fn rank_module_matches_d_row() {
        // 47 exceeds the merged conductor 2·18 of ⟨4,6,15⟩; the row lives over ⟨4,6,21⟩.
        let s = family_semigroup(15).unwrap();
        let m = enumerate_rank_modules(&s, 2).into_iter().find(|m| dset(m).primitive == vec![4, 30, 34, 47]).unwrap();
        assert_eq!(m.dev(), dset(&m).elements.len());
    }

    #[test]
    fn module_invariants_family() {
        for v in [7, 9, 15] {
            let s = family_semigroup(v).unwrap();
            let ms = enumerate_standard_modules(&s);
            for m in &ms {
                assert!(m.is_module() && m.is_standard());
                assert_eq!(m.deg() + m.dev(), s.delta);
            }
            for m in enumerate_rank_modules(&s, 2) {
                let d = dset(&m);
                assert_eq!(d.elements.len(), m.dev());
                assert_eq!(reconstruct(&d.primitive, &s, 2), d.elements);
                assert!(is_module_over(&m.merged, &s, 2));
            }
        }
    }

    #[test]
    fn flags_are_modules() {
        let s = semigroup_from_generators(&[3, 4]).unwrap();
        for ell in 0..3 {
            for f in enumerate_flags(&s, 2, ell) {
                for i in 0..=ell {
                    assert!(is_module_over(&f.level(i), &s, 2));
                }
                assert!(f.added.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn sort_two_components() {
        let s = semigroup_from_generators(&[2, 3]).unwrap();
        let z = CofiniteSet::everything();
        assert_eq!(sort_components(&[z.clone(), s.set.clone()]), vec![z.clone(), s.set.clone()]);
        assert_eq!(sort_components(&[s.set.clone(), z.clone()]), vec![z, s.set.clone()]);
    }

    proptest! {
        #[test]
        fn sort_components_preserves_gap_total(i in 0usize..25, j in 0usize..25, k in 0usize..25) {
            let s = family_semigroup(7).unwrap();
            let ms = enumerate_standard_modules(&s);
            let input = vec![ms[i].delta.clone(), ms[j].delta.clone(), ms[k].delta.clone()];
            let out = sort_components(&input);
            let total = |v: &[CofiniteSet]| v.iter().map(|c| c.gap_count(0)).sum::<usize>();
            prop_assert_eq!(total(&input), total(&out));
            prop_assert_eq!(&out[0], &input[0].union(&input[1]).union(&input[2]));
            prop_assert_eq!(&out[2], &input[0].intersection(&input[1]).intersection(&input[2]));
            prop_assert!(out[1].is_subset(&out[0]) && out[2].is_subset(&out[1]));
            for o in &out {
                prop_assert!(is_module_over(o, &s, 1));
            }
        }
    }
}
