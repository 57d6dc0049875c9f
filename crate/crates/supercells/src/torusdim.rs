//! Closed-form cell dimensions for torus rings k[[z^p, z^q]].

use crate::exactalg::{Exp, Int, LaurentQTA};
use crate::gmod::{can_add, enumerate_rank_modules, extend_flags, p_basis, DeltaFlag, RankModule};
use crate::semigroup::{semigroup_from_generators, CofiniteSet, Semigroup};
use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TorusError {
    #[error("p and q must be coprime")]
    NotCoprime,
    #[error("adding {0} does not give a module")]
    NotAModule(usize),
}

#[derive(Clone, Debug)]
pub struct TorusRing {
    pub p: usize,
    pub q: usize,
    pub rank: usize,
    pub semigroup: Semigroup,
}

impl TorusRing {
    pub fn new(p: usize, q: usize, rank: usize) -> Result<TorusRing, TorusError> {
        if p.gcd(&q) != 1 || p == 0 || q == 0 {
            return Err(TorusError::NotCoprime);
        }
        let (p, q) = (p.min(q), p.max(q));
        let semigroup = semigroup_from_generators(&[p, q]).map_err(|_| TorusError::NotCoprime)?;
        assert_eq!(semigroup.delta, (p - 1) * (q - 1) / 2);
        Ok(TorusRing { p, q, rank, semigroup })
    }

    pub fn delta(&self) -> usize {
        self.semigroup.delta
    }
}

/// Leading exponents `rk·a_{i,j} + i` of the generators of a rank module.
pub fn leading_exponents(m: &RankModule, ring: &TorusRing) -> Vec<usize> {
    let rk = m.rank;
    let mut out = Vec::with_capacity(rk * ring.p);
    for (i, comp) in m.components.iter().enumerate() {
        for a in p_basis(comp, ring.p, ring.q).expect("torus ring is two-generated") {
            out.push(rk * a + i);
        }
    }
    out
}

/// N = Σ [γ_Δ(e) − γ_Δ(e + rk·q)] over the leading exponents e.
pub fn dim_cell(m: &RankModule, ring: &TorusRing) -> usize {
    let rk = m.rank as i64;
    let total: i64 = leading_exponents(m, ring)
        .into_iter()
        .map(|e| {
            let e = e as i64;
            m.merged.gap_count(e) as i64 - m.merged.gap_count(e + rk * ring.q as i64) as i64
        })
        .sum();
    assert!(total >= 0);
    total as usize
}

/// Dimension change μ_{Δ,g} from the four-term γ formula on Δ' = Δ ∪ {g}.
pub fn dim_change(set: &CofiniteSet, g: usize, ring: &TorusRing) -> Result<i64, TorusError> {
    if !can_add(set, g, &ring.semigroup, ring.rank) {
        return Err(TorusError::NotAModule(g));
    }
    let d = set.insert(g);
    let (rp, rq) = ((ring.rank * ring.p) as i64, (ring.rank * ring.q) as i64);
    let gm = |x: i64| d.gap_count(x) as i64;
    let g = g as i64;
    Ok(gm(g) - gm(g + rp) - (gm(g + rq) - gm(g + rp + rq)))
}

/// Dimension of the cell of a flag: dim of Δ₀ plus the dimension changes.
pub fn dim_flag(flag: &DeltaFlag, ring: &TorusRing) -> i64 {
    let mut n = dim_cell(&flag.base, ring) as i64;
    for (i, &g) in flag.added.iter().enumerate() {
        n += dim_change(&flag.level(i), g, ring).unwrap();
    }
    n
}

/// All flags of length ≤ `lmax` with their dimensions.
pub fn torus_cells(ring: &TorusRing, lmax: usize) -> Vec<(DeltaFlag, i64)> {
    let mut out = Vec::new();
    for m in enumerate_rank_modules(&ring.semigroup, ring.rank) {
        for ell in 0..=lmax {
            let mut flags = Vec::new();
            extend_flags(&m, &ring.semigroup, ring.rank, ell, &mut flags);
            for f in flags {
                let n = dim_flag(&f, ring);
                out.push((f, n));
            }
        }
    }
    out
}

/// H = Σ_flags q^{dev(Δ₀)+ℓ} t^{δ·rk² − N} a^ℓ.
pub fn torus_motivic_super(ring: &TorusRing, lmax: usize) -> LaurentQTA {
    let top = (ring.delta() * ring.rank * ring.rank) as i64;
    let mut h = LaurentQTA::zero();
    for (f, n) in torus_cells(ring, lmax) {
        let e = Exp::new(2 * f.kappa() as i32, 2 * (top - n) as i32, f.len() as u32);
        h.add_term(e, &Int::ONE);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmod::{rank_module, GammaModule};

    #[test]
    fn trefoil_dims() {
        let r = TorusRing::new(2, 3, 1).unwrap();
        let z = rank_module(&[GammaModule::new(&r.semigroup, CofiniteSet::everything())]).unwrap();
        assert_eq!(dim_cell(&z, &r), 0);
        let g = RankModule::minimal(&r.semigroup, 1);
        assert_eq!(dim_cell(&g, &r), 1);
        assert_eq!(dim_change(&g.merged, 1, &r).unwrap(), 0);
        assert!(dim_change(&g.merged, 0, &r).is_err());
    }

    #[test]
    fn trefoil_superpolynomial() {
        let r = TorusRing::new(3, 2, 1).unwrap();
        let h = torus_motivic_super(&r, 1);
        let expect = LaurentQTA::from_terms(vec![
            (Exp::new(0, 0, 0), Int::ONE),
            (Exp::new(2, 2, 0), Int::ONE),
            (Exp::new(2, 0, 1), Int::ONE),
        ]);
        assert_eq!(h, expect);
    }

    #[test]
    fn a_degree_is_multiplicity_minus_one() {
        for (p, q) in [(2, 3), (2, 5), (3, 4), (3, 5)] {
            let r = TorusRing::new(p, q, 1).unwrap();
            let h = torus_motivic_super(&r, p);
            assert_eq!(h.max_a_degree(), Some((p - 1) as u32), "T({p},{q})");
        }
    }

    #[test]
    fn rejects_non_coprime() {
        assert_eq!(TorusRing::new(2, 4, 1).unwrap_err(), TorusError::NotCoprime);
    }
}
