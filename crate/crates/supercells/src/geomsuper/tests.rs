use super::*;
use crate::cellsys::{run_cells, CellOptions, RingSpec};
use crate::semigroup::semigroup_from_generators;
use proptest::prelude::*;

fn lt(c: i64, q2: i32, t2: i32, a: u32) -> LaurentQTA {
    LaurentQTA::term(c, q2, t2, a)
}

fn torus_run(p: usize, q: usize, rank: usize) -> (RingSpec, Vec<CellRecord>, LaurentQTA) {
    let ring = RingSpec::torus(p, q).unwrap();
    let cells = run_cells(&ring, rank, rank * (p - 1), &CellOptions::default()).unwrap();
    let h = motivic_superpolynomial(&cells, rank, ring.delta(), true).unwrap().h;
    (ring, cells, h)
}

#[test]
fn trefoil_rank_one() {
    let (ring, _, h) = torus_run(2, 3, 1);
    assert_eq!(h, &(&LaurentQTA::one() + &lt(1, 2, 2, 0)) + &lt(1, 2, 0, 1));
    assert_eq!(alexander_polynomial(&ring.semigroup), &(&LaurentQTA::one() - &lt(1, 2, 0, 0)) + &lt(1, 4, 0, 0));
    assert!(check_alexander(&h, &ring.semigroup).is_ok());
    assert!(check_alexander(&(&h + &lt(1, 0, 0, 0)), &ring.semigroup).is_err());
}

#[test]
fn trefoil_rank_two_at_t1() {
    let (_, _, h1) = torus_run(2, 3, 1);
    let (_, _, h2) = torus_run(2, 3, 2);
    assert!(check_t1_power(&h2, &h1, 2).is_ok());
    let base = &(&LaurentQTA::one() + &lt(1, 2, 0, 0)) + &lt(1, 2, 0, 1);
    let at_one = h2.specialize(&[(Var::T, LaurentQTA::one())]).unwrap();
    assert_eq!(at_one, base.pow(2));
}

#[test]
fn counts_and_homology_agree() {
    for (p, q, rank) in [(2, 5, 2), (3, 4, 1)] {
        let (ring, cells, h) = torus_run(p, q, rank);
        let partial = rank * rank * ring.delta();
        for t in [2, 3, 9] {
            assert!(check_count_identity(&h, &cells, partial, t), "T({p},{q}) rk{rank} over 𝔽_{t}");
        }
        assert_eq!(singular_superpolynomial(&cells, rank, ring.delta()).unwrap(), h);
        assert!(index_range_violations(&cells, rank, &ring.semigroup).is_empty());
        let total = decompose(&cells, rank, ring.delta()).values().fold(LaurentQTA::zero(), |acc, x| &acc + x);
        assert_eq!(total, h);
    }
}

#[test]
fn family_rank_one() {
    let ring = RingSpec::family(7).unwrap();
    let cells = run_cells(&ring, 1, 3, &CellOptions::default()).unwrap();
    let h = motivic_superpolynomial(&cells, 1, ring.delta(), true).unwrap().h;
    assert!(check_alexander(&h, &ring.semigroup).is_ok());
    assert!(check_count_identity(&h, &cells, ring.delta(), 3));
    assert_eq!(h.coeff(Exp::new(0, 0, 0)), Int::ONE);
}

#[test]
fn oracle_on_small_tori() {
    for (p, q, rank) in [(2, 3, 1), (2, 3, 2), (2, 5, 1)] {
        let ring = RingSpec::torus(p, q).unwrap();
        let cells = run_cells(&ring, rank, 1, &CellOptions::default()).unwrap();
        for prime in [2, 3] {
            let o = oracle_enumerate(&ring, rank, &OracleOptions { prime, max_ell: 1, size_limit: None }).unwrap();
            assert!(oracle_compare(&cells, &o, &ring, rank).is_empty(), "T({p},{q}) rk{rank} 𝔽_{prime}");
        }
    }
}

#[test]
fn oracle_guards() {
    let ring = RingSpec::torus(3, 4).unwrap();
    let opts = OracleOptions { prime: 4, max_ell: 0, size_limit: None };
    assert_eq!(oracle_enumerate(&ring, 1, &opts).unwrap_err(), OracleError::NotPrime(4));
    let opts = OracleOptions { prime: 3, max_ell: 0, size_limit: None };
    assert!(matches!(oracle_enumerate(&ring, 2, &opts), Err(OracleError::TooLarge { size: 12, .. })));
}

#[test]
fn alexander_of_larger_semigroup() {
    // ⟨3, 4⟩ = {0, 3, 4, 6, 7, 8, …}
    let s = semigroup_from_generators(&[3, 4]).unwrap();
    let expected = [(0, 1), (1, -1), (3, 1), (5, -1), (6, 1)];
    let poly = LaurentQTA::from_terms(expected.iter().map(|&(e, c)| (Exp::new(2 * e, 0, 0), Int::from(c))));
    assert_eq!(alexander_polynomial(&s), poly);
}

fn laurent() -> impl Strategy<Value = LaurentQTA> {
    prop::collection::vec((-4i64..=4, -6i32..=6, -6i32..=6, 0u32..3), 0..8)
        .prop_map(|ts| ts.into_iter().fold(LaurentQTA::zero(), |acc, (c, q2, t2, a)| &acc + &lt(c, q2, t2, a)))
}

proptest! {
    #[test]
    fn dual_normalization_round_trip(h in laurent(), rank in 1usize..3, delta in 1usize..10) {
        let d = dual_normalization(&h, rank, delta);
        prop_assert_eq!(from_dual_normalization(&d, rank, delta), h.clone());
        prop_assert_eq!(dual_normalization(&from_dual_normalization(&h, rank, delta), rank, delta), h.clone());
        if rank == 1 {
            prop_assert_eq!(dual_normalization(&d, rank, delta), h);
        }
    }

    #[test]
    fn cell_contribution_counts_points(i in 0usize..8, n in 1usize..6, kappa in 0usize..4, ell in 0usize..3, t in 2u64..10) {
        let ty = CellType::TEMPLATES[i];
        let partial = n + 3;
        let h = ty.contribution(kappa, ell, partial, n).unwrap();
        let counted = at_inverse_field_size(&h, partial, t).unwrap();
        let expected = LaurentQTA::monomial(ty.count_at(n, t).unwrap(), Exp::new(2 * kappa as i32, 0, ell as u32));
        prop_assert_eq!(counted, expected);
    }
}
