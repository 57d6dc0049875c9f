use super::*;
use crate::exactalg::{GaloisField, Int, Mono, MultiPoly};
use crate::gmod::enumerate_flags;
use crate::torusdim::{dim_flag, TorusRing};
use proptest::prelude::*;

fn var(v: u16) -> MultiPoly {
    MultiPoly::var(v)
}

#[test]
fn labels_round_trip() {
    for t in CellType::TEMPLATES.into_iter().chain([CellType::NonAdmissible, CellType::Unknown]) {
        assert_eq!(CellType::from_label(t.label()), Some(t));
    }
    assert_eq!(CellType::from_label("Q"), None);
}

#[test]
fn template_counts() {
    // T^{N−1}·P(T) at N = 3, T = 3
    let expect = [(CellType::A, 27), (CellType::X, 18), (CellType::Y, 45), (CellType::L, 72), (CellType::N, 315)];
    for (t, n) in expect {
        assert_eq!(t.count_at(3, 3), Some(Int::from(n)), "{t}");
    }
    assert_eq!(CellType::X.count_at(0, 3), None);
    assert_eq!(CellType::A.count_at(0, 5), Some(Int::ONE));
    assert_eq!(CellType::NonAdmissible.count_at(2, 3), None);
}

proptest! {
    #[test]
    fn templates_separate_at_three(n in 1usize..12) {
        let mut seen: Vec<Int> = CellType::TEMPLATES.iter().map(|t| t.count_at(n, 3).unwrap()).collect();
        seen.sort();
        seen.dedup();
        prop_assert_eq!(seen.len(), CellType::TEMPLATES.len());
    }

    #[test]
    fn survivors_at_t1_are_the_nonvanishing_templates(i in 0usize..8) {
        let t = CellType::TEMPLATES[i];
        let at_one: i64 = t.template().unwrap().iter().sum();
        prop_assert_eq!(t.survives_t1(), at_one != 0);
    }
}

#[test]
fn elimination_basics() {
    // x0 − x1·x2 = 0 is solved for x0
    let r = eliminate(vec![var(0).sub(&var(1).mul(&var(2)))], 3);
    assert!(r.is_solved());
    assert_eq!(r.potential_dim(), 2);
    // x0 − 1 = 0 and x0 − 2 = 0 are inconsistent
    let r = eliminate(vec![var(0).sub(&MultiPoly::constant(1)), var(0).sub(&MultiPoly::constant(2))], 1);
    assert!(r.inconsistent.is_some());
}

#[test]
fn unit_pivots_leave_other_constants() {
    // 2·x0 − x1² has no unit pivot
    let e = var(0).scale(&Int::from(2)).sub(&var(1).mul(&var(1)));
    let unit = eliminate_with(vec![e.clone()], 2, Pivot::Unit);
    assert_eq!(unit.equations.len(), 1);
    let any = eliminate_with(vec![e], 2, Pivot::AnyConstant);
    assert!(any.is_solved());
}

#[test]
fn point_counts() {
    let f3 = GaloisField::new(3, 1);
    let f9 = GaloisField::new(3, 2);
    // x0·x1 = 1 has T − 1 points
    let e = var(0).mul(&var(1)).sub(&MultiPoly::constant(1));
    assert_eq!(count_points_over(&[e.clone()], 2, &f3, DEFAULT_BUDGET).unwrap(), Int::from(2));
    assert_eq!(count_points_over(&[e.clone()], 3, &f9, DEFAULT_BUDGET).unwrap(), Int::from(72));
    // x0² + 1 = 0 has no root over 𝔽₃ and two over 𝔽₉
    let e = MultiPoly::from_terms([(Mono::from_exponents(&[(0, 2)]), Int::ONE), (Mono::one(), Int::ONE)]);
    assert_eq!(count_points_over(&[e.clone()], 1, &f3, DEFAULT_BUDGET).unwrap(), Int::ZERO);
    assert_eq!(count_points_over(&[e], 1, &f9, DEFAULT_BUDGET).unwrap(), Int::from(2));
}

#[test]
fn trefoil_cells_are_affine() {
    let ring = RingSpec::torus(2, 3).unwrap();
    let cells = run_cells(&ring, 1, 1, &CellOptions::default()).unwrap();
    assert_eq!(cells.len(), 3);
    assert!(cells.iter().all(|c| c.cell_type == CellType::A && c.residual_equations == 0));
    let mut dims: Vec<(usize, usize)> = cells.iter().map(|c| (c.ell, c.potential_dim)).collect();
    dims.sort();
    assert_eq!(dims, vec![(0, 0), (0, 1), (1, 1)]);
}

#[test]
fn torus_cells_match_dimension_formula() {
    for (p, q, rank) in [(2, 5, 2), (3, 4, 1), (3, 5, 1)] {
        let ring = RingSpec::torus(p, q).unwrap();
        let tr = TorusRing::new(p, q, rank).unwrap();
        for ell in 0..=rank * (p - 1) {
            for f in enumerate_flags(&ring.semigroup, rank, ell) {
                let c = analyze_flag(&f, &ring, &CellOptions::default()).unwrap();
                assert_eq!(c.cell_type, CellType::A, "{:?}", f.added);
                assert_eq!(c.potential_dim as i64, dim_flag(&f, &tr), "{:?}", f.added);
            }
        }
    }
}

#[test]
fn pivot_modes_agree() {
    let ring = RingSpec::family(7).unwrap();
    let unit = run_cells(&ring, 2, 0, &CellOptions::default()).unwrap();
    let opts = CellOptions { pivot: Pivot::AnyConstant, ..CellOptions::default() };
    let any = run_cells(&ring, 2, 0, &opts).unwrap();
    for (a, b) in unit.iter().zip(&any) {
        assert_eq!((a.cell_type, a.potential_dim), (b.cell_type, b.potential_dim), "{:?}", a.d0_dag);
    }
}

#[test]
fn truncation_margin_is_inert() {
    for (ring, rank, ell) in [(RingSpec::family(7).unwrap(), 1, 3), (RingSpec::torus(3, 4).unwrap(), 2, 1)] {
        let base = run_cells(&ring, rank, ell, &CellOptions::default()).unwrap();
        let wide = run_cells(&ring.clone().with_margin(4), rank, ell, &CellOptions::default()).unwrap();
        assert_eq!(base, wide);
    }
}

#[test]
fn family_rank_one_records() {
    let ring = RingSpec::family(7).unwrap();
    let cells = run_cells(&ring, 1, 0, &CellOptions::default()).unwrap();
    assert!(cells.iter().all(|c| c.cell_type != CellType::Unknown));
    assert_eq!(cells.len(), 25);
    assert!(cells.iter().all(|c| c.kappa <= ring.delta()));
}

#[test]
fn v7_rank_two_is_stable() {
    let ring = RingSpec::family(7).unwrap();
    let base = run_cells(&ring, 2, 1, &CellOptions::default()).unwrap();
    let wide = run_cells(&ring.clone().with_margin(8), 2, 1, &CellOptions::default()).unwrap();
    assert_eq!(base, wide);
}
