use super::*;
use crate::exactalg::{LaurentQTA, RatFunQT};
use proptest::prelude::*;

type P = XPoly<LaurentQTA>;

fn poly_strategy(n: usize) -> impl Strategy<Value = P> {
    prop::collection::vec((prop::collection::vec(-2i32..=2, n), -3i64..=3, -2i32..=2, -2i32..=2), 1..5).prop_map(
        move |terms| {
            P::from_terms(n, terms.into_iter().map(|(b, c, q2, t2)| (b, LaurentQTA::term(c, q2, t2, 0))))
        },
    )
}

fn any_poly() -> impl Strategy<Value = P> {
    (2usize..=4).prop_flat_map(poly_strategy)
}

fn lt(c: i64, q2: i32, t2: i32) -> LaurentQTA {
    LaurentQTA::term(c, q2, t2, 0)
}

#[test]
fn t_on_constant() {
    let one = P::one(2);
    assert_eq!(one.apply_t(1, false), P::monomial(vec![0, 0], lt(1, 0, 1)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hecke_quadratic_relation(f in any_poly()) {
        let n = f.rank();
        for i in 1..n {
            // (T − t^{1/2})(T + t^{−1/2}) f = 0
            let g = f.apply_t(i, false).add(&f.scale(&lt(1, 0, -1)));
            let h = g.apply_t(i, false).sub(&g.scale(&lt(1, 0, 1)));
            prop_assert!(h.is_zero());
            prop_assert_eq!(f.apply_t(i, true).apply_t(i, false), f.clone());
        }
    }

    #[test]
    fn braid_relations(f in any_poly()) {
        let n = f.rank();
        for i in 1..n.saturating_sub(1) {
            let l = f.apply_t(i, false).apply_t(i + 1, false).apply_t(i, false);
            let r = f.apply_t(i + 1, false).apply_t(i, false).apply_t(i + 1, false);
            prop_assert_eq!(l, r);
        }
        for i in 1..n {
            for j in i + 2..n {
                prop_assert_eq!(f.apply_t(i, false).apply_t(j, false), f.apply_t(j, false).apply_t(i, false));
            }
        }
    }

    #[test]
    fn t_x_relations(f in any_poly()) {
        let n = f.rank();
        for i in 1..n {
            // T_i X_i T_i = X_{i+1}
            prop_assert_eq!(f.apply_t(i, false).mul_x(i, 1).apply_t(i, false), f.mul_x(i + 1, 1));
            // T_i commutes with X_j for j ≠ i, i+1
            for j in (1..=n).filter(|&j| j != i && j != i + 1) {
                prop_assert_eq!(f.mul_x(j, 1).apply_t(i, false), f.apply_t(i, false).mul_x(j, 1));
            }
        }
    }

    #[test]
    fn pi_relations(f in any_poly()) {
        let n = f.rank();
        for i in 1..n {
            // π X_i π^{−1} = X_{i+1}
            prop_assert_eq!(f.apply_pi(true).mul_x(i, 1).apply_pi(false), f.mul_x(i + 1, 1));
        }
        for i in 1..n - 1 {
            // π T_i π^{−1} = T_{i+1}
            prop_assert_eq!(f.apply_pi(true).apply_t(i, false).apply_pi(false), f.apply_t(i + 1, false));
        }
        for i in 1..=n {
            // π^n X_i π^{−n} = q^{−1} X_i
            let mut g = f.clone();
            for _ in 0..n {
                g = g.apply_pi(true);
            }
            g = g.mul_x(i, 1);
            for _ in 0..n {
                g = g.apply_pi(false);
            }
            prop_assert_eq!(g, f.mul_x(i, 1).scale(&lt(1, -2, 0)));
        }
        prop_assert_eq!(f.apply_pi(true).apply_pi(false), f.clone());
    }

    #[test]
    fn y_operators_commute(f in any_poly()) {
        let n = f.rank();
        for j in 1..=n {
            prop_assert_eq!(f.apply_y(j, true).apply_y(j, false), f.clone());
            for k in j + 1..=n {
                prop_assert_eq!(f.apply_y(j, false).apply_y(k, false), f.apply_y(k, false).apply_y(j, false));
            }
        }
        for i in 1..n {
            // Y_{i+1} = T_i^{−1} Y_i T_i^{−1}
            let l = f.apply_y(i + 1, false);
            let r = f.apply_t(i, true).apply_y(i, false).apply_t(i, true);
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn tau_images_respect_relations(f in poly_strategy(3), which in 0usize..4) {
        let n = 3;
        let word: TauWord = match which {
            0 => vec![(Tau::Plus, 1)],
            1 => vec![(Tau::Minus, 1)],
            2 => vec![(Tau::Plus, -1)],
            _ => vec![(Tau::Minus, -1)],
        };
        let xs = x_images(&word, n);
        let ys = y_images(&word, n);
        for a in 0..n {
            for b in a + 1..n {
                prop_assert_eq!(xs[a].apply(&xs[b].apply(&f)), xs[b].apply(&xs[a].apply(&f)));
                prop_assert_eq!(ys[a].apply(&ys[b].apply(&f)), ys[b].apply(&ys[a].apply(&f)));
            }
        }
        for i in 1..n {
            // T_i τ(X_i) T_i = τ(X_{i+1}) and T_i τ(Y_{i+1}) T_i = τ(Y_i)
            let l = xs[i - 1].apply(&f.apply_t(i, false)).apply_t(i, false);
            prop_assert_eq!(l, xs[i].apply(&f));
            let l = ys[i].apply(&f.apply_t(i, false)).apply_t(i, false);
            prop_assert_eq!(l, ys[i - 1].apply(&f));
        }
    }

    #[test]
    fn b3_relation(f in poly_strategy(3)) {
        let lhs: TauWord = vec![(Tau::Plus, 1), (Tau::Minus, -1), (Tau::Plus, 1)];
        let rhs: TauWord = vec![(Tau::Minus, -1), (Tau::Plus, 1), (Tau::Minus, -1)];
        for (a, b) in x_images(&lhs, 3).iter().zip(&x_images(&rhs, 3)) {
            prop_assert_eq!(a.apply(&f), b.apply(&f));
        }
        for (a, b) in y_images(&lhs, 3).iter().zip(&y_images(&rhs, 3)) {
            prop_assert_eq!(a.apply(&f), b.apply(&f));
        }
    }

    #[test]
    fn gamma_images_commute(f in poly_strategy(3)) {
        let (w, _) = gamma_lift(3, 2);
        let xs = x_images(&w, 3);
        for a in 0..3 {
            for b in a + 1..3 {
                prop_assert_eq!(xs[a].apply(&xs[b].apply(&f)), xs[b].apply(&xs[a].apply(&f)));
            }
        }
    }

    #[test]
    fn coinvariant_phi_invariance(letters in prop::collection::vec((0usize..3, 1usize..=3, any::<bool>()), 1..6)) {
        let n = 3;
        let word: Vec<Letter> = letters
            .into_iter()
            .map(|(kind, j, inv)| match kind {
                0 => Letter::X(j, inv),
                1 => Letter::Y(j, inv),
                _ => Letter::T(j.min(n - 1), inv),
            })
            .collect();
        let h = OperatorExpr::word(&word);
        let one = P::one(n);
        prop_assert_eq!(coinvariant(&h.apply(&one)), coinvariant(&h.phi().apply(&one)));
    }
}

#[test]
fn relations_over_rational_coefficients() {
    let c = &RatFunQT::one() / &(&RatFunQT::one() - &RatFunQT::monomial(1, 2, 2));
    let f = XPoly::from_terms(3, [(vec![2, -1, 0], c.clone()), (vec![0, 1, 1], RatFunQT::monomial(3, -1, 1))]);
    for i in 1..3 {
        let g = f.apply_t(i, false).add(&f.scale(&RatFunQT::monomial(1, 0, -1)));
        let h = g.apply_t(i, false).sub(&g.scale(&RatFunQT::monomial(1, 0, 1)));
        assert!(h.is_zero());
    }
    assert_eq!(f.apply_y(2, false).apply_y(1, false), f.apply_y(1, false).apply_y(2, false));
}

#[test]
fn coinvariant_examples() {
    assert_eq!(coinvariant(&P::one(2)), RatFunQT::one());
    assert_eq!(coinvariant(&P::x(2, 1)), RatFunQT::monomial(1, 0, -1));
    let p1 = column_p::<LaurentQTA>(2, 1);
    assert_eq!(evaluate_at_rho(&p1, -1), &RatFunQT::monomial(1, 0, -1) + &RatFunQT::monomial(1, 0, 1));
    assert_eq!(evaluate_at_rho(&p1, -1), macdonald_eval_product(&[1, 0]));
}

#[test]
fn e_of_fundamental_weights() {
    for n in 1..=3 {
        for k in 1..=n {
            let w = column_weight(n, k).unwrap();
            let e = macdonald_e(&w).unwrap();
            assert_eq!(e, XPoly::monomial(w.clone(), RatFunQT::one()), "E_ω{k}, n = {n}");
            assert_eq!(macdonald_p(&w).unwrap(), column_p::<RatFunQT>(n, k));
        }
    }
}

fn dominant_weights(n: usize, max_size: i32) -> Vec<Vec<i32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for b in &out {
            let cap = b.last().copied().unwrap_or(max_size);
            for e in 0..=cap {
                let mut c = b.clone();
                c.push(e);
                next.push(c);
            }
        }
        out = next;
    }
    out.into_iter().filter(|b| b.iter().sum::<i32>() <= max_size).collect()
}

#[test]
fn e_eigenproperty() {
    for b in [vec![1, 0], vec![0, 1], vec![2, 0], vec![0, 2], vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 1], vec![2, 1, 0]] {
        let e = macdonald_e(&b).unwrap();
        assert_eq!(e.coeff(&b), RatFunQT::one());
        for j in 1..=b.len() {
            let ye = e.apply_y(j, false);
            let lambda = ye.coeff(&b);
            assert_eq!(ye, e.scale(&lambda), "Y_{j} E_{b:?}");
        }
    }
}

/// Π over blocks of equal entries of [k]_t! divided by [n]_t!.
fn stabilizer_ratio(b: &[i32]) -> RatFunQT {
    let factorial = |k: usize| {
        let mut acc = RatFunQT::one();
        for i in 1..=k {
            let mut s = RatFunQT::zero();
            for e in 0..i {
                s = &s + &RatFunQT::monomial(1, 0, 2 * e as i32);
            }
            acc = &acc * &s;
        }
        acc
    };
    let mut num = RatFunQT::one();
    let mut i = 0;
    while i < b.len() {
        let k = b[i..].iter().take_while(|&&e| e == b[i]).count();
        num = &num * &factorial(k);
        i += k;
    }
    &num / &factorial(b.len())
}

#[test]
fn evaluation_formula() {
    for n in 1..=3 {
        for b in dominant_weights(n, 3) {
            let (p, lead) = macdonald_p_with_lead(&b).unwrap();
            assert_eq!(lead, stabilizer_ratio(&b), "X_b coefficient of 𝐏E_{b:?}");
            assert_eq!(evaluate_at_rho(&p, -1), macdonald_eval_product(&b), "P_{b:?}(t^-ρ)");
            assert_eq!(evaluate_at_rho(&p, 1), macdonald_eval_product(&b), "P_{b:?}(t^ρ)");
        }
    }
}

#[test]
fn lifts() {
    assert_eq!(gamma_lift(1, 0).0, Vec::new());
    assert_eq!(gamma_lift(3, 2).0, vec![(Tau::Plus, 1), (Tau::Minus, 2)]);
    assert_eq!(gamma_lift(2, 1).0, vec![(Tau::Plus, 1), (Tau::Minus, 1)]);
    for (r, s) in [(3, 2), (2, 1), (5, 2), (4, 3), (2, 3), (2, 13), (7, 5)] {
        let (w, alt) = gamma_lift(r, s);
        assert_ne!(w, alt);
        for word in [w, alt] {
            let m = tau_matrix(&word);
            assert_eq!((m[0][0], m[1][0]), (r as i64, s as i64));
            assert_eq!(m[0][0] * m[1][1] - m[0][1] * m[1][0], 1);
        }
    }
}

#[test]
fn cabling_parameters() {
    assert_eq!(newton_to_cable(&[3, 2], &[2, 1]), vec![2, 13]);
    assert_eq!(newton_to_cable(&[3, 2], &[2, 3]), vec![2, 15]);
    assert_eq!(newton_to_cable(&[5], &[3]), vec![3]);
    assert_eq!(KnotPresentation::parse("3:2,2:3").unwrap().cable(), vec![2, 15]);
    assert!(KnotPresentation::new(vec![4], vec![2]).is_err());
}

#[test]
fn apply_gamma_of_empty_word_is_identity() {
    let f = P::from_terms(2, [(vec![1, 0], lt(1, 0, 0)), (vec![2, -1], lt(2, 1, 1))]);
    assert_eq!(apply_gamma(&Vec::new(), &f), f);
}

#[test]
fn unknot_and_lift_independence() {
    let unknot = KnotPresentation::torus(1, 1).unwrap();
    for n in 1..=3 {
        assert_eq!(daha_jones(&unknot, &column_weight(n, 1).unwrap()).unwrap(), LaurentQTA::one());
    }
    let trefoil = KnotPresentation::torus(3, 2).unwrap();
    for n in 2..=3 {
        let b = column_weight(n, 1).unwrap();
        let a = daha_jones_raw(&trefoil, &b, false).unwrap();
        let c = daha_jones_raw(&trefoil, &b, true).unwrap();
        assert_eq!(a, c);
        let j = a.tilde_normalize().unwrap();
        assert_eq!(j.coeff(crate::exactalg::Exp::new(0, 0, 0)), crate::exactalg::Int::ONE);
        assert!(j.terms().all(|(e, _)| e.q2 >= 0 && e.t2 >= 0));
    }
}

#[test]
fn trefoil_jones_at_gl2() {
    // 1 + qt + qa at a = −t²
    let j = daha_jones(&KnotPresentation::torus(3, 2).unwrap(), &[1, 0]).unwrap();
    assert_eq!(j, &(&LaurentQTA::one() + &lt(1, 2, 2)) - &lt(1, 2, 4));
}

#[test]
fn trefoil_superpolynomial() {
    let s = daha_superpolynomial(&KnotPresentation::torus(3, 2).unwrap(), 1).unwrap();
    let expected = LaurentQTA::from_json(r#"[{"q2":0,"t2":0,"a":0,"c":"1"},{"q2":2,"t2":2,"a":0,"c":"1"},{"q2":2,"t2":0,"a":1,"c":"1"}]"#).unwrap();
    assert_eq!(s.h, expected);
    assert_eq!(s.nodes.iter().map(|(m, _)| *m).collect::<Vec<_>>(), vec![1, 2]);
    assert_eq!(s.held_out.0, 3);
}

#[test]
fn collapse_at_rank() {
    // ω_rk is the determinant of GL_rk, so H(a = −t^rk) = 1.
    for (r, s, rk) in [(3, 2, 1), (5, 2, 1), (3, 2, 2)] {
        let h = daha_superpolynomial(&KnotPresentation::torus(r, s).unwrap(), rk).unwrap().h;
        assert_eq!(specialize_at_node(&h, rk), LaurentQTA::one());
    }
}

#[test]
fn a_degree_bounds() {
    assert_eq!(a_degree_bound(&KnotPresentation::torus(3, 2).unwrap(), 2), 2);
    assert_eq!(a_degree_bound(&KnotPresentation::parse("3:2,2:3").unwrap(), 2), 6);
    assert_eq!(a_degree_bound(&KnotPresentation::torus(4, 3).unwrap(), 1), 2);
}

#[test]
fn monomial_box_selftest() {
    let r = selftest();
    assert!(r.passed(), "{:?}", r.failures);
    assert_eq!(r.elements, 25 + 125 + 81);
    assert_eq!(r.evaluations, 17);
}

#[test]
fn e_seed_matches_p_seed() {
    for (r, s) in [(3, 2), (5, 2), (4, 3)] {
        let knot = KnotPresentation::torus(r, s).unwrap();
        for b in [vec![1, 0], vec![1, 0, 0], vec![1, 1, 0], vec![2, 0]] {
            assert_eq!(daha_jones_from_e(&knot, &b).unwrap(), daha_jones(&knot, &b).unwrap(), "T({r},{s}) b = {b:?}");
        }
    }
}
