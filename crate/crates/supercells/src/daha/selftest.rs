//! Relation suite over a fixed box of monomials.
//!
//! Every operator identity checked here is linear over ℚ(q^{1/2}, t^{1/2}),
//! so checking it on all X^b with b in a box checks it on their span.

use super::*;
use crate::exactalg::{LaurentQTA, RatFunQT};

type P = XPoly<LaurentQTA>;

#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct SelftestReport {
    pub elements: usize,
    pub words: usize,
    pub evaluations: usize,
    pub failures: Vec<String>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn lt(q2: i32, t2: i32) -> LaurentQTA {
    LaurentQTA::term(1, q2, t2, 0)
}

fn monomial_box(n: usize, r: i32) -> Vec<P> {
    let mut weights = vec![vec![]];
    for _ in 0..n {
        weights = weights
            .into_iter()
            .flat_map(|b: Vec<i32>| {
                (-r..=r).map(move |e| {
                    let mut c = b.clone();
                    c.push(e);
                    c
                })
            })
            .collect();
    }
    weights.into_iter().map(|b| P::monomial(b, LaurentQTA::one())).collect()
}

/// Names of the relations that fail on `f`.
pub fn relation_failures(f: &P) -> Vec<&'static str> {
    let n = f.rank();
    let mut bad = Vec::new();
    let mut check = |ok: bool, what: &'static str| {
        if !ok {
            bad.push(what);
        }
    };
    for i in 1..n {
        let g = f.apply_t(i, false).add(&f.scale(&lt(0, -1)));
        check(g.apply_t(i, false).sub(&g.scale(&lt(0, 1))).is_zero(), "quadratic");
        check(f.apply_t(i, true).apply_t(i, false) == *f, "T inverse");
        check(f.apply_t(i, false).mul_x(i, 1).apply_t(i, false) == f.mul_x(i + 1, 1), "T X_i T = X_{i+1}");
        check(f.apply_pi(true).mul_x(i, 1).apply_pi(false) == f.mul_x(i + 1, 1), "π X_i π⁻¹ = X_{i+1}");
        for j in (1..=n).filter(|&j| j != i && j != i + 1) {
            check(f.mul_x(j, 1).apply_t(i, false) == f.apply_t(i, false).mul_x(j, 1), "T_i X_j = X_j T_i");
        }
        for j in i + 2..n {
            check(f.apply_t(i, false).apply_t(j, false) == f.apply_t(j, false).apply_t(i, false), "far T commute");
        }
        if i + 1 < n {
            let l = f.apply_t(i, false).apply_t(i + 1, false).apply_t(i, false);
            check(l == f.apply_t(i + 1, false).apply_t(i, false).apply_t(i + 1, false), "braid");
            check(f.apply_pi(true).apply_t(i, false).apply_pi(false) == f.apply_t(i + 1, false), "π T_i π⁻¹ = T_{i+1}");
        }
    }
    for i in 1..=n {
        let mut g = f.clone();
        for _ in 0..n {
            g = g.apply_pi(true);
        }
        g = g.mul_x(i, 1);
        for _ in 0..n {
            g = g.apply_pi(false);
        }
        check(g == f.mul_x(i, 1).scale(&lt(-2, 0)), "πⁿ X_i π⁻ⁿ = q⁻¹ X_i");
        check(f.apply_y(i, true).apply_y(i, false) == *f, "Y inverse");
        for k in i + 1..=n {
            check(f.apply_y(i, false).apply_y(k, false) == f.apply_y(k, false).apply_y(i, false), "Y commute");
        }
    }
    let taus: [TauWord; 4] = [vec![(Tau::Plus, 1)], vec![(Tau::Minus, 1)], vec![(Tau::Plus, -1)], vec![(Tau::Minus, -1)]];
    for word in &taus {
        let (xs, ys) = (x_images(word, n), y_images(word, n));
        for i in 1..n {
            check(xs[i - 1].apply(&f.apply_t(i, false)).apply_t(i, false) == xs[i].apply(f), "T τ(X_i) T = τ(X_{i+1})");
            check(ys[i].apply(&f.apply_t(i, false)).apply_t(i, false) == ys[i - 1].apply(f), "T τ(Y_{i+1}) T = τ(Y_i)");
        }
        for a in 0..n {
            for b in a + 1..n {
                check(xs[a].apply(&xs[b].apply(f)) == xs[b].apply(&xs[a].apply(f)), "τ(X) commute");
                check(ys[a].apply(&ys[b].apply(f)) == ys[b].apply(&ys[a].apply(f)), "τ(Y) commute");
            }
        }
    }
    if n == 3 {
        let lhs: TauWord = vec![(Tau::Plus, 1), (Tau::Minus, -1), (Tau::Plus, 1)];
        let rhs: TauWord = vec![(Tau::Minus, -1), (Tau::Plus, 1), (Tau::Minus, -1)];
        let same = |a: Vec<MonoWord>, b: Vec<MonoWord>| a.iter().zip(&b).all(|(x, y)| x.apply(f) == y.apply(f));
        check(same(x_images(&lhs, 3), x_images(&rhs, 3)) && same(y_images(&lhs, 3), y_images(&rhs, 3)), "B₃");
    }
    bad
}

fn all_words(n: usize, max_len: usize) -> Vec<Vec<Letter>> {
    let mut letters = Vec::new();
    for inv in [false, true] {
        for j in 1..=n {
            letters.push(Letter::X(j, inv));
            letters.push(Letter::Y(j, inv));
        }
        for i in 1..n {
            letters.push(Letter::T(i, inv));
        }
    }
    let mut out = Vec::new();
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<Letter>| {
                letters.iter().map(move |l| {
                    let mut v = w.clone();
                    v.push(l.clone());
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn dominant_weights(n: usize, size: i32) -> Vec<Vec<i32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|b: Vec<i32>| {
                let cap = b.last().copied().unwrap_or(size);
                (0..=cap).map(move |e| {
                    let mut c = b.clone();
                    c.push(e);
                    c
                })
            })
            .collect();
    }
    out.retain(|b| b.iter().sum::<i32>() <= size);
    out
}

/// Relations on monomial boxes, φ-invariance of the coinvariant on all
/// words of length ≤ 3 for n = 2, the fundamental E and P, and the
/// evaluation formula for dominant |b| ≤ 3, n ≤ 3.
pub fn selftest() -> SelftestReport {
    let mut report = SelftestReport::default();
    for (n, r) in [(2, 2), (3, 2), (4, 1)] {
        for f in monomial_box(n, r) {
            report.elements += 1;
            for what in relation_failures(&f) {
                report.failures.push(format!("{what} on {f:?}"));
            }
        }
    }
    let one = P::one(2);
    for w in all_words(2, 3) {
        report.words += 1;
        let h = OperatorExpr::word(&w);
        if coinvariant(&h.apply(&one)) != coinvariant(&h.phi().apply(&one)) {
            report.failures.push(format!("φ-invariance on {w:?}"));
        }
    }
    for n in 1..=3 {
        for k in 1..=n {
            let w = column_weight(n, k).expect("k ≤ n");
            match macdonald_e(&w) {
                Ok(e) if e == XPoly::monomial(w.clone(), RatFunQT::one()) => {}
                _ => report.failures.push(format!("E_ω{k} ≠ X_ω{k} for n = {n}")),
            }
        }
        let w = column_weight(n, 1).expect("n ≥ 1");
        if macdonald_p(&w).ok() != Some(column_p::<RatFunQT>(n, 1)) {
            report.failures.push(format!("P_ω1 ≠ ΣX_i for n = {n}"));
        }
        for b in dominant_weights(n, 3) {
            report.evaluations += 1;
            match macdonald_p(&b) {
                Ok(p) if evaluate_at_rho(&p, -1) == macdonald_eval_product(&b) => {}
                _ => report.failures.push(format!("evaluation formula for P_{b:?}")),
            }
        }
    }
    report
}
