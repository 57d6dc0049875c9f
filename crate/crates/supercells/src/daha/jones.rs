//! DAHA-Jones polynomials of iterated torus knots and their a-stabilization.

use super::coeff::Coeff;
use super::expr::{gamma_lift, x_images, MonoWord, TauWord};
use super::macdonald::{column_p, evaluate_at_rho, is_dominant, macdonald_e, macdonald_p};
use super::poly::{Weight, XPoly};
use super::{DahaError, KnotPresentation};
use crate::exactalg::{Exp, LaurentQTA, RatFunQT, Var};
use rayon::prelude::*;
use std::collections::HashMap;

/// (γ̂(f))⇓: every monomial X^β of f is replaced by Π γ̂(X_j)^{β_j}
/// applied to 1.
pub fn apply_gamma<C: Coeff>(word: &TauWord, f: &XPoly<C>) -> XPoly<C> {
    let n = f.rank();
    let images = x_images(word, n);
    let inverses: Vec<MonoWord> = images.iter().map(|w| w.inverse()).collect();
    let mut memo: HashMap<Weight, XPoly<C>> = HashMap::new();
    memo.insert(vec![0; n], XPoly::one(n));
    let mut out = XPoly::zero(n);
    for (beta, c) in f.terms() {
        let v = image_of(beta, &images, &inverses, &mut memo);
        out = out.add(&v.scale(c));
    }
    out
}

// The images commute, so X^β is peeled from its last nonzero coordinate
// and prefixes are shared between monomials.
fn image_of<C: Coeff>(
    beta: &[i32],
    images: &[MonoWord],
    inverses: &[MonoWord],
    memo: &mut HashMap<Weight, XPoly<C>>,
) -> XPoly<C> {
    if let Some(v) = memo.get(beta) {
        return v.clone();
    }
    let j = beta.iter().rposition(|&e| e != 0).unwrap();
    let mut rest = beta.to_vec();
    let v = if beta[j] > 0 {
        rest[j] -= 1;
        images[j].apply(&image_of(&rest, images, inverses, memo))
    } else {
        rest[j] += 1;
        inverses[j].apply(&image_of(&rest, images, inverses, memo))
    };
    memo.insert(beta.to_vec(), v.clone());
    v
}

/// The τ-words used for each Newton pair, outermost first.
pub fn knot_words(knot: &KnotPresentation, alternative: bool) -> Vec<TauWord> {
    knot.r
        .iter()
        .zip(&knot.s)
        .map(|(&r, &s)| {
            let (w, alt) = gamma_lift(r, s);
            if alternative {
                alt
            } else {
                w
            }
        })
        .collect()
}

fn iterate<C: Coeff>(words: &[TauWord], p: &XPoly<C>) -> RatFunQT {
    let mut g = p.clone();
    for w in words.iter().rev() {
        g = apply_gamma(w, &g);
    }
    let ev = super::macdonald::coinvariant(&g);
    &ev / &evaluate_at_rho(p, -1)
}

/// {γ̂₁(⋯(γ̂_l(P_b)/P_b(t^{−ρ}))⇓⋯)}_ev before tilde-normalization.
pub fn daha_jones_raw(knot: &KnotPresentation, b: &[i32], alternative: bool) -> Result<LaurentQTA, DahaError> {
    if !is_dominant(b) {
        return Err(DahaError::NotDominant(b.to_vec()));
    }
    let words = knot_words(knot, alternative);
    let n = b.len();
    let column = b.iter().all(|&e| e == 0 || e == 1);
    let jd = if column {
        let k = b.iter().filter(|&&e| e == 1).count();
        iterate(&words, &column_p::<LaurentQTA>(n, k))
    } else {
        iterate(&words, &macdonald_p(b)?)
    };
    jd.to_laurent().ok_or_else(|| DahaError::ResidualDenominator(format!("{jd:?}")))
}

/// The tilde-normalized DAHA-Jones polynomial of `knot` colored by `b`.
pub fn daha_jones(knot: &KnotPresentation, b: &[i32]) -> Result<LaurentQTA, DahaError> {
    let jd = daha_jones_raw(knot, b, false)?;
    Ok(jd.tilde_normalize().expect("DAHA-Jones polynomial is zero"))
}

/// The same construction seeded with E_b instead of P_b, tilde-normalized.
pub fn daha_jones_from_e(knot: &KnotPresentation, b: &[i32]) -> Result<LaurentQTA, DahaError> {
    let jd = iterate(&knot_words(knot, false), &macdonald_e(b)?);
    let jd = jd.to_laurent().ok_or_else(|| DahaError::ResidualDenominator(format!("{jd:?}")))?;
    Ok(jd.tilde_normalize().expect("DAHA-Jones polynomial is zero"))
}

/// ω_k as a GL_n weight; ω_k = 0 on GL_{k−1}.
pub fn column_weight(n: usize, k: usize) -> Result<Weight, DahaError> {
    if k > n + 1 {
        return Err(DahaError::WeightTooLarge { k, n });
    }
    Ok((0..n).map(|i| (i < k) as i32).collect())
}

/// Exponent e in the specialization a = −t^e matching GL_m.
pub fn a_node(m: usize) -> i32 {
    m as i32
}

#[derive(Clone, Debug)]
pub struct DahaSuper {
    pub h: LaurentQTA,
    /// Tilde-normalized JD^{GL_m}(ω_rk) used for the interpolation.
    pub nodes: Vec<(usize, LaurentQTA)>,
    /// The extra m checked after solving.
    pub held_out: (usize, LaurentQTA),
}

/// a-degree bound rk·(s₁r₂⋯r_l − 1).
pub fn a_degree_bound(knot: &KnotPresentation, rank: usize) -> usize {
    let prod: u64 = knot.s[0] * knot.r[1..].iter().product::<u64>();
    rank * (prod as usize - 1)
}

fn jd_gl(knot: &KnotPresentation, m: usize, rank: usize) -> Result<LaurentQTA, DahaError> {
    if m < rank {
        return Ok(LaurentQTA::one());
    }
    daha_jones(knot, &column_weight(m, rank)?)
}

/// The DAHA superpolynomial colored by the column ω_rk: JD^{GL_m} for
/// m = rk, …, rk + D determine H through H(q, t, a = −t^m) = JD^{GL_m},
/// and m = rk + D + 1 is checked against the result.
pub fn daha_superpolynomial(knot: &KnotPresentation, rank: usize) -> Result<DahaSuper, DahaError> {
    let d = a_degree_bound(knot, rank);
    let ms: Vec<usize> = (rank..=rank + d + 1).collect();
    let values: Vec<LaurentQTA> = ms.par_iter().map(|&m| jd_gl(knot, m, rank)).collect::<Result<_, _>>()?;
    let nodes: Vec<(usize, LaurentQTA)> = ms[..=d].iter().copied().zip(values[..=d].iter().cloned()).collect();
    let held_out = (ms[d + 1], values[d + 1].clone());

    // Lagrange interpolation in a with nodes a_m = −t^m.
    let xs: Vec<RatFunQT> = nodes.iter().map(|&(m, _)| RatFunQT::monomial(-1, 0, 2 * a_node(m))).collect();
    let mut coeffs = vec![RatFunQT::zero(); d + 1];
    for (i, (_, jd)) in nodes.iter().enumerate() {
        let mut basis = vec![RatFunQT::one()];
        let mut denom = RatFunQT::one();
        for (k, xk) in xs.iter().enumerate() {
            if k == i {
                continue;
            }
            let mut next = vec![RatFunQT::zero(); basis.len() + 1];
            for (e, c) in basis.iter().enumerate() {
                next[e + 1] = &next[e + 1] + c;
                next[e] = &next[e] - &(c * xk);
            }
            basis = next;
            denom = &denom * &(&xs[i] - xk);
        }
        let w = &RatFunQT::from_laurent(jd) / &denom;
        for (e, c) in basis.iter().enumerate() {
            coeffs[e] = &coeffs[e] + &(c * &w);
        }
    }
    let mut h = LaurentQTA::zero();
    for (e, c) in coeffs.iter().enumerate() {
        let c = c
            .to_laurent()
            .ok_or_else(|| DahaError::Stabilization(format!("a^{e} coefficient is not a Laurent polynomial: {c:?}")))?;
        h = &h + &c.shift(Exp::new(0, 0, e as u32));
    }
    if let Some((e, _)) = h.terms().find(|(e, _)| e.q2 % 2 != 0 || e.t2 % 2 != 0 || e.q2 < 0) {
        return Err(DahaError::Stabilization(format!("coefficient outside ℤ[q, t^±1, a]: exponent {e:?}")));
    }
    for (m, jd) in nodes.iter().chain(std::iter::once(&held_out)) {
        let at = specialize_at_node(&h, *m);
        if &at != jd {
            return Err(DahaError::Stabilization(format!("H(a = −t^{}) differs from JD^GL{m}", a_node(*m))));
        }
    }
    Ok(DahaSuper { h, nodes, held_out })
}

/// H(q, t, a = −t^{a_node(m)}).
pub fn specialize_at_node(h: &LaurentQTA, m: usize) -> LaurentQTA {
    h.specialize(&[(Var::A, LaurentQTA::term(-1, 0, 2 * a_node(m), 0))]).expect("integral a-exponents")
}
