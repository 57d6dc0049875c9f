//! Nonsymmetric and symmetric Macdonald polynomials of GL_n.

use super::coeff::Coeff;
use super::poly::{Weight, XPoly};
use super::DahaError;
use crate::exactalg::{LaurentQTA, RatFunQT};
use std::collections::{BTreeMap, BTreeSet};

/// E_b: the joint eigenvector of Y_1, …, Y_n with X_b-coefficient 1.
///
/// The Y_j preserve the span of the monomials reachable from X_b, so the
/// eigenproblem is solved there by exact elimination.
pub fn macdonald_e(b: &[i32]) -> Result<XPoly<RatFunQT>, DahaError> {
    let n = b.len();
    let mut span: BTreeSet<Weight> = BTreeSet::new();
    let mut queue = vec![b.to_vec()];
    let mut images: BTreeMap<(Weight, usize), XPoly<LaurentQTA>> = BTreeMap::new();
    span.insert(b.to_vec());
    while let Some(m) = queue.pop() {
        for j in 1..=n {
            let img = XPoly::<LaurentQTA>::monomial(m.clone(), LaurentQTA::one()).apply_y(j, false);
            for (c, _) in img.terms() {
                if span.insert(c.clone()) {
                    queue.push(c.clone());
                }
            }
            images.insert((m.clone(), j), img);
        }
    }
    let basis: Vec<Weight> = span.into_iter().collect();
    let index: BTreeMap<&Weight, usize> = basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let bi = index[&b.to_vec()];

    // Rows of (Y_j − λ_j)·v = 0 with v_b = 1 moved to the right-hand side.
    let dim = basis.len();
    let mut rows: Vec<Vec<RatFunQT>> = Vec::new();
    for j in 1..=n {
        let lambda = images[&(b.to_vec(), j)].coeff(b).to_ratfun();
        let mut block = vec![vec![RatFunQT::zero(); dim]; dim];
        for (col, m) in basis.iter().enumerate() {
            for (c, x) in images[&(m.clone(), j)].terms() {
                block[index[c]][col] = x.to_ratfun();
            }
            block[col][col] = &block[col][col] - &lambda;
        }
        rows.extend(block);
    }
    let unknowns: Vec<usize> = (0..dim).filter(|&i| i != bi).collect();
    let mut system: Vec<Vec<RatFunQT>> = rows
        .iter()
        .map(|r| {
            let mut row: Vec<RatFunQT> = unknowns.iter().map(|&i| r[i].clone()).collect();
            row.push(-&r[bi]);
            row
        })
        .collect();
    let sol = solve(&mut system, unknowns.len())?;
    let mut e = XPoly::zero(n);
    e.add_term(b.to_vec(), RatFunQT::one());
    for (k, &i) in unknowns.iter().enumerate() {
        e.add_term(basis[i].clone(), sol[k].clone());
    }
    Ok(e)
}

/// Gaussian elimination on an augmented matrix with a unique solution.
fn solve(m: &mut [Vec<RatFunQT>], vars: usize) -> Result<Vec<RatFunQT>, DahaError> {
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..vars {
        let Some(r) = (pivot_row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            return Err(DahaError::Degenerate(format!("free eigenvector coordinate {col}")));
        };
        m.swap(pivot_row, r);
        let inv = m[pivot_row][col].inv();
        for x in m[pivot_row].iter_mut() {
            *x = &*x * &inv;
        }
        let prow = m[pivot_row].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    if !p.is_zero() {
                        *x = &*x - &(&f * p);
                    }
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|row| !row[vars].is_zero()) {
        return Err(DahaError::Degenerate("eigenvector equations are inconsistent".into()));
    }
    Ok(pivots.iter().map(|&r| m[r][vars].clone()).collect())
}

/// Permutations of {0..n−1} with a reduced word each, by increasing length.
fn reduced_words(n: usize) -> Vec<Vec<usize>> {
    let mut seen: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let id: Vec<usize> = (0..n).collect();
    seen.insert(id.clone(), Vec::new());
    let mut layer = vec![id];
    let mut out = vec![Vec::new()];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for w in &layer {
            for i in 0..n.saturating_sub(1) {
                // s_i·w raises the length iff w^{−1}(i) < w^{−1}(i+1)
                let pos_i = w.iter().position(|&x| x == i).unwrap();
                let pos_j = w.iter().position(|&x| x == i + 1).unwrap();
                if pos_i > pos_j {
                    continue;
                }
                let sw: Vec<usize> = w.iter().map(|&x| if x == i { i + 1 } else if x == i + 1 { i } else { x }).collect();
                if !seen.contains_key(&sw) {
                    let mut word = vec![i + 1];
                    word.extend(&seen[w]);
                    seen.insert(sw.clone(), word.clone());
                    out.push(word);
                    next.push(sw);
                }
            }
        }
        layer = next;
    }
    out
}

/// The t-symmetrizer (Σ_w t^{ℓ(w)})^{−1} Σ_w t^{ℓ(w)/2} T_w.
pub fn symmetrize(f: &XPoly<RatFunQT>) -> XPoly<RatFunQT> {
    let n = f.rank();
    let mut acc = XPoly::zero(n);
    let mut norm = RatFunQT::zero();
    for word in reduced_words(n) {
        let l = word.len() as i32;
        let mut g = f.clone();
        for &i in word.iter().rev() {
            g = g.apply_t(i, false);
        }
        acc = acc.add(&g.scale(&RatFunQT::monomial(1, 0, l)));
        norm = &norm + &RatFunQT::monomial(1, 0, 2 * l);
    }
    acc.scale(&norm.inv())
}

pub fn is_dominant(b: &[i32]) -> bool {
    b.windows(2).all(|w| w[0] >= w[1])
}

/// P_b for dominant b, from the symmetrizer applied to E_b and scaled to
/// X_b-coefficient 1. Also returns the X_b-coefficient before scaling.
pub fn macdonald_p_with_lead(b: &[i32]) -> Result<(XPoly<RatFunQT>, RatFunQT), DahaError> {
    if !is_dominant(b) {
        return Err(DahaError::NotDominant(b.to_vec()));
    }
    let p = symmetrize(&macdonald_e(b)?);
    let lead = p.coeff(b);
    if lead.is_zero() {
        return Err(DahaError::Degenerate("symmetrization killed X_b".into()));
    }
    Ok((p.scale(&lead.inv()), lead))
}

pub fn macdonald_p(b: &[i32]) -> Result<XPoly<RatFunQT>, DahaError> {
    macdonald_p_with_lead(b).map(|(p, _)| p)
}

/// P_{ω_k} = Σ_{|S| = k} X_S for 0 ≤ k ≤ n.
pub fn column_p<C: Coeff>(n: usize, k: usize) -> XPoly<C> {
    let mut p = XPoly::zero(n);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == k {
            p.add_term((0..n).map(|i| (mask >> i & 1) as i32).collect(), C::one());
        }
    }
    p
}

/// f(t^{sign·ρ}).
pub fn evaluate_at_rho<C: Coeff>(f: &XPoly<C>, sign: i32) -> RatFunQT {
    f.evaluate_at_rho(sign).to_ratfun()
}

/// {f}_ev: X_j ↦ t^{−(ρ,ε_j)}.
pub fn coinvariant<C: Coeff>(f: &XPoly<C>) -> RatFunQT {
    evaluate_at_rho(f, -1)
}

/// t^{−(ρ,b)} Π_{α>0} Π_{j=0}^{(α,b)−1} (1 − q^j t X_α(t^ρ)) / (1 − q^j X_α(t^ρ)).
pub fn macdonald_eval_product(b: &[i32]) -> RatFunQT {
    let n = b.len() as i32;
    let rho_b: i32 = b.iter().enumerate().map(|(i, &e)| e * (n - 2 * i as i32 - 1)).sum();
    let mut acc = RatFunQT::monomial(1, 0, -rho_b);
    let one = RatFunQT::one();
    for i in 0..b.len() {
        for k in i + 1..b.len() {
            // α = ε_i − ε_k: (α, ρ) = k − i
            let ht = 2 * (k - i) as i32;
            for j in 0..(b[i] - b[k]).max(0) {
                let num = &one - &RatFunQT::monomial(1, 2 * j, ht + 2);
                let den = &one - &RatFunQT::monomial(1, 2 * j, ht);
                acc = &acc * &(&num / &den);
            }
        }
    }
    acc
}
