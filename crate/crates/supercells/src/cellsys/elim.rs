//! Straightforward elimination of λ-variables.

use crate::exactalg::{Int, Mono, MultiPoly, VarId};

/// What is left after eliminating every variable that occurs linearly with
/// a pivot coefficient in some equation.
#[derive(Clone, Debug)]
pub struct ResidualSystem {
    /// Number of λ-variables before elimination.
    pub total_vars: usize,
    /// Variables solved for, in elimination order.
    pub eliminated: Vec<VarId>,
    /// Remaining nonzero equations, primitive and with positive leading coefficient.
    pub equations: Vec<MultiPoly>,
    /// A nonzero constant met during elimination: the system has no points.
    pub inconsistent: Option<Int>,
}

impl ResidualSystem {
    pub fn remaining_vars(&self) -> usize {
        self.total_vars - self.eliminated.len()
    }

    /// Remaining variables minus remaining equations.
    pub fn potential_dim(&self) -> i64 {
        self.remaining_vars() as i64 - self.equations.len() as i64
    }

    /// Variables that still occur in some residual equation.
    pub fn bound_vars(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self.equations.iter().flat_map(|e| e.variables()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Remaining variables that occur in no equation.
    pub fn free_vars(&self) -> usize {
        self.remaining_vars() - self.bound_vars().len()
    }

    pub fn is_solved(&self) -> bool {
        self.equations.is_empty() && self.inconsistent.is_none()
    }
}

fn normalize(e: MultiPoly) -> MultiPoly {
    if e.as_constant().is_some() {
        return e;
    }
    let g = e.content();
    if g.is_zero() || g.is_one() && !e.terms()[0].1.is_negative() {
        return e;
    }
    let lead_neg = e.terms()[0].1.is_negative();
    let g = if lead_neg { -g } else { g };
    MultiPoly::from_terms(e.terms().iter().map(|(m, c)| (m.clone(), c.div_exact(&g))))
}

/// Is `e = c·m·k` for a constant c and a monomial m? Such an equation adds
/// nothing once `k = 0` is imposed.
fn is_monomial_multiple(e: &MultiPoly, k: &MultiPoly) -> bool {
    if e.len() != k.len() || k.is_zero() {
        return false;
    }
    let (m0, c0) = &e.terms()[0];
    let (k0, d0) = &k.terms()[0];
    let Some(m) = m0.divide(k0) else { return false };
    let scaled = k.mul_mono(&m);
    // e·d0 = scaled·c0 termwise.
    let lhs = e.scale(d0);
    let rhs = scaled.scale(c0);
    lhs == rhs
}

/// Drop equations of the form `a·e_j = b·e_i + m·e_k` (a, b constants, m a
/// monomial), longest first.
fn drop_combinations(eqs: &mut Vec<MultiPoly>) {
    let mut j = eqs.len();
    while j > 0 {
        j -= 1;
        let mut redundant = false;
        'outer: for i in 0..eqs.len() {
            if i == j {
                continue;
            }
            let (ej, ei) = (&eqs[j], &eqs[i]);
            let mut ratios: Vec<(Int, Int)> = Vec::new();
            for (m, c) in ej.terms() {
                if let Ok(pos) = ei.terms().binary_search_by(|(x, _)| x.cmp(m)) {
                    let pair = (ei.terms()[pos].1.clone(), c.clone());
                    if !ratios.iter().any(|(a, b)| a * &pair.1 == b * &pair.0) {
                        ratios.push(pair);
                    }
                }
            }
            for (a, b) in ratios {
                let d = ej.scale(&a).add_scaled(ei, &-&b);
                if d.is_zero() {
                    redundant = true;
                    break 'outer;
                }
                if eqs.iter().enumerate().any(|(k, ek)| k != j && is_monomial_multiple(&d, ek)) {
                    redundant = true;
                    break 'outer;
                }
            }
        }
        if redundant {
            eqs.remove(j);
        }
    }
}

/// Replace `v` by `−rest / c` and clear the denominator: every equation is
/// multiplied by `c^d`, d its degree in `v`.
fn substitute_scaled(e: &MultiPoly, v: VarId, c: &Int, powers: &mut Vec<MultiPoly>) -> MultiPoly {
    if !e.contains_var(v) {
        return e.clone();
    }
    let mut parts: Vec<Vec<(Mono, Int)>> = Vec::new();
    for (m, k) in e.terms() {
        let (stripped, d) = m.split_var(v);
        let d = d as usize;
        if parts.len() <= d {
            parts.resize(d + 1, Vec::new());
        }
        parts[d].push((stripped, k.clone()));
    }
    let top = parts.len() - 1;
    let mut acc = MultiPoly::zero();
    for (d, group) in parts.into_iter().enumerate() {
        if group.is_empty() {
            continue;
        }
        while powers.len() <= d {
            let next = powers.last().unwrap().mul(&powers[1]);
            powers.push(next);
        }
        let scale = c.pow((top - d) as u32);
        let coeff = MultiPoly::from_terms(group.into_iter().map(|(m, k)| (m, &k * &scale)));
        acc = acc.add(&coeff.mul(&powers[d]));
    }
    acc
}

/// Which constant coefficients may be divided by during elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Pivot {
    /// Only ±1, so a stray 2 survives into the residual system.
    #[default]
    Unit,
    /// Any nonzero integer; denominators are cleared after substitution.
    AnyConstant,
}

/// [`eliminate_with`] using ±1 pivots only.
pub fn eliminate(equations: Vec<MultiPoly>, total_vars: usize) -> ResidualSystem {
    eliminate_with(equations, total_vars, Pivot::Unit)
}

/// Repeatedly pick the lowest variable that occurs only as the monomial `v`
/// with an admissible constant coefficient in some equation, solve for it
/// and substitute.
pub fn eliminate_with(equations: Vec<MultiPoly>, total_vars: usize, pivot: Pivot) -> ResidualSystem {
    let mut eqs: Vec<MultiPoly> = equations.into_iter().filter(|e| !e.is_zero()).map(normalize).collect();
    let mut eliminated = Vec::new();
    loop {
        if let Some(c) = eqs.iter().find_map(|e| e.as_constant().filter(|c| !c.is_zero())) {
            return ResidualSystem { total_vars, eliminated, equations: eqs, inconsistent: Some(c) };
        }
        let mut best: Option<(VarId, usize, usize)> = None;
        for (i, e) in eqs.iter().enumerate() {
            for v in e.variables() {
                if best.is_some_and(|(bv, _, _)| v > bv) {
                    break;
                }
                let ok = match e.linear_constant_coeff(v) {
                    None => false,
                    Some(c) => pivot == Pivot::AnyConstant || c.is_unit(),
                };
                if ok {
                    let better = match best {
                        None => true,
                        Some((bv, _, len)) => v < bv || e.len() < len,
                    };
                    if better {
                        best = Some((v, i, e.len()));
                    }
                }
            }
        }
        let Some((v, i, _)) = best else { break };
        let e = eqs.swap_remove(i);
        let c = e.linear_constant_coeff(v).unwrap();
        // e = c·v + rest = 0, so v = −rest / c.
        let rest = e.add_scaled(&MultiPoly::var(v), &-&c);
        let mut powers = vec![MultiPoly::constant(1), rest.neg()];
        eqs = eqs
            .into_iter()
            .map(|x| substitute_scaled(&x, v, &c, &mut powers))
            .filter(|x| !x.is_zero())
            .map(normalize)
            .collect();
        eliminated.push(v);
    }
    eqs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.terms().cmp(b.terms())));
    eqs.dedup();
    let mut kept: Vec<MultiPoly> = Vec::new();
    for e in eqs {
        if !kept.iter().any(|k| is_monomial_multiple(&e, k)) {
            kept.push(e);
        }
    }
    drop_combinations(&mut kept);
    ResidualSystem { total_vars, eliminated, equations: kept, inconsistent: None }
}
