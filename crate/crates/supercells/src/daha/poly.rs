//! The polynomial representation 𝒳 = ℂ_{q,t}[X₁^{±1}, …, X_n^{±1}].
//!
//! Indices follow the usual notation: `T(i)` for 1 ≤ i < n, `X(j)`, `Y(j)`
//! for 1 ≤ j ≤ n. The simple roots are α_i = ε_i − ε_{i+1}, so
//! X_{α_i} = X_i X_{i+1}^{−1}.

use super::coeff::Coeff;
use crate::exactalg::RatFunQT;
use std::collections::BTreeMap;
use std::fmt;

pub type Weight = Vec<i32>;

#[derive(Clone, PartialEq)]
pub struct XPoly<C> {
    n: usize,
    terms: BTreeMap<Weight, C>,
}

impl<C: Coeff> XPoly<C> {
    pub fn zero(n: usize) -> Self {
        XPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(vec![0; n], C::one())
    }

    pub fn monomial(b: Weight, c: C) -> Self {
        let n = b.len();
        let mut p = Self::zero(n);
        p.add_term(b, c);
        p
    }

    /// X_j (1-based).
    pub fn x(n: usize, j: usize) -> Self {
        let mut b = vec![0; n];
        b[j - 1] = 1;
        Self::monomial(b, C::one())
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Weight, C)>) -> Self {
        let mut p = Self::zero(n);
        for (b, c) in terms {
            p.add_term(b, c);
        }
        p
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, b: &[i32]) -> C {
        self.terms.get(b).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, b: Weight, c: C) {
        assert_eq!(b.len(), self.n, "weight of the wrong length");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(e) => {
                let s = e.add(&c);
                if s.is_zero() {
                    self.terms.remove(&b);
                } else {
                    *e = s;
                }
            }
            None => {
                self.terms.insert(b, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(b.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        let minus = C::monomial(-1, 0, 0);
        for (b, c) in &other.terms {
            out.add_term(b.clone(), c.mul(&minus));
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        XPoly { n: self.n, terms: self.terms.iter().map(|(b, x)| (b.clone(), x.mul(c))).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (b1, c1) in &self.terms {
            for (b2, c2) in &other.terms {
                let b: Weight = b1.iter().zip(b2).map(|(x, y)| x + y).collect();
                out.add_term(b, c1.mul(c2));
            }
        }
        out
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> XPoly<D> {
        let mut out = XPoly::zero(self.n);
        for (b, c) in &self.terms {
            out.add_term(b.clone(), f(c));
        }
        out
    }

    pub fn to_ratfun(&self) -> XPoly<RatFunQT> {
        self.map_coeffs(|c| c.to_ratfun())
    }

    /// Multiplication by X_j^e.
    pub fn mul_x(&self, j: usize, e: i32) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(b, c)| {
                let mut b = b.clone();
                b[j - 1] += e;
                (b, c.clone())
            })
            .collect();
        XPoly { n: self.n, terms }
    }

    /// Multiplication by X^c.
    pub fn mul_x_weight(&self, c: &[i32]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(b, x)| (b.iter().zip(c).map(|(u, v)| u + v).collect(), x.clone()))
            .collect();
        XPoly { n: self.n, terms }
    }

    /// Demazure–Lusztig operator
    /// T_i = t^{1/2} s_i + (t^{1/2} − t^{−1/2}) (X_{α_i} − 1)^{−1} (s_i − 1),
    /// or its inverse T_i − (t^{1/2} − t^{−1/2}).
    pub fn apply_t(&self, i: usize, inverse: bool) -> Self {
        assert!(i >= 1 && i < self.n, "T_{i} out of range for n = {}", self.n);
        let (a, c) = (i - 1, i);
        let th = C::monomial(1, 0, 1);
        let diff = C::monomial(1, 0, 1).sub(&C::monomial(1, 0, -1));
        let neg_diff = C::monomial(-1, 0, 1).add(&C::monomial(1, 0, -1));
        let mut out = Self::zero(self.n);
        for (b, x) in &self.terms {
            let mut sb = b.clone();
            sb.swap(a, c);
            out.add_term(sb, x.mul(&th));
            let k = b[a] - b[c];
            let xd = x.mul(&diff);
            // (u^{−k} − 1)/(u − 1) with u = X_{α_i}
            if k > 0 {
                let xnd = x.mul(&neg_diff);
                for m in 1..=k {
                    let mut e = b.clone();
                    e[a] -= m;
                    e[c] += m;
                    out.add_term(e, xnd.clone());
                }
            } else if k < 0 {
                for m in 0..-k {
                    let mut e = b.clone();
                    e[a] += m;
                    e[c] -= m;
                    out.add_term(e, xd.clone());
                }
            }
            if inverse {
                out.add_term(b.clone(), x.mul(&neg_diff));
            }
        }
        out
    }

    /// π: X_i ↦ X_{i+1} (i < n), X_n ↦ q^{−1} X_1; π(1) = 1.
    pub fn apply_pi(&self, inverse: bool) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for (b, x) in &self.terms {
            let mut e = b.clone();
            let qpow = if inverse {
                e.rotate_left(1);
                b[0]
            } else {
                e.rotate_right(1);
                -b[n - 1]
            };
            out.add_term(e, x.mul(&C::monomial(1, 2 * qpow, 0)));
        }
        out
    }

    /// Y_j = T_{j−1}^{−1} ⋯ T_1^{−1} π T_{n−1} ⋯ T_j, or its inverse.
    pub fn apply_y(&self, j: usize, inverse: bool) -> Self {
        let n = self.n;
        assert!(j >= 1 && j <= n, "Y_{j} out of range for n = {n}");
        let mut f = self.clone();
        if inverse {
            for i in (1..j).rev() {
                f = f.apply_t(i, false);
            }
            f = f.apply_pi(true);
            for i in (j..n).rev() {
                f = f.apply_t(i, true);
            }
        } else {
            for i in j..n {
                f = f.apply_t(i, false);
            }
            f = f.apply_pi(false);
            for i in 1..j {
                f = f.apply_t(i, true);
            }
        }
        f
    }

    /// Y^c = Π Y_j^{c_j} (the Y_j commute).
    pub fn apply_y_weight(&self, c: &[i32]) -> Self {
        let mut f = self.clone();
        for (j, &e) in c.iter().enumerate() {
            for _ in 0..e.unsigned_abs() {
                f = f.apply_y(j + 1, e < 0);
            }
        }
        f
    }

    /// Substitute X_b ↦ t^{sign·(ρ,b)} with (ρ, ε_i) = (n − 2i + 1)/2.
    pub fn evaluate_at_rho(&self, sign: i32) -> C {
        let n = self.n as i32;
        let mut acc = C::zero();
        for (b, x) in &self.terms {
            let t2: i32 = b.iter().enumerate().map(|(i, &e)| e * (n - 2 * i as i32 - 1)).sum();
            acc = acc.add(&x.mul(&C::monomial(1, 0, sign * t2)));
        }
        acc
    }
}

impl<C: Coeff> fmt::Debug for XPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (b, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c:?})·X^{b:?}")?;
        }
        Ok(())
    }
}
