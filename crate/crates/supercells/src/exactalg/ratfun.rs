//! Rational functions in `Q = q^{1/2}` and `T = t^{1/2}` with exact gcd reduction.
//!
//! Polynomials in two variables are stored densely as polynomials in `T`
//! whose coefficients are polynomials in `Q` over ℤ. Greatest common
//! divisors use the primitive polynomial remainder sequence, recursively.

use super::int::Int;
use super::laurent::{Exp, LaurentQTA};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Dense univariate polynomial over ℤ, lowest degree first, trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UPoly(pub Vec<Int>);

impl UPoly {
    pub fn zero() -> UPoly {
        UPoly(Vec::new())
    }

    pub fn constant(c: Int) -> UPoly {
        let mut p = UPoly(vec![c]);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.0.last(), Some(c) if c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn lead(&self) -> Int {
        self.0.last().cloned().unwrap_or(Int::ZERO)
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i).cloned().unwrap_or_default();
            let b = o.0.get(i).cloned().unwrap_or_default();
            v.push(&a + &b);
        }
        let mut p = UPoly(v);
        p.trim();
        p
    }

    pub fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![Int::ZERO; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += &(a * b);
            }
        }
        let mut p = UPoly(v);
        p.trim();
        p
    }

    pub fn scale(&self, k: &Int) -> UPoly {
        let mut p = UPoly(self.0.iter().map(|c| c * k).collect());
        p.trim();
        p
    }

    fn shift(&self, k: usize) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![Int::ZERO; k];
        v.extend(self.0.iter().cloned());
        UPoly(v)
    }

    pub fn content(&self) -> Int {
        let mut g = Int::ZERO;
        for c in &self.0 {
            g = g.gcd(c);
        }
        g
    }

    pub fn div_int(&self, k: &Int) -> UPoly {
        UPoly(self.0.iter().map(|c| c.div_exact(k)).collect())
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut c = self.content();
        if self.lead().is_negative() {
            c = -c;
        }
        self.div_int(&c)
    }

    fn pseudo_rem(&self, d: &UPoly) -> UPoly {
        let mut r = self.clone();
        let ld = d.lead();
        while !r.is_zero() && r.degree() >= d.degree() {
            let lr = r.lead();
            let k = (r.degree() - d.degree()) as usize;
            r = r.scale(&ld).sub(&d.shift(k).scale(&lr));
        }
        r
    }

    /// Exact quotient; `None` if `d` does not divide `self` over ℤ.
    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        assert!(!d.is_zero());
        let mut r = self.clone();
        let mut q = vec![Int::ZERO; (self.degree() - d.degree() + 1).max(0) as usize];
        let ld = d.lead();
        while !r.is_zero() {
            if r.degree() < d.degree() {
                return None;
            }
            let lr = r.lead();
            if !ld.divides(&lr) {
                return None;
            }
            let c = lr.div_exact(&ld);
            let k = (r.degree() - d.degree()) as usize;
            r = r.sub(&d.shift(k).scale(&c));
            q[k] = c;
        }
        let mut q = UPoly(q);
        q.trim();
        Some(q)
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        if self.is_zero() {
            return o.primitive_with_content();
        }
        if o.is_zero() {
            return self.primitive_with_content();
        }
        let c = self.content().gcd(&o.content());
        let (mut a, mut b) = (self.primitive(), o.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive().scale(&c)
    }

    fn primitive_with_content(&self) -> UPoly {
        if !self.is_zero() && self.lead().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }
}

/// Polynomial in `T` with coefficients in ℤ[Q], lowest degree first, trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BiPoly(pub Vec<UPoly>);

impl BiPoly {
    pub fn zero() -> BiPoly {
        BiPoly(Vec::new())
    }

    pub fn one() -> BiPoly {
        BiPoly(vec![UPoly::constant(Int::ONE)])
    }

    fn trim(&mut self) {
        while matches!(self.0.last(), Some(c) if c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> isize {
        self.0.len() as isize - 1
    }

    fn lead(&self) -> UPoly {
        self.0.last().cloned().unwrap_or_default()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].0.len() == 1 && self.0[0].0[0].is_one()
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        let n = self.0.len().max(o.0.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            match (self.0.get(i), o.0.get(i)) {
                (Some(a), Some(b)) => v.push(a.add(b)),
                (Some(a), None) => v.push(a.clone()),
                (None, Some(b)) => v.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        let mut p = BiPoly(v);
        p.trim();
        p
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly(self.0.iter().map(|c| c.neg()).collect())
    }

    pub fn sub(&self, o: &BiPoly) -> BiPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &BiPoly) -> BiPoly {
        if self.is_zero() || o.is_zero() {
            return BiPoly::zero();
        }
        let mut v = vec![UPoly::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        let mut p = BiPoly(v);
        p.trim();
        p
    }

    fn scale(&self, k: &UPoly) -> BiPoly {
        let mut p = BiPoly(self.0.iter().map(|c| c.mul(k)).collect());
        p.trim();
        p
    }

    fn shift(&self, k: usize) -> BiPoly {
        if self.is_zero() {
            return BiPoly::zero();
        }
        let mut v = vec![UPoly::zero(); k];
        v.extend(self.0.iter().cloned());
        BiPoly(v)
    }

    /// Content in ℤ[Q], with positive leading coefficient.
    fn content(&self) -> UPoly {
        let mut g = UPoly::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.degree() == 0 && g.lead().is_one() {
                break;
            }
        }
        g
    }

    fn div_upoly(&self, d: &UPoly) -> BiPoly {
        BiPoly(self.0.iter().map(|c| c.div_exact(d).expect("inexact content division")).collect())
    }

    fn primitive(&self) -> BiPoly {
        if self.is_zero() {
            return BiPoly::zero();
        }
        let mut c = self.content();
        if self.lead().lead().is_negative() {
            c = c.neg();
        }
        self.div_upoly(&c)
    }

    fn pseudo_rem(&self, d: &BiPoly) -> BiPoly {
        let mut r = self.clone();
        let ld = d.lead();
        while !r.is_zero() && r.degree() >= d.degree() {
            let lr = r.lead();
            let k = (r.degree() - d.degree()) as usize;
            r = r.scale(&ld).sub(&d.shift(k).scale(&lr));
        }
        r
    }

    pub fn div_exact(&self, d: &BiPoly) -> Option<BiPoly> {
        assert!(!d.is_zero());
        let mut r = self.clone();
        let mut q = vec![UPoly::zero(); (self.degree() - d.degree() + 1).max(0) as usize];
        let ld = d.lead();
        while !r.is_zero() {
            if r.degree() < d.degree() {
                return None;
            }
            let c = r.lead().div_exact(&ld)?;
            let k = (r.degree() - d.degree()) as usize;
            r = r.sub(&d.shift(k).scale(&c));
            q[k] = c;
        }
        let mut q = BiPoly(q);
        q.trim();
        Some(q)
    }

    pub fn gcd(&self, o: &BiPoly) -> BiPoly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let c = self.content().gcd(&o.content());
        let (mut a, mut b) = (self.primitive(), o.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive().scale(&c)
    }

    /// Largest `(i, j)` with `Q^i T^j` dividing the polynomial.
    fn monomial_valuation(&self) -> (usize, usize) {
        let tj = self.0.iter().position(|c| !c.is_zero()).unwrap_or(0);
        let qi = self
            .0
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.0.iter().position(|x| !x.is_zero()).unwrap())
            .min()
            .unwrap_or(0);
        (qi, tj)
    }

    fn unshift(&self, qi: usize, tj: usize) -> BiPoly {
        let mut p = BiPoly(self.0[tj..].iter().map(|c| if c.is_zero() { UPoly::zero() } else { UPoly(c.0[qi..].to_vec()) }).collect());
        p.trim();
        p
    }

    /// Sign of the leading coefficient (highest T power, then highest Q power).
    fn lead_sign(&self) -> i32 {
        self.lead().lead().signum()
    }

    fn to_laurent(&self, q_shift: i32, t_shift: i32) -> LaurentQTA {
        let mut out = LaurentQTA::zero();
        for (j, c) in self.0.iter().enumerate() {
            for (i, x) in c.0.iter().enumerate() {
                out.add_term(Exp::new(i as i32 + q_shift, j as i32 + t_shift, 0), x);
            }
        }
        out
    }

    fn eval(&self, qh: &BigRational, th: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        let mut tp = BigRational::one();
        for c in &self.0 {
            let mut inner = BigRational::zero();
            let mut qp = BigRational::one();
            for x in &c.0 {
                inner += BigRational::from_integer(x.to_big()) * &qp;
                qp *= qh;
            }
            acc += inner * &tp;
            tp *= th;
        }
        acc
    }
}

/// Element of ℚ(q^{1/2}, t^{1/2}) in canonical form
/// `Q^{sq} T^{st} · num / den`, where `num`, `den` are coprime polynomials
/// not divisible by `Q` or `T`, the contents are coprime and `den` has a
/// positive leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunQT {
    sq: i32,
    st: i32,
    num: BiPoly,
    den: BiPoly,
}

impl RatFunQT {
    pub fn zero() -> Self {
        RatFunQT { sq: 0, st: 0, num: BiPoly::zero(), den: BiPoly::one() }
    }

    pub fn one() -> Self {
        RatFunQT { sq: 0, st: 0, num: BiPoly::one(), den: BiPoly::one() }
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c · q^(q2/2) t^(t2/2)`.
    pub fn monomial(c: i64, q2: i32, t2: i32) -> Self {
        if c == 0 {
            return Self::zero();
        }
        RatFunQT { sq: q2, st: t2, num: BiPoly(vec![UPoly::constant(Int::from(c))]), den: BiPoly::one() }
    }

    pub fn from_laurent(f: &LaurentQTA) -> Self {
        assert!(f.max_a_degree().unwrap_or(0) == 0, "a-dependent coefficient");
        if f.is_zero() {
            return Self::zero();
        }
        let mq = f.terms().map(|(e, _)| e.q2).min().unwrap();
        let mt = f.terms().map(|(e, _)| e.t2).min().unwrap();
        let maxt = f.terms().map(|(e, _)| e.t2).max().unwrap();
        let mut rows = vec![UPoly::zero(); (maxt - mt + 1) as usize];
        for (e, c) in f.terms() {
            let row = &mut rows[(e.t2 - mt) as usize];
            let i = (e.q2 - mq) as usize;
            if row.0.len() <= i {
                row.0.resize(i + 1, Int::ZERO);
            }
            row.0[i] = c.clone();
        }
        let mut num = BiPoly(rows);
        num.trim();
        Self::reduce(mq, mt, num, BiPoly::one())
    }

    fn reduce(sq: i32, st: i32, num: BiPoly, den: BiPoly) -> Self {
        assert!(!den.is_zero(), "division by zero");
        if num.is_zero() {
            return Self::zero();
        }
        let (nq, nt) = num.monomial_valuation();
        let (dq, dt) = den.monomial_valuation();
        let mut num = num.unshift(nq, nt);
        let mut den = den.unshift(dq, dt);
        let sq = sq + nq as i32 - dq as i32;
        let st = st + nt as i32 - dt as i32;
        if !den.is_one() {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd does not divide numerator");
                den = den.div_exact(&g).expect("gcd does not divide denominator");
            }
        }
        if den.lead_sign() < 0 {
            num = num.neg();
            den = den.neg();
        }
        RatFunQT { sq, st, num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_laurent(&self) -> Option<LaurentQTA> {
        self.is_laurent().then(|| self.num.to_laurent(self.sq, self.st))
    }

    pub fn numerator(&self) -> LaurentQTA {
        self.num.to_laurent(self.sq, self.st)
    }

    pub fn denominator(&self) -> LaurentQTA {
        self.den.to_laurent(0, 0)
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::reduce(-self.sq, -self.st, self.den.clone(), self.num.clone())
    }

    /// Exact value at `q^{1/2} = qh`, `t^{1/2} = th`; `None` at a pole.
    pub fn eval_half(&self, qh: &BigRational, th: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(qh, th);
        if d.is_zero() {
            return None;
        }
        let mut v = self.num.eval(qh, th) / d;
        let pw = |x: &BigRational, k: i32| -> Option<BigRational> {
            if k >= 0 {
                Some(num_traits::pow(x.clone(), k as usize))
            } else if x.is_zero() {
                None
            } else {
                Some(num_traits::pow(x.recip(), (-k) as usize))
            }
        };
        v *= pw(qh, self.sq)?;
        v *= pw(th, self.st)?;
        Some(v)
    }

    fn combine(a: &Self, b: &Self, subtract: bool) -> Self {
        if b.is_zero() {
            return a.clone();
        }
        if a.is_zero() {
            return if subtract { -b } else { b.clone() };
        }
        let sq = a.sq.min(b.sq);
        let st = a.st.min(b.st);
        let mono = |dq: i32, dt: i32| -> BiPoly {
            let mut row = vec![Int::ZERO; dq as usize + 1];
            row[dq as usize] = Int::ONE;
            let mut v = vec![UPoly::zero(); dt as usize];
            v.push(UPoly(row));
            BiPoly(v)
        };
        let an = a.num.mul(&mono(a.sq - sq, a.st - st));
        let bn = b.num.mul(&mono(b.sq - sq, b.st - st));
        let bn = if subtract { bn.neg() } else { bn };
        if a.den == b.den {
            return Self::reduce(sq, st, an.add(&bn), a.den.clone());
        }
        let num = an.mul(&b.den).add(&bn.mul(&a.den));
        Self::reduce(sq, st, num, a.den.mul(&b.den))
    }
}

impl<'a> Add<&'a RatFunQT> for &'a RatFunQT {
    type Output = RatFunQT;
    fn add(self, rhs: &RatFunQT) -> RatFunQT {
        RatFunQT::combine(self, rhs, false)
    }
}

impl<'a> Sub<&'a RatFunQT> for &'a RatFunQT {
    type Output = RatFunQT;
    fn sub(self, rhs: &RatFunQT) -> RatFunQT {
        RatFunQT::combine(self, rhs, true)
    }
}

impl<'a> Mul<&'a RatFunQT> for &'a RatFunQT {
    type Output = RatFunQT;
    fn mul(self, rhs: &RatFunQT) -> RatFunQT {
        if self.is_zero() || rhs.is_zero() {
            return RatFunQT::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunQT::reduce(self.sq + rhs.sq, self.st + rhs.st, self.num.mul(&rhs.num), BiPoly::one());
        }
        // cross-cancel first to keep intermediate sizes down
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        RatFunQT::reduce(self.sq + rhs.sq, self.st + rhs.st, n1.mul(&n2), d1.mul(&d2))
    }
}

impl<'a> Div<&'a RatFunQT> for &'a RatFunQT {
    type Output = RatFunQT;
    fn div(self, rhs: &RatFunQT) -> RatFunQT {
        self * &rhs.inv()
    }
}

impl Neg for &RatFunQT {
    type Output = RatFunQT;
    fn neg(self) -> RatFunQT {
        RatFunQT { sq: self.sq, st: self.st, num: self.num.neg(), den: self.den.clone() }
    }
}

impl fmt::Debug for RatFunQT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "({}) / ({})", self.numerator(), self.denominator())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lq(c: i64, q2: i32, t2: i32) -> RatFunQT {
        RatFunQT::monomial(c, q2, t2)
    }

    #[test]
    fn cancellation() {
        // (1 - t) / (1 - t^2) = 1 / (1 + t)
        let one = RatFunQT::one();
        let t = lq(1, 0, 2);
        let a = &one - &t;
        let b = &one - &(&t * &t);
        let r = &a / &b;
        let expect = &one / &(&one + &t);
        assert_eq!(r, expect);
        assert_eq!(&(&r * &b) / &a, one);
    }

    #[test]
    fn laurent_roundtrip() {
        let f = LaurentQTA::from_terms(vec![(Exp::new(-1, 3, 0), Int::from(2)), (Exp::new(4, -2, 0), Int::from(-5))]);
        let r = RatFunQT::from_laurent(&f);
        assert!(r.is_laurent());
        assert_eq!(r.to_laurent().unwrap(), f);
    }

    #[test]
    fn bivariate_gcd() {
        // (q - t)(1 + q t) and (q - t)(2 + q)
        let q = lq(1, 2, 0);
        let t = lq(1, 0, 2);
        let one = RatFunQT::one();
        let common = &q - &t;
        let a = &common * &(&one + &(&q * &t));
        let b = &common * &(&(&one + &one) + &q);
        let r = &a / &b;
        let expect = &(&one + &(&q * &t)) / &(&(&one + &one) + &q);
        assert_eq!(r, expect);
    }
}
