use super::int::Int;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// Exponent triple of a monomial `q^(q2/2) t^(t2/2) a^a`.
///
/// The derived ordering is the canonical term order `(a, t2, q2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Exp {
    pub a: u32,
    pub t2: i32,
    pub q2: i32,
}

impl Exp {
    pub fn new(q2: i32, t2: i32, a: u32) -> Exp {
        Exp { a, t2, q2 }
    }
}

impl Add for Exp {
    type Output = Exp;
    fn add(self, o: Exp) -> Exp {
        Exp { a: self.a + o.a, t2: self.t2 + o.t2, q2: self.q2 + o.q2 }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LaurentError {
    #[error("no a-constant part")]
    NoAConstantPart,
    #[error("fractional power of a bound value without exact representation")]
    InexactPower,
    #[error("negative power of a non-monomial binding")]
    NotInvertible,
    #[error("malformed polynomial: {0}")]
    Parse(String),
}

/// Laurent polynomial in `q^{1/2}`, `t^{1/2}` and a polynomial variable `a`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentQTA {
    terms: BTreeMap<Exp, Int>,
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    q2: i32,
    t2: i32,
    a: u32,
    c: String,
}

/// Which variable a specialization binds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Var {
    Q,
    T,
    A,
}

impl LaurentQTA {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Int::ONE, Exp::default())
    }

    pub fn constant(c: impl Into<Int>) -> Self {
        Self::monomial(c.into(), Exp::default())
    }

    pub fn monomial(c: Int, e: Exp) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentQTA { terms }
    }

    /// `c · q^(q2/2) t^(t2/2) a^a`.
    pub fn term(c: i64, q2: i32, t2: i32, a: u32) -> Self {
        Self::monomial(Int::from(c), Exp::new(q2, t2, a))
    }

    pub fn q() -> Self {
        Self::term(1, 2, 0, 0)
    }

    pub fn t() -> Self {
        Self::term(1, 0, 2, 0)
    }

    pub fn a() -> Self {
        Self::term(1, 0, 0, 1)
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Exp, Int)>) -> Self {
        let mut out = LaurentQTA::zero();
        for (e, c) in it {
            out.add_term(e, &c);
        }
        out
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

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Int)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: Exp) -> Int {
        self.terms.get(&e).cloned().unwrap_or(Int::ZERO)
    }

    pub fn add_term(&mut self, e: Exp, c: &Int) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &Int) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentQTA { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    pub fn shift(&self, by: Exp) -> Self {
        LaurentQTA { terms: self.terms.iter().map(|(e, x)| (*e + by, x.clone())).collect() }
    }

    /// Divide by the monomial `q^(q2/2) t^(t2/2)`.
    pub fn unshift_qt(&self, q2: i32, t2: i32) -> Self {
        LaurentQTA {
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (Exp { a: e.a, t2: e.t2 - t2, q2: e.q2 - q2 }, x.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The coefficient of `a^k`, as a polynomial in q and t.
    pub fn a_part(&self, k: u32) -> Self {
        LaurentQTA {
            terms: self.terms.iter().filter(|(e, _)| e.a == k).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    pub fn max_a_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.a).max()
    }

    /// Restriction to the terms with `a`-degree at most `k`.
    pub fn truncate_a(&self, k: u32) -> Self {
        LaurentQTA {
            terms: self.terms.iter().filter(|(e, _)| e.a <= k).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Divide by the lowest `(t2, q2)` monomial among the `a = 0` terms.
    pub fn tilde_normalize(&self) -> Result<Self, LaurentError> {
        let low = self
            .terms
            .keys()
            .filter(|e| e.a == 0)
            .min_by_key(|e| (e.t2, e.q2))
            .copied()
            .ok_or(LaurentError::NoAConstantPart)?;
        Ok(self.unshift_qt(low.q2, low.t2))
    }

    /// Substitute values for some of q, t, a.
    ///
    /// A variable carrying a half-integer exponent can only be bound to a
    /// monomial whose square root is exact; negative powers require a monomial.
    pub fn specialize(&self, bindings: &[(Var, LaurentQTA)]) -> Result<Self, LaurentError> {
        let find = |v: Var| bindings.iter().find(|(w, _)| *w == v).map(|(_, p)| p);
        let (bq, bt, ba) = (find(Var::Q), find(Var::T), find(Var::A));
        let mut cache: BTreeMap<(Var, i32), LaurentQTA> = BTreeMap::new();
        let mut out = LaurentQTA::zero();
        for (e, c) in &self.terms {
            let mut keep = Exp::default();
            let mut factor = LaurentQTA::constant(c.clone());
            for (var, doubled, b) in [(Var::Q, e.q2, bq), (Var::T, e.t2, bt), (Var::A, 2 * e.a as i32, ba)] {
                match b {
                    None => match var {
                        Var::Q => keep.q2 = doubled,
                        Var::T => keep.t2 = doubled,
                        Var::A => keep.a = (doubled / 2) as u32,
                    },
                    Some(val) => {
                        let p = match cache.get(&(var, doubled)) {
                            Some(p) => p.clone(),
                            None => {
                                let p = half_power(val, doubled)?;
                                cache.insert((var, doubled), p.clone());
                                p
                            }
                        };
                        factor = &factor * &p;
                    }
                }
            }
            for (e2, c2) in factor.shift(keep).terms {
                out.add_term(e2, &c2);
            }
        }
        Ok(out)
    }

    /// Exact numeric value at rational points; `None` for a half-integer
    /// exponent at a non-square point.
    pub fn evaluate(
        &self,
        q: &num_rational::BigRational,
        t: &num_rational::BigRational,
        a: &num_rational::BigRational,
    ) -> Option<num_rational::BigRational> {
        use num_rational::BigRational;
        use num_traits::{One, Zero};
        fn hp(x: &BigRational, d: i32) -> Option<BigRational> {
            let base = if d % 2 == 0 {
                x.clone()
            } else {
                let n = x.numer().sqrt();
                let m = x.denom().sqrt();
                if &(&n * &n) != x.numer() || &(&m * &m) != x.denom() {
                    return None;
                }
                BigRational::new(n, m)
            };
            let k = if d % 2 == 0 { d / 2 } else { d };
            if k >= 0 {
                Some(num_traits::pow(base, k as usize))
            } else {
                if base.is_zero() {
                    return None;
                }
                Some(num_traits::pow(base.recip(), (-k) as usize))
            }
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut v = BigRational::from_integer(c.to_big());
            v *= hp(q, e.q2)?;
            v *= hp(t, e.t2)?;
            let mut av = BigRational::one();
            for _ in 0..e.a {
                av *= a;
            }
            v *= av;
            acc += v;
        }
        Some(acc)
    }

    fn json_terms(&self) -> Vec<JsonTerm> {
        self.terms
            .iter()
            .map(|(e, c)| JsonTerm { q2: e.q2, t2: e.t2, a: e.a, c: c.to_string() })
            .collect()
    }

    /// JSON value; key order inside each term follows serde_json's map order.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.json_terms()).unwrap()
    }

    /// Canonical JSON text with keys in the order `q2, t2, a, c`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.json_terms()).unwrap()
    }

    pub fn from_json(s: &str) -> Result<Self, LaurentError> {
        let v: Vec<JsonTerm> = serde_json::from_str(s).map_err(|e| LaurentError::Parse(e.to_string()))?;
        Self::from_json_terms(v)
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self, LaurentError> {
        let v: Vec<JsonTerm> =
            serde_json::from_value(v.clone()).map_err(|e| LaurentError::Parse(e.to_string()))?;
        Self::from_json_terms(v)
    }

    fn from_json_terms(v: Vec<JsonTerm>) -> Result<Self, LaurentError> {
        let mut out = LaurentQTA::zero();
        for t in v {
            let c: Int = t.c.parse().map_err(|_| LaurentError::Parse(t.c.clone()))?;
            out.add_term(Exp::new(t.q2, t.t2, t.a), &c);
        }
        Ok(out)
    }

    /// Text rendering `c*q^(q2/2)*t^(t2/2)*a^k`, joined by `" + "`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(e, c)| format!("{c}*q^({}/2)*t^({}/2)*a^{}", e.q2, e.t2, e.a))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn half_power(val: &LaurentQTA, doubled: i32) -> Result<LaurentQTA, LaurentError> {
    if doubled == 0 {
        return Ok(LaurentQTA::one());
    }
    let base = if doubled % 2 == 0 {
        val.clone()
    } else {
        monomial_sqrt(val).ok_or(LaurentError::InexactPower)?
    };
    let k = if doubled % 2 == 0 { doubled / 2 } else { doubled };
    if k >= 0 {
        return Ok(base.pow(k as u32));
    }
    let inv = monomial_inverse(&base).ok_or(LaurentError::NotInvertible)?;
    Ok(inv.pow((-k) as u32))
}

fn monomial_sqrt(val: &LaurentQTA) -> Option<LaurentQTA> {
    if !val.is_monomial() {
        return None;
    }
    let (e, c) = val.terms.iter().next().unwrap();
    if e.q2 % 2 != 0 || e.t2 % 2 != 0 || e.a % 2 != 0 || c.is_negative() {
        return None;
    }
    let b = c.to_big();
    let r = b.sqrt();
    if &r * &r != b {
        return None;
    }
    Some(LaurentQTA::monomial(Int::from(r), Exp::new(e.q2 / 2, e.t2 / 2, e.a / 2)))
}

fn monomial_inverse(val: &LaurentQTA) -> Option<LaurentQTA> {
    if !val.is_monomial() {
        return None;
    }
    let (e, c) = val.terms.iter().next().unwrap();
    if !c.is_unit() || e.a != 0 {
        return None;
    }
    Some(LaurentQTA::monomial(c.clone(), Exp::new(-e.q2, -e.t2, 0)))
}

impl<'a> Add<&'a LaurentQTA> for &'a LaurentQTA {
    type Output = LaurentQTA;
    fn add(self, rhs: &LaurentQTA) -> LaurentQTA {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (e, c) in &small.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl<'a> Sub<&'a LaurentQTA> for &'a LaurentQTA {
    type Output = LaurentQTA;
    fn sub(self, rhs: &LaurentQTA) -> LaurentQTA {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a LaurentQTA> for &'a LaurentQTA {
    type Output = LaurentQTA;
    fn mul(self, rhs: &LaurentQTA) -> LaurentQTA {
        let mut out = LaurentQTA::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(*e1 + *e2, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &LaurentQTA {
    type Output = LaurentQTA;
    fn neg(self) -> LaurentQTA {
        LaurentQTA { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentQTA> for LaurentQTA {
            type Output = LaurentQTA;
            fn $m(self, rhs: LaurentQTA) -> LaurentQTA {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl fmt::Display for LaurentQTA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for LaurentQTA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}


impl Serialize for LaurentQTA {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.json_terms().serialize(s)
    }
}
