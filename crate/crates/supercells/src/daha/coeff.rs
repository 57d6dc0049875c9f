//! Coefficient rings for the polynomial representation.
//!
//! The τ-images only ever produce Laurent polynomials in q^{1/2}, t^{1/2},
//! so the heavy part of a DAHA-Jones computation runs over [`LaurentQTA`].
//! Macdonald polynomials and the final division need [`RatFunQT`].

use crate::exactalg::{Exp, Int, LaurentQTA, RatFunQT};
use std::fmt::Debug;

pub trait Coeff: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// `c · q^{q2/2} t^{t2/2}`.
    fn monomial(c: i64, q2: i32, t2: i32) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn to_ratfun(&self) -> RatFunQT;
}

impl Coeff for LaurentQTA {
    fn zero() -> Self {
        LaurentQTA::zero()
    }
    fn one() -> Self {
        LaurentQTA::one()
    }
    fn is_zero(&self) -> bool {
        LaurentQTA::is_zero(self)
    }
    fn monomial(c: i64, q2: i32, t2: i32) -> Self {
        LaurentQTA::monomial(Int::from(c), Exp::new(q2, t2, 0))
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn to_ratfun(&self) -> RatFunQT {
        RatFunQT::from_laurent(self)
    }
}

impl Coeff for RatFunQT {
    fn zero() -> Self {
        RatFunQT::zero()
    }
    fn one() -> Self {
        RatFunQT::one()
    }
    fn is_zero(&self) -> bool {
        RatFunQT::is_zero(self)
    }
    fn monomial(c: i64, q2: i32, t2: i32) -> Self {
        RatFunQT::monomial(c, q2, t2)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn to_ratfun(&self) -> RatFunQT {
        self.clone()
    }
}
