use super::int::Int;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InterpError {
    #[error("not polynomial-count over tested fields")]
    NotPolynomialCount,
    #[error("need at least {needed} samples with distinct field sizes, got {got}")]
    TooFewSamples { needed: usize, got: usize },
}

/// Integer polynomial in one variable `T`, lowest degree first.
pub type CountPoly = Vec<Int>;

/// The unique polynomial of degree at most `degree_bound` through the
/// samples `(field size, count)`.
///
/// Extra samples beyond `degree_bound + 1` are used as consistency checks,
/// so an over-determined call also detects non-polynomial counts.
pub fn interpolate_counting_polynomial(samples: &[(u64, Int)], degree_bound: usize) -> Result<CountPoly, InterpError> {
    let mut xs: Vec<u64> = samples.iter().map(|s| s.0).collect();
    xs.sort_unstable();
    xs.dedup();
    if xs.len() != samples.len() || samples.len() < degree_bound + 1 {
        return Err(InterpError::TooFewSamples { needed: degree_bound + 1, got: xs.len() });
    }
    let used = &samples[..degree_bound + 1];
    let n = used.len();
    // Newton divided differences in exact rationals.
    let x: Vec<BigRational> = used.iter().map(|s| BigRational::from_integer(BigInt::from(s.0))).collect();
    let mut coef: Vec<BigRational> = used.iter().map(|s| BigRational::from_integer(s.1.to_big())).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&x[i] - &x[i - j]);
        }
    }
    // Expand the Newton form into the monomial basis.
    let mut poly: Vec<BigRational> = vec![BigRational::zero(); n];
    for k in (0..n).rev() {
        // poly = poly * (T - x_k) + coef_k
        let mut next = vec![BigRational::zero(); n];
        for i in 0..n {
            if poly[i].is_zero() {
                continue;
            }
            if i + 1 < n {
                next[i + 1] += &poly[i];
            }
            next[i] -= &poly[i] * &x[k];
        }
        next[0] += &coef[k];
        poly = next;
    }
    let mut out = Vec::with_capacity(n);
    for c in poly {
        if !c.denom().is_one() {
            return Err(InterpError::NotPolynomialCount);
        }
        out.push(Int::from(c.numer().clone()));
    }
    while matches!(out.last(), Some(c) if c.is_zero()) {
        out.pop();
    }
    for (size, count) in &samples[degree_bound + 1..] {
        if &eval_count_poly(&out, *size) != count {
            return Err(InterpError::NotPolynomialCount);
        }
    }
    Ok(out)
}

pub fn eval_count_poly(p: &[Int], x: u64) -> Int {
    let xv = Int::from(x);
    let mut acc = Int::ZERO;
    for c in p.iter().rev() {
        acc = &(&acc * &xv) + c;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[(u64, i64)]) -> Vec<(u64, Int)> {
        v.iter().map(|&(a, b)| (a, Int::from(b))).collect()
    }

    #[test]
    fn affine_line() {
        let p = interpolate_counting_polynomial(&s(&[(3, 3), (9, 9), (27, 27)]), 1).unwrap();
        assert_eq!(p, vec![Int::ZERO, Int::ONE]);
    }

    #[test]
    fn two_lines_through_a_point() {
        // Two copies of 𝔸¹ glued at a point: 2T - 1 points.
        let counts: Vec<(u64, i64)> = [3u64, 9].iter().map(|&q| (q, 2 * q as i64 - 1)).collect();
        let p = interpolate_counting_polynomial(&s(&counts), 1).unwrap();
        assert_eq!(p, vec![Int::from(-1), Int::from(2)]);
    }

    #[test]
    fn projective_line() {
        let p = interpolate_counting_polynomial(&s(&[(3, 4), (9, 10)]), 1).unwrap();
        assert_eq!(p, vec![Int::ONE, Int::ONE]);
    }

    #[test]
    fn non_integer_rejected() {
        let r = interpolate_counting_polynomial(&s(&[(3, 1), (9, 2)]), 1);
        assert_eq!(r, Err(InterpError::NotPolynomialCount));
        let r = interpolate_counting_polynomial(&s(&[(3, 3), (9, 9), (27, 28)]), 1);
        assert_eq!(r, Err(InterpError::NotPolynomialCount));
    }
}
