//! Finite fields 𝔽_{p^m} built as quotients 𝔽_p[x]/(f) by a primitive polynomial.
//!
//! Elements travel in two encodings. The *vector code* writes an element as
//! the integer whose base-p digits are its coefficients in the power basis;
//! it is stable and is what callers see. Arithmetic runs on the *log code*
//! (the discrete log base the primitive root, with [`ZERO`] for 0), where
//! multiplication is addition of exponents and addition goes through a Zech
//! logarithm table.

use std::sync::Arc;

pub const ZERO: u32 = u32::MAX;

#[derive(Debug)]
pub struct GaloisField {
    pub p: u32,
    pub m: u32,
    pub size: u32,
    /// Coefficients of the defining primitive polynomial, low degree first,
    /// leading 1 omitted.
    pub modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    neg_one: u32,
}

impl GaloisField {
    pub fn new(p: u32, m: u32) -> Arc<GaloisField> {
        assert!(is_prime(p), "{p} is not prime");
        assert!(m >= 1);
        let size = p.checked_pow(m).expect("field too large");
        assert!(size <= 1 << 24, "field too large");
        let order = size - 1;
        let modulus = find_primitive(p, m);
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![ZERO; size as usize];
        let mut cur = vec![0u32; m as usize];
        cur[0] = 1;
        for k in 0..order {
            let code = encode(&cur, p);
            exp.push(code);
            log[code as usize] = k;
            cur = times_x(&cur, &modulus, p);
        }
        let mut zech = vec![ZERO; order as usize];
        for k in 0..order {
            let mut digits = decode(exp[k as usize], p, m);
            digits[0] = (digits[0] + 1) % p;
            let code = encode(&digits, p);
            zech[k as usize] = log[code as usize];
        }
        let neg_one = if p == 2 { 0 } else { order / 2 };
        Arc::new(GaloisField { p, m, size, modulus, exp, log, zech, neg_one })
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.size - 1
    }

    #[inline]
    pub fn one(&self) -> u32 {
        0
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == ZERO || b == ZERO {
            return ZERO;
        }
        let s = a as u64 + b as u64;
        let o = self.order() as u64;
        (if s >= o { s - o } else { s }) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if a == ZERO {
            return b;
        }
        if b == ZERO {
            return a;
        }
        // a + b = a (1 + b/a)
        let o = self.order();
        let d = if b >= a { b - a } else { b + o - a };
        let z = self.zech[d as usize];
        if z == ZERO {
            ZERO
        } else {
            self.mul(a, z)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == ZERO {
            ZERO
        } else {
            self.mul(a, self.neg_one)
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != ZERO, "inverse of zero");
        if a == 0 {
            0
        } else {
            self.order() - a
        }
    }

    pub fn pow(&self, a: u32, e: u32) -> u32 {
        if e == 0 {
            return 0;
        }
        if a == ZERO {
            return ZERO;
        }
        ((a as u64 * e as u64) % self.order() as u64) as u32
    }

    /// Image of an integer, in log code.
    pub fn from_int(&self, n: &super::Int) -> u32 {
        let r = n.rem_euclid_u64(self.p as u64) as u32;
        if r == 0 {
            ZERO
        } else {
            self.log[r as usize]
        }
    }

    pub fn to_vector(&self, a: u32) -> u32 {
        if a == ZERO {
            0
        } else {
            self.exp[a as usize]
        }
    }

    pub fn from_vector(&self, code: u32) -> u32 {
        self.log[code as usize]
    }

    /// Every element in log code; zero first.
    pub fn elements(&self) -> impl Iterator<Item = u32> + '_ {
        std::iter::once(ZERO).chain(0..self.order())
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn encode(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn decode(mut code: u32, p: u32, m: u32) -> Vec<u32> {
    let mut out = vec![0; m as usize];
    for d in out.iter_mut() {
        *d = code % p;
        code /= p;
    }
    out
}

/// Multiply a residue (length m, low first) by x modulo the monic modulus.
fn times_x(cur: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let m = cur.len();
    let top = cur[m - 1];
    let mut out = vec![0; m];
    for i in (1..m).rev() {
        out[i] = cur[i - 1];
    }
    // x^m = -(modulus[0] + modulus[1] x + ...)
    for i in 0..m {
        out[i] = (out[i] + (p - modulus[i] % p) * top) % p;
    }
    out
}

/// Lexicographically first monic polynomial of degree m for which x has
/// multiplicative order p^m - 1; such a polynomial is automatically irreducible.
fn find_primitive(p: u32, m: u32) -> Vec<u32> {
    let order = p.pow(m) - 1;
    let count = p.pow(m);
    for code in 0..count {
        let modulus = decode(code, p, m);
        if modulus[0] == 0 {
            continue;
        }
        let mut cur = vec![0u32; m as usize];
        cur[0] = 1;
        let mut ok = true;
        for k in 1..=order {
            cur = times_x(&cur, &modulus, p);
            let is_one = cur[0] == 1 && cur[1..].iter().all(|&d| d == 0);
            if is_one {
                ok = k == order;
                break;
            }
        }
        if ok {
            return modulus;
        }
    }
    unreachable!("no primitive polynomial of degree {m} over F_{p}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for (p, m) in [(2, 1), (2, 3), (3, 1), (3, 2), (3, 3), (5, 2)] {
            let f = GaloisField::new(p, m);
            let els: Vec<u32> = f.elements().collect();
            assert_eq!(els.len() as u32, f.size);
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), ZERO);
                if a != ZERO {
                    assert_eq!(f.mul(a, f.inv(a)), f.one());
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    for &c in els.iter().step_by(3) {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn characteristic_and_prime_subfield() {
        let f = GaloisField::new(3, 2);
        let one = f.one();
        assert_eq!(f.add(f.add(one, one), one), ZERO);
        assert_eq!(f.from_int(&super::super::Int::from(-1)), f.neg(one));
        assert_eq!(f.to_vector(f.from_int(&super::super::Int::from(2))), 2);
    }
}
