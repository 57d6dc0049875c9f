//! Operator words and the τ± automorphisms.
//!
//! τ₊ fixes the X_j and τ₋ fixes the Y_j; on the partial products
//! X_{(i)} = X₁⋯X_i and Y_{(i)} = Y₁⋯Y_i they act by
//!
//!   τ₊(Y_{(i)}) = q^{−i/2} X_{(i)} Y_{(i)},   τ₋(X_{(i)}) = q^{i/2} Y_{(i)} X_{(i)},
//!
//! and the images of single generators are the quotients of consecutive
//! products. Every image of an X_j or Y_j under a word in τ±^{±1} is then a
//! scalar times an alternating product of X- and Y-monomials, which is what
//! [`MonoWord`] stores.

use super::coeff::Coeff;
use super::poly::{Weight, XPoly};

/// A generator of the DAHA (1-based indices) or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    X(usize, bool),
    Y(usize, bool),
    T(usize, bool),
    Pi(bool),
}

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::X(j, i) => Letter::X(j, !i),
            Letter::Y(j, i) => Letter::Y(j, !i),
            Letter::T(j, i) => Letter::T(j, !i),
            Letter::Pi(i) => Letter::Pi(!i),
        }
    }

    pub fn apply<C: Coeff>(self, f: &XPoly<C>) -> XPoly<C> {
        match self {
            Letter::X(j, inv) => f.mul_x(j, if inv { -1 } else { 1 }),
            Letter::Y(j, inv) => f.apply_y(j, inv),
            Letter::T(i, inv) => f.apply_t(i, inv),
            Letter::Pi(inv) => f.apply_pi(inv),
        }
    }
}

/// Expression tree over the generators. `Compose` lists factors left to
/// right, so the last factor acts first.
#[derive(Clone, Debug, PartialEq)]
pub enum OperatorExpr {
    /// c · q^{q2/2} t^{t2/2}.
    Scalar { c: i64, q2: i32, t2: i32 },
    Gen(Letter),
    Compose(Vec<OperatorExpr>),
    Sum(Vec<OperatorExpr>),
}

impl OperatorExpr {
    pub fn word(letters: &[Letter]) -> OperatorExpr {
        OperatorExpr::Compose(letters.iter().map(|&l| OperatorExpr::Gen(l)).collect())
    }

    pub fn apply<C: Coeff>(&self, f: &XPoly<C>) -> XPoly<C> {
        match self {
            OperatorExpr::Scalar { c, q2, t2 } => f.scale(&C::monomial(*c, *q2, *t2)),
            OperatorExpr::Gen(l) => l.apply(f),
            OperatorExpr::Compose(parts) => {
                let mut g = f.clone();
                for p in parts.iter().rev() {
                    g = p.apply(&g);
                }
                g
            }
            OperatorExpr::Sum(parts) => {
                let mut acc = XPoly::zero(f.rank());
                for p in parts {
                    acc = acc.add(&p.apply(f));
                }
                acc
            }
        }
    }

    /// The anti-involution φ: X_j ↦ Y_j^{−1}, Y_j ↦ X_j^{−1}, T_i ↦ T_i,
    /// reversing products. Defined on expressions without π.
    pub fn phi(&self) -> OperatorExpr {
        match self {
            OperatorExpr::Scalar { .. } => self.clone(),
            OperatorExpr::Gen(l) => OperatorExpr::Gen(match *l {
                Letter::X(j, inv) => Letter::Y(j, !inv),
                Letter::Y(j, inv) => Letter::X(j, !inv),
                Letter::T(i, inv) => Letter::T(i, inv),
                Letter::Pi(_) => panic!("φ is not applied to π"),
            }),
            OperatorExpr::Compose(parts) => OperatorExpr::Compose(parts.iter().rev().map(|p| p.phi()).collect()),
            OperatorExpr::Sum(parts) => OperatorExpr::Sum(parts.iter().map(|p| p.phi()).collect()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Block {
    X(Weight),
    Y(Weight),
}

/// q^{q2/2} times a product of X- and Y-monomials, leftmost acting last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoWord {
    pub q2: i32,
    n: usize,
    blocks: Vec<Block>,
}

impl MonoWord {
    pub fn identity(n: usize) -> MonoWord {
        MonoWord { q2: 0, n, blocks: Vec::new() }
    }

    pub fn x(n: usize, j: usize) -> MonoWord {
        let mut w = Self::identity(n);
        w.push(Block::X(unit(n, j, 1)));
        w
    }

    pub fn y(n: usize, j: usize) -> MonoWord {
        let mut w = Self::identity(n);
        w.push(Block::Y(unit(n, j, 1)));
        w
    }

    fn x_prefix(n: usize, i: usize, e: i32) -> MonoWord {
        let mut w = Self::identity(n);
        w.push(Block::X((0..n).map(|k| if k < i { e } else { 0 }).collect()));
        w
    }

    fn y_prefix(n: usize, i: usize, e: i32) -> MonoWord {
        let mut w = Self::identity(n);
        w.push(Block::Y((0..n).map(|k| if k < i { e } else { 0 }).collect()));
        w
    }

    /// Number of X/Y blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    fn push(&mut self, b: Block) {
        let zero = |w: &Weight| w.iter().all(|&e| e == 0);
        match (self.blocks.last_mut(), b) {
            (Some(Block::X(a)), Block::X(c)) | (Some(Block::Y(a)), Block::Y(c)) => {
                for (u, v) in a.iter_mut().zip(&c) {
                    *u += v;
                }
                if zero(a) {
                    self.blocks.pop();
                }
            }
            (_, b) => {
                let w = match &b {
                    Block::X(w) | Block::Y(w) => w,
                };
                if !zero(w) {
                    self.blocks.push(b);
                }
            }
        }
    }

    pub fn mul(&self, other: &MonoWord) -> MonoWord {
        let mut out = self.clone();
        out.q2 += other.q2;
        for b in &other.blocks {
            out.push(b.clone());
        }
        out
    }

    pub fn inverse(&self) -> MonoWord {
        let mut out = Self::identity(self.n);
        out.q2 = -self.q2;
        for b in self.blocks.iter().rev() {
            out.push(match b {
                Block::X(w) => Block::X(w.iter().map(|e| -e).collect()),
                Block::Y(w) => Block::Y(w.iter().map(|e| -e).collect()),
            });
        }
        out
    }

    pub fn pow(&self, e: i32) -> MonoWord {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Self::identity(self.n);
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    pub fn to_expr(&self) -> OperatorExpr {
        let mut parts = vec![OperatorExpr::Scalar { c: 1, q2: self.q2, t2: 0 }];
        for b in &self.blocks {
            let (w, is_x) = match b {
                Block::X(w) => (w, true),
                Block::Y(w) => (w, false),
            };
            for (j, &e) in w.iter().enumerate() {
                for _ in 0..e.unsigned_abs() {
                    let l = if is_x { Letter::X(j + 1, e < 0) } else { Letter::Y(j + 1, e < 0) };
                    parts.push(OperatorExpr::Gen(l));
                }
            }
        }
        OperatorExpr::Compose(parts)
    }

    pub fn apply<C: Coeff>(&self, f: &XPoly<C>) -> XPoly<C> {
        let mut g = f.clone();
        for b in self.blocks.iter().rev() {
            g = match b {
                Block::X(w) => g.mul_x_weight(w),
                Block::Y(w) => g.apply_y_weight(w),
            };
        }
        if self.q2 != 0 {
            g = g.scale(&C::monomial(1, self.q2, 0));
        }
        g
    }

    /// Apply an automorphism given by the images of X_j and Y_j.
    fn substitute(&self, images: &Images) -> MonoWord {
        let mut out = Self::identity(self.n);
        out.q2 = self.q2;
        for b in &self.blocks {
            let (w, table) = match b {
                Block::X(w) => (w, &images.x),
                Block::Y(w) => (w, &images.y),
            };
            for (j, &e) in w.iter().enumerate() {
                if e != 0 {
                    out = out.mul(&table[j].pow(e));
                }
            }
        }
        out
    }
}

fn unit(n: usize, j: usize, e: i32) -> Weight {
    let mut w = vec![0; n];
    w[j - 1] = e;
    w
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tau {
    Plus,
    Minus,
}

/// A word τ^{e₁} τ^{e₂} ⋯ in τ±, leftmost applied last.
pub type TauWord = Vec<(Tau, i32)>;

struct Images {
    x: Vec<MonoWord>,
    y: Vec<MonoWord>,
}

impl Images {
    fn of(n: usize, tau: Tau, inverse: bool) -> Images {
        let mut x: Vec<MonoWord> = (1..=n).map(|j| MonoWord::x(n, j)).collect();
        let mut y: Vec<MonoWord> = (1..=n).map(|j| MonoWord::y(n, j)).collect();
        let s = if inverse { -1 } else { 1 };
        for j in 1..=n {
            match tau {
                // τ₊^{±1}(Y_j) = q^{∓1/2} X_{(j)}^{±1} Y_j X_{(j−1)}^{∓1}
                Tau::Plus => {
                    let mut w = MonoWord::x_prefix(n, j, s).mul(&MonoWord::y(n, j)).mul(&MonoWord::x_prefix(n, j - 1, -s));
                    w.q2 = -s;
                    y[j - 1] = w;
                }
                // τ₋^{±1}(X_j) = q^{±1/2} Y_{(j)}^{±1} X_j Y_{(j−1)}^{∓1}
                Tau::Minus => {
                    let mut w = MonoWord::y_prefix(n, j, s).mul(&MonoWord::x(n, j)).mul(&MonoWord::y_prefix(n, j - 1, -s));
                    w.q2 = s;
                    x[j - 1] = w;
                }
            }
        }
        Images { x, y }
    }
}

/// Images of X_1, …, X_n under the automorphism given by `word`.
pub fn x_images(word: &[(Tau, i32)], n: usize) -> Vec<MonoWord> {
    images(word, n).x
}

/// Images of Y_1, …, Y_n under `word`.
pub fn y_images(word: &[(Tau, i32)], n: usize) -> Vec<MonoWord> {
    images(word, n).y
}

fn images(word: &[(Tau, i32)], n: usize) -> Images {
    let mut cur = Images { x: (1..=n).map(|j| MonoWord::x(n, j)).collect(), y: (1..=n).map(|j| MonoWord::y(n, j)).collect() };
    // γ = τ_{w1} ⋯ τ_{wk}: γ(g) = τ_{w1}(⋯ τ_{wk}(g)), so the innermost
    // letter is substituted first.
    for &(tau, e) in word.iter().rev() {
        let step = Images::of(n, tau, e < 0);
        for _ in 0..e.unsigned_abs() {
            cur = Images {
                x: cur.x.iter().map(|w| w.substitute(&step)).collect(),
                y: cur.y.iter().map(|w| w.substitute(&step)).collect(),
            };
        }
    }
    cur
}

/// The image of τ-words in SL₂(ℤ): τ₊ ↦ [[1,1],[0,1]], τ₋ ↦ [[1,0],[1,1]].
pub fn tau_matrix(word: &[(Tau, i32)]) -> [[i64; 2]; 2] {
    let mut m = [[1i64, 0], [0, 1]];
    for &(tau, e) in word {
        let g = match tau {
            Tau::Plus => [[1, e as i64], [0, 1]],
            Tau::Minus => [[1, 0], [e as i64, 1]],
        };
        m = [
            [m[0][0] * g[0][0] + m[0][1] * g[1][0], m[0][0] * g[0][1] + m[0][1] * g[1][1]],
            [m[1][0] * g[0][0] + m[1][1] * g[1][0], m[1][0] * g[0][1] + m[1][1] * g[1][1]],
        ];
    }
    m
}

/// A τ-word whose matrix has first column (r, s), by continued fractions,
/// together with a second word with the same first column.
pub fn gamma_lift(r: u64, s: u64) -> (TauWord, TauWord) {
    assert!(num_integer::gcd(r, s) == 1 && r > 0, "({r}, {s}) is not a primitive column");
    let (mut r, mut s) = (r, s);
    let mut word: TauWord = Vec::new();
    while s > 0 {
        if r > s {
            let k = (r - 1) / s;
            word.push((Tau::Plus, k as i32));
            r -= k * s;
        } else {
            let m = s / r;
            word.push((Tau::Minus, m as i32));
            s -= m * r;
        }
    }
    debug_assert_eq!(r, 1);
    let mut alt = word.clone();
    alt.push((Tau::Plus, 1));
    (word, alt)
}
