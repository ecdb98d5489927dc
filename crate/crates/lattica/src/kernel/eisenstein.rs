use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Signed;

use super::ring::Ring;

/// `a + b w` with `w^2 + w + 1 = 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Eisenstein {
    pub a: BigInt,
    pub b: BigInt,
}

impl Eisenstein {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Eisenstein { a: a.into(), b: b.into() }
    }

    /// `w = e^{2 pi i / 3}`.
    pub fn omega() -> Self {
        Eisenstein::new(0, 1)
    }

    /// `1 + w = e^{i pi / 3}`.
    pub fn sixth_root() -> Self {
        Eisenstein::new(1, 1)
    }

    /// Complex conjugate: `w -> w^2 = -1 - w`.
    pub fn conj(&self) -> Self {
        Eisenstein { a: &self.a - &self.b, b: -&self.b }
    }

    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }
}

impl Ring for Eisenstein {
    fn zero() -> Self {
        Eisenstein::new(0, 0)
    }
    fn one() -> Self {
        Eisenstein::new(1, 0)
    }
    fn from_int(n: i64) -> Self {
        Eisenstein::new(n, 0)
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        Eisenstein { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
    fn minus(&self, rhs: &Self) -> Self {
        Eisenstein { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
    fn times(&self, rhs: &Self) -> Self {
        // (a + b w)(c + d w) = ac + (ad + bc) w + bd w^2, with w^2 = -1 - w
        let ac = &self.a * &rhs.a;
        let bd = &self.b * &rhs.b;
        let cross = &self.a * &rhs.b + &self.b * &rhs.a;
        Eisenstein { a: &ac - &bd, b: cross - bd }
    }
    fn negate(&self) -> Self {
        Eisenstein { a: -&self.a, b: -&self.b }
    }
    fn try_div_exact(&self, rhs: &Self) -> Option<Self> {
        let n = rhs.norm();
        if n.is_zero() {
            return None;
        }
        let num = self.times(&rhs.conj());
        let a = num.a.try_div_exact(&n)?;
        let b = num.b.try_div_exact(&n)?;
        Some(Eisenstein { a, b })
    }
    fn render(&self) -> String {
        let w = |b: &BigInt| -> String {
            if b.is_one() {
                "w".to_string()
            } else if *b == -BigInt::one() {
                "-w".to_string()
            } else {
                format!("{}*w", b)
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => self.a.to_string(),
            (true, false) => w(&self.b),
            (false, false) => {
                if self.b.is_negative() {
                    format!("{} - {}", self.a, w(&-&self.b))
                } else {
                    format!("{} + {}", self.a, w(&self.b))
                }
            }
        }
    }
    fn is_atomic(&self) -> bool {
        self.a.is_zero() || self.b.is_zero()
    }
}

impl fmt::Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for Eisenstein {
    type Output = Eisenstein;
    fn add(self, rhs: Self) -> Self {
        self.plus(&rhs)
    }
}

impl Sub for Eisenstein {
    type Output = Eisenstein;
    fn sub(self, rhs: Self) -> Self {
        self.minus(&rhs)
    }
}

impl Mul for Eisenstein {
    type Output = Eisenstein;
    fn mul(self, rhs: Self) -> Self {
        self.times(&rhs)
    }
}

impl Neg for Eisenstein {
    type Output = Eisenstein;
    fn neg(self) -> Self {
        self.negate()
    }
}
