use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;

/// Commutative ring with exact (partial) division.
///
/// Method names avoid clashing with `std::ops` so that generic code and
/// operator code can live side by side.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    /// `Some(q)` with `q * rhs == self`, `None` when no such `q` exists.
    fn try_div_exact(&self, rhs: &Self) -> Option<Self>;
    fn render(&self) -> String;

    /// Whether `render` can be printed as a coefficient without parentheses.
    fn is_atomic(&self) -> bool {
        true
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add_assign_r(&mut self, rhs: &Self) {
        *self = self.plus(rhs);
    }

    /// Image of an integer; exact for any ring containing the integers.
    fn from_bigint(n: &BigInt) -> Self {
        if let Ok(v) = i64::try_from(n) {
            return Self::from_int(v);
        }
        let b = BigInt::from(1i64 << 62);
        let base = Self::from_int(1 << 62);
        let mut m = n.abs();
        let mut acc = Self::zero();
        let mut pw = Self::one();
        while !num_traits::Zero::is_zero(&m) {
            let r = &m % &b;
            m /= &b;
            acc = acc.plus(&pw.times(&Self::from_int(i64::try_from(&r).unwrap())));
            pw = pw.times(&base);
        }
        if n.is_negative() {
            acc.negate()
        } else {
            acc
        }
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_int(n: i64) -> Self {
        BigInt::from(n)
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn try_div_exact(&self, rhs: &Self) -> Option<Self> {
        if num_traits::Zero::is_zero(rhs) {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        if num_traits::Zero::is_zero(&r) {
            Some(q)
        } else {
            None
        }
    }
    fn render(&self) -> String {
        self.to_string()
    }
    fn add_assign_r(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn from_bigint(n: &BigInt) -> Self {
        n.clone()
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn try_div_exact(&self, rhs: &Self) -> Option<Self> {
        if num_traits::Zero::is_zero(rhs) {
            None
        } else {
            Some(self / rhs)
        }
    }
    fn render(&self) -> String {
        render_rational(self)
    }
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn add_assign_r(&mut self, rhs: &Self) {
        *self += rhs;
    }
}

/// `p/q` in lowest terms, or just `p` for integers.
pub fn render_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Parse `p`, `-p`, `p/q`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if num_traits::Zero::is_zero(&q) {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}
