use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Signed;

use super::ring::Ring;

/// Laurent polynomial in `q` with integer coefficients, stored densely from
/// `min_exp` upward. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentQ {
    min_exp: i32,
    coeffs: Vec<BigInt>,
}

impl LaurentQ {
    pub fn from_coeffs(min_exp: i32, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentQ { min_exp, coeffs };
        p.normalize();
        p
    }

    pub fn monomial(c: impl Into<BigInt>, e: i32) -> Self {
        LaurentQ::from_coeffs(e, vec![c.into()])
    }

    pub fn q() -> Self {
        LaurentQ::monomial(1, 1)
    }

    pub fn q_inv() -> Self {
        LaurentQ::monomial(1, -1)
    }

    /// `q^e`.
    pub fn q_pow(e: i32) -> Self {
        LaurentQ::monomial(1, e)
    }

    /// `q - q^{-1}`.
    pub fn q_minus_qinv() -> Self {
        LaurentQ::from_coeffs(-1, vec![BigInt::from(-1), BigInt::zero(), BigInt::one()])
    }

    /// `tau = -q - q^{-1}`.
    pub fn tau() -> Self {
        LaurentQ::from_coeffs(-1, vec![BigInt::from(-1), BigInt::zero(), BigInt::from(-1)])
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_exp += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.min_exp = 0;
        }
    }

    pub fn min_exp(&self) -> Option<i32> {
        (!self.coeffs.is_empty()).then_some(self.min_exp)
    }

    pub fn max_exp(&self) -> Option<i32> {
        (!self.coeffs.is_empty()).then(|| self.min_exp + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        let k = e - self.min_exp;
        if k < 0 || k as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// `(exponent, coefficient)` pairs with nonzero coefficient, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.min_exp + k as i32, c))
    }

    /// The bar involution `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        match self.max_exp() {
            None => self.clone(),
            Some(hi) => {
                let mut c = self.coeffs.clone();
                c.reverse();
                LaurentQ { min_exp: -hi, coeffs: c }
            }
        }
    }

    /// Multiply by `q^e`.
    pub fn shift(&self, e: i32) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        LaurentQ { min_exp: self.min_exp + e, coeffs: self.coeffs.clone() }
    }

    /// Evaluate at `q`, given its inverse.
    pub fn eval<R: Ring>(&self, q: &R, q_inv: &R) -> R {
        let mut acc = R::zero();
        for (e, c) in self.terms() {
            let base = if e >= 0 { q.pow(e as u32) } else { q_inv.pow((-e) as u32) };
            acc.add_assign_r(&base.times(&R::from_bigint(c)));
        }
        acc
    }

    /// Rewrite a bar-symmetric Laurent polynomial as a polynomial in
    /// `tau = -q - q^{-1}`; coefficients returned in ascending degree.
    pub fn to_tau(&self) -> Option<Vec<BigInt>> {
        if *self != self.bar() {
            return None;
        }
        let mut rest = self.clone();
        let mut out: Vec<BigInt> = Vec::new();
        while let Some(d) = rest.max_exp() {
            if d < 0 {
                return None;
            }
            let c = rest.coeff(d);
            // tau^d has leading term (-1)^d q^d
            let k = if d % 2 == 0 { c.clone() } else { -c.clone() };
            if out.len() <= d as usize {
                out.resize(d as usize + 1, BigInt::zero());
            }
            out[d as usize] = k.clone();
            rest = rest.minus(&LaurentQ::tau().pow(d as u32).times(&LaurentQ::constant(k)));
        }
        Some(out)
    }

    pub fn from_tau(coeffs: &[BigInt]) -> Self {
        let mut acc = LaurentQ::zero();
        let mut pw = LaurentQ::one();
        for c in coeffs {
            acc = acc.plus(&pw.times(&LaurentQ::constant(c.clone())));
            pw = pw.times(&LaurentQ::tau());
        }
        acc
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        LaurentQ::monomial(c, 0)
    }
}

impl Ring for LaurentQ {
    fn zero() -> Self {
        LaurentQ { min_exp: 0, coeffs: Vec::new() }
    }
    fn one() -> Self {
        LaurentQ::constant(1)
    }
    fn from_int(n: i64) -> Self {
        LaurentQ::constant(n)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.min_exp.min(rhs.min_exp);
        let hi = self.max_exp().unwrap().max(rhs.max_exp().unwrap());
        let mut c = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, v) in self.terms() {
            c[(e - lo) as usize] += v;
        }
        for (e, v) in rhs.terms() {
            c[(e - lo) as usize] += v;
        }
        LaurentQ::from_coeffs(lo, c)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negate())
    }
    fn times(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return LaurentQ::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        LaurentQ::from_coeffs(self.min_exp + rhs.min_exp, c)
    }
    fn negate(&self) -> Self {
        LaurentQ { min_exp: self.min_exp, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    fn try_div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentQ::zero());
        }
        let (fl, fh) = (self.min_exp, self.max_exp().unwrap());
        let (gl, gh) = (rhs.min_exp, rhs.max_exp().unwrap());
        let (ql, qh) = (fl - gl, fh - gh);
        if qh < ql {
            return None;
        }
        let glead = rhs.coeffs.last().unwrap();
        let mut r: Vec<BigInt> = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); (qh - ql + 1) as usize];
        for k in (0..q.len()).rev() {
            // position of q^{ql+k} * lead(g) in r
            let top = k + rhs.coeffs.len() - 1;
            let c = r[top].try_div_exact(glead)?;
            if !c.is_zero() {
                for (j, g) in rhs.coeffs.iter().enumerate() {
                    r[k + j] -= &c * g;
                }
            }
            q[k] = c;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(LaurentQ::from_coeffs(ql, q))
    }
    fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            let mono = match e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{}", e),
            };
            let s = if mono.is_empty() {
                a.to_string()
            } else if a.is_one() {
                mono
            } else {
                format!("{}*{}", a, mono)
            };
            parts.push((neg, s));
        }
        let mut out = String::new();
        for (k, (neg, s)) in parts.into_iter().enumerate() {
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&s);
        }
        out
    }
    fn is_atomic(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() <= 1
    }
}

impl fmt::Display for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for LaurentQ {
    type Output = LaurentQ;
    fn add(self, rhs: Self) -> Self {
        self.plus(&rhs)
    }
}

impl Sub for LaurentQ {
    type Output = LaurentQ;
    fn sub(self, rhs: Self) -> Self {
        self.minus(&rhs)
    }
}

impl Mul for LaurentQ {
    type Output = LaurentQ;
    fn mul(self, rhs: Self) -> Self {
        self.times(&rhs)
    }
}

impl Neg for LaurentQ {
    type Output = LaurentQ;
    fn neg(self) -> Self {
        self.negate()
    }
}

/// `U_k = (q^{k+1} - q^{-(k+1)}) / (q - q^{-1})`, with `U_{-1} = 0` and
/// `U_{-k-2} = -U_k`.
pub fn chebyshev_u(k: i32) -> LaurentQ {
    let num = LaurentQ::q_pow(k + 1).minus(&LaurentQ::q_pow(-(k + 1)));
    num.try_div_exact(&LaurentQ::q_minus_qinv()).expect("q-integer division is exact")
}
