use super::poly::{Mono, MultiPoly};
use super::ring::Ring;
use crate::Error;

/// Power series in one variable, known up to and including `t^order`.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedSeries<R> {
    order: usize,
    coeffs: Vec<R>,
}

impl<R: Ring> TruncatedSeries<R> {
    pub fn new(order: usize, mut coeffs: Vec<R>) -> Self {
        coeffs.resize(order + 1, R::zero());
        coeffs.truncate(order + 1);
        TruncatedSeries { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn one(order: usize) -> Self {
        Self::new(order, vec![R::one()])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Self::new(order, self.coeffs[..=order].to_vec())
    }

    pub fn plus(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        Self::new(order, (0..=order).map(|k| self.coeffs[k].plus(&rhs.coeffs[k])).collect())
    }

    pub fn minus(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        Self::new(order, (0..=order).map(|k| self.coeffs[k].minus(&rhs.coeffs[k])).collect())
    }

    pub fn times(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let mut out = vec![R::zero(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if !rhs.coeffs[j].is_zero() {
                    out[i + j].add_assign_r(&self.coeffs[i].times(&rhs.coeffs[j]));
                }
            }
        }
        Self::new(order, out)
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.order, self.coeffs.iter().map(|x| x.times(c)).collect())
    }

    /// d/dt; the result is known to one order less.
    pub fn derivative(&self) -> Result<Self, Error> {
        if self.order == 0 {
            return Err(Error::InsufficientPrecision("derivative of an order-0 series".into()));
        }
        let c = (1..=self.order).map(|k| self.coeffs[k].times(&R::from_int(k as i64))).collect();
        Ok(Self::new(self.order - 1, c))
    }

    /// `exp(f)` for `f` without constant term, over a ring where division by
    /// positive integers is exact.
    pub fn exp(&self) -> Result<Self, Error> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain("exp of a series with nonzero constant term".into()));
        }
        // n h_n = sum_k k f_k h_{n-k}
        let mut h = vec![R::one()];
        for n in 1..=self.order {
            let mut acc = R::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc.add_assign_r(&self.coeffs[k].times(&R::from_int(k as i64)).times(&h[n - k]));
                }
            }
            let v = acc
                .try_div_exact(&R::from_int(n as i64))
                .ok_or_else(|| Error::UnsupportedCoefficient("division by an integer".into()))?;
            h.push(v);
        }
        Ok(Self::new(self.order, h))
    }

    /// Equal on the common window.
    pub fn agrees_with(&self, rhs: &Self) -> bool {
        let order = self.order.min(rhs.order);
        self.coeffs[..=order] == rhs.coeffs[..=order]
    }
}

/// Coefficient of the monomial `exps` in `f`. Negative or positive exponents
/// both allowed; a plain lookup.
pub fn constant_term<R: Ring>(f: &MultiPoly<R>, exps: &[i32]) -> R {
    f.coeff_of(exps)
}

/// A factor in a coefficient extraction: an honest polynomial, or a
/// geometric series `1 / (1 - c m)` expanded up to the extraction window.
#[derive(Clone, Debug)]
pub enum Factor<R> {
    Poly(MultiPoly<R>),
    Geometric { coeff: R, mono: Vec<i32> },
}

/// Coefficient of `prod_k u_k^{target_k}` (over the first `target.len()`
/// variables) in the product of `factors`, as a polynomial in the remaining
/// variables. All factors must have nonnegative exponents in the extracted
/// variables, which makes truncation at the target exact. `window[k]`
/// bounds the expansion of geometric factors in variable `k`; it must reach
/// the target or an insufficient-precision error is raised.
pub fn extract_coefficient<R: Ring>(
    nvars: usize,
    factors: &[Factor<R>],
    target: &[i32],
    window: &[i32],
) -> Result<MultiPoly<R>, Error> {
    for (k, (&t, &w)) in target.iter().zip(window).enumerate() {
        if t > w {
            return Err(Error::InsufficientPrecision(format!("u{} exponent {} beyond window {}", k + 1, t, w)));
        }
    }
    let caps: Vec<Option<i32>> = (0..nvars).map(|k| target.get(k).copied()).collect();
    let mut acc = MultiPoly::one(nvars);
    for f in factors {
        let p = match f {
            Factor::Poly(p) => p.clone(),
            Factor::Geometric { coeff, mono } => {
                let step = mono.iter().enumerate().filter(|(k, &e)| e > 0 && *k < target.len()).map(|(k, &e)| window[k] / e).min();
                let Some(top) = step else {
                    return Err(Error::Domain("geometric factor must involve an extracted variable".into()));
                };
                let mut terms = Vec::new();
                let mut c = R::one();
                for j in 0..=top {
                    terms.push((Mono::new(mono.iter().map(|e| e * j).collect()), c.clone()));
                    c = c.times(coeff);
                }
                MultiPoly::from_terms(nvars, terms)
            }
        };
        acc = acc.times_truncated(&p, &caps);
    }
    let mut out = Vec::new();
    for (m, c) in acc.terms() {
        if (0..target.len()).all(|k| m.exp(k) == target[k]) {
            let mut e = m.exps().to_vec();
            for x in e.iter_mut().take(target.len()) {
                *x = 0;
            }
            out.push((Mono::new(e), c.clone()));
        }
    }
    Ok(MultiPoly::from_terms(nvars, out))
}
