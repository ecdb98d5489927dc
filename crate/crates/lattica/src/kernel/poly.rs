use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use super::ring::Ring;
use crate::Error;

/// Exponent vector, negative entries allowed (Laurent monomials).
///
/// Ordered by total degree, ties broken so that `z1` comes before `z2`:
/// `1 < z1 < z2 < z1^2 < z1*z2 < z2^2 < ...`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono {
    deg: i32,
    exps: Vec<i32>,
}

impl Mono {
    pub fn new(exps: Vec<i32>) -> Self {
        Mono { deg: exps.iter().sum(), exps }
    }

    pub fn one(n: usize) -> Self {
        Mono { deg: 0, exps: vec![0; n] }
    }

    pub fn exps(&self) -> &[i32] {
        &self.exps
    }

    pub fn degree(&self) -> i32 {
        self.deg
    }

    pub fn exp(&self, k: usize) -> i32 {
        self.exps.get(k).copied().unwrap_or(0)
    }

    fn padded(&self, n: usize) -> Mono {
        if self.exps.len() >= n {
            return self.clone();
        }
        let mut e = self.exps.clone();
        e.resize(n, 0);
        Mono { deg: self.deg, exps: e }
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let n = self.exps.len().max(o.exps.len());
        let exps = (0..n).map(|k| self.exp(k) + o.exp(k)).collect();
        Mono { deg: self.deg + o.deg, exps }
    }

    pub fn div(&self, o: &Mono) -> Mono {
        let n = self.exps.len().max(o.exps.len());
        let exps = (0..n).map(|k| self.exp(k) - o.exp(k)).collect();
        Mono { deg: self.deg - o.deg, exps }
    }

    fn with_exp(&self, k: usize, e: i32) -> Mono {
        let mut m = self.clone();
        m.deg += e - m.exps[k];
        m.exps[k] = e;
        m
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate (Laurent) polynomial with coefficients in `R`.
///
/// Terms are kept sorted ascending in the graded order of [`Mono`], with no
/// zero coefficients, so structural equality is polynomial equality.
#[derive(Clone, Debug)]
pub struct MultiPoly<R> {
    nvars: usize,
    terms: Vec<(Mono, R)>,
}

impl<R: Ring> PartialEq for MultiPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        if self.nvars == other.nvars {
            return self.terms == other.terms;
        }
        let n = self.nvars.max(other.nvars);
        self.extend_vars(n).terms == other.extend_vars(n).terms
    }
}

impl<R: Ring> MultiPoly<R> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: R) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(nvars);
        }
        MultiPoly { nvars, terms: vec![(Mono::one(nvars), c)] }
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, R::one())
    }

    /// The variable `z_{k+1}` (zero-based index `k`).
    pub fn var(nvars: usize, k: usize) -> Self {
        assert!(k < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[k] = 1;
        MultiPoly { nvars, terms: vec![(Mono::new(e), R::one())] }
    }

    pub fn monomial(exps: Vec<i32>, c: R) -> Self {
        let n = exps.len();
        if c.is_zero() {
            return MultiPoly::zero(n);
        }
        MultiPoly { nvars: n, terms: vec![(Mono::new(exps), c)] }
    }

    /// `sum_k c_k z_k + c0`.
    pub fn linear(nvars: usize, coeffs: &[(usize, R)], c0: R) -> Self {
        let mut acc: Vec<(Mono, R)> = coeffs
            .iter()
            .map(|(k, c)| {
                let mut e = vec![0; nvars];
                e[*k] = 1;
                (Mono::new(e), c.clone())
            })
            .collect();
        acc.push((Mono::one(nvars), c0));
        MultiPoly::from_terms(nvars, acc)
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Mono, R)>) -> Self {
        let mut map: FxHashMap<Mono, R> = FxHashMap::default();
        for (m, c) in terms {
            let m = m.padded(nvars);
            debug_assert_eq!(m.exps.len(), nvars);
            match map.get_mut(&m) {
                Some(v) => v.add_assign_r(&c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        Self::from_map(nvars, map)
    }

    fn from_map(nvars: usize, map: FxHashMap<Mono, R>) -> Self {
        let mut terms: Vec<(Mono, R)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        MultiPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Mono, R)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same polynomial seen in `n >= nvars` variables.
    pub fn extend_vars(&self, n: usize) -> Self {
        assert!(n >= self.nvars);
        if n == self.nvars {
            return self.clone();
        }
        MultiPoly { nvars: n, terms: self.terms.iter().map(|(m, c)| (m.padded(n), c.clone())).collect() }
    }

    pub fn leading(&self) -> Option<&(Mono, R)> {
        self.terms.last()
    }

    pub fn coeff_of(&self, exps: &[i32]) -> R {
        let m = Mono::new(exps.to_vec()).padded(self.nvars);
        match self.terms.binary_search_by(|(t, _)| t.cmp(&m)) {
            Ok(k) => self.terms[k].1.clone(),
            Err(_) => R::zero(),
        }
    }

    /// Value of the constant term (exponent vector zero).
    pub fn constant_coeff(&self) -> R {
        self.coeff_of(&vec![0; self.nvars])
    }

    pub fn as_constant(&self) -> Option<R> {
        match self.terms.len() {
            0 => Some(R::zero()),
            1 if self.terms[0].0.exps.iter().all(|&e| e == 0) => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, v)| (m.clone(), v.times(c)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        MultiPoly { nvars: self.nvars, terms }
    }

    /// Multiply by the monomial `z^exps`.
    pub fn shift(&self, exps: &[i32]) -> Self {
        let m = Mono::new(exps.to_vec());
        let terms = self.terms.iter().map(|(t, c)| (t.mul(&m), c.clone())).collect();
        MultiPoly { nvars: self.nvars.max(exps.len()), terms }
    }

    fn merge(&self, rhs: &Self, negate_rhs: bool) -> Self {
        if self.nvars != rhs.nvars {
            let n = self.nvars.max(rhs.nvars);
            return self.extend_vars(n).merge(&rhs.extend_vars(n), negate_rhs);
        }
        let n = self.nvars;
        let pad = |m: &Mono| if m.exps.len() < n { m.padded(n) } else { m.clone() };
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < rhs.terms.len() {
            let ord = if i == self.terms.len() {
                Ordering::Greater
            } else if j == rhs.terms.len() {
                Ordering::Less
            } else {
                self.terms[i].0.cmp(&rhs.terms[j].0)
            };
            match ord {
                Ordering::Less => {
                    out.push((pad(&self.terms[i].0), self.terms[i].1.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate_rhs { rhs.terms[j].1.negate() } else { rhs.terms[j].1.clone() };
                    out.push((pad(&rhs.terms[j].0), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_rhs {
                        self.terms[i].1.minus(&rhs.terms[j].1)
                    } else {
                        self.terms[i].1.plus(&rhs.terms[j].1)
                    };
                    if !c.is_zero() {
                        out.push((pad(&self.terms[i].0), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MultiPoly { nvars: n, terms: out }
    }

    /// Product keeping only terms whose exponent in variable `k` is at most
    /// `caps[k]` (when given). Valid truncation for polynomial factors.
    pub fn times_truncated(&self, rhs: &Self, caps: &[Option<i32>]) -> Self {
        let n = self.nvars.max(rhs.nvars);
        let fits = |m: &Mono| caps.iter().enumerate().all(|(k, c)| c.is_none_or(|c| m.exp(k) <= c));
        let mut map: FxHashMap<Mono, R> = FxHashMap::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                if !fits(&m) {
                    continue;
                }
                let c = ca.times(cb);
                match map.get_mut(&m) {
                    Some(v) => v.add_assign_r(&c),
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        let map = map.into_iter().map(|(m, c)| (m.padded(n), c)).collect();
        Self::from_map(n, map)
    }

    pub fn degree_in(&self, k: usize) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m.exp(k)).max()
    }

    pub fn min_degree_in(&self, k: usize) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m.exp(k)).min()
    }

    pub fn total_degree(&self) -> Option<i32> {
        self.terms.last().map(|(m, _)| m.deg)
    }

    /// `Some(d)` when every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let d = self.terms.first()?.0.deg;
        self.terms.iter().all(|(m, _)| m.deg == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.is_empty() || self.homogeneous_degree().is_some()
    }

    /// Degree in the variables listed in `vars` jointly (max over terms).
    pub fn degree_in_group(&self, vars: &[usize]) -> Option<i32> {
        self.terms.iter().map(|(m, _)| vars.iter().map(|&k| m.exp(k)).sum()).max()
    }

    /// Rename variables: variable `k` becomes `perm[k]` in `nvars_out` variables.
    pub fn rename(&self, perm: &[usize], nvars_out: usize) -> Self {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; nvars_out];
            for (k, &x) in m.exps.iter().enumerate() {
                e[perm[k]] += x;
            }
            (Mono::new(e), c.clone())
        });
        MultiPoly::from_terms(nvars_out, terms)
    }

    /// Exchange variables `i` and `j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = m.exps.clone();
            e.swap(i, j);
            (Mono::new(e), c.clone())
        });
        MultiPoly::from_terms(self.nvars, terms)
    }

    /// `(s_i f - f) / (z_{i+1} - z_i)` with zero-based `i` acting on variables
    /// `i` and `i + 1`. Computed termwise, so no division is performed.
    pub fn divided_difference(&self, i: usize) -> Self {
        self.divided_difference_pair(i, i + 1)
    }

    /// `(f|_{z_i <-> z_j} - f) / (z_j - z_i)`.
    pub fn divided_difference_pair(&self, i: usize, j: usize) -> Self {
        let mut map: FxHashMap<Mono, R> = FxHashMap::default();
        let mut push = |m: Mono, c: R| match map.get_mut(&m) {
            Some(v) => v.add_assign_r(&c),
            None => {
                map.insert(m, c);
            }
        };
        for (m, c) in &self.terms {
            let (a, b) = (m.exp(i), m.exp(j));
            if a == b {
                continue;
            }
            let (lo, d) = (a.min(b), (a - b).abs());
            let base = m.with_exp(i, lo).with_exp(j, lo);
            let c = if a > b { c.clone() } else { c.negate() };
            // a > b: sum_k z_j^k z_i^{d-1-k};  a < b: minus the mirror sum
            for k in 0..d {
                let (ei, ej) = if a > b { (d - 1 - k, k) } else { (k, d - 1 - k) };
                let t = base.with_exp(i, lo + ei).with_exp(j, lo + ej);
                push(t, c.clone());
            }
        }
        Self::from_map(self.nvars, map)
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> MultiPoly<S> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        MultiPoly { nvars: self.nvars, terms }
    }

    /// Evaluate all variables, mapping coefficients by `f`.
    pub fn eval_with<S: Ring>(&self, values: &[S], f: impl Fn(&R) -> S) -> Result<S, Error> {
        let mut cache: HashMap<(usize, i32), S> = HashMap::new();
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut t = f(c);
            for (k, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = match cache.get(&(k, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = if e > 0 {
                            values[k].pow(e as u32)
                        } else {
                            S::one()
                                .try_div_exact(&values[k])
                                .ok_or(Error::Pole(format!("variable {} at a non-invertible value", k + 1)))?
                                .pow((-e) as u32)
                        };
                        cache.insert((k, e), p.clone());
                        p
                    }
                };
                t = t.times(&p);
            }
            acc.add_assign_r(&t);
        }
        Ok(acc)
    }

    pub fn eval(&self, values: &[R]) -> Result<R, Error> {
        self.eval_with(values, |c| c.clone())
    }

    /// Substitute polynomial images for every variable, mapping coefficients
    /// by the ring homomorphism `f`. Negative exponents require monomial
    /// images with invertible coefficients.
    pub fn substitute<S: Ring>(&self, images: &[MultiPoly<S>], f: impl Fn(&R) -> S) -> Result<MultiPoly<S>, Error> {
        if images.len() < self.nvars {
            return Err(Error::Dimension(format!("{} images for {} variables", images.len(), self.nvars)));
        }
        let m_out = images.iter().map(|p| p.nvars).max().unwrap_or(0);
        if images.iter().all(|p| p.terms.len() == 1) {
            return self.substitute_monomial(images, f, m_out);
        }
        // single-term images are folded straight into the exponent vector;
        // the rest are expanded as raw term lists
        let mut cache: HashMap<(usize, i32), Vec<(Vec<i32>, S)>> = HashMap::new();
        let mut acc: FxHashMap<Mono, S> = FxHashMap::default();
        for (m, c) in &self.terms {
            let mut base = vec![0i32; m_out];
            let mut coef = f(c);
            let mut expand: Vec<(usize, i32)> = Vec::new();
            for (k, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if images[k].terms.len() == 1 {
                    let (im, ic) = &images[k].terms[0];
                    for (j, &y) in im.exps.iter().enumerate() {
                        base[j] += e * y;
                    }
                    let p = if e > 0 {
                        ic.pow(e as u32)
                    } else {
                        S::one()
                            .try_div_exact(ic)
                            .ok_or(Error::UnsupportedCoefficient("negative power of a non-unit".into()))?
                            .pow((-e) as u32)
                    };
                    coef = coef.times(&p);
                } else if images[k].terms.is_empty() {
                    if e < 0 {
                        return Err(Error::Pole("negative power of zero".into()));
                    }
                    coef = S::zero();
                } else {
                    expand.push((k, e));
                }
            }
            if coef.is_zero() {
                continue;
            }
            let mut t: Vec<(Vec<i32>, S)> = vec![(base, coef)];
            for (k, e) in expand {
                if !cache.contains_key(&(k, e)) {
                    let p = if e > 0 { images[k].pow(e as u32) } else { images[k].monomial_inverse()?.pow((-e) as u32) };
                    let list = p.terms.iter().map(|(pm, pc)| ((0..m_out).map(|j| pm.exp(j)).collect(), pc.clone())).collect();
                    cache.insert((k, e), list);
                }
                let p = &cache[&(k, e)];
                let mut next = Vec::with_capacity(t.len() * p.len());
                for (te, tc) in &t {
                    for (pe, pc) in p {
                        let e: Vec<i32> = te.iter().zip(pe).map(|(a, b)| a + b).collect();
                        next.push((e, tc.times(pc)));
                    }
                }
                t = next;
            }
            for (te, tc) in t {
                let tm = Mono::new(te);
                match acc.get_mut(&tm) {
                    Some(v) => v.add_assign_r(&tc),
                    None => {
                        acc.insert(tm, tc);
                    }
                }
            }
        }
        Ok(MultiPoly::from_map(m_out, acc))
    }

    fn substitute_monomial<S: Ring>(&self, images: &[MultiPoly<S>], f: impl Fn(&R) -> S, m_out: usize) -> Result<MultiPoly<S>, Error> {
        let mut coef_cache: HashMap<(usize, i32), S> = HashMap::new();
        let mut out: FxHashMap<Mono, S> = FxHashMap::default();
        for (m, c) in &self.terms {
            let mut e = vec![0; m_out];
            let mut coef = f(c);
            for (k, &x) in m.exps.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let (im, ic) = &images[k].terms[0];
                for (j, &y) in im.exps.iter().enumerate() {
                    e[j] += x * y;
                }
                let p = match coef_cache.get(&(k, x)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = if x > 0 {
                            ic.pow(x as u32)
                        } else {
                            S::one()
                                .try_div_exact(ic)
                                .ok_or(Error::UnsupportedCoefficient("negative power of a non-unit".into()))?
                                .pow((-x) as u32)
                        };
                        coef_cache.insert((k, x), p.clone());
                        p
                    }
                };
                coef = coef.times(&p);
            }
            let mono = Mono::new(e);
            match out.get_mut(&mono) {
                Some(v) => v.add_assign_r(&coef),
                None => {
                    out.insert(mono, coef);
                }
            }
        }
        Ok(MultiPoly::from_map(m_out, out))
    }

    fn monomial_inverse(&self) -> Result<Self, Error> {
        if self.terms.len() != 1 {
            return Err(Error::UnsupportedCoefficient("inverse of a non-monomial".into()));
        }
        let (m, c) = &self.terms[0];
        let ci = R::one().try_div_exact(c).ok_or(Error::UnsupportedCoefficient("inverse of a non-unit coefficient".into()))?;
        let e: Vec<i32> = m.exps.iter().map(|x| -x).collect();
        Ok(MultiPoly { nvars: self.nvars, terms: vec![(Mono::new(e), ci)] })
    }

    /// Collect by powers of variable `k`: `(exponent, coefficient)` with the
    /// coefficient no longer depending on `k`.
    pub fn collect_in(&self, k: usize) -> BTreeMap<i32, MultiPoly<R>> {
        let mut groups: BTreeMap<i32, Vec<(Mono, R)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            groups.entry(m.exp(k)).or_default().push((m.with_exp(k, 0), c.clone()));
        }
        groups.into_iter().map(|(e, ts)| (e, MultiPoly::from_terms(self.nvars, ts))).collect()
    }

    /// Exact division; `None` when `rhs` does not divide `self`.
    pub fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if self.nvars != rhs.nvars {
            let n = self.nvars.max(rhs.nvars);
            return self.extend_vars(n).div_exact(&rhs.extend_vars(n));
        }
        let n = self.nvars;
        if rhs.terms.is_empty() {
            return None;
        }
        if self.terms.is_empty() {
            return Some(MultiPoly::zero(n));
        }
        if rhs.terms.len() == 1 {
            let (gm, gc) = &rhs.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                terms.push((m.div(gm).padded(n), c.try_div_exact(gc)?));
            }
            // dividing by a monomial preserves the order
            return Some(MultiPoly { nvars: n, terms });
        }
        let lo: Vec<i32> = (0..n).map(|k| self.min_degree_in(k).unwrap() - rhs.min_degree_in(k).unwrap()).collect();
        let hi: Vec<i32> = (0..n).map(|k| self.degree_in(k).unwrap() - rhs.degree_in(k).unwrap()).collect();
        if (0..n).any(|k| hi[k] < lo[k]) {
            return None;
        }
        let (gm, gc) = rhs.terms.last().unwrap();
        let mut rem: BTreeMap<Mono, R> = self.terms.iter().map(|(m, c)| (m.padded(n), c.clone())).collect();
        let mut quot: Vec<(Mono, R)> = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.div(gm);
            if (0..n).any(|k| qm.exp(k) < lo[k] || qm.exp(k) > hi[k]) {
                return None;
            }
            let qc = c.try_div_exact(gc)?;
            for (tm, tc) in &rhs.terms[..rhs.terms.len() - 1] {
                let mm = tm.mul(&qm).padded(n);
                let sub = tc.times(&qc);
                match rem.get_mut(&mm) {
                    Some(v) => {
                        *v = v.minus(&sub);
                        if v.is_zero() {
                            rem.remove(&mm);
                        }
                    }
                    None => {
                        rem.insert(mm, sub.negate());
                    }
                }
            }
            quot.push((qm.padded(n), qc));
        }
        quot.reverse();
        Some(MultiPoly { nvars: n, terms: quot })
    }

    pub fn render_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono: Vec<String> = m
                    .exps
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e != 0)
                    .map(|(k, &e)| {
                        let name = names.get(k).map(|s| s.to_string()).unwrap_or_else(|| format!("z{}", k + 1));
                        if e == 1 {
                            name
                        } else {
                            format!("{}^{}", name, e)
                        }
                    })
                    .collect();
                let mono = mono.join("*");
                if mono.is_empty() {
                    c.render()
                } else if c.is_one() {
                    mono
                } else if c.negate().is_one() {
                    format!("-{}", mono)
                } else if c.is_atomic() {
                    format!("{} * {}", c.render(), mono)
                } else {
                    format!("({}) * {}", c.render(), mono)
                }
            })
            .collect();
        parts.join(" + ")
    }

    pub fn render_default(&self) -> String {
        self.render_with(&[])
    }
}

impl<R: Ring> Ring for MultiPoly<R> {
    fn zero() -> Self {
        MultiPoly::zero(0)
    }
    fn one() -> Self {
        MultiPoly::one(0)
    }
    fn from_int(n: i64) -> Self {
        MultiPoly::constant(0, R::from_int(n))
    }
    fn from_bigint(n: &num_bigint::BigInt) -> Self {
        MultiPoly::constant(0, R::from_bigint(n))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.deg == 0 && self.terms[0].0.exps.iter().all(|&e| e == 0) && self.terms[0].1.is_one()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.merge(rhs, false)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.merge(rhs, true)
    }
    fn times(&self, rhs: &Self) -> Self {
        let n = self.nvars.max(rhs.nvars);
        if self.terms.is_empty() || rhs.terms.is_empty() {
            return MultiPoly::zero(n);
        }
        let (small, big) = if self.terms.len() <= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        if small.terms.len() == 1 {
            let (m, c) = &small.terms[0];
            let terms = big
                .terms
                .iter()
                .map(|(t, v)| (t.mul(m).padded(n), v.times(c)))
                .filter(|(_, v)| !v.is_zero())
                .collect();
            // multiplying by a monomial preserves the order
            return MultiPoly { nvars: n, terms };
        }
        let mut map: FxHashMap<Mono, R> = FxHashMap::default();
        map.reserve(self.terms.len() * 2);
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let m = ma.mul(mb);
                let c = ca.times(cb);
                match map.get_mut(&m) {
                    Some(v) => v.add_assign_r(&c),
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        let map = map.into_iter().map(|(m, c)| (m.padded(n), c)).collect();
        Self::from_map(n, map)
    }
    fn negate(&self) -> Self {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.negate())).collect() }
    }
    fn try_div_exact(&self, rhs: &Self) -> Option<Self> {
        self.div_exact(rhs)
    }
    fn render(&self) -> String {
        self.render_default()
    }
    fn is_atomic(&self) -> bool {
        self.terms.len() <= 1
    }
}

impl<R: Ring> fmt::Display for MultiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_default())
    }
}

macro_rules! poly_ops {
    ($tr:ident, $m:ident, $call:ident) => {
        impl<R: Ring> $tr for MultiPoly<R> {
            type Output = MultiPoly<R>;
            fn $m(self, rhs: Self) -> Self {
                self.$call(&rhs)
            }
        }
        impl<'a, R: Ring> $tr<&'a MultiPoly<R>> for &'a MultiPoly<R> {
            type Output = MultiPoly<R>;
            fn $m(self, rhs: &'a MultiPoly<R>) -> MultiPoly<R> {
                self.$call(rhs)
            }
        }
    };
}

poly_ops!(Add, add, plus);
poly_ops!(Sub, sub, minus);
poly_ops!(Mul, mul, times);

impl<R: Ring> Neg for MultiPoly<R> {
    type Output = MultiPoly<R>;
    fn neg(self) -> Self {
        self.negate()
    }
}

/// Product of a list of polynomials.
pub fn product<R: Ring>(nvars: usize, factors: impl IntoIterator<Item = MultiPoly<R>>) -> MultiPoly<R> {
    factors.into_iter().fold(MultiPoly::one(nvars), |a, f| a.times(&f))
}
