//! Six-vertex model with domain wall boundary conditions, alternating sign
//! matrices and the Toda chain identity.

use crate::kernel::*;
use crate::schur::{schur_dimension, Partition};
use crate::tilings::tsscpp_product;
use crate::{guard, Error};

/// Vertex types in the path picture (edges carrying a right or up arrow are
/// occupied). Bits are `(left, bottom, right, top)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Vertex {
    /// all four edges occupied
    A1,
    /// no edge occupied
    A2,
    /// horizontal edges occupied
    B1,
    /// vertical edges occupied
    B2,
    /// in from the left, out through the top
    C1,
    /// in from the bottom, out to the right
    C2,
}

impl Vertex {
    pub fn decode(left: bool, bottom: bool, right: bool, top: bool) -> Option<Vertex> {
        match (left, bottom, right, top) {
            (true, true, true, true) => Some(Vertex::A1),
            (false, false, false, false) => Some(Vertex::A2),
            (true, false, true, false) => Some(Vertex::B1),
            (false, true, false, true) => Some(Vertex::B2),
            (true, false, false, true) => Some(Vertex::C1),
            (false, true, true, false) => Some(Vertex::C2),
            _ => None,
        }
    }

    pub fn asm_entry(self) -> i8 {
        match self {
            Vertex::C1 => 1,
            Vertex::C2 => -1,
            _ => 0,
        }
    }
}

/// An `n x n` configuration. Row 0 is the top row. `h[r][c]` is the
/// horizontal edge to the left of vertex `(r, c)` (`c = n` is the right
/// boundary); `v[r][c]` is the vertical edge above vertex `(r, c)` (`r = n`
/// is the bottom boundary).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SixVertexConfig {
    pub n: usize,
    pub h: Vec<Vec<bool>>,
    pub v: Vec<Vec<bool>>,
}

impl SixVertexConfig {
    pub fn vertex(&self, r: usize, c: usize) -> Option<Vertex> {
        Vertex::decode(self.h[r][c], self.v[r + 1][c], self.h[r][c + 1], self.v[r][c])
    }

    /// Arrow conservation everywhere and domain wall boundaries.
    pub fn validate(&self) -> Result<(), Error> {
        let n = self.n;
        if self.h.len() != n || self.h.iter().any(|r| r.len() != n + 1) || self.v.len() != n + 1 || self.v.iter().any(|r| r.len() != n) {
            return Err(Error::Validation("edge arrays have the wrong shape".into()));
        }
        for r in 0..n {
            if !self.h[r][0] || self.h[r][n] {
                return Err(Error::Validation(format!("row {} boundary arrows are not incoming", r)));
            }
        }
        for c in 0..n {
            if !self.v[0][c] || self.v[n][c] {
                return Err(Error::Validation(format!("column {} boundary arrows are not outgoing", c)));
            }
        }
        for r in 0..n {
            for c in 0..n {
                if self.vertex(r, c).is_none() {
                    return Err(Error::Validation(format!("arrow conservation fails at ({}, {})", r, c)));
                }
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> Vec<Vec<Vertex>> {
        (0..self.n).map(|r| (0..self.n).map(|c| self.vertex(r, c).expect("valid configuration")).collect()).collect()
    }
}

/// Every DWBC configuration of size `n`, row by row from the top. The
/// vertical occupations entering each row are propagated from the row above.
pub fn enumerate_dwbc(n: usize) -> Result<Vec<SixVertexConfig>, Error> {
    guard("dwbc enumeration size", n, 7)?;
    let mut out = Vec::new();
    let mut h = vec![vec![false; n + 1]; n];
    let mut v = vec![vec![false; n]; n + 1];
    v[0] = vec![true; n];
    for row in h.iter_mut() {
        row[0] = true;
    }
    fn rec(n: usize, r: usize, c: usize, h: &mut Vec<Vec<bool>>, v: &mut Vec<Vec<bool>>, out: &mut Vec<SixVertexConfig>) {
        if r == n {
            if v[n].iter().all(|b| !b) {
                out.push(SixVertexConfig { n, h: h.clone(), v: v.clone() });
            }
            return;
        }
        if c == n {
            if !h[r][n] {
                rec(n, r + 1, 0, h, v, out);
            }
            return;
        }
        let left = h[r][c] as i32;
        let top = v[r][c] as i32;
        for bottom in [0, 1] {
            let right = left + bottom - top;
            if !(0..=1).contains(&right) {
                continue;
            }
            // the last row must leave the bottom boundary empty
            if r == n - 1 && bottom == 1 {
                continue;
            }
            h[r][c + 1] = right == 1;
            v[r + 1][c] = bottom == 1;
            rec(n, r, c + 1, h, v, out);
        }
        h[r][c + 1] = false;
        v[r + 1][c] = false;
    }
    if n == 0 {
        return Ok(vec![SixVertexConfig { n, h, v }]);
    }
    rec(n, 0, 0, &mut h, &mut v, &mut out);
    Ok(out)
}

/// Number of DWBC configurations by the same search, without storing them.
pub fn count_dwbc(n: usize) -> Result<u64, Error> {
    guard("dwbc enumeration size", n, 7)?;
    // state: occupied vertical edges between rows as a bitmask
    let mut layer: std::collections::HashMap<u32, u64> = std::collections::HashMap::new();
    layer.insert(((1u64 << n) - 1) as u32, 1);
    for _ in 0..n {
        let mut next = std::collections::HashMap::new();
        for (&top, &mult) in &layer {
            let mut partial: Vec<(u32, i32)> = vec![(0, 1)];
            for c in 0..n {
                let t = ((top >> c) & 1) as i32;
                let mut grown = Vec::new();
                for &(bot, left) in &partial {
                    for b in [0, 1] {
                        let right = left + b - t;
                        if (0..=1).contains(&right) {
                            grown.push((bot | ((b as u32) << c), right));
                        }
                    }
                }
                partial = grown;
            }
            for (bot, right) in partial {
                if right == 0 {
                    *next.entry(bot).or_insert(0) += mult;
                }
            }
        }
        layer = next;
    }
    Ok(layer.get(&0).copied().unwrap_or(0))
}

pub type Asm = Vec<Vec<i8>>;

pub fn asm_of(c: &SixVertexConfig) -> Result<Asm, Error> {
    c.validate()?;
    Ok(c.vertices().iter().map(|row| row.iter().map(|v| v.asm_entry()).collect()).collect())
}

pub fn validate_asm(a: &Asm) -> Result<(), Error> {
    let n = a.len();
    let line_ok = |it: &mut dyn Iterator<Item = i8>| {
        let nz: Vec<i8> = it.filter(|&e| e != 0).collect();
        !nz.is_empty()
            && nz.iter().all(|&e| e == 1 || e == -1)
            && nz[0] == 1
            && nz.windows(2).all(|w| w[0] == -w[1])
            && *nz.last().unwrap() == 1
    };
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::Validation("matrix is not square".into()));
    }
    for i in 0..n {
        if !line_ok(&mut a[i].iter().copied()) {
            return Err(Error::Validation(format!("row {} does not alternate", i)));
        }
        if !line_ok(&mut (0..n).map(|r| a[r][i])) {
            return Err(Error::Validation(format!("column {} does not alternate", i)));
        }
    }
    Ok(())
}

/// Inverse of `asm_of`: edge occupations are partial sums of the entries.
pub fn config_of_asm(a: &Asm) -> Result<SixVertexConfig, Error> {
    validate_asm(a)?;
    let n = a.len();
    let mut h = vec![vec![false; n + 1]; n];
    let mut v = vec![vec![false; n]; n + 1];
    for r in 0..n {
        let mut s = 0i32;
        for c in 0..=n {
            h[r][c] = 1 - s == 1;
            if c < n {
                s += a[r][c] as i32;
            }
        }
    }
    for c in 0..n {
        let mut s = 0i32;
        for r in (0..=n).rev() {
            v[r][c] = s == 1;
            if r > 0 {
                s += a[r - 1][c] as i32;
            }
        }
    }
    let cfg = SixVertexConfig { n, h, v };
    cfg.validate()?;
    Ok(cfg)
}

/// All ASMs of size `n` via the configurations.
pub fn enumerate_asms(n: usize) -> Result<Vec<Asm>, Error> {
    enumerate_dwbc(n)?.iter().map(asm_of).collect()
}

/// Spectral data. Grid row `r` (from the top) carries `x_{n-1-r}` so that
/// `x_0` sits on the bottom row; column `c` carries `y_c`. The weight at a
/// vertex is `w(z)` with `z = y_c / x_row`:
/// `a = q z - q^-1 z^-1` on `A1, A2`, `b = z - z^-1` on `B1, B2`,
/// `c = q - q^-1` on `C1, C2`.
#[derive(Clone, Debug)]
pub struct Weights<R> {
    pub q: R,
    pub qinv: R,
    pub x: Vec<R>,
    pub xinv: Vec<R>,
    pub y: Vec<R>,
    pub yinv: Vec<R>,
}

impl<R: Ring> Weights<R> {
    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn a(&self, i: usize, j: usize) -> R {
        let z = self.y[j].times(&self.xinv[i]);
        let zi = self.x[i].times(&self.yinv[j]);
        self.q.times(&z).minus(&self.qinv.times(&zi))
    }

    pub fn b(&self, i: usize, j: usize) -> R {
        self.y[j].times(&self.xinv[i]).minus(&self.x[i].times(&self.yinv[j]))
    }

    pub fn c(&self) -> R {
        self.q.minus(&self.qinv)
    }

    /// Weight of a vertex on row `x_i`, column `y_j`.
    pub fn weight(&self, v: Vertex, i: usize, j: usize) -> R {
        match v {
            Vertex::A1 | Vertex::A2 => self.a(i, j),
            Vertex::B1 | Vertex::B2 => self.b(i, j),
            Vertex::C1 | Vertex::C2 => self.c(),
        }
    }

    /// Drop `x_i` and `y_j`.
    pub fn without(&self, i: usize, j: usize) -> Self {
        let drop = |v: &Vec<R>, k: usize| v.iter().enumerate().filter(|(m, _)| *m != k).map(|(_, x)| x.clone()).collect();
        Weights {
            q: self.q.clone(),
            qinv: self.qinv.clone(),
            x: drop(&self.x, i),
            xinv: drop(&self.xinv, i),
            y: drop(&self.y, j),
            yinv: drop(&self.yinv, j),
        }
    }
}

impl<R: Ring> Weights<R> {
    /// Numerical parameters in a field.
    pub fn numeric(q: R, x: Vec<R>, y: Vec<R>) -> Result<Self, Error> {
        let inv = |v: &R| R::one().try_div_exact(v).ok_or_else(|| Error::Pole("zero spectral parameter".into()));
        Ok(Weights {
            qinv: inv(&q)?,
            q,
            xinv: x.iter().map(inv).collect::<Result<_, _>>()?,
            yinv: y.iter().map(inv).collect::<Result<_, _>>()?,
            x,
            y,
        })
    }
}

impl<C: Ring> Weights<MultiPoly<C>> {
    /// Variables `x_1..x_n, y_1..y_n` (in that order) as Laurent monomials,
    /// with `q` a constant coefficient.
    pub fn symbolic(n: usize, q: C, qinv: C) -> Self {
        let nv = 2 * n;
        let mono = |k: usize, e: i32| {
            let mut v = vec![0; nv];
            v[k] = e;
            MultiPoly::monomial(v, C::one())
        };
        Weights {
            q: MultiPoly::constant(nv, q),
            qinv: MultiPoly::constant(nv, qinv),
            x: (0..n).map(|k| mono(k, 1)).collect(),
            xinv: (0..n).map(|k| mono(k, -1)).collect(),
            y: (0..n).map(|k| mono(n + k, 1)).collect(),
            yinv: (0..n).map(|k| mono(n + k, -1)).collect(),
        }
    }
}

/// Sum over configurations of the product of vertex weights.
pub fn partition_function_brute<R: Ring>(w: &Weights<R>) -> Result<R, Error> {
    let n = w.n();
    guard("brute partition function size", n, 5)?;
    let mut total = R::zero();
    for cfg in enumerate_dwbc(n)? {
        let mut p = R::one();
        for (r, row) in cfg.vertices().iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                p = p.times(&w.weight(*v, n - 1 - r, c));
            }
        }
        total.add_assign_r(&p);
    }
    Ok(total)
}

/// Izergin's determinant, written in the ratio `y/x` used by the vertex
/// weights:
/// `Z = prod_{i,k} d(i,k) / prod_{i<j} (x_j/x_i - x_i/x_j)(y_i/y_j - y_j/y_i)
///      det(c / d(i,k))`
/// with `d(i,k) = (y_k/x_i - x_i/y_k)(q y_k/x_i - q^-1 x_i/y_k)`. The common
/// denominators of the determinant rows are cleared first, so the only
/// division is by the product over pairs.
pub fn izergin<R: Ring>(w: &Weights<R>) -> Result<R, Error> {
    let n = w.n();
    // d(i, k) = (y_k/x_i - x_i/y_k)(q y_k/x_i - q^-1 x_i/y_k)
    let d = |i: usize, k: usize| {
        let u = w.y[k].times(&w.xinv[i]);
        let ui = w.x[i].times(&w.yinv[k]);
        u.minus(&ui).times(&w.q.times(&u).minus(&w.qinv.times(&ui)))
    };
    let dm: Vec<Vec<R>> = (0..n).map(|i| (0..n).map(|k| d(i, k)).collect()).collect();
    let e = ExactMatrix::from_fn(n, n, |i, j| {
        let mut p = R::one();
        for (k, dk) in dm[i].iter().enumerate() {
            if k != j {
                p = p.times(dk);
            }
        }
        p
    });
    // Laplace expansion needs no division, which is what makes small
    // symbolic cases fast
    let det = if n <= 4 { e.det_cofactor()? } else { e.det()? };
    let mut num = w.c().pow(n as u32).times(&det);
    for i in 0..n {
        for j in i + 1..n {
            for f in [
                w.x[j].times(&w.xinv[i]).minus(&w.x[i].times(&w.xinv[j])),
                w.y[i].times(&w.yinv[j]).minus(&w.y[j].times(&w.yinv[i])),
            ] {
                if f.is_zero() {
                    return Err(Error::Pole("coinciding spectral parameters; use the brute-force route".into()));
                }
                num = num.try_div_exact(&f).ok_or_else(|| Error::NotExact("Izergin prefactor".into()))?;
            }
        }
    }
    Ok(num)
}

/// Right-hand side of Korepin's recursion at `y_1 = x_1`:
/// `c prod_{i>=2} a(x_1/x_i) prod_{j>=2} a(y_j/x_1) Z_{n-1}`. The caller
/// supplies `Z_{n-1}` on the remaining parameters.
pub fn korepin_factor<R: Ring>(w: &Weights<R>) -> R {
    let n = w.n();
    let mut p = w.c();
    for i in 1..n {
        // q x_1/x_i - q^-1 x_i/x_1
        let t = w.q.times(&w.x[0]).times(&w.xinv[i]).minus(&w.qinv.times(&w.x[i]).times(&w.xinv[0]));
        p = p.times(&t);
    }
    for j in 1..n {
        p = p.times(&w.a(0, j));
    }
    p
}

/// `w` with `y_1` replaced by `x_1`.
pub fn at_y1_equals_x1<R: Ring>(w: &Weights<R>) -> Weights<R> {
    let mut v = w.clone();
    v.y[0] = w.x[0].clone();
    v.yinv[0] = w.xinv[0].clone();
    v
}

/// The recursion for both the brute and the determinant routes.
pub fn korepin_check<R: Ring>(w: &Weights<R>) -> Result<bool, Error> {
    let n = w.n();
    guard("korepin check size", n, 4)?;
    if n == 0 {
        return Ok(true);
    }
    let at = at_y1_equals_x1(w);
    let rest = at.without(0, 0);
    let rhs_brute = korepin_factor(&at).times(&partition_function_brute(&rest)?);
    let lhs_brute = partition_function_brute(&at)?;
    let rhs_iz = korepin_factor(&at).times(&izergin(&rest)?);
    let lhs_iz = izergin(&at)?;
    Ok(lhs_brute == rhs_brute && lhs_iz == rhs_iz)
}

/// `x_k^{n-1} Z_n` is a polynomial in `x_k^2` of degree at most `n-1`, for
/// every variable of a symbolic `Z_n`.
pub fn degree_bound_holds<C: Ring>(z: &MultiPoly<C>, n: usize) -> bool {
    let top = n as i32 - 1;
    z.terms().iter().all(|(m, _)| m.exps().iter().all(|&e| e.abs() <= top && (e + top) % 2 == 0))
}

/// `prod_{i=0}^{n-1} (3i+1)!/(n+i)!`.
pub fn asm_count(n: usize) -> BigInt {
    tsscpp_product(n)
}

/// Number of ASMs whose top-row 1 sits in column `k`, for each `k`.
pub fn asm_refined(n: usize) -> Result<Vec<BigInt>, Error> {
    guard("refined asm count size", n, 6)?;
    let mut counts = vec![int(0); n];
    for a in enumerate_asms(n)? {
        let k = a[0].iter().position(|&e| e == 1).expect("top row has a 1");
        counts[k] += int(1);
    }
    Ok(counts)
}

/// `s_{lambda^(n)}(1^{2n}) = 3^{n(n-1)/2} A_n`, with the left side from the
/// dimension product.
pub fn schur_identification_check(n: usize) -> bool {
    let s = schur_dimension(&Partition::doubled_staircase(n), 2 * n);
    s == int(3).pow((n * (n.saturating_sub(1)) / 2) as u32) * asm_count(n)
}

/// `ln(A_n) / n^2`, the logarithm of `A_n^{1/n^2}`.
pub fn asm_growth_log(n: usize) -> f64 {
    let a = asm_count(n);
    let bits = a.bits();
    // A_n can exceed f64 range only far beyond the sizes used here
    let shift = bits.saturating_sub(60);
    let top: f64 = (&a >> shift).to_string().parse().expect("fits");
    (top.ln() + shift as f64 * std::f64::consts::LN_2) / (n * n) as f64
}

/// `3 sqrt(3) / 4`.
pub fn asm_growth_limit() -> f64 {
    3.0 * 3f64.sqrt() / 4.0
}

/// Outcome of a Toda chain check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TodaOutcome {
    Holds,
    Fails,
    /// `tau_n` vanishes on the whole window, nothing to compare
    Degenerate,
}

/// `tau_0 = 1`, `tau_k = det(d^{i+j} phi)_{i,j<k} / (prod_{m<k} m!)^2`.
pub fn toda_taus(phi: &TruncatedSeries<BigRational>, kmax: usize) -> Result<Vec<TruncatedSeries<BigRational>>, Error> {
    if phi.order() < 2 * kmax {
        return Err(Error::InsufficientPrecision(format!("order {} below {}", phi.order(), 2 * kmax)));
    }
    let mut derivs = vec![phi.clone()];
    for _ in 0..2 * kmax.saturating_sub(1) {
        let d = derivs.last().unwrap().derivative()?;
        derivs.push(d);
    }
    let mut taus = vec![TruncatedSeries::one(phi.order())];
    let mut norm = BigRational::one();
    for k in 1..=kmax {
        norm = norm.times(&BigRational::from_integer(factorial(k as u64 - 1).pow(2)));
        let order = phi.order() - 2 * (k - 1);
        let det = series_det(&(0..k).map(|i| (0..k).map(|j| derivs[i + j].truncate(order)).collect()).collect::<Vec<Vec<_>>>(), order);
        taus.push(det.scale(&BigRational::one().try_div_exact(&norm).expect("nonzero")));
    }
    Ok(taus)
}

/// Leibniz expansion; the matrices here are at most 5 x 5.
fn series_det(m: &[Vec<TruncatedSeries<BigRational>>], order: usize) -> TruncatedSeries<BigRational> {
    let k = m.len();
    let mut total = TruncatedSeries::zero(order);
    let mut perm: Vec<usize> = (0..k).collect();
    permutations(&mut perm, 0, &mut |p| {
        let inv = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let mut t = TruncatedSeries::one(order);
        for (i, &pi) in p.iter().enumerate() {
            t = t.times(&m[i][pi]);
        }
        total = if inv % 2 == 0 { total.plus(&t) } else { total.minus(&t) };
    });
    total
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// `n^2 tau_{n+1} tau_{n-1} = tau_n tau_n'' - (tau_n')^2` on the common
/// window.
pub fn toda_chain_check(phi: &TruncatedSeries<BigRational>, n: usize) -> Result<TodaOutcome, Error> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    if phi.order() < 2 * n + 2 {
        return Err(Error::InsufficientPrecision(format!("order {} below {}", phi.order(), 2 * n + 2)));
    }
    let taus = toda_taus(phi, n + 1)?;
    let tn = &taus[n];
    if tn.coeffs().iter().all(|c| c.is_zero()) {
        return Ok(TodaOutcome::Degenerate);
    }
    let d1 = tn.derivative()?;
    let d2 = d1.derivative()?;
    let rhs = tn.times(&d2).minus(&d1.times(&d1));
    let lhs = taus[n + 1].times(&taus[n - 1]).scale(&BigRational::from_integer(int((n * n) as i64)));
    Ok(if lhs.agrees_with(&rhs) { TodaOutcome::Holds } else { TodaOutcome::Fails })
}
