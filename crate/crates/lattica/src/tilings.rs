//! Boxed plane partitions and totally symmetric self-complementary plane
//! partitions.

use crate::kernel::*;
use crate::schur::{schur_dimension, schur_jacobi_trudi, Partition, SkewShape};
use crate::{guard, Error};

/// Boxes in an `a x b x c` room: `prod (i+j+k-1)/(i+j+k-2)`.
pub fn macmahon(a: usize, b: usize, c: usize) -> BigInt {
    let mut num = int(1);
    let mut den = int(1);
    for i in 1..=a {
        for j in 1..=b {
            for k in 1..=c {
                num *= int((i + j + k - 1) as i64);
                den *= int((i + j + k - 2) as i64);
            }
        }
    }
    num.try_div_exact(&den).expect("integer product")
}

/// The cube-counting generating polynomial `prod (1-q^{i+j+k-1})/(1-q^{i+j+k-2})`.
pub fn macmahon_q(a: usize, b: usize, c: usize) -> LaurentQ {
    let one_minus = |m: usize| LaurentQ::constant(1).minus(&LaurentQ::q_pow(m as i32));
    let mut num = LaurentQ::constant(1);
    let mut den = LaurentQ::constant(1);
    for i in 1..=a {
        for j in 1..=b {
            for k in 1..=c {
                num = num.times(&one_minus(i + j + k - 1));
                den = den.times(&one_minus(i + j + k - 2));
            }
        }
    }
    num.try_div_exact(&den).expect("polynomial quotient")
}

/// `s_{b x c}(q^{a+b-1}, ..., q, 1)`, returned as `(N(q), shift)` with the
/// minimal exponent of `N` equal to 0 and the removed power `q^shift`.
pub fn macmahon_q_via_schur(a: usize, b: usize, c: usize) -> (LaurentQ, i32) {
    let m = a + b;
    let s = schur_jacobi_trudi(&SkewShape::straight(Partition::rectangle(b, c)), m);
    let values: Vec<LaurentQ> = (1..=m).map(|i| LaurentQ::q_pow((m - i) as i32)).collect();
    let v = s.eval_with(&values, |c| LaurentQ::constant(c.clone())).expect("polynomial");
    let shift = v.min_exp().unwrap_or(0);
    (v.shift(-shift), shift)
}

/// All `rows x cols` matrices with entries in `0..=top`, weakly decreasing
/// along rows and columns.
pub fn height_matrices(rows: usize, cols: usize, top: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut h = vec![vec![0usize; cols]; rows];
    fn rec(k: usize, rows: usize, cols: usize, top: usize, h: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if k == rows * cols {
            out.push(h.clone());
            return;
        }
        let (i, j) = (k / cols, k % cols);
        let mut hi = top;
        if i > 0 {
            hi = hi.min(h[i - 1][j]);
        }
        if j > 0 {
            hi = hi.min(h[i][j - 1]);
        }
        for v in 0..=hi {
            h[i][j] = v;
            rec(k + 1, rows, cols, top, h, out);
        }
        h[i][j] = 0;
    }
    if rows * cols == 0 {
        return vec![h];
    }
    rec(0, rows, cols, top, &mut h, &mut out);
    out
}

/// Plane partitions in an `a x b x c` box, by enumeration of heights.
pub fn plane_partitions_brute(a: usize, b: usize, c: usize) -> Result<BigInt, Error> {
    guard("plane partition box volume", a * b * c, 24)?;
    Ok(int(height_matrices(a, b, c).len() as i64))
}

/// Weighted enumeration in `a + b` step variables. A plane partition is taken
/// on a `b x c` base with heights at most `a`; the cell in row `i` with
/// height `h` contributes `x_{a + i - h}`, which is the step at which its
/// lozenge is crossed.
pub fn plane_partitions_weighted(a: usize, b: usize, c: usize) -> Result<ZPoly, Error> {
    guard("plane partition box volume", a * b * c, 24)?;
    let m = a + b;
    let mut terms = Vec::new();
    for h in height_matrices(b, c, a) {
        let mut e = vec![0i32; m];
        for (i, row) in h.iter().enumerate() {
            for &hij in row {
                e[a + i - hij] += 1;
            }
        }
        terms.push((Mono::new(e), int(1)));
    }
    Ok(MultiPoly::from_terms(m, terms))
}

/// Cube-weighted enumeration, `sum q^{|pi|}`.
pub fn plane_partitions_q_brute(a: usize, b: usize, c: usize) -> Result<LaurentQ, Error> {
    guard("plane partition box volume", a * b * c, 24)?;
    let mut acc = LaurentQ::constant(0);
    for h in height_matrices(a, b, c) {
        let v: usize = h.iter().flatten().sum();
        acc = acc.plus(&LaurentQ::q_pow(v as i32));
    }
    Ok(acc)
}

/// `sum_{lambda_1 <= c} s_lambda(1^a) s_lambda(1^b)`.
pub fn macmahon_schur_sum(a: usize, b: usize, c: usize) -> BigInt {
    let rows = a.min(b);
    let mut acc = int(0);
    for k in 0..=rows * c {
        for lam in Partition::all_of(k, rows, c) {
            acc += schur_dimension(&lam, a) * schur_dimension(&lam, b);
        }
    }
    acc
}

/// `T_{y x x}` with entries `binomial(i + j, i)`, `i < y`, `j < x`. With the
/// plain `binomial(i, j)` the determinant below is already wrong for the
/// `2 x 2 x 2` room (4 instead of 20).
pub fn binomial_block(y: usize, x: usize) -> ExactMatrix<BigInt> {
    ExactMatrix::from_fn(y, x, |i, j| binomial((i + j) as i64, i as i64))
}

/// `det(1 + T_{c x b} T_{b x a} T_{a x c})`.
pub fn macmahon_binomial_det(a: usize, b: usize, c: usize) -> BigInt {
    let m = binomial_block(c, b)
        .mul(&binomial_block(b, a))
        .and_then(|p| p.mul(&binomial_block(a, c)))
        .expect("shapes chain");
    let id = ExactMatrix::<BigInt>::identity(c);
    let sum = ExactMatrix::from_fn(c, c, |i, j| id.get(i, j) + m.get(i, j));
    sum.det().expect("square")
}

/// Both auxiliary identities agree with the product formula.
pub fn auxiliary_identities_check(a: usize, b: usize, c: usize) -> bool {
    let n = macmahon(a, b, c);
    macmahon_schur_sum(a, b, c) == n && macmahon_binomial_det(a, b, c) == n
}

/// A polynomial in `tau`, stored as a one-variable polynomial.
pub type TauPoly = ZPoly;

pub fn render_tau(p: &TauPoly) -> String {
    p.render_with(&["tau"])
}

/// `tau` polynomial from ascending coefficients.
pub fn tau_poly(coeffs: &[i64]) -> TauPoly {
    MultiPoly::from_terms(1, coeffs.iter().enumerate().map(|(k, &c)| (Mono::new(vec![k as i32]), int(c))))
}

/// Ascending coefficient list of a `tau` polynomial.
pub fn tau_coeffs(p: &TauPoly) -> Vec<BigInt> {
    let d = p.degree_in(0).unwrap_or(-1);
    (0..=d).map(|k| p.coeff_of(&[k])).collect()
}

pub fn eval_tau(p: &TauPoly, tau: &BigRational) -> BigRational {
    p.eval_with(std::slice::from_ref(tau), |c| BigRational::from_integer(c.clone())).expect("polynomial")
}

/// Coefficient of `prod u_i^{2i-1}` in
/// `prod_{i<j} (u_j-u_i)/(1-u_i u_j) prod_i (1+tau u_i)^i/(1-u_i)`.
pub fn tsscpp_ct(n: usize) -> TauPoly {
    if n <= 1 {
        return tau_poly(&[1]);
    }
    let k = n - 1;
    let c = tsscpp_coefficient(n, k + 1, |nv| MultiPoly::var(nv, k));
    MultiPoly::from_terms(1, c.terms().iter().map(|(m, x)| (Mono::new(vec![m.exp(k)]), x.clone())))
}

/// `N_n(1)` from the same constant term with `tau = 1` substituted first.
pub fn tsscpp_ct_count(n: usize) -> BigInt {
    if n <= 1 {
        return int(1);
    }
    tsscpp_coefficient(n, n - 1, MultiPoly::one).coeff_of(&[])
}

// Variables `u_1..u_{n-1}` come first; `tau` (when present) last.
fn tsscpp_coefficient(n: usize, nv: usize, tau: impl Fn(usize) -> ZPoly) -> ZPoly {
    let k = n - 1;
    let u = |i: usize| MultiPoly::<BigInt>::var(nv, i);
    let mut factors = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            factors.push(Factor::Poly(u(j).minus(&u(i))));
            let mut m = vec![0; nv];
            m[i] = 1;
            m[j] = 1;
            factors.push(Factor::Geometric { coeff: int(1), mono: m });
        }
        let one_tau_u = MultiPoly::one(nv).plus(&u(i).times(&tau(nv)));
        factors.push(Factor::Poly(one_tau_u.pow(i as u32 + 1)));
        let mut m = vec![0; nv];
        m[i] = 1;
        factors.push(Factor::Geometric { coeff: int(1), mono: m });
    }
    let target: Vec<i32> = (1..=k).map(|i| 2 * i as i32 - 1).collect();
    let window = vec![2 * n as i32; k];
    extract_coefficient(nv, &factors, &target, &window).expect("window covers the target")
}

/// Sum over endpoint sets `0 <= r_1 < ... < r_{n-1}` of `det(N_{i, r_j})`
/// with `N_{i,r} = tau^{2i-r-1} binomial(i, 2i-r-1)`.
pub fn tsscpp_brute(n: usize) -> Result<TauPoly, Error> {
    guard("tsscpp brute size", n, 6)?;
    Ok(tsscpp_endpoint_sum(n, |i, r| {
        let d = 2 * i as i64 - r as i64 - 1;
        MultiPoly::monomial(vec![d.max(0) as i32], binomial(i as i64, d))
    }))
}

/// The endpoint sum at a numerical `tau`.
pub fn tsscpp_brute_at(n: usize, tau: &BigRational) -> BigRational {
    tsscpp_endpoint_sum(n, |i, r| {
        let d = 2 * i as i64 - r as i64 - 1;
        if d < 0 {
            return BigRational::zero();
        }
        BigRational::from_integer(binomial(i as i64, d)).times(&tau.pow(d as i32))
    })
}

fn tsscpp_endpoint_sum<R: Ring>(n: usize, entry: impl Fn(usize, usize) -> R) -> R {
    if n <= 1 {
        return R::one();
    }
    let k = n - 1;
    // path i needs 0 <= 2i - r - 1 <= i, so r <= 2k - 1
    let top = 2 * k;
    let mut total = R::zero();
    let mut chosen = Vec::with_capacity(k);
    fn rec<R: Ring>(
        start: usize,
        top: usize,
        k: usize,
        chosen: &mut Vec<usize>,
        entry: &impl Fn(usize, usize) -> R,
        total: &mut R,
    ) {
        if chosen.len() == k {
            let m = ExactMatrix::from_fn(k, k, |i, j| entry(i + 1, chosen[j]));
            total.add_assign_r(&m.det().expect("square"));
            return;
        }
        for r in start..top {
            chosen.push(r);
            rec(r + 1, top, k, chosen, entry, total);
            chosen.pop();
        }
    }
    rec(0, top, k, &mut chosen, &entry, &mut total);
    total
}

/// `prod_{i=0}^{n-1} (3i+1)! / (n+i)!`.
pub fn tsscpp_product(n: usize) -> BigInt {
    let mut num = int(1);
    let mut den = int(1);
    for i in 0..n as u64 {
        num *= factorial(3 * i + 1);
        den *= factorial(n as u64 + i);
    }
    num.try_div_exact(&den).expect("integer product")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TsscppMethod {
    ConstantTerm,
    Brute,
}

impl TsscppMethod {
    pub fn parse(s: &str) -> Result<Self, Error> {
        match s {
            "ct" => Ok(TsscppMethod::ConstantTerm),
            "brute" => Ok(TsscppMethod::Brute),
            _ => Err(Error::Domain(format!("unknown method {:?}", s))),
        }
    }
}

pub fn tsscpp(n: usize, method: TsscppMethod) -> Result<TauPoly, Error> {
    match method {
        TsscppMethod::ConstantTerm => Ok(tsscpp_ct(n)),
        TsscppMethod::Brute => tsscpp_brute(n),
    }
}
