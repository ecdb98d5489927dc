#![allow(dead_code)]

use lattica::kernel::*;
use proptest::prelude::*;

pub fn zpoly(nvars: usize, terms: &[(&[i32], i64)]) -> ZPoly {
    MultiPoly::from_terms(nvars, terms.iter().map(|(e, c)| (Mono::new(e.to_vec()), int(*c))))
}

pub fn arb_laurent() -> impl Strategy<Value = LaurentQ> {
    (-3i32..3, prop::collection::vec(-4i64..5, 0..4))
        .prop_map(|(lo, cs)| LaurentQ::from_coeffs(lo, cs.into_iter().map(BigInt::from).collect()))
}

pub fn arb_eisenstein() -> impl Strategy<Value = Eisenstein> {
    (-20i64..20, -20i64..20).prop_map(|(a, b)| Eisenstein::new(a, b))
}

pub fn arb_rational() -> impl Strategy<Value = BigRational> {
    (-50i64..50, 1i64..20).prop_map(|(p, q)| rat(p, q))
}

/// Random polynomial in `nvars` variables with exponents in `0..=maxdeg`.
pub fn arb_zpoly(nvars: usize, maxdeg: i32, maxterms: usize) -> impl Strategy<Value = ZPoly> {
    prop::collection::vec((prop::collection::vec(0..=maxdeg, nvars), -5i64..6), 0..=maxterms)
        .prop_map(move |ts| MultiPoly::from_terms(nvars, ts.into_iter().map(|(e, c)| (Mono::new(e), int(c)))))
}

pub fn arb_lpoly(nvars: usize, maxdeg: i32, maxterms: usize) -> impl Strategy<Value = LPoly> {
    prop::collection::vec((prop::collection::vec(0..=maxdeg, nvars), arb_laurent()), 0..=maxterms)
        .prop_map(move |ts| MultiPoly::from_terms(nvars, ts.into_iter().map(|(e, c)| (Mono::new(e), c))))
}

/// `q^a z_i - z_j`, one-based.
pub fn f(nv: usize, a: i32, i: usize, j: usize) -> LPoly {
    MultiPoly::linear(nv, &[(i - 1, LaurentQ::q_pow(a)), (j - 1, LaurentQ::constant(-1))], LaurentQ::zero())
}

/// Sum of `sign q^e z_i z_j z_k`.
pub fn cubic(terms: &[(i64, i32, [usize; 3])]) -> LPoly {
    MultiPoly::from_terms(
        6,
        terms.iter().map(|(s, e, v)| {
            let mut x = vec![0; 6];
            for &k in v {
                x[k - 1] += 1;
            }
            (Mono::new(x), LaurentQ::monomial(*s, *e))
        }),
    )
}

pub fn times_all(c: LaurentQ, fs: Vec<LPoly>) -> LPoly {
    product(6, fs).scale(&c)
}

/// The five size-6 components as displayed in the literature, in canonical
/// pattern order.
pub fn displayed_l6() -> Vec<LPoly> {
    let n6 = 6;
    let p1 = times_all(
        LaurentQ::monomial(-1, -6),
        vec![f(n6, 2, 1, 2), f(n6, 2, 1, 3), f(n6, 2, 2, 3), f(n6, 2, 4, 5), f(n6, 2, 4, 6), f(n6, 2, 5, 6)],
    );
    let c2 = cubic(&[
        (1, 8, [1, 2, 3]),
        (1, 8, [1, 2, 4]),
        (-1, 6, [1, 3, 4]),
        (-1, 6, [2, 3, 4]),
        (-1, 6, [1, 2, 5]),
        (-1, 6, [1, 2, 6]),
        (1, 2, [3, 4, 5]),
        (1, 2, [3, 4, 6]),
        (1, 2, [1, 5, 6]),
        (1, 2, [2, 5, 6]),
        (-1, 0, [3, 5, 6]),
        (-1, 0, [4, 5, 6]),
    ]);
    let p2 = times_all(LaurentQ::monomial(1, -7), vec![f(n6, 2, 1, 2), f(n6, 2, 3, 4), f(n6, 2, 5, 6), c2]);
    let p3 = times_all(
        LaurentQ::monomial(-1, -8),
        vec![f(n6, 2, 2, 3), f(n6, 2, 2, 4), f(n6, 2, 3, 4), f(n6, 4, 1, 5), f(n6, 4, 1, 6), f(n6, 2, 5, 6)],
    );
    let p4 = times_all(
        LaurentQ::monomial(-1, -8),
        vec![f(n6, 2, 1, 2), f(n6, 2, 3, 4), f(n6, 2, 3, 5), f(n6, 2, 4, 5), f(n6, 4, 1, 6), f(n6, 4, 2, 6)],
    );
    let c5 = cubic(&[
        (1, 10, [1, 2, 3]),
        (-1, 6, [2, 3, 4]),
        (-1, 6, [2, 3, 5]),
        (-1, 6, [1, 4, 5]),
        (-1, 6, [1, 2, 6]),
        (-1, 6, [1, 3, 6]),
        (1, 4, [2, 4, 5]),
        (1, 4, [3, 4, 5]),
        (1, 4, [2, 3, 6]),
        (1, 4, [1, 4, 6]),
        (1, 4, [1, 5, 6]),
        (-1, 0, [4, 5, 6]),
    ]);
    let p5 = times_all(LaurentQ::monomial(1, -9), vec![f(n6, 2, 2, 3), f(n6, 2, 4, 5), f(n6, 4, 1, 6), c5]);
    vec![p1, p2, p3, p4, p5]
}

/// `a A + b B + x_i - x_j` in the N = 4 Brauer layout (one-based).
pub fn bw(i: usize, j: usize, a: i64, b: i64) -> ZPoly {
    let t = [(4, int(a)), (5, int(b)), (i - 1, int(1)), (j - 1, int(-1))];
    MultiPoly::linear(6, &t, int(0))
}

pub fn brauer_four_crossing() -> ZPoly {
    product(6, [bw(1, 2, 1, 0), bw(2, 3, 1, 0), bw(3, 4, 1, 0), bw(4, 1, 0, 1)])
}

/// The displayed `(1 4)(2 3)` and `(1 2)(3 4)` components at N = 4.
pub fn brauer_four_display() -> (ZPoly, ZPoly) {
    let v = |k: usize| ZPoly::var(6, k);
    let (x1, x2, x3, x4, a, b) = (v(0), v(1), v(2), v(3), v(4), v(5));
    let sum = |ts: Vec<ZPoly>| ts.into_iter().fold(ZPoly::zero(6), |p, t| p.plus(&t));
    let q0 = sum(vec![
        a.times(&a),
        a.times(&b),
        b.times(&b),
        b.times(&x1).negate(),
        a.times(&x2),
        x1.times(&x2),
        a.times(&x3).negate(),
        x2.times(&x3).negate(),
        b.times(&x4),
        x1.times(&x4).negate(),
        x3.times(&x4),
    ]);
    let q1 = sum(vec![
        a.times(&a),
        a.times(&b).scale(&int(2)),
        b.times(&x1),
        a.times(&x2).negate(),
        x1.times(&x2).negate(),
        a.times(&x3),
        x2.times(&x3),
        b.times(&x4).negate(),
        x1.times(&x4),
        x3.times(&x4).negate(),
    ]);
    (product(6, [bw(1, 2, 1, 0), bw(3, 4, 1, 0), q0]), product(6, [bw(2, 3, 1, 0), bw(4, 1, 0, 1), q1]))
}

/// `k A + x_i - x_j` in the Joseph layout for size `2n` (one-based).
pub fn jw(n: usize, k: i64, i: usize, j: usize) -> ZPoly {
    let t = [(2 * n, int(k)), (i - 1, int(1)), (j - 1, int(-1))];
    MultiPoly::linear(2 * n + 1, &t, int(0))
}
