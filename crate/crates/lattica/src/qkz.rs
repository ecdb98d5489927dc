//! Level-one polynomial solution of the qKZ system on link patterns, its
//! verification suite, homogeneous limits and constant-term formulas.

use std::collections::HashMap;

use crate::kernel::*;
use crate::loops::{link_patterns, pattern_index, steady_state, tl_e, LinkPattern};
use crate::schur::{schur, Partition, SchurMethod};
use crate::sixvertex::{asm_count, asm_refined};
use crate::tilings::{macmahon, tau_poly, tsscpp_ct, TauPoly};
use crate::{guard, Error};

fn qp(e: i32) -> LaurentQ {
    LaurentQ::q_pow(e)
}

/// `a z_i + b z_j`.
fn lin(nv: usize, i: usize, a: LaurentQ, j: usize, b: LaurentQ) -> LPoly {
    MultiPoly::linear(nv, &[(i, a), (j, b)], LaurentQ::zero())
}

/// `q x_i - q^{-1} x_j` over the given variable indices, `i < j`.
fn q_vandermonde(nv: usize, vars: &[usize]) -> LPoly {
    let mut p = LPoly::one(nv);
    for (a, &i) in vars.iter().enumerate() {
        for &j in &vars[a + 1..] {
            p = p.times(&lin(nv, i, qp(1), j, qp(-1).negate()));
        }
    }
    p
}

/// `Psi_{0^n} = prod_{i<j<=n} (q z_i - q^-1 z_j) prod_{n<i<j} (q^-1 z_j - q z_i)`.
pub fn qkz_base(n: usize) -> LPoly {
    let l = 2 * n;
    let mut p = q_vandermonde(l, &(0..n).collect::<Vec<_>>());
    for i in n..l {
        for j in i + 1..l {
            p = p.times(&lin(l, j, qp(-1), i, qp(1).negate()));
        }
    }
    p
}

/// Components `Psi_pi` in `z_1..z_{2n}`, indexed like `link_patterns(n)`.
#[derive(Clone, Debug)]
pub struct QkzSolution {
    pub n: usize,
    pub patterns: Vec<LinkPattern>,
    pub components: Vec<LPoly>,
    /// `Psi_{0^n}(1, ..., 1)`
    pub base_at_one: LaurentQ,
    index: HashMap<LinkPattern, usize>,
}

impl QkzSolution {
    pub fn component(&self, pi: &LinkPattern) -> Option<&LPoly> {
        self.index.get(pi).map(|&k| &self.components[k])
    }

    pub fn nvars(&self) -> usize {
        2 * self.n
    }

    /// `Psi_{0^n}(1, ..., 1)` at `q = w`. Its value is `3^{n(n-1)/2}` for
    /// either primitive cube root, so the sign recorded here is `+1`.
    pub fn base_at_omega(&self) -> Eisenstein {
        at_omega(&self.base_at_one)
    }
}

fn at_omega(c: &LaurentQ) -> Eisenstein {
    c.eval(&Eisenstein::omega(), &Eisenstein::omega().conj())
}

/// The triangular construction, checking every box-addition route.
pub fn qkz_solve(n: usize) -> Result<QkzSolution, Error> {
    solve(n, true)
}

/// Same construction following a single route per component.
pub fn qkz_solve_fast(n: usize) -> Result<QkzSolution, Error> {
    solve(n, false)
}

fn solve(n: usize, every_route: bool) -> Result<QkzSolution, Error> {
    guard("qkz size n", n, 5)?;
    if n == 0 {
        return Err(Error::Domain("qkz needs n >= 1".into()));
    }
    let l = 2 * n;
    let patterns = link_patterns(n)?;
    let young: Vec<Partition> = patterns.iter().map(|p| p.to_young()).collect::<Result<_, _>>()?;
    let mut comps: Vec<Option<LPoly>> = vec![None; patterns.len()];
    comps[0] = Some(qkz_base(n));
    for k in 0..patterns.len() {
        let psi = comps[k].clone().ok_or_else(|| Error::Consistency(format!("{} was never reached", patterns[k])))?;
        let pi = &patterns[k];
        for i in 1..l {
            if pi.partner(i) != i + 1 {
                continue;
            }
            let mut bigger = None;
            let mut others = Vec::new();
            for (m, p) in patterns.iter().enumerate() {
                if m == k || tl_e(i, p).0 != *pi {
                    continue;
                }
                if young[m].size() == young[k].size() + 1 {
                    if bigger.replace(m).is_some() {
                        return Err(Error::Consistency(format!("two new preimages of {} under e_{}", pi, i)));
                    }
                } else if young[m].size() < young[k].size() && young[k].contains(&young[m]) {
                    others.push(m);
                } else {
                    return Err(Error::Consistency(format!("preimage {} of {} under e_{} is not below it", p, pi, i)));
                }
            }
            // a little arch at the boundary of the staircase adds no box
            let Some(new) = bigger else { continue };
            if comps[new].is_some() && !every_route {
                continue;
            }
            let mut cand = lin(l, i - 1, qp(1), i, qp(-1).negate()).times(&psi.divided_difference(i - 1));
            for &o in &others {
                let po = comps[o].as_ref().ok_or_else(|| Error::Consistency(format!("{} needed before it was built", patterns[o])))?;
                cand = cand.minus(po);
            }
            match &comps[new] {
                None => comps[new] = Some(cand),
                Some(prev) if *prev != cand => {
                    return Err(Error::Consistency(format!("{} depends on the box-addition order", patterns[new])));
                }
                Some(_) => {}
            }
        }
    }
    let components: Vec<LPoly> = comps.into_iter().map(|c| c.expect("all built")).collect();
    let base_at_one = at_ones(&components[0]);
    let index = pattern_index(&patterns);
    Ok(QkzSolution { n, patterns, components, base_at_one, index })
}

fn at_ones(p: &LPoly) -> LaurentQ {
    let mut acc = LaurentQ::zero();
    for (_, c) in p.terms() {
        acc.add_assign_r(c);
    }
    acc
}

/// Outcome of the verification suite; each failure names its witness.
#[derive(Clone, Debug, Default)]
pub struct QkzReport {
    pub n: usize,
    pub exchange: bool,
    pub cyclic: bool,
    pub wheel: bool,
    pub recurrence: bool,
    pub dyck: bool,
    pub failures: Vec<String>,
}

impl QkzReport {
    pub fn holds(&self) -> bool {
        self.exchange && self.cyclic && self.wheel && self.recurrence && self.dyck
    }
}

/// `(e_i Psi)_pi` for every `pi`.
fn apply_e(s: &QkzSolution, i: usize) -> Vec<LPoly> {
    let l = s.nvars();
    let mut out = vec![LPoly::zero(l); s.patterns.len()];
    for (k, p) in s.patterns.iter().enumerate() {
        let (img, loops) = tl_e(i, p);
        let w = LaurentQ::tau().pow(loops);
        let t = s.index[&img];
        out[t] = out[t].plus(&s.components[k].map_coeffs(|c| c.times(&w)));
    }
    out
}

/// `(q^-1 z_i - q z_{i+1}) Psi + (z_i - z_{i+1}) e_i Psi = (q^-1 z_{i+1} - q z_i) s_i Psi`.
pub fn exchange_check(s: &QkzSolution, i: usize) -> Vec<String> {
    let l = s.nvars();
    let e = apply_e(s, i);
    let a = lin(l, i - 1, qp(-1), i, qp(1).negate());
    let b = lin(l, i - 1, LaurentQ::one(), i, LaurentQ::one().negate());
    let c = lin(l, i, qp(-1), i - 1, qp(1).negate());
    let mut bad = Vec::new();
    for (k, p) in s.patterns.iter().enumerate() {
        let lhs = a.times(&s.components[k]).plus(&b.times(&e[k]));
        let rhs = c.times(&s.components[k].swap_vars(i - 1, i));
        if lhs != rhs {
            bad.push(format!("exchange fails at i = {} for {}", i, p));
        }
    }
    bad
}

/// `Psi_pi(z_2, ..., z_L, s z_1)` with `s = q^6`, times `kappa`.
fn cycled(p: &LPoly, l: usize, kappa: &LaurentQ) -> LPoly {
    let terms = p.terms().iter().map(|(m, c)| {
        let e = m.exps();
        let mut out = vec![0; l];
        out[1..l].copy_from_slice(&e[..l - 1]);
        out[0] = e[l - 1];
        (Mono::new(out), c.times(&qp(6 * e[l - 1])).times(kappa))
    });
    MultiPoly::from_terms(l, terms)
}

/// `Psi_{rho pi}(z) = kappa Psi_pi(z_2, ..., z_L, q^6 z_1)`, `kappa = q^{-3(n-1)}`.
pub fn cyclic_check(s: &QkzSolution) -> Vec<String> {
    let l = s.nvars();
    let kappa = qp(-3 * (s.n as i32 - 1));
    let mut bad = Vec::new();
    for (k, p) in s.patterns.iter().enumerate() {
        if *s.component(&p.rotate()).expect("rotation stays in the basis") != cycled(&s.components[k], l, &kappa) {
            bad.push(format!("cyclicity fails for {}", p));
        }
    }
    bad
}

/// `f` with `z_j = q^2 z_i` and `z_k = q^4 z_i` (zero-based, `i < j < k`).
pub fn wheel_substitute(f: &LPoly, i: usize, j: usize, k: usize) -> LPoly {
    let l = f.nvars();
    let terms = f.terms().iter().map(|(m, c)| {
        let mut e = m.exps().to_vec();
        let (ej, ek) = (e[j], e[k]);
        e[i] += ej + ek;
        e[j] = 0;
        e[k] = 0;
        (Mono::new(e), c.times(&qp(2 * ej + 4 * ek)))
    });
    MultiPoly::from_terms(l, terms)
}

/// Wheel condition on every ordered triple.
pub fn wheel_check(s: &QkzSolution) -> Vec<String> {
    let l = s.nvars();
    let mut bad = Vec::new();
    for (k, p) in s.patterns.iter().enumerate() {
        for i in 0..l {
            for j in i + 1..l {
                for m in j + 1..l {
                    if !wheel_substitute(&s.components[k], i, j, m).is_zero() {
                        bad.push(format!("wheel fails for {} at z{} = q^2 z{}, z{} = q^4 z{}", p, j + 1, i + 1, m + 1, i + 1));
                    }
                }
            }
        }
    }
    bad
}

/// Drop the little arch `(i, i+1)` (one-based).
pub fn remove_little_arch(pi: &LinkPattern, i: usize) -> Result<LinkPattern, Error> {
    if pi.partner(i) != i + 1 {
        return Err(Error::Domain(format!("{} has no little arch at ({}, {})", pi, i, i + 1)));
    }
    let shift = |j: usize| if j < i - 1 { j } else { j - 2 };
    let partner = (0..pi.size()).filter(|&j| j != i - 1 && j != i).map(|j| shift(pi.partners0()[j])).collect();
    LinkPattern::new(partner)
}

/// `f` with `z_{i+1} = q^2 z_i` (one-based `i`).
fn merge_next(f: &LPoly, i: usize) -> LPoly {
    let terms = f.terms().iter().map(|(m, c)| {
        let mut e = m.exps().to_vec();
        let x = e[i];
        e[i - 1] += x;
        e[i] = 0;
        (Mono::new(e), c.times(&qp(2 * x)))
    });
    MultiPoly::from_terms(f.nvars(), terms)
}

/// The recurrence at `z_{i+1} = q^2 z_i` against the solution of size `n-1`.
pub fn recurrence_check(s: &QkzSolution, smaller: Option<&QkzSolution>) -> Result<Vec<String>, Error> {
    let (n, l) = (s.n, s.nvars());
    let mut bad = Vec::new();
    for i in 1..l {
        let mut pref = LPoly::constant(l, qp(-(n as i32 - 1)));
        for j in 0..i - 1 {
            pref = pref.times(&lin(l, i - 1, LaurentQ::one(), j, qp(2).negate()));
        }
        for j in i + 1..l {
            pref = pref.times(&lin(l, i - 1, qp(3), j, qp(-1).negate()));
        }
        // variables of the smaller system skip z_i and z_{i+1}
        let rename: Vec<usize> = (0..l - 2).map(|k| if k < i - 1 { k } else { k + 2 }).collect();
        for (k, p) in s.patterns.iter().enumerate() {
            let lhs = merge_next(&s.components[k], i);
            let rhs = if p.partner(i) != i + 1 {
                LPoly::zero(l)
            } else if n == 1 {
                pref.clone()
            } else {
                let sm = smaller.ok_or_else(|| Error::Domain("recurrence needs the smaller solution".into()))?;
                let pp = remove_little_arch(p, i)?;
                let sub = sm.component(&pp).ok_or_else(|| Error::Consistency(format!("{} missing", pp)))?;
                pref.times(&sub.rename(&rename, l))
            };
            if lhs != rhs {
                bad.push(format!("recurrence fails for {} at z{} = q^2 z{}", p, i + 1, i));
            }
        }
    }
    Ok(bad)
}

/// Signs `sign(pi(i) - i)`.
pub fn dyck_signs(pi: &LinkPattern) -> Vec<i32> {
    (1..=pi.size()).map(|i| if pi.partner(i) > i { 1 } else { -1 }).collect()
}

/// `Psi_pi(q^{-e_1}, ..., q^{-e_L})` against `(-1)^m (q - q^-1)^{2m} tau^{|pi|}`
/// at the pattern's own path and zero elsewhere.
pub fn dyck_check(s: &QkzSolution) -> Result<Vec<String>, Error> {
    let n = s.n;
    let m = (n * (n - 1) / 2) as u32;
    let lead = LaurentQ::q_minus_qinv().pow(2 * m).times(&LaurentQ::constant(if m % 2 == 0 { 1 } else { -1 }));
    let mut bad = Vec::new();
    for path in &s.patterns {
        let eps = dyck_signs(path);
        let vals: Vec<LaurentQ> = eps.iter().map(|&e| qp(-e)).collect();
        for (k, p) in s.patterns.iter().enumerate() {
            let v = s.components[k].eval_with(&vals, |c| c.clone())?;
            let want = if p == path { lead.times(&LaurentQ::tau().pow(p.to_young()?.size() as u32)) } else { LaurentQ::zero() };
            if v != want {
                bad.push(format!("specialization of {} at the path of {} is {}", p, path, v));
            }
        }
    }
    Ok(bad)
}

/// Exchange, cyclicity, wheel, recurrence and the path specializations.
pub fn verify_solution(s: &QkzSolution) -> Result<QkzReport, Error> {
    let smaller = if s.n > 1 { Some(qkz_solve_fast(s.n - 1)?) } else { None };
    let exch: Vec<String> = (1..s.nvars()).flat_map(|i| exchange_check(s, i)).collect();
    let cyc = cyclic_check(s);
    let wheel = wheel_check(s);
    let rec = recurrence_check(s, smaller.as_ref())?;
    let dyck = dyck_check(s)?;
    let mut r = QkzReport {
        n: s.n,
        exchange: exch.is_empty(),
        cyclic: cyc.is_empty(),
        wheel: wheel.is_empty(),
        recurrence: rec.is_empty(),
        dyck: dyck.is_empty(),
        failures: Vec::new(),
    };
    for v in [exch, cyc, wheel, rec, dyck] {
        r.failures.extend(v);
    }
    Ok(r)
}

/// `sum_pi Psi_pi` at `q = w` equals `s_{lambda(n)}(z_1..z_{2n})`.
pub fn sum_rule_check(n: usize) -> Result<bool, Error> {
    guard("sum rule size", n, 4)?;
    let s = qkz_solve_fast(n)?;
    let l = s.nvars();
    let mut total = LPoly::zero(l);
    for c in &s.components {
        total = total.plus(c);
    }
    let lhs = total.map_coeffs(at_omega);
    let rhs = schur(&Partition::doubled_staircase(n), l, SchurMethod::Ssyt)?.map_coeffs(|c| Eisenstein::from_bigint(c));
    Ok(lhs == rhs.extend_vars(l))
}

fn laurent_to_tau(c: &LaurentQ, what: &LinkPattern) -> Result<TauPoly, Error> {
    let co = c.to_tau().ok_or_else(|| Error::Consistency(format!("component of {} is not a polynomial in tau", what)))?;
    Ok(MultiPoly::from_terms(1, co.into_iter().enumerate().map(|(k, x)| (Mono::new(vec![k as i32]), x))))
}

/// `Psi_pi(1, ..., 1) / Psi_{0^n}(1, ..., 1)` as polynomials in `tau`.
/// Sizes up to 4 go through the symbolic solution; size 5 through the
/// constant-term components and the Chebyshev change of basis.
pub fn homogeneous_tau(n: usize) -> Result<Vec<(LinkPattern, TauPoly)>, Error> {
    guard("homogeneous limit size", n, 5)?;
    if n >= 5 {
        return intermediate_basis_tau(n);
    }
    homogeneous_tau_symbolic(&qkz_solve_fast(n)?)
}

pub fn homogeneous_tau_symbolic(s: &QkzSolution) -> Result<Vec<(LinkPattern, TauPoly)>, Error> {
    s.patterns
        .iter()
        .zip(&s.components)
        .map(|(p, c)| {
            let v = at_ones(c)
                .try_div_exact(&s.base_at_one)
                .ok_or_else(|| Error::NotExact(format!("{} at z = 1 over the base component", p)))?;
            Ok((p.clone(), laurent_to_tau(&v, p)?))
        })
        .collect()
}

/// The `tau = 1` vector divided by `A_n` equals the loop steady state.
pub fn steady_state_match(n: usize) -> Result<bool, Error> {
    let h = homogeneous_tau(n)?;
    let ss = steady_state(2 * n)?;
    let an = BigRational::from_integer(asm_count(n));
    let one = BigRational::one();
    let at1: HashMap<LinkPattern, BigRational> = h
        .iter()
        .map(|(p, t)| (p.clone(), t.eval_with(std::slice::from_ref(&one), |c| BigRational::from_integer(c.clone())).expect("polynomial")))
        .collect();
    Ok(ss.len() == h.len() && ss.iter().all(|(p, x)| at1.get(p).is_some_and(|v| v.clone().try_div_exact(&an).as_ref() == Some(x))))
}

/// Left ends of the little arches `(i, i+1)`, read cyclically (one-based,
/// `L` standing for the arch `(L, 1)`).
pub fn little_arches(pi: &LinkPattern) -> Vec<usize> {
    let l = pi.size();
    (0..l).filter(|&i| pi.partners0()[i] == (i + 1) % l).map(|i| i + 1).collect()
}

/// Sizes of the three families of nested arches, in cyclic order starting
/// from the first little arch, when there are exactly three little arches.
pub fn three_arch_type(pi: &LinkPattern) -> Option<(usize, usize, usize)> {
    let arches = little_arches(pi);
    if arches.len() != 3 {
        return None;
    }
    let l = pi.size();
    let depth = |i: usize| {
        let (a, b) = (i - 1, i % l);
        let mut k = 1;
        while k < l / 2 && pi.partners0()[(a + l - k) % l] == (b + k) % l {
            k += 1;
        }
        k
    };
    let d: Vec<usize> = arches.iter().map(|&i| depth(i)).collect();
    (d.iter().sum::<usize>() == pi.n()).then_some((d[0], d[1], d[2]))
}

/// The pattern with families of sizes `a`, `b`, `c`: the `a` family nested
/// around `(L, 1)`, then `b` and `c` in order.
pub fn three_arch_pattern(a: usize, b: usize, c: usize) -> Result<LinkPattern, Error> {
    let mut pairs = Vec::new();
    let l = 2 * (a + b + c);
    for i in 1..=a {
        pairs.push((i, l + 1 - i));
    }
    for k in 1..=b {
        pairs.push((a + k, a + 2 * b + 1 - k));
    }
    for k in 1..=c {
        pairs.push((a + 2 * b + k, a + 2 * b + 2 * c + 1 - k));
    }
    LinkPattern::from_pairs(&pairs)
}

/// Every three-arch component at `tau = 1` is the MacMahon number of its
/// family sizes.
pub fn three_arch_check(n: usize) -> Result<bool, Error> {
    let h = homogeneous_tau(n)?;
    let one = BigRational::one();
    let mut seen = false;
    for (p, t) in &h {
        if let Some((a, b, c)) = three_arch_type(p) {
            seen = true;
            let v = t.eval_with(std::slice::from_ref(&one), |c| BigRational::from_integer(c.clone())).expect("polynomial");
            if v != BigRational::from_integer(macmahon(a, b, c)) {
                return Ok(false);
            }
        }
    }
    Ok(seen || n < 3)
}

/// Variable groups `(gamma, alpha, beta)` for the three-arch layout.
pub fn three_arch_groups(a: usize, b: usize, c: usize) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let g = (0..a + b).collect();
    let al = (a + b..a + 2 * b + c).collect();
    let be = (a + 2 * b + c..2 * (a + b + c)).collect();
    (g, al, be)
}

/// `Psi_{a,b,c}` at `z = (q^-2 gamma, alpha, q^2 beta)` divided by the three
/// q-Vandermonde products.
pub fn three_arch_phi(s: &QkzSolution, a: usize, b: usize, c: usize) -> Result<LPoly, Error> {
    let pat = three_arch_pattern(a, b, c)?;
    let psi = s.component(&pat).ok_or_else(|| Error::Domain(format!("{} is not in this solution", pat)))?;
    let l = s.nvars();
    let (g, al, be) = three_arch_groups(a, b, c);
    let scale = |k: usize| if k < a + b { -2 } else if k < a + 2 * b + c { 0 } else { 2 };
    let sub = MultiPoly::from_terms(
        l,
        psi.terms().iter().map(|(m, x)| {
            let w: i32 = m.exps().iter().enumerate().map(|(k, &e)| e * scale(k)).sum();
            (m.clone(), x.times(&qp(w)))
        }),
    );
    let den = q_vandermonde(l, &g).times(&q_vandermonde(l, &al)).times(&q_vandermonde(l, &be));
    sub.div_exact(&den).ok_or_else(|| Error::NotExact(format!("q-Vandermonde factors of {}", pat)))
}

/// `prod_{i<=a, j<=b} (alpha_j - beta_i)` in the layout of `(a, b, 0)`.
pub fn three_arch_base(a: usize, b: usize) -> LPoly {
    let l = 2 * (a + b);
    let (_, al, be) = three_arch_groups(a, b, 0);
    let mut p = LPoly::one(l);
    for &bi in &be {
        for &aj in &al {
            p = p.times(&lin(l, aj, LaurentQ::one(), bi, LaurentQ::one().negate()));
        }
    }
    p
}

/// `q^E (-1)^S` with `E = -b(a+b-1) + c(a-1) + c^2` and
/// `S = ((a+b)(a+b-1) + c(2b+c-1)) / 2`, the normalization under which
/// `Phi_{a,b,0}` is the plain product and the recurrence has unit factor.
pub fn three_arch_prefactor(a: usize, b: usize, c: usize) -> LaurentQ {
    let (a, b, c) = (a as i32, b as i32, c as i32);
    let e = -b * (a + b - 1) + c * (a - 1) + c * c;
    let s = ((a + b) * (a + b - 1) + c * (2 * b + c - 1)) / 2;
    LaurentQ::monomial(if s % 2 == 0 { 1 } else { -1 }, e)
}

/// `Phi_{a,b,0} = prod (alpha_j - beta_i)` and
/// `Phi_{a,b,c}|_{beta_1 = alpha_{b+c}} = prod_k (alpha_{b+c} - gamma_k) Phi_{a,b,c-1}`
/// for every `a + b + c <= max_n`, with `Phi` the normalized quotient.
pub fn three_arch_structure_check(max_n: usize) -> Result<bool, Error> {
    guard("three-arch structure size", max_n, 4)?;
    let sols: Vec<QkzSolution> = (1..=max_n).map(qkz_solve_fast).collect::<Result<_, _>>()?;
    for n in 1..=max_n {
        for a in 0..=n {
            for b in 0..=n - a {
                let c = n - a - b;
                if c == 0 {
                    let phi = three_arch_phi(&sols[n - 1], a, b, 0)?;
                    if phi != three_arch_base(a, b).scale(&three_arch_prefactor(a, b, 0)) {
                        return Ok(false);
                    }
                } else if n >= 2 {
                    let want = three_arch_prefactor(a, b, c).try_div_exact(&three_arch_prefactor(a, b, c - 1)).expect("monomials");
                    if three_arch_recurrence_ratio(&sols[n - 1], &sols[n - 2], a, b, c)? != Some(want) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// For `c >= 1`, the ratio
/// `Phi_{a,b,c}|_{beta_1 = alpha_{b+c}} / (prod_k (alpha_{b+c} - gamma_k) Phi_{a,b,c-1})`
/// when it is a constant.
pub fn three_arch_recurrence_ratio(s: &QkzSolution, smaller: &QkzSolution, a: usize, b: usize, c: usize) -> Result<Option<LaurentQ>, Error> {
    if c == 0 {
        return Err(Error::Domain("the recurrence needs c >= 1".into()));
    }
    let l = s.nvars();
    let phi = three_arch_phi(s, a, b, c)?;
    let alpha_last = a + 2 * b + c - 1;
    let beta_first = alpha_last + 1;
    let lhs = MultiPoly::from_terms(
        l,
        phi.terms().iter().map(|(m, x)| {
            let mut e = m.exps().to_vec();
            e[alpha_last] += e[beta_first];
            e[beta_first] = 0;
            (Mono::new(e), x.clone())
        }),
    );
    let rename: Vec<usize> = (0..l - 2).map(|k| if k < alpha_last { k } else { k + 2 }).collect();
    let mut rhs = three_arch_phi(smaller, a, b, c - 1)?.rename(&rename, l);
    for k in 0..a + b {
        rhs = rhs.times(&lin(l, alpha_last, LaurentQ::one(), k, LaurentQ::one().negate()));
    }
    let Some(ratio) = lhs.div_exact(&rhs) else { return Ok(None) };
    Ok(ratio.as_constant())
}

/// The numerator `(q^-1 - q x) + (1 - x) e_i` of `R_i(x)` acting on vectors
/// indexed by link patterns, with `x` a polynomial; the denominator is
/// `q^-1 x - q`.
pub struct RMatrixTL {
    pub patterns: Vec<LinkPattern>,
    images: Vec<Vec<(usize, u32)>>,
}

impl RMatrixTL {
    pub fn new(n: usize) -> Result<Self, Error> {
        let patterns = link_patterns(n)?;
        let idx = pattern_index(&patterns);
        let l = 2 * n;
        let images = (1..=l)
            .map(|i| {
                patterns
                    .iter()
                    .map(|p| {
                        let (img, loops) = tl_e(i, p);
                        (idx[&img], loops)
                    })
                    .collect()
            })
            .collect();
        Ok(RMatrixTL { patterns, images })
    }

    pub fn apply(&self, i: usize, x: &LPoly, v: &[LPoly]) -> Vec<LPoly> {
        let nv = x.nvars();
        let one = LPoly::one(nv);
        let diag = LPoly::constant(nv, qp(-1)).minus(&x.scale(&qp(1)));
        let off = one.minus(x);
        let mut out: Vec<LPoly> = v.iter().map(|c| diag.times(c)).collect();
        for (k, &(t, loops)) in self.images[i - 1].iter().enumerate() {
            let term = off.times(&v[k]).scale(&LaurentQ::tau().pow(loops));
            out[t] = out[t].plus(&term);
        }
        out
    }

    pub fn denominator(x: &LPoly) -> LPoly {
        x.scale(&qp(-1)).minus(&LPoly::constant(x.nvars(), qp(1)))
    }

    fn basis(&self, k: usize, nv: usize) -> Vec<LPoly> {
        (0..self.patterns.len()).map(|j| if j == k { LPoly::one(nv) } else { LPoly::zero(nv) }).collect()
    }

    /// `R_i(z) R_i(1/z) = 1` for every generator, with denominators cleared.
    pub fn unitarity_holds(&self) -> bool {
        let l = 2 * self.patterns[0].n();
        let z = LPoly::var(1, 0);
        let zi = LPoly::monomial(vec![-1], LaurentQ::one());
        let d = Self::denominator(&z).times(&Self::denominator(&zi));
        (1..=l).all(|i| {
            (0..self.patterns.len()).all(|k| {
                let v = self.basis(k, 1);
                let w = self.apply(i, &z, &self.apply(i, &zi, &v));
                w.iter().zip(&v).all(|(a, b)| *a == d.times(b))
            })
        })
    }

    /// `R_i(z) R_{i+1}(zw) R_i(w) = R_{i+1}(w) R_i(zw) R_{i+1}(z)` for
    /// neighbouring generators, cyclically.
    pub fn yang_baxter_holds(&self) -> bool {
        let l = 2 * self.patterns[0].n();
        let z = LPoly::var(2, 0);
        let w = LPoly::var(2, 1);
        let zw = z.times(&w);
        (1..=l).all(|i| {
            let j = i % l + 1;
            (0..self.patterns.len()).all(|k| {
                let v = self.basis(k, 2);
                let lhs = self.apply(i, &z, &self.apply(j, &zw, &self.apply(i, &w, &v)));
                let rhs = self.apply(j, &w, &self.apply(i, &zw, &self.apply(j, &z, &v)));
                lhs == rhs
            })
        })
    }
}

/// Polynomials in `(t, tau)`, `t` first.
pub type TTauPoly = ZPoly;

fn project_t_tau(p: &ZPoly, t: usize) -> TTauPoly {
    MultiPoly::from_terms(2, p.terms().iter().map(|(m, c)| (Mono::new(vec![m.exp(t), m.exp(t + 1)]), c.clone())))
}

/// `prod_l (1 + t u_l)(1 + tau u_l) prod_{l<m} (u_m - u_l)(1 + tau u_m + u_l u_m)`
/// at `prod u_i^{2i-1}`.
pub fn fn_ct(n: usize) -> Result<TTauPoly, Error> {
    guard("F_n size", n, 7)?;
    if n <= 1 {
        return Ok(TTauPoly::one(2));
    }
    let k = n - 1;
    let nv = k + 2;
    let u = |i: usize| ZPoly::var(nv, i);
    let (t, tau) = (ZPoly::var(nv, k), ZPoly::var(nv, k + 1));
    let one = ZPoly::one(nv);
    let mut factors = Vec::new();
    for l in 0..k {
        factors.push(Factor::Poly(one.plus(&t.times(&u(l)))));
        factors.push(Factor::Poly(one.plus(&tau.times(&u(l)))));
        for m in l + 1..k {
            factors.push(Factor::Poly(u(m).minus(&u(l))));
            factors.push(Factor::Poly(one.plus(&tau.times(&u(m))).plus(&u(l).times(&u(m)))));
        }
    }
    let target: Vec<i32> = (1..=k as i32).map(|i| 2 * i - 1).collect();
    let window = vec![2 * n as i32; k];
    Ok(project_t_tau(&extract_coefficient(nv, &factors, &target, &window)?, k))
}

/// `prod_{i<j} (u_j - u_i)/(1 - u_i u_j) prod_i (1 + t u_i)(1 + tau u_i)^i / (1 - u_i^2)`
/// at `prod u_i^{2i-1}`.
pub fn fn_sym(n: usize) -> Result<TTauPoly, Error> {
    guard("F_n size", n, 7)?;
    if n <= 1 {
        return Ok(TTauPoly::one(2));
    }
    let k = n - 1;
    let nv = k + 2;
    let u = |i: usize| ZPoly::var(nv, i);
    let (t, tau) = (ZPoly::var(nv, k), ZPoly::var(nv, k + 1));
    let one = ZPoly::one(nv);
    let mono = |pairs: &[(usize, i32)]| {
        let mut m = vec![0; nv];
        for &(i, e) in pairs {
            m[i] += e;
        }
        m
    };
    let mut factors = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            factors.push(Factor::Poly(u(j).minus(&u(i))));
            factors.push(Factor::Geometric { coeff: int(1), mono: mono(&[(i, 1), (j, 1)]) });
        }
        factors.push(Factor::Geometric { coeff: int(1), mono: mono(&[(i, 2)]) });
        factors.push(Factor::Poly(one.plus(&t.times(&u(i)))));
        factors.push(Factor::Poly(one.plus(&tau.times(&u(i))).pow(i as u32 + 1)));
    }
    let target: Vec<i32> = (1..=k as i32).map(|i| 2 * i - 1).collect();
    let window = vec![2 * n as i32; k];
    Ok(project_t_tau(&extract_coefficient(nv, &factors, &target, &window)?, k))
}

/// Identities satisfied by `F_n(t)`.
#[derive(Clone, Debug)]
pub struct FnReport {
    pub n: usize,
    pub ct_equals_sym: bool,
    pub at_one_is_tsscpp: bool,
    pub leading_term: bool,
    pub at_zero: bool,
    pub refined_asm: bool,
}

impl FnReport {
    pub fn holds(&self) -> bool {
        self.ct_equals_sym && self.at_one_is_tsscpp && self.leading_term && self.at_zero && self.refined_asm
    }
}

/// `F(t = 1)` as a polynomial in `tau`.
pub fn fn_at_t_one(f: &TTauPoly) -> TauPoly {
    MultiPoly::from_terms(1, f.terms().iter().map(|(m, c)| (Mono::new(vec![m.exp(1)]), c.clone())))
}

/// `F(tau = 1)` as a polynomial in `t`.
pub fn fn_at_tau_one(f: &TTauPoly) -> ZPoly {
    MultiPoly::from_terms(1, f.terms().iter().map(|(m, c)| (Mono::new(vec![m.exp(0)]), c.clone())))
}

pub fn fn_properties(n: usize) -> Result<FnReport, Error> {
    guard("F_n property size", n, 6)?;
    let f = fn_ct(n)?;
    let sym = fn_sym(n)?;
    let (leading_term, at_zero) = if n >= 2 {
        let g = fn_ct(n - 1)?;
        let d = n as i32 - 1;
        let lead = MultiPoly::from_terms(2, f.terms().iter().filter(|(m, _)| m.exp(0) == d).map(|(m, c)| (Mono::new(vec![0, m.exp(1)]), c.clone())));
        let g_tau = MultiPoly::from_terms(2, g.terms().iter().map(|(m, c)| (Mono::new(vec![0, m.exp(0) + m.exp(1)]), c.clone())));
        let zero = MultiPoly::from_terms(2, f.terms().iter().filter(|(m, _)| m.exp(0) == 0).map(|(m, c)| (m.clone(), c.clone())));
        let g_inv = MultiPoly::from_terms(2, g.terms().iter().map(|(m, c)| (Mono::new(vec![0, d - m.exp(0) + m.exp(1)]), c.clone())));
        (lead == g_tau, zero == g_inv)
    } else {
        (true, true)
    };
    let refined = asm_refined(n)?;
    let want = MultiPoly::from_terms(1, refined.into_iter().enumerate().map(|(i, c)| (Mono::new(vec![i as i32]), c)));
    Ok(FnReport {
        n,
        ct_equals_sym: f == sym,
        at_one_is_tsscpp: fn_at_t_one(&f) == tsscpp_ct(n),
        leading_term,
        at_zero,
        refined_asm: fn_at_tau_one(&f) == want,
    })
}

fn check_sequence(n: usize, a: &[usize]) -> Result<(), Error> {
    if a.len() != n || a.windows(2).any(|w| w[0] > w[1]) || a.iter().any(|&x| x > 2 * n) {
        return Err(Error::Domain(format!("{:?} is not a nondecreasing sequence of {} entries in [0, {}]", a, n, 2 * n)));
    }
    Ok(())
}

/// `prod_{l<m} (u_m - u_l)(1 + tau u_m + u_l u_m)` at `prod u_i^{a_i - 1}`.
pub fn component_ct(n: usize, a: &[usize]) -> Result<TauPoly, Error> {
    guard("intermediate basis size", n, 5)?;
    check_sequence(n, a)?;
    if a.contains(&0) {
        return Ok(TauPoly::zero(1));
    }
    let nv = n + 1;
    let u = |i: usize| ZPoly::var(nv, i);
    let tau = ZPoly::var(nv, n);
    let one = ZPoly::one(nv);
    let mut factors = Vec::new();
    for l in 0..n {
        for m in l + 1..n {
            factors.push(Factor::Poly(u(m).minus(&u(l))));
            factors.push(Factor::Poly(one.plus(&tau.times(&u(m))).plus(&u(l).times(&u(m)))));
        }
    }
    let target: Vec<i32> = a.iter().map(|&x| x as i32 - 1).collect();
    let window = vec![2 * n as i32; n];
    let c = extract_coefficient(nv, &factors, &target, &window)?;
    Ok(MultiPoly::from_terms(1, c.terms().iter().map(|(m, x)| (Mono::new(vec![m.exp(n)]), x.clone()))))
}

/// `U_k` as a polynomial in `tau`.
pub fn chebyshev_tau(k: i32) -> TauPoly {
    let co = chebyshev_u(k).to_tau().expect("U_k is bar-symmetric");
    MultiPoly::from_terms(1, co.into_iter().enumerate().map(|(j, x)| (Mono::new(vec![j as i32]), x)))
}

/// Coefficient of `Psi_pi` in `Psi_a`:
/// `prod_{(i,j) paired} U_{#{l : i <= a_l < j} - (j - i + 1)/2}`.
pub fn change_of_basis(a: &[usize], pi: &LinkPattern) -> TauPoly {
    let mut p = tau_poly(&[1]);
    for (i, j) in pi.pairs() {
        let cnt = a.iter().filter(|&&x| i <= x && x < j).count() as i32;
        p = p.times(&chebyshev_tau(cnt - (j - i + 1) as i32 / 2));
    }
    p
}

/// Opening points of `pi`; the change of basis is unitriangular on these.
pub fn opening_sequence(pi: &LinkPattern) -> Vec<usize> {
    pi.pairs().iter().map(|&(i, _)| i).collect()
}

/// Homogeneous components recovered from `component_ct` by solving the
/// unitriangular change of basis.
pub fn intermediate_basis_tau(n: usize) -> Result<Vec<(LinkPattern, TauPoly)>, Error> {
    let patterns = link_patterns(n)?;
    let c = patterns.len();
    let seqs: Vec<Vec<usize>> = patterns.iter().map(opening_sequence).collect();
    let rhs: Vec<TauPoly> = seqs.iter().map(|a| component_ct(n, a)).collect::<Result<_, _>>()?;
    let m: Vec<Vec<TauPoly>> = seqs.iter().map(|a| patterns.iter().map(|p| change_of_basis(a, p)).collect()).collect();
    let mut sol: Vec<Option<TauPoly>> = vec![None; c];
    let mut left = c;
    while left > 0 {
        let mut progress = false;
        for r in 0..c {
            let open: Vec<usize> = (0..c).filter(|&j| sol[j].is_none() && !m[r][j].is_zero()).collect();
            if open.len() != 1 || !m[r][open[0]].is_one() {
                continue;
            }
            let mut v = rhs[r].clone();
            for (j, s) in sol.iter().enumerate() {
                if let Some(s) = s {
                    v = v.minus(&m[r][j].times(s));
                }
            }
            sol[open[0]] = Some(v);
            left -= 1;
            progress = true;
        }
        if !progress {
            return Err(Error::Consistency("change of basis is not unitriangular on the opening sequences".into()));
        }
    }
    Ok(patterns.into_iter().zip(sol.into_iter().map(|s| s.expect("solved"))).collect())
}

/// `Psi_a = sum_pi (coefficient) Psi_pi` for every nondecreasing `a`.
pub fn intermediate_basis_check(n: usize, h: &[(LinkPattern, TauPoly)]) -> Result<bool, Error> {
    let mut a = vec![0usize; n];
    loop {
        let mut rhs = TauPoly::zero(1);
        for (p, v) in h {
            rhs = rhs.plus(&change_of_basis(&a, p).times(v));
        }
        if component_ct(n, &a)? != rhs {
            return Ok(false);
        }
        // next nondecreasing sequence in [0, 2n]
        let Some(k) = (0..n).rev().find(|&k| a[k] < 2 * n) else { return Ok(true) };
        let v = a[k] + 1;
        for x in a.iter_mut().skip(k) {
            *x = v;
        }
    }
}
