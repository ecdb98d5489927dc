//! Multidegrees of three families of varieties: double Schubert polynomials,
//! Joseph–Melnikov polynomials of the `M^2 = 0` orbital varieties, and
//! Brauer loop polynomials at small size.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use rayon::prelude::*;

use crate::kernel::*;
use crate::loops::{link_patterns, pattern_index, tl_e, LinkPattern};
use crate::qkz::{qkz_base, qkz_solve, remove_little_arch};
use crate::schur::{schur_ssyt, Partition};
use crate::{guard, Error};

fn lin(nv: usize, coeffs: &[(usize, i64)], c0: i64) -> ZPoly {
    let c: Vec<(usize, BigInt)> = coeffs.iter().map(|&(k, c)| (k, int(c))).collect();
    MultiPoly::linear(nv, &c, int(c0))
}

/// Multidegree of the coordinate subspace `{w_k = 0 : zeros[k]}` of a space
/// whose coordinates carry the torus weights `weights`, computed by cutting
/// with one coordinate hyperplane at a time.
pub fn coordinate_subspace_mdeg(nvars: usize, weights: &[ZPoly], zeros: &[bool]) -> ZPoly {
    match weights.split_last() {
        // X = W = {0}
        None => ZPoly::one(nvars),
        Some((w, rest)) => {
            let inner = coordinate_subspace_mdeg(nvars, rest, &zeros[..rest.len()]);
            if zeros[rest.len()] {
                // X lies in the hyperplane: multiply by the weight of W/H
                inner.times(w)
            } else {
                inner
            }
        }
    }
}

// ---------------------------------------------------------------------------
// permutations and double Schubert polynomials

/// A permutation of `{1..N}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    w: Vec<usize>,
}

impl Permutation {
    pub fn new(w: Vec<usize>) -> Result<Self, Error> {
        let n = w.len();
        let mut seen = vec![false; n + 1];
        for &v in &w {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Domain(format!("{:?} is not a permutation", w)));
            }
            seen[v] = true;
        }
        Ok(Permutation { w })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { w: (1..=n).collect() }
    }

    /// `sigma_0(i) = N + 1 - i`.
    pub fn longest(n: usize) -> Self {
        Permutation { w: (1..=n).rev().collect() }
    }

    /// `"4132"`, or separated by commas or spaces.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let w: Vec<usize> = if s.contains(',') || s.contains(' ') {
            s.split(|c: char| c == ',' || c == ' ')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| Error::Domain(format!("bad entry {:?}", t))))
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Domain(format!("bad entry {:?}", c))))
                .collect::<Result<_, _>>()?
        };
        Permutation::new(w)
    }

    pub fn size(&self) -> usize {
        self.w.len()
    }

    /// `sigma(i)`, one-based.
    pub fn at(&self, i: usize) -> usize {
        self.w[i - 1]
    }

    pub fn one_line(&self) -> &[usize] {
        &self.w
    }

    /// `#{i < j : sigma(i) > sigma(j)}`.
    pub fn inversions(&self) -> usize {
        let n = self.w.len();
        (0..n).map(|i| (i + 1..n).filter(|&j| self.w[i] > self.w[j]).count()).sum()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.w.len()];
        for (i, &v) in self.w.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { w: inv }
    }

    /// `sigma t_i`: positions `i` and `i+1` exchanged.
    pub fn times_s(&self, i: usize) -> Self {
        let mut w = self.w.clone();
        w.swap(i - 1, i);
        Permutation { w }
    }

    pub fn is_descent(&self, i: usize) -> bool {
        self.w[i - 1] > self.w[i]
    }

    pub fn descents(&self) -> Vec<usize> {
        (1..self.w.len()).filter(|&i| self.is_descent(i)).collect()
    }

    /// All of `S_N` in lexicographic order.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut w: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation { w: w.clone() });
            // next lexicographic permutation
            let Some(k) = (1..n).rev().find(|&k| w[k - 1] < w[k]) else { break };
            let l = (k..n).rev().find(|&l| w[k - 1] < w[l]).unwrap();
            w.swap(k - 1, l);
            w[k..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.w.len() > 9 { "," } else { "" };
        let s: Vec<String> = self.w.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", s.join(sep))
    }
}

/// Double Schubert polynomials live in `x_1..x_N, y_1..y_N`.
pub fn schubert_nvars(n: usize) -> usize {
    2 * n
}

pub fn schubert_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{}", i)).chain((1..=n).map(|j| format!("y{}", j))).collect()
}

/// `x_i - y_j`, one-based.
fn schubert_weight(n: usize, i: usize, j: usize) -> ZPoly {
    lin(2 * n, &[(i - 1, 1), (n + j - 1, -1)], 0)
}

/// A pipedream: crosses on the cells `(i, j)` with `i + j <= N` of the
/// staircase, every other cell a pair of elbows. Pipes enter on the left of
/// each row and leave through the top.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PipeDream {
    n: usize,
    crosses: Vec<(usize, usize)>,
}

impl PipeDream {
    /// From one-based cross positions.
    pub fn new(n: usize, mut crosses: Vec<(usize, usize)>) -> Result<Self, Error> {
        if crosses.iter().any(|&(i, j)| i == 0 || j == 0 || i + j > n) {
            return Err(Error::Domain(format!("cross outside the staircase of size {}", n)));
        }
        crosses.sort();
        crosses.dedup();
        Ok(PipeDream { n, crosses })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn crosses(&self) -> &[(usize, usize)] {
        &self.crosses
    }

    /// Letters `s_{i+j-1}` read along rows top to bottom, right to left.
    pub fn word(&self) -> Vec<usize> {
        let mut c = self.crosses.clone();
        c.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        c.into_iter().map(|(i, j)| i + j - 1).collect()
    }

    /// The strand permutation, or `None` when two strands cross twice.
    pub fn permutation(&self) -> Option<Permutation> {
        let mut w = Permutation::identity(self.n);
        for k in self.word() {
            if w.is_descent(k) {
                return None;
            }
            w = w.times_s(k);
        }
        Some(w)
    }

    /// Product of `x_i - y_j` over the crosses.
    pub fn weight(&self) -> ZPoly {
        product(2 * self.n, self.crosses.iter().map(|&(i, j)| schubert_weight(self.n, i, j)))
    }
}

/// Reduced pipedreams with strand permutation `sigma`.
pub fn pipedreams(sigma: &Permutation) -> Result<Vec<PipeDream>, Error> {
    let n = sigma.size();
    guard("pipedream size N", n, 6)?;
    let cells: Vec<(usize, usize)> = (1..n).flat_map(|i| (1..=n - i).rev().map(move |j| (i, j))).collect();
    let target = sigma.inversions();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn go(
        k: usize,
        cells: &[(usize, usize)],
        w: &Permutation,
        chosen: &mut Vec<(usize, usize)>,
        sigma: &Permutation,
        target: usize,
        out: &mut Vec<PipeDream>,
    ) {
        if chosen.len() + (cells.len() - k) < target {
            return;
        }
        if k == cells.len() {
            if w == sigma {
                out.push(PipeDream { n: sigma.size(), crosses: chosen.clone() });
            }
            return;
        }
        go(k + 1, cells, w, chosen, sigma, target, out);
        let (i, j) = cells[k];
        let letter = i + j - 1;
        // a second crossing of the same two strands is pruned here
        if chosen.len() < target && !w.is_descent(letter) {
            chosen.push((i, j));
            go(k + 1, cells, &w.times_s(letter), chosen, sigma, target, out);
            chosen.pop();
        }
    }
    go(0, &cells, &Permutation::identity(n), &mut chosen, sigma, target, &mut out);
    for p in &mut out {
        p.crosses.sort();
    }
    Ok(out)
}

/// `Xi_sigma` as the sum of the weights of the reduced pipedreams.
pub fn schubert_pipedream(sigma: &Permutation) -> Result<ZPoly, Error> {
    let n = sigma.size();
    let mut acc = ZPoly::zero(schubert_nvars(n));
    for p in pipedreams(sigma)? {
        acc = acc.plus(&p.weight());
    }
    Ok(acc)
}

/// `Xi_{sigma_0} = prod_{i+j<=N} (x_i - y_j)`: the multidegree of the
/// coordinate subspace `M_ij = 0, i + j <= N` of `N x N` matrices.
pub fn schubert_longest(n: usize) -> ZPoly {
    let mut weights = Vec::new();
    let mut zeros = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            weights.push(schubert_weight(n, i, j));
            zeros.push(i + j <= n);
        }
    }
    coordinate_subspace_mdeg(schubert_nvars(n), &weights, &zeros)
}

/// Lexicographically smallest sequence `i_1, i_2, ...` with
/// `sigma_0 t_{i_1} t_{i_2} ... = sigma`, lengths dropping by one each step.
pub fn nilhecke_path(sigma: &Permutation) -> Vec<usize> {
    let n = sigma.size();
    let inv = sigma.inverse();
    let mut w = Permutation::longest(n);
    let mut path = Vec::new();
    while w != *sigma {
        let v = Permutation { w: w.w.iter().map(|&x| inv.at(x)).collect() };
        let i = (1..n).find(|&i| v.is_descent(i)).expect("sigma lies below w");
        w = w.times_s(i);
        path.push(i);
    }
    path
}

fn check_ascent_symmetry(sigma: &Permutation, xi: &ZPoly) -> Result<(), Error> {
    for i in 1..sigma.size() {
        if !sigma.is_descent(i) && xi.swap_vars(i - 1, i) != *xi {
            return Err(Error::Consistency(format!("Xi_{} is not symmetric in x{}, x{}", sigma, i, i + 1)));
        }
    }
    Ok(())
}

/// `Xi_sigma` by divided differences `Xi_{sigma t_i} = d_i Xi_sigma` from
/// `sigma_0`, asserting symmetry in `x_i, x_{i+1}` at every ascent.
pub fn schubert_nilhecke(sigma: &Permutation) -> Result<ZPoly, Error> {
    let n = sigma.size();
    guard("Schubert size N", n, 6)?;
    let mut xi = schubert_longest(n);
    for i in nilhecke_path(sigma) {
        xi = xi.divided_difference(i - 1);
    }
    check_ascent_symmetry(sigma, &xi)?;
    Ok(xi)
}

/// Every `Xi_sigma` of `S_N` by divided differences along every descent,
/// failing if two routes disagree.
pub fn schubert_all(n: usize) -> Result<BTreeMap<Permutation, ZPoly>, Error> {
    guard("Schubert size N", n, 6)?;
    let top = Permutation::longest(n);
    let mut out: BTreeMap<Permutation, ZPoly> = BTreeMap::new();
    out.insert(top.clone(), schubert_longest(n));
    let mut layer = vec![top];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for w in &layer {
            let xi = out[w].clone();
            for i in w.descents() {
                let v = w.times_s(i);
                let d = xi.divided_difference(i - 1);
                match out.get(&v) {
                    Some(prev) if *prev != d => {
                        return Err(Error::Consistency(format!("Xi_{} depends on the reduced word", v)));
                    }
                    Some(_) => {}
                    None => {
                        out.insert(v.clone(), d);
                        next.push(v);
                    }
                }
            }
        }
        layer = next;
    }
    for (s, xi) in &out {
        check_ascent_symmetry(s, xi)?;
    }
    Ok(out)
}

/// For `sigma` with at most one descent, its position `k` and the partition
/// read off the top endpoints: the `j`-th green endpoint `a_j = sigma(j)`
/// gives the part `a_j - j` in row `k + 1 - j`.
pub fn grassmannian_shape(sigma: &Permutation) -> Result<(usize, Partition), Error> {
    let d = sigma.descents();
    if d.len() > 1 {
        return Err(Error::Domain(format!("{} has descents at {:?}", sigma, d)));
    }
    let Some(&k) = d.first() else { return Ok((0, Partition::empty())) };
    let parts = (1..=k).rev().map(|j| sigma.at(j) - j).collect();
    Ok((k, Partition::new(parts)?))
}

/// `Xi_sigma(x | 0) = s_lambda(x_1..x_k)` for a Grassmannian `sigma`.
pub fn factorial_schur_check(sigma: &Permutation) -> Result<bool, Error> {
    let n = sigma.size();
    guard("Grassmannian size N", n, 6)?;
    let (k, lambda) = grassmannian_shape(sigma)?;
    let xi = schubert_pipedream(sigma)?;
    let at_zero = MultiPoly::from_terms(
        2 * n,
        xi.terms().iter().filter(|(m, _)| (n..2 * n).all(|v| m.exp(v) == 0)).cloned(),
    );
    let s = if lambda.is_empty() { ZPoly::one(2 * n) } else { schur_ssyt(&lambda, k).extend_vars(2 * n) };
    Ok(at_zero == s)
}

// ---------------------------------------------------------------------------
// Joseph–Melnikov polynomials

/// Variables `x_1..x_{2n}, A`.
pub fn joseph_nvars(n: usize) -> usize {
    2 * n + 1
}

pub fn joseph_names(n: usize) -> Vec<String> {
    (1..=2 * n).map(|i| format!("x{}", i)).chain(["A".to_string()]).collect()
}

/// `k A + x_i - x_j`, zero-based indices.
fn jw(n: usize, k: i64, i: usize, j: usize) -> ZPoly {
    lin(joseph_nvars(n), &[(2 * n, k), (i, 1), (j, -1)], 0)
}

/// `Omega_{0^n} = prod_{i<j<=n} (A + x_i - x_j) prod_{n<i<j} (A + x_i - x_j)`,
/// the multidegree of the block `[[0, *], [0, 0]]` inside strict upper
/// triangular matrices.
pub fn joseph_base(n: usize) -> Result<ZPoly, Error> {
    if n == 0 {
        return Err(Error::Domain("orbital varieties need n >= 1".into()));
    }
    let l = 2 * n;
    let mut weights = Vec::new();
    let mut zeros = Vec::new();
    for i in 0..l {
        for j in i + 1..l {
            weights.push(jw(n, 1, i, j));
            zeros.push(!(i < n && j >= n));
        }
    }
    Ok(coordinate_subspace_mdeg(joseph_nvars(n), &weights, &zeros))
}

/// Components `Omega_pi` indexed like `link_patterns(n)`.
#[derive(Clone, Debug)]
pub struct JosephSolution {
    pub n: usize,
    pub patterns: Vec<LinkPattern>,
    pub components: Vec<ZPoly>,
    index: HashMap<LinkPattern, usize>,
}

impl JosephSolution {
    pub fn component(&self, pi: &LinkPattern) -> Option<&ZPoly> {
        self.index.get(pi).map(|&k| &self.components[k])
    }
}

/// Proper preimages of `pi` under `e_i`.
fn preimages(patterns: &[LinkPattern], pi: &LinkPattern, i: usize) -> Vec<usize> {
    (0..patterns.len()).filter(|&m| patterns[m] != *pi && tl_e(i, &patterns[m]).0 == *pi).collect()
}

/// `d_i (Omega / (A + x_i - x_{i+1})) = 0`, one-based `i`.
fn unpaired_condition(n: usize, f: &ZPoly, i: usize) -> bool {
    match f.div_exact(&jw(n, 1, i - 1, i)) {
        Some(g) => g.swap_vars(i - 1, i) == g,
        None => false,
    }
}

/// Triangular construction from `Omega_{0^n}`:
/// `Omega_{pi + box} = -(A + x_i - x_{i+1}) d_i Omega_pi - sum of the other
/// preimages`, over every route, checking the divisibility and symmetry
/// condition where `(i, i+1)` is not paired.
pub fn joseph_solve(n: usize) -> Result<JosephSolution, Error> {
    guard("Joseph size n", n, 4)?;
    let base = joseph_base(n)?;
    let l = 2 * n;
    let patterns = link_patterns(n)?;
    let young: Vec<Partition> = patterns.iter().map(|p| p.to_young()).collect::<Result<_, _>>()?;
    let mut comps: Vec<Option<ZPoly>> = vec![None; patterns.len()];
    comps[0] = Some(base);
    for k in 0..patterns.len() {
        let om = comps[k].clone().ok_or_else(|| Error::Consistency(format!("{} was never reached", patterns[k])))?;
        let pi = &patterns[k];
        for i in 1..l {
            if pi.partner(i) != i + 1 {
                if !unpaired_condition(n, &om, i) {
                    return Err(Error::Consistency(format!("Omega_{} fails the symmetry condition at {}", pi, i)));
                }
                continue;
            }
            let pre = preimages(&patterns, pi, i);
            let bigger: Vec<usize> = pre.iter().copied().filter(|&m| young[m].size() == young[k].size() + 1).collect();
            let others: Vec<usize> = pre.iter().copied().filter(|&m| young[m].size() < young[k].size()).collect();
            if bigger.len() + others.len() != pre.len() || bigger.len() > 1 {
                return Err(Error::Consistency(format!("unexpected preimages of {} under e_{}", pi, i)));
            }
            let Some(&new) = bigger.first() else { continue };
            let mut cand = jw(n, 1, i - 1, i).times(&om.divided_difference(i - 1)).negate();
            for &o in &others {
                let po = comps[o].as_ref().ok_or_else(|| Error::Consistency(format!("{} needed before it was built", patterns[o])))?;
                cand = cand.minus(po);
            }
            match &comps[new] {
                None => comps[new] = Some(cand),
                Some(prev) if *prev != cand => {
                    return Err(Error::Consistency(format!("Omega_{} depends on the box-addition order", patterns[new])));
                }
                Some(_) => {}
            }
        }
    }
    let components: Vec<ZPoly> = comps.into_iter().map(|c| c.expect("all built")).collect();
    let index = pattern_index(&patterns);
    Ok(JosephSolution { n, patterns, components, index })
}

/// Outcome of the rational verification suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JosephReport {
    pub n: usize,
    pub exchange: bool,
    pub cyclic: bool,
    pub recurrence: bool,
    pub wheel: bool,
    pub degree: bool,
    pub failures: Vec<String>,
}

impl JosephReport {
    pub fn holds(&self) -> bool {
        self.exchange && self.cyclic && self.recurrence && self.wheel && self.degree
    }
}

/// `f` with the listed zero-based `x` variables replaced by `x_i + k A`.
fn joseph_specialize(n: usize, f: &ZPoly, subs: &[(usize, usize, i64)]) -> Result<ZPoly, Error> {
    let nv = joseph_nvars(n);
    let mut images: Vec<ZPoly> = (0..nv).map(|v| ZPoly::var(nv, v)).collect();
    for &(v, i, k) in subs {
        images[v] = lin(nv, &[(i, 1), (2 * n, k)], 0);
    }
    f.substitute(&images, |c| c.clone())
}

/// Exchange in both cases, the cyclic relation
/// `Omega_{rho pi}(x) = (-1)^{n-1} Omega_pi(x_2, ..., x_{2n}, x_1 + 3A)`,
/// the recurrence at `x_{i+1} = x_i + A`, the wheel condition
/// `x_j = x_i + A, x_k = x_i + 2A` and homogeneity of degree `n(n-1)`.
pub fn joseph_verify(n: usize) -> Result<JosephReport, Error> {
    let s = joseph_solve(n)?;
    let smaller = if n > 1 { Some(joseph_solve(n - 1)?) } else { None };
    let l = 2 * n;
    let nv = joseph_nvars(n);
    let mut failures = Vec::new();

    let mut exchange = true;
    for (k, pi) in s.patterns.iter().enumerate() {
        let om = &s.components[k];
        for i in 1..l {
            let ok = if pi.partner(i) != i + 1 {
                unpaired_condition(n, om, i)
            } else {
                let lhs = jw(n, 1, i - 1, i).times(&om.divided_difference(i - 1)).negate();
                let rhs = preimages(&s.patterns, pi, i)
                    .into_iter()
                    .fold(ZPoly::zero(nv), |a, m| a.plus(&s.components[m]));
                lhs == rhs
            };
            if !ok {
                exchange = false;
                failures.push(format!("exchange fails for {} at {}", pi, i));
            }
        }
    }

    let mut cyclic = true;
    let mut images: Vec<ZPoly> = (0..nv).map(|v| ZPoly::var(nv, (v + 1) % l)).collect();
    images[l - 1] = lin(nv, &[(0, 1), (l, 3)], 0);
    images[l] = ZPoly::var(nv, l);
    let sign = if (n - 1) % 2 == 0 { int(1) } else { int(-1) };
    for (k, pi) in s.patterns.iter().enumerate() {
        let rhs = s.components[k].substitute(&images, |c| c.clone())?.scale(&sign);
        if s.component(&pi.rotate()) != Some(&rhs) {
            cyclic = false;
            failures.push(format!("cyclic relation fails at {}", pi));
        }
    }

    let mut recurrence = true;
    for i in 1..l {
        let mut pref = ZPoly::one(nv);
        for j in 0..i - 1 {
            pref = pref.times(&jw(n, 1, j, i - 1));
        }
        for j in i + 1..l {
            pref = pref.times(&jw(n, 2, i - 1, j));
        }
        let mut rename: Vec<usize> = (0..l - 2).map(|k| if k < i - 1 { k } else { k + 2 }).collect();
        rename.push(l);
        for (k, pi) in s.patterns.iter().enumerate() {
            let lhs = joseph_specialize(n, &s.components[k], &[(i, i - 1, 1)])?;
            let rhs = if pi.partner(i) != i + 1 {
                ZPoly::zero(nv)
            } else if n == 1 {
                pref.clone()
            } else {
                let sm = smaller.as_ref().expect("built above");
                let pp = remove_little_arch(pi, i)?;
                let sub = sm.component(&pp).ok_or_else(|| Error::Consistency(format!("{} missing", pp)))?;
                pref.times(&sub.rename(&rename, nv))
            };
            if lhs != rhs {
                recurrence = false;
                failures.push(format!("recurrence fails for {} at x{} = x{} + A", pi, i + 1, i));
            }
        }
    }

    let mut triples = Vec::new();
    for i in 0..l {
        for j in i + 1..l {
            for k in j + 1..l {
                triples.push((i, j, k));
            }
        }
    }
    let wheel_bad: Vec<String> = triples
        .par_iter()
        .flat_map_iter(|&(i, j, k)| {
            let mut bad = Vec::new();
            for (m, pi) in s.patterns.iter().enumerate() {
                match joseph_specialize(n, &s.components[m], &[(j, i, 1), (k, i, 2)]) {
                    Ok(v) if v.is_zero() => {}
                    _ => bad.push(format!("wheel fails for {} at ({}, {}, {})", pi, i + 1, j + 1, k + 1)),
                }
            }
            bad
        })
        .collect();
    let wheel = wheel_bad.is_empty();
    failures.extend(wheel_bad);

    let d = (n * (n - 1)) as i32;
    let degree = s.components.iter().all(|c| c.is_homogeneous() && c.homogeneous_degree() == Some(d));
    if !degree {
        failures.push(format!("a component is not homogeneous of degree {}", d));
    }
    Ok(JosephReport { n, exchange, cyclic, recurrence, wheel, degree, failures })
}

/// Coefficients of `hbar^0 .. hbar^order` of `f` under
/// `q = -e^{-hbar A/2}`, `z_i = e^{-hbar x_i}`, as polynomials in
/// `x_1..x_L, A`.
pub fn hbar_expansion(f: &LPoly, order: usize) -> Vec<QPoly> {
    let l = f.nvars();
    let nv = l + 1;
    // group terms by exponent: q^e z^m -> (-1)^e exp(-hbar (e A / 2 + m.x))
    let mut forms: HashMap<Vec<i32>, BigInt> = HashMap::new();
    for (m, c) in f.terms() {
        for (e, coef) in c.terms() {
            let mut key = m.exps().to_vec();
            key.push(e);
            let v = if e % 2 == 0 { coef.clone() } else { -coef.clone() };
            *forms.entry(key).or_insert_with(BigInt::zero) += v;
        }
    }
    let half = rat(1, 2);
    let mut out = vec![QPoly::zero(nv); order + 1];
    for (key, c) in forms {
        if c.is_zero() {
            continue;
        }
        let mut coeffs: Vec<(usize, BigRational)> =
            (0..l).filter(|&i| key[i] != 0).map(|i| (i, BigRational::from_integer(int(-key[i] as i64)))).collect();
        if key[l] != 0 {
            coeffs.push((l, -BigRational::from_integer(int(key[l] as i64)) * &half));
        }
        // sum_k (-hbar form)^k / k!
        let lf = QPoly::linear(nv, &coeffs, BigRational::zero());
        let mut p = QPoly::constant(nv, BigRational::from_integer(c));
        for (k, slot) in out.iter_mut().enumerate() {
            if k > 0 {
                p = p.times(&lf).scale(&rat(1, k as i64));
            }
            *slot = slot.plus(&p);
        }
    }
    out
}

fn to_q(f: &ZPoly) -> QPoly {
    f.map_coeffs(|c| BigRational::from_integer(c.clone()))
}

/// Every `Psi_pi` vanishes to order `n(n-1)` in `hbar` and its leading
/// coefficient times `(-1)^{n(n-1)/2}` is `Omega_pi`.
pub fn rational_limit_check(n: usize) -> Result<bool, Error> {
    guard("rational limit size n", n, 3)?;
    let psi = qkz_solve(n)?;
    let om = joseph_solve(n)?;
    let d = n * (n - 1);
    let sign = if (d / 2) % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
    for (k, p) in psi.components.iter().enumerate() {
        let series = hbar_expansion(p, d);
        if series[..d].iter().any(|c| !c.is_zero()) {
            return Ok(false);
        }
        if series[d].scale(&sign) != to_q(&om.components[k]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Same statement for the base components only, using their product form:
/// each linear factor of `Psi_{0^n}` vanishes at `hbar = 0` and the product
/// of the `hbar^1` coefficients is the leading term.
pub fn rational_limit_base_check(n: usize) -> Result<bool, Error> {
    guard("rational limit size n", n, 6)?;
    if n == 0 {
        return Err(Error::Domain("needs n >= 1".into()));
    }
    let l = 2 * n;
    let lz = |i: usize, a: i32, j: usize, b: i32, neg: bool| {
        let s = if neg { -1 } else { 1 };
        LPoly::linear(l, &[(i, LaurentQ::monomial(s, a)), (j, LaurentQ::monomial(-s, b))], LaurentQ::zero())
    };
    let mut lead = QPoly::one(l + 1);
    let mut factors = Vec::new();
    for i in 0..l {
        for j in i + 1..l {
            if (i < n) != (j < n) {
                continue;
            }
            // q z_i - q^-1 z_j in the first block, q^-1 z_j - q z_i in the second
            let factor = lz(i, 1, j, -1, i >= n);
            let s = hbar_expansion(&factor, 1);
            if !s[0].is_zero() {
                return Ok(false);
            }
            lead = lead.times(&s[1]);
            factors.push(factor);
        }
    }
    if product(l, factors) != qkz_base(n) {
        return Ok(false);
    }
    let m = n * (n - 1) / 2;
    let sign = if m % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
    Ok(lead.scale(&sign) == to_q(&joseph_base(n)?))
}

// ---------------------------------------------------------------------------
// Brauer loop polynomials

/// Fixed-point-free involutions of `Z/2nZ` (crossings allowed).
pub type CrossingLinkPattern = LinkPattern;

/// All `(2n-1)!!` crossing link patterns, sorted.
pub fn crossing_link_patterns(n: usize) -> Result<Vec<CrossingLinkPattern>, Error> {
    guard("crossing pattern size n", n, 6)?;
    fn go(partner: &mut Vec<usize>, out: &mut Vec<LinkPattern>) {
        let Some(a) = partner.iter().position(|&p| p == usize::MAX) else {
            out.push(LinkPattern::new(partner.clone()).expect("involution"));
            return;
        };
        for b in a + 1..partner.len() {
            if partner[b] == usize::MAX {
                partner[a] = b;
                partner[b] = a;
                go(partner, out);
                partner[a] = usize::MAX;
                partner[b] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![usize::MAX; 2 * n], &mut out);
    out.sort();
    Ok(out)
}

/// Number of pairs of chords that cross.
pub fn crossing_count(pi: &CrossingLinkPattern) -> usize {
    let p = pi.pairs();
    p.iter().map(|&(a, b)| p.iter().filter(|&&(c, d)| a < c && c < b && b < d).count()).sum()
}

/// `chi^n(i) = i + n`.
pub fn maximal_crossing(n: usize) -> CrossingLinkPattern {
    LinkPattern::new((0..2 * n).map(|i| (i + n) % (2 * n)).collect()).expect("involution")
}

/// `f_i`: conjugation by the transposition `(i, i+1)`, with `(N, 1)` for `i = N`.
pub fn brauer_f(i: usize, pi: &CrossingLinkPattern) -> CrossingLinkPattern {
    let l = pi.size();
    let (a, b) = (i - 1, i % l);
    let t = |x: usize| if x == a { b } else if x == b { a } else { x };
    let p = pi.partners0();
    let mut partner = vec![0; l];
    for x in 0..l {
        partner[t(x)] = t(p[x]);
    }
    LinkPattern::new(partner).expect("involution")
}

/// `e_i`: pairs `(i, i+1)` and `(pi(i), pi(i+1))`; a pattern already pairing
/// `i` with `i+1` is fixed.
pub fn brauer_e(i: usize, pi: &CrossingLinkPattern) -> CrossingLinkPattern {
    let l = pi.size();
    let (a, b) = (i - 1, i % l);
    let p = pi.partners0();
    if p[a] == b {
        return pi.clone();
    }
    let mut partner = p.to_vec();
    let (pa, pb) = (p[a], p[b]);
    partner[a] = b;
    partner[b] = a;
    partner[pa] = pb;
    partner[pb] = pa;
    LinkPattern::new(partner).expect("involution")
}

/// The variables `x_k, k in Z`, with `x_{k+N} = x_k + eps`, stored in the
/// coordinates `x_1..x_N, A, B` where `B = A - eps`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShiftedVars {
    pub n_points: usize,
}

impl ShiftedVars {
    pub fn new(n_points: usize) -> Self {
        ShiftedVars { n_points }
    }

    pub fn nvars(&self) -> usize {
        self.n_points + 2
    }

    pub fn a(&self) -> usize {
        self.n_points
    }

    pub fn b(&self) -> usize {
        self.n_points + 1
    }

    pub fn names(&self) -> Vec<String> {
        (1..=self.n_points).map(|i| format!("x{}", i)).chain(["A".to_string(), "B".to_string()]).collect()
    }

    /// `(variable index, eps multiple)` of `x_k`.
    fn split(&self, k: i64) -> (usize, i64) {
        let n = self.n_points as i64;
        (((k - 1).rem_euclid(n)) as usize, (k - 1).div_euclid(n))
    }

    /// `x_k` as a linear form.
    pub fn x(&self, k: i64) -> ZPoly {
        let (v, m) = self.split(k);
        lin(self.nvars(), &[(v, 1), (self.a(), m), (self.b(), -m)], 0)
    }

    /// `c A + x_i - x_j`.
    pub fn weight(&self, c: i64, i: i64, j: i64) -> ZPoly {
        ZPoly::var(self.nvars(), self.a()).scale(&int(c)).plus(&self.x(i)).minus(&self.x(j))
    }

    /// `s_i` exchanging `x_{i+kN}` and `x_{i+1+kN}` for every `k`.
    pub fn s(&self, i: usize, f: &ZPoly) -> ZPoly {
        let n = self.n_points;
        if i < n {
            return f.swap_vars(i - 1, i);
        }
        let nv = self.nvars();
        let mut images: Vec<ZPoly> = (0..nv).map(|v| ZPoly::var(nv, v)).collect();
        images[n - 1] = self.x(n as i64 + 1);
        images[0] = self.x(0);
        f.substitute(&images, |c| c.clone()).expect("linear images")
    }

    /// `(s_i f - f) / (x_{i+1} - x_i)`.
    pub fn divided_difference(&self, i: usize, f: &ZPoly) -> ZPoly {
        if i < self.n_points {
            return f.divided_difference(i - 1);
        }
        let den = self.x(i as i64 + 1).minus(&self.x(i as i64));
        self.s(i, f).minus(f).div_exact(&den).expect("divided difference is a polynomial")
    }
}

/// `Upsilon_{chi^n} = prod_i prod_{j=i+1}^{i+n-1} (A + x_i - x_j)`: the
/// coordinate subspace `M_ij = 0, j <= i + n - 1`.
pub fn brauer_base(n: usize) -> ZPoly {
    let v = ShiftedVars::new(2 * n);
    let mut weights = Vec::new();
    let mut zeros = Vec::new();
    for i in 1..=2 * n as i64 {
        for j in i + 1..i + 2 * n as i64 {
            weights.push(v.weight(1, i, j));
            zeros.push(j <= i + n as i64 - 1);
        }
    }
    coordinate_subspace_mdeg(v.nvars(), &weights, &zeros)
}

/// `Upsilon_pi` in `x_1..x_N, A, B`, indexed like `crossing_link_patterns(n)`.
#[derive(Clone, Debug)]
pub struct BrauerSolution {
    pub n: usize,
    pub vars: ShiftedVars,
    pub patterns: Vec<CrossingLinkPattern>,
    pub components: Vec<ZPoly>,
    index: HashMap<LinkPattern, usize>,
}

impl BrauerSolution {
    pub fn component(&self, pi: &CrossingLinkPattern) -> Option<&ZPoly> {
        self.index.get(pi).map(|&k| &self.components[k])
    }

    pub fn points(&self) -> usize {
        2 * self.n
    }
}

/// `-(A + x_i - x_{i+1}) ((A + B) d_i + s_i) (Upsilon / (A + x_i - x_{i+1}))`.
fn brauer_step(v: &ShiftedVars, i: usize, f: &ZPoly) -> Option<ZPoly> {
    let a = v.weight(1, i as i64, i as i64 + 1);
    let g = f.div_exact(&a)?;
    let ab = lin(v.nvars(), &[(v.a(), 1), (v.b(), 1)], 0);
    let inner = ab.times(&v.divided_difference(i, &g)).plus(&v.s(i, &g));
    Some(a.times(&inner).negate())
}

/// The `e_i` relation at a little arch `(i, i+1)`:
/// `-(A + x_i - x_{i+1})(A + B + x_{i+1} - x_i) d_i Upsilon_pi
///   = (A + B) sum_{pi' != pi, e_i pi' = pi} Upsilon_{pi'}`.
fn brauer_e_relation(s: &BrauerSolution, k: usize, i: usize) -> bool {
    let v = &s.vars;
    let pi = &s.patterns[k];
    let ab = lin(v.nvars(), &[(v.a(), 1), (v.b(), 1)], 0);
    let lhs = v
        .weight(1, i as i64, i as i64 + 1)
        .times(&ab.plus(&v.x(i as i64 + 1)).minus(&v.x(i as i64)))
        .times(&v.divided_difference(i, &s.components[k]))
        .negate();
    let mut rhs = ZPoly::zero(v.nvars());
    for (m, p) in s.patterns.iter().enumerate() {
        if p != pi && brauer_e(i, p) == *pi {
            rhs = rhs.plus(&s.components[m]);
        }
    }
    lhs == ab.times(&rhs)
}

/// Breadth-first search over `f_i` moves from `chi^n`, asserting that every
/// pattern is reached, that all routes agree, and that the `e_i` relation
/// holds at every little arch. `N` must be 4 or 6.
pub fn brauer_solve(points: usize) -> Result<BrauerSolution, Error> {
    guard("Brauer size N", points, 6)?;
    if points != 4 && points != 6 {
        return Err(Error::Domain(format!("Brauer polynomials are built for N = 4 or 6, not {}", points)));
    }
    let n = points / 2;
    let v = ShiftedVars::new(points);
    let patterns = crossing_link_patterns(n)?;
    let index = pattern_index(&patterns);
    let mut comps: Vec<Option<ZPoly>> = vec![None; patterns.len()];
    let start = maximal_crossing(n);
    comps[index[&start]] = Some(brauer_base(n));
    let mut queue = VecDeque::from([index[&start]]);
    while let Some(k) = queue.pop_front() {
        let f = comps[k].clone().expect("queued components are known");
        let pi = &patterns[k];
        let moves: Vec<(usize, Option<ZPoly>)> = (1..=points)
            .into_par_iter()
            .filter(|&i| pi.partner(i) != i % points + 1)
            .map(|i| (i, brauer_step(&v, i, &f)))
            .collect();
        for (i, img) in moves {
            let img = img.ok_or_else(|| {
                Error::Consistency(format!("Upsilon_{} is not divisible by A + x{} - x{}", pi, i, i % points + 1))
            })?;
            let t = index[&brauer_f(i, pi)];
            match &comps[t] {
                None => {
                    comps[t] = Some(img);
                    queue.push_back(t);
                }
                Some(prev) if *prev != img => {
                    return Err(Error::Consistency(format!("Upsilon_{} depends on the route (f_{} from {})", patterns[t], i, pi)));
                }
                Some(_) => {}
            }
        }
    }
    if let Some(k) = comps.iter().position(|c| c.is_none()) {
        return Err(Error::Consistency(format!("{} is not reached by f moves", patterns[k])));
    }
    let components: Vec<ZPoly> = comps.into_iter().map(|c| c.expect("checked")).collect();
    let d = (2 * n * (n - 1)) as i32;
    for (p, c) in patterns.iter().zip(&components) {
        if !c.is_homogeneous() || c.homogeneous_degree() != Some(d) {
            return Err(Error::Consistency(format!("Upsilon_{} is not homogeneous of degree {}", p, d)));
        }
    }
    let s = BrauerSolution { n, vars: v, patterns, components, index };
    let arches: Vec<(usize, usize)> = (0..s.patterns.len())
        .flat_map(|k| (1..=points).map(move |i| (k, i)))
        .filter(|&(k, i)| s.patterns[k].partner(i) == i % points + 1)
        .collect();
    let bad: Vec<&(usize, usize)> = arches.par_iter().filter(|&&(k, i)| !brauer_e_relation(&s, k, i)).collect();
    if let Some(&&(k, i)) = bad.first() {
        return Err(Error::Consistency(format!("e_{} relation fails at {}", i, s.patterns[k])));
    }
    Ok(s)
}

/// `Upsilon_pi(x_i = x, x_j = x + A, x_k = x + 2A) = 0` for
/// `i < j < k < i + N`; returns the failing witnesses.
pub fn brauer_wheel_check(s: &BrauerSolution) -> Vec<String> {
    let v = &s.vars;
    let nn = s.points() as i64;
    let nv = v.nvars();
    let mut triples = Vec::new();
    for i in 1..=nn {
        for j in i + 1..i + nn {
            for k in j + 1..i + nn {
                triples.push((i, j, k));
            }
        }
    }
    triples
        .par_iter()
        .flat_map_iter(|&(i, j, k)| {
            let mut images: Vec<ZPoly> = (0..nv).map(|t| ZPoly::var(nv, t)).collect();
            // x_j = x_i + A means x_{j mod N} = x_i + A - m eps
            for (t, c) in [(j, 1), (k, 2)] {
                let (var, m) = v.split(t);
                images[var] = v.x(i).plus(&lin(nv, &[(v.a(), c - m), (v.b(), m)], 0));
            }
            let mut bad = Vec::new();
            for (p, c) in s.patterns.iter().zip(&s.components) {
                match c.substitute(&images, |c| c.clone()) {
                    Ok(r) if r.is_zero() => {}
                    _ => bad.push(format!("wheel fails for {} at ({}, {}, {})", p, i, j, k)),
                }
            }
            bad
        })
        .collect()
}

/// Values at `x = 0, A = B = 1`.
pub fn brauer_degrees(s: &BrauerSolution) -> Vec<(CrossingLinkPattern, BigInt)> {
    let nv = s.vars.nvars();
    let mut at = vec![int(0); nv];
    at[s.vars.a()] = int(1);
    at[s.vars.b()] = int(1);
    s.patterns.iter().zip(&s.components).map(|(p, c)| (p.clone(), c.eval(&at).expect("polynomial"))).collect()
}

/// Top power of `B` and its coefficient.
pub fn leading_in_b(s: &BrauerSolution, f: &ZPoly) -> Option<(i32, ZPoly)> {
    f.collect_in(s.vars.b()).into_iter().next_back()
}

/// The permutation `sigma(i) = pi(n + 1 - i) - n` of a pattern sending
/// `{1..n}` onto `{n+1..2n}`.
pub fn permutation_sector(pi: &CrossingLinkPattern) -> Option<Permutation> {
    let n = pi.n();
    if !(1..=n).all(|i| pi.partner(i) > n) {
        return None;
    }
    Permutation::new((1..=n).map(|i| pi.partner(n + 1 - i) - n).collect()).ok()
}

/// Limits `B -> infinity` of the Brauer polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerateReport {
    pub n: usize,
    /// Noncrossing `pi`: `Upsilon_pi ~ B^{n(n-1)} Omega_pi`.
    pub noncrossing: Vec<(LinkPattern, bool)>,
    /// Permutation sector: `Upsilon_pi ~ B^{n(n-1)-|sigma|} Omega_{0^n}
    /// Xi_sigma(A + x_n, ..., A + x_1 | x_{n+1}, ..., x_{2n})`.
    pub permutation_sector: Vec<(LinkPattern, bool)>,
}

impl DegenerateReport {
    pub fn holds(&self) -> bool {
        self.noncrossing.iter().chain(&self.permutation_sector).all(|(_, ok)| *ok)
    }
}

pub fn brauer_degenerate_checks(s: &BrauerSolution) -> Result<DegenerateReport, Error> {
    let n = s.n;
    let v = &s.vars;
    let nv = v.nvars();
    let om = joseph_solve(n)?;
    // Joseph variables x_1..x_2n, A into x_1..x_N, A, B
    let rename: Vec<usize> = (0..2 * n).chain([v.a()]).collect();
    let top = (n * (n - 1)) as i32;
    let mut noncrossing = Vec::new();
    for (k, p) in om.patterns.iter().enumerate() {
        let want = om.components[k].rename(&rename, nv);
        let ok = s.component(p).and_then(|c| leading_in_b(s, c)) == Some((top, want));
        noncrossing.push((p.clone(), ok));
    }
    let base = joseph_base(n)?.rename(&rename, nv);
    let mut images: Vec<ZPoly> = Vec::with_capacity(2 * n);
    for k in 1..=n {
        images.push(ZPoly::var(nv, v.a()).plus(&ZPoly::var(nv, n - k)));
    }
    for k in 1..=n {
        images.push(ZPoly::var(nv, n + k - 1));
    }
    let mut sector = Vec::new();
    for (p, c) in s.patterns.iter().zip(&s.components) {
        let Some(sigma) = permutation_sector(p) else { continue };
        let xi = schubert_pipedream(&sigma)?.substitute(&images, |c| c.clone())?;
        let want = (top - sigma.inversions() as i32, base.times(&xi));
        sector.push((p.clone(), leading_in_b(s, c) == Some(want)));
    }
    Ok(DegenerateReport { n, noncrossing, permutation_sector: sector })
}
