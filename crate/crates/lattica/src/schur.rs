//! Partitions, tableaux and four independent computations of Schur
//! polynomials, plus the Lindström–Gessel–Viennot path engine.

use std::collections::HashMap;
use std::fmt;

use crate::kernel::*;
use crate::Error;

/// Weakly decreasing list of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, Error> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("{:?} is not weakly decreasing", parts)));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `"2,1,1"`; the empty string is the empty partition.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Domain(format!("bad part {:?}", p))))
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// `lambda_i` with zero-based `i`, zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.part(0);
        Partition((0..w).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }

    pub fn contains(&self, other: &Partition) -> bool {
        (0..other.len()).all(|i| self.part(i) >= other.part(i))
    }

    /// All partitions of `k` with at most `rows` parts, each at most `cols`.
    pub fn all_of(k: usize, rows: usize, cols: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(k: usize, rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if k == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            if rows == 0 {
                return;
            }
            for p in (1..=max.min(k)).rev() {
                cur.push(p);
                rec(k - p, rows - 1, p, cur, out);
                cur.pop();
            }
        }
        rec(k, rows, cols, &mut cur, &mut out);
        out
    }

    /// The staircase-doubled shape `(n-1, n-1, n-2, n-2, ..., 1, 1)`.
    pub fn doubled_staircase(n: usize) -> Partition {
        Partition((1..n).rev().flat_map(|k| [k, k]).collect())
    }

    /// `c^r`, a rectangle with `r` rows of length `c`.
    pub fn rectangle(r: usize, c: usize) -> Partition {
        if c == 0 {
            return Partition::empty();
        }
        Partition(vec![c; r])
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkewShape {
    pub outer: Partition,
    pub inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self, Error> {
        if !outer.contains(&inner) {
            return Err(Error::Domain(format!("{} does not contain {}", outer, inner)));
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(outer: Partition) -> Self {
        SkewShape { outer, inner: Partition::empty() }
    }

    pub fn conjugate(&self) -> SkewShape {
        SkewShape { outer: self.outer.conjugate(), inner: self.inner.conjugate() }
    }

    /// Cells `(row, col)`, zero-based.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        (0..self.outer.len()).flat_map(|i| (self.inner.part(i)..self.outer.part(i)).map(move |j| (i, j))).collect()
    }
}

/// Sum over semistandard tableaux of skew shape in letters `1..=n`.
pub fn schur_ssyt_skew(shape: &SkewShape, n: usize) -> ZPoly {
    let cells = shape.cells();
    let mut filling: HashMap<(usize, usize), usize> = HashMap::new();
    let mut counts: HashMap<Vec<i32>, i64> = HashMap::new();
    let mut exps = vec![0i32; n];
    fn rec(
        k: usize,
        cells: &[(usize, usize)],
        n: usize,
        filling: &mut HashMap<(usize, usize), usize>,
        exps: &mut Vec<i32>,
        counts: &mut HashMap<Vec<i32>, i64>,
    ) {
        if k == cells.len() {
            *counts.entry(exps.clone()).or_insert(0) += 1;
            return;
        }
        let (i, j) = cells[k];
        // rows weakly increase, columns strictly increase
        let lo_row = if j > 0 { filling.get(&(i, j - 1)).copied().unwrap_or(1) } else { 1 };
        let lo_col = if i > 0 { filling.get(&(i - 1, j)).map_or(1, |v| v + 1) } else { 1 };
        for v in lo_row.max(lo_col)..=n {
            filling.insert((i, j), v);
            exps[v - 1] += 1;
            rec(k + 1, cells, n, filling, exps, counts);
            exps[v - 1] -= 1;
        }
        filling.remove(&(i, j));
    }
    rec(0, &cells, n, &mut filling, &mut exps, &mut counts);
    MultiPoly::from_terms(n, counts.into_iter().map(|(e, c)| (Mono::new(e), int(c))))
}

pub fn schur_ssyt(shape: &Partition, n: usize) -> ZPoly {
    schur_ssyt_skew(&SkewShape::straight(shape.clone()), n)
}

/// `h_0..=h_k` or `e_0..=e_k` in `n` variables, built once per call site.
pub struct SymCache {
    n: usize,
    h: Vec<ZPoly>,
    e: Vec<ZPoly>,
}

impl SymCache {
    pub fn new(n: usize) -> Self {
        SymCache { n, h: vec![ZPoly::one(n)], e: vec![ZPoly::one(n)] }
    }

    /// `h_k`, zero for negative `k`.
    pub fn h(&mut self, k: i64) -> ZPoly {
        if k < 0 {
            return ZPoly::zero(self.n);
        }
        while self.h.len() <= k as usize {
            let d = self.h.len() as i32;
            // monomials of degree d in n variables
            let mut terms = Vec::new();
            let mut e = vec![0i32; self.n];
            fn rec(pos: usize, left: i32, e: &mut Vec<i32>, terms: &mut Vec<(Mono, BigInt)>) {
                if pos + 1 == e.len() {
                    e[pos] = left;
                    terms.push((Mono::new(e.clone()), int(1)));
                    e[pos] = 0;
                    return;
                }
                for a in 0..=left {
                    e[pos] = a;
                    rec(pos + 1, left - a, e, terms);
                }
                e[pos] = 0;
            }
            if self.n > 0 {
                rec(0, d, &mut e, &mut terms);
            }
            self.h.push(MultiPoly::from_terms(self.n, terms));
        }
        self.h[k as usize].clone()
    }

    /// `e_k`, zero for negative `k` or `k > n`.
    pub fn e(&mut self, k: i64) -> ZPoly {
        if k < 0 || k as usize > self.n {
            return ZPoly::zero(self.n);
        }
        while self.e.len() <= k as usize {
            let d = self.e.len();
            let mut terms = Vec::new();
            for subset in 0u64..(1 << self.n) {
                if subset.count_ones() as usize == d {
                    let e: Vec<i32> = (0..self.n).map(|i| ((subset >> i) & 1) as i32).collect();
                    terms.push((Mono::new(e), int(1)));
                }
            }
            self.e.push(MultiPoly::from_terms(self.n, terms));
        }
        self.e[k as usize].clone()
    }
}

/// `det(b_{lambda_i - mu_j - i + j})` for a sequence `b` given as a closure.
pub fn jacobi_trudi_with<R: Ring>(shape: &SkewShape, mut b: impl FnMut(i64) -> R) -> R {
    let l = shape.outer.len();
    if l == 0 {
        return R::one();
    }
    let m = ExactMatrix::from_rows(
        (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| b(shape.outer.part(i) as i64 - shape.inner.part(j) as i64 - i as i64 + j as i64))
                    .collect()
            })
            .collect(),
    );
    m.det().expect("square by construction")
}

pub fn schur_jacobi_trudi(shape: &SkewShape, n: usize) -> ZPoly {
    let mut c = SymCache::new(n);
    jacobi_trudi_with(shape, |k| c.h(k))
}

/// Dual form with elementary symmetric polynomials and conjugate shapes.
pub fn schur_dual_jt(shape: &SkewShape, n: usize) -> ZPoly {
    let mut c = SymCache::new(n);
    jacobi_trudi_with(&shape.conjugate(), |k| c.e(k))
}

/// Bialternant `det(x_i^{lambda_j + n - j}) / prod_{i<j} (x_i - x_j)`.
pub fn schur_weyl(shape: &Partition, n: usize) -> Result<ZPoly, Error> {
    if shape.len() > n {
        return Err(Error::Domain(format!("{} has more than {} rows", shape, n)));
    }
    if n == 0 {
        return Ok(ZPoly::one(0));
    }
    let m = ExactMatrix::from_fn(n, n, |i, j| {
        let mut e = vec![0; n];
        e[i] = (shape.part(j) + n - 1 - j) as i32;
        MultiPoly::monomial(e, int(1))
    });
    let num = m.det()?;
    let vdm = vandermonde(n);
    num.div_exact(&vdm).ok_or_else(|| Error::NotExact("bialternant quotient".into()))
}

/// `prod_{i<j} (x_i - x_j)`.
pub fn vandermonde(n: usize) -> ZPoly {
    let mut acc = ZPoly::one(n);
    for i in 0..n {
        for j in i + 1..n {
            acc = acc.times(&MultiPoly::linear(n, &[(i, int(1)), (j, int(-1))], int(0)));
        }
    }
    acc
}

/// `h_k[t]` for `k <= order`, from `exp(sum_q t_q z^q)`, in variables
/// `t_1..t_order`.
pub fn complete_in_times(order: usize) -> Vec<QPoly> {
    let mut c = vec![QPoly::zero(order)];
    for q in 1..=order {
        c.push(MultiPoly::var(order, q - 1));
    }
    let s = TruncatedSeries::new(order, c);
    let e = s.exp().expect("no constant term");
    e.coeffs().iter().map(|p| p.extend_vars(order)).collect()
}

/// Skew Schur function in the times `t_1..t_order`.
pub fn schur_powersum_skew(shape: &SkewShape, order: usize) -> Result<QPoly, Error> {
    let need = shape.outer.size() - shape.inner.size();
    if order < need {
        return Err(Error::InsufficientPrecision(format!("order {} below degree {}", order, need)));
    }
    let h = complete_in_times(order);
    Ok(jacobi_trudi_with(shape, |k| {
        if k < 0 {
            QPoly::zero(order)
        } else {
            h.get(k as usize).cloned().unwrap_or_else(|| QPoly::zero(order))
        }
    }))
}

pub fn schur_powersum(shape: &Partition, order: usize) -> Result<QPoly, Error> {
    schur_powersum_skew(&SkewShape::straight(shape.clone()), order)
}

/// `s_lambda(1^n) = prod_{i<j<=n} (lambda_i - i - lambda_j + j) / (j - i)`.
pub fn schur_dimension(shape: &Partition, n: usize) -> BigInt {
    if shape.len() > n {
        return int(0);
    }
    let mut num = int(1);
    let mut den = int(1);
    for i in 0..n {
        for j in i + 1..n {
            num = num * int(shape.part(i) as i64 - i as i64 - shape.part(j) as i64 + j as i64);
            den = den * int((j - i) as i64);
        }
    }
    num.try_div_exact(&den).expect("dimension is an integer")
}

/// Weighted directed acyclic graph with designated sources and sinks.
#[derive(Clone, Debug)]
pub struct DagPaths<R> {
    pub nodes: usize,
    pub edges: Vec<(usize, usize, R)>,
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
}

impl<R: Ring> DagPaths<R> {
    /// Topological order, or a validation error if there is a cycle.
    pub fn topo_order(&self) -> Result<Vec<usize>, Error> {
        let mut indeg = vec![0usize; self.nodes];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.nodes];
        for (k, (u, v, _)) in self.edges.iter().enumerate() {
            if *u >= self.nodes || *v >= self.nodes {
                return Err(Error::Validation(format!("edge {} references a missing node", k)));
            }
            indeg[*v] += 1;
            out[*u].push(*v);
        }
        let mut stack: Vec<usize> = (0..self.nodes).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.nodes);
        while let Some(u) = stack.pop() {
            order.push(u);
            for &v in &out[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    stack.push(v);
                }
            }
        }
        if order.len() != self.nodes {
            return Err(Error::Validation("graph has a cycle".into()));
        }
        Ok(order)
    }

    /// Weighted path counts from every source to every sink.
    pub fn path_matrix(&self) -> Result<ExactMatrix<R>, Error> {
        let order = self.topo_order()?;
        let mut adj: Vec<Vec<(usize, R)>> = vec![Vec::new(); self.nodes];
        for (u, v, w) in &self.edges {
            adj[*u].push((*v, w.clone()));
        }
        let mut rows = Vec::new();
        for &s in &self.sources {
            let mut count = vec![R::zero(); self.nodes];
            count[s] = R::one();
            for &u in &order {
                if count[u].is_zero() {
                    continue;
                }
                let cu = count[u].clone();
                for (v, w) in &adj[u] {
                    count[*v].add_assign_r(&cu.times(w));
                }
            }
            rows.push(self.sinks.iter().map(|&t| count[t].clone()).collect());
        }
        Ok(ExactMatrix::from_rows(rows))
    }

    /// Signed determinant of the path matrix.
    pub fn lgv_count(&self) -> Result<R, Error> {
        if self.sources.len() != self.sinks.len() {
            return Err(Error::Dimension(format!("{} sources, {} sinks", self.sources.len(), self.sinks.len())));
        }
        self.path_matrix()?.det()
    }

    /// The determinant, after asserting by enumeration that every
    /// non-intersecting family is routed by the identity permutation, so the
    /// determinant is an honest weighted count.
    pub fn lgv_planar(&self) -> Result<R, Error> {
        let (_, identity_only) = self.nilp_brute()?;
        if !identity_only {
            return Err(Error::Validation("non-intersecting families with a non-identity permutation".into()));
        }
        self.lgv_count()
    }

    /// Brute-force signed sum over vertex-disjoint path families; also
    /// reports whether every such family connects source `i` to sink `i`.
    pub fn nilp_brute(&self) -> Result<(R, bool), Error> {
        self.topo_order()?;
        let k = self.sources.len();
        let mut adj: Vec<Vec<(usize, R)>> = vec![Vec::new(); self.nodes];
        for (u, v, w) in &self.edges {
            adj[*u].push((*v, w.clone()));
        }
        let mut used = vec![false; self.nodes];
        let mut sink_used = vec![false; k];
        let mut perm = Vec::new();
        let mut total = R::zero();
        let mut planar = true;
        #[allow(clippy::too_many_arguments)]
        fn walk<R: Ring>(
            g: &DagPaths<R>,
            adj: &[Vec<(usize, R)>],
            p: usize,
            at: usize,
            w: R,
            used: &mut Vec<bool>,
            sink_used: &mut Vec<bool>,
            perm: &mut Vec<usize>,
            total: &mut R,
            planar: &mut bool,
        ) {
            if let Some(t) = g.sinks.iter().position(|&s| s == at) {
                if !sink_used[t] {
                    sink_used[t] = true;
                    perm.push(t);
                    start(g, adj, p + 1, w.clone(), used, sink_used, perm, total, planar);
                    perm.pop();
                    sink_used[t] = false;
                }
            }
            for (v, ew) in &adj[at] {
                if !used[*v] {
                    used[*v] = true;
                    walk(g, adj, p, *v, w.times(ew), used, sink_used, perm, total, planar);
                    used[*v] = false;
                }
            }
        }
        #[allow(clippy::too_many_arguments)]
        fn start<R: Ring>(
            g: &DagPaths<R>,
            adj: &[Vec<(usize, R)>],
            p: usize,
            w: R,
            used: &mut Vec<bool>,
            sink_used: &mut Vec<bool>,
            perm: &mut Vec<usize>,
            total: &mut R,
            planar: &mut bool,
        ) {
            if p == g.sources.len() {
                let inv = (0..perm.len()).flat_map(|i| (i + 1..perm.len()).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
                if perm.iter().enumerate().any(|(i, &t)| i != t) {
                    *planar = false;
                }
                *total = if inv % 2 == 0 { total.plus(&w) } else { total.minus(&w) };
                return;
            }
            let s = g.sources[p];
            if used[s] {
                return;
            }
            used[s] = true;
            walk(g, adj, p, s, w, used, sink_used, perm, total, planar);
            used[s] = false;
        }
        start(self, &adj, 0, R::one(), &mut used, &mut sink_used, &mut perm, &mut total, &mut planar);
        Ok((total, planar))
    }
}

/// Lattice-path graph for `h`-type paths: points `(x, y)` with `x` in
/// `xmin..=xmax` and heights `y` in `1..=n`; east steps at height `y` carry
/// the weight `weight(y)`, north steps weigh 1. Returns the graph and a
/// node-index function.
pub fn particle_graph<R: Ring>(
    xmin: i64,
    xmax: i64,
    n: usize,
    weight: impl Fn(usize) -> R,
) -> (DagPaths<R>, impl Fn(i64, usize) -> usize) {
    let width = (xmax - xmin + 1) as usize;
    let idx = move |x: i64, y: usize| (y - 1) * width + (x - xmin) as usize;
    let mut edges = Vec::new();
    for y in 1..=n {
        for x in xmin..=xmax {
            if x < xmax {
                edges.push((idx(x, y), idx(x + 1, y), weight(y)));
            }
            if y < n {
                edges.push((idx(x, y), idx(x, y + 1), R::one()));
            }
        }
    }
    (DagPaths { nodes: width * n, edges, sources: Vec::new(), sinks: Vec::new() }, idx)
}

/// Skew Schur function as non-intersecting paths on the particle graph:
/// path `j` runs from `(mu_j - j, 1)` to `(lambda_j - j, n)`.
pub fn schur_lgv(shape: &SkewShape, n: usize) -> Result<ZPoly, Error> {
    let l = shape.outer.len();
    if l == 0 {
        return Ok(ZPoly::one(n));
    }
    if n == 0 {
        return Ok(ZPoly::zero(0));
    }
    let xmin = -(l as i64);
    let xmax = shape.outer.part(0) as i64;
    let (mut g, idx) = particle_graph(xmin, xmax, n, |y| MultiPoly::var(n, y - 1));
    for j in 0..l {
        g.sources.push(idx(shape.inner.part(j) as i64 - j as i64 - 1, 1));
        g.sinks.push(idx(shape.outer.part(j) as i64 - j as i64 - 1, n));
    }
    g.lgv_count()
}

/// Dual path picture: diagonal steps `(x, y) -> (x + 1, y + 1)` weigh
/// `x_{y+1}`, vertical steps weigh 1, heights `0..=n`; path `j` runs from
/// `(mu'_j - j, 0)` to `(lambda'_j - j, n)`.
pub fn schur_lgv_dual(shape: &SkewShape, n: usize) -> Result<ZPoly, Error> {
    let c = shape.conjugate();
    let l = c.outer.len();
    if l == 0 {
        return Ok(ZPoly::one(n));
    }
    let xmin = -(l as i64);
    let xmax = c.outer.part(0) as i64;
    let width = (xmax - xmin + 1) as usize;
    let idx = |x: i64, y: usize| y * width + (x - xmin) as usize;
    let mut edges = Vec::new();
    for y in 0..n {
        for x in xmin..=xmax {
            edges.push((idx(x, y), idx(x, y + 1), ZPoly::one(n)));
            if x < xmax {
                edges.push((idx(x, y), idx(x + 1, y + 1), MultiPoly::var(n, y)));
            }
        }
    }
    let mut g = DagPaths { nodes: width * (n + 1), edges, sources: Vec::new(), sinks: Vec::new() };
    for j in 0..l {
        g.sources.push(idx(c.inner.part(j) as i64 - j as i64 - 1, 0));
        g.sinks.push(idx(c.outer.part(j) as i64 - j as i64 - 1, n));
    }
    g.lgv_count()
}

/// Checks `sum_lambda s_lambda(x) s_lambda(y) = prod (1 - x_i y_j)^{-1}` up to
/// degree `d` in `x`.
pub fn cauchy_check(n: usize, m: usize, d: usize) -> bool {
    let nv = n + m;
    let xs: Vec<usize> = (0..n).collect();
    let keep = |p: &ZPoly| -> ZPoly {
        MultiPoly::from_terms(
            nv,
            p.terms().iter().filter(|(mo, _)| xs.iter().map(|&k| mo.exp(k)).sum::<i32>() <= d as i32).cloned(),
        )
    };
    let mut rhs = ZPoly::one(nv);
    for i in 0..n {
        for j in 0..m {
            let mut terms = Vec::new();
            for k in 0..=d as i32 {
                let mut e = vec![0; nv];
                e[i] = k;
                e[n + j] = k;
                terms.push((Mono::new(e), int(1)));
            }
            rhs = keep(&rhs.times(&MultiPoly::from_terms(nv, terms)));
        }
    }
    let mut lhs = ZPoly::zero(nv);
    let yperm: Vec<usize> = (0..m).map(|j| n + j).collect();
    let xperm: Vec<usize> = (0..n).collect();
    for k in 0..=d {
        for lam in Partition::all_of(k, n.min(m), k) {
            let sx = schur_jacobi_trudi(&SkewShape::straight(lam.clone()), n).rename(&xperm, nv);
            let sy = schur_jacobi_trudi(&SkewShape::straight(lam), m).rename(&yperm, nv);
            lhs = lhs.plus(&sx.times(&sy));
        }
    }
    lhs == rhs
}

/// Which route computes a Schur polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchurMethod {
    Ssyt,
    JacobiTrudi,
    DualJacobiTrudi,
    Weyl,
}

impl SchurMethod {
    pub fn parse(s: &str) -> Result<Self, Error> {
        match s {
            "ssyt" => Ok(SchurMethod::Ssyt),
            "jt" => Ok(SchurMethod::JacobiTrudi),
            "djt" => Ok(SchurMethod::DualJacobiTrudi),
            "weyl" => Ok(SchurMethod::Weyl),
            _ => Err(Error::Domain(format!("unknown method {:?}", s))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SchurMethod::Ssyt => "ssyt",
            SchurMethod::JacobiTrudi => "jt",
            SchurMethod::DualJacobiTrudi => "djt",
            SchurMethod::Weyl => "weyl",
        }
    }
}

pub fn schur(shape: &Partition, n: usize, method: SchurMethod) -> Result<ZPoly, Error> {
    let sk = SkewShape::straight(shape.clone());
    match method {
        SchurMethod::Ssyt => Ok(schur_ssyt(shape, n)),
        SchurMethod::JacobiTrudi => Ok(schur_jacobi_trudi(&sk, n)),
        SchurMethod::DualJacobiTrudi => Ok(schur_dual_jt(&sk, n)),
        SchurMethod::Weyl => schur_weyl(shape, n),
    }
}
