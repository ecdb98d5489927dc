//! Link patterns, the Temperley–Lieb action, the completely packed loop
//! Markov chain on a cylinder, and the fully packed loop census.

use std::collections::HashMap;
use std::fmt;

use crate::kernel::*;
use crate::schur::Partition;
use crate::sixvertex::{enumerate_dwbc, SixVertexConfig};
use crate::tilings::tsscpp_product;
use crate::{guard, Error};

/// A fixed-point-free involution of `{1..2n}`, stored zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkPattern {
    partner: Vec<usize>,
}

impl LinkPattern {
    /// From a zero-based partner table.
    pub fn new(partner: Vec<usize>) -> Result<Self, Error> {
        let l = partner.len();
        if l % 2 != 0 {
            return Err(Error::Domain(format!("odd number of points {}", l)));
        }
        for (i, &j) in partner.iter().enumerate() {
            if j >= l || j == i || partner[j] != i {
                return Err(Error::Domain(format!("{:?} is not a fixed-point-free involution", partner)));
            }
        }
        Ok(LinkPattern { partner })
    }

    /// From one-based pairs, e.g. `[(1, 4), (2, 3)]`.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self, Error> {
        let l = 2 * pairs.len();
        let mut partner = vec![usize::MAX; l];
        for &(a, b) in pairs {
            if a == 0 || b == 0 || a > l || b > l {
                return Err(Error::Domain(format!("point out of range in {:?}", pairs)));
            }
            partner[a - 1] = b - 1;
            partner[b - 1] = a - 1;
        }
        if partner.contains(&usize::MAX) {
            return Err(Error::Domain(format!("{:?} does not cover every point", pairs)));
        }
        LinkPattern::new(partner)
    }

    /// Parses `"(1 4)(2 3)"`.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let mut pairs = Vec::new();
        for chunk in s.split(')') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let inner = chunk
                .strip_prefix('(')
                .ok_or_else(|| Error::Domain(format!("bad pattern {:?}", s)))?;
            let nums: Vec<usize> = inner
                .split(|c: char| c == ' ' || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| Error::Domain(format!("bad point {:?}", t))))
                .collect::<Result<_, _>>()?;
            if nums.len() != 2 {
                return Err(Error::Domain(format!("bad pair {:?}", inner)));
            }
            pairs.push((nums[0], nums[1]));
        }
        LinkPattern::from_pairs(&pairs)
    }

    /// The pattern `0^n` pairing `i` with `2n+1-i`.
    pub fn smallest(n: usize) -> Self {
        LinkPattern { partner: (0..2 * n).map(|i| 2 * n - 1 - i).collect() }
    }

    /// Nearest neighbours `(1 2)(3 4)...`.
    pub fn nearest(n: usize) -> Self {
        LinkPattern { partner: (0..2 * n).map(|i| i ^ 1).collect() }
    }

    /// Number of points `L = 2n`.
    pub fn size(&self) -> usize {
        self.partner.len()
    }

    pub fn n(&self) -> usize {
        self.partner.len() / 2
    }

    /// One-based partner of the one-based point `i`.
    pub fn partner(&self, i: usize) -> usize {
        self.partner[i - 1] + 1
    }

    pub fn partners0(&self) -> &[usize] {
        &self.partner
    }

    /// One-based pairs `(a, b)` with `a < b`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.size()).filter(|&i| i < self.partner[i]).map(|i| (i + 1, self.partner[i] + 1)).collect()
    }

    pub fn is_noncrossing(&self) -> bool {
        let p = self.pairs();
        !p.iter().any(|&(a, b)| p.iter().any(|&(c, d)| a < c && c < b && b < d))
    }

    /// Counterclockwise rotation `rho`: point `k` moves to `k + 1`.
    pub fn rotate(&self) -> Self {
        self.rotate_by(1)
    }

    pub fn rotate_by(&self, k: usize) -> Self {
        let l = self.size();
        if l == 0 {
            return self.clone();
        }
        let mut partner = vec![0; l];
        for i in 0..l {
            partner[(i + k) % l] = (self.partner[i] + k) % l;
        }
        LinkPattern { partner }
    }

    /// Pairings that are all parallel: the rotations of `0^n`.
    pub fn is_all_parallel(&self) -> bool {
        let l = self.size();
        (0..l).any(|k| *self == LinkPattern::smallest(self.n()).rotate_by(k))
    }

    /// Pairings that connect nearest neighbours only.
    pub fn is_nearest_neighbour(&self) -> bool {
        let l = self.size();
        (0..l).all(|i| self.partner[i] == (i + 1) % l || (self.partner[i] + 1) % l == i)
    }

    /// The Young diagram inside the staircase `(n-1, ..., 1)`: with opening
    /// points `o_1 < ... < o_n`, `lambda_j = o_{n+1-j} - (n+1-j)`.
    pub fn to_young(&self) -> Result<Partition, Error> {
        if !self.is_noncrossing() {
            return Err(Error::Domain(format!("{} is crossing", self)));
        }
        let n = self.n();
        let openers: Vec<usize> = (0..self.size()).filter(|&i| i < self.partner[i]).map(|i| i + 1).collect();
        Partition::new((1..=n).map(|j| openers[n - j] - (n + 1 - j)).collect())
    }

    pub fn from_young(n: usize, lambda: &Partition) -> Result<Self, Error> {
        if lambda.len() > n || (0..n).any(|j| lambda.part(j) + j + 1 > n) {
            return Err(Error::Domain(format!("{} does not fit in the staircase of size {}", lambda, n)));
        }
        let mut open = vec![false; 2 * n];
        for k in 1..=n {
            open[lambda.part(n - k) + k - 1] = true;
        }
        let mut partner = vec![0; 2 * n];
        let mut stack = Vec::new();
        for (i, &o) in open.iter().enumerate() {
            if o {
                stack.push(i);
            } else {
                let j = stack.pop().ok_or_else(|| Error::Domain(format!("{} is not a Dyck shape", lambda)))?;
                partner[i] = j;
                partner[j] = i;
            }
        }
        LinkPattern::new(partner)
    }
}

impl fmt::Display for LinkPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in self.pairs() {
            write!(f, "({} {})", a, b)?;
        }
        Ok(())
    }
}

pub fn catalan(n: usize) -> BigInt {
    binomial(2 * n as i64, n as i64).try_div_exact(&int(n as i64 + 1)).expect("integer")
}

/// All noncrossing patterns of size `2n`, ordered by the size of their
/// Young diagram and then lexicographically by its parts.
pub fn link_patterns(n: usize) -> Result<Vec<LinkPattern>, Error> {
    guard("link pattern size n", n, 8)?;
    let mut shapes = Vec::new();
    let stair = n * n.saturating_sub(1) / 2;
    for k in 0..=stair {
        let mut level: Vec<Partition> = Partition::all_of(k, n.saturating_sub(1), n.saturating_sub(1))
            .into_iter()
            .filter(|l| (0..l.len()).all(|j| l.part(j) < n - j))
            .collect();
        level.sort();
        shapes.extend(level);
    }
    shapes.iter().map(|l| LinkPattern::from_young(n, l)).collect()
}

pub fn pattern_index(patterns: &[LinkPattern]) -> HashMap<LinkPattern, usize> {
    patterns.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect()
}

fn e_line(i: usize, pi: &LinkPattern) -> (LinkPattern, u32) {
    let (a, b) = (i - 1, i);
    let mut partner = pi.partner.clone();
    if partner[a] == b {
        return (pi.clone(), 1);
    }
    let (pa, pb) = (partner[a], partner[b]);
    partner[a] = b;
    partner[b] = a;
    partner[pa] = pb;
    partner[pb] = pa;
    (LinkPattern { partner }, 0)
}

/// `e_i` on a pattern, one-based `1 <= i <= L`. Returns the image and the
/// number of closed loops. `e_L` is `rho e_{L-1} rho^{-1}`.
pub fn tl_e(i: usize, pi: &LinkPattern) -> (LinkPattern, u32) {
    let l = pi.size();
    assert!(i >= 1 && i <= l && l >= 2, "generator index {} out of range for size {}", i, l);
    if i < l {
        return e_line(i, pi);
    }
    let (img, loops) = e_line(l - 1, &pi.rotate_by(l - 1));
    (img.rotate(), loops)
}

/// Probability vector indexed by link patterns.
pub type LoopStateVector = Vec<(LinkPattern, BigRational)>;

/// A CPL row on the cylinder. Bit `i` of `word` selects the face at column
/// `i`: set joins left with top and bottom with right, clear joins left
/// with bottom and top with right. The horizontal strand closes around the
/// cylinder; top point `i` sits above bottom point `i`.
pub fn cpl_row(pi: &LinkPattern, word: u32) -> LinkPattern {
    let l = pi.size();
    // nodes: tops 0..l, bottoms l..2l, horizontal edges 2l..3l
    let top = |i: usize| i;
    let bot = |i: usize| l + i;
    let hor = |i: usize| 2 * l + i % l;
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::with_capacity(2); 3 * l];
    let mut eid = 0;
    let mut link = |adj: &mut Vec<Vec<(usize, usize)>>, a: usize, b: usize| {
        adj[a].push((b, eid));
        adj[b].push((a, eid));
        eid += 1;
    };
    for i in 0..l {
        if i < pi.partner[i] {
            link(&mut adj, bot(i), bot(pi.partner[i]));
        }
        if word >> i & 1 == 1 {
            link(&mut adj, hor(i), top(i));
            link(&mut adj, bot(i), hor(i + 1));
        } else {
            link(&mut adj, hor(i), bot(i));
            link(&mut adj, top(i), hor(i + 1));
        }
    }
    let mut partner = vec![usize::MAX; l];
    for s in 0..l {
        if partner[s] != usize::MAX {
            continue;
        }
        let (mut cur, mut via) = adj[s][0];
        while cur >= l {
            let &(next, e) = adj[cur].iter().find(|&&(_, e)| e != via).expect("degree two");
            cur = next;
            via = e;
        }
        partner[s] = cur;
        partner[cur] = s;
    }
    LinkPattern { partner }
}

/// `counts[k][i][j]`: rows with `k` set faces taking pattern `j` to pattern
/// `i`, in the order of `link_patterns`.
pub fn cpl_row_counts(l: usize) -> Result<Vec<Vec<Vec<u64>>>, Error> {
    if l % 2 != 0 || l == 0 {
        return Err(Error::Domain(format!("cylinder width {} must be even and positive", l)));
    }
    guard("cylinder width", l, 12)?;
    let pats = link_patterns(l / 2)?;
    let idx = pattern_index(&pats);
    let c = pats.len();
    let mut counts = vec![vec![vec![0u64; c]; c]; l + 1];
    for (j, p) in pats.iter().enumerate() {
        for word in 0..1u32 << l {
            let img = cpl_row(p, word);
            counts[word.count_ones() as usize][idx[&img]][j] += 1;
        }
    }
    Ok(counts)
}

/// Transfer matrix `T_{pi, pi'}(p)` of the CPL cylinder, faces set with
/// probability `p`.
pub fn cpl_transfer(l: usize, p: &BigRational) -> Result<ExactMatrix<BigRational>, Error> {
    if *p <= BigRational::zero() || *p >= BigRational::one() {
        return Err(Error::Domain(format!("probability {} outside (0, 1)", render_rational(p))));
    }
    let counts = cpl_row_counts(l)?;
    let c = counts[0].len();
    let q = BigRational::one() - p;
    let w: Vec<BigRational> = (0..=l).map(|k| p.pow(k as i32) * q.pow((l - k) as i32)).collect();
    Ok(ExactMatrix::from_fn(c, c, |i, j| {
        let mut acc = BigRational::zero();
        for (k, wk) in w.iter().enumerate() {
            if counts[k][i][j] != 0 {
                acc += wk * BigRational::from_integer(int(counts[k][i][j] as i64));
            }
        }
        acc
    }))
}

/// Normalized kernel of `T - I`, from the integer system
/// `[D(T - I) | 0; 1 ... 1 | -1]` with `D` clearing denominators.
pub fn stationary_vector(t: &ExactMatrix<BigRational>) -> Result<Vec<BigRational>, Error> {
    let c = t.rows();
    let mut d = int(1);
    for i in 0..c {
        for j in 0..c {
            d = num_integer::Integer::lcm(&d, t.get(i, j).denom());
        }
    }
    let dr = BigRational::from_integer(d);
    let m = ExactMatrix::from_fn(c + 1, c + 1, |i, j| {
        if i == c {
            return if j == c { int(-1) } else { int(1) };
        }
        if j == c {
            return int(0);
        }
        let mut v = t.get(i, j).clone();
        if i == j {
            v -= BigRational::one();
        }
        let v = v * &dr;
        v.to_integer()
    });
    let ker = integer_kernel(&m);
    if ker.len() != 1 {
        return Err(Error::Consistency(format!("stationary space has dimension {}", ker.len())));
    }
    let v = &ker[0];
    let s = v[c].clone();
    if s.is_zero() {
        return Err(Error::Consistency("stationary vector has zero total mass".into()));
    }
    Ok(v[..c].iter().map(|x| x / &s).collect())
}

/// Steady state of the CPL chain on a cylinder of width `L`, at `p = 1/2`.
pub fn steady_state(l: usize) -> Result<LoopStateVector, Error> {
    steady_state_at(l, &rat(1, 2))
}

pub fn steady_state_at(l: usize, p: &BigRational) -> Result<LoopStateVector, Error> {
    let t = cpl_transfer(l, p)?;
    let v = stationary_vector(&t)?;
    if v.iter().any(|x| *x <= BigRational::zero()) {
        return Err(Error::Consistency("stationary vector is not positive".into()));
    }
    Ok(link_patterns(l / 2)?.into_iter().zip(v).collect())
}

/// FPL occupation of the edges of a DWBC configuration. An edge is occupied
/// when its arrow points at its endpoint of even parity. Returns
/// `(horizontal, vertical)` in the layout of `SixVertexConfig`.
pub fn fpl_of(cfg: &SixVertexConfig) -> FplConfig {
    let n = cfg.n;
    let h = (0..n).map(|r| (0..=n).map(|c| cfg.h[r][c] == ((r + c) % 2 == 0)).collect()).collect();
    let v = (0..=n).map(|r| (0..n).map(|c| cfg.v[r][c] == ((r + c) % 2 == 1)).collect()).collect();
    FplConfig { n, h, v }
}

/// Edge occupations of a fully packed loop configuration on an `n x n` grid
/// with its `4n` external edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FplConfig {
    pub n: usize,
    pub h: Vec<Vec<bool>>,
    pub v: Vec<Vec<bool>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Edge {
    H(usize, usize),
    V(usize, usize),
}

impl FplConfig {
    fn occupied(&self, e: Edge) -> bool {
        match e {
            Edge::H(r, c) => self.h[r][c],
            Edge::V(r, c) => self.v[r][c],
        }
    }

    fn incident(r: usize, c: usize) -> [Edge; 4] {
        [Edge::H(r, c), Edge::H(r, c + 1), Edge::V(r, c), Edge::V(r + 1, c)]
    }

    /// External edges counterclockwise from the top of the left side.
    fn boundary(&self) -> Vec<Edge> {
        let n = self.n;
        let mut out: Vec<Edge> = (0..n).map(|r| Edge::H(r, 0)).collect();
        out.extend((0..n).map(|c| Edge::V(n, c)));
        out.extend((0..n).rev().map(|r| Edge::H(r, n)));
        out.extend((0..n).rev().map(|c| Edge::V(0, c)));
        out
    }

    /// Two occupied edges at every vertex, alternating external edges.
    pub fn validate(&self) -> Result<(), Error> {
        for r in 0..self.n {
            for c in 0..self.n {
                let k = Self::incident(r, c).iter().filter(|&&e| self.occupied(e)).count();
                if k != 2 {
                    return Err(Error::Validation(format!("vertex ({}, {}) has {} occupied edges", r, c, k)));
                }
            }
        }
        let b = self.boundary();
        for i in 0..b.len() {
            if self.occupied(b[i]) == self.occupied(b[(i + 1) % b.len()]) {
                return Err(Error::Validation("external edges do not alternate".into()));
            }
        }
        Ok(())
    }

    /// Pairing of the occupied external edges, numbered counterclockwise
    /// from the top-left one.
    pub fn link_pattern(&self) -> Result<LinkPattern, Error> {
        let n = self.n;
        let ext: Vec<Edge> = self.boundary().into_iter().filter(|&e| self.occupied(e)).collect();
        let label: HashMap<Edge, usize> = ext.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut partner = vec![usize::MAX; ext.len()];
        for (s, &start) in ext.iter().enumerate() {
            if partner[s] != usize::MAX {
                continue;
            }
            // the inner vertex of an external edge
            let (mut r, mut c) = match start {
                Edge::H(r, 0) => (r, 0),
                Edge::H(r, _) => (r, n - 1),
                Edge::V(0, c) => (0, c),
                Edge::V(_, c) => (n - 1, c),
            };
            let mut via = start;
            let mut steps = 0;
            loop {
                steps += 1;
                if steps > 2 * n * n + 2 {
                    return Err(Error::Validation("path does not reach the boundary".into()));
                }
                let next = Self::incident(r, c)
                    .into_iter()
                    .find(|&e| e != via && self.occupied(e))
                    .ok_or_else(|| Error::Validation(format!("dead end at ({}, {})", r, c)))?;
                if let Some(&t) = label.get(&next) {
                    partner[s] = t;
                    partner[t] = s;
                    break;
                }
                (r, c) = match next {
                    Edge::H(rr, cc) if cc == c => (rr, c - 1),
                    Edge::H(rr, _) => (rr, c + 1),
                    Edge::V(rr, cc) if rr == r => (r - 1, cc),
                    Edge::V(_, cc) => (r + 1, cc),
                };
                via = next;
            }
        }
        LinkPattern::new(partner)
    }
}

/// `A_pi`: the number of FPLs of size `n` with connectivity `pi`.
pub fn fpl_census(n: usize) -> Result<Vec<(LinkPattern, BigInt)>, Error> {
    guard("fpl census size", n, 5)?;
    let pats = link_patterns(n)?;
    let idx = pattern_index(&pats);
    let mut counts = vec![0i64; pats.len()];
    for cfg in enumerate_dwbc(n)? {
        let f = fpl_of(&cfg);
        f.validate()?;
        let p = f.link_pattern()?;
        let k = *idx.get(&p).ok_or_else(|| Error::Validation(format!("{} is crossing", p)))?;
        counts[k] += 1;
    }
    Ok(pats.into_iter().zip(counts.into_iter().map(int)).collect())
}

/// Outcome of comparing the CPL steady state with the FPL census.
#[derive(Clone, Debug)]
pub struct RsReport {
    pub n: usize,
    pub offset: usize,
    pub multiset_equal: bool,
    pub entrywise: bool,
    /// Offsets that align the two vectors at this size.
    pub aligning: Vec<usize>,
    pub psi: LoopStateVector,
    pub fpl: LoopStateVector,
}

fn rs_vectors(n: usize) -> Result<(LoopStateVector, LoopStateVector), Error> {
    let psi = steady_state(2 * n)?;
    let an = BigRational::from_integer(tsscpp_product(n));
    let fpl = fpl_census(n)?.into_iter().map(|(p, a)| (p, BigRational::from_integer(a) / &an)).collect();
    Ok((psi, fpl))
}

fn aligning_offsets(psi: &LoopStateVector, fpl: &LoopStateVector) -> Vec<usize> {
    let l = psi.first().map_or(0, |(p, _)| p.size()).max(1);
    let map: HashMap<&LinkPattern, &BigRational> = psi.iter().map(|(p, v)| (p, v)).collect();
    (0..l).filter(|&r| fpl.iter().all(|(p, a)| map.get(&p.rotate_by(r)) == Some(&a))).collect()
}

/// Rotation between FPL labels and CPL labels, found once at `n = 2`.
pub fn rs_offset() -> Result<usize, Error> {
    let (psi, fpl) = rs_vectors(2)?;
    aligning_offsets(&psi, &fpl)
        .first()
        .copied()
        .ok_or_else(|| Error::Consistency("no rotation aligns the n = 2 vectors".into()))
}

/// `Psi_pi = A_pi / A_n` with the frozen rotation offset.
pub fn rs_check(n: usize) -> Result<RsReport, Error> {
    guard("fpl census size", n, 5)?;
    let offset = rs_offset()?;
    let (psi, fpl) = rs_vectors(n)?;
    let mut a: Vec<&BigRational> = psi.iter().map(|(_, v)| v).collect();
    let mut b: Vec<&BigRational> = fpl.iter().map(|(_, v)| v).collect();
    a.sort();
    b.sort();
    let aligning = aligning_offsets(&psi, &fpl);
    Ok(RsReport {
        n,
        offset,
        multiset_equal: a == b,
        entrywise: aligning.contains(&(offset % (2 * n).max(1))),
        aligning,
        psi,
        fpl,
    })
}

impl RsReport {
    pub fn holds(&self) -> bool {
        self.multiset_equal && self.entrywise
    }
}
