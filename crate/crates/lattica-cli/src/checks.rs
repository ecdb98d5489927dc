use std::collections::HashMap;
use std::time::{Duration, Instant};

use lattica::geometry::*;
use lattica::kernel::*;
use lattica::loops::*;
use lattica::qkz::*;
use lattica::schur::*;
use lattica::sixvertex::*;
use lattica::tilings::*;
use lattica::Error;

use crate::corpus::{run_corpus, Corpus};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Level {
    /// n <= 3 and N <= 4 bounds, under a minute
    Quick,
    /// The full bounds of every module
    Full,
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub witness: Option<String>,
    pub elapsed: Duration,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    pub fn status(&self) -> String {
        match &self.witness {
            None => "pass".into(),
            Some(w) => format!("fail: {}", w),
        }
    }
}

type Check = fn(bool) -> Result<Option<String>, Error>;

fn fail(msg: impl Into<String>) -> Result<Option<String>, Error> {
    Ok(Some(msg.into()))
}

fn asm_counts(full: bool) -> Result<Option<String>, Error> {
    let want = [1u64, 2, 7, 42, 429];
    for (k, w) in want.iter().enumerate() {
        let n = k + 1;
        if count_dwbc(n)? != *w || enumerate_dwbc(n)?.len() as u64 != *w {
            return fail(format!("n = {}", n));
        }
    }
    for n in 1..=if full { 7 } else { 6 } {
        if int(count_dwbc(n)? as i64) != asm_count(n) {
            return fail(format!("product formula at n = {}", n));
        }
    }
    for n in 1..=if full { 6 } else { 5 } {
        let r = asm_refined(n)?;
        if r.iter().sum::<BigInt>() != asm_count(n) {
            return fail(format!("refined counts at n = {}", n));
        }
    }
    for n in 2..=12 {
        let (a, b) = (asm_growth_log(n - 1), asm_growth_log(n));
        if a >= b || b.exp() >= asm_growth_limit() {
            return fail(format!("growth trend at n = {}", n));
        }
    }
    Ok(None)
}

fn symbolic(n: usize) -> Weights<LPoly> {
    Weights::symbolic(n, LaurentQ::q(), LaurentQ::q_inv())
}

fn izergin_symbolic(full: bool) -> Result<Option<String>, Error> {
    for n in 1..=if full { 4 } else { 3 } {
        let w = symbolic(n);
        if izergin(&w)? != partition_function_brute(&w)? {
            return fail(format!("n = {}", n));
        }
    }
    Ok(None)
}

fn korepin(full: bool) -> Result<Option<String>, Error> {
    let z1 = partition_function_brute(&symbolic(1))?;
    if z1 != LPoly::constant(2, LaurentQ::q_minus_qinv()) {
        return fail(format!("Z_1 = {}", z1));
    }
    for n in 1..=if full { 4 } else { 3 } {
        let w = symbolic(n);
        let z = partition_function_brute(&w)?;
        if !degree_bound_holds(&z, n) {
            return fail(format!("degree bound at n = {}", n));
        }
        for fam in [0, n] {
            for i in 0..n.saturating_sub(1) {
                if z.swap_vars(fam + i, fam + i + 1) != z {
                    return fail(format!("symmetry at n = {}", n));
                }
            }
        }
        if !korepin_check(&w)? {
            return fail(format!("recursion at n = {}", n));
        }
    }
    Ok(None)
}

fn schur_agreement(full: bool) -> Result<Option<String>, Error> {
    let methods = [SchurMethod::Ssyt, SchurMethod::JacobiTrudi, SchurMethod::DualJacobiTrudi, SchurMethod::Weyl];
    for k in 0..=if full { 6 } else { 4 } {
        for lambda in Partition::all_of(k, k, k) {
            for n in 1..=4 {
                let base = schur(&lambda, n, SchurMethod::Ssyt)?;
                for m in methods {
                    if m == SchurMethod::Weyl && lambda.len() > n {
                        continue;
                    }
                    if schur(&lambda, n, m)? != base {
                        return fail(format!("{} in {} variables by {}", lambda, n, m.name()));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn macmahon_boxes(full: bool) -> Result<Option<String>, Error> {
    let bound = if full { 24 } else { 12 };
    for a in 1..=bound {
        for b in 1..=bound / a {
            for c in 1..=bound / (a * b) {
                if plane_partitions_brute(a, b, c)? != macmahon(a, b, c) {
                    return fail(format!("box {}x{}x{}", a, b, c));
                }
            }
        }
    }
    let m = if full { 4 } else { 3 };
    for a in 1..=m {
        for b in 1..=m {
            for c in 1..=m {
                if !auxiliary_identities_check(a, b, c) {
                    return fail(format!("auxiliary identities at {}x{}x{}", a, b, c));
                }
            }
        }
    }
    Ok(None)
}

fn tsscpp_routes(full: bool) -> Result<Option<String>, Error> {
    for n in 1..=if full { 5 } else { 4 } {
        if tsscpp_ct(n) != tsscpp_brute(n)? {
            return fail(format!("n = {}", n));
        }
    }
    for n in 1..=8 {
        if tsscpp_ct_count(n) != tsscpp_product(n) {
            return fail(format!("N_n(1) at n = {}", n));
        }
    }
    Ok(None)
}

fn cpl_steady(full: bool) -> Result<Option<String>, Error> {
    let v = steady_state(8)?;
    let mut seen: HashMap<String, usize> = HashMap::new();
    for (_, x) in &v {
        *seen.entry(render_rational(x)).or_default() += 1;
    }
    let want: HashMap<String, usize> = [("1/42", 4), ("1/14", 8), ("1/6", 2)].into_iter().map(|(k, c)| (k.to_string(), c)).collect();
    if seen != want {
        return fail(format!("L = 8 gives {:?}", seen));
    }
    for l in (2..=if full { 10 } else { 8 }).step_by(2) {
        let s = steady_state(l)?;
        if s != steady_state_at(l, &rat(1, 3))? {
            return fail(format!("kernel moves with p at L = {}", l));
        }
        let rotated: HashMap<LinkPattern, BigRational> = s.iter().map(|(p, x)| (p.rotate(), x.clone())).collect();
        if s.iter().any(|(p, x)| rotated[p] != *x) {
            return fail(format!("rotation invariance at L = {}", l));
        }
    }
    Ok(None)
}

fn razumov_stroganov(full: bool) -> Result<Option<String>, Error> {
    for n in 1..=if full { 5 } else { 4 } {
        if !rs_check(n)?.holds() {
            return fail(format!("n = {}", n));
        }
    }
    Ok(None)
}

fn qkz_suite(full: bool) -> Result<Option<String>, Error> {
    for n in 1..=if full { 4 } else { 3 } {
        let r = verify_solution(&qkz_solve_fast(n)?)?;
        if !r.holds() {
            return fail(format!("n = {}: {}", n, r.failures.join("; ")));
        }
    }
    Ok(None)
}

fn sum_rule(full: bool) -> Result<Option<String>, Error> {
    for n in 1..=if full { 4 } else { 3 } {
        if !sum_rule_check(n)? {
            return fail(format!("n = {}", n));
        }
    }
    Ok(None)
}

fn homogeneous(full: bool) -> Result<Option<String>, Error> {
    let mut got: Vec<String> = homogeneous_tau(3)?.iter().map(|(_, t)| render_tau(t)).collect();
    got.sort();
    let mut want = vec!["1", "2 * tau", "tau^2", "tau^2", "tau + tau^3"];
    want.sort();
    if got != want {
        return fail(format!("n = 3 gives {:?}", got));
    }
    for n in 1..=if full { 5 } else { 4 } {
        let h = homogeneous_tau(n)?;
        if h.iter().any(|(_, t)| t.terms().iter().any(|(_, c)| *c < int(0))) {
            return fail(format!("negative coefficient at n = {}", n));
        }
        if !steady_state_match(n)? {
            return fail(format!("tau = 1 against the steady state at n = {}", n));
        }
    }
    Ok(None)
}

fn refined_fn(full: bool) -> Result<Option<String>, Error> {
    for n in 1..=if full { 6 } else { 4 } {
        let r = fn_properties(n)?;
        if !r.holds() {
            return fail(format!("n = {}: {:?}", n, r));
        }
    }
    Ok(None)
}

fn three_arch(full: bool) -> Result<Option<String>, Error> {
    for n in 1..=if full { 5 } else { 4 } {
        if !three_arch_check(n)? {
            return fail(format!("n = {}", n));
        }
    }
    Ok(None)
}

fn schubert(full: bool) -> Result<Option<String>, Error> {
    let top = if full { 5 } else { 4 };
    for n in 1..=top {
        for s in Permutation::all(n) {
            if schubert_pipedream(&s)? != schubert_nilhecke(&s)? {
                return fail(format!("routes differ at {}", s));
            }
        }
    }
    for n in 1..=top + 1 {
        for s in Permutation::all(n) {
            if grassmannian_shape(&s).is_ok() && !factorial_schur_check(&s)? {
                return fail(format!("factorial Schur at {}", s));
            }
        }
    }
    Ok(None)
}

fn joseph(full: bool) -> Result<Option<String>, Error> {
    for n in 1..=if full { 4 } else { 3 } {
        let r = joseph_verify(n)?;
        if !r.holds() {
            return fail(format!("n = {}: {}", n, r.failures.join("; ")));
        }
    }
    for n in 1..=if full { 3 } else { 2 } {
        if !rational_limit_check(n)? {
            return fail(format!("limit of the qKZ solution at n = {}", n));
        }
    }
    Ok(None)
}

fn brauer(full: bool) -> Result<Option<String>, Error> {
    let s = brauer_solve(4)?;
    let wheel = brauer_wheel_check(&s);
    if let Some(w) = wheel.first() {
        return fail(format!("wheel: {}", w));
    }
    let d = brauer_degenerate_checks(&s)?;
    if !d.holds() {
        return fail(format!("degenerate limits: {:?}", d));
    }
    if full {
        let s = brauer_solve(6)?;
        if s.patterns.len() != 15 {
            return fail("N = 6 does not reach every pattern");
        }
    }
    Ok(None)
}

fn toda(_full: bool) -> Result<Option<String>, Error> {
    let mut holds = 0;
    for seed in 0..12i64 {
        for n in 1..=3 {
            let order = 2 * n + 4;
            let cs = (0..=order as i64).map(|k| rat((7 * k + 5 * seed + 3) % 19 - 9, (k + seed) % 5 + 1)).collect();
            let phi = TruncatedSeries::new(order, cs);
            match toda_chain_check(&phi, n)? {
                TodaOutcome::Holds => holds += 1,
                TodaOutcome::Degenerate => {}
                TodaOutcome::Fails => return fail(format!("seed {} at n = {}", seed, n)),
            }
        }
    }
    if holds == 0 {
        return fail("every series was degenerate");
    }
    Ok(None)
}

fn golden(_full: bool) -> Result<Option<String>, Error> {
    let bad: Vec<String> = run_corpus(&Corpus::builtin())
        .into_iter()
        .filter_map(|(id, w)| w.map(|w| format!("{}: {}", id, w)))
        .collect();
    Ok(if bad.is_empty() { None } else { Some(bad.join("; ")) })
}

pub const CHECKS: &[(&str, Check)] = &[
    ("asm-counts", asm_counts),
    ("izergin", izergin_symbolic),
    ("korepin", korepin),
    ("schur", schur_agreement),
    ("macmahon", macmahon_boxes),
    ("tsscpp", tsscpp_routes),
    ("cpl-steady-state", cpl_steady),
    ("razumov-stroganov", razumov_stroganov),
    ("qkz", qkz_suite),
    ("sum-rule", sum_rule),
    ("homogeneous-tau", homogeneous),
    ("refined-fn", refined_fn),
    ("three-arch", three_arch),
    ("schubert", schubert),
    ("joseph", joseph),
    ("brauer", brauer),
    ("toda", toda),
    ("golden-corpus", golden),
];

pub fn run_check(name: &'static str, f: Check, level: Level) -> CheckResult {
    let t = Instant::now();
    let witness = match f(level == Level::Full) {
        Ok(w) => w,
        Err(e) => Some(format!("error: {}", e)),
    };
    CheckResult { name, witness, elapsed: t.elapsed() }
}

/// Every check on its own thread; results come back in table order.
pub fn run_all(level: Level) -> Vec<CheckResult> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = CHECKS
            .iter()
            .map(|&(name, f)| {
                std::thread::Builder::new()
                    .stack_size(64 << 20)
                    .spawn_scoped(scope, move || run_check(name, f, level))
                    .expect("spawn check")
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("check thread")).collect()
    })
}
