use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use lattica::geometry::*;
use lattica::kernel::*;
use lattica::loops::*;
use lattica::qkz::*;
use lattica::schur::*;
use lattica::sixvertex::*;
use lattica::tilings::*;
use lattica::Error;

use crate::checks::{run_all, Level};
use crate::corpus::{run_corpus, Corpus};
use crate::emit::{Format, Outcome};

#[derive(Parser, Debug)]
#[command(name = "lattica", version, about = "Exact computations for lattice models, symmetric functions and multidegrees")]
pub struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub emit: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Schur polynomial s_lambda(x_1..x_n)
    Schur {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        vars: usize,
        #[arg(long, default_value = "ssyt")]
        method: String,
    },
    /// Plane partitions in an a x b x c box
    Macmahon {
        a: usize,
        b: usize,
        c: usize,
        /// Also print the q-enumeration
        #[arg(long)]
        q: bool,
    },
    /// TSSCPP tau-enumeration N_n(tau)
    Tsscpp {
        n: usize,
        #[arg(long)]
        tau: Option<String>,
        #[arg(long, default_value = "ct")]
        method: String,
    },
    #[command(subcommand)]
    Asm(AsmCommand),
    /// Izergin determinant against the configuration sum; symbolic when no
    /// spectral parameters are given
    Izergin {
        n: usize,
        #[arg(long)]
        q: Option<String>,
        #[arg(long, num_args = 1.., value_delimiter = ',')]
        x: Vec<String>,
        #[arg(long, num_args = 1.., value_delimiter = ',')]
        y: Vec<String>,
    },
    #[command(subcommand)]
    Dwbc(DwbcCommand),
    #[command(subcommand)]
    Cpl(CplCommand),
    #[command(subcommand)]
    Fpl(FplCommand),
    /// Compare the CPL steady state with FPL counts
    RsCheck { n: usize },
    #[command(subcommand)]
    Qkz(QkzCommand),
    /// Double Schubert polynomial of a permutation
    Schubert {
        sigma: String,
        #[arg(long, value_enum, default_value = "pipedream")]
        method: SchubertMethod,
    },
    /// Joseph-Melnikov multidegrees
    Joseph {
        n: usize,
        #[arg(long)]
        verify: bool,
    },
    /// Brauer loop multidegrees on N points
    Brauer {
        #[arg(value_name = "N")]
        points: usize,
        #[arg(long)]
        verify: bool,
    },
    /// Run the verification suite
    #[command(alias = "run_all")]
    RunAll {
        #[arg(value_enum, default_value = "quick")]
        level: Level,
    },
    /// Check the golden corpus
    Corpus {
        /// Corpus file; the built-in corpus when omitted
        #[arg(long)]
        file: Option<std::path::PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum AsmCommand {
    /// Number of n x n alternating sign matrices
    Count {
        n: usize,
        #[arg(long)]
        refined: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum DwbcCommand {
    /// All domain-wall configurations, as ASMs
    Enumerate { n: usize },
}

#[derive(Subcommand, Debug)]
pub enum CplCommand {
    /// Steady state of the loop chain on a cylinder of width L
    Steady {
        #[arg(value_name = "L")]
        width: usize,
        #[arg(long, default_value = "1/2")]
        p: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum FplCommand {
    /// FPL counts by link pattern
    Census { n: usize },
}

#[derive(Subcommand, Debug)]
pub enum QkzCommand {
    /// Minimal polynomial solution at level 1
    Solve {
        n: usize,
        #[arg(long)]
        verify: bool,
    },
    /// Homogeneous components as tau-polynomials
    Tau { n: usize },
    /// The refined polynomial F_n(t, tau)
    Fn {
        n: usize,
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        tau: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchubertMethod {
    Pipedream,
    Nilhecke,
}

fn parse_rat(s: &str) -> Result<BigRational, Error> {
    parse_rational(s).ok_or_else(|| Error::Domain(format!("not a rational number: {:?}", s)))
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("{}{}", prefix, k)).collect()
}

fn render<R: Ring>(p: &MultiPoly<R>, names: &[String]) -> String {
    let v: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    p.render_with(&v)
}

fn pattern_map<T>(items: impl IntoIterator<Item = (String, T)>, f: impl Fn(T) -> Value) -> Value {
    let mut m = Map::new();
    for (k, v) in items {
        m.insert(k, f(v));
    }
    Value::Object(m)
}

fn failures(v: &[String]) -> Value {
    Value::Array(v.iter().map(|s| Value::String(s.clone())).collect())
}

pub fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Schur { shape, vars, method } => {
            let lambda = Partition::parse(shape)?;
            let m = SchurMethod::parse(method)?;
            let p = schur(&lambda, *vars, m)?;
            Ok(Outcome::value(json!({
                "shape": lambda.to_string(),
                "vars": vars,
                "method": m.name(),
                "poly": render(&p, &names("x", *vars)),
            })))
        }
        Command::Macmahon { a, b, c, q } => {
            let mut doc = json!({ "a": a, "b": b, "c": c, "count": macmahon(*a, *b, *c).to_string() });
            if *q {
                doc["q_enumeration"] = Value::String(macmahon_q(*a, *b, *c).to_string());
            }
            Ok(Outcome::value(doc))
        }
        Command::Tsscpp { n, tau, method } => {
            let p = tsscpp(*n, TsscppMethod::parse(method)?)?;
            let mut doc = json!({ "n": n, "method": method, "poly": render_tau(&p) });
            if let Some(t) = tau {
                let t = parse_rat(t)?;
                doc["tau"] = Value::String(render_rational(&t));
                doc["value"] = Value::String(render_rational(&eval_tau(&p, &t)));
            }
            Ok(Outcome::value(doc))
        }
        Command::Asm(AsmCommand::Count { n, refined }) => {
            let mut doc = json!({ "n": n, "count": asm_count(*n).to_string() });
            if *refined {
                let r = asm_refined(*n)?;
                doc["refined"] = Value::Array(r.iter().map(|c| Value::String(c.to_string())).collect());
            }
            Ok(Outcome::value(doc))
        }
        Command::Izergin { n, q, x, y } => izergin_cmd(*n, q.as_deref(), x, y),
        Command::Dwbc(DwbcCommand::Enumerate { n }) => {
            let cfgs = enumerate_dwbc(*n)?;
            let asms: Vec<Value> = cfgs.iter().map(|c| asm_of(c).map(|a| json!(a))).collect::<Result<_, _>>()?;
            Ok(Outcome::value(json!({ "n": n, "count": asms.len(), "asms": asms })))
        }
        Command::Cpl(CplCommand::Steady { width, p }) => {
            let p = parse_rat(p)?;
            let v = steady_state_at(*width, &p)?;
            let min = v.iter().map(|(_, x)| x).min().cloned().unwrap_or_else(|| rat(0, 1));
            let max = v.iter().map(|(_, x)| x).max().cloned().unwrap_or_else(|| rat(0, 1));
            Ok(Outcome::value(json!({
                "L": width,
                "p": render_rational(&p),
                "vector": pattern_map(v.iter().map(|(k, x)| (k.to_string(), x)), |x| Value::String(render_rational(x))),
                "min": render_rational(&min),
                "max": render_rational(&max),
            })))
        }
        Command::Fpl(FplCommand::Census { n }) => {
            let c = fpl_census(*n)?;
            let total: BigInt = c.iter().map(|(_, a)| a).sum();
            Ok(Outcome::value(json!({
                "n": n,
                "total": total.to_string(),
                "census": pattern_map(c.iter().map(|(k, a)| (k.to_string(), a)), |a| Value::String(a.to_string())),
            })))
        }
        Command::RsCheck { n } => {
            let r = rs_check(*n)?;
            let fpl: std::collections::HashMap<&LinkPattern, &BigRational> = r.fpl.iter().map(|(p, v)| (p, v)).collect();
            let entries = pattern_map(r.psi.iter().map(|(k, x)| (k.to_string(), (k, x))), |(k, x)| {
                json!({
                    "psi": render_rational(x),
                    "fpl": fpl.get(&k.rotate_by(r.offset)).map(|v| render_rational(v)).unwrap_or_default(),
                })
            });
            Ok(Outcome::check(
                json!({
                    "n": n,
                    "offset": r.offset,
                    "multiset_equal": r.multiset_equal,
                    "entrywise": r.entrywise,
                    "entries": entries,
                }),
                r.holds(),
            ))
        }
        Command::Qkz(QkzCommand::Solve { n, verify }) => {
            let s = qkz_solve(*n)?;
            let mut doc = json!({
                "n": n,
                "components": pattern_map(s.patterns.iter().map(|p| p.to_string()).zip(&s.components), |c| Value::String(c.to_string())),
            });
            let mut ok = true;
            if *verify {
                let r = verify_solution(&s)?;
                ok = r.holds();
                doc["verify"] = json!({
                    "exchange": r.exchange,
                    "cyclic": r.cyclic,
                    "wheel": r.wheel,
                    "recurrence": r.recurrence,
                    "dyck": r.dyck,
                    "failures": failures(&r.failures),
                });
            }
            Ok(Outcome::check(doc, ok))
        }
        Command::Qkz(QkzCommand::Tau { n }) => {
            let h = homogeneous_tau(*n)?;
            Ok(Outcome::value(json!({
                "n": n,
                "components": pattern_map(h.iter().map(|(p, t)| (p.to_string(), t)), |t| Value::String(render_tau(t))),
            })))
        }
        Command::Qkz(QkzCommand::Fn { n, t, tau }) => {
            let f = fn_ct(*n)?;
            let mut doc = json!({ "n": n, "poly": render(&f, &["t".into(), "tau".into()]) });
            if t.is_some() || tau.is_some() {
                let mut images: Vec<QPoly> = (0..2).map(|k| QPoly::var(2, k)).collect();
                if let Some(t) = t {
                    let v = parse_rat(t)?;
                    doc["t"] = Value::String(render_rational(&v));
                    images[0] = QPoly::constant(2, v);
                }
                if let Some(tau) = tau {
                    let v = parse_rat(tau)?;
                    doc["tau"] = Value::String(render_rational(&v));
                    images[1] = QPoly::constant(2, v);
                }
                let g = f.substitute(&images, |c| BigRational::from_integer(c.clone()))?;
                doc["value"] = Value::String(render(&g, &["t".into(), "tau".into()]));
            }
            Ok(Outcome::value(doc))
        }
        Command::Schubert { sigma, method } => {
            let s = Permutation::parse(sigma)?;
            let p = match method {
                SchubertMethod::Pipedream => schubert_pipedream(&s)?,
                SchubertMethod::Nilhecke => schubert_nilhecke(&s)?,
            };
            Ok(Outcome::value(json!({
                "sigma": s.to_string(),
                "method": format!("{:?}", method).to_lowercase(),
                "degree": s.inversions(),
                "poly": render(&p, &schubert_names(s.size())),
            })))
        }
        Command::Joseph { n, verify } => {
            let s = joseph_solve(*n)?;
            let nm = joseph_names(*n);
            let mut doc = json!({
                "n": n,
                "components": pattern_map(s.patterns.iter().map(|p| p.to_string()).zip(&s.components), |c| Value::String(render(c, &nm))),
            });
            let mut ok = true;
            if *verify {
                let r = joseph_verify(*n)?;
                ok = r.holds();
                doc["verify"] = json!({
                    "exchange": r.exchange,
                    "cyclic": r.cyclic,
                    "recurrence": r.recurrence,
                    "wheel": r.wheel,
                    "degree": r.degree,
                    "failures": failures(&r.failures),
                });
            }
            Ok(Outcome::check(doc, ok))
        }
        Command::Brauer { points, verify } => {
            let s = brauer_solve(*points)?;
            let nm = s.vars.names();
            let mut doc = json!({
                "N": points,
                "components": pattern_map(s.patterns.iter().map(|p| p.to_string()).zip(&s.components), |c| Value::String(render(c, &nm))),
                "degrees": pattern_map(brauer_degrees(&s).into_iter().map(|(p, d)| (p.to_string(), d)), |d| Value::String(d.to_string())),
            });
            let mut ok = true;
            if *verify {
                let wheel = brauer_wheel_check(&s);
                let d = brauer_degenerate_checks(&s)?;
                ok = wheel.is_empty() && d.holds();
                let flags = |v: &[(LinkPattern, bool)]| pattern_map(v.iter().map(|(p, b)| (p.to_string(), *b)), Value::Bool);
                doc["verify"] = json!({
                    "wheel": wheel.is_empty(),
                    "noncrossing_limit": flags(&d.noncrossing),
                    "permutation_sector": flags(&d.permutation_sector),
                    "failures": failures(&wheel),
                });
            }
            Ok(Outcome::check(doc, ok))
        }
        Command::RunAll { level } => {
            let results = run_all(*level);
            let passed = results.iter().filter(|r| r.passed()).count();
            let checks = pattern_map(results.iter().map(|r| (r.name.to_string(), r)), |r| Value::String(r.status()));
            Ok(Outcome::check(
                json!({
                    "level": format!("{:?}", level).to_lowercase(),
                    "checks": checks,
                    "passed": passed,
                    "failed": results.len() - passed,
                }),
                passed == results.len(),
            ))
        }
        Command::Corpus { file } => {
            let corpus = match file {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| Error::Validation(format!("{}: {}", path.display(), e)))?;
                    Corpus::parse(&text)?
                }
                None => Corpus::builtin(),
            };
            let results = run_corpus(&corpus);
            let passed = results.iter().filter(|r| r.1.is_none()).count();
            let records = pattern_map(results.iter().map(|(id, w)| (id.clone(), w)), |w| {
                Value::String(match w {
                    None => "pass".into(),
                    Some(w) => format!("fail: {}", w),
                })
            });
            Ok(Outcome::check(
                json!({ "records": records, "passed": passed, "failed": results.len() - passed }),
                passed == results.len(),
            ))
        }
    }
}

fn izergin_cmd(n: usize, q: Option<&str>, x: &[String], y: &[String]) -> Result<Outcome, Error> {
    if x.is_empty() && y.is_empty() {
        let nm: Vec<String> = names("x", n).into_iter().chain(names("y", n)).collect();
        let (iz, brute, agree) = match q {
            None => {
                let w = Weights::symbolic(n, LaurentQ::q(), LaurentQ::q_inv());
                let (a, b) = (izergin(&w)?, partition_function_brute(&w)?);
                (render(&a, &nm), render(&b, &nm), a == b)
            }
            Some(q) => {
                let q = parse_rat(q)?;
                let qi = BigRational::from_integer(int(1)) / &q;
                let w = Weights::symbolic(n, q, qi);
                let (a, b) = (izergin(&w)?, partition_function_brute(&w)?);
                (render(&a, &nm), render(&b, &nm), a == b)
            }
        };
        return Ok(Outcome::check(json!({ "n": n, "izergin": iz, "brute": brute, "agree": agree }), agree));
    }
    if x.len() != n || y.len() != n {
        return Err(Error::Dimension(format!("need {} values for --x and --y, got {} and {}", n, x.len(), y.len())));
    }
    let q = parse_rat(q.unwrap_or("2"))?;
    let xs = x.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>, _>>()?;
    let ys = y.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>, _>>()?;
    let w = Weights::numeric(q, xs, ys)?;
    let iz = izergin(&w)?;
    let brute = partition_function_brute(&w)?;
    let agree = iz == brute;
    Ok(Outcome::check(
        json!({ "n": n, "izergin": render_rational(&iz), "brute": render_rational(&brute), "agree": agree }),
        agree,
    ))
}
