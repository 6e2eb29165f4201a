//! The `glfq` command line. `run` takes argv and two writers and returns the
//! exit code: 0 on success, 1 when a computation or check fails, 2 on usage
//! errors.

pub mod json;

use std::io::Write;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use glfq_core::center::{completed_product, fh_polynomials, verify_fh};
use glfq_core::conjtype::{class_size, type_of, Polypartition};
use glfq_core::degree1::{degree1_product, project_degree1, Degree1Case};
use glfq_core::error::Error;
use glfq_core::field::{Elem, Field};
use glfq_core::group::census;
use glfq_core::matrix::Mat;
use glfq_core::partial_iso::{count_e, count_f, partial_iso_count};
use glfq_core::ranklaw::{count_constrained_subspaces, dim_sum_law, homogeneous_geometric, rank_law, rank_law_conditional};
use glfq_core::rational::{fmt_q, gaussian_binomial, gl_order};
use glfq_core::verify::{self, Options, DEFAULT_SEED, SUITES};
use serde::Serialize;

use json::*;

#[derive(Parser, Debug)]
#[command(name = "glfq", version, about = "Exact computations in the class algebras of GL(n, F_q)")]
pub struct Cli {
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the randomized verification suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Field order q = p^e.
    #[arg(long, conflicts_with_all = ["p", "e"])]
    pub q: Option<u32>,
    /// Characteristic, with --e.
    #[arg(long, requires = "e")]
    pub p: Option<u32>,
    /// Degree over F_p, with --p.
    #[arg(long, requires = "p")]
    pub e: Option<u32>,
}

impl FieldArgs {
    fn field(&self) -> Result<Arc<Field>, Failure> {
        let f = match (self.q, self.p, self.e) {
            (Some(q), None, None) => Field::with_order(q),
            (None, Some(p), Some(e)) => Field::new(p, e),
            _ => return Err(Failure::Usage("give either --q or both --p and --e".into())),
        };
        f.map_err(Failure::from)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Conjugacy type of a matrix.
    Type {
        #[command(flatten)]
        field: FieldArgs,
        /// Rows separated by ';', entries by ','.
        #[arg(long)]
        mat: String,
    },
    /// Size of the conjugacy class of a type in GL(n, F_q).
    ClassSize {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        #[arg(long = "type")]
        ty: String,
    },
    /// Buckets GL(n, F_q) by type and compares with the class-size formula.
    Census {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
    },
    /// C_{a↑n} * C_{b↑n} by brute force.
    ClassProduct {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Generic structure constants and Farahat–Higman polynomials of Â_a * Â_b.
    GenericProduct {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Compare with brute force at these n (repeatable).
        #[arg(long = "verify-at")]
        verify_at: Vec<usize>,
    },
    /// Closed-form product Â_{X-a} * Â_{X-b}; --a and --b are field elements.
    Degree1 {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Also project to GL(n, F_q).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Counting formulas.
    Count {
        #[command(subcommand)]
        what: CountCmd,
    },
    /// Rank and dimension laws.
    Ranklaw {
        #[command(subcommand)]
        what: RankCmd,
    },
    /// Runs a verification suite, or all of them with --suite all.
    Verify {
        #[arg(long)]
        suite: String,
        /// Overrides the per-suite sample counts.
        #[arg(long)]
        samples: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CountCmd {
    /// E_q(n, k⁺, k, k1): trivial extensions with fixed right space.
    E {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long = "k-plus")]
        k_plus: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        k1: usize,
    },
    /// F_q(k⁺, k, k1): trivial extensions with both spaces fixed.
    F {
        #[arg(long)]
        q: u32,
        #[arg(long = "k-plus")]
        k_plus: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        k1: usize,
    },
    /// Number of partial isomorphisms of F_q^n.
    Isos {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
    },
    /// Number of k-dimensional subspaces of F_q^n.
    Subspaces {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// U⁺ with U ⊆ U⁺ ⊆ Y and U⁺ + W = Y.
    Constrained {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum RankCmd {
    /// P[X_a = c] in F_q^d.
    Law {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        c: usize,
    },
    /// P[X_a = c | X_b = dd] in F_q^d.
    Conditional {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        dd: usize,
    },
    /// P[dim(U⁺ + W) = m].
    DimSum {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        m: usize,
    },
    /// h_r(1, q, ..., q^c).
    H {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        q: u32,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

type Res = Result<bool, Failure>;

fn emit<T: Serialize>(out: &mut dyn Write, json: bool, value: &T, text: impl FnOnce() -> String) -> Result<(), Failure> {
    if json {
        let s = serde_json::to_string_pretty(value).map_err(|e| Failure::Compute(e.to_string()))?;
        writeln!(out, "{s}")?;
    } else {
        write!(out, "{}", text())?;
    }
    Ok(())
}

fn table(rows: &[(String, String)]) -> String {
    let w = rows.iter().map(|r| r.0.chars().count()).max().unwrap_or(0);
    rows.iter().map(|(a, b)| format!("{a:<w$}  {b}\n")).collect()
}

fn value(out: &mut dyn Write, json: bool, quantity: &str, v: String) -> Res {
    emit(out, json, &ValueJson { quantity: quantity.into(), value: v.clone() }, || format!("{v}\n"))?;
    Ok(true)
}

fn elem(f: &Field, s: &str) -> Result<Elem, Failure> {
    Ok(f.parse_elem(s)?)
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Res {
    let json = cli.json;
    match &cli.command {
        Command::Type { field, mat } => {
            let f = field.field()?;
            let m = Mat::parse(&f, mat)?;
            let t = type_of(&f, &m)?.to_string(&f);
            let doc = TypeJson { q: f.q(), matrix: m.to_string(&f), ty: t.clone() };
            emit(out, json, &doc, || format!("{t}\n"))?;
            Ok(true)
        }
        Command::ClassSize { field, n, ty } => {
            let f = field.field()?;
            let mu = Polypartition::parse(&f, ty)?;
            let size = class_size(&f, &mu, *n)?;
            let doc = ClassSizeJson { q: f.q(), n: *n, ty: mu.to_string(&f), class_size: size.to_string() };
            emit(out, json, &doc, || format!("{size}\n"))?;
            Ok(true)
        }
        Command::Census { field, n } => {
            let f = field.field()?;
            let counts = census(&f, *n)?;
            let mut rows = Vec::new();
            let mut pass = true;
            let mut total = num_bigint::BigInt::from(0);
            for (mu, c) in &counts {
                let formula = class_size(&f, mu, *n)?;
                pass &= formula == num_bigint::BigInt::from(*c);
                total += *c;
                rows.push(CensusRow { ty: mu.to_string(&f), count: *c, formula: formula.to_string() });
            }
            let order = gl_order(f.q(), *n);
            pass &= total == order;
            let doc = CensusJson { q: f.q(), n: *n, order: order.to_string(), rows, pass };
            emit(out, json, &doc, || {
                let mut t: Vec<(String, String)> =
                    doc.rows.iter().map(|r| (r.ty.clone(), format!("{} (formula {})", r.count, r.formula))).collect();
                t.push(("total".into(), format!("{total} of |GL| = {}", doc.order)));
                format!("{}{}\n", table(&t), if pass { "PASS" } else { "FAIL" })
            })?;
            Ok(pass)
        }
        Command::ClassProduct { field, n, a, b } => {
            let f = field.field()?;
            let (la, lb) = (Polypartition::parse(&f, a)?, Polypartition::parse(&f, b)?);
            let v = completed_product(&f, &la, &lb, *n)?;
            let doc = CentralVectorJson::from_core(&f, &v);
            emit(out, json, &doc, || {
                table(&v.coeffs.iter().map(|(nu, c)| (nu.to_string(&f), c.to_string())).collect::<Vec<_>>())
            })?;
            Ok(true)
        }
        Command::GenericProduct { field, a, b, verify_at } => {
            let f = field.field()?;
            let (la, lb) = (Polypartition::parse(&f, a)?, Polypartition::parse(&f, b)?);
            let gp = fh_polynomials(&f, &la, &lb)?;
            let mut doc = GenericProductJson::from_core(&f, &gp);
            let mut pass = true;
            if !verify_at.is_empty() {
                let rep = verify_fh(&f, &gp, verify_at)?;
                pass = rep.ok();
                doc.verification = Some(VerificationJson::from_core(&rep));
            }
            emit(out, json, &doc, || {
                let mut s = String::from("S^nu\n");
                s += &table(&gp.s.iter().map(|(nu, c)| (nu.to_string(&f), c.to_string())).collect::<Vec<_>>());
                s += "p^nu(X), X = q^n\n";
                s += &table(&gp.rhs.iter().map(|(nu, p)| (nu.to_string(&f), p.to_text())).collect::<Vec<_>>());
                if let Some(v) = &doc.verification {
                    for m in &v.mismatches {
                        s += &format!("mismatch {m}\n");
                    }
                    s += &format!("verification at n = {:?}: {}\n", v.n, if v.pass { "PASS" } else { "FAIL" });
                }
                s
            })?;
            Ok(pass)
        }
        Command::Degree1 { field, a, b, n } => {
            let f = field.field()?;
            let (a, b) = (elem(&f, a)?, elem(&f, b)?);
            let case = Degree1Case::classify(&f, a, b)?;
            let prod = degree1_product(&f, a, b)?;
            let proj = n.map(|n| project_degree1(&f, a, b, n)).transpose()?;
            let doc = Degree1Json {
                q: f.q(),
                a: f.fmt_elem(a),
                b: f.fmt_elem(b),
                case: case.tag.name().into(),
                product: prod.iter().map(|(nu, c)| Term { nu: nu.to_string(&f), coeff: fmt_q(c) }).collect(),
                projection: proj.as_ref().map(|v| CentralVectorJson::from_core(&f, v)),
            };
            emit(out, json, &doc, || {
                let mut s = format!("case {}\n", doc.case);
                s += &table(&prod.iter().map(|(nu, c)| (nu.to_string(&f), c.to_string())).collect::<Vec<_>>());
                if let Some(v) = &proj {
                    s += &format!("in GL({}, F_{})\n", v.n, v.q);
                    s += &table(&v.coeffs.iter().map(|(nu, c)| (nu.to_string(&f), c.to_string())).collect::<Vec<_>>());
                }
                s
            })?;
            Ok(true)
        }
        Command::Count { what } => match what {
            CountCmd::E { q, n, k_plus, k, k1 } => value(out, json, "E", count_e(*q, *n, *k_plus, *k, *k1)?.to_string()),
            CountCmd::F { q, k_plus, k, k1 } => value(out, json, "F", count_f(*q, *k_plus, *k, *k1)?.to_string()),
            CountCmd::Isos { q, n } => value(out, json, "partial isomorphisms", partial_iso_count(*q, *n).to_string()),
            CountCmd::Subspaces { q, n, k } => value(out, json, "subspaces", gaussian_binomial(*q, *n, *k).to_string()),
            CountCmd::Constrained { q, j, k, l, m } => {
                value(out, json, "constrained subspaces", count_constrained_subspaces(*j, *k, *l, *m, *q)?.to_string())
            }
        },
        Command::Ranklaw { what } => match what {
            RankCmd::Law { d, q, a, c } => value(out, json, "P[X_a = c]", rank_law(*d, *q, *a, *c).to_string()),
            RankCmd::Conditional { d, q, a, b, c, dd } => value(
                out,
                json,
                "P[X_a = c | X_b = dd]",
                rank_law_conditional(*d, *q, *a, *b, *c, *dd)?.to_string(),
            ),
            RankCmd::DimSum { n, q, j, k, l, m } => {
                value(out, json, "P[dim(U+ + W) = m]", dim_sum_law(*n, *q, *j, *k, *l, *m)?.to_string())
            }
            RankCmd::H { r, c, q } => value(out, json, "h_r(1, q, ..., q^c)", homogeneous_geometric(*r, *c, *q).to_string()),
        },
        Command::Verify { suite, samples } => {
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let opts = Options { seed: cli.seed, samples: *samples };
            let mut all_pass = true;
            let mut docs = Vec::new();
            for name in names {
                let rep = verify::run(name, &opts)?;
                all_pass &= rep.ok();
                docs.push(SuiteJson {
                    suite: rep.suite.clone(),
                    seed: cli.seed,
                    pass: rep.ok(),
                    checks: rep.checks,
                    failures: rep.failures.clone(),
                    notes: rep.notes.clone(),
                });
            }
            emit(out, json, &docs, || {
                let mut s = String::new();
                for d in &docs {
                    for n in &d.notes {
                        s += &format!("note: {n}\n");
                    }
                    for x in &d.failures {
                        s += &format!("failure: {x}\n");
                    }
                    s += &if d.pass {
                        format!("PASS {} ({} checks)\n", d.suite, d.checks)
                    } else {
                        format!("FAIL {} ({}/{} failed)\n", d.suite, d.failures.len(), d.checks)
                    };
                }
                s
            })?;
            Ok(all_pass)
        }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    if let Some(t) = cli.threads {
        // Fails only if a pool already exists, which is harmless in tests.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    match execute(&cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Compute(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
    }
}
