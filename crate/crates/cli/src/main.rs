//! `kappa`: JSON front end for kappa-core.
//!
//! Exit codes: 0 on success, 1 when a mathematical hypothesis fails, 2 on
//! parse, corpus or parameter errors. Errors go to stderr as JSON.

use clap::{Parser, Subcommand, ValueEnum};
use kappa_core::kappa_engine::{bundled_paths, kappa_best, load_paths, torus_table, CrossingPath, KappaError};
use kappa_core::knot_algebra::{arf, determinant, parse_knot, signature, tl_signature, Corpus, CorpusError, KnotError, KnotExpr};
use kappa_core::obstruction_engine::{
    baseline_bounds, genus_bound, main_inequality, nonextendability, nonsmoothable_certificate, refined_inequality,
    sn_lower_bound, Family, ObstructionError, Scenario, Target,
};
use kappa_core::qfmt::{fmt_q, parse_q};
use kappa_core::seifert_plumbing::{build_plumbing, mu_bar, PlumbingError, SeifertData};
use kappa_core::{q, Q};
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "kappa", version, about = "K-theoretic Fröyshov invariant κ and 10/8-type bounds")]
struct Cli {
    /// Knot corpus (JSON). Defaults to the bundled 8/9-crossing table.
    #[arg(long, global = true, env = "KAPPA_CORPUS")]
    corpus: Option<PathBuf>,
    /// Crossing-change paths (JSON). Defaults to the bundled paths.
    #[arg(long, global = true, env = "KAPPA_PATHS")]
    paths: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// κ(K): exact when known, else candidates from crossing-change paths.
    Kappa { knot: String },
    /// σ(K) from Seifert matrices.
    Sigma { knot: String },
    /// Tristram–Levine signature at e^(2πi r/m).
    Tl {
        knot: String,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        m: i64,
    },
    /// Arf invariant and determinant.
    Arf { knot: String },
    /// μ̄ of Σ(a₁, …, aₙ) from its plumbing, and κ = −μ̄/2.
    Mubar {
        #[arg(required = true, num_args = 3..)]
        multiplicities: Vec<i64>,
        /// Use the reversed orientation −Σ.
        #[arg(long)]
        reversed: bool,
    },
    /// Lower bound for the stabilizing number sn(K).
    SnBound {
        knot: String,
        /// Check a claimed value against the bound.
        #[arg(long)]
        claim: Option<i64>,
    },
    /// Lower bound for the genus of a surface bounding K in a punctured X.
    GenusBound {
        knot: String,
        /// k3:N[:X2] | s2xs2:N[:X2] | cp:A1,A2,…/B1,B2,… | custom:SIGMA,BPLUS,X2
        #[arg(long)]
        target: String,
        #[arg(long)]
        claim: Option<i64>,
        /// Also evaluate the Manolescu, Tristram–Levine, Arf and G-signature baselines.
        #[arg(long)]
        baselines: bool,
        #[arg(long, default_value_t = 16)]
        tl_cap: u64,
    },
    /// Involution obstructions.
    #[command(subcommand)]
    Obstruct(Obstruct),
    /// Non-smoothability certificate for ♮ₘ M(2,3,6n±1) # S²×S²'s.
    Nonsmooth {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m: i64,
        #[arg(long, value_enum)]
        family: FamilyArg,
    },
    /// Reproduce a table and diff it against the built-in values.
    Table {
        #[arg(value_enum)]
        which: TableArg,
        #[arg(long, default_value_t = 49)]
        max: i64,
        #[arg(long, default_value_t = 3)]
        m_max: u32,
    },
}

#[derive(Subcommand)]
enum Obstruct {
    /// Relative 10/8 for a surface in a cobordism, read from a scenario file.
    Knot {
        scenario: PathBuf,
        /// κ(K) and κ(K'); computed when omitted.
        #[arg(long, allow_hyphen_values = true)]
        kappa_from: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        kappa_to: Option<String>,
        /// Apply the A(N) refinement.
        #[arg(long)]
        refined: bool,
        #[arg(long)]
        baselines: bool,
        #[arg(long, default_value_t = 16)]
        tl_cap: u64,
    },
    /// Extension of the involution on #Σᵢ over W.
    Involution {
        /// A summand `a1,a2,a3[,…]`, prefixed by `-` for reversed orientation.
        #[arg(long = "summand", required = true, allow_hyphen_values = true)]
        summands: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        sigma_w: i64,
        #[arg(long)]
        b_plus: u64,
        #[arg(long)]
        b_plus_iota: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Minus,
    Plus,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    KappaTorus,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    kind: String,
    message: String,
}

impl Failure {
    fn input(kind: &str, message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            kind: kind.to_string(),
            message: message.into(),
        }
    }
}

impl From<KnotError> for Failure {
    fn from(e: KnotError) -> Self {
        Failure::input(e.kind(), e.to_string())
    }
}

impl From<CorpusError> for Failure {
    fn from(e: CorpusError) -> Self {
        Failure::input(e.kind(), e.to_string())
    }
}

impl From<PlumbingError> for Failure {
    fn from(e: PlumbingError) -> Self {
        Failure::input(e.kind(), e.to_string())
    }
}

impl From<KappaError> for Failure {
    fn from(e: KappaError) -> Self {
        let code = if matches!(e, KappaError::InconsistentConstraints { .. }) { 1 } else { 2 };
        Failure {
            code,
            kind: e.kind().to_string(),
            message: e.to_string(),
        }
    }
}

impl From<ObstructionError> for Failure {
    fn from(e: ObstructionError) -> Self {
        Failure {
            code: if e.is_hypothesis() { 1 } else { 2 },
            kind: e.kind().to_string(),
            message: e.to_string(),
        }
    }
}

struct Ctx {
    corpus: Corpus,
    paths: Vec<CrossingPath>,
}

impl Ctx {
    fn knot(&self, s: &str) -> Result<KnotExpr, Failure> {
        Ok(parse_knot(s, &self.corpus)?)
    }
}

fn load(cli: &Cli) -> Result<Ctx, Failure> {
    let corpus = match &cli.corpus {
        Some(p) => Corpus::load(p)?,
        None => Corpus::bundled(),
    };
    let paths = match &cli.paths {
        Some(p) => load_paths(p, &corpus)?,
        None => bundled_paths(&corpus)?,
    };
    Ok(Ctx { corpus, paths })
}

fn parse_target(s: &str) -> Result<Target, Failure> {
    let bad = || Failure::input("InvalidParams", format!("cannot parse target {s:?}"));
    let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
    let ints = |t: &str| -> Result<Vec<i64>, Failure> {
        if t.trim().is_empty() {
            return Ok(vec![]);
        }
        t.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| bad())).collect()
    };
    let n_x2 = |t: &str| -> Result<(u64, i64), Failure> {
        let mut it = t.split(':');
        let n = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let x2 = it.next().map(|x| x.parse().map_err(|_| bad())).transpose()?.unwrap_or(0);
        Ok((n, x2))
    };
    Ok(match kind {
        "k3" => {
            let (n, x2) = n_x2(rest)?;
            Target::K3 { n, x2 }
        }
        "s2xs2" => {
            let (n, x2) = n_x2(rest)?;
            Target::S2xS2 { n, x2 }
        }
        "cp" => {
            let (a, b) = rest.split_once('/').unwrap_or((rest, ""));
            Target::Cp { a: ints(a)?, b: ints(b)? }
        }
        "custom" => match ints(rest)?.as_slice() {
            [sigma, b_plus, x2] if *b_plus >= 0 => Target::Custom {
                sigma: *sigma,
                b_plus: *b_plus as u64,
                x2: *x2,
            },
            _ => return Err(bad()),
        },
        _ => return Err(bad()),
    })
}

fn parse_summand(s: &str) -> Result<SeifertData, Failure> {
    let (orientation, body) = match s.strip_prefix('-') {
        Some(b) => (-1, b),
        None => (1, s),
    };
    let a: Vec<i64> = body
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::input("InvalidSeifert", format!("cannot parse summand {s:?}")))?;
    Ok(SeifertData::new(a, orientation)?)
}

fn kappa_arg(given: &Option<String>, k: &KnotExpr, ctx: &Ctx) -> Result<Q, Failure> {
    if let Some(s) = given {
        return parse_q(s).map_err(|e| Failure::input("InvalidParams", e));
    }
    let r = kappa_best(k, &ctx.paths, &ctx.corpus)?;
    r.as_exact()
        .cloned()
        .ok_or_else(|| ObstructionError::KappaUnknown(k.to_string()).into())
}

fn run(cli: Cli) -> Result<Value, Failure> {
    let ctx = load(&cli)?;
    let c = &ctx.corpus;
    Ok(match &cli.cmd {
        Cmd::Kappa { knot } => {
            let k = ctx.knot(knot)?;
            let r = kappa_best(&k, &ctx.paths, c)?;
            let mut out = json!({ "query": k.to_string() });
            merge(&mut out, serde_json::to_value(&r).unwrap());
            out
        }
        Cmd::Sigma { knot } => {
            let k = ctx.knot(knot)?;
            json!({ "query": k.to_string(), "sigma": signature(&k, c)? })
        }
        Cmd::Tl { knot, r, m } => {
            let k = ctx.knot(knot)?;
            json!({ "query": k.to_string(), "r": r, "m": m, "tl_signature": tl_signature(&k, *r, *m, c)? })
        }
        Cmd::Arf { knot } => {
            let k = ctx.knot(knot)?;
            json!({
                "query": k.to_string(),
                "arf": arf(&k, c)?,
                "determinant": determinant(&k, c)?.to_string(),
            })
        }
        Cmd::Mubar {
            multiplicities,
            reversed,
        } => {
            let d = SeifertData::new(multiplicities.clone(), if *reversed { -1 } else { 1 })?;
            let mb = mu_bar(&d)?;
            let g = build_plumbing(&d)?;
            json!({
                "query": format!("{}Σ{:?}", if *reversed { "−" } else { "" }, multiplicities),
                "mu_bar": mb,
                "kappa": fmt_q(&q(-mb, 2)),
                "plumbing": { "weights": g.weights(), "edges": g.edges() },
            })
        }
        Cmd::SnBound { knot, claim } => {
            let k = ctx.knot(knot)?;
            let r = sn_lower_bound(&k, c, &ctx.paths, *claim)?;
            json!({ "query": k.to_string(), "result": r })
        }
        Cmd::GenusBound {
            knot,
            target,
            claim,
            baselines,
            tl_cap,
        } => {
            let k = ctx.knot(knot)?;
            let t = parse_target(target)?;
            let r = genus_bound(&k, &t, c, &ctx.paths, *claim)?;
            let mut out = json!({ "query": k.to_string(), "target": t, "result": r });
            if *baselines {
                let b = baseline_bounds(&t.scenario(&k)?, c, *tl_cap)?;
                out["baselines"] = serde_json::to_value(b).unwrap();
            }
            out
        }
        Cmd::Obstruct(Obstruct::Knot {
            scenario,
            kappa_from,
            kappa_to,
            refined,
            baselines,
            tl_cap,
        }) => {
            let text = std::fs::read_to_string(scenario)
                .map_err(|e| Failure::input("Io", format!("{}: {e}", scenario.display())))?;
            let s = Scenario::from_json_str(&text, c)?;
            let kf = kappa_arg(kappa_from, &s.knot_from, &ctx)?;
            let kt = kappa_arg(kappa_to, &s.knot_to, &ctx)?;
            let r = if *refined {
                refined_inequality(&s, &kf, &kt, c)?
            } else {
                main_inequality(&s, &kf, &kt, c)?
            };
            let mut out = json!({ "query": s, "result": r });
            if *baselines {
                out["baselines"] = serde_json::to_value(baseline_bounds(&s, c, *tl_cap)?).unwrap();
            }
            out
        }
        Cmd::Obstruct(Obstruct::Involution {
            summands,
            sigma_w,
            b_plus,
            b_plus_iota,
        }) => {
            let ys: Vec<SeifertData> = summands.iter().map(|s| parse_summand(s)).collect::<Result<_, _>>()?;
            let e = nonextendability(&ys, *sigma_w, *b_plus, *b_plus_iota)?;
            json!({ "query": summands, "result": e })
        }
        Cmd::Nonsmooth { n, m, family } => {
            let f = match family {
                FamilyArg::Minus => Family::SixNMinus1,
                FamilyArg::Plus => Family::SixNPlus1,
            };
            let cert = nonsmoothable_certificate(*n, *m, f, c)?;
            json!({ "query": { "n": n, "m": m, "family": f }, "result": cert })
        }
        Cmd::Table {
            which: TableArg::KappaTorus,
            max,
            m_max,
        } => {
            let rows = torus_table(*max, *m_max, c);
            let mismatches: Vec<&str> = rows.iter().filter(|r| !r.matches).map(|r| r.knot.as_str()).collect();
            if !mismatches.is_empty() {
                return Err(Failure {
                    code: 1,
                    kind: "TableMismatch".into(),
                    message: mismatches.join(", "),
                });
            }
            json!({ "query": "kappa-torus", "max": max, "m_max": m_max, "rows": rows, "mismatches": 0 })
        }
    })
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(v) => {
            // A closed pipe downstream is not an error of ours.
            let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&v).unwrap());
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{}", json!({ "error": f.kind, "message": f.message }));
            ExitCode::from(f.code)
        }
    }
}
