use clap::{Args, Parser, Subcommand};
use glspace_core::duality::{ln_n_from_psi, tail_function, tchebychev_bound};
use glspace_core::gls::{gls_norm, GlsConfig};
use glspace_core::norms::{lp_continuous, Variant};
use glspace_core::operators::checks::{bound_check, CheckConfig, CheckKind};
use glspace_core::operators::hilbert::{hilbert_line, hilbert_periodic, HilbertConfig};
use glspace_core::operators::leindler::leindler_ratio;
use glspace_core::operators::maximal::{log_grid, maximal_apply, s_star_lp, MaximalKind};
use glspace_core::operators::weight::u_gamma;
use glspace_core::operators::{fourier_line, fourier_torus, pichorides, Which};
use glspace_core::psi::parse_psi;
use glspace_core::sharpness::{ratio_v, PsiChoice, RatioOperator};
use glspace_core::source::registry::parse_source;
use glspace_core::source::{Domain, SampledFunction, Source};
use glspace_core::suite::{emit_report, run_suite, Format, SuiteConfig, SuiteName, SuiteResult};
use glspace_core::{GlsError, Result};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "glspace", version, about = "Grand Lebesgue space norms, operators and inequality checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// GLS norm of a source for a psi function.
    Norm {
        #[arg(long)]
        source: String,
        #[arg(long)]
        psi: String,
        #[arg(long, default_value = "plain")]
        variant: String,
        #[arg(long, default_value_t = 50.0)]
        pmax: f64,
        #[arg(long)]
        json: bool,
    },
    /// Tail function and its Tchebychev bound at the given levels.
    Tail {
        #[arg(long)]
        source: String,
        /// Levels, as a list `1,2,4` or a grid `lin:a,b,n` / `log:a,b,n`.
        #[arg(long)]
        u: String,
        /// Psi of the bound column; the natural psi of the source by default.
        #[arg(long)]
        psi: Option<String>,
        #[arg(long, default_value = "plain")]
        variant: String,
        #[arg(long)]
        json: bool,
    },
    /// Young-Fenchel conjugate N(u) of a psi function.
    Conjugate {
        #[arg(long)]
        psi: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        json: bool,
    },
    /// Applies an operator and tabulates norms or samples.
    Op(OpArgs),
    /// Runs one inequality check over a corpus.
    Check {
        #[arg(long)]
        ineq: String,
        #[arg(long)]
        corpus: Option<String>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Psi specs for the GLS checks; repeatable.
        #[arg(long = "psi")]
        psis: Vec<String>,
        #[arg(long)]
        csv: bool,
    },
    /// Ratio sweep of an operator on an extremal family.
    Sharpness {
        /// Source spec of the family.
        #[arg(long)]
        family: String,
        #[arg(long)]
        operator: String,
        /// Exponents of the sweep, as for `--u`.
        #[arg(long)]
        sweep: String,
        /// Explicit psi; the natural psi of the family when absent.
        #[arg(long)]
        psi: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Runs a verification suite and writes its report.
    Suite(SuiteArgs),
}

#[derive(Args)]
struct OpArgs {
    /// hilbert, sM, F, leindlerT, leindlerU, ugamma or maximal.
    #[arg(long)]
    kind: String,
    #[arg(long)]
    source: String,
    /// Partial-sum index for sM, F on the torus and s* on the torus.
    #[arg(long = "M", default_value_t = 64)]
    m: usize,
    #[arg(long = "p-grid", default_value = "1.5,2,3,4,8")]
    p_grid: String,
    /// Evaluation points for pointwise outputs on the line.
    #[arg(long, default_value = "lin:-3,3,13")]
    x: String,
    #[arg(long, default_value_t = 0.5)]
    gamma: f64,
    /// Maximal operator for `--kind maximal`: s_star, F_star or R_star.
    #[arg(long, default_value = "s_star")]
    maximal: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SuiteArgs {
    /// norms, duality, operators, sharpness or all.
    #[arg(long, default_value = "all")]
    name: String,
    #[arg(long, default_value = "trig-small")]
    corpus: String,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long = "psi")]
    psis: Vec<String>,
    /// Comma-separated job names; all jobs of the suite when absent.
    #[arg(long)]
    checks: Option<String>,
    #[arg(long, default_value = "json")]
    format: String,
    #[arg(long)]
    output: Option<String>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    budget: Option<u64>,
}

/// A numeric table written as CSV or as a JSON array of rows.
struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
}

fn number(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        json!("divergent")
    }
}

impl Table {
    fn new(columns: &[&'static str]) -> Self {
        Table { columns: columns.to_vec(), rows: Vec::new() }
    }

    fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| Value::Object(self.columns.iter().zip(r).map(|(c, v)| (c.to_string(), number(*v))).collect()))
                .collect(),
        )
    }

    fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|v| if v.is_finite() { v.to_string() } else { "divergent".into() }).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// `1,2,4`, `lin:a,b,n` or `log:a,b,n`.
fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = || GlsError::Spec(format!("bad grid `{spec}`"));
    let nums = |s: &str| -> Result<Vec<f64>> { s.split(',').map(|t| t.trim().parse::<f64>().map_err(|_| bad())).collect() };
    let grid = match spec.split_once(':') {
        Some((kind @ ("lin" | "log"), rest)) => {
            let v = nums(rest)?;
            if v.len() != 3 || v[2] < 2.0 || v[2].fract() != 0.0 {
                return Err(bad());
            }
            let n = v[2] as usize;
            if kind == "log" {
                log_grid(v[0], v[1], n)?
            } else {
                (0..n).map(|i| v[0] + (v[1] - v[0]) * i as f64 / (n - 1) as f64).collect()
            }
        }
        Some(_) => return Err(bad()),
        None => nums(spec)?,
    };
    if grid.is_empty() {
        return Err(bad());
    }
    Ok(grid)
}

fn function(source: &Source) -> Result<&SampledFunction> {
    match source {
        Source::Function(f) => Ok(f),
        Source::Sequence(_) => Err(GlsError::SupportMismatch("this operator acts on functions".into())),
    }
}

/// Rows `p, |Op f|_p, |f|_p, |Op f|_p / (bound(p) |f|_p)`; divergent norms are kept as rows.
fn norm_rows(ps: &[f64], f: &SampledFunction, op: impl Fn(f64) -> Result<f64>, bound: impl Fn(f64) -> Result<f64>) -> Result<Table> {
    let finite = |v: Result<f64>| match v {
        Err(e) if e.is_divergent() => Ok(f64::INFINITY),
        v => v,
    };
    let mut t = Table::new(&["p", "op_norm", "source_norm", "ratio"]);
    for &p in ps {
        let top = finite(op(p))?;
        let src = finite(lp_continuous(f, p, false).map(|n| n.value))?;
        t.rows.push(vec![p, top, src, top / (bound(p)? * src)]);
    }
    Ok(t)
}

fn run_op(a: &OpArgs) -> Result<(Value, Table)> {
    let source = parse_source(&a.source)?;
    let ps = parse_grid(&a.p_grid)?;
    let xs = parse_grid(&a.x)?;
    let table = match a.kind.as_str() {
        "hilbert" => {
            let f = function(&source)?;
            if f.domain() == Domain::Torus {
                let h = hilbert_periodic(f, &HilbertConfig::default())?;
                norm_rows(&ps, f, |p| Ok(lp_continuous(&h, p, false)?.value), pichorides)?
            } else {
                let mut t = Table::new(&["x", "value"]);
                for &x in &xs {
                    t.rows.push(vec![x, hilbert_line(f, x)?]);
                }
                t
            }
        }
        "sM" => {
            let f = function(&source)?;
            let s = SampledFunction::new(glspace_core::source::Family::Trig(fourier_torus(f, a.m)?.partial_sum));
            norm_rows(&ps, f, |p| Ok(lp_continuous(&s, p, false)?.value), |_| Ok(1.0))?
        }
        "F" => {
            let f = function(&source)?;
            if f.domain() == Domain::Torus {
                let mut t = Table::new(&["n", "re", "im"]);
                for (n, c) in fourier_torus(f, a.m)?.coeffs.iter().enumerate() {
                    t.rows.push(vec![n as f64, c.re, c.im]);
                }
                t
            } else {
                let mut t = Table::new(&["t", "re", "im"]);
                for &x in &xs {
                    let c = fourier_line(f, x)?;
                    t.rows.push(vec![x, c.re, c.im]);
                }
                t
            }
        }
        "leindlerT" | "leindlerU" => {
            let Source::Sequence(x) = &source else {
                return Err(GlsError::SupportMismatch("Leindler operators act on weighted sequences".into()));
            };
            let which = if a.kind == "leindlerT" { Which::T } else { Which::U };
            let mut t = Table::new(&["p", "ratio"]);
            for &p in &ps {
                t.rows.push(vec![p, leindler_ratio(x, which, p)?]);
            }
            t
        }
        "ugamma" => {
            let f = function(&source)?;
            let g = u_gamma(f, a.gamma)?;
            norm_rows(&ps, f, |p| Ok(lp_continuous(&g, p, false)?.value), |_| Ok(1.0))?
        }
        "maximal" => {
            let f = function(&source)?;
            match MaximalKind::parse(&a.maximal)? {
                MaximalKind::SStar => {
                    let trig = fourier_torus(f, a.m)?.partial_sum;
                    norm_rows(&ps, f, |p| s_star_lp(&trig, a.m, p), |_| Ok(1.0))?
                }
                kind => {
                    let s = maximal_apply(f, kind, &log_grid(0.25, 64.0, 25)?, &xs)?;
                    let mut t = Table::new(&["x", "value"]);
                    t.rows = s.xs.iter().zip(&s.values).map(|(x, v)| vec![*x, *v]).collect();
                    t
                }
            }
        }
        k => return Err(GlsError::Spec(format!("unknown operator `{k}` (hilbert, sM, F, leindlerT, leindlerU, ugamma, maximal)"))),
    };
    let head = json!({ "kind": a.kind, "source": source.name(), "lower_bound": a.kind == "maximal" });
    Ok((head, table))
}

/// Writes to a file or stdout; a closed pipe (`| head`) is not an error.
fn write_out(bytes: &[u8], path: Option<&str>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes)?,
        None => match std::io::stdout().write_all(bytes) {
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
            r => r?,
        },
    }
    Ok(())
}

fn say(text: String) -> Result<()> {
    write_out(text.as_bytes(), None)
}

fn print_table(head: Value, table: &Table, as_json: bool) -> Result<()> {
    if as_json {
        let mut v = head;
        v["rows"] = table.to_json();
        say(pretty(Ok(v))? + "\n")?;
    } else {
        say(table.to_csv())?;
    }
    Ok(())
}

fn pretty(v: serde_json::Result<Value>) -> Result<String> {
    v.and_then(|v| serde_json::to_string_pretty(&v)).map_err(|e| GlsError::Io(e.to_string()))
}

/// Runs a command; `Ok(false)` means a check failed.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Norm { source, psi, variant, pmax, json } => {
            let src = parse_source(&source)?;
            let cfg = GlsConfig { p_max: pmax, ..GlsConfig::default() };
            let r = gls_norm(&src, &parse_psi(&psi)?, Variant::parse(&variant)?, &cfg)?;
            if json {
                say(pretty(serde_json::to_value(&r))? + "\n")?;
            } else {
                say(format!("value {}\nargmax_p {}\nverdict {:?}\nstability {:e}\n", r.value, r.argmax_p, r.verdict, r.stability))?;
            }
            Ok(true)
        }
        Command::Tail { source, u, psi, variant, json } => {
            let src = parse_source(&source)?;
            let psi = parse_psi(&psi.unwrap_or_else(|| format!("natural:{source}")))?;
            let variant = Variant::parse(&variant)?;
            let cfg = GlsConfig::default();
            let mut t = Table::new(&["u", "T", "bound"]);
            for u in parse_grid(&u)? {
                t.rows.push(vec![u, tail_function(&src, u)?, tchebychev_bound(&src, &psi, u, variant, &cfg)?.value]);
            }
            print_table(json!({ "source": src.name() }), &t, json)?;
            Ok(true)
        }
        Command::Conjugate { psi, u, json } => {
            let f = parse_psi(&psi)?;
            let mut t = Table::new(&["u", "N", "ln_N", "argmax_p"]);
            for u in parse_grid(&u)? {
                let c = ln_n_from_psi(&f, u)?;
                t.rows.push(vec![u, c.ln_n.exp(), c.ln_n, c.argmax_p]);
            }
            print_table(json!({ "psi": psi }), &t, json)?;
            Ok(true)
        }
        Command::Op(a) => {
            let (head, table) = run_op(&a)?;
            print_table(head, &table, a.json)?;
            Ok(true)
        }
        Command::Check { ineq, corpus, tol, psis, csv } => {
            let kind = CheckKind::parse(&ineq)?;
            let mut cfg = CheckConfig { tol, ..CheckConfig::default() };
            if !psis.is_empty() {
                cfg.psis = psis;
            }
            let corpus = corpus.unwrap_or_else(|| kind.default_corpus().to_string());
            let records = bound_check(kind, &corpus, &cfg)?;
            let mut meta = BTreeMap::new();
            meta.insert("corpus".to_string(), corpus);
            meta.insert("tol".to_string(), format!("{tol:e}"));
            let result = SuiteResult::from_records(kind.name(), records, meta);
            write_out(&emit_report(&result, if csv { Format::Csv } else { Format::Json })?, None)?;
            Ok(result.pass)
        }
        Command::Sharpness { family, operator, sweep, psi, json, csv } => {
            if json && csv {
                return Err(GlsError::invalid("choose one of --json and --csv"));
            }
            let src = parse_source(&family)?;
            let psi = psi.as_deref().map(parse_psi).transpose()?;
            let choice = if psi.is_some() { PsiChoice::Explicit } else { PsiChoice::Natural };
            let r = ratio_v(RatioOperator::parse(&operator)?, &src, choice, psi.as_ref(), &parse_grid(&sweep)?)?;
            if csv {
                let mut t = Table::new(&["p", "ratio"]);
                t.rows = r.sweep.iter().zip(&r.ratios).map(|(p, v)| vec![*p, v.unwrap_or(f64::NAN)]).collect();
                say(t.to_csv())?;
            } else {
                say(pretty(serde_json::to_value(&r))? + "\n")?;
            }
            Ok(true)
        }
        Command::Suite(a) => {
            let mut cfg = SuiteConfig::new(SuiteName::parse(&a.name)?);
            cfg.corpus = a.corpus;
            cfg.tol = a.tol;
            if !a.psis.is_empty() {
                cfg.psis = a.psis;
            }
            cfg.checks = a.checks.map(|c| c.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect());
            cfg.format = Format::parse(&a.format)?;
            cfg.output = a.output;
            cfg.threads = a.threads;
            if a.budget.is_some() {
                cfg.budget = a.budget;
            }
            let result = run_suite(&cfg)?;
            write_out(&emit_report(&result, cfg.format)?, cfg.output.as_deref())?;
            for w in &result.warnings {
                eprintln!("warning: {w}");
            }
            for f in result.failures() {
                eprintln!("FAIL {} lhs={} rhs={}", f.check_id, f.lhs, f.rhs);
            }
            Ok(result.pass)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
