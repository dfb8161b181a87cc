use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use heckeforge::coxeter::DihedralDatum;
use heckeforge::freed::{kernel_k12, smash_normal_form};
use heckeforge::gaha::{gaha_suite, pbw_rewrite, RootDatum, Strategy};
use heckeforge::relcat::{
    b2_targets, catalog, check_kernel_entry, conj133_search, g2_targets, hopf_generator_checks, verify_catalog, Backend,
    Certifier, Membership, Status, VerifyOptions,
};
use heckeforge::report::SCHEMA_VERSION;
use heckeforge::skewalg::{parse, DemazureDatum};

const EXIT_FAIL: u8 = 2;
const EXIT_USAGE: u8 = 1;

#[derive(Parser)]
#[command(name = "heckeforge", version, about = "Exact verification of rank-2 Hecke-Hopf algebra presentations")]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Skew,
    Cert,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Backend {
        match b {
            BackendArg::Skew => Backend::Skew,
            BackendArg::Cert => Backend::Cert,
        }
    }
}

#[derive(Args)]
struct Order {
    /// Dihedral order m of the Coxeter group I2(m).
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=6))]
    m: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Verify every cataloged relation for one order with its backends.
    Verify {
        #[command(flatten)]
        order: Order,
        /// Run only this backend.
        #[arg(long, value_enum)]
        backend: Option<BackendArg>,
        /// Ideal-search degrees allowed above each target's degree.
        #[arg(long, default_value_t = 2)]
        slack: usize,
        /// Wall-clock budget per relation, in seconds.
        #[arg(long, default_value_t = 900)]
        budget: u64,
    },
    /// Compute the kernel lattice and check cataloged elements against it.
    Kernel {
        #[command(flatten)]
        order: Order,
        /// Degree bound (defaults to m).
        #[arg(long)]
        maxdeg: Option<usize>,
    },
    /// Test the conjectured presentation at orders 4 and 6.
    Counterexample {
        /// Escalated truncation degree for the order-6 search.
        #[arg(long, default_value_t = 8)]
        maxdeg: usize,
        /// Truncation degree for the order-4 search.
        #[arg(long, default_value_t = 4)]
        b2_maxdeg: usize,
    },
    /// Run the generalized affine Hecke algebra suite for a root datum.
    Gaha {
        /// A1xA1, A2, B2 or G2.
        #[arg(long)]
        datum: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Normal forms of an expression: smash form and Demazure image for
    /// `--m`, PBW form and operator image for `--datum`.
    Eval {
        expr: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=6))]
        m: Option<u32>,
        #[arg(long, conflicts_with = "m")]
        datum: Option<String>,
    },
}

struct Outcome {
    report: Value,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global().context("configuring worker pool")?;
    }
    let (name, outcome) = match &cli.command {
        Command::Verify { order, backend, slack, budget } => {
            ("verify", cmd_verify(order.m, backend.map(Backend::from), *slack, *budget)?)
        }
        Command::Kernel { order, maxdeg } => ("kernel", cmd_kernel(order.m, maxdeg.unwrap_or(order.m as usize))?),
        Command::Counterexample { maxdeg, b2_maxdeg } => ("counterexample", cmd_counterexample(*b2_maxdeg, *maxdeg)?),
        Command::Gaha { datum, trials } => ("gaha", cmd_gaha(datum, *trials, cli.seed)?),
        Command::Eval { expr, m, datum } => ("eval", cmd_eval(expr, *m, datum.as_deref())?),
    };
    let mut doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": name,
        "seed": cli.seed,
        "passed": outcome.passed,
    });
    if let (Value::Object(d), Value::Object(r)) = (&mut doc, outcome.report) {
        d.extend(r);
    }
    let text = serde_json::to_string_pretty(&doc)? + "\n";
    match &cli.out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(outcome.passed)
}

fn status_line(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn cmd_verify(m: u32, backend: Option<Backend>, slack: usize, budget: u64) -> Result<Outcome> {
    let cat = catalog(m)?;
    if backend == Some(Backend::Skew) && DemazureDatum::for_m(m).is_none() {
        anyhow::bail!("m = {m} has no integral Cartan datum, SKEW is not available");
    }
    let opts = VerifyOptions { slack, budget: Some(Duration::from_secs(budget)) };
    let mut certifier = Certifier::new(DihedralDatum::new(m)?, opts);
    let reports = verify_catalog(&cat, backend, &mut certifier)?;
    for r in &reports {
        eprintln!("{:<24} {:<4} {}", r.id, r.backend, status_line(r.passed()));
    }
    let mut passed = reports.iter().all(|r| r.passed());
    let mut doc = json!({
        "m": m,
        "catalog_hash": cat.hash,
        "kernel_generators_hash": certifier.gens_hash(),
        "relations": reports,
    });
    if backend != Some(Backend::Skew) {
        let hopf = hopf_generator_checks(&mut certifier)?;
        eprintln!("hopf generator checks      {}", status_line(hopf.passed()));
        passed &= hopf.passed();
        doc["hopf"] = serde_json::to_value(&hopf)?;
    }
    Ok(Outcome { report: doc, passed })
}

fn cmd_kernel(m: u32, maxdeg: usize) -> Result<Outcome> {
    let d = DihedralDatum::new(m)?;
    let cat = catalog(m)?;
    let kernel = kernel_k12(d, maxdeg);
    eprintln!("kernel m={m} maxdeg={maxdeg}: dimension {}", kernel.dim());
    let mut certifier = Certifier::with_kernel(d, kernel.clone(), VerifyOptions::default());
    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    for e in &cat.kernel_elements {
        if e.element.degree() > maxdeg && e.membership == Membership::Kernel {
            skipped.push(e.id.clone());
            continue;
        }
        let r = check_kernel_entry(e, &mut certifier)?;
        eprintln!("{:<28} {:<6} {}", r.id, format!("{:?}", r.membership).to_lowercase(), status_line(r.status == Status::Verified));
        entries.push(r);
    }
    let passed = entries.iter().all(|r| r.status == Status::Verified);
    let doc = json!({
        "m": m,
        "catalog_hash": cat.hash,
        "kernel": kernel,
        "entries": entries,
        "skipped_above_maxdeg": skipped,
    });
    Ok(Outcome { report: doc, passed })
}

fn cmd_counterexample(b2_maxdeg: usize, g2_maxdeg: usize) -> Result<Outcome> {
    let b2 = conj133_search(DihedralDatum::new(4)?, &b2_targets()?, b2_maxdeg);
    let b2_ok = b2.found() == b2.outcomes.len();
    eprintln!("m=4: {}/{} found at maxdeg {b2_maxdeg}", b2.found(), b2.outcomes.len());
    for o in b2.outcomes.iter().filter(|o| !o.found) {
        eprintln!("  {} (degree {}) NOT_FOUND", o.id, o.degree);
    }
    let d6 = DihedralDatum::new(6)?;
    let targets = g2_targets()?;
    let mut g2 = Vec::new();
    for md in std::iter::once(6).chain((g2_maxdeg > 6).then_some(g2_maxdeg)) {
        let s = conj133_search(d6, &targets, md);
        for o in &s.outcomes {
            eprintln!("m=6 maxdeg {md}: {} {}", o.id, if o.found { "FOUND" } else { "NOT_FOUND" });
        }
        g2.push(s);
    }
    let g2_ok = g2.iter().all(|s| s.found() == 0);
    let doc = json!({
        "catalog_hash": [catalog(4)?.hash, catalog(6)?.hash],
        "b2": { "search": b2, "all_found": b2_ok },
        "g2": { "searches": g2, "none_found": g2_ok, "truncation_relative": true },
    });
    Ok(Outcome { report: doc, passed: b2_ok && g2_ok })
}

fn cmd_gaha(datum: &str, trials: usize, seed: u64) -> Result<Outcome> {
    let d = RootDatum::by_name(datum)?;
    let rep = gaha_suite(&d, trials, seed)?;
    eprintln!("bernstein (fixed λ)        {}", status_line(rep.bernstein_fixed.iter().all(|b| b.passed())));
    eprintln!("bernstein ({} random λ)  {}", rep.bernstein_random.trials, status_line(rep.bernstein_random.ok()));
    eprintln!("hecke embedding            {}", status_line(rep.embedding.passed()));
    eprintln!("divisibility               {}", status_line(rep.divisibility.ok()));
    eprintln!("polynomial representation  {}", status_line(rep.poly_rep.ok()));
    eprintln!("pbw confluence probe       {}", status_line(rep.pbw.passed()));
    let passed = rep.passed;
    Ok(Outcome { report: json!({ "gaha": rep }), passed })
}

fn cmd_eval(src: &str, m: Option<u32>, datum: Option<&str>) -> Result<Outcome> {
    let e = parse(src)?;
    let doc = match (m, datum) {
        (Some(m), _) => {
            let d = DihedralDatum::new(m)?;
            let nf = smash_normal_form(d, &e)?;
            eprintln!("{}", nf.render());
            let skew = match DemazureDatum::for_m(m) {
                Some(dd) => dd.eval(&e)?.to_json(),
                None => Value::Null,
            };
            json!({ "m": m, "expr": e.to_string(), "smash": nf.render(), "skew": skew })
        }
        (None, Some(name)) => {
            let d = RootDatum::by_name(name)?;
            let p = pbw_rewrite(&d, &e, Strategy::Leftmost)?;
            eprintln!("{}", p.render(&d));
            let image = d.operator().eval(&e)?;
            json!({ "datum": d.descriptor(), "expr": e.to_string(), "pbw": p.to_terms(&d), "operator": image.to_json() })
        }
        (None, None) => anyhow::bail!("eval needs --m or --datum"),
    };
    Ok(Outcome { report: doc, passed: true })
}
