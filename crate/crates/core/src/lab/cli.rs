//! Command-line front end. [`run`] returns the process exit code:
//! 0 on success, 1 when a catalog or search expectation fails, 2 on usage
//! and input errors.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::factorize::{factor, verify, Outcome, Scheme};
use crate::families::{build, MonoidSpec};
use crate::kernel::{Basis, Monoid, Norm, Verdict};
use crate::predicates::profile::Property;
use crate::predicates::{atoms, monoid_profile};
use crate::submonoid::{
    atom_transfer_report, check_transfer, closure_checks, squarefree_transfer_report,
    ConditionReport, SubmonoidContext, Transfer, ELEMENT_BOUND,
};

use super::catalog::run_catalog;
use super::classify::{classify, table_consistency};
use super::count::{count_squarefree, witness_for_count};
use super::report::{Format, Report};
use super::search::{search_report, DEFAULT_SEED, SEED_ENV};

#[derive(Parser, Debug)]
#[command(
    name = "sqfree",
    version,
    about = "Square-free factorizations in commutative monoids"
)]
pub struct Cli {
    /// Output format: text or structured.
    #[arg(long, global = true, default_value = "text", value_parser = parse_format)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for sampled searches.
    #[arg(long, global = true, env = SEED_ENV, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Norm bound for enumerations.
    #[arg(long, global = true)]
    pub bound: Option<Norm>,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_format(s: &str) -> std::result::Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Profile a monoid: properties, schemes, atoms.
    Analyze { spec: String },
    /// Factor an element in one scheme.
    Factor {
        spec: String,
        element: String,
        #[arg(long)]
        scheme: String,
    },
    /// Transfer checks for a submonoid of N^n.
    Submonoid {
        spec: String,
        #[arg(long)]
        check: Check,
    },
    /// Classification row.
    Classify { spec: String },
    /// Count square-free elements, or build a monoid with a given count.
    Count {
        spec: Option<String>,
        #[arg(long)]
        witness: Option<u64>,
    },
    /// Re-check the example catalog.
    Catalog,
    /// Search parameter grids for classification classes.
    Search {
        #[arg(long, default_value_t = 40)]
        samples: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    #[value(name = "1.1")]
    AtomsSquarefree,
    #[value(name = "1.2")]
    SquarefreeSquarefree,
    #[value(name = "1.3")]
    SquareSplits,
    #[value(name = "1.4")]
    SquareRoots,
    #[value(name = "thm43", alias = "atom-conditions")]
    AtomConditions,
    #[value(name = "thm51", alias = "squarefree-conditions")]
    SquarefreeConditions,
    Closures,
}

/// Spec text from a file, or the argument itself when no such file exists.
pub fn load_spec(arg: &str) -> Result<MonoidSpec> {
    let text = match std::fs::read_to_string(arg) {
        Ok(t) => t,
        Err(_) if arg.contains('{') || arg.contains('=') => arg.to_string(),
        Err(e) => return Err(Error::Invalid(format!("cannot read {arg}: {e}"))),
    };
    build(&text)
}

fn conditions(r: &mut Report, rep: &ConditionReport) {
    for (label, v) in &rep.verdicts {
        r.verdict(&format!("({label})"), v);
    }
    r.value(
        "refuted",
        format!("{}/{}", rep.refuted(), rep.verdicts.len()),
    );
    r.value("consistent", rep.consistent);
    for (label, ok) in &rep.side_checks {
        r.value(label, ok);
    }
    if !rep.passed() {
        r.fail("conditions disagree");
    }
}

fn analyze(spec: &MonoidSpec, bound: Norm) -> Result<Report> {
    let m = Monoid::new(spec.clone())?;
    let p = monoid_profile(&m, bound)?;
    let mut r = Report::new("analyze");
    r.meta("spec", spec).meta("bound", p.bound);
    r.section("profile");
    for prop in Property::all() {
        r.verdict(&prop.label(), p.get(prop));
    }
    if m.is_enumerable() {
        r.section("elements");
        r.list("atoms", atoms(&m, bound)?.members);
        let c = count_squarefree(&m, bound)?;
        r.list("squarefree", &c.set);
        r.value("squarefree_count", c.render());
    }
    r.section("consistency");
    r.list("conflicts", &p.conflicts);
    r.list("violations", &p.violations);
    Ok(r)
}

fn factor_report(spec: &MonoidSpec, element: &str, scheme: &str) -> Result<Report> {
    let m = Monoid::new(spec.clone())?;
    let a = m.parse_element(element)?;
    let s: Scheme = scheme.parse()?;
    let mut r = Report::new("factor");
    r.meta("spec", spec).meta("element", &a).meta("scheme", s);
    r.section("result");
    match factor(&m, &a, s)? {
        Outcome::Found(f) => {
            r.value("factorization", f.render(&m));
            r.list("parts", &f.parts);
            r.verdict("verify", &verify(&m, &a, &f)?);
        }
        Outcome::Exhausted => {
            r.verdict(
                "factorization",
                &Verdict::refuted(vec![a.clone()], Basis::Exact)
                    .with_note(format!("no factorisation of shape {s}")),
            );
        }
        Outcome::Truncated => {
            r.verdict("factorization", &Verdict::not_found(m.norm(&a)?));
        }
    }
    Ok(r)
}

fn submonoid(spec: &MonoidSpec, check: Check, bound: Option<Norm>) -> Result<Report> {
    let e = bound.unwrap_or(ELEMENT_BOUND);
    let ctx = SubmonoidContext::from_spec(spec, e)?;
    let mut r = Report::new("submonoid");
    r.meta("spec", spec)
        .meta("element_bound", ctx.element_bound)
        .meta("product_bound", ctx.product_bound);
    r.section("check");
    r.list("atoms", ctx.atoms_of_m());
    let transfer = |t: Transfer, r: &mut Report| {
        r.value("statement", t.statement());
        r.verdict(t.token(), &check_transfer(&ctx, t));
    };
    match check {
        Check::AtomsSquarefree => transfer(Transfer::AtomsSquarefree, &mut r),
        Check::SquarefreeSquarefree => transfer(Transfer::SquarefreeSquarefree, &mut r),
        Check::SquareSplits => transfer(Transfer::SquareSplits, &mut r),
        Check::SquareRoots => transfer(Transfer::SquareRoots, &mut r),
        Check::AtomConditions => conditions(&mut r, &atom_transfer_report(&ctx)),
        Check::SquarefreeConditions => conditions(&mut r, &squarefree_transfer_report(&ctx)),
        Check::Closures => {
            let c = closure_checks(&ctx);
            r.verdict("root_closed", &c.root_closed);
            r.verdict("quotient_closed", &c.quotient_closed);
            r.verdict("divisor_closed", &c.divisor_closed);
            r.verdict("divisor_closed_squarefree", &c.divisor_closed_squarefree);
            r.value("divisor_forms_agree", c.divisor_forms_agree());
        }
    }
    Ok(r)
}

fn classify_report(spec: &MonoidSpec, bound: Norm) -> Result<Report> {
    let m = Monoid::new(spec.clone())?;
    let row = classify(&m, bound)?;
    let mut r = Report::new("classify");
    r.meta("spec", spec).meta("bound", row.bound);
    r.section("row");
    r.value("accp_atm", row.accp_atm);
    r.value("gcd_decomp", row.gcd_decomp);
    r.value("pattern", row.pattern());
    for (s, v) in &row.schemes {
        r.verdict(s.label(), v);
    }
    let tc = table_consistency(std::slice::from_ref(&row));
    r.verdict("table_consistency", &tc);
    if tc.fails() {
        r.fail("row violates the classification table");
    }
    Ok(r)
}

fn count_report(spec: Option<&MonoidSpec>, witness: Option<u64>, bound: Norm) -> Result<Report> {
    let mut r = Report::new("count");
    let spec = match (spec, witness) {
        (_, Some(n)) => {
            r.meta("witness", n);
            witness_for_count(n)?
        }
        (Some(s), None) => s.clone(),
        (None, None) => return Err(Error::Invalid("count needs a spec or --witness".into())),
    };
    let m = Monoid::new(spec.clone())?;
    let c = count_squarefree(&m, bound)?;
    r.meta("spec", &spec);
    r.section("count");
    r.value("result", c.render());
    r.list("set", &c.set);
    r.value("basis", &c.basis);
    if m.is_enumerable() {
        r.list("atoms", atoms(&m, bound)?.members);
    }
    if let Some(n) = witness {
        if c.count != Some(n as usize) {
            r.fail(format!("expected count={n}, got {}", c.render()));
        }
    }
    Ok(r)
}

/// Build the report for parsed arguments.
pub fn execute(cli: &Cli) -> Result<Report> {
    let b = |d: Norm| cli.bound.unwrap_or(d);
    let start = Instant::now();
    let mut r = match &cli.command {
        Command::Analyze { spec } => analyze(&load_spec(spec)?, b(8))?,
        Command::Factor {
            spec,
            element,
            scheme,
        } => factor_report(&load_spec(spec)?, element, scheme)?,
        Command::Submonoid { spec, check } => submonoid(&load_spec(spec)?, *check, cli.bound)?,
        Command::Classify { spec } => classify_report(&load_spec(spec)?, b(8))?,
        Command::Count { spec, witness } => {
            let s = spec.as_deref().map(load_spec).transpose()?;
            count_report(s.as_ref(), *witness, b(16))?
        }
        Command::Catalog => run_catalog(),
        Command::Search { samples } => search_report(cli.seed, *samples, b(6))?,
    };
    r.elapsed = Some(start.elapsed());
    Ok(r)
}

/// Parse `args` (including the program name), run, print, and return the
/// exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let text = report.render(cli.format);
    match &cli.out {
        Some(path) => {
            if let Err(e) = report.write_to(path, cli.format) {
                eprintln!("error: {e}");
                return 2;
            }
        }
        None => print!("{text}"),
    }
    if report.passed() {
        0
    } else {
        1
    }
}
