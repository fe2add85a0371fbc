//! The example catalog: expected facts read from `data/catalog.txt` and
//! re-checked from scratch.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::factorize::{factor, scheme_holds_for, verify, Outcome, Scheme};
use crate::families::poly::fx;
use crate::families::{build, Family, MonoidSpec};
use crate::kernel::{Basis, Element, Monoid, Norm, Verdict};
use crate::predicates::profile::Property;
use crate::predicates::{atoms, is_atom, is_prime, is_radical, is_squarefree, monoid_profile};
use crate::submonoid::{
    atom_transfer_report, check_transfer, closure_checks, squarefree_transfer_report,
    SubmonoidContext, Transfer, ELEMENT_BOUND,
};

use super::classify::ClassificationRow;
use super::count::count_squarefree;
use super::report::Report;

/// The catalog shipped with the crate.
pub const CATALOG: &str = include_str!("../../data/catalog.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: String,
    pub spec: MonoidSpec,
    pub check: String,
    pub expected: String,
    pub line: usize,
}

/// Parse catalog text; blank lines and `#` comments are skipped.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('|').map(str::trim).collect();
        if cols.len() != 4 {
            return Err(Error::parse(
                i + 1,
                format!("expected 4 columns, got {}", cols.len()),
            ));
        }
        out.push(CatalogEntry {
            id: cols[0].to_string(),
            spec: build(cols[1])?,
            check: cols[2].to_string(),
            expected: cols[3].to_string(),
            line: i + 1,
        });
    }
    Ok(out)
}

/// `Kind [w1, w2]`, or just `Kind`.
pub fn short(v: &Verdict) -> String {
    if v.witness.is_empty() {
        v.kind.to_string()
    } else {
        let w: Vec<String> = v.witness.iter().map(|e| e.to_string()).collect();
        format!("{} [{}]", v.kind, w.join(", "))
    }
}

/// Whether `v` meets an expectation: `holds`, `fails`, `not-refuted`, a
/// bare kind, or a kind with its exact witness list.
pub fn verdict_matches(expected: &str, v: &Verdict) -> bool {
    match expected {
        "holds" => v.holds(),
        "fails" => v.fails(),
        "not-refuted" => !v.fails(),
        e if e.contains('[') => short(v) == e,
        e => v.kind.to_string() == e,
    }
}

fn set_text(items: &[Element]) -> String {
    let s: Vec<String> = items.iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", s.join(", "))
}

fn arg<T: std::str::FromStr>(args: &[&str], i: usize, what: &str) -> Result<T> {
    args.get(i)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Invalid(format!("check needs {what}")))
}

fn property(name: &str) -> Result<Property> {
    Property::all()
        .into_iter()
        .find(|p| {
            p.label() == name
                || name
                    .parse::<Scheme>()
                    .is_ok_and(|s| *p == Property::Scheme(s))
        })
        .ok_or_else(|| Error::Invalid(format!("unknown property `{name}`")))
}

/// Lengths of all atom factorisations of `a`, memoised.
fn lengths(
    m: &Monoid,
    a: &Element,
    memo: &mut BTreeMap<Element, BTreeSet<usize>>,
) -> Result<BTreeSet<usize>> {
    if let Some(l) = memo.get(a) {
        return Ok(l.clone());
    }
    let mut out = BTreeSet::new();
    if m.unit(a)? {
        out.insert(0);
    } else {
        for d in m.divisors(a)? {
            if is_atom(m, &d)?.holds() {
                let q = m.quotient(&d, a)?.expect("divisor");
                for l in lengths(m, &q, memo)? {
                    out.insert(l + 1);
                }
            }
        }
    }
    memo.insert(a.clone(), out.clone());
    Ok(out)
}

/// Outcome of one check: the observed value and whether it matched.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub observed: String,
    pub passed: bool,
    pub verdict: Option<Verdict>,
}

fn by_verdict(expected: &str, v: Verdict) -> CheckOutcome {
    CheckOutcome {
        observed: short(&v),
        passed: verdict_matches(expected, &v),
        verdict: Some(v),
    }
}

fn by_text(expected: &str, observed: String) -> CheckOutcome {
    CheckOutcome {
        passed: observed == expected,
        observed,
        verdict: None,
    }
}

/// Run the check of one entry.
pub fn run_check(e: &CatalogEntry) -> Result<CheckOutcome> {
    let m = Monoid::new(e.spec.clone())?;
    let args: Vec<&str> = e.check.split_whitespace().collect();
    let exp = e.expected.as_str();
    let ctx = || SubmonoidContext::from_spec(&e.spec, ELEMENT_BOUND);
    Ok(match args.first().copied().unwrap_or("") {
        "transfer" => {
            let t: Transfer = arg::<String>(&args, 1, "a property")?.parse()?;
            by_verdict(exp, check_transfer(&ctx()?, t))
        }
        "closure" => {
            let which: String = arg(&args, 1, "a closure name")?;
            let b: Norm = arg(&args, 2, "a bound").unwrap_or(ELEMENT_BOUND);
            let c = SubmonoidContext::with_bounds(e.spec_rank()?, e.spec_gens()?, b, 3 * b)?;
            let cl = closure_checks(&c);
            let v = match which.as_str() {
                "root" => cl.root_closed,
                "quotient" => cl.quotient_closed,
                "divisor" => cl.divisor_closed,
                _ => return Err(Error::Invalid(format!("unknown closure `{which}`"))),
            };
            by_verdict(exp, v)
        }
        "conditions" => {
            let c = ctx()?;
            let r = match arg::<String>(&args, 1, "a suite")?.as_str() {
                "atoms" => atom_transfer_report(&c),
                _ => squarefree_transfer_report(&c),
            };
            let obs = if !r.passed() {
                "inconsistent".to_string()
            } else if r.refuted() == 0 {
                "none-refuted".to_string()
            } else {
                "all-refuted".to_string()
            };
            by_text(exp, obs)
        }
        "schemes" => {
            let p = monoid_profile(&m, arg(&args, 1, "a bound")?)?;
            by_text(
                exp,
                ClassificationRow::from_profile(String::new(), &p).pattern(),
            )
        }
        "profile" => {
            let prop = property(&arg::<String>(&args, 1, "a property")?)?;
            let p = monoid_profile(&m, arg(&args, 2, "a bound")?)?;
            by_verdict(exp, p.get(prop).clone())
        }
        "consistent" => {
            let p = monoid_profile(&m, arg(&args, 1, "a bound")?)?;
            let obs = if p.is_consistent() {
                "consistent".to_string()
            } else {
                format!("{:?} {:?}", p.conflicts, p.violations)
            };
            by_text(exp, obs)
        }
        "factor" => {
            let s: Scheme = arg::<String>(&args, 1, "a scheme")?.parse()?;
            let a = m.parse_element(&args[2..].join(" "))?;
            let v = match factor(&m, &a, s)? {
                Outcome::Found(f) => {
                    let check = verify(&m, &a, &f)?;
                    if check.holds() {
                        Verdict::found(f.parts.clone(), Basis::Search).with_note(f.render(&m))
                    } else {
                        check
                    }
                }
                _ => scheme_holds_for(&m, &a, s)?,
            };
            by_verdict(exp, v)
        }
        "atoms" => {
            let set = atoms(&m, arg(&args, 1, "a bound")?)?;
            by_text(exp, set_text(&set.members))
        }
        "prime" => {
            let a = m.parse_element(args.get(1).copied().unwrap_or(""))?;
            by_verdict(exp, is_prime(&m, &a, arg(&args, 2, "a bound")?)?)
        }
        "squarefree" => {
            let a = m.parse_element(&args[1..].join(" "))?;
            by_verdict(exp, is_squarefree(&m, &a)?)
        }
        "radical-gap" => by_verdict(exp, radical_gap(&m, arg(&args, 1, "a bound")?)?),
        "count" => {
            let c = count_squarefree(&m, arg(&args, 1, "a bound")?)?;
            by_text(exp, format!("{} {}", c.render(), set_text(&c.set)))
        }
        "poly-squarefree" => by_text(exp, poly_squarefree(&m, arg(&args, 1, "a degree")?)?),
        "poly-atoms" => by_text(exp, poly_atoms(&m, arg(&args, 1, "a degree")?)?),
        "half-factorial" => by_text(exp, half_factorial(&m, arg(&args, 1, "a degree")?)?),
        other => return Err(Error::Invalid(format!("unknown check `{other}`"))),
    })
}

impl CatalogEntry {
    fn spec_rank(&self) -> Result<usize> {
        match &self.spec {
            MonoidSpec::SubmonoidNn { rank, .. } => Ok(*rank),
            _ => Err(Error::spec("family", "expected submonoid_nn")),
        }
    }

    fn spec_gens(&self) -> Result<Vec<Vec<u64>>> {
        match &self.spec {
            MonoidSpec::SubmonoidNn { gens, .. } => Ok(gens.clone()),
            _ => Err(Error::spec("family", "expected submonoid_nn")),
        }
    }
}

/// First square-free element that is not radical, followed by the radical
/// test's witness.
pub fn radical_gap(m: &Monoid, bound: Norm) -> Result<Verdict> {
    for a in m.enumerate(bound)? {
        if !is_squarefree(m, &a)?.holds() {
            continue;
        }
        let r = is_radical(m, &a, bound)?;
        if r.fails() {
            let mut w = vec![a];
            w.extend(r.witness);
            let v = Verdict::found(w, Basis::Exact);
            return Ok(match r.exponent {
                Some(n) => v.with_exponent(n),
                None => v,
            });
        }
    }
    Ok(Verdict::not_found(bound))
}

fn poly_ring(m: &Monoid) -> Result<&crate::families::PolySubring> {
    match m.family() {
        Family::Poly(p) => Ok(p),
        _ => Err(Error::spec("family", "expected poly_subring")),
    }
}

/// `f ∈ S(T) ⇔ f ∈ S(F[x]) ∧ f(0) ∈ L` over every non-zero `f ∈ F[x]`
/// of degree at most `d`.
pub fn poly_squarefree(m: &Monoid, d: usize) -> Result<String> {
    let p = poly_ring(m)?;
    let f = p.field();
    for g in fx::all_up_to(f, d) {
        let lhs = p.contains(&g) && is_squarefree(m, &p.element(g.clone()))?.holds();
        let rhs = fx::squarefree_brute(f, &g) && p.in_base(g[0]);
        if lhs != rhs {
            return Ok(format!("differs at {}", p.element(g)));
        }
    }
    Ok("equivalent".into())
}

/// Atoms found by search agree with the closed formula up to degree `d`.
pub fn poly_atoms(m: &Monoid, d: usize) -> Result<String> {
    let p = poly_ring(m)?;
    let found: BTreeSet<Element> = atoms(m, d as Norm)?.members.into_iter().collect();
    let formula: BTreeSet<Element> = p.atom_formula(d as u64).into_iter().collect();
    Ok(if found == formula {
        "matches-formula".into()
    } else {
        let extra: Vec<Element> = found.difference(&formula).cloned().collect();
        let missing: Vec<Element> = formula.difference(&found).cloned().collect();
        format!("extra {} missing {}", set_text(&extra), set_text(&missing))
    })
}

/// Every element of degree at most `d` has atom factorisations of one
/// length only.
pub fn half_factorial(m: &Monoid, d: usize) -> Result<String> {
    let mut memo = BTreeMap::new();
    for a in m.enumerate(d as Norm)? {
        let l = lengths(m, &a, &mut memo)?;
        if l.len() != 1 {
            let ls: Vec<String> = l.iter().map(|x| x.to_string()).collect();
            return Ok(format!("{a} has lengths {}", ls.join(",")));
        }
    }
    Ok("equal-lengths".into())
}

/// Run every catalog entry; mismatches and errors become failures.
pub fn run_catalog() -> Report {
    run_catalog_text(CATALOG)
}

pub fn run_catalog_text(text: &str) -> Report {
    let mut r = Report::new("catalog");
    let entries = match parse_catalog(text) {
        Ok(e) => e,
        Err(err) => {
            r.fail(format!("catalog: {err}"));
            return r;
        }
    };
    r.meta("entries", entries.len());
    r.section("catalog");
    for e in &entries {
        match run_check(e) {
            Ok(o) => {
                match &o.verdict {
                    Some(v) => r.verdict(&e.id, v),
                    None => r.value(&e.id, &o.observed),
                };
                if !o.passed {
                    r.fail(format!(
                        "{} (line {}): expected `{}`, observed `{}`",
                        e.id, e.line, e.expected, o.observed
                    ));
                }
            }
            Err(err) => {
                r.value(&e.id, format!("error: {err}"));
                r.fail(format!("{} (line {}): {err}", e.id, e.line));
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_shipped_catalog() {
        let e = parse_catalog(CATALOG).unwrap();
        assert!(e.len() >= 20);
        let ids: BTreeSet<&str> = e.iter().map(|x| x.id.as_str()).collect();
        assert_eq!(ids.len(), e.len(), "duplicate ids");
    }

    #[test]
    fn matching_rules() {
        let v = Verdict::refuted(vec![Element::Natural(3), Element::Natural(3)], Basis::Exact);
        assert!(verdict_matches("Refuted [3, 3]", &v));
        assert!(verdict_matches("Refuted", &v));
        assert!(verdict_matches("fails", &v));
        assert!(!verdict_matches("not-refuted", &v));
        assert!(!verdict_matches("Refuted [3]", &v));
    }

    #[test]
    fn bad_lines_are_reported() {
        let r = run_catalog_text("x | family = free_commutative { rank = 1 } | atoms 3 | {9}\n");
        assert_eq!(r.failures.len(), 1);
        assert!(parse_catalog("only | three | cols").is_err());
    }
}
