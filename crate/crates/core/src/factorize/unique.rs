//! Enumeration of all factorisations and uniqueness checks.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::kernel::{Basis, Element, Monoid, Norm, Verdict};
use crate::predicates::is_radical;

use super::search::{normalise_powers, visit_powers, Ctx};
use super::{power_divides, Factorization, Scheme, SEARCH_BUDGET};

/// All factorisations found, and whether the enumeration is complete.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub factorizations: Vec<Factorization>,
    pub complete: bool,
}

fn chains(
    ctx: &mut Ctx,
    rem: &Element,
    upper: Option<&Element>,
    prefix: &mut Vec<Element>,
    out: &mut Vec<Vec<Element>>,
    limit: usize,
) -> Result<()> {
    let m = ctx.m;
    if out.len() >= limit {
        ctx.inexact = true;
        return Ok(());
    }
    if m.unit(rem)? {
        let mut parts = prefix.clone();
        if *rem != m.identity() || parts.is_empty() {
            parts.push(rem.clone());
        }
        parts.reverse();
        out.push(parts);
        return Ok(());
    }
    for s in ctx.sf_divisors(rem)? {
        if let Some(u) = upper {
            if !m.is_divisor(&s, u)? {
                continue;
            }
        }
        let q = m.quotient(&s, rem)?.expect("divisor");
        prefix.push(s.clone());
        chains(ctx, &q, Some(&s), prefix, out, limit)?;
        prefix.pop();
    }
    Ok(())
}

/// Every factorisation of `a` in `scheme` (ii)-(vi), up to `limit`.
///
/// Identity parts at the padded end are dropped, so two tuples differing
/// only by such padding are listed once.
pub fn all_factorizations(
    m: &Monoid,
    a: &Element,
    scheme: Scheme,
    limit: usize,
) -> Result<Enumeration> {
    m.check(a)?;
    if !m.is_enumerable() {
        return Err(Error::NonEnumerable { family: m.kind() });
    }
    let mut ctx = Ctx::new(m, SEARCH_BUDGET);
    let mut seen: BTreeSet<Vec<Element>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |f: Factorization, seen: &mut BTreeSet<Vec<Element>>| {
        if seen.insert(f.parts.clone()) {
            out.push(f);
        }
    };
    match scheme {
        Scheme::I => {
            return Err(Error::Unsupported {
                op: "all_factorizations (i)",
                family: m.kind(),
            })
        }
        Scheme::Ii => {
            let mut raw = Vec::new();
            chains(&mut ctx, a, None, &mut Vec::new(), &mut raw, limit)?;
            for parts in raw {
                push(Factorization::new(Scheme::Ii, parts), &mut seen);
            }
        }
        Scheme::Iii | Scheme::Iv => {
            let mut raw = Vec::new();
            visit_powers(&mut ctx, a, scheme, &mut |parts| {
                raw.push(normalise_powers(m, parts));
                raw.len() >= limit
            })?;
            if raw.len() >= limit {
                ctx.inexact = true;
            }
            for parts in raw {
                push(Factorization::new(scheme, parts), &mut seen);
            }
        }
        Scheme::V => {
            let mut cands = ctx.sf_divisors(a)?;
            if m.unit(a)? {
                cands.extend(m.units()?);
            }
            for c in cands {
                match power_divides(m, a, &c)? {
                    Some(Some(n)) => {
                        let b = m.quotient(&c, a)?.expect("divisor");
                        let mut f = Factorization::new(Scheme::V, vec![b, c]);
                        f.power = Some(n);
                        push(f, &mut seen);
                    }
                    Some(None) => {}
                    None => ctx.inexact = true,
                }
            }
        }
        Scheme::Vi => {
            for b in ctx.divisors(a)? {
                let b2 = m.compose(&b, &b)?;
                if let Some(c) = m.quotient(&b2, a)? {
                    if ctx.is_sf(&c)? {
                        push(Factorization::new(Scheme::Vi, vec![b, c]), &mut seen);
                    }
                }
            }
        }
    }
    Ok(Enumeration {
        factorizations: out,
        complete: !ctx.inexact,
    })
}

fn padded(m: &Monoid, f: &Factorization, len: usize) -> Vec<Element> {
    let mut parts = f.parts.clone();
    let pad = len.saturating_sub(parts.len());
    match f.scheme {
        Scheme::Ii => {
            let mut front = vec![m.identity(); pad];
            front.extend(parts);
            front
        }
        _ => {
            parts.extend(std::iter::repeat_n(m.identity(), pad));
            parts
        }
    }
}

/// Check that the factorisations of `a` in `scheme` agree position-wise up
/// to associates.
///
/// For (ii) only chains of radical elements are compared and for (v) only
/// extractions with radical `c`; those hypotheses make uniqueness hold in
/// every monoid. For (iii) the monoid should be a decomposition monoid,
/// for (iv) and (vi) a GCD monoid. Refuted carries the two conflicting
/// factorisations, concatenated.
pub fn uniqueness_check(m: &Monoid, a: &Element, scheme: Scheme, bound: Norm) -> Result<Verdict> {
    let en = all_factorizations(m, a, scheme, 10_000)?;
    let mut complete = en.complete;
    let mut fs = Vec::new();
    for f in en.factorizations {
        let need: &[Element] = match scheme {
            Scheme::Ii => &f.parts,
            Scheme::V => &f.parts[1..],
            _ => &[],
        };
        let mut keep = true;
        for p in need {
            match is_radical(m, p, bound)?.truth() {
                Some(true) => {}
                Some(false) => keep = false,
                None => {
                    keep = false;
                    complete = false;
                }
            }
        }
        if keep {
            fs.push(f);
        }
    }
    let len = fs.iter().map(|f| f.parts.len()).max().unwrap_or(0);
    for w in fs.iter().skip(1) {
        let x = padded(m, &fs[0], len);
        let y = padded(m, w, len);
        for (p, q) in x.iter().zip(&y) {
            if !m.are_associates(p, q)? {
                let mut witness = fs[0].parts.clone();
                witness.extend(w.parts.iter().cloned());
                return Ok(Verdict::refuted(witness, Basis::Exact).with_note(format!(
                    "{} differs from {}",
                    fs[0].render(m),
                    w.render(m)
                )));
            }
        }
    }
    Ok(if complete {
        Verdict::proven(Basis::Exact)
    } else {
        Verdict::unknown(m.norm(a)?)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_monoid_factorisations_are_unique() {
        let m = Monoid::free(2);
        for a in m.enumerate(6).unwrap() {
            for s in [Scheme::Ii, Scheme::Iii, Scheme::Iv, Scheme::V, Scheme::Vi] {
                let v = uniqueness_check(&m, &a, s, 6).unwrap();
                assert!(v.holds(), "{a} {s}: {v}");
            }
        }
    }

    #[test]
    fn enumerates_several_chains() {
        let m = Monoid::free(2);
        let en = all_factorizations(&m, &Element::vector([2, 1]), Scheme::Ii, 100).unwrap();
        assert!(en.complete);
        // (1,0)|(1,1) is the only chain; (0,1)(2,0) is not square-free.
        assert_eq!(en.factorizations.len(), 1);
        let en = all_factorizations(&m, &Element::vector([2, 1]), Scheme::Vi, 100).unwrap();
        assert_eq!(en.factorizations.len(), 1);
    }

    #[test]
    fn non_unique_outside_the_hypotheses() {
        // In {0, 2, 3, ...}: 10 = 2*4 + 2 = 2*5 + 0.
        let m = Monoid::shifted(2, &[]).unwrap();
        let a = Element::Natural(10);
        let en = all_factorizations(&m, &a, Scheme::Vi, 100).unwrap();
        assert!(en.complete);
        assert!(en.factorizations.len() >= 2, "{:?}", en.factorizations);
        assert!(uniqueness_check(&m, &a, Scheme::Vi, 10).unwrap().fails());
    }
}
