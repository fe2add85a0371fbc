//! Depth-first search over square-free divisors, for families with finite
//! divisor sets.

use std::collections::{HashMap, HashSet};

use crate::error::Result;
use crate::kernel::{Element, Monoid};
use crate::predicates::is_squarefree;

use super::{power_divides, Factorization, Outcome, Scheme};

pub(crate) struct Ctx<'a> {
    pub(crate) m: &'a Monoid,
    divisors: HashMap<Element, Vec<Element>>,
    sf: HashMap<Element, Option<bool>>,
    budget: usize,
    /// Set when some branch could not be decided.
    pub(crate) inexact: bool,
}

impl<'a> Ctx<'a> {
    pub(crate) fn new(m: &'a Monoid, budget: usize) -> Self {
        Ctx {
            m,
            divisors: HashMap::new(),
            sf: HashMap::new(),
            budget,
            inexact: false,
        }
    }

    fn tick(&mut self) -> bool {
        if self.budget == 0 {
            self.inexact = true;
            return false;
        }
        self.budget -= 1;
        true
    }

    /// Divisors in decreasing norm.
    pub(crate) fn divisors(&mut self, a: &Element) -> Result<Vec<Element>> {
        if let Some(d) = self.divisors.get(a) {
            return Ok(d.clone());
        }
        let scan = self.m.divisor_scan(a)?;
        if !scan.complete {
            self.inexact = true;
        }
        let all: Vec<Element> = scan.layers.into_iter().flatten().collect();
        let mut d = self.m.sorted(all)?;
        d.dedup();
        d.reverse();
        self.divisors.insert(a.clone(), d.clone());
        Ok(d)
    }

    pub(crate) fn is_sf(&mut self, a: &Element) -> Result<bool> {
        if let Some(v) = self.sf.get(a) {
            if v.is_none() {
                self.inexact = true;
            }
            return Ok(v.unwrap_or(false));
        }
        let v = is_squarefree(self.m, a)?.truth();
        self.sf.insert(a.clone(), v);
        if v.is_none() {
            self.inexact = true;
        }
        Ok(v.unwrap_or(false))
    }

    /// Square-free non-unit divisors in decreasing norm.
    pub(crate) fn sf_divisors(&mut self, a: &Element) -> Result<Vec<Element>> {
        let mut out = Vec::new();
        for d in self.divisors(a)? {
            if !self.m.unit(&d)? && self.is_sf(&d)? {
                out.push(d);
            }
        }
        Ok(out)
    }

    pub(crate) fn rpr(&mut self, a: &Element, b: &Element) -> Result<bool> {
        match self.m.rpr(a, b)?.truth() {
            Some(t) => Ok(t),
            None => {
                self.inexact = true;
                Ok(false)
            }
        }
    }

    /// Largest `n` such that some non-unit `s` has `s^{w(n)} | a`.
    fn max_level(&mut self, a: &Element, weight: impl Fn(u32) -> u64) -> Result<u32> {
        let divs = self.sf_divisors(a)?;
        let mut n = 0;
        loop {
            let w = weight(n + 1);
            let mut any = false;
            for s in &divs {
                if self.m.is_divisor(&self.m.pow(s, w)?, a)? {
                    any = true;
                    break;
                }
            }
            if !any {
                return Ok(n);
            }
            n += 1;
        }
    }

    fn outcome(&self, f: Option<Factorization>) -> Outcome {
        match f {
            Some(f) => Outcome::Found(f),
            None if self.inexact => Outcome::Truncated,
            None => Outcome::Exhausted,
        }
    }
}

/// Remaining parts of a scheme (i) factorisation of `rem`.
fn go_i(
    ctx: &mut Ctx,
    rem: &Element,
    failed: &mut HashSet<Element>,
) -> Result<Option<Vec<Element>>> {
    let m = ctx.m;
    if m.unit(rem)? {
        return Ok(Some(if *rem == m.identity() {
            Vec::new()
        } else {
            vec![rem.clone()]
        }));
    }
    if failed.contains(rem) || !ctx.tick() {
        return Ok(None);
    }
    for s in ctx.sf_divisors(rem)? {
        let q = m.quotient(&s, rem)?.expect("divisor");
        if let Some(mut rest) = go_i(ctx, &q, failed)? {
            rest.insert(0, s);
            return Ok(Some(rest));
        }
    }
    failed.insert(rem.clone());
    Ok(None)
}

/// Scheme (ii) parts of `rem`, largest first, each dividing `upper`.
fn go_ii(
    ctx: &mut Ctx,
    rem: &Element,
    upper: Option<&Element>,
    failed: &mut HashSet<(Element, Option<Element>)>,
) -> Result<Option<Vec<Element>>> {
    let m = ctx.m;
    if m.unit(rem)? {
        return Ok(Some(if *rem == m.identity() {
            Vec::new()
        } else {
            vec![rem.clone()]
        }));
    }
    let key = (rem.clone(), upper.cloned());
    if failed.contains(&key) || !ctx.tick() {
        return Ok(None);
    }
    for s in ctx.sf_divisors(rem)? {
        if let Some(u) = upper {
            if !m.is_divisor(&s, u)? {
                continue;
            }
        }
        let q = m.quotient(&s, rem)?.expect("divisor");
        if let Some(mut rest) = go_ii(ctx, &q, Some(&s), failed)? {
            rest.insert(0, s);
            return Ok(Some(rest));
        }
    }
    failed.insert(key);
    Ok(None)
}

/// Assign `s_j, s_{j-1}, ..., s_lo` with `s_j^{w(j)} | rem`; `s_lo` takes
/// whatever is left. `rpr` forces pairwise relative primality.
#[allow(clippy::too_many_arguments)]
fn go_powers(
    ctx: &mut Ctx,
    rem: &Element,
    j: u32,
    lo: u32,
    weight: &dyn Fn(u32) -> u64,
    rpr: bool,
    chosen: &mut Vec<Element>,
    all: &mut dyn FnMut(&[Element]) -> bool,
) -> Result<bool> {
    let m = ctx.m;
    if !ctx.tick() {
        return Ok(false);
    }
    if j == lo {
        if !ctx.is_sf(rem)? {
            return Ok(false);
        }
        if rpr {
            for t in chosen.iter() {
                if !ctx.rpr(rem, t)? {
                    return Ok(false);
                }
            }
        }
        chosen.push(rem.clone());
        let stop = all(chosen);
        chosen.pop();
        return Ok(stop);
    }
    let mut cands = vec![m.identity()];
    cands.extend(ctx.sf_divisors(rem)?);
    for s in cands {
        let sw = m.pow(&s, weight(j))?;
        let Some(q) = m.quotient(&sw, rem)? else {
            continue;
        };
        if rpr {
            let mut ok = true;
            for t in chosen.iter() {
                if !ctx.rpr(&s, t)? {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
        }
        chosen.push(s);
        let stop = go_powers(ctx, &q, j - 1, lo, weight, rpr, chosen, all)?;
        chosen.pop();
        if stop {
            return Ok(true);
        }
    }
    Ok(false)
}

fn weight_iii(j: u32) -> u64 {
    j as u64
}

fn weight_iv(j: u32) -> u64 {
    1u64 << j
}

/// Visit scheme (iii) or (iv) factorisations; `visit` returns `true` to
/// stop. Parts are passed top index first.
pub(crate) fn visit_powers(
    ctx: &mut Ctx,
    a: &Element,
    scheme: Scheme,
    visit: &mut dyn FnMut(&[Element]) -> bool,
) -> Result<()> {
    let (weight, lo, rpr): (&dyn Fn(u32) -> u64, u32, bool) = match scheme {
        Scheme::Iii => (&weight_iii, 1, true),
        _ => (&weight_iv, 0, false),
    };
    let top = match scheme {
        Scheme::Iii => ctx.max_level(a, weight_iii)?.max(1),
        _ => ctx.max_level(a, weight_iv)?,
    };
    let mut chosen = Vec::new();
    go_powers(ctx, a, top, lo, weight, rpr, &mut chosen, visit)?;
    Ok(())
}

/// Strip identity parts at the top of a (iii)/(iv) tuple given top first,
/// returning parts in increasing index order.
pub(crate) fn normalise_powers(m: &Monoid, top_first: &[Element]) -> Vec<Element> {
    let mut parts: Vec<Element> = top_first.iter().rev().cloned().collect();
    while parts.len() > 1 && *parts.last().expect("non-empty") == m.identity() {
        parts.pop();
    }
    parts
}

pub(crate) fn find(m: &Monoid, a: &Element, scheme: Scheme, budget: usize) -> Result<Outcome> {
    let mut ctx = Ctx::new(m, budget);
    let found = match scheme {
        Scheme::I => go_i(&mut ctx, a, &mut HashSet::new())?.map(|mut parts| {
            if parts.is_empty() {
                parts.push(m.identity());
            }
            Factorization::new(Scheme::I, parts)
        }),
        Scheme::Ii => go_ii(&mut ctx, a, None, &mut HashSet::new())?.map(|mut parts| {
            if parts.is_empty() {
                parts.push(m.identity());
            }
            parts.reverse();
            Factorization::new(Scheme::Ii, parts)
        }),
        Scheme::Iii | Scheme::Iv => {
            let mut hit = None;
            visit_powers(&mut ctx, a, scheme, &mut |parts| {
                hit = Some(normalise_powers(m, parts));
                true
            })?;
            hit.map(|p| Factorization::new(scheme, p))
        }
        Scheme::V => {
            let mut cands = ctx.sf_divisors(a)?;
            if m.unit(a)? {
                cands.push(a.clone());
            }
            let mut hit = None;
            for c in cands {
                match power_divides(m, a, &c)? {
                    Some(Some(n)) => {
                        let b = m.quotient(&c, a)?.expect("divisor");
                        let mut f = Factorization::new(Scheme::V, vec![b, c]);
                        f.power = Some(n);
                        hit = Some(f);
                        break;
                    }
                    Some(None) => {}
                    None => ctx.inexact = true,
                }
            }
            hit
        }
        Scheme::Vi => {
            let mut hit = None;
            for b in ctx.divisors(a)? {
                let b2 = m.compose(&b, &b)?;
                if let Some(c) = m.quotient(&b2, a)? {
                    if ctx.is_sf(&c)? {
                        hit = Some(Factorization::new(Scheme::Vi, vec![b, c]));
                        break;
                    }
                }
            }
            hit
        }
    };
    Ok(ctx.outcome(found))
}
