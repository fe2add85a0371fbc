//! Exhaustive checks of element-level laws on a norm ball.
//!
//! Each check returns a [`LawCheck`]; a violation is a tuple of elements
//! that contradicts the law using exact verdicts only.

use crate::error::Result;
use crate::kernel::{Element, Monoid, Norm};

use super::{effective_bound, is_atom, is_primal, is_prime, is_radical, is_squarefree};

#[derive(Clone, Debug, Default)]
pub struct LawCheck {
    pub law: &'static str,
    /// Instances where every involved verdict was exact.
    pub checked: usize,
    /// Instances skipped because some verdict was bounded.
    pub undecided: usize,
    pub violations: Vec<Vec<Element>>,
}

impl LawCheck {
    fn new(law: &'static str) -> Self {
        LawCheck {
            law,
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(
        &mut self,
        premise: Option<bool>,
        conclusion: Option<bool>,
        w: impl FnOnce() -> Vec<Element>,
    ) {
        match (premise, conclusion) {
            (Some(false), _) => {}
            (Some(true), Some(true)) => self.checked += 1,
            (Some(true), Some(false)) => {
                self.checked += 1;
                self.violations.push(w());
            }
            _ => self.undecided += 1,
        }
    }
}

fn ball(m: &Monoid, bound: Norm) -> Result<Vec<Element>> {
    m.enumerate(effective_bound(m, bound))
}

/// prime ⇒ atom, prime ⇒ radical, radical ⇒ square-free,
/// atom ⇒ square-free.
pub fn element_diagram(m: &Monoid, bound: Norm) -> Result<Vec<LawCheck>> {
    let mut pa = LawCheck::new("prime => atom");
    let mut pr = LawCheck::new("prime => radical");
    let mut rs = LawCheck::new("radical => square-free");
    let mut as_ = LawCheck::new("atom => square-free");
    for a in ball(m, bound)? {
        let prime = is_prime(m, &a, bound)?.truth();
        let atom = is_atom(m, &a)?.truth();
        let radical = is_radical(m, &a, bound)?.truth();
        let sf = is_squarefree(m, &a)?.truth();
        let w = || vec![a.clone()];
        pa.record(prime, atom, w);
        pr.record(prime, radical, w);
        rs.record(radical, sf, w);
        as_.record(atom, sf, w);
    }
    Ok(vec![pa, pr, rs, as_])
}

/// If `a` is square-free and `a = bc`, then `b`, `c` are square-free and
/// relatively prime.
pub fn squarefree_splits(m: &Monoid, bound: Norm) -> Result<LawCheck> {
    let mut out = LawCheck::new("square-free a = bc => b, c square-free and rpr");
    for a in ball(m, bound)? {
        let sf = is_squarefree(m, &a)?.truth();
        if sf != Some(true) {
            if sf.is_none() {
                out.undecided += 1;
            }
            continue;
        }
        for b in m.divisors(&a)? {
            let c = m.quotient(&b, &a)?.expect("divisor");
            let sb = is_squarefree(m, &b)?.truth();
            let sc = is_squarefree(m, &c)?.truth();
            let r = m.rpr(&b, &c)?.truth();
            let concl = match (sb, sc, r) {
                (Some(x), Some(y), Some(z)) => Some(x && y && z),
                (Some(false), _, _) | (_, Some(false), _) | (_, _, Some(false)) => Some(false),
                _ => None,
            };
            out.record(Some(true), concl, || vec![a.clone(), b.clone(), c]);
        }
    }
    Ok(out)
}

/// In a decomposition monoid: products of relatively prime square-free
/// elements are square-free, and so are products of non-associated atoms.
pub fn rpr_products(m: &Monoid, bound: Norm) -> Result<Vec<LawCheck>> {
    let mut sfp = LawCheck::new("s, t square-free, s rpr t => st square-free");
    let mut atp = LawCheck::new("s, t non-associated atoms => st square-free");
    let elems = ball(m, bound)?;
    let sf: Vec<Option<bool>> = elems
        .iter()
        .map(|a| Ok(is_squarefree(m, a)?.truth()))
        .collect::<Result<_>>()?;
    let atom: Vec<Option<bool>> = elems
        .iter()
        .map(|a| Ok(is_atom(m, a)?.truth()))
        .collect::<Result<_>>()?;
    for i in 0..elems.len() {
        for j in i..elems.len() {
            let (s, t) = (&elems[i], &elems[j]);
            let st = m.compose(s, t)?;
            let st_sf = is_squarefree(m, &st)?.truth();
            if sf[i] == Some(true) && sf[j] == Some(true) {
                let r = m.rpr(s, t)?.truth();
                sfp.record(r, st_sf, || vec![s.clone(), t.clone()]);
            }
            if atom[i] == Some(true) && atom[j] == Some(true) {
                let distinct = !m.are_associates(s, t)?;
                atp.record(Some(distinct), st_sf, || vec![s.clone(), t.clone()]);
            }
        }
    }
    Ok(vec![sfp, atp])
}

/// Every divisor of a radical element is radical.
pub fn radical_divisors(m: &Monoid, bound: Norm) -> Result<LawCheck> {
    let mut out = LawCheck::new("d | a, a radical => d radical");
    for a in ball(m, bound)? {
        let r = is_radical(m, &a, bound)?.truth();
        if r != Some(true) {
            if r.is_none() {
                out.undecided += 1;
            }
            continue;
        }
        for d in m.divisors(&a)? {
            let rd = is_radical(m, &d, bound)?.truth();
            out.record(Some(true), rd, || vec![a.clone(), d.clone()]);
        }
    }
    Ok(out)
}

/// Relative-primality laws of decomposition monoids, quantified over the
/// ball:
///
/// * `a | bc`, `a rpr b` ⇒ `a | c`;
/// * `a rpr b`, `a rpr c` ⇒ `a rpr bc`;
/// * `a | bc` ⇒ `a = a1 a2` with `a1 | b`, `a2 | c`;
/// * `s, t | a` square-free with `s rpr t` ⇒ `st | a`.
pub fn decomposition_laws(m: &Monoid, bound: Norm) -> Result<Vec<LawCheck>> {
    let mut cancel = LawCheck::new("a | bc, a rpr b => a | c");
    let mut prod = LawCheck::new("a rpr b, a rpr c => a rpr bc");
    let mut split = LawCheck::new("a | bc => a splits");
    let mut common = LawCheck::new("s, t | a square-free rpr => st | a");
    let elems = ball(m, bound)?;
    for a in &elems {
        let primal = is_primal(m, a, bound)?.truth();
        for (i, b) in elems.iter().enumerate() {
            let rab = m.rpr(a, b)?.truth();
            for c in &elems[i..] {
                let bc = m.compose(b, c)?;
                let divides = m.is_divisor(a, &bc)?;
                if divides {
                    cancel.record(rab, Some(m.is_divisor(a, c)?), || {
                        vec![a.clone(), b.clone(), c.clone()]
                    });
                    split.record(Some(true), primal, || vec![a.clone(), b.clone(), c.clone()]);
                }
                let rac = m.rpr(a, c)?.truth();
                let both = match (rab, rac) {
                    (Some(true), Some(true)) => Some(true),
                    (Some(false), _) | (_, Some(false)) => Some(false),
                    _ => None,
                };
                if both != Some(false) {
                    prod.record(both, m.rpr(a, &bc)?.truth(), || {
                        vec![a.clone(), b.clone(), c.clone()]
                    });
                }
            }
        }
        let sfd: Vec<Element> = m
            .divisors(a)?
            .into_iter()
            .filter(|d| is_squarefree(m, d).map(|v| v.holds()).unwrap_or(false))
            .collect();
        for (i, s) in sfd.iter().enumerate() {
            for t in &sfd[i + 1..] {
                let r = m.rpr(s, t)?.truth();
                if r == Some(false) {
                    continue;
                }
                let st = m.compose(s, t)?;
                common.record(r, Some(m.is_divisor(&st, a)?), || {
                    vec![a.clone(), s.clone(), t.clone()]
                });
            }
        }
    }
    Ok(vec![cancel, prod, split, common])
}

/// Radical and square-free elements coincide on the ball. Violations are
/// square-free elements that are not radical.
pub fn radical_equals_squarefree(m: &Monoid, bound: Norm) -> Result<LawCheck> {
    let mut out = LawCheck::new("square-free => radical");
    for a in ball(m, bound)? {
        let sf = is_squarefree(m, &a)?.truth();
        let r = is_radical(m, &a, bound)?.truth();
        out.record(sf, r, || vec![a.clone()]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_monoid_satisfies_everything() {
        let m = Monoid::free(2);
        for c in element_diagram(&m, 4).unwrap() {
            assert!(c.passed(), "{}", c.law);
        }
        assert!(squarefree_splits(&m, 4).unwrap().passed());
        for c in rpr_products(&m, 3).unwrap() {
            assert!(c.passed(), "{}", c.law);
        }
        assert!(radical_divisors(&m, 4).unwrap().passed());
        for c in decomposition_laws(&m, 2).unwrap() {
            assert!(c.passed(), "{}", c.law);
            assert!(c.checked > 0, "{}", c.law);
        }
        let r = radical_equals_squarefree(&m, 4).unwrap();
        assert!(r.passed() && r.undecided == 0);
    }

    #[test]
    fn shifted_two_has_squarefree_non_radical() {
        let m = Monoid::shifted(2, &[]).unwrap();
        for c in element_diagram(&m, 12).unwrap() {
            assert!(c.passed(), "{}", c.law);
        }
        assert!(squarefree_splits(&m, 12).unwrap().passed());
        assert!(radical_divisors(&m, 12).unwrap().passed());
        let r = radical_equals_squarefree(&m, 12).unwrap();
        assert!(!r.passed());
        assert!(r.violations.contains(&vec![Element::Natural(5)]));
        // Not a decomposition monoid: the cancellation law fails.
        let laws = decomposition_laws(&m, 8).unwrap();
        assert!(laws.iter().any(|c| !c.passed()));
    }
}
