//! The monoids `B_{p,q} = ⟨x_i, y_i | y_i = x_{i+1}^p y_{i+1}^q⟩`.
//!
//! Elements are stored at their minimal level. At level `L` the generators
//! `x_1..x_L, y_L` generate a free monoid, and moving from level `L` to
//! `L + 1` rewrites `y_L^e` as `x_{L+1}^{pe} y_{L+1}^{qe}`. All computation
//! happens inside the truncation at `level_cap`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::families::vecs;
use crate::kernel::{Basis, DivisorScan, Element, FamilyKind, FamilyOps, Norm, Verdict};

const DIVISOR_BUDGET: u64 = 1 << 16;

/// Exponents of `x_1..x_cap` and of `y_level`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeveledVector {
    pub level: u32,
    pub x: Vec<u64>,
    pub y: u64,
}

impl fmt::Display for LeveledVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mono = |name: String, e: u64| if e == 1 { name } else { format!("{name}^{e}") };
        for (i, &e) in self.x.iter().enumerate() {
            if e > 0 {
                parts.push(mono(format!("x{}", i + 1), e));
            }
        }
        if self.y > 0 {
            parts.push(mono(format!("y{}", self.level), self.y));
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bpq {
    p: u64,
    q: u64,
    cap: u32,
}

impl Bpq {
    pub fn new(p: u64, q: u64, cap: u32) -> Result<Self> {
        if p == 0 {
            return Err(Error::spec("p", "must be positive"));
        }
        if q == 0 {
            return Err(Error::spec("q", "must be positive"));
        }
        if !(2..=64).contains(&cap) {
            return Err(Error::spec("level_cap", "must lie in 2..=64"));
        }
        Ok(Bpq { p, q, cap })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn is_unit_case(&self) -> bool {
        self.p == 1 && self.q == 1
    }

    pub fn one(&self) -> LeveledVector {
        LeveledVector {
            level: 1,
            x: vec![0; self.cap as usize],
            y: 0,
        }
    }

    /// The generator `x_i`.
    pub fn x(&self, i: u32) -> Result<LeveledVector> {
        if i == 0 || i > self.cap {
            return Err(Error::LevelCapExceeded {
                cap: self.cap,
                needed: i,
            });
        }
        let mut v = self.one();
        v.x[i as usize - 1] = 1;
        Ok(v)
    }

    /// The generator `y_i`.
    pub fn y(&self, i: u32) -> Result<LeveledVector> {
        if i == 0 || i > self.cap {
            return Err(Error::LevelCapExceeded {
                cap: self.cap,
                needed: i,
            });
        }
        let mut v = self.one();
        v.level = i;
        v.y = 1;
        Ok(self.canonical(v))
    }

    /// Rewrite `v` at a higher level, not canonicalised.
    pub fn normalize_to_level(&self, v: &LeveledVector, level: u32) -> Result<LeveledVector> {
        if level > self.cap {
            return Err(Error::LevelCapExceeded {
                cap: self.cap,
                needed: level,
            });
        }
        if level < v.level {
            return Err(Error::Invalid(format!(
                "cannot lower {v} from level {} to {level}",
                v.level
            )));
        }
        let mut out = v.clone();
        while out.level < level {
            let l = out.level as usize;
            let add = self.p.checked_mul(out.y).ok_or(Error::Overflow)?;
            out.x[l] = out.x[l].checked_add(add).ok_or(Error::Overflow)?;
            out.y = out.y.checked_mul(self.q).ok_or(Error::Overflow)?;
            out.level += 1;
        }
        Ok(out)
    }

    /// Representation at levels above the cap: `(x_1..x_level, y_level)`.
    pub fn raw_vector(&self, v: &LeveledVector, level: u32) -> Result<Vec<u64>> {
        let mut x: Vec<u64> = v.x.clone();
        x.resize(level.max(self.cap) as usize, 0);
        let mut y = v.y;
        for l in v.level..level {
            let add = self.p.checked_mul(y).ok_or(Error::Overflow)?;
            x[l as usize] = x[l as usize].checked_add(add).ok_or(Error::Overflow)?;
            y = y.checked_mul(self.q).ok_or(Error::Overflow)?;
        }
        x.truncate(level.max(self.cap) as usize);
        x.push(y);
        Ok(x)
    }

    /// Lower `v` to its minimal level.
    pub fn canonical(&self, mut v: LeveledVector) -> LeveledVector {
        while v.level > 1 {
            let l = v.level as usize;
            if !v.y.is_multiple_of(self.q) {
                break;
            }
            let e = v.y / self.q;
            let need = self.p * e;
            if v.x[l - 1] < need {
                break;
            }
            v.x[l - 1] -= need;
            v.y = e;
            v.level -= 1;
        }
        v
    }

    /// Exponent vector at `level`: `x_1..x_cap` followed by `y_level`.
    pub fn level_vector(&self, v: &LeveledVector, level: u32) -> Result<Vec<u64>> {
        let l = self.normalize_to_level(v, level)?;
        let mut w = l.x;
        w.push(l.y);
        Ok(w)
    }

    pub fn cap_vector(&self, v: &LeveledVector) -> Result<Vec<u64>> {
        self.level_vector(v, self.cap)
    }

    /// Canonical element with exponent vector `w` at `level`.
    pub fn from_level_vector(&self, level: u32, w: &[u64]) -> LeveledVector {
        let n = self.cap as usize;
        self.canonical(LeveledVector {
            level,
            x: w[..n].to_vec(),
            y: w[n],
        })
    }

    pub fn element(&self, level: u32, w: &[u64]) -> Element {
        Element::Leveled(self.from_level_vector(level, w))
    }

    fn lv(a: &Element) -> &LeveledVector {
        match a {
            Element::Leveled(v) => v,
            _ => unreachable!("checked element"),
        }
    }

    /// Divisibility with the cofactor as witness. Deciding it at the cap is exact: a
    /// negative coordinate there stays negative at every higher level.
    pub fn divides(&self, a: &LeveledVector, b: &LeveledVector) -> Result<Verdict> {
        let level = self.cap;
        let (wa, wb) = (self.level_vector(a, level)?, self.level_vector(b, level)?);
        Ok(match vecs::sub(&wb, &wa) {
            Some(d) => Verdict::proven_with(vec![self.element(level, &d)], Basis::Exact),
            None => Verdict::refuted(
                vec![Element::Leveled(a.clone()), Element::Leveled(b.clone())],
                Basis::Exact,
            ),
        })
    }

    /// Square-free iff the representation at the cap is a 0/1 vector and
    /// either `y` is absent or `p = q = 1`.
    pub fn squarefree_rule(&self, a: &LeveledVector) -> Result<bool> {
        let w = self.cap_vector(a)?;
        Ok(w.iter().all(|&e| e <= 1) && (a.y == 0 || self.is_unit_case()))
    }

    /// The atoms are exactly the `x_i`.
    pub fn atom_rule(&self, a: &LeveledVector) -> bool {
        a.y == 0 && a.x.iter().sum::<u64>() == 1
    }

    /// Elements without `y` are finite products of the `x_i`.
    pub fn atom_factorizable(&self, a: &LeveledVector) -> bool {
        a.y == 0
    }

    /// `y_1, y_2, ..., y_cap`, each properly divisible by the next.
    pub fn y_chain(&self) -> Vec<Element> {
        (1..=self.cap)
            .map(|i| Element::Leveled(self.y(i).expect("within cap")))
            .collect()
    }

    fn parse_monomial(&self, tok: &str, pos: usize) -> Result<LeveledVector> {
        let (base, exp) = match tok.split_once('^') {
            Some((b, e)) => (
                b,
                e.parse::<u64>()
                    .map_err(|err| Error::parse(pos, format!("exponent `{e}`: {err}")))?,
            ),
            None => (tok, 1),
        };
        let idx = |s: &str| {
            s.parse::<u32>()
                .map_err(|err| Error::parse(pos, format!("index `{s}`: {err}")))
        };
        let g = if let Some(i) = base.strip_prefix('x') {
            self.x(idx(i)?)?
        } else if let Some(i) = base.strip_prefix('y') {
            self.y(idx(i)?)?
        } else if base == "1" {
            self.one()
        } else {
            return Err(Error::parse(pos, format!("unknown generator `{base}`")));
        };
        let mut acc = Element::Leveled(self.one());
        let ge = Element::Leveled(g);
        for _ in 0..exp {
            acc = self.compose(&acc, &ge)?;
        }
        Ok(Self::lv(&acc).clone())
    }
}

impl FamilyOps for Bpq {
    fn kind(&self) -> FamilyKind {
        FamilyKind::Bpq
    }

    fn check(&self, a: &Element) -> Result<()> {
        match a {
            Element::Leveled(v)
                if v.x.len() == self.cap as usize
                    && (1..=self.cap).contains(&v.level)
                    && *v == self.canonical(v.clone()) =>
            {
                Ok(())
            }
            Element::Leveled(_) => Err(Error::NotAnElement(a.to_string())),
            _ => Err(Error::FamilyMismatch {
                expected: self.kind(),
                found: a.to_string(),
            }),
        }
    }

    fn identity(&self) -> Element {
        Element::Leveled(self.one())
    }

    fn compose(&self, a: &Element, b: &Element) -> Result<Element> {
        let (a, b) = (Self::lv(a), Self::lv(b));
        let level = a.level.max(b.level);
        let w = vecs::add(&self.level_vector(a, level)?, &self.level_vector(b, level)?)?;
        Ok(self.element(level, &w))
    }

    fn quotient(&self, a: &Element, b: &Element) -> Result<Option<Element>> {
        let (a, b) = (Self::lv(a), Self::lv(b));
        let level = self.cap;
        let d = vecs::sub(&self.level_vector(b, level)?, &self.level_vector(a, level)?);
        Ok(d.map(|d| self.element(level, &d)))
    }

    fn is_unit(&self, a: &Element) -> bool {
        *Self::lv(a) == self.one()
    }

    fn units(&self) -> Result<Vec<Element>> {
        Ok(vec![self.identity()])
    }

    fn norm(&self, a: &Element) -> Result<Norm> {
        Ok(vecs::norm(&self.cap_vector(Self::lv(a))?))
    }

    /// Divisors level by level, from the minimal level up to the cap.
    fn divisor_scan(&self, a: &Element) -> Result<DivisorScan> {
        let a = Self::lv(a);
        let top = if a.y == 0 { a.level } else { self.cap };
        let mut seen = BTreeSet::new();
        let mut layers = Vec::new();
        let mut spent = 0u64;
        let mut reached = true;
        for level in a.level..=top {
            let w = self.level_vector(a, level)?;
            let size = vecs::box_size(&w).unwrap_or(u64::MAX);
            if spent.saturating_add(size) > DIVISOR_BUDGET {
                reached = false;
                break;
            }
            spent += size;
            let mut layer = Vec::new();
            for d in vecs::box_vectors(&w, DIVISOR_BUDGET)? {
                let e = self.element(level, &d);
                if seen.insert(e.clone()) {
                    layer.push(e);
                }
            }
            layers.push(layer);
        }
        Ok(DivisorScan {
            layers,
            complete: reached && a.y == 0,
        })
    }

    fn enumerate(&self, bound: Norm) -> Result<Vec<Element>> {
        let mut out: Vec<(Norm, Element)> = vecs::graded(self.cap as usize + 1, bound)
            .into_iter()
            .map(|w| (vecs::norm(&w), self.element(self.cap, &w)))
            .collect();
        out.sort();
        Ok(out.into_iter().map(|(_, e)| e).collect())
    }

    fn parse_element(&self, s: &str) -> Result<Element> {
        let mut acc = Element::Leveled(self.one());
        let mut pos = 0;
        for tok in s.split(|c: char| c == '*' || c.is_whitespace()) {
            if !tok.is_empty() {
                let m = Element::Leveled(self.parse_monomial(tok, pos)?);
                acc = self.compose(&acc, &m)?;
            }
            pos += tok.len() + 1;
        }
        Ok(acc)
    }

    fn rpr(&self, a: &Element, b: &Element) -> Result<Option<Verdict>> {
        let wa = self.cap_vector(Self::lv(a))?;
        let wb = self.cap_vector(Self::lv(b))?;
        let g: Vec<u64> = wa.iter().zip(&wb).map(|(x, y)| *x.min(y)).collect();
        Ok(Some(if g.iter().all(|&e| e == 0) {
            Verdict::proven(Basis::Analytic(
                "supports at the cap stay disjoint above it".into(),
            ))
        } else {
            Verdict::refuted(vec![self.element(self.cap, &g)], Basis::Exact)
        }))
    }

    /// Componentwise minimum at the cap, re-tested one level above.
    fn gcd(&self, a: &Element, b: &Element) -> Result<Option<Verdict>> {
        let (la, lb) = (Self::lv(a), Self::lv(b));
        let min = |u: Vec<u64>, v: Vec<u64>| -> Vec<u64> {
            u.iter().zip(&v).map(|(x, y)| *x.min(y)).collect()
        };
        let g = min(self.cap_vector(la)?, self.cap_vector(lb)?);
        let above = min(
            self.raw_vector(la, self.cap + 1)?,
            self.raw_vector(lb, self.cap + 1)?,
        );
        let ge = self.from_level_vector(self.cap, &g);
        let lifted = self.raw_vector(&ge, self.cap + 1)?;
        Ok(Some(if lifted == above {
            Verdict::proven_with(
                vec![Element::Leveled(ge)],
                Basis::Analytic("componentwise minimum is stable above the cap".into()),
            )
        } else {
            Verdict::unknown(self.cap as u64)
                .with_note("componentwise minimum changes above the cap")
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Monoid;

    fn b(p: u64, q: u64) -> Bpq {
        Bpq::new(p, q, 8).unwrap()
    }

    #[test]
    fn lifting_y1() {
        let f = b(2, 2);
        let y1 = f.y(1).unwrap();
        let l3 = f.normalize_to_level(&y1, 3).unwrap();
        assert_eq!(l3.x[1], 2);
        assert_eq!(l3.x[2], 4);
        assert_eq!(l3.y, 4);
        assert_eq!(f.canonical(l3), y1);
    }

    #[test]
    fn canonical_form_is_minimal() {
        let f = b(1, 1);
        let w = {
            let mut v = f.one();
            v.level = 2;
            v.x[1] = 1;
            v.y = 1;
            v
        };
        assert_eq!(f.canonical(w), f.y(1).unwrap());
    }

    #[test]
    fn parse_and_display() {
        let m = Monoid::bpq(1, 1, 8).unwrap();
        let a = m.parse_element("x2*y2").unwrap();
        assert_eq!(a.to_string(), "y1");
        let b = m.parse_element("x1^2 x3").unwrap();
        assert_eq!(b.to_string(), "x1^2*x3");
        assert_eq!(m.parse_element("1").unwrap(), m.identity());
        assert!(m.parse_element("y9").is_err());
        assert!(m.parse_element("z1").is_err());
    }

    #[test]
    fn divisibility_across_levels() {
        let f = b(1, 1);
        let y1 = f.y(1).unwrap();
        let x2 = f.x(2).unwrap();
        let v = f.divides(&x2, &y1).unwrap();
        assert!(v.holds());
        assert_eq!(v.witness[0], Element::Leveled(f.y(2).unwrap()));
        assert!(f.divides(&y1, &x2).unwrap().fails());
    }

    #[test]
    fn rules() {
        let f = b(1, 1);
        assert!(f.squarefree_rule(&f.y(1).unwrap()).unwrap());
        let g = b(2, 2);
        assert!(!g.squarefree_rule(&g.y(1).unwrap()).unwrap());
        assert!(g.squarefree_rule(&g.x(3).unwrap()).unwrap());
        assert!(f.atom_rule(&f.x(1).unwrap()));
        assert!(!f.atom_rule(&f.y(1).unwrap()));
    }

    #[test]
    fn gcd_is_stable() {
        let m = Monoid::bpq(1, 1, 6).unwrap();
        let a = m.parse_element("y1").unwrap();
        let c = m.parse_element("x2").unwrap();
        let g = m.gcd(&a, &c).unwrap();
        assert!(g.holds());
        assert_eq!(g.witness[0], c);
    }

    #[test]
    fn enumerate_count() {
        let m = Monoid::bpq(1, 1, 2).unwrap();
        assert_eq!(m.enumerate(2).unwrap().len(), 10);
    }
}
