//! `N^r ∪ (Q>0)^r`: the lattice points of the closed orthant together with
//! its rational interior.
//!
//! The square-free elements are the 0/1 vectors with at least one zero
//! coordinate, so the monoid has exactly `2^r - 1` of them.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::families::rationals::parse_rational;
use crate::kernel::{Basis, DivisorScan, Element, FamilyKind, FamilyOps, Norm, Rational, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeOrthant {
    rank: usize,
}

impl LatticeOrthant {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::spec("rank", "must be at least 1"));
        }
        Ok(LatticeOrthant { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        v.len() == self.rank
            && (v.iter().all(|x| x.is_integer()) || v.iter().all(|x| *x.numer() > 0))
    }

    pub fn is_interior(v: &[Rational]) -> bool {
        v.iter().all(|x| *x.numer() > 0)
    }

    fn vals(a: &Element) -> &[Rational] {
        match a {
            Element::Orthant(v) => v,
            _ => unreachable!("checked element"),
        }
    }

    pub fn element(v: Vec<Rational>) -> Element {
        Element::Orthant(v)
    }

    pub fn integer(v: &[u64]) -> Element {
        Element::Orthant(v.iter().map(|&x| Ratio::from_integer(x)).collect())
    }

    /// Square-free test with a witness `(b, c)` for `a = 2b + c`.
    pub fn squarefree(&self, a: &Element) -> Verdict {
        let v = Self::vals(a);
        let basis = || Basis::Analytic("orthant decomposition".into());
        if Self::is_interior(v) {
            let third: Vec<Rational> = v.iter().map(|x| x / 3).collect();
            let b = Element::Orthant(third.clone());
            return Verdict::refuted(vec![b.clone(), b], basis());
        }
        if let Some(i) = v.iter().position(|x| *x >= Ratio::from_integer(2)) {
            let mut b = vec![Ratio::from_integer(0); self.rank];
            b[i] = Ratio::from_integer(1);
            let mut c = v.to_vec();
            c[i] -= Ratio::from_integer(2);
            return Verdict::refuted(vec![Element::Orthant(b), Element::Orthant(c)], basis());
        }
        Verdict::proven(basis())
    }
}

impl FamilyOps for LatticeOrthant {
    fn kind(&self) -> FamilyKind {
        FamilyKind::LatticeOrthant
    }

    fn check(&self, a: &Element) -> Result<()> {
        match a {
            Element::Orthant(v) if self.contains(v) => Ok(()),
            Element::Orthant(_) => Err(Error::NotAnElement(a.to_string())),
            _ => Err(Error::FamilyMismatch {
                expected: self.kind(),
                found: a.to_string(),
            }),
        }
    }

    fn identity(&self) -> Element {
        Self::integer(&vec![0; self.rank])
    }

    fn compose(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(Element::Orthant(
            Self::vals(a)
                .iter()
                .zip(Self::vals(b))
                .map(|(x, y)| x + y)
                .collect(),
        ))
    }

    fn quotient(&self, a: &Element, b: &Element) -> Result<Option<Element>> {
        let (a, b) = (Self::vals(a), Self::vals(b));
        if a.iter().zip(b).any(|(x, y)| x > y) {
            return Ok(None);
        }
        let d: Vec<Rational> = b.iter().zip(a).map(|(y, x)| y - x).collect();
        Ok(self.contains(&d).then_some(Element::Orthant(d)))
    }

    fn is_unit(&self, a: &Element) -> bool {
        Self::vals(a).iter().all(|x| *x.numer() == 0)
    }

    fn units(&self) -> Result<Vec<Element>> {
        Ok(vec![self.identity()])
    }

    fn norm(&self, _a: &Element) -> Result<Norm> {
        Err(Error::NonEnumerable {
            family: self.kind(),
        })
    }

    fn divisor_scan(&self, _a: &Element) -> Result<DivisorScan> {
        Err(Error::NonEnumerable {
            family: self.kind(),
        })
    }

    fn enumerate(&self, _bound: Norm) -> Result<Vec<Element>> {
        Err(Error::NonEnumerable {
            family: self.kind(),
        })
    }

    fn parse_element(&self, s: &str) -> Result<Element> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        let v = inner
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Ok(Element::Orthant(v))
    }

    fn rpr(&self, a: &Element, b: &Element) -> Result<Option<Verdict>> {
        let (va, vb) = (Self::vals(a), Self::vals(b));
        if Self::is_interior(va) && Self::is_interior(vb) {
            let half = va.iter().zip(vb).map(|(x, y)| x.min(y) / 2).collect();
            return Ok(Some(Verdict::refuted(
                vec![Element::Orthant(half)],
                Basis::Exact,
            )));
        }
        for i in 0..self.rank {
            let mut e = vec![0; self.rank];
            e[i] = 1;
            let e = Self::integer(&e);
            if self.quotient(&e, a)?.is_some() && self.quotient(&e, b)?.is_some() {
                return Ok(Some(Verdict::refuted(vec![e], Basis::Exact)));
            }
        }
        Ok(Some(Verdict::proven(Basis::Analytic(
            "a common divisor lies above some unit vector".into(),
        ))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Monoid;

    #[test]
    fn carrier() {
        let m = Monoid::orthant(2).unwrap();
        assert!(m.parse_element("(1/2, 3)").is_ok());
        assert!(m.parse_element("(0, 1/2)").is_err());
        assert!(m.parse_element("(0, 2)").is_ok());
    }

    #[test]
    fn squarefree_rule() {
        let o = LatticeOrthant::new(2).unwrap();
        assert!(o.squarefree(&LatticeOrthant::integer(&[1, 0])).holds());
        assert!(o.squarefree(&LatticeOrthant::integer(&[1, 1])).fails());
        assert!(o.squarefree(&LatticeOrthant::integer(&[0, 2])).fails());
        assert!(o.squarefree(&LatticeOrthant::integer(&[0, 0])).holds());
    }
}
