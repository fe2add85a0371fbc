//! The free commutative monoid `N^n`.

use crate::error::{Error, Result};
use crate::families::vecs;
use crate::kernel::{Basis, DivisorScan, Element, FamilyKind, FamilyOps, Norm, Verdict};

const DIVISOR_BUDGET: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeCommutative {
    rank: usize,
}

impl FreeCommutative {
    pub fn new(rank: usize) -> Self {
        FreeCommutative { rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn vec<'a>(&self, a: &'a Element) -> &'a [u64] {
        a.as_vector().expect("checked element")
    }
}

impl FamilyOps for FreeCommutative {
    fn kind(&self) -> FamilyKind {
        FamilyKind::FreeCommutative
    }

    fn check(&self, a: &Element) -> Result<()> {
        match a {
            Element::Vector(v) if v.len() == self.rank => Ok(()),
            Element::Vector(_) => Err(Error::NotAnElement(a.to_string())),
            _ => Err(Error::FamilyMismatch {
                expected: self.kind(),
                found: a.to_string(),
            }),
        }
    }

    fn identity(&self) -> Element {
        Element::Vector(vec![0; self.rank])
    }

    fn compose(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(Element::Vector(vecs::add(self.vec(a), self.vec(b))?))
    }

    fn quotient(&self, a: &Element, b: &Element) -> Result<Option<Element>> {
        Ok(vecs::sub(self.vec(b), self.vec(a)).map(Element::Vector))
    }

    fn is_unit(&self, a: &Element) -> bool {
        self.vec(a).iter().all(|&x| x == 0)
    }

    fn units(&self) -> Result<Vec<Element>> {
        Ok(vec![self.identity()])
    }

    fn norm(&self, a: &Element) -> Result<Norm> {
        Ok(vecs::norm(self.vec(a)))
    }

    fn divisor_scan(&self, a: &Element) -> Result<DivisorScan> {
        let divs = vecs::box_vectors(self.vec(a), DIVISOR_BUDGET)?;
        Ok(DivisorScan::single(
            divs.into_iter().map(Element::Vector).collect(),
        ))
    }

    fn enumerate(&self, bound: Norm) -> Result<Vec<Element>> {
        Ok(vecs::graded(self.rank, bound)
            .into_iter()
            .map(Element::Vector)
            .collect())
    }

    fn parse_element(&self, s: &str) -> Result<Element> {
        Ok(Element::Vector(vecs::parse_tuple(s)?))
    }

    fn rpr(&self, a: &Element, b: &Element) -> Result<Option<Verdict>> {
        let (a, b) = (self.vec(a), self.vec(b));
        Ok(Some(
            match a.iter().zip(b).position(|(x, y)| *x > 0 && *y > 0) {
                None => Verdict::proven(Basis::Exact),
                Some(i) => {
                    let mut e = vec![0; self.rank];
                    e[i] = 1;
                    Verdict::refuted(vec![Element::Vector(e)], Basis::Exact)
                }
            },
        ))
    }

    fn gcd(&self, a: &Element, b: &Element) -> Result<Option<Verdict>> {
        let g: Vec<u64> = self
            .vec(a)
            .iter()
            .zip(self.vec(b))
            .map(|(x, y)| *x.min(y))
            .collect();
        Ok(Some(Verdict::proven_with(
            vec![Element::Vector(g)],
            Basis::Exact,
        )))
    }
}
