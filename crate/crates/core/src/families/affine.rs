//! Finitely generated submonoids of `N^n`.

use crate::error::{Error, Result};
use crate::families::vecs;
use crate::kernel::{DivisorScan, Element, FamilyKind, FamilyOps, Norm};

const TABLE_BUDGET: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSubmonoid {
    rank: usize,
    gens: Vec<Vec<u64>>,
}

/// Membership bitmap for the box `[0, upper]`.
#[derive(Clone, Debug)]
pub struct MemberTable {
    upper: Vec<u64>,
    strides: Vec<usize>,
    reach: Vec<bool>,
    via: Vec<u32>,
}

impl MemberTable {
    fn index(&self, v: &[u64]) -> Option<usize> {
        if v.len() != self.upper.len() || !vecs::le(v, &self.upper) {
            return None;
        }
        Some(
            v.iter()
                .zip(&self.strides)
                .map(|(x, s)| *x as usize * s)
                .sum(),
        )
    }

    /// Membership; `false` outside the box.
    pub fn contains(&self, v: &[u64]) -> bool {
        self.index(v).is_some_and(|i| self.reach[i])
    }

    pub fn upper(&self) -> &[u64] {
        &self.upper
    }

    /// Generator multiplicities expressing `v`, if it is a member.
    pub fn witness(&self, v: &[u64], gens: &[Vec<u64>]) -> Option<Vec<u64>> {
        let mut idx = self.index(v)?;
        if !self.reach[idx] {
            return None;
        }
        let mut mult = vec![0u64; gens.len()];
        let mut cur = v.to_vec();
        while self.via[idx] != u32::MAX {
            let g = self.via[idx] as usize;
            mult[g] += 1;
            cur = vecs::sub(&cur, &gens[g]).expect("table consistency");
            idx = self.index(&cur).expect("inside box");
        }
        Some(mult)
    }
}

impl AffineSubmonoid {
    pub fn new(rank: usize, gens: Vec<Vec<u64>>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::spec("rank", "must be at least 1"));
        }
        let mut clean = Vec::new();
        for g in gens {
            if g.len() != rank {
                return Err(Error::spec(
                    "gens",
                    format!("generator of length {} in rank {rank}", g.len()),
                ));
            }
            if g.iter().all(|&x| x == 0) {
                continue;
            }
            if !clean.contains(&g) {
                clean.push(g);
            }
        }
        clean.sort_by_key(|g| (vecs::norm(g), g.clone()));
        Ok(AffineSubmonoid { rank, gens: clean })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.gens
    }

    /// Membership table for the box `[0, upper]`.
    pub fn table(&self, upper: &[u64]) -> Result<MemberTable> {
        let size = vecs::box_size(upper).ok_or(Error::Overflow)?;
        if size > TABLE_BUDGET {
            return Err(Error::TooLarge(format!(
                "membership box of {size} cells exceeds {TABLE_BUDGET}"
            )));
        }
        let n = upper.len();
        let mut strides = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * (upper[i + 1] as usize + 1);
        }
        let size = size as usize;
        let mut reach = vec![false; size];
        let mut via = vec![u32::MAX; size];
        let gen_offsets: Vec<Option<usize>> = self
            .gens
            .iter()
            .map(|g| {
                vecs::le(g, upper)
                    .then(|| g.iter().zip(&strides).map(|(x, s)| *x as usize * s).sum())
            })
            .collect();
        let mut cur = vec![0u64; n];
        for idx in 0..size {
            if idx == 0 {
                reach[0] = true;
            } else {
                for (gi, g) in self.gens.iter().enumerate() {
                    if let Some(off) = gen_offsets[gi] {
                        if vecs::le(g, &cur) && reach[idx - off] {
                            reach[idx] = true;
                            via[idx] = gi as u32;
                            break;
                        }
                    }
                }
            }
            for i in (0..n).rev() {
                if cur[i] < upper[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
            }
        }
        Ok(MemberTable {
            upper: upper.to_vec(),
            strides,
            reach,
            via,
        })
    }

    pub fn contains(&self, v: &[u64]) -> Result<bool> {
        if v.len() != self.rank {
            return Ok(false);
        }
        Ok(self.table(v)?.contains(v))
    }

    /// Multiplicities of generators expressing `v`.
    pub fn membership(&self, v: &[u64]) -> Result<Option<Vec<u64>>> {
        if v.len() != self.rank {
            return Ok(None);
        }
        Ok(self.table(v)?.witness(v, &self.gens))
    }

    /// Generators that are not a sum of two non-zero members.
    pub fn atoms(&self) -> Result<Vec<Vec<u64>>> {
        let mut out = Vec::new();
        for g in &self.gens {
            let t = self.table(g)?;
            let reducible = self.gens.iter().any(|h| {
                vecs::sub(g, h).is_some_and(|d| d.iter().any(|&x| x > 0) && t.contains(&d))
            });
            if !reducible {
                out.push(g.clone());
            }
        }
        Ok(out)
    }

    fn vec<'a>(&self, a: &'a Element) -> &'a [u64] {
        a.as_vector().expect("checked element")
    }
}

impl FamilyOps for AffineSubmonoid {
    fn kind(&self) -> FamilyKind {
        FamilyKind::SubmonoidNn
    }

    fn check(&self, a: &Element) -> Result<()> {
        match a {
            Element::Vector(v) if v.len() == self.rank && self.contains(v)? => Ok(()),
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
        match vecs::sub(self.vec(b), self.vec(a)) {
            Some(d) if self.contains(&d)? => Ok(Some(Element::Vector(d))),
            _ => Ok(None),
        }
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
        let a = self.vec(a);
        let t = self.table(a)?;
        let divs = vecs::box_vectors(a, TABLE_BUDGET)?
            .into_iter()
            .filter(|d| t.contains(d) && t.contains(&vecs::sub(a, d).expect("below")))
            .map(Element::Vector)
            .collect();
        Ok(DivisorScan::single(divs))
    }

    fn enumerate(&self, bound: Norm) -> Result<Vec<Element>> {
        let t = self.table(&vec![bound; self.rank])?;
        Ok(vecs::graded(self.rank, bound)
            .into_iter()
            .filter(|v| t.contains(v))
            .map(Element::Vector)
            .collect())
    }

    fn parse_element(&self, s: &str) -> Result<Element> {
        Ok(Element::Vector(vecs::parse_tuple(s)?))
    }
}
