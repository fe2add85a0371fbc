//! Numerical monoids of the form `{0} ∪ extras ∪ [threshold, ∞)`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::kernel::{DivisorScan, Element, FamilyKind, FamilyOps, Norm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedNumerical {
    threshold: u64,
    /// Members below the threshold, always containing 0.
    extras: BTreeSet<u64>,
}

impl ShiftedNumerical {
    /// Validates closure under addition by checking every pair of small
    /// members.
    pub fn new(threshold: u64, extras: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut set: BTreeSet<u64> = extras.into_iter().filter(|&e| e < threshold).collect();
        set.insert(0);
        let m = ShiftedNumerical {
            threshold,
            extras: set,
        };
        let top = 2 * (threshold + m.extras.iter().max().copied().unwrap_or(0));
        let small: Vec<u64> = (0..=top).filter(|&v| m.contains(v)).collect();
        for (i, &x) in small.iter().enumerate() {
            for &y in &small[i..] {
                if !m.contains(x + y) {
                    return Err(Error::spec(
                        "extras",
                        format!("{x} + {y} = {} is not in the carrier", x + y),
                    ));
                }
            }
        }
        Ok(m)
    }

    pub fn contains(&self, v: u64) -> bool {
        v >= self.threshold || self.extras.contains(&v)
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn extras(&self) -> impl Iterator<Item = u64> + '_ {
        self.extras.iter().copied()
    }

    /// Smallest non-zero member.
    pub fn min_nonzero(&self) -> u64 {
        self.extras
            .iter()
            .copied()
            .find(|&e| e > 0)
            .unwrap_or(self.threshold.max(1))
    }

    /// Every element at or above this value is a non-unit square times a
    /// member, hence not square-free.
    pub fn frontier(&self) -> u64 {
        2 * self.min_nonzero() + self.threshold
    }

    /// Elements in `[lo, hi]`.
    pub fn members(&self, lo: u64, hi: u64) -> Vec<u64> {
        (lo..=hi).filter(|&v| self.contains(v)).collect()
    }

    fn val(a: &Element) -> u64 {
        a.as_natural().expect("checked element")
    }
}

impl FamilyOps for ShiftedNumerical {
    fn kind(&self) -> FamilyKind {
        FamilyKind::ShiftedNumerical
    }

    fn check(&self, a: &Element) -> Result<()> {
        match a {
            Element::Natural(v) if self.contains(*v) => Ok(()),
            Element::Natural(_) => Err(Error::NotAnElement(a.to_string())),
            _ => Err(Error::FamilyMismatch {
                expected: self.kind(),
                found: a.to_string(),
            }),
        }
    }

    fn identity(&self) -> Element {
        Element::Natural(0)
    }

    fn compose(&self, a: &Element, b: &Element) -> Result<Element> {
        Self::val(a)
            .checked_add(Self::val(b))
            .map(Element::Natural)
            .ok_or(Error::Overflow)
    }

    fn quotient(&self, a: &Element, b: &Element) -> Result<Option<Element>> {
        Ok(Self::val(b)
            .checked_sub(Self::val(a))
            .filter(|&d| self.contains(d))
            .map(Element::Natural))
    }

    fn is_unit(&self, a: &Element) -> bool {
        Self::val(a) == 0
    }

    fn units(&self) -> Result<Vec<Element>> {
        Ok(vec![Element::Natural(0)])
    }

    fn norm(&self, a: &Element) -> Result<Norm> {
        Ok(Self::val(a))
    }

    fn divisor_scan(&self, a: &Element) -> Result<DivisorScan> {
        let a = Self::val(a);
        Ok(DivisorScan::single(
            (0..=a)
                .filter(|&d| self.contains(d) && self.contains(a - d))
                .map(Element::Natural)
                .collect(),
        ))
    }

    fn enumerate(&self, bound: Norm) -> Result<Vec<Element>> {
        Ok(self
            .members(0, bound)
            .into_iter()
            .map(Element::Natural)
            .collect())
    }

    fn parse_element(&self, s: &str) -> Result<Element> {
        s.parse::<u64>()
            .map(Element::Natural)
            .map_err(|e| Error::parse(0, format!("`{s}`: {e}")))
    }
}
