//! Core monoid abstraction: elements, verdicts and the kernel operations
//! shared by every family.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;

use crate::error::Result;
use crate::families::bpq::LeveledVector;
use crate::families::poly::Poly;
use crate::families::{Family, MonoidSpec};

/// Size measure used to bound searches.
pub type Norm = u64;

/// Non-negative rational number.
pub type Rational = Ratio<u64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    FreeCommutative,
    ShiftedNumerical,
    SubmonoidNn,
    Bpq,
    PolySubring,
    NonnegRationals,
    LatticeOrthant,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::FreeCommutative => "free_commutative",
            FamilyKind::ShiftedNumerical => "shifted_numerical",
            FamilyKind::SubmonoidNn => "submonoid_nn",
            FamilyKind::Bpq => "bpq",
            FamilyKind::PolySubring => "poly_subring",
            FamilyKind::NonnegRationals => "nonneg_rationals",
            FamilyKind::LatticeOrthant => "lattice_orthant",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A monoid element. The variant is determined by the family.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    /// Exponent vector, used by `free_commutative` and `submonoid_nn`.
    Vector(Vec<u64>),
    /// Used by `shifted_numerical`.
    Natural(u64),
    /// Canonical leveled vector of `bpq`.
    Leveled(LeveledVector),
    /// Polynomial of `poly_subring`.
    Poly(Poly),
    /// Used by `nonneg_rationals`.
    Rational(Rational),
    /// Used by `lattice_orthant`.
    Orthant(Vec<Rational>),
}

impl Element {
    pub fn vector(v: impl Into<Vec<u64>>) -> Element {
        Element::Vector(v.into())
    }

    pub fn as_vector(&self) -> Option<&[u64]> {
        match self {
            Element::Vector(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_natural(&self) -> Option<u64> {
        match self {
            Element::Natural(v) => Some(*v),
            _ => None,
        }
    }
}

fn write_ratio(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if *r.denom() == 1 {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vector(v) => {
                f.write_str("(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
            Element::Natural(n) => write!(f, "{n}"),
            Element::Leveled(v) => write!(f, "{v}"),
            Element::Poly(p) => write!(f, "{p}"),
            Element::Rational(r) => write_ratio(f, r),
            Element::Orthant(v) => {
                f.write_str("(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write_ratio(f, x)?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VerdictKind {
    Proven,
    Refuted,
    FoundWitness,
    NotFoundUpTo,
    UnknownUpTo,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VerdictKind::Proven => "Proven",
            VerdictKind::Refuted => "Refuted",
            VerdictKind::FoundWitness => "FoundWitness",
            VerdictKind::NotFoundUpTo => "NotFoundUpTo",
            VerdictKind::UnknownUpTo => "UnknownUpTo",
        };
        f.write_str(s)
    }
}

/// How a verdict was reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Basis {
    /// Decided by a complete finite computation.
    Exact,
    /// Bounded search.
    Search,
    /// Closed-form rule for the family.
    Analytic(String),
    /// Propagated along an implication.
    Inferred(String),
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Exact => f.write_str("exact"),
            Basis::Search => f.write_str("search"),
            Basis::Analytic(s) => write!(f, "analytic: {s}"),
            Basis::Inferred(s) => write!(f, "inferred: {s}"),
        }
    }
}

/// Outcome of a predicate or search.
///
/// `Refuted` and `FoundWitness` always carry a witness; the bounded kinds
/// record the bound they were computed against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub witness: Vec<Element>,
    /// Exponent part of a witness, e.g. `n` in `a | b^n`.
    pub exponent: Option<u64>,
    pub bound: Option<Norm>,
    pub basis: Basis,
    pub note: Option<String>,
}

impl Verdict {
    fn new(kind: VerdictKind, witness: Vec<Element>, bound: Option<Norm>, basis: Basis) -> Self {
        Verdict {
            kind,
            witness,
            exponent: None,
            bound,
            basis,
            note: None,
        }
    }

    pub fn proven(basis: Basis) -> Self {
        Self::new(VerdictKind::Proven, Vec::new(), None, basis)
    }

    pub fn proven_with(witness: Vec<Element>, basis: Basis) -> Self {
        Self::new(VerdictKind::Proven, witness, None, basis)
    }

    pub fn refuted(witness: Vec<Element>, basis: Basis) -> Self {
        debug_assert!(!witness.is_empty(), "refutation without witness");
        Self::new(VerdictKind::Refuted, witness, None, basis)
    }

    pub fn found(witness: Vec<Element>, basis: Basis) -> Self {
        debug_assert!(!witness.is_empty(), "found without witness");
        Self::new(VerdictKind::FoundWitness, witness, None, basis)
    }

    pub fn not_found(bound: Norm) -> Self {
        Self::new(
            VerdictKind::NotFoundUpTo,
            Vec::new(),
            Some(bound),
            Basis::Search,
        )
    }

    pub fn unknown(bound: Norm) -> Self {
        Self::new(
            VerdictKind::UnknownUpTo,
            Vec::new(),
            Some(bound),
            Basis::Search,
        )
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_exponent(mut self, n: u64) -> Self {
        self.exponent = Some(n);
        self
    }

    pub fn with_bound(mut self, bound: Norm) -> Self {
        self.bound = Some(bound);
        self
    }

    /// `Some(true)` for Proven/FoundWitness, `Some(false)` for Refuted.
    pub fn truth(&self) -> Option<bool> {
        match self.kind {
            VerdictKind::Proven | VerdictKind::FoundWitness => Some(true),
            VerdictKind::Refuted => Some(false),
            VerdictKind::NotFoundUpTo | VerdictKind::UnknownUpTo => None,
        }
    }

    pub fn holds(&self) -> bool {
        self.truth() == Some(true)
    }

    pub fn fails(&self) -> bool {
        self.truth() == Some(false)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.kind, VerdictKind::Proven | VerdictKind::Refuted)
    }

    /// Short form: kind, witness, bound.
    pub fn summary(&self) -> String {
        let mut s = self.kind.to_string();
        if !self.witness.is_empty() {
            s.push_str(" [");
            for (i, w) in self.witness.iter().enumerate() {
                if i > 0 {
                    s.push_str(", ");
                }
                s.push_str(&w.to_string());
            }
            s.push(']');
        }
        if let Some(n) = self.exponent {
            s.push_str(&format!(" n={n}"));
        }
        if let Some(b) = self.bound {
            s.push_str(&format!(" bound={b}"));
        }
        s
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary())?;
        if let Some(note) = &self.note {
            write!(f, " ({note})")?;
        }
        Ok(())
    }
}

/// Divisors of an element grouped in search order.
///
/// `complete` is set when the layers contain every divisor in the monoid.
#[derive(Clone, Debug, Default)]
pub struct DivisorScan {
    pub layers: Vec<Vec<Element>>,
    pub complete: bool,
}

impl DivisorScan {
    pub fn single(divs: Vec<Element>) -> Self {
        DivisorScan {
            layers: vec![divs],
            complete: true,
        }
    }

    pub fn all(&self) -> impl Iterator<Item = &Element> {
        self.layers.iter().flatten()
    }
}

/// Per-family primitive operations. Arguments are already validated by
/// [`Monoid`].
pub(crate) trait FamilyOps {
    fn kind(&self) -> FamilyKind;
    fn check(&self, a: &Element) -> Result<()>;
    fn identity(&self) -> Element;
    fn compose(&self, a: &Element, b: &Element) -> Result<Element>;
    /// `Some(c)` with `a * c = b`.
    fn quotient(&self, a: &Element, b: &Element) -> Result<Option<Element>>;
    fn is_unit(&self, a: &Element) -> bool;
    fn units(&self) -> Result<Vec<Element>>;
    fn norm(&self, a: &Element) -> Result<Norm>;
    fn divisor_scan(&self, a: &Element) -> Result<DivisorScan>;
    fn enumerate(&self, bound: Norm) -> Result<Vec<Element>>;
    fn parse_element(&self, s: &str) -> Result<Element>;

    /// Family-specific relative primality; `None` falls back to the
    /// divisor-based check.
    fn rpr(&self, _a: &Element, _b: &Element) -> Result<Option<Verdict>> {
        Ok(None)
    }

    /// Family-specific gcd; `None` falls back to the divisor-based check.
    fn gcd(&self, _a: &Element, _b: &Element) -> Result<Option<Verdict>> {
        Ok(None)
    }
}

/// A concrete commutative cancellative monoid.
#[derive(Clone, Debug)]
pub struct Monoid {
    spec: MonoidSpec,
    family: Family,
}

impl Monoid {
    pub fn new(spec: MonoidSpec) -> Result<Monoid> {
        let family = Family::from_spec(&spec)?;
        Ok(Monoid { spec, family })
    }

    /// Parse a spec stanza and build the monoid.
    pub fn from_text(text: &str) -> Result<Monoid> {
        Monoid::new(crate::families::grammar::parse_spec(text)?)
    }

    pub fn spec(&self) -> &MonoidSpec {
        &self.spec
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn kind(&self) -> FamilyKind {
        self.ops().kind()
    }

    fn ops(&self) -> &dyn FamilyOps {
        self.family.ops()
    }

    /// Whether `enumerate`, `norm` and `divisors` are available.
    pub fn is_enumerable(&self) -> bool {
        !matches!(
            self.kind(),
            FamilyKind::NonnegRationals | FamilyKind::LatticeOrthant
        )
    }

    pub fn check(&self, a: &Element) -> Result<()> {
        self.ops().check(a)
    }

    pub fn identity(&self) -> Element {
        self.ops().identity()
    }

    pub fn parse_element(&self, s: &str) -> Result<Element> {
        let e = self.ops().parse_element(s.trim())?;
        self.check(&e)?;
        Ok(e)
    }

    pub fn compose(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        self.ops().compose(a, b)
    }

    pub fn product<'a>(&self, items: impl IntoIterator<Item = &'a Element>) -> Result<Element> {
        let mut acc = self.identity();
        for x in items {
            acc = self.compose(&acc, x)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, a: &Element, n: u64) -> Result<Element> {
        self.check(a)?;
        let mut acc = self.identity();
        let mut base = a.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.ops().compose(&acc, &base)?;
            }
            n >>= 1;
            if n > 0 {
                base = self.ops().compose(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// `Some(c)` with `a * c = b`, `None` when `a` does not divide `b`.
    pub fn quotient(&self, a: &Element, b: &Element) -> Result<Option<Element>> {
        self.check(a)?;
        self.check(b)?;
        self.ops().quotient(a, b)
    }

    pub fn is_divisor(&self, a: &Element, b: &Element) -> Result<bool> {
        Ok(self.quotient(a, b)?.is_some())
    }

    /// `a | b`. Proven carries the cofactor.
    pub fn divides(&self, a: &Element, b: &Element) -> Result<Verdict> {
        Ok(match self.quotient(a, b)? {
            Some(c) => Verdict::proven_with(vec![c], Basis::Exact),
            None => Verdict::refuted(vec![a.clone(), b.clone()], Basis::Exact),
        })
    }

    pub fn unit(&self, a: &Element) -> Result<bool> {
        self.check(a)?;
        Ok(self.ops().is_unit(a))
    }

    pub fn is_unit(&self, a: &Element) -> Result<Verdict> {
        Ok(if self.unit(a)? {
            Verdict::proven(Basis::Exact)
        } else {
            Verdict::refuted(vec![a.clone()], Basis::Exact)
        })
    }

    pub fn units(&self) -> Result<Vec<Element>> {
        self.ops().units()
    }

    pub fn are_associates(&self, a: &Element, b: &Element) -> Result<bool> {
        Ok(match self.quotient(b, a)? {
            Some(u) => self.ops().is_unit(&u),
            None => false,
        })
    }

    /// `a ~ b`. Proven carries the unit `u` with `a = b u`.
    pub fn associates(&self, a: &Element, b: &Element) -> Result<Verdict> {
        Ok(match self.quotient(b, a)? {
            Some(u) if self.ops().is_unit(&u) => Verdict::proven_with(vec![u], Basis::Exact),
            _ => Verdict::refuted(vec![a.clone(), b.clone()], Basis::Exact),
        })
    }

    pub fn norm(&self, a: &Element) -> Result<Norm> {
        self.check(a)?;
        self.ops().norm(a)
    }

    pub fn divisor_scan(&self, a: &Element) -> Result<DivisorScan> {
        self.check(a)?;
        self.ops().divisor_scan(a)
    }

    /// Divisors of `a` in graded-lex order.
    pub fn divisors(&self, a: &Element) -> Result<Vec<Element>> {
        let scan = self.divisor_scan(a)?;
        let set: BTreeSet<Element> = scan.layers.into_iter().flatten().collect();
        self.sorted(set.into_iter().collect())
    }

    /// Elements of norm at most `bound`, graded-lex.
    pub fn enumerate(&self, bound: Norm) -> Result<Vec<Element>> {
        self.ops().enumerate(bound)
    }

    /// Sort by norm, then payload.
    pub fn sorted(&self, mut v: Vec<Element>) -> Result<Vec<Element>> {
        let mut keyed = Vec::with_capacity(v.len());
        for e in v.drain(..) {
            keyed.push((self.ops().norm(&e)?, e));
        }
        keyed.sort();
        Ok(keyed.into_iter().map(|(_, e)| e).collect())
    }

    /// Relative primality: every common divisor is a unit.
    pub fn rpr(&self, a: &Element, b: &Element) -> Result<Verdict> {
        self.check(a)?;
        self.check(b)?;
        if let Some(v) = self.ops().rpr(a, b)? {
            return Ok(v);
        }
        let da = self.divisor_scan(a)?;
        let db = self.divisor_scan(b)?;
        let sb: BTreeSet<&Element> = db.all().collect();
        let mut common: Vec<Element> = da
            .all()
            .filter(|d| sb.contains(d) && !self.ops().is_unit(d))
            .cloned()
            .collect();
        if !common.is_empty() {
            common = self.sorted(common)?;
            return Ok(Verdict::refuted(vec![common[0].clone()], Basis::Exact));
        }
        if da.complete && db.complete {
            Ok(Verdict::proven(Basis::Exact))
        } else {
            Ok(Verdict::unknown(self.norm(a)?.max(self.norm(b)?)))
        }
    }

    /// Greatest common divisor. Proven carries `[g]`; Refuted carries two
    /// maximal common divisors neither of which divides the other.
    pub fn gcd(&self, a: &Element, b: &Element) -> Result<Verdict> {
        self.check(a)?;
        self.check(b)?;
        if let Some(v) = self.ops().gcd(a, b)? {
            return Ok(v);
        }
        let da = self.divisor_scan(a)?;
        let db = self.divisor_scan(b)?;
        let sb: BTreeSet<&Element> = db.all().collect();
        let common: BTreeSet<Element> = da.all().filter(|d| sb.contains(d)).cloned().collect();
        let common = self.sorted(common.into_iter().collect())?;
        let mut maximal: Vec<&Element> = Vec::new();
        for d in &common {
            let mut dominated = false;
            for e in &common {
                if e != d && self.ops().quotient(d, e)?.is_some() && !self.are_associates(d, e)? {
                    dominated = true;
                    break;
                }
            }
            if !dominated
                && maximal
                    .iter()
                    .all(|m| !self.are_associates(m, d).unwrap_or(false))
            {
                maximal.push(d);
            }
        }
        let complete = da.complete && db.complete;
        match maximal.len() {
            1 if complete => Ok(Verdict::proven_with(vec![maximal[0].clone()], Basis::Exact)),
            n if n >= 2 && complete => Ok(Verdict::refuted(
                vec![maximal[0].clone(), maximal[1].clone()],
                Basis::Exact,
            )),
            _ => Ok(Verdict::unknown(self.norm(a)?.max(self.norm(b)?))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn n2() -> Monoid {
        Monoid::from_text("free_commutative { rank = 2 }").unwrap()
    }

    #[test]
    fn verdict_truth() {
        assert_eq!(Verdict::proven(Basis::Exact).truth(), Some(true));
        assert_eq!(Verdict::unknown(4).truth(), None);
        assert_eq!(Verdict::not_found(4).truth(), None);
        let r = Verdict::refuted(vec![Element::Natural(1)], Basis::Exact);
        assert_eq!(r.truth(), Some(false));
        assert!(r.summary().starts_with("Refuted [1]"));
    }

    #[test]
    fn divides_and_quotient() {
        let m = n2();
        let a = Element::vector([1, 0]);
        let b = Element::vector([2, 1]);
        assert_eq!(m.quotient(&a, &b).unwrap(), Some(Element::vector([1, 1])));
        assert!(m.divides(&b, &a).unwrap().fails());
        assert!(m.divides(&a, &b).unwrap().holds());
    }

    #[test]
    fn pow_matches_repeated_compose() {
        let m = n2();
        let a = Element::vector([1, 2]);
        assert_eq!(m.pow(&a, 3).unwrap(), Element::vector([3, 6]));
        assert_eq!(m.pow(&a, 0).unwrap(), m.identity());
    }

    #[test]
    fn rpr_and_gcd_in_free_monoid() {
        let m = n2();
        let a = Element::vector([1, 0]);
        let b = Element::vector([0, 3]);
        assert!(m.rpr(&a, &b).unwrap().holds());
        let c = Element::vector([2, 1]);
        let g = m.gcd(&c, &Element::vector([1, 3])).unwrap();
        assert_eq!(g.witness, vec![Element::vector([1, 1])]);
    }

    #[test]
    fn family_mismatch_is_reported() {
        let m = n2();
        let err = m.compose(&Element::Natural(2), &Element::vector([0, 0]));
        assert!(matches!(err, Err(Error::FamilyMismatch { .. })));
    }
}
