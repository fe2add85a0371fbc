//! Submonoids `M` of a free commutative monoid `H = N^n`: membership,
//! atoms, and the square-free transfer properties between `M` and `H`.
//!
//! `H` is reduced, so `M^× = H^×` holds for every submonoid. Square-free
//! elements of `H` are the 0/1 vectors, and `a rpr b` in `H` means
//! disjoint supports.

mod conditions;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::families::{vecs, AffineSubmonoid, MemberTable, MonoidSpec};
use crate::kernel::{Basis, Element, Norm, Verdict};

pub use conditions::{
    atom_transfer_condition, atom_transfer_report, squarefree_transfer_condition,
    squarefree_transfer_report, AtomCondition, ConditionReport, SquarefreeCondition,
};

/// Default bound on the norm of quantified elements of `H`; products are
/// bounded by three times this.
pub const ELEMENT_BOUND: Norm = 6;

/// A submonoid of `N^rank` with the bounds used by the exhaustive checks.
#[derive(Clone, Debug)]
pub struct SubmonoidContext {
    m: AffineSubmonoid,
    table: MemberTable,
    /// Norm bound on quantified elements of `H`.
    pub element_bound: Norm,
    /// Norm bound on products formed from them.
    pub product_bound: Norm,
}

pub(crate) fn vector(v: &[u64]) -> Element {
    Element::Vector(v.to_vec())
}

pub(crate) fn is_sf(v: &[u64]) -> bool {
    v.iter().all(|&x| x <= 1)
}

pub(crate) fn disjoint(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

impl SubmonoidContext {
    /// Context with element bound `e` and product bound `3e`.
    pub fn new(rank: usize, gens: Vec<Vec<u64>>, e: Norm) -> Result<Self> {
        Self::with_bounds(rank, gens, e, 3 * e)
    }

    pub fn with_bounds(rank: usize, gens: Vec<Vec<u64>>, e: Norm, p: Norm) -> Result<Self> {
        let m = AffineSubmonoid::new(rank, gens)?;
        let table = m.table(&vec![p; rank])?;
        Ok(SubmonoidContext {
            m,
            table,
            element_bound: e,
            product_bound: p,
        })
    }

    /// From a `submonoid_nn` spec.
    pub fn from_spec(spec: &MonoidSpec, e: Norm) -> Result<Self> {
        match spec {
            MonoidSpec::SubmonoidNn { rank, gens } => Self::new(*rank, gens.clone(), e),
            _ => Err(Error::spec("family", "expected submonoid_nn")),
        }
    }

    pub fn rank(&self) -> usize {
        self.m.rank()
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        self.m.generators()
    }

    pub fn spec(&self) -> MonoidSpec {
        MonoidSpec::SubmonoidNn {
            rank: self.rank(),
            gens: self.generators().to_vec(),
        }
    }

    /// `v ∈ M`, exact for every `v`.
    pub fn contains(&self, v: &[u64]) -> bool {
        if v.len() != self.rank() {
            return false;
        }
        if vecs::le(v, self.table.upper()) {
            self.table.contains(v)
        } else {
            self.m.contains(v).unwrap_or(false)
        }
    }

    /// `h ∈ M`. Proven carries the generator multiplicities as a vector.
    pub fn membership(&self, h: &Element) -> Result<Verdict> {
        let v = h
            .as_vector()
            .filter(|v| v.len() == self.rank())
            .ok_or_else(|| Error::NotAnElement(h.to_string()))?;
        Ok(match self.m.membership(v)? {
            Some(mult) => Verdict::proven_with(vec![Element::Vector(mult)], Basis::Exact),
            None => Verdict::refuted(vec![h.clone()], Basis::Exact),
        })
    }

    /// `A(M)`; exact, since every atom is a generator.
    pub fn atoms(&self) -> Vec<Vec<u64>> {
        self.m.atoms().expect("generators fit their own box")
    }

    pub fn atoms_of_m(&self) -> Vec<Element> {
        self.atoms().iter().map(|a| vector(a)).collect()
    }

    /// Vectors of `H` with norm at most `bound`, graded-lex.
    pub(crate) fn ball(&self, bound: Norm) -> Vec<Vec<u64>> {
        vecs::graded(self.rank(), bound)
    }

    /// Members of `M` with norm at most `bound`, graded-lex.
    pub(crate) fn members(&self, bound: Norm) -> Vec<Vec<u64>> {
        self.ball(bound)
            .into_iter()
            .filter(|v| self.contains(v))
            .collect()
    }

    /// `v` is square-free in `M`: no non-zero `u ∈ M` with `v - 2u ∈ M`.
    /// Refutation returns `u`.
    pub(crate) fn m_square_part(&self, v: &[u64]) -> Option<Vec<u64>> {
        let half: Vec<u64> = v.iter().map(|x| x / 2).collect();
        vecs::box_vectors(&half, u64::MAX)
            .expect("small box")
            .into_iter()
            .filter(|u| u.iter().any(|&x| x > 0) && self.contains(u))
            .find(|u| {
                let two: Vec<u64> = u.iter().map(|x| 2 * x).collect();
                vecs::sub(v, &two).is_some_and(|w| self.contains(&w))
            })
    }

    /// A common non-zero divisor in `M` of two members.
    pub(crate) fn m_common_divisor(&self, a: &[u64], b: &[u64]) -> Option<Vec<u64>> {
        let lo: Vec<u64> = a.iter().zip(b).map(|(x, y)| *x.min(y)).collect();
        vecs::box_vectors(&lo, u64::MAX)
            .expect("small box")
            .into_iter()
            .filter(|d| d.iter().any(|&x| x > 0) && self.contains(d))
            .find(|d| {
                vecs::sub(a, d).is_some_and(|w| self.contains(&w))
                    && vecs::sub(b, d).is_some_and(|w| self.contains(&w))
            })
    }
}

/// The four transfer properties between `M` and `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Transfer {
    /// `A(M) ⊂ S(H)`.
    AtomsSquarefree,
    /// `S(M) ⊂ S(H)`.
    SquarefreeSquarefree,
    /// `a ∈ H`, `b ∈ S(H)`, `a^2 b ∈ M` ⇒ `a, b ∈ M`.
    SquareSplits,
    /// `a ∈ H`, `b ∈ S(H)`, `a^2 b ∈ M` ⇒ `a, ab ∈ M`.
    SquareRoots,
}

impl Transfer {
    pub const ALL: [Transfer; 4] = [
        Transfer::AtomsSquarefree,
        Transfer::SquarefreeSquarefree,
        Transfer::SquareSplits,
        Transfer::SquareRoots,
    ];

    /// Command-line token.
    pub fn token(self) -> &'static str {
        match self {
            Transfer::AtomsSquarefree => "1.1",
            Transfer::SquarefreeSquarefree => "1.2",
            Transfer::SquareSplits => "1.3",
            Transfer::SquareRoots => "1.4",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Transfer::AtomsSquarefree => "A(M) in S(H)",
            Transfer::SquarefreeSquarefree => "S(M) in S(H)",
            Transfer::SquareSplits => "a^2 b in M => a, b in M",
            Transfer::SquareRoots => "a^2 b in M => a, ab in M",
        }
    }
}

impl fmt::Display for Transfer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Transfer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Transfer::ALL
            .into_iter()
            .find(|t| t.token() == s.trim())
            .ok_or_else(|| Error::parse(0, format!("unknown transfer property `{s}`")))
    }
}

/// Pass verdict for a bounded universal check.
pub(crate) fn clean(bound: Norm, count: usize) -> Verdict {
    Verdict::unknown(bound).with_note(format!("no violation among {count} instances"))
}

/// Check one transfer property.
///
/// `A(M)` is finite and `S(M)` within the product bound is computed
/// exactly, so clean passes of the first two are reported as Proven with
/// the bound attached. The other two stay bounded.
pub fn check_transfer(ctx: &SubmonoidContext, t: Transfer) -> Verdict {
    match t {
        Transfer::AtomsSquarefree => {
            let atoms = ctx.atoms();
            match atoms.iter().find(|a| !is_sf(a)) {
                Some(a) => Verdict::refuted(vec![vector(a)], Basis::Exact)
                    .with_note("atom of M with a square factor in H"),
                None => Verdict::proven_with(ctx.atoms_of_m(), Basis::Exact)
                    .with_note("every atom of M is a 0/1 vector"),
            }
        }
        Transfer::SquarefreeSquarefree => {
            let p = ctx.product_bound;
            for v in ctx.members(p) {
                if !is_sf(&v) && ctx.m_square_part(&v).is_none() {
                    return Verdict::refuted(vec![vector(&v)], Basis::Exact)
                        .with_note("square-free in M but not in H");
                }
            }
            Verdict::proven(Basis::Exact)
                .with_bound(p)
                .with_note("within the product bound")
        }
        Transfer::SquareSplits => {
            atom_transfer_like(ctx, |a, b, _ab| ctx.contains(a) && ctx.contains(b))
        }
        Transfer::SquareRoots => {
            atom_transfer_like(ctx, |a, _b, ab| ctx.contains(a) && ctx.contains(ab))
        }
    }
}

/// Shared loop over members `x = a^2 b` with `b ∈ S(H)`. In `N^n` the
/// pair is unique: `a = ⌊x/2⌋`, `b = x mod 2`.
pub(crate) fn atom_transfer_like(
    ctx: &SubmonoidContext,
    ok: impl Fn(&[u64], &[u64], &[u64]) -> bool,
) -> Verdict {
    let members = ctx.members(ctx.product_bound);
    for x in &members {
        let a: Vec<u64> = x.iter().map(|k| k / 2).collect();
        let b: Vec<u64> = x.iter().map(|k| k % 2).collect();
        let ab = vecs::add(&a, &b).expect("small");
        if !ok(&a, &b, &ab) {
            return Verdict::refuted(vec![vector(&a), vector(&b)], Basis::Exact)
                .with_note(format!("a^2 b = {} in M", vector(x)));
        }
    }
    clean(ctx.product_bound, members.len())
}

/// Root-, quotient- and divisor-closure of `M` in `H`.
#[derive(Clone, Debug)]
pub struct Closures {
    /// `a^n ∈ M` ⇒ `a ∈ M`. Refuted carries `a` and the exponent.
    pub root_closed: Verdict,
    /// `q(M) ∩ H = M`. Refuted carries `h, m1, m2` with `h + m2 = m1`.
    pub quotient_closed: Verdict,
    /// `ab ∈ M` ⇒ `a, b ∈ M`. Refuted carries `a, b`.
    pub divisor_closed: Verdict,
    /// `s_1 ... s_n ∈ M` with square-free `s_i` ⇒ every `s_i ∈ M`.
    pub divisor_closed_squarefree: Verdict,
}

impl Closures {
    /// The two divisor-closure forms agree.
    pub fn divisor_forms_agree(&self) -> bool {
        self.divisor_closed.fails() == self.divisor_closed_squarefree.fails()
    }
}

pub fn closure_checks(ctx: &SubmonoidContext) -> Closures {
    let e = ctx.element_bound;
    let p = ctx.product_bound;

    let mut root = None;
    let mut count = 0;
    'root: for a in ctx.ball(e) {
        if ctx.contains(&a) || a.iter().all(|&x| x == 0) {
            continue;
        }
        let mut pw = a.clone();
        for n in 2.. {
            pw = vecs::add(&pw, &a).expect("small");
            if vecs::norm(&pw) > p {
                break;
            }
            count += 1;
            if ctx.contains(&pw) {
                root = Some(Verdict::refuted(vec![vector(&a)], Basis::Exact).with_exponent(n));
                break 'root;
            }
        }
    }
    let root_closed = root.unwrap_or_else(|| clean(p, count));

    let members = ctx.members(p);
    let mut quotient = None;
    let mut count = 0;
    'q: for h in ctx.ball(e) {
        if ctx.contains(&h) {
            continue;
        }
        for m2 in &members {
            let m1 = vecs::add(&h, m2).expect("small");
            if vecs::norm(&m1) > p {
                continue;
            }
            count += 1;
            if ctx.contains(&m1) {
                quotient = Some(
                    Verdict::refuted(vec![vector(&h), vector(&m1), vector(m2)], Basis::Exact)
                        .with_note("h = m1 - m2 lies outside M"),
                );
                break 'q;
            }
        }
    }
    let quotient_closed = quotient.unwrap_or_else(|| clean(p, count));

    let mut div = None;
    let mut div_sf = None;
    let mut count = 0;
    for x in ctx.members(e) {
        let divisors = vecs::box_vectors(&x, u64::MAX).expect("small box");
        if div.is_none() {
            for a in &divisors {
                count += 1;
                let b = vecs::sub(&x, a).expect("divisor");
                if !ctx.contains(a) || !ctx.contains(&b) {
                    div = Some(Verdict::refuted(vec![vector(a), vector(&b)], Basis::Exact));
                    break;
                }
            }
        }
        if div_sf.is_none() {
            // A square-free split containing a non-member part exists iff
            // some 0/1 vector below x is not in M.
            if let Some(s) = divisors.iter().find(|v| is_sf(v) && !ctx.contains(v)) {
                let mut parts = vec![vector(s)];
                let mut rest = vecs::sub(&x, s).expect("divisor");
                while rest.iter().any(|&c| c > 0) {
                    let t: Vec<u64> = rest.iter().map(|&c| u64::from(c > 0)).collect();
                    rest = vecs::sub(&rest, &t).expect("support");
                    parts.push(vector(&t));
                }
                div_sf = Some(
                    Verdict::refuted(parts, Basis::Exact)
                        .with_note(format!("square-free parts of {}", vector(&x))),
                );
            }
        }
        if div.is_some() && div_sf.is_some() {
            break;
        }
    }
    Closures {
        root_closed,
        quotient_closed,
        divisor_closed: div.unwrap_or_else(|| clean(e, count)),
        divisor_closed_squarefree: div_sf.unwrap_or_else(|| clean(e, count)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex() -> SubmonoidContext {
        SubmonoidContext::new(3, vec![vec![1, 1, 0], vec![1, 0, 1]], ELEMENT_BOUND).unwrap()
    }

    #[test]
    fn membership_and_atoms() {
        let c = ex();
        let v = c.membership(&Element::vector([2, 1, 1])).unwrap();
        assert!(v.holds());
        assert_eq!(v.witness, vec![Element::vector([1, 1])]);
        assert!(c.membership(&Element::vector([1, 0, 0])).unwrap().fails());
        assert!(c.membership(&Element::vector([0, 0, 0])).unwrap().holds());
        assert_eq!(c.atoms(), vec![vec![1, 0, 1], vec![1, 1, 0]]);
        let n = SubmonoidContext::new(2, vec![vec![2, 0], vec![3, 0]], 6).unwrap();
        assert_eq!(n.atoms(), vec![vec![2, 0], vec![3, 0]]);
    }

    #[test]
    fn separating_example() {
        let c = ex();
        assert!(check_transfer(&c, Transfer::AtomsSquarefree).holds());
        let v = check_transfer(&c, Transfer::SquareRoots);
        assert!(v.fails());
        assert_eq!(
            v.witness,
            vec![Element::vector([1, 0, 0]), Element::vector([0, 1, 1])]
        );
        let cl = closure_checks(&c);
        assert!(!cl.quotient_closed.fails());
    }

    #[test]
    fn whole_monoid_passes_everything() {
        let c = SubmonoidContext::new(2, vec![vec![1, 0], vec![0, 1]], 6).unwrap();
        for t in Transfer::ALL {
            assert!(!check_transfer(&c, t).fails(), "{t}");
        }
        let cl = closure_checks(&c);
        assert!(!cl.root_closed.fails() && !cl.quotient_closed.fails());
        assert!(!cl.divisor_closed.fails() && !cl.divisor_closed_squarefree.fails());
    }

    #[test]
    fn even_multiples_are_not_root_closed() {
        let c = SubmonoidContext::new(2, vec![vec![2, 0]], 6).unwrap();
        let cl = closure_checks(&c);
        assert_eq!(cl.root_closed.witness, vec![Element::vector([1, 0])]);
        assert_eq!(cl.root_closed.exponent, Some(2));
        assert!(cl.divisor_closed.fails() && cl.divisor_closed_squarefree.fails());
    }
}
