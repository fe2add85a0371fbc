//! Two suites of equivalent conditions on a submonoid `M ⊂ N^n`.
//!
//! [`AtomCondition`] collects five forms of
//! `a^2 b ∈ M ⇒ a, ab ∈ M`, each phrased through a different square-free
//! factorisation; [`SquarefreeCondition`] collects eight forms of
//! `S(M) ⊂ S(H)`. Within a suite the conditions are equivalent, so a
//! bounded run should refute all of them or none.
//!
//! In `N^n` every element has exactly one factorisation of each shape
//! (up to identity padding), so the tuple spaces are generated from the
//! members `x ∈ M` with norm at most the product bound.

use std::fmt;

use crate::families::vecs;
use crate::kernel::{Basis, Element, Verdict};

use super::{check_transfer, clean, disjoint, is_sf, vector, SubmonoidContext, Transfer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AtomCondition {
    /// `a ∈ H`, `b ∈ S(H)`: `a^2 b ∈ M` ⇒ `a, ab ∈ M`.
    I,
    /// `s_0 s_1^2 ... s_n^{2^n} ∈ M` ⇒ `s_i s_{i+1} s_{i+2}^2 ... ∈ M` and
    /// `s_n ∈ M`.
    Ii,
    /// Pairwise rpr `s_i`: `s_1 s_2^2 ... s_n^n ∈ M` ⇒ every suffix
    /// product `s_k ... s_n ∈ M`.
    Iii,
    /// Chains `s_1 | ... | s_n`: `s_1 ... s_n ∈ M` ⇒ every `s_i ∈ M`.
    Iv,
    /// `b ∈ S(H)`, `a | b^n`: `ab ∈ M` ⇒ `a, b ∈ M`.
    V,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SquarefreeCondition {
    /// `S(M) ⊂ S(H)`.
    I,
    /// `A(M) ⊂ S(H)` and `a rpr_M b ⇒ a rpr_H b` on members.
    Ii,
    /// `A(M) ⊂ S(H)` and distinct atoms are rpr in `H`.
    Iii,
    /// `M` is free on pairwise rpr square-free elements of `H`.
    Iv,
    /// Pairwise rpr `s_i`: `s_1 s_2^2 ... s_n^n ∈ M` ⇒ every `s_i ∈ M`.
    V,
    /// `q_1^{k_1} ... q_n^{k_n} ∈ M` ⇒ each binary-digit product
    /// `q_1^{c_i^(1)} ... q_n^{c_i^(n)} ∈ M`.
    Vi,
    /// `s_n^{2^n} ... s_1^2 s_0 ∈ M` ⇒ every `s_i ∈ M`.
    Vii,
    /// `a ∈ H`, `b ∈ S(H)`: `a^2 b ∈ M` ⇒ `a, b ∈ M`.
    Viii,
}

const ROMAN: [&str; 8] = ["i", "ii", "iii", "iv", "v", "vi", "vii", "viii"];

impl AtomCondition {
    pub const ALL: [AtomCondition; 5] = [
        AtomCondition::I,
        AtomCondition::Ii,
        AtomCondition::Iii,
        AtomCondition::Iv,
        AtomCondition::V,
    ];

    pub fn label(self) -> &'static str {
        ROMAN[self as usize]
    }
}

impl SquarefreeCondition {
    pub const ALL: [SquarefreeCondition; 8] = [
        SquarefreeCondition::I,
        SquarefreeCondition::Ii,
        SquarefreeCondition::Iii,
        SquarefreeCondition::Iv,
        SquarefreeCondition::V,
        SquarefreeCondition::Vi,
        SquarefreeCondition::Vii,
        SquarefreeCondition::Viii,
    ];

    pub fn label(self) -> &'static str {
        ROMAN[self as usize]
    }
}

impl fmt::Display for AtomCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.label())
    }
}

impl fmt::Display for SquarefreeCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.label())
    }
}

fn indicator(x: &[u64], f: impl Fn(u64) -> bool) -> Vec<u64> {
    x.iter().map(|&k| u64::from(f(k))).collect()
}

/// `s_0, ..., s_r`: the binary digits of the exponents.
fn binary_digits(x: &[u64]) -> Vec<Vec<u64>> {
    let top = x.iter().copied().max().unwrap_or(0);
    let bits = (64 - top.leading_zeros()).max(1);
    (0..bits)
        .map(|i| indicator(x, |k| (k >> i) & 1 == 1))
        .collect()
}

/// `s_1, ..., s_n` with `s_l` the exponents equal to `l`.
fn level_sets(x: &[u64]) -> Vec<Vec<u64>> {
    let top = x.iter().copied().max().unwrap_or(0).max(1);
    (1..=top).map(|l| indicator(x, |k| k == l)).collect()
}

/// `s_1 | ... | s_n` with `s_i` the exponents at least `n + 1 - i`.
fn chain(x: &[u64]) -> Vec<Vec<u64>> {
    let top = x.iter().copied().max().unwrap_or(0).max(1);
    (1..=top).map(|i| indicator(x, |k| k > top - i)).collect()
}

fn sum(parts: &[&[u64]], weights: &[u64]) -> Vec<u64> {
    let n = parts.first().map_or(0, |p| p.len());
    let mut out = vec![0u64; n];
    for (p, w) in parts.iter().zip(weights) {
        for (o, x) in out.iter_mut().zip(p.iter()) {
            *o += w * x;
        }
    }
    out
}

fn elems(v: &[Vec<u64>]) -> Vec<Element> {
    v.iter().map(|x| vector(x)).collect()
}

/// Loop over members `x` with norm at most the product bound; `check`
/// returns the tuple and the first required element missing from `M`.
fn per_member(
    ctx: &SubmonoidContext,
    check: impl Fn(&[u64]) -> Option<(Vec<Vec<u64>>, Vec<u64>)>,
) -> Verdict {
    let members = ctx.members(ctx.product_bound);
    for x in &members {
        if let Some((tuple, missing)) = check(x) {
            return Verdict::refuted(elems(&tuple), Basis::Exact).with_note(format!(
                "product {} in M but {} is not",
                vector(x),
                vector(&missing)
            ));
        }
    }
    clean(ctx.product_bound, members.len())
}

fn first_missing(ctx: &SubmonoidContext, required: Vec<Vec<u64>>) -> Option<Vec<u64>> {
    required.into_iter().find(|r| !ctx.contains(r))
}

pub fn atom_transfer_condition(ctx: &SubmonoidContext, c: AtomCondition) -> Verdict {
    match c {
        AtomCondition::I => check_transfer(ctx, Transfer::SquareRoots),
        AtomCondition::Ii => per_member(ctx, |x| {
            let s = binary_digits(x);
            let n = s.len() - 1;
            let mut req = Vec::new();
            for i in 0..n {
                let parts: Vec<&[u64]> = s[i..].iter().map(|v| v.as_slice()).collect();
                let mut w = vec![1u64, 1];
                w.extend((0..n.saturating_sub(i + 1)).map(|k| 1u64 << (k + 1)));
                req.push(sum(&parts, &w));
            }
            req.push(s[n].clone());
            first_missing(ctx, req).map(|m| (s, m))
        }),
        AtomCondition::Iii => per_member(ctx, |x| {
            let s = level_sets(x);
            let req: Vec<Vec<u64>> = (0..s.len())
                .rev()
                .map(|k| {
                    let parts: Vec<&[u64]> = s[k..].iter().map(|v| v.as_slice()).collect();
                    sum(&parts, &vec![1; parts.len()])
                })
                .collect();
            first_missing(ctx, req).map(|m| (s, m))
        }),
        AtomCondition::Iv => per_member(ctx, |x| {
            let s = chain(x);
            first_missing(ctx, s.clone()).map(|m| (s, m))
        }),
        AtomCondition::V => per_member(ctx, |x| {
            let b = indicator(x, |k| k > 0);
            let a = vecs::sub(x, &b).expect("support");
            first_missing(ctx, vec![a.clone(), b.clone()]).map(|m| (vec![a, b], m))
        }),
    }
}

pub fn squarefree_transfer_condition(ctx: &SubmonoidContext, c: SquarefreeCondition) -> Verdict {
    let atoms = ctx.atoms();
    let bad_atom = atoms.iter().find(|a| !is_sf(a)).cloned();
    let overlap = || {
        for (i, a) in atoms.iter().enumerate() {
            for b in &atoms[i + 1..] {
                if !disjoint(a, b) {
                    return Some((a.clone(), b.clone()));
                }
            }
        }
        None
    };
    match c {
        SquarefreeCondition::I => check_transfer(ctx, Transfer::SquarefreeSquarefree),
        SquarefreeCondition::Ii => {
            if let Some(a) = bad_atom {
                return Verdict::refuted(vec![vector(&a)], Basis::Exact)
                    .with_note("atom of M not square-free in H");
            }
            let members = ctx.members(ctx.element_bound);
            let mut count = 0;
            for (i, a) in members.iter().enumerate() {
                for b in &members[i..] {
                    count += 1;
                    if !disjoint(a, b) && ctx.m_common_divisor(a, b).is_none() {
                        return Verdict::refuted(vec![vector(a), vector(b)], Basis::Exact)
                            .with_note("rpr in M but not in H");
                    }
                }
            }
            clean(ctx.element_bound, count)
        }
        SquarefreeCondition::Iii | SquarefreeCondition::Iv => {
            if let Some(a) = bad_atom {
                return Verdict::refuted(vec![vector(&a)], Basis::Exact)
                    .with_note("atom of M not square-free in H");
            }
            if let Some((a, b)) = overlap() {
                return Verdict::refuted(vec![vector(&a), vector(&b)], Basis::Exact)
                    .with_note("distinct atoms share a coordinate");
            }
            if c == SquarefreeCondition::Iii {
                return Verdict::proven_with(elems(&atoms), Basis::Exact);
            }
            // Atoms are disjoint 0/1 vectors: membership in the free monoid
            // they generate is constancy on each support.
            let in_free = |x: &[u64]| {
                let covered = |j: usize| atoms.iter().any(|a| a[j] == 1);
                (0..x.len()).all(|j| x[j] == 0 || covered(j))
                    && atoms.iter().all(|a| {
                        let vals: Vec<u64> =
                            (0..x.len()).filter(|&j| a[j] == 1).map(|j| x[j]).collect();
                        vals.windows(2).all(|w| w[0] == w[1])
                    })
            };
            for x in ctx.ball(ctx.product_bound) {
                if in_free(&x) != ctx.contains(&x) {
                    return Verdict::refuted(vec![vector(&x)], Basis::Exact)
                        .with_note("membership differs from the free monoid on the atoms");
                }
            }
            Verdict::proven_with(elems(&atoms), Basis::Exact)
                .with_note("free on pairwise disjoint 0/1 atoms")
        }
        SquarefreeCondition::V => per_member(ctx, |x| {
            let s = level_sets(x);
            first_missing(ctx, s.clone()).map(|m| (s, m))
        }),
        SquarefreeCondition::Vi => per_member(ctx, |x| {
            // Exponents over the atoms e_j of H that occur in x.
            let support: Vec<usize> = (0..x.len()).filter(|&j| x[j] > 0).collect();
            let top = support.iter().map(|&j| x[j]).max().unwrap_or(0);
            let bits = (64 - top.leading_zeros()).max(1);
            let digits: Vec<Vec<u64>> = (0..bits)
                .map(|i| {
                    let mut v = vec![0u64; x.len()];
                    for &j in &support {
                        v[j] = (x[j] >> i) & 1;
                    }
                    v
                })
                .collect();
            first_missing(ctx, digits.clone()).map(|m| (digits, m))
        }),
        SquarefreeCondition::Vii => per_member(ctx, |x| {
            let s = binary_digits(x);
            first_missing(ctx, s.clone()).map(|m| (s, m))
        }),
        SquarefreeCondition::Viii => check_transfer(ctx, Transfer::SquareSplits),
    }
}

/// Verdicts of a suite and whether they agree.
#[derive(Clone, Debug)]
pub struct ConditionReport {
    pub verdicts: Vec<(&'static str, Verdict)>,
    /// All refuted or none refuted.
    pub consistent: bool,
    /// Further implications checked alongside; `(label, holds)`.
    pub side_checks: Vec<(&'static str, bool)>,
}

impl ConditionReport {
    fn new(verdicts: Vec<(&'static str, Verdict)>) -> Self {
        let refuted = verdicts.iter().filter(|(_, v)| v.fails()).count();
        ConditionReport {
            consistent: refuted == 0 || refuted == verdicts.len(),
            verdicts,
            side_checks: Vec::new(),
        }
    }

    pub fn refuted(&self) -> usize {
        self.verdicts.iter().filter(|(_, v)| v.fails()).count()
    }

    pub fn passed(&self) -> bool {
        self.consistent && self.side_checks.iter().all(|(_, ok)| *ok)
    }
}

/// The five forms of `a^2 b ∈ M ⇒ a, ab ∈ M`, plus the check that a clean
/// run of the first implies `A(M) ⊂ S(H)`.
pub fn atom_transfer_report(ctx: &SubmonoidContext) -> ConditionReport {
    let mut r = ConditionReport::new(
        AtomCondition::ALL
            .iter()
            .map(|&c| (c.label(), atom_transfer_condition(ctx, c)))
            .collect(),
    );
    let first_clean = !r.verdicts[0].1.fails();
    let atoms_sf = check_transfer(ctx, Transfer::AtomsSquarefree).holds();
    r.side_checks
        .push(("clean (i) implies A(M) in S(H)", !first_clean || atoms_sf));
    r
}

/// The eight forms of `S(M) ⊂ S(H)`, plus `S(M) ⊂ S(H) ⇒ A(M) ⊂ S(H)` and
/// agreement with the square-split property.
pub fn squarefree_transfer_report(ctx: &SubmonoidContext) -> ConditionReport {
    let mut r = ConditionReport::new(
        SquarefreeCondition::ALL
            .iter()
            .map(|&c| (c.label(), squarefree_transfer_condition(ctx, c)))
            .collect(),
    );
    let sm = check_transfer(ctx, Transfer::SquarefreeSquarefree);
    let am = check_transfer(ctx, Transfer::AtomsSquarefree);
    r.side_checks.push((
        "S(M) in S(H) implies A(M) in S(H)",
        sm.fails() || am.holds(),
    ));
    r
}
