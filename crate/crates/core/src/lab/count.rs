//! Counting square-free elements, and monoids with a prescribed count.

use crate::error::{Error, Result};
use crate::families::{Family, LatticeOrthant, MonoidSpec};
use crate::kernel::{Basis, Element, Monoid, Norm};
use crate::predicates::{atoms, effective_bound, is_squarefree};

/// Square-free elements of a monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeCount {
    /// Exact count, when the set is known to be finite and complete.
    pub count: Option<usize>,
    /// The square-free elements found, in enumeration order.
    pub set: Vec<Element>,
    /// Norm bound of the enumeration; `None` for closed-form answers.
    pub bound: Option<Norm>,
    pub basis: Basis,
}

impl SquarefreeCount {
    fn exact(set: Vec<Element>, basis: Basis) -> Self {
        SquarefreeCount {
            count: Some(set.len()),
            set,
            bound: None,
            basis,
        }
    }

    /// `count=n` or `count>=n (bound b)`.
    pub fn render(&self) -> String {
        match (self.count, self.bound) {
            (Some(n), _) => format!("count={n}"),
            (None, Some(b)) => format!("count>={} (bound {b})", self.set.len()),
            (None, None) => format!("count>={}", self.set.len()),
        }
    }
}

/// Count the square-free elements of `m`.
///
/// Numerical monoids `{0} ∪ extras ∪ [t, ∞)` are exact: every element at
/// or above `2 min + t` is a square times a member, and the run checks one
/// further window of length `min` past that frontier. `N^r`, `Q≥0` and the
/// orthant family have closed forms. Other families report the elements
/// within `bound`.
pub fn count_squarefree(m: &Monoid, bound: Norm) -> Result<SquarefreeCount> {
    match m.family() {
        Family::Shifted(s) => {
            let frontier = s.frontier();
            let mut set = Vec::new();
            for v in s.members(0, frontier - 1) {
                let a = Element::Natural(v);
                if is_squarefree(m, &a)?.holds() {
                    set.push(a);
                }
            }
            for v in s.members(frontier, frontier + s.min_nonzero()) {
                if !is_squarefree(m, &Element::Natural(v))?.fails() {
                    return Err(Error::Invalid(format!(
                        "square-free element {v} past the frontier {frontier}"
                    )));
                }
            }
            Ok(SquarefreeCount::exact(
                set,
                Basis::Analytic(format!("elements >= {frontier} contain a square")),
            ))
        }
        Family::Free(f) => {
            let set = crate::families::vecs::graded(f.rank(), f.rank() as Norm)
                .into_iter()
                .filter(|v| v.iter().all(|&x| x <= 1))
                .map(Element::Vector)
                .collect();
            Ok(SquarefreeCount::exact(
                set,
                Basis::Analytic("0/1 vectors".into()),
            ))
        }
        Family::Rationals(_) => Ok(SquarefreeCount::exact(
            vec![m.identity()],
            Basis::Analytic("a = 2(a/2) for every a > 0".into()),
        )),
        Family::Orthant(o) => {
            let set = crate::families::vecs::graded(o.rank(), o.rank() as Norm)
                .into_iter()
                .filter(|v| v.iter().all(|&x| x <= 1) && v.contains(&0))
                .map(|v| LatticeOrthant::integer(&v))
                .collect();
            Ok(SquarefreeCount::exact(
                set,
                Basis::Analytic("0/1 vectors off the interior".into()),
            ))
        }
        _ => {
            let b = effective_bound(m, bound);
            let mut set = Vec::new();
            for a in m.enumerate(b)? {
                if is_squarefree(m, &a)?.holds() {
                    set.push(a);
                }
            }
            Ok(SquarefreeCount {
                count: None,
                set,
                bound: Some(b),
                basis: Basis::Search,
            })
        }
    }
}

/// A monoid with exactly `n` square-free elements:
///
/// | n | monoid |
/// |---|---|
/// | 1 | `N^0 = {0}` |
/// | 2 | `N` |
/// | 3 | `N^2 ∪ (Q>0)^2` |
/// | 2m | `{0, m} ∪ [2m, ∞)` |
/// | 2m - 1, m ≥ 3 | `{0, m} ∪ [2m - 1, ∞)` |
pub fn witness_for_count(n: u64) -> Result<MonoidSpec> {
    Ok(match n {
        0 => return Err(Error::spec("n", "must be at least 1")),
        1 => MonoidSpec::FreeCommutative { rank: 0 },
        2 => MonoidSpec::FreeCommutative { rank: 1 },
        3 => MonoidSpec::LatticeOrthant { rank: 2 },
        n if n % 2 == 0 => MonoidSpec::ShiftedNumerical {
            threshold: n,
            extras: vec![0, n / 2],
        },
        n => MonoidSpec::ShiftedNumerical {
            threshold: n,
            extras: vec![0, n.div_ceil(2)],
        },
    })
}

/// Count and atoms of the witness for `n`.
pub fn verify_count_witness(
    n: u64,
    bound: Norm,
) -> Result<(MonoidSpec, SquarefreeCount, Vec<Element>)> {
    let spec = witness_for_count(n)?;
    let m = Monoid::new(spec.clone())?;
    let c = count_squarefree(&m, bound)?;
    let a = if m.is_enumerable() {
        atoms(&m, bound)?.members
    } else {
        Vec::new()
    };
    Ok((spec, c, a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: &[u64]) -> Vec<Element> {
        v.iter().map(|&x| Element::Natural(x)).collect()
    }

    #[test]
    fn small_counts() {
        let c = count_squarefree(&Monoid::shifted(4, &[2]).unwrap(), 20).unwrap();
        assert_eq!(c.count, Some(4));
        assert_eq!(c.set, nat(&[0, 2, 5, 7]));
        let c = count_squarefree(&Monoid::shifted(5, &[3]).unwrap(), 20).unwrap();
        assert_eq!(c.set, nat(&[0, 3, 5, 7, 8]));
        let c = count_squarefree(&Monoid::rationals(), 4).unwrap();
        assert_eq!(c.count, Some(1));
        let c = count_squarefree(&Monoid::orthant(2).unwrap(), 4).unwrap();
        assert_eq!(c.count, Some(3));
    }

    #[test]
    fn witnesses_round_trip() {
        for n in 1..=40 {
            let (spec, c, _) = verify_count_witness(n, 8).unwrap();
            assert_eq!(c.count, Some(n as usize), "{spec}");
        }
        assert_eq!(
            witness_for_count(7).unwrap(),
            MonoidSpec::ShiftedNumerical {
                threshold: 7,
                extras: vec![0, 4]
            }
        );
        assert!(witness_for_count(0).is_err());
    }

    #[test]
    fn atoms_of_even_witness() {
        let (_, c, a) = verify_count_witness(4, 16).unwrap();
        assert_eq!(c.set, nat(&[0, 2, 5, 7]));
        assert_eq!(a, nat(&[2, 5]));
    }
}
