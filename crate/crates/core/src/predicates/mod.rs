//! Element predicates: atoms, primes, square-free, radical and primal
//! elements.
//!
//! Every predicate returns a [`Verdict`]. Refutations carry a witness that
//! can be re-checked with the kernel operations alone.

pub mod laws;
pub mod profile;

use crate::error::{Error, Result};
use crate::families::{Family, LatticeOrthant};
use crate::kernel::{Basis, Element, Monoid, Norm, Rational, Verdict};

pub use profile::{monoid_profile, MonoidProfile, Property};

fn analytic(s: &str) -> Basis {
    Basis::Analytic(s.to_string())
}

fn half(r: Rational) -> Element {
    Element::Rational(r / 2)
}

fn rational(a: &Element) -> Rational {
    match a {
        Element::Rational(r) => *r,
        _ => unreachable!("checked element"),
    }
}

fn unsupported(m: &Monoid, op: &'static str) -> Error {
    Error::Unsupported {
        op,
        family: m.kind(),
    }
}

/// Clamp a search bound to what the family can enumerate.
pub fn effective_bound(m: &Monoid, bound: Norm) -> Norm {
    match m.family() {
        Family::Poly(p) => bound.min(p.max_degree() as Norm),
        _ => bound,
    }
}

/// Enumerated elements with their norms.
fn elements(m: &Monoid, bound: Norm) -> Result<Vec<(Norm, Element)>> {
    m.enumerate(effective_bound(m, bound))?
        .into_iter()
        .map(|e| Ok((m.norm(&e)?, e)))
        .collect()
}

/// Square-free test by looking for a non-unit `b` with `b^2 | a`.
pub fn squarefree_by_divisors(m: &Monoid, a: &Element) -> Result<Verdict> {
    if m.unit(a)? {
        return Ok(Verdict::proven(Basis::Exact));
    }
    let scan = m.divisor_scan(a)?;
    for layer in &scan.layers {
        for b in m.sorted(layer.clone())? {
            if m.unit(&b)? {
                continue;
            }
            let b2 = m.compose(&b, &b)?;
            if let Some(c) = m.quotient(&b2, a)? {
                return Ok(Verdict::refuted(vec![b, c], Basis::Exact));
            }
        }
    }
    Ok(if scan.complete {
        Verdict::proven(Basis::Exact)
    } else {
        Verdict::unknown(m.norm(a)?)
    })
}

/// `a` is square-free: `a = b^2 c` forces `b` to be a unit.
/// Refuted carries `[b, c]`.
pub fn is_squarefree(m: &Monoid, a: &Element) -> Result<Verdict> {
    m.check(a)?;
    if m.unit(a)? {
        return Ok(Verdict::proven(Basis::Exact));
    }
    match m.family() {
        Family::Rationals(_) => Ok(Verdict::refuted(
            vec![half(rational(a)), m.identity()],
            analytic("a = 2(a/2) + 0"),
        )),
        Family::Orthant(o) => Ok(o.squarefree(a)),
        Family::Free(_) => {
            let v = a.as_vector().expect("vector");
            Ok(match v.iter().position(|&x| x >= 2) {
                None => Verdict::proven(analytic("0/1 exponent vector")),
                Some(i) => {
                    let mut b = vec![0; v.len()];
                    b[i] = 1;
                    let mut c = v.to_vec();
                    c[i] -= 2;
                    Verdict::refuted(
                        vec![Element::Vector(b), Element::Vector(c)],
                        analytic("exponent at least 2"),
                    )
                }
            })
        }
        Family::Bpq(f) => {
            let v = squarefree_by_divisors(m, a)?;
            if v.is_exact() {
                return Ok(v);
            }
            let lv = match a {
                Element::Leveled(l) => l,
                _ => unreachable!(),
            };
            Ok(if f.squarefree_rule(lv)? {
                Verdict::proven(analytic("0/1 vector at the cap with p = q = 1 or no y"))
            } else {
                Verdict::refuted(
                    vec![a.clone()],
                    analytic("a square appears after rewriting above the cap"),
                )
            })
        }
        _ => squarefree_by_divisors(m, a),
    }
}

/// Atom test by searching for a proper factorisation.
pub fn atom_by_divisors(m: &Monoid, a: &Element) -> Result<Verdict> {
    if m.unit(a)? {
        return Ok(Verdict::refuted(vec![a.clone()], Basis::Exact).with_note("unit"));
    }
    let scan = m.divisor_scan(a)?;
    for layer in &scan.layers {
        for b in m.sorted(layer.clone())? {
            if m.unit(&b)? {
                continue;
            }
            let c = m.quotient(&b, a)?.expect("divisor");
            if !m.unit(&c)? {
                return Ok(Verdict::refuted(vec![b, c], Basis::Exact));
            }
        }
    }
    Ok(if scan.complete {
        Verdict::proven(Basis::Exact)
    } else {
        Verdict::unknown(m.norm(a)?)
    })
}

/// `a` is an atom. Refuted carries `[b, c]` with `a = bc`, both
/// non-units, or `[a]` when `a` is a unit.
pub fn is_atom(m: &Monoid, a: &Element) -> Result<Verdict> {
    m.check(a)?;
    if m.unit(a)? {
        return Ok(Verdict::refuted(vec![a.clone()], Basis::Exact).with_note("unit"));
    }
    match m.family() {
        Family::Rationals(_) => {
            let h = half(rational(a));
            Ok(Verdict::refuted(
                vec![h.clone(), h],
                analytic("a = a/2 + a/2"),
            ))
        }
        Family::Orthant(_) => {
            let v = match a {
                Element::Orthant(v) => v,
                _ => unreachable!(),
            };
            if LatticeOrthant::is_interior(v) {
                let h: Vec<Rational> = v.iter().map(|x| x / 2).collect();
                let h = Element::Orthant(h);
                return Ok(Verdict::refuted(
                    vec![h.clone(), h],
                    analytic("interior halves"),
                ));
            }
            let total: Rational = v.iter().sum();
            if total > Rational::from_integer(1) {
                let i = v.iter().position(|x| *x.numer() > 0).expect("non-zero");
                let mut e = vec![Rational::from_integer(0); v.len()];
                e[i] = Rational::from_integer(1);
                let c: Vec<Rational> = v.iter().zip(&e).map(|(x, y)| x - y).collect();
                return Ok(Verdict::refuted(
                    vec![Element::Orthant(e), Element::Orthant(c)],
                    Basis::Exact,
                ));
            }
            Ok(Verdict::proven(analytic("unit vector on a face")))
        }
        Family::Bpq(f) => {
            let v = atom_by_divisors(m, a)?;
            if v.is_exact() {
                return Ok(v);
            }
            let lv = match a {
                Element::Leveled(l) => l,
                _ => unreachable!(),
            };
            Ok(if f.atom_rule(lv) {
                Verdict::proven(analytic("the atoms are the x_i"))
            } else {
                Verdict::refuted(vec![a.clone()], analytic("splits above the cap"))
            })
        }
        _ => atom_by_divisors(m, a),
    }
}

/// `a` is prime: a non-unit with `a | bc ⇒ a | b or a | c`.
/// Refuted carries `[b, c]` with `a | bc`, `a ∤ b`, `a ∤ c`.
pub fn is_prime(m: &Monoid, a: &Element, bound: Norm) -> Result<Verdict> {
    m.check(a)?;
    if m.unit(a)? {
        return Ok(Verdict::refuted(vec![a.clone()], Basis::Exact).with_note("unit"));
    }
    match m.family() {
        Family::Rationals(_) => {
            let h = half(rational(a));
            return Ok(Verdict::refuted(
                vec![h.clone(), h],
                analytic("a | a/2 + a/2"),
            ));
        }
        Family::Orthant(_) => return Err(unsupported(m, "is_prime")),
        _ => {}
    }
    // A prime is an atom, and a proper factorisation refutes primality.
    let atom = is_atom(m, a)?;
    if atom.fails() && atom.witness.len() == 2 {
        return Ok(Verdict::refuted(atom.witness, atom.basis));
    }
    let na = m.norm(a)?;
    let elems = elements(m, bound)?;
    for (i, (nb, b)) in elems.iter().enumerate() {
        if m.is_divisor(a, b)? {
            continue;
        }
        for (nc, c) in &elems[i..] {
            if nb + nc < na || m.is_divisor(a, c)? {
                continue;
            }
            if m.is_divisor(a, &m.compose(b, c)?)? {
                return Ok(Verdict::refuted(vec![b.clone(), c.clone()], Basis::Search));
            }
        }
    }
    match m.family() {
        Family::Free(_) => {
            let v = a.as_vector().expect("vector");
            if v.iter().sum::<u64>() == 1 {
                return Ok(Verdict::proven(analytic("basis vectors are prime")));
            }
        }
        Family::Bpq(_) if atom.holds() => {
            return Ok(Verdict::proven(analytic("atoms are prime in a GCD monoid")));
        }
        _ => {}
    }
    Ok(Verdict::unknown(effective_bound(m, bound)))
}

/// `a` is radical: `a | b^n ⇒ a | b`. Refuted carries `[b]` and the
/// exponent `n`.
pub fn is_radical(m: &Monoid, a: &Element, bound: Norm) -> Result<Verdict> {
    m.check(a)?;
    if m.unit(a)? {
        return Ok(Verdict::proven(Basis::Exact));
    }
    if let Family::Orthant(_) = m.family() {
        return Err(unsupported(m, "is_radical"));
    }
    // a = b^2 c with b a non-unit: a | (bc)^2 but a ∤ bc.
    let sf = is_squarefree(m, a)?;
    if sf.fails() && sf.witness.len() == 2 {
        let bc = m.compose(&sf.witness[0], &sf.witness[1])?;
        return Ok(Verdict::refuted(vec![bc], sf.basis).with_exponent(2));
    }
    let decomposition = matches!(
        m.family(),
        Family::Free(_) | Family::Bpq(_) | Family::Rationals(_)
    );
    if decomposition {
        if sf.holds() {
            return Ok(Verdict::proven(analytic(
                "square-free elements of a decomposition monoid are radical",
            )));
        }
        if sf.fails() {
            return Ok(Verdict::refuted(sf.witness, sf.basis).with_note("not square-free"));
        }
    }
    let b = effective_bound(m, bound);
    let elems = elements(m, b)?;
    for n in 2..=b.max(2) {
        for (_, x) in &elems {
            if m.is_divisor(a, x)? {
                continue;
            }
            if m.is_divisor(a, &m.pow(x, n)?)? {
                return Ok(Verdict::refuted(vec![x.clone()], Basis::Search).with_exponent(n));
            }
        }
    }
    Ok(Verdict::unknown(b))
}

/// `a` is primal: `a | bc ⇒ a = a1 a2` with `a1 | b`, `a2 | c`.
/// Refuted carries `[b, c]`.
pub fn is_primal(m: &Monoid, a: &Element, bound: Norm) -> Result<Verdict> {
    m.check(a)?;
    if m.unit(a)? {
        return Ok(Verdict::proven(Basis::Exact));
    }
    match m.family() {
        Family::Free(_) | Family::Rationals(_) | Family::Bpq(_) => {
            return Ok(Verdict::proven(analytic(
                "GCD monoids are decomposition monoids",
            )));
        }
        Family::Orthant(_) => return Err(unsupported(m, "is_primal")),
        _ => {}
    }
    let divs = m.divisors(a)?;
    let na = m.norm(a)?;
    let elems = elements(m, bound)?;
    for (i, (nb, b)) in elems.iter().enumerate() {
        for (nc, c) in &elems[i..] {
            if nb + nc < na || !m.is_divisor(a, &m.compose(b, c)?)? {
                continue;
            }
            let mut split = false;
            for d in &divs {
                if m.is_divisor(d, b)? {
                    let e = m.quotient(d, a)?.expect("divisor");
                    if m.is_divisor(&e, c)? {
                        split = true;
                        break;
                    }
                }
            }
            if !split {
                return Ok(Verdict::refuted(vec![b.clone(), c.clone()], Basis::Search));
            }
        }
    }
    Ok(Verdict::unknown(effective_bound(m, bound)))
}

/// Elements up to a bound, split by a predicate.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ElementSet {
    pub members: Vec<Element>,
    pub undecided: Vec<Element>,
    pub bound: Norm,
}

fn collect(
    m: &Monoid,
    bound: Norm,
    pred: impl Fn(&Element) -> Result<Verdict>,
) -> Result<ElementSet> {
    let mut out = ElementSet {
        bound: effective_bound(m, bound),
        ..Default::default()
    };
    for (_, e) in elements(m, bound)? {
        match pred(&e)?.truth() {
            Some(true) => out.members.push(e),
            Some(false) => {}
            None => out.undecided.push(e),
        }
    }
    Ok(out)
}

pub fn atoms(m: &Monoid, bound: Norm) -> Result<ElementSet> {
    collect(m, bound, |e| is_atom(m, e))
}

pub fn squarefree_set(m: &Monoid, bound: Norm) -> Result<ElementSet> {
    collect(m, bound, |e| is_squarefree(m, e))
}

pub fn radical_set(m: &Monoid, bound: Norm) -> Result<ElementSet> {
    collect(m, bound, |e| is_radical(m, e, bound))
}

pub fn primes_set(m: &Monoid, bound: Norm) -> Result<ElementSet> {
    collect(m, bound, |e| is_prime(m, e, bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Element {
        Element::Natural(v)
    }

    #[test]
    fn squarefree_in_free_monoid() {
        let m = Monoid::free(2);
        let v = is_squarefree(&m, &Element::vector([2, 1])).unwrap();
        assert!(v.fails());
        assert_eq!(
            v.witness,
            vec![Element::vector([1, 0]), Element::vector([0, 1])]
        );
        assert!(is_squarefree(&m, &Element::vector([1, 1])).unwrap().holds());
    }

    #[test]
    fn squarefree_routes_agree_on_free_monoid() {
        let m = Monoid::free(3);
        for a in m.enumerate(6).unwrap() {
            let x = is_squarefree(&m, &a).unwrap().truth();
            let y = squarefree_by_divisors(&m, &a).unwrap().truth();
            assert_eq!(x, y, "{a}");
        }
    }

    #[test]
    fn shifted_two() {
        let m = Monoid::shifted(2, &[]).unwrap();
        let s: Vec<u64> = squarefree_set(&m, 20)
            .unwrap()
            .members
            .iter()
            .map(|e| e.as_natural().unwrap())
            .collect();
        assert_eq!(s, vec![0, 2, 3, 5]);
        let p = is_prime(&m, &n(2), 12).unwrap();
        assert!(p.fails());
        assert_eq!(p.witness, vec![n(3), n(3)]);
        let r = is_radical(&m, &n(5), 12).unwrap();
        assert!(r.fails());
        assert_eq!((r.witness.clone(), r.exponent), (vec![n(4)], Some(2)));
        assert!(is_primal(&m, &n(2), 12).unwrap().fails());
        assert!(is_atom(&m, &n(3)).unwrap().holds());
        assert!(is_atom(&m, &n(4)).unwrap().fails());
    }

    #[test]
    fn prime_in_free_monoid() {
        let m = Monoid::free(2);
        assert!(is_prime(&m, &Element::vector([1, 0]), 6).unwrap().holds());
        let v = is_prime(&m, &Element::vector([1, 1]), 6).unwrap();
        assert!(v.fails());
        let bc = m.compose(&v.witness[0], &v.witness[1]).unwrap();
        assert!(m.is_divisor(&Element::vector([1, 1]), &bc).unwrap());
    }

    #[test]
    fn radical_in_free_monoid() {
        let m = Monoid::free(2);
        let v = is_radical(&m, &Element::vector([2, 0]), 6).unwrap();
        assert!(v.fails());
        assert_eq!(v.witness, vec![Element::vector([1, 0])]);
        assert_eq!(v.exponent, Some(2));
    }

    #[test]
    fn bpq_atoms() {
        let m = Monoid::bpq(1, 1, 8).unwrap();
        let y1 = m.parse_element("y1").unwrap();
        let v = is_atom(&m, &y1).unwrap();
        assert!(v.fails());
        assert_eq!(
            v.witness,
            vec![
                m.parse_element("x2").unwrap(),
                m.parse_element("y2").unwrap()
            ]
        );
        assert!(is_atom(&m, &m.parse_element("x3").unwrap())
            .unwrap()
            .holds());
        assert!(is_squarefree(&m, &y1).unwrap().holds());
        let m22 = Monoid::bpq(2, 2, 8).unwrap();
        assert!(is_squarefree(&m22, &m22.parse_element("y1").unwrap())
            .unwrap()
            .fails());
    }

    #[test]
    fn rationals() {
        let m = Monoid::rationals();
        let a = m.parse_element("3/2").unwrap();
        assert!(is_atom(&m, &a).unwrap().fails());
        assert!(is_squarefree(&m, &a).unwrap().fails());
        assert!(is_squarefree(&m, &m.identity()).unwrap().holds());
        assert!(is_prime(&m, &a, 4).unwrap().fails());
        assert!(is_radical(&m, &a, 4).unwrap().fails());
    }

    #[test]
    fn units_are_not_atoms_but_are_squarefree() {
        let m = Monoid::free(2);
        let one = m.identity();
        assert!(is_atom(&m, &one).unwrap().fails());
        assert!(is_prime(&m, &one, 3).unwrap().fails());
        assert!(is_squarefree(&m, &one).unwrap().holds());
        assert!(is_radical(&m, &one, 3).unwrap().holds());
    }
}
