//! Square-free factorisation schemes and their verification.
//!
//! | scheme | shape |
//! |---|---|
//! | (i)   | `a = s_1 ... s_n` |
//! | (ii)  | `a = s_1 ... s_n`, `s_i \| s_{i+1}` |
//! | (iii) | `a = s_1 s_2^2 ... s_n^n`, pairwise rpr |
//! | (iv)  | `a = s_0 s_1^2 s_2^4 ... s_n^{2^n}` |
//! | (v)   | `a = bc`, `a \| c^n` |
//! | (vi)  | `a = b^2 c` |
//!
//! All `s_i` and `c` are square-free.

mod closed;
mod search;
pub mod unique;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::families::Family;
use crate::kernel::{Basis, Element, Monoid, Verdict};
use crate::predicates::is_squarefree;

pub use unique::{all_factorizations, uniqueness_check};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    I,
    Ii,
    Iii,
    Iv,
    V,
    Vi,
}

impl Scheme {
    pub const ALL: [Scheme; 6] = [
        Scheme::I,
        Scheme::Ii,
        Scheme::Iii,
        Scheme::Iv,
        Scheme::V,
        Scheme::Vi,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Scheme::I => "i",
            Scheme::Ii => "ii",
            Scheme::Iii => "iii",
            Scheme::Iv => "iv",
            Scheme::V => "v",
            Scheme::Vi => "vi",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.label())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        Scheme::ALL
            .into_iter()
            .find(|x| x.label().eq_ignore_ascii_case(t))
            .ok_or_else(|| Error::parse(0, format!("unknown scheme `{s}`")))
    }
}

/// A factorisation in one of the six schemes.
///
/// For (v) and (vi) `parts` is `[b, c]`; `power` is the `n` with
/// `a | c^n` in scheme (v).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub scheme: Scheme,
    pub parts: Vec<Element>,
    pub exponents: Vec<u64>,
    pub power: Option<u64>,
}

impl Factorization {
    pub fn new(scheme: Scheme, parts: Vec<Element>) -> Self {
        let n = parts.len() as u32;
        let exponents = match scheme {
            Scheme::I | Scheme::Ii => vec![1; n as usize],
            Scheme::Iii => (1..=n as u64).collect(),
            Scheme::Iv => (0..n).map(|i| 1u64 << i).collect(),
            Scheme::V => vec![1, 1],
            Scheme::Vi => vec![2, 1],
        };
        Factorization {
            scheme,
            parts,
            exponents,
            power: None,
        }
    }

    /// Parts that must be square-free.
    pub fn designated(&self) -> &[Element] {
        match self.scheme {
            Scheme::V | Scheme::Vi => &self.parts[1..],
            _ => &self.parts,
        }
    }

    /// `(exponent, part)` pairs without identity parts.
    pub fn compressed(&self, m: &Monoid) -> Vec<(u64, Element)> {
        self.exponents
            .iter()
            .zip(&self.parts)
            .filter(|(_, p)| **p != m.identity())
            .map(|(e, p)| (*e, p.clone()))
            .collect()
    }

    pub fn render(&self, m: &Monoid) -> String {
        match self.scheme {
            Scheme::V => format!(
                "b = {}, c = {}{}",
                self.parts[0],
                self.parts[1],
                self.power
                    .map(|n| format!(", a | c^{n}"))
                    .unwrap_or_default()
            ),
            Scheme::Vi => format!("b = {}, c = {}", self.parts[0], self.parts[1]),
            Scheme::I | Scheme::Ii => join(self.parts.iter().map(|p| p.to_string())),
            Scheme::Iii | Scheme::Iv => {
                let c = self.compressed(m);
                if c.is_empty() {
                    m.identity().to_string()
                } else {
                    join(c.iter().map(|(e, p)| {
                        if *e == 1 {
                            p.to_string()
                        } else {
                            format!("{p}^{e}")
                        }
                    }))
                }
            }
        }
    }
}

fn join(it: impl Iterator<Item = String>) -> String {
    it.collect::<Vec<_>>().join(" * ")
}

/// Result of a factorisation search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Found(Factorization),
    /// The search space was exhausted: no factorisation exists.
    Exhausted,
    /// Nothing found within the search limits.
    Truncated,
}

/// Default node budget for the generic search.
pub const SEARCH_BUDGET: usize = 200_000;

/// Find a factorisation of `a` in `scheme`.
pub fn factor(m: &Monoid, a: &Element, scheme: Scheme) -> Result<Outcome> {
    m.check(a)?;
    match m.family() {
        Family::Free(_) => {
            let v = a.as_vector().expect("vector");
            Ok(Outcome::Found(closed::from_vectors(
                scheme,
                closed::closed_form(v, scheme),
                Element::Vector,
            )))
        }
        Family::Rationals(_) => Ok(closed::rationals(m, a, scheme)),
        Family::Orthant(_) => Err(Error::Unsupported {
            op: "factor",
            family: m.kind(),
        }),
        Family::Bpq(f) => closed::bpq(m, f, a, scheme),
        Family::Poly(p) => {
            if let Some(f) = closed::poly(m, p, a, scheme)? {
                if verify(m, a, &f)?.holds() {
                    return Ok(Outcome::Found(f));
                }
            }
            search::find(m, a, scheme, SEARCH_BUDGET)
        }
        Family::Shifted(_) | Family::Affine(_) => search::find(m, a, scheme, SEARCH_BUDGET),
    }
}

/// Whether `a` admits a factorisation in `scheme`.
pub fn scheme_holds_for(m: &Monoid, a: &Element, scheme: Scheme) -> Result<Verdict> {
    let basis = match m.family() {
        Family::Rationals(_) | Family::Bpq(_) => Basis::Analytic(format!("scheme {scheme}")),
        _ => Basis::Exact,
    };
    Ok(match factor(m, a, scheme)? {
        Outcome::Found(f) => Verdict::found(f.parts.clone(), Basis::Search)
            .with_note(f.render(m))
            .with_exponent_opt(f.power),
        Outcome::Exhausted => Verdict::refuted(vec![a.clone()], basis)
            .with_note(format!("no factorisation of shape {scheme}")),
        Outcome::Truncated => Verdict::not_found(m.norm(a).unwrap_or(0)),
    })
}

impl Verdict {
    fn with_exponent_opt(self, n: Option<u64>) -> Self {
        match n {
            Some(n) => self.with_exponent(n),
            None => self,
        }
    }
}

/// `Some(Some(n))`: `a | c^n` with `n` minimal in the searched range;
/// `Some(None)`: no power of `c` is divisible by `a`; `None`: undecided.
pub fn power_divides(m: &Monoid, a: &Element, c: &Element) -> Result<Option<Option<u64>>> {
    if m.unit(c)? {
        return Ok(Some(m.unit(a)?.then_some(1)));
    }
    let limit: u64 = match m.family() {
        Family::Shifted(s) => m.norm(a)? + s.threshold() + 1,
        Family::Rationals(_) => {
            let (ra, rc) = match (a, c) {
                (Element::Rational(x), Element::Rational(y)) => (*x, *y),
                _ => unreachable!("checked elements"),
            };
            return Ok(Some(Some((ra / rc).ceil().to_integer().max(1))));
        }
        _ => m.norm(a)? + 2,
    };
    if let (Some(va), Some(vc)) = (a.as_vector(), c.as_vector()) {
        if va.iter().zip(vc).any(|(x, y)| *x > 0 && *y == 0) {
            return Ok(Some(None));
        }
    }
    if let (Family::Poly(p), Element::Poly(pa), Element::Poly(pc)) = (m.family(), a, c) {
        use crate::families::poly::fx;
        let (_, fa) = fx::factor(p.field(), pa.coeffs());
        if fa
            .iter()
            .any(|(g, _)| fx::exact_div(p.field(), pc.coeffs(), g).is_none())
        {
            return Ok(Some(None));
        }
    }
    let mut pw = m.identity();
    for n in 1..=limit {
        pw = m.compose(&pw, c)?;
        if m.is_divisor(a, &pw)? {
            return Ok(Some(Some(n)));
        }
    }
    Ok(None)
}

/// Re-check a factorisation from scratch.
pub fn verify(m: &Monoid, a: &Element, f: &Factorization) -> Result<Verdict> {
    let fail = |why: String| Ok(Verdict::refuted(f.parts.clone(), Basis::Exact).with_note(why));
    if f.parts.len() != f.exponents.len() || f.parts.is_empty() {
        return fail("malformed factorisation".into());
    }
    let mut prod = m.identity();
    for (p, e) in f.parts.iter().zip(&f.exponents) {
        prod = m.compose(&prod, &m.pow(p, *e)?)?;
    }
    if prod != *a {
        return fail(format!("product is {prod}, expected {a}"));
    }
    let mut unknown = false;
    for p in f.designated() {
        match is_squarefree(m, p)?.truth() {
            Some(true) => {}
            Some(false) => return fail(format!("{p} is not square-free")),
            None => unknown = true,
        }
    }
    match f.scheme {
        Scheme::Ii => {
            for w in f.parts.windows(2) {
                if !m.is_divisor(&w[0], &w[1])? {
                    return fail(format!("{} does not divide {}", w[0], w[1]));
                }
            }
        }
        Scheme::Iii => {
            for i in 0..f.parts.len() {
                for j in i + 1..f.parts.len() {
                    match m.rpr(&f.parts[i], &f.parts[j])?.truth() {
                        Some(true) => {}
                        Some(false) => {
                            return fail(format!(
                                "{} and {} are not relatively prime",
                                f.parts[i], f.parts[j]
                            ))
                        }
                        None => unknown = true,
                    }
                }
            }
        }
        Scheme::V => {
            let c = &f.parts[1];
            let ok = match f.power {
                Some(n) => m.is_divisor(a, &m.pow(c, n)?)?,
                None => matches!(power_divides(m, a, c)?, Some(Some(_))),
            };
            if !ok {
                return fail(format!("{a} does not divide a power of {c}"));
            }
        }
        _ => {}
    }
    Ok(if unknown {
        Verdict::unknown(m.norm(a).unwrap_or(0))
    } else {
        Verdict::proven(Basis::Exact)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[u64]) -> Element {
        Element::vector(x.to_vec())
    }

    #[test]
    fn free_monoid_closed_forms() {
        let m = Monoid::free(2);
        let a = v(&[3, 1]);
        let get = |s| match factor(&m, &a, s).unwrap() {
            Outcome::Found(f) => f,
            o => panic!("{o:?}"),
        };
        assert_eq!(
            get(Scheme::Ii).parts,
            vec![v(&[1, 0]), v(&[1, 0]), v(&[1, 1])]
        );
        assert_eq!(
            get(Scheme::Iii).parts,
            vec![v(&[0, 1]), v(&[0, 0]), v(&[1, 0])]
        );
        assert_eq!(get(Scheme::Iv).parts, vec![v(&[1, 1]), v(&[1, 0])]);
        let f5 = get(Scheme::V);
        assert_eq!(f5.parts, vec![v(&[2, 0]), v(&[1, 1])]);
        assert_eq!(f5.power, Some(3));
        assert_eq!(get(Scheme::Vi).parts, vec![v(&[1, 0]), v(&[1, 1])]);
        for s in Scheme::ALL {
            assert!(verify(&m, &a, &get(s)).unwrap().holds(), "{s}");
        }
        assert_eq!(get(Scheme::Iii).render(&m), "(0,1) * (1,0)^3");
    }

    #[test]
    fn scheme_parsing() {
        assert_eq!("iii".parse::<Scheme>().unwrap(), Scheme::Iii);
        assert_eq!("(vi)".parse::<Scheme>().unwrap(), Scheme::Vi);
        assert!("vii".parse::<Scheme>().is_err());
    }

    #[test]
    fn verify_rejects_bad_chains() {
        let m = Monoid::free(2);
        let a = v(&[1, 1]);
        let bad = Factorization::new(Scheme::Ii, vec![v(&[1, 0]), v(&[0, 1])]);
        assert!(verify(&m, &a, &bad).unwrap().fails());
        let bad_product = Factorization::new(Scheme::I, vec![v(&[1, 0])]);
        assert!(verify(&m, &a, &bad_product).unwrap().fails());
    }

    #[test]
    fn shifted_search() {
        let m = Monoid::shifted(2, &[]).unwrap();
        let a = Element::Natural(9);
        for s in Scheme::ALL {
            match factor(&m, &a, s).unwrap() {
                Outcome::Found(f) => assert!(verify(&m, &a, &f).unwrap().holds(), "{s}"),
                o => panic!("{s}: {o:?}"),
            }
        }
    }

    #[test]
    fn rationals_only_admit_vi() {
        let m = Monoid::rationals();
        let a = m.parse_element("5/3").unwrap();
        for s in Scheme::ALL {
            let v = scheme_holds_for(&m, &a, s).unwrap();
            assert_eq!(v.holds(), s == Scheme::Vi, "{s}");
        }
    }
}
