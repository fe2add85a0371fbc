//! Monoid-level properties: empirical checks within a bound, analytic
//! claims per family, and propagation along the known implications.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::factorize::{scheme_holds_for, Scheme};
use crate::families::{vecs, Family};
use crate::kernel::{Basis, Element, Monoid, Norm, Verdict, VerdictKind};

use super::{effective_bound, is_atom, is_primal, is_prime};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Atomic,
    Accp,
    Gcd,
    Decomposition,
    AtomsArePrimes,
    Factorial,
    Scheme(Scheme),
}

impl Property {
    pub const NAMED: [Property; 6] = [
        Property::Atomic,
        Property::Accp,
        Property::Gcd,
        Property::Decomposition,
        Property::AtomsArePrimes,
        Property::Factorial,
    ];

    pub fn all() -> Vec<Property> {
        let mut v = Self::NAMED.to_vec();
        v.extend(Scheme::ALL.map(Property::Scheme));
        v
    }

    pub fn label(self) -> String {
        match self {
            Property::Atomic => "atomic".into(),
            Property::Accp => "accp".into(),
            Property::Gcd => "gcd".into(),
            Property::Decomposition => "decomposition".into(),
            Property::AtomsArePrimes => "atoms_are_primes".into(),
            Property::Factorial => "factorial".into(),
            Property::Scheme(s) => s.to_string(),
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// `premises ⇒ conclusion`, valid in every monoid.
#[derive(Clone, Copy, Debug)]
pub struct Rule {
    pub premises: &'static [Property],
    pub conclusion: Property,
}

impl Rule {
    pub fn label(&self) -> String {
        let p: Vec<String> = self.premises.iter().map(|p| p.label()).collect();
        format!("{} => {}", p.join(" & "), self.conclusion)
    }
}

use Property::*;

const fn rule(premises: &'static [Property], conclusion: Property) -> Rule {
    Rule {
        premises,
        conclusion,
    }
}

/// The implications between the monoid properties and schemes.
pub const RULES: &[Rule] = &[
    rule(&[Factorial], Accp),
    rule(&[Factorial], Gcd),
    rule(&[Accp], Atomic),
    rule(&[Gcd], Decomposition),
    rule(&[Decomposition], AtomsArePrimes),
    rule(&[Atomic, AtomsArePrimes], Factorial),
    rule(&[Atomic], Scheme(Scheme::I)),
    rule(&[Accp], Scheme(Scheme::Iv)),
    rule(&[Scheme(Scheme::Ii)], Scheme(Scheme::Iii)),
    rule(&[Scheme(Scheme::Iii)], Scheme(Scheme::I)),
    rule(&[Scheme(Scheme::Iv)], Scheme(Scheme::I)),
    rule(&[Scheme(Scheme::Ii)], Scheme(Scheme::V)),
    rule(&[Scheme(Scheme::Iv)], Scheme(Scheme::Vi)),
    rule(&[Decomposition, Scheme(Scheme::Iii)], Scheme(Scheme::Ii)),
    rule(&[Decomposition, Scheme(Scheme::Iii)], Scheme(Scheme::Iv)),
    rule(&[Gcd, Scheme(Scheme::Iv)], Scheme(Scheme::Iii)),
];

/// A family-level fact known in closed form.
#[derive(Clone, Debug)]
pub struct Claim {
    pub property: Property,
    pub holds: bool,
    pub witness: Vec<Element>,
    pub source: &'static str,
}

impl Claim {
    fn yes(property: Property, source: &'static str) -> Claim {
        Claim {
            property,
            holds: true,
            witness: Vec::new(),
            source,
        }
    }

    fn no(property: Property, witness: Vec<Element>, source: &'static str) -> Claim {
        Claim {
            property,
            holds: false,
            witness,
            source,
        }
    }

    fn verdict(&self) -> Verdict {
        let basis = Basis::Analytic(self.source.to_string());
        if self.holds {
            Verdict::proven(basis)
        } else {
            Verdict::refuted(self.witness.clone(), basis)
        }
    }
}

const NORM_DESCENT: &str = "proper divisors have smaller norm and each norm ball is finite";

/// Analytic facts registered for the family of `m`.
pub fn claims(m: &Monoid) -> Vec<Claim> {
    let schemes = |holds: [bool; 6], w: &Element, src: &'static str| -> Vec<Claim> {
        Scheme::ALL
            .iter()
            .zip(holds)
            .map(|(&s, h)| {
                if h {
                    Claim::yes(Scheme(s), src)
                } else {
                    Claim::no(Scheme(s), vec![w.clone()], src)
                }
            })
            .collect()
    };
    match m.family() {
        Family::Free(_) => vec![Claim::yes(Factorial, "free commutative monoid")],
        Family::Shifted(s) if s.min_nonzero() == 1 => {
            vec![Claim::yes(Factorial, "the carrier is all of N")]
        }
        Family::Affine(a) => {
            let atoms = a.atoms().unwrap_or_default();
            if vecs::rank(&atoms) == atoms.len() {
                vec![Claim::yes(
                    Factorial,
                    "linearly independent atoms generate freely",
                )]
            } else {
                vec![Claim::yes(Accp, NORM_DESCENT)]
            }
        }
        Family::Shifted(_) => vec![Claim::yes(Accp, NORM_DESCENT)],
        Family::Poly(p) => {
            let f = p.field();
            let outside = (1..f.order()).find(|&c| !p.in_base(c));
            match outside {
                None => vec![Claim::yes(Factorial, "polynomial ring over a field")],
                Some(c) => {
                    let cinv = f.inv(c).expect("non-zero");
                    let w = vec![
                        p.element(vec![0, 1]),
                        p.element(vec![0, c]),
                        p.element(vec![0, cinv]),
                    ];
                    vec![
                        Claim::yes(Accp, "degree drops along proper divisors"),
                        Claim::no(AtomsArePrimes, w, "x divides (cx)(x/c) but neither factor"),
                    ]
                }
            }
        }
        Family::Bpq(f) => {
            let y1 = Element::Leveled(f.y(1).expect("level 1"));
            let src = "y-exponents follow the rewriting rule";
            let mut v = vec![
                Claim::yes(Gcd, "componentwise minimum at the level cap"),
                Claim::no(
                    Atomic,
                    vec![y1.clone()],
                    "y_1 is no product of the atoms x_i",
                ),
                Claim::no(
                    Accp,
                    f.y_chain(),
                    "y_i = x_{i+1}^p y_{i+1}^q descends forever",
                ),
            ];
            let holds = if f.is_unit_case() {
                [true; 6]
            } else if f.q() % 2 == 0 {
                [false, false, false, false, false, true]
            } else {
                [false; 6]
            };
            v.extend(schemes(holds, &y1, src));
            v
        }
        Family::Rationals(_) => {
            let one = Element::Rational(1.into());
            let chain: Vec<Element> = (0..4)
                .map(|k| Element::Rational(crate::kernel::Rational::new(1, 1 << k)))
                .collect();
            let mut v = vec![
                Claim::yes(Gcd, "gcd(a, b) = min(a, b)"),
                Claim::no(Atomic, vec![one.clone()], "there are no atoms"),
                Claim::no(Accp, chain, "1, 1/2, 1/4, ... descends forever"),
            ];
            v.extend(schemes(
                [false, false, false, false, false, true],
                &one,
                "the only square-free element is 0",
            ));
            v
        }
        Family::Orthant(_) => Vec::new(),
    }
}

/// Per-property verdicts for a monoid.
#[derive(Clone, Debug)]
pub struct MonoidProfile {
    pub values: BTreeMap<Property, Verdict>,
    pub bound: Norm,
    pub claims: Vec<Claim>,
    /// Claims contradicted by an exact empirical verdict.
    pub conflicts: Vec<String>,
    /// Rules whose premises hold while the conclusion is refuted.
    pub violations: Vec<String>,
}

impl MonoidProfile {
    pub fn get(&self, p: Property) -> &Verdict {
        &self.values[&p]
    }

    pub fn truth(&self, p: Property) -> Option<bool> {
        self.values.get(&p).and_then(|v| v.truth())
    }

    pub fn atomic(&self) -> &Verdict {
        self.get(Atomic)
    }

    pub fn accp(&self) -> &Verdict {
        self.get(Accp)
    }

    pub fn gcd(&self) -> &Verdict {
        self.get(Gcd)
    }

    pub fn decomposition(&self) -> &Verdict {
        self.get(Decomposition)
    }

    pub fn atoms_are_primes(&self) -> &Verdict {
        self.get(AtomsArePrimes)
    }

    pub fn scheme(&self, s: Scheme) -> &Verdict {
        self.get(Scheme(s))
    }

    pub fn is_consistent(&self) -> bool {
        self.conflicts.is_empty() && self.violations.is_empty()
    }
}

/// Rules violated by exact truth values.
pub fn rule_violations(truth: impl Fn(Property) -> Option<bool>) -> Vec<String> {
    RULES
        .iter()
        .filter(|r| {
            r.premises.iter().all(|&p| truth(p) == Some(true)) && truth(r.conclusion) == Some(false)
        })
        .map(|r| r.label())
        .collect()
}

/// Propagate exact values along [`RULES`] until nothing changes.
pub fn infer(values: &mut BTreeMap<Property, Verdict>) {
    loop {
        let mut changed = false;
        for r in RULES {
            let t =
                |p: Property, v: &BTreeMap<Property, Verdict>| v.get(&p).and_then(|x| x.truth());
            let open: Vec<Property> = r
                .premises
                .iter()
                .copied()
                .filter(|&p| t(p, values) != Some(true))
                .collect();
            let concl = t(r.conclusion, values);
            if open.is_empty() && concl.is_none() {
                values.insert(r.conclusion, Verdict::proven(Basis::Inferred(r.label())));
                changed = true;
            } else if open.len() == 1 && concl == Some(false) && t(open[0], values).is_none() {
                let witness = values[&r.conclusion].witness.clone();
                values.insert(
                    open[0],
                    Verdict::refuted(witness, Basis::Inferred(r.label())),
                );
                changed = true;
            }
        }
        if !changed {
            return;
        }
    }
}

fn pass(count: usize, bound: Norm) -> Verdict {
    Verdict::unknown(bound).with_note(format!("no counterexample among {count} elements"))
}

/// Whether `a` is a product of atoms. `None` when undecided.
fn atom_product(
    m: &Monoid,
    a: &Element,
    memo: &mut BTreeMap<Element, Option<bool>>,
) -> Result<Option<bool>> {
    if m.unit(a)? {
        return Ok(Some(true));
    }
    if let Some(v) = memo.get(a) {
        return Ok(*v);
    }
    if let (Family::Bpq(f), Element::Leveled(l)) = (m.family(), a) {
        return Ok(Some(f.atom_factorizable(l)));
    }
    let scan = m.divisor_scan(a)?;
    let mut out = if scan.complete { Some(false) } else { None };
    for d in m.sorted(scan.all().cloned().collect())? {
        if m.unit(&d)? || !is_atom(m, &d)?.holds() {
            continue;
        }
        let q = m.quotient(&d, a)?.expect("divisor");
        match atom_product(m, &q, memo)? {
            Some(true) => {
                out = Some(true);
                break;
            }
            Some(false) => {}
            None => out = None,
        }
    }
    memo.insert(a.clone(), out);
    Ok(out)
}

fn empirical(m: &Monoid, p: Property, elems: &[Element], bound: Norm) -> Result<Verdict> {
    let n = elems.len();
    match p {
        Atomic => {
            let mut memo = BTreeMap::new();
            for a in elems {
                if atom_product(m, a, &mut memo)? == Some(false) {
                    return Ok(Verdict::refuted(vec![a.clone()], Basis::Exact)
                        .with_note("no factorisation into atoms"));
                }
            }
            Ok(pass(n, bound))
        }
        Accp => Ok(Verdict::unknown(bound).with_note("no periodic descent pattern registered")),
        Gcd => {
            for (i, a) in elems.iter().enumerate() {
                for b in &elems[i..] {
                    let g = m.gcd(a, b)?;
                    if g.fails() {
                        let mut w = vec![a.clone(), b.clone()];
                        w.extend(g.witness);
                        return Ok(
                            Verdict::refuted(w, g.basis).with_note("two maximal common divisors")
                        );
                    }
                }
            }
            Ok(pass(n, bound))
        }
        Decomposition => {
            for a in elems {
                let v = is_primal(m, a, bound)?;
                if v.fails() {
                    let mut w = vec![a.clone()];
                    w.extend(v.witness);
                    return Ok(Verdict::refuted(w, v.basis).with_note("a | bc without a split"));
                }
            }
            Ok(pass(n, bound))
        }
        AtomsArePrimes => {
            for a in elems {
                if !is_atom(m, a)?.holds() {
                    continue;
                }
                let v = is_prime(m, a, bound)?;
                if v.fails() {
                    let mut w = vec![a.clone()];
                    w.extend(v.witness);
                    return Ok(
                        Verdict::refuted(w, v.basis).with_note("atom a divides bc but neither")
                    );
                }
            }
            Ok(pass(n, bound))
        }
        Factorial => Ok(Verdict::unknown(bound)),
        Scheme(s) => {
            let mut truncated = 0;
            for a in elems {
                let v = scheme_holds_for(m, a, s)?;
                match v.kind {
                    VerdictKind::Refuted => {
                        return Ok(Verdict::refuted(vec![a.clone()], v.basis)
                            .with_note(format!("{a} has no factorisation of shape {s}")))
                    }
                    VerdictKind::NotFoundUpTo | VerdictKind::UnknownUpTo => truncated += 1,
                    _ => {}
                }
            }
            let v = pass(n, bound);
            Ok(if truncated > 0 {
                v.with_note(format!("{truncated} of {n} elements undecided"))
            } else {
                v
            })
        }
    }
}

/// Profile `m` on the elements of norm at most `bound`, merged with the
/// analytic claims for its family and closed under [`RULES`].
pub fn monoid_profile(m: &Monoid, bound: Norm) -> Result<MonoidProfile> {
    monoid_profile_with(m, bound, &Property::all())
}

/// As [`monoid_profile`], running the empirical checks only for `which`.
pub fn monoid_profile_with(m: &Monoid, bound: Norm, which: &[Property]) -> Result<MonoidProfile> {
    let claims = claims(m);
    let elems = if m.is_enumerable() {
        m.enumerate(effective_bound(m, bound))?
    } else if claims.is_empty() {
        return Err(Error::NonEnumerable { family: m.kind() });
    } else {
        Vec::new()
    };
    let bound = effective_bound(m, bound);
    let mut values = BTreeMap::new();
    let mut conflicts = Vec::new();
    for p in Property::all() {
        let emp = if m.is_enumerable() && which.contains(&p) {
            empirical(m, p, &elems, bound)?
        } else {
            Verdict::unknown(bound)
        };
        let claim = claims.iter().find(|c| c.property == p);
        let v = match claim {
            Some(c) => {
                if emp.truth().is_some_and(|t| t != c.holds) {
                    conflicts.push(format!("{p}: claimed {} but found {emp}", c.holds));
                }
                match emp.truth() {
                    Some(t) if t != c.holds => emp,
                    Some(_) => c
                        .verdict()
                        .with_note(format!("agrees with {}", emp.summary())),
                    None => c.verdict(),
                }
            }
            None => emp,
        };
        values.insert(p, v);
    }
    let before: BTreeMap<Property, Option<bool>> =
        values.iter().map(|(k, v)| (*k, v.truth())).collect();
    infer(&mut values);
    let mut violations = rule_violations(|p| values.get(&p).and_then(|v| v.truth()));
    // Inference fills only open entries, so a violation among the
    // original values is reported against those.
    violations.extend(
        rule_violations(|p| before[&p])
            .into_iter()
            .filter(|v| !violations.contains(v))
            .collect::<Vec<_>>(),
    );
    Ok(MonoidProfile {
        values,
        bound,
        claims,
        conflicts,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_monoid_is_factorial_everywhere() {
        let p = monoid_profile(&Monoid::free(2), 4).unwrap();
        assert!(p.is_consistent(), "{:?} {:?}", p.conflicts, p.violations);
        for prop in Property::all() {
            assert_eq!(p.get(prop).kind, VerdictKind::Proven, "{prop}");
        }
    }

    #[test]
    fn shifted_two_is_not_decomposition() {
        let m = Monoid::shifted(2, &[]).unwrap();
        let p = monoid_profile(&m, 12).unwrap();
        assert!(p.is_consistent(), "{:?} {:?}", p.conflicts, p.violations);
        let d = p.decomposition();
        assert!(d.fails());
        assert_eq!(d.witness[0], Element::Natural(2));
        assert!(p.get(Factorial).fails());
        assert!(p.accp().holds() && p.atomic().holds());
        assert!(p.scheme(Scheme::Iv).holds());
    }

    #[test]
    fn bpq_one_one() {
        let m = Monoid::bpq(1, 1, 6).unwrap();
        let p = monoid_profile(&m, 3).unwrap();
        assert!(p.is_consistent(), "{:?} {:?}", p.conflicts, p.violations);
        assert!(p.atomic().fails());
        assert_eq!(p.atomic().witness, vec![m.parse_element("y1").unwrap()]);
        assert!(p.gcd().holds());
        for s in Scheme::ALL {
            assert!(p.scheme(s).holds(), "{s}");
        }
    }

    #[test]
    fn rationals_profile() {
        let p = monoid_profile(&Monoid::rationals(), 0).unwrap();
        assert!(p.is_consistent());
        assert!(p.gcd().holds() && p.decomposition().holds());
        assert!(p.scheme(Scheme::Vi).holds());
        for s in &Scheme::ALL[..5] {
            assert!(p.scheme(*s).fails());
        }
    }

    #[test]
    fn inference_runs_backwards() {
        let mut v = BTreeMap::new();
        for p in Property::all() {
            v.insert(p, Verdict::unknown(1));
        }
        v.insert(Atomic, Verdict::proven(Basis::Exact));
        v.insert(
            Factorial,
            Verdict::refuted(vec![Element::Natural(2)], Basis::Exact),
        );
        infer(&mut v);
        assert!(v[&AtomsArePrimes].fails());
        assert!(v[&Decomposition].fails());
        assert!(v[&Gcd].fails());
        assert!(v[&Scheme(Scheme::I)].holds());
    }

    #[test]
    fn violation_detection() {
        let t = |p: Property| match p {
            Scheme(Scheme::Ii) => Some(true),
            Scheme(Scheme::I) => Some(false),
            _ => None,
        };
        assert!(rule_violations(t).is_empty());
        let t = |p: Property| match p {
            Scheme(Scheme::Ii) | Scheme(Scheme::Iii) => Some(true),
            Scheme(Scheme::I) => Some(false),
            _ => None,
        };
        assert_eq!(rule_violations(t), vec!["(iii) => (i)".to_string()]);
    }
}
