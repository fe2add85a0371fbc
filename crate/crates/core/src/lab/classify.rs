//! Classification rows: the two property grades together with the six
//! scheme verdicts, checked against the table of admissible patterns.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::factorize::Scheme;
use crate::kernel::{Basis, Element, Monoid, Norm, Verdict};
use crate::predicates::profile::{Property, RULES};
use crate::predicates::{monoid_profile, MonoidProfile};

/// A value in `{0, 1, 2}` known to lie in `lo..=hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Grade {
    pub lo: u8,
    pub hi: u8,
}

impl Grade {
    pub fn exact(v: u8) -> Self {
        Grade { lo: v, hi: v }
    }

    pub fn value(self) -> Option<u8> {
        (self.lo == self.hi).then_some(self.lo)
    }

    pub fn admits(self, v: u8) -> bool {
        (self.lo..=self.hi).contains(&v)
    }

    /// `strong` refines `weak`: 2 when strong holds, 1 when only weak
    /// holds, 0 when neither.
    fn from_pair(strong: Option<bool>, weak: Option<bool>) -> Self {
        let s: &[bool] = match strong {
            Some(b) => {
                if b {
                    &[true]
                } else {
                    &[false]
                }
            }
            None => &[false, true],
        };
        let w: &[bool] = match weak {
            Some(b) => {
                if b {
                    &[true]
                } else {
                    &[false]
                }
            }
            None => &[false, true],
        };
        let mut vals = Vec::new();
        for &x in s {
            for &y in w {
                // strong implies weak in both pairs
                if x && !y {
                    continue;
                }
                vals.push(u8::from(x) + u8::from(y));
            }
        }
        Grade {
            lo: vals.iter().copied().min().unwrap_or(0),
            hi: vals.iter().copied().max().unwrap_or(2),
        }
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{}-{}", self.lo, self.hi),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassificationRow {
    pub spec: String,
    /// 2 = ACCP, 1 = atomic without ACCP, 0 = not atomic.
    pub accp_atm: Grade,
    /// 2 = GCD, 1 = decomposition without GCD, 0 = neither.
    pub gcd_decomp: Grade,
    pub schemes: BTreeMap<Scheme, Verdict>,
    pub bound: Norm,
}

impl ClassificationRow {
    pub fn scheme(&self, s: Scheme) -> Option<bool> {
        self.schemes.get(&s).and_then(|v| v.truth())
    }

    /// `+`, `-` or `?` per scheme.
    pub fn pattern(&self) -> String {
        Scheme::ALL
            .iter()
            .map(|&s| match self.scheme(s) {
                Some(true) => '+',
                Some(false) => '-',
                None => '?',
            })
            .collect()
    }

    pub fn from_profile(spec: String, p: &MonoidProfile) -> Self {
        ClassificationRow {
            spec,
            accp_atm: Grade::from_pair(p.truth(Property::Accp), p.truth(Property::Atomic)),
            gcd_decomp: Grade::from_pair(p.truth(Property::Gcd), p.truth(Property::Decomposition)),
            schemes: Scheme::ALL
                .iter()
                .map(|&s| (s, p.scheme(s).clone()))
                .collect(),
            bound: p.bound,
        }
    }
}

impl fmt::Display for ClassificationRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ACCP/atm={} GCD/decomp={} (i)-(vi)={}",
            self.accp_atm,
            self.gcd_decomp,
            self.pattern()
        )
    }
}

/// Allowed values of one cell: `true`, `false` or either.
type Cell = Option<bool>;

/// One line of the admissible-pattern table.
#[derive(Clone, Copy, Debug)]
pub struct TableRow {
    pub accp_atm: &'static [u8],
    pub gcd_decomp: &'static [u8],
    /// (i)-(vi); `None` means either value.
    pub schemes: [Cell; 6],
}

const P: Cell = Some(true);
const M: Cell = Some(false);
const E: Cell = None;

/// The seven admissible (i)-(iv) patterns with the grades and (v), (vi)
/// values each allows. A grade of 1 in one column additionally requires 0
/// in the other (see [`grades_compatible`]).
pub const TABLE: [TableRow; 7] = [
    TableRow {
        accp_atm: &[2, 1, 0],
        gcd_decomp: &[2, 1, 0],
        schemes: [P, P, P, P, P, P],
    },
    TableRow {
        accp_atm: &[1, 0],
        gcd_decomp: &[0],
        schemes: [P, P, P, M, P, E],
    },
    TableRow {
        accp_atm: &[2, 1, 0],
        gcd_decomp: &[0],
        schemes: [P, M, P, P, E, P],
    },
    TableRow {
        accp_atm: &[1, 0],
        gcd_decomp: &[0],
        schemes: [P, M, P, M, E, E],
    },
    TableRow {
        accp_atm: &[2, 1, 0],
        gcd_decomp: &[1, 0],
        schemes: [P, M, M, P, E, P],
    },
    TableRow {
        accp_atm: &[1, 0],
        gcd_decomp: &[2, 1, 0],
        schemes: [P, M, M, M, E, E],
    },
    TableRow {
        accp_atm: &[0],
        gcd_decomp: &[2, 1, 0],
        schemes: [M, M, M, M, E, E],
    },
];

/// A 1 in either grade forces a 0 in the other.
pub fn grades_compatible(accp_atm: u8, gcd_decomp: u8) -> bool {
    !(accp_atm == 1 && gcd_decomp != 0 || gcd_decomp == 1 && accp_atm != 0)
}

impl TableRow {
    /// Classes in this line: grade pairs times (v), (vi) completions.
    pub fn grade_cases(&self) -> usize {
        self.accp_atm
            .iter()
            .flat_map(|&a| self.gcd_decomp.iter().map(move |&g| (a, g)))
            .filter(|&(a, g)| grades_compatible(a, g))
            .count()
    }

    pub fn extraction_cases(&self) -> usize {
        self.schemes[4..]
            .iter()
            .map(|c| if c.is_none() { 2 } else { 1 })
            .product()
    }

    fn admits(&self, row: &ClassificationRow) -> bool {
        let cells =
            Scheme::ALL
                .iter()
                .zip(&self.schemes)
                .all(|(&s, cell)| match (cell, row.scheme(s)) {
                    (Some(c), Some(t)) => *c == t,
                    _ => true,
                });
        cells
            && self.accp_atm.iter().any(|&a| {
                row.accp_atm.admits(a)
                    && self
                        .gcd_decomp
                        .iter()
                        .any(|&g| row.gcd_decomp.admits(g) && grades_compatible(a, g))
            })
    }
}

/// Classify `m` from its profile within `bound`.
pub fn classify(m: &Monoid, bound: Norm) -> Result<ClassificationRow> {
    let p = monoid_profile(m, bound)?;
    Ok(ClassificationRow::from_profile(m.spec().to_text(), &p))
}

/// The property implications a row violates, with exact values only.
fn violated_arrows(row: &ClassificationRow) -> Vec<String> {
    let grade = |g: Grade, strong: bool| -> Option<bool> {
        // strong: value 2; weak: value >= 1
        let t = if strong { 2 } else { 1 };
        if g.lo >= t {
            Some(true)
        } else if g.hi < t {
            Some(false)
        } else {
            None
        }
    };
    let truth = |p: Property| match p {
        Property::Accp => grade(row.accp_atm, true),
        Property::Atomic => grade(row.accp_atm, false),
        Property::Gcd => grade(row.gcd_decomp, true),
        Property::Decomposition => grade(row.gcd_decomp, false),
        Property::Scheme(s) => row.scheme(s),
        Property::AtomsArePrimes | Property::Factorial => None,
    };
    // Forward closure of the true values; each derived value remembers
    // the known-true properties it rests on.
    let all = Property::all();
    let mut basis: BTreeMap<Property, Vec<Property>> = all
        .iter()
        .filter(|&&p| truth(p) == Some(true))
        .map(|&p| (p, vec![p]))
        .collect();
    loop {
        let mut changed = false;
        for r in RULES {
            if basis.contains_key(&r.conclusion)
                || !r.premises.iter().all(|p| basis.contains_key(p))
            {
                continue;
            }
            let mut b: Vec<Property> = r.premises.iter().flat_map(|p| basis[p].clone()).collect();
            b.sort();
            b.dedup();
            basis.insert(r.conclusion, b);
            changed = true;
        }
        if !changed {
            break;
        }
    }
    let mut out: Vec<String> = all
        .iter()
        .filter(|&&p| truth(p) == Some(false))
        .filter_map(|p| basis.get(p).map(|b| (p, b)))
        .map(|(p, b)| {
            let names: Vec<String> = b.iter().map(|x| x.label()).collect();
            format!("{} => {p}", names.join(" & "))
        })
        .collect();
    if let (Some(a), Some(g)) = (row.accp_atm.value(), row.gcd_decomp.value()) {
        if !grades_compatible(a, g) {
            out.push(format!("grade 1 needs 0 in the other column ({a}, {g})"));
        }
    }
    out
}

/// Proven iff every row is admitted by some table line. Refuted carries
/// the index of the first offending row and names the violated arrow.
pub fn table_consistency(rows: &[ClassificationRow]) -> Verdict {
    for (i, row) in rows.iter().enumerate() {
        if TABLE.iter().any(|t| t.admits(row)) {
            continue;
        }
        let arrows = violated_arrows(row);
        let why = if arrows.is_empty() {
            format!("row {i} ({row}) matches no table line")
        } else {
            format!("row {i} ({row}) violates {}", arrows.join("; "))
        };
        return Verdict::refuted(vec![Element::Natural(i as u64)], Basis::Exact).with_note(why);
    }
    Verdict::proven(Basis::Exact).with_note(format!("{} rows", rows.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predicates::profile::rule_violations;

    fn synthetic(a: Grade, g: Grade, s: [Option<bool>; 6]) -> ClassificationRow {
        let schemes = Scheme::ALL
            .iter()
            .zip(s)
            .map(|(&sc, t)| {
                let v = match t {
                    Some(true) => Verdict::proven(Basis::Exact),
                    Some(false) => Verdict::refuted(vec![Element::Natural(0)], Basis::Exact),
                    None => Verdict::unknown(1),
                };
                (sc, v)
            })
            .collect();
        ClassificationRow {
            spec: String::new(),
            accp_atm: a,
            gcd_decomp: g,
            schemes,
            bound: 1,
        }
    }

    #[test]
    fn table_counts() {
        let left: usize = TABLE.iter().map(|t| t.grade_cases()).sum();
        let right: usize = TABLE.iter().map(|t| t.extraction_cases()).sum();
        let all: usize = TABLE
            .iter()
            .map(|t| t.grade_cases() * t.extraction_cases())
            .sum();
        assert_eq!((left, right, all), (24, 19, 60));
    }

    /// The table is exactly the set of grade/scheme tuples that extend to
    /// an assignment closed under the rules.
    #[test]
    fn table_matches_rules() {
        let mut from_rules = std::collections::BTreeSet::new();
        for bits in 0u32..1 << 12 {
            let b = |i: u32| bits >> i & 1 == 1;
            let (accp, atomic, gcd, decomp) = (b(0), b(1), b(2), b(3));
            if accp && !atomic || gcd && !decomp {
                continue;
            }
            let truth = |p: Property| {
                Some(match p {
                    Property::Accp => accp,
                    Property::Atomic => atomic,
                    Property::Gcd => gcd,
                    Property::Decomposition => decomp,
                    Property::AtomsArePrimes => b(4),
                    Property::Factorial => b(5),
                    Property::Scheme(s) => b(6 + s.index() as u32),
                })
            };
            if rule_violations(truth).is_empty() {
                from_rules.insert((
                    u8::from(accp) + u8::from(atomic),
                    u8::from(gcd) + u8::from(decomp),
                    bits >> 6,
                ));
            }
        }
        let mut from_table = std::collections::BTreeSet::new();
        for a in 0..3u8 {
            for g in 0..3u8 {
                for s in 0u32..64 {
                    let row = synthetic(
                        Grade::exact(a),
                        Grade::exact(g),
                        std::array::from_fn(|i| Some(s >> i & 1 == 1)),
                    );
                    if TABLE.iter().any(|t| t.admits(&row)) {
                        from_table.insert((a, g, s));
                    }
                }
            }
        }
        assert_eq!(from_rules.len(), 60);
        assert_eq!(from_rules, from_table);
    }

    #[test]
    fn consistency_verdicts() {
        assert!(table_consistency(&[]).holds());
        let bad = synthetic(
            Grade::exact(0),
            Grade::exact(0),
            [Some(false), Some(true), None, None, None, None],
        );
        let v = table_consistency(&[bad]);
        assert!(v.fails());
        assert!(v.note.unwrap().contains("(ii) => (i)"));
        let partial = synthetic(
            Grade { lo: 0, hi: 2 },
            Grade::exact(2),
            [Some(true), None, None, None, None, Some(true)],
        );
        assert!(table_consistency(&[partial]).holds());
    }

    #[test]
    fn classify_known_monoids() {
        let rows = vec![
            classify(&Monoid::bpq(1, 1, 6).unwrap(), 4).unwrap(),
            classify(&Monoid::rationals(), 4).unwrap(),
            classify(&Monoid::free(2), 4).unwrap(),
        ];
        assert_eq!(rows[0].pattern(), "++++++");
        assert_eq!(rows[0].accp_atm, Grade::exact(0));
        assert_eq!(rows[0].gcd_decomp, Grade::exact(2));
        assert_eq!(rows[1].pattern(), "-----+");
        assert_eq!(rows[2].pattern(), "++++++");
        assert_eq!(rows[2].accp_atm, Grade::exact(2));
        assert!(table_consistency(&rows).holds());
    }
}
