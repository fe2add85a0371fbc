//! The additive monoid `Q≥0`.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::kernel::{Basis, DivisorScan, Element, FamilyKind, FamilyOps, Norm, Rational, Verdict};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NonnegRationals;

pub(crate) fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let err = |e: std::num::ParseIntError| Error::parse(0, format!("`{t}`: {e}"));
    let r = match t.split_once('/') {
        Some((n, d)) => {
            let d: u64 = d.trim().parse().map_err(err)?;
            if d == 0 {
                return Err(Error::parse(0, "zero denominator"));
            }
            Ratio::new(n.trim().parse().map_err(err)?, d)
        }
        None => Ratio::from_integer(t.parse().map_err(err)?),
    };
    Ok(r)
}

impl NonnegRationals {
    fn val(a: &Element) -> Rational {
        match a {
            Element::Rational(r) => *r,
            _ => unreachable!("checked element"),
        }
    }
}

impl FamilyOps for NonnegRationals {
    fn kind(&self) -> FamilyKind {
        FamilyKind::NonnegRationals
    }

    fn check(&self, a: &Element) -> Result<()> {
        match a {
            Element::Rational(_) => Ok(()),
            _ => Err(Error::FamilyMismatch {
                expected: self.kind(),
                found: a.to_string(),
            }),
        }
    }

    fn identity(&self) -> Element {
        Element::Rational(Ratio::from_integer(0))
    }

    fn compose(&self, a: &Element, b: &Element) -> Result<Element> {
        let (a, b) = (Self::val(a), Self::val(b));
        let den = num_integer_lcm(*a.denom(), *b.denom()).ok_or(Error::Overflow)?;
        let na = a
            .numer()
            .checked_mul(den / a.denom())
            .ok_or(Error::Overflow)?;
        let nb = b
            .numer()
            .checked_mul(den / b.denom())
            .ok_or(Error::Overflow)?;
        Ok(Element::Rational(Ratio::new(
            na.checked_add(nb).ok_or(Error::Overflow)?,
            den,
        )))
    }

    fn quotient(&self, a: &Element, b: &Element) -> Result<Option<Element>> {
        let (a, b) = (Self::val(a), Self::val(b));
        Ok((a <= b).then(|| Element::Rational(b - a)))
    }

    fn is_unit(&self, a: &Element) -> bool {
        *Self::val(a).numer() == 0
    }

    fn units(&self) -> Result<Vec<Element>> {
        Ok(vec![self.identity()])
    }

    fn norm(&self, _a: &Element) -> Result<Norm> {
        Err(Error::NonEnumerable {
            family: self.kind(),
        })
    }

    fn divisor_scan(&self, _a: &Element) -> Result<DivisorScan> {
        Err(Error::NonEnumerable {
            family: self.kind(),
        })
    }

    fn enumerate(&self, _bound: Norm) -> Result<Vec<Element>> {
        Err(Error::NonEnumerable {
            family: self.kind(),
        })
    }

    fn parse_element(&self, s: &str) -> Result<Element> {
        Ok(Element::Rational(parse_rational(s)?))
    }

    fn rpr(&self, a: &Element, b: &Element) -> Result<Option<Verdict>> {
        let m = Self::val(a).min(Self::val(b));
        Ok(Some(if *m.numer() == 0 {
            Verdict::proven(Basis::Analytic(
                "common divisors lie below the minimum".into(),
            ))
        } else {
            Verdict::refuted(vec![Element::Rational(m)], Basis::Exact)
        }))
    }

    fn gcd(&self, a: &Element, b: &Element) -> Result<Option<Verdict>> {
        let m = Self::val(a).min(Self::val(b));
        Ok(Some(Verdict::proven_with(
            vec![Element::Rational(m)],
            Basis::Analytic("divisibility is the usual order".into()),
        )))
    }
}

fn num_integer_lcm(a: u64, b: u64) -> Option<u64> {
    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }
    (a / gcd(a, b)).checked_mul(b)
}

#[cfg(test)]
mod tests {
    use crate::kernel::Monoid;

    #[test]
    fn arithmetic_and_order() {
        let m = Monoid::rationals();
        let a = m.parse_element("1/2").unwrap();
        let b = m.parse_element("3/4").unwrap();
        assert_eq!(m.compose(&a, &b).unwrap().to_string(), "5/4");
        assert_eq!(m.quotient(&a, &b).unwrap().unwrap().to_string(), "1/4");
        assert!(m.quotient(&b, &a).unwrap().is_none());
        assert!(m.enumerate(3).is_err());
        assert!(m.parse_element("1/0").is_err());
    }
}
