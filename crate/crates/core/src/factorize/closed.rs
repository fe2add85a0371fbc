//! Closed-form factorisations for exponent vectors and the families built
//! on them.

use crate::error::Result;
use crate::families::poly::fx;
use crate::families::{Bpq, PolySubring};
use crate::kernel::{Element, Monoid};

use super::{Factorization, Outcome, Scheme};

/// Part vectors of a closed form and, for (v), the power `n`.
pub(crate) struct Closed {
    pub parts: Vec<Vec<u64>>,
    pub power: Option<u64>,
}

fn indicator(k: &[u64], f: impl Fn(u64) -> bool) -> Vec<u64> {
    k.iter().map(|&x| u64::from(f(x))).collect()
}

/// Closed forms on an exponent vector `k`.
///
/// (ii) nests the level sets `{j : k_j ≥ m + 1 - i}`, (iii) takes the exact
/// level sets `{j : k_j = i}`, (iv) the binary digits, (v) splits off the
/// support and (vi) takes `⌊k/2⌋` and `k mod 2`.
pub(crate) fn closed_form(k: &[u64], scheme: Scheme) -> Closed {
    let top = k.iter().copied().max().unwrap_or(0);
    let zero = vec![0; k.len()];
    let parts = match scheme {
        Scheme::I | Scheme::Ii => {
            if top == 0 {
                vec![zero]
            } else {
                (1..=top).map(|i| indicator(k, |x| x > top - i)).collect()
            }
        }
        Scheme::Iii => {
            if top == 0 {
                vec![zero]
            } else {
                (1..=top).map(|i| indicator(k, |x| x == i)).collect()
            }
        }
        Scheme::Iv => {
            let bits = 64 - top.leading_zeros();
            if bits == 0 {
                vec![zero]
            } else {
                (0..bits)
                    .map(|i| indicator(k, |x| (x >> i) & 1 == 1))
                    .collect()
            }
        }
        Scheme::V => {
            let c = indicator(k, |x| x > 0);
            let b = k.iter().zip(&c).map(|(x, y)| x - y).collect();
            vec![b, c]
        }
        Scheme::Vi => vec![
            k.iter().map(|x| x / 2).collect(),
            k.iter().map(|x| x % 2).collect(),
        ],
    };
    Closed {
        parts,
        power: (scheme == Scheme::V).then_some(top.max(1)),
    }
}

pub(crate) fn from_vectors(
    scheme: Scheme,
    c: Closed,
    mut map: impl FnMut(Vec<u64>) -> Element,
) -> Factorization {
    let mut f = Factorization::new(scheme, c.parts.into_iter().map(&mut map).collect());
    f.power = c.power;
    f
}

/// `Q≥0`: only (vi) holds for non-zero elements, via `a = 2(a/2) + 0`.
pub(crate) fn rationals(m: &Monoid, a: &Element, scheme: Scheme) -> Outcome {
    let zero = m.identity();
    if *a == zero {
        let parts = match scheme {
            Scheme::V | Scheme::Vi => vec![zero.clone(), zero],
            _ => vec![zero],
        };
        let mut f = Factorization::new(scheme, parts);
        if scheme == Scheme::V {
            f.power = Some(1);
        }
        return Outcome::Found(f);
    }
    match (scheme, a) {
        (Scheme::Vi, Element::Rational(r)) => Outcome::Found(Factorization::new(
            Scheme::Vi,
            vec![Element::Rational(r / 2), zero],
        )),
        _ => Outcome::Exhausted,
    }
}

/// `B_{p,q}`: closed forms at a level where the representation is free.
///
/// Elements without `y`, and every element when `p = q = 1`, factor at
/// their own level. Otherwise only (vi) can hold and needs an even
/// `y`-exponent, available at some level iff `q` or the exponent is even.
pub(crate) fn bpq(m: &Monoid, f: &Bpq, a: &Element, scheme: Scheme) -> Result<Outcome> {
    let lv = match a {
        Element::Leveled(l) => l,
        _ => unreachable!("checked element"),
    };
    let at_level = |level: u32| -> Result<Factorization> {
        let w = f.level_vector(lv, level)?;
        Ok(from_vectors(scheme, closed_form(&w, scheme), |v| {
            f.element(level, &v)
        }))
    };
    if lv.y == 0 || f.is_unit_case() {
        return Ok(Outcome::Found(at_level(lv.level)?));
    }
    if scheme != Scheme::Vi {
        return Ok(Outcome::Exhausted);
    }
    if f.q() % 2 == 1 && lv.y % 2 == 1 {
        return Ok(Outcome::Exhausted);
    }
    for level in lv.level..=f.cap() {
        if f.level_vector(lv, level)?[f.cap() as usize] % 2 == 0 {
            let fac = at_level(level)?;
            debug_assert!(super::verify(m, a, &fac)?.holds());
            return Ok(Outcome::Found(fac));
        }
    }
    Ok(Outcome::Truncated)
}

/// `L + xF[x]`: closed forms on the factorisation in `F[x]`, with parts
/// normalised to constant term 1 and the leftover unit absorbed into an
/// exponent-1 part. Returns `None` when no absorption keeps every part in
/// the monoid.
pub(crate) fn poly(
    m: &Monoid,
    p: &PolySubring,
    a: &Element,
    scheme: Scheme,
) -> Result<Option<Factorization>> {
    let field = p.field();
    let coeffs = match a {
        Element::Poly(q) => q.coeffs().to_vec(),
        _ => unreachable!("checked element"),
    };
    let (_, fs) = fx::factor(field, &coeffs);
    let k: Vec<u64> = fs.iter().map(|(_, e)| *e as u64).collect();
    let c = closed_form(&k, scheme);
    let power = c.power;
    let mut parts: Vec<Vec<u32>> = c
        .parts
        .iter()
        .map(|v| {
            let mut prod = vec![1u32];
            for ((g, _), &e) in fs.iter().zip(v) {
                for _ in 0..e {
                    prod = fx::mul(field, &prod, g);
                }
            }
            if prod[0] != 0 {
                let inv = field.inv(prod[0]).expect("non-zero");
                prod = fx::scale(field, &prod, inv);
            }
            prod
        })
        .collect();
    let mut f = Factorization::new(scheme, Vec::new());
    f.exponents = match scheme {
        Scheme::V => vec![1, 1],
        Scheme::Vi => vec![2, 1],
        _ => Factorization::new(scheme, vec![m.identity(); parts.len()]).exponents,
    };
    let mut prod = vec![1u32];
    for (q, &e) in parts.iter().zip(&f.exponents) {
        for _ in 0..e {
            prod = fx::mul(field, &prod, q);
        }
    }
    let unit = match fx::exact_div(field, &coeffs, &prod) {
        Some(u) if u.len() == 1 => u[0],
        _ => return Ok(None),
    };
    let slots: Vec<usize> = (0..parts.len()).filter(|&i| f.exponents[i] == 1).collect();
    let slot = slots
        .iter()
        .copied()
        .find(|&i| parts[i][0] == 0)
        .or_else(|| slots.first().copied());
    let Some(slot) = slot else {
        return Ok(None);
    };
    parts[slot] = fx::scale(field, &parts[slot], unit);
    if !parts.iter().all(|q| p.contains(q)) {
        return Ok(None);
    }
    f.parts = parts.into_iter().map(|q| p.element(q)).collect();
    f.power = power;
    Ok(Some(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_recompose() {
        for k in [vec![0u64, 0], vec![3, 1], vec![5, 2, 7], vec![1, 1, 1]] {
            for s in Scheme::ALL {
                let c = closed_form(&k, s);
                let f = Factorization::new(s, vec![Element::vector([]); c.parts.len()]);
                let mut sum = vec![0u64; k.len()];
                for (part, e) in c.parts.iter().zip(&f.exponents) {
                    for (x, y) in sum.iter_mut().zip(part) {
                        *x += e * y;
                    }
                }
                assert_eq!(sum, k, "{s} on {k:?}");
            }
        }
    }
}
