//! Small finite fields `GF(p^k)` given by an explicit modulus.
//!
//! Elements are encoded as integers whose base-`p` digits are the
//! coefficients of the residue polynomial, constant term first.

use crate::error::{Error, Result};

const MAX_ORDER: u32 = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisField {
    p: u32,
    k: u32,
    order: u32,
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// Remainder of `a` modulo monic `m` over `GF(p)`; coefficients low first.
fn prime_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().expect("non-empty");
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

impl GaloisField {
    /// `modulus` is monic and irreducible over `GF(p)`, constant term first.
    pub fn new(p: u32, modulus: &[u32]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::spec("p", format!("{p} is not prime")));
        }
        if modulus.len() < 2 {
            return Err(Error::spec("modulus", "degree must be at least 1"));
        }
        if *modulus.last().expect("non-empty") != 1 {
            return Err(Error::spec("modulus", "must be monic"));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::spec(
                "modulus",
                format!("coefficients must lie below {p}"),
            ));
        }
        let k = (modulus.len() - 1) as u32;
        let order = p
            .checked_pow(k)
            .filter(|&o| o <= MAX_ORDER)
            .ok_or_else(|| Error::spec("modulus", format!("field order exceeds {MAX_ORDER}")))?;
        // Irreducible iff no monic factor of degree 1..=k/2.
        for d in 1..=k / 2 {
            for code in 0..p.pow(d) {
                let mut g = digits(code, p, d as usize);
                g.push(1);
                if prime_rem(modulus, &g, p).is_empty() {
                    return Err(Error::spec("modulus", "is reducible"));
                }
            }
        }
        let n = order as usize;
        let mut f = GaloisField {
            p,
            k,
            order,
            modulus: modulus.to_vec(),
            add: vec![0; n * n],
            mul: vec![0; n * n],
            neg: vec![0; n],
            inv: vec![0; n],
        };
        for a in 0..order {
            let da = digits(a, p, k as usize);
            f.neg[a as usize] = undigits(&da.iter().map(|&c| (p - c) % p).collect::<Vec<_>>(), p);
            for b in 0..order {
                let db = digits(b, p, k as usize);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                f.add[a as usize * n + b as usize] = undigits(&s, p);
                let mut prod = vec![0u32; 2 * k as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                f.mul[a as usize * n + b as usize] = undigits(&prime_rem(&prod, modulus, p), p);
            }
        }
        for a in 1..order {
            f.inv[a as usize] = (1..order)
                .find(|&b| f.mul(a, b) == 1)
                .expect("field has inverses");
        }
        Ok(f)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.order + b) as usize]
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.order + b) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        let mut acc = 1;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// Elements fixed by `a ↦ a^{p^d}`, i.e. the subfield of degree `d`.
    pub fn subfield(&self, d: u32) -> Result<Vec<u32>> {
        if d == 0 || !self.k.is_multiple_of(d) {
            return Err(Error::spec(
                "base_degree",
                format!("{d} does not divide {}", self.k),
            ));
        }
        let e = (self.p as u64).pow(d);
        Ok((0..self.order).filter(|&a| self.pow(a, e) == a).collect())
    }

    /// Integer `n` embedded via the prime subfield.
    pub fn from_int(&self, n: u32) -> u32 {
        n % self.p
    }
}

fn digits(mut code: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(code % p);
        code /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> GaloisField {
        GaloisField::new(2, &[1, 1, 1]).unwrap()
    }

    #[test]
    fn gf4_arithmetic() {
        let f = gf4();
        // ω = 2, ω^2 = ω + 1 = 3
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.add(2, 3), 1);
        assert_eq!(f.inv(3), Some(2));
        assert_eq!(f.pow(2, 3), 1);
    }

    #[test]
    fn field_axioms_hold() {
        for (p, m) in [
            (2u32, vec![1u32, 1, 1]),
            (3, vec![1, 0, 1]),
            (2, vec![1, 1, 0, 1]),
        ] {
            let f = GaloisField::new(p, &m).unwrap();
            let n = f.order();
            for a in 0..n {
                assert_eq!(f.add(a, f.neg(a)), 0);
                for b in 0..n {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..n {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn subfields() {
        let f = gf4();
        assert_eq!(f.subfield(1).unwrap(), vec![0, 1]);
        assert_eq!(f.subfield(2).unwrap(), vec![0, 1, 2, 3]);
        assert!(f.subfield(3).is_err());
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(GaloisField::new(2, &[1, 0, 1]).is_err());
        assert!(GaloisField::new(4, &[1, 1]).is_err());
        assert!(GaloisField::new(2, &[1, 1, 0]).is_err());
    }
}
