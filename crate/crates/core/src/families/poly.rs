//! The multiplicative monoid of `T = L + xF[x]` for a finite field
//! extension `L ⊆ F`.

use std::fmt;

use crate::error::{Error, Result};
use crate::families::gf::GaloisField;
use crate::families::vecs;
use crate::kernel::{DivisorScan, Element, FamilyKind, FamilyOps, Norm};

/// Non-zero polynomial over `F`, coefficients constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly(pub Vec<u32>);

impl Poly {
    pub fn degree(&self) -> u64 {
        self.0.len() as u64 - 1
    }

    pub fn constant(&self) -> u32 {
        self.0[0]
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Polynomial arithmetic over `F`. Zero is the empty vector.
pub mod fx {
    use super::*;

    pub fn mul(f: &GaloisField, a: &[u32], b: &[u32]) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        trim(out)
    }

    pub fn scale(f: &GaloisField, a: &[u32], c: u32) -> Vec<u32> {
        trim(a.iter().map(|&x| f.mul(x, c)).collect())
    }

    /// Quotient and remainder; `b` must be non-zero.
    pub fn divrem(f: &GaloisField, a: &[u32], b: &[u32]) -> (Vec<u32>, Vec<u32>) {
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let lead_inv = f.inv(b[db]).expect("non-zero leading coefficient");
        if r.len() < b.len() {
            return (Vec::new(), trim(r));
        }
        let mut q = vec![0u32; r.len() - db];
        while r.len() > db && !r.is_empty() {
            let top = r.len() - 1;
            let c = f.mul(r[top], lead_inv);
            let shift = top - db;
            q[shift] = c;
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = f.sub(r[shift + i], f.mul(c, bc));
            }
            r.pop();
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn exact_div(f: &GaloisField, a: &[u32], b: &[u32]) -> Option<Vec<u32>> {
        let (q, r) = divrem(f, a, b);
        r.is_empty().then_some(q)
    }

    pub fn monic(f: &GaloisField, a: &[u32]) -> (u32, Vec<u32>) {
        let lead = *a.last().expect("non-zero");
        let inv = f.inv(lead).expect("non-zero");
        (lead, scale(f, a, inv))
    }

    pub fn derivative(f: &GaloisField, a: &[u32]) -> Vec<u32> {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| {
                    let k = f.from_int((i as u32) % f.p());
                    f.mul(k, c)
                })
                .collect(),
        )
    }

    /// Monic gcd.
    pub fn gcd(f: &GaloisField, a: &[u32], b: &[u32]) -> Vec<u32> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let (_, r) = divrem(f, &a, &b);
            a = b;
            b = r;
        }
        if a.is_empty() {
            a
        } else {
            monic(f, &a).1
        }
    }

    /// All monic polynomials of degree `d`.
    pub fn monic_of_degree(f: &GaloisField, d: usize) -> Vec<Vec<u32>> {
        let q = f.order() as u64;
        let count = q.pow(d as u32);
        (0..count)
            .map(|mut code| {
                let mut v = Vec::with_capacity(d + 1);
                for _ in 0..d {
                    v.push((code % q) as u32);
                    code /= q;
                }
                v.push(1);
                v
            })
            .collect()
    }

    /// Monic irreducible factors with multiplicities, by trial division.
    pub fn factor(f: &GaloisField, a: &[u32]) -> (u32, Vec<(Vec<u32>, u32)>) {
        let (lead, mut rest) = monic(f, a);
        let mut out: Vec<(Vec<u32>, u32)> = Vec::new();
        let mut d = 1;
        while 2 * d < rest.len() {
            for g in monic_of_degree(f, d) {
                let mut e = 0;
                while let Some(q) = exact_div(f, &rest, &g) {
                    rest = q;
                    e += 1;
                }
                if e > 0 {
                    out.push((g, e));
                }
                if 2 * d > rest.len() - 1 {
                    break;
                }
            }
            d += 1;
        }
        if rest.len() > 1 {
            match out.iter_mut().find(|(g, _)| *g == rest) {
                Some((_, e)) => *e += 1,
                None => out.push((rest, 1)),
            }
        }
        out.sort();
        (lead, out)
    }

    pub fn is_irreducible(f: &GaloisField, a: &[u32]) -> bool {
        let (_, fs) = factor(f, a);
        a.len() > 1 && fs.len() == 1 && fs[0].1 == 1
    }

    /// No square of a non-constant polynomial divides `a`; brute force.
    pub fn squarefree_brute(f: &GaloisField, a: &[u32]) -> bool {
        let deg = a.len() - 1;
        (1..=deg / 2).all(|d| {
            monic_of_degree(f, d)
                .iter()
                .all(|g| exact_div(f, a, &mul(f, g, g)).is_none())
        })
    }

    /// Square-free iff `gcd(a, a')` is constant.
    pub fn squarefree_derivative(f: &GaloisField, a: &[u32]) -> bool {
        gcd(f, a, &derivative(f, a)).len() <= 1
    }

    /// Every non-zero polynomial of degree at most `d`.
    pub fn all_up_to(f: &GaloisField, d: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for deg in 0..=d {
            for m in monic_of_degree(f, deg) {
                for c in 1..f.order() {
                    out.push(scale(f, &m, c));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySubring {
    field: GaloisField,
    base_degree: u32,
    base: Vec<u32>,
    in_base: Vec<bool>,
    max_degree: u32,
}

impl PolySubring {
    pub fn new(
        p: u32,
        base_degree: u32,
        ext_degree: u32,
        modulus: &[u32],
        max_degree: u32,
    ) -> Result<Self> {
        let field = GaloisField::new(p, modulus)?;
        if field.degree() != ext_degree {
            return Err(Error::spec(
                "ext_degree",
                format!("modulus has degree {}", field.degree()),
            ));
        }
        let base = field.subfield(base_degree)?;
        let mut in_base = vec![false; field.order() as usize];
        for &c in &base {
            in_base[c as usize] = true;
        }
        Ok(PolySubring {
            field,
            base_degree,
            base,
            in_base,
            max_degree,
        })
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn base_degree(&self) -> u32 {
        self.base_degree
    }

    /// Elements of `L`, including zero.
    pub fn base(&self) -> &[u32] {
        &self.base
    }

    pub fn in_base(&self, c: u32) -> bool {
        self.in_base[c as usize]
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn contains(&self, a: &[u32]) -> bool {
        !a.is_empty() && *a.last().expect("non-empty") != 0 && self.in_base(a[0])
    }

    pub fn element(&self, a: Vec<u32>) -> Element {
        Element::Poly(Poly(trim(a)))
    }

    /// `{c x : c ∈ F*} ∪ {λ g : g irreducible, g(0) = 1, λ ∈ L*}` up to
    /// degree `bound`.
    pub fn atom_formula(&self, bound: u64) -> Vec<Element> {
        let f = &self.field;
        let mut out = Vec::new();
        if bound >= 1 {
            for c in 1..f.order() {
                out.push(self.element(vec![0, c]));
            }
        }
        for d in 1..=bound as usize {
            for m in fx::monic_of_degree(f, d) {
                if m[0] == 0 || !fx::is_irreducible(f, &m) {
                    continue;
                }
                let normal = fx::scale(f, &m, f.inv(m[0]).expect("non-zero"));
                for &l in self.base.iter().filter(|&&l| l != 0) {
                    out.push(self.element(fx::scale(f, &normal, l)));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    fn coeffs(a: &Element) -> &[u32] {
        match a {
            Element::Poly(p) => &p.0,
            _ => unreachable!("checked element"),
        }
    }
}

impl FamilyOps for PolySubring {
    fn kind(&self) -> FamilyKind {
        FamilyKind::PolySubring
    }

    fn check(&self, a: &Element) -> Result<()> {
        match a {
            Element::Poly(p)
                if p.0.iter().all(|&c| c < self.field.order()) && self.contains(&p.0) =>
            {
                Ok(())
            }
            Element::Poly(_) => Err(Error::NotAnElement(a.to_string())),
            _ => Err(Error::FamilyMismatch {
                expected: self.kind(),
                found: a.to_string(),
            }),
        }
    }

    fn identity(&self) -> Element {
        self.element(vec![1])
    }

    fn compose(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(self.element(fx::mul(&self.field, Self::coeffs(a), Self::coeffs(b))))
    }

    fn quotient(&self, a: &Element, b: &Element) -> Result<Option<Element>> {
        Ok(fx::exact_div(&self.field, Self::coeffs(b), Self::coeffs(a))
            .filter(|h| self.contains(h))
            .map(|h| self.element(h)))
    }

    fn is_unit(&self, a: &Element) -> bool {
        Self::coeffs(a).len() == 1
    }

    fn units(&self) -> Result<Vec<Element>> {
        Ok(self
            .base
            .iter()
            .filter(|&&c| c != 0)
            .map(|&c| self.element(vec![c]))
            .collect())
    }

    fn norm(&self, a: &Element) -> Result<Norm> {
        Ok(Self::coeffs(a).len() as u64 - 1)
    }

    /// Divisors read off the factorisation in `F[x]`.
    fn divisor_scan(&self, a: &Element) -> Result<DivisorScan> {
        let f = &self.field;
        let a = Self::coeffs(a);
        let (_, fs) = fx::factor(f, a);
        let upper: Vec<u64> = fs.iter().map(|(_, e)| *e as u64).collect();
        let mut out = Vec::new();
        for exps in vecs::box_vectors(&upper, 1 << 20)? {
            let mut m = vec![1u32];
            for ((g, _), &e) in fs.iter().zip(&exps) {
                for _ in 0..e {
                    m = fx::mul(f, &m, g);
                }
            }
            for c in 1..f.order() {
                let d = fx::scale(f, &m, c);
                if !self.contains(&d) {
                    continue;
                }
                if let Some(h) = fx::exact_div(f, a, &d) {
                    if self.contains(&h) {
                        out.push(self.element(d));
                    }
                }
            }
        }
        Ok(DivisorScan::single(out))
    }

    fn enumerate(&self, bound: Norm) -> Result<Vec<Element>> {
        if bound > self.max_degree as u64 {
            return Err(Error::TooLarge(format!(
                "degree bound {bound} exceeds max_degree {}",
                self.max_degree
            )));
        }
        let f = &self.field;
        let mut out: Vec<Element> = fx::all_up_to(f, bound as usize)
            .into_iter()
            .filter(|p| self.contains(p))
            .map(|p| self.element(p))
            .collect();
        out.sort_by_key(|e| (Self::coeffs(e).len(), e.clone()));
        Ok(out)
    }

    fn parse_element(&self, s: &str) -> Result<Element> {
        let v = vecs::parse_tuple(s)?;
        let v: Vec<u32> = v
            .into_iter()
            .map(|c| u32::try_from(c).map_err(|_| Error::Overflow))
            .collect::<Result<_>>()?;
        if v.iter().any(|&c| c >= self.field.order()) {
            return Err(Error::NotAnElement(s.to_string()));
        }
        let v = trim(v);
        if v.is_empty() {
            return Err(Error::NotAnElement(s.to_string()));
        }
        Ok(Element::Poly(Poly(v)))
    }
}
