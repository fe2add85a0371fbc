//! Concrete monoid families and their spec format.

pub mod affine;
pub mod bpq;
pub mod free;
pub mod gf;
pub mod grammar;
pub mod orthant;
pub mod poly;
pub mod rationals;
pub mod shifted;
pub(crate) mod vecs;

use std::fmt;

use crate::error::Result;
use crate::kernel::{FamilyOps, Monoid};

pub use affine::{AffineSubmonoid, MemberTable};
pub use bpq::{Bpq, LeveledVector};
pub use free::FreeCommutative;
pub use gf::GaloisField;
pub use orthant::LatticeOrthant;
pub use poly::{Poly, PolySubring};
pub use rationals::NonnegRationals;
pub use shifted::ShiftedNumerical;

/// Declarative description of a monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidSpec {
    /// `N^rank`.
    FreeCommutative { rank: usize },
    /// `{0} ∪ extras ∪ [threshold, ∞)`.
    ShiftedNumerical { threshold: u64, extras: Vec<u64> },
    /// Submonoid of `N^rank` generated by `gens`.
    SubmonoidNn { rank: usize, gens: Vec<Vec<u64>> },
    /// `⟨x_i, y_i | y_i = x_{i+1}^p y_{i+1}^q⟩` truncated at `level_cap`.
    Bpq { p: u64, q: u64, level_cap: u32 },
    /// `L + xF[x]` minus zero, where `F = GF(p^ext_degree)` is given by
    /// `modulus` and `L` is its subfield of degree `base_degree`.
    PolySubring {
        p: u32,
        base_degree: u32,
        ext_degree: u32,
        modulus: Vec<u32>,
        max_degree: u32,
    },
    /// `(Q≥0, +)`.
    NonnegRationals,
    /// `N^rank ∪ (Q>0)^rank`.
    LatticeOrthant { rank: usize },
}

impl MonoidSpec {
    /// Canonical stanza text; parses back to the same spec.
    pub fn to_text(&self) -> String {
        fn list(v: &[u64]) -> String {
            let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            format!("[{}]", parts.join(", "))
        }
        match self {
            MonoidSpec::FreeCommutative { rank } => {
                format!("family = free_commutative {{ rank = {rank} }}")
            }
            MonoidSpec::ShiftedNumerical { threshold, extras } => format!(
                "family = shifted_numerical {{ threshold = {threshold}, extras = {} }}",
                list(extras)
            ),
            MonoidSpec::SubmonoidNn { rank, gens } => {
                let g: Vec<String> = gens
                    .iter()
                    .map(|v| {
                        let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                        format!("({})", parts.join(", "))
                    })
                    .collect();
                format!(
                    "family = submonoid_nn {{ rank = {rank}, gens = [{}] }}",
                    g.join(", ")
                )
            }
            MonoidSpec::Bpq { p, q, level_cap } => {
                format!("family = bpq {{ p = {p}, q = {q}, level_cap = {level_cap} }}")
            }
            MonoidSpec::PolySubring {
                p,
                base_degree,
                ext_degree,
                modulus,
                max_degree,
            } => {
                let m: Vec<u64> = modulus.iter().map(|&c| c as u64).collect();
                format!(
                    "family = poly_subring {{ p = {p}, base_degree = {base_degree}, ext_degree = {ext_degree}, modulus = {}, max_degree = {max_degree} }}",
                    list(&m)
                )
            }
            MonoidSpec::NonnegRationals => "family = nonneg_rationals {}".to_string(),
            MonoidSpec::LatticeOrthant { rank } => {
                format!("family = lattice_orthant {{ rank = {rank} }}")
            }
        }
    }
}

impl fmt::Display for MonoidSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Parse and validate a spec stanza.
pub fn build(text: &str) -> Result<MonoidSpec> {
    let spec = grammar::parse_spec(text)?;
    Family::from_spec(&spec)?;
    Ok(spec)
}

/// Validated family state.
#[derive(Clone, Debug)]
pub enum Family {
    Free(FreeCommutative),
    Shifted(ShiftedNumerical),
    Affine(AffineSubmonoid),
    Bpq(Bpq),
    Poly(Box<PolySubring>),
    Rationals(NonnegRationals),
    Orthant(LatticeOrthant),
}

impl Family {
    pub fn from_spec(spec: &MonoidSpec) -> Result<Family> {
        Ok(match spec {
            MonoidSpec::FreeCommutative { rank } => Family::Free(FreeCommutative::new(*rank)),
            MonoidSpec::ShiftedNumerical { threshold, extras } => {
                Family::Shifted(ShiftedNumerical::new(*threshold, extras.iter().copied())?)
            }
            MonoidSpec::SubmonoidNn { rank, gens } => {
                Family::Affine(AffineSubmonoid::new(*rank, gens.clone())?)
            }
            MonoidSpec::Bpq { p, q, level_cap } => Family::Bpq(Bpq::new(*p, *q, *level_cap)?),
            MonoidSpec::PolySubring {
                p,
                base_degree,
                ext_degree,
                modulus,
                max_degree,
            } => Family::Poly(Box::new(PolySubring::new(
                *p,
                *base_degree,
                *ext_degree,
                modulus,
                *max_degree,
            )?)),
            MonoidSpec::NonnegRationals => Family::Rationals(NonnegRationals),
            MonoidSpec::LatticeOrthant { rank } => Family::Orthant(LatticeOrthant::new(*rank)?),
        })
    }

    pub(crate) fn ops(&self) -> &dyn FamilyOps {
        match self {
            Family::Free(f) => f,
            Family::Shifted(f) => f,
            Family::Affine(f) => f,
            Family::Bpq(f) => f,
            Family::Poly(f) => f.as_ref(),
            Family::Rationals(f) => f,
            Family::Orthant(f) => f,
        }
    }
}

/// Convenience constructors.
impl Monoid {
    pub fn free(rank: usize) -> Monoid {
        Monoid::new(MonoidSpec::FreeCommutative { rank }).expect("free monoid")
    }

    pub fn shifted(threshold: u64, extras: &[u64]) -> Result<Monoid> {
        Monoid::new(MonoidSpec::ShiftedNumerical {
            threshold,
            extras: extras.to_vec(),
        })
    }

    pub fn submonoid(rank: usize, gens: &[&[u64]]) -> Result<Monoid> {
        Monoid::new(MonoidSpec::SubmonoidNn {
            rank,
            gens: gens.iter().map(|g| g.to_vec()).collect(),
        })
    }

    pub fn bpq(p: u64, q: u64, level_cap: u32) -> Result<Monoid> {
        Monoid::new(MonoidSpec::Bpq { p, q, level_cap })
    }

    pub fn rationals() -> Monoid {
        Monoid::new(MonoidSpec::NonnegRationals).expect("rationals")
    }

    pub fn orthant(rank: usize) -> Result<Monoid> {
        Monoid::new(MonoidSpec::LatticeOrthant { rank })
    }

    /// `GF(2) + xGF(4)[x]`.
    pub fn gf2_gf4(max_degree: u32) -> Monoid {
        Monoid::new(MonoidSpec::PolySubring {
            p: 2,
            base_degree: 1,
            ext_degree: 2,
            modulus: vec![1, 1, 1],
            max_degree,
        })
        .expect("GF(2) + xGF(4)[x]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_text_round_trips() {
        let specs = [
            MonoidSpec::FreeCommutative { rank: 3 },
            MonoidSpec::ShiftedNumerical {
                threshold: 4,
                extras: vec![0, 2],
            },
            MonoidSpec::SubmonoidNn {
                rank: 3,
                gens: vec![vec![1, 1, 0], vec![1, 0, 1]],
            },
            MonoidSpec::Bpq {
                p: 1,
                q: 1,
                level_cap: 6,
            },
            MonoidSpec::PolySubring {
                p: 2,
                base_degree: 1,
                ext_degree: 2,
                modulus: vec![1, 1, 1],
                max_degree: 3,
            },
            MonoidSpec::NonnegRationals,
            MonoidSpec::LatticeOrthant { rank: 2 },
        ];
        for s in specs {
            assert_eq!(build(&s.to_text()).unwrap(), s, "{}", s.to_text());
        }
    }
}
