//! Spec stanza parser.
//!
//! ```text
//! # comment
//! family = shifted_numerical { threshold = 4, extras = [0, 2] }
//! ```
//!
//! The inline form `shifted_numerical threshold=4 extras={0,2}` is accepted
//! too. Lists may use `[..]` or `{..}`; vectors use `(..)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::families::MonoidSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(char),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(u64),
    List(Vec<Value>),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c == '#' {
            while i < bytes.len() && bytes[i] != '\n' {
                i += 1;
            }
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = bytes[start..i].iter().collect();
            let n = s
                .parse()
                .map_err(|e| Error::parse(start, format!("`{s}`: {e}")))?;
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(bytes[start..i].iter().collect())));
        } else if "={}[](),;".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::parse(i, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|t| t.1.clone());
        self.at += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos(), format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Result<String> {
        let pos = self.pos();
        match self.next() {
            Some(Tok::Ident(s)) => Ok(s),
            _ => Err(Error::parse(pos, "expected identifier")),
        }
    }

    fn value(&mut self) -> Result<Value> {
        let pos = self.pos();
        match self.next() {
            Some(Tok::Int(n)) => Ok(Value::Int(n)),
            Some(Tok::Sym(open @ ('[' | '{' | '('))) => {
                let close = match open {
                    '[' => ']',
                    '{' => '}',
                    _ => ')',
                };
                let mut items = Vec::new();
                if self.eat(close) {
                    return Ok(Value::List(items));
                }
                loop {
                    items.push(self.value()?);
                    if self.eat(close) {
                        return Ok(Value::List(items));
                    }
                    self.expect(',')?;
                }
            }
            _ => Err(Error::parse(pos, "expected a value")),
        }
    }

    fn pairs(&mut self, close: Option<char>) -> Result<BTreeMap<String, (usize, Value)>> {
        let mut out = BTreeMap::new();
        loop {
            if let Some(c) = close {
                if self.eat(c) {
                    return Ok(out);
                }
            }
            if self.peek().is_none() {
                return match close {
                    Some(c) => Err(Error::parse(self.end, format!("missing `{c}`"))),
                    None => Ok(out),
                };
            }
            let pos = self.pos();
            let key = self.ident()?;
            self.expect('=')?;
            let v = self.value()?;
            if out.insert(key.clone(), (pos, v)).is_some() {
                return Err(Error::parse(pos, format!("duplicate key `{key}`")));
            }
            self.eat(',');
            self.eat(';');
        }
    }
}

struct Fields {
    family: String,
    map: BTreeMap<String, (usize, Value)>,
}

impl Fields {
    fn take(&mut self, key: &str) -> Option<Value> {
        self.map.remove(key).map(|(_, v)| v)
    }

    fn int(&mut self, key: &str) -> Result<Option<u64>> {
        match self.take(key) {
            None => Ok(None),
            Some(Value::Int(n)) => Ok(Some(n)),
            Some(_) => Err(Error::spec(key, "expected an integer")),
        }
    }

    fn req_int(&mut self, key: &str) -> Result<u64> {
        self.int(key)?
            .ok_or_else(|| Error::spec(key, format!("required by {}", self.family)))
    }

    fn ints(&mut self, key: &str) -> Result<Option<Vec<u64>>> {
        match self.take(key) {
            None => Ok(None),
            Some(Value::Int(n)) => Ok(Some(vec![n])),
            Some(Value::List(items)) => items
                .into_iter()
                .map(|v| match v {
                    Value::Int(n) => Ok(n),
                    _ => Err(Error::spec(key, "expected a list of integers")),
                })
                .collect::<Result<Vec<_>>>()
                .map(Some),
        }
    }

    fn vectors(&mut self, key: &str) -> Result<Option<Vec<Vec<u64>>>> {
        match self.take(key) {
            None => Ok(None),
            Some(Value::List(items)) => items
                .into_iter()
                .map(|v| match v {
                    Value::List(xs) => xs
                        .into_iter()
                        .map(|x| match x {
                            Value::Int(n) => Ok(n),
                            _ => Err(Error::spec(key, "nested vectors are not allowed")),
                        })
                        .collect(),
                    Value::Int(n) => Ok(vec![n]),
                })
                .collect::<Result<Vec<_>>>()
                .map(Some),
            Some(Value::Int(_)) => Err(Error::spec(key, "expected a list of vectors")),
        }
    }

    fn finish(self) -> Result<()> {
        match self.map.into_iter().next() {
            None => Ok(()),
            Some((k, _)) => Err(Error::spec(k, format!("unknown key for {}", self.family))),
        }
    }
}

fn small<T: TryFrom<u64>>(key: &str, v: u64) -> Result<T> {
    T::try_from(v).map_err(|_| Error::spec(key, "value out of range"))
}

/// Parse a spec stanza into a [`MonoidSpec`] without validating it.
pub fn parse_spec(text: &str) -> Result<MonoidSpec> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
    };
    let first = p.ident()?;
    let name = if first == "family" && p.eat('=') {
        p.ident()?
    } else {
        first
    };
    let map = if p.eat('{') {
        p.pairs(Some('}'))?
    } else {
        p.pairs(None)?
    };
    if p.peek().is_some() {
        return Err(Error::parse(p.pos(), "trailing input"));
    }
    let mut f = Fields {
        family: name.clone(),
        map,
    };
    let spec = match name.as_str() {
        "free_commutative" => MonoidSpec::FreeCommutative {
            rank: small("rank", f.req_int("rank")?)?,
        },
        "shifted_numerical" => MonoidSpec::ShiftedNumerical {
            threshold: f.req_int("threshold")?,
            extras: f.ints("extras")?.unwrap_or_default(),
        },
        "submonoid_nn" => {
            let rank: usize = small("rank", f.req_int("rank")?)?;
            let gens = f
                .vectors("gens")?
                .ok_or_else(|| Error::spec("gens", "required by submonoid_nn"))?;
            MonoidSpec::SubmonoidNn { rank, gens }
        }
        "bpq" => MonoidSpec::Bpq {
            p: f.req_int("p")?,
            q: f.req_int("q")?,
            level_cap: small("level_cap", f.int("level_cap")?.unwrap_or(8))?,
        },
        "poly_subring" => {
            let modulus = f
                .ints("modulus")?
                .ok_or_else(|| Error::spec("modulus", "required by poly_subring"))?
                .into_iter()
                .map(|c| small("modulus", c))
                .collect::<Result<Vec<u32>>>()?;
            MonoidSpec::PolySubring {
                p: small("p", f.req_int("p")?)?,
                base_degree: small("base_degree", f.req_int("base_degree")?)?,
                ext_degree: small("ext_degree", f.req_int("ext_degree")?)?,
                modulus,
                max_degree: small("max_degree", f.int("max_degree")?.unwrap_or(4))?,
            }
        }
        "nonneg_rationals" => MonoidSpec::NonnegRationals,
        "lattice_orthant" => MonoidSpec::LatticeOrthant {
            rank: small("rank", f.req_int("rank")?)?,
        },
        other => return Err(Error::spec("family", format!("unknown family `{other}`"))),
    };
    f.finish()?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stanza_and_inline_forms() {
        let a = parse_spec("family = shifted_numerical { threshold = 2, extras = [0] }").unwrap();
        let b = parse_spec("shifted_numerical threshold=2 extras={0}").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn comments_and_vectors() {
        let s = "# two generators\nfamily = submonoid_nn {\n  rank = 3,\n  gens = [(1,1,0), (1,0,1)]\n}\n";
        assert_eq!(
            parse_spec(s).unwrap(),
            MonoidSpec::SubmonoidNn {
                rank: 3,
                gens: vec![vec![1, 1, 0], vec![1, 0, 1]]
            }
        );
    }

    #[test]
    fn defaults() {
        assert_eq!(
            parse_spec("bpq { p = 1, q = 1 }").unwrap(),
            MonoidSpec::Bpq {
                p: 1,
                q: 1,
                level_cap: 8
            }
        );
    }

    #[test]
    fn errors_name_the_field() {
        match parse_spec("free_commutative { }") {
            Err(Error::InvalidSpec { field, .. }) => assert_eq!(field, "rank"),
            other => panic!("{other:?}"),
        }
        match parse_spec("free_commutative { rank = 2, colour = 3 }") {
            Err(Error::InvalidSpec { field, .. }) => assert_eq!(field, "colour"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_spec("free_commutative { rank = 2"),
            Err(Error::Parse { .. })
        ));
        assert!(parse_spec("mystery { }").is_err());
    }
}
