//! Element specs for `codealg spectrum`.

use std::fmt;

use codealg::smap::{small_idempotents, smap_idempotent, Root};
use codealg::{CodeAlgebra, Codeword, Element, LinearCode, Scalar};

/// `t i`, `smap D v root`, `small alpha sign`, or a coordinate list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementSpec {
    Toral(usize),
    /// `None` for `D = C`.
    Smap(Option<Vec<Codeword>>, Codeword, Root),
    Small(Codeword, Root),
    Coords(Vec<Scalar>),
}

#[derive(Debug)]
pub struct SpecError(pub String);

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn word(s: &str) -> Result<Codeword, SpecError> {
    Codeword::parse(s).map_err(|e| SpecError(format!("bad codeword `{s}`: {e}")))
}

fn root(s: &str) -> Result<Root, SpecError> {
    s.parse().map_err(|e: codealg::Error| SpecError(e.to_string()))
}

impl ElementSpec {
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let fields: Vec<&str> = text.split_whitespace().collect();
        match fields.as_slice() {
            ["t", i] => {
                let i: usize = i.parse().map_err(|_| SpecError(format!("bad index `{i}`")))?;
                if i == 0 {
                    return Err(SpecError("toral indices start at 1".into()));
                }
                Ok(ElementSpec::Toral(i - 1))
            }
            ["smap", d, v, r] => {
                let d = match *d {
                    "full" | "C" => None,
                    list => Some(list.split(',').map(word).collect::<Result<_, _>>()?),
                };
                Ok(ElementSpec::Smap(d, word(v)?, root(r)?))
            }
            ["small", alpha, r] => Ok(ElementSpec::Small(word(alpha)?, root(r)?)),
            [] => Err(SpecError("empty element spec".into())),
            _ => {
                let body = text.trim().trim_start_matches('[').trim_end_matches(']');
                body.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<Scalar>().map_err(|_| SpecError(format!("bad coordinate `{s}`"))))
                    .collect::<Result<Vec<_>, _>>()
                    .map(ElementSpec::Coords)
            }
        }
    }

    /// Builds the element. An s-map root outside the field extends it, so
    /// the algebra to use is returned alongside.
    pub fn build(&self, alg: &CodeAlgebra) -> Result<(Element, Option<i64>), Built> {
        match self {
            ElementSpec::Toral(i) if *i < alg.n() => Ok((alg.t(*i), None)),
            ElementSpec::Toral(i) => Err(Built::Input(format!("t{} out of range 1..={}", i + 1, alg.n()))),
            ElementSpec::Smap(d, v, r) => {
                let n = alg.n();
                let d = match d {
                    None => alg.code().clone(),
                    Some(gens) => LinearCode::span_of(n, gens).map_err(|e| Built::Input(e.to_string()))?,
                };
                if v.len() != n {
                    return Err(Built::Input(format!("v has length {}, expected {n}", v.len())));
                }
                let s = smap_idempotent(alg, &d, *v, *r).map_err(|e| Built::Analysis(e.to_string()))?;
                Ok((s.element, Some(s.disc)))
            }
            ElementSpec::Small(alpha, r) => {
                if alg.slot(*alpha).is_none() {
                    return Err(Built::Input(format!("{alpha} is not a non-constant codeword")));
                }
                let (plus, minus) = small_idempotents(alg, *alpha).map_err(|e| Built::Analysis(e.to_string()))?;
                let s = if *r == Root::Plus { plus } else { minus };
                Ok((s.element, Some(s.disc)))
            }
            ElementSpec::Coords(xs) => alg
                .element(xs.clone())
                .map(|x| (x, None))
                .map_err(|e| Built::Input(e.to_string())),
        }
    }
}

/// Why an element could not be built.
#[derive(Debug)]
pub enum Built {
    Input(String),
    Analysis(String),
}
