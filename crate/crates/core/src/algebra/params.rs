//! Structure parameters and the params text format.

use std::collections::BTreeMap;
use std::fmt;

use crate::codes::{Codeword, LinearCode};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Key of an `a` or `c` parameter: a toral index in `supp(alpha)`.
pub type PointKey = (usize, Codeword);

/// The maps `a_{i,alpha}`, `b_{alpha,beta}` and `c_{i,alpha}`.
///
/// `b` keys are stored with the smaller codeword first so the map is
/// symmetric by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureParams {
    a: BTreeMap<PointKey, Scalar>,
    b: BTreeMap<(Codeword, Codeword), Scalar>,
    c: BTreeMap<PointKey, Scalar>,
}

fn pair(x: Codeword, y: Codeword) -> (Codeword, Codeword) {
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

/// Whether `{alpha, beta}` lies in the domain of `b`.
pub fn b_domain(alpha: Codeword, beta: Codeword) -> bool {
    alpha != beta && alpha != beta.complement()
}

impl StructureParams {
    /// Every key maps to the same `(a, b, c)`.
    pub fn constant(code: &LinearCode, a: Scalar, b: Scalar, c: Scalar) -> Result<Self> {
        let cstar = code.nonconstant_words()?;
        let mut params = StructureParams {
            a: BTreeMap::new(),
            b: BTreeMap::new(),
            c: BTreeMap::new(),
        };
        for (k, &alpha) in cstar.iter().enumerate() {
            for i in alpha.support() {
                params.a.insert((i, alpha), a.clone());
                params.c.insert((i, alpha), c.clone());
            }
            for &beta in &cstar[k + 1..] {
                if b_domain(alpha, beta) {
                    params.b.insert((alpha, beta), b.clone());
                }
            }
        }
        Ok(params)
    }

    /// The code VOA preset `(1/4, lambda, 4 lambda^2)`.
    pub fn voa(code: &LinearCode, lambda: Scalar) -> Result<Self> {
        let c = Scalar::from_int(4) * &lambda * &lambda;
        Self::constant(code, Scalar::frac(1, 4), lambda, c)
    }

    pub fn a(&self, i: usize, alpha: Codeword) -> Option<&Scalar> {
        self.a.get(&(i, alpha))
    }

    pub fn b(&self, alpha: Codeword, beta: Codeword) -> Option<&Scalar> {
        self.b.get(&pair(alpha, beta))
    }

    pub fn c(&self, i: usize, alpha: Codeword) -> Option<&Scalar> {
        self.c.get(&(i, alpha))
    }

    pub fn set_a(&mut self, i: usize, alpha: Codeword, value: Scalar) {
        self.a.insert((i, alpha), value);
    }

    pub fn set_b(&mut self, alpha: Codeword, beta: Codeword, value: Scalar) {
        self.b.insert(pair(alpha, beta), value);
    }

    pub fn set_c(&mut self, i: usize, alpha: Codeword, value: Scalar) {
        self.c.insert((i, alpha), value);
    }

    pub fn a_entries(&self) -> impl Iterator<Item = (&PointKey, &Scalar)> {
        self.a.iter()
    }

    pub fn b_entries(&self) -> impl Iterator<Item = (&(Codeword, Codeword), &Scalar)> {
        self.b.iter()
    }

    pub fn c_entries(&self) -> impl Iterator<Item = (&PointKey, &Scalar)> {
        self.c.iter()
    }

    pub fn values(&self) -> impl Iterator<Item = &Scalar> {
        self.a.values().chain(self.b.values()).chain(self.c.values())
    }

    /// `Some(value)` when `a_{i,alpha}` does not depend on `i`.
    pub fn a_of(&self, alpha: Codeword) -> Option<&Scalar> {
        constant_over(alpha.support().map(|i| self.a.get(&(i, alpha))))
    }

    /// `Some(value)` when `c_{i,alpha}` does not depend on `i`.
    pub fn c_of(&self, alpha: Codeword) -> Option<&Scalar> {
        constant_over(alpha.support().map(|i| self.c.get(&(i, alpha))))
    }

    /// The quadratic field shared by all parameters (1 for the rationals).
    pub fn discriminant(&self) -> Result<i64> {
        let mut d = 1;
        for v in self.values() {
            let e = v.discriminant();
            if e != 1 {
                if d != 1 && d != e {
                    return Err(crate::scalar::ScalarError::DiscriminantMismatch(d, e).into());
                }
                d = e;
            }
        }
        Ok(d)
    }

    /// Checks that the key sets are exactly the parameter domain of `code`.
    pub fn validate(&self, code: &LinearCode) -> Result<()> {
        let cstar = code.nonconstant_words()?;
        let expected = StructureParams::constant(code, Scalar::zero(), Scalar::zero(), Scalar::zero())?;
        for (i, alpha) in expected.a.keys() {
            if !self.a.contains_key(&(*i, *alpha)) {
                return Err(Error::MissingParam(format!("a[{},{alpha}]", i + 1)));
            }
            if !self.c.contains_key(&(*i, *alpha)) {
                return Err(Error::MissingParam(format!("c[{},{alpha}]", i + 1)));
            }
        }
        for (x, y) in expected.b.keys() {
            if !self.b.contains_key(&(*x, *y)) {
                return Err(Error::MissingParam(format!("b[{x},{y}]")));
            }
        }
        let in_cstar = |w: &Codeword| cstar.binary_search(w).is_ok();
        for (i, alpha) in self.a.keys().chain(self.c.keys()) {
            if !in_cstar(alpha) || !alpha.bit(*i) {
                return Err(Error::UnexpectedParam(format!("[{},{alpha}]", i + 1)));
            }
        }
        for (x, y) in self.b.keys() {
            if !in_cstar(x) || !in_cstar(y) || !b_domain(*x, *y) {
                return Err(Error::UnexpectedParam(format!("b[{x},{y}]")));
            }
        }
        Ok(())
    }
}

fn constant_over<'a>(mut values: impl Iterator<Item = Option<&'a Scalar>>) -> Option<&'a Scalar> {
    let first = values.next()??;
    values.all(|v| v == Some(first)).then_some(first)
}

/// The contents of a params file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamsFile {
    pub params: StructureParams,
    /// Explicit field discriminant from a `d = <int>` line.
    pub disc: Option<i64>,
}

/// Parses lines `a = p/q`, `b = ..`, `c = ..`, `voa = lambda`, `d = <int>`
/// and overrides `a[i,bits] = ..`, `b[bits,bits] = ..`, `c[i,bits] = ..`.
/// Toral indices are 1-based. Overrides apply after the constant base.
pub fn parse_params(text: &str, code: &LinearCode) -> Result<ParamsFile> {
    let mut base: [Option<Scalar>; 3] = [None, None, None];
    let mut voa: Option<Scalar> = None;
    let mut disc = None;
    let mut overrides: Vec<(usize, char, String, Scalar)> = Vec::new();

    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let err = |col: usize, msg: String| Error::ParamsParse {
            line: ln + 1,
            col: col + 1,
            msg,
        };
        let Some(eq) = line.find('=') else {
            let col = line.len() - line.trim_start().len();
            return Err(err(col, "expected `key = value`".into()));
        };
        let key = line[..eq].trim();
        let key_col = line.len() - line.trim_start().len();
        let value_str = line[eq + 1..].trim();
        let value_col = eq + 1 + (line[eq + 1..].len() - line[eq + 1..].trim_start().len());
        if key == "d" {
            let d: i64 = value_str
                .parse()
                .map_err(|_| err(value_col, format!("bad discriminant `{value_str}`")))?;
            if d == 0 || !crate::scalar::is_squarefree(d) {
                return Err(err(value_col, format!("discriminant {d} is not squarefree")));
            }
            disc = Some(d);
            continue;
        }
        let value: Scalar = value_str
            .parse()
            .map_err(|_| err(value_col, format!("bad scalar `{value_str}`")))?;
        match key {
            "a" => base[0] = Some(value),
            "b" => base[1] = Some(value),
            "c" => base[2] = Some(value),
            "voa" => voa = Some(value),
            _ => {
                let kind = key.chars().next().unwrap_or(' ');
                let inner = key[1..]
                    .trim()
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .filter(|_| matches!(kind, 'a' | 'b' | 'c'))
                    .ok_or_else(|| err(key_col, format!("unknown key `{key}`")))?;
                overrides.push((ln + 1, kind, inner.to_string(), value));
            }
        }
    }

    let mut params = match (voa, &base) {
        (Some(lambda), [None, None, None]) => StructureParams::voa(code, lambda)?,
        (None, [Some(a), Some(b), Some(c)]) => StructureParams::constant(code, a.clone(), b.clone(), c.clone())?,
        (Some(_), _) => {
            return Err(Error::ParamsParse {
                line: 1,
                col: 1,
                msg: "`voa` cannot be combined with `a`, `b` or `c`".into(),
            })
        }
        (None, _) => {
            let missing: Vec<&str> = ["a", "b", "c"]
                .iter()
                .zip(&base)
                .filter(|(_, v)| v.is_none())
                .map(|(k, _)| *k)
                .collect();
            return Err(Error::ParamsParse {
                line: 1,
                col: 1,
                msg: format!("missing base parameter(s) {}", missing.join(", ")),
            });
        }
    };

    for (line, kind, inner, value) in overrides {
        let err = |msg: String| Error::ParamsParse { line, col: 1, msg };
        let (first, second) = inner
            .split_once(',')
            .ok_or_else(|| err(format!("override `{kind}[{inner}]` needs two indices")))?;
        let second = Codeword::parse(second.trim()).map_err(|e| err(e.to_string()))?;
        match kind {
            'b' => {
                let first = Codeword::parse(first.trim()).map_err(|e| err(e.to_string()))?;
                if params.b(first, second).is_none() {
                    return Err(err(format!("b[{first},{second}] is outside the parameter domain")));
                }
                params.set_b(first, second, value);
            }
            _ => {
                let i: usize = first
                    .trim()
                    .parse()
                    .ok()
                    .filter(|&i| i >= 1)
                    .ok_or_else(|| err(format!("bad toral index `{first}`")))?;
                let key = (i - 1, second);
                if params.a(key.0, key.1).is_none() {
                    return Err(err(format!("{kind}[{i},{second}] is outside the parameter domain")));
                }
                if kind == 'a' {
                    params.set_a(key.0, key.1, value);
                } else {
                    params.set_c(key.0, key.1, value);
                }
            }
        }
    }
    Ok(ParamsFile { params, disc })
}

impl fmt::Display for StructureParams {
    /// Writes every entry in params-file override syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((i, alpha), v) in &self.a {
            writeln!(f, "a[{},{alpha}] = {v}", i + 1)?;
        }
        for ((x, y), v) in &self.b {
            writeln!(f, "b[{x},{y}] = {v}")?;
        }
        for ((i, alpha), v) in &self.c {
            writeln!(f, "c[{},{alpha}] = {v}", i + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn even3() -> LinearCode {
        LinearCode::from_strings(&["011", "101"]).unwrap()
    }

    #[test]
    fn constant_domain_sizes() {
        let h = LinearCode::hamming8();
        let p = StructureParams::constant(&h, Scalar::frac(1, 4), Scalar::frac(1, 2), Scalar::one()).unwrap();
        assert_eq!(p.a_entries().count(), 14 * 4);
        // Each word has 12 partners outside {alpha, alpha^c}.
        assert_eq!(p.b_entries().count(), 14 * 12 / 2);
        p.validate(&h).unwrap();
    }

    #[test]
    fn voa_preset() {
        let c = even3();
        let p = StructureParams::voa(&c, Scalar::frac(1, 2)).unwrap();
        let q = StructureParams::constant(&c, Scalar::frac(1, 4), Scalar::frac(1, 2), Scalar::one()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn parse_with_overrides() {
        let c = even3();
        let text = "a = 1/2\nb = 1/2 # comment\nc = 1\nd = 2\na[2,011] = 3/4\nb[101,011] = sqrt(2)\n";
        let file = parse_params(text, &c).unwrap();
        assert_eq!(file.disc, Some(2));
        let p = &file.params;
        let w = |s| Codeword::parse(s).unwrap();
        assert_eq!(p.a(1, w("011")), Some(&Scalar::frac(3, 4)));
        assert_eq!(p.a(2, w("011")), Some(&Scalar::frac(1, 2)));
        assert_eq!(p.b(w("011"), w("101")).unwrap().to_string(), "sqrt(2)");
        assert_eq!(p.a_of(w("011")), None);
        assert_eq!(p.discriminant(), Ok(2));
    }

    #[test]
    fn parse_errors() {
        let c = even3();
        assert!(matches!(parse_params("a = 1\nb = 1\n", &c), Err(Error::ParamsParse { .. })));
        assert!(matches!(
            parse_params("a = 1\nb = x\nc = 1\n", &c),
            Err(Error::ParamsParse { line: 2, col: 5, .. })
        ));
        assert!(matches!(
            parse_params("a = 1\nb = 1\nc = 1\na[1,011] = 2\n", &c),
            Err(Error::ParamsParse { line: 4, .. })
        ));
        assert!(matches!(parse_params("a = 1\nb = 1\nc = 1\nd = 4\n", &c), Err(Error::ParamsParse { .. })));
    }

    #[test]
    fn validate_rejects_missing() {
        let c = even3();
        let mut p = StructureParams::constant(&c, Scalar::one(), Scalar::one(), Scalar::one()).unwrap();
        p.b.clear();
        assert!(matches!(p.validate(&c), Err(Error::MissingParam(_))));
    }
}
