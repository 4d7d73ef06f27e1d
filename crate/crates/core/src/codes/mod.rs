//! Binary linear codes of length at most 64.
//!
//! Codewords are bitmasks with coordinate `i` (0-based) stored in bit `i`.
//! Textual bit strings list coordinate 0 first, so `"011"` has support
//! `{1, 2}` in 0-based terms.

mod automorphism;
mod classify;
mod parse;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use automorphism::{automorphism_group, automorphism_group_bounded, Perm, DEFAULT_AUT_BOUND};
pub use classify::{classify_constant_weight, CodeClass};
pub use parse::{parse_code, write_code};

/// Hard limit on the ambient length.
pub const MAX_LENGTH: usize = 64;
/// Codes of dimension above this are not enumerated.
pub const MAX_ENUM_DIM: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("row {row} has length {found}, expected {expected}")]
    LengthMismatch { row: usize, expected: usize, found: usize },
    #[error("generator rows are dependent: rows {rows:?} sum to zero")]
    DependentRows { rows: Vec<usize> },
    #[error("length {0} exceeds the supported maximum of 64")]
    TooLong(usize),
    #[error("the code has no non-constant codewords")]
    EmptyCStar,
    #[error("non-constant codewords have several weights {0:?}")]
    NotConstantWeight(Vec<usize>),
    #[error("length {n} exceeds the automorphism search bound {bound}")]
    TooLarge { n: usize, bound: usize },
    #[error("dimension {0} is too large to enumerate codewords")]
    NotEnumerated(usize),
    #[error("not a subcode of the ambient code")]
    NotASubcode,
    #[error("invalid bit string `{0}`")]
    BadBits(String),
    #[error("constant-weight code with parameters [{n}, {k}] and weight {w} fits no simplex or Reed-Muller juxtaposition")]
    Unclassified { n: usize, k: usize, w: usize },
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

/// An element of `F_2^len`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Codeword {
    bits: u64,
    len: u8,
}

fn mask(len: usize) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl Codeword {
    pub fn new(bits: u64, len: usize) -> Self {
        assert!(len <= MAX_LENGTH);
        Codeword {
            bits: bits & mask(len),
            len: len as u8,
        }
    }

    pub fn zero(len: usize) -> Self {
        Self::new(0, len)
    }

    pub fn ones(len: usize) -> Self {
        Self::new(u64::MAX, len)
    }

    /// The unit vector with a single 1 in coordinate `i`.
    pub fn unit(i: usize, len: usize) -> Self {
        assert!(i < len);
        Self::new(1 << i, len)
    }

    pub fn from_support(support: impl IntoIterator<Item = usize>, len: usize) -> Self {
        let mut bits = 0;
        for i in support {
            assert!(i < len);
            bits |= 1 << i;
        }
        Self::new(bits, len)
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse(s: &str) -> Result<Self, CodeError> {
        let s = s.trim();
        if s.len() > MAX_LENGTH {
            return Err(CodeError::TooLong(s.len()));
        }
        let mut bits = 0u64;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(CodeError::BadBits(s.to_string())),
            }
        }
        Ok(Self::new(bits, s.len()))
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn bit(self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    pub fn weight(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn support(self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (0..self.len()).filter(move |&i| bits >> i & 1 == 1)
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn is_ones(self) -> bool {
        self.bits == mask(self.len())
    }

    pub fn is_constant(self) -> bool {
        self.is_zero() || self.is_ones()
    }

    pub fn complement(self) -> Self {
        Self::new(!self.bits, self.len())
    }

    /// Standard dot product over F_2.
    pub fn dot(self, other: Self) -> bool {
        (self.bits & other.bits).count_ones() % 2 == 1
    }

    /// Coordinatewise XOR.
    pub fn add(self, other: Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        Codeword {
            bits: self.bits ^ other.bits,
            len: self.len,
        }
    }

    pub fn intersection_weight(self, other: Self) -> usize {
        (self.bits & other.bits).count_ones() as usize
    }

    fn lex_key(self) -> u64 {
        if self.len == 0 {
            0
        } else {
            self.bits.reverse_bits() >> (64 - self.len as u32)
        }
    }
}

impl Ord for Codeword {
    /// Lexicographic order on the bit strings.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.len, self.lex_key()).cmp(&(other.len, other.lex_key()))
    }
}

impl PartialOrd for Codeword {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Codeword {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Codeword {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Codeword::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// A binary linear code with its generator rows and (when `k <= 20`) all
/// of its codewords in lexicographic order.
#[derive(Clone, Debug)]
pub struct LinearCode {
    n: usize,
    generators: Vec<Codeword>,
    /// Reduced echelon basis keyed by pivot coordinate.
    echelon: Vec<(usize, Codeword)>,
    words: Option<Vec<Codeword>>,
}

impl PartialEq for LinearCode {
    /// Equality as subspaces.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.echelon == other.echelon
    }
}

impl Eq for LinearCode {}

impl LinearCode {
    /// The row span of `generators`, which must be independent.
    pub fn new(n: usize, generators: Vec<Codeword>) -> Result<Self, CodeError> {
        if n > MAX_LENGTH {
            return Err(CodeError::TooLong(n));
        }
        for (row, g) in generators.iter().enumerate() {
            if g.len() != n {
                return Err(CodeError::LengthMismatch {
                    row,
                    expected: n,
                    found: g.len(),
                });
            }
        }
        let echelon = echelonise(&generators)?;
        let words = (generators.len() <= MAX_ENUM_DIM).then(|| span(n, &generators));
        Ok(LinearCode {
            n,
            generators,
            echelon,
            words,
        })
    }

    /// The row span of possibly dependent vectors.
    pub fn span_of(n: usize, vectors: &[Codeword]) -> Result<Self, CodeError> {
        let mut basis: Vec<Codeword> = Vec::new();
        for &v in vectors {
            if v.len() != n {
                return Err(CodeError::LengthMismatch {
                    row: basis.len(),
                    expected: n,
                    found: v.len(),
                });
            }
            let mut trial = basis.clone();
            trial.push(v);
            if echelonise(&trial).is_ok() {
                basis = trial;
            }
        }
        Self::new(n, basis)
    }

    pub fn zero(n: usize) -> Self {
        Self::new(n, Vec::new()).expect("empty generator list")
    }

    /// All of `F_2^n`.
    pub fn full(n: usize) -> Self {
        Self::new(n, (0..n).map(|i| Codeword::unit(i, n)).collect()).expect("unit vectors")
    }

    /// Builds a code from `0`/`1` strings.
    pub fn from_strings(rows: &[&str]) -> Result<Self, CodeError> {
        let gens = rows.iter().map(|r| Codeword::parse(r)).collect::<Result<Vec<_>, _>>()?;
        let n = gens.first().map_or(0, |g| g.len());
        Self::new(n, gens)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn size(&self) -> u128 {
        1u128 << self.dim()
    }

    pub fn generators(&self) -> &[Codeword] {
        &self.generators
    }

    /// All codewords, lexicographically sorted.
    pub fn words(&self) -> Result<&[Codeword], CodeError> {
        self.words.as_deref().ok_or(CodeError::NotEnumerated(self.dim()))
    }

    pub fn contains(&self, w: Codeword) -> bool {
        if w.len() != self.n {
            return false;
        }
        let mut v = w.bits;
        for &(p, row) in &self.echelon {
            if v >> p & 1 == 1 {
                v ^= row.bits;
            }
        }
        v == 0
    }

    pub fn contains_ones(&self) -> bool {
        self.contains(Codeword::ones(self.n))
    }

    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.n == other.n && self.generators.iter().all(|&g| other.contains(g))
    }

    /// `supp(C)`, the union of all supports.
    pub fn support(&self) -> Codeword {
        let bits = self.generators.iter().fold(0, |acc, g| acc | g.bits);
        Codeword::new(bits, self.n)
    }

    /// The non-constant codewords `C*`, lexicographically sorted.
    pub fn nonconstant_words(&self) -> Result<Vec<Codeword>, CodeError> {
        Ok(self.words()?.iter().copied().filter(|w| !w.is_constant()).collect())
    }

    /// `(C_0, C_1)` with `C_k = {alpha : (alpha, v) = k}`.
    pub fn split_by_dot(&self, v: Codeword) -> Result<(Vec<Codeword>, Vec<Codeword>), CodeError> {
        if v.len() != self.n {
            return Err(CodeError::LengthMismatch {
                row: 0,
                expected: self.n,
                found: v.len(),
            });
        }
        Ok(self.words()?.iter().partition(|w| !w.dot(v)))
    }

    /// The orthogonal complement under the standard dot product.
    pub fn dual(&self) -> LinearCode {
        let n = self.n;
        let pivots: Vec<usize> = self.echelon.iter().map(|&(p, _)| p).collect();
        let mut gens = Vec::new();
        for f in (0..n).filter(|c| !pivots.contains(c)) {
            // x_f = 1, x_p = row_p[f] for each pivot row.
            let mut bits = 1u64 << f;
            for &(p, row) in &self.echelon {
                if row.bit(f) {
                    bits |= 1 << p;
                }
            }
            gens.push(Codeword::new(bits, n));
        }
        LinearCode::new(n, gens).expect("dual basis is independent")
    }

    /// Hamming weight counts `A_0..A_n`.
    pub fn weight_enumerator(&self) -> Result<Vec<u64>, CodeError> {
        let mut counts = vec![0u64; self.n + 1];
        for w in self.words()? {
            counts[w.weight()] += 1;
        }
        Ok(counts)
    }

    /// Minimum nonzero weight, `None` for the zero code.
    pub fn min_distance(&self) -> Result<Option<usize>, CodeError> {
        Ok(self.words()?.iter().filter(|w| !w.is_zero()).map(|w| w.weight()).min())
    }

    /// `Some(w)` when every word of `C*` has weight `w`.
    pub fn constant_weight(&self) -> Result<Option<usize>, CodeError> {
        let weights = self.cstar_weights()?;
        if weights.is_empty() {
            return Err(CodeError::EmptyCStar);
        }
        Ok((weights.len() == 1).then(|| weights[0]))
    }

    fn cstar_weights(&self) -> Result<Vec<usize>, CodeError> {
        let mut weights: Vec<usize> = self.nonconstant_words()?.iter().map(|w| w.weight()).collect();
        weights.sort_unstable();
        weights.dedup();
        Ok(weights)
    }

    /// Whether the dual has minimum distance at least 3, read off the
    /// generator columns: a dual word of weight 1 is a zero column and one
    /// of weight 2 is a repeated column.
    pub fn is_projective(&self) -> bool {
        let cols = self.columns();
        if cols.iter().any(|&c| c == 0) {
            return false;
        }
        let mut sorted = cols;
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    /// The characterisation by supports: every coordinate `i` is the
    /// intersection of the supports of the codewords containing it.
    pub fn support_intersection_criterion(&self) -> Result<bool, CodeError> {
        let words = self.words()?;
        Ok((0..self.n).all(|i| {
            let meet = words
                .iter()
                .filter(|w| w.bit(i))
                .fold(None, |acc: Option<u64>, w| Some(acc.map_or(w.bits, |a| a & w.bits)));
            meet == Some(1 << i)
        }))
    }

    /// Column `i` of the generator matrix as a `k`-bit mask.
    pub fn columns(&self) -> Vec<u64> {
        (0..self.n)
            .map(|i| {
                self.generators
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (r, g)| acc | (u64::from(g.bit(i)) << r))
            })
            .collect()
    }

    /// One representative per coset of `C^perp` in `F_2^n`; there are `|C|`
    /// of them. Representatives are supported on the pivot coordinates of
    /// the reduced generator matrix.
    pub fn coset_reps(&self) -> Vec<Codeword> {
        let pivots: Vec<usize> = self.echelon.iter().map(|&(p, _)| p).collect();
        let mut reps: Vec<Codeword> = (0..1u64 << pivots.len())
            .map(|m| {
                Codeword::from_support(
                    pivots.iter().enumerate().filter(|(j, _)| m >> j & 1 == 1).map(|(_, &p)| p),
                    self.n,
                )
            })
            .collect();
        reps.sort();
        reps
    }

    /// `C^g` for a coordinate permutation.
    pub fn permuted(&self, g: &Perm) -> LinearCode {
        LinearCode::new(self.n, self.generators.iter().map(|&w| g.apply(w)).collect())
            .expect("permutation preserves independence")
    }

    /// `m` copies of the generator matrix side by side.
    pub fn juxtapose(&self, m: usize) -> Result<LinearCode, CodeError> {
        let n = self.n * m;
        if n > MAX_LENGTH {
            return Err(CodeError::TooLong(n));
        }
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let bits = (0..m).fold(0u64, |acc, j| acc | g.bits << (j * self.n));
                Codeword::new(bits, n)
            })
            .collect();
        LinearCode::new(n, gens)
    }

    /// The `[2^r - 1, r, 2^(r-1)]` simplex code: columns are all nonzero
    /// vectors of `F_2^r`.
    pub fn simplex(r: usize) -> Result<LinearCode, CodeError> {
        let n = (1usize << r) - 1;
        if n > MAX_LENGTH {
            return Err(CodeError::TooLong(n));
        }
        let gens = (0..r)
            .map(|row| Codeword::from_support((0..n).filter(|c| (c + 1) >> row & 1 == 1), n))
            .collect();
        LinearCode::new(n, gens)
    }

    /// The first-order Reed-Muller code `[2^r, r + 1, 2^(r-1)]`.
    pub fn reed_muller1(r: usize) -> Result<LinearCode, CodeError> {
        let n = 1usize << r;
        if n > MAX_LENGTH {
            return Err(CodeError::TooLong(n));
        }
        let mut gens: Vec<Codeword> = (0..r)
            .map(|row| Codeword::from_support((0..n).filter(|c| c >> row & 1 == 1), n))
            .collect();
        gens.push(Codeword::ones(n));
        LinearCode::new(n, gens)
    }

    /// The extended `[8, 4, 4]` Hamming code.
    pub fn hamming8() -> LinearCode {
        LinearCode::from_strings(&["11110000", "11001100", "10101010", "11111111"]).expect("valid generators")
    }

    /// The even-weight code of length `n`.
    pub fn even_weight(n: usize) -> LinearCode {
        let gens = (1..n).map(|i| Codeword::from_support([0, i], n)).collect();
        LinearCode::new(n, gens).expect("independent")
    }

    /// Every subcode of `self` (feasible for small `k`).
    pub fn subcodes(&self) -> Vec<LinearCode> {
        let k = self.dim();
        subspaces_rref(k)
            .into_iter()
            .map(|rows| {
                let gens = rows
                    .iter()
                    .map(|&m| {
                        let bits = (0..k).filter(|j| m >> j & 1 == 1).fold(0, |acc, j| acc ^ self.generators[j].bits);
                        Codeword::new(bits, self.n)
                    })
                    .collect();
                LinearCode::new(self.n, gens).expect("rref rows are independent")
            })
            .collect()
    }

    /// Every linear code of length `n` (feasible for `n <= 8`).
    pub fn enumerate_all(n: usize) -> Vec<LinearCode> {
        LinearCode::full(n).subcodes()
    }
}

/// All subspaces of `F_2^k` as lists of reduced row masks.
fn subspaces_rref(k: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for dim in 0..=k {
        for pivots in combinations(k, dim) {
            // Free positions of row r: columns > pivot r that are not pivots.
            let free: Vec<Vec<usize>> = pivots
                .iter()
                .map(|&p| (p + 1..k).filter(|c| !pivots.contains(c)).collect())
                .collect();
            let total: usize = free.iter().map(Vec::len).sum();
            for fill in 0..1u64 << total {
                let mut shift = 0;
                let rows: Vec<u64> = pivots
                    .iter()
                    .zip(&free)
                    .map(|(&p, fs)| {
                        let mut row = 1u64 << p;
                        for (j, &c) in fs.iter().enumerate() {
                            if fill >> (shift + j) & 1 == 1 {
                                row |= 1 << c;
                            }
                        }
                        shift += fs.len();
                        row
                    })
                    .collect();
                out.push(rows);
            }
        }
    }
    out
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// Reduced echelon basis; reports a dependency among the input rows.
fn echelonise(gens: &[Codeword]) -> Result<Vec<(usize, Codeword)>, CodeError> {
    // Each row carries a mask of the input rows it combines.
    let mut basis: Vec<(usize, u64, u128)> = Vec::new();
    for (idx, g) in gens.iter().enumerate() {
        let mut v = g.bits;
        let mut combo = 1u128 << idx;
        for &(p, row, c) in &basis {
            if v >> p & 1 == 1 {
                v ^= row;
                combo ^= c;
            }
        }
        if v == 0 {
            let rows = (0..gens.len()).filter(|j| combo >> j & 1 == 1).collect();
            return Err(CodeError::DependentRows { rows });
        }
        let p = v.trailing_zeros() as usize;
        for entry in basis.iter_mut() {
            if entry.1 >> p & 1 == 1 {
                entry.1 ^= v;
                entry.2 ^= combo;
            }
        }
        basis.push((p, v, combo));
    }
    basis.sort_by_key(|e| e.0);
    let n = gens.first().map_or(0, |g| g.len());
    Ok(basis.into_iter().map(|(p, v, _)| (p, Codeword::new(v, n))).collect())
}

fn span(n: usize, gens: &[Codeword]) -> Vec<Codeword> {
    let mut words = vec![Codeword::zero(n)];
    for &g in gens {
        let extra: Vec<Codeword> = words.iter().map(|w| w.add(g)).collect();
        words.extend(extra);
    }
    words.sort();
    words
}
