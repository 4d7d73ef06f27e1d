//! Coordinate permutations and the permutation automorphism group.

use std::collections::HashSet;
use std::fmt;

use super::{CodeError, Codeword, LinearCode};

/// Default largest length for the automorphism search.
pub const DEFAULT_AUT_BOUND: usize = 12;

/// A permutation of coordinates acting on the right: `i^g = g.image(i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    /// Panics unless `images` is a permutation of `0..len`.
    pub fn new(images: Vec<usize>) -> Self {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            assert!(i < images.len() && !seen[i], "not a permutation: {images:?}");
            seen[i] = true;
        }
        Perm(images)
    }

    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// The transposition of `i` and `j`.
    pub fn swap(n: usize, i: usize, j: usize) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(i, j);
        Perm(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    /// `self` followed by `other`: `i^(gh) = (i^g)^h`.
    pub fn then(&self, other: &Perm) -> Self {
        Perm(self.0.iter().map(|&j| other.0[j]).collect())
    }

    /// `alpha^g`, moving the bit in coordinate `i` to `i^g`.
    pub fn apply(&self, w: Codeword) -> Codeword {
        let bits = w.support().fold(0u64, |acc, i| acc | 1 << self.0[i]);
        Codeword::new(bits, w.len())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// `Aut(C)` with the default length bound.
pub fn automorphism_group(code: &LinearCode) -> Result<Vec<Perm>, CodeError> {
    automorphism_group_bounded(code, DEFAULT_AUT_BOUND)
}

/// Every coordinate permutation fixing `code` setwise, sorted.
///
/// Backtracks over images of coordinates `0, 1, ...`. A partial assignment
/// survives only if the projection of `C` onto the assigned coordinates
/// matches the projection onto their images.
pub fn automorphism_group_bounded(code: &LinearCode, bound: usize) -> Result<Vec<Perm>, CodeError> {
    let n = code.len();
    if n > bound {
        return Err(CodeError::TooLarge { n, bound });
    }
    let words: Vec<u64> = code.words()?.iter().map(|w| w.bits()).collect();
    let invariants: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let mut counts = vec![0usize; n + 1];
            for &w in words.iter().filter(|&&w| w >> i & 1 == 1) {
                counts[w.count_ones() as usize] += 1;
            }
            counts
        })
        .collect();

    let mut out = Vec::new();
    let mut images = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search(&words, &invariants, &mut images, &mut used, &mut out);
    out.sort();
    Ok(out)
}

fn projection(words: &[u64], coords: &[usize]) -> HashSet<u64> {
    words
        .iter()
        .map(|&w| coords.iter().enumerate().fold(0u64, |acc, (j, &c)| acc | (w >> c & 1) << j))
        .collect()
}

fn search(
    words: &[u64],
    invariants: &[Vec<usize>],
    images: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Perm>,
) {
    let n = used.len();
    let d = images.len();
    if d == n {
        out.push(Perm(images.clone()));
        return;
    }
    let domain: Vec<usize> = (0..=d).collect();
    let source = projection(words, &domain);
    for j in 0..n {
        if used[j] || invariants[j] != invariants[d] {
            continue;
        }
        images.push(j);
        if projection(words, images) == source {
            used[j] = true;
            search(words, invariants, images, used, out);
            used[j] = false;
        }
        images.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamming_group_order() {
        let g = automorphism_group(&LinearCode::hamming8()).unwrap();
        assert_eq!(g.len(), 1344);
    }

    #[test]
    fn even3_is_symmetric_group() {
        let c = LinearCode::from_strings(&["011", "101"]).unwrap();
        assert_eq!(automorphism_group(&c).unwrap().len(), 6);
    }

    #[test]
    fn members_fix_the_code() {
        let c = LinearCode::from_strings(&["1100", "0011"]).unwrap();
        let g = automorphism_group(&c).unwrap();
        assert_eq!(g.len(), 8);
        for p in &g {
            assert_eq!(c.permuted(p), c);
        }
    }

    #[test]
    fn composition_convention() {
        let g = Perm::new(vec![1, 2, 0]);
        let h = Perm::swap(3, 0, 1);
        let w = Codeword::parse("100").unwrap();
        assert_eq!(g.then(&h).apply(w), h.apply(g.apply(w)));
        assert!(g.then(&g.inverse()).is_identity());
    }

    #[test]
    fn too_long() {
        let c = LinearCode::zero(13);
        assert_eq!(automorphism_group(&c), Err(CodeError::TooLarge { n: 13, bound: 12 }));
    }
}
