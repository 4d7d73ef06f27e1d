//! Linear maps on an algebra: dense matrices and signed basis permutations.
//!
//! Maps compose as functions: `f.compose(&g)` applies `g` first.

use std::fmt;

use crate::algebra::{CodeAlgebra, Element};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A map sending basis vector `j` to `±b_{targets[j]}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedMap {
    targets: Vec<usize>,
    negate: Vec<bool>,
}

impl SignedMap {
    /// Panics unless `targets` is a permutation of `0..targets.len()`.
    pub fn new(targets: Vec<usize>, negate: Vec<bool>) -> Self {
        assert_eq!(targets.len(), negate.len());
        let mut seen = vec![false; targets.len()];
        for &t in &targets {
            assert!(t < targets.len() && !seen[t], "targets are not a permutation");
            seen[t] = true;
        }
        SignedMap { targets, negate }
    }

    pub fn identity(dim: usize) -> Self {
        SignedMap {
            targets: (0..dim).collect(),
            negate: vec![false; dim],
        }
    }

    /// The diagonal sign map negating the basis vectors in `negate`.
    pub fn signs(negate: Vec<bool>) -> Self {
        SignedMap {
            targets: (0..negate.len()).collect(),
            negate,
        }
    }

    pub fn dim(&self) -> usize {
        self.targets.len()
    }

    pub fn target(&self, j: usize) -> (usize, bool) {
        (self.targets[j], self.negate[j])
    }

    pub fn is_identity(&self) -> bool {
        self.targets.iter().enumerate().all(|(i, &t)| i == t) && !self.negate.iter().any(|&n| n)
    }

    /// Whether the map only changes signs.
    pub fn is_diagonal(&self) -> bool {
        self.targets.iter().enumerate().all(|(i, &t)| i == t)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SignedMap) -> SignedMap {
        let (targets, negate) = other
            .targets
            .iter()
            .zip(&other.negate)
            .map(|(&t, &n)| (self.targets[t], n ^ self.negate[t]))
            .unzip();
        SignedMap { targets, negate }
    }

    pub fn inverse(&self) -> SignedMap {
        let mut targets = vec![0; self.dim()];
        let mut negate = vec![false; self.dim()];
        for (j, (&t, &n)) in self.targets.iter().zip(&self.negate).enumerate() {
            targets[t] = j;
            negate[t] = n;
        }
        SignedMap { targets, negate }
    }

    pub fn apply(&self, x: &Element) -> Element {
        let mut out = Element::zero(self.dim());
        for j in x.support() {
            let v = if self.negate[j] { -&x[j] } else { x[j].clone() };
            out.set(self.targets[j], v);
        }
        out
    }

    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for j in 0..self.dim() {
            m[(self.targets[j], j)] = if self.negate[j] { Scalar::from_int(-1) } else { Scalar::one() };
        }
        m
    }

    /// The first basis pair `(i, j)` whose product is not preserved.
    pub fn automorphism_witness(&self, alg: &CodeAlgebra) -> Option<(usize, usize)> {
        let dim = alg.dim();
        for i in 0..dim {
            for j in i..dim {
                let lhs = self.apply(&alg.basis_product_element(i, j));
                let mut rhs = alg.basis_product_element(self.targets[i], self.targets[j]);
                if self.negate[i] ^ self.negate[j] {
                    rhs = -&rhs;
                }
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_automorphism(&self, alg: &CodeAlgebra) -> bool {
        self.automorphism_witness(alg).is_none()
    }
}

impl fmt::Debug for SignedMap {
    /// Cycle notation with a `-` marking negated images.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", cycle_notation(&self.targets, &self.negate))
    }
}

/// Disjoint cycles of a signed permutation, e.g. `(0 1)(2 -2)`; fixed points
/// are listed only when negated.
pub fn cycle_notation(targets: &[usize], negate: &[bool]) -> String {
    let mut seen = vec![false; targets.len()];
    let mut out = String::new();
    for start in 0..targets.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            cycle.push(j);
            j = targets[j];
        }
        if cycle.len() == 1 && !negate[start] {
            continue;
        }
        let parts: Vec<String> = cycle
            .iter()
            .map(|&j| if negate[j] { format!("-{j}") } else { j.to_string() })
            .collect();
        out.push('(');
        out.push_str(&parts.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// A dense linear map; column `j` is the image of basis vector `j`.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearMap(pub Matrix);

impl LinearMap {
    pub fn identity(dim: usize) -> Self {
        LinearMap(Matrix::identity(dim))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn apply(&self, x: &Element) -> Element {
        Element::from_coords(self.0.mul_vec(x.coords()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        LinearMap(self.0.mul(&other.0))
    }

    pub fn is_identity(&self) -> bool {
        self.0 == Matrix::identity(self.dim())
    }

    /// The first basis pair `(i, j)` with `f(b_i b_j) != f(b_i) f(b_j)`.
    pub fn automorphism_witness(&self, alg: &CodeAlgebra) -> Option<(usize, usize)> {
        let dim = alg.dim();
        let images: Vec<Element> = (0..dim).map(|j| Element::from_coords(self.0.column(j))).collect();
        for i in 0..dim {
            for j in i..dim {
                let lhs = self.apply(&alg.basis_product_element(i, j));
                let rhs = alg.multiply(&images[i], &images[j]);
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_automorphism(&self, alg: &CodeAlgebra) -> bool {
        self.automorphism_witness(alg).is_none()
    }
}

impl From<&SignedMap> for LinearMap {
    fn from(m: &SignedMap) -> Self {
        LinearMap(m.to_matrix())
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_is_function_composition() {
        let f = SignedMap::new(vec![1, 2, 0], vec![true, false, false]);
        let g = SignedMap::new(vec![0, 2, 1], vec![false, false, true]);
        let x = Element::from_coords(vec![Scalar::from_int(1), Scalar::from_int(2), Scalar::from_int(3)]);
        assert_eq!(f.compose(&g).apply(&x), f.apply(&g.apply(&x)));
        assert_eq!(LinearMap::from(&f.compose(&g)), LinearMap::from(&f).compose(&LinearMap::from(&g)));
        assert!(f.compose(&f.inverse()).is_identity());
    }

    #[test]
    fn cycles() {
        let f = SignedMap::new(vec![1, 0, 2, 3], vec![false, false, true, false]);
        assert_eq!(format!("{f:?}"), "(0 1)(-2)");
        assert_eq!(format!("{:?}", SignedMap::identity(3)), "()");
    }
}
