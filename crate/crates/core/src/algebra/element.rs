use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use crate::scalar::Scalar;

/// A coordinate vector over the basis `t_1..t_n, e^alpha (alpha in C*)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Element(Vec<Scalar>);

impl Element {
    pub fn zero(dim: usize) -> Self {
        Element(vec![Scalar::zero(); dim])
    }

    /// The `k`-th basis vector.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[k] = Scalar::one();
        v
    }

    pub fn from_coords(coords: Vec<Scalar>) -> Self {
        Element(coords)
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    /// Indices of nonzero coordinates.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i)
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        Element(self.0.iter().map(|c| c * s).collect())
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, s: &Scalar, other: &Element) {
        for (x, y) in self.0.iter_mut().zip(&other.0) {
            if !y.is_zero() {
                *x += &(s * y);
            }
        }
    }

    pub fn set(&mut self, k: usize, value: Scalar) {
        self.0[k] = value;
    }

    /// Whether `self` is a scalar multiple of `other` (or both are zero).
    pub fn is_multiple_of(&self, other: &Element) -> bool {
        let Some(k) = other.support().next() else {
            return self.is_zero();
        };
        let ratio = &self.0[k] / &other.0[k];
        self.0.iter().zip(&other.0).all(|(x, y)| *x == &ratio * y)
    }
}

impl Index<usize> for Element {
    type Output = Scalar;

    fn index(&self, k: usize) -> &Scalar {
        &self.0[k]
    }
}

impl Add for &Element {
    type Output = Element;

    fn add(self, rhs: &Element) -> Element {
        Element(self.0.iter().zip(&rhs.0).map(|(x, y)| x + y).collect())
    }
}

impl Sub for &Element {
    type Output = Element;

    fn sub(self, rhs: &Element) -> Element {
        Element(self.0.iter().zip(&rhs.0).map(|(x, y)| x - y).collect())
    }
}

impl Neg for &Element {
    type Output = Element;

    fn neg(self) -> Element {
        Element(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}
