use std::cmp::Ordering;

use num_traits::Zero;

use crate::algebra::{CodeAlgebra, Element};
use crate::linalg::{Matrix, Polynomial, Subspace};
use crate::scalar::{choose_discriminant, Scalar};

/// One eigenvalue with a basis of its eigenspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenspace {
    pub value: Scalar,
    pub basis: Vec<Element>,
}

impl Eigenspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn subspace(&self) -> Subspace {
        let dim = self.basis.first().map_or(0, Element::dim);
        Subspace::spanned_by(dim, self.basis.iter().map(Element::coords))
    }
}

/// Eigenspaces of `ad_x` over the working field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenDecomposition {
    pub spaces: Vec<Eigenspace>,
    /// `dim A` minus the sum of eigenspace dimensions.
    pub residual_dim: usize,
}

/// `1`, then `0`, then the rest in real order (lexicographic off the reals).
pub fn label_order(x: &Scalar, y: &Scalar) -> Ordering {
    let rank = |s: &Scalar| {
        if s.is_one() {
            0
        } else if s.is_zero() {
            1
        } else {
            2
        }
    };
    rank(x).cmp(&rank(y)).then_with(|| x.total_cmp(y))
}

impl EigenDecomposition {
    pub fn new(mut spaces: Vec<Eigenspace>, dim: usize) -> Self {
        spaces.retain(|s| !s.basis.is_empty());
        spaces.sort_by(|a, b| label_order(&a.value, &b.value));
        let total: usize = spaces.iter().map(Eigenspace::dim).sum();
        EigenDecomposition {
            spaces,
            residual_dim: dim - total,
        }
    }

    pub fn is_semisimple(&self) -> bool {
        self.residual_dim == 0
    }

    pub fn eigenvalues(&self) -> Vec<Scalar> {
        self.spaces.iter().map(|s| s.value.clone()).collect()
    }

    pub fn space(&self, value: &Scalar) -> Option<&Eigenspace> {
        self.spaces.iter().find(|s| &s.value == value)
    }

    /// `(eigenvalue, dimension)` pairs in label order.
    pub fn dims(&self) -> Vec<(Scalar, usize)> {
        self.spaces.iter().map(|s| (s.value.clone(), s.dim())).collect()
    }

    /// Same eigenvalues and equal eigenspaces as subspaces.
    pub fn same_spaces(&self, other: &EigenDecomposition) -> bool {
        self.residual_dim == other.residual_dim
            && self.spaces.len() == other.spaces.len()
            && self
                .spaces
                .iter()
                .zip(&other.spaces)
                .all(|(a, b)| a.value == b.value && a.subspace() == b.subspace())
    }

    /// Columns are the eigenvectors in order.
    pub fn change_of_basis(&self) -> Matrix {
        let cols: Vec<Vec<Scalar>> = self
            .spaces
            .iter()
            .flat_map(|s| s.basis.iter().map(|v| v.coords().to_vec()))
            .collect();
        let rows = cols.first().map_or(0, Vec::len);
        Matrix::from_columns(&cols, rows)
    }
}

/// The eigenspace decomposition of `ad_{t_i}`, read off its diagonal.
pub fn toral_peirce(alg: &CodeAlgebra, i: usize) -> EigenDecomposition {
    let mut spaces: Vec<Eigenspace> = Vec::new();
    let mut push = |value: Scalar, v: Element| match spaces.iter_mut().find(|s| s.value == value) {
        Some(s) => s.basis.push(v),
        None => spaces.push(Eigenspace { value, basis: vec![v] }),
    };
    for j in 0..alg.n() {
        push(if i == j { Scalar::one() } else { Scalar::zero() }, alg.t(j));
    }
    for (k, &alpha) in alg.cstar().iter().enumerate() {
        let value = if alpha.bit(i) {
            alg.params().a(i, alpha).expect("validated").clone()
        } else {
            Scalar::zero()
        };
        push(value, alg.basis(alg.n() + k));
    }
    EigenDecomposition::new(spaces, alg.dim())
}

/// Exact eigenspaces of `ad_x`.
///
/// Candidates are `1`, `0`, the structure parameter values and `hints`. If
/// they do not account for the whole space, the characteristic polynomial
/// is computed, its rational roots tried, and a residual factor of degree at
/// most two solved in the working field.
pub fn eigen_decompose(alg: &CodeAlgebra, x: &Element, hints: &[Scalar]) -> EigenDecomposition {
    let ad = alg.adjoint_matrix(x);
    let dim = alg.dim();
    let mut tried: Vec<Scalar> = Vec::new();
    let mut spaces: Vec<Eigenspace> = Vec::new();
    let mut found = 0;

    let try_value = |value: &Scalar, tried: &mut Vec<Scalar>, spaces: &mut Vec<Eigenspace>, found: &mut usize| {
        if tried.contains(value) {
            return;
        }
        tried.push(value.clone());
        let kernel = ad.sub_scalar_identity(value).kernel();
        if !kernel.is_empty() {
            *found += kernel.len();
            spaces.push(Eigenspace {
                value: value.clone(),
                basis: kernel.into_iter().map(Element::from_coords).collect(),
            });
        }
    };

    let mut candidates = vec![Scalar::one(), Scalar::zero()];
    candidates.extend(hints.iter().cloned());
    candidates.extend(alg.params().values().cloned());
    for c in &candidates {
        if found == dim {
            break;
        }
        try_value(c, &mut tried, &mut spaces, &mut found);
    }

    if found < dim {
        let mut poly = ad.characteristic_polynomial();
        if poly.is_rational() {
            if let Some(roots) = poly.rational_roots() {
                for r in roots {
                    try_value(&Scalar::from_rational(r), &mut tried, &mut spaces, &mut found);
                }
            }
        }
        for s in &spaces {
            while let Some(q) = poly.deflate(&s.value) {
                poly = q;
            }
        }
        let field = field_of(alg, x);
        for r in low_degree_roots(&poly, field) {
            try_value(&r, &mut tried, &mut spaces, &mut found);
        }
    }
    EigenDecomposition::new(spaces, dim)
}

fn field_of(alg: &CodeAlgebra, x: &Element) -> i64 {
    x.coords()
        .iter()
        .map(Scalar::discriminant)
        .find(|&d| d != 1)
        .unwrap_or(alg.disc())
}

/// Roots of a polynomial of degree at most two. Over the rationals a new
/// quadratic field is chosen when needed.
fn low_degree_roots(p: &Polynomial, field: i64) -> Vec<Scalar> {
    let c = &p.0;
    match p.degree() {
        Some(1) => vec![-&(&c[0] / &c[1])],
        Some(2) => {
            let disc = &(&c[1] * &c[1]) - &(&Scalar::from_int(4) * &(&c[2] * &c[0]));
            let d = match (field, disc.as_rational()) {
                (1, Some(q)) if !q.is_zero() => choose_discriminant(q).unwrap_or(1),
                _ => field,
            };
            let Some(root) = disc.sqrt(d) else {
                return Vec::new();
            };
            let two_a = &Scalar::from_int(2) * &c[2];
            vec![&(&(-&c[1]) + &root) / &two_a, &(&(-&c[1]) - &root) / &two_a]
        }
        _ => Vec::new(),
    }
}
