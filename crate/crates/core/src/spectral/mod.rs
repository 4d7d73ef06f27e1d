//! Eigenspaces of adjoints, fusion laws, axes and Miyamoto involutions.

mod decompose;
mod fusion;

pub use decompose::{eigen_decompose, label_order, toral_peirce, EigenDecomposition, Eigenspace};
pub use fusion::{FusionLaw, Grading};

use crate::algebra::{CodeAlgebra, Element};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::maps::LinearMap;
use crate::scalar::Scalar;

/// The fusion law realised by `dec`: label `z` is in `x ⋆ y` when some
/// product of eigenvectors for `x` and `y` has a nonzero `z` component.
pub fn fusion_law(alg: &CodeAlgebra, dec: &EigenDecomposition) -> Result<FusionLaw> {
    if !dec.is_semisimple() {
        return Err(Error::NotSemisimple);
    }
    let pinv = dec
        .change_of_basis()
        .inverse()
        .expect("eigenvectors of distinct eigenvalues are independent");
    let mut offsets = vec![0];
    for s in &dec.spaces {
        offsets.push(offsets.last().unwrap() + s.dim());
    }
    let block_of = |k: usize| offsets.partition_point(|&o| o <= k) - 1;

    let mut law = FusionLaw::empty(dec.eigenvalues());
    for (p, sp) in dec.spaces.iter().enumerate() {
        for (q, sq) in dec.spaces.iter().enumerate().skip(p) {
            for (iu, u) in sp.basis.iter().enumerate() {
                let start = if p == q { iu } else { 0 };
                for w in &sq.basis[start..] {
                    let prod = alg.multiply(u, w);
                    if prod.is_zero() {
                        continue;
                    }
                    let coords = pinv.mul_vec(prod.coords());
                    for (k, c) in coords.iter().enumerate() {
                        if !c.is_zero() {
                            law.insert(p, q, block_of(k));
                        }
                    }
                }
            }
        }
    }
    Ok(law)
}

/// The outcome of [`is_axis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxisVerdict {
    PrimitiveAxis,
    /// An axis whose 1-eigenspace has the given dimension.
    Axis(usize),
    NotAxis(String),
}

impl AxisVerdict {
    pub fn is_axis(&self) -> bool {
        !matches!(self, AxisVerdict::NotAxis(_))
    }

    pub fn is_primitive(&self) -> bool {
        matches!(self, AxisVerdict::PrimitiveAxis)
    }
}

/// Checks that `x` is a semisimple idempotent with spectrum inside the
/// labels of `law` and eigenvector products obeying it.
pub fn is_axis(alg: &CodeAlgebra, x: &Element, law: &FusionLaw) -> AxisVerdict {
    axis_check(alg, x, law).0
}

/// [`is_axis`] together with the decomposition and computed law, when
/// they were reached.
pub fn axis_check(
    alg: &CodeAlgebra,
    x: &Element,
    law: &FusionLaw,
) -> (AxisVerdict, Option<EigenDecomposition>, Option<FusionLaw>) {
    if !alg.is_idempotent(x) {
        return (AxisVerdict::NotAxis("x * x != x".into()), None, None);
    }
    let dec = eigen_decompose(alg, x, law.labels());
    if !dec.is_semisimple() {
        let msg = format!("not semisimple: {} dimensions unaccounted", dec.residual_dim);
        return (AxisVerdict::NotAxis(msg), Some(dec), None);
    }
    if let Some(v) = dec.eigenvalues().into_iter().find(|v| law.index_of(v).is_none()) {
        return (AxisVerdict::NotAxis(format!("eigenvalue {v} is not a label")), Some(dec), None);
    }
    let computed = fusion_law(alg, &dec).expect("semisimple");
    if let Some((a, b)) = computed.containment_witness(law) {
        let msg = format!("{a} * {b} = {:?} breaks the law", computed.product(&a, &b));
        return (AxisVerdict::NotAxis(msg), Some(dec), Some(computed));
    }
    let one = dec.space(&Scalar::one()).map_or(0, Eigenspace::dim);
    let verdict = if one == 1 {
        AxisVerdict::PrimitiveAxis
    } else {
        AxisVerdict::Axis(one)
    };
    (verdict, Some(dec), Some(computed))
}

/// The map fixing the even eigenspaces and negating the odd ones, checked
/// to be an algebra automorphism.
pub fn miyamoto_involution(alg: &CodeAlgebra, dec: &EigenDecomposition, grading: &Grading) -> Result<LinearMap> {
    let map = miyamoto_unchecked(dec, grading)?;
    if let Some((i, j)) = map.automorphism_witness(alg) {
        return Err(Error::GradingFails(format!(
            "the product {} * {} is not preserved",
            alg.basis_label(i),
            alg.basis_label(j)
        )));
    }
    Ok(map)
}

/// `P diag(±1) P^-1` without the automorphism check.
pub fn miyamoto_unchecked(dec: &EigenDecomposition, grading: &Grading) -> Result<LinearMap> {
    if !dec.is_semisimple() {
        return Err(Error::NotSemisimple);
    }
    let p = dec.change_of_basis();
    let pinv = p.inverse().expect("eigenbasis");
    let n = p.rows();
    let mut d = Matrix::zeros(n, n);
    let mut k = 0;
    for s in &dec.spaces {
        let sign = if grading.minus.contains(&s.value) {
            Scalar::from_int(-1)
        } else {
            Scalar::one()
        };
        for _ in 0..s.dim() {
            d[(k, k)] = sign.clone();
            k += 1;
        }
    }
    Ok(LinearMap(p.mul(&d).mul(&pinv)))
}

/// Whether the law satisfies the Seress condition.
pub fn seress_check(law: &FusionLaw) -> Result<bool> {
    law.seress()
}
