//! Frobenius forms: symmetric bilinear forms with `(x, yz) = (xy, z)`.

use std::cmp::Ordering;

use serde::Serialize;

use crate::algebra::{b_domain, CodeAlgebra, Element};
use crate::codes::Codeword;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::maps::LinearMap;
use crate::scalar::{Scalar, ScalarError};
use crate::spectral::EigenDecomposition;

/// A Gram matrix in the algebra basis with the data it was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GramForm {
    #[serde(skip)]
    pub matrix: Matrix,
    /// `(t_i, t_i)`.
    pub lambda_toral: Vec<Scalar>,
    /// `(e^α, e^α)` in basis order.
    pub lambda_codeword: Vec<(Codeword, Scalar)>,
    /// Free entries `(t_i, e^α)` of the exceptional case.
    pub exceptional: Vec<(usize, Codeword, Scalar)>,
}

impl GramForm {
    pub fn from_matrix(matrix: Matrix) -> Self {
        GramForm {
            matrix,
            lambda_toral: Vec::new(),
            lambda_codeword: Vec::new(),
            exceptional: Vec::new(),
        }
    }

    pub fn eval(&self, x: &Element, y: &Element) -> Scalar {
        let gy = self.matrix.mul_vec(y.coords());
        x.coords().iter().zip(&gy).fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// Pairs `(i, α)` whose entry `(t_i, e^α)` is unconstrained: the code is
/// `{0, 1, α, α^c}`, `|α| = 1` and `a_{i,α} = 1`.
pub fn exceptional_pairs(alg: &CodeAlgebra) -> Vec<(usize, Codeword)> {
    let cstar = alg.cstar();
    if cstar.len() != 2 || !alg.code().contains_ones() {
        return Vec::new();
    }
    cstar
        .iter()
        .filter(|w| w.weight() == 1)
        .filter_map(|&w| {
            let i = w.support().next()?;
            alg.params().a(i, w).filter(|a| a.is_one()).map(|_| (i, w))
        })
        .collect()
}

/// `λ_α = (c_{i,α}/a_{i,α}) λ_i` taken at the first coordinate of `α`.
fn lambda_alpha(alg: &CodeAlgebra, lambda: &[Scalar], alpha: Codeword) -> Scalar {
    let i = alpha.support().next().expect("nonzero word");
    let p = alg.params();
    &(p.c(i, alpha).expect("validated") / p.a(i, alpha).expect("validated")) * &lambda[i]
}

/// The Frobenius form for toral weights `lambda` (all ones by default),
/// with the exceptional free entries set to zero.
pub fn frobenius_form(alg: &CodeAlgebra, lambda: Option<&[Scalar]>) -> Result<GramForm> {
    frobenius_form_with(alg, lambda, &[])
}

/// As [`frobenius_form`] with values for the exceptional free entries.
pub fn frobenius_form_with(
    alg: &CodeAlgebra,
    lambda: Option<&[Scalar]>,
    exceptional_values: &[Scalar],
) -> Result<GramForm> {
    let n = alg.n();
    let lambda: Vec<Scalar> = match lambda {
        Some(l) if l.len() == n => l.to_vec(),
        Some(l) => {
            return Err(Error::Invalid(format!("expected {n} toral weights, got {}", l.len())));
        }
        None => vec![Scalar::one(); n],
    };
    if !alg.is_nondegenerate() {
        return Err(Error::Degenerate(format!("{:?}", alg.nondegeneracy())));
    }
    let p = alg.params();
    let cstar = alg.cstar();
    for &alpha in cstar {
        let la = lambda_alpha(alg, &lambda, alpha);
        let i = alpha.support().next().expect("nonzero word");
        for j in alpha.support().skip(1) {
            let lj = &(p.c(j, alpha).expect("validated") / p.a(j, alpha).expect("validated")) * &lambda[j];
            if lj != la {
                return Err(Error::ConditionOneFails {
                    i: i + 1,
                    j: j + 1,
                    alpha: alpha.to_string(),
                });
            }
        }
    }
    let la: Vec<Scalar> = cstar.iter().map(|&a| lambda_alpha(alg, &lambda, a)).collect();
    let idx = |w: Codeword| alg.slot(w).expect("in C*") - n;
    for (k, &alpha) in cstar.iter().enumerate() {
        for &beta in &cstar[k + 1..] {
            if !b_domain(alpha, beta) {
                continue;
            }
            let gamma = alpha.add(beta);
            let bab = p.b(alpha, beta).expect("validated");
            let bag = p.b(alpha, gamma).expect("validated");
            let bbg = p.b(beta, gamma).expect("validated");
            let x = bab * &la[idx(gamma)];
            let y = bag * &la[idx(beta)];
            let z = bbg * &la[idx(alpha)];
            if x != y || y != z {
                return Err(Error::ConditionTwoFails {
                    alpha: alpha.to_string(),
                    beta: beta.to_string(),
                    gamma: gamma.to_string(),
                });
            }
        }
    }

    let pairs = exceptional_pairs(alg);
    if exceptional_values.len() > pairs.len() {
        return Err(Error::Invalid(format!(
            "{} exceptional values given but only {} free entries exist",
            exceptional_values.len(),
            pairs.len()
        )));
    }
    let mut m = Matrix::zeros(alg.dim(), alg.dim());
    for (i, l) in lambda.iter().enumerate() {
        m[(i, i)] = l.clone();
    }
    for (k, l) in la.iter().enumerate() {
        m[(n + k, n + k)] = l.clone();
    }
    let mut exceptional = Vec::new();
    for (k, &(i, alpha)) in pairs.iter().enumerate() {
        let v = exceptional_values.get(k).cloned().unwrap_or_else(Scalar::zero);
        let s = alg.slot(alpha).expect("in C*");
        m[(i, s)] = v.clone();
        m[(s, i)] = v.clone();
        exceptional.push((i, alpha, v));
    }
    Ok(GramForm {
        matrix: m,
        lambda_toral: lambda,
        lambda_codeword: cstar.iter().copied().zip(la).collect(),
        exceptional,
    })
}

/// Basis of the toral weights `λ` satisfying both conditions.
pub fn admissible_lambdas(alg: &CodeAlgebra) -> Vec<Vec<Scalar>> {
    let n = alg.n();
    let p = alg.params();
    let cstar = alg.cstar();
    // λ_α as a linear functional of λ.
    let functional = |alpha: Codeword, i: usize| {
        let mut row = vec![Scalar::zero(); n];
        row[i] = p.c(i, alpha).expect("validated") / p.a(i, alpha).expect("validated");
        row
    };
    let first = |alpha: Codeword| alpha.support().next().expect("nonzero word");
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for &alpha in cstar {
        let base = functional(alpha, first(alpha));
        for j in alpha.support().skip(1) {
            let other = functional(alpha, j);
            rows.push(base.iter().zip(&other).map(|(x, y)| x - y).collect());
        }
    }
    for (k, &alpha) in cstar.iter().enumerate() {
        for &beta in &cstar[k + 1..] {
            if !b_domain(alpha, beta) {
                continue;
            }
            let gamma = alpha.add(beta);
            let term = |b: &Scalar, w: Codeword| -> Vec<Scalar> {
                functional(w, first(w)).iter().map(|x| b * x).collect()
            };
            let x = term(p.b(alpha, beta).expect("validated"), gamma);
            let y = term(p.b(alpha, gamma).expect("validated"), beta);
            let z = term(p.b(beta, gamma).expect("validated"), alpha);
            rows.push(x.iter().zip(&y).map(|(u, v)| u - v).collect());
            rows.push(y.iter().zip(&z).map(|(u, v)| u - v).collect());
        }
    }
    if rows.is_empty() {
        return (0..n)
            .map(|i| {
                let mut v = vec![Scalar::zero(); n];
                v[i] = Scalar::one();
                v
            })
            .collect();
    }
    Matrix::from_rows(rows).kernel()
}

fn flatten(m: &Matrix) -> Vec<Scalar> {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

/// Span of all forms produced by the formulas, as flattened Gram matrices.
pub fn formula_family(alg: &CodeAlgebra) -> Result<Subspace> {
    let dim = alg.dim();
    let mut space = Subspace::new(dim * dim);
    for lambda in admissible_lambdas(alg) {
        let form = frobenius_form(alg, Some(&lambda))?;
        space.insert(&flatten(&form.matrix));
    }
    for (k, _) in exceptional_pairs(alg).iter().enumerate() {
        let mut values = vec![Scalar::zero(); k + 1];
        values[k] = Scalar::one();
        let zero = vec![Scalar::zero(); alg.n()];
        let form = frobenius_form_with(alg, Some(&zero), &values)?;
        space.insert(&flatten(&form.matrix));
    }
    Ok(space)
}

/// All bilinear forms `X` (not assumed symmetric) with
/// `(b_i b_j, b_k) = (b_i, b_j b_k)` for every basis triple.
pub fn brute_force_forms(alg: &CodeAlgebra) -> Subspace {
    let dim = alg.dim();
    let var = |p: usize, q: usize| p * dim + q;
    let mut rows = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let mut row = vec![Scalar::zero(); dim * dim];
                for (p, s) in alg.basis_product(i, j) {
                    row[var(*p, k)] += s;
                }
                for (q, s) in alg.basis_product(j, k) {
                    row[var(i, *q)] -= s;
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        Matrix::identity(dim * dim).kernel()
    } else {
        Matrix::from_rows(rows).kernel()
    };
    Subspace::spanned_by(dim * dim, kernel.iter().map(Vec::as_slice))
}

/// The first basis triple `(i, j, k)` with `(b_i b_j, b_k) != (b_i, b_j b_k)`.
pub fn associativity_witness(alg: &CodeAlgebra, form: &GramForm) -> Option<(usize, usize, usize)> {
    let dim = alg.dim();
    let basis: Vec<Element> = (0..dim).map(|k| alg.basis(k)).collect();
    for i in 0..dim {
        for j in 0..dim {
            let ij = alg.basis_product_element(i, j);
            for k in 0..dim {
                let jk = alg.basis_product_element(j, k);
                if form.eval(&ij, &basis[k]) != form.eval(&basis[i], &jk) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// Associativity over all basis triples. A zero form associates but is not
/// a Frobenius form; see [`is_frobenius`].
pub fn verify_associative(alg: &CodeAlgebra, form: &GramForm) -> bool {
    associativity_witness(alg, form).is_none()
}

pub fn is_frobenius(alg: &CodeAlgebra, form: &GramForm) -> bool {
    !form.is_zero() && verify_associative(alg, form)
}

/// A pair of eigenvectors from different eigenspaces that are not
/// orthogonal, as `(value, index, value, index)`.
pub fn orthogonality_witness(form: &GramForm, dec: &EigenDecomposition) -> Option<(Scalar, usize, Scalar, usize)> {
    for (p, sp) in dec.spaces.iter().enumerate() {
        for sq in &dec.spaces[p + 1..] {
            for (iu, u) in sp.basis.iter().enumerate() {
                for (iw, w) in sq.basis.iter().enumerate() {
                    if !form.eval(u, w).is_zero() {
                        return Some((sp.value.clone(), iu, sq.value.clone(), iw));
                    }
                }
            }
        }
    }
    None
}

pub fn eigenspace_orthogonality(form: &GramForm, dec: &EigenDecomposition) -> bool {
    orthogonality_witness(form, dec).is_none()
}

/// `(g x, g y) = (x, y)` for every basis pair and every `g`.
pub fn g_invariance(form: &GramForm, group: &[LinearMap]) -> bool {
    group.iter().all(|g| {
        let m = g.matrix();
        m.transpose().mul(&form.matrix).mul(m) == form.matrix
    })
}

/// Positive diagonal and, for each exceptional entry, a positive 2×2 minor,
/// under the real embedding with `sqrt(d) > 0`.
pub fn positive_definite(form: &GramForm) -> Result<bool> {
    let m = &form.matrix;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if m[(i, j)].discriminant() < 0 {
                return Err(ScalarError::UnorderedField(m[(i, j)].discriminant()).into());
            }
        }
    }
    for i in 0..m.rows() {
        if m[(i, i)].signum()? != Ordering::Greater {
            return Ok(false);
        }
        for j in i + 1..m.cols() {
            if !m[(i, j)].is_zero() {
                let minor = &(&m[(i, i)] * &m[(j, j)]) - &(&m[(i, j)] * &m[(j, i)]);
                if minor.signum()? != Ordering::Greater {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::StructureParams;
    use crate::codes::LinearCode;
    use crate::spectral::{eigen_decompose, toral_peirce};

    fn alg(code: LinearCode, a: Scalar, b: Scalar, c: Scalar) -> CodeAlgebra {
        let p = StructureParams::constant(&code, a, b, c).unwrap();
        CodeAlgebra::new(code, p).unwrap()
    }

    fn even3() -> CodeAlgebra {
        let code = LinearCode::from_strings(&["011", "101"]).unwrap();
        alg(code, Scalar::frac(1, 2), Scalar::frac(1, 2), Scalar::one())
    }

    #[test]
    fn even3_form() {
        let a = even3();
        let f = frobenius_form(&a, None).unwrap();
        let diag: Vec<Scalar> = (0..6).map(|i| f.matrix[(i, i)].clone()).collect();
        let expected: Vec<Scalar> = [1, 1, 1, 2, 2, 2].iter().map(|&k| Scalar::from_int(k)).collect();
        assert_eq!(diag, expected);
        assert!(is_frobenius(&a, &f));
        assert!(positive_definite(&f).unwrap());
    }

    #[test]
    fn identity_gram_is_not_associative() {
        let a = even3();
        let f = GramForm::from_matrix(Matrix::identity(6));
        let (i, j, k) = associativity_witness(&a, &f).unwrap();
        assert!(a.codeword_at(i).is_some() || a.codeword_at(j).is_some() || a.codeword_at(k).is_some());
        let zero = GramForm::from_matrix(Matrix::zeros(6, 6));
        assert!(verify_associative(&a, &zero));
        assert!(!is_frobenius(&a, &zero));
    }

    #[test]
    fn hamming_codeword_weights() {
        let a = alg(LinearCode::hamming8(), Scalar::frac(1, 4), Scalar::frac(1, 2), Scalar::one());
        let f = frobenius_form(&a, None).unwrap();
        assert!(f.lambda_codeword.iter().all(|(_, l)| *l == Scalar::from_int(4)));
        assert_eq!(f.lambda_codeword.len(), 14);
    }

    #[test]
    fn brute_force_matches_formulas_on_f2sq() {
        let code = LinearCode::full(2);
        for a_val in [Scalar::one(), Scalar::frac(1, 3)] {
            let a = alg(code.clone(), a_val, Scalar::from_int(2), Scalar::from_int(-3));
            let family = formula_family(&a).unwrap();
            let brute = brute_force_forms(&a);
            assert_eq!(family, brute);
        }
        let a = alg(code, Scalar::one(), Scalar::from_int(2), Scalar::from_int(-3));
        assert_eq!(exceptional_pairs(&a).len(), 2);
    }

    #[test]
    fn condition_failures() {
        let code = LinearCode::from_strings(&["011", "101"]).unwrap();
        let mut p = StructureParams::constant(&code, Scalar::frac(1, 2), Scalar::frac(1, 2), Scalar::one()).unwrap();
        p.set_c(1, Codeword::parse("011").unwrap(), Scalar::from_int(2));
        let a = CodeAlgebra::new(code.clone(), p).unwrap();
        assert!(matches!(frobenius_form(&a, None), Err(Error::ConditionOneFails { .. })));
        let mut p = StructureParams::constant(&code, Scalar::frac(1, 2), Scalar::frac(1, 2), Scalar::one()).unwrap();
        p.set_b(Codeword::parse("011").unwrap(), Codeword::parse("101").unwrap(), Scalar::one());
        let a = CodeAlgebra::new(code, p).unwrap();
        assert!(matches!(frobenius_form(&a, None), Err(Error::ConditionTwoFails { .. })));
        assert!(admissible_lambdas(&a).is_empty());
    }

    #[test]
    fn orthogonality_and_perturbation() {
        let a = even3();
        let f = frobenius_form(&a, None).unwrap();
        let dec = toral_peirce(&a, 0);
        assert!(eigenspace_orthogonality(&f, &dec));
        let x = &a.t_of(Codeword::parse("011").unwrap()).scale(&Scalar::frac(1, 2))
            + &a.e(Codeword::parse("011").unwrap()).unwrap().scale(&Scalar::frac(1, 2));
        let dec = eigen_decompose(&a, &x, &[]);
        assert!(eigenspace_orthogonality(&f, &dec));
        let mut bad = f.clone();
        bad.matrix[(0, 3)] = Scalar::one();
        bad.matrix[(3, 0)] = Scalar::one();
        assert!(!eigenspace_orthogonality(&bad, &toral_peirce(&a, 0)));
    }

    #[test]
    fn definiteness() {
        let code = LinearCode::from_strings(&["011", "101"]).unwrap();
        let a = alg(code, Scalar::frac(1, 2), Scalar::frac(1, 2), Scalar::from_int(-1));
        let f = frobenius_form(&a, None).unwrap();
        assert!(!positive_definite(&f).unwrap());
        let mut z = f.clone();
        z.matrix[(0, 0)] = Scalar::zero();
        assert!(!positive_definite(&z).unwrap());
    }
}
