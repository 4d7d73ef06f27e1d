//! The code algebra `A_C(Λ)`.
//!
//! Basis order is `t_1..t_n` followed by `e^alpha` for `alpha` in `C*`,
//! lexicographically. Products:
//!
//! ```text
//! t_i t_j     = δ_ij t_i
//! t_i e^α     = a_{i,α} e^α          if α_i = 1, else 0
//! e^α e^β     = b_{α,β} e^{α+β}      if β ∉ {α, α^c}
//! e^α e^α     = Σ_{i∈supp α} c_{i,α} t_i
//! e^α e^{α^c} = 0
//! ```

mod element;
mod params;

use std::collections::HashMap;

pub use element::Element;
pub use params::{b_domain, parse_params, ParamsFile, PointKey, StructureParams};

use crate::codes::{automorphism_group, Codeword, LinearCode, Perm};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::maps::SignedMap;
use crate::scalar::{is_squarefree, Scalar, ScalarError};

/// Default ceiling on `n + |C*|`.
pub const DEFAULT_MAX_DIM: usize = 200;

type Product = Vec<(usize, Scalar)>;

#[derive(Clone, Debug)]
pub struct CodeAlgebra {
    code: LinearCode,
    params: StructureParams,
    cstar: Vec<Codeword>,
    slots: HashMap<Codeword, usize>,
    disc: i64,
    /// Sparse products of basis pairs, `table[i][j]`.
    table: Vec<Vec<Product>>,
}

impl CodeAlgebra {
    pub fn new(code: LinearCode, params: StructureParams) -> Result<Self> {
        Self::with_limit(code, params, DEFAULT_MAX_DIM)
    }

    /// Builds with a custom dimension ceiling.
    pub fn with_limit(code: LinearCode, params: StructureParams, limit: usize) -> Result<Self> {
        let cstar = code.nonconstant_words()?;
        if cstar.is_empty() {
            return Err(Error::EmptyCStar);
        }
        let n = code.len();
        let dim = n + cstar.len();
        if dim > limit {
            return Err(Error::TooLarge { dim, limit });
        }
        params.validate(&code)?;
        let disc = params.discriminant()?;
        let slots: HashMap<Codeword, usize> = cstar.iter().enumerate().map(|(k, &w)| (w, n + k)).collect();

        let mut table = vec![vec![Vec::new(); dim]; dim];
        for i in 0..n {
            table[i][i] = vec![(i, Scalar::one())];
        }
        for (k, &alpha) in cstar.iter().enumerate() {
            let ea = n + k;
            for i in alpha.support() {
                let a = params.a(i, alpha).expect("validated").clone();
                if !a.is_zero() {
                    table[i][ea] = vec![(ea, a.clone())];
                    table[ea][i] = vec![(ea, a)];
                }
            }
            table[ea][ea] = alpha
                .support()
                .map(|i| (i, params.c(i, alpha).expect("validated").clone()))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            for &beta in &cstar[k + 1..] {
                if !b_domain(alpha, beta) {
                    continue;
                }
                let b = params.b(alpha, beta).expect("validated");
                if b.is_zero() {
                    continue;
                }
                let eb = slots[&beta];
                let target = slots[&alpha.add(beta)];
                table[ea][eb] = vec![(target, b.clone())];
                table[eb][ea] = vec![(target, b.clone())];
            }
        }
        Ok(CodeAlgebra {
            code,
            params,
            cstar,
            slots,
            disc,
            table,
        })
    }

    /// The same algebra over `Q(sqrt d)`.
    pub fn with_field(mut self, d: i64) -> Result<Self> {
        if d == 0 || !is_squarefree(d) {
            return Err(ScalarError::BadDiscriminant(d).into());
        }
        if self.disc != 1 && self.disc != d {
            return Err(ScalarError::DiscriminantMismatch(self.disc, d).into());
        }
        self.disc = d;
        Ok(self)
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn params(&self) -> &StructureParams {
        &self.params
    }

    /// Length of the code, the number of toral basis vectors.
    pub fn n(&self) -> usize {
        self.code.len()
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    pub fn cstar(&self) -> &[Codeword] {
        &self.cstar
    }

    /// Discriminant of the working field (1 for the rationals).
    pub fn disc(&self) -> i64 {
        self.disc
    }

    /// Basis index of `e^alpha`.
    pub fn slot(&self, alpha: Codeword) -> Option<usize> {
        self.slots.get(&alpha).copied()
    }

    /// The codeword of a non-toral basis index.
    pub fn codeword_at(&self, k: usize) -> Option<Codeword> {
        k.checked_sub(self.n()).and_then(|j| self.cstar.get(j).copied())
    }

    /// `t_1`, `e^011`, ... (toral labels are 1-based).
    pub fn basis_label(&self, k: usize) -> String {
        match self.codeword_at(k) {
            Some(w) => format!("e^{w}"),
            None => format!("t{}", k + 1),
        }
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.dim())
    }

    pub fn basis(&self, k: usize) -> Element {
        Element::basis(self.dim(), k)
    }

    /// `t_i` for a 0-based index.
    pub fn t(&self, i: usize) -> Element {
        assert!(i < self.n());
        self.basis(i)
    }

    pub fn e(&self, alpha: Codeword) -> Option<Element> {
        self.slot(alpha).map(|k| self.basis(k))
    }

    /// `t_alpha = Σ_{i∈supp α} t_i`.
    pub fn t_of(&self, alpha: Codeword) -> Element {
        let mut x = self.zero();
        for i in alpha.support() {
            x.set(i, Scalar::one());
        }
        x
    }

    /// `t = Σ t_i`.
    pub fn t_sum(&self) -> Element {
        self.t_of(Codeword::ones(self.n()))
    }

    pub fn element(&self, coords: Vec<Scalar>) -> Result<Element> {
        if coords.len() != self.dim() {
            return Err(Error::ElementLength {
                expected: self.dim(),
                found: coords.len(),
            });
        }
        Ok(Element::from_coords(coords))
    }

    /// Sparse product of two basis vectors.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i][j]
    }

    pub fn basis_product_element(&self, i: usize, j: usize) -> Element {
        let mut x = self.zero();
        for (k, s) in &self.table[i][j] {
            x.set(*k, s.clone());
        }
        x
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Element {
        let xs: Vec<usize> = x.support().collect();
        let ys: Vec<usize> = y.support().collect();
        let mut out = vec![Scalar::zero(); self.dim()];
        for &i in &xs {
            for &j in &ys {
                let entries = &self.table[i][j];
                if entries.is_empty() {
                    continue;
                }
                let coef = &x[i] * &y[j];
                for (k, s) in entries {
                    out[*k] += &(&coef * s);
                }
            }
        }
        Element::from_coords(out)
    }

    pub fn square(&self, x: &Element) -> Element {
        self.multiply(x, x)
    }

    pub fn is_idempotent(&self, x: &Element) -> bool {
        self.square(x) == *x
    }

    /// Matrix of `ad_x`; column `j` is `x b_j`.
    pub fn adjoint_matrix(&self, x: &Element) -> Matrix {
        let dim = self.dim();
        let mut m = Matrix::zeros(dim, dim);
        for i in x.support() {
            for j in 0..dim {
                for (k, s) in &self.table[i][j] {
                    m[(*k, j)] += &(&x[i] * s);
                }
            }
        }
        m
    }

    /// Which of the three non-degeneracy conditions hold.
    pub fn nondegeneracy(&self) -> NonDegeneracy {
        let uncovered: Vec<usize> = (0..self.n()).filter(|&i| !self.code.support().bit(i)).collect();
        let mut zero_params = Vec::new();
        for ((i, alpha), v) in self.params.a_entries() {
            if v.is_zero() {
                zero_params.push(format!("a[{},{alpha}]", i + 1));
            }
        }
        for ((x, y), v) in self.params.b_entries() {
            if v.is_zero() {
                zero_params.push(format!("b[{x},{y}]"));
            }
        }
        for ((i, alpha), v) in self.params.c_entries() {
            if v.is_zero() {
                zero_params.push(format!("c[{},{alpha}]", i + 1));
            }
        }
        NonDegeneracy {
            uncovered_coordinates: uncovered,
            cstar_nonempty: !self.cstar.is_empty(),
            zero_params,
        }
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.nondegeneracy().holds()
    }

    /// Whether `a`, `b` and `c` are constant on the orbits of `group`.
    pub fn is_regular(&self, group: &[Perm]) -> Result<bool> {
        Ok(self.regularity_witness(group)?.is_none())
    }

    /// A parameter key whose value changes under some `g` in `group`.
    pub fn regularity_witness(&self, group: &[Perm]) -> Result<Option<String>> {
        for g in group {
            if g.len() != self.n() || self.code.permuted(g) != self.code {
                return Err(Error::NotAnAutomorphism(format!("{g:?}")));
            }
            let p = &self.params;
            for ((i, alpha), v) in p.a_entries() {
                if p.a(g.image(*i), g.apply(*alpha)) != Some(v) {
                    return Ok(Some(format!("a[{},{alpha}] under {g:?}", i + 1)));
                }
            }
            for ((i, alpha), v) in p.c_entries() {
                if p.c(g.image(*i), g.apply(*alpha)) != Some(v) {
                    return Ok(Some(format!("c[{},{alpha}] under {g:?}", i + 1)));
                }
            }
            for ((x, y), v) in p.b_entries() {
                if p.b(g.apply(*x), g.apply(*y)) != Some(v) {
                    return Ok(Some(format!("b[{x},{y}] under {g:?}")));
                }
            }
        }
        Ok(None)
    }

    /// The signed map `t_i -> t_{i g^-1}`, `e^α -> e^{α g^-1}`, checked to be
    /// multiplicative. `g.then(h)` induces `φ(g) ∘ φ(h)`.
    pub fn induced_automorphism(&self, g: &Perm) -> Result<SignedMap> {
        if g.len() != self.n() || self.code.permuted(g) != self.code {
            return Err(Error::NotAnAutomorphism(format!("{g:?}")));
        }
        let map = self.induced_map_unchecked(g);
        if let Some((i, j)) = map.automorphism_witness(self) {
            return Err(Error::NotRegular(format!(
                "product {} * {} is not preserved by {g:?}",
                self.basis_label(i),
                self.basis_label(j)
            )));
        }
        Ok(map)
    }

    pub(crate) fn induced_map_unchecked(&self, g: &Perm) -> SignedMap {
        let ginv = g.inverse();
        let n = self.n();
        let mut targets: Vec<usize> = (0..n).map(|i| ginv.image(i)).collect();
        targets.extend(self.cstar.iter().map(|&w| self.slots[&ginv.apply(w)]));
        SignedMap::new(targets, vec![false; self.dim()])
    }

    /// Basis indices of the subalgebra `span{t_i, e^α : i ∈ supp D, α ∈ D*}`,
    /// verified to be closed. `D = {0}` gives the zero subalgebra.
    pub fn subalgebra_from_subcode(&self, d: &LinearCode) -> Result<Vec<usize>> {
        if !d.is_subcode_of(&self.code) {
            return Err(Error::NotASubcode);
        }
        let mut idx: Vec<usize> = d.support().support().collect();
        if d.dim() > 0 {
            idx.extend(d.nonconstant_words()?.iter().map(|w| self.slots[w]));
        }
        idx.sort_unstable();
        let inside = |k: &usize| idx.binary_search(k).is_ok();
        for &i in &idx {
            for &j in &idx {
                if let Some((k, _)) = self.table[i][j].iter().find(|(k, _)| !inside(k)) {
                    return Err(Error::Invalid(format!(
                        "subcode span is not closed: {} * {} has a component on {}",
                        self.basis_label(i),
                        self.basis_label(j),
                        self.basis_label(*k)
                    )));
                }
            }
        }
        Ok(idx)
    }

    /// `t` when `Σ_{i∈supp α} a_{i,α} = 1` for every `α`, which makes `t` the
    /// identity; `None` otherwise.
    pub fn identity_element(&self) -> Option<Element> {
        let unital = self.cstar.iter().all(|&alpha| {
            let sum = alpha
                .support()
                .fold(Scalar::zero(), |acc, i| &acc + self.params.a(i, alpha).expect("validated"));
            sum.is_one()
        });
        unital.then(|| self.t_sum())
    }

    /// Solves `u b_j = b_j` for all `j` directly.
    pub fn solve_identity(&self) -> Option<Element> {
        let dim = self.dim();
        let mut rows = Vec::with_capacity(dim * dim);
        let mut rhs = Vec::with_capacity(dim * dim);
        for j in 0..dim {
            // Row k of ad_{b_j}: coefficient of b_k in u b_j, as a function of u.
            let mut block = vec![vec![Scalar::zero(); dim]; dim];
            for i in 0..dim {
                for (k, s) in &self.table[i][j] {
                    block[*k][i] += s;
                }
            }
            for (k, row) in block.into_iter().enumerate() {
                rows.push(row);
                rhs.push(if k == j { Scalar::one() } else { Scalar::zero() });
            }
        }
        Matrix::from_rows(rows).solve(&rhs).map(Element::from_coords)
    }

    /// Compares `(x²)²` with `x(x x²)` for `x = e^α`.
    pub fn power_associativity_witness(&self, alpha: Codeword) -> Result<PowerAssociativity> {
        let x = self.e(alpha).ok_or_else(|| Error::Invalid(format!("{alpha} is not in C*")))?;
        let x2 = self.square(&x);
        let x2x2 = self.square(&x2);
        let x_x_x2 = self.multiply(&x, &self.multiply(&x, &x2));
        Ok(PowerAssociativity {
            equal: x2x2 == x_x_x2,
            square_of_square: x2x2,
            nested: x_x_x2,
        })
    }

    /// The code automorphism group and its induced maps, checked regular.
    pub fn induced_code_automorphisms(&self) -> Result<Vec<(Perm, SignedMap)>> {
        automorphism_group(&self.code)?
            .into_iter()
            .map(|g| self.induced_automorphism(&g).map(|m| (g, m)))
            .collect()
    }

    /// Human-readable form such as `1/2*t1 + e^011`.
    pub fn format_element(&self, x: &Element) -> String {
        let terms: Vec<String> = x
            .support()
            .map(|k| {
                let c = &x[k];
                let label = self.basis_label(k);
                if c.is_one() {
                    label
                } else if (-c).is_one() {
                    format!("-{label}")
                } else if c.is_rational() {
                    format!("{c}*{label}")
                } else {
                    format!("({c})*{label}")
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ").replace("+ -", "- ")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonDegeneracy {
    /// Coordinates outside `supp(C)` (0-based).
    pub uncovered_coordinates: Vec<usize>,
    pub cstar_nonempty: bool,
    /// Keys of parameters equal to zero.
    pub zero_params: Vec<String>,
}

impl NonDegeneracy {
    pub fn holds(&self) -> bool {
        self.uncovered_coordinates.is_empty() && self.cstar_nonempty && self.zero_params.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerAssociativity {
    pub square_of_square: Element,
    pub nested: Element,
    pub equal: bool,
}
