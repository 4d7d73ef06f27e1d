//! Constant-weight codes are juxtapositions of simplex or first-order
//! Reed-Muller codes, up to zero columns and coordinate order.

use serde::Serialize;

use super::{CodeError, LinearCode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CodeClass {
    /// `m` copies of the simplex code of dimension `r`, plus `zero_columns`.
    Simplex { m: usize, r: usize, zero_columns: usize },
    /// `m` copies of the first-order Reed-Muller code of dimension `r + 1`.
    ReedMuller { m: usize, r: usize },
}

impl CodeClass {
    /// The model code realising this class.
    pub fn model(&self) -> Result<LinearCode, CodeError> {
        match *self {
            CodeClass::Simplex { m, r, .. } => LinearCode::simplex(r)?.juxtapose(m),
            CodeClass::ReedMuller { m, r } => LinearCode::reed_muller1(r)?.juxtapose(m),
        }
    }
}

/// Identifies the family and multiplicity of a constant-weight code and
/// checks the weight enumerator against the model.
pub fn classify_constant_weight(code: &LinearCode) -> Result<CodeClass, CodeError> {
    let n = code.len();
    let k = code.dim();
    let w = match code.constant_weight()? {
        Some(w) => w,
        None => {
            let mut weights: Vec<usize> = code.nonconstant_words()?.iter().map(|w| w.weight()).collect();
            weights.sort_unstable();
            weights.dedup();
            return Err(CodeError::NotConstantWeight(weights));
        }
    };
    let unclassified = CodeError::Unclassified { n, k, w };
    let class = if code.contains_ones() {
        let r = k - 1;
        if r == 0 || n % (1 << r) != 0 {
            return Err(unclassified);
        }
        CodeClass::ReedMuller { m: n >> r, r }
    } else {
        let r = k;
        let half = 1usize << (r - 1);
        if w % half != 0 {
            return Err(unclassified);
        }
        let m = w / half;
        let used = m * ((1 << r) - 1);
        if used > n {
            return Err(unclassified);
        }
        CodeClass::Simplex {
            m,
            r,
            zero_columns: n - used,
        }
    };
    let model = class.model()?;
    let mut model_we = model.weight_enumerator()?;
    model_we.resize(n + 1, 0);
    if model_we != code.weight_enumerator()? || !column_multiset_matches(code, &class) {
        return Err(unclassified);
    }
    Ok(class)
}

/// Each nonzero column (as a vector in `F_2^k`) must occur equally often,
/// and for Reed-Muller codes the columns must be exactly the vectors with
/// the constant-row coordinate fixed.
fn column_multiset_matches(code: &LinearCode, class: &CodeClass) -> bool {
    let cols = code.columns();
    let k = code.dim();
    let mut counts = vec![0usize; 1 << k];
    for c in cols {
        counts[c as usize] += 1;
    }
    match *class {
        CodeClass::Simplex { m, zero_columns, .. } => {
            counts[0] == zero_columns && counts[1..].iter().all(|&c| c == m)
        }
        CodeClass::ReedMuller { m, .. } => {
            // The columns form m copies of an affine hyperplane not through 0.
            let support: Vec<usize> = (0..counts.len()).filter(|&v| counts[v] > 0).collect();
            support.len() == 1 << (k - 1) && support.iter().all(|&v| counts[v] == m)
        }
    }
}
