//! Idempotents `s(D, v) = λ t_D + μ Σ_{α∈D*} (-1)^{(v,α)} e^α` for
//! constant-weight subcodes `D`, small idempotents, and generation checks.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{b_domain, CodeAlgebra, Element};
use crate::codes::{Codeword, LinearCode};
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::scalar::{choose_discriminant, Scalar};
use crate::spectral::{eigen_decompose, EigenDecomposition, Eigenspace};

/// Which root of the quadratic for `μ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Root {
    /// `(-B + sqrt(Δ)) / 2A` with the canonical nonnegative square root.
    Plus,
    Minus,
}

impl Root {
    pub const BOTH: [Root; 2] = [Root::Plus, Root::Minus];
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Root::Plus => "plus",
            Root::Minus => "minus",
        })
    }
}

impl FromStr for Root {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Root::Plus),
            "minus" | "-" => Ok(Root::Minus),
            _ => Err(Error::Invalid(format!("root must be `plus` or `minus`, not `{s}`"))),
        }
    }
}

/// The data determining `s(D, v)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SMapSpec {
    /// Generator rows of `D`.
    pub subcode: Vec<Codeword>,
    pub v: Codeword,
    /// `2|D*| - |D|`.
    pub e: i64,
    /// Common weight of `D*`.
    pub d: usize,
    /// `|supp(D)|`.
    pub m: usize,
    pub lambda: Scalar,
    pub mu: Scalar,
    pub root: Root,
}

/// An `s`-map idempotent with the field it lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SMap {
    pub element: Element,
    pub spec: SMapSpec,
    /// Discriminant of the field containing `μ`; 1 when rational.
    pub disc: i64,
}

/// Constant `(a, b, c)` on `D*`; `b` is `None` when no pair of `D*` lies in
/// its domain.
fn constant_params(alg: &CodeAlgebra, dstar: &[Codeword]) -> Result<(Scalar, Option<Scalar>, Scalar)> {
    let p = alg.params();
    let mismatch = |what: &str| Error::ParamsNotConstantOnD(what.to_string());
    let mut a: Option<&Scalar> = None;
    let mut c: Option<&Scalar> = None;
    for &alpha in dstar {
        for i in alpha.support() {
            let ai = p.a(i, alpha).expect("validated");
            let ci = p.c(i, alpha).expect("validated");
            if *a.get_or_insert(ai) != ai {
                return Err(mismatch(&format!("a[{},{alpha}]", i + 1)));
            }
            if *c.get_or_insert(ci) != ci {
                return Err(mismatch(&format!("c[{},{alpha}]", i + 1)));
            }
        }
    }
    let mut b: Option<&Scalar> = None;
    for (k, &x) in dstar.iter().enumerate() {
        for &y in &dstar[k + 1..] {
            if b_domain(x, y) {
                let bxy = p.b(x, y).expect("validated");
                if *b.get_or_insert(bxy) != bxy {
                    return Err(mismatch(&format!("b[{x},{y}]")));
                }
            }
        }
    }
    let a = a.ok_or(Error::NotConstantWeight)?.clone();
    let c = c.ok_or(Error::NotConstantWeight)?.clone();
    Ok((a, b.cloned(), c))
}

/// `sqrt(q)` in the algebra's field, extending plain rationals if needed.
fn field_sqrt(alg: &CodeAlgebra, q: &Scalar) -> Result<(Scalar, i64)> {
    let d = match (alg.disc(), q.as_rational()) {
        (1, Some(r)) if !r.is_zero() => choose_discriminant(r)?,
        (1, _) => q.discriminant(),
        (d, _) => d,
    };
    q.sqrt(d)
        .map(|r| (r, d))
        .ok_or_else(|| Error::NoRootInField(format!("x^2 = {q} (field discriminant {})", alg.disc())))
}

/// The idempotent `s(D, v)` for the chosen root.
pub fn smap_idempotent(alg: &CodeAlgebra, d: &LinearCode, v: Codeword, root: Root) -> Result<SMap> {
    if !d.is_subcode_of(alg.code()) {
        return Err(Error::NotASubcode);
    }
    if v.len() != alg.n() {
        return Err(Error::Invalid(format!("v = {v} has the wrong length")));
    }
    let weight = match d.constant_weight() {
        Ok(Some(w)) => w,
        _ => return Err(Error::NotConstantWeight),
    };
    let dstar = d.nonconstant_words()?;
    let (a, b, c) = constant_params(alg, &dstar)?;
    let b = b.unwrap_or_else(Scalar::zero);

    let size = d.words()?.len() as i64;
    let e = 2 * dstar.len() as i64 - size;
    let m = d.support().weight();
    let s = |k: i64| Scalar::from_int(k);
    let dd = s(weight as i64);
    let es = s(e);

    // A μ² + B μ + C = 0.
    let qa = &(&(&b * &b) * &(&es * &es))
        + &(&(&(&s(4) * &(&a * &a)) * &c) * &(&(&s(dstar.len() as i64) * &dd.pow(3)) / &s(m as i64)));
    let ad = &a * &dd;
    let qb = &(&(&s(2) * &b) * &es) * &(&ad - &Scalar::one());
    let qc = &Scalar::one() - &(&s(2) * &ad);

    let (mu, disc) = if qa.is_zero() {
        if qb.is_zero() {
            return Err(Error::NoRootInField("a degenerate equation for mu".into()));
        }
        (-&(&qc / &qb), alg.disc())
    } else {
        let delta = &(&qb * &qb) - &(&(&s(4) * &qa) * &qc);
        let (root_delta, disc) = field_sqrt(alg, &delta)?;
        let signed = match root {
            Root::Plus => root_delta,
            Root::Minus => -root_delta,
        };
        (&(&(-&qb) + &signed) / &(&s(2) * &qa), disc)
    };
    if mu.is_zero() {
        return Err(Error::DegenerateMuZero);
    }
    let lambda = &(&Scalar::one() - &(&(&b * &es) * &mu)) / &(&s(2) * &ad);

    let mut x = alg.zero();
    for i in d.support().support() {
        x.set(i, lambda.clone());
    }
    for &alpha in &dstar {
        let k = alg.slot(alpha).expect("subcode word");
        x.set(k, if v.dot(alpha) { -&mu } else { mu.clone() });
    }
    if !alg.is_idempotent(&x) {
        return Err(Error::Invalid(format!("s({v}) with mu = {mu} is not idempotent")));
    }
    Ok(SMap {
        element: x,
        spec: SMapSpec {
            subcode: d.generators().to_vec(),
            v,
            e,
            d: weight,
            m,
            lambda,
            mu,
            root,
        },
        disc: if disc == 1 { alg.disc() } else { disc },
    })
}

/// `s(D, v)` over coset representatives of `D^⊥` and both roots, with
/// duplicates removed.
pub fn enumerate_smap(alg: &CodeAlgebra, d: &LinearCode) -> Result<Vec<SMap>> {
    let mut out: Vec<SMap> = Vec::new();
    for root in Root::BOTH {
        for v in d.coset_reps() {
            let s = smap_idempotent(alg, d, v, root)?;
            if !out.iter().any(|o| o.element == s.element) {
                out.push(s);
            }
        }
    }
    Ok(out)
}

/// `e± = λ t_α ± μ e^α` with `λ = 1/(2a|α|)` and `μ² = (λ - λ²)/c`.
pub fn small_idempotents(alg: &CodeAlgebra, alpha: Codeword) -> Result<(SMap, SMap)> {
    let slot = alg
        .slot(alpha)
        .ok_or_else(|| Error::Invalid(format!("{alpha} is not a non-constant codeword")))?;
    let (a, _, c) = constant_params(alg, &[alpha])?;
    let w = Scalar::from_int(alpha.weight() as i64);
    let lambda = (&(&Scalar::from_int(2) * &a) * &w).inv()?;
    if lambda.is_one() {
        return Err(Error::DegenerateHalfCase);
    }
    let (mu, disc) = field_sqrt(alg, &(&(&lambda - &(&lambda * &lambda)) / &c))?;
    if mu.is_zero() {
        return Err(Error::DegenerateMuZero);
    }
    let d = LinearCode::new(alg.n(), vec![alpha])?;
    let make = |mu: Scalar, root: Root| {
        let mut x = alg.t_of(alpha).scale(&lambda);
        x.set(slot, mu.clone());
        debug_assert!(alg.is_idempotent(&x));
        SMap {
            element: x,
            spec: SMapSpec {
                subcode: d.generators().to_vec(),
                v: Codeword::zero(alg.n()),
                e: 0,
                d: alpha.weight(),
                m: alpha.weight(),
                lambda: lambda.clone(),
                mu,
                root,
            },
            disc: if disc == 1 { alg.disc() } else { disc },
        }
    };
    Ok((make(mu.clone(), Root::Plus), make(-mu, Root::Minus)))
}

/// `ν± = 1/4 ± μ b` for a small idempotent.
pub fn small_nu(mu: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
    let q = Scalar::frac(1, 4);
    let mb = mu * b;
    (&q + &mb, &q - &mb)
}

/// The closed-form eigenbasis of a small idempotent, cross-checked against
/// [`eigen_decompose`].
///
/// Requires a constant-weight code with `a` constant, `c_{i,β}` constant in
/// `i`, and `b_{α,β}`, `b_{α^c,β}` independent of `β`.
pub fn small_idempotent_spectrum(alg: &CodeAlgebra, alpha: Codeword, small: &SMap) -> Result<EigenDecomposition> {
    let code = alg.code();
    let weight = match code.constant_weight()? {
        Some(w) => w,
        None => return Err(Error::NotConstantWeight),
    };
    let cstar = alg.cstar();
    let (a, _, _) = constant_params(alg, cstar)?;
    let params = alg.params();
    for &beta in cstar {
        if params.c_of(beta).is_none() {
            return Err(Error::ParamsNotConstantOnD(format!("c[*,{beta}]")));
        }
    }
    let partners: Vec<Codeword> = cstar.iter().copied().filter(|&b| b_domain(alpha, b)).collect();
    let b_alpha = constant_b(alg, alpha, &partners)?;
    if code.contains(alpha.complement()) {
        constant_b(alg, alpha.complement(), &partners)?;
    }
    if a == Scalar::frac(1, 3 * weight as i64) {
        return Err(Error::DegenerateThirdCase);
    }
    let lambda = &small.spec.lambda;
    let mu = &small.spec.mu;
    let c_alpha = params.c_of(alpha).expect("checked").clone();
    let half = Scalar::frac(1, 2);

    let mut vectors: Vec<(Scalar, Element)> = vec![(Scalar::one(), small.element.clone())];
    for i in (0..alg.n()).filter(|&i| !alpha.bit(i)) {
        vectors.push((Scalar::zero(), alg.t(i)));
    }
    if let Some(k) = alg.slot(alpha.complement()) {
        vectors.push((Scalar::zero(), alg.basis(k)));
    }
    let supp: Vec<usize> = alpha.support().collect();
    for &j in &supp[1..] {
        vectors.push((lambda.clone(), &alg.t(supp[0]) - &alg.t(j)));
    }
    let e_alpha = alg.e(alpha).expect("alpha in C*");
    let v_half = &alg.t_of(alpha).scale(&(&(&Scalar::from_int(2) * mu) * &c_alpha)) - &e_alpha;
    vectors.push((lambda - &half, v_half));
    let (nu_plus, nu_minus) = small_nu(mu, b_alpha.as_ref().unwrap_or(&Scalar::zero()));
    for &beta in &partners {
        let gamma = alpha.add(beta);
        if beta > gamma {
            continue;
        }
        let eb = alg.e(beta).expect("partner");
        let eg = alg.e(gamma).expect("partner");
        vectors.push((nu_plus.clone(), &eb + &eg));
        vectors.push((nu_minus.clone(), &eb - &eg));
    }

    for (value, v) in &vectors {
        if alg.multiply(&small.element, v) != v.scale(value) {
            return Err(Error::Invalid(format!(
                "closed-form eigenvector {} fails for eigenvalue {value}",
                alg.format_element(v)
            )));
        }
    }
    let mut spaces: Vec<Eigenspace> = Vec::new();
    for (value, v) in vectors {
        match spaces.iter_mut().find(|s| s.value == value) {
            Some(s) => s.basis.push(v),
            None => spaces.push(Eigenspace { value, basis: vec![v] }),
        }
    }
    let closed = EigenDecomposition::new(spaces, alg.dim());
    let total: usize = closed.spaces.iter().map(|s| s.subspace().dim()).sum();
    if total != alg.dim() {
        return Err(Error::Invalid(format!(
            "closed-form eigenvectors span {total} of {} dimensions",
            alg.dim()
        )));
    }
    let generic = eigen_decompose(alg, &small.element, &closed.eigenvalues());
    if !generic.same_spaces(&closed) {
        return Err(Error::Invalid("closed-form spectrum disagrees with the exact solver".into()));
    }
    Ok(closed)
}

fn constant_b(alg: &CodeAlgebra, alpha: Codeword, partners: &[Codeword]) -> Result<Option<Scalar>> {
    let mut value: Option<&Scalar> = None;
    for &beta in partners {
        let Some(b) = alg.params().b(alpha, beta) else {
            continue;
        };
        if *value.get_or_insert(b) != b {
            return Err(Error::ParamsNotConstantOnD(format!("b[{alpha},{beta}]")));
        }
    }
    Ok(value.cloned())
}

/// Result of closing a set of elements under multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generation {
    /// Dimension of the generated subalgebra.
    pub dim: usize,
    pub generates: bool,
    /// Dimension of the linear span of the generators.
    pub span_dim: usize,
    /// The generators already span the subalgebra they generate.
    pub one_closed: bool,
    /// Number of rounds of products needed.
    pub rounds: usize,
}

/// Closes `span(generators)` under multiplication.
pub fn axial_generation_check(alg: &CodeAlgebra, generators: &[Element]) -> Generation {
    let mut space = Subspace::new(alg.dim());
    let mut basis: Vec<Element> = Vec::new();
    for g in generators {
        if space.insert(g.coords()) {
            basis.push(g.clone());
        }
    }
    let span_dim = basis.len();
    let mut done = 0;
    let mut rounds = 0;
    while done < basis.len() {
        let end = basis.len();
        let mut fresh = Vec::new();
        for j in done..end {
            for i in 0..=j {
                let p = alg.multiply(&basis[i], &basis[j]);
                if space.insert(p.coords()) {
                    fresh.push(p);
                }
            }
        }
        done = end;
        if !fresh.is_empty() {
            rounds += 1;
        }
        basis.extend(fresh);
    }
    Generation {
        dim: basis.len(),
        generates: basis.len() == alg.dim(),
        span_dim,
        one_closed: span_dim == basis.len(),
        rounds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::StructureParams;
    use crate::spectral::{fusion_law, FusionLaw};

    fn w(s: &str) -> Codeword {
        Codeword::parse(s).unwrap()
    }

    fn alg(code: LinearCode, a: Scalar, b: Scalar, c: Scalar) -> CodeAlgebra {
        let p = StructureParams::constant(&code, a, b, c).unwrap();
        CodeAlgebra::new(code, p).unwrap()
    }

    fn even3() -> CodeAlgebra {
        let code = LinearCode::from_strings(&["011", "101"]).unwrap();
        alg(code, Scalar::frac(1, 2), Scalar::frac(1, 2), Scalar::one())
    }

    fn hamming() -> CodeAlgebra {
        alg(LinearCode::hamming8(), Scalar::frac(1, 4), Scalar::frac(1, 2), Scalar::one())
    }

    #[test]
    fn hamming_full_smap() {
        let a = hamming();
        let code = a.code().clone();
        let s = smap_idempotent(&a, &code, w("10000000"), Root::Plus).unwrap();
        assert_eq!(s.spec.e, 12);
        assert_eq!(s.spec.mu, Scalar::frac(1, 8));
        assert_eq!(s.spec.lambda, Scalar::frac(1, 8));
        assert!(a.is_idempotent(&s.element));
        let s = smap_idempotent(&a, &code, w("10000000"), Root::Minus).unwrap();
        assert_eq!(s.spec.mu, Scalar::frac(-1, 8));
        assert_eq!(s.spec.lambda, Scalar::frac(7, 8));
    }

    #[test]
    fn even3_full_smap() {
        let a = even3();
        let code = a.code().clone();
        let s = smap_idempotent(&a, &code, w("000"), Root::Plus).unwrap();
        assert_eq!((s.spec.lambda.clone(), s.spec.mu.clone()), (Scalar::frac(1, 3), Scalar::frac(1, 3)));
        let all = enumerate_smap(&a, &code).unwrap();
        assert_eq!(all.len(), 8);
        let plus: Vec<&SMap> = all.iter().filter(|s| s.spec.root == Root::Plus).collect();
        assert_eq!(plus.len(), 4);
    }

    #[test]
    fn small_closed_form() {
        let a = even3();
        let (p, m) = small_idempotents(&a, w("011")).unwrap();
        assert_eq!(p.spec.lambda, Scalar::frac(1, 2));
        assert_eq!(p.spec.mu, Scalar::frac(1, 2));
        assert_eq!(m.spec.mu, Scalar::frac(-1, 2));
        let via_smap = enumerate_smap(&a, &LinearCode::new(3, vec![w("011")]).unwrap()).unwrap();
        assert_eq!(via_smap.len(), 2);
        assert!(via_smap.iter().any(|s| s.element == p.element));
        let dec = small_idempotent_spectrum(&a, w("011"), &p).unwrap();
        assert_eq!(
            dec.eigenvalues(),
            vec![Scalar::one(), Scalar::zero(), Scalar::frac(1, 2)]
        );
    }

    #[test]
    fn hamming_small() {
        let a = hamming();
        let (p, _) = small_idempotents(&a, w("11110000")).unwrap();
        assert_eq!((p.spec.lambda.clone(), p.spec.mu.clone()), (Scalar::frac(1, 2), Scalar::frac(1, 2)));
        let dec = small_idempotent_spectrum(&a, w("11110000"), &p).unwrap();
        let law = fusion_law(&a, &dec).unwrap();
        let (np, nm) = small_nu(&p.spec.mu, &Scalar::frac(1, 2));
        let pattern = FusionLaw::small(&p.spec.lambda, &np, &nm);
        assert!(law.is_contained_in(&pattern));
    }

    #[test]
    fn surd_small_idempotent() {
        // a = 1/3, |α| = 2: λ = 3/4, μ² = 3/16 needs sqrt(3).
        let code = LinearCode::from_strings(&["011", "101"]).unwrap();
        let a = alg(code, Scalar::frac(1, 3), Scalar::frac(1, 2), Scalar::one());
        let (p, m) = small_idempotents(&a, w("011")).unwrap();
        assert_eq!(p.disc, 3);
        assert!(a.is_idempotent(&p.element) && a.is_idempotent(&m.element));
        let dec = small_idempotent_spectrum(&a, w("011"), &p).unwrap();
        assert!(dec.is_semisimple());
    }

    #[test]
    fn degenerate_cases() {
        let code = LinearCode::from_strings(&["011", "101"]).unwrap();
        let a = alg(code.clone(), Scalar::frac(1, 4), Scalar::one(), Scalar::one());
        assert_eq!(small_idempotents(&a, w("011")), Err(Error::DegenerateHalfCase));
        let a = alg(code.clone(), Scalar::frac(1, 6), Scalar::one(), Scalar::one());
        let (p, _) = small_idempotents(&a, w("011")).unwrap();
        assert_eq!(small_idempotent_spectrum(&a, w("011"), &p), Err(Error::DegenerateThirdCase));
        let full = LinearCode::full(3);
        let a = alg(full.clone(), Scalar::one(), Scalar::one(), Scalar::one());
        assert_eq!(
            smap_idempotent(&a, &full, w("000"), Root::Plus),
            Err(Error::NotConstantWeight)
        );
    }

    #[test]
    fn generation() {
        let a = even3();
        let mut gens = Vec::new();
        for &alpha in a.cstar() {
            let (p, m) = small_idempotents(&a, alpha).unwrap();
            gens.push(p.element);
            gens.push(m.element);
        }
        let g = axial_generation_check(&a, &gens);
        assert!(g.generates);
        let single = axial_generation_check(&a, &[a.t(0)]);
        assert_eq!((single.dim, single.generates), (1, false));
    }
}
