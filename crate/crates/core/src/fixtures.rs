//! The three worked examples as self-checking fixtures: the full code of
//! length 2, the even-weight code of length 3 and the extended Hamming code.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{CodeAlgebra, Element, StructureParams};
use crate::codes::{automorphism_group, Codeword, LinearCode};
use crate::error::Result;
use crate::form::{frobenius_form, is_frobenius};
use crate::group::{axis_orbit, full_group, miyamoto_group, Orbit, DEFAULT_ORBIT_BOUND};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Scalar;
use crate::smap::{small_idempotents, smap_idempotent, Root};
use crate::spectral::{axis_check, eigen_decompose, FusionLaw};
use crate::structure::{annihilate, exceptional_ideals, is_simple, Simplicity};

pub const NAMES: [&str; 3] = ["f2sq", "even3", "hamming8"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Facts computed for a fixture and the checks run against them. The facts
/// are deterministic and meant for golden-file comparison.
#[derive(Clone, Debug, Serialize)]
pub struct FixtureReport {
    pub name: String,
    pub facts: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
}

impl FixtureReport {
    fn new(name: &str) -> Self {
        FixtureReport {
            name: name.into(),
            facts: BTreeMap::new(),
            checks: Vec::new(),
        }
    }

    fn fact(&mut self, key: &str, value: Value) {
        self.facts.insert(key.into(), value);
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

pub fn run(name: &str) -> Option<Result<FixtureReport>> {
    match name {
        "f2sq" => Some(f2sq_report()),
        "even3" => Some(even3_report()),
        "hamming8" => Some(hamming8_report()),
        _ => None,
    }
}

fn w(s: &str) -> Codeword {
    Codeword::parse(s).expect("literal codeword")
}

fn spectrum_json(dims: &[(Scalar, usize)]) -> Value {
    Value::Object(dims.iter().map(|(v, d)| (v.to_string(), json!(d))).collect())
}

pub fn f2sq(a: Scalar, b: Scalar, c: Scalar) -> Result<CodeAlgebra> {
    let code = LinearCode::full(2);
    let p = StructureParams::constant(&code, a, b, c)?;
    CodeAlgebra::new(code, p)
}

pub fn even3() -> Result<CodeAlgebra> {
    let code = LinearCode::even_weight(3);
    let p = StructureParams::constant(&code, Scalar::frac(1, 2), Scalar::frac(1, 2), Scalar::one())?;
    CodeAlgebra::new(code, p)
}

pub fn hamming8() -> Result<CodeAlgebra> {
    let code = LinearCode::hamming8();
    let p = StructureParams::voa(&code, Scalar::frac(1, 2))?;
    CodeAlgebra::new(code, p)
}

/// `e± = (1/(2a)) (t_1 ± sqrt((2a-1)/c) e^10)` and the eigenvector
/// `±(1/a) sqrt((2a-1)c) t_1 - e^10` with eigenvalue `(1-a)/(2a)`. The two
/// roots are tied by `sqrt((2a-1)c) = c sqrt((2a-1)/c)`; with independent
/// branches the signs can pair the wrong way round (e.g. `a = c = -1`).
pub struct F2sqIdempotent {
    pub element: Element,
    pub eigenvector: Element,
    pub eigenvalue: Scalar,
}

pub fn f2sq_idempotents(alg: &CodeAlgebra, a: &Scalar, c: &Scalar) -> Result<[F2sqIdempotent; 2]> {
    let one = Scalar::one();
    let two_a_minus_one = &(&Scalar::from_int(2) * a) - &one;
    let ratio = &two_a_minus_one / c;
    let d = crate::scalar::choose_discriminant(ratio.as_rational().expect("rational parameters"))?;
    let root_ratio = ratio.sqrt(d).expect("chosen field");
    let root_prod = c * &root_ratio;
    let inv_2a = (&Scalar::from_int(2) * a).inv()?;
    let t1 = alg.t(0);
    let e = alg.e(w("10")).expect("in C*");
    let make = |sign: &Scalar| F2sqIdempotent {
        element: &t1.scale(&inv_2a) + &e.scale(&(&(sign * &root_ratio) * &inv_2a)),
        eigenvector: &t1.scale(&(&(sign * &root_prod) / a)) - &e,
        eigenvalue: &(&one - a) * &inv_2a,
    };
    Ok([make(&one), make(&Scalar::from_int(-1))])
}

/// Nonzero idempotents `p t_1 + q e^10` of the subalgebra `<t_1, e^10>`:
/// `q = 0, p = 1`, or `p = 1/(2a)` with `c q^2 = p - p^2`.
pub fn f2sq_subalgebra_idempotents(a: &Scalar, c: &Scalar, disc: i64) -> Vec<(Scalar, Scalar)> {
    let mut out = vec![(Scalar::one(), Scalar::zero())];
    let p = (&Scalar::from_int(2) * a).inv().expect("a != 0");
    let q2 = &(&p - &(&p * &p)) / c;
    if q2.is_zero() {
        out.push((p, Scalar::zero()));
    } else if let Some(q) = q2.sqrt(disc) {
        out.push((p.clone(), q.clone()));
        out.push((p, -q));
    }
    out.sort_by(|x, y| x.0.total_cmp(&y.0).then_with(|| x.1.total_cmp(&y.1)));
    out.dedup();
    out
}

fn f2sq_report() -> Result<FixtureReport> {
    let mut r = FixtureReport::new("f2sq");
    let (a, b, c) = (Scalar::from_int(2), Scalar::one(), Scalar::from_int(3));
    let alg = f2sq(a.clone(), b, c.clone())?;
    r.fact("params", json!({"a": a, "c": c}));
    r.fact("dim", json!(alg.dim()));

    let simple = is_simple(&alg)?;
    let (p, q) = exceptional_ideals(&alg).expect("exceptional code");
    let ideal_json = |i: &crate::structure::Ideal| -> Value {
        i.basis().iter().map(|x| json!(alg.format_element(x))).collect()
    };
    r.fact("ideals", json!([ideal_json(&p), ideal_json(&q)]));
    match &simple {
        Simplicity::Nonsimple(found) => r.check(
            "exactly the two exceptional ideals",
            found == &vec![p.clone(), q.clone()],
            format!("{} proper ideals found", found.len()),
        ),
        Simplicity::Simple => r.check("exactly the two exceptional ideals", false, "found simple"),
    }
    r.check("ideals annihilate each other", annihilate(&alg, &p, &q), "");
    let sum = Subspace::spanned_by(
        alg.dim(),
        p.subspace().basis().iter().chain(q.subspace().basis()).map(Vec::as_slice),
    );
    r.check("algebra is the direct sum", sum.dim() == alg.dim() && p.dim() + q.dim() == alg.dim(), "");
    let form = frobenius_form(&alg, None)?;
    let orthogonal = p
        .basis()
        .iter()
        .all(|u| q.basis().iter().all(|v| form.eval(u, v).is_zero()));
    r.check("ideals are form-orthogonal", orthogonal, "");
    r.check("form is Frobenius", is_frobenius(&alg, &form), "");

    let mut idem = Vec::new();
    for x in f2sq_idempotents(&alg, &a, &c)? {
        let ok = alg.is_idempotent(&x.element);
        let eig = alg.multiply(&x.element, &x.eigenvector) == x.eigenvector.scale(&x.eigenvalue);
        r.check(
            "e± idempotent with the stated eigenvector",
            ok && eig,
            alg.format_element(&x.element),
        );
        idem.push(json!({
            "element": alg.format_element(&x.element),
            "eigenvalue": x.eigenvalue,
            "eigenvector": alg.format_element(&x.eigenvector),
        }));
    }
    r.fact("idempotents", Value::Array(idem));

    // a = c = -1 needs sqrt(3).
    let (a, c) = (Scalar::from_int(-1), Scalar::from_int(-1));
    let alg = f2sq(a.clone(), Scalar::one(), c.clone())?.with_field(3)?;
    let axial = f2sq_axial_subalgebra(&alg, &a, &c)?;
    r.fact("axial_case", json!({"a": a, "c": c, "idempotents": axial.idempotents}));
    r.check(
        "a = c = -1: three idempotents, each an axis, spanning <t1, e^10>",
        axial.holds(),
        format!("{:?}", axial),
    );
    Ok(r)
}

#[derive(Debug)]
pub struct AxialSubalgebra {
    pub idempotents: Vec<String>,
    pub all_idempotent: bool,
    pub count_matches: bool,
    pub axes: bool,
    pub spans: bool,
}

impl AxialSubalgebra {
    pub fn holds(&self) -> bool {
        self.idempotents.len() == 3 && self.all_idempotent && self.count_matches && self.axes && self.spans
    }
}

/// The subalgebra `<t_1, e^10>` of the F2^2 algebra: its nonzero idempotents
/// are `t_1` and `e±`; each acts on it with eigenvalues `1` and
/// `(1-a)/(2a)`, and the square of an eigenvector of the second kind lies in
/// the 1-eigenspace.
pub fn f2sq_axial_subalgebra(alg: &CodeAlgebra, a: &Scalar, c: &Scalar) -> Result<AxialSubalgebra> {
    let t1 = alg.t(0);
    let e = alg.e(w("10")).expect("in C*");
    let [plus, minus] = f2sq_idempotents(alg, a, c)?;
    let solved = f2sq_subalgebra_idempotents(a, c, alg.disc());
    let elements: Vec<Element> = solved
        .iter()
        .map(|(p, q)| &t1.scale(p) + &e.scale(q))
        .collect();
    let expected = [&t1, &plus.element, &minus.element];
    let count_matches = elements.len() == 3 && expected.iter().all(|x| elements.contains(x));
    let all_idempotent = elements.iter().all(|x| alg.is_idempotent(x));

    let sub = Subspace::spanned_by(alg.dim(), [t1.coords(), e.coords()]);
    let eta = &(&Scalar::one() - a) / &(&Scalar::from_int(2) * a);
    let axis = |x: &Element, u: &Element| {
        let in_sub = sub.contains(u.coords());
        let eigen = alg.multiply(x, u) == u.scale(&eta);
        let squared = alg.multiply(u, u);
        let one_space = Subspace::spanned_by(alg.dim(), [x.coords()]);
        in_sub && eigen && !u.is_zero() && one_space.contains(squared.coords())
    };
    let axes = axis(&t1, &e) && axis(&plus.element, &plus.eigenvector) && axis(&minus.element, &minus.eigenvector);
    let spans = Subspace::spanned_by(alg.dim(), elements.iter().map(Element::coords)) == sub;
    Ok(AxialSubalgebra {
        idempotents: elements.iter().map(|x| alg.format_element(x)).collect(),
        all_idempotent,
        count_matches,
        axes,
        spans,
    })
}

/// `t_i -> E_ii`, `e^α -> E_jk + E_kj` for `supp α = {j, k}`.
pub fn symmetric_image(alg: &CodeAlgebra, k: usize) -> Matrix {
    let mut m = Matrix::zeros(3, 3);
    match alg.codeword_at(k) {
        None => m[(k, k)] = Scalar::one(),
        Some(alpha) => {
            let s: Vec<usize> = alpha.support().collect();
            m[(s[0], s[1])] = Scalar::one();
            m[(s[1], s[0])] = Scalar::one();
        }
    }
    m
}

/// Whether the basis map onto symmetric 3×3 matrices is a bijection that
/// carries every basis product to `(XY + YX)/2`.
pub fn symmetric_matrix_isomorphism(alg: &CodeAlgebra) -> bool {
    let images: Vec<Matrix> = (0..alg.dim()).map(|k| symmetric_image(alg, k)).collect();
    let flat = |m: &Matrix| -> Vec<Scalar> { (0..3).flat_map(|i| m.row(i).to_vec()).collect() };
    let lift = |x: &Element| {
        let mut m = Matrix::zeros(3, 3);
        for k in x.support() {
            let img = &images[k];
            for i in 0..3 {
                for j in 0..3 {
                    m[(i, j)] += &(&x[k] * &img[(i, j)]);
                }
            }
        }
        m
    };
    let flats: Vec<Vec<Scalar>> = images.iter().map(flat).collect();
    if Subspace::spanned_by(9, flats.iter().map(Vec::as_slice)).dim() != 6 {
        return false;
    }
    let half = Scalar::frac(1, 2);
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let lhs = lift(&alg.basis_product_element(i, j));
            let xy = images[i].mul(&images[j]);
            let yx = images[j].mul(&images[i]);
            let mut rhs = Matrix::zeros(3, 3);
            for p in 0..3 {
                for q in 0..3 {
                    rhs[(p, q)] = &half * &(&xy[(p, q)] + &yx[(p, q)]);
                }
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

fn even3_report() -> Result<FixtureReport> {
    let mut r = FixtureReport::new("even3");
    let alg = even3()?;
    let half = Scalar::frac(1, 2);
    let third = Scalar::frac(1, 3);
    let law = FusionLaw::jordan(half.clone());
    r.fact("dim", json!(alg.dim()));
    r.check("unital", alg.identity_element() == Some(alg.t_sum()), "");
    r.check("simple", is_simple(&alg)?.is_simple(), "");

    let mut small = Vec::new();
    let mut small_ok = true;
    for &alpha in alg.cstar() {
        let (p, m) = small_idempotents(&alg, alpha)?;
        for (x, sign) in [(p.element, 1), (m.element, -1)] {
            let expected = &alg.t_of(alpha).scale(&half) + &alg.e(alpha).expect("in C*").scale(&(&half * &Scalar::from_int(sign)));
            small_ok &= x == expected;
            small.push(x);
        }
    }
    r.check("6 small idempotents (1/2)t_α ± (1/2)e^α", small_ok && small.len() == 6, "");

    let mut svs = Vec::new();
    let mut sv_ok = true;
    for v in alg.code().coset_reps() {
        let s = smap_idempotent(&alg, alg.code(), v, Root::Plus)?;
        let s = if s.spec.lambda == third {
            s
        } else {
            smap_idempotent(&alg, alg.code(), v, Root::Minus)?
        };
        let mut expected = alg.t_sum().scale(&third);
        for &alpha in alg.cstar() {
            let sign = if alpha.dot(v) { -&third } else { third.clone() };
            expected = &expected + &alg.e(alpha).expect("in C*").scale(&sign);
        }
        sv_ok &= s.element == expected;
        svs.push(s.element);
    }
    r.check("4 s(C,v) idempotents (1/3)t + (1/3)Σ±e^α", sv_ok && svs.len() == 4, "");

    let mut spectra_ok = true;
    let mut axes: Vec<Element> = (0..3).map(|i| alg.t(i)).collect();
    axes.extend(small.iter().cloned());
    for x in small.iter().chain(&svs) {
        let (verdict, dec, computed) = axis_check(&alg, x, &law);
        let dims_ok = dec.as_ref().is_some_and(|d| d.eigenvalues() == law.labels());
        spectra_ok &= alg.is_idempotent(x) && verdict.is_primitive() && dims_ok && computed.is_some_and(|c| c.same_as(&law));
    }
    r.check("spectrum {1, 0, 1/2} with the Jordan law for all 10", spectra_ok, "");
    r.fact(
        "small_spectrum",
        spectrum_json(&eigen_decompose(&alg, &small[0], &[]).dims()),
    );
    r.fact("smap_spectrum", spectrum_json(&eigen_decompose(&alg, &svs[0], &[]).dims()));
    r.check("isomorphic to symmetric 3x3 matrices", symmetric_matrix_isomorphism(&alg), "");

    let nine = axis_orbit(&alg, &axes, DEFAULT_ORBIT_BOUND)?;
    r.fact("orbit_9", json!(orbit_json(&nine)));
    r.check("the 9 axes are closed", nine.is_closed() && nine.len() == 9, "");
    axes.extend(svs);
    let thirteen = axis_orbit(&alg, &axes, DEFAULT_ORBIT_BOUND)?;
    r.fact("orbit_13", json!(orbit_json(&thirteen)));
    r.check(
        "the 13 axes grow past the bound",
        !thirteen.is_closed() && thirteen.len() > DEFAULT_ORBIT_BOUND,
        format!("{} at stop", thirteen.len()),
    );

    let g = full_group(&alg)?;
    r.fact("miyamoto_order", json!(g.miyamoto.order.to_string()));
    r.fact("group_order", json!(g.order.to_string()));
    r.check("|M| = 4, |G| = 24", g.miyamoto.order == 4 && g.order == 24, "");
    Ok(r)
}

fn orbit_json(o: &Orbit) -> Value {
    match o {
        Orbit::Closed(v) => json!({"closed": v.len()}),
        Orbit::Growing(k) => json!({"growing": k}),
    }
}

/// The 16 `s(C, v)` of the Hamming algebra, one per coset representative.
pub fn hamming8_smaps(alg: &CodeAlgebra) -> Result<Vec<(Codeword, Element)>> {
    alg.code()
        .coset_reps()
        .into_iter()
        .map(|v| smap_idempotent(alg, alg.code(), v, Root::Plus).map(|s| (v, s.element)))
        .collect()
}

fn mutually_orthogonal(alg: &CodeAlgebra, xs: &[&Element]) -> bool {
    xs.iter().enumerate().all(|(i, x)| {
        xs[i + 1..].iter().all(|y| alg.multiply(x, y).is_zero())
    })
}

fn hamming8_report() -> Result<FixtureReport> {
    let mut r = FixtureReport::new("hamming8");
    let alg = hamming8()?;
    let quarter = Scalar::frac(1, 4);
    let law = FusionLaw::jordan(quarter.clone());
    r.fact("dim", json!(alg.dim()));
    r.check("dimension 22", alg.dim() == 22, "");
    r.check("non-degenerate", alg.is_nondegenerate(), "");
    let unit = alg.identity_element();
    r.check("unital", unit.is_some() && alg.solve_identity() == unit, "");
    r.check("simple", is_simple(&alg)?.is_simple(), "");
    let form = frobenius_form(&alg, None)?;
    let four = Scalar::from_int(4);
    r.check(
        "Frobenius form with codeword diagonal 4",
        form.lambda_codeword.iter().all(|(_, l)| *l == four) && is_frobenius(&alg, &form),
        "",
    );

    let smaps = hamming8_smaps(&alg)?;
    let (odd, even): (Vec<_>, Vec<_>) = smaps.iter().partition(|(v, _)| v.weight() % 2 == 1);
    let torus = |xs: &[&(Codeword, Element)]| -> bool {
        let elems: Vec<&Element> = xs.iter().map(|(_, x)| x).collect();
        let sum = elems.iter().fold(alg.zero(), |acc, x| &acc + x);
        xs.len() == 8 && mutually_orthogonal(&alg, &elems) && Some(sum) == alg.identity_element()
    };
    r.check("odd-weight v give a torus of 8", torus(&odd), "");
    r.check("even-weight v give a torus of 8", torus(&even), "");
    let standard: Vec<Element> = (0..8).map(|i| alg.t(i)).collect();
    r.check(
        "standard torus",
        mutually_orthogonal(&alg, &standard.iter().collect::<Vec<_>>()),
        "",
    );

    let mut axes = standard;
    axes.extend(smaps.iter().map(|(_, x)| x.clone()));
    let mut all_axes = true;
    for x in &axes {
        let (verdict, dec, computed) = axis_check(&alg, x, &law);
        let spectrum = dec.as_ref().is_some_and(|d| d.eigenvalues() == law.labels());
        all_axes &= verdict.is_primitive() && spectrum && computed.is_some_and(|c| c.same_as(&law));
    }
    r.fact("axes", json!(axes.len()));
    r.fact("smap_spectrum", spectrum_json(&eigen_decompose(&alg, &axes[8], &[]).dims()));
    r.check("24 primitive axes of Jordan type 1/4", all_axes && axes.len() == 24, "");

    let orbit = axis_orbit(&alg, &axes, DEFAULT_ORBIT_BOUND)?;
    r.fact("orbit", orbit_json(&orbit));
    r.check("axis set closed", orbit.is_closed() && orbit.len() == 24, "");
    let rank = Subspace::spanned_by(alg.dim(), axes.iter().map(Element::coords)).dim();
    r.fact("axis_rank", json!(rank));
    r.check("axes have rank 22", rank == 22, "");

    let m = miyamoto_group(&alg)?;
    let aut = automorphism_group(alg.code())?.len();
    r.fact("miyamoto_order", json!(m.order.to_string()));
    r.fact("aut_order", json!(aut));
    r.fact("tori", json!(3));
    r.check(
        "|M| = 16 with kernel the code itself, |Aut(C)| = 1344",
        m.order == 16 && m.kernel == *alg.code() && aut == 1344,
        "",
    );
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f2sq_fixture() {
        let r = run("f2sq").unwrap().unwrap();
        assert!(r.passed(), "{:?}", r.failures());
    }

    #[test]
    fn even3_fixture() {
        let r = run("even3").unwrap().unwrap();
        assert!(r.passed(), "{:?}", r.failures());
    }

    #[test]
    fn subalgebra_idempotents_without_root() {
        // (p - p^2)/c = (1/4)/(-1) has no rational root.
        let found = f2sq_subalgebra_idempotents(&Scalar::one(), &Scalar::from_int(-1), 1);
        assert_eq!(found, vec![(Scalar::one(), Scalar::zero())]);
    }
}
