//! The Miyamoto group, `G = M:Aut(C)`, and axis orbits under Miyamoto
//! involutions.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::algebra::{CodeAlgebra, Element};
use crate::codes::{automorphism_group_bounded, Codeword, LinearCode, Perm, DEFAULT_AUT_BOUND};
use crate::error::{Error, Result};
use crate::maps::{LinearMap, SignedMap};
use crate::spectral::{eigen_decompose, fusion_law, miyamoto_involution};

/// The sign map `e^α -> (-1)^{(v,α)} e^α` fixing every `t_i`.
pub fn tau_v(alg: &CodeAlgebra, v: Codeword) -> SignedMap {
    let mut negate = vec![false; alg.n()];
    negate.extend(alg.cstar().iter().map(|&alpha| alpha.dot(v)));
    SignedMap::signs(negate)
}

/// `τ_i`, the sign map for the unit vector at `i`.
pub fn tau(alg: &CodeAlgebra, i: usize) -> SignedMap {
    tau_v(alg, Codeword::unit(i, alg.n()))
}

/// Multiplicativity checked against the sparse product table directly.
pub fn preserves_products(alg: &CodeAlgebra, map: &SignedMap) -> bool {
    let dim = alg.dim();
    for i in 0..dim {
        let (ti, ni) = map.target(i);
        for j in i..dim {
            let (tj, nj) = map.target(j);
            let lhs = alg.basis_product(i, j);
            let rhs = alg.basis_product(ti, tj);
            if lhs.len() != rhs.len() {
                return false;
            }
            for (k, s) in lhs {
                let (tk, nk) = map.target(*k);
                let flip = nk ^ ni ^ nj;
                let found = rhs.iter().any(|(r, u)| *r == tk && if flip { *u == -s } else { u == s });
                if !found {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Clone, Debug)]
pub struct MiyamotoGroup {
    /// `{v : (v, α) = 0 for all α in C*}`.
    pub kernel: LinearCode,
    pub order: u128,
    /// `τ_1, ..., τ_n`.
    pub generators: Vec<SignedMap>,
}

fn check_toral_grading(alg: &CodeAlgebra) -> Result<()> {
    for (&(i, alpha), a) in alg.params().a_entries() {
        if a.is_one() {
            return Err(Error::GradingFails(format!(
                "a[{},{alpha}] = 1 merges the odd part with the 1-eigenspace",
                i + 1
            )));
        }
    }
    Ok(())
}

pub fn miyamoto_group(alg: &CodeAlgebra) -> Result<MiyamotoGroup> {
    check_toral_grading(alg)?;
    let n = alg.n();
    let span = LinearCode::span_of(n, alg.cstar())?;
    let kernel = span.dual();
    let generators: Vec<SignedMap> = (0..n).map(|i| tau(alg, i)).collect();
    if let Some(i) = generators.iter().position(|g| !preserves_products(alg, g)) {
        return Err(Error::GradingFails(format!("tau_{} is not an automorphism", i + 1)));
    }
    Ok(MiyamotoGroup {
        order: 1u128 << (n - kernel.dim()),
        kernel,
        generators,
    })
}

/// Every element of `M`, one `τ_v` per coset of the kernel.
pub fn miyamoto_elements(alg: &CodeAlgebra) -> Result<Vec<SignedMap>> {
    let span = LinearCode::span_of(alg.n(), alg.cstar())?;
    Ok(span.coset_reps().into_iter().map(|v| tau_v(alg, v)).collect())
}

#[derive(Clone, Debug)]
pub struct FullGroup {
    pub miyamoto: MiyamotoGroup,
    /// Code automorphisms with their induced maps.
    pub aut: Vec<(Perm, SignedMap)>,
    pub order: u128,
    /// `τ_i` followed by a generating subset of the induced maps.
    pub generators: Vec<SignedMap>,
}

impl FullGroup {
    pub fn aut_order(&self) -> usize {
        self.aut.len()
    }

    /// Every element `τ_v ∘ φ(g)`, each verified multiplicative.
    pub fn elements(&self, alg: &CodeAlgebra) -> Result<Vec<SignedMap>> {
        let m = miyamoto_elements(alg)?;
        let mut out = Vec::with_capacity(m.len() * self.aut.len());
        for t in &m {
            for (_, phi) in &self.aut {
                let x = t.compose(phi);
                if !preserves_products(alg, &x) {
                    return Err(Error::NotAnAutomorphism(format!("{x:?}")));
                }
                out.push(x);
            }
        }
        Ok(out)
    }
}

pub fn full_group(alg: &CodeAlgebra) -> Result<FullGroup> {
    full_group_bounded(alg, DEFAULT_AUT_BOUND)
}

pub fn full_group_bounded(alg: &CodeAlgebra, bound: usize) -> Result<FullGroup> {
    let miyamoto = miyamoto_group(alg)?;
    let perms = automorphism_group_bounded(alg.code(), bound)?;
    let mut aut = Vec::with_capacity(perms.len());
    for g in perms {
        let phi = alg.induced_automorphism(&g)?;
        aut.push((g, phi));
    }
    let aut_gens = generating_subset(aut.iter().map(|(_, m)| m.clone()));
    for phi in &aut_gens {
        let g = aut.iter().find(|(_, m)| m == phi).map(|(g, _)| g).expect("from aut");
        if let Some(i) = conjugation_failure(alg, &miyamoto.generators, g, phi) {
            return Err(Error::NotRegular(format!(
                "tau_{} does not commute with {g:?} as expected",
                i + 1
            )));
        }
    }
    let mut generators = miyamoto.generators.clone();
    generators.extend(aut_gens);
    Ok(FullGroup {
        order: miyamoto.order * aut.len() as u128,
        miyamoto,
        aut,
        generators,
    })
}

/// The first `i` with `τ_i ∘ φ(g) != φ(g) ∘ τ_{ig}`.
pub fn conjugation_failure(alg: &CodeAlgebra, taus: &[SignedMap], g: &Perm, phi: &SignedMap) -> Option<usize> {
    (0..alg.n()).find(|&i| taus[i].compose(phi) != phi.compose(&taus[g.image(i)]))
}

/// A subset generating the same group, chosen greedily.
pub fn generating_subset(elements: impl IntoIterator<Item = SignedMap>) -> Vec<SignedMap> {
    let mut gens: Vec<SignedMap> = Vec::new();
    let mut closure: HashSet<SignedMap> = HashSet::new();
    for x in elements {
        if x.is_identity() || closure.contains(&x) {
            continue;
        }
        gens.push(x);
        closure = group_closure(&gens, usize::MAX).expect("unbounded").into_iter().collect();
    }
    gens
}

/// All products of `gens`, or `None` once more than `limit` are found.
pub fn group_closure(gens: &[SignedMap], limit: usize) -> Option<Vec<SignedMap>> {
    let Some(first) = gens.first() else {
        return Some(Vec::new());
    };
    let id = SignedMap::identity(first.dim());
    let mut seen: HashSet<SignedMap> = HashSet::from([id.clone()]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose(g);
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return None;
                }
                order.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Some(order)
}

/// The result of [`axis_orbit`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Orbit {
    Closed(Vec<Element>),
    /// More than the bound were found; the count when expansion stopped.
    Growing(usize),
}

impl Orbit {
    pub fn is_closed(&self) -> bool {
        matches!(self, Orbit::Closed(_))
    }

    pub fn len(&self) -> usize {
        match self {
            Orbit::Closed(v) => v.len(),
            Orbit::Growing(k) => *k,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub const DEFAULT_ORBIT_BOUND: usize = 512;

/// The Miyamoto involution of an idempotent, from the maximal grading of its
/// computed fusion law.
pub fn axis_involution(alg: &CodeAlgebra, x: &Element) -> Result<LinearMap> {
    let dec = eigen_decompose(alg, x, &[]);
    let law = fusion_law(alg, &dec)?;
    let grading = law
        .z2_grading()
        .ok_or_else(|| Error::NoGrading(alg.format_element(x)))?;
    miyamoto_involution(alg, &dec, &grading)
}

/// Closes `axes` under the Miyamoto involutions of its members. A new axis
/// `τ_a(b)` receives the involution `τ_a τ_b τ_a`, so only the initial axes
/// are decomposed. Exceeding `bound` suggests, but does not prove, an
/// infinite orbit.
pub fn axis_orbit(alg: &CodeAlgebra, axes: &[Element], bound: usize) -> Result<Orbit> {
    let mut points: Vec<Element> = Vec::new();
    let mut invs: Vec<LinearMap> = Vec::new();
    let mut index: HashMap<Element, usize> = HashMap::new();
    for x in axes {
        if index.contains_key(x) {
            continue;
        }
        index.insert(x.clone(), points.len());
        invs.push(axis_involution(alg, x)?);
        points.push(x.clone());
    }
    // Pairs (i, j) with i, j < done have had both τ_i(x_j) and τ_j(x_i) added.
    let mut done = 0;
    while done < points.len() {
        let j = done;
        for i in 0..=j {
            for (a, b) in [(i, j), (j, i)] {
                let y = invs[a].apply(&points[b]);
                if index.contains_key(&y) {
                    continue;
                }
                let conj = invs[a].compose(&invs[b]).compose(&invs[a]);
                index.insert(y.clone(), points.len());
                points.push(y);
                invs.push(conj);
                if points.len() > bound {
                    return Ok(Orbit::Growing(points.len()));
                }
            }
        }
        done += 1;
    }
    Ok(Orbit::Closed(points))
}
