//! Ideals and simplicity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{CodeAlgebra, Element};
use crate::codes::Codeword;
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::scalar::Scalar;

/// A two-sided ideal with a row-reduced basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    space: Subspace,
}

impl Ideal {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> Vec<Element> {
        self.space.basis().iter().map(|r| Element::from_coords(r.clone())).collect()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.space
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.space.contains(x.coords())
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Whether `I b_k ⊆ I` for every basis vector `b_k`.
    pub fn is_closed(&self, alg: &CodeAlgebra) -> bool {
        self.basis()
            .iter()
            .all(|v| (0..alg.dim()).all(|k| self.contains(&alg.multiply(v, &alg.basis(k)))))
    }
}

/// The smallest ideal containing `x`, by closing its span under
/// multiplication by basis vectors.
pub fn ideal_generated(alg: &CodeAlgebra, x: &Element) -> Ideal {
    ideal_generated_by(alg, std::slice::from_ref(x))
}

pub fn ideal_generated_by(alg: &CodeAlgebra, gens: &[Element]) -> Ideal {
    let mut space = Subspace::new(alg.dim());
    let mut work: Vec<Element> = Vec::new();
    for g in gens {
        if space.insert(g.coords()) {
            work.push(g.clone());
        }
    }
    while let Some(v) = work.pop() {
        for k in 0..alg.dim() {
            let p = alg.multiply(&v, &alg.basis(k));
            if space.insert(p.coords()) {
                work.push(p);
            }
        }
    }
    Ideal { space }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Simplicity {
    Simple,
    /// The distinct proper nonzero ideals met while deciding.
    Nonsimple(Vec<Ideal>),
}

impl Simplicity {
    pub fn is_simple(&self) -> bool {
        matches!(self, Simplicity::Simple)
    }
}

pub const RANDOM_SAMPLES: usize = 64;

/// Decides simplicity from the ideals generated by every basis vector and
/// by [`RANDOM_SAMPLES`] pseudo-random elements.
pub fn is_simple(alg: &CodeAlgebra) -> Result<Simplicity> {
    is_simple_seeded(alg, 0)
}

pub fn is_simple_seeded(alg: &CodeAlgebra, seed: u64) -> Result<Simplicity> {
    if !alg.is_nondegenerate() {
        return Err(Error::Degenerate(format!("{:?}", alg.nondegeneracy())));
    }
    let dim = alg.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seeds = (0..dim).map(|k| alg.basis(k)).chain((0..RANDOM_SAMPLES).map(|_| {
        Element::from_coords((0..dim).map(|_| Scalar::from_int(rng.gen_range(-3..=3))).collect())
    }));
    let mut proper: Vec<Ideal> = Vec::new();
    for x in seeds {
        if x.is_zero() {
            continue;
        }
        let ideal = ideal_generated(alg, &x);
        if ideal.dim() < dim && !proper.contains(&ideal) {
            proper.push(ideal);
        }
    }
    if proper.is_empty() {
        return Ok(Simplicity::Simple);
    }
    proper.sort_by_key(|i| i.space.pivots().to_vec());
    Ok(Simplicity::Nonsimple(proper))
}

/// `α` with `C = {0, 1, α, α^c}` and `α_1 = 1`. This is the only shape of
/// code giving a nonsimple non-degenerate algebra.
pub fn exceptional_word(alg: &CodeAlgebra) -> Option<Codeword> {
    let cstar = alg.cstar();
    if cstar.len() != 2 || !alg.code().contains_ones() {
        return None;
    }
    cstar.iter().copied().find(|w| w.bit(0))
}

/// The structural prediction of simplicity.
pub fn structurally_simple(alg: &CodeAlgebra) -> bool {
    exceptional_word(alg).is_none()
}

/// `span{t_j : j ∈ supp α} + ⟨e^α⟩` and the same for `α^c`, in the
/// exceptional case.
pub fn exceptional_ideals(alg: &CodeAlgebra) -> Option<(Ideal, Ideal)> {
    let alpha = exceptional_word(alg)?;
    let make = |w: Codeword| {
        let mut space = Subspace::new(alg.dim());
        for j in w.support() {
            space.insert(alg.t(j).coords());
        }
        space.insert(alg.e(w).expect("in C*").coords());
        Ideal { space }
    };
    Some((make(alpha), make(alpha.complement())))
}

/// Weight-one words `β` in `{α, α^c}` with `a_β = 1` and `c_β` a nonzero
/// square in the working field. For these `span{t_i, e^β}` is
/// `F[x]/(x^2 - c_β)` and splits into the two ideals spanned by
/// `sqrt(c_β) t_i ± e^β`, so there are more than two proper ideals.
pub fn split_words(alg: &CodeAlgebra) -> Vec<Codeword> {
    let Some(alpha) = exceptional_word(alg) else {
        return Vec::new();
    };
    [alpha, alpha.complement()]
        .into_iter()
        .filter(|&w| {
            let Some(i) = w.support().next() else { return false };
            let p = alg.params();
            w.weight() == 1
                && p.a(i, w).is_some_and(Scalar::is_one)
                && p.c(i, w).is_some_and(|c| c.sqrt(alg.disc()).is_some())
        })
        .collect()
}

/// Whether every product of an element of `i` with one of `j` is zero.
pub fn annihilate(alg: &CodeAlgebra, i: &Ideal, j: &Ideal) -> bool {
    i.basis()
        .iter()
        .all(|u| j.basis().iter().all(|w| alg.multiply(u, w).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::StructureParams;
    use crate::codes::LinearCode;

    fn alg(code: LinearCode, a: i64, b: i64, c: i64) -> CodeAlgebra {
        let p = StructureParams::constant(&code, Scalar::from_int(a), Scalar::from_int(b), Scalar::from_int(c)).unwrap();
        CodeAlgebra::new(code, p).unwrap()
    }

    fn w(s: &str) -> Codeword {
        Codeword::parse(s).unwrap()
    }

    #[test]
    fn zero_generates_zero() {
        let a = alg(LinearCode::full(2), 2, 1, 1);
        assert!(ideal_generated(&a, &a.zero()).is_zero());
    }

    #[test]
    fn f2sq_two_ideals() {
        let a = alg(LinearCode::full(2), 3, 5, -2);
        let x = &a.t(0) + &a.e(w("10")).unwrap();
        let i = ideal_generated(&a, &x);
        assert_eq!(i.dim(), 2);
        let (p, q) = exceptional_ideals(&a).unwrap();
        assert_eq!(i, p);
        assert!(annihilate(&a, &p, &q));
        assert!(p.is_closed(&a) && q.is_closed(&a));
        match is_simple(&a).unwrap() {
            Simplicity::Nonsimple(ideals) => assert_eq!(ideals, vec![p, q]),
            Simplicity::Simple => panic!("F2^2 algebra is not simple"),
        }
    }

    #[test]
    fn square_c_with_unit_a_splits() {
        // span{t_1, e^10} is F[x]/(x^2 - 4) here.
        let mut p = StructureParams::constant(&LinearCode::full(2), Scalar::from_int(3), Scalar::one(), Scalar::one()).unwrap();
        p.set_a(0, w("10"), Scalar::one());
        p.set_c(0, w("10"), Scalar::from_int(4));
        let a = CodeAlgebra::new(LinearCode::full(2), p).unwrap();
        assert_eq!(split_words(&a), vec![w("10")]);
        for s in [1, -1] {
            let x = &a.t(0).scale(&Scalar::from_int(2)) + &a.e(w("10")).unwrap().scale(&Scalar::from_int(s));
            assert_eq!(ideal_generated(&a, &x).dim(), 1);
        }
        // A non-square c keeps the ideal minimal.
        let b = alg(LinearCode::full(2), 1, 1, 2);
        assert!(split_words(&b).is_empty());
        assert_eq!(ideal_generated(&b, &(&b.t(0) + &b.e(w("10")).unwrap())).dim(), 2);
    }

    #[test]
    fn e_alpha_generates_everything() {
        let code = LinearCode::from_strings(&["011", "101"]).unwrap();
        let a = alg(code, 2, 3, 1);
        assert_eq!(ideal_generated(&a, &a.e(w("011")).unwrap()).dim(), 6);
        assert!(is_simple(&a).unwrap().is_simple());
        assert!(structurally_simple(&a));
    }

    #[test]
    fn degenerate_refused() {
        let code = LinearCode::from_strings(&["110"]).unwrap();
        let p = StructureParams::constant(&code, Scalar::one(), Scalar::one(), Scalar::one()).unwrap();
        let a = CodeAlgebra::new(code, p).unwrap();
        assert!(matches!(is_simple(&a), Err(Error::Degenerate(_))));
    }
}
