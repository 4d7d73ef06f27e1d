#![allow(dead_code)]

use codealg::codes::{Codeword, LinearCode};
use codealg::{CodeAlgebra, Scalar, StructureParams};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A nonzero rational with small numerator and denominator.
pub fn nonzero(rng: &mut ChaCha8Rng) -> Scalar {
    let mut p = 0;
    while p == 0 {
        p = rng.gen_range(-5..=5);
    }
    Scalar::frac(p, rng.gen_range(1..=4))
}

/// Full support and at least one non-constant word.
pub fn usable(code: &LinearCode) -> bool {
    code.support().weight() == code.len() && code.nonconstant_words().is_ok_and(|w| !w.is_empty())
}

/// Every usable code of length `1..=max_n`.
pub fn all_codes(max_n: usize) -> Vec<LinearCode> {
    (1..=max_n)
        .flat_map(LinearCode::enumerate_all)
        .filter(usable)
        .collect()
}

/// A usable code of length `n >= 2` and dimension `k`. A usable code needs
/// `k >= 2`, so smaller `k` is raised.
pub fn random_code(rng: &mut ChaCha8Rng, n: usize, k: usize) -> LinearCode {
    assert!(n >= 2);
    let k = k.clamp(2, n);
    loop {
        let gens: Vec<Codeword> = (0..k).map(|_| Codeword::new(rng.gen_range(1..1u64 << n), n)).collect();
        if let Ok(code) = LinearCode::new(n, gens) {
            if usable(&code) {
                return code;
            }
        }
    }
}

/// The code `{0, 1, α, α^c}` for a random non-constant `α`.
pub fn exceptional_code(rng: &mut ChaCha8Rng, n: usize) -> LinearCode {
    let alpha = Codeword::new(rng.gen_range(1..(1u64 << n) - 1), n);
    LinearCode::new(n, vec![alpha, Codeword::ones(n)]).expect("independent")
}

pub fn constant(code: &LinearCode, a: Scalar, b: Scalar, c: Scalar) -> CodeAlgebra {
    let p = StructureParams::constant(code, a, b, c).expect("usable code");
    CodeAlgebra::new(code.clone(), p).expect("valid parameters")
}

/// Independent random nonzero values for every `a`, `b` and `c` entry.
pub fn random_params(code: &LinearCode, rng: &mut ChaCha8Rng) -> StructureParams {
    let mut p = StructureParams::constant(code, Scalar::one(), Scalar::one(), Scalar::one()).expect("usable code");
    let a_keys: Vec<_> = p.a_entries().map(|(k, _)| *k).collect();
    let c_keys: Vec<_> = p.c_entries().map(|(k, _)| *k).collect();
    let b_keys: Vec<_> = p.b_entries().map(|(k, _)| *k).collect();
    for (i, w) in a_keys {
        p.set_a(i, w, nonzero(rng));
    }
    for (i, w) in c_keys {
        p.set_c(i, w, nonzero(rng));
    }
    for (x, y) in b_keys {
        p.set_b(x, y, nonzero(rng));
    }
    p
}

pub fn random_algebra(code: &LinearCode, rng: &mut ChaCha8Rng) -> CodeAlgebra {
    CodeAlgebra::new(code.clone(), random_params(code, rng)).expect("valid parameters")
}

pub fn pick<'a, T>(rng: &mut ChaCha8Rng, xs: &'a [T]) -> &'a T {
    xs.choose(rng).expect("nonempty")
}
