//! Code-level facts checked against brute force over all small codes.

mod common;

use codealg::codes::{classify_constant_weight, parse_code, write_code, CodeClass, Codeword, LinearCode};
use common::*;
use rand::Rng;

/// Every `i` is the intersection of the supports of the words containing it.
fn support_criterion(code: &LinearCode) -> bool {
    let n = code.len();
    let words = code.words().unwrap();
    (0..n).all(|i| {
        let meet = words
            .iter()
            .filter(|w| w.bit(i))
            .fold((1u64 << n) - 1, |acc, w| acc & w.bits());
        words.iter().any(|w| w.bit(i)) && meet == 1 << i
    })
}

/// Minimum distance of the dual by listing all of F_2^n.
fn dual_distance_at_least_3(code: &LinearCode) -> bool {
    let n = code.len();
    let gens = code.generators();
    (1..1u64 << n)
        .map(|b| Codeword::new(b, n))
        .filter(|v| gens.iter().all(|g| !g.dot(*v)))
        .all(|v| v.weight() >= 3)
}

#[test]
fn projectivity_matches_both_characterisations() {
    let mut checked = 0;
    for n in 1..=8 {
        for code in LinearCode::enumerate_all(n) {
            let p = code.is_projective();
            assert_eq!(p, support_criterion(&code), "{:?}", code.generators());
            assert_eq!(p, dual_distance_at_least_3(&code), "{:?}", code.generators());
            checked += 1;
        }
    }
    // Subspaces of F_2^n summed over n <= 8.
    assert_eq!(checked, 2 + 5 + 16 + 67 + 374 + 2825 + 29212 + 417199);
}

#[test]
fn dual_is_an_involution() {
    for n in 1..=6 {
        for code in LinearCode::enumerate_all(n) {
            let dual = code.dual();
            assert_eq!(dual.dim(), n - code.dim());
            assert_eq!(dual.dual(), code);
        }
    }
}

/// Splitting by `v` gives a subcode and, when nonempty, one coset of it.
#[test]
fn split_by_dot_halves() {
    let mut r = rng(21);
    for code in all_codes(6) {
        let v = Codeword::new(r.gen_range(0..1u64 << code.len()), code.len());
        let (c0, c1) = code.split_by_dot(v).unwrap();
        assert_eq!(c0.len() + c1.len(), code.size() as usize);
        assert!(c0.iter().all(|a| c0.iter().all(|b| c0.contains(&a.add(*b)))));
        if !c1.is_empty() {
            assert_eq!(c0.len(), c1.len());
            assert!(c1.iter().all(|a| c1.iter().all(|b| c0.contains(&a.add(*b)))));
        }
    }
}

fn pad(code: &LinearCode, zeros: usize) -> Vec<u64> {
    let mut e = code.weight_enumerator().unwrap();
    e.resize(code.len() + zeros + 1, 0);
    e
}

#[test]
fn constant_weight_classification_round_trips() {
    let mut seen = 0;
    for code in (1..=7).flat_map(LinearCode::enumerate_all) {
        if !matches!(code.constant_weight(), Ok(Some(_))) {
            continue;
        }
        let class = classify_constant_weight(&code).unwrap();
        let model = class.model().unwrap();
        let zeros = match class {
            CodeClass::Simplex { zero_columns, .. } => zero_columns,
            CodeClass::ReedMuller { .. } => 0,
        };
        assert_eq!(model.len() + zeros, code.len(), "{class:?}");
        assert_eq!(pad(&model, zeros), code.weight_enumerator().unwrap(), "{class:?} for {:?}", code.generators());
        // Projective exactly when there is one copy and no zero column.
        let single = matches!(class, CodeClass::Simplex { m: 1, zero_columns: 0, .. } | CodeClass::ReedMuller { m: 1, .. });
        assert_eq!(code.is_projective(), single, "{class:?}");
        seen += 1;
    }
    assert!(seen > 100);
}

#[test]
fn code_files_round_trip() {
    let mut r = rng(4);
    for _ in 0..200 {
        let n = r.gen_range(2..=12);
        let k = r.gen_range(2..=n.min(5));
        let code = random_code(&mut r, n, k);
        let text = write_code(&code);
        assert_eq!(parse_code(&text).unwrap(), code);
        let commented = format!("# a comment\n\n{}", text.replace('\n', "  # trailing\n"));
        assert_eq!(parse_code(&commented).unwrap(), code);
    }
}
