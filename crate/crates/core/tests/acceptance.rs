//! One line per acceptance criterion. Run with `--nocapture` to see them.

mod common;

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use codealg::codes::{automorphism_group, Codeword, LinearCode};
use codealg::fixtures::{self, f2sq, f2sq_idempotents};
use codealg::form::{admissible_lambdas, brute_force_forms, exceptional_pairs, formula_family, frobenius_form, frobenius_form_with, verify_associative};
use codealg::group::{conjugation_failure, full_group, miyamoto_group, preserves_products, tau_v};
use codealg::smap::{small_idempotents, small_nu, smap_idempotent, Root};
use codealg::spectral::{eigen_decompose, fusion_law, toral_peirce, FusionLaw};
use codealg::structure::{
    exceptional_ideals, exceptional_word, ideal_generated, ideal_generated_by, is_simple, split_words, structurally_simple, Ideal, Simplicity,
};
use codealg::{CodeAlgebra, Element, Error, Scalar, StructureParams};
use common::*;
use rand::Rng;

type Outcome = Result<String, String>;

/// Criteria that fail as stated, with a fragment the
/// failure message must contain. Any other failure, or a pass here, fails the
/// test.
const KNOWN_FAILURES: [(usize, &str); 1] = [(5, "amended table holds")];

/// Checks the proper ideals found in the exceptional case: both ideals from
/// [`exceptional_ideals`] appear, and every ideal found is a sum of the
/// minimal ones. Returns the number of words in [`split_words`].
fn check_exceptional(alg: &CodeAlgebra, found: &[Ideal]) -> Result<usize, String> {
    let (p, q) = exceptional_ideals(alg).ok_or("not exceptional")?;
    if !annihilate_and_span(alg, &p, &q) || !found.contains(&p) || !found.contains(&q) {
        return Err(format!("expected ideals missing from {found:?}"));
    }
    let split = split_words(alg);
    let mut atoms: Vec<Element> = Vec::new();
    for (ideal, w) in [(&p, exceptional_word(alg).unwrap()), (&q, exceptional_word(alg).unwrap().complement())] {
        if !split.contains(&w) {
            atoms.extend(ideal.basis());
            continue;
        }
        let i = w.support().next().unwrap();
        let root = alg.params().c(i, w).unwrap().sqrt(alg.disc()).unwrap();
        for sign in [Scalar::one(), -Scalar::one()] {
            let x = &alg.t(i).scale(&root) + &alg.e(w).unwrap().scale(&sign);
            let ideal = ideal_generated(alg, &x);
            if ideal.dim() != 1 {
                return Err(format!("sqrt(c) t{} +- e^{w} generates dim {}", i + 1, ideal.dim()));
            }
            atoms.push(x);
        }
    }
    // Minimal ideals: a split word contributes two lines, otherwise the
    // whole of `p` or `q`.
    let minimal: Vec<Ideal> = {
        let mut out = Vec::new();
        for x in &atoms {
            let g = ideal_generated(alg, x);
            if !out.contains(&g) {
                out.push(g);
            }
        }
        out
    };
    let sums: Vec<Ideal> = (1..(1u32 << minimal.len()) - 1)
        .map(|mask| {
            let gens: Vec<Element> = (0..minimal.len())
                .filter(|k| mask >> k & 1 == 1)
                .flat_map(|k| minimal[k].basis())
                .collect();
            ideal_generated_by(alg, &gens)
        })
        .collect();
    if let Some(bad) = found.iter().find(|i| !sums.contains(i)) {
        return Err(format!("split words {split:?}: {bad:?} is not a sum of minimal ideals"));
    }
    Ok(split.len())
}

fn annihilate_and_span(alg: &CodeAlgebra, p: &Ideal, q: &Ideal) -> bool {
    codealg::structure::annihilate(alg, p, q)
        && p.is_closed(alg)
        && q.is_closed(alg)
        && p.dim() + q.dim() == alg.dim()
        && p.basis().iter().all(|v| !q.contains(v))
}

fn fixture(name: &str, limit: Duration) -> Outcome {
    let start = Instant::now();
    let report = fixtures::run(name).expect("known fixture").map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if let Some(f) = report.failures().first() {
        return Err(format!("{}: {}", f.name, f.detail));
    }
    if elapsed > limit {
        return Err(format!("took {elapsed:.2?}"));
    }
    Ok(format!("{} checks in {elapsed:.2?}", report.checks.len()))
}

fn criterion_1() -> Outcome {
    fixture("hamming8", Duration::from_secs(10))
}

fn criterion_2() -> Outcome {
    fixture("even3", Duration::from_secs(10))
}

fn criterion_3() -> Outcome {
    let base = fixture("f2sq", Duration::from_secs(10))?;
    let mut r = rng(3);
    for _ in 0..20 {
        let (a, b, c) = (nonzero(&mut r), nonzero(&mut r), nonzero(&mut r));
        let alg = f2sq(a.clone(), b, c.clone()).unwrap();
        match is_simple(&alg).unwrap() {
            Simplicity::Nonsimple(found) => check_exceptional(&alg, &found).map_err(|e| format!("a={a}, c={c}: {e}"))?,
            Simplicity::Simple => return Err(format!("a={a}, c={c}: simple")),
        };
        if a == Scalar::frac(1, 2) {
            continue;
        }
        for x in f2sq_idempotents(&alg, &a, &c).unwrap() {
            if !alg.is_idempotent(&x.element)
                || alg.multiply(&x.element, &x.eigenvector) != x.eigenvector.scale(&x.eigenvalue)
            {
                return Err(format!("a={a}, c={c}: {}", alg.format_element(&x.element)));
            }
        }
    }
    Ok(format!("{base}; 20 random (a, b, c)"))
}

/// Constant-weight subcodes with at least one non-constant word.
fn cw_subcodes(code: &LinearCode) -> Vec<LinearCode> {
    code.subcodes()
        .into_iter()
        .filter(|d| matches!(d.constant_weight(), Ok(Some(_))))
        .collect()
}

fn criterion_4() -> Outcome {
    let mut r = rng(4);
    let mut done = 0;
    let mut skipped = 0;
    while done < 200 {
        let n = r.gen_range(2..=8);
        let k = r.gen_range(1..=3.min(n));
        let code = random_code(&mut r, n, k);
        let subs = cw_subcodes(&code);
        if subs.is_empty() {
            continue;
        }
        let d = pick(&mut r, &subs).clone();
        let alg = constant(&code, nonzero(&mut r), nonzero(&mut r), nonzero(&mut r));
        let v = Codeword::new(r.gen_range(0..1u64 << n), n);
        let root = if r.gen_bool(0.5) { Root::Plus } else { Root::Minus };
        match smap_idempotent(&alg, &d, v, root) {
            Ok(s) if alg.is_idempotent(&s.element) => done += 1,
            Ok(s) => return Err(format!("not idempotent: {}", alg.format_element(&s.element))),
            Err(Error::DegenerateMuZero | Error::NoRootInField(_)) => skipped += 1,
            Err(e) => return Err(format!("{e} for D = {:?} in {:?}", d.generators(), code.generators())),
        }
    }

    // Coset law over every v, w for every small constant-weight D.
    let mut cases: Vec<(CodeAlgebra, LinearCode)> = Vec::new();
    for code in all_codes(4) {
        let alg = constant(&code, nonzero(&mut r), nonzero(&mut r), nonzero(&mut r));
        for d in cw_subcodes(&code) {
            if d.size() <= 8 {
                cases.push((alg.clone(), d));
            }
        }
    }
    let h8 = fixtures::hamming8().unwrap();
    for d in cw_subcodes(h8.code()) {
        if d.size() <= 8 && d.size() >= 4 {
            cases.push((h8.clone(), d));
        }
    }
    let mut laws = 0;
    for (alg, d) in &cases {
        let n = alg.n();
        let all: Vec<Codeword> = (0..1u64 << n).map(|b| Codeword::new(b, n)).collect();
        let smaps: Vec<_> = match all
            .iter()
            .map(|&v| smap_idempotent(alg, d, v, Root::Plus).map(|s| s.element))
            .collect::<Result<Vec<_>, _>>()
        {
            Ok(s) => s,
            Err(Error::DegenerateMuZero | Error::NoRootInField(_)) => continue,
            Err(e) => return Err(e.to_string()),
        };
        let dual = d.dual();
        for (i, v) in all.iter().enumerate() {
            for (j, w) in all.iter().enumerate().skip(i + 1) {
                if (smaps[i] == smaps[j]) != dual.contains(v.add(*w)) {
                    return Err(format!("coset law fails for D = {:?}, v = {v}, w = {w}", d.generators()));
                }
            }
        }
        laws += 1;
    }
    Ok(format!("200 idempotents ({skipped} degenerate draws redrawn); coset law on {laws} subcodes"))
}

fn criterion_5() -> Outcome {
    let mut r = rng(5);
    let codes: Vec<LinearCode> = all_codes(5).into_iter().filter(|c| c.len() + c.size() as usize <= 40).collect();
    let mut toral = 0;
    let mut seress_checked = 0;
    for _ in 0..150 {
        let code = pick(&mut r, &codes).clone();
        let alg = random_algebra(&code, &mut r);
        for i in 0..alg.n() {
            let mut a_values: Vec<Scalar> = Vec::new();
            for &alpha in alg.cstar().iter().filter(|w| w.bit(i)) {
                let a = alg.params().a(i, alpha).unwrap().clone();
                if !a_values.contains(&a) {
                    a_values.push(a);
                }
            }
            let dec = toral_peirce(&alg, i);
            let law = fusion_law(&alg, &dec).map_err(|e| e.to_string())?;
            let table = FusionLaw::toral(&a_values);
            if let Some((x, y)) = law.containment_witness(&table) {
                return Err(format!("t{} on {:?}: {x} * {y}", i + 1, code.generators()));
            }
            toral += 1;
            if a_values.iter().all(|a| !a.is_one()) {
                let nontrivial = dec.eigenvalues().iter().filter(|v| !v.is_zero() && !v.is_one()).count();
                if law.seress().map_err(|e| e.to_string())? != (nontrivial <= 1) {
                    return Err(format!("Seress disagreement for t{} on {:?}", i + 1, code.generators()));
                }
                seress_checked += 1;
            }
        }
    }

    let cw: Vec<LinearCode> = all_codes(6)
        .into_iter()
        .filter(|c| matches!(c.constant_weight(), Ok(Some(_))) && c.len() + c.size() as usize <= 30)
        .collect();
    let mut small = 0;
    let mut lambda_misses = 0;
    let mut nu_misses = 0;
    let mut attempts = 0;
    while small < 60 && attempts < 2000 {
        attempts += 1;
        let code = pick(&mut r, &cw).clone();
        let alpha = *pick(&mut r, &code.nonconstant_words().unwrap());
        let weight = alpha.weight() as i64;
        let a = nonzero(&mut r);
        if a == Scalar::frac(1, 2 * weight) || a == Scalar::frac(1, 3 * weight) {
            continue;
        }
        // Half the samples pair β with α + β in c and b, which the usual
        // ν₊ ⋆ ν₋ entry needs.
        let paired = attempts % 2 == 0;
        let class = |w: Codeword| if w == alpha || w == alpha.complement() { w } else { w.min(w.add(alpha)) };
        let (b_alpha, b_comp) = (nonzero(&mut r), nonzero(&mut r));
        let mut p = StructureParams::constant(&code, a, Scalar::one(), Scalar::one()).unwrap();
        let cstar = code.nonconstant_words().unwrap().to_vec();
        let mut c_of: HashMap<Codeword, Scalar> = HashMap::new();
        for &beta in &cstar {
            let key = if paired { class(beta) } else { beta };
            let c = c_of.entry(key).or_insert_with(|| nonzero(&mut r)).clone();
            for i in beta.support() {
                p.set_c(i, beta, c.clone());
            }
        }
        let mut b_of: HashMap<(Codeword, Codeword), Scalar> = HashMap::new();
        let b_keys: Vec<_> = p.b_entries().map(|(k, _)| *k).collect();
        for (x, y) in b_keys {
            let v = if x == alpha || y == alpha {
                b_alpha.clone()
            } else if x == alpha.complement() || y == alpha.complement() {
                b_comp.clone()
            } else if paired {
                let (u, v) = (class(x), class(y));
                b_of.entry((u.min(v), u.max(v))).or_insert_with(|| nonzero(&mut r)).clone()
            } else {
                nonzero(&mut r)
            };
            p.set_b(x, y, v);
        }
        let alg = CodeAlgebra::new(code.clone(), p).unwrap();
        let b = alg
            .cstar()
            .iter()
            .find_map(|&beta| alg.params().b(alpha, beta))
            .cloned()
            .unwrap_or_else(Scalar::zero);
        let (plus, minus) = match small_idempotents(&alg, alpha) {
            Ok(pair) => pair,
            Err(Error::DegenerateMuZero | Error::NoRootInField(_)) => continue,
            Err(e) => return Err(e.to_string()),
        };
        for s in [plus, minus] {
            let (np, nm) = small_nu(&s.spec.mu, &b);
            let lambda = &s.spec.lambda;
            let hints = [lambda.clone(), lambda - &Scalar::frac(1, 2), np.clone(), nm.clone()];
            let dec = eigen_decompose(&alg, &s.element, &hints);
            if !dec.is_semisimple() {
                return Err(format!("small idempotent for {alpha} in {:?} not semisimple", code.generators()));
            }
            let law = fusion_law(&alg, &dec).map_err(|e| e.to_string())?;
            let describe = |x: &Scalar, y: &Scalar| {
                format!(
                    "small idempotent for {alpha} in {:?}: {x} * {y}; lambda = {lambda}, mu = {}, nu = {np}, {nm}; dims {:?}; law {law}; params {}",
                    code.generators(),
                    s.spec.mu,
                    dec.dims(),
                    alg.params().to_string().replace('\n', "; ")
                )
            };
            let amended = if paired {
                FusionLaw::small_amended(lambda, &np, &nm)
            } else {
                FusionLaw::small_general(lambda, &np, &nm)
            };
            if let Some((x, y)) = law.containment_witness(&amended) {
                return Err(describe(&x, &y));
            }
            let half_off = lambda - &Scalar::frac(1, 2);
            let has = |x: &Scalar, y: &Scalar, z: &Scalar| match (law.index_of(x), law.index_of(y), law.index_of(z)) {
                (Some(i), Some(j), Some(k)) => law.entry(i, j).contains(&k),
                _ => false,
            };
            // Coinciding labels can absorb either discrepancy.
            if !law.is_contained_in(&FusionLaw::small(lambda, &np, &nm)) {
                let lambda_miss = has(lambda, &half_off, lambda);
                let nu_miss = !law.is_contained_in(&FusionLaw::small_amended(lambda, &np, &nm));
                if !lambda_miss && !nu_miss {
                    return Err(format!("{}; unclassified", describe(lambda, &half_off)));
                }
                lambda_misses += usize::from(lambda_miss);
                nu_misses += usize::from(nu_miss);
            }
            small += 1;
        }
    }
    if small < 60 {
        return Err(format!("only {small} small idempotents tested"));
    }
    let summary = format!("{toral} toral laws, {seress_checked} Seress checks, {small} small-idempotent laws");
    if lambda_misses + nu_misses > 0 {
        return Err(format!(
            "{summary}; usual small-idempotent table misses lambda * (lambda - 1/2) in {lambda_misses} laws \
             and nu+ * nu- in {nu_misses} unpaired laws; amended table holds for all"
        ));
    }
    Ok(summary)
}

fn frobenius_corpus() -> Vec<CodeAlgebra> {
    let mut r = rng(6);
    let mut out = Vec::new();
    for code in all_codes(4).into_iter().filter(|c| c.len() + c.nonconstant_words().unwrap().len() <= 6) {
        out.push(constant(&code, Scalar::frac(1, 4), Scalar::frac(1, 2), Scalar::one()));
        out.push(constant(&code, Scalar::one(), nonzero(&mut r), nonzero(&mut r)));
        for _ in 0..6 {
            out.push(random_algebra(&code, &mut r));
        }
        // a = 1 on weight-one words only.
        let mut p = random_params(&code, &mut r);
        for w in code.nonconstant_words().unwrap() {
            if w.weight() == 1 {
                p.set_a(w.support().next().unwrap(), w, Scalar::one());
            }
        }
        out.push(CodeAlgebra::new(code.clone(), p).unwrap());
        // Parameters built from a known λ so that a form exists.
        let lambda: Vec<Scalar> = (0..code.len()).map(|_| nonzero(&mut r)).collect();
        let mut p = random_params(&code, &mut r);
        let cstar = code.nonconstant_words().unwrap().to_vec();
        let mut la = Vec::new();
        for &w in &cstar {
            let target = nonzero(&mut r);
            for i in w.support() {
                // c/a λ_i = target
                let a = p.a(i, w).unwrap().clone();
                p.set_c(i, w, &(&target * &a) / &lambda[i]);
            }
            la.push((w, target));
        }
        let l_of = |w: Codeword| la.iter().find(|(x, _)| *x == w).unwrap().1.clone();
        let b_keys: Vec<_> = p.b_entries().map(|(k, _)| *k).collect();
        for (x, y) in b_keys {
            // b_{xy} proportional to λ_x λ_y makes every b λ_γ product agree.
            p.set_b(x, y, &l_of(x) * &l_of(y));
        }
        out.push(CodeAlgebra::new(code.clone(), p).unwrap());
    }
    out.into_iter().filter(|a| a.is_nondegenerate()).collect()
}

fn criterion_6() -> Outcome {
    let corpus = frobenius_corpus();
    let mut with_form = 0;
    for alg in &corpus {
        let family = formula_family(alg).map_err(|e| e.to_string())?;
        let brute = brute_force_forms(alg);
        if family != brute {
            return Err(format!(
                "{:?} with {}: formulas give dim {}, brute force dim {}",
                alg.code().generators(),
                alg.params(),
                family.dim(),
                brute.dim()
            ));
        }
        let lambdas = admissible_lambdas(alg);
        for l in &lambdas {
            let form = frobenius_form(alg, Some(l)).map_err(|e| e.to_string())?;
            if !verify_associative(alg, &form) {
                return Err(format!("formula form not associative on {:?}", alg.code().generators()));
            }
        }
        let pairs = exceptional_pairs(alg);
        if !pairs.is_empty() {
            let ones = vec![Scalar::one(); pairs.len()];
            let zero = vec![Scalar::zero(); alg.n()];
            let form = frobenius_form_with(alg, Some(&zero), &ones).map_err(|e| e.to_string())?;
            if !verify_associative(alg, &form) {
                return Err("exceptional entry form not associative".into());
            }
        }
        if !lambdas.is_empty() || !pairs.is_empty() {
            with_form += 1;
        }
    }
    Ok(format!("{} algebras, {with_form} with a nonzero form", corpus.len()))
}

fn criterion_7() -> Outcome {
    let mut r = rng(7);
    let mut corpus: Vec<CodeAlgebra> = Vec::new();
    for code in all_codes(4).into_iter().filter(|c| c.len() + c.size() as usize <= 20) {
        corpus.push(random_algebra(&code, &mut r));
    }
    for n in 5..=8 {
        for _ in 0..6 {
            let k = r.gen_range(1..=3);
            let code = random_code(&mut r, n, k);
            corpus.push(random_algebra(&code, &mut r));
        }
    }
    for n in 2..=8 {
        for _ in 0..3 {
            let code = exceptional_code(&mut r, n);
            corpus.push(random_algebra(&code, &mut r));
        }
    }
    let mut exceptional = 0;
    let mut split = 0;
    for alg in corpus.iter().filter(|a| a.is_nondegenerate()) {
        let computed = is_simple(alg).map_err(|e| e.to_string())?;
        if computed.is_simple() != structurally_simple(alg) {
            return Err(format!("{:?}: computed {computed:?}", alg.code().generators()));
        }
        if let Simplicity::Nonsimple(found) = computed {
            let extra = check_exceptional(alg, &found).map_err(|e| {
                format!("{:?} with {}: {e}", alg.code().generators(), alg.params().to_string().replace('\n', "; "))
            })?;
            exceptional += 1;
            if extra > 0 {
                split += 1;
            }
        }
    }
    Ok(format!("{} algebras, {exceptional} exceptional, {split} with split ideals", corpus.len()))
}

fn criterion_8() -> Outcome {
    let h8 = fixtures::hamming8().unwrap();
    let mut summary = Vec::new();
    let codes = [
        (h8.code().clone(), Scalar::frac(1, 4)),
        (LinearCode::even_weight(3), Scalar::frac(1, 2)),
        (LinearCode::full(3), Scalar::frac(1, 3)),
        (LinearCode::simplex(3).unwrap(), Scalar::frac(1, 5)),
        (LinearCode::from_strings(&["1100", "0011"]).unwrap(), Scalar::frac(2, 3)),
    ];
    for (code, a) in codes {
        let alg = constant(&code, a, Scalar::frac(1, 2), Scalar::one());
        let n = alg.n();
        let m = miyamoto_group(&alg).map_err(|e| e.to_string())?;
        let brute: Vec<Codeword> = (0..1u64 << n)
            .map(|b| Codeword::new(b, n))
            .filter(|v| alg.cstar().iter().all(|&w| !w.dot(*v)))
            .collect();
        let kernel_words = m.kernel.words().unwrap().to_vec();
        let mut sorted = brute.clone();
        sorted.sort();
        let mut kw = kernel_words.clone();
        kw.sort();
        if sorted != kw {
            return Err(format!("kernel mismatch for {:?}", code.generators()));
        }
        let distinct: HashSet<_> = (0..1u64 << n).map(|b| tau_v(&alg, Codeword::new(b, n))).collect();
        if distinct.len() as u128 != m.order || m.order != 1u128 << (n - m.kernel.dim()) {
            return Err(format!("|M| mismatch for {:?}", code.generators()));
        }
        let g = full_group(&alg).map_err(|e| e.to_string())?;
        for (perm, phi) in &g.aut {
            if let Some(i) = conjugation_failure(&alg, &m.generators, perm, phi) {
                return Err(format!("conjugation fails at tau_{} for {perm:?}", i + 1));
            }
            if !phi.is_identity() && phi.is_diagonal() {
                return Err("a code automorphism acts like a Miyamoto element".into());
            }
        }
        let elements = g.elements(&alg).map_err(|e| e.to_string())?;
        let unique: HashSet<_> = elements.iter().collect();
        if unique.len() as u128 != g.order || !elements.iter().all(|x| preserves_products(&alg, x)) {
            return Err(format!("group elements wrong for {:?}", code.generators()));
        }
        summary.push(format!("|M|={} |G|={}", m.order, g.order));
    }
    let aut = automorphism_group(h8.code()).unwrap().len();
    if aut != 1344 || !summary[0].starts_with("|M|=16 ") {
        return Err(format!("H8: {} and |Aut| = {aut}", summary[0]));
    }
    Ok(summary.join(", "))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("Hamming fixture", criterion_1),
        ("even-3 fixture", criterion_2),
        ("F2^2 fixture", criterion_3),
        ("s-map soundness and coset law", criterion_4),
        ("fusion-law conformance", criterion_5),
        ("Frobenius oracle equivalence", criterion_6),
        ("simplicity oracle equivalence", criterion_7),
        ("group orders", criterion_8),
    ];
    // ACCEPTANCE_ONLY=2,5 restricts the run.
    let only: Option<Vec<usize>> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .map(|s| s.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    let mut unexpected = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        if only.as_ref().is_some_and(|o| !o.contains(&(k + 1))) {
            continue;
        }
        let start = Instant::now();
        let outcome = f();
        let t = start.elapsed();
        let known = KNOWN_FAILURES.iter().find(|(c, _)| *c == k + 1);
        match (&outcome, known) {
            (Ok(msg), None) => println!("criterion {}: PASS {name}: {msg} [{t:.2?}]", k + 1),
            (Ok(msg), Some(_)) => {
                println!("criterion {}: PASS {name}: {msg} [{t:.2?}]", k + 1);
                unexpected.push(k + 1);
            }
            (Err(msg), known) => {
                println!("criterion {}: FAIL {name}: {msg} [{t:.2?}]", k + 1);
                if !known.is_some_and(|(_, why)| msg.contains(why)) {
                    unexpected.push(k + 1);
                }
            }
        }
    }
    assert!(unexpected.is_empty(), "criteria with unexpected outcome: {unexpected:?}");
}
