//! Fusion laws: symmetric tables `F × F -> 2^F` with `F` a set of scalars.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct FusionLaw {
    labels: Vec<Scalar>,
    /// `table[i][j]` holds indices into `labels`; symmetric.
    table: Vec<Vec<BTreeSet<usize>>>,
}

impl FusionLaw {
    /// A law with every product empty.
    pub fn empty(labels: Vec<Scalar>) -> Self {
        for (i, x) in labels.iter().enumerate() {
            assert!(!labels[..i].contains(x), "duplicate label {x}");
        }
        let k = labels.len();
        FusionLaw {
            labels,
            table: vec![vec![BTreeSet::new(); k]; k],
        }
    }

    /// Builds a law on formal labels and merges those with equal values.
    /// `rule(x, y)` lists formal label indices.
    pub fn from_formal(values: &[Scalar], rule: impl Fn(usize, usize) -> Vec<usize>) -> Self {
        let mut labels: Vec<Scalar> = Vec::new();
        let mut class = Vec::with_capacity(values.len());
        for v in values {
            match labels.iter().position(|l| l == v) {
                Some(p) => class.push(p),
                None => {
                    class.push(labels.len());
                    labels.push(v.clone());
                }
            }
        }
        let mut law = FusionLaw::empty(labels);
        for x in 0..values.len() {
            for y in 0..values.len() {
                for z in rule(x, y) {
                    law.insert(class[x], class[y], class[z]);
                }
            }
        }
        law
    }

    pub fn labels(&self) -> &[Scalar] {
        &self.labels
    }

    pub fn index_of(&self, x: &Scalar) -> Option<usize> {
        self.labels.iter().position(|l| l == x)
    }

    /// `labels[i] ⋆ labels[j]` as label indices.
    pub fn entry(&self, i: usize, j: usize) -> &BTreeSet<usize> {
        &self.table[i][j]
    }

    /// `x ⋆ y` as values; empty for unknown labels.
    pub fn product(&self, x: &Scalar, y: &Scalar) -> Vec<Scalar> {
        match (self.index_of(x), self.index_of(y)) {
            (Some(i), Some(j)) => self.table[i][j].iter().map(|&k| self.labels[k].clone()).collect(),
            _ => Vec::new(),
        }
    }

    pub fn insert(&mut self, i: usize, j: usize, k: usize) {
        self.table[i][j].insert(k);
        self.table[j][i].insert(k);
    }

    /// Entrywise containment, matching labels by value. Fails if a label of
    /// `self` is missing from `other`.
    pub fn is_contained_in(&self, other: &FusionLaw) -> bool {
        self.containment_witness(other).is_none()
    }

    /// A pair `(x, y)` whose product is not contained in `other`'s.
    pub fn containment_witness(&self, other: &FusionLaw) -> Option<(Scalar, Scalar)> {
        let map: Vec<Option<usize>> = self.labels.iter().map(|l| other.index_of(l)).collect();
        for i in 0..self.labels.len() {
            for j in i..self.labels.len() {
                let ok = match (map[i], map[j]) {
                    (Some(p), Some(q)) => self.table[i][j]
                        .iter()
                        .all(|&k| map[k].is_some_and(|r| other.table[p][q].contains(&r))),
                    _ => false,
                };
                if !ok {
                    return Some((self.labels[i].clone(), self.labels[j].clone()));
                }
            }
        }
        None
    }

    /// Equality up to label order.
    pub fn same_as(&self, other: &FusionLaw) -> bool {
        self.labels.len() == other.labels.len() && self.is_contained_in(other) && other.is_contained_in(self)
    }

    /// `0 ⋆ λ ⊆ {λ}` for every label `λ ≠ 1`.
    pub fn seress(&self) -> Result<bool> {
        let (Some(one), Some(zero)) = (self.index_of(&Scalar::one()), self.index_of(&Scalar::zero())) else {
            return Err(Error::MissingUnitLabels);
        };
        Ok((0..self.labels.len())
            .filter(|&l| l != one)
            .all(|l| self.table[zero][l].iter().all(|&k| k == l)))
    }

    /// Whether `minus` (label indices) is the odd part of a Z2-grading.
    pub fn is_grading(&self, minus: &[usize]) -> bool {
        let odd = |k: usize| minus.contains(&k);
        (0..self.labels.len()).all(|i| {
            (0..self.labels.len()).all(|j| self.table[i][j].iter().all(|&k| odd(k) == (odd(i) != odd(j))))
        })
    }

    /// The Z2-grading with the largest odd part, keeping `1` and `0` even.
    ///
    /// Returns the trivial grading only when every label is `1` or `0`;
    /// otherwise a law admitting nothing but the trivial grading gives `None`.
    pub fn z2_grading(&self) -> Option<Grading> {
        let k = self.labels.len();
        let free: Vec<usize> = (0..k)
            .filter(|&i| !self.labels[i].is_zero() && !self.labels[i].is_one())
            .collect();
        let mut best: Option<Vec<usize>> = None;
        for mask in 1u64..1 << free.len() {
            let minus: Vec<usize> = free
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &i)| i)
                .collect();
            if best.as_ref().is_some_and(|b| b.len() >= minus.len()) {
                continue;
            }
            if self.is_grading(&minus) {
                best = Some(minus);
            }
        }
        let minus = match best {
            Some(m) => m,
            None if free.is_empty() => Vec::new(),
            None => return None,
        };
        let (odd, even): (Vec<usize>, Vec<usize>) = (0..k).partition(|i| minus.contains(i));
        Some(Grading {
            plus: even.into_iter().map(|i| self.labels[i].clone()).collect(),
            minus: odd.into_iter().map(|i| self.labels[i].clone()).collect(),
        })
    }

    /// The law for `t_i` with distinct nontrivial eigenvalues `a_1..a_k`.
    pub fn toral(a_values: &[Scalar]) -> Self {
        let mut values = vec![Scalar::one(), Scalar::zero()];
        values.extend(a_values.iter().cloned());
        let k = values.len();
        FusionLaw::from_formal(&values, |x, y| {
            let (x, y) = (x.min(y), x.max(y));
            match (x, y) {
                (0, 0) => vec![0],
                (0, 1) => vec![],
                (0, _) => vec![y],
                (1, 1) => vec![1],
                (1, _) => (2..k).collect(),
                _ if x == y => vec![0, 1],
                _ => vec![1],
            }
        })
    }

    /// The Jordan type law `{1, 0, eta}`.
    pub fn jordan(eta: Scalar) -> Self {
        Self::toral(&[eta])
    }

    /// The law of a small idempotent with `nu± = 1/4 ± mu b`.
    pub fn small(lambda: &Scalar, nu_plus: &Scalar, nu_minus: &Scalar) -> Self {
        const ONE: usize = 0;
        const ZERO: usize = 1;
        const LAM: usize = 2;
        const HALF: usize = 3;
        const NP: usize = 4;
        const NM: usize = 5;
        let values = vec![
            Scalar::one(),
            Scalar::zero(),
            lambda.clone(),
            lambda - &Scalar::frac(1, 2),
            nu_plus.clone(),
            nu_minus.clone(),
        ];
        FusionLaw::from_formal(&values, |x, y| {
            let (x, y) = (x.min(y), x.max(y));
            match (x, y) {
                (ONE, ONE) => vec![ONE],
                (ONE, ZERO) => vec![],
                (ONE, _) => vec![y],
                (ZERO, ZERO) => vec![ZERO],
                (ZERO, LAM) | (ZERO, HALF) => vec![],
                (ZERO, _) => vec![y],
                (LAM, LAM) => vec![ONE, LAM, HALF],
                (LAM, HALF) => vec![],
                (LAM, NP) => vec![NM],
                (LAM, NM) => vec![NP],
                (HALF, HALF) => vec![ONE, HALF],
                (HALF, _) => vec![y],
                (NP, NM) => vec![ZERO, LAM],
                _ => vec![ONE, ZERO, LAM, HALF, NP, NM],
            }
        })
    }

    /// [`FusionLaw::small`] with `λ ⋆ (λ - 1/2) = {λ}`. The usual table
    /// leaves that entry empty, but `(2μc t_α - e^α)(t_i - t_j) = 2μc (t_i - t_j)`
    /// for `i, j` in `supp α`, which is a nonzero `λ`-eigenvector.
    pub fn small_amended(lambda: &Scalar, nu_plus: &Scalar, nu_minus: &Scalar) -> Self {
        let mut law = Self::small(lambda, nu_plus, nu_minus);
        let l = law.index_of(lambda).expect("label");
        let h = law.index_of(&(lambda - &Scalar::frac(1, 2))).expect("label");
        law.insert(l, h, l);
        law
    }

    /// [`FusionLaw::small_amended`] with `ν₊ ⋆ ν₋` unrestricted. Without
    /// `c_β = c_{α+β}` the square `(e^β + e^{α+β})(e^β - e^{α+β})` is a
    /// general combination of `t_i`, and without `b_{β,γ} = b_{α+β,γ}` the
    /// cross terms land in `ν₊ ⊕ ν₋`.
    pub fn small_general(lambda: &Scalar, nu_plus: &Scalar, nu_minus: &Scalar) -> Self {
        let mut law = Self::small_amended(lambda, nu_plus, nu_minus);
        let p = law.index_of(nu_plus).expect("label");
        let m = law.index_of(nu_minus).expect("label");
        for k in 0..law.labels().len() {
            law.insert(p, m, k);
        }
        law
    }

    /// Rows of `(x, y, x ⋆ y)` for `x <= y` in label order.
    pub fn entries(&self) -> Vec<(Scalar, Scalar, Vec<Scalar>)> {
        let mut out = Vec::new();
        for i in 0..self.labels.len() {
            for j in i..self.labels.len() {
                out.push((
                    self.labels[i].clone(),
                    self.labels[j].clone(),
                    self.table[i][j].iter().map(|&k| self.labels[k].clone()).collect(),
                ));
            }
        }
        out
    }
}

/// A Z2-grading of a fusion law.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grading {
    pub plus: Vec<Scalar>,
    pub minus: Vec<Scalar>,
}

impl Grading {
    pub fn is_trivial(&self) -> bool {
        self.minus.is_empty()
    }
}

#[derive(Serialize, Deserialize)]
struct LawDoc {
    labels: Vec<Scalar>,
    table: Vec<LawEntry>,
}

#[derive(Serialize, Deserialize)]
struct LawEntry {
    x: Scalar,
    y: Scalar,
    product: Vec<Scalar>,
}

impl Serialize for FusionLaw {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LawDoc {
            labels: self.labels.clone(),
            table: self
                .entries()
                .into_iter()
                .map(|(x, y, product)| LawEntry { x, y, product })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FusionLaw {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = LawDoc::deserialize(d)?;
        let mut labels = doc.labels;
        labels.dedup();
        let mut law = FusionLaw::empty(labels);
        let idx = |law: &FusionLaw, x: &Scalar| law.index_of(x).ok_or_else(|| D::Error::custom(format!("unknown label {x}")));
        for e in doc.table {
            let i = idx(&law, &e.x)?;
            let j = idx(&law, &e.y)?;
            for z in &e.product {
                let k = idx(&law, z)?;
                law.insert(i, j, k);
            }
        }
        Ok(law)
    }
}

impl fmt::Display for FusionLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cell = |set: &BTreeSet<usize>| {
            if set.is_empty() {
                String::new()
            } else {
                set.iter().map(|&k| self.labels[k].to_string()).collect::<Vec<_>>().join(", ")
            }
        };
        let mut rows = vec![std::iter::once(String::new())
            .chain(self.labels.iter().map(ToString::to_string))
            .collect::<Vec<_>>()];
        for (i, l) in self.labels.iter().enumerate() {
            let mut row = vec![l.to_string()];
            row.extend((0..self.labels.len()).map(|j| cell(&self.table[i][j])));
            rows.push(row);
        }
        let widths: Vec<usize> = (0..rows[0].len())
            .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
            .collect();
        for row in rows {
            let line: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
            writeln!(f, "{}", line.join(" | ").trim_end())?;
        }
        Ok(())
    }
}

impl fmt::Debug for FusionLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::frac(n, d)
    }

    #[test]
    fn jordan_law() {
        let law = FusionLaw::jordan(s(1, 4));
        assert_eq!(law.labels().len(), 3);
        assert_eq!(law.product(&s(1, 1), &s(1, 4)), vec![s(1, 4)]);
        assert_eq!(law.product(&s(0, 1), &s(1, 4)), vec![s(1, 4)]);
        let mut sq = law.product(&s(1, 4), &s(1, 4));
        sq.sort_by(Scalar::total_cmp);
        assert_eq!(sq, vec![s(0, 1), s(1, 1)]);
        assert!(law.product(&s(1, 1), &s(0, 1)).is_empty());
        assert!(law.seress().unwrap());
        assert_eq!(law.z2_grading().unwrap().minus, vec![s(1, 4)]);
    }

    #[test]
    fn toral_law_with_two_values() {
        let law = FusionLaw::toral(&[s(1, 4), s(1, 3)]);
        assert_eq!(law.product(&s(1, 4), &s(1, 3)), vec![s(0, 1)]);
        assert_eq!(law.product(&s(0, 1), &s(1, 4)).len(), 2);
        assert!(!law.seress().unwrap());
        let g = law.z2_grading().unwrap();
        assert_eq!(g.minus.len(), 2);
    }

    #[test]
    fn trivial_and_ungraded_laws() {
        let law = FusionLaw::from_formal(&[Scalar::one()], |_, _| vec![0]);
        assert!(law.z2_grading().unwrap().is_trivial());
        assert_eq!(law.seress(), Err(Error::MissingUnitLabels));
        let small = FusionLaw::small(&s(1, 3), &s(1, 2), &s(1, 5));
        assert_eq!(small.labels().len(), 6);
        assert!(small.seress().unwrap());
        assert_eq!(small.z2_grading(), None);
    }

    #[test]
    fn merging_and_containment() {
        // lambda = 1/2 makes lambda - 1/2 = 0; nu± = 1/2, 0.
        let merged = FusionLaw::small(&s(1, 2), &s(1, 2), &s(0, 1));
        assert_eq!(merged.labels().len(), 3);
        assert!(FusionLaw::jordan(s(1, 2)).is_contained_in(&merged));
        let other = FusionLaw::jordan(s(1, 3));
        assert!(!other.is_contained_in(&merged));
    }

    #[test]
    fn json_round_trip() {
        let law = FusionLaw::small(&s(1, 3), &s(1, 2), &s(1, 5));
        let text = serde_json::to_string(&law).unwrap();
        let back: FusionLaw = serde_json::from_str(&text).unwrap();
        assert_eq!(back, law);
    }
}
