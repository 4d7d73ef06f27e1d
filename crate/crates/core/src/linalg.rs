//! Dense exact linear algebra over [`Scalar`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Scalar>], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let p = a * b;
                        out[(i, j)] += &p;
                    }
                }
            }
        }
        out
    }

    pub fn sub_scalar_identity(&self, lambda: &Scalar) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        for i in 0..self.rows {
            m[(i, i)] -= lambda;
        }
        m
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] = &m[(r, j)] * &inv;
                }
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        let d = &f * &m[(r, j)];
                        m[(i, j)] -= &d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right nullspace `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -&r[(row, f)];
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// Some `x` with `M x = b`, if the system is consistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Determinant by Gaussian elimination.
    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    if !m[(c, j)].is_zero() {
                        let d = &f * &m[(c, j)];
                        m[(i, j)] -= &d;
                    }
                }
            }
        }
        det
    }

    /// Coefficients (constant term first) of `det(M - x I)`, recovered by
    /// evaluating the determinant at `0..=n` and interpolating.
    pub fn characteristic_polynomial(&self) -> Polynomial {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let points: Vec<Scalar> = (0..=n as i64).map(Scalar::from_int).collect();
        let values: Vec<Scalar> = points
            .iter()
            .map(|x| self.sub_scalar_identity(x).determinant())
            .collect();
        Polynomial::interpolate(&points, &values)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A subspace of `F^dim`, stored as fully reduced echelon rows.
#[derive(Clone, Debug)]
pub struct Subspace {
    dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(dim: usize) -> Self {
        Subspace {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn spanned_by<'a>(dim: usize, vectors: impl IntoIterator<Item = &'a [Scalar]>) -> Self {
        let mut s = Self::new(dim);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// The reduced basis, sorted by pivot column.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (x, r) in w.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("nonzero");
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, r) in row.iter_mut().zip(&w) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.pivots == other.pivots && self.rows == other.rows
    }
}

impl Eq for Subspace {}

/// Dense univariate polynomial, constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial(pub Vec<Scalar>);

impl Polynomial {
    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Newton-form interpolation through `(xs[i], ys[i])`.
    pub fn interpolate(xs: &[Scalar], ys: &[Scalar]) -> Polynomial {
        let n = xs.len();
        let mut coef = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                coef[i] = &(&coef[i] - &coef[i - 1]) / &(&xs[i] - &xs[i - j]);
            }
        }
        // Expand Newton basis into monomials.
        let mut poly = vec![Scalar::zero(); n];
        for k in (0..n).rev() {
            // poly = poly * (x - xs[k]) + coef[k]
            let mut next = vec![Scalar::zero(); n];
            for (d, c) in poly.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if d + 1 < n {
                    next[d + 1] += c;
                }
                next[d] -= &(c * &xs[k]);
            }
            next[0] += &coef[k];
            poly = next;
        }
        let mut p = Polynomial(poly);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.len() > 1 && self.0.last().is_some_and(Scalar::is_zero) {
            self.0.pop();
        }
    }

    /// Divides by `(x - r)`; returns `None` if `r` is not a root.
    pub fn deflate(&self, r: &Scalar) -> Option<Polynomial> {
        let deg = self.degree()?;
        if deg == 0 {
            return None;
        }
        let mut q = vec![Scalar::zero(); deg];
        let mut carry = Scalar::zero();
        for d in (0..=deg).rev() {
            let v = &self.0[d] + &(&carry * r);
            if d == 0 {
                if !v.is_zero() {
                    return None;
                }
            } else {
                q[d - 1] = v.clone();
                carry = v;
            }
        }
        Some(Polynomial(q))
    }

    pub fn is_rational(&self) -> bool {
        self.0.iter().all(Scalar::is_rational)
    }

    /// All distinct rational roots, for a polynomial with rational
    /// coefficients. Uses the rational root theorem; `None` when the
    /// coefficients are irrational or an integer is too large to factor
    /// by trial division.
    pub fn rational_roots(&self) -> Option<Vec<BigRational>> {
        if !self.is_rational() {
            return None;
        }
        let Some(deg) = self.degree() else {
            return Some(Vec::new());
        };
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.rational_part().denom()));
        let mut ints: Vec<BigInt> = self.0[..=deg]
            .iter()
            .map(|c| (c.rational_part() * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut roots = Vec::new();
        let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
        if low > 0 {
            roots.push(BigRational::zero());
            ints.drain(..low);
        }
        if ints.len() <= 1 {
            return Some(roots);
        }
        let lead = ints.last().unwrap().abs();
        let trail = ints[0].abs();
        let ps = divisors(&trail)?;
        let qs = divisors(&lead)?;
        let p = Polynomial(ints.iter().map(|c| Scalar::from_rational(BigRational::from_integer(c.clone()))).collect());
        let mut seen = std::collections::BTreeSet::new();
        for num in &ps {
            for den in &qs {
                for sgn in [1, -1] {
                    let r = BigRational::new(num * sgn, den.clone());
                    if seen.insert(r.clone()) && p.eval(&Scalar::from_rational(r.clone())).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
        roots.sort();
        Some(roots)
    }
}

const TRIAL_LIMIT: u64 = 2_000_000;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut n = n.abs();
    if n.is_zero() {
        return Some(vec![BigInt::one()]);
    }
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p = 2u64;
    while BigInt::from(p) * BigInt::from(p) <= n {
        if p > TRIAL_LIMIT {
            return None;
        }
        let bp = BigInt::from(p);
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            factors.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        factors.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (f, e) in factors {
        let mut next = Vec::new();
        for d in &divs {
            let mut m = d.clone();
            for _ in 0..=e {
                next.push(m.clone());
                m *= &f;
            }
        }
        divs = next;
    }
    divs.sort();
    Some(divs)
}

/// Coordinates of `v` with respect to the columns of `basis`, if `v` lies
/// in their span.
pub fn coordinates_in(basis: &Matrix, v: &[Scalar]) -> Option<Vec<Scalar>> {
    basis.solve(v)
}
