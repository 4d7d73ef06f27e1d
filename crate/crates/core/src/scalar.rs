//! Exact coefficients: rationals and elements of a single quadratic
//! extension `Q(sqrt(d))`.
//!
//! A [`Scalar`] stores `rat + surd * sqrt(disc)`. The representation is
//! normalised so that a value with a zero surd part always carries
//! `disc == 1`; two scalars are equal exactly when their fields match.
//! Rational scalars mix freely with any extension. Mixing two surds over
//! different discriminants is an error ([`ScalarError::DiscriminantMismatch`])
//! in the `checked_*` API and a panic in the operator impls.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot combine sqrt({0}) with sqrt({1}) in one field")]
    DiscriminantMismatch(i64, i64),
    #[error("discriminant {0} is not a squarefree integer other than 0 and 1")]
    BadDiscriminant(i64),
    #[error("zero has no discriminant")]
    ZeroInput,
    #[error("ordering is undefined over Q(sqrt({0}))")]
    UnorderedField(i64),
    #[error("cannot parse scalar literal `{0}`")]
    Parse(String),
}

/// An element of `Q` or `Q(sqrt(disc))`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    rat: BigRational,
    surd: BigRational,
    disc: i64,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(rat: BigRational) -> Self {
        Scalar {
            rat,
            surd: BigRational::zero(),
            disc: 1,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    /// `num / den` as a rational scalar. Panics if `den == 0`.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    /// `rat + surd * sqrt(disc)`; `disc` must be squarefree and not 0.
    pub fn new(rat: BigRational, surd: BigRational, disc: i64) -> Result<Self, ScalarError> {
        if surd.is_zero() {
            return Ok(Self::from_rational(rat));
        }
        if disc == 1 {
            return Ok(Self::from_rational(rat + surd));
        }
        if disc == 0 || !is_squarefree(disc) {
            return Err(ScalarError::BadDiscriminant(disc));
        }
        Ok(Scalar { rat, surd, disc })
    }

    /// `coeff * sqrt(disc)`.
    pub fn surd(coeff: BigRational, disc: i64) -> Result<Self, ScalarError> {
        Self::new(BigRational::zero(), coeff, disc)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.surd
    }

    /// The discriminant of the field this value needs; 1 for rationals.
    pub fn discriminant(&self) -> i64 {
        self.disc
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.surd.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.surd.is_zero() && self.rat.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.rat)
    }

    /// Conjugate `rat - surd * sqrt(disc)`.
    pub fn conj(&self) -> Self {
        Scalar {
            rat: self.rat.clone(),
            surd: -self.surd.clone(),
            disc: self.disc,
        }
    }

    /// Field norm `rat^2 - disc * surd^2`.
    pub fn norm(&self) -> BigRational {
        &self.rat * &self.rat - &self.surd * &self.surd * BigRational::from_integer(self.disc.into())
    }

    fn joint_disc(&self, other: &Self) -> Result<i64, ScalarError> {
        match (self.disc, other.disc) {
            (1, d) | (d, 1) => Ok(d),
            (d, e) if d == e => Ok(d),
            (d, e) => Err(ScalarError::DiscriminantMismatch(d, e)),
        }
    }

    fn normalised(rat: BigRational, surd: BigRational, disc: i64) -> Self {
        if surd.is_zero() {
            Self::from_rational(rat)
        } else {
            Scalar { rat, surd, disc }
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, ScalarError> {
        let d = self.joint_disc(rhs)?;
        Ok(Self::normalised(&self.rat + &rhs.rat, &self.surd + &rhs.surd, d))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, ScalarError> {
        let d = self.joint_disc(rhs)?;
        Ok(Self::normalised(&self.rat - &rhs.rat, &self.surd - &rhs.surd, d))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, ScalarError> {
        let d = self.joint_disc(rhs)?;
        if self.surd.is_zero() && rhs.surd.is_zero() {
            return Ok(Self::from_rational(&self.rat * &rhs.rat));
        }
        let dd = BigRational::from_integer(d.into());
        let rat = &self.rat * &rhs.rat + &self.surd * &rhs.surd * dd;
        let surd = &self.rat * &rhs.surd + &self.surd * &rhs.rat;
        Ok(Self::normalised(rat, surd, d))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self.checked_mul(&rhs.inv()?)?)
    }

    /// Multiplicative inverse by rationalising with the conjugate.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.surd.is_zero() {
            return Ok(Self::from_rational(self.rat.recip()));
        }
        let n = self.norm();
        Ok(Self::normalised(&self.rat / &n, -&self.surd / &n, self.disc))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Sign under the real embedding with `sqrt(disc) > 0`.
    pub fn signum(&self) -> Result<Ordering, ScalarError> {
        if self.disc < 0 {
            return Err(ScalarError::UnorderedField(self.disc));
        }
        let sr = sign_of(&self.rat);
        let ss = sign_of(&self.surd);
        if ss == Ordering::Equal {
            return Ok(sr);
        }
        if sr == Ordering::Equal || sr == ss {
            return Ok(if sr == Ordering::Equal { ss } else { sr });
        }
        // Opposite signs: compare rat^2 with disc * surd^2.
        let lhs = &self.rat * &self.rat;
        let rhs = &self.surd * &self.surd * BigRational::from_integer(self.disc.into());
        Ok(match lhs.cmp(&rhs) {
            Ordering::Greater => sr,
            Ordering::Less => ss,
            Ordering::Equal => Ordering::Equal,
        })
    }

    pub fn is_positive(&self) -> Result<bool, ScalarError> {
        Ok(self.signum()? == Ordering::Greater)
    }

    /// Compare under the real embedding; fails for `disc < 0`.
    pub fn cmp_real(&self, other: &Self) -> Result<Ordering, ScalarError> {
        self.checked_sub(other)?.signum()
    }

    /// Deterministic total order: real order when both values embed in the
    /// reals, otherwise lexicographic on `(rat, surd, disc)`.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        match self.cmp_real(other) {
            Ok(o) => o,
            Err(_) => (&self.rat, &self.surd, self.disc).cmp(&(&other.rat, &other.surd, other.disc)),
        }
    }

    /// A square root lying in the same field as `self` (or in `Q(sqrt(d))`
    /// when `self` is rational and the root needs the surd `d`).
    ///
    /// For rational input this is [`sqrt_in_field`] with discriminant
    /// `field_disc`. For `p + q sqrt(d)` with `q != 0` a root `u + w sqrt(d)`
    /// exists iff `p^2 - d q^2` is a rational square `N^2` and one of
    /// `(p +- N) / 2` is a rational square or `d` times one.
    pub fn sqrt(&self, field_disc: i64) -> Option<Scalar> {
        if self.is_rational() {
            return sqrt_in_field(&self.rat, field_disc);
        }
        let d = self.disc;
        if field_disc != 1 && field_disc != d {
            return None;
        }
        let norm = self.norm();
        let n = rational_sqrt(&norm)?;
        let two = BigRational::from_integer(2.into());
        for cand in [(&self.rat + &n) / &two, (&self.rat - &n) / &two] {
            // u^2 = (p +- N) / 2, then w = q / (2u).
            if let Some(u) = rational_sqrt(&cand) {
                if !u.is_zero() {
                    let w = &self.surd / (&two * &u);
                    let root = Scalar::normalised(u, w, d);
                    debug_assert!(&(&root * &root) == self);
                    return Some(canonical_root(root));
                }
            }
        }
        None
    }
}

fn canonical_root(r: Scalar) -> Scalar {
    let neg = match sign_of(&r.rat) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => sign_of(&r.surd) == Ordering::Less,
    };
    if neg {
        -r
    } else {
        r
    }
}

fn sign_of(q: &BigRational) -> Ordering {
    if q.is_positive() {
        Ordering::Greater
    } else if q.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

fn bigint_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Nonnegative rational square root when `q` is a perfect square.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    let num = bigint_sqrt_exact(q.numer())?;
    let den = bigint_sqrt_exact(q.denom())?;
    Some(BigRational::new(num, den))
}

/// A root `r` with `r * r == q` in `Q(sqrt(d))`, if one exists.
///
/// Succeeds when `q = s^2` or `q = d s^2` for rational `s`. The returned
/// root has a positive rational part, or (when that part is zero) a
/// positive surd coefficient.
pub fn sqrt_in_field(q: &BigRational, d: i64) -> Option<Scalar> {
    if let Some(s) = rational_sqrt(q) {
        return Some(Scalar::from_rational(s));
    }
    if d == 1 || d == 0 || !is_squarefree(d) {
        return None;
    }
    let s = rational_sqrt(&(q / BigRational::from_integer(d.into())))?;
    Scalar::surd(s, d).ok()
}

/// The squarefree part of `q`, i.e. the `d` with `q = s^2 d`.
pub fn choose_discriminant(q: &BigRational) -> Result<i64, ScalarError> {
    if q.is_zero() {
        return Err(ScalarError::ZeroInput);
    }
    // p/r = p*r / r^2
    let m = q.numer() * q.denom();
    let sign = if m.sign() == Sign::Minus { -1 } else { 1 };
    let part = squarefree_part(&m.abs());
    part.to_i64()
        .map(|p| sign * p)
        .ok_or(ScalarError::Parse(format!("squarefree part of {q} overflows i64")))
}

fn squarefree_part(n: &BigInt) -> BigInt {
    let mut n = n.clone();
    let mut out = BigInt::one();
    let mut p = BigInt::from(2u32);
    while &p * &p <= n {
        let mut count = 0u32;
        while (&n % &p).is_zero() {
            n /= &p;
            count += 1;
        }
        if count % 2 == 1 {
            out *= &p;
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    out * n
}

pub fn is_squarefree(d: i64) -> bool {
    if d == 0 {
        return false;
    }
    let mut n = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        if n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    true
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if self.surd.is_zero() && rhs.surd.is_zero() {
            self.rat += &rhs.rat;
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if self.surd.is_zero() && rhs.surd.is_zero() {
            self.rat -= &rhs.rat;
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            rat: -self.rat,
            surd: -self.surd,
            disc: self.disc,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::from_rational(q)
    }
}

fn fmt_rat(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    /// `p/q`, `r/s*sqrt(d)` or `p/q+r/s*sqrt(d)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surd.is_zero() {
            return f.write_str(&fmt_rat(&self.rat));
        }
        let surd = if self.surd.is_one() {
            format!("sqrt({})", self.disc)
        } else if (-&self.surd).is_one() {
            format!("-sqrt({})", self.disc)
        } else {
            format!("{}*sqrt({})", fmt_rat(&self.surd), self.disc)
        };
        if self.rat.is_zero() {
            f.write_str(&surd)
        } else if surd.starts_with('-') {
            write!(f, "{}{}", fmt_rat(&self.rat), surd)
        } else {
            write!(f, "{}+{}", fmt_rat(&self.rat), surd)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rat(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let ok = |t: &str| {
        let t = t.strip_prefix(['-', '+']).unwrap_or(t);
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    match s.split_once('/') {
        Some((p, q)) => {
            if !ok(p) || !q.bytes().all(|b| b.is_ascii_digit()) || q.is_empty() {
                return None;
            }
            let p: BigInt = p.parse().ok()?;
            let q: BigInt = q.parse().ok()?;
            (!q.is_zero()).then(|| BigRational::new(p, q))
        }
        None if ok(s) => Some(BigRational::from_integer(s.parse().ok()?)),
        None => None,
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    /// Accepts `p`, `p/q`, `sqrt(d)`, `r/s*sqrt(d)` and `p/q+r/s*sqrt(d)`
    /// (either sign between the parts). Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ScalarError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(sq) = compact.find("sqrt(") else {
            return parse_rat(&compact).map(Scalar::from_rational).ok_or_else(err);
        };
        let close = compact[sq..].find(')').ok_or_else(err)? + sq;
        if close + 1 != compact.len() {
            return Err(err());
        }
        let disc: i64 = compact[sq + 5..close].parse().map_err(|_| err())?;
        let head = &compact[..sq];
        // head is "", "-", "+", "<coef>*", "<rat>+<coef>*", "<rat>-", ...
        let (head, explicit_coef) = match head.strip_suffix('*') {
            Some(h) => (h, true),
            None => (head, false),
        };
        // Find the split between rational part and surd coefficient: the last
        // sign character that is not at position 0 and not right after '/'.
        let bytes = head.as_bytes();
        let mut split = None;
        for (i, &b) in bytes.iter().enumerate().rev() {
            if (b == b'+' || b == b'-') && i > 0 && bytes[i - 1] != b'/' {
                split = Some(i);
                break;
            }
        }
        let (rat_str, coef_str) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("", head),
        };
        let rat = if rat_str.is_empty() {
            BigRational::zero()
        } else {
            parse_rat(rat_str).ok_or_else(err)?
        };
        let coef = if explicit_coef {
            parse_rat(coef_str).ok_or_else(err)?
        } else {
            match coef_str {
                "" | "+" => BigRational::one(),
                "-" => -BigRational::one(),
                _ => return Err(err()),
            }
        };
        Scalar::new(rat, coef, disc)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
