//! Exact scalar fields: the rationals, prime fields and `Q(√5)`.
//!
//! The generic linear algebra in [`crate::linalg`] is written against the
//! [`Field`] trait. [`FieldElement`] is the dynamically tagged value used at
//! the I/O boundary, where one matroid file carries one field.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("mixed field variants: {0} and {1}")]
    Mixed(FieldKind, FieldKind),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {input:?} as an element of {field}")]
    Parse { input: String, field: FieldKind },
    #[error("unknown field {0:?} (expected Q, Qsqrt5, F<p> or Fp:<p>)")]
    UnknownField(String),
    #[error("{0} is not a prime below 2^31")]
    BadModulus(u64),
    #[error("the field {0} carries no order")]
    Unordered(FieldKind),
}

/// Arithmetic needed by exact elimination. Constants are produced from an
/// existing element so that prime-field values can carry their modulus.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    /// `self - a * b`, the elimination kernel.
    fn sub_mul(&self, a: &Self, b: &Self) -> Self {
        self.sub(&a.mul(b))
    }
}

impl Field for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

/// Residue modulo a prime `p < 2^31`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        let m = modulus as i64;
        Fp { value: value.rem_euclid(m) as u64, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.value;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.modulus;
            }
            base = base * base % self.modulus;
            e >>= 1;
        }
        Fp { value: acc, modulus: self.modulus }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl Field for Fp {
    fn zero_like(&self) -> Self {
        Fp { value: 0, modulus: self.modulus }
    }
    fn one_like(&self) -> Self {
        Fp { value: 1 % self.modulus, modulus: self.modulus }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp { value: (self.value + rhs.value) % self.modulus, modulus: self.modulus }
    }
    fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp { value: (self.value + self.modulus - rhs.value) % self.modulus, modulus: self.modulus }
    }
    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp { value: self.value * rhs.value % self.modulus, modulus: self.modulus }
    }
    fn neg(&self) -> Self {
        Fp { value: (self.modulus - self.value) % self.modulus, modulus: self.modulus }
    }
    fn inv(&self) -> Option<Self> {
        (self.value != 0).then(|| self.pow(self.modulus - 2))
    }
}

/// `a + b√5` with rational `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadSqrt5 {
    pub a: BigRational,
    pub b: BigRational,
}

impl QuadSqrt5 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadSqrt5 { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        QuadSqrt5 { a: BigRational::from_integer(a.into()), b: BigRational::from_integer(b.into()) }
    }

    pub fn rational(a: BigRational) -> Self {
        QuadSqrt5 { a, b: BigRational::zero() }
    }

    /// The golden ratio `(1 + √5) / 2`.
    pub fn golden() -> Self {
        let half = BigRational::new(1.into(), 2.into());
        QuadSqrt5 { a: half.clone(), b: half }
    }

    pub fn conjugate(&self) -> Self {
        QuadSqrt5 { a: self.a.clone(), b: -&self.b }
    }

    /// `a² - 5b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(5.into()) * &self.b * &self.b
    }

    /// Sign of the real number `a + b√5` with `√5 > 0`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            _ => {
                // opposite signs: the larger of a² and 5b² wins
                let a2 = &self.a * &self.a;
                let b2 = BigRational::from_integer(5.into()) * &self.b * &self.b;
                match a2.cmp(&b2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }
}

impl fmt::Debug for QuadSqrt5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_quad(self))
    }
}

impl PartialOrd for QuadSqrt5 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadSqrt5 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sub(other).signum()
    }
}

impl Field for QuadSqrt5 {
    fn zero_like(&self) -> Self {
        QuadSqrt5::from_ints(0, 0)
    }
    fn one_like(&self) -> Self {
        QuadSqrt5::from_ints(1, 0)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn add(&self, rhs: &Self) -> Self {
        QuadSqrt5 { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
    fn sub(&self, rhs: &Self) -> Self {
        QuadSqrt5 { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
    fn mul(&self, rhs: &Self) -> Self {
        let five = BigRational::from_integer(5.into());
        QuadSqrt5 {
            a: &self.a * &rhs.a + five * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
    fn neg(&self) -> Self {
        QuadSqrt5 { a: -&self.a, b: -&self.b }
    }
    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        // a² - 5b² ≠ 0 since √5 is irrational
        let n = self.norm();
        Some(QuadSqrt5 { a: &self.a / &n, b: -&self.b / &n })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    Rational,
    Prime(u64),
    QuadSqrt5,
}

impl FieldKind {
    /// Number of elements, `None` for infinite fields.
    pub fn order(self) -> Option<u64> {
        match self {
            FieldKind::Prime(p) => Some(p),
            _ => None,
        }
    }

    pub fn zero(self) -> FieldElement {
        self.from_int(0)
    }

    pub fn one(self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(self, n: i64) -> FieldElement {
        match self {
            FieldKind::Rational => FieldElement::Rational(BigRational::from_integer(n.into())),
            FieldKind::Prime(p) => FieldElement::Prime(Fp::new(n, p)),
            FieldKind::QuadSqrt5 => FieldElement::Quad(QuadSqrt5::from_ints(n, 0)),
        }
    }

    /// The `t`-th element (0-based) of the canonical enumeration of nonzero
    /// field elements: `1, 2, 3, ...` for every field, running through
    /// `1..p-1` for `F_p`. Returns `None` once a finite field is exhausted.
    pub fn nth_nonzero(self, t: usize) -> Option<FieldElement> {
        match self {
            FieldKind::Prime(p) if (t as u64) + 1 >= p => None,
            _ => Some(self.from_int(t as i64 + 1)),
        }
    }

    pub fn parse_element(self, s: &str) -> Result<FieldElement, FieldError> {
        let err = || FieldError::Parse { input: s.to_string(), field: self };
        let s = s.trim();
        match self {
            FieldKind::Rational => parse_rational(s).map(FieldElement::Rational).ok_or_else(err),
            FieldKind::Prime(p) => {
                let n = s.parse::<i64>().map_err(|_| err())?;
                Ok(FieldElement::Prime(Fp::new(n, p)))
            }
            FieldKind::QuadSqrt5 => parse_quad(s).map(FieldElement::Quad).ok_or_else(err),
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "Fp:{p}"),
            FieldKind::QuadSqrt5 => write!(f, "Qsqrt5"),
        }
    }
}

impl FromStr for FieldKind {
    type Err = FieldError;

    /// Accepts `Q`, `Qsqrt5`, `Fp:<p>` and the shorthand `F<p>`.
    fn from_str(s: &str) -> Result<Self, FieldError> {
        let s = s.trim();
        match s {
            "Q" => return Ok(FieldKind::Rational),
            "Qsqrt5" => return Ok(FieldKind::QuadSqrt5),
            _ => {}
        }
        let digits = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix('F'))
            .ok_or_else(|| FieldError::UnknownField(s.to_string()))?;
        let p: u64 = digits.parse().map_err(|_| FieldError::UnknownField(s.to_string()))?;
        if p >= 1 << 31 || !is_prime(p) {
            return Err(FieldError::BadModulus(p));
        }
        Ok(FieldKind::Prime(p))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    (!d.is_zero()).then(|| BigRational::new(n, d))
}

/// Grammar: `a`, `bw`, `a+bw`, `a-bw` where `a`, `b` are rationals and the
/// coefficient `b` may be omitted (`w`, `-w`, `1+w`).
fn parse_quad(s: &str) -> Option<QuadSqrt5> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = s.strip_suffix('w') else {
        return parse_rational(&s).map(QuadSqrt5::rational);
    };
    // split at the last sign that is not leading
    let split = body.char_indices().rev().find(|&(i, c)| i > 0 && (c == '+' || c == '-')).map(|(i, _)| i);
    let (a, b) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let b = match b {
        "" | "+" => "1",
        "-" => "-1",
        other => other.strip_prefix('+').unwrap_or(other),
    };
    Some(QuadSqrt5::new(parse_rational(a)?, parse_rational(b)?))
}

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn format_quad(q: &QuadSqrt5) -> String {
    if Zero::is_zero(&q.b) {
        return format_rational(&q.a);
    }
    let coeff = |b: &BigRational| -> String {
        if One::is_one(&b.abs()) {
            String::new()
        } else {
            format_rational(&b.abs())
        }
    };
    let sign = if q.b.is_negative() { "-" } else { "+" };
    if Zero::is_zero(&q.a) {
        let lead = if q.b.is_negative() { "-" } else { "" };
        format!("{lead}{}w", coeff(&q.b))
    } else {
        format!("{}{sign}{}w", format_rational(&q.a), coeff(&q.b))
    }
}

/// A tagged field element as read from or written to matroid files.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Prime(Fp),
    Quad(QuadSqrt5),
}

impl FieldElement {
    pub fn kind(&self) -> FieldKind {
        match self {
            FieldElement::Rational(_) => FieldKind::Rational,
            FieldElement::Prime(x) => FieldKind::Prime(x.modulus),
            FieldElement::Quad(_) => FieldKind::QuadSqrt5,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(x) => Zero::is_zero(x),
            FieldElement::Prime(x) => x.value == 0,
            FieldElement::Quad(x) => Field::is_zero(x),
        }
    }

    fn same_kind(&self, other: &Self) -> Result<(), FieldError> {
        if self.kind() == other.kind() {
            Ok(())
        } else {
            Err(FieldError::Mixed(self.kind(), other.kind()))
        }
    }

    fn binop(
        &self,
        rhs: &Self,
        r: impl Fn(&BigRational, &BigRational) -> BigRational,
        p: impl Fn(&Fp, &Fp) -> Fp,
        q: impl Fn(&QuadSqrt5, &QuadSqrt5) -> QuadSqrt5,
    ) -> Result<Self, FieldError> {
        self.same_kind(rhs)?;
        Ok(match (self, rhs) {
            (FieldElement::Rational(x), FieldElement::Rational(y)) => FieldElement::Rational(r(x, y)),
            (FieldElement::Prime(x), FieldElement::Prime(y)) => FieldElement::Prime(p(x, y)),
            (FieldElement::Quad(x), FieldElement::Quad(y)) => FieldElement::Quad(q(x, y)),
            _ => unreachable!(),
        })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, FieldError> {
        self.binop(rhs, |x, y| x + y, |x, y| x.add(y), |x, y| x.add(y))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, FieldError> {
        self.binop(rhs, |x, y| x - y, |x, y| x.sub(y), |x, y| x.sub(y))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, FieldError> {
        self.binop(rhs, |x, y| x * y, |x, y| x.mul(y), |x, y| x.mul(y))
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self, FieldError> {
        self.same_kind(rhs)?;
        if rhs.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        self.binop(rhs, |x, y| x / y, |x, y| x.div(y).unwrap(), |x, y| x.div(y).unwrap())
    }

    pub fn negated(&self) -> Self {
        match self {
            FieldElement::Rational(x) => FieldElement::Rational(-x),
            FieldElement::Prime(x) => FieldElement::Prime(Field::neg(x)),
            FieldElement::Quad(x) => FieldElement::Quad(Field::neg(x)),
        }
    }

    /// Sign relative to zero; prime fields are unordered.
    pub fn signum(&self) -> Result<Ordering, FieldError> {
        match self {
            FieldElement::Rational(x) => Ok(x.cmp(&BigRational::zero())),
            FieldElement::Quad(x) => Ok(x.signum()),
            FieldElement::Prime(x) => Err(FieldError::Unordered(FieldKind::Prime(x.modulus))),
        }
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, FieldError> {
        self.try_sub(other)?.signum()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(x) => Some(x),
            _ => None,
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        match self {
            FieldElement::Rational(x) if x.is_integer() => x.numer().to_i64(),
            FieldElement::Prime(x) => Some(x.value as i64),
            FieldElement::Quad(x) if Zero::is_zero(&x.b) && x.a.is_integer() => x.a.numer().to_i64(),
            _ => None,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(x) => write!(f, "{}", format_rational(x)),
            FieldElement::Prime(x) => write!(f, "{}", x.value),
            FieldElement::Quad(x) => write!(f, "{}", format_quad(x)),
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Least common multiple of the denominators, used to clear fractions.
pub fn denominator_lcm<'a>(xs: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}
