//! Exact arithmetic in `Q(i, sqrt(2), sqrt(3), ...)`.
//!
//! A [`Radical`] is a finite sum `sum_m q_m * sqrt(m)` over squarefree
//! radicands `m` with rational coefficients, and a [`Scalar`] is a pair of
//! radicals `re + i * im`. Both are kept in canonical form at all times, so
//! equality is structural.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

/// Radicands are products of distinct primes; `u128` leaves ample headroom
/// for every dimension this crate is used with.
pub type Radicand = u128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot invert {0}: only Gaussian rationals are invertible")]
    UnsupportedInverse(String),
    #[error("square root of negative rational {0}")]
    NegativeSqrt(String),
    #[error("radicand of sqrt({0}) is too large")]
    RadicandOverflow(String),
}

/// Shorthand for the rational `n/d`. Panics when `d == 0`.
pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Splits `n` into `(k, m)` with `n = k^2 * m` and `m` squarefree.
pub fn split_square(mut n: Radicand) -> (Radicand, Radicand) {
    if n == 0 {
        return (0, 0);
    }
    let mut root = 1;
    let mut free = 1;
    let mut f: Radicand = 2;
    while f * f <= n {
        let mut e = 0;
        while n.is_multiple_of(f) {
            n /= f;
            e += 1;
        }
        for _ in 0..e / 2 {
            root *= f;
        }
        if e % 2 == 1 {
            free *= f;
        }
        f += if f == 2 { 1 } else { 2 };
    }
    (root, free * n)
}

pub fn is_squarefree(n: Radicand) -> bool {
    n != 0 && split_square(n).0 == 1
}

fn gcd(a: Radicand, b: Radicand) -> Radicand {
    a.gcd(&b)
}

/// Finite sum of rational multiples of square roots of squarefree integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Radical {
    terms: BTreeMap<Radicand, Rational>,
}

impl Radical {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut r = Self::zero();
        r.add_term(1, q);
        r
    }

    /// `q * sqrt(m)`, reducing `m` to its squarefree part.
    pub fn term(q: Rational, m: Radicand) -> Self {
        let mut r = Self::zero();
        r.add_term(m, q);
        r
    }

    /// Builds a radical from arbitrary (possibly non-squarefree, repeated)
    /// radicands and canonicalizes.
    pub fn from_terms<I: IntoIterator<Item = (Radicand, Rational)>>(terms: I) -> Self {
        let mut r = Self::zero();
        for (m, q) in terms {
            r.add_term(m, q);
        }
        r
    }

    fn add_term(&mut self, m: Radicand, q: Rational) {
        if q.is_zero() || m == 0 {
            return;
        }
        let (root, free) = if is_squarefree(m) {
            (1, m)
        } else {
            split_square(m)
        };
        let q = if root == 1 {
            q
        } else {
            q * Rational::from_integer(BigInt::from(root))
        };
        self.accumulate(free, q);
    }

    // `free` must already be squarefree.
    fn accumulate(&mut self, free: Radicand, q: Rational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(free) {
            Entry::Vacant(e) => {
                e.insert(q);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += q;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates over `(radicand, coefficient)` pairs in increasing radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (Radicand, &Rational)> {
        self.terms.iter().map(|(m, q)| (*m, q))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(q)` when the value is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, c)| (*m, c * q)).collect(),
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&m, a) in &self.terms {
            for (&n, b) in &other.terms {
                // m = g*m', n = g*n' with m', n' coprime and squarefree, so
                // sqrt(m)*sqrt(n) = g*sqrt(m'n') with m'n' squarefree.
                let g = gcd(m, n);
                let free = (m / g)
                    .checked_mul(n / g)
                    .expect("radicand overflow in radical product");
                let coeff = a * b * Rational::from_integer(BigInt::from(g));
                out.accumulate(free, coeff);
            }
        }
        out
    }

    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&m, q) in &other.terms {
            out.accumulate(m, q.clone());
        }
        out
    }

    fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&m, q) in &other.terms {
            out.accumulate(m, -q.clone());
        }
        out
    }

    fn neg_ref(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, q)| (*m, -q.clone())).collect(),
        }
    }

    /// Rational coefficient of `sqrt(m)` (zero when absent).
    pub fn coefficient(&self, m: Radicand) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }
}

/// Returns `r` with `r * r == q`, for `q >= 0`.
pub fn sqrt_of_rational(q: &Rational) -> Result<Radical, ScalarError> {
    if q.is_negative() {
        return Err(ScalarError::NegativeSqrt(q.to_string()));
    }
    if q.is_zero() {
        return Ok(Radical::zero());
    }
    // sqrt(p/d) = sqrt(p*d)/d
    let denom = q.denom().clone();
    let product = (q.numer() * &denom).to_biguint().expect("nonnegative");
    let root = product.sqrt();
    if &root * &root == product {
        let value = Rational::new(BigInt::from_biguint(Sign::Plus, root), denom);
        return Ok(Radical::from_rational(value));
    }
    let small: Radicand = product
        .to_u128()
        .ok_or_else(|| ScalarError::RadicandOverflow(q.to_string()))?;
    let (k, m) = split_square(small);
    let coeff = Rational::new(BigInt::from(k), denom);
    Ok(Radical::term(coeff, m))
}

/// Square root of a nonnegative integer.
pub fn sqrt_of_integer(n: &BigUint) -> Result<Radical, ScalarError> {
    sqrt_of_rational(&Rational::from_integer(BigInt::from_biguint(
        Sign::Plus,
        n.clone(),
    )))
}

/// `re + i * im` with radical parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Scalar {
    pub re: Radical,
    pub im: Radical,
}

impl Scalar {
    pub fn new(re: Radical, im: Radical) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn i() -> Self {
        Self::new(Radical::zero(), Radical::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::new(Radical::from_rational(q), Radical::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(integer(n))
    }

    pub fn real(re: Radical) -> Self {
        Self::new(re, Radical::zero())
    }

    pub fn imag(im: Radical) -> Self {
        Self::new(Radical::zero(), im)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.im.is_zero() && self.re.as_rational().is_some_and(|q| q.is_one())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), self.im.neg_ref())
    }

    /// `|z|^2 = re^2 + im^2`.
    pub fn norm_sqr(&self) -> Radical {
        self.re
            .mul_ref(&self.re)
            .add_ref(&self.im.mul_ref(&self.im))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(self.re.scale(q), self.im.scale(q))
    }

    /// `Some(q)` for a real rational value.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.im.is_zero() {
            self.re.as_rational()
        } else {
            None
        }
    }

    /// Number of `(part, radicand)` terms.
    pub fn term_count(&self) -> usize {
        self.re.len() + self.im.len()
    }

    /// Inverse of a nonzero Gaussian rational `a + b i`.
    pub fn inverse(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let (Some(a), Some(b)) = (self.re.as_rational(), self.im.as_rational()) else {
            return Err(ScalarError::UnsupportedInverse(self.to_string()));
        };
        let n = &a * &a + &b * &b;
        Ok(Self::new(
            Radical::from_rational(a / &n),
            Radical::from_rational(-b / n),
        ))
    }

    /// Rational coordinates over the basis `{sqrt(m), i*sqrt(m)}`: each
    /// entry is `(is_imaginary, radicand, coefficient)`.
    pub fn coordinates(&self) -> impl Iterator<Item = (bool, Radicand, &Rational)> {
        self.re
            .terms()
            .map(|(m, q)| (false, m, q))
            .chain(self.im.terms().map(|(m, q)| (true, m, q)))
    }

    /// LaTeX rendering, e.g. `\frac{1}{2}\sqrt{3} i`.
    pub fn to_latex(&self) -> String {
        let mut out = String::new();
        for (imag, m, q) in self.coordinates() {
            let body = latex_term(q.abs(), m, imag);
            if out.is_empty() {
                if q.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if q.is_negative() { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn latex_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

fn latex_term(q: Rational, m: Radicand, imag: bool) -> String {
    let mut parts = Vec::new();
    if !q.is_one() || (m == 1 && !imag) {
        parts.push(latex_rational(&q));
    }
    if m != 1 {
        parts.push(format!("\\sqrt{{{m}}}"));
    }
    if imag {
        parts.push("i".to_string());
    }
    parts.join(" ")
}

/// Plain rendering of one unsigned term: `p/q*sqrt(m)*i` with unit
/// factors dropped.
fn plain_term(q: &Rational, m: Radicand, imag: bool) -> String {
    let mut parts = Vec::new();
    if !q.is_one() || (m == 1 && !imag) {
        parts.push(q.to_string());
    }
    if m != 1 {
        parts.push(format!("sqrt({m})"));
    }
    if imag {
        parts.push("i".to_string());
    }
    parts.join("*")
}

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Scalar::real(self.clone()).fmt(f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (imag, m, q) in self.coordinates() {
            let body = plain_term(&q.abs(), m, imag);
            match (first, q.is_negative()) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl From<Radical> for Scalar {
    fn from(r: Radical) -> Self {
        Self::real(r)
    }
}

impl<'a> Add<&'a Radical> for &'a Radical {
    type Output = Radical;
    fn add(self, rhs: &Radical) -> Radical {
        self.add_ref(rhs)
    }
}

impl<'a> Sub<&'a Radical> for &'a Radical {
    type Output = Radical;
    fn sub(self, rhs: &Radical) -> Radical {
        self.sub_ref(rhs)
    }
}

impl<'a> Mul<&'a Radical> for &'a Radical {
    type Output = Radical;
    fn mul(self, rhs: &Radical) -> Radical {
        self.mul_ref(rhs)
    }
}

impl Neg for &Radical {
    type Output = Radical;
    fn neg(self) -> Radical {
        self.neg_ref()
    }
}

impl Add for Radical {
    type Output = Radical;
    fn add(self, rhs: Radical) -> Radical {
        self.add_ref(&rhs)
    }
}

impl Mul for Radical {
    type Output = Radical;
    fn mul(self, rhs: Radical) -> Radical {
        self.mul_ref(&rhs)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(self.re.add_ref(&rhs.re), self.im.add_ref(&rhs.im))
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(self.re.sub_ref(&rhs.re), self.im.sub_ref(&rhs.im))
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        // (a + bi)(c + di) = (ac - bd) + (ad + bc)i
        let re = self.re.mul_ref(&rhs.re).sub_ref(&self.im.mul_ref(&rhs.im));
        let im = self.re.mul_ref(&rhs.im).add_ref(&self.im.mul_ref(&rhs.re));
        Scalar::new(re, im)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(self.re.neg_ref(), self.im.neg_ref())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (&m, q) in &rhs.re.terms {
            self.re.accumulate(m, q.clone());
        }
        for (&m, q) in &rhs.im.terms {
            self.im.accumulate(m, q.clone());
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (&m, q) in &rhs.re.terms {
            self.re.accumulate(m, -q.clone());
        }
        for (&m, q) in &rhs.im.terms {
            self.im.accumulate(m, -q.clone());
        }
    }
}
