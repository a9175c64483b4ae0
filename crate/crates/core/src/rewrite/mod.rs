//! Spin-operator expressions and their normal form.
//!
//! Expressions are noncommutative polynomials in `S1, S2, S3`. The normal
//! form in dimension `D` is a combination of ordered monomials
//! `S1^a S2^b S3^c` with `a + b + c <= D - 1` and `c <= 1`: ordering uses the
//! commutation relations, the degree cap uses the reduction identity and
//! the Casimir `S1^2 + S2^2 + S3^2 = s(s+1)` removes repeated `S3`. These
//! `D^2` monomials map to a basis of the `D x D` matrices, so two
//! expressions agree as operators in dimension `D` exactly when their
//! normal forms coincide.

mod parse;
mod print;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use thiserror::Error;

use crate::charid::{build_identity, CharIdError, Identity};
use crate::scalar::{Radical, Rational, Scalar};
use crate::spinrep::{epsilon, Matrix, SpinRep};
use crate::symalg::{gen_delta, IndexMultiset};

pub use parse::{parse, ParseError};
pub use print::{render, render_normal_form, Format, PolynomialJson, TermJson};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("normal form needs dimension at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error(transparent)]
    CharId(#[from] CharIdError),
}

/// Product of generators, letters in `1..=3`. Ordered by degree first,
/// then lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Self {
        Self(letters)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_ordered(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Self(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Linear combination of words with nonzero scalar coefficients. The empty
/// word is the identity operator.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NCPolynomial {
    terms: BTreeMap<Word, Scalar>,
}

impl NCPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::monomial(Word::empty(), c)
    }

    pub fn generator(axis: u8) -> Self {
        Self::monomial(Word(vec![axis]), Scalar::one())
    }

    pub fn monomial(w: Word, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn word(letters: &[u8]) -> Self {
        Self::monomial(Word(letters.to_vec()), Scalar::one())
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        add_into(&mut self.terms, w, c);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing graded order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::degree)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        for (w, a) in &self.terms {
            out.add_term(w.clone(), a * c);
        }
        out
    }

    /// Symmetric product: sum over all `n!` orderings of the given
    /// generators, repeats counted.
    pub fn symmetric(letters: &[u8]) -> Self {
        let mut out = Self::zero();
        for (w, mult) in symmetric_words(letters) {
            out.add_term(w, mult);
        }
        out
    }

    pub fn commutator(a: &Self, b: &Self) -> Self {
        &(a * b) - &(b * a)
    }
}

fn add_into(map: &mut BTreeMap<Word, Scalar>, w: Word, c: Scalar) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match map.entry(w) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Distinct orderings of `letters`, each with its multiplicity among the
/// `n!` permutations.
fn symmetric_words(letters: &[u8]) -> Vec<(Word, Scalar)> {
    let ms = IndexMultiset::from_axes(letters);
    let weight: BigInt = ms
        .counts()
        .iter()
        .flat_map(|&c| 1..=c)
        .map(BigInt::from)
        .product();
    let mut out = Vec::new();
    let mut counts = ms.counts();
    let mut cur = Vec::with_capacity(letters.len());
    distinct_orderings(&mut counts, &mut cur, letters.len(), &mut out);
    let w = Scalar::from_rational(Rational::from_integer(weight));
    out.into_iter().map(|v| (Word(v), w.clone())).collect()
}

fn distinct_orderings(
    counts: &mut [usize; 3],
    cur: &mut Vec<u8>,
    n: usize,
    out: &mut Vec<Vec<u8>>,
) {
    if cur.len() == n {
        out.push(cur.clone());
        return;
    }
    for k in 0..3 {
        if counts[k] > 0 {
            counts[k] -= 1;
            cur.push(k as u8 + 1);
            distinct_orderings(counts, cur, n, out);
            cur.pop();
            counts[k] += 1;
        }
    }
}

impl<'a> Add<&'a NCPolynomial> for &'a NCPolynomial {
    type Output = NCPolynomial;
    fn add(self, rhs: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a NCPolynomial> for &'a NCPolynomial {
    type Output = NCPolynomial;
    fn sub(self, rhs: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a NCPolynomial> for &'a NCPolynomial {
    type Output = NCPolynomial;
    fn mul(self, rhs: &NCPolynomial) -> NCPolynomial {
        let mut out = NCPolynomial::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }
}

impl Neg for &NCPolynomial {
    type Output = NCPolynomial;
    fn neg(self) -> NCPolynomial {
        self.scale(&-Scalar::one())
    }
}

/// Index of the leftmost adjacent pair `S_j S_i` with `j > i`.
fn first_descent(w: &[u8]) -> Option<usize> {
    w.windows(2).position(|p| p[0] > p[1])
}

/// Rewrites into ordered words using `S_j S_i = S_i S_j - i sum_k eps_ijk S_k`.
/// Uses only the commutation relations, so the result is operator-equal to
/// the input in every dimension.
pub fn pbw_normalize(p: &NCPolynomial) -> NCPolynomial {
    let mut pending = p.terms.clone();
    let mut out = NCPolynomial::zero();
    // Rewriting only produces smaller words, so each popped maximum is final.
    while let Some((w, c)) = pending.pop_last() {
        let Some(k) = first_descent(&w.0) else {
            out.terms.insert(w, c);
            continue;
        };
        let (j, i) = (w.0[k], w.0[k + 1]);
        let mut swapped = w.0.clone();
        swapped.swap(k, k + 1);
        add_into(&mut pending, Word(swapped), c.clone());

        let l = 6 - i - j;
        let e = epsilon(i, j, l);
        let mut lower = w.0[..k].to_vec();
        lower.push(l);
        lower.extend_from_slice(&w.0[k + 2..]);
        let factor = Scalar::imag(Radical::from_rational(Rational::from_integer((-e).into())));
        add_into(&mut pending, Word(lower), &c * &factor);
    }
    out
}

/// Ordered polynomial in the `D^2`-element monomial basis of dimension `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub dim: usize,
    pub poly: NCPolynomial,
}

impl NormalForm {
    /// The basis monomials `S1^a S2^b S3^c` with `c <= 1`, `a + b + c < D`.
    pub fn basis(dim: usize) -> Vec<Word> {
        let mut out = Vec::new();
        for deg in 0..dim {
            for c in 0..=deg.min(1) {
                for a in (0..=deg - c).rev() {
                    let b = deg - c - a;
                    let mut v = vec![1u8; a];
                    v.extend(std::iter::repeat_n(2u8, b));
                    v.extend(std::iter::repeat_n(3u8, c));
                    out.push(Word(v));
                }
            }
        }
        out.sort();
        out
    }

    pub fn is_normal_word(dim: usize, w: &Word) -> bool {
        w.is_ordered() && w.degree() < dim && w.0.iter().filter(|&&a| a == 3).count() <= 1
    }
}

/// Rewrites `p` to its normal form in dimension `dim`.
///
/// Words are processed from the largest down. An ordered word of degree
/// `>= D` is split as `u v` with `u` its first `D` letters, and
/// `u = (1/D!){u} + (u - (1/D!){u})`: the symmetric product is lowered by
/// the reduction identity, and the remainder has lower degree once
/// reordered. A word with two or more `S3` has its trailing `S3 S3`
/// replaced by `s(s+1) - S1 S1 - S2 S2`.
pub fn reduce_degree(p: &NCPolynomial, dim: usize) -> Result<NormalForm, RewriteError> {
    if dim < 2 {
        return Err(RewriteError::DimensionTooSmall(dim));
    }
    let reducer = Reducer::new(dim)?;
    let mut pending = pbw_normalize(p).terms;
    let mut out = NCPolynomial::zero();
    while let Some((w, c)) = pending.pop_last() {
        let replacement = if w.degree() >= dim {
            reducer.lower_degree(&w)
        } else if w.0.iter().filter(|&&a| a == 3).count() >= 2 {
            reducer.remove_s3_square(&w)
        } else {
            out.terms.insert(w, c);
            continue;
        };
        for (v, a) in pbw_normalize(&replacement).terms {
            debug_assert!(v < w, "rewriting must decrease words");
            add_into(&mut pending, v, &a * &c);
        }
    }
    Ok(NormalForm { dim, poly: out })
}

struct Reducer {
    dim: usize,
    identity: Identity,
    inv_factorial: Rational,
    casimir: Rational,
}

impl Reducer {
    fn new(dim: usize) -> Result<Self, RewriteError> {
        let factorial: BigInt = (1..=dim).map(BigInt::from).product();
        let s = Rational::new(BigInt::from(dim - 1), BigInt::from(2));
        Ok(Self {
            dim,
            identity: build_identity(dim)?,
            inv_factorial: Rational::from_integer(factorial).recip(),
            casimir: &s * (&s + Rational::from_integer(1.into())),
        })
    }

    /// Expression equal to the ordered word `w` (degree `>= D`) with `w`
    /// itself cancelling after reordering.
    fn lower_degree(&self, w: &Word) -> NCPolynomial {
        let u = &w.0[..self.dim];
        let v = NCPolynomial::word(&w.0[self.dim..]);
        let scale = Scalar::from_rational(self.inv_factorial.clone());

        // u - (1/D!) {u}
        let mut remainder = NCPolynomial::word(u);
        let sym = NCPolynomial::symmetric(u);
        remainder = &remainder - &sym.scale(&scale);

        // (1/D!) {u} = -(1/D!) sum_p b_p sum_P delta(u_P) {u outside P}
        let mut lowered = NCPolynomial::zero();
        for level in &self.identity.levels()[1..] {
            for (k, subset) in level.subsets.iter().enumerate() {
                let delta_idx: Vec<u8> = subset.iter().map(|&i| u[i]).collect();
                let delta = gen_delta(&delta_idx).expect("even subset");
                if delta == 0 {
                    continue;
                }
                let rest: Vec<u8> = level
                    .complement(self.dim, k)
                    .iter()
                    .map(|&i| u[i])
                    .collect();
                let coeff = -(&level.coefficient
                    * Rational::from_integer(delta.into())
                    * &self.inv_factorial);
                lowered =
                    &lowered + &NCPolynomial::symmetric(&rest).scale(&Scalar::from_rational(coeff));
            }
        }
        &(&remainder + &lowered) * &v
    }

    /// `x S3 S3 -> x (s(s+1) - S1 S1 - S2 S2)` for an ordered word ending in
    /// at least two `S3`.
    fn remove_s3_square(&self, w: &Word) -> NCPolynomial {
        let n = w.degree();
        let x = NCPolynomial::word(&w.0[..n - 2]);
        let mut tail = NCPolynomial::scalar(Scalar::from_rational(self.casimir.clone()));
        tail = &tail - &NCPolynomial::word(&[1, 1]);
        tail = &tail - &NCPolynomial::word(&[2, 2]);
        &x * &tail
    }
}

/// Substitutes the generators of `rep` and sums exactly.
pub fn evaluate(p: &NCPolynomial, rep: &SpinRep) -> Matrix {
    let mut acc = Matrix::zeros(rep.dim());
    for (w, c) in &p.terms {
        let m =
            w.0.iter()
                .fold(Matrix::identity(rep.dim()), |m, &a| m.mul(rep.generator(a)));
        acc.add_scaled(&m, c);
    }
    acc
}
