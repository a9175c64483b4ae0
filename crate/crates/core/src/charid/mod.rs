//! Characteristic-equation coefficients, power sums and the general
//! reduction identity for symmetric products of `D` spin matrices.
//!
//! In dimension `D` every generator satisfies
//! `S^D + sum_{p=1}^{D/2} a_p S^{D-2p} = 0`, and the completely symmetric
//! product of `D` generators reduces to lower symmetric products with
//! coefficients `b_p = 2^p p! a_p`.

mod identity;
mod verify;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::scalar::{integer, rational, Rational};
use crate::spinrep::{eigenvalue_list, MatrixError};

pub use identity::{build_identity, Identity, IdentityJson, Level, LevelJson, Normalization};
pub use verify::{
    discover_identity, identity_lhs, verify_identity, verify_identity_jobs, Failure,
    VerificationReport, VerifyMode,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharIdError {
    #[error("dimension {dim} is too small (need at least {min})")]
    DimensionTooSmall { dim: usize, min: usize },
    #[error("{0}")]
    Domain(String),
    #[error("linear system for the identity coefficients is inconsistent")]
    Inconsistent,
    #[error("identity coefficients are not unique (rank {rank} < {unknowns})")]
    Underdetermined { rank: usize, unknowns: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

fn require_dim(dim: usize, min: usize) -> Result<(), CharIdError> {
    if dim < min {
        Err(CharIdError::DimensionTooSmall { dim, min })
    } else {
        Ok(())
    }
}

/// Coefficients `a_1 .. a_{floor(D/2)}` of the monic characteristic
/// equation `x^D + sum_p a_p x^(D-2p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharCoeffs {
    pub dim: usize,
    pub a: Vec<Rational>,
}

impl CharCoeffs {
    /// Value of the characteristic polynomial at `x`.
    pub fn evaluate(&self, x: &Rational) -> Rational {
        let mut total = pow(x, self.dim);
        for (p, a) in self.a.iter().enumerate() {
            total += a * pow(x, self.dim - 2 * (p + 1));
        }
        total
    }

    /// Coefficients scaled to coprime integers, highest power first,
    /// including the zero coefficients of the odd (or even) powers that
    /// never appear.
    pub fn integral_dense(&self) -> Vec<BigInt> {
        let mut coeffs = vec![Rational::one()];
        for a in &self.a {
            coeffs.push(Rational::zero());
            coeffs.push(a.clone());
        }
        if self.dim % 2 == 1 {
            coeffs.push(Rational::zero());
        }
        let lcd = coeffs.iter().fold(BigInt::one(), |acc, q| {
            num_integer::lcm(acc, q.denom().clone())
        });
        coeffs
            .iter()
            .map(|q| (q * Rational::from_integer(lcd.clone())).to_integer())
            .collect()
    }
}

fn pow(x: &Rational, e: usize) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * x)
}

/// Expands `prod (x^2 - lambda^2)` over the positive eigenvalues (times `x`
/// for odd `D`).
pub fn char_coeffs(dim: usize) -> Result<CharCoeffs, CharIdError> {
    require_dim(dim, 2)?;
    let squares: Vec<Rational> = eigenvalue_list(dim)?
        .into_iter()
        .filter(|l| l.is_positive())
        .map(|l| &l * &l)
        .collect();
    // poly[k] is the coefficient of y^(m-k), y = x^2
    let mut poly = vec![Rational::one()];
    for sq in &squares {
        let mut next = poly.clone();
        next.push(Rational::zero());
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] -= c * sq;
        }
        poly = next;
    }
    Ok(CharCoeffs {
        dim,
        a: poly.into_iter().skip(1).collect(),
    })
}

/// `b_p = 2^p p! a_p`.
pub fn b_coeffs(dim: usize) -> Result<Vec<Rational>, CharIdError> {
    let cc = char_coeffs(dim)?;
    let mut factor = Rational::one();
    Ok(cc
        .a
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let p = k as i64 + 1;
            factor *= integer(2 * p);
            a * &factor
        })
        .collect())
}

/// `n` such that the largest eigenvalue is `n` (odd `D`) or `n + 1/2`
/// (even `D`).
fn top_index(dim: usize) -> usize {
    if dim % 2 == 1 {
        (dim - 1) / 2
    } else {
        dim / 2 - 1
    }
}

/// `a_1` from power sums.
pub fn a1_closed(dim: usize) -> Result<Rational, CharIdError> {
    require_dim(dim, 2)?;
    let n = top_index(dim) as u64;
    if dim % 2 == 1 {
        Ok(-power_sum(2, n))
    } else {
        Ok(-(power_sum(2, n) + power_sum(1, n) + power_sum(0, n) * rational(1, 4)))
    }
}

/// `a_2` for integer spin `n >= 2`:
/// `Sigma_2(n)^2 - sum_q q^2 Sigma_2(q)`.
pub fn a2_closed(dim: usize) -> Result<Rational, CharIdError> {
    if dim.is_multiple_of(2) || dim < 5 {
        return Err(CharIdError::Domain(format!(
            "a2 closed form needs odd D >= 5, got {dim}"
        )));
    }
    let n = top_index(dim) as u64;
    let s2 = power_sum(2, n);
    let inner = (0..=n).fold(Rational::zero(), |acc, q| {
        acc + integer((q * q) as i64) * power_sum(2, q)
    });
    Ok(&s2 * &s2 - inner)
}

/// Last coefficient `a_n = (-1)^n (n!)^2` for odd `D`.
pub fn an_closed(dim: usize) -> Result<Rational, CharIdError> {
    if dim.is_multiple_of(2) || dim < 3 {
        return Err(CharIdError::Domain(format!(
            "a_n closed form needs odd D >= 3, got {dim}"
        )));
    }
    let n = top_index(dim);
    let fact: BigInt = (1..=n).map(BigInt::from).product();
    let v = Rational::from_integer(&fact * &fact);
    Ok(if n % 2 == 1 { -v } else { v })
}

/// Last coefficient `a_{n+1} = (-1)^(n+1) ((2n+1)!! / 2^(n+1))^2` for even `D`.
pub fn an1_closed(dim: usize) -> Result<Rational, CharIdError> {
    if dim % 2 == 1 || dim < 2 {
        return Err(CharIdError::Domain(format!(
            "a_(n+1) closed form needs even D >= 2, got {dim}"
        )));
    }
    let n = top_index(dim);
    let double_fact: BigInt = (0..=n).map(|q| BigInt::from(2 * q + 1)).product();
    let base = Rational::new(double_fact, BigInt::from(2).pow(n as u32 + 1));
    let v = &base * &base;
    Ok(if (n + 1) % 2 == 1 { -v } else { v })
}

/// `Sigma_0(n) .. Sigma_r(n)` by the binomial ladder
/// `Sigma_r = ((n+1)^(r+1) - sum_{p<r} C(r+1, p) Sigma_p) / (r+1)`.
pub fn power_sums(r: usize, n: u64) -> Vec<Rational> {
    let n1 = Rational::from_integer(BigInt::from(n) + 1);
    let mut sums = vec![n1.clone()];
    let mut n1_pow = n1.clone();
    // row holds C(k+1, p) for p = 0..=k+1
    let mut row: Vec<BigInt> = vec![BigInt::one(), BigInt::one()];
    for k in 1..=r {
        n1_pow *= &n1;
        let mut next = vec![BigInt::one(); k + 2];
        for p in 1..=k {
            next[p] = &row[p - 1] + &row[p];
        }
        row = next;
        let mut acc = n1_pow.clone();
        for (p, s) in sums.iter().enumerate() {
            acc -= s * Rational::from_integer(row[p].clone());
        }
        sums.push(acc / integer(k as i64 + 1));
    }
    sums
}

/// `Sigma_r(n) = sum_{q=0}^n q^r`.
pub fn power_sum(r: usize, n: u64) -> Rational {
    power_sums(r, n).pop().expect("nonempty")
}

/// Highest rank of a symmetric spin tensor that does not reduce in
/// dimension `D`.
pub fn max_multipole_order(dim: usize) -> Result<usize, CharIdError> {
    require_dim(dim, 1)?;
    Ok(dim - 1)
}
