//! Dense exact matrices and the spin generators `S_1, S_2, S_3` of every
//! dimension.

use std::fmt;

use num_traits::One;
use serde_json::Value;
use thiserror::Error;

use crate::scalar::{integer, rational, sqrt_of_rational, Radical, Rational, Scalar, ScalarError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("representation dimension must be at least 1")]
    ZeroDimension,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Square matrix of exact scalars, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    dim: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Scalar::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for k in 0..dim {
            m.set(k, k, Scalar::one());
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        Self { dim, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, MatrixError> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(MatrixError::DimensionMismatch(dim, row.len()));
            }
            entries.extend(row);
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.dim + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &Scalar)> {
        self.entries
            .iter()
            .position(|e| !e.is_zero())
            .map(|k| (k / self.dim, k % self.dim, &self.entries[k]))
    }

    fn check(&self, other: &Self) -> Result<(), MatrixError> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(MatrixError::DimensionMismatch(self.dim, other.dim))
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other);
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            dim: self.dim,
            entries,
        })
    }

    /// Product; panics on a dimension mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("conformable matrices")
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("conformable matrices")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("conformable matrices")
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    out.entries[r * n + c] += &(a * b);
                }
            }
        }
        out
    }

    fn add_assign_unchecked(&mut self, other: &Self) {
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, other: &Self, factor: &Scalar) {
        assert_eq!(self.dim, other.dim, "conformable matrices");
        if factor.is_zero() {
            return;
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            if !b.is_zero() {
                *a += &(b * factor);
            }
        }
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e.scale(q)).collect(),
        }
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    pub fn trace(&self) -> Scalar {
        let mut t = Scalar::zero();
        for k in 0..self.dim {
            t += self.get(k, k);
        }
        t
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.conj_transpose()
    }

    /// Inverse by Gauss-Jordan elimination. Pivots must be Gaussian
    /// rationals, which holds for every rational or Gaussian-rational input.
    pub fn inverse(&self) -> Result<Self, MatrixError> {
        let n = self.dim;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(MatrixError::Singular)?;
            if pivot != col {
                for c in 0..n {
                    a.entries.swap(pivot * n + c, col * n + c);
                    inv.entries.swap(pivot * n + c, col * n + c);
                }
            }
            let p_inv = a.get(col, col).inverse()?;
            for c in 0..n {
                let v = a.get(col, c) * &p_inv;
                a.set(col, c, v);
                let w = inv.get(col, c) * &p_inv;
                inv.set(col, c, w);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for c in 0..n {
                    let v = a.get(r, c) - &(a.get(col, c) * &f);
                    a.set(r, c, v);
                    let w = inv.get(r, c) - &(inv.get(col, c) * &f);
                    inv.set(r, c, w);
                }
            }
        }
        Ok(inv)
    }

    /// `m * self * m^-1`.
    pub fn conjugate_by(&self, m: &Self) -> Result<Self, MatrixError> {
        self.check(m)?;
        let m_inv = m.inverse()?;
        Ok(m.mul_unchecked(self).mul_unchecked(&m_inv))
    }

    /// Row-major nested arrays of scalar strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.dim)
                .map(|r| {
                    Value::Array(
                        (0..self.dim)
                            .map(|c| Value::String(self.get(r, c).to_string()))
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    pub fn to_latex(&self) -> String {
        let rows: Vec<String> = (0..self.dim)
            .map(|r| {
                (0..self.dim)
                    .map(|c| self.get(r, c).to_latex())
                    .collect::<Vec<_>>()
                    .join(" & ")
            })
            .collect();
        format!(
            "\\begin{{pmatrix}} {} \\end{{pmatrix}}",
            rows.join(" \\\\ ")
        )
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Levi-Civita symbol on axes `1..=3`.
pub fn epsilon(i: u8, j: u8, k: u8) -> i8 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1,
        _ => 0,
    }
}

/// Eigenvalues of `S_3` in dimension `dim`: `s, s-1, ..., -s`.
pub fn eigenvalue_list(dim: usize) -> Result<Vec<Rational>, MatrixError> {
    if dim == 0 {
        return Err(MatrixError::ZeroDimension);
    }
    let twice_s = dim as i64 - 1;
    Ok((0..dim as i64)
        .map(|k| rational(twice_s - 2 * k, 2))
        .collect())
}

/// The three spin matrices of one irreducible representation.
///
/// Basis vectors are ordered by descending `S_3` eigenvalue. After
/// [`SpinRep::conjugated`] the generators are no longer Hermitian but still
/// satisfy the commutation relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinRep {
    dim: usize,
    spin: Rational,
    generators: [Matrix; 3],
}

impl SpinRep {
    pub fn new(dim: usize) -> Result<Self, MatrixError> {
        let ms = eigenvalue_list(dim)?;
        let s = ms[0].clone();
        let casimir = &s * (&s + Rational::one());

        // (S_+)_{a-1,a} = sqrt(s(s+1) - m_a(m_a + 1)) raises m_a to m_a + 1.
        let mut raise = Matrix::zeros(dim);
        for (a, m) in ms.iter().enumerate().skip(1) {
            let v = sqrt_of_rational(&(&casimir - m * (m + Rational::one())))?;
            raise.set(a - 1, a, Scalar::real(v));
        }
        let lower = raise.conj_transpose();
        let half = rational(1, 2);
        let s1 = raise.add(&lower).scale_rational(&half);
        // (S_+ - S_-)/(2i) = -i/2 (S_+ - S_-)
        let s2 = raise
            .sub(&lower)
            .scale(&Scalar::imag(Radical::from_rational(-half)));
        let s3 = Matrix::from_fn(dim, |r, c| {
            if r == c {
                Scalar::from_rational(ms[r].clone())
            } else {
                Scalar::zero()
            }
        });
        Ok(Self {
            dim,
            spin: s,
            generators: [s1, s2, s3],
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn spin(&self) -> &Rational {
        &self.spin
    }

    /// `S_axis` for `axis` in `1..=3`.
    pub fn generator(&self, axis: u8) -> &Matrix {
        &self.generators[usize::from(axis) - 1]
    }

    pub fn generators(&self) -> &[Matrix; 3] {
        &self.generators
    }

    /// `s(s+1)`.
    pub fn casimir_value(&self) -> Rational {
        &self.spin * (&self.spin + Rational::one())
    }

    /// Applies `S_i -> M S_i M^-1` to every generator.
    pub fn conjugated(&self, m: &Matrix) -> Result<Self, MatrixError> {
        let [a, b, c] = &self.generators;
        Ok(Self {
            dim: self.dim,
            spin: self.spin.clone(),
            generators: [a.conjugate_by(m)?, b.conjugate_by(m)?, c.conjugate_by(m)?],
        })
    }

    /// Checks `[S_i, S_j] = i sum_k eps_ijk S_k` for every pair.
    pub fn satisfies_commutation(&self) -> bool {
        for i in 1..=3u8 {
            for j in 1..=3u8 {
                let si = self.generator(i);
                let sj = self.generator(j);
                let lhs = si.mul(sj).sub(&sj.mul(si));
                let mut rhs = Matrix::zeros(self.dim);
                for k in 1..=3u8 {
                    let e = epsilon(i, j, k);
                    if e != 0 {
                        let coeff = Scalar::imag(Radical::from_rational(integer(e.into())));
                        rhs.add_scaled(self.generator(k), &coeff);
                    }
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// `S_1^2 + S_2^2 + S_3^2`.
    pub fn casimir(&self) -> Matrix {
        let mut out = Matrix::zeros(self.dim);
        for g in &self.generators {
            out = out.add(&g.mul(g));
        }
        out
    }

    pub fn is_hermitian(&self) -> bool {
        self.generators.iter().all(Matrix::is_hermitian)
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "dim": self.dim,
            "spin": self.spin.to_string(),
            "S1": self.generators[0].to_json(),
            "S2": self.generators[1].to_json(),
            "S3": self.generators[2].to_json(),
        })
    }

    pub fn to_latex(&self) -> String {
        self.generators
            .iter()
            .enumerate()
            .map(|(k, g)| format!("S_{} = {}", k + 1, g.to_latex()))
            .collect::<Vec<_>>()
            .join(",\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_halves() {
        let rep = SpinRep::new(2).unwrap();
        let half = Scalar::from_rational(rational(1, 2));
        let s1 = Matrix::from_rows(vec![
            vec![Scalar::zero(), half.clone()],
            vec![half.clone(), Scalar::zero()],
        ])
        .unwrap();
        let ih = Scalar::imag(Radical::from_rational(rational(1, 2)));
        let s2 =
            Matrix::from_rows(vec![vec![Scalar::zero(), -&ih], vec![ih, Scalar::zero()]]).unwrap();
        assert_eq!(rep.generator(1), &s1);
        assert_eq!(rep.generator(2), &s2);
        assert_eq!(rep.generator(3).get(0, 0), &half);
        assert_eq!(rep.generator(3).get(1, 1), &-half);
        assert_eq!(
            rep.generator(1).mul(rep.generator(1)),
            Matrix::identity(2).scale_rational(&rational(1, 4))
        );
    }

    #[test]
    fn trivial_and_zero_dimensions() {
        let rep = SpinRep::new(1).unwrap();
        assert!(rep.generators().iter().all(Matrix::is_zero));
        assert_eq!(SpinRep::new(0), Err(MatrixError::ZeroDimension));
    }

    #[test]
    fn spin_one_has_root_half_entries() {
        let rep = SpinRep::new(3).unwrap();
        let s1 = rep.generator(1);
        assert_eq!(s1.get(0, 1).to_string(), "1/2*sqrt(2)");
        assert_eq!(s1.get(1, 2).to_string(), "1/2*sqrt(2)");
        assert_eq!(s1.get(1, 0).to_string(), "1/2*sqrt(2)");
        assert!(s1.get(0, 2).is_zero());
        assert!(rep.satisfies_commutation());
    }

    #[test]
    fn eigenvalues() {
        assert_eq!(
            eigenvalue_list(4).unwrap(),
            vec![
                rational(3, 2),
                rational(1, 2),
                rational(-1, 2),
                rational(-3, 2)
            ]
        );
        assert_eq!(
            eigenvalue_list(3).unwrap(),
            vec![integer(1), integer(0), integer(-1)]
        );
        assert_eq!(eigenvalue_list(1).unwrap(), vec![integer(0)]);
    }

    #[test]
    fn identity_is_neutral_and_mismatch_errors() {
        let rep = SpinRep::new(3).unwrap();
        assert_eq!(&Matrix::identity(3).mul(rep.generator(1)), rep.generator(1));
        assert_eq!(
            Matrix::identity(2).try_mul(rep.generator(1)),
            Err(MatrixError::DimensionMismatch(2, 3))
        );
    }

    #[test]
    fn conjugation_preserves_commutators() {
        let rep = SpinRep::new(2).unwrap();
        let m = Matrix::from_rows(vec![
            vec![Scalar::one(), Scalar::one()],
            vec![Scalar::zero(), Scalar::one()],
        ])
        .unwrap();
        let c = rep.conjugated(&m).unwrap();
        assert_ne!(c, rep);
        assert!(c.satisfies_commutation());
    }

    #[test]
    fn singular_conjugation_fails() {
        let rep = SpinRep::new(2).unwrap();
        let m = Matrix::from_rows(vec![
            vec![Scalar::one(), Scalar::one()],
            vec![Scalar::one(), Scalar::one()],
        ])
        .unwrap();
        assert_eq!(rep.conjugated(&m), Err(MatrixError::Singular));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_fn(3, |r, c| {
            Scalar::from_int(((r * 3 + c) * (r + 1) % 7) as i64 + i64::from(r == c))
        });
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
    }
}
