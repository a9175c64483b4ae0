//! Symmetric products of spin matrices and generalized Kronecker deltas.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::scalar::{integer, Radical, Scalar};
use crate::spinrep::{epsilon, Matrix, SpinRep};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymError {
    #[error("generalized delta needs an even number of indices, got {0}")]
    OddLength(usize),
    #[error("axis {0} is not one of 1, 2, 3")]
    BadAxis(u8),
}

pub fn check_axes(axes: &[u8]) -> Result<(), SymError> {
    match axes.iter().find(|a| !(1..=3).contains(*a)) {
        Some(&a) => Err(SymError::BadAxis(a)),
        None => Ok(()),
    }
}

/// Multiset over the axes `{1, 2, 3}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexMultiset {
    counts: [usize; 3],
}

impl IndexMultiset {
    pub fn new(counts: [usize; 3]) -> Self {
        Self { counts }
    }

    /// Panics on an axis outside `1..=3`; use [`check_axes`] first for
    /// untrusted input.
    pub fn from_axes(axes: &[u8]) -> Self {
        let mut counts = [0; 3];
        for &a in axes {
            counts[usize::from(a) - 1] += 1;
        }
        Self { counts }
    }

    pub fn counts(&self) -> [usize; 3] {
        self.counts
    }

    pub fn count(&self, axis: u8) -> usize {
        self.counts[usize::from(axis) - 1]
    }

    pub fn order(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn without(&self, axis: u8) -> Option<Self> {
        let k = usize::from(axis) - 1;
        let mut counts = self.counts;
        counts[k] = counts[k].checked_sub(1)?;
        Some(Self { counts })
    }

    /// The sorted index tuple.
    pub fn axes(&self) -> Vec<u8> {
        (1..=3u8)
            .flat_map(|a| std::iter::repeat_n(a, self.count(a)))
            .collect()
    }

    /// All multisets of the given order, in lexicographic order of their
    /// sorted tuples.
    pub fn all_of_order(order: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for c1 in (0..=order).rev() {
            for c2 in (0..=order - c1).rev() {
                out.push(Self::new([c1, c2, order - c1 - c2]));
            }
        }
        out
    }
}

/// Evaluation session for symmetric products on one representation.
/// Products are memoized by multiset.
pub struct SymSession<'a> {
    rep: &'a SpinRep,
    cache: HashMap<IndexMultiset, Matrix>,
}

impl<'a> SymSession<'a> {
    pub fn new(rep: &'a SpinRep) -> Self {
        Self {
            rep,
            cache: HashMap::new(),
        }
    }

    pub fn rep(&self) -> &'a SpinRep {
        self.rep
    }

    /// Sum over all `n!` orderings of `S_{i_1} ... S_{i_n}`, repeated
    /// orderings counted. Uses `{M} = sum_a count_a * {M - a} S_a`.
    pub fn sym_product(&mut self, idx: IndexMultiset) -> Matrix {
        if let Some(m) = self.cache.get(&idx) {
            return m.clone();
        }
        let result = if idx.order() == 0 {
            Matrix::identity(self.rep.dim())
        } else {
            let mut acc = Matrix::zeros(self.rep.dim());
            for axis in 1..=3u8 {
                let c = idx.count(axis);
                if c == 0 {
                    continue;
                }
                let rest = self.sym_product(idx.without(axis).expect("count > 0"));
                let term = rest.mul(self.rep.generator(axis));
                acc.add_scaled(&term, &Scalar::from_int(c as i64));
            }
            acc
        };
        self.cache.insert(idx, result.clone());
        result
    }

    pub fn cached(&self) -> usize {
        self.cache.len()
    }
}

/// One-shot symmetric product.
pub fn sym_product(rep: &SpinRep, idx: IndexMultiset) -> Matrix {
    SymSession::new(rep).sym_product(idx)
}

/// Generalized Kronecker delta: number of perfect pairings of the tuple
/// whose pairs carry equal indices.
pub fn gen_delta(idx: &[u8]) -> Result<u64, SymError> {
    if !idx.len().is_multiple_of(2) {
        return Err(SymError::OddLength(idx.len()));
    }
    check_axes(idx)?;
    Ok(count_matched_pairings(idx))
}

// Pairs the first element with each later element and recurses.
fn count_matched_pairings(idx: &[u8]) -> u64 {
    let Some((&first, rest)) = idx.split_first() else {
        return 1;
    };
    let mut total = 0;
    for (k, &other) in rest.iter().enumerate() {
        if other == first {
            let remaining: Vec<u8> = rest
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, &a)| a)
                .collect();
            total += count_matched_pairings(&remaining);
        }
    }
    total
}

/// `T_n = 1 * 3 * 5 * ... * (2n - 1)`, the number of perfect pairings of
/// `2n` objects.
pub fn pairing_count(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(2 * k - 1))
}

/// Both sides of `S_i S_j S_k - S_k S_j S_i
/// = i sum_l (eps_ijl S_l S_k + eps_ikl S_j S_l + eps_jkl S_l S_i)`.
pub fn antisym_reduce_demo(
    rep: &SpinRep,
    i: u8,
    j: u8,
    k: u8,
) -> Result<(Matrix, Matrix), SymError> {
    check_axes(&[i, j, k])?;
    let s = |a: u8| rep.generator(a);
    let lhs = s(i).mul(s(j)).mul(s(k)).sub(&s(k).mul(s(j)).mul(s(i)));
    let mut rhs = Matrix::zeros(rep.dim());
    for l in 1..=3u8 {
        let terms = [
            (epsilon(i, j, l), s(l).mul(s(k))),
            (epsilon(i, k, l), s(j).mul(s(l))),
            (epsilon(j, k, l), s(l).mul(s(i))),
        ];
        for (e, m) in terms {
            if e != 0 {
                rhs.add_scaled(&m, &Scalar::imag(Radical::from_rational(integer(e.into()))));
            }
        }
    }
    Ok((lhs, rhs))
}
