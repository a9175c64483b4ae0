use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CharIdError, Identity};
use crate::scalar::{Radicand, Rational, Scalar};
use crate::spinrep::{Matrix, SpinRep};
use crate::symalg::{gen_delta, IndexMultiset, SymSession};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    /// Every tuple in `{1,2,3}^D`.
    Exhaustive,
    /// `count` tuples drawn from a seeded generator.
    Sampled { count: usize, seed: u64 },
}

impl VerifyMode {
    /// Exhaustive up to `D = 7`, otherwise 1000 seeded samples.
    pub fn default_for(dim: usize, seed: u64) -> Self {
        if dim <= 7 {
            Self::Exhaustive
        } else {
            Self::Sampled { count: 1000, seed }
        }
    }
}

impl fmt::Display for VerifyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exhaustive => write!(f, "exhaustive"),
            Self::Sampled { count, seed } => write!(f, "sampled:{count}:{seed}"),
        }
    }
}

/// A tuple on which the identity's left side is not the zero matrix,
/// with its first nonzero entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub tuple: Vec<u8>,
    pub row: usize,
    pub col: usize,
    pub entry: Scalar,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub dim: usize,
    pub rep_dim: usize,
    pub mode: VerifyMode,
    pub tuples_checked: u128,
    /// Lexicographically ordered by tuple.
    pub failures: Vec<Failure>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn is_verified(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "identity D={} on rep D={} ({}): {} tuples checked, {} failures",
            self.dim,
            self.rep_dim,
            self.mode,
            self.tuples_checked,
            self.failures.len()
        )?;
        if let Some(first) = self.failures.first() {
            let tuple: Vec<String> = first.tuple.iter().map(u8::to_string).collect();
            writeln!(
                f,
                "first witness: tuple ({}) entry ({}, {}) = {}",
                tuple.join(","),
                first.row + 1,
                first.col + 1,
                first.entry
            )?;
        }
        Ok(())
    }
}

/// Left side of the identity for one index tuple on `rep`.
pub fn identity_lhs(rep: &SpinRep, ident: &Identity, tuple: &[u8]) -> Matrix {
    evaluate_lhs(&mut SymSession::new(rep), ident, tuple)
}

/// Left side of the identity for one index tuple, evaluated on the
/// session's representation.
pub(crate) fn evaluate_lhs(session: &mut SymSession<'_>, ident: &Identity, tuple: &[u8]) -> Matrix {
    let mut acc = Matrix::zeros(session.rep().dim());
    for level in ident.levels() {
        if level.coefficient.is_zero() {
            continue;
        }
        for (term, delta) in level_terms(session, ident.dim(), level, tuple) {
            acc.add_scaled(&term, &Scalar::from_rational(&level.coefficient * delta));
        }
    }
    acc
}

/// `(symmetric product, delta value)` for every subset of one level whose
/// generalized delta is nonzero.
fn level_terms(
    session: &mut SymSession<'_>,
    dim: usize,
    level: &super::Level,
    tuple: &[u8],
) -> Vec<(Matrix, Rational)> {
    let mut out = Vec::new();
    for (k, subset) in level.subsets.iter().enumerate() {
        let delta_idx: Vec<u8> = subset.iter().map(|&i| tuple[i]).collect();
        let delta = gen_delta(&delta_idx).expect("subsets have even size");
        if delta == 0 {
            continue;
        }
        let sym_idx: Vec<u8> = level.complement(dim, k).iter().map(|&i| tuple[i]).collect();
        let m = session.sym_product(IndexMultiset::from_axes(&sym_idx));
        out.push((m, Rational::from_integer(delta.into())));
    }
    out
}

fn witness(tuple: Vec<u8>, m: &Matrix) -> Option<Failure> {
    m.first_nonzero().map(|(row, col, entry)| Failure {
        tuple,
        row,
        col,
        entry: entry.clone(),
    })
}

/// Runs `f` over `items` split into `jobs` contiguous chunks, each chunk on
/// its own thread with its own session; results come back in input order.
fn run_partitioned<T, R, F>(rep: &SpinRep, items: &[T], jobs: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&mut SymSession<'_>, &T) -> R + Sync,
{
    let jobs = jobs.clamp(1, items.len().max(1));
    if jobs == 1 {
        let mut session = SymSession::new(rep);
        return items.iter().map(|t| f(&mut session, t)).collect();
    }
    let chunk = items.len().div_ceil(jobs);
    std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| {
                let f = &f;
                scope.spawn(move || {
                    let mut session = SymSession::new(rep);
                    part.iter().map(|t| f(&mut session, t)).collect::<Vec<R>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("verification worker panicked"))
            .collect()
    })
}

/// Checks that the identity's left side vanishes on `rep`.
pub fn verify_identity(rep: &SpinRep, ident: &Identity, mode: VerifyMode) -> VerificationReport {
    verify_identity_jobs(rep, ident, mode, 1)
}

/// [`verify_identity`] spread over `jobs` worker threads.
///
/// Exhaustive mode evaluates each sorted multiset once, since the left side
/// depends only on the multiset of indices, and attributes the result to
/// every tuple that sorts to it.
pub fn verify_identity_jobs(
    rep: &SpinRep,
    ident: &Identity,
    mode: VerifyMode,
    jobs: usize,
) -> VerificationReport {
    let start = Instant::now();
    let dim = ident.dim();
    let (tuples_checked, failures) = match mode {
        VerifyMode::Exhaustive => {
            let multisets = IndexMultiset::all_of_order(dim);
            let results = run_partitioned(rep, &multisets, jobs, |session, ms| {
                let m = evaluate_lhs(session, ident, &ms.axes());
                witness(ms.axes(), &m)
            });
            let failing: BTreeMap<IndexMultiset, Failure> = multisets
                .into_iter()
                .zip(results)
                .filter_map(|(ms, r)| r.map(|f| (ms, f)))
                .collect();
            let mut failures = Vec::new();
            if !failing.is_empty() {
                for tuple in all_tuples(dim) {
                    if let Some(f) = failing.get(&IndexMultiset::from_axes(&tuple)) {
                        failures.push(Failure { tuple, ..f.clone() });
                    }
                }
            }
            (3u128.pow(dim as u32), failures)
        }
        VerifyMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let samples: Vec<Vec<u8>> = (0..count)
                .map(|_| (0..dim).map(|_| rng.gen_range(1..=3u8)).collect())
                .collect();
            let results = run_partitioned(rep, &samples, jobs, |session, t| {
                let m = evaluate_lhs(session, ident, t);
                witness(t.clone(), &m)
            });
            let mut failures: Vec<Failure> = results.into_iter().flatten().collect();
            failures.sort_by(|a, b| a.tuple.cmp(&b.tuple));
            failures.dedup_by(|a, b| a.tuple == b.tuple);
            (count as u128, failures)
        }
    };
    VerificationReport {
        dim,
        rep_dim: rep.dim(),
        mode,
        tuples_checked,
        failures,
        elapsed: start.elapsed(),
    }
}

/// `{1,2,3}^n` in lexicographic order.
fn all_tuples(n: usize) -> impl Iterator<Item = Vec<u8>> {
    let total = 3usize.pow(n as u32);
    (0..total).map(move |mut k| {
        let mut t = vec![1u8; n];
        for slot in t.iter_mut().rev() {
            *slot = (k % 3) as u8 + 1;
            k /= 3;
        }
        t
    })
}

/// Recovers `b_1 .. b_m` for `rep.dim()` by exact elimination, without
/// using the characteristic-equation formula.
///
/// Every sorted multiset of order `D` contributes one rational equation per
/// matrix entry and per basis element `sqrt(m)` or `i*sqrt(m)` of the entry.
pub fn discover_identity(rep: &SpinRep) -> Result<Identity, CharIdError> {
    let dim = rep.dim();
    super::require_dim(dim, 2)?;
    let unknowns = dim / 2;
    let template = Identity::with_coefficients(dim, vec![Rational::zero(); unknowns]);
    let mut session = SymSession::new(rep);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for ms in IndexMultiset::all_of_order(dim) {
        let tuple = ms.axes();
        let lead = session.sym_product(ms);
        let columns: Vec<Matrix> = template.levels()[1..]
            .iter()
            .map(|level| {
                let mut acc = Matrix::zeros(dim);
                for (m, delta) in level_terms(&mut session, dim, level, &tuple) {
                    acc.add_scaled(&m, &Scalar::from_rational(delta));
                }
                acc
            })
            .collect();
        for r in 0..dim {
            for c in 0..dim {
                // sum_p c_p column_p = -lead, split by basis element
                let mut keys: BTreeSet<(bool, Radicand)> = BTreeSet::new();
                for m in columns.iter().chain(std::iter::once(&lead)) {
                    keys.extend(m.get(r, c).coordinates().map(|(im, rad, _)| (im, rad)));
                }
                for (im, rad) in keys {
                    let coord = |s: &Scalar| {
                        if im {
                            s.im.coefficient(rad)
                        } else {
                            s.re.coefficient(rad)
                        }
                    };
                    let mut row: Vec<Rational> =
                        columns.iter().map(|m| coord(m.get(r, c))).collect();
                    row.push(-coord(lead.get(r, c)));
                    rows.push(row);
                }
            }
        }
    }
    let b = solve_unique(rows, unknowns)?;
    Ok(Identity::with_coefficients(dim, b))
}

/// Solves an augmented rational system, requiring a unique solution.
fn solve_unique(
    mut rows: Vec<Vec<Rational>>,
    unknowns: usize,
) -> Result<Vec<Rational>, CharIdError> {
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..unknowns {
        let Some(found) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let p = rows[pivot_row][col].clone();
        for v in rows[pivot_row].iter_mut() {
            *v /= &p;
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot) {
                *v -= &f * pv;
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|row| !row[unknowns].is_zero()) {
        return Err(CharIdError::Inconsistent);
    }
    if pivots.len() < unknowns {
        return Err(CharIdError::Underdetermined {
            rank: pivots.len(),
            unknowns,
        });
    }
    Ok((0..unknowns).map(|k| rows[k][unknowns].clone()).collect())
}
