#![allow(dead_code)]

use std::collections::BTreeSet;

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use spinid::rewrite::{NCPolynomial, Word};
use spinid::scalar::{rational, Radicand, Rational, Scalar};
use spinid::spinrep::{Matrix, SpinRep};

/// Brute-force symmetric product: explicit sum over all `n!` permutations.
pub fn sym_product_bruteforce(rep: &SpinRep, idx: &[u8]) -> Matrix {
    let mut acc = Matrix::zeros(rep.dim());
    let mut perm: Vec<usize> = (0..idx.len()).collect();
    heap_permutations(&mut perm, idx.len(), &mut |p| {
        let m = p.iter().fold(Matrix::identity(rep.dim()), |m, &k| {
            m.mul(rep.generator(idx[k]))
        });
        acc = acc.add(&m);
    });
    acc
}

fn heap_permutations(a: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k <= 1 {
        f(a);
        return;
    }
    for i in 0..k {
        heap_permutations(a, k - 1, f);
        if k.is_multiple_of(2) {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
}

/// All perfect pairings of `0..2n`, by brute force.
pub fn all_pairings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(rest: Vec<usize>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        let first = rest[0];
        for k in 1..rest.len() {
            let mut remaining = rest.clone();
            let partner = remaining.remove(k);
            remaining.remove(0);
            cur.push((first, partner));
            go(remaining, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go((0..2 * n).collect(), &mut Vec::new(), &mut out);
    out
}

/// Rational coordinates of a matrix: one entry per (row, col, imaginary?,
/// radicand) key in `keys`.
pub fn coordinates(m: &Matrix, keys: &[(usize, usize, bool, Radicand)]) -> Vec<Rational> {
    keys.iter()
        .map(|&(r, c, im, rad)| {
            let s = m.get(r, c);
            if im {
                s.im.coefficient(rad)
            } else {
                s.re.coefficient(rad)
            }
        })
        .collect()
}

/// Rank over Q of a family of matrices, viewed as vectors over the basis
/// `{sqrt(m), i sqrt(m)}` of every entry.
pub fn rational_rank(mats: &[Matrix]) -> usize {
    let mut keys = BTreeSet::new();
    for m in mats {
        for r in 0..m.dim() {
            for c in 0..m.dim() {
                for (im, rad, _) in m.get(r, c).coordinates() {
                    keys.insert((r, c, im, rad));
                }
            }
        }
    }
    let keys: Vec<_> = keys.into_iter().collect();
    let mut rows: Vec<Vec<Rational>> = mats.iter().map(|m| coordinates(m, &keys)).collect();
    let mut rank = 0;
    for col in 0..keys.len() {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = &row[col] / &pivot[col];
                for (v, pv) in row.iter_mut().zip(&pivot) {
                    *v -= &f * pv;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Random polynomial: up to `max_terms` words of degree `<= max_degree`,
/// small Gaussian-rational coefficients.
pub fn random_polynomial(
    rng: &mut ChaCha8Rng,
    max_terms: usize,
    max_degree: usize,
) -> NCPolynomial {
    let mut p = NCPolynomial::zero();
    let n = rng.gen_range(1..=max_terms);
    for _ in 0..n {
        let deg = rng.gen_range(0..=max_degree);
        let letters: Vec<u8> = (0..deg).map(|_| rng.gen_range(1..=3u8)).collect();
        let re = rational(rng.gen_range(-5..=5), rng.gen_range(1..=4));
        let im = if rng.gen_bool(0.3) {
            rational(rng.gen_range(-3..=3), rng.gen_range(1..=3))
        } else {
            Rational::zero()
        };
        let c = &Scalar::from_rational(re) + &(&Scalar::i() * &Scalar::from_rational(im));
        p.add_term(Word::new(letters), c);
    }
    p
}
