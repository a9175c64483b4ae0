use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{b_coeffs, CharIdError};
use crate::scalar::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    /// Coefficient of the full symmetric product is 1.
    Monic,
    /// Monic coefficients multiplied by their least common denominator.
    Integral,
}

/// One level `p` of the identity: `coefficient * sum over subsets P of
/// delta(indices at P) * {S at the remaining positions}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub p: usize,
    pub coefficient: Rational,
    /// Zero-based positions routed into the generalized delta, each of
    /// size `2p`. The first entry puts the delta on the last `2p`
    /// positions; the rest follow in lexicographic order of the
    /// complementary (symmetric-product) positions.
    pub subsets: Vec<Vec<usize>>,
}

impl Level {
    /// Positions left in the symmetric product for the `k`-th subset.
    pub fn complement(&self, dim: usize, k: usize) -> Vec<usize> {
        let subset = &self.subsets[k];
        (0..dim).filter(|i| !subset.contains(i)).collect()
    }
}

/// `{S_i1 ... S_iD} + sum_p b_p (sum of delta * lower symmetric products) = 0`.
///
/// Level `p = 0` holds the leading symmetric product itself with
/// coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    dim: usize,
    levels: Vec<Level>,
}

/// k-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

impl Identity {
    /// Identity with the given `b_1 .. b_m` and all subset patterns.
    pub fn with_coefficients(dim: usize, b: Vec<Rational>) -> Self {
        let mut levels = vec![Level {
            p: 0,
            coefficient: Rational::one(),
            subsets: vec![Vec::new()],
        }];
        for (k, coefficient) in b.into_iter().enumerate() {
            let p = k + 1;
            let subsets = combinations(dim, dim - 2 * p)
                .into_iter()
                .map(|sym| (0..dim).filter(|i| !sym.contains(i)).collect())
                .collect();
            levels.push(Level {
                p,
                coefficient,
                subsets,
            });
        }
        Self { dim, levels }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// `b_1 .. b_m`.
    pub fn b(&self) -> Vec<Rational> {
        self.levels[1..]
            .iter()
            .map(|l| l.coefficient.clone())
            .collect()
    }

    /// Coefficients of levels `0..=m` under the requested normalization.
    pub fn coefficients(&self, normalization: Normalization) -> Vec<Rational> {
        let monic: Vec<Rational> = self.levels.iter().map(|l| l.coefficient.clone()).collect();
        match normalization {
            Normalization::Monic => monic,
            Normalization::Integral => {
                let lcd = monic.iter().fold(BigInt::one(), |acc, q| {
                    num_integer::lcm(acc, q.denom().clone())
                });
                let factor = Rational::from_integer(lcd);
                monic.iter().map(|q| q * &factor).collect()
            }
        }
    }

    pub fn to_json(&self, normalization: Normalization) -> IdentityJson {
        let coeffs = self.coefficients(normalization);
        IdentityJson {
            dim: self.dim,
            normalization,
            levels: self
                .levels
                .iter()
                .zip(coeffs)
                .map(|(l, c)| LevelJson {
                    p: l.p,
                    coefficient: c.to_string(),
                    subsets: l
                        .subsets
                        .iter()
                        .map(|s| s.iter().map(|i| i + 1).collect())
                        .collect(),
                })
                .collect(),
        }
    }

    /// LaTeX in the usual display layout. With `expanded = false` each
    /// level shows its first term followed by "(k more similar terms)".
    pub fn to_latex(&self, normalization: Normalization, expanded: bool) -> String {
        let names = index_names(self.dim);
        let coeffs = self.coefficients(normalization);
        let mut out = String::new();
        for (level, coeff) in self.levels.iter().zip(&coeffs) {
            if coeff.is_zero() {
                continue;
            }
            let mut terms: Vec<String> = (0..level.subsets.len())
                .map(|k| {
                    let sym = level.complement(self.dim, k);
                    let delta = &level.subsets[k];
                    latex_term(&names, &sym, delta)
                })
                .collect();
            if !expanded && terms.len() > 1 {
                let more = terms.len() - 1;
                terms.truncate(1);
                terms.push(format!("\\mbox{{({more} more similar terms)}}"));
            }
            let body = if terms.len() > 1 {
                format!("\\Big( {} \\Big)", terms.join(" + "))
            } else {
                terms.pop().unwrap_or_default()
            };
            let magnitude = coeff.abs();
            let factor = if magnitude.is_one() {
                String::new()
            } else if magnitude.is_integer() {
                format!("{magnitude} ")
            } else {
                format!("\\frac{{{}}}{{{}}} ", magnitude.numer(), magnitude.denom())
            };
            if out.is_empty() {
                if coeff.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if coeff.is_negative() { " - " } else { " + " });
            }
            out.push_str(&factor);
            out.push_str(&body);
        }
        out.push_str(" = 0");
        out
    }
}

/// Index names `i, j, k, l, m, n, ...`, falling back to `i_{r}` beyond
/// the single-letter supply.
fn index_names(dim: usize) -> Vec<String> {
    const LETTERS: [&str; 14] = [
        "i", "j", "k", "l", "m", "n", "p", "q", "r", "s", "t", "u", "v", "w",
    ];
    if dim <= LETTERS.len() {
        LETTERS[..dim].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=dim).map(|r| format!("i_{{{r}}}")).collect()
    }
}

fn latex_term(names: &[String], sym: &[usize], delta: &[usize]) -> String {
    let sym_part = match sym.len() {
        0 => String::new(),
        1 => format!("S_{}", names[sym[0]]),
        _ => format!(
            "\\{{ {} \\}}",
            sym.iter()
                .map(|&i| format!("S_{}", names[i]))
                .collect::<Vec<_>>()
                .join(" ")
        ),
    };
    if delta.is_empty() {
        return sym_part;
    }
    let delta_part = format!(
        "\\delta_{{{}}}",
        delta.iter().map(|&i| names[i].as_str()).collect::<String>()
    );
    if sym.is_empty() {
        format!("{delta_part} \\mathbbm{{1}}")
    } else {
        format!("{sym_part} {delta_part}")
    }
}

/// Serialized identity:
/// `{ "dim", "normalization", "levels": [ { "p", "coefficient", "subsets" } ] }`
/// with one-based positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityJson {
    pub dim: usize,
    pub normalization: Normalization,
    pub levels: Vec<LevelJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelJson {
    pub p: usize,
    pub coefficient: String,
    pub subsets: Vec<Vec<usize>>,
}

/// The reduction identity in dimension `D`, with `b_p = 2^p p! a_p`.
pub fn build_identity(dim: usize) -> Result<Identity, CharIdError> {
    Ok(Identity::with_coefficients(dim, b_coeffs(dim)?))
}
