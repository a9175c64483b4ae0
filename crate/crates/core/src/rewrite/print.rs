use std::cmp::Reverse;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::{NCPolynomial, NormalForm, Word};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Plain,
    Latex,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub word: Vec<u8>,
    pub coeff: String,
}

/// `{"dim": D, "terms": [...]}`; `dim` is present only for normal forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    pub terms: Vec<TermJson>,
}

/// Highest degree first, lexicographic within a degree.
fn print_order(p: &NCPolynomial) -> Vec<(&Word, &Scalar)> {
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by_key(|(w, _)| (Reverse(w.degree()), w.letters().to_vec()));
    terms
}

/// `Some((negative, magnitude))` when the scalar is a single signed term.
fn single_term(c: &Scalar) -> Option<(bool, Scalar)> {
    if c.term_count() != 1 {
        return None;
    }
    let (_, _, q) = c.coordinates().next()?;
    if q.is_negative() {
        Some((true, -c))
    } else {
        Some((false, c.clone()))
    }
}

fn join_signed(parts: Vec<(bool, String)>) -> String {
    let mut out = String::new();
    for (negative, body) in parts {
        match (out.is_empty(), negative) {
            (true, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (true, false) => out.push_str(&body),
            (false, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
            (false, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn plain(p: &NCPolynomial) -> String {
    let parts = print_order(p)
        .into_iter()
        .map(|(w, c)| {
            let word = w
                .letters()
                .iter()
                .map(|a| format!("S{a}"))
                .collect::<Vec<_>>()
                .join("*");
            match (single_term(c), w.degree()) {
                (Some((neg, mag)), 0) => (neg, mag.to_string()),
                (Some((neg, mag)), _) if mag.is_one() => (neg, word),
                (Some((neg, mag)), _) => (neg, format!("{mag}*{word}")),
                (None, 0) => (false, format!("({c})")),
                (None, _) => (false, format!("({c})*{word}")),
            }
        })
        .collect();
    join_signed(parts)
}

fn latex_word(w: &Word) -> String {
    let letters = w.letters();
    let mut parts = Vec::new();
    let mut k = 0;
    while k < letters.len() {
        let a = letters[k];
        let run = letters[k..].iter().take_while(|&&b| b == a).count();
        if run == 1 {
            parts.push(format!("S_{{{a}}}"));
        } else {
            parts.push(format!("S_{{{a}}}^{{{run}}}"));
        }
        k += run;
    }
    parts.join(" ")
}

fn latex(p: &NCPolynomial) -> String {
    let parts = print_order(p)
        .into_iter()
        .map(|(w, c)| {
            let word = latex_word(w);
            match (single_term(c), w.degree()) {
                (Some((neg, mag)), 0) => (neg, mag.to_latex()),
                (Some((neg, mag)), _) if mag.is_one() => (neg, word),
                (Some((neg, mag)), _) => (neg, format!("{} {word}", mag.to_latex())),
                (None, 0) => (false, format!("\\left( {} \\right)", c.to_latex())),
                (None, _) => (false, format!("\\left( {} \\right) {word}", c.to_latex())),
            }
        })
        .collect();
    join_signed(parts)
}

fn to_json(p: &NCPolynomial, dim: Option<usize>) -> PolynomialJson {
    PolynomialJson {
        dim,
        terms: print_order(p)
            .into_iter()
            .map(|(w, c)| TermJson {
                word: w.letters().to_vec(),
                coeff: c.to_string(),
            })
            .collect(),
    }
}

/// Deterministic rendering; `parse(render(p, Plain)) == p`.
pub fn render(p: &NCPolynomial, format: Format) -> String {
    match format {
        Format::Plain => plain(p),
        Format::Latex => latex(p),
        Format::Json => serde_json::to_string(&to_json(p, None)).expect("serializable"),
    }
}

pub fn render_normal_form(nf: &NormalForm, format: Format) -> String {
    match format {
        Format::Json => {
            serde_json::to_string(&to_json(&nf.poly, Some(nf.dim))).expect("serializable")
        }
        other => render(&nf.poly, other),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::parse;

    #[test]
    fn plain_examples() {
        let mut p = NCPolynomial::word(&[1, 2]);
        p.add_term(Word::new(vec![3]), -Scalar::i());
        assert_eq!(render(&p, Format::Plain), "S1*S2 - i*S3");
        assert_eq!(render(&NCPolynomial::zero(), Format::Plain), "0");
        let q = parse("(1/2 + sqrt(2)*i)*S1 - 3/4").unwrap();
        assert_eq!(render(&q, Format::Plain), "(1/2 + sqrt(2)*i)*S1 - 3/4");
    }

    #[test]
    fn json_example() {
        let p = parse("{S1 S2}").unwrap();
        assert_eq!(
            render(&p, Format::Json),
            r#"{"terms":[{"word":[1,2],"coeff":"1"},{"word":[2,1],"coeff":"1"}]}"#
        );
    }

    #[test]
    fn latex_powers() {
        let p = parse("S1 S1 S2 - 1/2 i S3").unwrap();
        assert_eq!(
            render(&p, Format::Latex),
            "S_{1}^{2} S_{2} - \\frac{1}{2} i S_{3}"
        );
    }
}
