//! Expression grammar:
//!
//! ```text
//! expr    := [+|-] term ((+|-) term)*
//! term    := factor ([*] factor)*
//! factor  := S1 | S2 | S3 | I | i | INT [/ INT] | sqrt(INT)
//!          | ( expr ) | [ expr , expr ] | { gen gen ... }
//! ```
//!
//! Braces hold generators only and expand to the full symmetric product.

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use super::NCPolynomial;
use crate::scalar::{sqrt_of_integer, Rational, Scalar};

/// Largest accepted argument of `sqrt(...)`.
const MAX_SQRT_ARG: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{message} at position {pos}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigUint),
    Sym(char),
}

struct Lexer;

impl Lexer {
    fn run(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut out = Vec::new();
        let bytes = text.as_bytes();
        let mut k = 0;
        while k < bytes.len() {
            let c = bytes[k] as char;
            if c.is_ascii_whitespace() {
                k += 1;
            } else if c.is_ascii_alphabetic() {
                let start = k;
                while k < bytes.len() && (bytes[k] as char).is_ascii_alphanumeric() {
                    k += 1;
                }
                out.push((start, Tok::Ident(text[start..k].to_string())));
            } else if c.is_ascii_digit() {
                let start = k;
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                let n = text[start..k].parse::<BigUint>().expect("digits");
                out.push((start, Tok::Int(n)));
            } else if "+-*/()[]{},".contains(c) {
                out.push((k, Tok::Sym(c)));
                k += 1;
            } else {
                return Err(ParseError {
                    pos: k,
                    message: format!(
                        "unexpected character '{}'",
                        text[k..].chars().next().unwrap_or(c)
                    ),
                });
            }
        }
        Ok(out)
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        message: message.into(),
    })
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            err(self.pos(), format!("expected '{c}'"))
        }
    }

    fn expr(&mut self) -> Result<NCPolynomial, ParseError> {
        let mut negate = false;
        if self.eat('-') {
            negate = true;
        } else {
            self.eat('+');
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Ident(_) | Tok::Int(_) | Tok::Sym('(' | '[' | '{'))
        )
    }

    fn term(&mut self) -> Result<NCPolynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.peek() == Some(&Tok::Sym('*')) {
                let star = self.pos();
                self.at += 1;
                if !self.starts_factor() {
                    return err(star, "expected a factor after '*'");
                }
                acc = &acc * &self.factor()?;
            } else if self.starts_factor() {
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn generator(name: &str) -> Option<u8> {
        match name {
            "S1" => Some(1),
            "S2" => Some(2),
            "S3" => Some(3),
            _ => None,
        }
    }

    fn factor(&mut self) -> Result<NCPolynomial, ParseError> {
        let pos = self.pos();
        let Some(tok) = self.peek().cloned() else {
            return err(pos, "unexpected end of input");
        };
        self.at += 1;
        match tok {
            Tok::Ident(name) => match name.as_str() {
                "I" => Ok(NCPolynomial::one()),
                "i" => Ok(NCPolynomial::scalar(Scalar::i())),
                "sqrt" => self.sqrt(),
                other => match Self::generator(other) {
                    Some(a) => Ok(NCPolynomial::generator(a)),
                    None => err(pos, format!("unknown atom '{other}'")),
                },
            },
            Tok::Int(n) => {
                let numer = Rational::from_integer(n.into());
                if self.eat('/') {
                    let dpos = self.pos();
                    let Some(Tok::Int(d)) = self.peek().cloned() else {
                        return err(dpos, "expected an integer denominator");
                    };
                    self.at += 1;
                    if d.is_zero() {
                        return err(dpos, "division by zero");
                    }
                    let q = numer / Rational::from_integer(d.into());
                    Ok(NCPolynomial::scalar(Scalar::from_rational(q)))
                } else {
                    Ok(NCPolynomial::scalar(Scalar::from_rational(numer)))
                }
            }
            Tok::Sym('(') => {
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Tok::Sym('[') => {
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(']')?;
                Ok(NCPolynomial::commutator(&a, &b))
            }
            Tok::Sym('{') => {
                let mut letters = Vec::new();
                loop {
                    if self.eat('}') {
                        break;
                    }
                    if !letters.is_empty() {
                        self.eat('*');
                    }
                    let gpos = self.pos();
                    match self.peek().cloned() {
                        Some(Tok::Ident(name)) if Self::generator(&name).is_some() => {
                            letters.push(Self::generator(&name).expect("checked"));
                            self.at += 1;
                        }
                        None => return err(gpos, "unclosed '{'"),
                        Some(_) => return err(gpos, "symmetric braces accept only S1, S2, S3"),
                    }
                }
                if letters.is_empty() {
                    return err(pos, "empty symmetric product");
                }
                Ok(NCPolynomial::symmetric(&letters))
            }
            Tok::Sym(c) => err(pos, format!("unexpected '{c}'")),
        }
    }

    fn sqrt(&mut self) -> Result<NCPolynomial, ParseError> {
        self.expect('(')?;
        let pos = self.pos();
        let negative = self.eat('-');
        let Some(Tok::Int(n)) = self.peek().cloned() else {
            return err(pos, "sqrt expects a positive integer");
        };
        self.at += 1;
        if negative || n.is_zero() {
            return err(pos, "sqrt of a non-positive integer");
        }
        if n > BigUint::from(MAX_SQRT_ARG) {
            return err(pos, format!("sqrt argument exceeds {MAX_SQRT_ARG}"));
        }
        self.expect(')')?;
        let r = sqrt_of_integer(&n).expect("positive integer");
        Ok(NCPolynomial::scalar(Scalar::real(r)))
    }
}

/// Parses an expression into a polynomial, expanding brackets and braces.
pub fn parse(text: &str) -> Result<NCPolynomial, ParseError> {
    let toks = Lexer::run(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
    };
    if p.peek().is_none() {
        return err(0, "empty expression");
    }
    let out = p.expr()?;
    if p.peek().is_some() {
        return err(p.pos(), "unexpected trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::Word;
    use crate::scalar::{rational, Radical};

    #[test]
    fn difference_of_products() {
        let p = parse("S1*S2 - S2*S1").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.coefficient(&Word::new(vec![1, 2])), Scalar::one());
        assert_eq!(p.coefficient(&Word::new(vec![2, 1])), -Scalar::one());
    }

    #[test]
    fn braces_and_brackets() {
        assert_eq!(parse("{S1 S2}").unwrap(), parse("S1 S2 + S2 S1").unwrap());
        assert_eq!(parse("{S1*S2}").unwrap(), parse("S1*S2 + S2*S1").unwrap());
        assert_eq!(parse("[S1,S2]").unwrap(), parse("S1 S2 - S2 S1").unwrap());
        assert_eq!(parse("{S1 S1}").unwrap(), parse("2 S1 S1").unwrap());
    }

    #[test]
    fn scalars() {
        let p = parse("1/2*sqrt(8)*i*I").unwrap();
        assert_eq!(
            p,
            NCPolynomial::scalar(Scalar::imag(Radical::term(rational(1, 1), 2)))
        );
        assert_eq!(parse("-(S1)").unwrap(), -&NCPolynomial::generator(1));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("S1*S2*").unwrap_err();
        assert_eq!(e.pos, 5);
        assert!(e.message.contains("'*'"));
        assert_eq!(parse("S1 + S4").unwrap_err().pos, 5);
        assert!(parse("S4").unwrap_err().message.contains("unknown atom"));
        assert!(parse("sqrt(0)")
            .unwrap_err()
            .message
            .contains("non-positive"));
        assert!(parse("sqrt(-2)")
            .unwrap_err()
            .message
            .contains("non-positive"));
        assert!(parse("{S1 i}").is_err());
        assert!(parse("1/0").is_err());
        assert!(parse("").is_err());
        assert!(parse("(S1").is_err());
        assert!(parse("S1 $").is_err());
    }
}
