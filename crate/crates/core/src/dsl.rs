//! The monoid specification language and element literals.
//!
//! ```text
//! spec := "nat" | "congruence" INT "mod" INT | "quadratic" INT
//! INT  := [0-9]+
//! ```
//!
//! Tokens are separated by whitespace and keywords are case-sensitive.
//! Element literals are decimal integers, or for quadratic monoids either
//! the pair form `(a,b)` or a sum of terms like `3+8*sqrt(2)`.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::monoid::{Element, MonoidDescriptor, RawElement};

#[derive(Debug, Clone, PartialEq, Eq)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn tokenize(source: &str) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    for (line_no, line) in source.lines().enumerate() {
        let mut start = None;
        for (col, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(col),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &line[s..col],
                        line: line_no + 1,
                        column: line[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
    }
    tokens
}

/// Position just past the last character of the input, for "expected
/// more" errors.
fn end_position(source: &str) -> (usize, usize) {
    let lines: Vec<&str> = source.lines().collect();
    match lines.last() {
        Some(last) => (lines.len(), last.trim_end().chars().count() + 1),
        None => (1, 1),
    }
}

struct Parser<'a> {
    source: &'a str,
    tokens: Vec<Token<'a>>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error_at(&self, token: Option<&Token<'_>>, message: String) -> Error {
        let (line, column) = match token {
            Some(t) => (t.line, t.column),
            None => end_position(self.source),
        };
        Error::Syntax {
            line,
            column,
            message,
        }
    }

    fn next(&mut self, expected: &str) -> Result<Token<'a>> {
        let token = self.tokens.get(self.pos).cloned();
        match token {
            Some(t) => {
                self.pos += 1;
                Ok(t)
            }
            None => Err(self.error_at(None, format!("expected {expected}, found end of input"))),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        let t = self.next(&format!("'{word}'"))?;
        if t.text != word {
            return Err(self.error_at(Some(&t), format!("expected '{word}', found '{}'", t.text)));
        }
        Ok(())
    }

    fn int(&mut self) -> Result<(u64, Token<'a>)> {
        let t = self.next("an integer")?;
        if t.text.is_empty() || !t.text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(self.error_at(Some(&t), format!("expected an integer, found '{}'", t.text)));
        }
        let value = t
            .text
            .parse::<u64>()
            .map_err(|_| self.error_at(Some(&t), format!("integer '{}' is too large", t.text)))?;
        Ok((value, t))
    }

    fn finish(&self) -> Result<()> {
        match self.tokens.get(self.pos) {
            None => Ok(()),
            Some(t) => Err(self.error_at(Some(t), format!("unexpected trailing input '{}'", t.text))),
        }
    }
}

/// Parses a monoid specification, validating parameters (including
/// multiplicative closure of congruence monoids).
pub fn parse_monoid_spec(source: &str) -> Result<MonoidDescriptor> {
    let mut p = Parser {
        source,
        tokens: tokenize(source),
        pos: 0,
    };
    let head = p.next("'nat', 'congruence' or 'quadratic'")?;
    let desc = match head.text {
        "nat" => MonoidDescriptor::Naturals,
        "congruence" => {
            let (residue, _) = p.int()?;
            p.keyword("mod")?;
            let (modulus, _) = p.int()?;
            MonoidDescriptor::congruence(residue, modulus)?
        }
        "quadratic" => {
            let (radicand, _) = p.int()?;
            MonoidDescriptor::quadratic(radicand)?
        }
        other => {
            return Err(p.error_at(
                Some(&head),
                format!("expected 'nat', 'congruence' or 'quadratic', found '{other}'"),
            ))
        }
    };
    p.finish()?;
    Ok(desc)
}

fn literal_error(column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: 1,
        column,
        message: message.into(),
    }
}

fn digits(text: &str, offset: usize) -> Result<BigUint> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(literal_error(offset + 1, format!("expected an integer, found '{text}'")));
    }
    Ok(text.parse().expect("digits parse"))
}

/// Parses `a+b*sqrt(d)` style sums; every term is `INT`, `INT*sqrt(d)` or
/// `sqrt(d)`.
fn parse_surd_sum(text: &str, radicand: u64) -> Result<(BigUint, BigUint)> {
    let mut rational = BigUint::zero();
    let mut surd = BigUint::zero();
    let mut offset = 0;
    for term in text.split('+') {
        let trimmed = term.trim();
        let lead = term.len() - term.trim_start().len();
        let at = offset + lead;
        if let Some(open) = trimmed.find("sqrt(") {
            let Some(inner) = trimmed[open + 5..].strip_suffix(')') else {
                return Err(literal_error(at + 1, format!("unclosed sqrt in '{trimmed}'")));
            };
            let d = digits(inner.trim(), at + open + 5)?;
            if d != BigUint::from(radicand) {
                return Err(literal_error(
                    at + open + 6,
                    format!("sqrt({d}) does not belong to quadratic {radicand}"),
                ));
            }
            let coefficient = match trimmed[..open].trim_end() {
                "" => BigUint::from(1u32),
                prefix => match prefix.strip_suffix('*') {
                    Some(c) => digits(c.trim(), at)?,
                    None => return Err(literal_error(at + 1, format!("expected '*' before sqrt in '{trimmed}'"))),
                },
            };
            surd += coefficient;
        } else {
            rational += digits(trimmed, at)?;
        }
        offset += term.len() + 1;
    }
    Ok((rational, surd))
}

/// Parses raw components for `desc` without checking membership.
pub fn parse_raw_element(desc: MonoidDescriptor, text: &str) -> Result<RawElement> {
    let trimmed = text.trim();
    match desc {
        MonoidDescriptor::Quadratic { radicand } => {
            if let Some(body) = trimmed.strip_prefix('(') {
                let Some(body) = body.strip_suffix(')') else {
                    return Err(literal_error(trimmed.len(), "expected ')'"));
                };
                let mut parts = body.split(',');
                let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
                    return Err(literal_error(2, "pair form needs exactly two components"));
                };
                let a = parse_signed(a.trim(), 2)?;
                let b = parse_signed(b.trim(), 3 + body.find(',').unwrap_or(0))?;
                return Ok(RawElement::Pair(a, b));
            }
            let (a, b) = parse_surd_sum(trimmed, radicand)?;
            Ok(RawElement::Pair(BigInt::from(a), BigInt::from(b)))
        }
        _ => Ok(RawElement::Int(parse_signed(trimmed, 1)?)),
    }
}

fn parse_signed(text: &str, column: usize) -> Result<BigInt> {
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let magnitude = BigInt::from(digits(body, column - 1)?);
    Ok(if negative { -magnitude } else { magnitude })
}

/// Parses and validates an element of `desc`.
pub fn parse_element(desc: MonoidDescriptor, text: &str) -> Result<Element> {
    desc.element(&parse_raw_element(desc, text)?)
}

/// A positive integer bound such as a survey `--bound`.
pub fn parse_bound(text: &str) -> Result<BigUint> {
    digits(text.trim(), 0)
}

/// A small positive integer, for the machine-word Euclid routines.
pub fn parse_u64(text: &str) -> Result<u64> {
    parse_bound(text)?
        .to_u64()
        .ok_or_else(|| Error::InvalidInput(format!("{text} is too large")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        assert_eq!(
            parse_monoid_spec("congruence 1 mod 3").unwrap(),
            MonoidDescriptor::Congruence {
                residue: 1,
                modulus: 3
            }
        );
        assert_eq!(parse_monoid_spec("nat").unwrap(), MonoidDescriptor::Naturals);
        assert_eq!(
            parse_monoid_spec("  quadratic   2 ").unwrap(),
            MonoidDescriptor::Quadratic { radicand: 2 }
        );
        let err = parse_monoid_spec("congruence 2 mod 3").unwrap_err();
        assert!(matches!(err, Error::NotClosed { product: 4, product_residue: 1, residue: 2, .. }));
        assert_eq!(
            err.to_string(),
            "monoid not multiplicatively closed: product 4 has residue 1 \u{2260} 2"
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let pos = |s: &str| match parse_monoid_spec(s).unwrap_err() {
            Error::Syntax { line, column, .. } => (line, column),
            other => panic!("{other:?}"),
        };
        assert_eq!(pos("naturals"), (1, 1));
        assert_eq!(pos("congruence 1 modulo 3"), (1, 14));
        assert_eq!(pos("congruence x mod 3"), (1, 12));
        assert_eq!(pos("congruence 1 mod"), (1, 17));
        assert_eq!(pos("nat nat"), (1, 5));
        assert_eq!(pos("Nat"), (1, 1));
        assert_eq!(pos(""), (1, 1));
        assert_eq!(pos("quadratic\n  two"), (2, 3));
        assert_eq!(pos("quadratic 99999999999999999999999"), (1, 11));
    }

    #[test]
    fn semantic_errors() {
        assert!(matches!(parse_monoid_spec("quadratic 4"), Err(Error::InvalidInput(_))));
        assert!(matches!(parse_monoid_spec("congruence 0 mod 3"), Err(Error::InvalidInput(_))));
        assert!(matches!(parse_monoid_spec("congruence 1 mod 0"), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn element_literals() {
        let q2 = MonoidDescriptor::quadratic(2).unwrap();
        let expected = q2.quad(3u32, 8u32).unwrap();
        assert_eq!(parse_element(q2, "3+8*sqrt(2)").unwrap(), expected);
        assert_eq!(parse_element(q2, "(3,8)").unwrap(), expected);
        assert_eq!(parse_element(q2, "( 3 , 8 )").unwrap(), expected);
        assert_eq!(parse_element(q2, "7").unwrap(), q2.quad(7u32, 0u32).unwrap());
        assert_eq!(parse_element(q2, "sqrt(2)").unwrap(), q2.quad(0u32, 1u32).unwrap());
        assert_eq!(parse_element(q2, "1 + sqrt(2)").unwrap(), q2.quad(1u32, 1u32).unwrap());
        assert!(parse_element(q2, "3+8*sqrt(3)").is_err());
        assert!(parse_element(q2, "(0,0)").is_err());
        assert!(matches!(parse_element(q2, "(-1,2)"), Err(Error::InvalidInput(_))));
        assert!(matches!(parse_element(q2, "3+x"), Err(Error::Syntax { .. })));

        let c = MonoidDescriptor::congruence(1, 3).unwrap();
        assert_eq!(parse_element(c, "100").unwrap(), c.int(100u32).unwrap());
        assert!(matches!(parse_element(c, "5"), Err(Error::NotAMember { .. })));
        assert!(matches!(parse_element(MonoidDescriptor::Naturals, "0"), Err(Error::NotAMember { .. })));
    }

    #[test]
    fn canonical_text_round_trips() {
        for text in ["nat", "congruence 1 mod 3", "congruence 3 mod 6", "quadratic 2", "quadratic 5"] {
            assert_eq!(parse_monoid_spec(text).unwrap().to_string(), text);
        }
    }
}
