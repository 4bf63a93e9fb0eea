//! Recursive-descent parser for the prefix formula syntax
//!
//! ```text
//! formula := var | name "(" formula ("," formula)* ")"
//! var     := "x" [0-9]+
//! name    := [a-z][a-z0-9_]*
//! ```
//!
//! Whitespace is allowed between tokens. A nullary connective is written as
//! its bare name.

use crate::error::{Error, Result};

use super::formula::Formula;
use super::signature::{is_variable_name, Signature};

struct Parser<'a> {
    sig: &'a Signature,
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(b) = self.text.as_bytes().get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.as_bytes().get(self.pos).copied()
    }

    fn expect(&mut self, want: u8) -> Result<()> {
        match self.peek() {
            Some(b) if b == want => {
                self.pos += 1;
                Ok(())
            }
            Some(b) => Err(self.error(
                self.pos,
                format!("expected `{}`, found `{}`", want as char, b as char),
            )),
            None => Err(self.error(
                self.pos,
                format!("expected `{}`, found end of input", want as char),
            )),
        }
    }

    fn identifier(&mut self) -> Result<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.text.as_bytes();
        match bytes.get(start) {
            Some(b) if b.is_ascii_lowercase() => {}
            Some(b) => {
                return Err(self.error(start, format!("unexpected character `{}`", *b as char)))
            }
            None => return Err(self.error(start, "unexpected end of input")),
        }
        let mut end = start + 1;
        while let Some(b) = bytes.get(end) {
            if b.is_ascii_lowercase() || b.is_ascii_digit() || *b == b'_' {
                end += 1;
            } else {
                break;
            }
        }
        self.pos = end;
        Ok((start, &self.text[start..end]))
    }

    fn formula(&mut self) -> Result<Formula> {
        let (start, ident) = self.identifier()?;
        if is_variable_name(ident) {
            let index: u32 = ident[1..]
                .parse()
                .map_err(|_| self.error(start, format!("variable index `{ident}` is too large")))?;
            return Ok(Formula::Var(index));
        }
        let arity = self
            .sig
            .arity(ident)
            .ok_or_else(|| Error::UnknownConnective(ident.to_string()))?;
        if self.peek() != Some(b'(') {
            if arity == 0 {
                return Ok(Formula::app(ident, Vec::new()));
            }
            return Err(Error::Arity {
                name: ident.to_string(),
                expected: arity,
                found: 0,
            });
        }
        self.pos += 1;
        let mut args = vec![self.formula()?];
        loop {
            match self.peek() {
                Some(b',') => {
                    self.pos += 1;
                    args.push(self.formula()?);
                }
                Some(b')') => {
                    self.pos += 1;
                    break;
                }
                _ => {
                    self.expect(b')')?;
                }
            }
        }
        if args.len() != arity {
            return Err(Error::Arity {
                name: ident.to_string(),
                expected: arity,
                found: args.len(),
            });
        }
        Ok(Formula::app(ident, args))
    }
}

/// Parses `text` as a single formula over `sig`.
pub fn parse_formula(sig: &Signature, text: &str) -> Result<Formula> {
    let mut parser = Parser { sig, text, pos: 0 };
    let formula = parser.formula()?;
    if let Some(b) = parser.peek() {
        return Err(parser.error(
            parser.pos,
            format!("trailing input starting with `{}`", b as char),
        ));
    }
    Ok(formula)
}

/// Parses a `;`-separated list of formulas. Empty segments are skipped, so
/// the empty string yields the empty list.
pub fn parse_formula_list(sig: &Signature, text: &str) -> Result<Vec<Formula>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(';') {
        if !part.trim().is_empty() {
            let f = parse_formula(sig, part).map_err(|e| match e {
                Error::Parse { offset: o, message } => Error::Parse {
                    offset: o + offset,
                    message,
                },
                other => other,
            })?;
            out.push(f);
        }
        offset += part.len() + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::propositional_with_iff()
    }

    #[test]
    fn grammar_base_cases() {
        assert_eq!(parse_formula(&sig(), "x0").unwrap(), Formula::var(0));
        assert_eq!(
            parse_formula(&Signature::from_pairs(&[("imp", 2)]).unwrap(), "imp(x0,x1)").unwrap(),
            Formula::imp(Formula::var(0), Formula::var(1))
        );
    }

    #[test]
    fn arity_mismatch() {
        let imp_only = Signature::from_pairs(&[("imp", 2)]).unwrap();
        assert!(matches!(
            parse_formula(&imp_only, "imp(x0)"),
            Err(Error::Arity {
                expected: 2,
                found: 1,
                ..
            })
        ));
        assert!(matches!(
            parse_formula(&imp_only, "imp"),
            Err(Error::Arity { found: 0, .. })
        ));
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_formula(&sig(), "imp(x0, x1") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 10),
            other => panic!("unexpected {other:?}"),
        }
        match parse_formula(&sig(), "neg(x0) x1") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 8),
            other => panic!("unexpected {other:?}"),
        }
        match parse_formula(&sig(), "neg(X0)") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_formula(&sig(), "box(x0)"),
            Err(Error::UnknownConnective(name)) if name == "box"
        ));
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = parse_formula(&sig(), " imp ( x0 ,\n neg( x1 ) ) ").unwrap();
        assert_eq!(a.to_string(), "imp(x0,neg(x1))");
    }

    #[test]
    fn nullary_connectives_are_bare_names() {
        let s = Signature::from_pairs(&[("top", 0), ("and", 2)]).unwrap();
        let f = parse_formula(&s, "and(top,x2)").unwrap();
        assert_eq!(f.to_string(), "and(top,x2)");
        assert!(parse_formula(&s, "top(x0)").is_err());
    }

    #[test]
    fn lists() {
        let v = parse_formula_list(&sig(), "x0; imp(x0,x1)").unwrap();
        assert_eq!(v.len(), 2);
        assert!(parse_formula_list(&sig(), "").unwrap().is_empty());
        match parse_formula_list(&sig(), "x0;neg(") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 7),
            other => panic!("unexpected {other:?}"),
        }
    }
}
