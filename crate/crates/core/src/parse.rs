//! Lexer shared by the polynomial and intersection-class parsers, and the
//! polynomial parser itself.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := coeff ('*'? factor)* | factor ('*'? factor)*
//! factor := ident ('^' uint)?
//! coeff  := uint
//! ident  := letter (letter | digit | '_')*
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::field::Prime;
use crate::monomial::Monomial;
use crate::poly::{Polynomial, VariableSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Token<'a> {
    /// Decimal digits, unparsed so callers can fold them in their own ring.
    Int(&'a str),
    Ident(&'a str),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
}

#[derive(Clone, Debug)]
pub struct Lexeme<'a> {
    pub token: Token<'a>,
    pub pos: usize,
}

pub fn tokenize(text: &str) -> Result<Vec<Lexeme<'_>>, (usize, String)> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let token = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b',' => Token::Comma,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Lexeme { token: Token::Int(&text[start..i]), pos: start });
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Lexeme { token: Token::Ident(&text[start..i]), pos: start });
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err((start, format!("unexpected character `{ch}`")));
            }
        };
        out.push(Lexeme { token, pos: start });
        i += 1;
    }
    Ok(out)
}

/// Folds a decimal digit string into `0..modulus` without overflow.
pub fn fold_digits(digits: &str, modulus: u64) -> u64 {
    digits.bytes().fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % modulus)
}

pub fn parse_exponent(digits: &str) -> Result<u16, AlgebraError> {
    digits.parse::<u16>().map_err(|_| AlgebraError::ExponentOverflow)
}

struct PolyParser<'a, 't> {
    toks: &'t [Lexeme<'a>],
    at: usize,
    end: usize,
    vars: &'t VariableSet,
    p: Prime,
}

impl<'a, 't> PolyParser<'a, 't> {
    fn peek(&self) -> Option<&Token<'a>> {
        self.toks.get(self.at).map(|l| &l.token)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |l| l.pos)
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, AlgebraError> {
        Err(AlgebraError::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<BTreeMap<Monomial, u32>, AlgebraError> {
        let p = self.p;
        let mut acc: BTreeMap<Monomial, u32> = BTreeMap::new();
        let mut negate = false;
        if self.peek() == Some(&Token::Minus) {
            negate = true;
            self.at += 1;
        }
        loop {
            let (m, mut c) = self.term()?;
            if negate {
                c = p.neg(c);
            }
            let slot = acc.entry(m).or_insert(0);
            *slot = p.add(*slot, c);
            match self.peek() {
                None => break,
                Some(Token::Plus) => negate = false,
                Some(Token::Minus) => negate = true,
                Some(_) => return self.syntax("expected `+`, `-` or end of input"),
            }
            self.at += 1;
        }
        acc.retain(|_, c| *c != 0);
        Ok(acc)
    }

    fn term(&mut self) -> Result<(Monomial, u32), AlgebraError> {
        let mut coeff = 1u32;
        let mut exps = vec![0u16; self.vars.len()];
        let mut factors = 0;
        if let Some(Token::Int(d)) = self.peek() {
            coeff = fold_digits(d, self.p.get() as u64) as u32;
            self.at += 1;
            factors += 1;
        }
        loop {
            let starred = self.peek() == Some(&Token::Star);
            if starred {
                if factors == 0 {
                    return self.syntax("term cannot start with `*`");
                }
                self.at += 1;
            }
            match self.peek() {
                Some(Token::Ident(name)) => {
                    let pos = self.pos();
                    let i = self
                        .vars
                        .index_of(name)
                        .ok_or_else(|| AlgebraError::UnknownVariable { name: name.to_string(), pos })?;
                    self.at += 1;
                    let mut e = 1u16;
                    if self.peek() == Some(&Token::Caret) {
                        self.at += 1;
                        match self.peek() {
                            Some(Token::Int(d)) => {
                                e = parse_exponent(d)?;
                                self.at += 1;
                            }
                            _ => return self.syntax("expected exponent after `^`"),
                        }
                    }
                    exps[i] = exps[i].checked_add(e).ok_or(AlgebraError::ExponentOverflow)?;
                    factors += 1;
                }
                _ if starred => return self.syntax("expected variable after `*`"),
                _ => break,
            }
        }
        if factors == 0 {
            return self.syntax("expected a coefficient or variable");
        }
        Ok((Monomial::new(exps), coeff))
    }
}

/// Parses `text` as a polynomial in `vars` over F_p.
pub fn parse_poly(text: &str, vars: &Arc<VariableSet>, p: Prime) -> Result<Polynomial, AlgebraError> {
    let toks = tokenize(text).map_err(|(pos, msg)| AlgebraError::Syntax { pos, msg })?;
    if toks.is_empty() {
        return Err(AlgebraError::Syntax { pos: 0, msg: "empty polynomial".into() });
    }
    let mut parser = PolyParser { toks: &toks, at: 0, end: text.len(), vars, p };
    let terms = parser.expr()?;
    Ok(Polynomial::from_map(p, vars.clone(), terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(names: &[&str]) -> Arc<VariableSet> {
        Arc::new(VariableSet::standard(names).unwrap())
    }

    #[test]
    fn reads_fermat_terms() {
        let f = parse_poly("x0^4+x1^4", &vars(&["x0", "x1"]), Prime::new(7).unwrap()).unwrap();
        assert_eq!(f.num_terms(), 2);
        assert!(f.terms().all(|(_, c)| c == 1));
    }

    #[test]
    fn coefficients_combine() {
        let f = parse_poly("2*x0 - x0", &vars(&["x0"]), Prime::new(3).unwrap()).unwrap();
        assert_eq!(f.to_string(), "x0");
    }

    #[test]
    fn leading_minus_and_implicit_product() {
        let p = Prime::new(5).unwrap();
        let v = vars(&["x", "y"]);
        let f = parse_poly("-3x y^2 + 2 x*y^2", &v, p).unwrap();
        assert_eq!(f.to_string(), "4*x*y^2");
    }

    #[test]
    fn huge_coefficients_fold_mod_p() {
        let p = Prime::new(7).unwrap();
        let f = parse_poly("123456789012345678901234567890*x", &vars(&["x"]), p).unwrap();
        // 123456789012345678901234567890 mod 7
        let expect = "123456789012345678901234567890".bytes().fold(0u64, |a, d| (a * 10 + (d - b'0') as u64) % 7);
        assert_eq!(f.coeff(&Monomial::new(vec![1])) as u64, expect);
    }

    #[test]
    fn errors_carry_positions() {
        let p = Prime::new(5).unwrap();
        let v = vars(&["x", "y"]);
        assert_eq!(parse_poly("x + z", &v, p), Err(AlgebraError::UnknownVariable { name: "z".into(), pos: 4 }));
        assert!(matches!(parse_poly("x + + y", &v, p), Err(AlgebraError::Syntax { pos: 4, .. })));
        assert!(matches!(parse_poly("x^", &v, p), Err(AlgebraError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("x $ y", &v, p), Err(AlgebraError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("", &v, p), Err(AlgebraError::Syntax { .. })));
        assert!(matches!(parse_poly("x*", &v, p), Err(AlgebraError::Syntax { .. })));
        assert_eq!(parse_poly("x^70000", &v, p), Err(AlgebraError::ExponentOverflow));
    }

    #[test]
    fn zero_result_is_the_zero_polynomial() {
        let p = Prime::new(2).unwrap();
        let f = parse_poly("x + x", &vars(&["x"]), p).unwrap();
        assert!(f.is_zero());
        assert_eq!(f.to_string(), "0");
    }
}
