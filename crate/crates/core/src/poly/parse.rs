//! Parser for mixed polynomial expressions.
//!
//! Grammar (whitespace insignificant, variable indices 1-based):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := coeff | var ('^' uint)?
//! var    := 'z' uint | 'zbar' uint
//! coeff  := uint ('/' uint)? | 'i' | '(' ['-'] uint ('+'|'-') uint 'i' ')'
//! ```
//!
//! Conjugated variables are written `zbar3`; a complex coefficient is
//! written in parentheses, e.g. `(3-4i)*z1^2*zbar2`.

use super::{MixedMonomial, MixedPolynomial};
use crate::exact::{BigInt, BigRational, GaussianRational};
use num_traits::Zero;
use std::fmt;

/// A syntax error with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Var { bar: bool, index: usize },
    ImagUnit,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                toks.push((Tok::Plus, start));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, start));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, start));
                i += 1;
            }
            '/' => {
                toks.push((Tok::Slash, start));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, start));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, start));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, start));
                i += 1;
            }
            '0'..='9' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let value: BigInt = text[i..j].parse().expect("digit run");
                toks.push((Tok::Int(value), start));
                i = j;
            }
            'a'..='z' | 'A'..='Z' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_alphabetic() {
                    j += 1;
                }
                let name = &text[i..j];
                match name {
                    "i" => {
                        toks.push((Tok::ImagUnit, start));
                        i = j;
                    }
                    "z" | "zbar" => {
                        let mut k = j;
                        while k < bytes.len() && bytes[k].is_ascii_digit() {
                            k += 1;
                        }
                        if k == j {
                            return err(start, format!("'{name}' must be followed by an index"));
                        }
                        let index: usize = match text[j..k].parse() {
                            Ok(v) => v,
                            Err(_) => return err(j, "variable index too large"),
                        };
                        if index == 0 {
                            return err(j, "variable index must be at least 1");
                        }
                        toks.push((
                            Tok::Var {
                                bar: name == "zbar",
                                index,
                            },
                            start,
                        ));
                        i = k;
                    }
                    _ => return err(start, format!("unknown name '{name}'")),
                }
            }
            _ => return err(start, format!("unexpected character '{c}'")),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    end: usize,
    declared_n: Option<usize>,
    max_index: usize,
}

/// One parsed additive term, before canonicalization.
struct RawTerm {
    coeff: GaussianRational,
    powers: Vec<(bool, usize, u32)>, // (conjugated, 1-based index, exponent)
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<&'a Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t);
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: &Tok, what: &str) -> Result<(), ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => err(pos, format!("expected {what}")),
        }
    }

    fn parse_uint_u32(&mut self, what: &str) -> Result<u32, ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Int(v)) => {
                use num_traits::ToPrimitive;
                v.to_u32().map_or_else(|| err(pos, "exponent too large"), Ok)
            }
            _ => err(pos, format!("expected {what}")),
        }
    }

    fn parse_expr(&mut self) -> Result<Vec<RawTerm>, ParseError> {
        let mut terms = Vec::new();
        let mut negate = match self.peek() {
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            _ => false,
        };
        loop {
            let mut term = self.parse_term()?;
            if negate {
                term.coeff = -&term.coeff;
            }
            terms.push(term);
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    negate = false;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    negate = true;
                }
                None => break,
                _ => return err(self.here(), "expected '+', '-', '*' or end of input"),
            }
        }
        Ok(terms)
    }

    fn parse_term(&mut self) -> Result<RawTerm, ParseError> {
        let mut term = RawTerm {
            coeff: GaussianRational::one(),
            powers: Vec::new(),
        };
        self.parse_factor(&mut term)?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            self.parse_factor(&mut term)?;
        }
        Ok(term)
    }

    fn parse_factor(&mut self, term: &mut RawTerm) -> Result<(), ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Var { bar, index }) => {
                if let Some(n) = self.declared_n {
                    if *index > n {
                        return err(
                            pos,
                            format!("variable index {index} exceeds declared count {n}"),
                        );
                    }
                }
                self.max_index = self.max_index.max(*index);
                let exp = if self.peek() == Some(&Tok::Caret) {
                    self.bump();
                    self.parse_uint_u32("an exponent after '^'")?
                } else {
                    1
                };
                term.powers.push((*bar, *index, exp));
                Ok(())
            }
            Some(Tok::Int(v)) => {
                let mut value = BigRational::from_integer(v.clone());
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let dpos = self.here();
                    match self.bump() {
                        Some(Tok::Int(d)) => {
                            if d.is_zero() {
                                return err(dpos, "zero denominator");
                            }
                            value /= BigRational::from_integer(d.clone());
                        }
                        _ => return err(dpos, "expected a denominator after '/'"),
                    }
                }
                term.coeff = &term.coeff * &GaussianRational::from_rational(value);
                Ok(())
            }
            Some(Tok::ImagUnit) => {
                term.coeff = &term.coeff * &GaussianRational::i();
                Ok(())
            }
            Some(Tok::LParen) => {
                let c = self.parse_complex_literal()?;
                term.coeff = &term.coeff * &c;
                Ok(())
            }
            _ => err(pos, "expected a coefficient or a variable"),
        }
    }

    /// `['-'] uint ('+'|'-') uint 'i' ')'` — the opening paren is consumed.
    fn parse_complex_literal(&mut self) -> Result<GaussianRational, ParseError> {
        let re_negative = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let pos = self.here();
        let re = match self.bump() {
            Some(Tok::Int(v)) => {
                let v = BigRational::from_integer(v.clone());
                if re_negative {
                    -v
                } else {
                    v
                }
            }
            _ => return err(pos, "expected an integer real part"),
        };
        let im_negative = match self.bump() {
            Some(Tok::Plus) => false,
            Some(Tok::Minus) => true,
            _ => return err(pos, "expected '+' or '-' in complex literal"),
        };
        let ipos = self.here();
        let im = match self.bump() {
            Some(Tok::Int(v)) => {
                let v = BigRational::from_integer(v.clone());
                if im_negative {
                    -v
                } else {
                    v
                }
            }
            _ => return err(ipos, "expected an integer imaginary part"),
        };
        self.expect(&Tok::ImagUnit, "'i' in complex literal")?;
        self.expect(&Tok::RParen, "')'")?;
        Ok(GaussianRational::new(re, im))
    }
}

/// Parse `text` into a canonical [`MixedPolynomial`].
///
/// The variable count is inferred as the largest index mentioned unless `n`
/// is given; a declared `n` smaller than a mentioned index is an error.
pub fn parse(text: &str, n: Option<usize>) -> Result<MixedPolynomial, ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return err(0, "empty input");
    }
    let mut parser = Parser {
        toks: &toks,
        pos: 0,
        end: text.len(),
        declared_n: n,
        max_index: 0,
    };
    let raw_terms = parser.parse_expr()?;
    let n = n.unwrap_or(parser.max_index);
    let terms: Vec<MixedMonomial> = raw_terms
        .into_iter()
        .map(|t| {
            let mut nu = vec![0u32; n];
            let mut mu = vec![0u32; n];
            for (bar, index, exp) in t.powers {
                let slot = if bar {
                    &mut mu[index - 1]
                } else {
                    &mut nu[index - 1]
                };
                *slot = slot.saturating_add(exp);
            }
            MixedMonomial {
                coeff: t.coeff,
                nu,
                mu,
            }
        })
        .collect();
    MixedPolynomial::new(n, terms).map_err(|e| ParseError {
        pos: 0,
        message: e.to_string(),
    })
}
