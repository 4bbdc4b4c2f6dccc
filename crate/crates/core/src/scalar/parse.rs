//! Recursive-descent parser for scalar text.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := unary (('*'|'/')? unary)*        juxtaposition multiplies
//! unary  := '-' unary | power
//! power  := atom ('^' ('+'|'-')? int)?
//! atom   := number | symbol | '(' expr ')'
//! ```
//!
//! Numbers may carry a decimal point and are read exactly (`1.25` is `5/4`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gauss::GaussRat;
use super::ratfunc::RatFunc;
use super::{FieldTag, ScalarError};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ScalarError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit()
            || (c == '.' && chars.get(k + 1).is_some_and(char::is_ascii_digit))
        {
            let start = k;
            let mut int = BigInt::zero();
            let mut den = BigInt::one();
            let mut seen_dot = false;
            while k < chars.len() && (chars[k].is_ascii_digit() || (chars[k] == '.' && !seen_dot)) {
                if chars[k] == '.' {
                    seen_dot = true;
                } else {
                    int = int * 10 + chars[k].to_digit(10).unwrap();
                    if seen_dot {
                        den *= 10;
                    }
                }
                k += 1;
            }
            out.push((start, Tok::Num(BigRational::new(int, den))));
        } else if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push((start, Tok::Ident(chars[start..k].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((k, Tok::Sym(c)));
            k += 1;
        } else {
            return Err(ScalarError::Syntax {
                pos: k,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    tag: &'a FieldTag,
}

impl Parser<'_> {
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

    fn syntax(&self, msg: &str) -> ScalarError {
        ScalarError::Syntax {
            pos: self.pos(),
            msg: msg.to_string(),
        }
    }

    fn expr(&mut self) -> Result<RatFunc, ScalarError> {
        let mut acc = if self.eat('-') {
            -self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
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

    fn term(&mut self) -> Result<RatFunc, ScalarError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = &acc * &d.inv()?;
            } else if matches!(
                self.peek(),
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::Sym('('))
            ) {
                acc = &acc * &self.unary()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, ScalarError> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc, ScalarError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let Some(Tok::Num(e)) = self.peek().cloned() else {
            return Err(self.syntax("expected integer exponent"));
        };
        let e: i32 = match (e.is_integer(), i32::try_from(e.to_integer())) {
            (true, Ok(v)) => v,
            _ => return Err(self.syntax("exponent must be a small integer")),
        };
        self.at += 1;
        base.powi(if neg { -e } else { e })
    }

    fn atom(&mut self) -> Result<RatFunc, ScalarError> {
        match self.peek().cloned() {
            Some(Tok::Num(r)) => {
                self.at += 1;
                Ok(RatFunc::constant(GaussRat::real(r)))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if name == "i" && self.tag.imaginary {
                    Ok(RatFunc::i())
                } else if self.tag.indeterminates.contains(&name) {
                    Ok(RatFunc::var(&name))
                } else {
                    Err(ScalarError::UnknownSymbol(name))
                }
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.syntax("expected ')'"));
                }
                Ok(v)
            }
            Some(_) => Err(self.syntax("expected a number, symbol or '('")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}

/// Parses `text` into an exact rational function over the tag's indeterminates.
pub fn parse_exact(text: &str, tag: &FieldTag) -> Result<RatFunc, ScalarError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(ScalarError::Syntax {
            pos: 0,
            msg: "empty scalar".into(),
        });
    }
    let mut p = Parser {
        toks,
        at: 0,
        end: text.chars().count(),
        tag,
    };
    let v = p.expr()?;
    if p.at != p.toks.len() {
        return Err(p.syntax("trailing input"));
    }
    Ok(v)
}
