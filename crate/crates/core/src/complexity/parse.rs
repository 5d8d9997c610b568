//! Recursive-descent parser for big-O expressions.
//!
//! ```text
//! expr     := [ "O(" ] sum [ ")" ]
//! sum      := product { "+" product }
//! product  := factor { ["*"] factor }
//! factor   := base [ "^" exponent ]
//! base     := "n" | log | number | "(" sum ")"
//! log      := ("log" | "lg" | "ln") ( "(" sum ")" | base )
//! exponent := base [ "^" exponent ]
//! ```
//!
//! Numbers are decimal integers, decimals or fractions `p/q`. Juxtaposition
//! multiplies, so `n log n` and `n*log(n)` are the same expression.

use num_traits::Zero;

use super::expr::{ComplexityExpr, Lowered};
use super::{AlgebraError, ParseError, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    BigO,
    N,
    Log,
    Num(Rational),
    Plus,
    Star,
    Caret,
    LParen,
    RParen,
    Unknown(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::BigO => "'O('".into(),
            Tok::N => "'n'".into(),
            Tok::Log => "'log'".into(),
            Tok::Num(r) => format!("number {r}"),
            Tok::Plus => "'+'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Unknown(c) => format!("'{c}'"),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < text.len() {
        let c = text[i..].chars().next().unwrap_or(' ');
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '*' | '·' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                let (value, len) = lex_number(&text[i..]).ok_or_else(|| ParseError::Syntax {
                    position: start,
                    expected: vec!["number".into()],
                    found: text[i..].chars().take(8).collect(),
                })?;
                i += len;
                out.push((start, Tok::Num(value)));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_alphanumeric() {
                    j += 1;
                }
                let word = &text[i..j];
                let tok = match word {
                    "n" => Tok::N,
                    "log" | "lg" | "ln" | "log2" => Tok::Log,
                    "O" if text[j..].trim_start().starts_with('(') => Tok::BigO,
                    _ => Tok::Unknown(c),
                };
                i = j;
                out.push((start, tok));
                continue;
            }
            other => Tok::Unknown(other),
        };
        i += c.len_utf8();
        out.push((start, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

fn lex_number(s: &str) -> Option<(Rational, usize)> {
    let digits = |s: &str| s.bytes().take_while(u8::is_ascii_digit).count();
    let int_len = digits(s);
    let int: i64 = s[..int_len].parse().ok()?;
    let rest = &s[int_len..];
    if let Some(frac) = rest.strip_prefix('.') {
        let len = digits(frac);
        if len == 0 {
            return None;
        }
        let scale = 10i64.checked_pow(u32::try_from(len).ok()?)?;
        let num = int.checked_mul(scale)?.checked_add(frac[..len].parse().ok()?)?;
        return Some((Rational::new(num, scale), int_len + 1 + len));
    }
    if let Some(den) = rest.strip_prefix('/') {
        let len = digits(den);
        if len > 0 {
            let d: i64 = den[..len].parse().ok()?;
            if d == 0 {
                return None;
            }
            return Some((Rational::new(int, d), int_len + 1 + len));
        }
    }
    Some((Rational::from_integer(int), int_len))
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> AlgebraError {
        AlgebraError::Parse(ParseError::Syntax {
            position: self.offset(),
            expected: expected.iter().map(|s| (*s).to_string()).collect(),
            found: self.peek().describe(),
        })
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), AlgebraError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[expected]))
        }
    }

    fn expr(&mut self) -> Result<Lowered, AlgebraError> {
        let wrapped = *self.peek() == Tok::BigO;
        if wrapped {
            self.bump();
            self.expect(Tok::LParen, "'('")?;
        }
        let value = self.sum()?;
        if wrapped {
            self.expect(Tok::RParen, "')'")?;
        }
        if *self.peek() != Tok::End {
            let mut expected = vec!["'+'", "'*'", "'^'"];
            expected.push(if wrapped { "end of input" } else { "')' or end of input" });
            return Err(self.error(&expected));
        }
        Ok(value)
    }

    fn sum(&mut self) -> Result<Lowered, AlgebraError> {
        let mut acc = self.product()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            acc = acc.add(self.product()?);
        }
        Ok(acc)
    }

    fn starts_base(&self) -> bool {
        matches!(self.peek(), Tok::N | Tok::Log | Tok::Num(_) | Tok::LParen)
    }

    fn product(&mut self) -> Result<Lowered, AlgebraError> {
        let mut acc = self.factor()?;
        loop {
            if *self.peek() == Tok::Star {
                self.bump();
            } else if !self.starts_base() {
                break;
            }
            acc = acc.mul(self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Lowered, AlgebraError> {
        let base = self.base()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let exponent = self.exponent()?;
            base.pow(exponent)
        } else {
            Ok(base)
        }
    }

    fn exponent(&mut self) -> Result<Lowered, AlgebraError> {
        self.factor()
    }

    fn base(&mut self) -> Result<Lowered, AlgebraError> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::N => {
                self.bump();
                Ok(Lowered::n())
            }
            Tok::Num(v) => {
                self.bump();
                if v.is_zero() {
                    return Err(AlgebraError::Parse(ParseError::Syntax {
                        position: at,
                        expected: vec!["positive number".into()],
                        found: "0".into(),
                    }));
                }
                Ok(Lowered::Const(v))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.sum()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::Log => {
                self.bump();
                let arg = if *self.peek() == Tok::LParen {
                    self.bump();
                    let inner = self.sum()?;
                    self.expect(Tok::RParen, "')'")?;
                    inner
                } else {
                    self.base()?
                };
                arg.log()
            }
            _ => Err(self.error(&["'n'", "'log'", "number", "'('"])),
        }
    }
}

/// Parse and normalize a big-O expression.
pub fn parse_complexity(text: &str) -> Result<ComplexityExpr, AlgebraError> {
    let toks = lex(text).map_err(AlgebraError::Parse)?;
    let mut parser = Parser { toks, pos: 0 };
    Ok(parser.expr()?.into_expr())
}
