//! Parser for the canonical polynomial text syntax, e.g.
//! `"(1/2+1/2*i)*z1^2*u2 + 3*z2 - i*u1^3"`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::scalar::GaussRational;
use super::{ExactError, MultiPoly};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    ImagUnit,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, ExactError> {
    let mut out = Vec::new();
    let bytes: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = bytes[start..i].iter().collect();
                let n = text
                    .parse::<BigInt>()
                    .map_err(|_| ExactError::Parse(format!("bad integer `{text}`")))?;
                out.push(Tok::Num(n));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                let text: String = bytes[start..i].iter().collect();
                if text == "i" {
                    out.push(Tok::ImagUnit);
                } else {
                    out.push(Tok::Ident(text));
                }
            }
            other => return Err(ExactError::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<MultiPoly, ExactError> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // term := factor ('*' factor | '/' number)*
    fn term(&mut self) -> Result<MultiPoly, ExactError> {
        let mut acc = self.factor()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Star => {
                    self.next();
                    acc = acc.mul(&self.factor()?);
                }
                Tok::Slash => {
                    self.next();
                    let d = match self.next() {
                        Some(Tok::Num(n)) => n,
                        _ => return Err(ExactError::Parse("expected integer after `/`".into())),
                    };
                    if d == BigInt::from(0) {
                        return Err(ExactError::Parse("division by zero".into()));
                    }
                    let inv = GaussRational::new(
                        BigRational::new(BigInt::from(1), d),
                        BigRational::from(BigInt::from(0)),
                    );
                    acc = acc.scale(&inv);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // factor := ('-')* atom ('^' uint)?
    fn factor(&mut self) -> Result<MultiPoly, ExactError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.next();
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.next();
            match self.next() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| ExactError::Parse("exponent out of range".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(ExactError::Parse("expected integer exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly, ExactError> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(MultiPoly::constant(GaussRational::new(
                BigRational::from(n),
                BigRational::from(BigInt::from(0)),
            ))),
            Some(Tok::ImagUnit) => Ok(MultiPoly::constant(GaussRational::i())),
            Some(Tok::Ident(name)) => Ok(MultiPoly::var(&name)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(ExactError::Parse("missing `)`".into())),
                }
            }
            other => Err(ExactError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parse the canonical polynomial syntax produced by `MultiPoly::to_string`.
pub fn parse_poly(s: &str) -> Result<MultiPoly, ExactError> {
    let toks = tokenize(s)?;
    let mut p = Parser { toks, pos: 0 };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ExactError::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_basic() {
        let p = parse_poly("z^2 - 3*z + 2").unwrap();
        assert_eq!(p.to_string(), "z^2 + -3*z + 2");
        let q = parse_poly("(1/2+1/2*i)*z1^2*u2").unwrap();
        assert_eq!(q.degree_in("z1"), Some(2));
        assert_eq!(q.degree_in("u2"), Some(1));
    }

    #[test]
    fn roundtrip_display() {
        for s in [
            "u*z^2 + u",
            "(1/2+1/2*i)*z^2",
            "-1/4*i*z + 2/3",
            "z1*z2*u1 + -7*u2^3",
        ] {
            let p = parse_poly(s).unwrap();
            let q = parse_poly(&p.to_string()).unwrap();
            assert_eq!(p, q, "roundtrip failed for {s}");
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("z +").is_err());
        assert!(parse_poly("(z").is_err());
        assert!(parse_poly("z ^ x").is_err());
        assert!(parse_poly("1/0").is_err());
    }
}
