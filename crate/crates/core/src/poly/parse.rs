//! Text parser for polynomial expressions such as `-2*b^3 - 15*b^2*c + (alpha + 1)*c`.
//!
//! Supports `+ - * ^ /`, parentheses, decimal integer literals, the variables of the
//! context and the named generators of the coefficient ring. Division is only allowed
//! by constants that are units of the coefficient ring.

use num_bigint::BigInt;

use super::{MultiPoly, PolyRing};
use crate::error::{Error, Result};

pub const MAX_EXPONENT: u32 = 64;
pub const MAX_DEPTH: usize = 128;
/// Cap on `len(a)·len(b)` for a single product while parsing.
pub const MAX_PRODUCT_TERMS: usize = 1 << 20;

fn err(pos: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("at byte {pos}: {msg}"))
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(text[start..i].parse().unwrap())));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap();
                return Err(err(start, format!("unexpected character {ch:?}")));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a PolyRing,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    depth: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(err(self.offset(), "expression nested too deeply"));
        }
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add_unchecked(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.add_unchecked(&self.term()?.neg());
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let at = self.offset();
                    let rhs = self.unary()?;
                    acc = product(&acc, &rhs, at)?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let at = self.offset();
                    let rhs = self.unary()?;
                    let k = self.ring.coefficient_ring();
                    let c = rhs.as_constant().ok_or_else(|| err(at, "division by a non-constant"))?;
                    let inv = k
                        .inverse(&c)
                        .map_err(|_| err(at, format!("division by the non-unit {}", k.render(&c))))?;
                    acc = acc.scale(&inv);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                self.depth += 1;
                if self.depth > MAX_DEPTH {
                    return Err(err(self.offset(), "expression nested too deeply"));
                }
                let v = self.unary()?.neg();
                self.depth -= 1;
                Ok(v)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.depth += 1;
                if self.depth > MAX_DEPTH {
                    return Err(err(self.offset(), "expression nested too deeply"));
                }
                let v = self.unary()?;
                self.depth -= 1;
                Ok(v)
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        let e = match self.bump() {
            Some(Tok::Num(n)) => n,
            _ => return Err(err(at, "expected a nonnegative integer exponent")),
        };
        let e: u32 = u32::try_from(&e)
            .ok()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| err(at, format!("exponent exceeds {MAX_EXPONENT}")))?;
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = product(&acc, &base, at)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Num(n)) => Ok(self.ring.constant(self.ring.coefficient_ring().from_bigint(&n))),
            Some(Tok::Ident(name)) => {
                if let Some(i) = self.ring.var_index(&name) {
                    Ok(self.ring.var(i))
                } else if let Some(g) = self.ring.coefficient_ring().find_generator(&name) {
                    Ok(self.ring.constant(g))
                } else {
                    Err(err(at, format!("unknown identifier {name:?}")))
                }
            }
            Some(Tok::LParen) => {
                let v = self.expr()?;
                let close = self.offset();
                match self.bump() {
                    Some(Tok::RParen) => Ok(v),
                    _ => Err(err(close, "expected ')'")),
                }
            }
            Some(t) => Err(err(at, format!("unexpected token {t:?}"))),
            None => Err(err(at, "unexpected end of input")),
        }
    }
}

fn product(a: &MultiPoly, b: &MultiPoly, at: usize) -> Result<MultiPoly> {
    if a.len().saturating_mul(b.len()) > MAX_PRODUCT_TERMS {
        return Err(err(at, "expression expands to too many terms"));
    }
    Ok(a.mul_unchecked(b))
}

/// Parses `text` as a polynomial in `ring`.
pub fn parse_poly(ring: &PolyRing, text: &str) -> Result<MultiPoly> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(err(0, "empty expression"));
    }
    let mut p = Parser {
        ring,
        toks,
        pos: 0,
        end: text.len(),
        depth: 0,
    };
    let v = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(err(p.offset(), "trailing input"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn ring(names: &[&str]) -> PolyRing {
        PolyRing::new(&Ring::rationals(), names.iter().map(|s| s.to_string()).collect())
    }

    #[test]
    fn precedence() {
        let r = ring(&["x", "y"]);
        assert_eq!(r.parse("1 + 2*x^2").unwrap().to_string(), "2*x^2 + 1");
        assert_eq!(r.parse("-x^2").unwrap().to_string(), "-x^2");
        assert_eq!(r.parse("(x + y)^2 - x*(x + 2*y)").unwrap().to_string(), "y^2");
        assert_eq!(r.parse("x/2 - 3/4").unwrap().to_string(), "(1/2)*x - 3/4");
    }

    #[test]
    fn errors() {
        let r = ring(&["x"]);
        for bad in ["", "x +", "(x", "x)", "x^65", "x^y", "x/x", "1/0", "z", "x $ 1", "x^-1"] {
            assert!(matches!(r.parse(bad), Err(Error::Parse(_))), "{bad}");
        }
        let deep = "(".repeat(1000) + "x" + &")".repeat(1000);
        assert!(r.parse(&deep).is_err());
        let z = PolyRing::new(&Ring::integers(), vec!["x".into()]);
        assert!(z.parse("x/2").is_err());
        assert_eq!(z.parse("x/-1").unwrap().to_string(), "-x");
    }

    #[test]
    fn blowup_is_refused() {
        let names: Vec<String> = (0..12).map(|i| format!("v{i}")).collect();
        let r = PolyRing::new(&Ring::integers(), names.clone());
        let sum = names.join(" + ");
        assert!(r.parse(&format!("({sum})^64")).is_err());
    }

    #[test]
    fn ring_generators() {
        let f3 = Ring::integers_mod(3).unwrap();
        let k = Ring::fraction_field(&Ring::poly(&f3, "alpha")).unwrap();
        let r = PolyRing::new(&k, vec!["b".into(), "c".into()]);
        let p = r.parse("b^3 - c^3*alpha").unwrap();
        assert_eq!(p.to_string(), "b^3 + 2*alpha*c^3");
        let q = r.parse("(alpha + 1)*c/alpha").unwrap();
        assert_eq!(q.to_string(), "((alpha + 1)/alpha)*c");
    }
}
