//! Polynomial text grammar.
//!
//! Literals are integers or rationals (`3`, `-1/2`), identifiers must be
//! declared in the variable space, and the operators are `+ - * ^` with
//! parentheses. Canonical printing lists terms in descending graded-lex
//! order with explicit `*` and `^`, so `parse(print(p)) == p`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::multipoly::MultiPoly;
use crate::poly::scalar::{Field, Scalar};
use crate::poly::space::Space;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src, bytes: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next(&mut self) -> Result<Option<(usize, Token)>> {
        self.skip_ws();
        if self.pos >= self.bytes.len() {
            return Ok(None);
        }
        let start = self.pos;
        let b = self.bytes[self.pos];
        let tok = match b {
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'^' => Token::Caret,
            b'/' => Token::Slash,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'0'..=b'9' => {
                let mut end = self.pos;
                while end < self.bytes.len() && self.bytes[end].is_ascii_digit() {
                    end += 1;
                }
                let n: BigInt = self.src[self.pos..end].parse().unwrap();
                self.pos = end;
                return Ok(Some((start, Token::Int(n))));
            }
            b'_' | b'a'..=b'z' | b'A'..=b'Z' => {
                let mut end = self.pos;
                while end < self.bytes.len()
                    && (self.bytes[end] == b'_' || self.bytes[end].is_ascii_alphanumeric())
                {
                    end += 1;
                }
                let name = self.src[self.pos..end].to_string();
                self.pos = end;
                return Ok(Some((start, Token::Ident(name))));
            }
            _ => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unexpected character `{}`", &self.src[start..start + 1]),
                })
            }
        };
        self.pos += 1;
        Ok(Some((start, tok)))
    }
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    idx: usize,
    space: &'a Space,
    field: Field,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.idx).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.idx).map(|(_, t)| t.clone());
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn expect(&mut self, want: Token) -> Result<()> {
        let pos = self.pos();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(Error::Parse { pos, msg: format!("expected {want:?}") }),
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?)?;
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.bump();
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        if self.peek() == Some(&Token::Minus) {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        let base = self.base()?;
        if self.peek() == Some(&Token::Caret) {
            self.bump();
            let pos = self.pos();
            match self.bump() {
                Some(Token::Int(n)) => {
                    let e: u32 = n.try_into().map_err(|_| Error::Parse {
                        pos,
                        msg: "exponent out of range".into(),
                    })?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse { pos, msg: "expected integer exponent".into() }),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<MultiPoly> {
        let pos = self.pos();
        match self.bump() {
            Some(Token::Int(n)) => {
                // Optional `/ INT` forms a rational literal.
                if self.peek() == Some(&Token::Slash) {
                    self.bump();
                    let dpos = self.pos();
                    match self.bump() {
                        Some(Token::Int(d)) => {
                            let num = self.int_scalar(&n);
                            let den = self.int_scalar(&d);
                            if den.is_zero() {
                                return Err(Error::Parse { pos: dpos, msg: "zero denominator".into() });
                            }
                            let c = num.div(&den).map_err(|_| Error::Parse {
                                pos: dpos,
                                msg: "zero denominator".into(),
                            })?;
                            Ok(MultiPoly::constant(self.space, c))
                        }
                        _ => Err(Error::Parse { pos: dpos, msg: "expected denominator".into() }),
                    }
                } else {
                    Ok(MultiPoly::constant(self.space, self.int_scalar(&n)))
                }
            }
            Some(Token::Ident(name)) => {
                if self.space.var_index(&name).is_none() {
                    return Err(Error::Parse { pos, msg: format!("unknown identifier `{name}`") });
                }
                MultiPoly::var(self.space, &name, self.field)
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            _ => Err(Error::Parse { pos, msg: "expected a literal, identifier or `(`".into() }),
        }
    }

    fn int_scalar(&self, n: &BigInt) -> Scalar {
        match self.field {
            Field::Rational => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(q) => {
                let r = n.mod_floor_u64(q);
                Scalar::Prime { value: r, modulus: q }
            }
        }
    }
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, q: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, q: u64) -> u64 {
        use num_integer::Integer;
        let m = self.mod_floor(&BigInt::from(q));
        // mod_floor of a positive modulus is nonnegative and < q.
        let (_, digits) = m.to_u64_digits();
        digits.first().copied().unwrap_or(0)
    }
}

/// Parse `text` into a polynomial over `space`.
pub fn parse_poly(text: &str, space: &Space, field: Field) -> Result<MultiPoly> {
    let mut lexer = Lexer::new(text);
    let mut tokens = Vec::new();
    while let Some(t) = lexer.next()? {
        tokens.push(t);
    }
    let end = text.len();
    let mut parser = Parser { tokens, idx: 0, space, field, end };
    let poly = parser.expr()?;
    if parser.idx != parser.tokens.len() {
        return Err(Error::Parse { pos: parser.pos(), msg: "trailing input".into() });
    }
    Ok(poly)
}

/// Canonical rendering: descending graded-lex term order, explicit `*`/`^`.
pub fn write_poly(f: &mut fmt::Formatter<'_>, p: &MultiPoly) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let space = p.space();
    let mut first = true;
    for (mono, coeff) in p.terms().collect::<Vec<_>>().into_iter().rev() {
        let neg = coeff.is_negative();
        if first {
            if neg {
                write!(f, "-")?;
            }
            first = false;
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let mag = if neg { coeff.neg() } else { coeff.clone() };
        let mut wrote_factor = false;
        if !mag.is_one() || mono.is_constant() {
            write!(f, "{mag}")?;
            wrote_factor = true;
        }
        for (i, &e) in mono.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if wrote_factor {
                write!(f, "*")?;
            }
            write!(f, "{}", space.var_name(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
            wrote_factor = true;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::space::SpaceBuilder;
    use crate::rng::SplitMix64;

    fn space() -> Space {
        SpaceBuilder::new()
            .geometric("st", ["s", "t"])
            .geometric("uv", ["u", "v"])
            .parameter("p", ["l", "m"])
            .build()
            .unwrap()
    }

    #[test]
    fn parse_examples() {
        let sp = space();
        let p = parse_poly("s^2*t - t^3", &sp, Field::Rational).unwrap();
        assert_eq!(p.to_string(), "s^2*t - t^3");

        let z = parse_poly("0", &sp, Field::Rational).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.to_string(), "0");

        let q = parse_poly("-1/2*u*v + v^2", &sp, Field::Rational).unwrap();
        assert_eq!(q.num_terms(), 2);
        assert_eq!(q.to_string(), "-1/2*u*v + v^2");
    }

    #[test]
    fn parse_errors_carry_position() {
        let sp = space();
        match parse_poly("s + w", &sp, Field::Rational) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_poly("s +", &sp, Field::Rational).is_err());
        assert!(parse_poly("s ^ t", &sp, Field::Rational).is_err());
        assert!(parse_poly("(s + t", &sp, Field::Rational).is_err());
        assert!(parse_poly("1/0", &sp, Field::Rational).is_err());
        assert!(parse_poly("s t", &sp, Field::Rational).is_err());
    }

    #[test]
    fn parentheses_and_powers() {
        let sp = space();
        let p = parse_poly("(s + t)^2 - 2*s*t", &sp, Field::Rational).unwrap();
        let q = parse_poly("s^2 + t^2", &sp, Field::Rational).unwrap();
        assert_eq!(p, q);
        let r = parse_poly("-(s - t)*(s + t)", &sp, Field::Rational).unwrap();
        assert_eq!(r, parse_poly("t^2 - s^2", &sp, Field::Rational).unwrap());
    }

    #[test]
    fn prime_field_literals() {
        let sp = space();
        let p = parse_poly("-1*s + 3/2*t", &sp, Field::Prime(101)).unwrap();
        let s_coeff = p.coefficient(&crate::poly::space::Monomial::var(6, 0));
        assert_eq!(s_coeff, Field::Prime(101).from_i64(100));
        // 3/2 mod 101 = 3 * 51 = 153 = 52.
        let t_coeff = p.coefficient(&crate::poly::space::Monomial::var(6, 1));
        assert_eq!(t_coeff, Field::Prime(101).from_i64(52));
    }

    fn random_poly(rng: &mut SplitMix64, sp: &Space) -> MultiPoly {
        let mut p = MultiPoly::zero(sp, Field::Rational);
        for _ in 0..rng.below(5) {
            let mono = crate::poly::space::Monomial(
                (0..sp.num_vars()).map(|_| rng.below(3) as u32).collect(),
            );
            let c = Field::Rational
                .from_ratio(rng.range_i64(-9, 9), rng.range_i64(1, 4))
                .unwrap();
            p.add_term(mono, c);
        }
        p
    }

    #[test]
    fn print_parse_roundtrip() {
        let sp = space();
        let mut rng = SplitMix64::new(11);
        for _ in 0..500 {
            let p = random_poly(&mut rng, &sp);
            let s = p.to_string();
            let back = parse_poly(&s, &sp, Field::Rational).unwrap();
            assert_eq!(back, p, "roundtrip failed for `{s}`");
        }
    }
}
