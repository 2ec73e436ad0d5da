//! Canonical text form for polynomials: terms sorted degrevlex-descending,
//! rational or cyclotomic coefficients. The parser accepts the same shape
//! with rational coefficients and `z<n>[^k]` roots of unity.

use super::{Monomial, MonomialOrder, MultiPolynomial, PolyError, RingCtx};
use crate::arith::{CycNum, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::sync::Arc;

pub fn poly_to_string(f: &MultiPolynomial) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let ord = MonomialOrder::DegRevLex;
    let mut terms: Vec<(&Monomial, &CycNum)> = f.terms().collect();
    terms.sort_by(|a, b| ord.cmp(b.0, a.0));
    let mut out = String::new();
    for (k, (m, c)) in terms.iter().enumerate() {
        let mut vars = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            if e == 1 {
                vars.push(f.ring.var_name(i));
            } else if e > 1 {
                vars.push(format!("{}^{}", f.ring.var_name(i), e));
            }
        }
        let var_part = vars.join("*");
        // render sign separately for rational coefficients
        let (sign, mag) = match c.as_rational() {
            Some(r) => {
                if r < Rational::zero() {
                    ("-", CycNum::from_rational(-r))
                } else {
                    ("+", (*c).clone())
                }
            }
            None => ("+", (*c).clone()),
        };
        if k == 0 {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(if sign == "-" { " - " } else { " + " });
        }
        let coeff_part = if mag.is_one() && !var_part.is_empty() {
            String::new()
        } else {
            format!("{}", mag)
        };
        match (coeff_part.is_empty(), var_part.is_empty()) {
            (true, false) => out.push_str(&var_part),
            (false, true) => out.push_str(&coeff_part),
            (false, false) => {
                out.push_str(&coeff_part);
                out.push('*');
                out.push_str(&var_part);
            }
            (true, true) => out.push('1'),
        }
    }
    out
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

impl<'a> Lexer<'a> {
    fn tokenize(src: &'a str) -> Result<Vec<Tok>, PolyError> {
        let mut lx = Lexer {
            chars: src.chars().peekable(),
        };
        let mut out = Vec::new();
        while let Some(&c) = lx.chars.peek() {
            match c {
                ' ' | '\t' | '\n' | '\r' => {
                    lx.chars.next();
                }
                '+' => {
                    lx.chars.next();
                    out.push(Tok::Plus);
                }
                '-' => {
                    lx.chars.next();
                    out.push(Tok::Minus);
                }
                '*' => {
                    lx.chars.next();
                    out.push(Tok::Star);
                }
                '^' => {
                    lx.chars.next();
                    out.push(Tok::Caret);
                }
                '/' => {
                    lx.chars.next();
                    out.push(Tok::Slash);
                }
                '(' => {
                    lx.chars.next();
                    out.push(Tok::LParen);
                }
                ')' => {
                    lx.chars.next();
                    out.push(Tok::RParen);
                }
                '0'..='9' => {
                    let mut s = String::new();
                    while let Some(&d) = lx.chars.peek() {
                        if d.is_ascii_digit() {
                            s.push(d);
                            lx.chars.next();
                        } else {
                            break;
                        }
                    }
                    out.push(Tok::Num(s.parse().unwrap()));
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let mut s = String::new();
                    while let Some(&d) = lx.chars.peek() {
                        if d.is_ascii_alphanumeric() || d == '_' {
                            s.push(d);
                            lx.chars.next();
                        } else {
                            break;
                        }
                    }
                    out.push(Tok::Ident(s));
                }
                other => {
                    return Err(PolyError::Parse(format!("unexpected character '{}'", other)))
                }
            }
        }
        Ok(out)
    }
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    ring: &'a Arc<RingCtx>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<MultiPolynomial, PolyError> {
        let mut acc = MultiPolynomial::zero(self.ring.clone());
        let mut first = true;
        loop {
            let mut negative = false;
            let mut saw_sign = false;
            while let Some(tok) = self.peek() {
                match tok {
                    Tok::Plus => {
                        self.pos += 1;
                        saw_sign = true;
                    }
                    Tok::Minus => {
                        self.pos += 1;
                        negative = !negative;
                        saw_sign = true;
                    }
                    _ => break,
                }
            }
            if self.peek().is_none() || matches!(self.peek(), Some(Tok::RParen)) {
                if saw_sign {
                    return Err(PolyError::Parse("dangling sign".into()));
                }
                if first {
                    return Err(PolyError::Parse("empty expression".into()));
                }
                return Ok(acc);
            }
            if !first && !saw_sign {
                return Err(PolyError::Parse("expected '+' or '-' between terms".into()));
            }
            let t = self.term()?;
            acc = if negative { acc.sub(&t) } else { acc.add(&t) };
            first = false;
        }
    }

    fn term(&mut self) -> Result<MultiPolynomial, PolyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                // implicit product before an identifier or '('
                Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPolynomial, PolyError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut num = Rational::from_integer(n);
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) => {
                            self.pos += 1;
                            num = Rational::new(num.numer().clone(), d);
                        }
                        _ => return Err(PolyError::Parse("expected denominator".into())),
                    }
                }
                Ok(MultiPolynomial::constant(
                    self.ring.clone(),
                    CycNum::from_rational(num),
                ))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let exp = self.optional_exponent()?;
                if let Some(i) = self.var_index(&name) {
                    if exp < 0 {
                        return Err(PolyError::Parse("negative exponent".into()));
                    }
                    let mut e = vec![0u32; self.ring.nvars];
                    e[i] = exp as u32;
                    Ok(MultiPolynomial::monomial(
                        self.ring.clone(),
                        Monomial(e),
                        CycNum::one(),
                    ))
                } else if let Some(order) =
                    name.strip_prefix('z').and_then(|s| s.parse::<u32>().ok())
                {
                    Ok(MultiPolynomial::constant(
                        self.ring.clone(),
                        CycNum::root_of_unity(order, exp),
                    ))
                } else {
                    Err(PolyError::Parse(format!("unknown variable '{}'", name)))
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                    }
                    _ => return Err(PolyError::Parse("expected ')'".into())),
                }
                let exp = self.optional_exponent()?;
                if exp < 0 {
                    return Err(PolyError::Parse("negative exponent".into()));
                }
                Ok(inner.pow(exp as u32))
            }
            _ => Err(PolyError::Parse("empty term".into())),
        }
    }

    fn optional_exponent(&mut self) -> Result<i64, PolyError> {
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let mut neg = false;
            if let Some(Tok::Minus) = self.peek() {
                self.pos += 1;
                neg = true;
            }
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e = i64::try_from(&n)
                        .map_err(|_| PolyError::Parse("exponent too large".into()))?;
                    Ok(if neg { -e } else { e })
                }
                _ => Err(PolyError::Parse("expected exponent".into())),
            }
        } else {
            Ok(1)
        }
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        (0..self.ring.nvars).find(|&i| self.ring.var_name(i) == name)
    }
}

/// Parses a sum of terms like `4*T1^2*T7 - T2^2*T6 + 1/2*T3`. Variables are
/// resolved against the ring's names (default `T1..Tn`); `z<n>` and
/// `z<n>^k` denote roots of unity; parentheses group subexpressions.
pub fn parse_poly(src: &str, ring: &Arc<RingCtx>) -> Result<MultiPolynomial, PolyError> {
    let toks = Lexer::tokenize(src)?;
    let mut p = Parser { toks, pos: 0, ring };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(PolyError::Parse("trailing input".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let ring = RingCtx::new(3, 1);
        let f = parse_poly("4*T1^2 - T2^2 + T3^2", &ring).unwrap();
        assert_eq!(poly_to_string(&f), "4*T1^2 - T2^2 + T3^2");
        let g = parse_poly(&poly_to_string(&f), &ring).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn rational_and_root_coefficients() {
        let ring = RingCtx::new(2, 4);
        let f = parse_poly("1/2*T1 + z4*T2 - z4^2", &ring).unwrap();
        assert_eq!(f.num_terms(), 3);
        assert_eq!(
            f.coeff(&Monomial(vec![0, 0])),
            CycNum::one() // -z4^2 = 1
        );
        let g = parse_poly(&poly_to_string(&f), &ring).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn degrevlex_descending_output() {
        let ring = RingCtx::new(2, 1);
        let f = parse_poly("T2 + T1^2*T2 + 3", &ring).unwrap();
        assert_eq!(poly_to_string(&f), "T1^2*T2 + T2 + 3");
    }

    #[test]
    fn parse_errors() {
        let ring = RingCtx::new(2, 1);
        assert!(parse_poly("T3", &ring).is_err());
        assert!(parse_poly("1 +", &ring).is_err());
        assert!(parse_poly("T1 @ T2", &ring).is_err());
    }
}
