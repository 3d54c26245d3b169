//! Text form of polynomials: integer literals, variable names, `+ - * ^` and
//! parentheses. Whitespace is insignificant. Negative exponents are accepted
//! only where the caller allows them.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::sparse::Poly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub fn is_valid_name(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(is_ident_start) && cs.all(is_ident_char)
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                out.push(Tok::Num(lit.parse().expect("digits")));
            }
            c if is_ident_start(c) => {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?} in {s:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a, F: Fn(usize) -> bool> {
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a [&'a str],
    negative_ok: F,
}

impl<F: Fn(usize) -> bool> Parser<'_, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    // expr := ['-'|'+'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.nvars());
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            if sign < 0 {
                acc -= &t;
            } else {
                acc += &t;
            }
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    // factor := ['-'] atom ['^' ['-'] int | '^' '(' ['-'] int ')']
    fn factor(&mut self) -> Result<Poly> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            return Ok(-self.factor()?);
        }
        let (base, var) = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let e = self.exponent()?;
            if e >= 0 {
                let e = u32::try_from(e).map_err(|_| Error::Parse("exponent too large".into()))?;
                return Ok(base.pow(e));
            }
            let allowed = match var {
                Some(v) => (self.negative_ok)(v),
                None => false,
            };
            if !allowed {
                return Err(Error::Parse(match var {
                    Some(v) => format!("negative exponent on variable {:?} is not allowed here", self.vars[v]),
                    None => "negative exponents are only allowed on variables".into(),
                }));
            }
            let m = base.lex_first().expect("variable").monomial.inv();
            return Ok(Poly::monomial(m).pow((-e) as u32));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = matches!(self.peek(), Some(Tok::LParen));
        if paren {
            self.pos += 1;
        }
        let neg = matches!(self.peek(), Some(Tok::Minus));
        if neg {
            self.pos += 1;
        }
        let e = match self.next() {
            Some(Tok::Num(n)) => i64::try_from(n).map_err(|_| Error::Parse("exponent too large".into()))?,
            other => return Err(Error::Parse(format!("expected integer exponent, found {other:?}"))),
        };
        if paren {
            match self.next() {
                Some(Tok::RParen) => {}
                other => return Err(Error::Parse(format!("expected ')', found {other:?}"))),
            }
        }
        Ok(if neg { -e } else { e })
    }

    fn atom(&mut self) -> Result<(Poly, Option<usize>)> {
        match self.next() {
            Some(Tok::Num(n)) => Ok((Poly::constant(self.nvars(), n), None)),
            Some(Tok::Ident(name)) => {
                let idx = self.vars.iter().position(|v| *v == name).ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                Ok((Poly::var(self.nvars(), idx), Some(idx)))
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok((e, None)),
                    other => Err(Error::Parse(format!("expected ')', found {other:?}"))),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parse with negative exponents allowed on every variable.
pub fn parse_poly(s: &str, vars: &[&str]) -> Result<Poly> {
    parse_poly_with(s, vars, |_| true)
}

/// Parse, allowing negative exponents only on variables selected by `negative_ok`.
pub fn parse_poly_with(s: &str, vars: &[&str], negative_ok: impl Fn(usize) -> bool) -> Result<Poly> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, vars, negative_ok };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {:?}", p.toks[p.pos])));
    }
    Ok(out)
}

/// Parse `num` or `num / den` where the slash is at parenthesis depth zero.
pub fn parse_ratfn(s: &str, vars: &[&str]) -> Result<super::ratfn::RationalFn> {
    let mut depth = 0i32;
    let mut split = None;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => {
                if split.is_some() {
                    return Err(Error::Parse(format!("more than one '/' in {s:?}")));
                }
                split = Some(i);
            }
            _ => {}
        }
    }
    match split {
        None => Ok(super::ratfn::RationalFn::from_poly(&parse_poly(s, vars)?)),
        Some(i) => {
            let num = parse_poly(&s[..i], vars)?;
            let den = parse_poly(&s[i + 1..], vars)?;
            super::ratfn::reduce_fraction(&num, &den)
        }
    }
}

/// Render with the given variable names; terms from lex-largest to lex-smallest.
pub fn format_poly<S: AsRef<str>>(p: &Poly, names: &[S]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let abs = c.abs();
        let mut factors: Vec<String> = Vec::new();
        for (v, &e) in m.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(names[v].as_ref().to_string()),
                e => factors.push(format!("{}^{}", names[v].as_ref(), e)),
            }
        }
        if factors.is_empty() {
            let _ = write!(out, "{abs}");
        } else {
            if !abs.is_one() {
                let _ = write!(out, "{abs}*");
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

pub(crate) fn needs_parens(p: &Poly) -> bool {
    p.num_terms() > 1 || p.terms().next().is_some_and(|(_, c)| c.is_negative() && !c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_formats() {
        let v = ["a", "b", "c"];
        let p = parse_poly("(a + (a+1)*b)", &v).unwrap();
        assert_eq!(format_poly(&p, &v), "a*b + a + b");
        let q = parse_poly("-2*c^3 + 7 - b", &v).unwrap();
        assert_eq!(format_poly(&q, &v), "-b - 2*c^3 + 7");
    }

    #[test]
    fn negative_exponent_policy() {
        let v = ["a", "b", "c"];
        assert!(parse_poly_with("(b+1)*c^-1", &v, |i| i == 2).is_ok());
        assert!(parse_poly_with("(b+1)*a^-1", &v, |i| i == 2).is_err());
        assert!(parse_poly("(a+b)^-1", &v).is_err());
        let p = parse_poly("c^(-2)", &v).unwrap();
        assert_eq!(p.min_degree_in(2), -2);
    }

    #[test]
    fn rejects_garbage() {
        let v = ["x"];
        assert!(parse_poly("x +", &v).is_err());
        assert!(parse_poly("y", &v).is_err());
        assert!(parse_poly("x $ 1", &v).is_err());
        assert!(parse_poly("", &v).is_err());
        assert!(parse_poly("(x", &v).is_err());
    }

    #[test]
    fn fractions_roundtrip() {
        let v = ["a", "b", "c"];
        let r = parse_ratfn("(b + 1)/(a*c)", &v).unwrap();
        assert_eq!(parse_ratfn(&r.format(&v), &v).unwrap(), r);
        assert!(parse_ratfn("a/b/c", &v).is_err());
        assert!(parse_ratfn("a/0", &v).is_err());
    }

    #[test]
    fn primed_names() {
        let v = ["b", "b'"];
        let p = parse_poly("b'*b + 1", &v).unwrap();
        assert_eq!(format_poly(&p, &v), "b*b' + 1");
    }
}
