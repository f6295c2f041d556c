//! Form expressions:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' ['-'] INT)?
//! atom   := RATIONAL | 'z'INT | 'w'INT | 'dz'INT | 'dw'INT | 'S' | '(' expr ')'
//! ```
//!
//! `w_i` is `z*_i`, `S = Σ z_i z*_i`; negative powers are legal only on `S`.

use crate::error::{Error, Result};
use crate::forms::{Form, LocalizedCoefficient};
use crate::poly::SparsePolynomial;
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Number(Rational),
    Z(usize),
    W(usize),
    Dz(usize),
    Dw(usize),
    Quadric,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Var(&'static str, usize),
    S,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let digits = |i: &mut usize, col: &mut usize| {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
            *col += 1;
        }
        chars[start..*i].iter().collect::<String>()
    };
    while i < chars.len() {
        let c = chars[i];
        let (l, c0) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            'S' => Some(Tok::S),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, line: l, column: c0 });
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let num = digits(&mut i, &mut col);
            let text = if i < chars.len() && chars[i] == '/' {
                i += 1;
                col += 1;
                let den = digits(&mut i, &mut col);
                if den.is_empty() {
                    return Err(syntax(line, col, "expected a denominator after '/'"));
                }
                format!("{num}/{den}")
            } else {
                num
            };
            let q = rational::parse(&text).ok_or_else(|| syntax(l, c0, format!("invalid rational '{text}'")))?;
            out.push(Token { tok: Tok::Num(q), line: l, column: c0 });
            continue;
        }
        let name = if chars[i..].starts_with(&['d', 'z']) {
            "dz"
        } else if chars[i..].starts_with(&['d', 'w']) {
            "dw"
        } else if c == 'z' {
            "z"
        } else if c == 'w' {
            "w"
        } else {
            return Err(syntax(l, c0, format!("unexpected character '{c}'")));
        };
        i += name.len();
        col += name.len();
        let idx = digits(&mut i, &mut col);
        let k: usize = idx.parse().map_err(|_| syntax(l, c0, format!("'{name}' needs an index")))?;
        out.push(Token { tok: Tok::Var(name, k), line: l, column: c0 });
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    n: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.column))
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let (l, c) = self.here();
        syntax(l, c, message)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let is_s = self.peek() == Some(&Tok::S);
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let negative = self.peek() == Some(&Tok::Minus);
        if negative {
            if !is_s {
                return Err(self.error("negative powers are only allowed on S"));
            }
            self.pos += 1;
        }
        let k = match self.peek() {
            Some(Tok::Num(q)) if q.is_integer() => q.to_integer(),
            _ => return Err(self.error("expected an integer exponent")),
        };
        let k: i64 = k.try_into().map_err(|_| self.error("exponent too large"))?;
        if negative && k < 1 {
            return Err(self.error("S^-k needs k ≥ 1"));
        }
        self.pos += 1;
        Ok(Expr::Pow(Box::new(base), if negative { -k } else { k }))
    }

    fn atom(&mut self) -> Result<Expr> {
        let Some(tok) = self.peek().cloned() else { return Err(self.error("unexpected end of input")) };
        let e = match tok {
            Tok::Num(q) => Expr::Number(q),
            Tok::S => Expr::Quadric,
            Tok::Var(name, k) => {
                if k == 0 || k > self.n {
                    return Err(self.error(format!("index {name}{k} out of range 1..={}", self.n)));
                }
                match name {
                    "z" => Expr::Z(k),
                    "w" => Expr::W(k),
                    "dz" => Expr::Dz(k),
                    _ => Expr::Dw(k),
                }
            }
            Tok::LParen => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.error("expected ')'"));
                }
                e
            }
            other => return Err(self.error(format!("unexpected token {other:?}"))),
        };
        self.pos += 1;
        Ok(e)
    }
}

/// Parses into an expression tree over `n` variables.
pub fn parse_expression(src: &str, n: usize) -> Result<Expr> {
    let toks = lex(src)?;
    let end = toks.last().map_or((1, 1), |t| (t.line, t.column + 1));
    let mut p = Parser { toks, pos: 0, n, end };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

pub fn elaborate(e: &Expr, n: usize) -> Result<Form> {
    Ok(match e {
        Expr::Number(q) => Form::constant(n, q.clone()),
        Expr::Z(i) => Form::polynomial(SparsePolynomial::z(n, i - 1)),
        Expr::W(i) => Form::polynomial(SparsePolynomial::zs(n, i - 1)),
        Expr::Dz(i) => Form::dz(n, *i)?,
        Expr::Dw(i) => Form::dzs(n, *i)?,
        Expr::Quadric => Form::polynomial(SparsePolynomial::quadric(n)),
        Expr::Neg(a) => elaborate(a, n)?.scale(&-rational::one()),
        Expr::Add(a, b) => elaborate(a, n)?.add(&elaborate(b, n)?)?,
        Expr::Sub(a, b) => elaborate(a, n)?.sub(&elaborate(b, n)?)?,
        Expr::Mul(a, b) => elaborate(a, n)?.wedge(&elaborate(b, n)?)?,
        Expr::Pow(a, k) if *k < 0 => {
            debug_assert!(matches!(**a, Expr::Quadric));
            Form::function(LocalizedCoefficient::new(SparsePolynomial::one(n), (-k) as u32))
        }
        Expr::Pow(a, k) => {
            let base = elaborate(a, n)?;
            let mut acc = Form::one(n);
            for _ in 0..*k {
                acc = acc.wedge(&base)?;
            }
            acc
        }
    })
}

/// Parses and elaborates; unless `raw`, the result must be a valid form.
pub fn parse_form(src: &str, n: usize, raw: bool) -> Result<Form> {
    let f = elaborate(&parse_expression(src, n)?, n)?;
    if !raw {
        f.validity().map_err(Error::InvalidForm)?;
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::mb_form;

    #[test]
    fn examples() {
        assert_eq!(parse_form("(w1*dw2 - w2*dw1) * S^-2", 2, false).unwrap(), mb_form(2));
        let f = parse_form("z1 + 1", 2, false).unwrap();
        assert_eq!(f, Form::polynomial(&SparsePolynomial::z(2, 0) + &SparsePolynomial::one(2)));
        match parse_form("w1", 2, false) {
            Err(Error::InvalidForm(m)) => assert!(m.contains("z*-degree 1 ≠ 0"), "{m}"),
            other => panic!("{other:?}"),
        }
        assert!(parse_form("w1", 2, true).is_ok());
    }

    #[test]
    fn rationals_and_unary_minus() {
        let f = parse_form("-3/4*z1^2", 1, false).unwrap();
        let expected = Form::polynomial(SparsePolynomial::z(1, 0).pow(2).scale(&rational::frac(-3, 4)));
        assert_eq!(f, expected);
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = |s: &str| match parse_form(s, 2, true) {
            Err(Error::Parse { line, column, message }) => (line, column, message),
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(err("z1 + ").0, 1);
        let (l, c, m) = err("z1 *\n  (z2 ^ -1)");
        assert_eq!((l, c), (2, 9));
        assert!(m.contains("only allowed on S"));
        assert!(err("S^-0").2.contains("k ≥ 1"));
        assert!(err("z3").2.contains("out of range"));
        assert!(err("z1 ? z2").2.contains("unexpected character"));
        assert!(err("(z1").2.contains("')'"));
    }

    #[test]
    fn display_round_trips() {
        let m = mb_form(3);
        let again = parse_form(&m.to_string(), 3, false).unwrap();
        assert_eq!(again, m);
    }
}
