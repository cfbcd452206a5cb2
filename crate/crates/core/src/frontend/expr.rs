//! Expression language for polynomials in the engine's symbols.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' integer)?
//! atom  := number | 'i' | 't' | symbol | block '.' block
//!        | 'exp' '(' expr ')' | '(' expr ')'
//! ```
//!
//! Symbols are a block letter followed by an index: `a0`, `x1`, `d2` (∂),
//! `k0`, `q3`, `v1`, `w0`. `a.k` is the Minkowski product `Σ η_μμ a_μ k_μ`.

use std::fmt;

use crate::algebra::{Block, Ctx, GaussRat, Poly, MAX_DIM};
use crate::error::{KappaError, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(GaussRat),
    Var { block: Block, index: usize, pos: usize },
    T,
    Dot(Block, Block),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Exp(Box<Expr>),
}

fn block_of(c: char) -> Option<Block> {
    Some(match c {
        'a' => Block::A,
        'v' => Block::V,
        'x' => Block::X,
        'd' => Block::D,
        'k' => Block::K,
        'q' => Block::Q,
        'w' => Block::W,
        _ => return None,
    })
}

struct Parser {
    src: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T> {
        Err(KappaError::Parse { pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some('/') {
                let at = self.pos;
                self.pos += 1;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), at);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return self.err(start, "expected an integer exponent");
            }
            let e: u32 = digits.parse().map_err(|_| KappaError::Parse { pos: start, msg: "exponent too large".into() })?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.src[start..self.pos].iter().collect()
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        self.src[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> Result<Expr> {
        let Some(c) = self.peek() else {
            return self.err(self.pos, "unexpected end of input");
        };
        let start = self.pos;
        if c.is_ascii_digit() {
            let d = self.digits();
            let n: i64 = d.parse().map_err(|_| KappaError::Parse { pos: start, msg: "integer literal too large".into() })?;
            return Ok(Expr::Num(GaussRat::int(n)));
        }
        if c == '(' {
            self.pos += 1;
            let e = self.expr()?;
            if !self.eat(')') {
                return self.err(self.pos, "expected `)`");
            }
            return Ok(e);
        }
        if c == '∂' {
            self.pos += 1;
            return self.indexed(Block::D, start);
        }
        if !c.is_ascii_alphabetic() {
            return self.err(start, format!("unexpected character `{c}`"));
        }
        let word = self.ident();
        match word.as_str() {
            "i" => return Ok(Expr::Num(GaussRat::I)),
            "t" => return Ok(Expr::T),
            "exp" => {
                if !self.eat('(') {
                    return self.err(self.pos, "expected `(` after exp");
                }
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err(self.pos, "expected `)`");
                }
                return Ok(Expr::Exp(Box::new(e)));
            }
            _ => {}
        }
        let mut chars = word.chars();
        let first = chars.next().unwrap();
        let Some(block) = block_of(first).filter(|_| chars.next().is_none()) else {
            return Err(KappaError::UnknownSymbol { pos: start, name: word });
        };
        if self.src.get(self.pos) == Some(&'.') {
            self.pos += 1;
            let at = self.pos;
            let other = self.ident();
            let mut oc = other.chars();
            return match (oc.next().and_then(block_of), oc.next()) {
                (Some(b2), None) => Ok(Expr::Dot(block, b2)),
                _ => self.err(at, "expected a block letter after `.`"),
            };
        }
        self.indexed(block, start)
    }

    fn indexed(&mut self, block: Block, start: usize) -> Result<Expr> {
        let d = self.digits();
        if d.is_empty() {
            return self.err(self.pos, "expected an index after the symbol letter");
        }
        let index: usize = d.parse().unwrap_or(usize::MAX);
        if index >= MAX_DIM {
            let name = format!("{}{}", block.prefix(), d);
            return Err(KappaError::UnknownSymbol { pos: start, name });
        }
        Ok(Expr::Var { block, index, pos: start })
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let normalized = src.replace('\u{2212}', "-");
    let mut p = Parser { src: normalized.chars().collect(), pos: 0 };
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return p.err(p.pos, format!("unexpected `{c}`"));
    }
    Ok(e)
}

impl Expr {
    /// Evaluates to a polynomial; `exp(..)` is rejected.
    pub fn to_poly(&self, ctx: Ctx) -> Result<Poly> {
        Ok(match self {
            Expr::Num(c) => Poly::constant(ctx, c.clone()),
            Expr::Var { block, index, pos } => {
                if *index >= ctx.dim {
                    return Err(KappaError::UnknownSymbol { pos: *pos, name: format!("{}{}", block.prefix(), index) });
                }
                Poly::var(ctx, *block, *index)
            }
            Expr::T => Poly::t(ctx),
            Expr::Dot(u, w) => Poly::dot(ctx, *u, *w),
            Expr::Add(l, r) => &l.to_poly(ctx)? + &r.to_poly(ctx)?,
            Expr::Sub(l, r) => &l.to_poly(ctx)? - &r.to_poly(ctx)?,
            Expr::Mul(l, r) => &l.to_poly(ctx)? * &r.to_poly(ctx)?,
            Expr::Div(l, r, pos) => {
                let den = r.to_poly(ctx)?;
                let c = den.constant_term();
                if den.len() > 1 || (den.len() == 1 && c.is_zero()) {
                    return Err(KappaError::Parse { pos: *pos, msg: "division by a non-constant".into() });
                }
                let inv = c.checked_inv().map_err(|_| KappaError::Parse { pos: *pos, msg: "division by zero".into() })?;
                l.to_poly(ctx)?.scale(&inv)
            }
            Expr::Neg(e) => -&e.to_poly(ctx)?,
            Expr::Pow(b, e) => b.to_poly(ctx)?.pow(*e),
            Expr::Exp(_) => {
                return Err(KappaError::Parse { pos: 0, msg: "exp(..) is only allowed as a whole kernel".into() })
            }
        })
    }

    /// Recognizes `exp(i*u.x)` / `exp(i*x.u)`, returning the momentum block.
    pub fn as_plane_wave(&self) -> Option<Block> {
        let Expr::Exp(inner) = self else { return None };
        let Expr::Mul(l, r) = inner.as_ref() else { return None };
        let (Expr::Num(c), Expr::Dot(u, w)) = (l.as_ref(), r.as_ref()) else { return None };
        if *c != GaussRat::I {
            return None;
        }
        match (u, w) {
            (b, Block::X) | (Block::X, b) if *b != Block::X => Some(*b),
            _ => None,
        }
    }
}

pub fn parse_poly(ctx: Ctx, src: &str) -> Result<Poly> {
    parse(src)?.to_poly(ctx)
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(_) => 3,
        Expr::Pow(..) => 4,
        Expr::Num(c) if !c.im.is_zero() && !c.re.is_zero() => 1,
        Expr::Num(c) if c.re.is_negative() || c.im.is_negative() => 3,
        Expr::Num(c) if !c.re.is_integer() => 2,
        _ => 5,
    }
}

fn wrap(e: &Expr, min: u8) -> String {
    if prec(e) < min {
        format!("({e})")
    } else {
        e.to_string()
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(c) => {
                let s = c.to_string();
                write!(f, "{}", s.trim_start_matches('(').trim_end_matches(')'))
            }
            Expr::Var { block, index, .. } => write!(f, "{}{}", block.prefix(), index),
            Expr::T => write!(f, "t"),
            Expr::Dot(u, w) => write!(f, "{}.{}", u.prefix(), w.prefix()),
            Expr::Add(l, r) => write!(f, "{} + {}", wrap(l, 1), wrap(r, 2)),
            Expr::Sub(l, r) => write!(f, "{} - {}", wrap(l, 1), wrap(r, 2)),
            Expr::Mul(l, r) => write!(f, "{}*{}", wrap(l, 2), wrap(r, 3)),
            Expr::Div(l, r, _) => write!(f, "{}/{}", wrap(l, 2), wrap(r, 4)),
            Expr::Neg(e) => write!(f, "-{}", wrap(e, 3)),
            Expr::Pow(b, e) => write!(f, "{}^{}", wrap(b, 5), e),
            Expr::Exp(e) => write!(f, "exp({e})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_printed_polynomials() {
        let ctx = Ctx::new(3, 3).unwrap();
        let p = parse_poly(ctx, "x0*x1 - i*a1*x0 + (1/2+i)*k2^2 - 3/4*i*d0").unwrap();
        assert_eq!(parse_poly(ctx, &p.to_string()).unwrap(), p);
        let dot = parse_poly(ctx, "a.k").unwrap();
        assert_eq!(dot, Poly::dot(ctx, Block::A, Block::K));
    }

    #[test]
    fn reports_positions() {
        match parse("x0 + * x1") {
            Err(KappaError::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        match parse("x0 + y1") {
            Err(KappaError::UnknownSymbol { pos, name }) => {
                assert_eq!(pos, 5);
                assert_eq!(name, "y");
            }
            other => panic!("{other:?}"),
        }
        let ctx = Ctx::new(2, 1).unwrap();
        assert!(matches!(parse_poly(ctx, "x3"), Err(KappaError::UnknownSymbol { .. })));
        assert!(matches!(parse_poly(ctx, "x0/x1"), Err(KappaError::Parse { pos: 2, .. })));
    }

    #[test]
    fn plane_wave_node() {
        assert_eq!(parse("exp(i*k.x)").unwrap().as_plane_wave(), Some(Block::K));
        assert_eq!(parse("exp(i*x.q)").unwrap().as_plane_wave(), Some(Block::Q));
        assert_eq!(parse("exp(k.x)").unwrap().as_plane_wave(), None);
    }
}
