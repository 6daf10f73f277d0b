//! Recursive-descent parser.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := base ('^' '-'? integer)?
//! base   := number | ident | '(' expr ')' | 'exp' '(' expr ')'
//! ```
//!
//! Unary minus binds looser than `^`, so `-x^2` is `-(x^2)`.

use num_bigint::BigInt;
use num_traits::Num;

use super::poly::Q;
use super::Expr;
use crate::chart::ChartRef;
use crate::error::{GeomError, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Q),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl Lexer<'_> {
    fn next(&mut self) -> Result<(Tok, usize)> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&b) = bytes.get(self.pos) else {
            return Ok((Tok::End, start));
        };
        if b.is_ascii_digit() || b == b'.' {
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let int_end = self.pos;
            let mut frac = "";
            if self.pos < bytes.len() && bytes[self.pos] == b'.' {
                self.pos += 1;
                let fs = self.pos;
                while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                frac = &self.src[fs..self.pos];
            }
            let int = &self.src[start..int_end];
            if int.is_empty() && frac.is_empty() {
                return Err(GeomError::Syntax { pos: start, msg: "malformed number".into() });
            }
            let digits = format!("{int}{frac}");
            let n = BigInt::from_str_radix(&digits, 10)
                .map_err(|_| GeomError::Syntax { pos: start, msg: "malformed number".into() })?;
            let d = BigInt::from(10u32).pow(frac.len() as u32);
            return Ok((Tok::Num(Q::new(n, d)), start));
        }
        if b.is_ascii_alphabetic() || b == b'_' {
            while self.pos < bytes.len() && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_') {
                self.pos += 1;
            }
            return Ok((Tok::Ident(self.src[start..self.pos].to_string()), start));
        }
        if "+-*/^()".contains(b as char) {
            self.pos += 1;
            return Ok((Tok::Sym(b as char), start));
        }
        let ch = self.src[start..].chars().next().unwrap();
        Err(GeomError::Syntax { pos: start, msg: format!("unexpected character `{ch}`") })
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    tok: Tok,
    pos: usize,
    chart: &'a ChartRef,
}

pub(super) fn parse(text: &str, chart: &ChartRef) -> Result<Expr> {
    let mut lex = Lexer { src: text, pos: 0 };
    let (tok, pos) = lex.next()?;
    let mut p = Parser { lex, tok, pos, chart };
    let e = p.expr()?;
    if p.tok != Tok::End {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

impl Parser<'_> {
    fn bump(&mut self) -> Result<()> {
        let (tok, pos) = self.lex.next()?;
        self.tok = tok;
        self.pos = pos;
        Ok(())
    }

    fn error(&self, msg: &str) -> GeomError {
        let found = match &self.tok {
            Tok::End => "end of input".to_string(),
            Tok::Num(q) => format!("`{q}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Sym(c) => format!("`{c}`"),
        };
        GeomError::Syntax { pos: self.pos, msg: format!("{msg}, found {found}") }
    }

    fn eat(&mut self, c: char) -> Result<bool> {
        if self.tok == Tok::Sym(c) {
            self.bump()?;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if !self.eat(c)? {
            return Err(self.error(&format!("expected `{c}`")));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+')? {
                acc = &acc + &self.term()?;
            } else if self.eat('-')? {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*')? {
                acc = &acc * &self.unary()?;
            } else if self.tok == Tok::Sym('/') {
                let pos = self.pos;
                self.bump()?;
                let d = self.unary()?;
                acc = acc.checked_div(&d).map_err(|_| GeomError::Syntax {
                    pos,
                    msg: "division by an expression that is identically zero".into(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-')? {
            return Ok(-self.unary()?);
        }
        if self.eat('+')? {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if !self.eat('^')? {
            return Ok(base);
        }
        let neg = self.eat('-')?;
        let pos = self.pos;
        let Tok::Num(q) = self.tok.clone() else {
            return Err(self.error("expected an integer exponent"));
        };
        let k: i32 = (q.is_integer())
            .then(|| i32::try_from(q.to_integer()).ok())
            .flatten()
            .filter(|k| *k <= 10_000)
            .ok_or(GeomError::Syntax { pos, msg: "exponent must be a small integer".into() })?;
        self.bump()?;
        let k = if neg { -k } else { k };
        base.powi(k).map_err(|_| GeomError::Syntax { pos, msg: "negative power of zero".into() })
    }

    fn base(&mut self) -> Result<Expr> {
        match self.tok.clone() {
            Tok::Num(q) => {
                self.bump()?;
                Ok(Expr::constant(self.chart, q))
            }
            Tok::Ident(name) if name == "exp" => {
                let pos = self.pos;
                self.bump()?;
                self.expect('(')?;
                let arg = self.expr()?;
                self.expect(')')?;
                arg.exp().map_err(|e| match e {
                    GeomError::Unsupported(msg) => GeomError::Unsupported(format!("{msg} at position {pos}")),
                    other => other,
                })
            }
            Tok::Ident(name) => {
                let pos = self.pos;
                let i = self.chart.index_of(&name).ok_or(GeomError::UnknownIdentifier { name, pos })?;
                self.bump()?;
                Ok(Expr::var(self.chart, i))
            }
            Tok::Sym('(') => {
                self.bump()?;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Err(self.error("expected a number, coordinate, `exp` or `(`")),
        }
    }
}
