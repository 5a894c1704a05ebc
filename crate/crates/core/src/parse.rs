//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr     := ['-'] term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' nat)?
//! base     := rational | var | '(' expr ')'
//! rational := int ('/' nat)?
//! ```
//!
//! Multiplication must be written out: `2*x*y`, not `2xy`. Positions in errors
//! are byte offsets into the input.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                chars.next();
            }
            out.push((pos, Tok::Int(s.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                chars.next();
            }
            out.push((pos, Tok::Ident(s)));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Sym(c)));
            chars.next();
        } else {
            return Err(Error::Parse { pos, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    vars: &'a [String],
    field: Field,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = if self.eat('-') { -self.term()? } else { self.term()? };
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

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.base()?;
        if !self.eat('^') {
            return Ok(base);
        }
        if self.peek() == Some(&Tok::Sym('-')) {
            return self.err("negative exponent");
        }
        let e = self.nat("exponent")?;
        let e: u32 = e.try_into().map_err(|_| Error::Parse { pos: self.pos(), msg: "exponent too large".into() })?;
        Ok(base.pow(e))
    }

    fn nat(&mut self, what: &str) -> Result<BigInt> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.at += 1;
                Ok(v)
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn base(&mut self) -> Result<Poly> {
        let n = self.vars.len();
        match self.peek().cloned() {
            Some(Tok::Int(num)) => {
                self.at += 1;
                let den = if self.eat('/') { self.nat("denominator")? } else { BigInt::from(1) };
                let pos = self.pos();
                let c = self
                    .field
                    .from_ratio(&num, &den)
                    .map_err(|_| Error::Parse { pos, msg: format!("zero denominator in {num}/{den}") })?;
                Ok(Poly::constant(n, c))
            }
            Some(Tok::Ident(name)) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => {
                    self.at += 1;
                    Ok(Poly::var(n, i, self.field))
                }
                None => self.err(format!("unknown variable '{name}'")),
            },
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Some(Tok::Sym(c)) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` as a polynomial in `vars` over `field`.
pub fn parse_poly(text: &str, vars: &[String], field: Field) -> Result<Poly> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, end: text.len(), vars, field };
    let out = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

/// The identifiers occurring in `texts`, sorted and without repeats.
pub fn infer_variables<'a>(texts: impl IntoIterator<Item = &'a str>) -> Result<Vec<String>> {
    let mut names = BTreeSet::new();
    for t in texts {
        for (_, tok) in tokenize(t)? {
            if let Tok::Ident(s) = tok {
                names.insert(s);
            }
        }
    }
    Ok(names.into_iter().collect())
}

/// Splits a comma-separated variable list, rejecting empty or repeated names.
pub fn parse_var_list(text: &str) -> Result<Vec<String>> {
    let names: Vec<String> = text.split(',').map(|s| s.trim().to_string()).collect();
    let mut seen = BTreeSet::new();
    for (i, n) in names.iter().enumerate() {
        let ok = n.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
            && n.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::Parse { pos: i, msg: format!("bad variable name '{n}'") });
        }
        if !seen.insert(n.clone()) {
            return Err(Error::Parse { pos: i, msg: format!("variable '{n}' listed twice") });
        }
    }
    Ok(names)
}
