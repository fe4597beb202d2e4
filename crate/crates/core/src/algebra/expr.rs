//! Textual syntax for elements: sums of products of `E1`, `F2`, `K1`,
//! `K[1,-1,0]` with coefficients over `q`, `i` and the parameters `c`, `s`.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{Element, Engine, Mono};
use crate::error::{Error, Result};
use crate::param::{Coefficient, ParamPoly, Var};
use crate::scalar::Scalar;

/// A generator symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gen {
    E(usize),
    F(usize),
    K(Vec<i64>),
}

/// An unevaluated expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Gen(Gen),
    Coef(ParamPoly),
    Sum(Vec<Expr>),
    Prod(Vec<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    /// Evaluates with left-to-right products.
    pub fn eval(&self, eng: &Engine) -> Result<Element<ParamPoly>> {
        let n = eng.rank();
        match self {
            Expr::Gen(Gen::E(i)) => Ok(Element::e(n, *i)),
            Expr::Gen(Gen::F(i)) => Ok(Element::f(n, *i)),
            Expr::Gen(Gen::K(b)) => Ok(Element::k(b)),
            Expr::Coef(c) => Ok(Element::scalar(n, c.clone())),
            Expr::Sum(v) => {
                let mut acc = Element::zero();
                for t in v {
                    acc = acc.add(&t.eval(eng)?);
                }
                Ok(acc)
            }
            Expr::Prod(v) => {
                let mut acc = Element::one(n);
                for t in v {
                    acc = eng.mul(&acc, &t.eval(eng)?)?;
                }
                Ok(acc)
            }
            Expr::Neg(e) => Ok(e.eval(eng)?.neg()),
            Expr::Pow(b, e) => {
                let base = b.eval(eng)?;
                if *e >= 0 {
                    return eng.pow(&base, *e as u32);
                }
                let inv = invert_unit(&base)?;
                eng.pow(&inv, (-e) as u32)
            }
        }
    }
}

/// Inverse of `c · K_β` with `c` a nonzero constant.
fn invert_unit(a: &Element<ParamPoly>) -> Result<Element<ParamPoly>> {
    if a.len() != 1 {
        return Err(Error::Parse(String::from("only scalars and K-monomials can be inverted")));
    }
    let (m, c) = a.terms.iter().next().unwrap();
    if !m.is_k_only() {
        return Err(Error::Parse(String::from("only scalars and K-monomials can be inverted")));
    }
    let s = c.as_scalar().ok_or_else(|| Error::Parse(String::from("cannot invert a parameter")))?;
    let k: Vec<i64> = m.kvec().iter().map(|x| -x).collect();
    Ok(Element::mono(Mono::k(&k), ParamPoly::constant(s.inv()?)))
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < cs.len() {
        let c = cs[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let st = k;
            while k < cs.len() && cs[k].is_ascii_digit() {
                k += 1;
            }
            let txt: String = cs[st..k].iter().collect();
            out.push(Tok::Int(txt.parse().map_err(|_| Error::Parse(alloc::format!("bad integer `{txt}`")))?));
        } else if c.is_ascii_alphabetic() {
            let st = k;
            k += 1;
            while k < cs.len() && (cs[k].is_ascii_alphanumeric() || cs[k] == '_' || cs[k] == '\'') {
                k += 1;
            }
            out.push(Tok::Ident(cs[st..k].iter().collect()));
        } else if "+-*/^()[],".contains(c) {
            out.push(Tok::Op(c));
            k += 1;
        } else {
            return Err(Error::Parse(alloc::format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    labels: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn label(&self, s: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == s)
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut terms = vec![self.product()?];
        loop {
            if self.eat('+') {
                terms.push(self.product()?);
            } else if self.eat('-') {
                terms.push(Expr::Neg(Box::new(self.product()?)));
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Sum(terms) })
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')))
    }

    fn product(&mut self) -> Result<Expr> {
        let mut fs = vec![self.unary()?];
        loop {
            if self.eat('*') {
                fs.push(self.unary()?);
            } else if self.eat('/') {
                fs.push(Expr::Pow(Box::new(self.unary()?), -1));
            } else if self.starts_atom() {
                fs.push(self.power()?);
            } else {
                break;
            }
        }
        Ok(if fs.len() == 1 { fs.pop().unwrap() } else { Expr::Prod(fs) })
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

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(if neg { -v } else { v })
            }
            _ => Err(Error::Parse(String::from("expected integer"))),
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.eat('(') {
            let v = self.int()?;
            if !self.eat(')') {
                return Err(Error::Parse(String::from("expected `)`")));
            }
            return Ok(v);
        }
        self.int()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Expr::Coef(ParamPoly::constant(Scalar::from_int(v))))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(Error::Parse(String::from("expected `)`")));
                }
                Ok(e)
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                self.ident(&id)
            }
            Some(t) => Err(Error::Parse(alloc::format!("unexpected token {t:?}"))),
            None => Err(Error::Parse(String::from("unexpected end of input"))),
        }
    }

    fn ident(&mut self, id: &str) -> Result<Expr> {
        match id {
            "q" => return Ok(Expr::Coef(ParamPoly::constant(Scalar::q()))),
            "i" => return Ok(Expr::Coef(ParamPoly::constant(Scalar::i()))),
            "K" if self.eat('[') => {
                let mut v = Vec::new();
                loop {
                    v.push(self.int()?);
                    if self.eat(']') {
                        break;
                    }
                    if !self.eat(',') {
                        return Err(Error::Parse(String::from("expected `,` or `]`")));
                    }
                }
                if v.len() != self.labels.len() {
                    return Err(Error::Parse(alloc::format!("K-vector has length {}, expected {}", v.len(), self.labels.len())));
                }
                return Ok(Expr::Gen(Gen::K(v)));
            }
            _ => {}
        }
        let (head, rest) = id.split_at(1);
        let idx = self.label(rest).ok_or_else(|| Error::Parse(alloc::format!("unknown symbol `{id}`")))?;
        let n = self.labels.len();
        match head {
            "E" => Ok(Expr::Gen(Gen::E(idx))),
            "F" => Ok(Expr::Gen(Gen::F(idx))),
            "K" => {
                let mut v = vec![0; n];
                v[idx] = 1;
                Ok(Expr::Gen(Gen::K(v)))
            }
            "c" => Ok(Expr::Coef(ParamPoly::var(Var::c(idx)))),
            "s" => Ok(Expr::Coef(ParamPoly::var(Var::s(idx)))),
            _ => Err(Error::Parse(alloc::format!("unknown symbol `{id}`"))),
        }
    }
}

/// Parses an expression; indices refer to the given labels.
pub fn parse_expr(s: &str, labels: &[String]) -> Result<Expr> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse(String::from("empty expression")));
    }
    let mut p = Parser { toks, pos: 0, labels };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(alloc::format!("trailing input in `{s}`")));
    }
    Ok(e)
}

/// Parses and evaluates an expression to normal form.
pub fn parse_element(eng: &Engine, s: &str) -> Result<Element<ParamPoly>> {
    parse_expr(s, &eng.datum.labels)?.eval(eng)
}

/// Printable monomial, e.g. `E1 E2 K[1,0,-1] F3`; `1` for the unit.
pub fn format_mono(m: &Mono, labels: &[String]) -> String {
    format_mono_with(m, labels, "F")
}

/// As [`format_mono`], printing the lowering letters with `f_sym`.
pub fn format_mono_with(m: &Mono, labels: &[String], f_sym: &str) -> String {
    let mut parts: Vec<String> = Vec::new();
    for &x in &m.e {
        parts.push(alloc::format!("E{}", labels[x as usize]));
    }
    if m.k.iter().any(|&x| x != 0) {
        let ks: Vec<String> = m.k.iter().map(|x| x.to_string()).collect();
        parts.push(alloc::format!("K[{}]", ks.join(",")));
    }
    for &x in &m.f {
        parts.push(alloc::format!("{f_sym}{}", labels[x as usize]));
    }
    if parts.is_empty() {
        String::from("1")
    } else {
        parts.join(" ")
    }
}

/// Coefficient string with parameters printed by label.
pub fn format_coeff<R: Coefficient>(c: &R, labels: &[String]) -> String {
    c.format_with(&|v: Var| alloc::format!("{}{}", v.name, labels[v.idx as usize]))
}

fn needs_parens(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    body.contains('+') || body.contains('-') || body.contains('/') || body.contains('*')
}

/// Canonical printed form; terms in monomial order.
pub fn format_element<R: Coefficient>(a: &Element<R>, labels: &[String]) -> String {
    format_element_with(a, labels, "F")
}

/// As [`format_element`], printing the lowering letters with `f_sym`.
pub fn format_element_with<R: Coefficient>(a: &Element<R>, labels: &[String], f_sym: &str) -> String {
    if a.is_zero() {
        return String::from("0");
    }
    let mut out = String::new();
    for (m, c) in &a.terms {
        let cs = format_coeff(c, labels);
        let ms = format_mono_with(m, labels, f_sym);
        let term = if ms == "1" {
            if needs_parens(&cs) {
                alloc::format!("({cs})")
            } else {
                cs
            }
        } else if cs == "1" {
            ms
        } else if cs == "-1" {
            alloc::format!("-{ms}")
        } else if needs_parens(&cs) {
            alloc::format!("({cs})*{ms}")
        } else {
            alloc::format!("{cs}*{ms}")
        };
        if out.is_empty() {
            out.push_str(&term);
        } else if let Some(t) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(t);
        } else {
            out.push_str(" + ");
            out.push_str(&term);
        }
    }
    out
}
