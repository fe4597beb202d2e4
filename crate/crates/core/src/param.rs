//! Polynomials in the symbolic parameters `c_i`, `s_i` with coefficients in
//! Q(i)(q), the expression parser shared with [`Scalar`], and the
//! [`Coefficient`] trait the algebra engine is generic over.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::scalar::{GaussRat, Scalar};

/// Coefficient ring of algebra elements: a commutative Q(i)(q)-algebra.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_scalar(s: Scalar) -> Self;
    fn add_assign(&mut self, o: &Self);
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, s: &Scalar) -> Self;
    /// The coefficient as a scalar, if it has no symbolic part.
    fn to_scalar(&self) -> Option<Scalar>;
    fn to_expr(&self) -> String;
    /// Printable form with a custom naming of parameters.
    fn format_with(&self, name: &dyn Fn(Var) -> String) -> String;
}

impl Coefficient for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn from_scalar(s: Scalar) -> Self {
        s
    }
    fn add_assign(&mut self, o: &Self) {
        *self = &*self + o;
    }
    fn neg(&self) -> Self {
        Scalar::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }
    fn to_scalar(&self) -> Option<Scalar> {
        Some(self.clone())
    }
    fn to_expr(&self) -> String {
        Scalar::to_expr(self)
    }
    fn format_with(&self, _name: &dyn Fn(Var) -> String) -> String {
        Scalar::to_expr(self)
    }
}

/// A parameter symbol such as `c2` or `s0`; `idx` is the position in the index set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub name: char,
    pub idx: u32,
}

impl Var {
    pub fn c(idx: usize) -> Self {
        Var { name: 'c', idx: idx as u32 }
    }
    pub fn s(idx: usize) -> Self {
        Var { name: 's', idx: idx as u32 }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.name, self.idx)
    }
}

/// Monomial in parameters: sorted `(variable, exponent)` list.
pub type PMono = Vec<(Var, u32)>;

fn mono_mul(a: &PMono, b: &PMono) -> PMono {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            core::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Polynomial in parameter symbols over Q(i)(q).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ParamPoly {
    pub terms: BTreeMap<PMono, Scalar>,
}

impl ParamPoly {
    pub fn constant(s: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert(Vec::new(), s);
        }
        ParamPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(alloc::vec![(v, 1)], Scalar::one());
        ParamPoly { terms }
    }

    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut v: Vec<Var> = self.terms.keys().flat_map(|m| m.iter().map(|p| p.0)).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        Coefficient::add_assign(&mut r, o);
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&Coefficient::neg(o))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = <ParamPoly as Coefficient>::one();
        for _ in 0..e {
            acc = Coefficient::mul(&acc, self);
        }
        acc
    }

    /// Exact quotient by a single nonzero term `d`, if every term is divisible.
    pub fn div_exact(&self, d: &ParamPoly) -> Option<ParamPoly> {
        if d.terms.len() != 1 {
            return None;
        }
        let (dm, dc) = d.terms.iter().next()?;
        let inv = dc.inv().ok()?;
        let mut out = ParamPoly::default();
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            for &(v, e) in dm {
                let pos = rest.iter().position(|p| p.0 == v)?;
                if rest[pos].1 < e {
                    return None;
                }
                rest[pos].1 -= e;
                if rest[pos].1 == 0 {
                    rest.remove(pos);
                }
            }
            out.terms.insert(rest, c * &inv);
        }
        Some(out)
    }

    /// Substitutes each variable found in `map`; others are kept symbolic.
    pub fn substitute(&self, map: &BTreeMap<Var, ParamPoly>) -> ParamPoly {
        let mut acc = <ParamPoly as Coefficient>::zero();
        for (m, c) in &self.terms {
            let mut t = ParamPoly::constant(c.clone());
            for &(v, e) in m {
                let f = match map.get(&v) {
                    Some(p) => p.pow(e),
                    None => {
                        let mut terms = BTreeMap::new();
                        terms.insert(alloc::vec![(v, e)], Scalar::one());
                        ParamPoly { terms }
                    }
                };
                t = Coefficient::mul(&t, &f);
            }
            Coefficient::add_assign(&mut acc, &t);
        }
        acc
    }

    /// Printable form with a custom variable naming.
    pub fn to_expr_with(&self, name: &dyn Fn(Var) -> String) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let mut vars = String::new();
            for (k, &(v, e)) in m.iter().enumerate() {
                if k > 0 {
                    vars.push('*');
                }
                vars.push_str(&name(v));
                if e > 1 {
                    vars.push_str(&alloc::format!("^{e}"));
                }
            }
            let cs = c.to_expr();
            let term = if vars.is_empty() {
                wrap_sum(&cs)
            } else if c.is_one() {
                vars
            } else if (-c).is_one() {
                alloc::format!("-{vars}")
            } else {
                alloc::format!("{}*{}", wrap_sum(&cs), vars)
            };
            if !out.is_empty() && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        out
    }
}

fn wrap_sum(s: &str) -> String {
    let inner = s.strip_prefix('-').unwrap_or(s);
    if inner.contains('+') || inner.contains('-') || inner.contains('/') {
        let bare_paren = s.starts_with('(') && s.ends_with(')') && !s.contains(")/");
        if bare_paren {
            return String::from(s);
        }
        alloc::format!("({s})")
    } else {
        String::from(s)
    }
}

impl Coefficient for ParamPoly {
    fn zero() -> Self {
        ParamPoly::default()
    }
    fn one() -> Self {
        ParamPoly::constant(Scalar::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_scalar(s: Scalar) -> Self {
        ParamPoly::constant(s)
    }
    fn add_assign(&mut self, o: &Self) {
        for (m, c) in &o.terms {
            match self.terms.get_mut(m) {
                Some(x) => {
                    *x += c;
                    if x.is_zero() {
                        self.terms.remove(m);
                    }
                }
                None => {
                    self.terms.insert(m.clone(), c.clone());
                }
            }
        }
    }
    fn neg(&self) -> Self {
        ParamPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }
    fn mul(&self, o: &Self) -> Self {
        let mut r = ParamPoly::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = mono_mul(m1, m2);
                let c = c1 * c2;
                match r.terms.get_mut(&m) {
                    Some(x) => {
                        *x += &c;
                        if x.is_zero() {
                            r.terms.remove(&m);
                        }
                    }
                    None => {
                        r.terms.insert(m, c);
                    }
                }
            }
        }
        r
    }
    fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return ParamPoly::default();
        }
        ParamPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }
    fn to_scalar(&self) -> Option<Scalar> {
        self.as_scalar()
    }
    fn to_expr(&self) -> String {
        self.to_expr_with(&|v| alloc::format!("{v}"))
    }
    fn format_with(&self, name: &dyn Fn(Var) -> String) -> String {
        self.to_expr_with(name)
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Coefficient::to_expr(self))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(num_bigint::BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().collect();
            let n = digits
                .parse::<num_bigint::BigInt>()
                .map_err(|_| Error::Parse(alloc::format!("bad integer `{digits}`")))?;
            out.push(Tok::Int(n));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push(Tok::Ident(chars[start..k].iter().collect()));
        } else if "+-*/^()".contains(c) {
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
    resolve: &'a dyn Fn(&str) -> Option<Var>,
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

    fn expr(&mut self) -> Result<ParamPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = acc.add(&t);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = acc.sub(&t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ParamPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let t = self.unary()?;
                acc = Coefficient::mul(&acc, &t);
            } else if self.eat('/') {
                let t = self.unary()?;
                let s = t.as_scalar().ok_or_else(|| {
                    Error::Parse(String::from("division by an expression containing parameters"))
                })?;
                acc = acc.scale(&s.inv()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<ParamPoly> {
        if self.eat('-') {
            return Ok(Coefficient::neg(&self.unary()?));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn exponent(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        let e = match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                i64::try_from(n).map_err(|_| Error::Parse(String::from("exponent too large")))?
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.exponent()?;
                if !self.eat(')') {
                    return Err(Error::Parse(String::from("expected `)` in exponent")));
                }
                e
            }
            _ => return Err(Error::Parse(String::from("expected integer exponent"))),
        };
        Ok(if neg { -e } else { e })
    }

    fn power(&mut self) -> Result<ParamPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.exponent()?;
            if let Some(s) = base.as_scalar() {
                return Ok(ParamPoly::constant(s.pow(e)?));
            }
            if e < 0 {
                return Err(Error::Parse(String::from("negative power of a parameter expression")));
            }
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ParamPoly> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let r = num_rational::BigRational::from_integer(n);
                Ok(ParamPoly::constant(Scalar::from_gauss(GaussRat::new(
                    r,
                    num_rational::BigRational::from_integer(0.into()),
                ))))
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                match id.as_str() {
                    "q" => Ok(ParamPoly::constant(Scalar::q())),
                    "i" => Ok(ParamPoly::constant(Scalar::i())),
                    _ => match (self.resolve)(&id) {
                        Some(v) => Ok(ParamPoly::var(v)),
                        None => Err(Error::Parse(alloc::format!("unknown symbol `{id}`"))),
                    },
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse(String::from("expected `)`")));
                }
                Ok(e)
            }
            Some(t) => Err(Error::Parse(alloc::format!("unexpected token {t:?}"))),
            None => Err(Error::Parse(String::from("unexpected end of input"))),
        }
    }
}

/// Default symbol resolution: a letter followed by a decimal index, e.g. `c2`.
pub fn default_resolve(id: &str) -> Option<Var> {
    let mut ch = id.chars();
    let name = ch.next()?;
    let rest: String = ch.collect();
    if !name.is_ascii_alphabetic() || rest.is_empty() {
        return None;
    }
    let idx = rest.parse::<u32>().ok()?;
    Some(Var { name, idx })
}

/// Parses an expression over q, i and parameter symbols resolved by `resolve`.
pub fn parse_param_poly_with(s: &str, resolve: &dyn Fn(&str) -> Option<Var>) -> Result<ParamPoly> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse(String::from("empty expression")));
    }
    let mut p = Parser { toks, pos: 0, resolve };
    let r = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(alloc::format!("trailing input in `{s}`")));
    }
    Ok(r)
}

pub fn parse_param_poly(s: &str) -> Result<ParamPoly> {
    parse_param_poly_with(s, &default_resolve)
}
