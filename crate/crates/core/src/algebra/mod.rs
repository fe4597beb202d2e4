//! Elements of `U_q(g')` in the triangular normal form
//! `E-word · K_β · F-word`, the rewriting engine that produces that form, the
//! Hopf structure and the projections `P_λ`, `π_{α,β}`.

mod engine;
mod expr;
mod hopf;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

pub use engine::{words_of_weight, Engine, WeightTable, DEFAULT_HEIGHT_CAP};
pub use expr::{format_coeff, format_element, format_element_with, format_mono, format_mono_with, parse_element, parse_expr, Expr, Gen};
pub use hopf::{counit, counit_at, project_p, project_pi, tensor_to_element};

use crate::param::Coefficient;
use crate::scalar::Scalar;

/// Word over the index set; letters are positions in `I`.
pub type Word = Vec<u8>;

/// Normal monomial `E_{e_1} ... E_{e_r} K_k F_{f_1} ... F_{f_s}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub e: Word,
    pub k: Vec<i32>,
    pub f: Word,
}

impl Mono {
    pub fn one(n: usize) -> Self {
        Mono { e: Vec::new(), k: vec![0; n], f: Vec::new() }
    }

    pub fn e(n: usize, i: usize) -> Self {
        Mono { e: vec![i as u8], k: vec![0; n], f: Vec::new() }
    }

    pub fn f(n: usize, i: usize) -> Self {
        Mono { e: Vec::new(), k: vec![0; n], f: vec![i as u8] }
    }

    pub fn k(beta: &[i64]) -> Self {
        Mono { e: Vec::new(), k: beta.iter().map(|&b| b as i32).collect(), f: Vec::new() }
    }

    pub fn is_k_only(&self) -> bool {
        self.e.is_empty() && self.f.is_empty()
    }

    pub fn kvec(&self) -> Vec<i64> {
        self.k.iter().map(|&x| x as i64).collect()
    }

    /// Weight `wt(e) - wt(f)`.
    pub fn weight(&self) -> Vec<i64> {
        let mut w = vec![0i64; self.k.len()];
        for &i in &self.e {
            w[i as usize] += 1;
        }
        for &i in &self.f {
            w[i as usize] -= 1;
        }
        w
    }
}

pub fn word_weight(n: usize, w: &[u8]) -> Vec<i64> {
    let mut v = vec![0i64; n];
    for &i in w {
        v[i as usize] += 1;
    }
    v
}

/// Finite linear combination of normal monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<R> {
    pub terms: BTreeMap<Mono, R>,
}

impl<R: Coefficient> Default for Element<R> {
    fn default() -> Self {
        Element { terms: BTreeMap::new() }
    }
}

impl<R: Coefficient> Element<R> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn mono(m: Mono, c: R) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn one(n: usize) -> Self {
        Self::mono(Mono::one(n), R::one())
    }

    pub fn scalar(n: usize, c: R) -> Self {
        Self::mono(Mono::one(n), c)
    }

    pub fn e(n: usize, i: usize) -> Self {
        Self::mono(Mono::e(n, i), R::one())
    }

    pub fn f(n: usize, i: usize) -> Self {
        Self::mono(Mono::f(n, i), R::one())
    }

    pub fn k(beta: &[i64]) -> Self {
        Self::mono(Mono::k(beta), R::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Mono, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                x.add_assign(&c);
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.neg());
        }
        r
    }

    pub fn neg(&self) -> Self {
        Element { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, s: &R) -> Self {
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            r.add_term(m.clone(), c.mul(s));
        }
        r
    }

    pub fn scale_scalar(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Element { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.scale(s))).collect() }
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&Mono) -> bool) -> Self {
        Element { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coeff(&self, m: &Mono) -> R {
        self.terms.get(m).cloned().unwrap_or_else(R::zero)
    }

    /// The distinct weights `wt(e) - wt(f)` occurring.
    pub fn weights(&self) -> Vec<Vec<i64>> {
        let mut v: Vec<Vec<i64>> = self.terms.keys().map(|m| m.weight()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Component of weight `beta`.
    pub fn weight_component(&self, beta: &[i64]) -> Self {
        self.filter(|m| m.weight() == beta)
    }

    /// Maximal total number of E and F letters in a term.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.e.len() + m.f.len()).max().unwrap_or(0)
    }

    pub fn map_coeffs<S: Coefficient>(&self, f: impl Fn(&R) -> S) -> Element<S> {
        let mut r = Element::zero();
        for (m, c) in &self.terms {
            r.add_term(m.clone(), f(c));
        }
        r
    }

    /// All coefficients lie in Q(i)(q).
    pub fn to_scalar_element(&self) -> Option<Element<Scalar>> {
        let mut r = Element::zero();
        for (m, c) in &self.terms {
            r.add_term(m.clone(), c.to_scalar()?);
        }
        Some(r)
    }
}

impl Element<Scalar> {
    pub fn lift<R: Coefficient>(&self) -> Element<R> {
        self.map_coeffs(|c| R::from_scalar(c.clone()))
    }
}

/// Finite linear combination of tensor products of normal monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<R> {
    pub terms: BTreeMap<Vec<Mono>, R>,
}

impl<R: Coefficient> Default for Tensor<R> {
    fn default() -> Self {
        Tensor { terms: BTreeMap::new() }
    }
}

impl<R: Coefficient> Tensor<R> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Vec<Mono>, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                x.add_assign(&c);
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.neg());
        }
        r
    }

    /// `a ⊗ b` for elements.
    pub fn pure(a: &Element<R>, b: &Element<R>) -> Self {
        let mut t = Self::zero();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                t.add_term(vec![ma.clone(), mb.clone()], ca.mul(cb));
            }
        }
        t
    }

    /// Splits a two-fold tensor as a sum over second-factor monomials of
    /// (first-factor element) ⊗ monomial.
    pub fn by_second(&self) -> BTreeMap<Mono, Element<R>> {
        let mut out: BTreeMap<Mono, Element<R>> = BTreeMap::new();
        for (k, c) in &self.terms {
            out.entry(k[1].clone()).or_default().add_term(k[0].clone(), c.clone());
        }
        out
    }
}
