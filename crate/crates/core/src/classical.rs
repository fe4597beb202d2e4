//! The classical limit `q = 1`: a normal-form engine for `U(g')`, the
//! specialization map from the `A`-integral slice of `U_q(g')`, and the
//! involution `θ(X, τ)` obtained by specializing `θ_q(X, τ)`.
//!
//! Normal monomials are `e_w · h^k · f_v` with `e`- and `f`-words canonical
//! per weight under the classical Serre relations.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{Element, Engine, Word};
use crate::cartan::{unit, CartanDatum};
use crate::error::{Error, Result};
use crate::maps::theta_q;
use crate::param::Coefficient;
use crate::scalar::{GaussRat, Scalar};
use crate::weyl::{act_coroot, AdmissiblePair};

/// Monomial `e_w h^k f_v` of `U(g')`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CMono {
    pub e: Word,
    pub h: Vec<u32>,
    pub f: Word,
}

impl CMono {
    pub fn one(n: usize) -> Self {
        CMono { e: Vec::new(), h: vec![0; n], f: Vec::new() }
    }
}

/// Element of `U(g')` as a combination of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassicalElement {
    pub terms: BTreeMap<CMono, GaussRat>,
}

fn push(terms: &mut BTreeMap<CMono, GaussRat>, m: CMono, c: GaussRat) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&m) {
        Some(x) => {
            *x = &*x + &c;
            if x.is_zero() {
                terms.remove(&m);
            }
        }
        None => {
            terms.insert(m, c);
        }
    }
}

impl ClassicalElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn mono(m: CMono, c: GaussRat) -> Self {
        let mut x = Self::zero();
        push(&mut x.terms, m, c);
        x
    }

    pub fn scalar(n: usize, c: GaussRat) -> Self {
        Self::mono(CMono::one(n), c)
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, GaussRat::one())
    }

    pub fn e(n: usize, i: usize) -> Self {
        Self::mono(CMono { e: vec![i as u8], ..CMono::one(n) }, GaussRat::one())
    }

    pub fn f(n: usize, i: usize) -> Self {
        Self::mono(CMono { f: vec![i as u8], ..CMono::one(n) }, GaussRat::one())
    }

    pub fn h(n: usize, i: usize) -> Self {
        let mut h = vec![0; n];
        h[i] = 1;
        Self::mono(CMono { h, ..CMono::one(n) }, GaussRat::one())
    }

    /// `Σ_i v_i h_i`.
    pub fn h_linear(n: usize, v: &[i64]) -> Self {
        let mut x = Self::zero();
        for (i, &c) in v.iter().enumerate() {
            x = x.add(&Self::h(n, i).scale(&GaussRat::from_int(c)));
        }
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: CMono, c: GaussRat) {
        push(&mut self.terms, m, c);
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        ClassicalElement { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, s: &GaussRat) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    pub fn coeff(&self, m: &CMono) -> GaussRat {
        self.terms.get(m).cloned().unwrap_or_else(GaussRat::zero)
    }
}

/// Printed form with lowercase generators, e.g. `e1 h2^2 f3`.
pub fn format_classical(x: &ClassicalElement, labels: &[String]) -> String {
    if x.is_zero() {
        return String::from("0");
    }
    let mut out = String::new();
    for (m, c) in &x.terms {
        let mut parts: Vec<String> = m.e.iter().map(|&t| format!("e{}", labels[t as usize])).collect();
        for (i, &k) in m.h.iter().enumerate() {
            match k {
                0 => {}
                1 => parts.push(format!("h{}", labels[i])),
                _ => parts.push(format!("h{}^{k}", labels[i])),
            }
        }
        parts.extend(m.f.iter().map(|&t| format!("f{}", labels[t as usize])));
        let ms = parts.join(" ");
        let cs = c.to_expr();
        let term = match (ms.is_empty(), cs.as_str()) {
            (true, _) => cs.clone(),
            (false, "1") => ms,
            (false, "-1") => format!("-{ms}"),
            _ => format!("{cs}*{ms}"),
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

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, t| acc * (n - t) as i64 / (t + 1) as i64)
}

/// Normal-form engine for `U(g')`.
pub struct ClassicalEngine {
    pub datum: CartanDatum,
    words: Engine,
}

type Terms = BTreeMap<CMono, GaussRat>;

impl ClassicalEngine {
    pub fn new(datum: &CartanDatum) -> Self {
        ClassicalEngine { datum: datum.clone(), words: Engine::classical(datum) }
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    /// `α_w(h_i)` for the weight of a word.
    fn word_pairing(&self, i: usize, w: &[u8]) -> i64 {
        w.iter().map(|&t| self.datum.a[i][t as usize]).sum()
    }

    fn left_e(&self, i: usize, x: Terms) -> Terms {
        x.into_iter()
            .map(|(mut m, c)| {
                m.e.insert(0, i as u8);
                (m, c)
            })
            .collect()
    }

    fn left_h(&self, i: usize, x: &Terms) -> Terms {
        let mut out = Terms::new();
        for (m, c) in x {
            let s = self.word_pairing(i, &m.e);
            let mut up = m.clone();
            up.h[i] += 1;
            push(&mut out, up, c.clone());
            if s != 0 {
                push(&mut out, m.clone(), c * &GaussRat::from_int(s));
            }
        }
        out
    }

    /// `f_j · e_w h^k f_v` straightened.
    fn f_on_mono(&self, j: usize, m: &CMono) -> Terms {
        let mut out = Terms::new();
        if m.e.is_empty() {
            // f_j h_i = (h_i + a_ij) f_j
            let mut acc: Vec<(Vec<u32>, i64)> = vec![(vec![0; m.h.len()], 1)];
            for (i, &k) in m.h.iter().enumerate() {
                let s = self.datum.a[i][j];
                let mut next = Vec::new();
                for (h, c) in &acc {
                    for t in 0..=k {
                        let coef = binomial(k, t) * s.pow(k - t);
                        if coef != 0 {
                            let mut h2 = h.clone();
                            h2[i] = t;
                            next.push((h2, c * coef));
                        }
                    }
                }
                acc = next;
            }
            for (h, c) in acc {
                let mut f = vec![j as u8];
                f.extend_from_slice(&m.f);
                push(&mut out, CMono { e: Vec::new(), h, f }, GaussRat::from_int(c));
            }
            return out;
        }
        let e0 = m.e[0] as usize;
        let rest = CMono { e: m.e[1..].to_vec(), h: m.h.clone(), f: m.f.clone() };
        out = self.left_e(e0, self.f_on_mono(j, &rest));
        if e0 == j {
            let mut single = Terms::new();
            single.insert(rest, GaussRat::one());
            for (mm, c) in self.left_h(j, &single) {
                push(&mut out, mm, -&c);
            }
        }
        out
    }

    fn left_f(&self, j: usize, x: &Terms) -> Terms {
        let mut out = Terms::new();
        for (m, c) in x {
            for (mm, cc) in self.f_on_mono(j, m) {
                push(&mut out, mm, &cc * c);
            }
        }
        out
    }

    fn rewrite(&self, w: &[u8]) -> Result<Vec<(Word, GaussRat)>> {
        self.words
            .rewrite_word(w)?
            .into_iter()
            .map(|(w, s)| Ok((w, s.as_constant().ok_or(Error::PoleAtOne)?)))
            .collect()
    }

    /// Rewrites `e`- and `f`-words into canonical words.
    pub fn normalize(&self, x: &ClassicalElement) -> Result<ClassicalElement> {
        let mut out = ClassicalElement::zero();
        for (m, c) in &x.terms {
            for (ew, ec) in self.rewrite(&m.e)? {
                let base = c * &ec;
                for (fw, fc) in self.rewrite(&m.f)? {
                    out.add_term(CMono { e: ew.clone(), h: m.h.clone(), f: fw }, &base * &fc);
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, a: &ClassicalElement, b: &ClassicalElement) -> Result<ClassicalElement> {
        let mut total = Terms::new();
        for (m, c) in &a.terms {
            let mut r: Terms = b.terms.iter().map(|(mm, cc)| (mm.clone(), cc * c)).collect();
            for &j in m.f.iter().rev() {
                r = self.left_f(j as usize, &r);
            }
            for (i, &k) in m.h.iter().enumerate() {
                for _ in 0..k {
                    r = self.left_h(i, &r);
                }
            }
            for &i in m.e.iter().rev() {
                r = self.left_e(i as usize, r);
            }
            for (mm, cc) in r {
                push(&mut total, mm, cc);
            }
        }
        self.normalize(&ClassicalElement { terms: total })
    }

    pub fn product(&self, factors: &[ClassicalElement]) -> Result<ClassicalElement> {
        let mut acc = ClassicalElement::one(self.rank());
        for x in factors {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    pub fn commutator(&self, a: &ClassicalElement, b: &ClassicalElement) -> Result<ClassicalElement> {
        Ok(self.mul(a, b)?.sub(&self.mul(b, a)?))
    }

    /// Term-wise specialization: `E ↦ e`, `F ↦ f`, `K_β ↦ 1`, coefficients
    /// evaluated at `q = 1`.  Coefficients with a pole at one are rejected.
    pub fn specialize<R: Coefficient>(&self, a: &Element<R>) -> Result<ClassicalElement> {
        let n = self.rank();
        let mut out = ClassicalElement::zero();
        for (m, c) in &a.terms {
            let s = c
                .to_scalar()
                .ok_or_else(|| Error::InvalidParameters(String::from("symbolic coefficient cannot be specialized")))?;
            let v = s.eval_at_one()?;
            out.add_term(CMono { e: m.e.clone(), h: vec![0; n], f: m.f.clone() }, v);
        }
        self.normalize(&out)
    }
}

/// Images of the Chevalley generators under an algebra map of `U(g')`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalMap {
    pub e: Vec<ClassicalElement>,
    pub f: Vec<ClassicalElement>,
    pub h: Vec<ClassicalElement>,
}

impl ClassicalMap {
    pub fn apply(&self, eng: &ClassicalEngine, x: &ClassicalElement) -> Result<ClassicalElement> {
        let mut out = ClassicalElement::zero();
        for (m, c) in &x.terms {
            let mut factors: Vec<ClassicalElement> = m.e.iter().map(|&i| self.e[i as usize].clone()).collect();
            for (i, &k) in m.h.iter().enumerate() {
                factors.extend(core::iter::repeat(self.h[i].clone()).take(k as usize));
            }
            factors.extend(m.f.iter().map(|&i| self.f[i as usize].clone()));
            out = out.add(&eng.product(&factors)?.scale(c));
        }
        Ok(out)
    }
}

/// `θ(X, τ)` on generators: `θ(e_i)` and `θ(f_i)` specialize `θ_q(E_i)` and
/// `θ_q(F_i K_i) K_i^{-1}`, and `θ(h_i) = -(w_X τ)(h_i)`.
///
/// Admissibility is not required, so non-admissible pairs can be pushed
/// through as a negative control.
pub fn classical_theta(ceng: &ClassicalEngine, qeng: &Engine, pair: &AdmissiblePair) -> Result<ClassicalMap> {
    let n = pair.rank();
    let th = theta_q(qeng, pair)?;
    let mut e = Vec::new();
    let mut f = Vec::new();
    let mut h = Vec::new();
    for i in 0..n {
        e.push(ceng.specialize(&th.e[i])?);
        let fk = qeng.mul(&Element::<Scalar>::f(n, i), &Element::k(&unit(n, i)))?;
        let img = qeng.mul(&th.apply(qeng, &fk)?, &Element::k(&crate::cartan::neg(&unit(n, i))))?;
        f.push(ceng.specialize(&img)?);
        let v = act_coroot(&pair.datum, &pair.w_x, &unit(n, pair.tau.apply(i)));
        h.push(ClassicalElement::h_linear(n, &crate::cartan::neg(&v)));
    }
    Ok(ClassicalMap { e, f, h })
}

/// Whether `θ(θ(g)) = g` for every Chevalley generator `g`.
pub fn involution_check(pair: &AdmissiblePair) -> Result<bool> {
    let n = pair.rank();
    let ceng = ClassicalEngine::new(&pair.datum);
    let qeng = Engine::new(&pair.datum);
    let th = classical_theta(&ceng, &qeng, pair)?;
    for i in 0..n {
        let gens = [
            (ClassicalElement::e(n, i), &th.e[i]),
            (ClassicalElement::f(n, i), &th.f[i]),
            (ClassicalElement::h(n, i), &th.h[i]),
        ];
        for (g, img) in gens {
            if th.apply(&ceng, img)? != g {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `f_i + θ(f_i) + s`, the expected specialization of `B_i`.
pub fn expected_b(theta: &ClassicalMap, i: usize, c_at_one: &GaussRat, s_at_one: &GaussRat) -> ClassicalElement {
    let n = theta.e.len();
    ClassicalElement::f(n, i)
        .add(&theta.f[i].scale(c_at_one))
        .add(&ClassicalElement::scalar(n, s_at_one.clone()))
}
