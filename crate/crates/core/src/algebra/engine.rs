//! The rewriting engine: per-weight Serre bases and the straightening of
//! products into `E-word · K_β · F-word` form.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use spin::RwLock;

use super::{word_weight, Element, Mono, Word};
use crate::cartan::{height, CartanDatum};
use crate::error::{Error, Result};
use crate::param::Coefficient;
use crate::scalar::{q_binomial, Scalar};

/// Default bound on the height of E- and F-word weights.
pub const DEFAULT_HEIGHT_CAP: i64 = 20;

/// Unreduced term `E_e K_k F_f` with a scalar coefficient.
pub(crate) type RawTerm = (Word, Vec<i32>, Word, Scalar);

/// Canonical words of one weight component of `U^+` (equivalently `U^-`)
/// and the rewrite of every word of that weight in terms of them.
#[derive(Debug)]
pub struct WeightTable {
    pub weight: Vec<i64>,
    /// Non-pivot words in ascending lexicographic order.
    pub canonical: Vec<Word>,
    rewrite: BTreeMap<Word, Vec<(usize, Scalar)>>,
    /// Basis of the Serre ideal component, as sparse rows over all words.
    ideal_rows: Vec<Vec<(Word, Scalar)>>,
}

impl WeightTable {
    pub fn dim(&self) -> usize {
        self.canonical.len()
    }

    /// Dimension of the Serre ideal in this weight.
    pub fn ideal_dim(&self) -> usize {
        self.ideal_rows.len()
    }

    /// Expresses a word of this weight in the canonical basis.
    pub fn rewrite(&self, w: &[u8]) -> &[(usize, Scalar)] {
        &self.rewrite[w]
    }
}

/// Normal-form engine for `U_q(g')` attached to a Cartan datum.
///
/// In formal mode F-letters are left free; this models products of the
/// coideal generators `B_i` with `E_j` (`j ∈ X`) and `K_β`, which obey the
/// same straightening rules as `F_i`.
pub struct Engine {
    pub datum: CartanDatum,
    n: usize,
    cap: i64,
    free_f: bool,
    classical: bool,
    form: Vec<Vec<i64>>,
    inv_qdiff: Vec<Scalar>,
    tables: RwLock<BTreeMap<Vec<i64>, Arc<WeightTable>>>,
    fe_cache: RwLock<BTreeMap<(Word, Word), Arc<Vec<RawTerm>>>>,
}

impl Engine {
    pub fn new(datum: &CartanDatum) -> Self {
        Self::with_options(datum, DEFAULT_HEIGHT_CAP, false)
    }

    /// Engine whose F-letters are free symbols.
    pub fn formal(datum: &CartanDatum) -> Self {
        Self::with_options(datum, DEFAULT_HEIGHT_CAP, true)
    }

    pub fn with_options(datum: &CartanDatum, cap: i64, free_f: bool) -> Self {
        let n = datum.rank();
        let form = datum.symmetrized();
        let inv_qdiff = (0..n)
            .map(|j| {
                let e = datum.eps[j];
                (Scalar::q_pow(e) - Scalar::q_pow(-e)).inv().expect("q_i - q_i^{-1} is nonzero")
            })
            .collect();
        Engine {
            datum: datum.clone(),
            n,
            cap,
            free_f,
            classical: false,
            form,
            inv_qdiff,
            tables: RwLock::new(BTreeMap::new()),
            fe_cache: RwLock::new(BTreeMap::new()),
        }
    }

    /// Engine whose weight tables use the classical Serre relations
    /// (`q = 1`); only its word rewriting is meaningful.
    pub fn classical(datum: &CartanDatum) -> Self {
        Engine { classical: true, ..Self::new(datum) }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn cap(&self) -> i64 {
        self.cap
    }

    pub fn is_formal(&self) -> bool {
        self.free_f
    }

    /// `(α_i, α_j)`.
    pub fn form(&self, i: usize, j: usize) -> i64 {
        self.form[i][j]
    }

    /// `(β, γ)` for integer vectors.
    pub fn pairing(&self, beta: &[i64], gamma: &[i64]) -> i64 {
        let mut acc = 0;
        for (i, &b) in beta.iter().enumerate() {
            if b == 0 {
                continue;
            }
            for (j, &g) in gamma.iter().enumerate() {
                acc += b * g * self.form[i][j];
            }
        }
        acc
    }

    fn pairing_k_word(&self, k: &[i32], w: &[u8]) -> i64 {
        let mut acc = 0;
        for &x in w {
            for (i, &ki) in k.iter().enumerate() {
                acc += ki as i64 * self.form[i][x as usize];
            }
        }
        acc
    }

    /// `1 / (q_i - q_i^{-1})`.
    pub fn inv_qdiff(&self, i: usize) -> &Scalar {
        &self.inv_qdiff[i]
    }

    /// The weight table for `μ ∈ Q^+`, built on first use.
    pub fn table(&self, mu: &[i64]) -> Result<Arc<WeightTable>> {
        if let Some(t) = self.tables.read().get(mu) {
            return Ok(t.clone());
        }
        let h = height(mu);
        if h > self.cap {
            return Err(Error::HeightCapExceeded { height: h as usize, cap: self.cap as usize });
        }
        let t = Arc::new(self.build_table(mu)?);
        let mut guard = self.tables.write();
        Ok(guard.entry(mu.to_vec()).or_insert(t).clone())
    }

    /// Canonical words of weight `μ`.
    pub fn weight_basis(&self, mu: &[i64]) -> Result<Vec<Word>> {
        Ok(self.table(mu)?.canonical.clone())
    }

    fn build_table(&self, mu: &[i64]) -> Result<WeightTable> {
        let words = words_of_weight(mu);
        let index: BTreeMap<Word, usize> = words.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();
        let ncols = words.len();
        let mut rref = Rref::new(ncols);
        let to_dense = |row: &[(Word, Scalar)]| {
            let mut v = vec![Scalar::zero(); ncols];
            for (w, c) in row {
                v[index[w]] += c;
            }
            v
        };
        if mu.iter().any(|&m| m < 0) {
            return Err(Error::InvalidParameters(alloc::string::String::from("negative weight")));
        }
        for x in 0..self.n {
            if mu[x] == 0 {
                continue;
            }
            let mut smaller = mu.to_vec();
            smaller[x] -= 1;
            if smaller.iter().all(|&m| m == 0) {
                continue;
            }
            let sub = self.table(&smaller)?;
            for row in &sub.ideal_rows {
                let left: Vec<(Word, Scalar)> = row
                    .iter()
                    .map(|(w, c)| {
                        let mut nw = vec![x as u8];
                        nw.extend_from_slice(w);
                        (nw, c.clone())
                    })
                    .collect();
                rref.insert(to_dense(&left));
                let right: Vec<(Word, Scalar)> = row
                    .iter()
                    .map(|(w, c)| {
                        let mut nw = w.clone();
                        nw.push(x as u8);
                        (nw, c.clone())
                    })
                    .collect();
                rref.insert(to_dense(&right));
            }
        }
        for i in 0..self.n {
            for j in 0..self.n {
                if i == j {
                    continue;
                }
                let a = self.datum.a[i][j];
                let mut lam = vec![0i64; self.n];
                lam[i] = 1 - a;
                lam[j] += 1;
                if lam.as_slice() == mu {
                    let eps = if self.classical { 0 } else { self.datum.eps[i] };
                    rref.insert(to_dense(&serre_poly(i, j, a, eps)));
                }
            }
        }
        let pivots: BTreeMap<usize, usize> = rref.rows.iter().enumerate().map(|(r, (p, _))| (*p, r)).collect();
        let mut canonical = Vec::new();
        let mut canon_idx = vec![usize::MAX; ncols];
        for (c, w) in words.iter().enumerate() {
            if !pivots.contains_key(&c) {
                canon_idx[c] = canonical.len();
                canonical.push(w.clone());
            }
        }
        let mut rewrite = BTreeMap::new();
        for (c, w) in words.iter().enumerate() {
            let entry = match pivots.get(&c) {
                None => vec![(canon_idx[c], Scalar::one())],
                Some(&r) => {
                    let row = &rref.rows[r].1;
                    let mut v = Vec::new();
                    for (cc, x) in row.iter().enumerate() {
                        if cc != c && !x.is_zero() {
                            v.push((canon_idx[cc], x.neg()));
                        }
                    }
                    v
                }
            };
            rewrite.insert(w.clone(), entry);
        }
        let ideal_rows = rref
            .rows
            .iter()
            .map(|(_, row)| {
                row.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(c, x)| (words[c].clone(), x.clone())).collect()
            })
            .collect();
        Ok(WeightTable { weight: mu.to_vec(), canonical, rewrite, ideal_rows })
    }

    /// Rewrites an arbitrary word as a combination of canonical words.
    pub fn rewrite_word(&self, w: &[u8]) -> Result<Vec<(Word, Scalar)>> {
        if w.len() <= 1 {
            return Ok(vec![(w.to_vec(), Scalar::one())]);
        }
        let t = self.table(&word_weight(self.n, w))?;
        Ok(t.rewrite(w).iter().map(|(k, c)| (t.canonical[*k].clone(), c.clone())).collect())
    }

    /// `F_v · E_w` as unreduced terms `E_{w'} K_k F_{v'}`.
    fn fe(&self, v: &[u8], w: &[u8]) -> Arc<Vec<RawTerm>> {
        if v.is_empty() || w.is_empty() {
            return Arc::new(vec![(w.to_vec(), vec![0; self.n], v.to_vec(), Scalar::one())]);
        }
        let key = (v.to_vec(), w.to_vec());
        if let Some(r) = self.fe_cache.read().get(&key) {
            return r.clone();
        }
        let j = v[0] as usize;
        let inner = self.fe(&v[1..], w);
        let mut acc: BTreeMap<(Word, Vec<i32>, Word), Scalar> = BTreeMap::new();
        let mut push = |e: Word, k: Vec<i32>, f: Word, c: Scalar| {
            if c.is_zero() {
                return;
            }
            let key = (e, k, f);
            match acc.get_mut(&key) {
                Some(x) => *x += &c,
                None => {
                    acc.insert(key, c);
                }
            }
        };
        for (ew, k, fv, c) in inner.iter() {
            let kj: i64 = (0..self.n).map(|t| k[t] as i64 * self.form[t][j]).sum();
            let mut nf = vec![j as u8];
            nf.extend_from_slice(fv);
            push(ew.clone(), k.clone(), nf, c * &Scalar::q_pow(kj));
            for pos in 0..ew.len() {
                if ew[pos] as usize != j {
                    continue;
                }
                let a: i64 = ew[pos + 1..].iter().map(|&t| self.form[j][t as usize]).sum();
                let mut rest = ew[..pos].to_vec();
                rest.extend_from_slice(&ew[pos + 1..]);
                let base = c * &self.inv_qdiff[j];
                let mut kp = k.clone();
                kp[j] += 1;
                push(rest.clone(), kp, fv.clone(), (&base * &Scalar::q_pow(a)).neg());
                let mut km = k.clone();
                km[j] -= 1;
                push(rest, km, fv.clone(), &base * &Scalar::q_pow(-a));
            }
        }
        let out: Arc<Vec<RawTerm>> = Arc::new(acc.into_iter().map(|((e, k, f), c)| (e, k, f, c)).collect());
        self.fe_cache.write().entry(key).or_insert(out).clone()
    }

    /// Unreduced product of two monomials.
    fn mul_mono_raw(&self, m1: &Mono, m2: &Mono, out: &mut impl FnMut(Word, Vec<i32>, Word, Scalar)) {
        let terms = self.fe(&m1.f, &m2.e);
        for (w, k, v, c) in terms.iter() {
            let exp = self.pairing_k_word(&m1.k, w) + self.pairing_k_word(&m2.k, v);
            let mut e = m1.e.clone();
            e.extend_from_slice(w);
            let kk: Vec<i32> = (0..self.n).map(|t| m1.k[t] + k[t] + m2.k[t]).collect();
            let mut f = v.clone();
            f.extend_from_slice(&m2.f);
            let coeff = if exp == 0 { c.clone() } else { c * &Scalar::q_pow(exp) };
            out(e, kk, f, coeff);
        }
    }

    /// Reduces raw terms to normal form.
    pub(crate) fn reduce<R: Coefficient>(&self, raw: BTreeMap<(Word, Vec<i32>, Word), R>) -> Result<Element<R>> {
        let mut out = Element::zero();
        let mut ecache: BTreeMap<Word, Vec<(Word, Scalar)>> = BTreeMap::new();
        let mut fcache: BTreeMap<Word, Vec<(Word, Scalar)>> = BTreeMap::new();
        for ((e, k, f), c) in raw {
            if c.is_zero() {
                continue;
            }
            if !ecache.contains_key(&e) {
                let r = self.rewrite_word(&e)?;
                ecache.insert(e.clone(), r);
            }
            let fr = if self.free_f {
                None
            } else {
                if !fcache.contains_key(&f) {
                    let r = self.rewrite_word(&f)?;
                    fcache.insert(f.clone(), r);
                }
                Some(&fcache[&f])
            };
            for (ew, ec) in &ecache[&e] {
                let base = c.scale(ec);
                match fr {
                    None => out.add_term(Mono { e: ew.clone(), k: k.clone(), f: f.clone() }, base),
                    Some(fr) => {
                        for (fw, fc) in fr {
                            out.add_term(Mono { e: ew.clone(), k: k.clone(), f: fw.clone() }, base.scale(fc));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Brings an element with arbitrary (possibly non-canonical) words into
    /// normal form.
    pub fn normalize<R: Coefficient>(&self, a: &Element<R>) -> Result<Element<R>> {
        let mut raw = BTreeMap::new();
        for (m, c) in &a.terms {
            acc_raw(&mut raw, (m.e.clone(), m.k.clone(), m.f.clone()), c.clone());
        }
        self.reduce(raw)
    }

    /// Normal form of `E_w` for an arbitrary word.
    pub fn e_word<R: Coefficient>(&self, w: &[u8]) -> Result<Element<R>> {
        self.normalize(&Element::mono(Mono { e: w.to_vec(), k: vec![0; self.n], f: Vec::new() }, R::one()))
    }

    /// Normal form of `F_w` for an arbitrary word.
    pub fn f_word<R: Coefficient>(&self, w: &[u8]) -> Result<Element<R>> {
        self.normalize(&Element::mono(Mono { e: Vec::new(), k: vec![0; self.n], f: w.to_vec() }, R::one()))
    }

    pub fn mul_mono(&self, m1: &Mono, m2: &Mono) -> Result<Element<Scalar>> {
        let mut raw = BTreeMap::new();
        self.mul_mono_raw(m1, m2, &mut |e, k, f, c| acc_raw(&mut raw, (e, k, f), c));
        self.reduce(raw)
    }

    pub fn mul<R: Coefficient>(&self, a: &Element<R>, b: &Element<R>) -> Result<Element<R>> {
        let mut raw: BTreeMap<(Word, Vec<i32>, Word), R> = BTreeMap::new();
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                let c = c1.mul(c2);
                if m1.f.is_empty() || m2.e.is_empty() {
                    let exp = if m2.e.is_empty() { self.pairing_k_word(&m2.k, &m1.f) } else { self.pairing_k_word(&m1.k, &m2.e) };
                    let mut e = m1.e.clone();
                    e.extend_from_slice(&m2.e);
                    let k: Vec<i32> = (0..self.n).map(|t| m1.k[t] + m2.k[t]).collect();
                    let mut f = m1.f.clone();
                    f.extend_from_slice(&m2.f);
                    let c = if exp == 0 { c } else { c.scale(&Scalar::q_pow(exp)) };
                    acc_raw(&mut raw, (e, k, f), c);
                    continue;
                }
                self.mul_mono_raw(m1, m2, &mut |e, k, f, s| acc_raw(&mut raw, (e, k, f), c.scale(&s)));
            }
        }
        self.reduce(raw)
    }

    /// Left-to-right product of a list of elements.
    pub fn product<R: Coefficient>(&self, factors: &[Element<R>]) -> Result<Element<R>> {
        let mut acc = Element::one(self.n);
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn pow<R: Coefficient>(&self, a: &Element<R>, e: u32) -> Result<Element<R>> {
        let mut acc = Element::one(self.n);
        for _ in 0..e {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// `ab - ba`.
    pub fn commutator<R: Coefficient>(&self, a: &Element<R>, b: &Element<R>) -> Result<Element<R>> {
        Ok(self.mul(a, b)?.sub(&self.mul(b, a)?))
    }

    /// `F_ij(x, y) = Σ_n (-1)^n [1-a_ij, n]_{q_i} x^{1-a_ij-n} y x^n`.
    pub fn serre<R: Coefficient>(&self, i: usize, j: usize, x: &Element<R>, y: &Element<R>) -> Result<Element<R>> {
        let a = self.datum.a[i][j];
        let m = 1 - a;
        let mut powers = vec![Element::one(self.n)];
        for t in 1..=m {
            let p = self.mul(&powers[t as usize - 1], x)?;
            powers.push(p);
        }
        let mut acc = Element::zero();
        for k in 0..=m {
            let b = q_binomial(m, k, self.datum.eps[i]);
            let b = if k % 2 == 1 { b.neg() } else { b };
            let t = self.mul(&self.mul(&powers[(m - k) as usize], y)?, &powers[k as usize])?;
            acc = acc.add(&t.scale_scalar(&b));
        }
        Ok(acc)
    }
}

pub(crate) fn acc_raw<R: Coefficient>(raw: &mut BTreeMap<(Word, Vec<i32>, Word), R>, key: (Word, Vec<i32>, Word), c: R) {
    if c.is_zero() {
        return;
    }
    match raw.get_mut(&key) {
        Some(x) => x.add_assign(&c),
        None => {
            raw.insert(key, c);
        }
    }
}

/// The Serre polynomial `F_ij` as a combination of words of weight `λ_ij`.
fn serre_poly(i: usize, j: usize, a: i64, eps_i: i64) -> Vec<(Word, Scalar)> {
    let m = 1 - a;
    (0..=m)
        .map(|k| {
            let mut w = vec![i as u8; (m - k) as usize];
            w.push(j as u8);
            w.extend(core::iter::repeat(i as u8).take(k as usize));
            let b = q_binomial(m, k, eps_i);
            (w, if k % 2 == 1 { b.neg() } else { b })
        })
        .collect()
}

/// All words of weight `μ`, in ascending lexicographic order.
pub fn words_of_weight(mu: &[i64]) -> Vec<Word> {
    fn rec(rem: &mut Vec<i64>, cur: &mut Word, left: i64, out: &mut Vec<Word>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for x in 0..rem.len() {
            if rem[x] > 0 {
                rem[x] -= 1;
                cur.push(x as u8);
                rec(rem, cur, left - 1, out);
                cur.pop();
                rem[x] += 1;
            }
        }
    }
    let mut out = Vec::new();
    let mut rem = mu.to_vec();
    rec(&mut rem, &mut Vec::new(), height(mu), &mut out);
    out
}

/// Incremental fully reduced row echelon form; the pivot of a row is its
/// largest nonzero column.
struct Rref {
    ncols: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Rref {
    fn new(ncols: usize) -> Self {
        Rref { ncols, rows: Vec::new() }
    }

    fn insert(&mut self, mut v: Vec<Scalar>) {
        if self.rows.len() == self.ncols {
            return;
        }
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (c, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    v[c] -= &(&f * x);
                }
            }
        }
        let Some(p) = (0..self.ncols).rev().find(|&c| !v[c].is_zero()) else { return };
        let inv = v[p].inv().expect("nonzero pivot");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (c, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    row[c] -= &(&f * x);
                }
            }
        }
        self.rows.push((p, v));
    }
}
