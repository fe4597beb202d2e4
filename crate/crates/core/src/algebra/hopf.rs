//! Coproduct, counit, antipode, adjoint action and the projections
//! `P_λ`, `π_{α,β}`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::engine::acc_raw;
use super::{word_weight, Element, Engine, Mono, Tensor, Word};
use crate::error::Result;
use crate::param::Coefficient;
use crate::scalar::Scalar;

impl Engine {
    /// `Δ` of a single normal monomial, as unreduced two-fold terms.
    fn coproduct_mono_raw(&self, m: &Mono) -> Vec<((Word, Vec<i32>, Word), (Word, Vec<i32>, Word), Scalar)> {
        let n = self.rank();
        let w = &m.e;
        let v = &m.f;
        let mut e_parts = Vec::new();
        for s in 0..(1u32 << w.len()) {
            let mut exp = 0i64;
            let mut first = Vec::new();
            let mut second = Vec::new();
            let mut kk = vec![0i32; n];
            for a in 0..w.len() {
                if s >> a & 1 == 1 {
                    second.push(w[a]);
                    kk[w[a] as usize] += 1;
                    for b in a + 1..w.len() {
                        if s >> b & 1 == 0 {
                            exp += self.form(w[a] as usize, w[b] as usize);
                        }
                    }
                } else {
                    first.push(w[a]);
                }
            }
            e_parts.push((first, kk, second, exp));
        }
        let mut f_parts = Vec::new();
        for t in 0..(1u32 << v.len()) {
            let mut exp = 0i64;
            let mut first = Vec::new();
            let mut second = Vec::new();
            let mut kk = vec![0i32; n];
            for a in 0..v.len() {
                if t >> a & 1 == 1 {
                    second.push(v[a]);
                    for b in a + 1..v.len() {
                        if t >> b & 1 == 0 {
                            exp -= self.form(v[a] as usize, v[b] as usize);
                        }
                    }
                } else {
                    first.push(v[a]);
                    kk[v[a] as usize] -= 1;
                }
            }
            f_parts.push((first, kk, second, exp));
        }
        let mut out = Vec::new();
        for (e1, ke, e2, x) in &e_parts {
            for (f1, kf, f2, y) in &f_parts {
                let k1: Vec<i32> = (0..n).map(|t| ke[t] + m.k[t]).collect();
                let k2: Vec<i32> = (0..n).map(|t| m.k[t] + kf[t]).collect();
                out.push(((e1.clone(), k1, f1.clone()), (e2.clone(), k2, f2.clone()), Scalar::q_pow(x + y)));
            }
        }
        out
    }

    /// `Δ(a)` as an element of `U ⊗ U`.
    pub fn coproduct<R: Coefficient>(&self, a: &Element<R>) -> Result<Tensor<R>> {
        let mut out = Tensor::zero();
        for (m, c) in &a.terms {
            for (l, r, s) in self.coproduct_mono_raw(m) {
                let left = self.reduce_single(l)?;
                let right = self.reduce_single(r)?;
                let cs = c.scale(&s);
                for (ml, cl) in &left.terms {
                    for (mr, cr) in &right.terms {
                        out.add_term(vec![ml.clone(), mr.clone()], cs.scale(&(cl * cr)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Applies `Δ` to the tensor factor in position `slot`.
    pub fn coproduct_at<R: Coefficient>(&self, t: &Tensor<R>, slot: usize) -> Result<Tensor<R>> {
        let mut out = Tensor::zero();
        for (key, c) in &t.terms {
            let d = self.coproduct(&Element::mono(key[slot].clone(), c.clone()))?;
            for (pair, dc) in d.terms {
                let mut nk = key[..slot].to_vec();
                nk.extend(pair);
                nk.extend_from_slice(&key[slot + 1..]);
                out.add_term(nk, dc);
            }
        }
        Ok(out)
    }

    fn reduce_single(&self, (e, k, f): (Word, Vec<i32>, Word)) -> Result<Element<Scalar>> {
        let mut raw = BTreeMap::new();
        acc_raw(&mut raw, (e, k, f), Scalar::one());
        self.reduce(raw)
    }

    /// Factorwise product in a tensor power.
    pub fn tensor_mul<R: Coefficient>(&self, a: &Tensor<R>, b: &Tensor<R>) -> Result<Tensor<R>> {
        let mut out = Tensor::zero();
        let mut cache: BTreeMap<(Mono, Mono), Element<Scalar>> = BTreeMap::new();
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let mut parts: Vec<Vec<(Mono, Scalar)>> = Vec::new();
                for (ma, mb) in ka.iter().zip(kb.iter()) {
                    let key = (ma.clone(), mb.clone());
                    if !cache.contains_key(&key) {
                        let p = self.mul_mono(ma, mb)?;
                        cache.insert(key.clone(), p);
                    }
                    parts.push(cache[&key].terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect());
                }
                let c = ca.mul(cb);
                let mut combos: Vec<(Vec<Mono>, Scalar)> = vec![(Vec::new(), Scalar::one())];
                for p in &parts {
                    let mut next = Vec::new();
                    for (ms, s) in &combos {
                        for (m, x) in p {
                            let mut nm = ms.clone();
                            nm.push(m.clone());
                            next.push((nm, s * x));
                        }
                    }
                    combos = next;
                }
                for (ms, s) in combos {
                    out.add_term(ms, c.scale(&s));
                }
            }
        }
        Ok(out)
    }

    /// Multiplies the two factors of a two-fold tensor.
    pub fn tensor_multiply<R: Coefficient>(&self, t: &Tensor<R>) -> Result<Element<R>> {
        let mut acc = Element::zero();
        for (k, c) in &t.terms {
            let p = self.mul_mono(&k[0], &k[1])?;
            for (m, s) in p.terms {
                acc.add_term(m, c.scale(&s));
            }
        }
        Ok(acc)
    }

    /// `S(a)`, extended anti-multiplicatively from the generator images.
    pub fn antipode<R: Coefficient>(&self, a: &Element<R>) -> Result<Element<R>> {
        let n = self.rank();
        let mut out = Element::zero();
        for (m, c) in &a.terms {
            let mut acc: Element<Scalar> = Element::one(n);
            for &j in m.f.iter().rev() {
                let mut kj = vec![0i64; n];
                kj[j as usize] = 1;
                let img = self.mul(&Element::f(n, j as usize), &Element::k(&kj))?.neg();
                acc = self.mul(&acc, &img)?;
            }
            let kneg: Vec<i64> = m.k.iter().map(|&x| -(x as i64)).collect();
            acc = self.mul(&acc, &Element::k(&kneg))?;
            for &j in m.e.iter().rev() {
                let mut kj = vec![0i64; n];
                kj[j as usize] = -1;
                let img = self.mul(&Element::k(&kj), &Element::e(n, j as usize))?.neg();
                acc = self.mul(&acc, &img)?;
            }
            for (mm, s) in acc.terms {
                out.add_term(mm, c.scale(&s));
            }
        }
        Ok(out)
    }

    /// `ad(x)(u) = x_(1) u S(x_(2))`.
    pub fn adjoint<R: Coefficient>(&self, x: &Element<R>, u: &Element<R>) -> Result<Element<R>> {
        let d = self.coproduct(x)?;
        let mut out = Element::zero();
        let mut by_second: BTreeMap<Mono, Element<R>> = BTreeMap::new();
        for (k, c) in &d.terms {
            by_second.entry(k[1].clone()).or_default().add_term(k[0].clone(), c.clone());
        }
        for (m2, left) in by_second {
            let s = self.antipode(&Element::<R>::mono(m2, R::one()))?;
            let t = self.mul(&self.mul(&left, u)?, &s)?;
            out = out.add(&t);
        }
        Ok(out)
    }

    /// `ad(E_{w_1} ⋯ E_{w_k})(u)`, applied letter by letter from the right.
    pub fn ad_e_word<R: Coefficient>(&self, w: &[u8], u: &Element<R>) -> Result<Element<R>> {
        let n = self.rank();
        let mut acc = u.clone();
        for &j in w.iter().rev() {
            acc = self.adjoint(&Element::e(n, j as usize), &acc)?;
        }
        Ok(acc)
    }
}

/// `ε(a)`.
pub fn counit<R: Coefficient>(a: &Element<R>) -> R {
    let mut acc = R::zero();
    for (m, c) in &a.terms {
        if m.is_k_only() {
            acc.add_assign(c);
        }
    }
    acc
}

/// Applies `ε` to the tensor factor in position `slot`.
pub fn counit_at<R: Coefficient>(t: &Tensor<R>, slot: usize) -> Tensor<R> {
    let mut out = Tensor::zero();
    for (k, c) in &t.terms {
        if k[slot].is_k_only() {
            let mut nk = k.clone();
            nk.remove(slot);
            out.add_term(nk, c.clone());
        }
    }
    out
}

/// Converts a one-fold tensor to an element.
pub fn tensor_to_element<R: Coefficient>(t: &Tensor<R>) -> Element<R> {
    let mut out = Element::zero();
    for (k, c) in &t.terms {
        out.add_term(k[0].clone(), c.clone());
    }
    out
}

/// `P_λ`: keeps the monomials with `k - wt(f) = λ`.
pub fn project_p<R: Coefficient>(lambda: &[i64], a: &Element<R>) -> Element<R> {
    let n = lambda.len();
    a.filter(|m| {
        let fw = word_weight(n, &m.f);
        (0..n).all(|t| m.k[t] as i64 - fw[t] == lambda[t])
    })
}

/// `π_{α,β}`: keeps the monomials with `wt(e) = α` and `wt(f) = β`.
pub fn project_pi<R: Coefficient>(alpha: &[i64], beta: &[i64], a: &Element<R>) -> Element<R> {
    let n = alpha.len();
    a.filter(|m| word_weight(n, &m.e) == alpha && word_weight(n, &m.f) == beta)
}
