//! The deformed quantum Serre relations `F_ij(B_i, B_j) = C_ij(c)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{Part, Qsp};
use crate::algebra::{project_p, Element, Mono};
use crate::cartan::{neg, unit};
use crate::error::{Error, Result};
use crate::param::ParamPoly;
use crate::scalar::{q_binomial, q_diff, q_number, Scalar};

impl Qsp {
    /// `Y = F_ij(B_i, B_j)` in `U_q(g')`.
    pub fn serre_element(&self, i: usize, j: usize) -> Result<Element<ParamPoly>> {
        self.eng.serre(i, j, &self.b[i], &self.b[j])
    }

    /// `F_ij(B̃_i, B̃_j)` as a formal element.
    pub fn serre_symbol(&self, i: usize, j: usize) -> Result<Element<ParamPoly>> {
        self.formal.serre(i, j, &self.symbol(i), &self.symbol(j))
    }

    /// Whether `P_{-λ_ij}(F_ij(B_i, B_j)) = 0`.
    pub fn p_lambda_vanishes(&self, i: usize, j: usize) -> Result<bool> {
        let y = self.serre_element(i, j)?;
        Ok(project_p(&neg(&self.lambda(i, j)), &y).is_zero())
    }

    /// `C̃_ij(c) = -(id ⊗ ε ∘ P_{-λ_ij} ∘ π_{0,0})(Δ(Y) - Y ⊗ K_{-λ_ij})`
    /// evaluated with formal first tensor factors.
    pub fn extract_c(&self, i: usize, j: usize) -> Result<Element<ParamPoly>> {
        let d = &self.params.pair.datum;
        if i == j {
            return Err(Error::InvalidParameters(format!("C_ij needs i ≠ j, got {i}")));
        }
        let m = (1 - d.a[i][j]) as usize;
        let target = Mono::k(&neg(&self.lambda(i, j)));
        let mut acc = Element::zero();
        let mut cache: BTreeMap<Vec<Mono>, Scalar> = BTreeMap::new();
        for t in 0..=m {
            let b = q_binomial(m as i64, t as i64, d.eps[i]);
            let coef = if t % 2 == 1 { b.neg() } else { b };
            let mut word = vec![i; m - t];
            word.push(j);
            word.extend(core::iter::repeat(i).take(t));
            let lists: Vec<&[Part]> = word.iter().map(|&l| self.parts(l)).collect();
            let mut idx = vec![0usize; word.len()];
            'odometer: loop {
                if !idx.iter().zip(&lists).all(|(&x, l)| l[x].symbol) {
                    let mut w = vec![0i64; self.rank()];
                    for (&x, l) in idx.iter().zip(&lists) {
                        for (a, b) in w.iter_mut().zip(l[x].second.weight()) {
                            *a += b;
                        }
                    }
                    if w.iter().all(|&x| x == 0) {
                        let seconds: Vec<Mono> = idx.iter().zip(&lists).map(|(&x, l)| l[x].second.clone()).collect();
                        let k = match cache.get(&seconds) {
                            Some(k) => k.clone(),
                            None => {
                                let mut p = Element::<Scalar>::one(self.rank());
                                for s in &seconds {
                                    p = self.eng.mul(&p, &Element::mono(s.clone(), Scalar::one()))?;
                                }
                                let k = p.coeff(&target);
                                cache.insert(seconds, k.clone());
                                k
                            }
                        };
                        if !k.is_zero() {
                            let firsts: Vec<Element<ParamPoly>> =
                                idx.iter().zip(&lists).map(|(&x, l)| l[x].first.clone()).collect();
                            let prod = self.formal.product(&firsts)?;
                            acc = acc.add(&prod.scale_scalar(&(&coef * &k)));
                        }
                    }
                }
                let mut pos = 0;
                loop {
                    if pos == idx.len() {
                        break 'odometer;
                    }
                    idx[pos] += 1;
                    if idx[pos] < lists[pos].len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
            }
        }
        Ok(acc.neg())
    }

    /// The closed formulas for `C̃_ij(c)`, valid for `a_ij ∈ {0, -1, -2}`
    /// or when `C_ij` is forced to vanish.
    pub fn closed_c(&self, i: usize, j: usize) -> Result<Element<ParamPoly>> {
        let p = &self.params.pair;
        let d = &p.datum;
        if i == j {
            return Err(Error::InvalidParameters(format!("C_ij needs i ≠ j, got {i}")));
        }
        let ti = p.tau.apply(i);
        let tj = p.tau.apply(j);
        if p.in_x(i) || (i != ti && i != tj) {
            return Ok(Element::zero());
        }
        let a = d.a[i][j];
        let e = d.eps[i];
        let qi = |k: i64| Scalar::q_pow(k * e);
        let n = self.rank();
        let f = &self.formal;
        let bi = self.symbol(i);
        let bj = self.symbol(j);
        let c = |k: usize| self.params.c[k].clone();
        let cz = |k: usize| -> Result<Element<ParamPoly>> { Ok(self.curly_z(k)?.scale(&c(k))) };
        let inv_diff = q_diff(e).inv()?;
        if !p.in_x(j) {
            return match a {
                0 => {
                    if ti != j {
                        return Ok(Element::zero());
                    }
                    Ok(cz(i)?.sub(&cz(j)?).scale_scalar(&inv_diff))
                }
                -1 => {
                    let mut out = Element::zero();
                    if ti == i {
                        out = out.add(&f.mul(&cz(i)?, &bj)?.scale_scalar(&qi(1)));
                    }
                    if tj == i {
                        let inner = cz(j)?.scale_scalar(&qi(1)).add(&cz(i)?.scale_scalar(&qi(-2)));
                        out = out.sub(&f.mul(&inner, &bi)?.scale_scalar(&(qi(1) + qi(-1))));
                    }
                    Ok(out)
                }
                -2 => {
                    let mut out = Element::zero();
                    if ti == i {
                        let comm = f.commutator(&bi, &bj)?;
                        let s = &qi(1) * &(qi(1) + qi(-1)).pow(2)?;
                        out = out.add(&f.mul(&cz(i)?, &comm)?.scale_scalar(&s));
                    }
                    if tj == i {
                        let bii = f.mul(&bi, &bi)?;
                        let inner = cz(i)?.scale_scalar(&qi(-8)).sub(&cz(j)?);
                        let s = &(&q_number(3, e) * &qi(1)) * &(qi(4) - Scalar::one());
                        out = out.add(&f.mul(&inner, &bii)?.scale_scalar(&s));
                    }
                    Ok(out)
                }
                _ => Err(Error::UnsupportedCase(format!("a_ij = {a} with nonvanishing C_ij"))),
            };
        }
        if ti != i {
            return Ok(Element::zero());
        }
        let ej = d.eps[j];
        let inv_diff_j = q_diff(ej).inv()?;
        let z = self.curly_z(i)?;
        let w = self.curly_w(i, j)?;
        let kj = Element::<ParamPoly>::k(&unit(n, j));
        match a {
            0 => Ok(Element::zero()),
            -1 => {
                let first = f.mul(&bj, &z)?.scale_scalar(&qi(2)).sub(&f.mul(&z, &bj)?).scale_scalar(&inv_diff);
                let second = f.mul(&w, &kj)?.scale_scalar(&(&(qi(1) + qi(-1)) * &inv_diff_j));
                Ok(first.add(&second).scale(&c(i)))
            }
            -2 => {
                let q3 = q_number(3, e);
                let bij = f.mul(&bi, &bj)?;
                let bji = f.mul(&bj, &bi)?;
                let left = bij.scale_scalar(&q3).sub(&bji.scale_scalar(&(qi(2) + Scalar::from_int(2))));
                let right = bij.scale_scalar(&(qi(-2) + Scalar::from_int(2))).sub(&bji.scale_scalar(&q3));
                let first = f
                    .mul(&left, &z)?
                    .scale_scalar(&qi(2))
                    .sub(&f.mul(&z, &right)?)
                    .scale_scalar(&inv_diff);
                let s = &(&(&q_diff(e) * &inv_diff_j) * &(qi(1) + qi(-1)).pow(2)?) * &q3;
                let second = f.mul(&f.mul(&bi, &w)?, &kj)?.scale_scalar(&s);
                Ok(first.sub(&second).scale(&c(i)))
            }
            _ => Err(Error::UnsupportedCase(format!("a_ij = {a} with j ∈ X"))),
        }
    }

    /// `F_ij(B_i, B_j) - C_ij(c)` in `U_q(g')` with the extracted `C_ij`.
    pub fn serre_defect(&self, i: usize, j: usize) -> Result<Element<ParamPoly>> {
        let c = self.extract_c(i, j)?;
        Ok(self.serre_element(i, j)?.sub(&self.realize(&c)?))
    }
}
