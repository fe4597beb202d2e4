//! (Anti)automorphisms of `U_q(g')` given by generator images: `ω`, `ψ`,
//! `σ`, diagram maps, character twists `Ad(x)`, the Lusztig automorphisms
//! `T_i`, `T_w`, `T_X`, and the quantum involution `θ_q(X, τ)`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{Element, Engine, Gen, Mono};
use crate::cartan::{unit, DiagramMap};
use crate::error::{Error, Result};
use crate::param::Coefficient;
use crate::scalar::{q_factorial, Scalar};
use crate::weyl::{s_character, AdmissiblePair, Character};

/// Whether a morphism preserves or reverses products.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MorphismKind {
    Hom,
    AntiHom,
}

/// A morphism described by the images of `E_i`, `F_i` and `K_β`.
///
/// `K_β` is sent to `x(β) K_{Lβ}` where `L` maps `α_i` to `k_lin[i]` and
/// `x` takes the value `k_char[i]` on `α_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorMorphism {
    pub kind: MorphismKind,
    pub e: Vec<Element<Scalar>>,
    pub f: Vec<Element<Scalar>>,
    pub k_lin: Vec<Vec<i64>>,
    pub k_char: Vec<Scalar>,
}

impl GeneratorMorphism {
    pub fn identity(n: usize) -> Self {
        GeneratorMorphism {
            kind: MorphismKind::Hom,
            e: (0..n).map(|i| Element::e(n, i)).collect(),
            f: (0..n).map(|i| Element::f(n, i)).collect(),
            k_lin: (0..n).map(|i| unit(n, i)).collect(),
            k_char: vec![Scalar::one(); n],
        }
    }

    pub fn rank(&self) -> usize {
        self.e.len()
    }

    /// Image of `K_β`.
    pub fn k_image(&self, beta: &[i64]) -> Result<Element<Scalar>> {
        let n = self.rank();
        let mut v = vec![0i64; n];
        let mut c = Scalar::one();
        for (i, &b) in beta.iter().enumerate() {
            if b == 0 {
                continue;
            }
            for t in 0..n {
                v[t] += b * self.k_lin[i][t];
            }
            if !self.k_char[i].is_one() {
                c = &c * &self.k_char[i].pow(b)?;
            }
        }
        Ok(Element::mono(Mono::k(&v), c))
    }

    /// Image of a product of generators.
    pub fn apply_word(&self, eng: &Engine, gens: &[Gen]) -> Result<Element<Scalar>> {
        let img = |g: &Gen| -> Result<Element<Scalar>> {
            match g {
                Gen::E(i) => Ok(self.e[*i].clone()),
                Gen::F(i) => Ok(self.f[*i].clone()),
                Gen::K(b) => self.k_image(b),
            }
        };
        let mut acc = Element::one(self.rank());
        match self.kind {
            MorphismKind::Hom => {
                for g in gens {
                    acc = eng.mul(&acc, &img(g)?)?;
                }
            }
            MorphismKind::AntiHom => {
                for g in gens.iter().rev() {
                    acc = eng.mul(&acc, &img(g)?)?;
                }
            }
        }
        Ok(acc)
    }

    /// Applies the morphism to an element.
    pub fn apply<R: Coefficient>(&self, eng: &Engine, a: &Element<R>) -> Result<Element<R>> {
        let mut out = Element::zero();
        for (m, c) in &a.terms {
            let img = self.apply_word(eng, &mono_gens(m))?;
            for (mm, s) in img.terms {
                out.add_term(mm, c.scale(&s));
            }
        }
        Ok(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, eng: &Engine, other: &GeneratorMorphism) -> Result<GeneratorMorphism> {
        let n = self.rank();
        let e = other.e.iter().map(|x| self.apply(eng, x)).collect::<Result<Vec<_>>>()?;
        let f = other.f.iter().map(|x| self.apply(eng, x)).collect::<Result<Vec<_>>>()?;
        let mut k_lin = Vec::new();
        let mut k_char = Vec::new();
        for i in 0..n {
            let img = other.k_image(&unit(n, i))?;
            let (m, c) = img.terms.iter().next().unwrap();
            let outer = self.k_image(&m.kvec())?;
            let (m2, c2) = outer.terms.iter().next().unwrap();
            k_lin.push(m2.kvec());
            k_char.push(c * c2);
        }
        let kind = if self.kind == other.kind { MorphismKind::Hom } else { MorphismKind::AntiHom };
        Ok(GeneratorMorphism { kind, e, f, k_lin, k_char })
    }
}

/// The generator sequence of a normal monomial.
pub fn mono_gens(m: &Mono) -> Vec<Gen> {
    let mut g: Vec<Gen> = m.e.iter().map(|&i| Gen::E(i as usize)).collect();
    if m.k.iter().any(|&x| x != 0) {
        g.push(Gen::K(m.kvec()));
    }
    g.extend(m.f.iter().map(|&i| Gen::F(i as usize)));
    g
}

/// `ω`: `E_i ↦ -F_i`, `F_i ↦ -E_i`, `K_β ↦ K_{-β}`.
pub fn omega(n: usize) -> GeneratorMorphism {
    let mut m = GeneratorMorphism::identity(n);
    m.e = (0..n).map(|i| Element::f(n, i).neg()).collect();
    m.f = (0..n).map(|i| Element::e(n, i).neg()).collect();
    m.k_lin = (0..n).map(|i| unit(n, i).iter().map(|x| -x).collect()).collect();
    m
}

/// `ψ`: `E_i ↦ E_i K_i`, `F_i ↦ K_i^{-1} F_i`.
pub fn psi(n: usize) -> GeneratorMorphism {
    let mut m = GeneratorMorphism::identity(n);
    m.e = (0..n).map(|i| Element::mono(Mono { e: vec![i as u8], k: unit(n, i).iter().map(|&x| x as i32).collect(), f: vec![] }, Scalar::one())).collect();
    m.f = (0..n)
        .map(|i| Element::mono(Mono { e: vec![], k: unit(n, i).iter().map(|&x| -x as i32).collect(), f: vec![i as u8] }, Scalar::one()))
        .collect();
    m
}

/// The antiautomorphism `σ`: `E_i ↦ E_i`, `F_i ↦ F_i`, `K_β ↦ K_{-β}`.
pub fn sigma(n: usize) -> GeneratorMorphism {
    let mut m = GeneratorMorphism::identity(n);
    m.kind = MorphismKind::AntiHom;
    m.k_lin = (0..n).map(|i| unit(n, i).iter().map(|x| -x).collect()).collect();
    m
}

/// Relabelling by a diagram automorphism.
pub fn diagram(tau: &DiagramMap) -> GeneratorMorphism {
    let n = tau.perm.len();
    let mut m = GeneratorMorphism::identity(n);
    m.e = (0..n).map(|i| Element::e(n, tau.apply(i))).collect();
    m.f = (0..n).map(|i| Element::f(n, tau.apply(i))).collect();
    m.k_lin = (0..n).map(|i| unit(n, tau.apply(i))).collect();
    m
}

/// `Ad(x)`: multiplies the weight-β component by `x(β)`.
pub fn ad_char(x: &Character) -> Result<GeneratorMorphism> {
    let n = x.values.len();
    if x.values.iter().any(|v| v.is_zero()) {
        return Err(Error::InvalidCharacter);
    }
    let mut m = GeneratorMorphism::identity(n);
    m.e = (0..n).map(|i| Element::e(n, i).scale_scalar(&x.values[i])).collect();
    m.f = (0..n).map(|i| Element::f(n, i).scale_scalar(&x.values[i].inv().unwrap())).collect();
    Ok(m)
}

/// `E_i^{(k)}` or `F_i^{(k)}` in normal form.
fn divided_power(eng: &Engine, i: usize, k: i64, e_side: bool) -> Result<Element<Scalar>> {
    let n = eng.rank();
    let w = vec![i as u8; k as usize];
    let m = if e_side { Mono { e: w, k: vec![0; n], f: vec![] } } else { Mono { e: vec![], k: vec![0; n], f: w } };
    let fact = q_factorial(k, eng.datum.eps[i]);
    eng.normalize(&Element::mono(m, fact.inv()?))
}

/// The Lusztig automorphism `T_i`, or its inverse `σ T_i σ` when `inverse`.
pub fn lusztig_t(eng: &Engine, i: usize, inverse: bool) -> Result<GeneratorMorphism> {
    let d = &eng.datum;
    let n = d.rank();
    let ei = d.eps[i];
    let mut m = GeneratorMorphism::identity(n);
    let mut ki = vec![0i32; n];
    ki[i] = 1;
    let mut kim = vec![0i32; n];
    kim[i] = -1;
    for j in 0..n {
        m.k_lin[j] = d.reflect(i, &unit(n, j));
        if j == i {
            m.e[j] = eng.mul(&Element::f(n, i), &Element::mono(Mono { e: vec![], k: ki.clone(), f: vec![] }, Scalar::from_int(-1)))?;
            m.f[j] = eng.mul(&Element::mono(Mono { e: vec![], k: kim.clone(), f: vec![] }, Scalar::from_int(-1)), &Element::e(n, i))?;
            continue;
        }
        let top = -d.a[i][j];
        let mut ej = Element::zero();
        let mut fj = Element::zero();
        for r in 0..=top {
            let s = top - r;
            let sign = if r % 2 == 1 { Scalar::from_int(-1) } else { Scalar::one() };
            let ce = &sign * &Scalar::q_pow(-ei * r);
            let cf = &sign * &Scalar::q_pow(ei * r);
            let te = eng.product(&[divided_power(eng, i, s, true)?, Element::e(n, j), divided_power(eng, i, r, true)?])?;
            ej = ej.add(&te.scale_scalar(&ce));
            let tf = eng.product(&[divided_power(eng, i, r, false)?, Element::f(n, j), divided_power(eng, i, s, false)?])?;
            fj = fj.add(&tf.scale_scalar(&cf));
        }
        m.e[j] = ej;
        m.f[j] = fj;
    }
    if inverse {
        let s = sigma(n);
        return s.compose(eng, &m)?.compose(eng, &s);
    }
    Ok(m)
}

/// `T_w = T_{x_1} ∘ ... ∘ T_{x_k}` for the word `(x_1, ..., x_k)`.
pub fn t_word(eng: &Engine, w: &[usize]) -> Result<GeneratorMorphism> {
    let mut acc = GeneratorMorphism::identity(eng.rank());
    for &x in w.iter().rev() {
        acc = lusztig_t(eng, x, false)?.compose(eng, &acc)?;
    }
    Ok(acc)
}

/// `T_X = T_{w_X} ∘ ψ`.
pub fn t_x(eng: &Engine, pair: &AdmissiblePair) -> Result<GeneratorMorphism> {
    t_word(eng, &pair.w_x)?.compose(eng, &psi(eng.rank()))
}

/// `θ_q(X, τ) = Ad(s(X, τ)) ∘ T_X ∘ τ ∘ ω`.
pub fn theta_q(eng: &Engine, pair: &AdmissiblePair) -> Result<GeneratorMorphism> {
    theta_q_with(eng, pair, &s_character(pair, None))
}

/// `θ_q` with an explicit twisting character.
pub fn theta_q_with(eng: &Engine, pair: &AdmissiblePair, s: &Character) -> Result<GeneratorMorphism> {
    if pair.is_degenerate() {
        return Err(Error::DegeneratePair);
    }
    let n = eng.rank();
    let inner = diagram(&pair.tau).compose(eng, &omega(n))?;
    let tx = t_x(eng, pair)?;
    ad_char(s)?.compose(eng, &tx.compose(eng, &inner)?)
}

/// One failed check of [`verify_morphism`].
#[derive(Clone, Debug, PartialEq)]
pub struct RelationFailure {
    pub relation: String,
    pub residue: Element<Scalar>,
}

/// The defining relations of `U_q(g')` as signed generator words.
pub fn defining_relations(eng: &Engine) -> Vec<(String, Vec<(Scalar, Vec<Gen>)>)> {
    let d = &eng.datum;
    let n = d.rank();
    let lab = |i: usize| d.labels[i].clone();
    let mut rels = Vec::new();
    for i in 0..n {
        let ki = unit(n, i);
        let kim: Vec<i64> = ki.iter().map(|x| -x).collect();
        for j in 0..n {
            let a = eng.form(i, j);
            rels.push((
                alloc::format!("K{} E{} K{}^-1 = q^{} E{}", lab(i), lab(j), lab(i), a, lab(j)),
                vec![(Scalar::one(), vec![Gen::K(ki.clone()), Gen::E(j), Gen::K(kim.clone())]), (Scalar::q_pow(a).neg(), vec![Gen::E(j)])],
            ));
            rels.push((
                alloc::format!("K{} F{} K{}^-1 = q^{} F{}", lab(i), lab(j), lab(i), -a, lab(j)),
                vec![(Scalar::one(), vec![Gen::K(ki.clone()), Gen::F(j), Gen::K(kim.clone())]), (Scalar::q_pow(-a).neg(), vec![Gen::F(j)])],
            ));
            let mut r = vec![(Scalar::one(), vec![Gen::E(i), Gen::F(j)]), (Scalar::from_int(-1), vec![Gen::F(j), Gen::E(i)])];
            if i == j {
                let c = eng.inv_qdiff(i).clone();
                r.push((c.neg(), vec![Gen::K(ki.clone())]));
                r.push((c, vec![Gen::K(kim.clone())]));
            }
            rels.push((alloc::format!("[E{}, F{}]", lab(i), lab(j)), r));
            if i != j {
                let m = 1 - d.a[i][j];
                let mut se = Vec::new();
                let mut sf = Vec::new();
                for k in 0..=m {
                    let b = crate::scalar::q_binomial(m, k, d.eps[i]);
                    let b = if k % 2 == 1 { b.neg() } else { b };
                    let mut we = vec![Gen::E(i); (m - k) as usize];
                    we.push(Gen::E(j));
                    we.extend(core::iter::repeat(Gen::E(i)).take(k as usize));
                    let mut wf = vec![Gen::F(i); (m - k) as usize];
                    wf.push(Gen::F(j));
                    wf.extend(core::iter::repeat(Gen::F(i)).take(k as usize));
                    se.push((b.clone(), we));
                    sf.push((b, wf));
                }
                rels.push((alloc::format!("Serre E{} E{}", lab(i), lab(j)), se));
                rels.push((alloc::format!("Serre F{} F{}", lab(i), lab(j)), sf));
            }
        }
    }
    rels
}

/// Applies a morphism to every defining relation and reports nonzero images.
pub fn verify_morphism(eng: &Engine, m: &GeneratorMorphism) -> Result<Vec<RelationFailure>> {
    let mut out = Vec::new();
    for (name, rel) in defining_relations(eng) {
        let mut acc = Element::zero();
        for (c, w) in &rel {
            acc = acc.add(&m.apply_word(eng, w)?.scale_scalar(c));
        }
        if !acc.is_zero() {
            out.push(RelationFailure { relation: name, residue: acc });
        }
    }
    Ok(out)
}

/// Order of `r_i r_j` in the Weyl group, when finite.
pub fn braid_order(eng: &Engine, i: usize, j: usize) -> Option<usize> {
    match eng.datum.a[i][j] * eng.datum.a[j][i] {
        0 => Some(2),
        1 => Some(3),
        2 => Some(4),
        3 => Some(6),
        _ => None,
    }
}

/// Checks `T_i T_j T_i ⋯ = T_j T_i T_j ⋯` (`m_ij` factors each) on all
/// generators; `None` when `m_ij` is infinite.
pub fn braid_check(eng: &Engine, i: usize, j: usize) -> Result<Option<bool>> {
    let Some(m) = braid_order(eng, i, j) else { return Ok(None) };
    let w1: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { i } else { j }).collect();
    let w2: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { j } else { i }).collect();
    Ok(Some(t_word(eng, &w1)? == t_word(eng, &w2)?))
}
