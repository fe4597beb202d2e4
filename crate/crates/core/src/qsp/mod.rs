//! Quantum symmetric pair coideal subalgebras `B_{c,s}`: the generators
//! `B_i`, the coproduct data `𝒵_i`, `𝒲_ij`, the lower order terms
//! `C_ij(c)` of the deformed Serre relations, presentations and bounded
//! probes of the algebra structure.
//!
//! Elements of the abstract algebra generated by `M_X`, `U^0_Θ'` and the
//! symbols `B̃_i` are handled by a formal engine in which the letter `F_i`
//! stands for `B̃_i`; they are turned into elements of `U_q(g')` by
//! [`Qsp::realize`].

mod presentation;
mod probes;
mod serre;

pub use presentation::{
    gim_presentation, GimGen, GimPresentation, GimRelation, QspPresentation, Relation, RelationKind, WordPoly,
};
pub use probes::{rescale_params, CentralizerReport, IwasawaReport};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use spin::RwLock;

use crate::algebra::{Element, Engine, Mono, Tensor, Word, DEFAULT_HEIGHT_CAP};
use crate::cartan::{neg, unit};
use crate::error::{Error, Result};
use crate::maps::{theta_q, GeneratorMorphism};
use crate::param::{Coefficient, ParamPoly, Var};
use crate::scalar::Scalar;
use crate::weyl::AdmissiblePair;


/// Parameters `c`, `s` of a coideal subalgebra.  Entries are polynomials in
/// the symbols `c_i`, `s_i`; entries on X are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct QspParams {
    pub pair: AdmissiblePair,
    pub c: Vec<ParamPoly>,
    pub s: Vec<ParamPoly>,
}

impl QspParams {
    /// Validated parameters.
    pub fn new(pair: AdmissiblePair, c: Vec<ParamPoly>, s: Vec<ParamPoly>) -> Result<Self> {
        let p = QspParams { pair, c, s };
        p.validate()?;
        Ok(p)
    }

    /// Symbolic `c_i` (shared along constrained τ-orbits) and `s = 0`.
    pub fn standard(pair: &AdmissiblePair) -> Result<Self> {
        let n = pair.rank();
        Self::new(pair.clone(), symbolic_c(pair), vec![ParamPoly::default(); n])
    }

    /// Symbolic `c_i` and symbolic `s_i` wherever `s_i` may be nonzero.
    pub fn symbolic(pair: &AdmissiblePair) -> Result<Self> {
        let n = pair.rank();
        let allowed = pair.parameter_domains().s_allowed;
        let s = (0..n)
            .map(|i| if allowed.contains(&i) { ParamPoly::var(Var::s(i)) } else { ParamPoly::default() })
            .collect();
        Self::new(pair.clone(), symbolic_c(pair), s)
    }

    /// All `c_i = 1`, `s = 0`.
    pub fn unit(pair: &AdmissiblePair) -> Result<Self> {
        let n = pair.rank();
        let c = (0..n)
            .map(|i| if pair.in_x(i) { ParamPoly::default() } else { ParamPoly::constant(Scalar::one()) })
            .collect();
        Self::new(pair.clone(), c, vec![ParamPoly::default(); n])
    }

    /// Checks admissibility and the constraints defining `C` and `S`.
    pub fn validate(&self) -> Result<()> {
        let p = &self.pair;
        let n = p.rank();
        if !p.is_admissible() {
            return Err(Error::NotAdmissible(format!("{:?}", p.failures)));
        }
        if p.is_degenerate() {
            return Err(Error::DegeneratePair);
        }
        if self.c.len() != n || self.s.len() != n {
            return Err(Error::InvalidParameters(format!("expected {n} entries")));
        }
        let dom = p.parameter_domains();
        for i in 0..n {
            if p.in_x(i) {
                if !self.c[i].is_zero() || !self.s[i].is_zero() {
                    return Err(Error::InvalidParameters(format!("parameters on X at index {i}")));
                }
            } else if self.c[i].is_zero() {
                return Err(Error::InvalidParameters(format!("c_{i} is zero")));
            }
            if !self.s[i].is_zero() && !dom.s_allowed.contains(&i) {
                return Err(Error::InvalidParameters(format!("s_{i} must vanish")));
            }
        }
        for &(i, t) in &dom.c_equal {
            if self.c[i] != self.c[t] {
                return Err(Error::InvalidParameters(format!("c_{i} must equal c_{t}")));
            }
        }
        Ok(())
    }

    /// Copy with some parameter symbols replaced.
    pub fn substitute(&self, map: &BTreeMap<Var, ParamPoly>) -> Result<Self> {
        let c = self.c.iter().map(|x| x.substitute(map)).collect();
        let s = self.s.iter().map(|x| x.substitute(map)).collect();
        Self::new(self.pair.clone(), c, s)
    }

    /// Every entry is a constant.
    pub fn is_numeric(&self) -> bool {
        self.c.iter().chain(self.s.iter()).all(|x| x.as_scalar().is_some())
    }

    /// `c_i, s_i` lie in the local ring at `q = 1` and `c_i(1) = 1`.
    pub fn is_specializable(&self) -> bool {
        let n = self.pair.rank();
        (0..n).all(|i| {
            let ok_s = self.s[i].as_scalar().is_some_and(|s| s.eval_at_one().is_ok());
            let ok_c = self.pair.in_x(i)
                || self.c[i].as_scalar().is_some_and(|c| c.eval_at_one().is_ok_and(|v| v.is_one()));
            ok_s && ok_c
        })
    }
}

fn symbolic_c(pair: &AdmissiblePair) -> Vec<ParamPoly> {
    let n = pair.rank();
    let dom = pair.parameter_domains();
    (0..n)
        .map(|i| {
            if pair.in_x(i) {
                return ParamPoly::default();
            }
            let rep = dom.c_equal.iter().find(|&&(_, t)| t == i).map_or(i, |&(a, _)| a);
            ParamPoly::var(Var::c(rep))
        })
        .collect()
}

/// One summand group of `Δ(B_i)`: a second-factor monomial and the formal
/// first-factor element in front of it.
#[derive(Clone, Debug)]
pub(crate) struct Part {
    pub second: Mono,
    pub first: Element<ParamPoly>,
    /// The `B̃_i ⊗ K_i^{-1}` summand.
    pub symbol: bool,
}

/// A coideal subalgebra with its engines and cached generator data.
pub struct Qsp {
    pub params: QspParams,
    /// Engine of `U_q(g')`.
    pub eng: Engine,
    /// Engine for `M_X^+ U^0_Θ'`-combinations of `B̃`-words.
    pub formal: Engine,
    pub theta: GeneratorMorphism,
    b: Vec<Element<ParamPoly>>,
    parts: Vec<Vec<Part>>,
    words: RwLock<BTreeMap<Word, Element<ParamPoly>>>,
}

impl Qsp {
    pub fn new(params: QspParams) -> Result<Self> {
        Self::with_cap(params, DEFAULT_HEIGHT_CAP)
    }

    pub fn with_cap(params: QspParams, cap: i64) -> Result<Self> {
        params.validate()?;
        let d = &params.pair.datum;
        let eng = Engine::with_options(d, cap, false);
        let formal = Engine::with_options(d, cap, true);
        let theta = theta_q(&eng, &params.pair)?;
        let n = d.rank();
        let mut b = Vec::with_capacity(n);
        for i in 0..n {
            b.push(make_b(&eng, &theta, &params, i)?);
        }
        let mut q = Qsp { params, eng, formal, theta, b, parts: Vec::new(), words: RwLock::new(BTreeMap::new()) };
        let mut parts = Vec::with_capacity(n);
        for i in 0..n {
            parts.push(q.build_parts(i)?);
        }
        q.parts = parts;
        Ok(q)
    }

    pub fn rank(&self) -> usize {
        self.eng.rank()
    }

    pub fn pair(&self) -> &AdmissiblePair {
        &self.params.pair
    }

    /// The generator `B_i` in `U_q(g')`.
    pub fn b(&self, i: usize) -> &Element<ParamPoly> {
        &self.b[i]
    }

    /// The formal symbol `B̃_i`.
    pub fn symbol(&self, i: usize) -> Element<ParamPoly> {
        Element::f(self.rank(), i)
    }

    /// `B_J = B_{j_1} ⋯ B_{j_r}` in `U_q(g')`, cached.
    pub fn b_word(&self, w: &[u8]) -> Result<Element<ParamPoly>> {
        if w.is_empty() {
            return Ok(Element::one(self.rank()));
        }
        if let Some(x) = self.words.read().get(w) {
            return Ok(x.clone());
        }
        let head = self.b_word(&w[..w.len() - 1])?;
        let x = self.eng.mul(&head, &self.b[w[w.len() - 1] as usize])?;
        self.words.write().insert(w.to_vec(), x.clone());
        Ok(x)
    }

    /// Image in `U_q(g')` of a formal element: `B̃_J ↦ B_J`.
    pub fn realize(&self, a: &Element<ParamPoly>) -> Result<Element<ParamPoly>> {
        let mut out = Element::zero();
        for (m, c) in &a.terms {
            let head = Element::mono(Mono { e: m.e.clone(), k: m.k.clone(), f: Vec::new() }, c.clone());
            out = out.add(&self.eng.mul(&head, &self.b_word(&m.f)?)?);
        }
        Ok(out)
    }

    /// `λ_ij = (1 - a_ij) α_i + α_j`.
    pub fn lambda(&self, i: usize, j: usize) -> Vec<i64> {
        let n = self.rank();
        let m = 1 - self.params.pair.datum.a[i][j];
        let mut l = vec![0i64; n];
        l[i] += m;
        l[j] += 1;
        l
    }

    /// `Δ(B_i)`.
    pub fn delta_b(&self, i: usize) -> Result<Tensor<ParamPoly>> {
        self.eng.coproduct(&self.b[i])
    }

    fn k_inv(&self, i: usize) -> Mono {
        Mono::k(&neg(&unit(self.rank(), i)))
    }

    fn build_parts(&self, i: usize) -> Result<Vec<Part>> {
        let ki = Element::<ParamPoly>::mono(self.k_inv(i), ParamPoly::one());
        let rest = self.delta_b(i)?.sub(&Tensor::pure(&self.b[i], &ki));
        let mut parts = vec![Part { second: self.k_inv(i), first: self.symbol(i), symbol: true }];
        for (second, first) in rest.by_second() {
            if first.terms.keys().any(|m| !m.f.is_empty()) {
                return Err(Error::ComponentNotFound(format!("F-letters in a first factor of Δ(B_{i})")));
            }
            parts.push(Part { second, first, symbol: false });
        }
        Ok(parts)
    }

    /// `Δ(B_i) - B_i ⊗ K_i^{-1}` has all first factors in `M_X^+ U^0_Θ'`.
    pub fn coideal_check(&self, i: usize) -> bool {
        let p = &self.params.pair;
        self.parts[i].iter().filter(|x| !x.symbol).all(|x| {
            x.first.terms.keys().all(|m| {
                let k = m.kvec();
                m.f.is_empty() && m.e.iter().all(|&l| p.in_x(l as usize)) && p.theta(&k) == k
            })
        })
    }

    /// For `i ∈ I_ns`, whether `Δ(B_i) = B_i ⊗ K_i^{-1} + 1 ⊗ (F_i - c_i E_i K_i^{-1})`.
    pub fn kow_bis(&self, i: usize) -> Result<Option<bool>> {
        let p = &self.params.pair;
        if !p.i_ns().contains(&i) {
            return Ok(None);
        }
        let n = self.rank();
        let ki = Element::<ParamPoly>::mono(self.k_inv(i), ParamPoly::one());
        let tail = Element::<ParamPoly>::f(n, i).sub(&self.eng.mul(&Element::e(n, i), &ki)?.scale(&self.params.c[i]));
        let expect = Tensor::pure(&self.b[i], &ki).add(&Tensor::pure(&Element::one(n), &tail));
        Ok(Some(self.delta_b(i)? == expect))
    }

    fn div_c(&self, a: &Element<ParamPoly>, i: usize) -> Result<Element<ParamPoly>> {
        let c = &self.params.c[i];
        let mut out = Element::zero();
        for (m, x) in &a.terms {
            let y = x
                .div_exact(c)
                .ok_or_else(|| Error::InvalidParameters(format!("cannot divide by c_{i}")))?;
            out.add_term(m.clone(), y);
        }
        Ok(out)
    }

    /// `𝒵_i`: the cofactor of `c_i (·) ⊗ E_{τ(i)} K_i^{-1}` in `Δ(B_i)`.
    pub fn curly_z(&self, i: usize) -> Result<Element<ParamPoly>> {
        let p = &self.params.pair;
        if p.in_x(i) {
            return Err(Error::InvalidParameters(format!("index {i} lies in X")));
        }
        let mut target = self.k_inv(i);
        target.e = vec![p.tau.apply(i) as u8];
        let part = self.parts[i]
            .iter()
            .find(|x| !x.symbol && x.second == target)
            .ok_or_else(|| Error::ComponentNotFound(format!("E_τ(i) K_i^-1 component of Δ(B_{i})")))?;
        self.div_c(&part.first, i)
    }

    /// `𝒲_ij` for `i ∉ X`, `j ∈ X`, `τ(i) = i`: the cofactor of
    /// `c_i (·) K_j ⊗ ad(E_j)(E_i) K_i^{-1}` in `Δ(B_i)`.
    pub fn curly_w(&self, i: usize, j: usize) -> Result<Element<ParamPoly>> {
        let p = &self.params.pair;
        if p.in_x(i) || !p.in_x(j) || p.tau.apply(i) != i {
            return Err(Error::InvalidParameters(format!("W is defined for i ∉ X fixed by τ and j ∈ X, got ({i}, {j})")));
        }
        let n = self.rank();
        let ki = Element::<Scalar>::mono(self.k_inv(i), Scalar::one());
        let ad = self.eng.mul(&self.eng.adjoint(&Element::e(n, j), &Element::e(n, i))?, &ki)?;
        let mut weight = vec![0i64; n];
        weight[i] += 1;
        weight[j] += 1;
        let comps: Vec<&Part> = self.parts[i]
            .iter()
            .filter(|x| !x.symbol && x.second.weight() == weight && x.second.f.is_empty() && x.second.k == self.k_inv(i).k)
            .collect();
        let (m0, a0) = match ad.terms.iter().next() {
            Some(x) => x,
            None => return Ok(Element::zero()),
        };
        let g = match comps.iter().find(|x| &x.second == m0) {
            Some(x) => x.first.scale_scalar(&a0.inv()?),
            None => return Err(Error::ComponentNotFound(format!("ad(E_{j})(E_{i}) K_i^-1 component of Δ(B_{i})"))),
        };
        for x in &comps {
            if g.scale_scalar(&ad.coeff(&x.second)) != x.first {
                return Err(Error::ComponentNotFound(format!("ad(E_{j})(E_{i}) K_i^-1 component of Δ(B_{i})")));
            }
        }
        if comps.len() != ad.len() {
            return Err(Error::ComponentNotFound(format!("ad(E_{j})(E_{i}) K_i^-1 component of Δ(B_{i})")));
        }
        let kj = Element::<ParamPoly>::k(&neg(&unit(n, j)));
        self.div_c(&self.eng.mul(&g, &kj)?, i)
    }

    pub(crate) fn parts(&self, i: usize) -> &[Part] {
        &self.parts[i]
    }
}

/// `B_i = F_i + c_i θ_q(F_i K_i) K_i^{-1} + s_i K_i^{-1}` for `i ∉ X`, and
/// `B_i = F_i` for `i ∈ X`.
pub fn make_b(eng: &Engine, theta: &GeneratorMorphism, params: &QspParams, i: usize) -> Result<Element<ParamPoly>> {
    let n = eng.rank();
    let fi = Element::<ParamPoly>::f(n, i);
    if params.pair.in_x(i) {
        return Ok(fi);
    }
    let ki = unit(n, i);
    let fk = eng.mul(&Element::<Scalar>::f(n, i), &Element::k(&ki))?;
    let img = eng.mul(&theta.apply(eng, &fk)?, &Element::k(&neg(&ki)))?;
    let kinv = Element::<ParamPoly>::k(&neg(&ki));
    Ok(fi.add(&img.lift::<ParamPoly>().scale(&params.c[i])).add(&kinv.scale(&params.s[i])))
}
