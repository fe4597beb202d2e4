//! Bounded-degree probes: expansion in the `B_J` basis, the centralizer of
//! the generators, the Iwasawa decomposition, and the rescaling of
//! parameters by a character.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{Qsp, QspParams};
use crate::algebra::{Element, Engine, Mono, Word};
use crate::cartan::{det, height, neg, unit};
use crate::error::{Error, Result};
use crate::linalg::{kernel, rank, Echelon, SparseVec};
use crate::maps::ad_char;
use crate::param::{Coefficient, ParamPoly};
use crate::scalar::Scalar;
use crate::weyl::Character;

/// Canonical words of length at most `max` over `letters`.
pub fn canonical_words(eng: &Engine, letters: &[usize], max: usize) -> Result<Vec<Word>> {
    let n = eng.rank();
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<i64>, usize)> = vec![(vec![0; n], 0)];
    while let Some((mu, from)) = stack.pop() {
        out.extend(eng.weight_basis(&mu)?);
        if height(&mu) as usize >= max {
            continue;
        }
        for (pos, &l) in letters.iter().enumerate().skip(from) {
            let mut nu = mu.clone();
            nu[l] += 1;
            stack.push((nu, pos));
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    Ok(out)
}

fn to_vec(a: &Element<Scalar>) -> SparseVec<Mono> {
    a.terms.clone()
}

fn numeric(a: &Element<ParamPoly>) -> Result<Element<Scalar>> {
    a.to_scalar_element()
        .ok_or_else(|| Error::InvalidParameters(format!("the probe needs numeric parameters")))
}

/// Result of [`Qsp::centralizer_probe`].
#[derive(Clone, Debug)]
pub struct CentralizerReport {
    pub degree: usize,
    /// Number of candidate monomials `E_X-word · K_β · B̃_J` after the
    /// `Q^Θ`-weight filter.
    pub candidates: usize,
    /// Basis of the solution space, as formal elements.
    pub basis: Vec<Element<ParamPoly>>,
}

impl CentralizerReport {
    /// The solution space is spanned by `1`.
    pub fn only_scalars(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].terms.keys().all(|m| m.e.is_empty() && m.f.is_empty() && m.k.iter().all(|&x| x == 0))
    }
}

/// Result of [`Qsp::iwasawa_check`].
#[derive(Clone, Debug)]
pub struct IwasawaReport {
    pub degree: usize,
    /// Per weight `μ`: `(μ, dim U^+_μ, Σ dim V_μ' · dim M_μ'', rank of the products)`.
    pub pieces: Vec<(Vec<i64>, usize, usize, usize)>,
    /// `Z^{I*} ⊕ Q^Θ = Q`.
    pub lattice_unimodular: bool,
    /// Size of the family `v · t · m · B_J`.
    pub family: usize,
    pub family_rank: usize,
    /// Rank of the leading `F`-degree parts of the family.
    pub leading_rank: usize,
}

impl IwasawaReport {
    pub fn passed(&self) -> bool {
        self.lattice_unimodular
            && self.pieces.iter().all(|p| p.1 == p.2 && p.2 == p.3)
            && self.family_rank == self.family
            && self.leading_rank == self.family
    }
}

impl Qsp {
    /// Writes `a = Σ_J u_J B_J` with canonical words `J` and `u_J ∈ U^+U^0'`,
    /// eliminating the longest `F`-words first.
    pub fn expand_in_bj(&self, a: &Element<ParamPoly>) -> Result<BTreeMap<Word, Element<ParamPoly>>> {
        let mut rest = a.clone();
        let mut out: BTreeMap<Word, Element<ParamPoly>> = BTreeMap::new();
        while !rest.is_zero() {
            let top = rest.terms.keys().map(|m| m.f.len()).max().unwrap_or(0);
            let mut lead: BTreeMap<Word, Element<ParamPoly>> = BTreeMap::new();
            for (m, c) in &rest.terms {
                if m.f.len() == top {
                    lead.entry(m.f.clone())
                        .or_default()
                        .add_term(Mono { e: m.e.clone(), k: m.k.clone(), f: Vec::new() }, c.clone());
                }
            }
            for (j, u) in lead {
                rest = rest.sub(&self.eng.mul(&u, &self.b_word(&j)?)?);
                let slot = out.entry(j).or_default();
                *slot = slot.add(&u);
            }
        }
        out.retain(|_, u| !u.is_zero());
        Ok(out)
    }

    /// Whether every term of `u` lies in `M_X^+ U^0_Θ'`.
    pub fn in_mx_u0(&self, u: &Element<ParamPoly>) -> bool {
        let p = &self.params.pair;
        u.terms.keys().all(|m| {
            let k = m.kvec();
            m.f.is_empty() && m.e.iter().all(|&l| p.in_x(l as usize)) && p.theta(&k) == k
        })
    }

    fn numeric_b(&self) -> Result<Vec<Element<Scalar>>> {
        (0..self.rank()).map(|i| numeric(self.b(i))).collect()
    }

    /// Elements of the span of `E_X-word · K_β · B_J` (`|e| + |J| ≤ d`,
    /// `β` in the `Q^Θ` lattice with basis coordinates in `[-r, r]`)
    /// commuting with every generator of `B_{c,s}`.  Needs numeric
    /// parameters.
    pub fn centralizer_probe(&self, d: usize, r: i64) -> Result<CentralizerReport> {
        let p = &self.params.pair;
        let n = self.rank();
        let b = self.numeric_b()?;
        let basis = p.q_theta_basis();
        let all: Vec<usize> = (0..n).collect();
        let xs = p.x.clone();
        let jwords = canonical_words(&self.eng, &all, d)?;
        let ewords = canonical_words(&self.eng, &xs, d)?;
        let mut kvecs = vec![vec![0i64; n]];
        for bv in &basis {
            let mut next = Vec::new();
            for k in &kvecs {
                for t in -r..=r {
                    next.push((0..n).map(|l| k[l] + t * bv[l]).collect::<Vec<i64>>());
                }
            }
            kvecs = next;
        }
        let mut cands: Vec<Mono> = Vec::new();
        for e in &ewords {
            for j in &jwords {
                if e.len() + j.len() > d {
                    continue;
                }
                let w = Mono { e: e.clone(), k: vec![0; n], f: j.clone() }.weight();
                if basis.iter().any(|bv| self.eng.pairing(bv, &w) != 0) {
                    continue;
                }
                for k in &kvecs {
                    cands.push(Mono { e: e.clone(), k: k.iter().map(|&x| x as i32).collect(), f: j.clone() });
                }
            }
        }
        let mut gens: Vec<Element<Scalar>> = b;
        for &j in &xs {
            gens.push(Element::e(n, j));
        }
        let mut cols: Vec<SparseVec<(usize, Mono)>> = Vec::with_capacity(cands.len());
        for m in &cands {
            let z = numeric(&self.realize(&Element::mono(m.clone(), ParamPoly::one()))?)?;
            let mut col = BTreeMap::new();
            for (gi, g) in gens.iter().enumerate() {
                for (mm, c) in self.eng.commutator(&z, g)?.terms {
                    col.insert((gi, mm), c);
                }
            }
            cols.push(col);
        }
        let ker = kernel(&cols);
        let basis_out = ker
            .iter()
            .map(|v| {
                let mut el = Element::zero();
                for (&idx, c) in v {
                    el.add_term(cands[idx].clone(), ParamPoly::constant(c.clone()));
                }
                el
            })
            .collect();
        Ok(CentralizerReport { degree: d, candidates: cands.len(), basis: basis_out })
    }

    /// Bounded check of `V_X^+ ⊗ U'_Θ ⊗ B_{c,s} ≅ U_q(g')` up to filtration
    /// degree `d`, with `U'_Θ`-exponents in `[-r, r]`.  Needs numeric
    /// parameters.
    pub fn iwasawa_check(&self, d: usize, r: i64) -> Result<IwasawaReport> {
        let p = &self.params.pair;
        let n = self.rank();
        let eng = &self.eng;
        let b = self.numeric_b()?;
        let xs = p.x.clone();
        let istar = p.i_star();

        // Generators ad(E_w)(E_i) of V_X^+.
        let mut vgens: Vec<(Vec<i64>, Element<Scalar>)> = Vec::new();
        for w in canonical_words(eng, &xs, d.saturating_sub(1))? {
            for i in (0..n).filter(|&i| !p.in_x(i)) {
                let g = eng.ad_e_word(&w, &Element::e(n, i))?;
                if !g.is_zero() {
                    let mut wt = unit(n, i);
                    for &l in &w {
                        wt[l as usize] += 1;
                    }
                    vgens.push((wt, g));
                }
            }
        }
        // Bases of the weight spaces of V_X^+, by height.
        let mut vbasis: BTreeMap<Vec<i64>, Vec<Element<Scalar>>> = BTreeMap::new();
        vbasis.insert(vec![0; n], vec![Element::one(n)]);
        for h in 1..=d as i64 {
            let mut level: BTreeMap<Vec<i64>, (Echelon<Mono>, Vec<Element<Scalar>>)> = BTreeMap::new();
            for (gw, g) in &vgens {
                for (vw, vs) in &vbasis {
                    if height(vw) + height(gw) != h {
                        continue;
                    }
                    let w: Vec<i64> = (0..n).map(|l| vw[l] + gw[l]).collect();
                    let slot = level.entry(w).or_insert_with(|| (Echelon::new(), Vec::new()));
                    for v in vs {
                        let x = eng.mul(g, v)?;
                        if slot.0.insert(&to_vec(&x)) {
                            slot.1.push(x);
                        }
                    }
                }
            }
            for (w, (_, v)) in level {
                vbasis.insert(w, v);
            }
        }
        let mwords = canonical_words(eng, &xs, d)?;
        let mut pieces = Vec::new();
        let mut uplus: Vec<(usize, Element<Scalar>)> = Vec::new();
        let mut weights: Vec<Vec<i64>> = Vec::new();
        for w in canonical_words(eng, &(0..n).collect::<Vec<_>>(), d)? {
            let mu = Mono { e: w, k: vec![0; n], f: Vec::new() }.weight();
            if !weights.contains(&mu) {
                weights.push(mu);
            }
        }
        for mu in &weights {
            let dim_u = eng.weight_basis(mu)?.len();
            let mut prods = Vec::new();
            for (vw, vs) in &vbasis {
                for m in &mwords {
                    let mw = Mono { e: m.clone(), k: vec![0; n], f: Vec::new() }.weight();
                    if (0..n).any(|l| vw[l] + mw[l] != mu[l]) {
                        continue;
                    }
                    let me = eng.e_word::<Scalar>(m)?;
                    for v in vs {
                        prods.push(eng.mul(v, &me)?);
                    }
                }
            }
            let rk = rank(&prods.iter().map(to_vec).collect::<Vec<_>>());
            pieces.push((mu.clone(), dim_u, prods.len(), rk));
            let h = height(mu) as usize;
            uplus.extend(prods.into_iter().map(|x| (h, x)));
        }

        let mut lattice: Vec<Vec<i64>> = istar.iter().map(|&i| unit(n, i)).collect();
        lattice.extend(p.q_theta_basis());
        let lattice_unimodular = lattice.len() == n && {
            let dv = det(&lattice);
            dv == 1.into() || dv == (-1).into()
        };

        let mut tvecs = vec![vec![0i64; n]];
        for &i in &istar {
            let mut next = Vec::new();
            for t in &tvecs {
                for e in -r..=r {
                    let mut v = t.clone();
                    v[i] += e;
                    next.push(v);
                }
            }
            tvecs = next;
        }
        let jwords = canonical_words(eng, &(0..n).collect::<Vec<_>>(), d)?;
        let mut full = Vec::new();
        let mut leading = Vec::new();
        for (h, u) in &uplus {
            for j in jwords.iter().filter(|j| h + j.len() <= d) {
                let mut bj = Element::one(n);
                for &l in j {
                    bj = eng.mul(&bj, &b[l as usize])?;
                }
                for t in &tvecs {
                    let x = eng.mul(&eng.mul(u, &Element::k(t))?, &bj)?;
                    let lead = x.filter(|m| m.f.len() == j.len());
                    full.push(to_vec(&x));
                    leading.push(to_vec(&lead));
                }
            }
        }
        Ok(IwasawaReport {
            degree: d,
            pieces,
            lattice_unimodular,
            family: full.len(),
            family_rank: rank(&full),
            leading_rank: rank(&leading),
        })
    }
}

/// Rescales the parameters by a character `x` so that `Ad(x)` maps
/// `B_{c,s}` onto `B_{c',s'}` with `c'_i = 1` whenever `τ(i) = i` and
/// `c'_{τ(i)} = 1` on the other orbits (`i` the smaller index).  Each
/// `B_i` is checked to be sent to a multiple of `B'_i`.
pub fn rescale_params(params: &QspParams) -> Result<(QspParams, Character)> {
    let p = &params.pair;
    let n = p.rank();
    let num = |x: &ParamPoly| {
        x.as_scalar()
            .ok_or_else(|| Error::InvalidParameters(format!("rescaling needs numeric parameters")))
    };
    let mut x = vec![Scalar::one(); n];
    let mut c = params.c.clone();
    let mut s = params.s.clone();
    for i in 0..n {
        if p.in_x(i) {
            continue;
        }
        let t = p.tau.apply(i);
        if t == i {
            let ci = num(&params.c[i])?;
            let di = ci.sqrt().ok_or(Error::NoSquareRootInField)?;
            x[i] = di.inv()?;
            c[i] = ParamPoly::constant(Scalar::one());
            s[i] = ParamPoly::constant(num(&params.s[i])?.div(&di)?);
        } else if t > i {
            let ct = num(&params.c[t])?;
            x[t] = ct.inv()?;
            c[i] = ParamPoly::constant(num(&params.c[i])?.div(&ct)?);
            c[t] = ParamPoly::constant(Scalar::one());
        }
    }
    let chi = Character::new(x)?;
    let out = QspParams::new(p.clone(), c, s)?;
    let old = Qsp::new(params.clone())?;
    let new = Qsp::new(out.clone())?;
    let ad = ad_char(&chi)?;
    for i in 0..n {
        let img = ad.apply(&old.eng, old.b(i))?;
        let want = new.b(i).scale_scalar(&chi.eval(&neg(&unit(n, i))));
        if img != want {
            return Err(Error::NotInSpan(format!("Ad(x)(B_{i}) is not a multiple of the rescaled generator")));
        }
    }
    Ok((out, chi))
}
