//! Presentations of `B_{c,s}` by generators and relations, and the
//! quantized GIM algebras `G_q(A)_c`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{Qsp, QspParams};
use crate::algebra::{Element, Gen};
use crate::cartan::{neg, unit, DiagramMap, GimMatrix};
use crate::error::{Error, Result};
use crate::maps::mono_gens;
use crate::param::{Coefficient, ParamPoly};
use crate::scalar::{q_binomial, q_diff, Scalar};
use crate::weyl::AdmissiblePair;

/// Noncommutative polynomial in the generators; in a presentation of
/// `B_{c,s}` the letter `F_i` stands for `B̃_i`.
pub type WordPoly = Vec<(ParamPoly, Vec<Gen>)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationKind {
    /// `K_β B̃_i - q^{-(β,α_i)} B̃_i K_β`.
    KCommute,
    /// `E_i B̃_j - B̃_j E_i - δ_ij (K_i - K_i^{-1})/(q_i - q_i^{-1})`, `i ∈ X`.
    ECommute,
    /// `F_ij(B̃_i, B̃_j) - C̃_ij(c)`.
    Serre,
}

/// One defining relation `poly = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub kind: RelationKind,
    /// Indices involved (`β` for [`RelationKind::KCommute`] is stored in `beta`).
    pub i: usize,
    pub j: usize,
    pub beta: Vec<i64>,
    pub poly: WordPoly,
    /// For Serre relations: the formal lower order term `C̃_ij(c)`.
    pub lower: Option<Element<ParamPoly>>,
    /// For Serre relations: whether the closed formula agrees with the
    /// extracted `C̃_ij` (`None` if no closed formula applies).
    pub closed_agrees: Option<bool>,
}

/// Generators and relations of `B_{c,s}`.
#[derive(Clone, Debug, PartialEq)]
pub struct QspPresentation {
    pub params: QspParams,
    /// Basis of `Q^Θ` used for the `K_β` generators.
    pub q_theta_basis: Vec<Vec<i64>>,
    pub relations: Vec<Relation>,
}

impl QspPresentation {
    /// Generator names: `B_i` for all `i`, `E_j`, `K_j^{±1}` for `j ∈ X`,
    /// and `K_β` for the `Q^Θ` basis.
    pub fn generators(&self) -> Vec<String> {
        let p = &self.params.pair;
        let labels = &p.datum.labels;
        let mut out: Vec<String> = labels.iter().map(|l| format!("B{l}")).collect();
        for &j in &p.x {
            out.push(format!("E{}", labels[j]));
            out.push(format!("K{}^±1", labels[j]));
        }
        for b in &self.q_theta_basis {
            out.push(format!("K{b:?}"));
        }
        out
    }
}

fn word(gens: &[Gen]) -> Vec<Gen> {
    gens.to_vec()
}

fn serre_poly(i: usize, j: usize, a: i64, eps: i64, x: Gen, y: Gen) -> WordPoly {
    let m = 1 - a;
    let mut out = Vec::new();
    for k in 0..=m {
        let b = q_binomial(m, k, eps);
        let b = if k % 2 == 1 { b.neg() } else { b };
        let mut w = vec![x.clone(); (m - k) as usize];
        w.push(y.clone());
        w.extend(core::iter::repeat(x.clone()).take(k as usize));
        out.push((ParamPoly::constant(b), w));
    }
    let _ = (i, j);
    out
}

impl Qsp {
    /// Evaluates a word polynomial in `U_q(g')` (`F_i ↦ B_i`).
    pub fn evaluate(&self, poly: &WordPoly) -> Result<Element<ParamPoly>> {
        let n = self.rank();
        let mut out = Element::zero();
        for (c, w) in poly {
            let mut acc = Element::<ParamPoly>::scalar(n, c.clone());
            let mut run: Vec<u8> = Vec::new();
            for g in w.iter().chain(core::iter::once(&Gen::K(vec![0; n]))) {
                if let Gen::F(i) = g {
                    run.push(*i as u8);
                    continue;
                }
                if !run.is_empty() {
                    acc = self.eng.mul(&acc, &self.b_word(&run)?)?;
                    run.clear();
                }
                let x = match g {
                    Gen::E(i) => Element::e(n, *i),
                    Gen::K(b) => Element::k(b),
                    Gen::F(_) => unreachable!(),
                };
                acc = self.eng.mul(&acc, &x)?;
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    /// The relations `(ker1)`–`(ker3)` with extracted lower order terms,
    /// each cross-checked against the closed formula when one applies.
    pub fn emit_presentation(&self) -> Result<QspPresentation> {
        let p = &self.params.pair;
        let d = &p.datum;
        let n = self.rank();
        let basis = p.q_theta_basis();
        let mut rels = Vec::new();
        for beta in &basis {
            for i in 0..n {
                let s = Scalar::q_pow(-self.eng.pairing(beta, &unit(n, i)));
                rels.push(Relation {
                    kind: RelationKind::KCommute,
                    i,
                    j: i,
                    beta: beta.clone(),
                    poly: vec![
                        (ParamPoly::one(), word(&[Gen::K(beta.clone()), Gen::F(i)])),
                        (ParamPoly::constant(s.neg()), word(&[Gen::F(i), Gen::K(beta.clone())])),
                    ],
                    lower: None,
                    closed_agrees: None,
                });
            }
        }
        for &i in &p.x {
            for j in 0..n {
                let mut poly = vec![
                    (ParamPoly::one(), word(&[Gen::E(i), Gen::F(j)])),
                    (ParamPoly::constant(Scalar::from_int(-1)), word(&[Gen::F(j), Gen::E(i)])),
                ];
                if i == j {
                    let inv = q_diff(d.eps[i]).inv()?;
                    poly.push((ParamPoly::constant(inv.neg()), vec![Gen::K(unit(n, i))]));
                    poly.push((ParamPoly::constant(inv), vec![Gen::K(neg(&unit(n, i)))]));
                }
                rels.push(Relation {
                    kind: RelationKind::ECommute,
                    i,
                    j,
                    beta: Vec::new(),
                    poly,
                    lower: None,
                    closed_agrees: None,
                });
            }
        }
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                let lower = self.extract_c(i, j)?;
                let closed_agrees = match self.closed_c(i, j) {
                    Ok(c) => Some(c == lower),
                    Err(Error::UnsupportedCase(_)) => None,
                    Err(e) => return Err(e),
                };
                let mut poly = serre_poly(i, j, d.a[i][j], d.eps[i], Gen::F(i), Gen::F(j));
                for (m, c) in &lower.terms {
                    poly.push((c.neg(), mono_gens(m)));
                }
                rels.push(Relation {
                    kind: RelationKind::Serre,
                    i,
                    j,
                    beta: Vec::new(),
                    poly,
                    lower: Some(lower),
                    closed_agrees,
                });
            }
        }
        Ok(QspPresentation { params: self.params.clone(), q_theta_basis: basis, relations: rels })
    }

    /// Relations of `pres` that fail to vanish in `U_q(g')`, or whose
    /// closed formula disagrees with the extraction.
    pub fn verify_presentation(&self, pres: &QspPresentation) -> Result<Vec<Relation>> {
        let mut bad = Vec::new();
        for r in &pres.relations {
            if !self.evaluate(&r.poly)?.is_zero() || r.closed_agrees == Some(false) {
                bad.push(r.clone());
            }
        }
        Ok(bad)
    }
}

/// A generator of `G_q(A)_c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum GimGen {
    G(usize),
    GBar(usize),
    L(usize),
    LBar(usize),
}

/// One relation of `G_q(A)_c` with its label in the list (1)–(5).
#[derive(Clone, Debug, PartialEq)]
pub struct GimRelation {
    pub group: u8,
    pub i: usize,
    pub j: usize,
    pub poly: Vec<(ParamPoly, Vec<GimGen>)>,
    /// Image under `φ` in `U_q(g(C(A))')` is zero.
    pub holds: bool,
}

/// The quantized GIM algebra of an unoriented GIM.
pub struct GimPresentation {
    pub gim: GimMatrix,
    pub qsp: Qsp,
    pub relations: Vec<GimRelation>,
}

impl GimPresentation {
    pub fn all_hold(&self) -> bool {
        self.relations.iter().all(|r| r.holds)
    }
}

fn gim_serre(k: i64, eps: i64, x: GimGen, y: GimGen) -> Vec<(ParamPoly, Vec<GimGen>)> {
    let m = 1 + k;
    (0..=m)
        .map(|t| {
            let b = q_binomial(m, t, eps);
            let b = if t % 2 == 1 { b.neg() } else { b };
            let mut w = vec![x; (m - t) as usize];
            w.push(y);
            w.extend(core::iter::repeat(x).take(t as usize));
            (ParamPoly::constant(b), w)
        })
        .collect()
}

fn commutator(x: GimGen, y: GimGen) -> Vec<(ParamPoly, Vec<GimGen>)> {
    vec![(ParamPoly::one(), vec![x, y]), (ParamPoly::constant(Scalar::from_int(-1)), vec![y, x])]
}

/// Builds `B_c` for `(C(A), (∅, σ))` with `c_i = c_ī`, emits the relations
/// (1)–(5) of `G_q(A)_c` and evaluates each under
/// `L_i ↦ K_i K_ī^{-1}`, `G_i ↦ B_i`, `Ḡ_i ↦ B_ī`.
///
/// Relation (3) is read with its mixed commutator for all `i, j` with
/// `a_ij = 0` together with the diagonal case `i = j`; relation (5) for
/// `i ≠ j`.
pub fn gim_presentation(g: &GimMatrix, c: &[ParamPoly]) -> Result<GimPresentation> {
    let n = g.a.len();
    let (datum, sigma, unoriented) = g.double();
    if !unoriented {
        return Err(Error::NotUnoriented);
    }
    if c.len() != n {
        return Err(Error::InvalidParameters(format!("expected {n} parameters")));
    }
    let pair = AdmissiblePair::build(&datum, &[], &sigma)?;
    let mut cc = c.to_vec();
    cc.extend(c.iter().cloned());
    let params = QspParams::new(pair, cc, vec![ParamPoly::default(); 2 * n])?;
    let qsp = Qsp::new(params)?;
    let mut rels: Vec<(u8, usize, usize, Vec<(ParamPoly, Vec<GimGen>)>)> = Vec::new();
    use GimGen::*;
    for i in 0..n {
        rels.push((1, i, i, vec![(ParamPoly::one(), vec![L(i), LBar(i)]), (ParamPoly::constant(Scalar::from_int(-1)), vec![])]));
        rels.push((1, i, i, vec![(ParamPoly::one(), vec![LBar(i), L(i)]), (ParamPoly::constant(Scalar::from_int(-1)), vec![])]));
    }
    for i in 0..n {
        let ei = g.eps[i];
        for j in 0..n {
            let aij = g.a[i][j];
            let s = Scalar::q_pow(-ei * aij);
            rels.push((2, i, j, vec![(ParamPoly::one(), vec![L(i), G(j)]), (ParamPoly::constant(s.neg()), vec![G(j), L(i)])]));
            let s = Scalar::q_pow(ei * aij);
            rels.push((2, i, j, vec![(ParamPoly::one(), vec![L(i), GBar(j)]), (ParamPoly::constant(s.neg()), vec![GBar(j), L(i)])]));
        }
    }
    for i in 0..n {
        let ei = g.eps[i];
        for j in 0..n {
            let aij = g.a[i][j];
            if i == j {
                let mut poly = commutator(G(i), GBar(i));
                let inv = q_diff(ei).inv()?;
                poly.push((c[i].scale(&inv).neg(), vec![L(i)]));
                poly.push((c[i].scale(&inv), vec![LBar(i)]));
                rels.push((3, i, i, poly));
            } else if aij == 0 {
                rels.push((3, i, j, commutator(G(i), G(j))));
                rels.push((3, i, j, commutator(GBar(i), GBar(j))));
                rels.push((3, i, j, commutator(G(i), GBar(j))));
            } else if aij < 0 {
                rels.push((4, i, j, gim_serre(-aij, ei, G(i), G(j))));
                rels.push((4, i, j, gim_serre(-aij, ei, GBar(i), GBar(j))));
                rels.push((4, i, j, commutator(G(i), GBar(j))));
            } else {
                rels.push((5, i, j, gim_serre(aij, ei, G(i), GBar(j))));
                rels.push((5, i, j, gim_serre(aij, ei, GBar(i), G(j))));
                rels.push((5, i, j, commutator(G(i), G(j))));
                rels.push((5, i, j, commutator(GBar(i), GBar(j))));
            }
        }
    }
    let m = 2 * n;
    let image = |x: &GimGen| -> Element<ParamPoly> {
        match *x {
            G(i) => qsp.b(i).clone(),
            GBar(i) => qsp.b(i + n).clone(),
            L(i) => {
                let mut k = unit(m, i);
                k[i + n] = -1;
                Element::k(&k)
            }
            LBar(i) => {
                let mut k = unit(m, i + n);
                k[i] = -1;
                Element::k(&k)
            }
        }
    };
    let mut relations = Vec::new();
    for (group, i, j, poly) in rels {
        let mut total = Element::zero();
        for (c, w) in &poly {
            let mut acc = Element::<ParamPoly>::scalar(m, c.clone());
            for x in w {
                acc = qsp.eng.mul(&acc, &image(x))?;
            }
            total = total.add(&acc);
        }
        relations.push(GimRelation { group, i, j, poly, holds: total.is_zero() });
    }
    let _ = DiagramMap::identity(0);
    Ok(GimPresentation { gim: g.clone(), qsp, relations })
}
