//! Weyl group actions, parabolic longest elements, admissible pairs `(X, τ)`,
//! the involution `Θ = -w_X τ`, the character `s(X, τ)` and the parameter
//! domains of quantum symmetric pairs.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::cartan::{neg, unit, CartanDatum, DiagramMap, RootVector};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Word `(x_1, ..., x_k)` for the Weyl group element `r_{x_1} ... r_{x_k}`.
pub type WeylWord = Vec<usize>;

/// Action of `r_{x_1} ... r_{x_k}` on a root vector (rightmost letter first).
pub fn act(d: &CartanDatum, w: &[usize], beta: &[i64]) -> RootVector {
    let mut v = beta.to_vec();
    for &i in w.iter().rev() {
        v = d.reflect(i, &v);
    }
    v
}

/// Action on the coroot lattice.
pub fn act_coroot(d: &CartanDatum, w: &[usize], h: &[i64]) -> RootVector {
    let mut v = h.to_vec();
    for &i in w.iter().rev() {
        v = d.reflect_coroot(i, &v);
    }
    v
}

/// Reduced word for the longest element of the parabolic subgroup `W_X`.
///
/// Starts from the weight with `λ(h_i) = 1` on `X` and reflects in the smallest
/// index with positive pairing until `λ` is antidominant; the reversed record
/// of reflections is returned.
pub fn longest_word(d: &CartanDatum, x: &[usize]) -> Result<WeylWord> {
    if !d.finite_type_subset(x) {
        return Err(Error::NotFiniteType);
    }
    let n = d.rank();
    let mut v = vec![0i64; n];
    for &i in x {
        v[i] = 1;
    }
    let mut record = Vec::new();
    loop {
        let next = x.iter().copied().filter(|&i| v[i] > 0).min();
        let Some(i) = next else { break };
        record.push(i);
        let vi = v[i];
        for &j in x {
            v[j] -= vi * d.a[j][i];
        }
    }
    record.reverse();
    Ok(record)
}

/// `α_j(2ρ_X^∨)`, summing `α_j(β^∨)` over the positive roots `β` of `Φ_X`.
pub fn pairing_2rho(d: &CartanDatum, x: &[usize], j: usize) -> Result<i64> {
    let roots = d.positive_roots(x)?;
    Ok(roots.iter().map(|b| d.pair_coroot(&d.coroot(b), j)).sum())
}

/// Which condition of the admissibility definition failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdmissibilityFailure {
    /// X is not of finite type.
    NotFiniteType,
    /// Condition (1): τ is not an involutive diagram automorphism with τ(X) = X.
    Condition1(String),
    /// Condition (2): τ does not agree with the action of `-w_X` on X.
    Condition2(String),
    /// Condition (3): some τ-fixed `j ∉ X` has odd `α_j(2ρ_X^∨)`.
    Condition3(String),
}

/// A pair `(X, τ)` with its cached Weyl data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissiblePair {
    pub datum: CartanDatum,
    pub x: Vec<usize>,
    pub tau: DiagramMap,
    pub w_x: WeylWord,
    /// `τ_X(i)` with `w_X(α_i) = -α_{τ_X(i)}` for `i ∈ X`; identity off X.
    pub tau_x: Vec<usize>,
    /// `α_j(2ρ_X^∨)` for every `j`.
    pub two_rho: Vec<i64>,
    pub failures: Vec<AdmissibilityFailure>,
}

impl AdmissiblePair {
    /// Computes the cached data without insisting on admissibility; the
    /// failures found are recorded.  Requires X of finite type.
    pub fn build(d: &CartanDatum, x: &[usize], tau: &DiagramMap) -> Result<Self> {
        let mut xs: Vec<usize> = x.to_vec();
        xs.sort_unstable();
        xs.dedup();
        let n = d.rank();
        if tau.perm.len() != n || xs.iter().any(|&i| i >= n) {
            return Err(Error::NotAdmissible(String::from("index out of range")));
        }
        if !d.finite_type_subset(&xs) {
            return Err(Error::NotFiniteType);
        }
        let w_x = longest_word(d, &xs)?;
        let mut tau_x: Vec<usize> = (0..n).collect();
        for &i in &xs {
            let img = act(d, &w_x, &unit(n, i));
            let k = img.iter().position(|&c| c != 0).unwrap();
            debug_assert_eq!(img[k], -1);
            tau_x[i] = k;
        }
        let roots = d.positive_roots(&xs)?;
        let coroot_sum = roots.iter().fold(vec![0i64; n], |acc, b| crate::cartan::add(&acc, &d.coroot(b)));
        let two_rho: Vec<i64> = (0..n).map(|j| d.pair_coroot(&coroot_sum, j)).collect();
        let mut pair = AdmissiblePair { datum: d.clone(), x: xs, tau: tau.clone(), w_x, tau_x, two_rho, failures: Vec::new() };
        pair.failures = pair.check();
        Ok(pair)
    }

    fn check(&self) -> Vec<AdmissibilityFailure> {
        let d = &self.datum;
        let mut out = Vec::new();
        let lab = |i: usize| d.labels[i].clone();
        if !d.preserves(&self.tau) {
            out.push(AdmissibilityFailure::Condition1(String::from("tau is not a diagram automorphism")));
        } else if !self.tau.is_involution() {
            out.push(AdmissibilityFailure::Condition1(String::from("tau is not an involution")));
        } else if self.tau.apply_set(&self.x) != self.x {
            out.push(AdmissibilityFailure::Condition1(String::from("tau(X) differs from X")));
        }
        for &i in &self.x {
            if self.tau.apply(i) != self.tau_x[i] {
                out.push(AdmissibilityFailure::Condition2(alloc::format!(
                    "tau({}) = {} but -w_X sends alpha_{} to alpha_{}",
                    lab(i),
                    lab(self.tau.apply(i)),
                    lab(i),
                    lab(self.tau_x[i])
                )));
            }
        }
        for j in 0..d.rank() {
            if self.x.contains(&j) || self.tau.apply(j) != j {
                continue;
            }
            if self.two_rho[j] % 2 != 0 {
                out.push(AdmissibilityFailure::Condition3(alloc::format!(
                    "alpha_{}(2 rho_X^vee) = {} is odd",
                    lab(j),
                    self.two_rho[j]
                )));
            }
        }
        out
    }

    pub fn is_admissible(&self) -> bool {
        self.failures.is_empty()
    }

    /// The pair `(X, τ̂)` on the untwisted affinization, with `τ̂(0) = 0` and
    /// `τ̂ = τ` on `I`, together with the marks `b_j`. The affine node gets
    /// index 0 and every finite index shifts up by one.
    pub fn affinize(&self) -> Result<(AdmissiblePair, Vec<i64>)> {
        let (aff, marks) = self.datum.affinize()?;
        let x: Vec<usize> = self.x.iter().map(|&i| i + 1).collect();
        let mut perm = vec![0];
        perm.extend(self.tau.perm.iter().map(|&i| i + 1));
        let p = AdmissiblePair::build(&aff, &x, &DiagramMap { perm })?;
        if !p.is_admissible() {
            return Err(Error::NotAdmissible(alloc::format!("{:?}", p.failures)));
        }
        Ok((p, marks))
    }

    /// X = I: the involution fixes everything.
    pub fn is_degenerate(&self) -> bool {
        self.x.len() == self.datum.rank()
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn in_x(&self, i: usize) -> bool {
        self.x.binary_search(&i).is_ok()
    }

    /// `Θ(β) = -w_X(τ(β))`.
    pub fn theta(&self, beta: &[i64]) -> RootVector {
        neg(&act(&self.datum, &self.w_x, &self.tau.apply_root(beta)))
    }

    /// Action of `-w_X τ` on a coroot vector.
    pub fn theta_coroot(&self, h: &[i64]) -> RootVector {
        neg(&act_coroot(&self.datum, &self.w_x, &self.tau.apply_root(h)))
    }

    /// Indices in `I_ns`: τ-fixed, outside X, orthogonal to X.
    pub fn i_ns(&self) -> Vec<usize> {
        let d = &self.datum;
        (0..d.rank())
            .filter(|&i| !self.in_x(i) && self.tau.apply(i) == i && self.x.iter().all(|&j| d.a[j][i] == 0))
            .collect()
    }

    /// Least index of each τ-orbit in `I \ X`.
    pub fn i_star(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| !self.in_x(i) && self.tau.apply(i) >= i).collect()
    }

    pub fn parameter_domains(&self) -> ParameterDomains {
        let d = &self.datum;
        let n = d.rank();
        let mut c_equal = Vec::new();
        for i in 0..n {
            let t = self.tau.apply(i);
            if self.in_x(i) || t <= i {
                continue;
            }
            let ai = unit(n, i);
            if d.bilinear(&ai, &self.theta(&ai)) == 0 {
                c_equal.push((i, t));
            }
        }
        let ins = self.i_ns();
        let s_allowed = ins
            .iter()
            .copied()
            .filter(|&i| ins.iter().all(|&j| j == i || d.a[i][j] % 2 == 0))
            .collect();
        ParameterDomains { c_equal, ins, s_allowed, i_star: self.i_star(), q_theta_basis: self.q_theta_basis() }
    }

    /// Lattice basis of `Q^Θ = {β : Θβ = β}`.
    pub fn q_theta_basis(&self) -> Vec<RootVector> {
        let n = self.rank();
        let mut m = vec![vec![0i64; n]; n];
        for j in 0..n {
            let img = self.theta(&unit(n, j));
            for i in 0..n {
                m[i][j] = img[i] - if i == j { 1 } else { 0 };
            }
        }
        integer_kernel(&m)
    }
}

/// The constraints defining the parameter sets `C` and `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterDomains {
    /// Pairs `(i, τ(i))` with the constraint `c_i = c_{τ(i)}`.
    pub c_equal: Vec<(usize, usize)>,
    pub ins: Vec<usize>,
    /// Indices where `s_i` may be nonzero.
    pub s_allowed: Vec<usize>,
    pub i_star: Vec<usize>,
    pub q_theta_basis: Vec<RootVector>,
}

/// Basis of the integer kernel of `m` by unimodular column operations.
pub fn integer_kernel(m: &[Vec<i64>]) -> Vec<RootVector> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<i64>> = m.to_vec();
    let mut u: Vec<Vec<i64>> = (0..cols).map(|j| unit(cols, j)).collect(); // u[j] is column j
    let mut pivot_col = 0;
    for r in 0..rows {
        if pivot_col >= cols {
            break;
        }
        loop {
            let nz: Vec<usize> = (pivot_col..cols).filter(|&c| a[r][c] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let best = *nz.iter().min_by_key(|&&c| a[r][c].abs()).unwrap();
            swap_cols(&mut a, &mut u, pivot_col, best);
            let p = a[r][pivot_col];
            let mut done = true;
            for c in pivot_col + 1..cols {
                let f = a[r][c] / p;
                if f != 0 {
                    for row in a.iter_mut() {
                        row[c] -= f * row[pivot_col];
                    }
                    let (uc, up) = (u[c].clone(), u[pivot_col].clone());
                    u[c] = uc.iter().zip(&up).map(|(x, y)| x - f * y).collect();
                }
                if a[r][c] != 0 {
                    done = false;
                }
            }
            if done {
                pivot_col += 1;
                break;
            }
        }
    }
    (pivot_col..cols).map(|c| u[c].clone()).collect()
}

fn swap_cols(a: &mut [Vec<i64>], u: &mut [Vec<i64>], i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    u.swap(i, j);
}

/// Diagnostics-returning validation of `(X, τ)`.
pub fn validate_admissible(d: &CartanDatum, x: &[usize], tau: &DiagramMap) -> core::result::Result<AdmissiblePair, Vec<AdmissibilityFailure>> {
    match AdmissiblePair::build(d, x, tau) {
        Err(_) => Err(vec![AdmissibilityFailure::NotFiniteType]),
        Ok(p) if p.is_admissible() => Ok(p),
        Ok(p) => Err(p.failures),
    }
}

/// All admissible pairs grouped into `Aut(A)`-orbits (first element of each orbit is its
/// representative).  Pairs with X = I are included and flagged by `is_degenerate`.
pub fn enumerate_admissible(d: &CartanDatum, cap: usize) -> Result<Vec<Vec<AdmissiblePair>>> {
    let n = d.rank();
    if n > cap {
        return Err(Error::IndexSetTooLarge(n));
    }
    let auts = d.aut(cap)?;
    let involutions: Vec<&DiagramMap> = auts.iter().filter(|s| s.is_involution()).collect();
    let mut found: Vec<AdmissiblePair> = Vec::new();
    for mask in 0u32..(1 << n) {
        let x: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if !d.finite_type_subset(&x) {
            continue;
        }
        for tau in &involutions {
            if tau.apply_set(&x) != x {
                continue;
            }
            if let Ok(p) = validate_admissible(d, &x, tau) {
                found.push(p);
            }
        }
    }
    let mut seen: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
    let mut orbits = Vec::new();
    for p in &found {
        let key = (p.x.clone(), p.tau.perm.clone());
        if seen.contains(&key) {
            continue;
        }
        let mut orbit = Vec::new();
        for s in &auts {
            let sx = s.apply_set(&p.x);
            let st = s.compose(&p.tau).compose(&s.inverse());
            let k = (sx, st.perm.clone());
            if seen.insert(k.clone()) {
                if let Some(q) = found.iter().find(|q| q.x == k.0 && q.tau.perm == k.1) {
                    orbit.push(q.clone());
                }
            }
        }
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// Multiplicative character of the root lattice given by its values on simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub values: Vec<Scalar>,
}

impl Character {
    pub fn new(values: Vec<Scalar>) -> Result<Self> {
        if values.iter().any(|v| v.is_zero()) {
            return Err(Error::InvalidCharacter);
        }
        Ok(Character { values })
    }

    pub fn trivial(n: usize) -> Self {
        Character { values: vec![Scalar::one(); n] }
    }

    pub fn eval(&self, beta: &[i64]) -> Scalar {
        let mut acc = Scalar::one();
        for (v, &b) in self.values.iter().zip(beta) {
            if b != 0 {
                acc = &acc * &v.pow(b).expect("character values are nonzero");
            }
        }
        acc
    }

    pub fn inverse(&self) -> Self {
        Character { values: self.values.iter().map(|v| v.inv().unwrap()).collect() }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v.is_one())
    }
}

/// The character `s(X, τ)`; `order[i]` is the position of `i` in the chosen
/// total order of I (label order when `None`).
pub fn s_character(p: &AdmissiblePair, order: Option<&[usize]>) -> Character {
    let n = p.rank();
    let pos = |i: usize| order.map_or(i, |o| o[i]);
    let values = (0..n)
        .map(|j| {
            let t = p.tau.apply(j);
            if p.in_x(j) || t == j {
                Scalar::one()
            } else {
                let base = if pos(t) > pos(j) { Scalar::i() } else { Scalar::i().neg() };
                base.pow(p.two_rho[j]).unwrap()
            }
        })
        .collect();
    Character { values }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap13() -> DiagramMap {
        DiagramMap { perm: vec![2, 1, 0] }
    }

    #[test]
    fn longest_words() {
        let a2 = CartanDatum::type_a(2);
        assert_eq!(longest_word(&a2, &[0]).unwrap(), vec![0]);
        assert_eq!(longest_word(&a2, &[0, 1]).unwrap().len(), 3);
        let a3 = CartanDatum::type_a(3);
        let w = longest_word(&a3, &[0, 2]).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(act(&a3, &w, &[1, 0, 0]), vec![-1, 0, 0]);
        assert_eq!(act(&a3, &w, &[0, 0, 1]), vec![0, 0, -1]);
        assert_eq!(longest_word(&a3, &[0, 1, 2]).unwrap().len(), 6);
    }

    #[test]
    fn two_rho_values() {
        let a3 = CartanDatum::type_a(3);
        assert_eq!(pairing_2rho(&a3, &[0, 2], 0).unwrap(), 2);
        assert_eq!(pairing_2rho(&a3, &[0, 2], 1).unwrap(), -2);
        assert_eq!(pairing_2rho(&a3, &[0, 2], 2).unwrap(), 2);
        assert_eq!(pairing_2rho(&a3, &[0], 1).unwrap(), -1);
    }

    #[test]
    fn a3_verdicts() {
        let a3 = CartanDatum::type_a(3);
        let id = DiagramMap::identity(3);
        assert!(validate_admissible(&a3, &[0, 2], &id).is_ok());
        assert!(validate_admissible(&a3, &[1], &swap13()).is_ok());
        let f = validate_admissible(&a3, &[0], &id).unwrap_err();
        assert!(matches!(f[0], AdmissibilityFailure::Condition3(_)));
        let f = validate_admissible(&a3, &[0, 1], &id).unwrap_err();
        assert!(f.iter().all(|x| matches!(x, AdmissibilityFailure::Condition2(_))));
    }

    #[test]
    fn theta_and_character() {
        let a3 = CartanDatum::type_a(3);
        let p = AdmissiblePair::build(&a3, &[1], &swap13()).unwrap();
        assert_eq!(p.theta(&[1, 0, 0]), vec![0, -1, -1]);
        let s = s_character(&p, None);
        assert_eq!(s.values[0], Scalar::i().neg());
        assert_eq!(s.values[1], Scalar::one());
        assert_eq!(s.values[2], Scalar::i());
        assert!(p.q_theta_basis().contains(&vec![1, 0, -1]) || p.q_theta_basis().contains(&vec![-1, 0, 1]));
    }

    #[test]
    fn parameter_sets() {
        let aff = CartanDatum::affine_sl2();
        let p = AdmissiblePair::build(&aff, &[], &DiagramMap::identity(2)).unwrap();
        let dom = p.parameter_domains();
        assert_eq!(dom.ins, vec![0, 1]);
        assert_eq!(dom.s_allowed, vec![0, 1]);
        assert!(dom.c_equal.is_empty());
        let a3 = CartanDatum::type_a(3);
        let p = AdmissiblePair::build(&a3, &[0, 2], &DiagramMap::identity(3)).unwrap();
        assert!(p.i_ns().is_empty());
    }

    #[test]
    fn enumeration_a2() {
        let a2 = CartanDatum::type_a(2);
        let orbits = enumerate_admissible(&a2, 10).unwrap();
        let all: Vec<&AdmissiblePair> = orbits.iter().flatten().collect();
        assert_eq!(all.len(), 3);
        assert_eq!(all.iter().filter(|p| p.is_degenerate()).count(), 1);
    }

    #[test]
    fn affinized_pairs_stay_admissible() {
        let a2 = CartanDatum::type_a(2);
        let (p, b) = AdmissiblePair::build(&a2, &[], &DiagramMap::identity(2)).unwrap().affinize().unwrap();
        assert_eq!(b, vec![1, 1, 1]);
        assert_eq!(p.tau, DiagramMap::identity(3));
        let a3 = CartanDatum::type_a(3);
        let (p, _) = AdmissiblePair::build(&a3, &[0, 2], &DiagramMap::identity(3)).unwrap().affinize().unwrap();
        assert_eq!(p.x, vec![1, 3]);
        let b2 = CartanDatum::from_matrix(vec![vec![2, -2], vec![-1, 2]]).unwrap();
        let g2 = CartanDatum::from_matrix(vec![vec![2, -1], vec![-3, 2]]).unwrap();
        for d in [CartanDatum::type_a(1), a2, a3, b2, g2] {
            for p in enumerate_admissible(&d, 8).unwrap().into_iter().flatten() {
                let (ap, b) = p.affinize().unwrap();
                assert_eq!(ap.tau.apply(0), 0);
                for i in 0..ap.rank() {
                    assert_eq!((0..ap.rank()).map(|j| b[j] * ap.datum.a[i][j]).sum::<i64>(), 0);
                }
            }
        }
    }
}
