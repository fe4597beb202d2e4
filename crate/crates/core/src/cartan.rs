//! Generalized Cartan matrices, symmetrizers, the bilinear form on the root
//! lattice, diagram automorphisms, root systems of finite type, affinization
//! and the doubling construction for generalized intersection matrices.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Element of the root lattice in the basis of simple roots (or of the coroot
/// lattice in the basis `h_i`).
pub type RootVector = Vec<i64>;

/// Type of a connected component of the Dynkin diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentType {
    Finite,
    Affine,
    Indefinite,
}

/// Symmetrizable generalized Cartan matrix with `a[i][j] = alpha_j(h_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanDatum {
    pub labels: Vec<String>,
    pub a: Vec<Vec<i64>>,
    pub eps: Vec<i64>,
}

/// A permutation of the index set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiagramMap {
    pub perm: Vec<usize>,
}

impl DiagramMap {
    pub fn identity(n: usize) -> Self {
        DiagramMap { perm: (0..n).collect() }
    }

    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &DiagramMap) -> DiagramMap {
        DiagramMap { perm: other.perm.iter().map(|&i| self.perm[i]).collect() }
    }

    pub fn inverse(&self) -> DiagramMap {
        let mut inv = vec![0; self.perm.len()];
        for (i, &j) in self.perm.iter().enumerate() {
            inv[j] = i;
        }
        DiagramMap { perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }

    /// Action on the root lattice: `alpha_i -> alpha_{perm(i)}`.
    pub fn apply_root(&self, beta: &[i64]) -> RootVector {
        let mut out = vec![0; beta.len()];
        for (i, &b) in beta.iter().enumerate() {
            out[self.perm[i]] += b;
        }
        out
    }

    pub fn apply_set(&self, x: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = x.iter().map(|&i| self.perm[i]).collect();
        v.sort_unstable();
        v
    }
}

/// Generalized intersection matrix: positive off-diagonal entries allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GimMatrix {
    pub labels: Vec<String>,
    pub a: Vec<Vec<i64>>,
    pub eps: Vec<i64>,
}

pub fn unit(n: usize, i: usize) -> RootVector {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

pub fn add(a: &[i64], b: &[i64]) -> RootVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> RootVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[i64]) -> RootVector {
    a.iter().map(|x| -x).collect()
}

pub fn scale(a: &[i64], k: i64) -> RootVector {
    a.iter().map(|x| x * k).collect()
}

pub fn height(a: &[i64]) -> i64 {
    a.iter().sum()
}

pub fn is_nonneg(a: &[i64]) -> bool {
    a.iter().all(|&x| x >= 0)
}

fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|k| alloc::format!("{k}")).collect()
}

/// Solves `eps_i a_ij = eps_j a_ji` with coprime positive integers per component.
fn symmetrizer(a: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = a.len();
    let mut eps: Vec<Option<BigRational>> = vec![None; n];
    for root in 0..n {
        if eps[root].is_some() {
            continue;
        }
        eps[root] = Some(BigRational::one());
        let mut comp = vec![root];
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                let ej = eps[i].clone().unwrap() * BigRational::new(a[i][j].into(), a[j][i].into());
                match &eps[j] {
                    None => {
                        if !ej.is_positive() {
                            return Err(Error::NotSymmetrizable);
                        }
                        eps[j] = Some(ej);
                        comp.push(j);
                        stack.push(j);
                    }
                    Some(e) => {
                        if *e != ej {
                            return Err(Error::NotSymmetrizable);
                        }
                    }
                }
            }
        }
        let mut l = BigInt::one();
        for &i in &comp {
            l = l.lcm(eps[i].as_ref().unwrap().denom());
        }
        let mut ints: Vec<BigInt> =
            comp.iter().map(|&i| (eps[i].clone().unwrap() * BigRational::from_integer(l.clone())).to_integer()).collect();
        let mut g = BigInt::zero();
        for x in &ints {
            g = g.gcd(x);
        }
        for x in ints.iter_mut() {
            *x = &*x / &g;
        }
        for (k, &i) in comp.iter().enumerate() {
            eps[i] = Some(BigRational::from_integer(ints[k].clone()));
        }
    }
    Ok(eps
        .into_iter()
        .map(|e| i64::try_from(e.unwrap().to_integer()).expect("symmetrizer entry too large"))
        .collect())
}

/// Determinant of an integer matrix by fraction-free elimination.
pub fn det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn submatrix(m: &[Vec<i64>], idx: &[usize]) -> Vec<Vec<i64>> {
    idx.iter().map(|&i| idx.iter().map(|&j| m[i][j]).collect()).collect()
}

fn positive_definite(s: &[Vec<i64>]) -> bool {
    (1..=s.len()).all(|k| {
        let idx: Vec<usize> = (0..k).collect();
        det(&submatrix(s, &idx)).is_positive()
    })
}

impl CartanDatum {
    /// Checks the GCM axioms and computes the symmetrizer.
    pub fn new(labels: Vec<String>, a: Vec<Vec<i64>>) -> Result<Self> {
        let n = a.len();
        if labels.len() != n {
            return Err(Error::NotGcm(String::from("label count differs from matrix size")));
        }
        for (i, row) in a.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotGcm(String::from("matrix is not square")));
            }
            if row[i] != 2 {
                return Err(Error::NotGcm(alloc::format!("diagonal entry a_{i}{i} is not 2")));
            }
            for j in 0..n {
                if i != j && row[j] > 0 {
                    return Err(Error::NotGcm(alloc::format!("positive off-diagonal entry at ({i},{j})")));
                }
                if (row[j] == 0) != (a[j][i] == 0) {
                    return Err(Error::NotGcm(alloc::format!("zero pattern not symmetric at ({i},{j})")));
                }
            }
        }
        let eps = symmetrizer(&a)?;
        Ok(CartanDatum { labels, a, eps })
    }

    /// Same as [`CartanDatum::new`] with labels `1..n`.
    pub fn from_matrix(a: Vec<Vec<i64>>) -> Result<Self> {
        let n = a.len();
        CartanDatum::new(default_labels(n), a)
    }

    pub fn with_labels(labels: &[&str], a: Vec<Vec<i64>>) -> Result<Self> {
        CartanDatum::new(labels.iter().map(|s| String::from(*s)).collect(), a)
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Finite type A_n, labels 1..n.
    pub fn type_a(n: usize) -> Self {
        let mut a = vec![vec![0; n]; n];
        for i in 0..n {
            a[i][i] = 2;
            if i + 1 < n {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
        }
        CartanDatum::from_matrix(a).unwrap()
    }

    /// Affine sl2 with labels 0, 1.
    pub fn affine_sl2() -> Self {
        CartanDatum::with_labels(&["0", "1"], vec![vec![2, -2], vec![-2, 2]]).unwrap()
    }

    /// `(alpha_i, alpha_j) = eps_i a_ij` extended bilinearly.
    pub fn bilinear(&self, beta: &[i64], gamma: &[i64]) -> i64 {
        let n = self.rank();
        let mut acc = 0;
        for i in 0..n {
            if beta[i] == 0 {
                continue;
            }
            for j in 0..n {
                acc += beta[i] * gamma[j] * self.eps[i] * self.a[i][j];
            }
        }
        acc
    }

    /// `(alpha_i, alpha_j)`.
    pub fn form(&self, i: usize, j: usize) -> i64 {
        self.eps[i] * self.a[i][j]
    }

    /// `beta(h_i) = sum_j beta_j a_ij`.
    pub fn pair(&self, beta: &[i64], i: usize) -> i64 {
        beta.iter().enumerate().map(|(j, &b)| b * self.a[i][j]).sum()
    }

    /// `alpha_j(h)` for a coroot vector `h = sum_i x_i h_i`.
    pub fn pair_coroot(&self, h: &[i64], j: usize) -> i64 {
        h.iter().enumerate().map(|(i, &x)| x * self.a[i][j]).sum()
    }

    /// Simple reflection on the root lattice.
    pub fn reflect(&self, i: usize, beta: &[i64]) -> RootVector {
        let mut out = beta.to_vec();
        out[i] -= self.pair(beta, i);
        out
    }

    /// Simple reflection on the coroot lattice: `h - alpha_i(h) h_i`.
    pub fn reflect_coroot(&self, i: usize, h: &[i64]) -> RootVector {
        let mut out = h.to_vec();
        out[i] -= self.pair_coroot(h, i);
        out
    }

    /// Symmetrized matrix `(eps_i a_ij)`.
    pub fn symmetrized(&self) -> Vec<Vec<i64>> {
        (0..self.rank()).map(|i| (0..self.rank()).map(|j| self.form(i, j)).collect()).collect()
    }

    /// Connected components of the Dynkin graph restricted to `subset`.
    pub fn components_of(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &r in subset {
            if seen.contains(&r) {
                continue;
            }
            let mut comp = vec![r];
            seen.insert(r);
            let mut stack = vec![r];
            while let Some(i) = stack.pop() {
                for &j in subset {
                    if self.a[i][j] != 0 && !seen.contains(&j) {
                        seen.insert(j);
                        comp.push(j);
                        stack.push(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.rank()).collect();
        self.components_of(&all)
    }

    pub fn is_indecomposable(&self) -> bool {
        self.components().len() == 1
    }

    fn component_type(&self, comp: &[usize]) -> ComponentType {
        let s = submatrix(&self.symmetrized(), comp);
        if positive_definite(&s) {
            return ComponentType::Finite;
        }
        if det(&s).is_zero() {
            let proper_finite = (0..comp.len()).all(|k| {
                let idx: Vec<usize> = (0..comp.len()).filter(|&r| r != k).collect();
                positive_definite(&submatrix(&s, &idx))
            });
            if proper_finite {
                return ComponentType::Affine;
            }
        }
        ComponentType::Indefinite
    }

    /// Types of the connected components, in the order of [`CartanDatum::components`].
    pub fn classify(&self) -> Vec<(Vec<usize>, ComponentType)> {
        self.components().into_iter().map(|c| {
            let t = self.component_type(&c);
            (c, t)
        }).collect()
    }

    pub fn is_finite_type(&self) -> bool {
        self.classify().iter().all(|(_, t)| *t == ComponentType::Finite)
    }

    /// True iff the symmetrized principal submatrix on `x` is positive definite.
    pub fn finite_type_subset(&self, x: &[usize]) -> bool {
        positive_definite(&submatrix(&self.symmetrized(), x))
    }

    /// All permutations preserving the matrix, found by backtracking.
    pub fn aut(&self, cap: usize) -> Result<Vec<DiagramMap>> {
        let n = self.rank();
        if n > cap {
            return Err(Error::IndexSetTooLarge(n));
        }
        let mut out = Vec::new();
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.aut_rec(0, &mut perm, &mut used, &mut out);
        out.sort();
        Ok(out)
    }

    fn aut_rec(&self, k: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<DiagramMap>) {
        let n = self.rank();
        if k == n {
            out.push(DiagramMap { perm: perm.clone() });
            return;
        }
        for t in 0..n {
            if used[t] {
                continue;
            }
            let ok = (0..k).all(|j| self.a[t][perm[j]] == self.a[k][j] && self.a[perm[j]][t] == self.a[j][k])
                && self.a[t][t] == self.a[k][k];
            if ok {
                perm[k] = t;
                used[t] = true;
                self.aut_rec(k + 1, perm, used, out);
                used[t] = false;
            }
        }
        perm[k] = usize::MAX;
    }

    pub fn preserves(&self, sigma: &DiagramMap) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| self.a[sigma.apply(i)][sigma.apply(j)] == self.a[i][j]))
    }

    /// Positive roots of the finite-type subsystem on `x`, by height saturation
    /// using root strings.  Ordered by height, then lexicographically.
    pub fn positive_roots(&self, x: &[usize]) -> Result<Vec<RootVector>> {
        if !self.finite_type_subset(x) {
            return Err(Error::NotFiniteType);
        }
        let n = self.rank();
        let mut roots: Vec<RootVector> = x.iter().map(|&i| unit(n, i)).collect();
        let mut set: BTreeSet<RootVector> = roots.iter().cloned().collect();
        let mut layer = roots.clone();
        while !layer.is_empty() {
            let mut next = BTreeSet::new();
            for beta in &layer {
                for &i in x {
                    if *beta == unit(n, i) {
                        continue;
                    }
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if set.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let qv = p - self.pair(beta, i);
                    if qv > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !set.contains(&up) {
                            next.insert(up);
                        }
                    }
                }
            }
            layer = next.into_iter().collect();
            for r in &layer {
                set.insert(r.clone());
                roots.push(r.clone());
            }
        }
        Ok(roots)
    }

    /// Highest root of an indecomposable finite-type datum.
    pub fn highest_root(&self) -> Result<RootVector> {
        if !self.is_indecomposable() {
            return Err(Error::NotIndecomposable);
        }
        let all: Vec<usize> = (0..self.rank()).collect();
        let roots = self.positive_roots(&all)?;
        Ok(roots.iter().max_by_key(|r| height(r)).unwrap().clone())
    }

    /// Coroot `beta^vee` of a real root in the basis `h_i`.
    pub fn coroot(&self, beta: &[i64]) -> RootVector {
        let bb = self.bilinear(beta, beta);
        beta.iter()
            .enumerate()
            .map(|(j, &b)| {
                let num = 2 * b * self.eps[j];
                debug_assert!(num % bb == 0);
                num / bb
            })
            .collect()
    }

    /// Untwisted affinization: new node `0` placed first.  Returns the affine
    /// datum and the marks `b` with `b_0 = 1` and `sum_j b_j a_ij = 0`.
    pub fn affinize(&self) -> Result<(CartanDatum, Vec<i64>)> {
        if !self.is_indecomposable() {
            return Err(Error::NotIndecomposable);
        }
        if !self.is_finite_type() {
            return Err(Error::NotFiniteType);
        }
        let n = self.rank();
        let theta = self.highest_root()?;
        let theta_co = self.coroot(&theta);
        let mut a = vec![vec![0; n + 1]; n + 1];
        a[0][0] = 2;
        for i in 0..n {
            for j in 0..n {
                a[i + 1][j + 1] = self.a[i][j];
            }
            // a_{i0} = alpha_0(h_i) = -theta(h_i), a_{0i} = alpha_i(h_0) = -alpha_i(theta^vee)
            a[i + 1][0] = -self.pair(&theta, i);
            a[0][i + 1] = -self.pair_coroot(&theta_co, i);
        }
        let mut labels = vec![String::from("0")];
        labels.extend(self.labels.iter().cloned());
        if self.labels.iter().any(|l| l == "0") {
            return Err(Error::NotGcm(String::from("label 0 already in use")));
        }
        let aff = CartanDatum::new(labels, a)?;
        let mut b = vec![1];
        b.extend(theta.iter().cloned());
        Ok((aff, b))
    }
}

impl GimMatrix {
    pub fn new(labels: Vec<String>, a: Vec<Vec<i64>>) -> Result<Self> {
        let n = a.len();
        if labels.len() != n || a.iter().any(|r| r.len() != n) {
            return Err(Error::NotGcm(String::from("matrix is not square or labels mismatch")));
        }
        for i in 0..n {
            if a[i][i] != 2 {
                return Err(Error::NotGcm(alloc::format!("diagonal entry a_{i}{i} is not 2")));
            }
            for j in 0..n {
                if a[i][j].signum() != a[j][i].signum() {
                    return Err(Error::NotGcm(alloc::format!("sign pattern not symmetric at ({i},{j})")));
                }
            }
        }
        let eps = symmetrizer(&a)?;
        Ok(GimMatrix { labels, a, eps })
    }

    pub fn from_matrix(a: Vec<Vec<i64>>) -> Result<Self> {
        let n = a.len();
        GimMatrix::new(default_labels(n), a)
    }

    /// The doubled GCM `C(A)` on `I ∪ Ī` (bar labels get a trailing `'`),
    /// the swap `σ`, and whether `C(A)` is indecomposable.
    pub fn double(&self) -> (CartanDatum, DiagramMap, bool) {
        let n = self.a.len();
        let mut c = vec![vec![0; 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                let aij = self.a[i][j];
                if i == j {
                    c[i][i] = 2;
                    c[i + n][i + n] = 2;
                } else if aij <= 0 {
                    c[i][j] = aij;
                    c[i + n][j + n] = aij;
                } else {
                    c[i][j + n] = -aij;
                    c[i + n][j] = -aij;
                }
            }
        }
        let mut labels = self.labels.clone();
        labels.extend(self.labels.iter().map(|l| alloc::format!("{l}'")));
        let datum = CartanDatum::new(labels, c).expect("doubling yields a symmetrizable GCM");
        let perm = (0..2 * n).map(|k| if k < n { k + n } else { k - n }).collect();
        let unoriented = datum.is_indecomposable();
        (datum, DiagramMap { perm }, unoriented)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetrizers() {
        let a2 = CartanDatum::from_matrix(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(a2.eps, vec![1, 1]);
        assert!(a2.is_finite_type());
        let g2 = CartanDatum::from_matrix(vec![vec![2, -1], vec![-3, 2]]).unwrap();
        assert_eq!(g2.eps, vec![3, 1]);
        let aff = CartanDatum::affine_sl2();
        assert_eq!(aff.classify()[0].1, ComponentType::Affine);
        assert!(CartanDatum::from_matrix(vec![vec![2, 1], vec![1, 2]]).is_err());
        let bad = CartanDatum::from_matrix(vec![
            vec![2, -1, -1],
            vec![-2, 2, -1],
            vec![-1, -1, 2],
        ]);
        assert_eq!(bad, Err(Error::NotSymmetrizable));
    }

    #[test]
    fn bilinear_values() {
        let a2 = CartanDatum::type_a(2);
        assert_eq!(a2.bilinear(&[1, 0], &[1, 0]), 2);
        assert_eq!(a2.bilinear(&[1, 0], &[0, 1]), -1);
    }

    #[test]
    fn highest_roots() {
        assert_eq!(CartanDatum::type_a(3).highest_root().unwrap(), vec![1, 1, 1]);
        let b2 = CartanDatum::from_matrix(vec![vec![2, -2], vec![-1, 2]]).unwrap();
        assert_eq!(b2.positive_roots(&[0, 1]).unwrap().len(), 4);
        let g2 = CartanDatum::from_matrix(vec![vec![2, -1], vec![-3, 2]]).unwrap();
        assert_eq!(g2.positive_roots(&[0, 1]).unwrap().len(), 6);
    }

    #[test]
    fn affinization() {
        let (aff, b) = CartanDatum::type_a(1).affinize().unwrap();
        assert_eq!(aff.a, vec![vec![2, -2], vec![-2, 2]]);
        assert_eq!(b, vec![1, 1]);
        let b2 = CartanDatum::from_matrix(vec![vec![2, -2], vec![-1, 2]]).unwrap();
        let (aff, b) = b2.affinize().unwrap();
        for i in 0..aff.rank() {
            assert_eq!((0..aff.rank()).map(|j| b[j] * aff.a[i][j]).sum::<i64>(), 0);
        }
        assert_eq!(aff.classify()[0].1, ComponentType::Affine);
    }
}
