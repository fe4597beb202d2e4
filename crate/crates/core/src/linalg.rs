//! Sparse exact linear algebra over Q(i)(q).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::scalar::Scalar;

/// Sparse vector indexed by `K`.
pub type SparseVec<K> = BTreeMap<K, Scalar>;

fn axpy<K: Ord + Clone>(v: &mut SparseVec<K>, a: &Scalar, w: &SparseVec<K>) {
    for (k, x) in w {
        let t = a * x;
        match v.get_mut(k) {
            Some(y) => {
                *y += &t;
                if y.is_zero() {
                    v.remove(k);
                }
            }
            None => {
                if !t.is_zero() {
                    v.insert(k.clone(), t);
                }
            }
        }
    }
}

/// Row echelon form built incrementally; each stored row has a distinct
/// pivot (its largest key) with coefficient one and no other row has a
/// nonzero entry at that pivot.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` modulo the stored span.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut r = v.clone();
        loop {
            let hit = r.keys().rev().find(|k| self.rows.contains_key(*k)).cloned();
            match hit {
                Some(k) => {
                    let a = r[&k].neg();
                    axpy(&mut r, &a, &self.rows[&k]);
                }
                None => return r,
            }
        }
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns whether it was independent of the stored rows.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let r = self.reduce(v);
        self.insert_reduced(r).is_some()
    }

    fn insert_reduced(&mut self, r: SparseVec<K>) -> Option<K> {
        let (p, lead) = r.iter().next_back().map(|(k, x)| (k.clone(), x.clone()))?;
        let inv = lead.inv().expect("pivot is nonzero");
        let row: SparseVec<K> = r.into_iter().map(|(k, x)| (k, &x * &inv)).collect();
        for other in self.rows.values_mut() {
            if let Some(a) = other.get(&p).cloned() {
                axpy(other, &a.neg(), &row);
            }
        }
        self.rows.insert(p.clone(), row);
        Some(p)
    }
}

/// Basis of `{a : Σ_x a_x v_x = 0}` for the given vectors.
pub fn kernel<K: Ord + Clone>(vectors: &[SparseVec<K>]) -> Vec<SparseVec<usize>> {
    // Rows carry their expression in the original vectors.
    let mut rows: BTreeMap<K, (SparseVec<K>, SparseVec<usize>)> = BTreeMap::new();
    let mut out = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let mut r = v.clone();
        let mut combo: SparseVec<usize> = BTreeMap::new();
        combo.insert(idx, Scalar::one());
        loop {
            let hit = r.keys().rev().find(|k| rows.contains_key(*k)).cloned();
            match hit {
                Some(k) => {
                    let a = r[&k].neg();
                    let (row, rc) = &rows[&k];
                    axpy(&mut r, &a, row);
                    axpy(&mut combo, &a, rc);
                }
                None => break,
            }
        }
        match r.iter().next_back().map(|(k, x)| (k.clone(), x.clone())) {
            None => out.push(combo),
            Some((p, lead)) => {
                let inv = lead.inv().expect("pivot is nonzero");
                let row = r.into_iter().map(|(k, x)| (k, &x * &inv)).collect();
                let rc = combo.into_iter().map(|(k, x)| (k, &x * &inv)).collect();
                rows.insert(p, (row, rc));
            }
        }
    }
    out
}

/// Rank of a family of vectors.
pub fn rank<K: Ord + Clone>(vectors: &[SparseVec<K>]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}
