use std::collections::BTreeMap;

use crate::field::Field;

/// Sparse vector: index to nonzero coefficient.
pub type SparseVec<E> = BTreeMap<usize, E>;

/// Subtract `f * row` from `v`, dropping cancelled entries.
pub fn axpy_neg<K: Field>(k: &K, v: &mut SparseVec<K::Elem>, f: &K::Elem, row: &SparseVec<K::Elem>) {
    for (j, a) in row {
        let d = k.mul(f, a);
        match v.get_mut(j) {
            Some(x) => {
                *x = k.sub(x, &d);
                if k.is_zero(x) {
                    v.remove(j);
                }
            }
            None => {
                v.insert(*j, k.neg(&d));
            }
        }
    }
}

/// Echelon basis of sparse vectors, pivot = smallest index, leading
/// coefficient one. Rows are not back-substituted.
#[derive(Clone, Debug)]
pub struct SparseEchelon<K: Field> {
    field: K,
    rows: BTreeMap<usize, SparseVec<K::Elem>>,
}

impl<K: Field> SparseEchelon<K> {
    pub fn new(field: K) -> Self {
        SparseEchelon { field, rows: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<K::Elem>> {
        self.rows.values()
    }

    pub fn reduce(&self, v: &SparseVec<K::Elem>) -> SparseVec<K::Elem> {
        let mut v = v.clone();
        let mut cursor = 0;
        loop {
            let hit = v.range(cursor..).find(|(i, _)| self.rows.contains_key(i)).map(|(i, c)| (*i, c.clone()));
            let Some((p, c)) = hit else { break };
            axpy_neg(&self.field, &mut v, &c, &self.rows[&p]);
            cursor = p + 1;
        }
        v
    }

    pub fn contains(&self, v: &SparseVec<K::Elem>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Returns the new pivot if `v` was independent.
    pub fn insert(&mut self, v: &SparseVec<K::Elem>) -> Option<usize> {
        let k = &self.field;
        let r = self.reduce(v);
        let (&p, lead) = r.iter().next()?;
        let inv = k.inv(lead).expect("nonzero");
        let r: SparseVec<K::Elem> = r.into_iter().map(|(i, x)| (i, k.mul(&x, &inv))).collect();
        self.rows.insert(p, r);
        Some(p)
    }
}
