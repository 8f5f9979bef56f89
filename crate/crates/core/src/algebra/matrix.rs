use crate::exactla::SparseVec;
use crate::field::Field;

/// Square sparse matrix, row-major, columns sorted, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<E> {
    n: usize,
    rows: Vec<Vec<(usize, E)>>,
}

impl<E: Clone> SparseMatrix<E> {
    pub fn zero(n: usize) -> Self {
        SparseMatrix { n, rows: vec![Vec::new(); n] }
    }

    pub fn identity<K: Field<Elem = E>>(k: &K, n: usize) -> Self {
        SparseMatrix { n, rows: (0..n).map(|i| vec![(i, k.one())]).collect() }
    }

    /// Sums duplicate entries.
    pub fn from_entries<K: Field<Elem = E>>(
        k: &K,
        n: usize,
        entries: impl IntoIterator<Item = (usize, usize, E)>,
    ) -> Self {
        let mut acc: Vec<std::collections::BTreeMap<usize, E>> = vec![Default::default(); n];
        for (r, c, v) in entries {
            let slot = acc[r].entry(c).or_insert_with(|| k.zero());
            *slot = k.add(slot, &v);
        }
        let rows = acc.into_iter().map(|m| m.into_iter().filter(|(_, v)| !k.is_zero(v)).collect()).collect();
        SparseMatrix { n, rows }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn row(&self, r: usize) -> &[(usize, E)] {
        &self.rows[r]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &E)> {
        self.rows.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn get<K: Field<Elem = E>>(&self, k: &K, r: usize, c: usize) -> E {
        match self.rows[r].binary_search_by_key(&c, |(j, _)| *j) {
            Ok(i) => self.rows[r][i].1.clone(),
            Err(_) => k.zero(),
        }
    }

    pub fn mul<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut scratch: Vec<Option<E>> = vec![None; self.n];
        let mut touched = Vec::new();
        let mut rows = Vec::with_capacity(self.n);
        for row in &self.rows {
            for (mid, a) in row {
                for (c, b) in &other.rows[*mid] {
                    let prod = k.mul(a, b);
                    match &mut scratch[*c] {
                        Some(x) => *x = k.add(x, &prod),
                        slot @ None => {
                            *slot = Some(prod);
                            touched.push(*c);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for &c in &touched {
                let v = scratch[c].take().expect("touched");
                if !k.is_zero(&v) {
                    out.push((c, v));
                }
            }
            touched.clear();
            rows.push(out);
        }
        SparseMatrix { n: self.n, rows }
    }

    pub fn add<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> Self {
        Self::from_entries(k, self.n, self.entries().chain(other.entries()).map(|(r, c, v)| (r, c, v.clone())))
    }

    pub fn scale<K: Field<Elem = E>>(&self, k: &K, s: &E) -> Self {
        Self::from_entries(k, self.n, self.entries().map(|(r, c, v)| (r, c, k.mul(v, s))))
    }

    pub fn sub<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> Self {
        self.add(k, &other.scale(k, &k.neg(&k.one())))
    }

    pub fn apply<K: Field<Elem = E>>(&self, k: &K, x: &[E]) -> Vec<E> {
        self.rows.iter().map(|row| row.iter().fold(k.zero(), |acc, (c, v)| k.mul_add(&acc, v, &x[*c]))).collect()
    }

    pub fn trace<K: Field<Elem = E>>(&self, k: &K) -> E {
        (0..self.n).fold(k.zero(), |acc, i| k.add(&acc, &self.get(k, i, i)))
    }

    /// `tr(self * other)` without forming the product.
    pub fn trace_of_product<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> E {
        let mut acc = k.zero();
        for (r, row) in self.rows.iter().enumerate() {
            for (c, a) in row {
                let b = other.get(k, *c, r);
                if !k.is_zero(&b) {
                    acc = k.mul_add(&acc, a, &b);
                }
            }
        }
        acc
    }

    /// Entries keyed by `row * n + col`.
    pub fn to_flat(&self) -> SparseVec<E> {
        self.entries().map(|(r, c, v)| (r * self.n + c, v.clone())).collect()
    }

    pub fn from_flat(n: usize, flat: &SparseVec<E>) -> Self {
        let mut rows = vec![Vec::new(); n];
        for (&i, v) in flat {
            rows[i / n].push((i % n, v.clone()));
        }
        SparseMatrix { n, rows }
    }

    /// `P M P^{-1}` for the permutation `P e_i = e_{perm[i]}`.
    pub fn conjugate(&self, perm: &[usize]) -> Self {
        let mut rows = vec![Vec::new(); self.n];
        for (r, c, v) in self.entries() {
            rows[perm[r]].push((perm[c], v.clone()));
        }
        for row in rows.iter_mut() {
            row.sort_by_key(|(c, _)| *c);
        }
        SparseMatrix { n: self.n, rows }
    }

    /// Submatrix on the given indices, as a dense matrix.
    pub fn dense_block<K: Field<Elem = E>>(&self, k: &K, idx: &[usize]) -> Vec<Vec<E>> {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &x) in idx.iter().enumerate() {
            pos[x] = i;
        }
        let mut out = vec![vec![k.zero(); idx.len()]; idx.len()];
        for (i, &r) in idx.iter().enumerate() {
            for (c, v) in &self.rows[r] {
                if pos[*c] != usize::MAX {
                    out[i][pos[*c]] = v.clone();
                }
            }
        }
        out
    }
}
