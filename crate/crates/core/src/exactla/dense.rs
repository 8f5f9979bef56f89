use crate::field::Field;

/// Reduced row echelon form in place. Zero rows are dropped; the pivot
/// column of each remaining row is returned.
pub fn rref<K: Field>(k: &K, rows: &mut Vec<Vec<K::Elem>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !k.is_zero(&rows[i][c])) else { continue };
        rows.swap(r, p);
        let inv = k.inv(&rows[r][c]).expect("nonzero pivot");
        for x in rows[r].iter_mut().skip(c) {
            *x = k.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || k.is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for j in c..ncols {
                if !k.is_zero(&pivot_row[j]) {
                    row[j] = k.sub(&row[j], &k.mul(&f, &pivot_row[j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank<K: Field>(k: &K, rows: &[Vec<K::Elem>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(k, &mut m, ncols).len()
}

/// Basis of `{x : rows * x = 0}` in reduced echelon form.
pub fn kernel<K: Field>(k: &K, rows: &[Vec<K::Elem>], ncols: usize) -> Vec<Vec<K::Elem>> {
    let mut m = rows.to_vec();
    let pivots = rref(k, &mut m, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for f in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![k.zero(); ncols];
        v[f] = k.one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = k.neg(&row[f]);
        }
        basis.push(v);
    }
    rref(k, &mut basis, ncols);
    basis
}

/// Basis of `{c : sum_i c_i rows_i = 0}`.
pub fn left_kernel<K: Field>(k: &K, rows: &[Vec<K::Elem>], ncols: usize) -> Vec<Vec<K::Elem>> {
    let t = transpose(k, rows, ncols);
    kernel(k, &t, rows.len())
}

pub fn transpose<K: Field>(k: &K, rows: &[Vec<K::Elem>], ncols: usize) -> Vec<Vec<K::Elem>> {
    let mut t = vec![vec![k.zero(); rows.len()]; ncols];
    for (i, r) in rows.iter().enumerate() {
        for (j, x) in r.iter().enumerate() {
            t[j][i] = x.clone();
        }
    }
    t
}

/// Same row space.
pub fn span_eq<K: Field>(k: &K, a: &[Vec<K::Elem>], b: &[Vec<K::Elem>], ncols: usize) -> bool {
    let mut ra = a.to_vec();
    let mut rb = b.to_vec();
    rref(k, &mut ra, ncols);
    rref(k, &mut rb, ncols);
    ra == rb
}

/// Whether `span(a)` contains `span(b)`.
pub fn span_contains<K: Field>(k: &K, a: &[Vec<K::Elem>], b: &[Vec<K::Elem>], ncols: usize) -> bool {
    let ra = rank(k, a, ncols);
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    rank(k, &both, ncols) == ra
}

pub fn dot<K: Field>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> K::Elem {
    a.iter().zip(b).fold(k.zero(), |acc, (x, y)| k.mul_add(&acc, x, y))
}

/// Coordinates of `v` in terms of `basis`, if `v` lies in the span.
pub fn coordinates<K: Field>(k: &K, basis: &[Vec<K::Elem>], v: &[K::Elem]) -> Option<Vec<K::Elem>> {
    let n = v.len();
    let m = basis.len();
    // columns are basis vectors: solve B^T c = v
    let mut aug: Vec<Vec<K::Elem>> = (0..n)
        .map(|i| {
            let mut row: Vec<K::Elem> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    let pivots = rref(k, &mut aug, m + 1);
    if pivots.last() == Some(&m) {
        return None;
    }
    let mut c = vec![k.zero(); m];
    for (row, &p) in aug.iter().zip(&pivots) {
        c[p] = row[m].clone();
    }
    Some(c)
}

/// Incrementally maintained reduced echelon basis of dense vectors.
#[derive(Clone, Debug)]
pub struct Echelon<K: Field> {
    field: K,
    ncols: usize,
    rows: Vec<Vec<K::Elem>>,
    pivots: Vec<usize>,
}

impl<K: Field> Echelon<K> {
    pub fn new(field: K, ncols: usize) -> Self {
        Echelon { field, ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<K::Elem>] {
        &self.rows
    }

    pub fn reduce(&self, v: &[K::Elem]) -> Vec<K::Elem> {
        let k = &self.field;
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !k.is_zero(&v[p]) {
                let f = v[p].clone();
                for j in p..self.ncols {
                    if !k.is_zero(&row[j]) {
                        v[j] = k.sub(&v[j], &k.mul(&f, &row[j]));
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[K::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Returns `true` if `v` was independent of the current rows.
    pub fn insert(&mut self, v: &[K::Elem]) -> bool {
        let k = self.field.clone();
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !k.is_zero(x)) else { return false };
        let inv = k.inv(&r[p]).expect("nonzero");
        for x in r.iter_mut() {
            *x = k.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            if !k.is_zero(&row[p]) {
                let f = row[p].clone();
                for j in p..self.ncols {
                    row[j] = k.sub(&row[j], &k.mul(&f, &r[j]));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }
}
