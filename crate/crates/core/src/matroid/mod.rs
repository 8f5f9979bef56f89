//! Unimodular arrangements and their matroids.
//!
//! An [`Arrangement`] is a saturated sublattice `V` of `Z^n` all of whose
//! maximal minors are `0` or `±1`, stored by a generator matrix in Hermite
//! normal form. Its matroid is the column matroid of that matrix. Subsets
//! are always expressed in the labels of the top-level ground set, so a
//! minor keeps the names of its elements.

mod graph;
mod poset;

pub use graph::from_graph;
pub use poset::CyclicFlatPoset;

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exactla::{
    determinant, elementary_divisors, for_each_combination, hermite_normal_form, integer_kernel, IntMatrix,
};
use crate::subset::{Subset, MAX_ELEMENTS};

/// Default cap on the ground set size; see [`max_ground`].
pub const DEFAULT_MAX_GROUND: usize = 24;

/// Ground-set cap: `MATSCHUR_MAX_GROUND` if set, else 24. Never above 64.
pub fn max_ground() -> usize {
    std::env::var("MATSCHUR_MAX_GROUND")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_GROUND)
        .min(MAX_ELEMENTS)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("ground set has {n} elements; the limit is {max} (set MATSCHUR_MAX_GROUND to raise it)")]
    TooLarge { n: usize, max: usize },
    #[error("row lattice is not saturated (elementary divisors {divisors:?})")]
    NotSaturated { divisors: Vec<String> },
    #[error("not unimodular: columns {columns} have determinant {det}")]
    NotUnimodular { columns: Subset, det: String },
    #[error("{}", degenerate_message(.loops, .coloops))]
    Degenerate { loops: Subset, coloops: Subset },
    #[error("graph edge {edge} is a self-loop")]
    SelfLoop { edge: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph edge {edge} mentions vertex {vertex}, outside 1..={vertices}")]
    BadVertex { edge: usize, vertex: usize, vertices: usize },
    #[error("{0} is not a flat")]
    NotAFlat(Subset),
    #[error("minor needs upper {upper} contained in lower {lower}")]
    NotNested { lower: Subset, upper: Subset },
}

fn degenerate_message(loops: &Subset, coloops: &Subset) -> String {
    let mut parts = Vec::new();
    if !coloops.is_empty() {
        parts.push(format!("has coloop {}", join_labels(*coloops)));
    }
    if !loops.is_empty() {
        parts.push(format!("has loop {}", join_labels(*loops)));
    }
    parts.join("; ")
}

fn join_labels(s: Subset) -> String {
    s.labels().iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

// Column ranks are computed modulo this prime. For a unimodular lattice the
// column matroid is the same over every field, so nothing is lost.
const RANK_PRIME: u64 = 2_147_483_647;

/// A unimodular lattice `V` inside `Z^ground`.
#[derive(Clone, Debug)]
pub struct Arrangement {
    ground: Subset,
    columns: Vec<usize>,
    gens: IntMatrix,
    bases: Vec<Subset>,
    basis_set: HashSet<Subset>,
    residues: Vec<Vec<u64>>,
}

impl PartialEq for Arrangement {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.gens == other.gens
    }
}

impl Eq for Arrangement {}

impl Arrangement {
    /// The row lattice of `a`, whose columns are the elements `0..n`.
    ///
    /// Dependent rows are discarded. Fails unless the lattice is saturated,
    /// unimodular, and its matroid has neither loops nor coloops.
    pub fn from_matrix(a: &IntMatrix) -> Result<Self, ArrangementError> {
        let n = a.ncols();
        let max = max_ground();
        if n > max {
            return Err(ArrangementError::TooLarge { n, max });
        }
        let arr = Self::from_lattice(Subset::full(n), a)?;
        let loops: Subset = arr.columns.iter().copied().filter(|&i| arr.rank(Subset::singleton(i)) == 0).collect();
        let coloops: Subset =
            arr.columns.iter().copied().filter(|&i| arr.bases.iter().all(|b| b.contains(i))).collect();
        if !loops.is_empty() || !coloops.is_empty() {
            return Err(ArrangementError::Degenerate { loops, coloops });
        }
        Ok(arr)
    }

    /// Convenience wrapper around [`from_matrix`](Self::from_matrix).
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, ArrangementError> {
        Self::from_matrix(&IntMatrix::from_rows(rows))
    }

    /// Row lattice of `a` whose columns are labelled by the elements of
    /// `ground` in increasing order. No loop or coloop check.
    pub fn from_lattice(ground: Subset, a: &IntMatrix) -> Result<Self, ArrangementError> {
        assert_eq!(a.ncols(), ground.len(), "column count must match the ground set");
        let gens = hermite_normal_form(a).basis();
        let divisors = elementary_divisors(&gens);
        if divisors.iter().any(|d| !d.is_one()) {
            return Err(ArrangementError::NotSaturated {
                divisors: divisors.iter().map(ToString::to_string).collect(),
            });
        }
        let columns = ground.to_vec();
        let d = gens.nrows();
        let mut bases = Vec::new();
        let mut bad = None;
        let small = gens.to_i64_rows();
        for_each_combination(columns.len(), d, |cols| {
            let det = match &small {
                Some(rows) => small_det(rows, cols).unwrap_or_else(|| determinant(&gens.select_columns(cols))),
                None => determinant(&gens.select_columns(cols)),
            };
            if det.is_zero() {
                return true;
            }
            let s: Subset = cols.iter().map(|&c| columns[c]).collect();
            if det.abs() > BigInt::one() {
                bad = Some((s, det));
                return false;
            }
            bases.push(s);
            true
        });
        if let Some((columns, det)) = bad {
            return Err(ArrangementError::NotUnimodular { columns, det: det.to_string() });
        }
        bases.sort();
        let basis_set = bases.iter().copied().collect();
        let p = BigInt::from(RANK_PRIME);
        let residues = (0..columns.len())
            .map(|c| {
                (0..d)
                    .map(|r| {
                        let x = gens.get(r, c) % &p;
                        let x = if x.is_negative() { x + &p } else { x };
                        x.to_u64().expect("residue")
                    })
                    .collect()
            })
            .collect();
        Ok(Arrangement { ground, columns, gens, bases, basis_set, residues })
    }

    pub fn ground(&self) -> Subset {
        self.ground
    }

    /// Ground elements in column order.
    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    /// Generator matrix, rows a basis of `V` in Hermite normal form.
    pub fn generators(&self) -> &IntMatrix {
        &self.gens
    }

    pub fn rank_total(&self) -> usize {
        self.gens.nrows()
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Column index of ground element `i`.
    pub fn column_of(&self, i: usize) -> usize {
        debug_assert!(self.ground.contains(i));
        self.ground.rank_of(i)
    }

    pub fn column_indices(&self, s: Subset) -> Vec<usize> {
        s.iter().map(|i| self.column_of(i)).collect()
    }

    /// Bases in lexicographic order.
    pub fn bases(&self) -> &[Subset] {
        &self.bases
    }

    pub fn is_basis(&self, s: Subset) -> bool {
        self.basis_set.contains(&s)
    }

    pub fn rank(&self, s: Subset) -> usize {
        let s = s.intersection(self.ground);
        let p = RANK_PRIME;
        let mut rows: Vec<Vec<u64>> = s.iter().map(|i| self.residues[self.column_of(i)].clone()).collect();
        let d = self.rank_total();
        let mut r = 0;
        for c in 0..d {
            let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
            rows.swap(r, piv);
            let inv = pow_mod(rows[r][c], p - 2, p);
            for i in r + 1..rows.len() {
                if rows[i][c] != 0 {
                    let f = rows[i][c] * inv % p;
                    for j in c..d {
                        rows[i][j] = (rows[i][j] + p - f * rows[r][j] % p) % p;
                    }
                }
            }
            r += 1;
        }
        r
    }

    pub fn is_independent(&self, s: Subset) -> bool {
        self.rank(s) == s.len()
    }

    pub fn closure(&self, s: Subset) -> Subset {
        let r = self.rank(s);
        self.columns.iter().copied().filter(|&i| s.contains(i) || self.rank(s.with(i)) == r).collect()
    }

    pub fn is_flat(&self, s: Subset) -> bool {
        s.is_subset(self.ground) && self.closure(s) == s
    }

    /// All flats, in (size, lex) order.
    pub fn flats(&self) -> Vec<Subset> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![self.closure(Subset::EMPTY)];
        while let Some(f) = stack.pop() {
            if !seen.insert(f) {
                continue;
            }
            for &i in &self.columns {
                if !f.contains(i) {
                    let g = self.closure(f.with(i));
                    if !seen.contains(&g) {
                        stack.push(g);
                    }
                }
            }
        }
        let mut v: Vec<Subset> = seen.into_iter().collect();
        v.sort_by_key(|s| (s.len(), *s));
        v
    }

    /// A flat is cyclic when its restriction has no coloops.
    pub fn is_cyclic(&self, f: Subset) -> bool {
        let r = self.rank(f);
        f.iter().all(|i| self.rank(f.without(i)) == r)
    }

    pub fn cyclic_flats(&self) -> CyclicFlatPoset {
        CyclicFlatPoset::new(self.ground, self.flats().into_iter().filter(|&f| self.is_cyclic(f)).collect())
    }

    /// The unique circuit in `basis ∪ {j}`.
    pub fn fundamental_circuit(&self, basis: Subset, j: usize) -> Subset {
        debug_assert!(self.is_basis(basis) && !basis.contains(j));
        basis.iter().filter(|&i| self.is_basis(basis.without(i).with(j))).collect::<Subset>().with(j)
    }

    /// All circuits, lexicographically.
    pub fn circuits(&self) -> Vec<Subset> {
        let mut out = BTreeSet::new();
        for &b in &self.bases {
            for j in self.ground.difference(b).iter() {
                out.insert(self.fundamental_circuit(b, j));
            }
        }
        out.into_iter().collect()
    }

    /// Independent sets of size `rank - 1`, lexicographically.
    pub fn edges(&self) -> Vec<Subset> {
        if self.rank_total() == 0 {
            return Vec::new();
        }
        let mut out = BTreeSet::new();
        for &b in &self.bases {
            for i in b.iter() {
                out.insert(b.without(i));
            }
        }
        out.into_iter().collect()
    }

    /// Elements `i` of the basis `b` that can be exchanged for an earlier
    /// element outside `b`. `order` lists the ground set from first to last;
    /// `None` means increasing labels.
    pub fn internally_passive_elements(&self, b: Subset, order: Option<&[usize]>) -> Subset {
        let pos = |i: usize| order.map_or(i, |o| o.iter().position(|&x| x == i).expect("order covers ground"));
        b.iter()
            .filter(|&i| {
                self.ground.difference(b).iter().any(|j| pos(j) < pos(i) && self.is_basis(b.without(i).with(j)))
            })
            .collect()
    }

    /// Bases all of whose elements are internally passive.
    pub fn internally_passive_bases(&self, order: Option<&[usize]>) -> Vec<Subset> {
        self.bases.iter().copied().filter(|&b| self.internally_passive_elements(b, order) == b).collect()
    }

    /// The lattice `V^upper_lower`: vectors of `V` vanishing on `upper`,
    /// projected to `lower \ upper`. Both arguments must be flats with
    /// `upper ⊆ lower`.
    pub fn minor(&self, lower: Subset, upper: Subset) -> Result<Arrangement, ArrangementError> {
        if !upper.is_subset(lower) {
            return Err(ArrangementError::NotNested { lower, upper });
        }
        for s in [lower, upper] {
            if !self.is_flat(s) {
                return Err(ArrangementError::NotAFlat(s));
            }
        }
        let d = self.rank_total();
        let upper_cols = self.column_indices(upper);
        let vanish = self.gens.select_columns(&upper_cols).transpose();
        let coeffs = if upper_cols.is_empty() { IntMatrix::identity(d) } else { integer_kernel(&vanish) };
        let sub = coeffs.mul(&self.gens);
        let ground = lower.difference(upper);
        let projected = sub.select_columns(&self.column_indices(ground));
        Arrangement::from_lattice(ground, &projected)
    }

    /// The integer kernel `V^!` of the generator matrix, on the same ground.
    pub fn gale_dual(&self) -> Arrangement {
        let k = integer_kernel(&self.gens);
        let k = if k.nrows() == 0 { IntMatrix::zeros(0, self.len()) } else { k };
        Arrangement::from_lattice(self.ground, &k).expect("kernel of a unimodular lattice is unimodular")
    }

    /// The unique vector of `V` (as column coordinates) with `w_j = δ_ij`
    /// on the basis `b`, for each `i` in `b` in increasing order.
    pub fn dual_basis_vectors(&self, b: Subset) -> Vec<Vec<BigInt>> {
        let cols = self.column_indices(b);
        let gb = self.gens.select_columns(&cols);
        let n = self.len();
        let mut out = Vec::new();
        for (k, _) in cols.iter().enumerate() {
            // solve c^T G_B = e_k^T
            let mut e = vec![num_rational::BigRational::zero(); cols.len()];
            e[k] = num_rational::BigRational::one();
            let c = crate::exactla::affine_solve(&gb.transpose(), &e).solution().expect("basis columns are invertible");
            let mut w = vec![BigInt::zero(); n];
            for (r, cr) in c.iter().enumerate() {
                assert!(cr.is_integer(), "unimodular inverse is integral");
                for j in 0..n {
                    w[j] += cr.numer() * self.gens.get(r, j);
                }
            }
            out.push(w);
        }
        out
    }
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

// Bareiss in i128; `None` on overflow.
fn small_det(rows: &[Vec<i64>], cols: &[usize]) -> Option<BigInt> {
    let n = cols.len();
    if n == 0 {
        return Some(BigInt::one());
    }
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| cols.iter().map(|&c| r[c] as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(i) = (k + 1..n).find(|&i| a[i][k] != 0) else { return Some(BigInt::zero()) };
            a.swap(i, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].checked_mul(a[k][k])?.checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = v / prev;
            }
        }
        prev = a[k][k];
    }
    Some(BigInt::from(sign * a[n - 1][n - 1]))
}

#[cfg(test)]
mod tests;
