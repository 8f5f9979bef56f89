//! Jacobson radical of an operator algebra.
//!
//! In characteristic zero the radical is the kernel of the trace form of
//! the given faithful representation. In characteristic `p` it is cut out by
//! the sequence of functionals `g_i(x) = Tr(x̃^{p^i}) / p^i mod p`, where `x̃`
//! is the lift of `x` to integers in `0..p`, for `i ≤ log_p N`.
//!
//! All computations run on the pieces `π_F A π_E` for a complete set of
//! orthogonal idempotents `π_F` of the algebra, which keeps the products small.

use std::collections::BTreeMap;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use thiserror::Error;

use super::{OperatorAlgebra, SparseMatrix};
use crate::exactla::{axpy_neg, left_kernel, SparseEchelon, SparseVec};
use crate::field::Field;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RadicalError {
    #[error("the computed radical is not a two-sided ideal")]
    NotIdeal,
    #[error("the computed radical is not nilpotent (powers stall at dimension {0})")]
    NotNilpotent(usize),
    #[error("the quotient by the radical has a radical of dimension {0}")]
    QuotientNotSemisimple(usize),
    #[error("trace of a lifted power is not divisible by p^{0}")]
    Lift(u32),
    #[error("the idempotents do not sum to the identity")]
    BadIdempotents,
}

#[derive(Clone, Debug)]
pub struct Radical<K: Field> {
    pub basis: Vec<SparseMatrix<K::Elem>>,
    /// Dimensions of the successive subspaces `I_0 ⊇ I_1 ⊇ ...`.
    pub chain: Vec<usize>,
    /// Least `k` with `J^k = 0`.
    pub nilpotency: usize,
    /// Dimension of the quotient `A / J`.
    pub quotient_dim: usize,
    /// Dimension of the center of `A / J`.
    pub quotient_center_dim: usize,
}

impl<K: Field> Radical<K> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Basis of `π_F A π_E`, indexed `[F][E]`, made of actual products.
fn pieces<K: Field>(alg: &OperatorAlgebra<K>, idem: &[SparseMatrix<K::Elem>]) -> Vec<Vec<Vec<SparseMatrix<K::Elem>>>> {
    let k = alg.field();
    idem.iter()
        .map(|pf| {
            idem.iter()
                .map(|pe| {
                    let mut ech = SparseEchelon::new(k.clone());
                    let mut out = Vec::new();
                    for a in alg.basis() {
                        let x = pf.mul(k, a).mul(k, pe);
                        if ech.insert(&x.to_flat()).is_some() {
                            out.push(x);
                        }
                    }
                    out
                })
                .collect()
        })
        .collect()
}

fn combine<K: Field>(k: &K, n: usize, basis: &[SparseMatrix<K::Elem>], c: &[K::Elem]) -> SparseMatrix<K::Elem> {
    let entries = basis
        .iter()
        .zip(c)
        .filter(|(_, x)| !k.is_zero(x))
        .flat_map(|(b, x)| b.entries().map(move |(r, col, v)| (r, col, k.mul(v, x))).collect::<Vec<_>>());
    SparseMatrix::from_entries(k, n, entries)
}

/// `⌊log_p n⌋`
fn log_floor(p: u64, n: usize) -> u32 {
    let mut l = 0;
    let mut q = p as u128;
    while q <= n as u128 {
        l += 1;
        q *= p as u128;
    }
    l
}

/// Strongly connected components of the support graph that carry cycles.
fn cyclic_components<E: Clone>(m: &SparseMatrix<E>) -> Vec<Vec<usize>> {
    let mut g = DiGraph::<(), ()>::with_capacity(m.size(), m.nnz());
    let nodes: Vec<_> = (0..m.size()).map(|_| g.add_node(())).collect();
    for (r, c, _) in m.entries() {
        g.add_edge(nodes[c], nodes[r], ());
    }
    tarjan_scc(&g)
        .into_iter()
        .map(|comp| comp.into_iter().map(|x| x.index()).collect::<Vec<_>>())
        .filter(|comp| comp.len() > 1 || m.row(comp[0]).iter().any(|(c, _)| *c == comp[0]))
        .collect()
}

fn dense_mul(a: &[Vec<u128>], b: &[Vec<u128>], m: u128) -> Vec<Vec<u128>> {
    let n = a.len();
    let mut out = vec![vec![0u128; n]; n];
    for i in 0..n {
        for (l, &x) in a[i].iter().enumerate() {
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] = (out[i][j] + x * b[l][j]) % m;
            }
        }
    }
    out
}

/// `Tr(x̃^{p^i}) mod p^{i+1}` divided by `p^i`.
fn lifted_functional<K: Field>(k: &K, x: &SparseMatrix<K::Elem>, p: u64, i: u32) -> Result<u64, RadicalError> {
    let pi = (p as u128).pow(i);
    let modulus = pi * p as u128;
    let mut total = 0u128;
    for comp in cyclic_components(x) {
        let block = x.dense_block(k, &comp);
        let mut base: Vec<Vec<u128>> =
            block.iter().map(|row| row.iter().map(|v| k.residue(v).expect("prime field") as u128).collect()).collect();
        let n = comp.len();
        let mut acc: Vec<Vec<u128>> = (0..n).map(|r| (0..n).map(|c| u128::from(r == c)).collect()).collect();
        let mut e = pi;
        while e > 0 {
            if e & 1 == 1 {
                acc = dense_mul(&acc, &base, modulus);
            }
            e >>= 1;
            if e > 0 {
                base = dense_mul(&base, &base, modulus);
            }
        }
        total = (total + (0..n).map(|r| acc[r][r]).sum::<u128>()) % modulus;
    }
    if total % pi != 0 {
        return Err(RadicalError::Lift(i));
    }
    Ok((total / pi) as u64)
}

/// Radical basis and the dimension chain it was found through.
pub type RadicalBasis<E> = (Vec<SparseMatrix<E>>, Vec<usize>);

/// The radical as a subspace, together with the chain of intermediate
/// dimensions. `idempotents` must be orthogonal, lie in the algebra and sum
/// to one; an empty slice means the identity alone.
pub fn radical_subspace<K: Field>(
    alg: &OperatorAlgebra<K>,
    idempotents: &[SparseMatrix<K::Elem>],
) -> Result<RadicalBasis<K::Elem>, RadicalError> {
    let k = alg.field();
    let n = alg.size();
    let idem = if idempotents.is_empty() { vec![SparseMatrix::identity(k, n)] } else { idempotents.to_vec() };
    let sum = idem.iter().skip(1).fold(idem[0].clone(), |acc, x| acc.add(k, x));
    if sum != SparseMatrix::identity(k, n) {
        return Err(RadicalError::BadIdempotents);
    }
    let pcs = pieces(alg, &idem);
    let p = k.characteristic();
    let steps = if p == 0 { 0 } else { log_floor(p, n) };

    let mut current: Vec<Vec<Vec<SparseMatrix<K::Elem>>>> = pcs.clone();
    let mut chain = Vec::new();
    for i in 0..=steps {
        for f in 0..idem.len() {
            for e in 0..idem.len() {
                let cur = &current[f][e];
                if cur.is_empty() {
                    continue;
                }
                let partner = &pcs[e][f];
                let mut rows = Vec::with_capacity(cur.len());
                for a in cur {
                    let mut row = Vec::with_capacity(partner.len());
                    for b in partner {
                        let v = if i == 0 {
                            a.trace_of_product(k, b)
                        } else {
                            k.from_i64(lifted_functional(k, &a.mul(k, b), p, i)? as i64)
                        };
                        row.push(v);
                    }
                    rows.push(row);
                }
                let ker = left_kernel(k, &rows, partner.len());
                current[f][e] = ker.iter().map(|c| combine(k, n, cur, c)).collect();
            }
        }
        chain.push(current.iter().flatten().map(Vec::len).sum());
    }
    Ok((current.into_iter().flatten().flatten().collect(), chain))
}

/// A row and its combination of inserted vectors.
type TrackedRow<E> = (SparseVec<E>, SparseVec<E>);

/// Echelon that remembers how each row was built from the inserted vectors.
struct Tracked<K: Field> {
    field: K,
    rows: BTreeMap<usize, TrackedRow<K::Elem>>,
    count: usize,
}

impl<K: Field> Tracked<K> {
    fn new(field: K) -> Self {
        Tracked { field, rows: BTreeMap::new(), count: 0 }
    }

    /// Residual and the combination of inserted vectors that was removed.
    fn reduce(&self, v: &SparseVec<K::Elem>) -> (SparseVec<K::Elem>, SparseVec<K::Elem>) {
        let k = &self.field;
        let mut v = v.clone();
        let mut combo = SparseVec::new();
        let mut cursor = 0;
        loop {
            let hit = v.range(cursor..).find(|(i, _)| self.rows.contains_key(i)).map(|(i, c)| (*i, c.clone()));
            let Some((p, c)) = hit else { break };
            let (row, rc) = &self.rows[&p];
            axpy_neg(k, &mut v, &c, row);
            axpy_neg(k, &mut combo, &k.neg(&c), rc);
            cursor = p + 1;
        }
        (v, combo)
    }

    /// Inserts the next vector; returns whether it was independent.
    fn insert(&mut self, v: &SparseVec<K::Elem>) -> bool {
        let k = self.field.clone();
        let id = self.count;
        self.count += 1;
        let (r, combo) = self.reduce(v);
        let Some((&p, lead)) = r.iter().next() else { return false };
        let inv = k.inv(lead).expect("nonzero");
        let mut own = SparseVec::new();
        own.insert(id, k.one());
        axpy_neg(&k, &mut own, &k.one(), &combo);
        let scale = |x: SparseVec<K::Elem>| x.into_iter().map(|(i, a)| (i, k.mul(&a, &inv))).collect();
        self.rows.insert(p, (scale(r), scale(own)));
        true
    }

    /// Coordinates of `v` in the inserted vectors, if it lies in their span.
    fn coordinates(&self, v: &SparseVec<K::Elem>) -> Option<SparseVec<K::Elem>> {
        let (r, combo) = self.reduce(v);
        r.is_empty().then_some(combo)
    }
}

/// Left regular representation of `A / J` and the images of the idempotents.
pub(crate) fn quotient<K: Field>(
    alg: &OperatorAlgebra<K>,
    rad: &[SparseMatrix<K::Elem>],
    idem: &[SparseMatrix<K::Elem>],
) -> (OperatorAlgebra<K>, Vec<SparseMatrix<K::Elem>>) {
    let k = alg.field();
    let mut tr = Tracked::new(k.clone());
    for j in rad {
        tr.insert(&j.to_flat());
    }
    let r = rad.len();
    // Complement elements, remembered with the id they were inserted under.
    let mut comp = Vec::new();
    for a in alg.basis() {
        let id = tr.count;
        if tr.insert(&a.to_flat()) {
            comp.push((id, a.clone()));
        } else {
            tr.count = id;
        }
    }
    let slot: BTreeMap<usize, usize> = comp.iter().enumerate().map(|(t, (id, _))| (*id, t)).collect();
    debug_assert!(comp.iter().all(|(id, _)| *id >= r));
    let m = comp.len();
    let left_mult = |x: &SparseMatrix<K::Elem>| {
        let mut entries = Vec::new();
        for (t, (_, c)) in comp.iter().enumerate() {
            let coords = tr.coordinates(&x.mul(k, c).to_flat()).expect("algebra is closed");
            for (id, v) in coords {
                if let Some(&s) = slot.get(&id) {
                    entries.push((s, t, v));
                }
            }
        }
        SparseMatrix::from_entries(k, m, entries)
    };
    let basis: Vec<_> = comp.iter().map(|(_, c)| left_mult(c)).collect();
    let images = idem.iter().map(left_mult).collect();
    (OperatorAlgebra::from_basis(k, m, basis.clone(), basis), images)
}

fn is_ideal<K: Field>(alg: &OperatorAlgebra<K>, rad: &[SparseMatrix<K::Elem>]) -> bool {
    let k = alg.field();
    let mut ech = SparseEchelon::new(k.clone());
    for j in rad {
        ech.insert(&j.to_flat());
    }
    rad.iter().all(|j| {
        alg.generators().iter().all(|g| ech.contains(&g.mul(k, j).to_flat()) && ech.contains(&j.mul(k, g).to_flat()))
    })
}

/// Least `k` with `J^k = 0`.
fn nilpotency<K: Field>(k: &K, rad: &[SparseMatrix<K::Elem>]) -> Result<usize, RadicalError> {
    let mut power = rad.to_vec();
    let mut exp = 1;
    while !power.is_empty() {
        let mut ech = SparseEchelon::new(k.clone());
        let mut next = Vec::new();
        for x in &power {
            for y in rad {
                let z = x.mul(k, y);
                if ech.insert(&z.to_flat()).is_some() {
                    next.push(z);
                }
            }
        }
        if next.len() == power.len() {
            return Err(RadicalError::NotNilpotent(next.len()));
        }
        power = next;
        exp += 1;
    }
    Ok(exp)
}

/// Dimension of the center, computed inside `⊕ π_F A π_F`.
pub fn center_dim<K: Field>(alg: &OperatorAlgebra<K>, idempotents: &[SparseMatrix<K::Elem>]) -> usize {
    let k = alg.field();
    let idem = if idempotents.is_empty() { vec![SparseMatrix::identity(k, alg.size())] } else { idempotents.to_vec() };
    let pcs = pieces(alg, &idem);
    let diag: Vec<_> = (0..idem.len()).flat_map(|f| pcs[f][f].iter()).collect();
    let nn = alg.size() * alg.size();
    let mut ech = SparseEchelon::new(k.clone());
    for z in &diag {
        let mut v = SparseVec::new();
        for (gi, g) in alg.generators().iter().enumerate() {
            let c = z.mul(k, g).sub(k, &g.mul(k, z));
            for (pos, x) in c.to_flat() {
                v.insert(gi * nn + pos, x);
            }
        }
        ech.insert(&v);
    }
    diag.len() - ech.dim()
}

/// The radical with its postconditions checked: it is a two-sided ideal,
/// it is nilpotent, and the quotient has zero radical.
pub fn radical<K: Field>(
    alg: &OperatorAlgebra<K>,
    idempotents: &[SparseMatrix<K::Elem>],
) -> Result<Radical<K>, RadicalError> {
    let k = alg.field();
    let (basis, chain) = radical_subspace(alg, idempotents)?;
    if !is_ideal(alg, &basis) {
        return Err(RadicalError::NotIdeal);
    }
    let nil = nilpotency(k, &basis)?;
    let (quotient_dim, quotient_center_dim) = if basis.is_empty() {
        (alg.dim(), center_dim(alg, idempotents))
    } else {
        let (q, images) = quotient(alg, &basis, idempotents);
        let (qrad, _) = radical_subspace(&q, &images)?;
        if !qrad.is_empty() {
            return Err(RadicalError::QuotientNotSemisimple(qrad.len()));
        }
        (q.dim(), center_dim(&q, &images))
    };
    Ok(Radical { basis, chain, nilpotency: nil, quotient_dim, quotient_center_dim })
}
