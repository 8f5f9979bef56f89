//! The exterior-algebra side: the boundary map, the kernels `U(M)^F_E`, and
//! the sign isomorphism `φ` comparing them with the spaces `U(V)^F_E`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::bspace::{BElement, BSpace};
use crate::classes::{edge_class, ClassError, Subspace};
use crate::exactla::{affine_solve, determinant, left_kernel, span_eq, IntMatrix};
use crate::field::{Field, Rationals};
use crate::matroid::{Arrangement, ArrangementError};
use crate::subset::Subset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchurError {
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error("a vector of the minor does not lift to the ambient lattice")]
    NoLift,
    #[error("orientation comparison gave {0}, expected ±1")]
    NotUnit(String),
}

/// Sign of `e_S ∧ e_T` relative to `e_{S ∪ T}`: `true` when negative, `None`
/// when `S` and `T` meet.
pub fn wedge_sign(s: Subset, t: Subset) -> Option<bool> {
    if !s.is_disjoint(t) {
        return None;
    }
    // Each pair (i ∈ S, j ∈ T) with i > j is one transposition.
    let inversions: usize = t.iter().map(|j| s.iter().filter(|&i| i > j).count()).sum();
    Some(inversions % 2 == 1)
}

/// Element of the exterior algebra on the ground set, by monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exterior<E> {
    terms: BTreeMap<Subset, E>,
}

impl<E: Clone> Exterior<E> {
    pub fn zero() -> Self {
        Exterior { terms: BTreeMap::new() }
    }

    pub fn monomial<K: Field<Elem = E>>(k: &K, s: Subset) -> Self {
        let mut x = Self::zero();
        x.add_term(k, s, &k.one());
        x
    }

    pub fn terms(&self) -> &BTreeMap<Subset, E> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get<K: Field<Elem = E>>(&self, k: &K, s: Subset) -> E {
        self.terms.get(&s).cloned().unwrap_or_else(|| k.zero())
    }

    pub fn add_term<K: Field<Elem = E>>(&mut self, k: &K, s: Subset, c: &E) {
        let v = match self.terms.get(&s) {
            Some(x) => k.add(x, c),
            None => c.clone(),
        };
        if k.is_zero(&v) {
            self.terms.remove(&s);
        } else {
            self.terms.insert(s, v);
        }
    }

    pub fn add<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(k, *s, c);
        }
        out
    }

    pub fn scale<K: Field<Elem = E>>(&self, k: &K, c: &E) -> Self {
        let mut out = Self::zero();
        for (s, x) in &self.terms {
            out.add_term(k, *s, &k.mul(x, c));
        }
        out
    }

    pub fn wedge<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> Self {
        let mut out = Self::zero();
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                if let Some(neg) = wedge_sign(*s, *t) {
                    let c = k.mul(a, b);
                    out.add_term(k, s.union(*t), &if neg { k.neg(&c) } else { c });
                }
            }
        }
        out
    }

    /// Orthonormal pairing of monomials.
    pub fn pairing<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> E {
        self.terms
            .iter()
            .filter_map(|(s, a)| other.terms.get(s).map(|b| k.mul(a, b)))
            .fold(k.zero(), |acc, x| k.add(&acc, &x))
    }
}

/// `∂(e_{i₁} ∧ ⋯ ∧ e_{i_r}) = Σ_j (−1)^{j−1} e_{i₁} ∧ ⋯ ê_{i_j} ⋯ ∧ e_{i_r}`
pub fn boundary_monomial(s: Subset) -> impl Iterator<Item = (Subset, bool)> {
    s.iter().enumerate().map(move |(j, i)| (s.without(i), j % 2 == 1))
}

pub fn boundary<K: Field>(k: &K, x: &Exterior<K::Elem>) -> Exterior<K::Elem> {
    let mut out = Exterior::zero();
    for (s, c) in x.terms() {
        for (t, neg) in boundary_monomial(*s) {
            out.add_term(k, t, &if neg { k.neg(c) } else { c.clone() });
        }
    }
    out
}

/// `U(M)^F_E`: the kernel of `∂` on the span of the bases of the block, in
/// local coordinates.
pub fn um_space<K: Field>(k: &K, space: &BSpace, block: usize) -> Subspace<K> {
    let b = &space.blocks()[block];
    let mut faces: BTreeMap<Subset, usize> = BTreeMap::new();
    for &basis in b.bases() {
        for (t, _) in boundary_monomial(basis) {
            let next = faces.len();
            faces.entry(t).or_insert(next);
        }
    }
    let rows: Vec<Vec<K::Elem>> = b
        .bases()
        .iter()
        .map(|&basis| {
            let mut row = vec![k.zero(); faces.len()];
            for (t, neg) in boundary_monomial(basis) {
                row[faces[&t]] = if neg { k.neg(&k.one()) } else { k.one() };
            }
            row
        })
        .collect();
    Subspace { block, basis: left_kernel(k, &rows, faces.len()) }
}

pub fn all_um_spaces<K: Field>(k: &K, space: &BSpace) -> Vec<Subspace<K>> {
    (0..space.blocks().len()).map(|b| um_space(k, space, b)).collect()
}

fn rational_det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return BigRational::zero() };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            for j in c..n {
                let d = &f * &a[c][j];
                a[r][j] -= d;
            }
        }
    }
    det
}

fn to_rational(m: &IntMatrix) -> Vec<Vec<BigRational>> {
    m.rows().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect()
}

/// Rows of `m` (coordinates on `from`) placed in coordinates on `to ⊇ from`.
fn embed(rows: &[Vec<BigRational>], from: Subset, to: Subset) -> Vec<Vec<BigRational>> {
    let idx: Vec<usize> = from.iter().map(|i| to.rank_of(i)).collect();
    rows.iter()
        .map(|r| {
            let mut out = vec![BigRational::zero(); to.len()];
            for (c, x) in r.iter().enumerate() {
                out[idx[c]] = x.clone();
            }
            out
        })
        .collect()
}

/// Vectors of `lattice` projecting onto the rows of `m` (coordinates on a
/// subset of the lattice's ground set).
fn lift(m: &Arrangement, lattice: &Arrangement) -> Result<Vec<Vec<BigRational>>, SchurError> {
    let h = lattice.generators();
    let cols = lattice.column_indices(m.ground());
    let system = h.select_columns(&cols).transpose();
    let hq = to_rational(h);
    m.generators()
        .rows()
        .map(|row| {
            let rhs: Vec<BigRational> = row.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            let c = affine_solve(&system, &rhs).solution().ok_or(SchurError::NoLift)?;
            Ok((0..lattice.len())
                .map(|j| c.iter().zip(&hq).fold(BigRational::zero(), |acc, (ci, hr)| acc + ci * &hr[j]))
                .collect())
        })
        .collect()
}

/// `det(rows) / det(reference generators)` on a basis of the reference,
/// which must be `±1`.
fn orientation_ratio(rows: &[Vec<BigRational>], reference: &Arrangement) -> Result<i8, SchurError> {
    let b0 = reference.bases().first().copied().unwrap_or(Subset::EMPTY);
    let cols = reference.column_indices(b0);
    let pick = |m: &[Vec<BigRational>]| -> Vec<Vec<BigRational>> {
        m.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect()
    };
    let num = rational_det(pick(rows));
    let den = rational_det(pick(&to_rational(reference.generators())));
    let q = num / den;
    if q.is_one() {
        Ok(1)
    } else if (-q.clone()).is_one() {
        Ok(-1)
    } else {
        Err(SchurError::NotUnit(q.to_string()))
    }
}

/// The reference orientation of every `V^F` (its Hermite basis, declared
/// positive) and the derived sign of each block.
#[derive(Clone, Debug)]
pub struct Orientation {
    references: Vec<Arrangement>,
    block_signs: Vec<i8>,
}

impl Orientation {
    pub fn new(space: &BSpace) -> Result<Self, SchurError> {
        let a = space.arrangement();
        let p = space.poset();
        let references: Vec<Arrangement> =
            (0..p.len()).map(|f| a.minor(a.ground(), p.flat(f))).collect::<Result<_, _>>()?;
        let mut block_signs = Vec::with_capacity(space.blocks().len());
        for blk in space.blocks() {
            let (vf, ve) = (&references[blk.upper], &references[blk.lower]);
            let mut rows = lift(&blk.minor, vf)?;
            rows.extend(embed(&to_rational(ve.generators()), ve.ground(), vf.ground()));
            block_signs.push(orientation_ratio(&rows, vf)?);
        }
        Ok(Orientation { references, block_signs })
    }

    /// Reference lattice `V^F` in coordinates on `I ∖ F`.
    pub fn reference(&self, flat: usize) -> &Arrangement {
        &self.references[flat]
    }

    pub fn block_sign(&self, block: usize) -> i8 {
        self.block_signs[block]
    }

    /// Checks `ω^F_E ∧ ω^E_D = ω^F_D` on every chain `D ≤ E ≤ F`; returns
    /// the first failing chain `(D, E, F)`.
    pub fn first_inconsistent_chain(&self, space: &BSpace) -> Result<Option<(usize, usize, usize)>, SchurError> {
        let p = space.poset();
        for (d, f) in p.comparable_pairs() {
            let outer = space.block(d, f).expect("comparable");
            for e in p.interval(d, f) {
                let (Some(fe), Some(ed)) = (space.block_id(e, f), space.block_id(d, e)) else { continue };
                let (bfe, bed) = (&space.blocks()[fe], &space.blocks()[ed]);
                let mut rows = lift(&bfe.minor, &outer.minor)?;
                rows.extend(embed(&to_rational(bed.minor.generators()), bed.minor.ground(), outer.minor.ground()));
                let t = orientation_ratio(&rows, &outer.minor)?;
                let fd = space.block_id(d, f).expect("comparable");
                if self.block_signs[fe] * self.block_signs[ed] * t != self.block_signs[fd] {
                    return Ok(Some((d, e, f)));
                }
            }
        }
        Ok(None)
    }
}

/// `φ(e_B) = ±e_B`, stored as one sign per position of `B`.
#[derive(Clone, Debug)]
pub struct SchurMap {
    signs: Vec<i8>,
}

impl SchurMap {
    pub fn new(space: &BSpace, orientation: &Orientation) -> Self {
        let mut signs = vec![0; space.dim()];
        for (b, blk) in space.blocks().iter().enumerate() {
            for (i, &basis) in blk.bases().iter().enumerate() {
                let g = blk.minor.generators().select_columns(&blk.minor.column_indices(basis));
                let det = determinant(&g);
                debug_assert!(det.abs() == BigInt::one());
                let s = if det.is_negative() { -1 } else { 1 };
                signs[blk.offset + i] = s * orientation.block_sign(b);
            }
        }
        SchurMap { signs }
    }

    pub fn sign(&self, pos: usize) -> i8 {
        self.signs[pos]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn apply<K: Field>(&self, k: &K, space: &BSpace, x: &BElement<K::Elem>) -> Exterior<K::Elem> {
        let mut out = Exterior::zero();
        for (&p, c) in x.coeffs() {
            let c = if self.signs[p] < 0 { k.neg(c) } else { c.clone() };
            out.add_term(k, space.index(p).basis, &c);
        }
        out
    }

    /// `φ` on local coordinates of one block.
    pub fn apply_local<K: Field>(&self, k: &K, space: &BSpace, block: usize, v: &[K::Elem]) -> Vec<K::Elem> {
        let off = space.blocks()[block].offset;
        v.iter().enumerate().map(|(i, c)| if self.signs[off + i] < 0 { k.neg(c) } else { c.clone() }).collect()
    }

    /// Whether `φ(x ∗ y) = φ(x) ∧ φ(y)` for all composable monomials.
    pub fn is_multiplicative(&self, space: &BSpace) -> bool {
        let k = Rationals;
        for a in 0..space.dim() {
            for b in 0..space.dim() {
                let Ok(Some(ab)) = space.star_monomial(a, b) else { continue };
                let lhs = self.apply(&k, space, &BElement::monomial(&k, ab));
                let rhs = self
                    .apply(&k, space, &BElement::monomial(&k, a))
                    .wedge(&k, &self.apply(&k, space, &BElement::monomial(&k, b)));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// Whether `φ(U(V)^F_E) = U(M)^F_E`, block by block.
pub fn bridge_check<K: Field>(
    k: &K,
    space: &BSpace,
    phi: &SchurMap,
    u: &[Subspace<K>],
    um: &[Subspace<K>],
) -> Vec<bool> {
    space
        .blocks()
        .iter()
        .enumerate()
        .map(|(b, blk)| {
            let image: Vec<Vec<K::Elem>> = u[b].basis.iter().map(|v| phi.apply_local(k, space, b, v)).collect();
            span_eq(k, &image, &um[b].basis, blk.dim())
        })
        .collect()
}

/// The constant `c` with `⟨φ(α_X), x⟩ = c ⟨e_X, ∂x⟩` for every `x` in the
/// block, or `None` if the ratio varies.
pub fn edge_boundary_constant<K: Field>(
    k: &K,
    space: &BSpace,
    phi: &SchurMap,
    block: usize,
    x: Subset,
) -> Result<Option<K::Elem>, SchurError> {
    let alpha = phi.apply(k, space, &edge_class(k, space, block, x)?);
    let mut c: Option<K::Elem> = None;
    for &basis in space.blocks()[block].bases() {
        let lhs = alpha.get(k, basis);
        let rhs = boundary_monomial(basis).find(|(t, _)| *t == x).map_or(k.zero(), |(_, neg)| {
            if neg {
                k.neg(&k.one())
            } else {
                k.one()
            }
        });
        if k.is_zero(&rhs) {
            if !k.is_zero(&lhs) {
                return Ok(None);
            }
            continue;
        }
        let ratio = k.mul(&lhs, &k.inv(&rhs).expect("unit"));
        match &c {
            None => c = Some(ratio),
            Some(prev) if *prev != ratio => return Ok(None),
            _ => {}
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests;
