//! The algebras `R` and `Ř` of operators on `B`.
//!
//! `R` is generated by left multiplication by elements of the `U`-spaces and
//! by their left adjoints; `Ř` by right multiplication by elements of the
//! `Ǔ`-spaces and their right adjoints. Both are computed as explicit
//! subspaces of `End(B)` by closing the span of the generators under
//! multiplication.

mod matrix;
mod radical;
mod relations;

pub use matrix::SparseMatrix;
pub use radical::{center_dim, radical, radical_subspace, Radical, RadicalBasis, RadicalError};
pub use relations::{
    e1_quiver, parse_relation, verify_relations, Combination, Relation, RelationError, RelationOutcome, E1_RELATIONS,
};

use crate::bspace::{BElement, BSpace, BSpaceError};
use crate::classes::Subspace;
use crate::exactla::SparseEchelon;
use crate::field::Field;

/// Which blocks an operator connects.
///
/// `Left { from, to }` maps blocks with upper flat `from` to blocks with upper
/// flat `to` and preserves lower flats; `Right` does the same for lower
/// flats.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    Left { from: usize, to: usize },
    Right { from: usize, to: usize },
}

#[derive(Clone, Debug)]
pub struct Operator<K: Field> {
    pub label: String,
    pub matrix: SparseMatrix<K::Elem>,
    pub grading: Grading,
}

impl<K: Field> Operator<K> {
    /// Whether every nonzero entry respects the grading.
    pub fn respects_grading(&self, space: &BSpace) -> bool {
        self.matrix.entries().all(|(r, c, _)| {
            let (src, dst) = (space.index(c), space.index(r));
            match self.grading {
                Grading::Left { from, to } => src.upper == from && dst.upper == to && src.lower == dst.lower,
                Grading::Right { from, to } => src.lower == from && dst.lower == to && src.upper == dst.upper,
            }
        })
    }
}

fn signed<K: Field>(k: &K, c: &K::Elem, neg: bool) -> K::Elem {
    if neg {
        k.neg(c)
    } else {
        c.clone()
    }
}

/// Matrix of `x ↦ u ∗ x`.
pub fn left_star<K: Field>(k: &K, space: &BSpace, u: &BElement<K::Elem>) -> Result<SparseMatrix<K::Elem>, BSpaceError> {
    let mut entries = Vec::new();
    for (&a, c) in u.coeffs() {
        for j in 0..space.dim() {
            if let Some(r) = space.star_monomial(a, j)? {
                entries.push((r, j, c.clone()));
            }
        }
    }
    Ok(SparseMatrix::from_entries(k, space.dim(), entries))
}

/// Matrix of `x ↦ x ∗ u`.
pub fn right_star<K: Field>(
    k: &K,
    space: &BSpace,
    u: &BElement<K::Elem>,
) -> Result<SparseMatrix<K::Elem>, BSpaceError> {
    let mut entries = Vec::new();
    for (&a, c) in u.coeffs() {
        for j in 0..space.dim() {
            if let Some(r) = space.star_monomial(j, a)? {
                entries.push((r, j, c.clone()));
            }
        }
    }
    Ok(SparseMatrix::from_entries(k, space.dim(), entries))
}

/// Matrix of `x ↦ u ⊣ x`.
pub fn left_adjoint<K: Field>(k: &K, space: &BSpace, u: &BElement<K::Elem>) -> SparseMatrix<K::Elem> {
    let mut entries = Vec::new();
    for (&a, c) in u.coeffs() {
        for j in 0..space.dim() {
            if let Some((r, neg)) = space.ladj_monomial(a, j) {
                entries.push((r, j, signed(k, c, neg)));
            }
        }
    }
    SparseMatrix::from_entries(k, space.dim(), entries)
}

/// Matrix of `y ↦ y ⊢ u`.
pub fn right_adjoint<K: Field>(k: &K, space: &BSpace, u: &BElement<K::Elem>) -> SparseMatrix<K::Elem> {
    let mut entries = Vec::new();
    for (&a, c) in u.coeffs() {
        for j in 0..space.dim() {
            if let Some((r, neg)) = space.radj_monomial(j, a) {
                entries.push((r, j, signed(k, c, neg)));
            }
        }
    }
    SparseMatrix::from_entries(k, space.dim(), entries)
}

fn flat_name(space: &BSpace, i: usize) -> String {
    space.poset().flat(i).to_string()
}

/// Generators of `R`: for every block, left multiplication by a basis of
/// `U^F_E` and, off the diagonal, the left adjoints as well.
pub fn r_generators<K: Field>(k: &K, space: &BSpace, u: &[Subspace<K>]) -> Result<Vec<Operator<K>>, BSpaceError> {
    let mut out = Vec::new();
    for (b, blk) in space.blocks().iter().enumerate() {
        let (e, f) = (blk.lower, blk.upper);
        for (i, el) in u[b].elements(k, space).iter().enumerate() {
            let tag = format!("{}^{}_{}", i, flat_name(space, f), flat_name(space, e));
            out.push(Operator {
                label: format!("u{tag}"),
                matrix: left_star(k, space, el)?,
                grading: Grading::Left { from: e, to: f },
            });
            if !blk.is_diagonal() {
                out.push(Operator {
                    label: format!("u{tag}*"),
                    matrix: left_adjoint(k, space, el),
                    grading: Grading::Left { from: f, to: e },
                });
            }
        }
    }
    Ok(out)
}

/// Generators of `Ř`: right multiplication by a basis of `Ǔ^F_E` and, off
/// the diagonal, the right adjoints.
pub fn rc_generators<K: Field>(k: &K, space: &BSpace, uc: &[Subspace<K>]) -> Result<Vec<Operator<K>>, BSpaceError> {
    let mut out = Vec::new();
    for (b, blk) in space.blocks().iter().enumerate() {
        let (e, f) = (blk.lower, blk.upper);
        for (i, el) in uc[b].elements(k, space).iter().enumerate() {
            let tag = format!("{}^{}_{}", i, flat_name(space, f), flat_name(space, e));
            out.push(Operator {
                label: format!("ǔ{tag}"),
                matrix: right_star(k, space, el)?,
                grading: Grading::Right { from: f, to: e },
            });
            if !blk.is_diagonal() {
                out.push(Operator {
                    label: format!("ǔ{tag}*"),
                    matrix: right_adjoint(k, space, el),
                    grading: Grading::Right { from: e, to: f },
                });
            }
        }
    }
    Ok(out)
}

/// `π_F`: projection onto the blocks with upper flat `F`, for every `F`.
pub fn left_idempotents<K: Field>(k: &K, space: &BSpace) -> Vec<SparseMatrix<K::Elem>> {
    (0..space.poset().len())
        .map(|f| {
            let entries = (0..space.dim()).filter(|&p| space.index(p).upper == f).map(|p| (p, p, k.one()));
            SparseMatrix::from_entries(k, space.dim(), entries)
        })
        .collect()
}

/// Projection onto the blocks with lower flat `F`, for every `F`.
pub fn right_idempotents<K: Field>(k: &K, space: &BSpace) -> Vec<SparseMatrix<K::Elem>> {
    (0..space.poset().len())
        .map(|f| {
            let entries = (0..space.dim()).filter(|&p| space.index(p).lower == f).map(|p| (p, p, k.one()));
            SparseMatrix::from_entries(k, space.dim(), entries)
        })
        .collect()
}

/// A subalgebra of `End(k^n)` with an explicit basis.
#[derive(Clone, Debug)]
pub struct OperatorAlgebra<K: Field> {
    field: K,
    n: usize,
    basis: Vec<SparseMatrix<K::Elem>>,
    echelon: SparseEchelon<K>,
    generators: Vec<SparseMatrix<K::Elem>>,
}

impl<K: Field> OperatorAlgebra<K> {
    /// The smallest unital subalgebra containing `generators`.
    ///
    /// The span is grown by right multiplication by generators until it
    /// stops changing, which yields every word in the generators.
    pub fn generated_by(k: &K, n: usize, generators: Vec<SparseMatrix<K::Elem>>) -> Self {
        let mut alg = OperatorAlgebra {
            field: k.clone(),
            n,
            basis: Vec::new(),
            echelon: SparseEchelon::new(k.clone()),
            generators,
        };
        alg.push(SparseMatrix::identity(k, n));
        let mut i = 0;
        while i < alg.basis.len() {
            let w = alg.basis[i].clone();
            for g in alg.generators.clone() {
                alg.push(w.mul(k, &g));
            }
            i += 1;
        }
        alg
    }

    /// Wraps a known basis; `generators` are kept for ideal checks.
    pub fn from_basis(
        k: &K,
        n: usize,
        basis: Vec<SparseMatrix<K::Elem>>,
        generators: Vec<SparseMatrix<K::Elem>>,
    ) -> Self {
        let mut alg = OperatorAlgebra {
            field: k.clone(),
            n,
            basis: Vec::new(),
            echelon: SparseEchelon::new(k.clone()),
            generators,
        };
        for b in basis {
            alg.push(b);
        }
        alg
    }

    fn push(&mut self, m: SparseMatrix<K::Elem>) -> bool {
        if self.echelon.insert(&m.to_flat()).is_some() {
            self.basis.push(m);
            true
        } else {
            false
        }
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Size of the matrices.
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[SparseMatrix<K::Elem>] {
        &self.basis
    }

    pub fn generators(&self) -> &[SparseMatrix<K::Elem>] {
        &self.generators
    }

    pub fn contains(&self, m: &SparseMatrix<K::Elem>) -> bool {
        self.echelon.contains(&m.to_flat())
    }

    /// Whether `self ⊆ other` and the dimensions agree.
    pub fn same_as(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.basis.iter().all(|b| other.contains(b))
    }

    /// `dim π_a A π_b` for all pairs of the given idempotents.
    pub fn block_dims(&self, idempotents: &[SparseMatrix<K::Elem>]) -> Vec<Vec<usize>> {
        let k = &self.field;
        idempotents
            .iter()
            .map(|pa| {
                idempotents
                    .iter()
                    .map(|pb| {
                        let mut e = SparseEchelon::new(k.clone());
                        for x in &self.basis {
                            e.insert(&pa.mul(k, x).mul(k, pb).to_flat());
                        }
                        e.dim()
                    })
                    .collect()
            })
            .collect()
    }

    /// The algebra conjugated by a permutation of the underlying basis.
    pub fn conjugate(&self, perm: &[usize]) -> Self {
        let k = &self.field;
        let basis = self.basis.iter().map(|b| b.conjugate(perm)).collect();
        let gens = self.generators.iter().map(|g| g.conjugate(perm)).collect();
        Self::from_basis(k, self.n, basis, gens)
    }
}

/// `Σ_{D ≤ E, F} dim U^F_D · dim U^E_D`, indexed `[F][E]`.
pub fn cellular_dims(space: &BSpace, u_dims: &[usize]) -> Vec<Vec<usize>> {
    let p = space.poset();
    let dim = |lo: usize, hi: usize| space.block_id(lo, hi).map_or(0, |b| u_dims[b]);
    (0..p.len()).map(|f| (0..p.len()).map(|e| (0..p.len()).map(|d| dim(d, f) * dim(d, e)).sum()).collect()).collect()
}

/// `Σ_{D ≥ E, F} dim Ǔ^D_F · dim Ǔ^D_E`, indexed `[F][E]`.
pub fn dual_cellular_dims(space: &BSpace, uc_dims: &[usize]) -> Vec<Vec<usize>> {
    let p = space.poset();
    let dim = |lo: usize, hi: usize| space.block_id(lo, hi).map_or(0, |b| uc_dims[b]);
    (0..p.len()).map(|f| (0..p.len()).map(|e| (0..p.len()).map(|d| dim(f, d) * dim(e, d)).sum()).collect()).collect()
}

/// First pair of operators that fail to commute, by label.
pub fn first_noncommuting<K: Field>(k: &K, a: &[Operator<K>], b: &[Operator<K>]) -> Option<(String, String)> {
    for x in a {
        for y in b {
            if x.matrix.mul(k, &y.matrix) != y.matrix.mul(k, &x.matrix) {
                return Some((x.label.clone(), y.label.clone()));
            }
        }
    }
    None
}

/// Semisimple dimension count: the cell dimensions `n_D = Σ_F dim U^F_D`
/// when `Σ n_D² = dim R`.
pub fn split_simple_dims(space: &BSpace, u_dims: &[usize], algebra_dim: usize) -> Option<Vec<usize>> {
    let p = space.poset();
    let dims: Vec<usize> =
        (0..p.len()).map(|d| (0..p.len()).filter_map(|f| space.block_id(d, f)).map(|b| u_dims[b]).sum()).collect();
    (dims.iter().map(|x| x * x).sum::<usize>() == algebra_dim).then_some(dims)
}

#[cfg(test)]
mod tests;
