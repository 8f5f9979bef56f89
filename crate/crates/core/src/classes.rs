//! Edge classes, the subspaces `U^F_E`, circuit classes and the dual
//! subspaces `Ǔ^D_F`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::bspace::{BElement, BSpace, BSpaceError, GaleMap};
use crate::exactla::{integer_kernel, kernel, span_eq, IntMatrix};
use crate::field::Field;
use crate::matroid::{Arrangement, ArrangementError};
use crate::subset::Subset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassError {
    #[error(transparent)]
    Space(#[from] BSpaceError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error("{0} is not an independent set of size rank - 1")]
    NotAnEdge(Subset),
    #[error("{0} is not a circuit of the minor")]
    NotACircuit(Subset),
    #[error("circuit relation for {circuit} has a coefficient of absolute value {value}")]
    NonUnitRelation { circuit: Subset, value: String },
    #[error("basis {0} admits no earlier exchange in its minor")]
    NotPassive(Subset),
    #[error("Ǔ routes disagree on block (lower {lower}, upper {upper}): dimensions {dims:?}")]
    RoutesDisagree { lower: Subset, upper: Subset, dims: [usize; 3] },
}

/// A subspace of one block, by a basis in local coordinates (reduced
/// echelon form).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<K: Field> {
    pub block: usize,
    pub basis: Vec<Vec<K::Elem>>,
}

impl<K: Field> Subspace<K> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn elements(&self, k: &K, space: &BSpace) -> Vec<BElement<K::Elem>> {
        self.basis.iter().map(|v| space.from_local(k, self.block, v)).collect()
    }

    pub fn contains(&self, k: &K, v: &[K::Elem]) -> bool {
        let n = v.len();
        crate::exactla::span_contains(k, &self.basis, &[v.to_vec()], n)
    }

    pub fn same_span(&self, k: &K, other: &Self, ncols: usize) -> bool {
        self.block == other.block && span_eq(k, &self.basis, &other.basis, ncols)
    }
}

/// Primitive generator of `V ∩ {x_i = 0 : i ∈ X}` for an edge `X`, first
/// nonzero entry positive. Entries are in column order of `minor`.
pub fn edge_vector(minor: &Arrangement, x: Subset) -> Result<Vec<BigInt>, ClassError> {
    if x.len() + 1 != minor.rank_total() || !x.is_subset(minor.ground()) || !minor.is_independent(x) {
        return Err(ClassError::NotAnEdge(x));
    }
    let g = minor.generators();
    let vanish = g.select_columns(&minor.column_indices(x)).transpose();
    let c = if x.is_empty() { IntMatrix::identity(g.nrows()) } else { integer_kernel(&vanish) };
    debug_assert_eq!(c.nrows(), 1);
    let v = c.mul(g);
    let mut v: Vec<BigInt> = v.row(0).to_vec();
    if v.iter().find(|t| !t.is_zero()).is_some_and(|t| t.is_negative()) {
        v.iter_mut().for_each(|t| *t = -t.clone());
    }
    Ok(v)
}

/// `α_X = Σ_i v_i e_{X ∪ i}` in the given block.
pub fn edge_class<K: Field>(k: &K, space: &BSpace, block: usize, x: Subset) -> Result<BElement<K::Elem>, ClassError> {
    let b = &space.blocks()[block];
    let v = edge_vector(&b.minor, x)?;
    let mut out = BElement::zero();
    for (col, vi) in v.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        let i = b.minor.columns()[col];
        let pos = b.position(x.with(i)).ok_or(BSpaceError::NotABasis {
            set: x.with(i),
            lower: space.poset().flat(b.lower),
            upper: space.poset().flat(b.upper),
        })?;
        out.add_term(k, pos, &k.from_bigint(vi));
    }
    Ok(out)
}

/// `U^F_E`: the vectors of the block orthogonal to every edge class.
pub fn u_space<K: Field>(k: &K, space: &BSpace, block: usize) -> Result<Subspace<K>, ClassError> {
    let b = &space.blocks()[block];
    let rows: Vec<Vec<K::Elem>> = b
        .minor
        .edges()
        .into_iter()
        .map(|x| edge_class(k, space, block, x).map(|a| space.to_local(k, block, &a)))
        .collect::<Result<_, _>>()?;
    Ok(Subspace { block, basis: kernel(k, &rows, b.dim()) })
}

/// Relation `Σ b_i x_i = 0` satisfied by the projection of the minor to the
/// circuit `c`, normalised so the coefficient at `min c` is `+1`. Entries are
/// indexed by the elements of `c` in increasing order.
pub fn circuit_relation(minor: &Arrangement, c: Subset) -> Result<Vec<BigInt>, ClassError> {
    if c.is_empty() || minor.is_independent(c) || c.iter().any(|i| !minor.is_independent(c.without(i))) {
        return Err(ClassError::NotACircuit(c));
    }
    let cols = minor.generators().select_columns(&minor.column_indices(c));
    let rel = integer_kernel(&cols);
    debug_assert_eq!(rel.nrows(), 1);
    let mut b = rel.row(0).to_vec();
    if b[0].is_negative() {
        b.iter_mut().for_each(|t| *t = -t.clone());
    }
    if let Some(bad) = b.iter().find(|t| !t.abs().is_one()) {
        return Err(ClassError::NonUnitRelation { circuit: c, value: bad.abs().to_string() });
    }
    Ok(b)
}

/// The circuit class of a circuit `c` of the minor in block `block`.
///
/// Returns the index of `F_C = cl(C ∪ upper)` and
/// `u_C = Σ_{i ∈ C} b_i e_{C \ i} ∈ B^upper_{F_C}`.
pub fn circuit_class<K: Field>(
    k: &K,
    space: &BSpace,
    block: usize,
    c: Subset,
) -> Result<(usize, BElement<K::Elem>), ClassError> {
    let b = &space.blocks()[block];
    let rel = circuit_relation(&b.minor, c)?;
    let upper = space.poset().flat(b.upper);
    let fc = space.arrangement().closure(c.union(upper));
    let fc_idx = space.poset().index_of(fc).ok_or(ArrangementError::NotAFlat(fc))?;
    let target = space.block(fc_idx, b.upper).expect("F_C lies between the block's flats");
    let mut out = BElement::zero();
    for (i, bi) in c.iter().zip(&rel) {
        let set = c.without(i);
        let pos = target.position(set).ok_or(BSpaceError::NotABasis { set, lower: fc, upper })?;
        out.add_term(k, pos, &k.from_bigint(bi));
    }
    Ok((fc_idx, out))
}

/// One product of circuit classes per internally passive basis of the
/// block's minor, built greedily from the smallest element. The `i`-th
/// product has the `i`-th passive basis as its lexicographically largest
/// monomial.
pub fn circuit_spanning<K: Field>(k: &K, space: &BSpace, block: usize) -> Result<Vec<BElement<K::Elem>>, ClassError> {
    let b = &space.blocks()[block];
    let (lower, upper) = (b.lower, b.upper);
    let mut out = Vec::new();
    for start in b.minor.internally_passive_bases(None) {
        let mut cur_upper = upper;
        let mut rest = start;
        let mut product = BElement::monomial(k, space.unit_position(upper));
        while !rest.is_empty() {
            let blk = space.block_id(lower, cur_upper).expect("interval block");
            let minor = &space.blocks()[blk].minor;
            let i = rest.min().expect("nonempty");
            let j = minor
                .columns()
                .iter()
                .copied()
                .find(|&j| j < i && !rest.contains(j) && minor.is_basis(rest.without(i).with(j)))
                .ok_or(ClassError::NotPassive(rest))?;
            let c = minor.fundamental_circuit(rest, j);
            let (fc, uc) = circuit_class(k, space, blk, c)?;
            product = space.star(k, &product, &uc)?;
            rest = rest.difference(c);
            cur_upper = fc;
        }
        debug_assert_eq!(cur_upper, lower);
        out.push(product);
    }
    Ok(out)
}

/// `U^F_E` for every block, by block id.
pub fn all_u_spaces<K: Field>(k: &K, space: &BSpace) -> Result<Vec<Subspace<K>>, ClassError> {
    (0..space.blocks().len()).map(|b| u_space(k, space, b)).collect()
}

/// `Ǔ^D_F` as the orthogonal complement of the products `u_C ∗ e_B`.
pub fn uc_by_circuits<K: Field>(k: &K, space: &BSpace, block: usize) -> Result<Subspace<K>, ClassError> {
    let b = &space.blocks()[block];
    let mut rows = Vec::new();
    for c in b.minor.circuits() {
        let (fc, uc) = circuit_class(k, space, block, c)?;
        let inner = space.block(b.lower, fc).expect("F ≤ F_C");
        for pos in inner.positions() {
            let prod = space.star(k, &uc, &BElement::monomial(k, pos))?;
            rows.push(space.to_local(k, block, &prod));
        }
    }
    Ok(Subspace { block, basis: kernel(k, &rows, b.dim()) })
}

/// `Ǔ^D_F` as the common kernel of `u ⊣ ·` for `u ∈ U^D_E`, `F ≤ E < D`.
pub fn uc_by_adjoints<K: Field>(
    k: &K,
    space: &BSpace,
    u: &[Subspace<K>],
    block: usize,
) -> Result<Subspace<K>, ClassError> {
    let b = &space.blocks()[block];
    let (f, d) = (b.lower, b.upper);
    let mut rows = Vec::new();
    for e in space.poset().interval(f, d) {
        if e == d {
            continue;
        }
        let ub = space.block_id(e, d).expect("E ≤ D");
        let target = space.block_id(f, e).expect("F ≤ E");
        let tdim = space.blocks()[target].dim();
        for uel in u[ub].elements(k, space) {
            // matrix of x ↦ u ⊣ x, one row per target coordinate
            let mut m = vec![vec![k.zero(); b.dim()]; tdim];
            for (col, pos) in b.positions().enumerate() {
                let img = space.ladj(k, &uel, &BElement::monomial(k, pos));
                for (t, c) in space.to_local(k, target, &img).into_iter().enumerate() {
                    m[t][col] = c;
                }
            }
            rows.extend(m);
        }
    }
    Ok(Subspace { block, basis: kernel(k, &rows, b.dim()) })
}

/// `Ǔ` of every block, computed three ways and cross-checked.
///
/// Besides the two descriptions above, the third route transports the
/// `U`-spaces of the Gale dual back through `Γ`.
pub fn all_uc_spaces<K: Field>(k: &K, space: &BSpace, u: &[Subspace<K>]) -> Result<Vec<Subspace<K>>, ClassError> {
    let dual = BSpace::build(&space.arrangement().gale_dual())?;
    let gamma = GaleMap::new(space, &dual)?;
    let dual_u = all_u_spaces(k, &dual)?;
    let mut out = Vec::new();
    for block in 0..space.blocks().len() {
        let r1 = uc_by_circuits(k, space, block)?;
        let r2 = uc_by_adjoints(k, space, u, block)?;
        let r3 = transport_back(k, space, &dual, &gamma, &dual_u, block);
        let n = space.blocks()[block].dim();
        if !(r1.same_span(k, &r2, n) && r1.same_span(k, &r3, n)) {
            let b = &space.blocks()[block];
            return Err(ClassError::RoutesDisagree {
                lower: space.poset().flat(b.lower),
                upper: space.poset().flat(b.upper),
                dims: [r1.dim(), r2.dim(), r3.dim()],
            });
        }
        out.push(r1);
    }
    Ok(out)
}

/// `Γ^{-1}` of the dual's `U`-space sitting over `block`.
pub fn transport_back<K: Field>(
    k: &K,
    space: &BSpace,
    dual: &BSpace,
    gamma: &GaleMap,
    dual_u: &[Subspace<K>],
    block: usize,
) -> Subspace<K> {
    let b = &space.blocks()[block];
    let first = gamma.apply_position(b.offset);
    let dual_block = dual.owner_id(first);
    let db = &dual.blocks()[dual_block];
    let mut basis: Vec<Vec<K::Elem>> = dual_u[dual_block]
        .basis
        .iter()
        .map(|v| b.positions().map(|p| v[gamma.apply_position(p) - db.offset].clone()).collect())
        .collect();
    crate::exactla::rref(k, &mut basis, b.dim());
    Subspace { block, basis }
}

#[cfg(test)]
mod tests;
