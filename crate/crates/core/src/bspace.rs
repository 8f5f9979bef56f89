//! The bigraded space `B = ⊕ B^F_E` over pairs of cyclic flats `E ≤ F`.
//!
//! Block `(E, F)` has one basis vector `e_B` for each basis `B` of the minor
//! `V^F_E`. Positions are global indices into `B`, enumerated by upper flat,
//! then lower flat, then basis in lexicographic order.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::field::Field;
use crate::matroid::{Arrangement, ArrangementError, CyclicFlatPoset};
use crate::subset::Subset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BSpaceError {
    #[error("pairing across blocks ({left:?} and {right:?})")]
    CrossBlock { left: (usize, usize), right: (usize, usize) },
    #[error("{set} is not a basis of block (lower {lower}, upper {upper})")]
    NotABasis { set: Subset, lower: Subset, upper: Subset },
    #[error("element is not supported on a single block")]
    Inhomogeneous,
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

/// One block `B^upper_lower`.
#[derive(Clone, Debug)]
pub struct Block {
    pub lower: usize,
    pub upper: usize,
    pub minor: Arrangement,
    pub offset: usize,
    index: HashMap<Subset, usize>,
}

impl Block {
    pub fn bases(&self) -> &[Subset] {
        self.minor.bases()
    }

    pub fn dim(&self) -> usize {
        self.minor.bases().len()
    }

    /// Rank `d^F_E` of the minor.
    pub fn rank(&self) -> usize {
        self.minor.rank_total()
    }

    /// Local index of basis `b`.
    pub fn local(&self, b: Subset) -> Option<usize> {
        self.index.get(&b).copied()
    }

    pub fn position(&self, b: Subset) -> Option<usize> {
        self.local(b).map(|l| self.offset + l)
    }

    pub fn positions(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.dim()
    }

    pub fn is_diagonal(&self) -> bool {
        self.lower == self.upper
    }
}

/// A basis vector of `B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BIndex {
    pub lower: usize,
    pub upper: usize,
    pub basis: Subset,
}

#[derive(Clone, Debug)]
pub struct BSpace {
    arrangement: Arrangement,
    poset: CyclicFlatPoset,
    blocks: Vec<Block>,
    block_of_pair: HashMap<(usize, usize), usize>,
    owner: Vec<usize>,
}

impl BSpace {
    pub fn build(arrangement: &Arrangement) -> Result<Self, BSpaceError> {
        let poset = arrangement.cyclic_flats();
        let mut blocks = Vec::new();
        let mut block_of_pair = HashMap::new();
        let mut owner = Vec::new();
        let mut offset = 0;
        for (lower, upper) in poset.comparable_pairs() {
            let minor = arrangement.minor(poset.flat(lower), poset.flat(upper))?;
            let index = minor.bases().iter().enumerate().map(|(i, &b)| (b, i)).collect();
            block_of_pair.insert((lower, upper), blocks.len());
            owner.extend(std::iter::repeat(blocks.len()).take(minor.bases().len()));
            let dim = minor.bases().len();
            blocks.push(Block { lower, upper, minor, offset, index });
            offset += dim;
        }
        Ok(BSpace { arrangement: arrangement.clone(), poset, blocks, block_of_pair, owner })
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn poset(&self) -> &CyclicFlatPoset {
        &self.poset
    }

    pub fn dim(&self) -> usize {
        self.owner.len()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, lower: usize, upper: usize) -> Option<&Block> {
        self.block_of_pair.get(&(lower, upper)).map(|&i| &self.blocks[i])
    }

    pub fn block_id(&self, lower: usize, upper: usize) -> Option<usize> {
        self.block_of_pair.get(&(lower, upper)).copied()
    }

    /// The block containing position `pos`.
    pub fn owner(&self, pos: usize) -> &Block {
        &self.blocks[self.owner[pos]]
    }

    pub fn owner_id(&self, pos: usize) -> usize {
        self.owner[pos]
    }

    pub fn index(&self, pos: usize) -> BIndex {
        let b = self.owner(pos);
        BIndex { lower: b.lower, upper: b.upper, basis: b.bases()[pos - b.offset] }
    }

    pub fn position(&self, lower: usize, upper: usize, basis: Subset) -> Option<usize> {
        self.block(lower, upper)?.position(basis)
    }

    /// Position of `e_∅` in the diagonal block of `flat`.
    pub fn unit_position(&self, flat: usize) -> usize {
        self.position(flat, flat, Subset::EMPTY).expect("diagonal block")
    }

    /// Element with the given coefficients on bases of block `(lower, upper)`.
    pub fn element<K: Field>(
        &self,
        k: &K,
        lower: usize,
        upper: usize,
        terms: &[(Subset, i64)],
    ) -> Result<BElement<K::Elem>, BSpaceError> {
        let block = self.block(lower, upper).ok_or(BSpaceError::NotABasis {
            set: Subset::EMPTY,
            lower: self.poset.flat(lower),
            upper: self.poset.flat(upper),
        })?;
        let mut x = BElement::zero();
        for &(b, c) in terms {
            let pos = block.position(b).ok_or(BSpaceError::NotABasis {
                set: b,
                lower: self.poset.flat(lower),
                upper: self.poset.flat(upper),
            })?;
            x.add_term(k, pos, &k.from_i64(c));
        }
        Ok(x)
    }

    /// `e_{B ∪ B'}` if `a ∈ B^F_E`, `b ∈ B^E_D`; `None` when the middle
    /// flats differ.
    pub fn star_monomial(&self, a: usize, b: usize) -> Result<Option<usize>, BSpaceError> {
        let (x, y) = (self.index(a), self.index(b));
        if x.lower != y.upper {
            return Ok(None);
        }
        let set = x.basis.union(y.basis);
        self.position(y.lower, x.upper, set).map(Some).ok_or(BSpaceError::NotABasis {
            set,
            lower: self.poset.flat(y.lower),
            upper: self.poset.flat(x.upper),
        })
    }

    /// `e_A ⊣ e_X = (-1)^|A| e_{X \ A}` for `e_A ∈ B^F_E`, `e_X ∈ B^F_E'`
    /// with `E' ≤ E` and `A ⊆ X`; otherwise zero.
    pub fn ladj_monomial(&self, u: usize, x: usize) -> Option<(usize, bool)> {
        let (a, b) = (self.index(u), self.index(x));
        if a.upper != b.upper || !self.poset.le(b.lower, a.lower) || !a.basis.is_subset(b.basis) {
            return None;
        }
        let pos = self.position(b.lower, a.lower, b.basis.difference(a.basis))?;
        Some((pos, a.basis.len() % 2 == 1))
    }

    /// `e_Y ⊢ e_A = (-1)^|A| e_{Y \ A}` for `e_Y ∈ B^D_E`, `e_A ∈ B^F_E`
    /// with `F ≤ D`, provided `Y \ A` is a basis of `V^D_F`; otherwise zero.
    pub fn radj_monomial(&self, y: usize, u: usize) -> Option<(usize, bool)> {
        let (a, b) = (self.index(y), self.index(u));
        if a.lower != b.lower || !self.poset.le(b.upper, a.upper) || !b.basis.is_subset(a.basis) {
            return None;
        }
        let pos = self.position(b.upper, a.upper, a.basis.difference(b.basis))?;
        Some((pos, b.basis.len() % 2 == 1))
    }

    pub fn star<K: Field>(
        &self,
        k: &K,
        x: &BElement<K::Elem>,
        y: &BElement<K::Elem>,
    ) -> Result<BElement<K::Elem>, BSpaceError> {
        let mut out = BElement::zero();
        for (&a, ca) in &x.coeffs {
            for (&b, cb) in &y.coeffs {
                if let Some(p) = self.star_monomial(a, b)? {
                    out.add_term(k, p, &k.mul(ca, cb));
                }
            }
        }
        Ok(out)
    }

    pub fn ladj<K: Field>(&self, k: &K, u: &BElement<K::Elem>, x: &BElement<K::Elem>) -> BElement<K::Elem> {
        let mut out = BElement::zero();
        for (&a, ca) in &u.coeffs {
            for (&b, cb) in &x.coeffs {
                if let Some((p, neg)) = self.ladj_monomial(a, b) {
                    let c = k.mul(ca, cb);
                    out.add_term(k, p, &if neg { k.neg(&c) } else { c });
                }
            }
        }
        out
    }

    pub fn radj<K: Field>(&self, k: &K, y: &BElement<K::Elem>, u: &BElement<K::Elem>) -> BElement<K::Elem> {
        let mut out = BElement::zero();
        for (&a, ca) in &y.coeffs {
            for (&b, cb) in &u.coeffs {
                if let Some((p, neg)) = self.radj_monomial(a, b) {
                    let c = k.mul(ca, cb);
                    out.add_term(k, p, &if neg { k.neg(&c) } else { c });
                }
            }
        }
        out
    }

    /// `⟨x, y⟩ = (-1)^{d^F_E} Σ x_B y_B` within one block.
    pub fn pairing<K: Field>(
        &self,
        k: &K,
        x: &BElement<K::Elem>,
        y: &BElement<K::Elem>,
    ) -> Result<K::Elem, BSpaceError> {
        let bx = self.support_block(x)?;
        let by = self.support_block(y)?;
        let (Some(bx), Some(by)) = (bx, by) else { return Ok(k.zero()) };
        if bx != by {
            let (l, r) = (&self.blocks[bx], &self.blocks[by]);
            return Err(BSpaceError::CrossBlock { left: (l.lower, l.upper), right: (r.lower, r.upper) });
        }
        let mut s = k.zero();
        for (p, c) in &x.coeffs {
            if let Some(d) = y.coeffs.get(p) {
                s = k.mul_add(&s, c, d);
            }
        }
        Ok(if self.blocks[bx].rank() % 2 == 1 { k.neg(&s) } else { s })
    }

    /// The block holding all of `x`, `None` for zero.
    pub fn support_block<E>(&self, x: &BElement<E>) -> Result<Option<usize>, BSpaceError> {
        let mut it = x.coeffs.keys().map(|&p| self.owner[p]);
        let Some(first) = it.next() else { return Ok(None) };
        if it.all(|b| b == first) {
            Ok(Some(first))
        } else {
            Err(BSpaceError::Inhomogeneous)
        }
    }

    /// Coordinates of `x` on the bases of `block`, ignoring other blocks.
    pub fn to_local<K: Field>(&self, k: &K, block: usize, x: &BElement<K::Elem>) -> Vec<K::Elem> {
        let b = &self.blocks[block];
        b.positions().map(|p| x.coeffs.get(&p).cloned().unwrap_or_else(|| k.zero())).collect()
    }

    pub fn from_local<K: Field>(&self, k: &K, block: usize, v: &[K::Elem]) -> BElement<K::Elem> {
        let b = &self.blocks[block];
        let mut x = BElement::zero();
        for (i, c) in v.iter().enumerate() {
            x.add_term(k, b.offset + i, c);
        }
        x
    }

    /// Human-readable form, e.g. `e12 - e13 - e23`.
    pub fn format<K: Field>(&self, k: &K, x: &BElement<K::Elem>) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (&p, c)) in x.coeffs.iter().enumerate() {
            let b = self.index(p).basis;
            let name = if b.is_empty() {
                "e∅".to_string()
            } else {
                format!("e{}", b.labels().iter().map(ToString::to_string).collect::<Vec<_>>().join(""))
            };
            let neg_one = k.neg(&k.one());
            let term = if k.is_one(c) {
                name
            } else if *c == neg_one {
                format!("-{name}")
            } else {
                format!("{c}·{name}")
            };
            if i > 0 && !term.starts_with('-') {
                out.push_str(" + ");
            } else if i > 0 {
                out.push_str(" - ");
                out.push_str(&term[1..]);
                continue;
            }
            out.push_str(&term);
        }
        out
    }
}

/// Sparse vector in `B`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BElement<E> {
    coeffs: BTreeMap<usize, E>,
}

impl<E: Clone> BElement<E> {
    pub fn zero() -> Self {
        BElement { coeffs: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, E> {
        &self.coeffs
    }

    pub fn get(&self, pos: usize) -> Option<&E> {
        self.coeffs.get(&pos)
    }

    pub fn monomial<K: Field<Elem = E>>(k: &K, pos: usize) -> Self {
        let mut x = Self::zero();
        x.coeffs.insert(pos, k.one());
        x
    }

    pub fn add_term<K: Field<Elem = E>>(&mut self, k: &K, pos: usize, c: &E) {
        if k.is_zero(c) {
            return;
        }
        match self.coeffs.get_mut(&pos) {
            Some(x) => {
                *x = k.add(x, c);
                if k.is_zero(x) {
                    self.coeffs.remove(&pos);
                }
            }
            None => {
                self.coeffs.insert(pos, c.clone());
            }
        }
    }

    pub fn add<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> Self {
        let mut out = self.clone();
        for (&p, c) in &other.coeffs {
            out.add_term(k, p, c);
        }
        out
    }

    pub fn scale<K: Field<Elem = E>>(&self, k: &K, c: &E) -> Self {
        let mut out = Self::zero();
        for (&p, x) in &self.coeffs {
            out.add_term(k, p, &k.mul(x, c));
        }
        out
    }

    pub fn sub<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> Self {
        self.add(k, &other.scale(k, &k.neg(&k.one())))
    }

    /// Lexicographically largest basis in the support, as `(position, coefficient)`.
    pub fn leading(&self, space: &BSpace) -> Option<(usize, &E)> {
        self.coeffs.iter().max_by_key(|(&p, _)| space.index(p).basis).map(|(&p, c)| (p, c))
    }
}

/// The bijection `Γ: B(V) → B(V^!)`, `e_B ∈ B^F_E ↦ e_{(E \ F) \ B}` in
/// block `(I \ F, I \ E)` of the dual.
#[derive(Clone, Debug)]
pub struct GaleMap {
    forward: Vec<usize>,
}

impl GaleMap {
    /// `dual` must be built from the Gale dual of `space`'s arrangement.
    pub fn new(space: &BSpace, dual: &BSpace) -> Result<Self, BSpaceError> {
        let ground = space.arrangement().ground();
        let flat_map: Vec<usize> = space
            .poset()
            .flats()
            .iter()
            .map(|f| dual.poset().index_of(ground.difference(*f)).expect("dual cyclic flats are complements"))
            .collect();
        let mut forward = Vec::with_capacity(space.dim());
        for pos in 0..space.dim() {
            let ix = space.index(pos);
            let (lower, upper) = (space.poset().flat(ix.lower), space.poset().flat(ix.upper));
            let image = lower.difference(upper).difference(ix.basis);
            let (dl, du) = (flat_map[ix.upper], flat_map[ix.lower]);
            let p = dual.position(dl, du, image).ok_or(BSpaceError::NotABasis {
                set: image,
                lower: dual.poset().flat(dl),
                upper: dual.poset().flat(du),
            })?;
            forward.push(p);
        }
        Ok(GaleMap { forward })
    }

    pub fn apply_position(&self, pos: usize) -> usize {
        self.forward[pos]
    }

    pub fn apply<E: Clone>(&self, x: &BElement<E>) -> BElement<E> {
        BElement { coeffs: x.coeffs.iter().map(|(&p, c)| (self.forward[p], c.clone())).collect() }
    }

    pub fn permutation(&self) -> &[usize] {
        &self.forward
    }
}
