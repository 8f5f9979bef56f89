use crate::subset::Subset;

/// Cyclic flats ordered by reverse inclusion: `E ≤ F` iff `E ⊇ F`.
///
/// The ground set is the minimum and the empty set (when cyclic, which it
/// always is for a loopless matroid) the maximum. Flats are stored by size,
/// then lexicographically, and referred to by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicFlatPoset {
    ground: Subset,
    flats: Vec<Subset>,
}

impl CyclicFlatPoset {
    pub fn new(ground: Subset, mut flats: Vec<Subset>) -> Self {
        flats.sort_by_key(|s| (s.len(), *s));
        flats.dedup();
        CyclicFlatPoset { ground, flats }
    }

    pub fn ground(&self) -> Subset {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn flats(&self) -> &[Subset] {
        &self.flats
    }

    pub fn flat(&self, i: usize) -> Subset {
        self.flats[i]
    }

    pub fn index_of(&self, f: Subset) -> Option<usize> {
        self.flats.iter().position(|&g| g == f)
    }

    /// `a ≤ b`, that is `flat(a) ⊇ flat(b)`.
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.flats[b].is_subset(self.flats[a])
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le(a, b)
    }

    /// Indices `x` with `lo ≤ x ≤ hi`.
    pub fn interval(&self, lo: usize, hi: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.le(lo, x) && self.le(x, hi)).collect()
    }

    /// All pairs `(lower, upper)` with `lower ≤ upper`, sorted by upper then
    /// lower.
    pub fn comparable_pairs(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for upper in 0..self.len() {
            for lower in 0..self.len() {
                if self.le(lower, upper) {
                    v.push((lower, upper));
                }
            }
        }
        v
    }

    /// Index of the bottom element (the ground set), if present.
    pub fn bottom(&self) -> Option<usize> {
        self.index_of(self.ground)
    }

    /// Index of the top element (the empty set), if present.
    pub fn top(&self) -> Option<usize> {
        self.index_of(Subset::EMPTY)
    }

    /// The poset of complements, as the cyclic flats of a Gale dual are.
    /// Returns it with the index map `i -> index of ground \ flat(i)`.
    pub fn complemented(&self) -> (CyclicFlatPoset, Vec<usize>) {
        let comp = CyclicFlatPoset::new(self.ground, self.flats.iter().map(|f| self.ground.difference(*f)).collect());
        let map = self.flats.iter().map(|f| comp.index_of(self.ground.difference(*f)).expect("complement")).collect();
        (comp, map)
    }

    /// The supremum of two flats in the lattice of cyclic flats: the largest
    /// cyclic flat contained in both.
    pub fn join(&self, a: usize, b: usize) -> usize {
        let common = self.flats[a].intersection(self.flats[b]);
        (0..self.len())
            .filter(|&x| self.flats[x].is_subset(common))
            .max_by_key(|&x| self.flats[x].len())
            .expect("empty set is cyclic")
    }
}
