//! Graded dimensions of the face ring `k[Δ]` of the independence complex,
//! the subsets `F̃_j` cut out by a generic affine lift, and the direct sum
//! decomposition of monomial ideals they give.
//!
//! Series are indexed by polynomial degree `k`; the grading in which each
//! variable has degree 2 puts that piece in degree `2k`. Caps are given in
//! the doubled grading.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactla::{affine_solve, IntMatrix, Solvability};
use crate::matroid::{Arrangement, ArrangementError};
use crate::subset::Subset;

/// Largest accepted degree cap (in the doubled grading).
pub const MAX_DEGREE: usize = 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FaceRingError {
    #[error("degree cap {0} exceeds the limit {MAX_DEGREE}")]
    DegreeTooLarge(usize),
    #[error("{0} is not a flat")]
    NotAFlat(Subset),
    #[error("α has {got} entries, expected {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("α is not generic: the translate meets the zero set of circuit {0}")]
    NonGenericAlpha(Subset),
    #[error("ξ is not generic for {target}: vanishing on flat {flat} is wrong")]
    NonGenericXi { target: Subset, flat: Subset },
    #[error("no generic parameters found after {0} attempts")]
    SearchFailed(usize),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Monomial counts of `k[Δ]` by support and polynomial degree, found by
/// walking every exponent vector with independent support.
#[derive(Clone, Debug)]
pub struct FaceRingView {
    arrangement: Arrangement,
    cap: usize,
    by_support: BTreeMap<Subset, Vec<u128>>,
}

impl FaceRingView {
    /// `cap` is the largest degree in the doubled grading.
    pub fn new(arrangement: &Arrangement, cap: usize) -> Result<Self, FaceRingError> {
        if cap > MAX_DEGREE {
            return Err(FaceRingError::DegreeTooLarge(cap));
        }
        let top = cap / 2;
        let cols: Vec<usize> = arrangement.ground().iter().collect();
        let mut by_support: BTreeMap<Subset, Vec<u128>> = BTreeMap::new();
        let mut independent: HashMap<Subset, bool> = HashMap::new();
        // Stack entries: (next variable, degree so far, support).
        let mut stack = vec![(0usize, 0usize, Subset::EMPTY)];
        while let Some((next, deg, support)) = stack.pop() {
            if next == cols.len() {
                by_support.entry(support).or_insert_with(|| vec![0; top + 1])[deg] += 1;
                continue;
            }
            let i = cols[next];
            stack.push((next + 1, deg, support));
            let with = support.with(i);
            let ok = *independent.entry(with).or_insert_with(|| arrangement.is_independent(with));
            if ok {
                for e in 1..=top.saturating_sub(deg) {
                    stack.push((next + 1, deg + e, with));
                }
            }
        }
        Ok(FaceRingView { arrangement: arrangement.clone(), cap, by_support })
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Largest polynomial degree covered.
    pub fn top(&self) -> usize {
        self.cap / 2
    }

    pub fn supports(&self) -> impl Iterator<Item = (Subset, &[u128])> {
        self.by_support.iter().map(|(s, v)| (*s, v.as_slice()))
    }

    /// Per-degree dimensions of the whole ring.
    pub fn hilbert(&self) -> Vec<u128> {
        self.sum_where(|_| true)
    }

    /// Per-degree dimensions of the ideal generated by the given squarefree
    /// monomials.
    pub fn ideal_hilbert(&self, generators: &[Subset]) -> Vec<u128> {
        self.sum_where(|s| generators.iter().any(|g| g.is_subset(s)))
    }

    fn sum_where(&self, keep: impl Fn(Subset) -> bool) -> Vec<u128> {
        let mut out = vec![0u128; self.top() + 1];
        for (s, counts) in &self.by_support {
            if keep(*s) {
                for (o, c) in out.iter_mut().zip(counts) {
                    *o += c;
                }
            }
        }
        out
    }
}

/// `Σ_B t^{|IP(B)|} / (1 − t)^d` up to polynomial degree `top`.
pub fn shelling_hilbert(arrangement: &Arrangement, top: usize) -> Vec<u128> {
    let d = arrangement.rank_total();
    let mut h = vec![0u128; top + 1];
    for &b in arrangement.bases() {
        let ip = arrangement.internally_passive_elements(b, None).len();
        if ip <= top {
            h[ip] += 1;
        }
    }
    divide_by_free(&h, d)
}

/// Multiply a truncated series by `1 / (1 − t)^r`.
fn divide_by_free(series: &[u128], r: usize) -> Vec<u128> {
    (0..series.len())
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let free = if r == 0 { u128::from(k == i) } else { binomial(k - i + r - 1, r - 1) };
                    series[i] * free
                })
                .sum()
        })
        .collect()
}

/// Genericity data and the resulting subsets `F̃_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TildeFlat {
    pub set: Subset,
    pub closure: Subset,
    pub value: BigRational,
}

impl TildeFlat {
    pub fn rank(&self) -> usize {
        self.set.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TildeFlatData {
    pub flat: Subset,
    pub alpha: Vec<BigRational>,
    pub xi: Vec<BigInt>,
    pub tilde: Vec<TildeFlat>,
}

/// A point of `(V + α) ∩ {x_S = 0}`, in ground coordinates.
fn point_on(a: &Arrangement, alpha: &[BigRational], s: Subset) -> Option<Vec<BigRational>> {
    let g = a.generators();
    let cols = a.column_indices(s);
    let rhs: Vec<BigRational> = cols.iter().map(|&c| -alpha[c].clone()).collect();
    let sys = if cols.is_empty() { IntMatrix::zeros(0, g.nrows()) } else { g.select_columns(&cols).transpose() };
    let c = match affine_solve(&sys, &rhs) {
        Solvability::Solution(c) => c,
        Solvability::Inconsistent => return None,
    };
    Some(
        (0..a.len())
            .map(|j| {
                c.iter()
                    .enumerate()
                    .fold(alpha[j].clone(), |acc, (r, cr)| acc + cr * BigRational::from_integer(g.get(r, j).clone()))
            })
            .collect(),
    )
}

/// Whether `ξ` vanishes on `V ∩ {x_G = 0}`.
fn vanishes_on(a: &Arrangement, xi: &[BigInt], g: Subset) -> Result<bool, FaceRingError> {
    let m = a.minor(a.ground(), g)?;
    let idx: Vec<usize> = m.ground().iter().map(|i| a.column_of(i)).collect();
    let all = m
        .generators()
        .rows()
        .all(|row| row.iter().zip(&idx).fold(BigInt::zero(), |acc, (x, &c)| acc + x * &xi[c]).is_zero());
    Ok(all)
}

pub fn check_alpha(a: &Arrangement, alpha: &[BigRational]) -> Result<(), FaceRingError> {
    if alpha.len() != a.len() {
        return Err(FaceRingError::WrongLength { got: alpha.len(), expected: a.len() });
    }
    for c in a.circuits() {
        if point_on(a, alpha, c).is_some() {
            return Err(FaceRingError::NonGenericAlpha(c));
        }
    }
    Ok(())
}

/// `ξ` must vanish on `V^G` exactly for the flats `G ⊇ F`.
pub fn check_xi(a: &Arrangement, flat: Subset, xi: &[BigInt]) -> Result<(), FaceRingError> {
    if xi.len() != a.len() {
        return Err(FaceRingError::WrongLength { got: xi.len(), expected: a.len() });
    }
    for g in a.flats() {
        if vanishes_on(a, xi, g)? != flat.is_subset(g) {
            return Err(FaceRingError::NonGenericXi { target: flat, flat: g });
        }
    }
    Ok(())
}

/// The minimal sets `S` on which the lift of `ξ` is constant along
/// `(V + α) ∩ {x_S = 0}`, sorted by that constant.
pub fn tilde_flats(
    a: &Arrangement,
    flat: Subset,
    alpha: &[BigRational],
    xi: &[BigInt],
) -> Result<TildeFlatData, FaceRingError> {
    if !a.is_flat(flat) {
        return Err(FaceRingError::NotAFlat(flat));
    }
    check_alpha(a, alpha)?;
    check_xi(a, flat, xi)?;
    let cols: Vec<usize> = a.ground().iter().collect();
    let mut found = Vec::new();
    // Independent sets grown in increasing order; a set whose closure
    // covers the flat is not extended further.
    let mut stack = vec![(0usize, Subset::EMPTY)];
    while let Some((next, s)) = stack.pop() {
        if flat.is_subset(a.closure(s)) {
            if s.iter().all(|i| !flat.is_subset(a.closure(s.without(i)))) {
                found.push(s);
            }
            continue;
        }
        for (j, &i) in cols.iter().enumerate().skip(next) {
            if a.is_independent(s.with(i)) {
                stack.push((j + 1, s.with(i)));
            }
        }
    }
    let mut tilde = Vec::with_capacity(found.len());
    for s in found {
        let pt = point_on(a, alpha, s).expect("independent sets meet a generic translate");
        let value =
            pt.iter().zip(xi).fold(BigRational::zero(), |acc, (x, w)| acc + x * BigRational::from_integer(w.clone()));
        tilde.push(TildeFlat { set: s, closure: a.closure(s), value });
    }
    tilde.sort_by(|x, y| x.value.cmp(&y.value).then(x.set.cmp(&y.set)));
    Ok(TildeFlatData { flat, alpha: alpha.to_vec(), xi: xi.to_vec(), tilde })
}

/// Random generic `α` and a `ξ` supported on the flat, from a seeded
/// generator.
pub fn generic_parameters(
    a: &Arrangement,
    flat: Subset,
    seed: u64,
) -> Result<(Vec<BigRational>, Vec<BigInt>), FaceRingError> {
    const ATTEMPTS: usize = 200;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = a.len();
    let mut alpha = None;
    for attempt in 0..ATTEMPTS {
        let spread = 4 + attempt as i64;
        let cand: Vec<BigRational> =
            (0..n).map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-spread..=spread)))).collect();
        if check_alpha(a, &cand).is_ok() {
            alpha = Some(cand);
            break;
        }
    }
    let alpha = alpha.ok_or(FaceRingError::SearchFailed(ATTEMPTS))?;
    for attempt in 0..ATTEMPTS {
        let spread = 3 + attempt as i64;
        let xi: Vec<BigInt> = a
            .ground()
            .iter()
            .map(|i| if flat.contains(i) { BigInt::from(rng.gen_range(-spread..=spread)) } else { BigInt::zero() })
            .collect();
        if check_xi(a, flat, &xi).is_ok() {
            return Ok((alpha, xi));
        }
    }
    Err(FaceRingError::SearchFailed(ATTEMPTS))
}

/// One polynomial degree of the decomposition check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRow {
    pub degree: usize,
    pub ring: u128,
    pub ideals: Vec<u128>,
    pub predicted: Vec<u128>,
    pub union: u128,
}

impl DegreeRow {
    pub fn holds(&self) -> bool {
        self.ideals == self.predicted && self.ideals.iter().sum::<u128>() == self.union
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseReport {
    pub rows: Vec<DegreeRow>,
    /// Pairs `(j, j')` with `F̃_j ∪ F̃_j'` independent; should be empty.
    pub overlapping: Vec<(usize, usize)>,
}

impl MorseReport {
    pub fn holds(&self) -> bool {
        self.overlapping.is_empty() && self.rows.iter().all(DegreeRow::holds)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.rows.iter().find(|r| !r.holds()).map(|r| r.degree)
    }
}

/// Compares, degree by degree, the ideals `e_{F̃_j} k[Δ]` with
/// `t^{r_j} Hilb(k[Δ^{F_j}]) / (1 − t)^{r_j}` and checks that their sum is
/// direct.
pub fn morse_decomposition_check(view: &FaceRingView, data: &TildeFlatData) -> Result<MorseReport, FaceRingError> {
    let a = view.arrangement();
    let top = view.top();
    let ring = view.hilbert();
    let gens: Vec<Subset> = data.tilde.iter().map(|t| t.set).collect();
    let union = view.ideal_hilbert(&gens);
    let ideals: Vec<Vec<u128>> = gens.iter().map(|g| view.ideal_hilbert(std::slice::from_ref(g))).collect();
    let mut predicted = Vec::with_capacity(gens.len());
    for t in &data.tilde {
        let minor = a.minor(a.ground(), t.closure)?;
        let inner = FaceRingView::new(&minor, view.cap())?.hilbert();
        let shifted: Vec<u128> = (0..=top).map(|k| if k >= t.rank() { inner[k - t.rank()] } else { 0 }).collect();
        predicted.push(divide_by_free(&shifted, t.rank()));
    }
    let mut overlapping = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if a.is_independent(gens[i].union(gens[j])) {
                overlapping.push((i, j));
            }
        }
    }
    let rows = (0..=top)
        .map(|k| DegreeRow {
            degree: k,
            ring: ring[k],
            ideals: ideals.iter().map(|s| s[k]).collect(),
            predicted: predicted.iter().map(|s| s[k]).collect(),
            union: union[k],
        })
        .collect();
    Ok(MorseReport { rows, overlapping })
}

/// Parses a rational such as `3`, `-1/2`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}
