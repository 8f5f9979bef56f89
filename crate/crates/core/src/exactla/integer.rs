use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{ExactError, IntMatrix};

/// Row-style Hermite normal form: `u * m == h`, `u` unimodular.
///
/// `h` is in row echelon form, pivots are positive and the entries above a
/// pivot lie in `0..pivot`. Zero rows sit at the bottom.
#[derive(Clone, Debug)]
pub struct Hermite {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Pivot column of each nonzero row of `h`.
    pub pivots: Vec<usize>,
}

impl Hermite {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The nonzero rows of `h`: a basis of the row lattice.
    pub fn basis(&self) -> IntMatrix {
        let idx: Vec<usize> = (0..self.rank()).collect();
        self.h.select_rows(&idx)
    }
}

// Apply [[s, t], [-b/g, a/g]] to rows (i, j) of both matrices.
fn combine_rows(m: &mut IntMatrix, i: usize, j: usize, s: &BigInt, t: &BigInt, x: &BigInt, y: &BigInt) {
    for c in 0..m.ncols() {
        let a = m.get(i, c).clone();
        let b = m.get(j, c).clone();
        m.set(i, c, s * &a + t * &b);
        m.set(j, c, x * &a + y * &b);
    }
}

fn add_row_multiple(m: &mut IntMatrix, target: usize, src: usize, q: &BigInt) {
    for c in 0..m.ncols() {
        let v = m.get(target, c) - q * m.get(src, c);
        m.set(target, c, v);
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for x in m.row_mut(r) {
        *x = -x.clone();
    }
}

pub fn hermite_normal_form(m: &IntMatrix) -> Hermite {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.nrows());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..h.ncols() {
        if r == h.nrows() {
            break;
        }
        for i in r + 1..h.nrows() {
            if h.get(i, c).is_zero() {
                continue;
            }
            let a = h.get(r, c).clone();
            let b = h.get(i, c).clone();
            let eg = a.extended_gcd(&b);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let x = -(&b / &g);
            let y = &a / &g;
            combine_rows(&mut h, r, i, &s, &t, &x, &y);
            combine_rows(&mut u, r, i, &s, &t, &x, &y);
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        let p = h.get(r, c).clone();
        for i in 0..r {
            let q = h.get(i, c).div_floor(&p);
            if !q.is_zero() {
                add_row_multiple(&mut h, i, r, &q);
                add_row_multiple(&mut u, i, r, &q);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Hermite { h, u, pivots }
}

/// Basis (as rows) of the saturated lattice `{x in Z^n : m x = 0}`,
/// returned in Hermite normal form.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let n = m.ncols();
    let hn = hermite_normal_form(&m.transpose());
    let rank = hn.rank();
    let idx: Vec<usize> = (rank..n).collect();
    let k = hn.u.select_rows(&idx);
    if k.nrows() == 0 {
        return IntMatrix::zeros(0, n);
    }
    hermite_normal_form(&k).basis()
}

/// Determinant by fraction-free elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    assert_eq!(m.nrows(), m.ncols(), "determinant of a non-square matrix");
    let n = m.nrows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.rows().map(|r| r.to_vec()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Nonzero invariant factors `d_1 | d_2 | ...` of the Smith form.
pub fn elementary_divisors(m: &IntMatrix) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m.rows().map(|r| r.to_vec()).collect();
    let rows = m.nrows();
    let cols = m.ncols();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t].div_floor(&a[t][t]);
            if !q.is_zero() {
                for j in t..cols {
                    let v = &a[i][j] - &q * &a[t][j];
                    a[i][j] = v;
                }
            }
            clean &= a[i][t].is_zero();
        }
        for j in t + 1..cols {
            let q = a[t][j].div_floor(&a[t][t]);
            if !q.is_zero() {
                for row in a.iter_mut().skip(t) {
                    let v = &row[j] - &q * &row[t];
                    row[j] = v;
                }
            }
            clean &= a[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // divisibility: fold an offending row into row t and retry
        let p = a[t][t].clone();
        let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &p).is_zero()));
        if let Some(i) = bad {
            for j in t..cols {
                let v = &a[t][j] + &a[i][j];
                a[t][j] = v;
            }
            continue;
        }
        out.push(p.abs());
        t += 1;
    }
    out
}

/// Outcome of [`affine_solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solvability {
    Solution(Vec<BigRational>),
    Inconsistent,
}

impl Solvability {
    pub fn solution(self) -> Option<Vec<BigRational>> {
        match self {
            Solvability::Solution(x) => Some(x),
            Solvability::Inconsistent => None,
        }
    }
}

/// Some rational `x` with `m x = b`. Free variables are set to zero.
pub fn affine_solve(m: &IntMatrix, b: &[BigRational]) -> Solvability {
    assert_eq!(m.nrows(), b.len(), "right-hand side has the wrong length");
    let n = m.ncols();
    let mut a: Vec<Vec<BigRational>> = m
        .rows()
        .zip(b)
        .map(|(r, bi)| {
            let mut row: Vec<BigRational> = r.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            row.push(bi.clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=n {
                    let v = &a[i][j] - &f * &a[r][j];
                    a[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[n].is_zero()) {
        return Solvability::Inconsistent;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][n].clone();
    }
    Solvability::Solution(x)
}

/// Whether every maximal minor of `a` lies in `{-1, 0, 1}`.
///
/// `a` must have full row rank.
pub fn unimodularity_check(a: &IntMatrix) -> Result<bool, ExactError> {
    let d = a.nrows();
    let h = hermite_normal_form(a);
    if h.rank() < d {
        return Err(ExactError::RankDeficient { rank: h.rank(), rows: d });
    }
    let mut ok = true;
    for_each_combination(a.ncols(), d, |cols| {
        let det = determinant(&a.select_columns(cols));
        if det.abs() > BigInt::one() {
            ok = false;
        }
        ok
    });
    Ok(ok)
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order until it
/// returns `false`.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] < i + n - k) else { return };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
