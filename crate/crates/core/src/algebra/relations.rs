//! Checking linear relations between words in named operators.
//!
//! A relation is written like `q p = r2 - r1` or `p* p = -2 1_I`. Symbols are
//! separated by whitespace and a word is composed right to left, so `q p`
//! means "first `p`, then `q`". Terms may carry an integer coefficient; a
//! bare integer `c` stands for `c` times the identity.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{left_adjoint, left_star, SparseMatrix};
use crate::bspace::{BSpace, BSpaceError};
use crate::field::Field;
use crate::subset::Subset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelationError {
    #[error("relation `{0}` needs exactly one `=`")]
    Shape(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("empty term in `{0}`")]
    EmptyTerm(String),
    #[error("the arrangement does not have the flats this quiver needs")]
    WrongArrangement,
    #[error(transparent)]
    Space(#[from] BSpaceError),
}

/// One side of a relation: `(coefficient, word)` pairs.
pub type Combination = Vec<(i64, Vec<String>)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub text: String,
    pub lhs: Combination,
    pub rhs: Combination,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationOutcome {
    pub text: String,
    pub holds: bool,
}

fn parse_side(side: &str, whole: &str) -> Result<Combination, RelationError> {
    let mut terms = Vec::new();
    let mut sign = 1i64;
    let mut coeff: Option<i64> = None;
    let mut word: Vec<String> = Vec::new();
    let mut pending = false;
    let flush = |terms: &mut Combination, sign: i64, coeff: &mut Option<i64>, word: &mut Vec<String>| {
        if coeff.is_none() && word.is_empty() {
            return Err(RelationError::EmptyTerm(whole.to_string()));
        }
        terms.push((sign * coeff.take().unwrap_or(1), std::mem::take(word)));
        Ok(())
    };
    let spaced = side.replace('+', " + ").replace(" -", " - ");
    for (n, tok) in spaced.split_whitespace().enumerate() {
        match tok {
            "+" | "-" => {
                if pending {
                    flush(&mut terms, sign, &mut coeff, &mut word)?;
                } else if n > 0 {
                    return Err(RelationError::EmptyTerm(whole.to_string()));
                }
                sign = if tok == "-" { -1 } else { 1 };
                pending = false;
            }
            _ => {
                if word.is_empty() && coeff.is_none() {
                    if let Ok(c) = tok.parse::<i64>() {
                        coeff = Some(c);
                        pending = true;
                        continue;
                    }
                }
                word.push(tok.to_string());
                pending = true;
            }
        }
    }
    if !pending {
        return Err(RelationError::EmptyTerm(whole.to_string()));
    }
    flush(&mut terms, sign, &mut coeff, &mut word)?;
    Ok(terms)
}

pub fn parse_relation(text: &str) -> Result<Relation, RelationError> {
    let sides: Vec<&str> = text.split('=').collect();
    if sides.len() != 2 {
        return Err(RelationError::Shape(text.to_string()));
    }
    Ok(Relation { text: text.trim().to_string(), lhs: parse_side(sides[0], text)?, rhs: parse_side(sides[1], text)? })
}

fn evaluate<K: Field>(
    k: &K,
    n: usize,
    ops: &BTreeMap<String, SparseMatrix<K::Elem>>,
    side: &Combination,
) -> Result<SparseMatrix<K::Elem>, RelationError> {
    let mut total = SparseMatrix::zero(n);
    for (c, word) in side {
        let mut m = SparseMatrix::identity(k, n);
        for sym in word {
            let op = ops.get(sym).ok_or_else(|| RelationError::UnknownSymbol(sym.clone()))?;
            m = m.mul(k, op);
        }
        total = total.add(k, &m.scale(k, &k.from_i64(*c)));
    }
    Ok(total)
}

pub fn verify_relations<K: Field>(
    k: &K,
    ops: &BTreeMap<String, SparseMatrix<K::Elem>>,
    relations: &[Relation],
) -> Result<Vec<RelationOutcome>, RelationError> {
    let n = ops.values().next().map_or(0, SparseMatrix::size);
    relations
        .iter()
        .map(|r| {
            let holds = evaluate(k, n, ops, &r.lhs)? == evaluate(k, n, ops, &r.rhs)?;
            Ok(RelationOutcome { text: r.text.clone(), holds })
        })
        .collect()
}

/// Relations among the quiver operators of the four-element example with
/// cyclic flats `∅ < {3,4} < {1,2,3,4}` (ordered by reverse inclusion).
pub const E1_RELATIONS: [&str; 13] = [
    "q p = r2 - r1",
    "p* q* = r2* - r1*",
    "p* p = -2 1_I",
    "q* q = -2 1_F",
    "q* r1 = p",
    "q* r2 = -p",
    "r1* q = p*",
    "r2* q = -p*",
    "r1* r1 = 3 1_I",
    "r1* r2 = 1_I",
    "r2* r1 = 1_I",
    "r2* r2 = 3 1_I",
    "1_I + 1_F + 1_0 = 1",
];

/// The named operators `p, q, r1, r2`, their adjoints and the vertex
/// idempotents `1_I, 1_F, 1_0`.
pub fn e1_quiver<K: Field>(k: &K, space: &BSpace) -> Result<BTreeMap<String, SparseMatrix<K::Elem>>, RelationError> {
    let p = space.poset();
    let s = |v: &[usize]| -> Subset { v.iter().map(|i| i - 1).collect() };
    let find = |f: Subset| p.index_of(f).ok_or(RelationError::WrongArrangement);
    if space.arrangement().len() != 4 || p.len() != 3 {
        return Err(RelationError::WrongArrangement);
    }
    let (i, f, t) = (find(s(&[1, 2, 3, 4]))?, find(s(&[3, 4]))?, find(Subset::EMPTY)?);
    let el = |lo, hi, terms: &[(&[usize], i64)]| {
        let terms: Vec<(Subset, i64)> = terms.iter().map(|(b, c)| (s(b), *c)).collect();
        space.element(k, lo, hi, &terms)
    };
    let elems = [
        ("p", el(i, f, &[(&[1], 1), (&[2], 1)])?),
        ("q", el(f, t, &[(&[3], 1), (&[4], -1)])?),
        ("r1", el(i, t, &[(&[1, 2], 1), (&[1, 3], -1), (&[2, 3], -1)])?),
        ("r2", el(i, t, &[(&[1, 2], 1), (&[1, 4], -1), (&[2, 4], -1)])?),
    ];
    let mut ops = BTreeMap::new();
    for (name, x) in &elems {
        ops.insert(name.to_string(), left_star(k, space, x)?);
        ops.insert(format!("{name}*"), left_adjoint(k, space, x));
    }
    for (name, flat) in [("1_I", i), ("1_F", f), ("1_0", t)] {
        let unit = el(flat, flat, &[(&[], 1)])?;
        ops.insert(name.to_string(), left_star(k, space, &unit)?);
    }
    Ok(ops)
}
