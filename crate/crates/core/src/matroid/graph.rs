use crate::exactla::IntMatrix;
use crate::subset::Subset;

use super::{Arrangement, ArrangementError};

/// Cut lattice of a connected multigraph on vertices `1..=vertices`.
///
/// Element `i` of the ground set is edge `i` (0-based, input order). The
/// generator matrix is the signed incidence matrix with the last vertex row
/// removed, edge `(u, v)` getting `+1` at `u` and `-1` at `v`. Its column
/// matroid is the graphic matroid, so bridges are reported as coloops.
pub fn from_graph(vertices: usize, edges: &[(usize, usize)]) -> Result<Arrangement, ArrangementError> {
    for (e, &(u, v)) in edges.iter().enumerate() {
        for w in [u, v] {
            if w == 0 || w > vertices {
                return Err(ArrangementError::BadVertex { edge: e + 1, vertex: w, vertices });
            }
        }
        if u == v {
            return Err(ArrangementError::SelfLoop { edge: e + 1 });
        }
    }
    if !connected(vertices, edges) {
        return Err(ArrangementError::Disconnected);
    }
    let rows = vertices.saturating_sub(1);
    let mut m = vec![vec![0i64; edges.len()]; rows];
    for (e, &(u, v)) in edges.iter().enumerate() {
        if u - 1 < rows {
            m[u - 1][e] += 1;
        }
        if v - 1 < rows {
            m[v - 1][e] -= 1;
        }
    }
    Arrangement::from_matrix(&IntMatrix::from_rows_with_cols(&m, edges.len()))
}

fn connected(vertices: usize, edges: &[(usize, usize)]) -> bool {
    if vertices == 0 {
        return true;
    }
    let mut seen = Subset::singleton(0);
    loop {
        let before = seen;
        for &(u, v) in edges {
            if seen.contains(u - 1) || seen.contains(v - 1) {
                seen = seen.with(u - 1).with(v - 1);
            }
        }
        if seen == before {
            return seen.len() == vertices;
        }
    }
}
