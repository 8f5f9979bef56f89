//! Small named arrangements used by the examples, tests and the command
//! line `corpus` subcommand.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactla::IntMatrix;
use crate::matroid::{from_graph, Arrangement};

/// The running example: the lattice spanned by `(1,0,1,1)` and `(0,1,1,1)`.
/// Its cyclic flats are `∅`, `{3,4}` and everything.
pub fn e1() -> Arrangement {
    Arrangement::from_rows(&[vec![1, 0, 1, 1], vec![0, 1, 1, 1]]).expect("E1 is unimodular")
}

/// Gale dual of [`e1`].
pub fn e1_dual() -> Arrangement {
    e1().gale_dual()
}

/// Cut lattice of the triangle.
pub fn k3() -> Arrangement {
    from_graph(3, &[(1, 2), (2, 3), (1, 3)]).expect("K3")
}

/// Cut lattice of the complete graph on four vertices.
pub fn k4() -> Arrangement {
    from_graph(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).expect("K4")
}

/// `K4` minus an edge.
pub fn diamond() -> Arrangement {
    from_graph(4, &[(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]).expect("diamond")
}

/// Three paths of length two between a pair of vertices.
pub fn theta() -> Arrangement {
    from_graph(5, &[(1, 3), (3, 2), (1, 4), (4, 2), (1, 5), (5, 2)]).expect("theta")
}

/// Every bundled instance with its name.
pub fn bundled() -> Vec<(&'static str, Arrangement)> {
    vec![("E1", e1()), ("E1-dual", e1_dual()), ("K3", k3()), ("K4", k4()), ("diamond", diamond()), ("theta", theta())]
}

/// A random arrangement with at most `max_elements` elements: the cut
/// lattice of a bridgeless multigraph with randomly negated columns, or its
/// Gale dual. Deterministic in `seed`.
pub fn random(seed: u64, max_elements: usize) -> Arrangement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let vertices = rng.gen_range(2..=5);
        let m = rng.gen_range(2..=max_elements.max(2));
        let edges: Vec<(usize, usize)> = (0..m)
            .map(|_| {
                let u = rng.gen_range(1..=vertices);
                let mut v = rng.gen_range(1..vertices);
                if v >= u {
                    v += 1;
                }
                (u, v)
            })
            .collect();
        let Ok(graph) = from_graph(vertices, &edges) else { continue };
        let g = graph.generators();
        let signs: Vec<i64> = (0..graph.len()).map(|_| if rng.gen_bool(0.5) { -1 } else { 1 }).collect();
        let mut flipped = IntMatrix::zeros(g.nrows(), g.ncols());
        for r in 0..g.nrows() {
            for c in 0..g.ncols() {
                flipped.set(r, c, g.get(r, c) * signs[c]);
            }
        }
        let a = Arrangement::from_matrix(&flipped).expect("negating columns keeps the lattice unimodular");
        return if rng.gen_bool(0.3) { a.gale_dual() } else { a };
    }
}
