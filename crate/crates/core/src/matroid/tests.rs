use super::*;
use crate::corpus;

fn s(v: &[usize]) -> Subset {
    v.iter().map(|i| i - 1).collect()
}

// Brute force: minimal dependent sets.
fn circuits_oracle(a: &Arrangement) -> Vec<Subset> {
    let mut out: Vec<Subset> = a
        .ground()
        .subsets()
        .filter(|&c| !c.is_empty() && !a.is_independent(c) && c.iter().all(|i| a.is_independent(c.without(i))))
        .collect();
    out.sort();
    out
}

// Bases of (M|lower)/upper straight from the definition.
fn contraction_bases_oracle(a: &Arrangement, lower: Subset, upper: Subset) -> Vec<Subset> {
    let r = a.rank(lower) - a.rank(upper);
    let mut out: Vec<Subset> = lower
        .difference(upper)
        .subsets()
        .filter(|&b| b.len() == r && a.rank(b.union(upper)) == a.rank(lower))
        .collect();
    out.sort();
    out
}

#[test]
fn e1_matroid() {
    let a = corpus::e1();
    assert_eq!(a.rank_total(), 2);
    assert_eq!(a.bases(), &[s(&[1, 2]), s(&[1, 3]), s(&[1, 4]), s(&[2, 3]), s(&[2, 4])]);
    assert_eq!(a.circuits(), vec![s(&[1, 2, 3]), s(&[1, 2, 4]), s(&[3, 4])]);
    let p = a.cyclic_flats();
    assert_eq!(p.flats(), &[Subset::EMPTY, s(&[3, 4]), s(&[1, 2, 3, 4])]);
    assert_eq!(a.internally_passive_bases(None), vec![s(&[2, 3]), s(&[2, 4])]);
    assert_eq!(a.flats().len(), 5);
    assert_eq!(a.closure(s(&[3])), s(&[3, 4]));
}

#[test]
fn e1_minors() {
    let a = corpus::e1();
    let f = s(&[3, 4]);
    let top = a.minor(a.ground(), f).unwrap();
    assert_eq!(top.ground(), s(&[1, 2]));
    assert_eq!(top.generators(), &IntMatrix::from_rows(&[vec![1, -1]]));
    let bottom = a.minor(f, Subset::EMPTY).unwrap();
    assert_eq!(bottom.generators(), &IntMatrix::from_rows(&[vec![1, 1]]));
    let diag = a.minor(f, f).unwrap();
    assert_eq!(diag.rank_total(), 0);
    assert_eq!(diag.bases(), &[Subset::EMPTY]);
    assert!(matches!(a.minor(Subset::EMPTY, f), Err(ArrangementError::NotNested { .. })));
    assert!(matches!(a.minor(a.ground(), s(&[3])), Err(ArrangementError::NotAFlat(_))));
}

#[test]
fn k4_counts() {
    let a = corpus::k4();
    assert_eq!(a.bases().len(), 16);
    assert_eq!(a.circuits().len(), 7);
    assert_eq!(a.cyclic_flats().len(), 6);
    assert_eq!(a.internally_passive_bases(None).len(), 6);
    assert_eq!(a.edges().len(), 15);
}

#[test]
fn rejects_bad_input() {
    let e = Arrangement::from_rows(&[vec![1, 0, 0], vec![0, 1, 0]]).unwrap_err();
    assert_eq!(e, ArrangementError::Degenerate { loops: s(&[3]), coloops: s(&[1, 2]) });
    assert_eq!(e.to_string(), "has coloop 1,2; has loop 3");
    assert!(matches!(
        Arrangement::from_rows(&[vec![2, 0, 2], vec![0, 1, 1]]),
        Err(ArrangementError::NotSaturated { .. })
    ));
    assert!(matches!(
        Arrangement::from_rows(&[vec![1, 0, 1, 1], vec![0, 1, 1, 2]]),
        Err(ArrangementError::NotUnimodular { .. })
    ));
    assert_eq!(from_graph(3, &[(1, 1), (1, 2)]).unwrap_err(), ArrangementError::SelfLoop { edge: 1 });
    assert_eq!(from_graph(4, &[(1, 2), (2, 1), (3, 4), (4, 3)]).unwrap_err(), ArrangementError::Disconnected);
    assert!(matches!(from_graph(3, &[(1, 2), (2, 3), (1, 3), (3, 4)]), Err(ArrangementError::BadVertex { .. })));
    // a pendant edge is a bridge
    assert!(matches!(from_graph(4, &[(1, 2), (2, 3), (1, 3), (3, 4)]), Err(ArrangementError::Degenerate { .. })));
}

#[test]
fn dependent_rows_are_dropped() {
    let a = Arrangement::from_rows(&[vec![1, 0, 1, 1], vec![0, 1, 1, 1], vec![1, 1, 2, 2]]).unwrap();
    assert_eq!(a, corpus::e1());
}

#[test]
fn circuits_match_brute_force() {
    for (name, a) in corpus::bundled() {
        assert_eq!(a.circuits(), circuits_oracle(&a), "{name}");
    }
}

#[test]
fn flats_match_closures_of_all_subsets() {
    for (name, a) in corpus::bundled() {
        let mut all: Vec<Subset> = a.ground().subsets().map(|x| a.closure(x)).collect();
        all.sort_by_key(|x| (x.len(), *x));
        all.dedup();
        assert_eq!(a.flats(), all, "{name}");
        // cyclic flats are exactly the unions of circuits that are flats
        let circuits = a.circuits();
        for f in a.flats() {
            let union: Subset = circuits.iter().filter(|c| c.is_subset(f)).fold(Subset::EMPTY, |u, c| u.union(*c));
            assert_eq!(a.is_cyclic(f), union == f, "{name} {f}");
        }
    }
}

#[test]
fn minors_are_contractions_of_restrictions() {
    for (name, a) in corpus::bundled() {
        let p = a.cyclic_flats();
        for (lo, hi) in p.comparable_pairs() {
            let (lower, upper) = (p.flat(lo), p.flat(hi));
            let m = a.minor(lower, upper).unwrap();
            assert_eq!(m.bases(), contraction_bases_oracle(&a, lower, upper), "{name} {lower} {upper}");
            assert_eq!(m.rank_total(), a.rank(lower) - a.rank(upper));
            // the minor's cyclic flats are the interval, relabelled
            let mut interval: Vec<Subset> = p.interval(lo, hi).iter().map(|&x| p.flat(x).difference(upper)).collect();
            interval.sort_by_key(|x| (x.len(), *x));
            assert_eq!(m.cyclic_flats().flats(), interval, "{name} {lower} {upper}");
        }
    }
}

#[test]
fn ranks_add_along_chains() {
    for (name, a) in corpus::bundled() {
        let p = a.cyclic_flats();
        for x in 0..p.len() {
            for y in 0..p.len() {
                for z in 0..p.len() {
                    if p.le(x, y) && p.le(y, z) {
                        let r = |lo: usize, hi: usize| a.minor(p.flat(lo), p.flat(hi)).unwrap().rank_total();
                        assert_eq!(r(x, z), r(x, y) + r(y, z), "{name}");
                    }
                }
            }
        }
    }
}

#[test]
fn gale_duality_complements() {
    for (name, a) in corpus::bundled() {
        let d = a.gale_dual();
        assert_eq!(d.rank_total(), a.len() - a.rank_total());
        let mut comp: Vec<Subset> = a.bases().iter().map(|b| a.ground().difference(*b)).collect();
        comp.sort();
        assert_eq!(d.bases(), comp, "{name}");
        let (cp, _) = a.cyclic_flats().complemented();
        assert_eq!(d.cyclic_flats(), cp, "{name}");
        assert_eq!(d.gale_dual(), a, "{name}");
        let prod = a.generators().mul(&d.generators().transpose());
        assert!(prod.is_zero());
    }
}

#[test]
fn dual_basis_vectors_are_coordinate_duals() {
    let a = corpus::k4();
    for &b in a.bases() {
        let ws = a.dual_basis_vectors(b);
        for (k, w) in ws.iter().enumerate() {
            for (l, i) in b.iter().enumerate() {
                let expect = if k == l { 1 } else { 0 };
                assert_eq!(w[a.column_of(i)], BigInt::from(expect));
            }
        }
    }
}

#[test]
fn passive_order_matters() {
    let a = corpus::e1();
    let reversed = [3, 2, 1, 0];
    let ip = a.internally_passive_bases(Some(&reversed));
    assert_eq!(ip.len(), 2);
    assert_ne!(ip, a.internally_passive_bases(None));
}
