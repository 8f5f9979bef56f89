use super::*;
use crate::bspace::GaleMap;
use crate::classes::{all_u_spaces, all_uc_spaces};
use crate::corpus;
use crate::field::{FieldSpec, PrimeField, Rationals};
use crate::matroid::Arrangement;
use crate::with_field;

fn r_algebra<K: Field>(k: &K, sp: &BSpace) -> (OperatorAlgebra<K>, Vec<usize>) {
    let u = all_u_spaces(k, sp).unwrap();
    let gens = r_generators(k, sp, &u).unwrap();
    assert!(gens.iter().all(|g| g.respects_grading(sp)));
    let alg = OperatorAlgebra::generated_by(k, sp.dim(), gens.into_iter().map(|g| g.matrix).collect());
    (alg, u.iter().map(Subspace::dim).collect())
}

fn rc_algebra<K: Field>(k: &K, sp: &BSpace) -> (OperatorAlgebra<K>, Vec<usize>) {
    let u = all_u_spaces(k, sp).unwrap();
    let uc = all_uc_spaces(k, sp, &u).unwrap();
    let gens = rc_generators(k, sp, &uc).unwrap();
    assert!(gens.iter().all(|g| g.respects_grading(sp)));
    let alg = OperatorAlgebra::generated_by(k, sp.dim(), gens.into_iter().map(|g| g.matrix).collect());
    (alg, uc.iter().map(Subspace::dim).collect())
}

fn small_corpus() -> Vec<(&'static str, Arrangement)> {
    corpus::bundled().into_iter().filter(|(n, _)| *n != "K4").collect()
}

#[test]
fn e1_dimension_is_sum_of_squares() {
    let k = Rationals;
    let sp = BSpace::build(&corpus::e1()).unwrap();
    let (r, _) = r_algebra(&k, &sp);
    assert_eq!(r.dim(), 21);
    let (rc, _) = rc_algebra(&k, &sp);
    assert_eq!(rc.dim(), 21);
}

#[test]
fn block_dimensions_follow_cell_formula() {
    for (name, a) in small_corpus() {
        let sp = BSpace::build(&a).unwrap();
        for spec in [FieldSpec::Rationals, FieldSpec::Prime(2), FieldSpec::Prime(3)] {
            with_field!(spec, k => {
                let (r, ud) = r_algebra(&k, &sp);
                assert_eq!(r.block_dims(&left_idempotents(&k, &sp)), cellular_dims(&sp, &ud), "{name} {spec}");
                let total: usize = cellular_dims(&sp, &ud).iter().flatten().sum();
                assert_eq!(r.dim(), total, "{name} {spec}");
                let (rc, ucd) = rc_algebra(&k, &sp);
                assert_eq!(rc.block_dims(&right_idempotents(&k, &sp)), dual_cellular_dims(&sp, &ucd), "{name} {spec}");
            })
        }
    }
}

#[test]
fn k4_dimension() {
    let k = PrimeField::new(101).unwrap();
    let sp = BSpace::build(&corpus::k4()).unwrap();
    let (r, ud) = r_algebra(&k, &sp);
    assert_eq!(r.dim(), 242);
    assert_eq!(split_simple_dims(&sp, &ud, r.dim()).unwrap().iter().map(|x| x * x).sum::<usize>(), 242);
}

#[test]
fn gale_conjugation_matches_dual_algebra() {
    for (name, a) in small_corpus() {
        for spec in [FieldSpec::Rationals, FieldSpec::Prime(2)] {
            with_field!(spec, k => {
                let sp = BSpace::build(&a).unwrap();
                let dual = BSpace::build(&a.gale_dual()).unwrap();
                let g = GaleMap::new(&sp, &dual).unwrap();
                let (r, _) = r_algebra(&k, &sp);
                let (rc, _) = rc_algebra(&k, &dual);
                assert!(r.conjugate(g.permutation()).same_as(&rc), "{name} {spec}");
            })
        }
    }
}

#[test]
fn left_and_right_generators_commute() {
    let k = PrimeField::new(7).unwrap();
    for (name, a) in small_corpus() {
        let sp = BSpace::build(&a).unwrap();
        let u = all_u_spaces(&k, &sp).unwrap();
        let uc = all_uc_spaces(&k, &sp, &u).unwrap();
        let left = r_generators(&k, &sp, &u).unwrap();
        let right = rc_generators(&k, &sp, &uc).unwrap();
        assert_eq!(first_noncommuting(&k, &left, &right), None, "{name}");
    }
}

#[test]
fn e1_quiver_relations() {
    let rels: Vec<Relation> = E1_RELATIONS.iter().map(|r| parse_relation(r).unwrap()).collect();
    for spec in [FieldSpec::Rationals, FieldSpec::Prime(2), FieldSpec::Prime(3)] {
        with_field!(spec, k => {
            let sp = BSpace::build(&corpus::e1()).unwrap();
            let ops = e1_quiver(&k, &sp).unwrap();
            for out in verify_relations(&k, &ops, &rels).unwrap() {
                assert!(out.holds, "{} over {spec}", out.text);
            }
            let (r, _) = r_algebra(&k, &sp);
            assert!(ops.values().all(|m| r.contains(m)));
        })
    }
    let k = Rationals;
    let sp = BSpace::build(&corpus::e1()).unwrap();
    let ops = e1_quiver(&k, &sp).unwrap();
    let wrong = parse_relation("q p = r1 - r2").unwrap();
    assert!(!verify_relations(&k, &ops, &[wrong]).unwrap()[0].holds);
    assert!(e1_quiver(&k, &BSpace::build(&corpus::k4()).unwrap()).is_err());
}

#[test]
fn relation_parser() {
    let r = parse_relation("p* p = -2 1_I").unwrap();
    assert_eq!(r.lhs, vec![(1, vec!["p*".to_string(), "p".to_string()])]);
    assert_eq!(r.rhs, vec![(-2, vec!["1_I".to_string()])]);
    let r = parse_relation("a + 3 b c - d = 0").unwrap();
    assert_eq!(r.lhs.len(), 3);
    assert_eq!(r.lhs[2], (-1, vec!["d".to_string()]));
    assert_eq!(r.rhs, vec![(0, vec![])]);
    assert!(matches!(parse_relation("a = b = c"), Err(RelationError::Shape(_))));
    assert!(matches!(parse_relation("a + = b"), Err(RelationError::EmptyTerm(_))));
    assert!(matches!(parse_relation("a = "), Err(RelationError::EmptyTerm(_))));
}

#[test]
fn rational_algebras_are_semisimple() {
    let k = Rationals;
    for (name, a) in small_corpus() {
        let sp = BSpace::build(&a).unwrap();
        let (r, ud) = r_algebra(&k, &sp);
        let rad = radical(&r, &left_idempotents(&k, &sp)).unwrap();
        assert_eq!(rad.dim(), 0, "{name}");
        assert_eq!(rad.quotient_center_dim, sp.poset().len(), "{name}");
        assert!(split_simple_dims(&sp, &ud, r.dim()).is_some(), "{name}");
    }
}

/// Brute force over F2: no nonzero element generates a nilpotent two-sided ideal.
fn has_nilpotent_ideal(k: &PrimeField, alg: &OperatorAlgebra<PrimeField>) -> bool {
    let m = alg.dim();
    assert!(m <= 16);
    for mask in 1u32..(1 << m) {
        let x = (0..m)
            .filter(|i| mask >> i & 1 == 1)
            .fold(SparseMatrix::zero(alg.size()), |acc, i| acc.add(k, &alg.basis()[i]));
        // two-sided ideal generated by x
        let mut ech = SparseEchelon::new(*k);
        let mut ideal = Vec::new();
        for a in alg.basis() {
            for b in alg.basis() {
                let y = a.mul(k, &x).mul(k, b);
                if ech.insert(&y.to_flat()).is_some() {
                    ideal.push(y);
                }
            }
        }
        let mut power = ideal.clone();
        for _ in 0..=m {
            let mut e = SparseEchelon::new(*k);
            let mut next = Vec::new();
            for p in &power {
                for y in &ideal {
                    let z = p.mul(k, y);
                    if e.insert(&z.to_flat()).is_some() {
                        next.push(z);
                    }
                }
            }
            power = next;
        }
        if power.is_empty() {
            return true;
        }
    }
    false
}

#[test]
fn e1_over_f2_has_a_radical() {
    let k = PrimeField::new(2).unwrap();
    let sp = BSpace::build(&corpus::e1()).unwrap();
    let (r, _) = r_algebra(&k, &sp);
    let idem = left_idempotents(&k, &sp);
    let rad = radical(&r, &idem).unwrap();
    assert!(rad.dim() > 0);
    assert_eq!(rad.quotient_dim + rad.dim(), 21);
    let (q, _) = radical::quotient(&r, &rad.basis, &idem);
    assert!(!has_nilpotent_ideal(&k, &q));
}

#[test]
fn radicals_over_small_primes_pass_postconditions() {
    for (name, a) in small_corpus() {
        let sp = BSpace::build(&a).unwrap();
        for p in [2, 3, 5] {
            let k = PrimeField::new(p).unwrap();
            let (r, _) = r_algebra(&k, &sp);
            let rad = radical(&r, &left_idempotents(&k, &sp));
            assert!(rad.is_ok(), "{name} F{p}: {rad:?}");
            // Ř(V^!) is conjugate to R(V), so the radicals match in size.
            let dual = BSpace::build(&a.gale_dual()).unwrap();
            let (rc, _) = rc_algebra(&k, &dual);
            let radc = radical(&rc, &right_idempotents(&k, &dual)).unwrap();
            assert_eq!(radc.dim(), rad.unwrap().dim(), "{name} F{p}");
        }
    }
}

#[test]
fn idempotents_must_sum_to_one() {
    let k = Rationals;
    let sp = BSpace::build(&corpus::e1()).unwrap();
    let (r, _) = r_algebra(&k, &sp);
    let idem = left_idempotents(&k, &sp);
    assert_eq!(radical_subspace(&r, &idem[..1]).unwrap_err(), RadicalError::BadIdempotents);
}

#[test]
fn e1_generator_count_and_tables() {
    let k = Rationals;
    let sp = BSpace::build(&corpus::e1()).unwrap();
    let u = all_u_spaces(&k, &sp).unwrap();
    assert_eq!(r_generators(&k, &sp, &u).unwrap().len(), 11);
    let p = sp.poset();
    let (i, f, t) =
        (p.bottom().unwrap(), p.index_of(crate::subset::Subset::from_bits(0b1100)).unwrap(), p.top().unwrap());
    let (r, _) = r_algebra(&k, &sp);
    let dims = r.block_dims(&left_idempotents(&k, &sp));
    assert_eq!((dims[t][t], dims[t][f], dims[t][i], dims[i][i]), (6, 3, 2, 1));
    let (rc, _) = rc_algebra(&k, &sp);
    let dims = rc.block_dims(&right_idempotents(&k, &sp));
    assert_eq!((dims[i][i], dims[i][f]), (6, 3));
    assert_eq!(dims.iter().flatten().sum::<usize>(), 21);
}

#[test]
fn idempotents_decompose_the_unit() {
    let k = PrimeField::new(3).unwrap();
    for (name, a) in small_corpus() {
        let sp = BSpace::build(&a).unwrap();
        for idem in [left_idempotents(&k, &sp), right_idempotents(&k, &sp)] {
            for (x, px) in idem.iter().enumerate() {
                for (y, py) in idem.iter().enumerate() {
                    let prod = px.mul(&k, py);
                    assert_eq!(prod, if x == y { px.clone() } else { SparseMatrix::zero(sp.dim()) }, "{name}");
                }
            }
            let alg = OperatorAlgebra::generated_by(&k, sp.dim(), idem);
            assert_eq!(alg.dim(), sp.poset().len(), "{name}");
        }
    }
}

#[test]
fn closure_ignores_generator_order() {
    let k = PrimeField::new(5).unwrap();
    for (name, a) in small_corpus() {
        let sp = BSpace::build(&a).unwrap();
        let u = all_u_spaces(&k, &sp).unwrap();
        let mut gens: Vec<_> = r_generators(&k, &sp, &u).unwrap().into_iter().map(|g| g.matrix).collect();
        let forward = OperatorAlgebra::generated_by(&k, sp.dim(), gens.clone());
        gens.reverse();
        let third = gens.len() / 3;
        gens.rotate_left(third);
        let shuffled = OperatorAlgebra::generated_by(&k, sp.dim(), gens);
        assert!(forward.same_as(&shuffled), "{name}");
    }
}

#[test]
fn two_element_circuit() {
    let a = Arrangement::from_rows(&[vec![1, 1]]).unwrap();
    let k = Rationals;
    let sp = BSpace::build(&a).unwrap();
    let dual = BSpace::build(&a.gale_dual()).unwrap();
    let (r, _) = r_algebra(&k, &sp);
    let (rc, _) = rc_algebra(&k, &dual);
    assert!(r.conjugate(GaleMap::new(&sp, &dual).unwrap().permutation()).same_as(&rc));
}

#[test]
fn e1_simple_dimensions() {
    let k = Rationals;
    let sp = BSpace::build(&corpus::e1()).unwrap();
    let (r, ud) = r_algebra(&k, &sp);
    let mut dims = split_simple_dims(&sp, &ud, r.dim()).unwrap();
    dims.sort_unstable();
    assert_eq!(dims, vec![1, 2, 4]);
    assert_eq!(center_dim(&r, &left_idempotents(&k, &sp)), 3);
}
