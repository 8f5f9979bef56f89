use proptest::prelude::*;

use super::*;
use crate::classes::all_u_spaces;
use crate::corpus;
use crate::field::{FieldSpec, PrimeField};
use crate::with_field;

fn s(v: &[usize]) -> Subset {
    v.iter().map(|i| i - 1).collect()
}

fn ext(k: &Rationals, terms: &[(&[usize], i64)]) -> Exterior<BigRational> {
    let mut x = Exterior::zero();
    for (t, c) in terms {
        x.add_term(k, s(t), &k.from_i64(*c));
    }
    x
}

#[test]
fn boundary_examples() {
    let k = Rationals;
    assert_eq!(boundary(&k, &ext(&k, &[(&[1, 2], 1)])), ext(&k, &[(&[2], 1), (&[1], -1)]));
    assert_eq!(boundary(&k, &ext(&k, &[(&[1, 2, 3], 1)])), ext(&k, &[(&[2, 3], 1), (&[1, 3], -1), (&[1, 2], 1)]));
    assert!(boundary(&k, &ext(&k, &[(&[], 1)])).is_zero());
}

#[test]
fn wedge_signs() {
    assert_eq!(wedge_sign(s(&[1]), s(&[2])), Some(false));
    assert_eq!(wedge_sign(s(&[2]), s(&[1])), Some(true));
    assert_eq!(wedge_sign(s(&[3, 4]), s(&[1, 2])), Some(false));
    assert_eq!(wedge_sign(s(&[2, 4]), s(&[1, 3])), Some(true));
    assert_eq!(wedge_sign(s(&[1, 2]), s(&[2])), None);
}

proptest! {
    #[test]
    fn boundary_squares_to_zero(terms in proptest::collection::vec((0u64..256, -5i64..5), 0..12)) {
        let k = Rationals;
        let mut x = Exterior::zero();
        for (bits, c) in terms {
            x.add_term(&k, Subset::from_bits(bits), &k.from_i64(c));
        }
        prop_assert!(boundary(&k, &boundary(&k, &x)).is_zero());
    }

    #[test]
    fn boundary_is_a_graded_derivation(a in 0u64..64, b in 0u64..64) {
        // ∂(x ∧ y) = ∂x ∧ y + (−1)^{|x|} x ∧ ∂y
        let k = Rationals;
        let (sa, sb) = (Subset::from_bits(a), Subset::from_bits(b << 6));
        let x = Exterior::monomial(&k, sa);
        let y = Exterior::monomial(&k, sb);
        let lhs = boundary(&k, &x.wedge(&k, &y));
        let sign = k.from_i64(if sa.len() % 2 == 0 { 1 } else { -1 });
        let rhs = boundary(&k, &x).wedge(&k, &y).add(&k, &x.wedge(&k, &boundary(&k, &y)).scale(&k, &sign));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn e1_um_spaces() {
    let k = Rationals;
    let sp = BSpace::build(&corpus::e1()).unwrap();
    let p = sp.poset();
    let (i, f, t) = (p.bottom().unwrap(), p.index_of(s(&[3, 4])).unwrap(), p.top().unwrap());
    let um = all_um_spaces(&k, &sp);
    assert_eq!(um[sp.block_id(i, t).unwrap()].dim(), 2);
    let bif = sp.block_id(i, f).unwrap();
    let e1_minus_e2 = sp.to_local(&k, bif, &sp.element(&k, i, f, &[(s(&[1]), 1), (s(&[2]), -1)]).unwrap());
    assert!(span_eq(&k, &um[bif].basis, &[e1_minus_e2], 2));
    for x in [i, f, t] {
        assert_eq!(um[sp.block_id(x, x).unwrap()].dim(), 1);
    }
}

#[test]
fn e1_phi() {
    let k = Rationals;
    let sp = BSpace::build(&corpus::e1()).unwrap();
    let o = Orientation::new(&sp).unwrap();
    let phi = SchurMap::new(&sp, &o);
    assert!(phi.signs().iter().all(|&x| x == 1 || x == -1));
    let p = sp.poset();
    let (i, f, t) = (p.bottom().unwrap(), p.index_of(s(&[3, 4])).unwrap(), p.top().unwrap());
    let u1 = sp.element(&k, i, t, &[(s(&[1, 2]), 1), (s(&[1, 3]), -1), (s(&[2, 3]), -1)]).unwrap();
    assert!(boundary(&k, &phi.apply(&k, &sp, &u1)).is_zero());
    let q = sp.element(&k, f, t, &[(s(&[3]), 1), (s(&[4]), -1)]).unwrap();
    let pp = sp.element(&k, i, f, &[(s(&[1]), 1), (s(&[2]), 1)]).unwrap();
    let lhs = phi.apply(&k, &sp, &sp.star(&k, &q, &pp).unwrap());
    let rhs = phi.apply(&k, &sp, &q).wedge(&k, &phi.apply(&k, &sp, &pp));
    assert_eq!(lhs, rhs);
}

#[test]
fn orientations_compose_along_chains() {
    for (name, a) in corpus::bundled() {
        let sp = BSpace::build(&a).unwrap();
        let o = Orientation::new(&sp).unwrap();
        assert_eq!(o.first_inconsistent_chain(&sp).unwrap(), None, "{name}");
        for f in 0..sp.poset().len() {
            assert_eq!(o.reference(f).ground(), a.ground().difference(sp.poset().flat(f)));
        }
    }
}

#[test]
fn phi_is_a_ring_map() {
    for (name, a) in corpus::bundled() {
        let sp = BSpace::build(&a).unwrap();
        let phi = SchurMap::new(&sp, &Orientation::new(&sp).unwrap());
        assert!(phi.is_multiplicative(&sp), "{name}");
    }
}

#[test]
fn bridge_holds_on_corpus() {
    for (name, a) in corpus::bundled() {
        let sp = BSpace::build(&a).unwrap();
        let phi = SchurMap::new(&sp, &Orientation::new(&sp).unwrap());
        for spec in [FieldSpec::Rationals, FieldSpec::Prime(2), FieldSpec::Prime(3)] {
            with_field!(spec, k => {
                let u = all_u_spaces(&k, &sp).unwrap();
                let um = all_um_spaces(&k, &sp);
                assert!(bridge_check(&k, &sp, &phi, &u, &um).iter().all(|&x| x), "{name} {spec}");
            })
        }
    }
}

#[test]
fn edge_classes_pair_like_the_boundary() {
    let k = PrimeField::new(7).unwrap();
    for (name, a) in corpus::bundled() {
        let sp = BSpace::build(&a).unwrap();
        let phi = SchurMap::new(&sp, &Orientation::new(&sp).unwrap());
        for (b, blk) in sp.blocks().iter().enumerate() {
            for x in blk.minor.edges() {
                let c = edge_boundary_constant(&k, &sp, &phi, b, x).unwrap();
                assert!(matches!(c, Some(1) | Some(6)), "{name} {x}: {c:?}");
            }
        }
    }
}
