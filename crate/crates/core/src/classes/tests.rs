use super::*;
use crate::corpus;
use crate::exactla::{rank, span_contains};
use crate::field::{FieldSpec, PrimeField, Rationals};
use crate::with_field;

fn s(v: &[usize]) -> Subset {
    v.iter().map(|i| i - 1).collect()
}

fn local(k: &Rationals, sp: &BSpace, block: usize, terms: &[(&[usize], i64)]) -> Vec<num_rational::BigRational> {
    let b = &sp.blocks()[block];
    let t: Vec<(Subset, i64)> = terms.iter().map(|(x, c)| (s(x), *c)).collect();
    sp.to_local(k, block, &sp.element(k, b.lower, b.upper, &t).unwrap())
}

#[test]
fn e1_edge_class() {
    let k = Rationals;
    let sp = BSpace::build(&corpus::e1()).unwrap();
    let p = sp.poset();
    let top = sp.block_id(p.bottom().unwrap(), p.top().unwrap()).unwrap();
    let a = edge_class(&k, &sp, top, s(&[3])).unwrap();
    assert_eq!(sp.format(&k, &a), "e13 - e23");
    assert!(matches!(edge_class(&k, &sp, top, s(&[3, 4])), Err(ClassError::NotAnEdge(_))));
}

#[test]
fn e1_u_spaces() {
    let k = Rationals;
    let sp = BSpace::build(&corpus::e1()).unwrap();
    let p = sp.poset();
    let (i, f, t) = (p.bottom().unwrap(), p.index_of(s(&[3, 4])).unwrap(), p.top().unwrap());
    let u = all_u_spaces(&k, &sp).unwrap();
    let check = |lo, hi, gens: Vec<Vec<num_rational::BigRational>>| {
        let b = sp.block_id(lo, hi).unwrap();
        let n = sp.blocks()[b].dim();
        assert!(span_eq(&k, &u[b].basis, &gens, n), "block ({lo},{hi})");
    };
    let bif = sp.block_id(i, f).unwrap();
    let bft = sp.block_id(f, t).unwrap();
    let bit = sp.block_id(i, t).unwrap();
    check(i, f, vec![local(&k, &sp, bif, &[(&[1], 1), (&[2], 1)])]);
    check(f, t, vec![local(&k, &sp, bft, &[(&[3], 1), (&[4], -1)])]);
    check(
        i,
        t,
        vec![
            local(&k, &sp, bit, &[(&[1, 2], 1), (&[1, 3], -1), (&[2, 3], -1)]),
            local(&k, &sp, bit, &[(&[1, 2], 1), (&[1, 4], -1), (&[2, 4], -1)]),
        ],
    );
    for x in [i, f, t] {
        let b = sp.block_id(x, x).unwrap();
        assert_eq!(u[b].dim(), 1);
    }

    let uc = all_uc_spaces(&k, &sp, &u).unwrap();
    assert!(span_eq(
        &k,
        &uc[bit].basis,
        &[
            local(&k, &sp, bit, &[(&[1, 2], 1), (&[1, 3], 1), (&[1, 4], 1)]),
            local(&k, &sp, bit, &[(&[1, 2], 1), (&[2, 3], 1), (&[2, 4], 1)]),
        ],
        5
    ));
    assert_eq!(uc[bif].dim(), 1);
    assert_eq!(uc[bft].dim(), 1);
}

#[test]
fn e1_circuit_classes() {
    let k = Rationals;
    let sp = BSpace::build(&corpus::e1()).unwrap();
    let p = sp.poset();
    let (i, f, t) = (p.bottom().unwrap(), p.index_of(s(&[3, 4])).unwrap(), p.top().unwrap());
    let top = sp.block_id(i, t).unwrap();
    let (fc, uc) = circuit_class(&k, &sp, top, s(&[1, 2, 3])).unwrap();
    assert_eq!(fc, i);
    assert_eq!(sp.format(&k, &uc), "-e12 + e13 + e23");
    let (fc, uc) = circuit_class(&k, &sp, top, s(&[3, 4])).unwrap();
    assert_eq!(fc, f);
    assert_eq!(sp.format(&k, &uc), "-e3 + e4");
    assert!(matches!(circuit_class(&k, &sp, top, s(&[1, 2])), Err(ClassError::NotACircuit(_))));

    let span = circuit_spanning(&k, &sp, top).unwrap();
    assert_eq!(span.len(), 2);
    let leads: Vec<Subset> = span.iter().map(|x| sp.index(x.leading(&sp).unwrap().0).basis).collect();
    assert_eq!(leads, vec![s(&[2, 3]), s(&[2, 4])]);
}

fn for_corpus_and_fields(specs: &[FieldSpec], check: impl Fn(&BSpace, FieldSpec, &str)) {
    for (name, a) in corpus::bundled() {
        let sp = BSpace::build(&a).unwrap();
        for &spec in specs {
            check(&sp, spec, name);
        }
    }
}

const FIELDS: [FieldSpec; 4] = [FieldSpec::Rationals, FieldSpec::Prime(2), FieldSpec::Prime(3), FieldSpec::Prime(5)];

#[test]
fn u_dimension_counts_passive_bases() {
    for_corpus_and_fields(&FIELDS, |sp, spec, name| {
        with_field!(spec, k => {
            let u = all_u_spaces(&k, sp).unwrap();
            for (b, blk) in sp.blocks().iter().enumerate() {
                assert_eq!(u[b].dim(), blk.minor.internally_passive_bases(None).len(), "{name} {spec}");
            }
        })
    });
}

#[test]
fn circuit_products_span_u() {
    for_corpus_and_fields(&FIELDS, |sp, spec, name| {
        with_field!(spec, k => {
            let u = all_u_spaces(&k, sp).unwrap();
            for (b, blk) in sp.blocks().iter().enumerate() {
                let prods = circuit_spanning(&k, sp, b).unwrap();
                let passive = blk.minor.internally_passive_bases(None);
                let leads: Vec<Subset> = prods.iter().map(|x| sp.index(x.leading(sp).unwrap().0).basis).collect();
                assert_eq!(leads, passive, "{name} {spec}");
                let vs: Vec<_> = prods.iter().map(|x| sp.to_local(&k, b, x)).collect();
                assert_eq!(rank(&k, &vs, blk.dim()), u[b].dim(), "{name} {spec}");
                assert!(span_contains(&k, &u[b].basis, &vs, blk.dim()), "{name} {spec}");
            }
        })
    });
}

#[test]
fn edge_classes_kill_circuit_classes() {
    let k = Rationals;
    for (name, a) in corpus::bundled() {
        let sp = BSpace::build(&a).unwrap();
        for (b, blk) in sp.blocks().iter().enumerate() {
            for c in blk.minor.circuits() {
                let (fc, uc) = circuit_class(&k, &sp, b, c).unwrap();
                let target = sp.block_id(fc, blk.upper).unwrap();
                for x in sp.blocks()[target].minor.edges() {
                    let alpha = edge_class(&k, &sp, target, x).unwrap();
                    assert_eq!(sp.pairing(&k, &alpha, &uc).unwrap(), k.zero(), "{name} {c} {x}");
                }
            }
        }
    }
}

#[test]
fn u_is_closed_under_star() {
    let k = PrimeField::new(3).unwrap();
    for (name, a) in corpus::bundled() {
        let sp = BSpace::build(&a).unwrap();
        let u = all_u_spaces(&k, &sp).unwrap();
        for (b1, x) in sp.blocks().iter().enumerate() {
            for (b2, y) in sp.blocks().iter().enumerate() {
                if x.lower != y.upper {
                    continue;
                }
                let target = sp.block_id(y.lower, x.upper).unwrap();
                for ux in u[b1].elements(&k, &sp) {
                    for uy in u[b2].elements(&k, &sp) {
                        let prod = sp.star(&k, &ux, &uy).unwrap();
                        assert!(u[target].contains(&k, &sp.to_local(&k, target, &prod)), "{name}");
                    }
                }
            }
        }
    }
}

#[test]
fn uc_routes_agree() {
    for_corpus_and_fields(&FIELDS, |sp, spec, name| {
        with_field!(spec, k => {
            let u = all_u_spaces(&k, sp).unwrap();
            let uc = all_uc_spaces(&k, sp, &u);
            assert!(uc.is_ok(), "{name} {spec}: {uc:?}");
        })
    });
}
