//! Identity checks on seeded random instances with at most eight elements.

use matschur::bspace::BSpace;
use matschur::checks;
use matschur::classes::{all_u_spaces, all_uc_spaces};
use matschur::corpus;
use matschur::field::{PrimeField, Rationals};

#[test]
fn random_instances_satisfy_identities() {
    let q = Rationals;
    let f3 = PrimeField::new(3).unwrap();
    for seed in 0..40 {
        let a = corpus::random(seed, 8);
        let sp = BSpace::build(&a).unwrap();
        let u = all_u_spaces(&q, &sp).unwrap();
        let ctx = format!("seed {seed}: {:?}", a.generators());
        checks::star_associative(&sp).expect(&ctx);
        checks::adjunctions(&f3, &sp).expect(&ctx);
        checks::pairing_formula(&q, &sp).expect(&ctx);
        checks::gale_map(&sp).expect(&ctx);
        checks::u_star_closed(&q, &sp, &u).expect(&ctx);
        checks::edge_circuit_orthogonal(&q, &sp).expect(&ctx);
        checks::circuit_products_span(&q, &sp, &u).expect(&ctx);
        all_uc_spaces(&q, &sp, &u).expect(&ctx);
    }
}

#[test]
fn random_instances_are_deterministic() {
    for seed in [1, 17, 99] {
        let a = corpus::random(seed, 8);
        let b = corpus::random(seed, 8);
        assert_eq!(a.generators(), b.generators());
        assert!(a.len() <= 8);
    }
}
