//! Exact computations with unimodular arrangements.
//!
//! Given a unimodular lattice `V ⊂ Z^n`, the crate builds the poset of
//! cyclic flats, the space `B` spanned by bases of the minors between them,
//! and the operator algebras `R(V)` and `Ř(V)` acting on `B`, over `Q` or a
//! prime field. Around these sit checks of the block dimension formulas,
//! Gale duality, radicals, an exterior algebra model and face ring Hilbert
//! series.
//!
//! ```
//! use matschur::algebra::{r_generators, OperatorAlgebra};
//! use matschur::bspace::BSpace;
//! use matschur::classes::all_u_spaces;
//! use matschur::field::Rationals;
//!
//! let sp = BSpace::build(&matschur::corpus::e1()).unwrap();
//! let u = all_u_spaces(&Rationals, &sp).unwrap();
//! let gens = r_generators(&Rationals, &sp, &u).unwrap();
//! let r = OperatorAlgebra::generated_by(&Rationals, sp.dim(), gens.into_iter().map(|g| g.matrix).collect());
//! assert_eq!((sp.dim(), r.dim()), (12, 21));
//! ```
//!
//! The guide in `book/` walks through each module.

// Index loops mirror the formulas; field constructors take the field.
#![allow(clippy::needless_range_loop, clippy::wrong_self_convention)]

pub mod algebra;
pub mod bspace;
pub mod checks;
pub mod classes;
pub mod corpus;
pub mod exactla;
pub mod facering;
pub mod field;
pub mod matroid;
pub mod schur;
pub mod subset;

// The guide's code blocks run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/arrangements.md")]
    mod arrangements {}
    #[doc = include_str!("../../../book/src/bspace.md")]
    mod bspace {}
    #[doc = include_str!("../../../book/src/classes.md")]
    mod classes {}
    #[doc = include_str!("../../../book/src/algebras.md")]
    mod algebras {}
    #[doc = include_str!("../../../book/src/semisimple.md")]
    mod semisimple {}
    #[doc = include_str!("../../../book/src/schur.md")]
    mod schur {}
    #[doc = include_str!("../../../book/src/facering.md")]
    mod facering {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
