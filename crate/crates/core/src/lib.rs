//! Exact computations with 2-solvable Frobenius Lie algebras B ⋉ ℝⁿ: the
//! Frobenius test with certificates, MASAs, classification of the
//! nonderogatory case, exact Jordan forms, and a catalog of named families.
//! The guide in `book/` walks through each part.

#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod catalog;
pub mod error;
pub mod frobenius;
pub mod jordan;
pub mod lie;
pub mod masa;
pub mod matrix;
pub mod mvpoly;
pub mod nonderog;
pub mod poly;
pub mod scalar;

pub use error::{Error, Result};
pub use frobenius::{frobenius_decide, pfaffian_of_dalpha, FrobeniusVerdict, LinearForm};
pub use lie::{direct_sum, semidirect_sum, verify_isomorphism, Fingerprint, LieAlgebra};
pub use matrix::{Matrix, MatrixQ, Subspace};
pub use mvpoly::MultiPoly;
pub use poly::PolyQ;
pub use scalar::{ExactScalar, Field, QuadExt, Rational, Ring};

/// The guide's chapters, compiled so that their snippets run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/scalars.md")]
    mod scalars {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/matrices.md")]
    mod matrices {}
    #[doc = include_str!("../../../book/src/lie.md")]
    mod lie {}
    #[doc = include_str!("../../../book/src/masa.md")]
    mod masa {}
    #[doc = include_str!("../../../book/src/nonderogatory.md")]
    mod nonderogatory {}
    #[doc = include_str!("../../../book/src/jordan.md")]
    mod jordan {}
    #[doc = include_str!("../../../book/src/catalog.md")]
    mod catalog {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
