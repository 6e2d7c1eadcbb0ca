//! Hardy weights, ground states, P-Green functions and spectral constants
//! on Euclidean, real hyperbolic and Damek-Ricci spaces.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod green;
pub mod jet;
pub mod quad;
pub mod radial;
pub mod space;
pub mod weights;
pub mod sturm;
pub mod verify;
pub mod cli;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/spaces.md")]
    mod spaces {}
    #[doc = include_str!("../../../book/src/radial-calculus.md")]
    mod radial_calculus {}
    #[doc = include_str!("../../../book/src/hardy-weights.md")]
    mod hardy_weights {}
    #[doc = include_str!("../../../book/src/green-functions.md")]
    mod green_functions {}
    #[doc = include_str!("../../../book/src/spectral.md")]
    mod spectral {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
