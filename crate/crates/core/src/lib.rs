//! Artin representations attached to pairs of abelian varieties, recovered
//! from local Euler factors and character tables.
//!
//! Start with [`pipeline::Example`] for the worked example, or with
//! [`verify::verify_paper`] to run every check. The guide in `book/` walks
//! through each module.

pub mod arith;
pub mod chars;
pub mod curves;
pub mod error;
pub mod frobenius;
pub mod lfun;
pub mod pipeline;
pub mod registry;
pub mod report;
pub mod satotate;
pub mod theta;
pub mod verify;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/curves.md")]
    mod curves {}
    #[doc = include_str!("../../../book/src/characters.md")]
    mod characters {}
    #[doc = include_str!("../../../book/src/rankin-selberg.md")]
    mod rankin_selberg {}
    #[doc = include_str!("../../../book/src/frobenius.md")]
    mod frobenius {}
    #[doc = include_str!("../../../book/src/theta.md")]
    mod theta {}
    #[doc = include_str!("../../../book/src/moments.md")]
    mod moments {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
