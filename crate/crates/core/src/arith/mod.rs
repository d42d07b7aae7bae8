//! Exact arithmetic substrate.

pub mod cyclo;
pub mod fq;
pub mod modp;
pub mod numtheory;
pub mod poly;

pub use cyclo::{cyclo_arith, CycloInt, CycloOp, CycloRat};
pub use fq::FiniteField;
pub use modp::degree_pattern;
pub use numtheory::{catalan, power_sum};
pub use poly::{composed_product, IntPoly, Poly, Ring};
