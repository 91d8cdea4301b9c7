//! Exact-arithmetic combinatorial Hopf algebras and rough-path tooling.

pub mod linalg;
pub mod scalar;
pub mod symbols;
pub mod hopf;
pub mod ck;
pub mod series;
pub mod roughpath;
pub mod model_rde;
