//! Exact computations with finite Lie pseudoalgebras over `H = U(d)`.
//!
//! Layers, bottom up: exact rationals and sparse vectors, Lie algebras and
//! symplectic data ([`lie`]), the Hopf algebra `U(d)` in a divided-power PBW
//! basis ([`uea`]), tensor normal forms ([`htensor`]), pseudoalgebras
//! ([`pseudo`]) and their modules ([`pmodules`]).

// structure constants are indexed arrays; explicit index loops read closer to the formulas
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod htensor;
pub mod json;
pub mod lie;
pub mod linalg;
pub mod pmodules;
pub mod pseudo;
pub mod rational;
pub mod sparse;
pub mod uea;

pub use error::{Error, Result};
pub use htensor::{ActionTable, FreeTensor, FreeVec, HModule};
pub use lie::{LieAlgebra, SubalgebraPair, SymplecticData};
pub use pmodules::{PseudoModule, RepSpec, G0};
pub use pseudo::{Kind, PseudoAlgebra, Report, Residual};
pub use rational::Q;
pub use sparse::Sparse;
pub use uea::{HElement, HTensor, MultiIndex, Uea};
