//! Hyperbolic Kac–Moody root systems: generalized Cartan matrices, Coxeter
//! and Dynkin diagrams, real and imaginary roots, root lattices, reflection
//! subgroups and maximal rank root subsystems.

pub mod arith;
pub mod canon;
pub mod classify;
pub mod coset;
pub mod diagram;
pub mod dsl;
pub mod dynkin;
pub mod error;
pub mod frames;
pub mod io;
pub mod lattice;
pub mod roots;
pub mod subsystem;

pub use diagram::{CoxeterDiagram, GeneralizedCartanMatrix, Label, MatrixType, TypeTag};
pub use error::{Error, Result};
