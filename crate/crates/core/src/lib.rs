//! Block-matrix operators, Choi-matrix certification of completely positive and completely
//! copositive maps, and verifiers for trace and determinant inequalities of positive
//! semidefinite block matrices.

pub mod blockops;
pub mod densemat;
pub mod error;
pub mod exec;
pub mod inequalities;
pub mod io;
pub mod maps;
pub mod randgen;
pub mod suite;

pub use blockops::BlockMatrix;
pub use densemat::{ComplexMatrix, EigenResult, C64, DEFAULT_TOL};
pub use error::{Error, Result};
pub use exec::Exec;
pub use inequalities::{CheckReport, IndexSet};
pub use maps::{BuiltinMap, LinearMapRep};
