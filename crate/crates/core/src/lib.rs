//! Averaging operators on finite groups, racks, skew braces and
//! Leibniz-type algebras, with exhaustive enumeration and exact checks.

pub mod averaging;
pub mod cli;
pub mod error;
pub mod group_algebra;
pub mod io;
pub mod groups;
pub mod leibniz;
pub mod linalg;
pub mod magma;
pub mod pairings;
pub mod perm;
pub mod ybe;

pub use error::{Error, Result};
pub use groups::{FiniteGroup, GroupAction};
pub use magma::{FiniteMagma, RackReport, SetMap, Verdict, Witness};
