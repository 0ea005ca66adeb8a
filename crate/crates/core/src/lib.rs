//! Hamilton compression of vertex-transitive graphs.
//!
//! The crate builds metacirculant graph families, computes their automorphism
//! groups by partition-refinement backtracking, and searches for Hamilton
//! cycles with rotational symmetry by lifting cycles from quotient
//! multigraphs with voltages in `Z_k`.

pub mod autgroup;
pub mod compression;
pub mod error;
pub mod families;
pub mod graph;
pub mod hamlift;
pub mod numth;
pub mod perm;

pub use error::{Error, Result};
pub use families::{FamilyInstance, FamilyParams, P3Variant};
pub use graph::{Graph, GridLabeling};
pub use perm::{OrbitPartition, Perm};
