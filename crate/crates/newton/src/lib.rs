//! Newton polygons, Newton maps, the Newton algorithm on ideals of
//! `Q[x, y]` at the origin, Newton trees and Newton processes, and the
//! invariants computed from them.

pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod invariants;
pub mod maps;
pub mod process;
pub mod tree;

pub use dynamics::{run, AnalysisResult, NodeRecord, PrincipalSplit, RunConfig};
pub use error::{NewtonError, Result};
pub use maps::{make_map, Mu, NewtonMap};
pub use process::{NewtonProcess, ProcessEntry, Terminal};
pub use tree::NewtonTree;
