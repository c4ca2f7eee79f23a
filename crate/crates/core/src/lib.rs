//! Minimally rigid graphs and exact root bounds on their Euclidean embeddings.
//!
//! The crate enumerates planar Laman graphs and 1-skeleta of simplicial
//! polyhedra through Henneberg constructions, builds the pinned sparse
//! polynomial systems whose solutions are the Euclidean embeddings of a
//! graph with generic edge lengths, and computes exact mixed volumes of
//! those systems to bound the number of embeddings.
//!
//! Module map:
//!
//! * [`graph`] — core graph type, Henneberg steps, rigidity-class checks
//! * [`canon`] — canonical labeling and isomorphism keys
//! * [`enumerate`] — exhaustive catalog generation with dedup and caching
//! * [`polysys`] — pinned support systems, face systems, degeneracy witness
//! * [`mixedvol`] — exact mixed volume via mixed-cell enumeration, plus an
//!   inclusion–exclusion oracle for cross-validation
//! * [`bounds`] — closed-form bound calculators and the step-ratio scan
//! * [`constructions`] — named graph generators
//! * [`oracle`] — independent brute-force reference implementations used to
//!   validate the fast paths

pub mod bounds;
pub mod cache;
pub mod canon;
pub mod constructions;
pub mod enumerate;
pub mod graph;
pub mod hull;
pub mod lp;
pub mod mixedvol;
pub mod oracle;
pub mod pebble;
pub mod planar;
pub mod polysys;

pub use graph::{Dim, GraphError, HClass, HennebergSequence, HennebergStep, RigidGraph, StepKind};

/// Version tag carried by all JSON records emitted by the CLI.
pub const SCHEMA_VERSION: u32 = 1;
