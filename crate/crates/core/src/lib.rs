//! Verification, construction, enumeration and characterisation of
//! chemical nut graphs.
//!
//! A nut graph is a connected graph whose adjacency matrix has nullity one
//! and a kernel vector with no zero entry; it is chemical when every vertex
//! has degree at most three.

#![allow(clippy::needless_range_loop)]

pub mod canon;
pub mod construct;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod graph;
pub mod kernel;
pub mod planarity;
pub mod realise;
pub mod seeds;

pub use construct::{ConstructionStep, ConstructionTrace};
pub use error::{Error, Result};
pub use graph::{edge, DegreeSignature, Edge, Graph};
pub use kernel::{verify_nut, KernelVector, NutCertificate};
pub use realise::{is_realisable, realise, ParameterPair, RealisabilityVerdict};
pub use seeds::{all_seeds, SeedFlag, SeedRecord};
