//! Finite models of right topological groups: σ-topologies, N(L), function
//! and measure algebras, Haar measures and normal-system constructions, all
//! over exact complex rationals.

pub mod error;
pub mod exec;
pub mod float;
pub mod functions;
pub mod generators;
pub mod group;
pub mod haar;
pub mod linalg;
pub mod measures;
pub mod rtg;
pub mod scalar;
pub mod topology;
pub mod verify;

pub use error::{Error, Result};
pub use group::{GroupTable, Subgrp};
pub use rtg::RtGroup;
pub use topology::AlexandrovTopology;
