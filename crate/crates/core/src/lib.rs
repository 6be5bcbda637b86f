//! Strictly nonblocking grooming of dynamic traffic in WDM star and tree
//! networks.
//!
//! A [`TrafficSet`](traffic::TrafficSet) holds `M` demand matrices. Each
//! demand pair must ride one wavelength in every pattern. The solver
//! minimizes ADMs first and wavelengths second with a (μ+λ) genetic
//! algorithm whose chromosomes are demand permutations, decoded by a
//! first-fit packer with wavelength reuse. [`bounds`] gives the analytical
//! lower and upper bounds used to judge solutions.

pub mod bounds;
pub mod error;
pub mod evolve;
pub mod grooming;
pub mod topology;
pub mod traffic;

pub use error::{Error, Result};
pub use evolve::{EvolutionResult, GaConfig};
pub use grooming::{decode, validate, Fitness, GroomingSolution, Instance};
pub use topology::{Direction, Topology, TopologyKind};
pub use traffic::{TrafficParams, TrafficSet};
