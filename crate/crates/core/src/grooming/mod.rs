//! Strictly nonblocking assignment of demands to wavelengths.
//!
//! A demand is fixed to one wavelength for every traffic pattern, so each
//! check and every load update is carried out per pattern.

mod decode;
mod solution;
mod state;
mod validate;

pub use decode::{check_permutation, decode, decode_with_stats, DecodeStats};
pub use solution::{DemandDocument, Fitness, GroomingSolution, SolutionDocument, WavelengthDocument};
pub use state::{Instance, Verdict, WavelengthState};
pub use validate::{validate, Violation};
