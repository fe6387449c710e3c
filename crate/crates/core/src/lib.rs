//! Search for two-cylinder square-tiled surfaces that are branched over
//! the 2-torsion points of a torus and whose Lyapunov exponents sum to one.

pub mod composition;
pub mod coords;
pub mod diagram;
pub mod error;
mod literal;
pub mod lyapunov;
pub mod origami;
pub mod perm;
pub mod pipeline;
pub mod search;
pub mod strata;

pub use composition::{Composition, CompositionSpec};
pub use coords::SurfaceCoordinates;
pub use diagram::{enumerate_diagrams, OneCylinderDiagram, TopReading, ZeroIncidence};
pub use error::{Error, Result};
pub use lyapunov::{lyapunov_sum, stratum_term, LyapunovSum};
pub use origami::Origami;
pub use perm::Permutation;
pub use strata::Kappa;
