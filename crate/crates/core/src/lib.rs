//! Shallow minors of region intersection graphs and string graphs: exact
//! densities, orientations, proper path representations, junction-free
//! sampling, host-model extraction, the segment lower-bound family, and
//! colouring-number checks.

pub mod bounds;
pub mod colouring;
pub mod density;
pub mod error;
pub mod extraction;
mod flow;
pub mod geometry;
pub mod graph;
pub mod lowerbound;
pub mod minor;
pub mod pipeline;
pub mod rational;
pub mod report;
pub mod representation;
pub mod rig;
pub mod sampling;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex};
pub use rational::Rational;
