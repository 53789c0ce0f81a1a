//! Twisted stable graphs of rational type, the genus-0 functions attached to
//! their vertices, and the graph sums relating volumes, d₁ and the
//! Siegel–Veech constants.

pub mod families;
pub mod genus0;
pub mod graph;
pub mod identities;
pub mod volumes;

pub use graph::{Edge, Graph, Leg, LegRef};
pub use volumes::{SpinVolumes, VolumeSource, VolumeTable};
