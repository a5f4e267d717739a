//! Recognition, decomposition and certified coloring for graph classes
//! defined by forbidden induced subdivisions, with exhaustive oracles for
//! cross-checking at small sizes.

pub mod alloy;
mod bits;
pub mod bull;
pub mod census;
pub mod error;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod holes;
pub mod iso;
pub mod necklace;
pub mod paw;
pub mod subdivision;

pub use error::{Error, Result};
pub use exact::{Budget, ChiResult, Coloring, LocalChi};
pub use graph::{Graph, Induced, Vertex, VertexSet};
pub use subdivision::{Pattern, SubdivisionWitness};
