//! Exact computations around tightness and Golodness of simplicial complexes.

pub mod analysis;
pub mod catalog;
pub mod cli;
pub mod dga;
pub mod error;
pub mod field;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod maps;
pub mod massey;
pub mod partition;
pub mod prism;
pub mod report;
pub mod shuffle;
pub mod simplicial;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use linalg::Matrix;
pub use maps::SimplicialMap;
pub use partition::VertexPartition;
pub use shuffle::Shuffle;
pub use simplicial::{FaceMask, Simplex, SimplicialComplex, VertexLabel};
