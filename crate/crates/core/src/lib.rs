//! Sparse linear-algebra graph kernels: triangle counting and k-truss
//! decomposition over integer matrices, plus the edge-list file formats,
//! a synthetic grid generator with analytic ground truth, brute-force
//! verification oracles, and benchmark metrics.
//!
//! The computational model is the standard `(+, *)` counting semiring over
//! 64-bit signed integers: matrix products count paths, element-wise masks
//! restrict them to edges, and equality filters pick out the wedge counts
//! the kernels care about.

pub mod bench;
pub mod error;
pub mod generator;
pub mod graph;
pub mod ingest;
pub mod ktruss;
pub mod sparse;
pub mod triangles;

pub use error::{Error, Result};
pub use graph::{EdgeList, Graph};
pub use sparse::{DenseVector, SparseMatrix};
