//! Mixed moments of generators in graph products of Gaussian algebras,
//! computed three ways: by counting Γ-admissible pair partitions, by exact
//! simulation of the graph-product Fock space, and by finite mixed-spin
//! matrix models with random commutation signs.
//!
//! ```
//! use gpgauss::{fock, partitions, SimplicialGraph, LabeledWord, PairingOptions};
//!
//! let g = SimplicialGraph::build(&["a", "b"], &[("a", "b")]).unwrap();
//! let w = LabeledWord::parse(&g, "a:1 b:1 a:1 b:1").unwrap();
//! let count = partitions::count_gamma_admissible(&g, &w, &PairingOptions::default()).unwrap();
//! assert_eq!(count, 1);
//! assert_eq!(fock::vacuum_moment(&g, &w).unwrap(), 1);
//! ```

pub mod cli;
pub mod cltlab;
pub mod error;
pub mod fock;
pub mod graph;
pub mod partitions;
pub mod spinmodel;
pub mod words;

pub use error::{Error, Result};
pub use graph::{SimplicialGraph, Vertex, VertexId};
pub use partitions::{LabeledWord, MatchMode, PairPartition, PairingOptions, Spin};
pub use words::Word;
