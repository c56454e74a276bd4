//! Johnson graphs `J(n,m)`, Boolean-lattice layer graphs `B(n,m)` and graph
//! squares, with certified isomorphisms between them and exhaustive,
//! witness-producing checks of connectivity, transitivity and
//! panconnectedness.
//!
//! ```
//! use johnson_core::{graph, morphism, verify};
//!
//! let iso = morphism::layer_square_isomorphism(4, 1).unwrap();
//! assert!(iso.bijection.is_certified());
//!
//! let j = graph::build_johnson(5, 2).unwrap();
//! let report = verify::verify_panconnected(&j, Default::default()).unwrap();
//! assert_eq!(report.verdict, verify::Verdict::Pass);
//! ```

pub mod connectivity;
pub mod edgelist;
pub mod error;
pub mod graph;
pub mod morphism;
pub mod search;
pub mod subset;
pub mod verify;
pub mod witness;

pub use error::{Error, Result};
pub use graph::{Graph, GraphMeta, VertexId};
pub use subset::SubsetWord;
