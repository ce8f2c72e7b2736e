//! Compressed enumeration of metric, geodesically convex and connected
//! vertex subsets of a graph.
//!
//! A subset `X` of vertices is *metric* when distances measured inside the
//! induced subgraph agree with distances in the whole graph, *geodesically
//! convex* when `X` contains every shortest path between its members, and
//! *connected* when the induced subgraph is connected. All three families
//! are cut out by one superclause per non-adjacent vertex pair, and the
//! engine in [`engine`] enumerates their members as a disjoint union of
//! 012-rows: compressed, exactly countable, and cheap to restrict by
//! cardinality.
//!
//! ```
//! use metsets::{build_system, enumerate, EngineOptions, Family, fixtures};
//!
//! let g = fixtures::g5();
//! let sys = build_system(&g, Family::Metric);
//! let fam = enumerate(&sys, &EngineOptions::deterministic());
//! assert_eq!(fam.count_models(None).to_string(), "47");
//! assert_eq!(fam.stats().rows, 11);
//! ```

pub mod accmetric;
mod bits;
pub mod constraints;
pub mod engine;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod paths;
pub mod rows;

pub use accmetric::{acc_metric_enumerate, AccLevel};
pub use constraints::{build_system, ConstraintSystem, Family, Superclause};
pub use engine::{enumerate, sample_final_rows, EngineOptions, EsopFamily, RowOrder};
pub use generate::{random_connected_graph, random_graph, random_tree};
pub use graph::{DistanceMatrix, Graph, GraphError};
pub use paths::{all_chordless_paths, all_geodesics, interval};
pub use rows::{orthogonalize_terms, Row012};
