//! Exact-arithmetic toolkit for Laplacian eigenvectors with entries in
//! {-1,1} (bivalent) and {-1,0,1} (trivalent): verification, exhaustive
//! search, family recognition and certified generators.

pub(crate) mod bitgraph;
pub mod certificate;
pub mod search;
pub(crate) mod solver;
pub mod error;
pub mod family;
pub mod format;
pub mod graph;
pub mod graph6;
pub mod valuation;

pub use certificate::{verify, Certificate, CertificateRecord, Valence};
pub use error::{Error, Result};
pub use family::{bicyclic_shape, classify_family, BicyclicShape, FamilyClassification, FamilyKind};
pub use format::{parse_edge_list, to_dot, to_edge_list, ParsedEdgeList};
pub use graph::{Block, Graph};
pub use graph6::{encode_graph6, parse_graph6};
pub use search::{brute_force, csp_search, full_spectrum, SearchResult, SearchStats};
pub use valuation::{hard_degree, soft_nodes, Valuation};
