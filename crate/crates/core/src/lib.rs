//! Ext groups of finite graph C*-algebras computed with exact integer
//! linear algebra.
//!
//! For a finite graph `G` with no sinks satisfying Condition (L),
//! `Ext(C*(G)) ≅ coker(A_G - I) ≅ coker(B_G - I)`. This crate computes both
//! presentations through Smith normal form and implements the combinatorics
//! of 1-sink extensions: Wojciech vectors and their classes, sums of
//! extensions, and the constructions producing an essential extension in any
//! prescribed class.
//!
//! ```
//! use extgraph::{ext_group, DirectedMultigraph};
//!
//! // one vertex with three loops: the Cuntz algebra O_3
//! let g = DirectedMultigraph::from_counts(["v"], &[vec![3]]).unwrap();
//! assert_eq!(ext_group(&g).unwrap().to_string(), "Z/2");
//! ```

pub mod cokernel;
pub mod error;
pub mod ext;
pub mod extension;
pub mod format;
pub mod graph;
pub mod matrix;
pub mod snf;

pub use cokernel::{coker_equal, cokernel, solve_in_image, CokerElement, CokernelPresentation};
pub use error::{Error, Hypothesis, Result};
pub use ext::{
    check_hypotheses, edge_class_vector, ext_group, sum_extensions, wojciech_class,
    wojciech_vector, ExtGroup, WojciechClass, WojciechVector,
};
pub use extension::{
    add_sink_at, essential_extension_for_class, essential_extension_for_nonneg,
    essentializing_vector, ladder_graph, ladder_report, obstruction_check, positive_vector_at,
    simple_extension, AddedEdge, EssentializingVector, LadderReport, OneSinkExtension,
    ValidationReport, Violation,
};
pub use graph::{DirectedMultigraph, Edge, GraphBuilder, Path};
pub use matrix::{int_vector, IntMatrix, IntVector};
pub use snf::{smith_normal_form, smith_normal_form_traced, SmithDecomposition, SnfStep};
