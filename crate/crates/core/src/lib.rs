//! Extremal K4(3)-free triple systems.
//!
//! Builds the column/row/coloring constructions attaining Turán's (3,4)
//! bound, computes the isomorphism invariants used to tell them apart,
//! canonizes triple systems, and re-derives small extremal numbers by
//! exhaustive covering search.

pub mod construction;
pub mod error;
pub mod invariants;
pub mod isomorphism;
pub mod layout;
pub mod search;
pub mod system;
pub mod vertex_set;

pub use construction::{
    color_sets, complex_from_layout, conjectured_max, enumerate_construction4,
    exceptional_complex7, turan_original, ColorSet, PrefixCounts,
};
pub use error::{Error, Result};
pub use invariants::{
    fingerprint, ColumnFoot, ColumnLeg, EmptyCluster, EmptyCore, EmptyUnion, InvariantRecord,
    InvariantTower,
};
pub use isomorphism::{are_isomorphic, canonical_form, iso_classes, CanonicalForm, IsoClass};
pub use layout::{Color, Layout};
pub use search::{
    classify_extremal, min_missing_cover, ratio_monotonicity_check, SearchConfig, SearchOutcome,
    SearchReport,
};
pub use system::{Triple, TripleSystem};
pub use vertex_set::VertexSet;
