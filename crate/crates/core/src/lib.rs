//! Graph families and matching/independence complexes of categorical
//! products of paths, with exact integral homology and homotopy-preserving
//! graph rewrites.
//!
//! The crate is organized around a pipeline:
//!
//! * [`graph`] — labeled simple graphs, products, line graphs;
//! * [`families`] — the named graph families and their identification as
//!   line-graph components;
//! * [`complex`] — independence and matching complexes as explicit simplex
//!   lists;
//! * [`homology`] — reduced integral homology via Smith normal form
//!   ([`snf`]);
//! * [`reduce`] — fold / edge-toggle / split rewrites with audit traces;
//! * [`recurrence`] — symbolic wedge-of-spheres predictions and the
//!   recurrence evaluator;
//! * [`tables`] — closed-form sphere dimension and count formulas.

pub mod bitset;
pub mod complex;
pub mod families;
pub mod graph;
pub mod homology;
pub mod iso;
pub mod label;
pub mod recurrence;
pub mod reduce;
pub mod snf;
pub mod tables;

pub use complex::{independence_complex, matching_complex, BuildOptions, SimplicialComplex};
pub use families::{build as build_family, components_of_product, FamilyId, FamilyName};
pub use graph::Graph;
pub use homology::{boundary_matrix, reduced_homology, HomologyProfile};
pub use label::VertexLabel;
pub use recurrence::{Evaluator, WedgeDescriptor};
pub use reduce::{auto_reduce, EvalOptions, ReductionTrace, Strategy};
pub use snf::{smith_normal_form, SmithNormalForm, SparseIntMatrix};
