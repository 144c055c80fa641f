//! Enumerative search for small flag (clique) complexes with torsion in their
//! first integral homology group.
//!
//! The crate is organized bottom-up:
//!
//! * [`graph`], [`graph6`]: bit-mask graphs on at most 16 vertices and their text format.
//! * [`canon`]: canonical labeling, automorphism orbits, canonical-code lookup sets.
//! * [`generate`]: isomorph-free generation of graphs under degree bounds.
//! * [`homology`]: clique complexes, boundary matrices, Smith normal form, integral homology.
//! * [`pipeline`]: the connected → tame → cyclic links → torsion → irreducible cascade.
//! * [`classify`]: surface recognition and collapsing for the torsion complexes.
//! * [`poset`]: posets, comparability graphs, and exhaustive small-poset checks.
//! * [`cli`]: run configuration and the stage commands behind the `flagtor` binary.

pub mod canon;
pub mod classify;
pub mod cli;
pub mod generate;
pub mod graph;
pub mod graph6;
pub mod homology;
pub mod pipeline;
pub mod poset;

pub use canon::{are_isomorphic, canonical_form, CanonicalCode, CanonicalSet};
pub use graph::{Graph, GraphError, VertexSet};
pub use graph6::{from_graph6, to_graph6};
pub use homology::{h1_clique, HomologyGroup, SimplicialComplex};
