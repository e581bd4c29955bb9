//! Recognition and word-representation machinery for split comparability
//! graphs.
//!
//! The library answers three questions about a split graph `G = (I ∪ C, E)`:
//!
//! 1. Is `G` a comparability graph? ([`labelling::find_labelling`],
//!    [`orientation::find_transitive_orientation`], and the forbidden family
//!    in [`split`] give three cross-checkable routes.)
//! 2. If so, produce a 3-uniform word `z = q1 q2 q3` whose three blocks are
//!    permutations of the vertices and which represents `G` by strict
//!    alternation ([`wordgen::build_word`]).
//! 3. What is the permutation-representation number of `G`
//!    ([`posetdim::prn`]), with a certificate that re-verifies: a complete
//!    graph, a two-permutation word, or an embedding of the unique
//!    obstruction `B4` together with the 3-block word.
//!
//! Every answer carries enough data to be re-checked by an independent
//! verifier in this crate; the `sweep` harness runs all of those
//! cross-checks over exhaustively enumerated or sampled graphs.

pub mod bits;
pub mod graph;
pub mod labelling;
pub mod orientation;
pub mod pipeline;
pub mod posetdim;
pub mod split;
pub mod sweep;
pub mod wordgen;

pub use graph::{find_induced, parse_edge_list, parse_graph6, encode_graph6, Embedding, Graph};
pub use labelling::{classify, find_labelling, orientation_from_labelling, verify_properties,
                    CliqueLabelling, IClass, IClassification};
pub use orientation::{clique_order, find_transitive_orientation, verify_semi_transitive,
                      verify_transitive, Orientation};
pub use posetdim::{dimension, poset_from_orientation, prn, prn_oracle, Poset, PrnCertificate,
                   PrnResult};
pub use split::{find_forbidden, normalize_maximal, split_partition, Forbidden, SplitGraph};
pub use wordgen::{alternates, build_and_verify, build_word, represents, restrict, uniformity,
                  Word};
