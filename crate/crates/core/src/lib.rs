//! Word maps on small finite simple groups.
//!
//! A subset `A` of a finite simple group `G` is the image of a word map on
//! two letters exactly when `e ∈ A` and `A` is invariant under `Aut(G)`.
//! This crate checks everything about that statement that can be checked by
//! exhaustive computation on groups of order up to a few thousand: it builds
//! multiplication tables, computes `Aut(G)` abstractly, classifies generating
//! pairs, certifies candidate images, and searches short words for the
//! images they realize.

pub mod aut;
pub mod cache;
pub mod error;
pub mod group;
pub mod orbit;
pub mod pairs;
pub mod perm;
pub mod pipeline;
pub mod realize;
pub mod report;
pub mod search;
pub mod spec;
pub mod word;

pub use aut::{
    compute_automorphisms, orbits_on_all_pairs, orbits_on_elements, orbits_on_pairs,
    verify_free_action, AutGroup, Automorphism,
};
pub use error::{Error, Result};
pub use group::{build_group, validate_simple, ElemId, GroupTable, Simplicity, IDENTITY};
pub use orbit::OrbitPartition;
pub use pairs::{
    classify_pairs, gk_spread_check, hall_rank, is_generating, PairClassification,
    SpreadCertificate,
};
pub use perm::Permutation;
pub use pipeline::Analysis;
pub use realize::{
    admissible_sets, certify_function, certify_image, check_conditions, CandidateSet,
    ImageCertificate,
};
pub use search::{census, distribution, image_of, Census, CensusOptions, SearchContext};
pub use spec::{GroupSpec, DEFAULT_ORDER_CAP};
pub use word::{Letter, Word};
