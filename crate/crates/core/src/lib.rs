//! Monodromy pairs `(α, β)` in `S_d` for covers of an elliptic curve with a
//! single branch point, and the invariants of the difference fibration
//! `C × C -> E` they induce.
//!
//! * [`perm`]: permutations, composition (right to left), cycle notation.
//! * [`group`]: orbits, block systems, primitivity, Schreier-Sims order.
//! * [`cover`]: ramification profile, genera, surface and fibre invariants.
//! * [`bounds`]: inequalities for fibrations with one singular fibre.
//! * [`search`]: parallel exhaustive search with conjugacy deduplication.
//! * [`report`], [`corpus`], [`config`]: certificates, worked examples and
//!   search configuration files.

pub mod bounds;
pub mod config;
pub mod corpus;
pub mod cover;
pub mod group;
pub mod perm;
pub mod report;
pub mod search;

pub use bounds::{bounds_report, BoundStatus, BoundsReport};
pub use cover::{analyze, CoverInvariants, MonodromyPair, RamificationProfile};
pub use group::GeneratedGroup;
pub use perm::{parse_cycles, CycleDecomposition, PermError, Permutation};
pub use report::{CertificateRecord, VerifyReport};
pub use search::{search, validate_certificate, Certificate, DedupMode, SearchConfig};
