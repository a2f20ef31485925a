//! Exact and statistical verification machinery.

mod attack;
mod compound;
mod entropy;
mod estimators;
mod goodsets;
mod stats;
mod subcube;

pub use attack::{
    first_far_bit, hadamard_attack, near_pair_count, AttackReport, NearPairCount, PairPartition,
};
pub use compound::CompoundBinomial;
pub use entropy::{binary_entropy, entropy_gap_bound};
pub use estimators::{
    decode_success, hitting_probability, induced_distribution, uniform_pad, HittingReport,
    InducedHistogram, Streams,
};
pub use goodsets::{good_sets_bruteforce, hq_bound_check, GoodnessTable, HqReport};
pub use stats::{wilson_interval, Estimate};
pub use subcube::{subcube_stats, AnalysisConstants, SubcubeRecord, SubcubeStats};
