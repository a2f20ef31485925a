//! A workbench for locally decodable insertion/deletion codes: candidate
//! constructions, the adversarial deletion channels they face, and an
//! analysis suite that checks the quantitative behavior of both: exactly
//! where exact computation is feasible, statistically where only sampling is.

pub mod analysis;
pub mod bits;
pub mod channels;
pub mod codes;
pub mod deletion;
pub mod edit;
pub mod error;
pub mod experiments;
pub mod f2;
pub mod quadratic;
pub mod query;
pub mod rng;

pub use bits::{augment, truncate, BitWord, PadPolicy};
pub use deletion::{apply_deletions, position_map, DeletionSet, PositionMap};
pub use edit::{edit_distance, lcs_len};
pub use error::{Error, Result};
pub use f2::{F2Matrix, F2Vec};
pub use query::{corresponds, QueryTuple};
