//! Subset combinatorics of groups: size classes of subsets (large, thick,
//! small, thin, sparse, scattered), partition constructions realizing them,
//! and finite-scale verifiers for every construction.

pub mod ballean;
pub mod classify;
pub mod constructions;
pub mod density;
pub mod error;
pub mod expr;
pub mod filtration;
pub mod graph;
pub mod oracle;
pub mod group;
pub mod partition;
pub mod subset;
pub mod suite;
pub mod verdict;

pub use ballean::Side;
pub use error::{Error, Result};
pub use expr::{parse_set, ParseError};
pub use group::{CayleyTable, Element, Group, GroupKind, Window};
pub use subset::SubsetView;
pub use verdict::{Status, Verdict, Witness};
