//! Window-scale deciders for the subset size classes.
//!
//! Properties of subsets of infinite groups quantify over the whole group,
//! so every verdict here is evidence gathered on a finite window: test
//! points are drawn from the window core and translates are evaluated
//! through the membership predicate.

mod derivation;
mod largeness;
mod scattered;
mod thickness;
mod thinness;

pub use derivation::{combinatorial_derivation, fp_products, fp_set, IdealSpec};
pub use largeness::{check_large, check_left_large, covered_by, find_large_witness, interior};
pub use scattered::{check_scattered, pattern_products, verify_pattern, DEFAULT_NODE_BUDGET, MAX_DEPTH};
pub use thickness::{
    check_left_small, check_left_thick, check_small, check_thick, find_prethick, mask_of, Bits, Sidedness,
    ThickEngine,
};
pub use thinness::{check_n_thin, check_sparse, default_head, thin_count, thin_count_family, ThinReport};
