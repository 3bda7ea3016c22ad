//! The estimator: augment each tree once with background partitions, then
//! evaluate `v_S(x_S)` for any subset `S` without revisiting the background.
//!
//! Augmentation costs `O(2^F n_b)` per tree for a tree splitting on `F`
//! distinct features; evaluating one subset costs at most `O(2^D)` per point
//! for depth `D`. Neither step depends on the product `n_b * n_e`.

mod augment;
mod evaluate;
mod snapshot;
mod subset;

pub use augment::{augment, partition_list_count, AugmentOptions, AugmentedLeaf, AugmentedTree};
pub use evaluate::{
    all_pd_per_tree, all_pd_per_tree_batch, augment_ensemble, pd_evaluate, pd_evaluate_ensemble,
    AugmentedEnsemble, BatchEvaluator, PdCache, PdTable,
};
pub use snapshot::{read_snapshot, write_snapshot};
pub use subset::FeatureSubset;

pub(crate) use subset::expand_mask;
