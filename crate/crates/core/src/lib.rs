//! Partial dependence functions for tree ensembles in time linear in the
//! number of background and evaluation points.
//!
//! Each tree is augmented once with the background sample: every leaf
//! stores, for each subset `S` of the features on its path, the number of
//! background rows that would reach it if splits on `S` were ignored. After
//! that, `v_S(x_S)` at any point is a sum over the leaves reachable from `x`
//! when only splits on `S` are routed, weighted by those counts.
//!
//! ```
//! use fastpd::{augment_ensemble, fixtures, AugmentOptions, FeatureSubset};
//!
//! let model = fixtures::twin_ensemble_a();
//! let background = fixtures::twin_background();
//! let aug = augment_ensemble(&model, &background, &AugmentOptions::default())?;
//!
//! let x = fixtures::TWIN_POINT;
//! assert_eq!(aug.pd(&x, &FeatureSubset::empty())?, 7.0);
//! assert_eq!(aug.pd(&x, &FeatureSubset::singleton(0))?, -0.5);
//! # Ok::<(), fastpd::Error>(())
//! ```
//!
//! From PD values, [`explain`] derives the functional decomposition, SHAP
//! values, PD plots and importances; [`baseline`] holds the brute-force and
//! path-dependent estimators used for comparison.

pub mod baseline;
pub mod bench;
pub mod data;
pub mod engine;
mod error;
pub mod explain;
pub mod fixtures;
pub mod model;

pub use data::{generate_dgp, Dataset, Dgp};
pub use engine::{
    augment, augment_ensemble, pd_evaluate, pd_evaluate_ensemble, AugmentOptions,
    AugmentedEnsemble, AugmentedTree, BatchEvaluator, FeatureSubset,
};
pub use error::{Error, Result};
pub use explain::{
    decompose, importance, pd_plot, shap_direct, shap_from_decomposition, Decomposition,
    PdFunction, ShapMatrix, TreeLattice,
};
pub use model::{parse_model, ModelFormat, Node, ParseOptions, Tree, TreeEnsemble};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/pd-functions.md")]
    struct PdFunctions;
    #[doc = include_str!("../../../book/src/fastpd.md")]
    struct FastPd;
    #[doc = include_str!("../../../book/src/decomposition.md")]
    struct Decomposition;
    #[doc = include_str!("../../../book/src/path-dependent.md")]
    struct PathDependent;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
    #[doc = include_str!("../../../README.md")]
    struct Readme;
}
