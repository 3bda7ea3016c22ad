//! Reference estimators.
//!
//! [`vanilla_pd`] evaluates the empirical PD function by brute force: it
//! builds the hybrid rows `(x_S, X^(i)_{not S})` and averages predictions.
//! That costs `n_b` predictions per point and subset, and it is the oracle
//! the fast estimator is tested against.
//!
//! [`path_dependent_pd`] is the coverage-weighted recursion: splits on
//! features in `S` follow `x`, other splits average their children weighted
//! by how many background rows reached each child. It only looks at
//! marginal counts along one path, so two trees that compute the same
//! function can get different values when features are dependent.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::data::Dataset;
use crate::engine::{expand_mask, FeatureSubset};
use crate::error::{check_finite, Error, Result};
use crate::explain::{decompose, shap_from_decomposition, PdFunction, TreeLattice};
use crate::model::{Node, NodeId, Tree, TreeEnsemble};

fn check_point(x: &[f64], s: &FeatureSubset, d: usize) -> Result<()> {
    if x.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: x.len(),
        });
    }
    if let Some(index) = s.max_index().filter(|&i| i >= d) {
        return Err(Error::FeatureOutOfRange {
            index,
            num_features: d,
        });
    }
    check_finite(x)
}

fn check_background(ensemble: &TreeEnsemble, background: &Dataset) -> Result<()> {
    if background.d() != ensemble.num_features() {
        return Err(Error::DimensionMismatch {
            expected: ensemble.num_features(),
            found: background.d(),
        });
    }
    if background.n() == 0 {
        return Err(Error::EmptyBackground);
    }
    Ok(())
}

/// `(1/n_b) sum_i predict(x_S, X^(i)_{not S})`.
pub fn vanilla_pd(
    ensemble: &TreeEnsemble,
    background: &Dataset,
    x: &[f64],
    s: &FeatureSubset,
) -> Result<f64> {
    check_background(ensemble, background)?;
    check_point(x, s, ensemble.num_features())?;
    Ok(hybrid_mean(background, x, s, |row| {
        ensemble.predict_unchecked(row)
    }))
}

fn hybrid_mean(
    background: &Dataset,
    x: &[f64],
    s: &FeatureSubset,
    f: impl Fn(&[f64]) -> f64,
) -> f64 {
    let fixed: Vec<usize> = s.iter().collect();
    let mut row = vec![0.0; background.d()];
    let mut sum = 0.0;
    for bg in background.rows() {
        row.copy_from_slice(bg);
        for &k in &fixed {
            row[k] = x[k];
        }
        sum += f(&row);
    }
    sum / background.n() as f64
}

/// [`vanilla_pd`] at every row of `eval`, in parallel over rows.
pub fn vanilla_pd_batch(
    ensemble: &TreeEnsemble,
    background: &Dataset,
    eval: &Dataset,
    s: &FeatureSubset,
) -> Result<Vec<f64>> {
    check_background(ensemble, background)?;
    if eval.d() != ensemble.num_features() {
        return Err(Error::DimensionMismatch {
            expected: ensemble.num_features(),
            found: eval.d(),
        });
    }
    check_point(&vec![0.0; eval.d()], s, ensemble.num_features())?;
    Ok((0..eval.n())
        .into_par_iter()
        .map(|i| {
            hybrid_mean(background, eval.row(i), s, |row| {
                ensemble.predict_unchecked(row)
            })
        })
        .collect())
}

/// Brute-force PD of one tree (no intercept) for every subset of its split
/// features, at every row of `eval`.
pub fn vanilla_lattice(tree: &Tree, background: &Dataset, eval: &Dataset) -> TreeLattice {
    let features: Vec<usize> = tree.split_features().to_vec();
    let values: BTreeMap<FeatureSubset, Vec<f64>> = (0..1u64 << features.len())
        .map(|mask| {
            let s = expand_mask(mask, &features);
            let v = eval
                .rows()
                .map(|x| hybrid_mean(background, x, &s, |row| tree.predict(row)))
                .collect();
            (s, v)
        })
        .collect();
    TreeLattice::new(features.into_iter().collect(), eval.n(), values)
}

/// [`vanilla_lattice`] for every tree, in parallel over trees.
pub fn vanilla_lattices(
    ensemble: &TreeEnsemble,
    background: &Dataset,
    eval: &Dataset,
) -> Result<Vec<TreeLattice>> {
    check_background(ensemble, background)?;
    if eval.d() != ensemble.num_features() {
        return Err(Error::DimensionMismatch {
            expected: ensemble.num_features(),
            found: eval.d(),
        });
    }
    Ok(ensemble
        .trees()
        .par_iter()
        .map(|t| vanilla_lattice(t, background, eval))
        .collect())
}

/// Brute-force PD evaluator over a fixed background.
#[derive(Debug, Clone, Copy)]
pub struct VanillaPd<'a> {
    ensemble: &'a TreeEnsemble,
    background: &'a Dataset,
}

impl<'a> VanillaPd<'a> {
    pub fn new(ensemble: &'a TreeEnsemble, background: &'a Dataset) -> Result<Self> {
        check_background(ensemble, background)?;
        Ok(Self {
            ensemble,
            background,
        })
    }
}

impl PdFunction for VanillaPd<'_> {
    fn num_features(&self) -> usize {
        self.ensemble.num_features()
    }

    fn pd(&self, x: &[f64], s: &FeatureSubset) -> Result<f64> {
        vanilla_pd(self.ensemble, self.background, x, s)
    }
}

/// Number of background rows reaching each node of `tree` under plain
/// routing, indexed by node id.
pub fn tree_coverage(tree: &Tree, background: &Dataset) -> Vec<u64> {
    let mut counts = vec![0u64; tree.nodes().len()];
    for row in background.rows() {
        let mut id = tree.root();
        loop {
            counts[id] += 1;
            match *tree.node(id) {
                Node::Leaf { .. } => break,
                Node::Internal {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    id = if row[feature] < threshold {
                        left
                    } else {
                        right
                    }
                }
            }
        }
    }
    counts
}

/// Per-tree node coverage of an ensemble.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coverage {
    counts: Vec<Vec<u64>>,
}

impl Coverage {
    pub fn tree(&self, t: usize) -> &[u64] {
        &self.counts[t]
    }
}

pub fn coverage(ensemble: &TreeEnsemble, background: &Dataset) -> Result<Coverage> {
    check_background(ensemble, background)?;
    Ok(Coverage {
        counts: ensemble
            .trees()
            .par_iter()
            .map(|t| tree_coverage(t, background))
            .collect(),
    })
}

/// Coverage-weighted PD approximation of one tree. A node that would average
/// its children but has zero coverage contributes 0.
pub fn path_dependent_pd(
    tree: &Tree,
    coverage: &[u64],
    x: &[f64],
    s: &FeatureSubset,
) -> Result<f64> {
    if coverage.len() != tree.nodes().len() {
        return Err(Error::DimensionMismatch {
            expected: tree.nodes().len(),
            found: coverage.len(),
        });
    }
    if let Some(&index) = tree.split_features().last() {
        if index >= x.len() {
            return Err(Error::FeatureOutOfRange {
                index,
                num_features: x.len(),
            });
        }
    }
    check_finite(x)?;
    Ok(path_rec(tree, coverage, tree.root(), x, s))
}

fn path_rec(tree: &Tree, cov: &[u64], id: NodeId, x: &[f64], s: &FeatureSubset) -> f64 {
    match *tree.node(id) {
        Node::Leaf { value } => value,
        Node::Internal {
            feature,
            threshold,
            left,
            right,
        } => {
            if s.contains(feature) {
                let next = if x[feature] < threshold { left } else { right };
                path_rec(tree, cov, next, x, s)
            } else if cov[id] == 0 {
                0.0
            } else {
                let l = cov[left] as f64 * path_rec(tree, cov, left, x, s);
                let r = cov[right] as f64 * path_rec(tree, cov, right, x, s);
                (l + r) / cov[id] as f64
            }
        }
    }
}

/// Path-dependent PD of a whole ensemble, intercept included.
#[derive(Debug, Clone)]
pub struct PathDependentPd<'a> {
    ensemble: &'a TreeEnsemble,
    coverage: Coverage,
}

impl<'a> PathDependentPd<'a> {
    pub fn new(ensemble: &'a TreeEnsemble, background: &Dataset) -> Result<Self> {
        Ok(Self {
            ensemble,
            coverage: coverage(ensemble, background)?,
        })
    }

    pub fn coverage(&self) -> &Coverage {
        &self.coverage
    }

    /// Per-tree lattices of path-dependent PD values over `eval`.
    pub fn lattices(&self, eval: &Dataset) -> Result<Vec<TreeLattice>> {
        if eval.d() != self.ensemble.num_features() {
            return Err(Error::DimensionMismatch {
                expected: self.ensemble.num_features(),
                found: eval.d(),
            });
        }
        Ok(self
            .ensemble
            .trees()
            .par_iter()
            .enumerate()
            .map(|(t, tree)| path_lattice(tree, self.coverage.tree(t), eval))
            .collect())
    }
}

impl PdFunction for PathDependentPd<'_> {
    fn num_features(&self) -> usize {
        self.ensemble.num_features()
    }

    fn pd(&self, x: &[f64], s: &FeatureSubset) -> Result<f64> {
        check_point(x, s, self.ensemble.num_features())?;
        let mut acc = self.ensemble.intercept();
        for (t, tree) in self.ensemble.trees().iter().enumerate() {
            acc += path_rec(tree, self.coverage.tree(t), tree.root(), x, s);
        }
        Ok(acc)
    }
}

fn path_lattice(tree: &Tree, cov: &[u64], eval: &Dataset) -> TreeLattice {
    let features: Vec<usize> = tree.split_features().to_vec();
    let values = (0..1u64 << features.len())
        .map(|mask| {
            let s = expand_mask(mask, &features);
            let v = eval
                .rows()
                .map(|x| path_rec(tree, cov, tree.root(), x, &s))
                .collect();
            (s, v)
        })
        .collect();
    TreeLattice::new(features.into_iter().collect(), eval.n(), values)
}

/// Shapley values of the path-dependent PD functions at `x`, one per
/// feature. Each tree's values depend only on its own split features, so
/// the per-tree Möbius route gives the same numbers as full enumeration.
pub fn path_dependent_shap(
    ensemble: &TreeEnsemble,
    background: &Dataset,
    x: &[f64],
) -> Result<Vec<f64>> {
    let path = PathDependentPd::new(ensemble, background)?;
    check_point(x, &FeatureSubset::empty(), ensemble.num_features())?;
    let eval = Dataset::new(x.to_vec(), 1, x.len())?;
    let decomp = decompose(&path.lattices(&eval)?, ensemble.intercept(), &eval)?;
    Ok(shap_from_decomposition(&decomp).row(0).to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explain::shap_direct;
    use crate::fixtures::{self, random_dataset, random_ensemble, TWIN_POINT};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn subset(ix: &[usize]) -> FeatureSubset {
        ix.iter().copied().collect()
    }

    #[test]
    fn vanilla_twin_values() {
        let bg = fixtures::twin_background();
        for ens in [fixtures::twin_ensemble_a(), fixtures::twin_ensemble_b()] {
            let pd = |s: &[usize]| vanilla_pd(&ens, &bg, &TWIN_POINT, &subset(s)).unwrap();
            assert_eq!(pd(&[]), 7.0);
            assert_eq!(pd(&[0]), -0.5);
            assert_eq!(pd(&[1]), -0.5);
            assert_eq!(pd(&[0, 1]), 10.0);
        }
    }

    #[test]
    fn vanilla_extremes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let ens = random_ensemble(&mut rng, 3, 3, 3);
        let bg = random_dataset(&mut rng, 40, 3);
        let x = [0.1, -0.3, 0.6];
        let full = vanilla_pd(&ens, &bg, &x, &FeatureSubset::full(3)).unwrap();
        assert!((full - ens.predict(&x).unwrap()).abs() < 1e-12);
        let mean = bg.rows().map(|r| ens.predict(r).unwrap()).sum::<f64>() / 40.0;
        assert!((vanilla_pd(&ens, &bg, &x, &subset(&[])).unwrap() - mean).abs() < 1e-12);
        assert!(matches!(
            vanilla_pd(&ens, &bg, &x[..2], &subset(&[])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn path_dependent_twin_values() {
        let bg = fixtures::twin_background();
        let x = TWIN_POINT;
        let a = fixtures::twin_tree_a();
        let b = fixtures::twin_tree_b();
        let (ca, cb) = (tree_coverage(&a, &bg), tree_coverage(&b, &bg));
        assert_eq!(ca, [2500, 750, 1750, 500, 250, 250, 1500]);
        assert_eq!(path_dependent_pd(&a, &ca, &x, &subset(&[0])).unwrap(), 5.0);
        assert_eq!(path_dependent_pd(&b, &cb, &x, &subset(&[0])).unwrap(), -0.5);
        assert_eq!(path_dependent_pd(&a, &ca, &x, &subset(&[1])).unwrap(), -0.5);
        assert_eq!(path_dependent_pd(&b, &cb, &x, &subset(&[1])).unwrap(), 5.0);
        for (t, c) in [(&a, &ca), (&b, &cb)] {
            assert_eq!(path_dependent_pd(t, c, &x, &subset(&[])).unwrap(), 7.0);
            assert_eq!(path_dependent_pd(t, c, &x, &subset(&[0, 1])).unwrap(), 10.0);
        }
    }

    #[test]
    fn path_dependent_shap_twin() {
        let bg = fixtures::twin_background();
        let a = path_dependent_shap(&fixtures::twin_ensemble_a(), &bg, &TWIN_POINT).unwrap();
        let b = path_dependent_shap(&fixtures::twin_ensemble_b(), &bg, &TWIN_POINT).unwrap();
        assert!((a[0] - 4.25).abs() < 1e-12);
        assert!((b[0] + 1.25).abs() < 1e-12);
        // local accuracy still holds for both
        assert!((7.0 + a[0] + a[1] - 10.0).abs() < 1e-12);
        assert!((7.0 + b[0] + b[1] - 10.0).abs() < 1e-12);
    }

    #[test]
    fn path_shap_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let ens = random_ensemble(&mut rng, 4, 4, 3);
            let bg = random_dataset(&mut rng, 80, 4);
            let x = [0.2, -0.6, 0.0, 0.9];
            let route = path_dependent_shap(&ens, &bg, &x).unwrap();
            let pd = PathDependentPd::new(&ens, &bg).unwrap();
            for (k, v) in route.iter().enumerate() {
                assert!((shap_direct(&pd, &x, k).unwrap() - v).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn path_full_subset_is_prediction() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ens = random_ensemble(&mut rng, 3, 4, 4);
        let bg = random_dataset(&mut rng, 50, 3);
        let pd = PathDependentPd::new(&ens, &bg).unwrap();
        for x in random_dataset(&mut rng, 20, 3).rows() {
            assert!(
                (pd.pd(x, &FeatureSubset::full(3)).unwrap() - ens.predict(x).unwrap()).abs()
                    < 1e-12
            );
        }
    }

    #[test]
    fn zero_coverage_node_contributes_nothing() {
        let tree = Tree::new(
            vec![
                Node::Internal {
                    feature: 0,
                    threshold: 0.0,
                    left: 1,
                    right: 2,
                },
                Node::Leaf { value: 1.0 },
                Node::Internal {
                    feature: 1,
                    threshold: 0.0,
                    left: 3,
                    right: 4,
                },
                Node::Leaf { value: 5.0 },
                Node::Leaf { value: 7.0 },
            ],
            0,
        )
        .unwrap();
        let bg = Dataset::from_rows(&[[-1.0, 0.0], [-2.0, 0.0]]).unwrap();
        let cov = tree_coverage(&tree, &bg);
        assert_eq!(cov[2], 0);
        assert_eq!(
            path_dependent_pd(&tree, &cov, &[1.0, 0.0], &subset(&[0])).unwrap(),
            0.0
        );
        assert_eq!(
            path_dependent_pd(&tree, &cov, &[1.0, 0.0], &subset(&[])).unwrap(),
            1.0
        );
    }

    #[test]
    fn independent_product_background_agrees_with_fastpd() {
        // with an exact product grid as background, marginal and
        // path-conditional frequencies coincide
        use crate::engine::{augment_ensemble, AugmentOptions, BatchEvaluator};
        use crate::explain::shap_from_decomposition;
        let grid: Vec<f64> = (0..20).map(|i| (i as f64 + 0.5) / 20.0).collect();
        let rows: Vec<[f64; 2]> = grid
            .iter()
            .flat_map(|&a| grid.iter().map(move |&b| [a, b]))
            .collect();
        let bg = Dataset::from_rows(&rows).unwrap();
        let ens = fixtures::twin_ensemble_a();
        let eval = Dataset::from_rows(&[TWIN_POINT, [0.8, 0.9]]).unwrap();
        let aug = augment_ensemble(&ens, &bg, &AugmentOptions::default()).unwrap();
        let ev = BatchEvaluator::new(&aug, &eval).unwrap();
        let fast = shap_from_decomposition(&decompose(&ev.lattices(), 0.0, &eval).unwrap());
        for (i, x) in eval.rows().enumerate() {
            let path = path_dependent_shap(&ens, &bg, x).unwrap();
            for (k, p) in path.iter().enumerate() {
                assert!((p - fast.get(i, k)).abs() < 1e-12);
            }
        }
    }
}
