use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use rayon::prelude::*;

use super::augment::{augment_indexed, AugmentOptions, AugmentedTree};
use super::subset::FeatureSubset;
use crate::data::Dataset;
use crate::error::{check_finite, Error, Result};
use crate::explain::{PdFunction, TreeLattice};
use crate::model::{Node, NodeId, TreeEnsemble};

impl AugmentedTree<'_> {
    #[inline]
    fn leaf_weight(&self, id: NodeId, local: u64) -> f64 {
        let leaf = &self.leaves[self.leaf_slot[id] as usize];
        leaf.value * (leaf.counts[leaf.slot(local)] as f64 / self.n_b as f64)
    }

    #[inline]
    fn follows_x(&self, id: NodeId, local: u64) -> bool {
        local >> self.node_bit[id] & 1 == 1
    }

    /// Tree contribution at one point for a tree-local subset mask.
    /// Leaf terms are added in left-to-right leaf order.
    pub(crate) fn eval_local(&self, x: &[f64], local: u64) -> f64 {
        let mut acc = 0.0;
        let mut stack = vec![self.tree.root()];
        while let Some(id) = stack.pop() {
            match *self.tree.node(id) {
                Node::Leaf { .. } => acc += self.leaf_weight(id, local),
                Node::Internal {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    if self.follows_x(id, local) {
                        stack.push(if x[feature] < threshold { left } else { right });
                    } else {
                        stack.push(right);
                        stack.push(left);
                    }
                }
            }
        }
        acc
    }

    /// Tree contribution for every row of `batch`. One traversal of the
    /// tree, with the row set split at nodes whose feature is in the mask.
    /// Each row receives the same terms in the same order as
    /// [`eval_local`](Self::eval_local), so results are bit-identical.
    pub(crate) fn eval_batch_local(&self, batch: &Dataset, local: u64) -> Vec<f64> {
        let mut out = vec![0.0; batch.n()];
        let rows: Vec<u32> = (0..batch.n() as u32).collect();
        self.walk_batch(self.tree.root(), batch, local, &rows, &mut out);
        out
    }

    fn walk_batch(&self, id: NodeId, batch: &Dataset, local: u64, rows: &[u32], out: &mut [f64]) {
        if rows.is_empty() {
            return;
        }
        match *self.tree.node(id) {
            Node::Leaf { .. } => {
                let w = self.leaf_weight(id, local);
                for &r in rows {
                    out[r as usize] += w;
                }
            }
            Node::Internal {
                feature,
                threshold,
                left,
                right,
            } => {
                if self.follows_x(id, local) {
                    let (l, r): (Vec<u32>, Vec<u32>) = rows
                        .iter()
                        .partition(|&&i| batch.get(i as usize, feature) < threshold);
                    self.walk_batch(left, batch, local, &l, out);
                    self.walk_batch(right, batch, local, &r, out);
                } else {
                    self.walk_batch(left, batch, local, rows, out);
                    self.walk_batch(right, batch, local, rows, out);
                }
            }
        }
    }

    fn check_query(&self, x: &[f64], s: &FeatureSubset) -> Result<()> {
        check_subset(s, self.num_features)?;
        if x.len() != self.num_features {
            return Err(Error::DimensionMismatch {
                expected: self.num_features,
                found: x.len(),
            });
        }
        check_finite(x)
    }
}

fn check_subset(s: &FeatureSubset, num_features: usize) -> Result<()> {
    match s.max_index() {
        Some(index) if index >= num_features => Err(Error::FeatureOutOfRange {
            index,
            num_features,
        }),
        _ => Ok(()),
    }
}

fn check_batch(batch: &Dataset, num_features: usize) -> Result<()> {
    if batch.d() != num_features {
        return Err(Error::DimensionMismatch {
            expected: num_features,
            found: batch.d(),
        });
    }
    if batch.n() == 0 {
        return Err(Error::InvalidArgument("no evaluation rows".into()));
    }
    Ok(())
}

/// One tree's term of the empirical PD function at `x`:
/// `(1/n_b) sum_i tree(x_S, X^(i)_{not S})`, computed as
/// `sum_j c_j |D^(j)_{U ∩ T_j}| / n_b` over the leaves reachable when only
/// splits on `U = S ∩ F` are routed by `x`.
pub fn pd_evaluate(aug: &AugmentedTree<'_>, x: &[f64], s: &FeatureSubset) -> Result<f64> {
    aug.check_query(x, s)?;
    Ok(aug.eval_local(x, aug.local_mask(s)))
}

/// `v_U(x_U)` for every `U` subset of the tree's split features.
pub fn all_pd_per_tree(aug: &AugmentedTree<'_>, x: &[f64]) -> Result<BTreeMap<FeatureSubset, f64>> {
    aug.check_query(x, &FeatureSubset::empty())?;
    Ok((0..1u64 << aug.features.len())
        .map(|mask| (aug.subset_of_mask(mask), aug.eval_local(x, mask)))
        .collect())
}

/// The full subset lattice of one tree over a batch of points.
pub fn all_pd_per_tree_batch(aug: &AugmentedTree<'_>, batch: &Dataset) -> Result<TreeLattice> {
    check_batch(batch, aug.num_features)?;
    Ok(lattice_of(aug, batch))
}

fn lattice_of(aug: &AugmentedTree<'_>, batch: &Dataset) -> TreeLattice {
    let values = (0..1u64 << aug.features.len())
        .map(|mask| (aug.subset_of_mask(mask), aug.eval_batch_local(batch, mask)))
        .collect();
    TreeLattice::new(aug.split_features(), batch.n(), values)
}

/// Every tree of an ensemble augmented with the same background.
#[derive(Debug, Clone)]
pub struct AugmentedEnsemble<'e> {
    pub(crate) ensemble: &'e TreeEnsemble,
    pub(crate) trees: Vec<AugmentedTree<'e>>,
    pub(crate) n_b: usize,
}

/// Augments every tree, in parallel. The background must have exactly the
/// ensemble's feature count.
pub fn augment_ensemble<'e>(
    ensemble: &'e TreeEnsemble,
    background: &Dataset,
    options: &AugmentOptions,
) -> Result<AugmentedEnsemble<'e>> {
    if background.d() != ensemble.num_features() {
        return Err(Error::DimensionMismatch {
            expected: ensemble.num_features(),
            found: background.d(),
        });
    }
    if background.n() == 0 {
        return Err(Error::EmptyBackground);
    }
    let trees = ensemble
        .trees()
        .par_iter()
        .enumerate()
        .map(|(t, tree)| augment_indexed(t, tree, background, options))
        .collect::<Result<Vec<_>>>()?;
    Ok(AugmentedEnsemble {
        ensemble,
        trees,
        n_b: background.n(),
    })
}

impl<'e> AugmentedEnsemble<'e> {
    pub fn ensemble(&self) -> &'e TreeEnsemble {
        self.ensemble
    }

    pub fn trees(&self) -> &[AugmentedTree<'e>] {
        &self.trees
    }

    pub fn n_b(&self) -> usize {
        self.n_b
    }

    pub fn num_features(&self) -> usize {
        self.ensemble.num_features()
    }

    pub fn compact(&mut self) {
        self.trees.iter_mut().for_each(AugmentedTree::compact);
    }

    /// `v_S(x_S)` for the whole ensemble, intercept included.
    pub fn pd(&self, x: &[f64], s: &FeatureSubset) -> Result<f64> {
        check_subset(s, self.num_features())?;
        if x.len() != self.num_features() {
            return Err(Error::DimensionMismatch {
                expected: self.num_features(),
                found: x.len(),
            });
        }
        check_finite(x)?;
        Ok(self.trees.iter().fold(self.ensemble.intercept(), |acc, t| {
            acc + t.eval_local(x, t.local_mask(s))
        }))
    }
}

impl PdFunction for AugmentedEnsemble<'_> {
    fn num_features(&self) -> usize {
        self.ensemble.num_features()
    }

    fn pd(&self, x: &[f64], s: &FeatureSubset) -> Result<f64> {
        AugmentedEnsemble::pd(self, x, s)
    }
}

/// Per-tree PD vectors keyed by `(tree index, tree-local subset mask)`.
///
/// Readers never block each other; an insertion that races with another for
/// the same key keeps the first value, which is identical to the second.
type CacheMap = HashMap<(usize, u64), Arc<Vec<f64>>>;

#[derive(Debug, Default)]
pub struct PdCache {
    entries: RwLock<CacheMap>,
}

impl PdCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, tree: usize, local: u64) -> Option<Arc<Vec<f64>>> {
        self.entries
            .read()
            .expect("cache lock")
            .get(&(tree, local))
            .cloned()
    }

    /// Inserts unless the key is present; returns the stored value.
    pub fn insert(&self, tree: usize, local: u64, values: Vec<f64>) -> Arc<Vec<f64>> {
        let mut map = self.entries.write().expect("cache lock");
        map.entry((tree, local))
            .or_insert_with(|| Arc::new(values))
            .clone()
    }

    pub fn clear(&self) {
        self.entries.write().expect("cache lock").clear();
    }
}

/// PD values for a batch of evaluation points, one column per subset.
#[derive(Debug, Clone, PartialEq)]
pub struct PdTable {
    subsets: Vec<FeatureSubset>,
    columns: Vec<Vec<f64>>,
    n_rows: usize,
}

impl PdTable {
    pub fn subsets(&self) -> &[FeatureSubset] {
        &self.subsets
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.columns[j]
    }

    pub fn get(&self, row: usize, j: usize) -> f64 {
        self.columns[j][row]
    }

    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }
}

/// Evaluates many subsets over one batch of points, sharing per-tree work.
///
/// Distinct subsets that reduce to the same `U = S ∩ F` for some tree reuse
/// that tree's cached vector.
#[derive(Debug)]
pub struct BatchEvaluator<'a, 'e> {
    aug: &'a AugmentedEnsemble<'e>,
    batch: &'a Dataset,
    cache: PdCache,
}

impl<'a, 'e> BatchEvaluator<'a, 'e> {
    pub fn new(aug: &'a AugmentedEnsemble<'e>, batch: &'a Dataset) -> Result<Self> {
        check_batch(batch, aug.num_features())?;
        Ok(Self {
            aug,
            batch,
            cache: PdCache::new(),
        })
    }

    pub fn cache(&self) -> &PdCache {
        &self.cache
    }

    pub fn batch(&self) -> &'a Dataset {
        self.batch
    }

    /// Tree `t`'s vector for a tree-local mask, from the cache when present.
    pub fn tree_pd(&self, t: usize, local: u64) -> Arc<Vec<f64>> {
        if let Some(hit) = self.cache.get(t, local) {
            return hit;
        }
        let values = self.aug.trees[t].eval_batch_local(self.batch, local);
        self.cache.insert(t, local, values)
    }

    /// `v_S` at every row, intercept included. Trees are summed in order.
    pub fn pd(&self, s: &FeatureSubset) -> Result<Vec<f64>> {
        check_subset(s, self.aug.num_features())?;
        Ok(self.sum_trees(s))
    }

    fn sum_trees(&self, s: &FeatureSubset) -> Vec<f64> {
        let mut out = vec![self.aug.ensemble.intercept(); self.batch.n()];
        for (t, tree) in self.aug.trees.iter().enumerate() {
            let v = self.tree_pd(t, tree.local_mask(s));
            out.iter_mut().zip(v.iter()).for_each(|(o, v)| *o += v);
        }
        out
    }

    /// `v_S` for each requested subset. Per-tree vectors are filled in
    /// parallel first; the ordered summation afterwards keeps results
    /// independent of the thread count.
    pub fn pd_table(&self, subsets: &[FeatureSubset]) -> Result<PdTable> {
        for s in subsets {
            check_subset(s, self.aug.num_features())?;
        }
        let mut keys: Vec<(usize, u64)> = Vec::new();
        for (t, tree) in self.aug.trees.iter().enumerate() {
            let mut masks: Vec<u64> = subsets.iter().map(|s| tree.local_mask(s)).collect();
            masks.sort_unstable();
            masks.dedup();
            keys.extend(masks.into_iter().map(|m| (t, m)));
        }
        keys.par_iter().for_each(|&(t, m)| {
            self.tree_pd(t, m);
        });
        let columns = subsets.par_iter().map(|s| self.sum_trees(s)).collect();
        Ok(PdTable {
            subsets: subsets.to_vec(),
            columns,
            n_rows: self.batch.n(),
        })
    }

    /// Per-tree subset lattices for the batch, computed in parallel over
    /// trees. These bypass the cache.
    pub fn lattices(&self) -> Vec<TreeLattice> {
        self.aug
            .trees
            .par_iter()
            .map(|t| lattice_of(t, self.batch))
            .collect()
    }
}

/// `v_S(x_S)` for every row of `batch` and every subset, intercept included.
pub fn pd_evaluate_ensemble(
    aug: &AugmentedEnsemble<'_>,
    batch: &Dataset,
    subsets: &[FeatureSubset],
) -> Result<PdTable> {
    BatchEvaluator::new(aug, batch)?.pd_table(subsets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseline::vanilla_pd;
    use crate::engine::augment;
    use crate::fixtures::{self, random_dataset, random_ensemble, random_tree};
    use crate::model::Tree;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn subset(ix: &[usize]) -> FeatureSubset {
        ix.iter().copied().collect()
    }

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn twin_pd_values() {
        let bg = fixtures::twin_background();
        let x = fixtures::TWIN_POINT;
        for tree in [fixtures::twin_tree_a(), fixtures::twin_tree_b()] {
            let aug = augment(&tree, &bg, &AugmentOptions::default()).unwrap();
            assert_eq!(pd_evaluate(&aug, &x, &subset(&[])).unwrap(), 7.0);
            assert_eq!(pd_evaluate(&aug, &x, &subset(&[0])).unwrap(), -0.5);
            assert_eq!(pd_evaluate(&aug, &x, &subset(&[1])).unwrap(), -0.5);
            assert_eq!(pd_evaluate(&aug, &x, &subset(&[0, 1])).unwrap(), 10.0);
            let all = all_pd_per_tree(&aug, &x).unwrap();
            let expected: BTreeMap<_, _> = [
                (subset(&[]), 7.0),
                (subset(&[0]), -0.5),
                (subset(&[1]), -0.5),
                (subset(&[0, 1]), 10.0),
            ]
            .into();
            assert_eq!(all, expected);
        }
    }

    #[test]
    fn full_subset_gives_prediction() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let tree = random_tree(&mut rng, 3, 4);
            let bg = random_dataset(&mut rng, 30, 3);
            let aug = augment(&tree, &bg, &AugmentOptions::default()).unwrap();
            let eval = random_dataset(&mut rng, 10, 3);
            for x in eval.rows() {
                // extra features outside F are irrelevant
                assert_eq!(
                    pd_evaluate(&aug, x, &subset(&[0, 1, 2])).unwrap(),
                    tree.predict(x)
                );
            }
        }
    }

    #[test]
    fn depth_one_tree() {
        let tree = Tree::new(
            vec![
                Node::Internal {
                    feature: 1,
                    threshold: 0.0,
                    left: 1,
                    right: 2,
                },
                Node::Leaf { value: 4.0 },
                Node::Leaf { value: -2.0 },
            ],
            0,
        )
        .unwrap();
        let bg = Dataset::from_rows(&[[0.0, -1.0], [0.0, 1.0], [0.0, 2.0], [0.0, 3.0]]).unwrap();
        let aug = augment(&tree, &bg, &AugmentOptions::default()).unwrap();
        let all = all_pd_per_tree(&aug, &[9.0, -0.5]).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(all[&subset(&[])], 4.0 * 0.25 - 2.0 * 0.75);
        assert_eq!(all[&subset(&[1])], 4.0);
    }

    #[test]
    fn three_leaf_all_subsets() {
        let tree = fixtures::three_leaf_tree();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let bg = random_dataset(&mut rng, 40, 2);
        let aug = augment(&tree, &bg, &AugmentOptions::default()).unwrap();
        for x in random_dataset(&mut rng, 10, 2).rows() {
            let all = all_pd_per_tree(&aug, x).unwrap();
            assert_eq!(all.len(), 4);
            for (s, v) in all {
                assert_eq!(v, pd_evaluate(&aug, x, &s).unwrap());
            }
        }
    }

    #[test]
    fn query_validation() {
        let tree = fixtures::twin_tree_a();
        let aug = augment(
            &tree,
            &fixtures::twin_background(),
            &AugmentOptions::default(),
        )
        .unwrap();
        assert!(matches!(
            pd_evaluate(&aug, &[0.1, 0.2], &subset(&[2])),
            Err(Error::FeatureOutOfRange {
                index: 2,
                num_features: 2
            })
        ));
        assert!(matches!(
            pd_evaluate(&aug, &[0.1], &subset(&[0])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            pd_evaluate(&aug, &[0.1, f64::INFINITY], &subset(&[0])),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn empty_partitions_contribute_zero() {
        // no background row reaches the right leaf
        let tree = Tree::new(
            vec![
                Node::Internal {
                    feature: 0,
                    threshold: 10.0,
                    left: 1,
                    right: 2,
                },
                Node::Leaf { value: 1.0 },
                Node::Leaf { value: 100.0 },
            ],
            0,
        )
        .unwrap();
        let bg = Dataset::from_rows(&[[0.0], [1.0]]).unwrap();
        let aug = augment(&tree, &bg, &AugmentOptions::default()).unwrap();
        assert_eq!(pd_evaluate(&aug, &[50.0], &subset(&[])).unwrap(), 1.0);
        assert_eq!(pd_evaluate(&aug, &[50.0], &subset(&[0])).unwrap(), 100.0);
    }

    #[test]
    fn model_equivalence_invariance() {
        let ens_a = fixtures::twin_ensemble_a();
        let ens_b = fixtures::twin_ensemble_b();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let bg = random_dataset(&mut rng, 200, 2);
        let eval = random_dataset(&mut rng, 50, 2);
        let subsets = FeatureSubset::full(2).subsets().collect::<Vec<_>>();
        let a = augment_ensemble(&ens_a, &bg, &AugmentOptions::default()).unwrap();
        let b = augment_ensemble(&ens_b, &bg, &AugmentOptions::default()).unwrap();
        let ta = pd_evaluate_ensemble(&a, &eval, &subsets).unwrap();
        let tb = pd_evaluate_ensemble(&b, &eval, &subsets).unwrap();
        for j in 0..subsets.len() {
            for (x, y) in ta.column(j).iter().zip(tb.column(j)) {
                assert!(close(*x, *y, 1e-12));
            }
        }
    }

    #[test]
    fn batch_matches_single_point_bitwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let ens = random_ensemble(&mut rng, 4, 4, 5);
        let bg = random_dataset(&mut rng, 150, 4);
        let eval = random_dataset(&mut rng, 40, 4);
        let aug = augment_ensemble(&ens, &bg, &AugmentOptions::default()).unwrap();
        let subsets: Vec<_> = FeatureSubset::full(4).subsets().collect();
        let table = pd_evaluate_ensemble(&aug, &eval, &subsets).unwrap();
        for (j, s) in subsets.iter().enumerate() {
            for (i, x) in eval.rows().enumerate() {
                assert_eq!(table.get(i, j).to_bits(), aug.pd(x, s).unwrap().to_bits());
            }
        }
    }

    #[test]
    fn cache_is_transparent() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let ens = random_ensemble(&mut rng, 3, 4, 4);
        let bg = random_dataset(&mut rng, 100, 3);
        let eval = random_dataset(&mut rng, 25, 3);
        let aug = augment_ensemble(&ens, &bg, &AugmentOptions::default()).unwrap();
        let subsets: Vec<_> = FeatureSubset::full(3).subsets().collect();
        let ev = BatchEvaluator::new(&aug, &eval).unwrap();
        let cold: Vec<Vec<f64>> = subsets.iter().map(|s| ev.pd(s).unwrap()).collect();
        let filled = ev.cache().len();
        assert!(filled > 0);
        let warm: Vec<Vec<f64>> = subsets.iter().map(|s| ev.pd(s).unwrap()).collect();
        assert_eq!(ev.cache().len(), filled);
        for (c, w) in cold.iter().zip(&warm) {
            assert!(c.iter().zip(w).all(|(a, b)| a.to_bits() == b.to_bits()));
        }
        let fresh = BatchEvaluator::new(&aug, &eval)
            .unwrap()
            .pd_table(&subsets)
            .unwrap();
        for (j, c) in cold.iter().enumerate() {
            assert!(c
                .iter()
                .zip(fresh.column(j))
                .all(|(a, b)| a.to_bits() == b.to_bits()));
        }
    }

    #[test]
    fn ensemble_checks_dimensions() {
        let ens = fixtures::twin_ensemble_a();
        let bg3 = Dataset::from_rows(&[[0.0, 0.0, 0.0]]).unwrap();
        assert!(matches!(
            augment_ensemble(&ens, &bg3, &AugmentOptions::default()),
            Err(Error::DimensionMismatch { .. })
        ));
        let aug = augment_ensemble(
            &ens,
            &fixtures::twin_background(),
            &AugmentOptions::default(),
        )
        .unwrap();
        assert!(matches!(
            pd_evaluate_ensemble(&aug, &bg3, &[subset(&[])]),
            Err(Error::DimensionMismatch { .. })
        ));
        let empty = Dataset::new(vec![], 0, 2).unwrap();
        assert!(pd_evaluate_ensemble(&aug, &empty, &[subset(&[])]).is_err());
    }

    #[test]
    fn empty_subset_is_background_mean_and_full_is_prediction() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let ens = random_ensemble(&mut rng, 3, 3, 3);
        let bg = random_dataset(&mut rng, 64, 3);
        let eval = random_dataset(&mut rng, 10, 3);
        let aug = augment_ensemble(&ens, &bg, &AugmentOptions::default()).unwrap();
        let table = pd_evaluate_ensemble(&aug, &eval, &[subset(&[]), subset(&[0, 1, 2])]).unwrap();
        let mean = bg.rows().map(|r| ens.predict(r).unwrap()).sum::<f64>() / 64.0;
        for (i, x) in eval.rows().enumerate() {
            assert!(close(table.get(i, 0), mean, 1e-12));
            assert!(close(table.get(i, 1), ens.predict(x).unwrap(), 1e-12));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn matches_brute_force(seed in any::<u64>(), d in 1usize..=4, depth in 0usize..=4, n_b in 1usize..=200) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ens = random_ensemble(&mut rng, d, depth, 3);
            let bg = random_dataset(&mut rng, n_b, d);
            let eval = random_dataset(&mut rng, 20, d);
            let aug = augment_ensemble(&ens, &bg, &AugmentOptions::default()).unwrap();
            let subsets: Vec<_> = FeatureSubset::full(d).subsets().collect();
            let table = pd_evaluate_ensemble(&aug, &eval, &subsets).unwrap();
            for (j, s) in subsets.iter().enumerate() {
                for (i, x) in eval.rows().enumerate() {
                    let oracle = vanilla_pd(&ens, &bg, x, s).unwrap();
                    prop_assert!(close(table.get(i, j), oracle, 1e-10), "{} vs {}", table.get(i, j), oracle);
                }
            }
        }
    }
}
