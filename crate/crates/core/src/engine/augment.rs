use std::sync::Arc;

use super::subset::{expand_mask, FeatureSubset};
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::model::{Node, NodeId, Tree};

/// Limits for [`augment`].
#[derive(Debug, Clone, Copy)]
pub struct AugmentOptions {
    /// Maximum number of partition lists (summed over leaves) a single tree
    /// may produce. A leaf whose path splits on `k` distinct features holds
    /// `2^k` lists.
    pub budget_lists: u64,
    /// Drop the row-index lists after augmentation and keep only their
    /// lengths, which is all evaluation needs.
    pub compact: bool,
}

impl Default for AugmentOptions {
    fn default() -> Self {
        Self {
            budget_lists: 1 << 20,
            compact: false,
        }
    }
}

/// Background partitions stored at one leaf.
///
/// `path[k]` is the `k`-th distinct feature met on the way from the root, and
/// bit `k` of a path mask stands for that feature. Entry `mask` of `counts`
/// (and of `lists`) is the number of background rows that reach this leaf
/// when every split on a feature in `mask` is ignored.
#[derive(Debug, Clone)]
pub struct AugmentedLeaf {
    pub(crate) node: NodeId,
    pub(crate) value: f64,
    pub(crate) path: Vec<usize>,
    /// Tree-local bit of each `path` entry.
    pub(crate) local_bits: Vec<u32>,
    pub(crate) counts: Vec<u32>,
    pub(crate) lists: Option<Vec<Arc<[u32]>>>,
}

impl AugmentedLeaf {
    pub fn node_id(&self) -> NodeId {
        self.node
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// The features split on along the root-to-leaf path.
    pub fn path_features(&self) -> FeatureSubset {
        self.path.iter().copied().collect()
    }

    pub fn num_partitions(&self) -> usize {
        self.counts.len()
    }

    fn path_mask(&self, s: &FeatureSubset) -> Option<usize> {
        let mut mask = 0usize;
        let mut seen = 0;
        for (k, &f) in self.path.iter().enumerate() {
            if s.contains(f) {
                mask |= 1 << k;
                seen += 1;
            }
        }
        (seen == s.len()).then_some(mask)
    }

    /// `|D_S|` for `S` a subset of the path features.
    pub fn count(&self, s: &FeatureSubset) -> Option<usize> {
        self.path_mask(s).map(|m| self.counts[m] as usize)
    }

    /// Row indices of `D_S`, in background order. `None` when `S` is not a
    /// subset of the path features or the leaf has been compacted.
    pub fn partition(&self, s: &FeatureSubset) -> Option<&[u32]> {
        let m = self.path_mask(s)?;
        self.lists.as_ref().map(|lists| &*lists[m])
    }

    /// Every `(S, |D_S|)` pair stored at the leaf.
    pub fn partitions(&self) -> impl Iterator<Item = (FeatureSubset, usize)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .map(|(mask, &c)| (expand_mask(mask as u64, &self.path), c as usize))
    }

    /// Index into `counts` for a tree-local subset mask.
    #[inline]
    pub(crate) fn slot(&self, local: u64) -> usize {
        self.local_bits
            .iter()
            .enumerate()
            .fold(0, |acc, (k, &bit)| {
                acc | ((((local >> bit) & 1) as usize) << k)
            })
    }
}

/// A tree together with the background partitions of every leaf.
#[derive(Debug, Clone)]
pub struct AugmentedTree<'t> {
    pub(crate) tree: &'t Tree,
    /// Split features, ascending. Bit `k` of a tree-local mask is `features[k]`.
    pub(crate) features: Vec<usize>,
    pub(crate) leaves: Vec<AugmentedLeaf>,
    /// Node id to position in `leaves`, `u32::MAX` for internal nodes.
    pub(crate) leaf_slot: Vec<u32>,
    /// Node id to tree-local bit of its split feature.
    pub(crate) node_bit: Vec<u32>,
    pub(crate) n_b: usize,
    pub(crate) num_features: usize,
}

impl<'t> AugmentedTree<'t> {
    pub fn tree(&self) -> &'t Tree {
        self.tree
    }

    pub fn leaves(&self) -> &[AugmentedLeaf] {
        &self.leaves
    }

    pub fn leaf(&self, node: NodeId) -> Option<&AugmentedLeaf> {
        let slot = *self.leaf_slot.get(node)?;
        self.leaves.get(slot as usize)
    }

    /// Background sample size.
    pub fn n_b(&self) -> usize {
        self.n_b
    }

    /// Column count of the background the tree was augmented with.
    pub fn num_features(&self) -> usize {
        self.num_features
    }

    pub fn split_features(&self) -> FeatureSubset {
        self.features.iter().copied().collect()
    }

    /// Drops the row-index lists, keeping only their lengths.
    pub fn compact(&mut self) {
        for leaf in &mut self.leaves {
            leaf.lists = None;
        }
    }

    pub fn is_compact(&self) -> bool {
        self.leaves.iter().all(|l| l.lists.is_none())
    }

    /// `S ∩ F` as a tree-local bitmask.
    pub(crate) fn local_mask(&self, s: &FeatureSubset) -> u64 {
        self.features.iter().enumerate().fold(
            0,
            |acc, (k, &f)| if s.contains(f) { acc | (1 << k) } else { acc },
        )
    }

    pub(crate) fn subset_of_mask(&self, mask: u64) -> FeatureSubset {
        expand_mask(mask, &self.features)
    }

    /// Builds the tree-level indexes around a set of already computed leaves.
    pub(crate) fn assemble(
        tree: &'t Tree,
        mut leaves: Vec<AugmentedLeaf>,
        n_b: usize,
        num_features: usize,
    ) -> Result<Self> {
        let features = tree.split_features().to_vec();
        if features.len() > 64 {
            return Err(Error::InvalidArgument(format!(
                "tree splits on {} distinct features; at most 64 are supported",
                features.len()
            )));
        }
        let bit_of = |f: usize| features.binary_search(&f).expect("split feature") as u32;
        let mut node_bit = vec![0u32; tree.nodes().len()];
        for (id, node) in tree.nodes().iter().enumerate() {
            if let Node::Internal { feature, .. } = node {
                node_bit[id] = bit_of(*feature);
            }
        }
        let mut leaf_slot = vec![u32::MAX; tree.nodes().len()];
        for (slot, leaf) in leaves.iter_mut().enumerate() {
            leaf.local_bits = leaf.path.iter().map(|&f| bit_of(f)).collect();
            leaf_slot[leaf.node] = slot as u32;
        }
        Ok(Self {
            tree,
            features,
            leaves,
            leaf_slot,
            node_bit,
            n_b,
            num_features,
        })
    }
}

/// Total partition lists the tree would need: the sum over leaves of
/// `2^(distinct features on the path)`.
pub fn partition_list_count(tree: &Tree) -> u128 {
    fn walk(tree: &Tree, id: NodeId, path: &mut Vec<usize>) -> u128 {
        match *tree.node(id) {
            Node::Leaf { .. } => 1u128.checked_shl(path.len() as u32).unwrap_or(u128::MAX),
            Node::Internal {
                feature,
                left,
                right,
                ..
            } => {
                let new = !path.contains(&feature);
                if new {
                    path.push(feature);
                }
                let total = walk(tree, left, path).saturating_add(walk(tree, right, path));
                if new {
                    path.pop();
                }
                total
            }
        }
    }
    walk(tree, tree.root(), &mut Vec::new())
}

/// Augments one tree with background partitions.
///
/// Starting from the full background as `D_{}` at the root, each split on
/// feature `f` at threshold `t` passes lists whose subset contains `f` to
/// both children unchanged and filters the others (`x_f < t` left,
/// `x_f >= t` right). The first time `f` appears on a path, every current
/// list `D_S` is also copied, unfiltered, as `D_{S ∪ {f}}`.
pub fn augment<'t>(
    tree: &'t Tree,
    background: &Dataset,
    options: &AugmentOptions,
) -> Result<AugmentedTree<'t>> {
    augment_indexed(0, tree, background, options)
}

pub(crate) fn augment_indexed<'t>(
    tree_index: usize,
    tree: &'t Tree,
    background: &Dataset,
    options: &AugmentOptions,
) -> Result<AugmentedTree<'t>> {
    if background.n() == 0 {
        return Err(Error::EmptyBackground);
    }
    if background.n() > u32::MAX as usize {
        return Err(Error::InvalidArgument(
            "background larger than 2^32 rows".into(),
        ));
    }
    if let Some(&index) = tree.split_features().last() {
        if index >= background.d() {
            return Err(Error::FeatureOutOfRange {
                index,
                num_features: background.d(),
            });
        }
    }
    let required = partition_list_count(tree);
    if required > options.budget_lists as u128 {
        return Err(Error::BudgetExceeded {
            tree: tree_index,
            required,
            budget: options.budget_lists,
        });
    }

    let all: Arc<[u32]> = (0..background.n() as u32).collect();
    let mut leaves = Vec::with_capacity(tree.num_leaves());
    let mut path = Vec::with_capacity(tree.depth());
    recurse(
        tree,
        background,
        tree.root(),
        &mut path,
        vec![all],
        !options.compact,
        &mut leaves,
    );
    leaves.sort_by_key(|l| l.node);
    AugmentedTree::assemble(tree, leaves, background.n(), background.d())
}

fn recurse(
    tree: &Tree,
    background: &Dataset,
    id: NodeId,
    path: &mut Vec<usize>,
    lists: Vec<Arc<[u32]>>,
    keep_lists: bool,
    out: &mut Vec<AugmentedLeaf>,
) {
    let (feature, threshold, left, right) = match *tree.node(id) {
        Node::Leaf { value } => {
            out.push(AugmentedLeaf {
                node: id,
                value,
                path: path.clone(),
                local_bits: Vec::new(),
                counts: lists.iter().map(|l| l.len() as u32).collect(),
                lists: keep_lists.then_some(lists),
            });
            return;
        }
        Node::Internal {
            feature,
            threshold,
            left,
            right,
        } => (feature, threshold, left, right),
    };

    let seen_at = path.iter().position(|&f| f == feature);
    let fresh = seen_at.is_none();
    let capacity = if fresh { 2 * lists.len() } else { lists.len() };
    let mut yes = Vec::with_capacity(capacity);
    let mut no = Vec::with_capacity(capacity);
    for (mask, list) in lists.iter().enumerate() {
        if seen_at.is_some_and(|k| mask >> k & 1 == 1) {
            yes.push(Arc::clone(list));
            no.push(Arc::clone(list));
        } else {
            let (l, r): (Vec<u32>, Vec<u32>) = list
                .iter()
                .partition(|&&i| background.get(i as usize, feature) < threshold);
            yes.push(l.into());
            no.push(r.into());
        }
    }
    if fresh {
        // lists for S ∪ {feature} are the parent's unfiltered D_S, and their
        // masks are the old masks with the new top bit set
        yes.extend(lists.iter().cloned());
        no.extend(lists.iter().cloned());
        path.push(feature);
    }
    drop(lists);
    recurse(tree, background, left, path, yes, keep_lists, out);
    recurse(tree, background, right, path, no, keep_lists, out);
    if fresh {
        path.pop();
    }
}
