//! Tree ensembles as piecewise-constant functions.
//!
//! A [`Tree`] routes a point from the root to a single leaf: at an internal
//! node splitting feature `f` at threshold `t` the point goes left iff
//! `x[f] < t`. A [`TreeEnsemble`] predicts `intercept + sum of tree outputs`.

mod native;
mod xgboost;

pub use native::{from_native_json, to_native_json};
pub use xgboost::from_xgboost_json;

use crate::engine::FeatureSubset;
use crate::error::{check_finite, Error, Result};

/// Index of a node inside its tree's node vector.
pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Node {
    Internal {
        feature: usize,
        threshold: f64,
        left: NodeId,
        right: NodeId,
    },
    Leaf {
        value: f64,
    },
}

impl Node {
    pub fn is_leaf(&self) -> bool {
        matches!(self, Node::Leaf { .. })
    }
}

/// A validated binary regression tree.
#[derive(Debug, Clone, PartialEq)]
pub struct Tree {
    nodes: Vec<Node>,
    root: NodeId,
    depth: usize,
    split_features: Vec<usize>,
}

impl Tree {
    /// Builds a tree, checking that the nodes form a single rooted binary
    /// tree: every child id is in range, every node except the root has
    /// exactly one parent, and every node is reachable from the root.
    pub fn new(nodes: Vec<Node>, root: NodeId) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::InvalidTree("tree has no nodes".into()));
        }
        if root >= nodes.len() {
            return Err(Error::InvalidTree(format!("root {root} out of range")));
        }
        let mut parent_count = vec![0usize; nodes.len()];
        for (id, node) in nodes.iter().enumerate() {
            match *node {
                Node::Internal {
                    left,
                    right,
                    threshold,
                    ..
                } => {
                    for child in [left, right] {
                        if child >= nodes.len() {
                            return Err(Error::InvalidTree(format!(
                                "node {id} points to missing child {child}"
                            )));
                        }
                        parent_count[child] += 1;
                    }
                    if !threshold.is_finite() {
                        return Err(Error::InvalidTree(format!(
                            "node {id} has non-finite threshold"
                        )));
                    }
                }
                Node::Leaf { value } => {
                    if !value.is_finite() {
                        return Err(Error::InvalidTree(format!(
                            "leaf {id} has non-finite value"
                        )));
                    }
                }
            }
        }
        if parent_count[root] != 0 {
            return Err(Error::InvalidTree(format!("root {root} has a parent")));
        }
        if let Some(id) = (0..nodes.len()).find(|&i| i != root && parent_count[i] != 1) {
            return Err(Error::InvalidTree(format!(
                "node {id} has {} parents",
                parent_count[id]
            )));
        }

        // With single parents everywhere, a walk from the root that visits
        // every node exactly once rules out cycles.
        let mut visited = vec![false; nodes.len()];
        let mut stack = vec![(root, 0usize)];
        let mut depth = 0;
        let mut features = FeatureSubset::empty();
        while let Some((id, level)) = stack.pop() {
            if visited[id] {
                return Err(Error::InvalidTree(format!("cycle through node {id}")));
            }
            visited[id] = true;
            depth = depth.max(level);
            if let Node::Internal {
                feature,
                left,
                right,
                ..
            } = nodes[id]
            {
                features.insert(feature);
                stack.push((right, level + 1));
                stack.push((left, level + 1));
            }
        }
        if let Some(id) = visited.iter().position(|v| !v) {
            return Err(Error::InvalidTree(format!(
                "node {id} is not reachable from the root"
            )));
        }

        Ok(Self {
            nodes,
            root,
            depth,
            split_features: features.iter().collect(),
        })
    }

    /// A tree consisting of a single leaf.
    pub fn constant(value: f64) -> Self {
        Self {
            nodes: vec![Node::Leaf { value }],
            root: 0,
            depth: 0,
            split_features: Vec::new(),
        }
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    /// Length of the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Features used by at least one internal node, ascending.
    pub fn split_features(&self) -> &[usize] {
        &self.split_features
    }

    pub fn num_leaves(&self) -> usize {
        self.nodes.iter().filter(|n| n.is_leaf()).count()
    }

    /// The leaf reached by `x`. No bounds or finiteness checks.
    pub fn leaf_for(&self, x: &[f64]) -> NodeId {
        let mut id = self.root;
        loop {
            match self.nodes[id] {
                Node::Leaf { .. } => return id,
                Node::Internal {
                    feature,
                    threshold,
                    left,
                    right,
                } => id = if x[feature] < threshold { left } else { right },
            }
        }
    }

    /// Tree output at `x`. No bounds or finiteness checks.
    pub fn predict(&self, x: &[f64]) -> f64 {
        match self.nodes[self.leaf_for(x)] {
            Node::Leaf { value } => value,
            Node::Internal { .. } => unreachable!(),
        }
    }

    /// Multiplies every leaf value by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        for node in &mut out.nodes {
            if let Node::Leaf { value } = node {
                *value *= factor;
            }
        }
        out
    }
}

/// An additive ensemble of trees plus a constant base score.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeEnsemble {
    trees: Vec<Tree>,
    intercept: f64,
    num_features: usize,
}

impl TreeEnsemble {
    pub fn new(trees: Vec<Tree>, intercept: f64, num_features: usize) -> Result<Self> {
        if !intercept.is_finite() {
            return Err(Error::InvalidArgument("intercept must be finite".into()));
        }
        for tree in &trees {
            if let Some(&index) = tree.split_features().last() {
                if index >= num_features {
                    return Err(Error::FeatureOutOfRange {
                        index,
                        num_features,
                    });
                }
            }
        }
        Ok(Self {
            trees,
            intercept,
            num_features,
        })
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn intercept(&self) -> f64 {
        self.intercept
    }

    pub fn num_features(&self) -> usize {
        self.num_features
    }

    /// `intercept + sum_t tree_t(x)`, summed in tree order.
    pub fn predict(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.num_features {
            return Err(Error::DimensionMismatch {
                expected: self.num_features,
                found: x.len(),
            });
        }
        check_finite(x)?;
        Ok(self.predict_unchecked(x))
    }

    pub(crate) fn predict_unchecked(&self, x: &[f64]) -> f64 {
        self.trees
            .iter()
            .fold(self.intercept, |acc, tree| acc + tree.predict(x))
    }

    /// Every leaf value multiplied by `factor`; the intercept is unchanged.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            trees: self.trees.iter().map(|t| t.scaled(factor)).collect(),
            intercept: self.intercept,
            num_features: self.num_features,
        }
    }

    /// Maximum tree depth in the ensemble.
    pub fn max_depth(&self) -> usize {
        self.trees.iter().map(Tree::depth).max().unwrap_or(0)
    }
}

/// Supported model dump formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelFormat {
    XgboostJson,
    NativeJson,
}

impl std::str::FromStr for ModelFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "xgboost-json" | "xgboost" => Ok(Self::XgboostJson),
            "native-json" | "native" => Ok(Self::NativeJson),
            other => Err(Error::InvalidArgument(format!(
                "unknown model format `{other}`"
            ))),
        }
    }
}

/// Knobs for [`parse_model`].
#[derive(Debug, Clone, Default)]
pub struct ParseOptions {
    /// Base score for dumps that do not carry one (xgboost-json).
    pub base_score: Option<f64>,
    /// Overrides the feature count. Must cover every split feature.
    pub num_features: Option<usize>,
    /// Maps xgboost split names to column indices when the dump was written
    /// with named features.
    pub feature_names: Option<Vec<String>>,
}

/// Parses a model dump.
pub fn parse_model(
    source: &str,
    format: ModelFormat,
    options: &ParseOptions,
) -> Result<TreeEnsemble> {
    match format {
        ModelFormat::XgboostJson => from_xgboost_json(source, options),
        ModelFormat::NativeJson => from_native_json(source, options),
    }
}

pub(crate) fn resolve_num_features(trees: &[Tree], declared: Option<usize>) -> usize {
    let inferred = trees
        .iter()
        .filter_map(|t| t.split_features().last())
        .max()
        .map_or(0, |m| m + 1);
    declared.unwrap_or(inferred)
}
