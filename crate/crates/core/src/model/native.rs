//! The library's own lossless JSON schema:
//!
//! ```text
//! { "num_features": 2, "intercept": 0.5,
//!   "trees": [ { "nodes": [ {"id": 0, "feature": 0, "threshold": 0.5, "left": 1, "right": 2, "value": null}, .. ] } ] }
//! ```
//!
//! Node ids are arbitrary distinct integers; the root is the node nobody
//! points to.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Node, ParseOptions, Tree, TreeEnsemble};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct NativeModel {
    num_features: usize,
    intercept: f64,
    trees: Vec<NativeTree>,
}

#[derive(Debug, Serialize, Deserialize)]
struct NativeTree {
    nodes: Vec<NativeNode>,
}

#[derive(Debug, Serialize, Deserialize)]
struct NativeNode {
    id: i64,
    feature: Option<usize>,
    threshold: Option<f64>,
    left: Option<i64>,
    right: Option<i64>,
    value: Option<f64>,
}

pub fn from_native_json(source: &str, options: &ParseOptions) -> Result<TreeEnsemble> {
    let doc: NativeModel =
        serde_json::from_str(source).map_err(|e| Error::MalformedModel(e.to_string()))?;
    let trees = doc
        .trees
        .iter()
        .enumerate()
        .map(|(t, tree)| convert_tree(t, tree))
        .collect::<Result<Vec<_>>>()?;
    let num_features = options.num_features.unwrap_or(doc.num_features);
    TreeEnsemble::new(trees, doc.intercept, num_features)
}

fn convert_tree(t: usize, tree: &NativeTree) -> Result<Tree> {
    let mut position = HashMap::with_capacity(tree.nodes.len());
    for (pos, node) in tree.nodes.iter().enumerate() {
        if position.insert(node.id, pos).is_some() {
            return Err(Error::MalformedModel(format!(
                "tree {t}: duplicate node id {}",
                node.id
            )));
        }
    }
    let lookup = |id: i64, from: i64| {
        position.get(&id).copied().ok_or_else(|| {
            Error::MalformedModel(format!("tree {t}: node {from} points to unknown node {id}"))
        })
    };

    let mut nodes = Vec::with_capacity(tree.nodes.len());
    let mut has_parent = vec![false; tree.nodes.len()];
    for n in &tree.nodes {
        let node = match (n.feature, n.threshold, n.left, n.right, n.value) {
            (Some(feature), Some(threshold), Some(l), Some(r), None) => {
                let (left, right) = (lookup(l, n.id)?, lookup(r, n.id)?);
                has_parent[left] = true;
                has_parent[right] = true;
                Node::Internal {
                    feature,
                    threshold,
                    left,
                    right,
                }
            }
            (None, None, None, None, Some(value)) => Node::Leaf { value },
            _ => {
                return Err(Error::MalformedModel(format!(
                    "tree {t}: node {} must be either a split (feature, threshold, left, right) or a leaf (value)",
                    n.id
                )))
            }
        };
        nodes.push(node);
    }
    let roots: Vec<usize> = (0..nodes.len()).filter(|&i| !has_parent[i]).collect();
    match roots.as_slice() {
        [root] => Tree::new(nodes, *root).map_err(|e| match e {
            Error::InvalidTree(msg) => Error::InvalidTree(format!("tree {t}: {msg}")),
            other => other,
        }),
        _ => Err(Error::InvalidTree(format!(
            "tree {t}: expected exactly one root, found {}",
            roots.len()
        ))),
    }
}

/// Serialises an ensemble in the native schema. Node ids are positions.
pub fn to_native_json(ensemble: &TreeEnsemble) -> String {
    let doc = NativeModel {
        num_features: ensemble.num_features(),
        intercept: ensemble.intercept(),
        trees: ensemble
            .trees()
            .iter()
            .map(|tree| NativeTree {
                nodes: tree
                    .nodes()
                    .iter()
                    .enumerate()
                    .map(|(id, node)| match *node {
                        Node::Internal {
                            feature,
                            threshold,
                            left,
                            right,
                        } => NativeNode {
                            id: id as i64,
                            feature: Some(feature),
                            threshold: Some(threshold),
                            left: Some(left as i64),
                            right: Some(right as i64),
                            value: None,
                        },
                        Node::Leaf { value } => NativeNode {
                            id: id as i64,
                            feature: None,
                            threshold: None,
                            left: None,
                            right: None,
                            value: Some(value),
                        },
                    })
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("native model serialises")
}
