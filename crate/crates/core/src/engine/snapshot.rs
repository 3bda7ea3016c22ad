//! Binary snapshot of an augmented ensemble's partition counts.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! magic        8 bytes  "FPDSNAP\0"
//! version      u32      1
//! num_features u32
//! n_b          u64
//! num_trees    u32
//! per tree:
//!   num_nodes  u32
//!   num_leaves u32
//!   per leaf:
//!     node     u32
//!     path_len u8
//!     path     u32 x path_len   (features in discovery order)
//!     counts   u64 x 2^path_len (indexed by path mask)
//! ```
//!
//! Only counts are stored, so a loaded ensemble is compact.

use std::io::{Read, Write};

use byteorder::{LittleEndian as LE, ReadBytesExt, WriteBytesExt};

use super::augment::{AugmentedLeaf, AugmentedTree};
use super::evaluate::AugmentedEnsemble;
use crate::error::{Error, Result};
use crate::model::{Node, NodeId, Tree, TreeEnsemble};

const MAGIC: &[u8; 8] = b"FPDSNAP\0";
const VERSION: u32 = 1;

pub fn write_snapshot<W: Write>(aug: &AugmentedEnsemble<'_>, mut w: W) -> Result<()> {
    w.write_all(MAGIC)?;
    w.write_u32::<LE>(VERSION)?;
    w.write_u32::<LE>(aug.num_features() as u32)?;
    w.write_u64::<LE>(aug.n_b() as u64)?;
    w.write_u32::<LE>(aug.trees().len() as u32)?;
    for tree in aug.trees() {
        w.write_u32::<LE>(tree.tree().nodes().len() as u32)?;
        w.write_u32::<LE>(tree.leaves().len() as u32)?;
        for leaf in tree.leaves() {
            w.write_u32::<LE>(leaf.node as u32)?;
            w.write_u8(leaf.path.len() as u8)?;
            for &f in &leaf.path {
                w.write_u32::<LE>(f as u32)?;
            }
            for &c in &leaf.counts {
                w.write_u64::<LE>(c as u64)?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// Loads a snapshot written for `ensemble`. The tree shapes, leaf paths and
/// feature count must match the ensemble exactly.
pub fn read_snapshot<'e, R: Read>(
    ensemble: &'e TreeEnsemble,
    mut r: R,
) -> Result<AugmentedEnsemble<'e>> {
    let bad = |msg: String| Error::Snapshot(msg);
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)
        .map_err(|_| bad("file too short".into()))?;
    if &magic != MAGIC {
        return Err(bad("not a snapshot file".into()));
    }
    let version = r.read_u32::<LE>()?;
    if version != VERSION {
        return Err(bad(format!("unsupported version {version}")));
    }
    let num_features = r.read_u32::<LE>()? as usize;
    if num_features != ensemble.num_features() {
        return Err(bad(format!(
            "snapshot has {num_features} features, model has {}",
            ensemble.num_features()
        )));
    }
    let n_b = r.read_u64::<LE>()?;
    if n_b == 0 || n_b > u32::MAX as u64 {
        return Err(bad(format!("invalid background size {n_b}")));
    }
    let num_trees = r.read_u32::<LE>()? as usize;
    if num_trees != ensemble.trees().len() {
        return Err(bad(format!(
            "snapshot has {num_trees} trees, model has {}",
            ensemble.trees().len()
        )));
    }

    let mut trees = Vec::with_capacity(num_trees);
    for (t, tree) in ensemble.trees().iter().enumerate() {
        let num_nodes = r.read_u32::<LE>()? as usize;
        let num_leaves = r.read_u32::<LE>()? as usize;
        if num_nodes != tree.nodes().len() || num_leaves != tree.num_leaves() {
            return Err(bad(format!("tree {t} does not match the model")));
        }
        let expected = leaf_paths(tree);
        let mut leaves = Vec::with_capacity(num_leaves);
        for (node, path) in &expected {
            let id = r.read_u32::<LE>()? as usize;
            let len = r.read_u8()? as usize;
            let mut stored = Vec::with_capacity(len);
            for _ in 0..len {
                stored.push(r.read_u32::<LE>()? as usize);
            }
            if id != *node || stored != *path {
                return Err(bad(format!("tree {t}: leaf {id} does not match the model")));
            }
            let mut counts = Vec::with_capacity(1 << len);
            for _ in 0..1usize << len {
                let c = r.read_u64::<LE>()?;
                if c > n_b {
                    return Err(bad(format!(
                        "tree {t}, leaf {id}: count {c} exceeds background size"
                    )));
                }
                counts.push(c as u32);
            }
            let value = match *tree.node(id) {
                Node::Leaf { value } => value,
                Node::Internal { .. } => unreachable!(),
            };
            leaves.push(AugmentedLeaf {
                node: id,
                value,
                path: stored,
                local_bits: Vec::new(),
                counts,
                lists: None,
            });
        }
        let total: u64 = leaves.iter().map(|l| l.counts[0] as u64).sum();
        if total != n_b {
            return Err(bad(format!(
                "tree {t}: leaf counts sum to {total}, expected {n_b}"
            )));
        }
        trees.push(AugmentedTree::assemble(
            tree,
            leaves,
            n_b as usize,
            num_features,
        )?);
    }
    let mut tail = [0u8; 1];
    if r.read(&mut tail)? != 0 {
        return Err(bad("trailing bytes after snapshot".into()));
    }
    Ok(AugmentedEnsemble {
        ensemble,
        trees,
        n_b: n_b as usize,
    })
}

/// Each leaf with its path features in discovery order, sorted by node id.
fn leaf_paths(tree: &Tree) -> Vec<(NodeId, Vec<usize>)> {
    fn walk(tree: &Tree, id: NodeId, path: &mut Vec<usize>, out: &mut Vec<(NodeId, Vec<usize>)>) {
        match *tree.node(id) {
            Node::Leaf { .. } => out.push((id, path.clone())),
            Node::Internal {
                feature,
                left,
                right,
                ..
            } => {
                let fresh = !path.contains(&feature);
                if fresh {
                    path.push(feature);
                }
                walk(tree, left, path, out);
                walk(tree, right, path, out);
                if fresh {
                    path.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    walk(tree, tree.root(), &mut Vec::new(), &mut out);
    out.sort_by_key(|(id, _)| *id);
    out
}
