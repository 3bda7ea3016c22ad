//! Small hand-built models and datasets used throughout the guide and tests.
//!
//! The two-tree construction: `twin_tree_a` splits on `x1 < 0.5` first,
//! `twin_tree_b` on `x2 < 0.3` first, and both have leaves
//! `10, -5, -5, 10` on the same four rectangles, so they are the same
//! function. Feature indices are zero-based (`x1` is feature 0).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::data::Dataset;
use crate::model::{Node, Tree, TreeEnsemble};

const V1: f64 = 10.0;
const V2: f64 = -5.0;
const V3: f64 = -5.0;
const V4: f64 = 10.0;

fn split(feature: usize, threshold: f64, left: usize, right: usize) -> Node {
    Node::Internal {
        feature,
        threshold,
        left,
        right,
    }
}

fn leaf(value: f64) -> Node {
    Node::Leaf { value }
}

/// Root `x1 < 0.5`, then `x2 < 0.3` on both sides. Leaves left to right:
/// L1 = 10, L2 = -5, L3 = -5, L4 = 10.
pub fn twin_tree_a() -> Tree {
    Tree::new(
        vec![
            split(0, 0.5, 1, 2),
            split(1, 0.3, 3, 4),
            split(1, 0.3, 5, 6),
            leaf(V1),
            leaf(V2),
            leaf(V3),
            leaf(V4),
        ],
        0,
    )
    .expect("valid tree")
}

/// Root `x2 < 0.3`, then `x1 < 0.5` on both sides. Leaves left to right:
/// L1, L3, L2, L4.
pub fn twin_tree_b() -> Tree {
    Tree::new(
        vec![
            split(1, 0.3, 1, 2),
            split(0, 0.5, 3, 4),
            split(0, 0.5, 5, 6),
            leaf(V1),
            leaf(V3),
            leaf(V2),
            leaf(V4),
        ],
        0,
    )
    .expect("valid tree")
}

pub fn twin_ensemble_a() -> TreeEnsemble {
    TreeEnsemble::new(vec![twin_tree_a()], 0.0, 2).expect("valid ensemble")
}

pub fn twin_ensemble_b() -> TreeEnsemble {
    TreeEnsemble::new(vec![twin_tree_b()], 0.0, 2).expect("valid ensemble")
}

/// Support points of the discrete covariate distribution and their
/// probabilities.
pub const TWIN_SUPPORT: [([f64; 2], f64); 4] = [
    ([0.0, 0.0], 0.2),
    ([0.0, 0.4], 0.1),
    ([0.7, 0.0], 0.1),
    ([0.7, 0.4], 0.6),
];

/// The 2500-row background: `(0,0) x 500, (0,0.4) x 250, (0.7,0) x 250,
/// (0.7,0.4) x 1500`, in that order.
pub fn twin_background() -> Dataset {
    let mut rows = Vec::with_capacity(2500);
    for (point, p) in TWIN_SUPPORT {
        let count = (p * 2500.0).round() as usize;
        rows.extend(std::iter::repeat_n(point, count));
    }
    Dataset::from_rows(&rows).expect("finite rows")
}

/// `n` iid draws from the discrete distribution above.
pub fn twin_sample(n: usize, seed: u64) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<[f64; 2]> = (0..n)
        .map(|_| {
            let u: f64 = rng.random();
            let mut acc = 0.0;
            for (point, p) in TWIN_SUPPORT {
                acc += p;
                if u < acc {
                    return point;
                }
            }
            TWIN_SUPPORT[3].0
        })
        .collect();
    Dataset::from_rows(&rows).expect("finite rows")
}

/// The evaluation point `(0.1, 0.2)`.
pub const TWIN_POINT: [f64; 2] = [0.1, 0.2];

/// Root `x1 < 0`; its left child splits `x2 < 0`. Leaves (left to right)
/// hold 1, 2 and 3.
pub fn three_leaf_tree() -> Tree {
    Tree::new(
        vec![
            split(0, 0.0, 1, 2),
            split(1, 0.0, 3, 4),
            leaf(3.0),
            leaf(1.0),
            leaf(2.0),
        ],
        0,
    )
    .expect("valid tree")
}

/// Thresholds and covariate values for random instances are drawn from this
/// grid, so ties between data and thresholds occur often.
const GRID: [f64; 9] = [-1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 1.0];

/// A random tree over `d` features with depth at most `max_depth`. Every
/// node above the depth limit splits with probability 0.8; leaf values are
/// uniform on `[-5, 5)`.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, d: usize, max_depth: usize) -> Tree {
    fn grow<R: Rng + ?Sized>(
        rng: &mut R,
        d: usize,
        depth_left: usize,
        nodes: &mut Vec<Node>,
    ) -> usize {
        let id = nodes.len();
        if depth_left == 0 || d == 0 || !rng.random_bool(0.8) {
            nodes.push(leaf(rng.random_range(-5.0..5.0)));
            return id;
        }
        nodes.push(leaf(0.0));
        let feature = rng.random_range(0..d);
        let threshold = GRID[rng.random_range(1..GRID.len())];
        let left = grow(rng, d, depth_left - 1, nodes);
        let right = grow(rng, d, depth_left - 1, nodes);
        nodes[id] = split(feature, threshold, left, right);
        id
    }
    let mut nodes = Vec::new();
    grow(rng, d, max_depth, &mut nodes);
    Tree::new(nodes, 0).expect("valid tree")
}

/// `num_trees` random trees plus a random intercept.
pub fn random_ensemble<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    max_depth: usize,
    num_trees: usize,
) -> TreeEnsemble {
    let trees = (0..num_trees)
        .map(|_| random_tree(rng, d, max_depth))
        .collect();
    let intercept = rng.random_range(-1.0..1.0);
    TreeEnsemble::new(trees, intercept, d).expect("valid ensemble")
}

/// `n x d` values drawn uniformly from the threshold grid.
pub fn random_dataset<R: Rng + ?Sized>(rng: &mut R, n: usize, d: usize) -> Dataset {
    let values = (0..n * d)
        .map(|_| GRID[rng.random_range(0..GRID.len())])
        .collect();
    Dataset::new(values, n, d).expect("finite values")
}
