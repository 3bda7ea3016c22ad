//! Reader for XGBoost's JSON text dump (`Booster.get_dump(dump_format="json")`
//! or `dump_model(..., dump_format="json")`).
//!
//! Each tree is a nested object: split nodes carry `nodeid`, `split`,
//! `split_condition`, `yes`, `no`, `missing` and `children`; leaves carry
//! `nodeid` and `leaf`. `yes` (taken when `x < split_condition`) becomes the
//! left child. XGBoost stores thresholds and leaf values as `f32`, so both are
//! rounded through `f32` here to reproduce its routing exactly.

use std::collections::HashMap;

use serde_json::{Map, Value};

use super::{resolve_num_features, Node, ParseOptions, Tree, TreeEnsemble};
use crate::error::{Error, Result};

pub fn from_xgboost_json(source: &str, options: &ParseOptions) -> Result<TreeEnsemble> {
    let doc: Value =
        serde_json::from_str(source).map_err(|e| Error::MalformedModel(e.to_string()))?;
    let items = doc
        .as_array()
        .ok_or_else(|| Error::MalformedModel("expected a JSON array of trees".into()))?;

    let mut trees = Vec::with_capacity(items.len());
    for (t, item) in items.iter().enumerate() {
        // `get_dump` returns one JSON string per tree; accept those verbatim too.
        let parsed;
        let root = match item {
            Value::String(s) => {
                parsed = serde_json::from_str::<Value>(s)
                    .map_err(|e| Error::MalformedModel(format!("tree {t}: {e}")))?;
                &parsed
            }
            other => other,
        };
        trees.push(convert_tree(t, root, options.feature_names.as_deref())?);
    }

    let num_features = resolve_num_features(&trees, options.num_features);
    TreeEnsemble::new(trees, options.base_score.unwrap_or(0.0), num_features)
}

struct RawNode<'a> {
    id: i64,
    obj: &'a Map<String, Value>,
}

fn convert_tree(t: usize, root: &Value, names: Option<&[String]>) -> Result<Tree> {
    let mut raw = Vec::new();
    collect(t, root, &mut raw)?;

    let mut position = HashMap::with_capacity(raw.len());
    for (pos, node) in raw.iter().enumerate() {
        if position.insert(node.id, pos).is_some() {
            return Err(Error::MalformedModel(format!(
                "tree {t}: duplicate nodeid {}",
                node.id
            )));
        }
    }

    let mut nodes = Vec::with_capacity(raw.len());
    for node in &raw {
        let location = || format!("tree {t}, node {}", node.id);
        let obj = node.obj;
        if let Some(leaf) = obj.get("leaf") {
            let value = leaf.as_f64().ok_or_else(|| {
                Error::MalformedModel(format!("{}: leaf is not a number", location()))
            })?;
            nodes.push(Node::Leaf {
                value: value as f32 as f64,
            });
            continue;
        }

        if obj.contains_key("categories") || obj.get("split_type").is_some_and(|v| v != "numerical")
        {
            return Err(Error::Unsupported {
                location: location(),
                what: "categorical split".into(),
            });
        }
        let threshold = obj
            .get("split_condition")
            .and_then(Value::as_f64)
            .ok_or_else(|| Error::Unsupported {
                location: location(),
                what: "split without a numeric split_condition".into(),
            })?;
        let feature = split_feature(obj.get("split"), names).ok_or_else(|| {
            Error::MalformedModel(format!(
                "{}: unrecognised split feature {:?}",
                location(),
                obj.get("split")
            ))
        })?;
        let child = |key: &str| -> Result<usize> {
            let id = obj
                .get(key)
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::MalformedModel(format!("{}: missing `{key}`", location())))?;
            position.get(&id).copied().ok_or_else(|| {
                Error::MalformedModel(format!(
                    "{}: `{key}` points to unknown node {id}",
                    location()
                ))
            })
        };
        let (yes, no) = (child("yes")?, child("no")?);
        if let Some(missing) = obj.get("missing") {
            let target = missing.as_i64().and_then(|id| position.get(&id).copied());
            if target != Some(yes) && target != Some(no) {
                return Err(Error::Unsupported {
                    location: location(),
                    what: format!("missing-value branch {missing} is neither yes nor no child"),
                });
            }
        }
        nodes.push(Node::Internal {
            feature,
            threshold: threshold as f32 as f64,
            left: yes,
            right: no,
        });
    }

    let root_pos = position[&raw[0].id];
    Tree::new(nodes, root_pos).map_err(|e| match e {
        Error::InvalidTree(msg) => Error::InvalidTree(format!("tree {t}: {msg}")),
        other => other,
    })
}

fn collect<'a>(t: usize, value: &'a Value, out: &mut Vec<RawNode<'a>>) -> Result<()> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::MalformedModel(format!("tree {t}: node is not an object")))?;
    let id = obj
        .get("nodeid")
        .and_then(Value::as_i64)
        .ok_or_else(|| Error::MalformedModel(format!("tree {t}: node without integer `nodeid`")))?;
    out.push(RawNode { id, obj });
    if let Some(children) = obj.get("children") {
        let children = children.as_array().ok_or_else(|| {
            Error::MalformedModel(format!("tree {t}, node {id}: `children` is not an array"))
        })?;
        for child in children {
            collect(t, child, out)?;
        }
    }
    Ok(())
}

/// Accepts `f12`, `12`, or a name listed in `names`.
fn split_feature(split: Option<&Value>, names: Option<&[String]>) -> Option<usize> {
    match split? {
        Value::Number(n) => n.as_u64().map(|v| v as usize),
        Value::String(s) => {
            if let Some(pos) = names.and_then(|names| names.iter().position(|n| n == s)) {
                return Some(pos);
            }
            s.strip_prefix('f').unwrap_or(s).parse().ok()
        }
        _ => None,
    }
}
