//! CSV and JSON writers for decompositions, SHAP matrices and importances.
//!
//! CSV files hold one row per evaluation point. Subset columns are labelled
//! by their feature names joined with `:` in ascending index order; the
//! constant term is `__intercept`. Numbers use shortest round-trip
//! formatting.

use std::io::Write;

use serde_json::{json, Value};

use super::{importance, Decomposition, ShapMatrix};
use crate::data::format_f64;
use crate::engine::FeatureSubset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    /// JSON for paths ending in `.json`, CSV otherwise.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => Self::Json,
            _ => Self::Csv,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct OutputOptions {
    pub format: OutputFormat,
    /// Only write components of at most this many features. The
    /// decomposition itself is unaffected.
    pub max_order: Option<usize>,
    /// Skip components that are zero at every row.
    pub prune_zero: bool,
    /// Omit the CSV header row.
    pub no_header: bool,
    /// Number of rows in the JSON importance table (all when `None`).
    pub top_k: Option<usize>,
}

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().has_headers(false).from_writer(w)
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

fn selected<'a>(
    decomp: &'a Decomposition,
    opts: &OutputOptions,
) -> Vec<(&'a FeatureSubset, &'a Vec<f64>)> {
    decomp
        .components()
        .iter()
        .filter(|(s, _)| opts.max_order.is_none_or(|k| s.len() <= k))
        .filter(|(_, v)| !opts.prune_zero || v.iter().any(|&x| x != 0.0))
        .collect()
}

pub fn write_decomposition<W: Write>(
    decomp: &Decomposition,
    names: &[String],
    opts: &OutputOptions,
    mut w: W,
) -> Result<()> {
    let cols = selected(decomp, opts);
    match opts.format {
        OutputFormat::Csv => {
            let mut wtr = csv_writer(w);
            if !opts.no_header {
                let header = std::iter::once("__intercept".to_string())
                    .chain(cols.iter().map(|(s, _)| s.label(names)));
                wtr.write_record(header).map_err(csv_err)?;
            }
            for i in 0..decomp.n_rows() {
                let row = std::iter::once(format_f64(decomp.intercept()))
                    .chain(cols.iter().map(|(_, v)| format_f64(v[i])));
                wtr.write_record(row).map_err(csv_err)?;
            }
            wtr.flush()?;
        }
        OutputFormat::Json => {
            let components: Vec<Value> = cols
                .iter()
                .map(|(s, v)| {
                    json!({
                        "subset": s.label(names),
                        "features": s.iter().collect::<Vec<_>>(),
                        "values": v,
                    })
                })
                .collect();
            let imp = importance_json(decomp, names, opts);
            let doc = json!({
                "intercept": decomp.intercept(),
                "feature_names": names,
                "n_rows": decomp.n_rows(),
                "components": components,
                "importance": imp,
            });
            serde_json::to_writer_pretty(&mut w, &doc)?;
            writeln!(w)?;
        }
    }
    Ok(())
}

fn importance_json(decomp: &Decomposition, names: &[String], opts: &OutputOptions) -> Vec<Value> {
    importance(decomp)
        .into_iter()
        .filter(|(s, _)| opts.max_order.is_none_or(|k| s.len() <= k))
        .take(opts.top_k.unwrap_or(usize::MAX))
        .map(|(s, v)| json!({ "subset": s.label(names), "importance": v }))
        .collect()
}

/// `subset,importance` rows, largest first, at most `opts.top_k` of them.
pub fn write_importance<W: Write>(
    decomp: &Decomposition,
    names: &[String],
    opts: &OutputOptions,
    mut w: W,
) -> Result<()> {
    let rows: Vec<(FeatureSubset, f64)> = importance(decomp)
        .into_iter()
        .filter(|(s, _)| opts.max_order.is_none_or(|k| s.len() <= k))
        .take(opts.top_k.unwrap_or(usize::MAX))
        .collect();
    match opts.format {
        OutputFormat::Csv => {
            let mut wtr = csv_writer(w);
            if !opts.no_header {
                wtr.write_record(["subset", "importance"])
                    .map_err(csv_err)?;
            }
            for (s, v) in rows {
                wtr.write_record([s.label(names), format_f64(v)])
                    .map_err(csv_err)?;
            }
            wtr.flush()?;
        }
        OutputFormat::Json => {
            let doc: Vec<Value> = rows
                .into_iter()
                .map(|(s, v)| json!({ "subset": s.label(names), "importance": v }))
                .collect();
            serde_json::to_writer_pretty(&mut w, &doc)?;
            writeln!(w)?;
        }
    }
    Ok(())
}

/// SHAP values with `__baseline` first and, when given, each row's
/// `__prediction` last.
pub fn write_shap<W: Write>(
    shap: &ShapMatrix,
    names: &[String],
    predictions: Option<&[f64]>,
    opts: &OutputOptions,
    mut w: W,
) -> Result<()> {
    if names.len() != shap.num_features() {
        return Err(Error::DimensionMismatch {
            expected: shap.num_features(),
            found: names.len(),
        });
    }
    if let Some(p) = predictions {
        if p.len() != shap.n_rows() {
            return Err(Error::DimensionMismatch {
                expected: shap.n_rows(),
                found: p.len(),
            });
        }
    }
    match opts.format {
        OutputFormat::Csv => {
            let mut wtr = csv_writer(w);
            if !opts.no_header {
                let mut header = vec!["__baseline".to_string()];
                header.extend(names.iter().cloned());
                if predictions.is_some() {
                    header.push("__prediction".into());
                }
                wtr.write_record(header).map_err(csv_err)?;
            }
            for i in 0..shap.n_rows() {
                let mut row = vec![format_f64(shap.baseline())];
                row.extend(shap.row(i).iter().map(|v| format_f64(*v)));
                if let Some(p) = predictions {
                    row.push(format_f64(p[i]));
                }
                wtr.write_record(row).map_err(csv_err)?;
            }
            wtr.flush()?;
        }
        OutputFormat::Json => {
            let rows: Vec<&[f64]> = (0..shap.n_rows()).map(|i| shap.row(i)).collect();
            let mut doc = json!({
                "baseline": shap.baseline(),
                "feature_names": names,
                "values": rows,
            });
            if let Some(p) = predictions {
                doc["predictions"] = json!(p);
            }
            serde_json::to_writer_pretty(&mut w, &doc)?;
            writeln!(w)?;
        }
    }
    Ok(())
}
