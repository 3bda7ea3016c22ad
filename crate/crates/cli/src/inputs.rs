//! Loading models and tables from disk.

use std::path::Path;

use anyhow::{bail, Context, Result};
use fastpd::{parse_model, Dataset, Error, ModelFormat, ParseOptions, TreeEnsemble};

use crate::args::{FormatArg, ModelArgs};

/// Reads a CSV table. The first row is taken as a header when any of its
/// fields is not a number.
pub fn load_table(path: &Path, role: &str) -> Result<Dataset> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {role} file {}", path.display()))?;
    let first = text.lines().find(|l| !l.trim().is_empty());
    let Some(first) = first else {
        bail!("no {role} rows in {}", path.display());
    };
    let has_header = first.split(',').any(|f| f.trim().parse::<f64>().is_err());
    match Dataset::load_csv_str(&text, has_header) {
        Ok(ds) => Ok(ds),
        Err(Error::EmptyTable) => bail!("no {role} rows in {}", path.display()),
        Err(e) => Err(e).with_context(|| format!("parsing {role} file {}", path.display())),
    }
}

fn detect_format(source: &str) -> ModelFormat {
    if source.trim_start().starts_with('[') {
        ModelFormat::XgboostJson
    } else {
        ModelFormat::NativeJson
    }
}

/// Parses the model. `columns` supplies the feature count (and names, for
/// dumps written with named features) when the dump itself lacks them.
pub fn load_model(args: &ModelArgs, columns: Option<&Dataset>) -> Result<TreeEnsemble> {
    let path = &args.model;
    let source = std::fs::read_to_string(path)
        .with_context(|| format!("reading model {}", path.display()))?;
    let format = match args.format {
        FormatArg::Auto => detect_format(&source),
        FormatArg::XgboostJson => ModelFormat::XgboostJson,
        FormatArg::NativeJson => ModelFormat::NativeJson,
    };
    let options = ParseOptions {
        base_score: args.base_score,
        num_features: match format {
            ModelFormat::XgboostJson => columns.map(Dataset::d),
            ModelFormat::NativeJson => None,
        },
        feature_names: columns
            .and_then(|c| c.column_names())
            .map(<[String]>::to_vec),
    };
    let mut model = parse_model(&source, format, &options)
        .with_context(|| format!("parsing model {}", path.display()))?;
    if let Some(score) = args.base_score {
        if format == ModelFormat::NativeJson {
            model = TreeEnsemble::new(model.trees().to_vec(), score, model.num_features())?;
        }
    }
    if let Some(c) = columns {
        if c.d() != model.num_features() {
            bail!(
                "model has {} features but the data has {} columns",
                model.num_features(),
                c.d()
            );
        }
    }
    Ok(model)
}

/// Resolves a feature given by name or by index.
pub fn resolve_feature(spec: &str, names: &[String]) -> Result<usize> {
    if let Some(k) = names.iter().position(|n| n == spec) {
        return Ok(k);
    }
    match spec.parse::<usize>() {
        Ok(k) if k < names.len() => Ok(k),
        _ => bail!("unknown feature `{spec}` (have {})", names.join(", ")),
    }
}
