use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use fastpd::baseline::{vanilla_lattices, vanilla_pd_batch, PathDependentPd};
use fastpd::bench::{run_bench, BenchConfig, BenchMethod};
use fastpd::data::format_f64;
use fastpd::engine::{read_snapshot, write_snapshot};
use fastpd::explain::{
    write_decomposition, write_importance, write_shap, OutputFormat, OutputOptions,
};
use fastpd::{
    augment_ensemble, decompose, generate_dgp, shap_from_decomposition, AugmentOptions,
    AugmentedEnsemble, BatchEvaluator, Dataset, Decomposition, Dgp, FeatureSubset, PdFunction,
    TreeEnsemble, TreeLattice,
};
use rayon::prelude::*;

use crate::args::{
    AugmentArgs, BenchArgs, DecomposeArgs, DgpArg, EstimateArgs, GenerateArgs, MethodArg,
    OutputArgs, PdplotArgs, ShapArgs,
};
use crate::inputs::{load_model, load_table, resolve_feature};

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    })
}

fn output_options(out: &OutputArgs) -> OutputOptions {
    OutputOptions {
        format: out
            .out
            .as_deref()
            .map(OutputFormat::from_path)
            .unwrap_or_default(),
        no_header: out.no_header,
        ..Default::default()
    }
}

/// Everything an estimation command needs, loaded and validated.
struct Inputs {
    model: TreeEnsemble,
    background: Option<Dataset>,
    eval: Dataset,
    names: Vec<String>,
}

fn load_inputs(args: &EstimateArgs) -> Result<Inputs> {
    let eval = load_table(&args.eval, "evaluation")?;
    let background = args
        .background
        .as_deref()
        .map(|p| load_table(p, "background"))
        .transpose()?;
    if let Some(bg) = &background {
        if bg.d() != eval.d() {
            bail!(
                "background has {} columns, evaluation rows have {}",
                bg.d(),
                eval.d()
            );
        }
    }
    if args.snapshot.is_some() && args.method != MethodArg::Fastpd {
        bail!("--snapshot only applies to --method fastpd");
    }
    let model = load_model(&args.model, Some(&eval))?;
    let names = background
        .as_ref()
        .and_then(|b| b.column_names())
        .or(eval.column_names())
        .map(<[String]>::to_vec)
        .unwrap_or_else(|| eval.feature_names());
    Ok(Inputs {
        model,
        background,
        eval,
        names,
    })
}

fn augmented<'m>(
    args: &EstimateArgs,
    model: &'m TreeEnsemble,
    background: Option<&Dataset>,
) -> Result<AugmentedEnsemble<'m>> {
    if let Some(path) = &args.snapshot {
        let file =
            File::open(path).with_context(|| format!("opening snapshot {}", path.display()))?;
        return read_snapshot(model, std::io::BufReader::new(file))
            .with_context(|| format!("loading snapshot {}", path.display()));
    }
    let background = background.context("--background is required")?;
    let options = AugmentOptions {
        budget_lists: args.budget_lists,
        compact: true,
    };
    Ok(augment_ensemble(model, background, &options)?)
}

/// Per-tree PD lattices at the evaluation rows for the chosen method.
fn lattices(args: &EstimateArgs, inputs: &Inputs) -> Result<Vec<TreeLattice>> {
    let bg = inputs.background.as_ref();
    Ok(match args.method {
        MethodArg::Fastpd => {
            let aug = augmented(args, &inputs.model, bg)?;
            BatchEvaluator::new(&aug, &inputs.eval)?.lattices()
        }
        MethodArg::Vanilla => vanilla_lattices(
            &inputs.model,
            bg.context("--background is required")?,
            &inputs.eval,
        )?,
        MethodArg::Path => {
            PathDependentPd::new(&inputs.model, bg.context("--background is required")?)?
                .lattices(&inputs.eval)?
        }
    })
}

fn decomposition(args: &EstimateArgs, inputs: &Inputs) -> Result<Decomposition> {
    let lattices = lattices(args, inputs)?;
    Ok(decompose(
        &lattices,
        inputs.model.intercept(),
        &inputs.eval,
    )?)
}

pub fn decompose_cmd(args: &DecomposeArgs) -> Result<()> {
    let inputs = load_inputs(&args.estimate)?;
    let decomp = decomposition(&args.estimate, &inputs)?;
    let mut opts = output_options(&args.output);
    opts.max_order = args.max_order;
    opts.prune_zero = args.prune_zero;
    opts.top_k = Some(args.top_k);
    let mut w = open_out(args.output.out.as_deref())?;
    write_decomposition(&decomp, &inputs.names, &opts, &mut w)?;
    w.flush()?;

    if let Some(path) = &args.importance {
        let imp_opts = OutputOptions {
            format: OutputFormat::from_path(path),
            ..opts.clone()
        };
        let mut w = open_out(Some(path))?;
        write_importance(&decomp, &inputs.names, &imp_opts, &mut w)?;
        w.flush()?;
    }

    eprintln!(
        "{} components over {} rows, intercept {}",
        decomp.components().len(),
        decomp.n_rows(),
        format_f64(decomp.intercept())
    );
    let mut summary = Vec::new();
    write_importance(
        &decomp,
        &inputs.names,
        &OutputOptions {
            format: OutputFormat::Csv,
            no_header: false,
            ..opts
        },
        &mut summary,
    )?;
    eprint!("{}", String::from_utf8_lossy(&summary));
    Ok(())
}

pub fn shap_cmd(args: &ShapArgs) -> Result<()> {
    let inputs = load_inputs(&args.estimate)?;
    let decomp = decomposition(&args.estimate, &inputs)?;
    let shap = shap_from_decomposition(&decomp);
    let predictions: Vec<f64> = inputs
        .eval
        .rows()
        .map(|x| inputs.model.predict(x))
        .collect::<fastpd::Result<_>>()?;
    let mut w = open_out(args.output.out.as_deref())?;
    write_shap(
        &shap,
        &inputs.names,
        Some(&predictions),
        &output_options(&args.output),
        &mut w,
    )?;
    w.flush()?;
    Ok(())
}

fn parse_grid(spec: &str, eval: &Dataset, k: usize) -> Result<Vec<f64>> {
    if spec == "eval" {
        let mut xs: Vec<f64> = eval.rows().map(|r| r[k]).collect();
        xs.sort_by(f64::total_cmp);
        return Ok(xs);
    }
    let parts: Vec<&str> = spec.split(':').collect();
    let [kind, lo, hi, count] = parts[..] else {
        bail!("grid must be `eval` or `uniform:MIN:MAX:COUNT`, got `{spec}`");
    };
    if kind != "uniform" {
        bail!("unknown grid kind `{kind}`");
    }
    let lo: f64 = lo.parse().with_context(|| format!("grid minimum `{lo}`"))?;
    let hi: f64 = hi.parse().with_context(|| format!("grid maximum `{hi}`"))?;
    let count: usize = count
        .parse()
        .with_context(|| format!("grid count `{count}`"))?;
    if count == 0 || !lo.is_finite() || !hi.is_finite() || hi < lo {
        bail!("grid needs finite MIN <= MAX and COUNT >= 1");
    }
    if count == 1 {
        return Ok(vec![lo]);
    }
    let step = (hi - lo) / (count - 1) as f64;
    Ok((0..count)
        .map(|i| {
            if i + 1 == count {
                hi
            } else {
                lo + step * i as f64
            }
        })
        .collect())
}

pub fn pdplot_cmd(args: &PdplotArgs) -> Result<()> {
    let inputs = load_inputs(&args.estimate)?;
    let k = resolve_feature(&args.feature, &inputs.names)?;
    let grid = parse_grid(&args.grid, &inputs.eval, k)?;
    // only coordinate k is read, the rest are placeholders
    let d = inputs.model.num_features();
    let mut values = vec![0.0; grid.len() * d];
    for (i, &g) in grid.iter().enumerate() {
        values[i * d + k] = g;
    }
    let points = Dataset::new(values, grid.len(), d)?;
    let s = FeatureSubset::singleton(k);
    let bg = inputs.background.as_ref();
    let pd = match args.estimate.method {
        MethodArg::Fastpd => {
            let aug = augmented(&args.estimate, &inputs.model, bg)?;
            BatchEvaluator::new(&aug, &points)?.pd(&s)?
        }
        MethodArg::Vanilla => vanilla_pd_batch(
            &inputs.model,
            bg.context("--background is required")?,
            &points,
            &s,
        )?,
        MethodArg::Path => {
            let path =
                PathDependentPd::new(&inputs.model, bg.context("--background is required")?)?;
            points
                .rows()
                .collect::<Vec<_>>()
                .par_iter()
                .map(|x| path.pd(x, &s))
                .collect::<fastpd::Result<_>>()?
        }
    };
    let mut w = open_out(args.output.out.as_deref())?;
    let name = &inputs.names[k];
    match output_options(&args.output).format {
        OutputFormat::Csv => {
            if !args.output.no_header {
                writeln!(w, "{name},pd")?;
            }
            for (x, v) in grid.iter().zip(&pd) {
                writeln!(w, "{},{}", format_f64(*x), format_f64(*v))?;
            }
        }
        OutputFormat::Json => {
            let doc = serde_json::json!({ "feature": name, "grid": grid, "pd": pd });
            serde_json::to_writer_pretty(&mut w, &doc)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn dgp(arg: DgpArg) -> Dgp {
    match arg {
        DgpArg::Dgp1 => Dgp::Dgp1,
        DgpArg::Dgp2 => Dgp::dgp2(),
    }
}

fn parse_subset(spec: &str, names: &[String]) -> Result<FeatureSubset> {
    spec.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| resolve_feature(t, names))
        .collect()
}

pub fn bench_cmd(args: &BenchArgs) -> Result<()> {
    let pool = match (&args.pool, args.dgp) {
        (Some(path), _) => load_table(path, "pool")?,
        (None, Some(kind)) => generate_dgp(dgp(kind), args.pool_size, args.seed)?.0,
        (None, None) => bail!("one of --pool or --dgp is required"),
    };
    let model = load_model(&args.model, Some(&pool))?;
    let names = pool.feature_names();
    let subsets = if args.subsets.is_empty() {
        vec![FeatureSubset::singleton(0)]
    } else {
        args.subsets
            .iter()
            .map(|s| parse_subset(s, &names))
            .collect::<Result<_>>()?
    };
    let config = BenchConfig {
        sizes: args.sizes.clone(),
        methods: args
            .methods
            .iter()
            .map(|m| match m {
                MethodArg::Fastpd => BenchMethod::FastPd,
                MethodArg::Vanilla => BenchMethod::Vanilla,
                MethodArg::Path => BenchMethod::Path,
            })
            .collect(),
        subsets,
        repeats: args.repeats,
        seed: args.seed,
        augment: AugmentOptions {
            budget_lists: args.budget_lists,
            compact: true,
        },
    };
    let records = run_bench(&model, &pool, &config)?;
    let mut w = open_out(args.output.out.as_deref())?;
    if !args.output.no_header {
        writeln!(w, "method,n,seconds")?;
    }
    for r in records {
        let secs = r.seconds.map_or_else(|| "NA".to_string(), format_f64);
        writeln!(w, "{},{},{}", r.method.name(), r.n, secs)?;
    }
    w.flush()?;
    Ok(())
}

pub fn augment_cmd(args: &AugmentArgs) -> Result<()> {
    let background = load_table(&args.background, "background")?;
    let model = load_model(&args.model, Some(&background))?;
    let options = AugmentOptions {
        budget_lists: args.budget_lists,
        compact: true,
    };
    let aug = augment_ensemble(&model, &background, &options)?;
    let file =
        File::create(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    write_snapshot(&aug, BufWriter::new(file))?;
    Ok(())
}

pub fn generate_cmd(args: &GenerateArgs) -> Result<()> {
    let (data, y) = generate_dgp(dgp(args.dgp), args.n, args.seed)?;
    let mut w = open_out(args.out.as_deref())?;
    data.save_csv(&mut w)?;
    w.flush()?;
    if let Some(path) = &args.response {
        let mut w = open_out(Some(path))?;
        for v in y {
            writeln!(w, "{}", format_f64(v))?;
        }
        w.flush()?;
    }
    Ok(())
}
