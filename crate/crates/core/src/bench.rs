//! Wall-clock comparison of the fast and brute-force estimators.
//!
//! For each size `n`, `n` background rows and `n` evaluation rows are drawn
//! with replacement from a pool, and every method evaluates the requested
//! subsets at every evaluation row. The fast method's time includes
//! augmentation.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::baseline::{vanilla_pd_batch, PathDependentPd};
use crate::data::Dataset;
use crate::engine::{augment_ensemble, AugmentOptions, BatchEvaluator, FeatureSubset};
use crate::error::{Error, Result};
use crate::explain::PdFunction;
use crate::model::TreeEnsemble;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchMethod {
    FastPd,
    Vanilla,
    Path,
}

impl BenchMethod {
    pub fn name(&self) -> &'static str {
        match self {
            Self::FastPd => "fastpd",
            Self::Vanilla => "vanilla",
            Self::Path => "path",
        }
    }
}

impl std::str::FromStr for BenchMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fastpd" => Ok(Self::FastPd),
            "vanilla" => Ok(Self::Vanilla),
            "path" => Ok(Self::Path),
            other => Err(Error::InvalidArgument(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    /// Sample sizes, ascending; `n_b = n_e = n`.
    pub sizes: Vec<usize>,
    pub methods: Vec<BenchMethod>,
    /// Subsets evaluated at every point.
    pub subsets: Vec<FeatureSubset>,
    /// Timed runs per cell; the median is reported.
    pub repeats: usize,
    pub seed: u64,
    pub augment: AugmentOptions,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub method: BenchMethod,
    pub n: usize,
    /// Median seconds, `None` when the run failed.
    pub seconds: Option<f64>,
}

/// Draws `n` rows with replacement.
pub fn resample(pool: &Dataset, n: usize, rng: &mut impl Rng) -> Dataset {
    let idx: Vec<usize> = (0..n).map(|_| rng.random_range(0..pool.n())).collect();
    pool.select_rows(&idx)
}

pub fn run_bench(
    ensemble: &TreeEnsemble,
    pool: &Dataset,
    config: &BenchConfig,
) -> Result<Vec<BenchRecord>> {
    if pool.n() == 0 {
        return Err(Error::EmptyTable);
    }
    if pool.d() != ensemble.num_features() {
        return Err(Error::DimensionMismatch {
            expected: ensemble.num_features(),
            found: pool.d(),
        });
    }
    if config.sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "sizes must be strictly ascending".into(),
        ));
    }
    if config.sizes.contains(&0) {
        return Err(Error::InvalidArgument("sizes must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut out = Vec::new();
    for &n in &config.sizes {
        let background = resample(pool, n, &mut rng);
        let eval = resample(pool, n, &mut rng);
        for &method in &config.methods {
            let mut times = Vec::with_capacity(config.repeats.max(1));
            let mut failed = false;
            for _ in 0..config.repeats.max(1) {
                match time_once(method, ensemble, &background, &eval, config) {
                    Ok(t) => times.push(t),
                    Err(_) => {
                        failed = true;
                        break;
                    }
                }
            }
            out.push(BenchRecord {
                method,
                n,
                seconds: (!failed).then(|| median(&mut times)),
            });
        }
    }
    Ok(out)
}

/// Seconds for one full run of `method`. The results are summed into a
/// checksum so the work cannot be optimised away.
pub fn time_once(
    method: BenchMethod,
    ensemble: &TreeEnsemble,
    background: &Dataset,
    eval: &Dataset,
    config: &BenchConfig,
) -> Result<f64> {
    let start = Instant::now();
    let mut checksum = 0.0;
    match method {
        BenchMethod::FastPd => {
            let aug = augment_ensemble(ensemble, background, &config.augment)?;
            let ev = BatchEvaluator::new(&aug, eval)?;
            let table = ev.pd_table(&config.subsets)?;
            checksum += table.columns().iter().flatten().sum::<f64>();
        }
        BenchMethod::Vanilla => {
            for s in &config.subsets {
                checksum += vanilla_pd_batch(ensemble, background, eval, s)?
                    .iter()
                    .sum::<f64>();
            }
        }
        BenchMethod::Path => {
            let pd = PathDependentPd::new(ensemble, background)?;
            for s in &config.subsets {
                for x in eval.rows() {
                    checksum += pd.pd(x, s)?;
                }
            }
        }
    }
    std::hint::black_box(checksum);
    Ok(start.elapsed().as_secs_f64())
}

/// Median of the values; sorts in place. `NaN` for an empty slice.
pub fn median(values: &mut [f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    values.sort_by(f64::total_cmp);
    let m = values.len() / 2;
    if values.len() % 2 == 1 {
        values[m]
    } else {
        0.5 * (values[m - 1] + values[m])
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{random_dataset, random_ensemble};

    #[test]
    fn median_and_slope() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
        assert!(median(&mut []).is_nan());
        let x = [1.0, 2.0, 4.0, 8.0];
        let y: Vec<f64> = x.iter().map(|v: &f64| 3.0 * v * v).collect();
        assert!((loglog_slope(&x, &y) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn one_row_per_method_and_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let ens = random_ensemble(&mut rng, 3, 3, 3);
        let pool = random_dataset(&mut rng, 100, 3);
        let config = BenchConfig {
            sizes: vec![50],
            methods: vec![BenchMethod::FastPd, BenchMethod::Vanilla, BenchMethod::Path],
            subsets: vec![FeatureSubset::singleton(0)],
            repeats: 1,
            seed: 0,
            augment: AugmentOptions::default(),
        };
        let records = run_bench(&ens, &pool, &config).unwrap();
        assert_eq!(records.len(), 3);
        assert!(records.iter().all(|r| r.n == 50 && r.seconds.is_some()));
    }

    #[test]
    fn failures_are_recorded() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let ens = random_ensemble(&mut rng, 3, 4, 2);
        let pool = random_dataset(&mut rng, 20, 3);
        let config = BenchConfig {
            sizes: vec![10],
            methods: vec![BenchMethod::FastPd, BenchMethod::Vanilla],
            subsets: vec![FeatureSubset::empty()],
            repeats: 2,
            seed: 0,
            augment: AugmentOptions {
                budget_lists: 0,
                compact: true,
            },
        };
        let records = run_bench(&ens, &pool, &config).unwrap();
        assert_eq!(records[0].seconds, None);
        assert!(records[1].seconds.is_some());
        let bad = BenchConfig {
            sizes: vec![10, 5],
            ..config
        };
        assert!(run_bench(&ens, &pool, &bad).is_err());
    }
}
