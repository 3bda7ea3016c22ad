//! Seeded Gaussian data-generating processes.
//!
//! Draws use ChaCha8 seeded through `seed_from_u64` and ziggurat standard
//! normals, so a seed reproduces the same table on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::Dataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dgp {
    /// `X ~ N(0, [[1, .3], [.3, 1]])`, `Y ~ N(x1 + x2 + 2 x1 x2, 1)`.
    Dgp1,
    /// `X ~ N(0, 3 I + 0.6 J)` in `num_features >= 7` dimensions, `J` the
    /// anti-diagonal identity, and
    /// `Y ~ N(3 sin x1 + 2.5 cos(0.3 x2) + 1.12 x3 + sin(x4 x5) + 0.7 x6 x7, 0.1)`.
    /// Covariates beyond the seventh do not enter the target.
    Dgp2 { num_features: usize },
}

impl Dgp {
    pub fn dgp2() -> Self {
        Dgp::Dgp2 { num_features: 7 }
    }

    pub fn num_features(&self) -> usize {
        match *self {
            Dgp::Dgp1 => 2,
            Dgp::Dgp2 { num_features } => num_features,
        }
    }

    /// Covariance matrix of the covariates, row-major.
    pub fn covariance(&self) -> Vec<f64> {
        match *self {
            Dgp::Dgp1 => vec![1.0, 0.3, 0.3, 1.0],
            Dgp::Dgp2 { num_features: p } => {
                let mut cov = vec![0.0; p * p];
                for i in 0..p {
                    cov[i * p + i] += 3.0;
                    cov[i * p + (p - 1 - i)] += 0.6;
                }
                cov
            }
        }
    }

    /// Noise-free regression function.
    pub fn target(&self, x: &[f64]) -> f64 {
        match self {
            Dgp::Dgp1 => x[0] + x[1] + 2.0 * x[0] * x[1],
            Dgp::Dgp2 { .. } => {
                3.0 * x[0].sin()
                    + 2.5 * (0.3 * x[1]).cos()
                    + 1.12 * x[2]
                    + (x[3] * x[4]).sin()
                    + 0.7 * x[5] * x[6]
            }
        }
    }

    fn noise_sd(&self) -> f64 {
        match self {
            Dgp::Dgp1 => 1.0,
            Dgp::Dgp2 { .. } => 0.1f64.sqrt(),
        }
    }
}

/// Draws `n` covariate rows and responses.
pub fn generate_dgp(kind: Dgp, n: usize, seed: u64) -> Result<(Dataset, Vec<f64>)> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "sample size must be at least 1".into(),
        ));
    }
    let p = kind.num_features();
    if let Dgp::Dgp2 { num_features } = kind {
        if num_features < 7 {
            return Err(Error::InvalidArgument(format!(
                "dgp2 needs at least 7 features, got {num_features}"
            )));
        }
    }
    let chol = cholesky(&kind.covariance(), p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Vec::with_capacity(n * p);
    let mut y = Vec::with_capacity(n);
    let mut z = vec![0.0; p];
    for _ in 0..n {
        for zi in z.iter_mut() {
            *zi = rng.sample(StandardNormal);
        }
        let start = values.len();
        for i in 0..p {
            let row = &chol[i * p..i * p + i + 1];
            values.push(row.iter().zip(&z).map(|(l, z)| l * z).sum());
        }
        let eps: f64 = rng.sample(StandardNormal);
        y.push(kind.target(&values[start..]) + kind.noise_sd() * eps);
    }
    let names = (0..p).map(|j| format!("x{}", j + 1)).collect();
    Ok((Dataset::new(values, n, p)?.with_column_names(names)?, y))
}

/// Lower Cholesky factor of a symmetric positive-definite matrix.
fn cholesky(a: &[f64], p: usize) -> Vec<f64> {
    let mut l = vec![0.0; p * p];
    for i in 0..p {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i * p + k] * l[j * p + k]).sum();
            if i == j {
                l[i * p + i] = (a[i * p + i] - s).sqrt();
            } else {
                l[i * p + j] = (a[i * p + j] - s) / l[j * p + j];
            }
        }
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;

    fn moments(ds: &Dataset, i: usize, j: usize) -> (f64, f64, f64) {
        let n = ds.n() as f64;
        let mean = |c: usize| ds.rows().map(|r| r[c]).sum::<f64>() / n;
        let (mi, mj) = (mean(i), mean(j));
        let cov = |a: usize, ma: f64, b: usize, mb: f64| {
            ds.rows().map(|r| (r[a] - ma) * (r[b] - mb)).sum::<f64>() / (n - 1.0)
        };
        (cov(i, mi, i, mi), cov(j, mj, j, mj), cov(i, mi, j, mj))
    }

    #[test]
    fn dgp1_correlation() {
        let (x, y) = generate_dgp(Dgp::Dgp1, 100_000, 11).unwrap();
        assert_eq!((x.n(), x.d(), y.len()), (100_000, 2, 100_000));
        let (v1, v2, c) = moments(&x, 0, 1);
        let rho = c / (v1 * v2).sqrt();
        assert!((rho - 0.3).abs() < 0.02, "rho = {rho}");
    }

    #[test]
    fn dgp1_is_deterministic() {
        let a = generate_dgp(Dgp::Dgp1, 50, 3).unwrap();
        let b = generate_dgp(Dgp::Dgp1, 50, 3).unwrap();
        let c = generate_dgp(Dgp::Dgp1, 50, 4).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.0, c.0);
    }

    #[test]
    fn dgp2_variances_follow_covariance_diagonal() {
        let kind = Dgp::dgp2();
        let (x, _) = generate_dgp(kind, 100_000, 5).unwrap();
        let cov = kind.covariance();
        for j in 0..7 {
            let (v, _, _) = moments(&x, j, j);
            let target = cov[j * 7 + j];
            assert!((v - target).abs() < 0.1, "coordinate {j}: {v} vs {target}");
        }
        // the anti-diagonal pairs are correlated, the rest are not
        let (_, _, c06) = moments(&x, 0, 6);
        let (_, _, c01) = moments(&x, 0, 1);
        assert!((c06 - 0.6).abs() < 0.1 && c01.abs() < 0.1);
    }

    #[test]
    fn dgp2_extra_covariates() {
        let (x, _) = generate_dgp(Dgp::Dgp2 { num_features: 13 }, 10, 1).unwrap();
        assert_eq!(x.d(), 13);
        assert!(generate_dgp(Dgp::Dgp2 { num_features: 6 }, 10, 1).is_err());
    }

    #[test]
    fn zero_rows_is_an_error() {
        assert!(matches!(
            generate_dgp(Dgp::Dgp1, 0, 1),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn cholesky_reconstructs() {
        let kind = Dgp::dgp2();
        let a = kind.covariance();
        let l = cholesky(&a, 7);
        for i in 0..7 {
            for j in 0..7 {
                let v: f64 = (0..7).map(|k| l[i * 7 + k] * l[j * 7 + k]).sum();
                assert!((v - a[i * 7 + j]).abs() < 1e-12);
            }
        }
    }
}
