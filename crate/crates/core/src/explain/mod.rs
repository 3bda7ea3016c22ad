//! From PD functions to explanations: functional decomposition components,
//! SHAP values, PD plots and component importances.
//!
//! Components follow from PD values by Möbius inversion,
//! `m_S(x_S) = sum_{U ⊆ S} (-1)^{|S \ U|} v_U(x_U)`. Since PD functions of
//! an ensemble are sums of per-tree PD functions, the inversion runs per
//! tree over that tree's own split features and the results are added up
//! by subset.

mod output;

pub use output::{write_decomposition, write_importance, write_shap, OutputFormat, OutputOptions};

use std::collections::BTreeMap;

use crate::data::Dataset;
use crate::engine::{expand_mask, FeatureSubset};
use crate::error::{Error, Result};

/// Anything that evaluates a PD function `v_S(x_S)`, intercept included.
pub trait PdFunction {
    fn num_features(&self) -> usize;
    fn pd(&self, x: &[f64], s: &FeatureSubset) -> Result<f64>;
}

/// PD values of a single tree for every subset of its split features, over
/// a batch of evaluation points.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeLattice {
    features: FeatureSubset,
    n_rows: usize,
    values: BTreeMap<FeatureSubset, Vec<f64>>,
}

impl TreeLattice {
    pub fn new(
        features: FeatureSubset,
        n_rows: usize,
        values: BTreeMap<FeatureSubset, Vec<f64>>,
    ) -> Self {
        Self {
            features,
            n_rows,
            values,
        }
    }

    /// A lattice at a single point.
    pub fn from_point_values(
        features: FeatureSubset,
        values: BTreeMap<FeatureSubset, f64>,
    ) -> Self {
        let values = values.into_iter().map(|(s, v)| (s, vec![v])).collect();
        Self::new(features, 1, values)
    }

    pub fn features(&self) -> &FeatureSubset {
        &self.features
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn get(&self, s: &FeatureSubset) -> Option<&[f64]> {
        self.values.get(s).map(Vec::as_slice)
    }

    pub fn values(&self) -> &BTreeMap<FeatureSubset, Vec<f64>> {
        &self.values
    }
}

/// In-place Möbius inversion over a lattice indexed by bitmask:
/// `values[S]` becomes `sum_{U ⊆ S} (-1)^{|S \ U|} values[U]`.
/// `values.len()` must be a power of two.
pub fn mobius_inverse(values: &mut [f64]) {
    let n = values.len();
    assert!(n.is_power_of_two(), "lattice size must be a power of two");
    let mut bit = 1;
    while bit < n {
        for mask in 0..n {
            if mask & bit != 0 {
                values[mask] -= values[mask ^ bit];
            }
        }
        bit <<= 1;
    }
}

/// Inverse of [`mobius_inverse`]: `values[S]` becomes `sum_{U ⊆ S} values[U]`.
pub fn zeta_transform(values: &mut [f64]) {
    let n = values.len();
    assert!(n.is_power_of_two(), "lattice size must be a power of two");
    let mut bit = 1;
    while bit < n {
        for mask in 0..n {
            if mask & bit != 0 {
                values[mask] += values[mask ^ bit];
            }
        }
        bit <<= 1;
    }
}

/// Functional decomposition evaluated at a batch of points.
///
/// `components` never contains the empty subset; the constant term lives in
/// `intercept`.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    intercept: f64,
    components: BTreeMap<FeatureSubset, Vec<f64>>,
    eval_points: Dataset,
}

impl Decomposition {
    pub fn new(
        intercept: f64,
        components: BTreeMap<FeatureSubset, Vec<f64>>,
        eval_points: Dataset,
    ) -> Result<Self> {
        for (s, v) in &components {
            if s.is_empty() {
                return Err(Error::InvalidArgument(
                    "the empty subset belongs in the intercept".into(),
                ));
            }
            if v.len() != eval_points.n() {
                return Err(Error::DimensionMismatch {
                    expected: eval_points.n(),
                    found: v.len(),
                });
            }
            if let Some(index) = s.max_index().filter(|&i| i >= eval_points.d()) {
                return Err(Error::FeatureOutOfRange {
                    index,
                    num_features: eval_points.d(),
                });
            }
        }
        Ok(Self {
            intercept,
            components,
            eval_points,
        })
    }

    /// `m_0`, the PD function at the empty set.
    pub fn intercept(&self) -> f64 {
        self.intercept
    }

    pub fn components(&self) -> &BTreeMap<FeatureSubset, Vec<f64>> {
        &self.components
    }

    pub fn component(&self, s: &FeatureSubset) -> Option<&[f64]> {
        self.components.get(s).map(Vec::as_slice)
    }

    pub fn eval_points(&self) -> &Dataset {
        &self.eval_points
    }

    pub fn n_rows(&self) -> usize {
        self.eval_points.n()
    }

    pub fn num_features(&self) -> usize {
        self.eval_points.d()
    }

    /// `m_0 + sum_S m_S(x_S)` at row `i`, which equals the model prediction.
    pub fn reconstruct_prediction(&self, i: usize) -> f64 {
        self.components
            .values()
            .fold(self.intercept, |acc, v| acc + v[i])
    }

    /// `sum_{U ⊆ S} m_U(x_U)` at every row, which equals `v_S(x_S)`.
    pub fn reconstruct_pd(&self, s: &FeatureSubset) -> Vec<f64> {
        let mut out = vec![self.intercept; self.n_rows()];
        for (u, v) in &self.components {
            if u.is_subset(s) {
                out.iter_mut().zip(v).for_each(|(o, v)| *o += v);
            }
        }
        out
    }

    /// Drops components that are zero at every row.
    pub fn pruned(mut self) -> Self {
        self.components.retain(|_, v| v.iter().any(|&x| x != 0.0));
        self
    }
}

/// Möbius inversion of per-tree lattices, summed by subset.
///
/// `intercept` (the ensemble's base score) is added to `m_0`. Every lattice
/// must hold all subsets of its tree's split features, for the same number
/// of rows as `eval_points`.
pub fn decompose(
    lattices: &[TreeLattice],
    intercept: f64,
    eval_points: &Dataset,
) -> Result<Decomposition> {
    let n = eval_points.n();
    if n == 0 {
        return Err(Error::InvalidArgument("no evaluation rows".into()));
    }
    let mut m0 = intercept;
    let mut components: BTreeMap<FeatureSubset, Vec<f64>> = BTreeMap::new();
    for (t, lattice) in lattices.iter().enumerate() {
        if lattice.n_rows != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: lattice.n_rows,
            });
        }
        let features: Vec<usize> = lattice.features.iter().collect();
        if features.len() >= 32 {
            return Err(Error::EnumerationLimit {
                num_features: features.len(),
                limit: 31,
            });
        }
        let size = 1usize << features.len();
        let mut table = vec![0.0; size * n];
        for mask in 0..size {
            let s = expand_mask(mask as u64, &features);
            let v = lattice.values.get(&s).ok_or_else(|| {
                Error::IncompleteLattice(format!("tree {t} has no value for subset {s}"))
            })?;
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
            table[mask * n..(mask + 1) * n].copy_from_slice(v);
        }
        // row-wise inversion over the mask-major table
        let mut bit = 1;
        while bit < size {
            for mask in (0..size).filter(|m| m & bit != 0) {
                let (lo, hi) = table.split_at_mut(mask * n);
                let src = &lo[(mask ^ bit) * n..((mask ^ bit) + 1) * n];
                hi[..n].iter_mut().zip(src).for_each(|(d, s)| *d -= s);
            }
            bit <<= 1;
        }
        m0 += table[0];
        for mask in 1..size {
            let s = expand_mask(mask as u64, &features);
            let acc = components.entry(s).or_insert_with(|| vec![0.0; n]);
            acc.iter_mut()
                .zip(&table[mask * n..(mask + 1) * n])
                .for_each(|(a, v)| *a += v);
        }
    }
    Decomposition::new(m0, components, eval_points.clone())
}

/// SHAP values for a batch of points, with the baseline `v_∅`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapMatrix {
    values: Vec<f64>,
    n_rows: usize,
    num_features: usize,
    baseline: f64,
}

impl ShapMatrix {
    pub fn new(
        values: Vec<f64>,
        n_rows: usize,
        num_features: usize,
        baseline: f64,
    ) -> Result<Self> {
        if values.len() != n_rows * num_features {
            return Err(Error::DimensionMismatch {
                expected: n_rows * num_features,
                found: values.len(),
            });
        }
        Ok(Self {
            values,
            n_rows,
            num_features,
            baseline,
        })
    }

    pub fn baseline(&self) -> f64 {
        self.baseline
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn num_features(&self) -> usize {
        self.num_features
    }

    pub fn get(&self, i: usize, k: usize) -> f64 {
        self.values[i * self.num_features + k]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.num_features..(i + 1) * self.num_features]
    }

    pub fn column(&self, k: usize) -> Vec<f64> {
        (0..self.n_rows).map(|i| self.get(i, k)).collect()
    }

    /// `baseline + sum_k phi_k` at row `i`.
    pub fn total(&self, i: usize) -> f64 {
        self.row(i).iter().fold(self.baseline, |acc, v| acc + v)
    }
}

/// `phi_k(x) = sum_{S ∋ k} m_S(x_S) / |S|`, baseline `m_0`. Features that
/// appear in no component get `phi_k = 0`.
pub fn shap_from_decomposition(decomp: &Decomposition) -> ShapMatrix {
    let (n, d) = (decomp.n_rows(), decomp.num_features());
    let mut values = vec![0.0; n * d];
    for (s, v) in &decomp.components {
        let size = s.len() as f64;
        for k in s.iter() {
            for (i, m) in v.iter().enumerate() {
                values[i * d + k] += m / size;
            }
        }
    }
    ShapMatrix {
        values,
        n_rows: n,
        num_features: d,
        baseline: decomp.intercept,
    }
}

/// Largest feature count [`shap_direct`] will enumerate over.
pub const SHAP_DIRECT_LIMIT: usize = 16;

fn log_factorials(d: usize) -> Vec<f64> {
    let mut out = vec![0.0; d + 1];
    for i in 1..=d {
        out[i] = out[i - 1] + (i as f64).ln();
    }
    out
}

/// Shapley value of feature `k` by enumerating every `S ⊆ [d] \ {k}` with
/// weight `|S|! (d - |S| - 1)! / d!`.
pub fn shap_direct<P: PdFunction + ?Sized>(pd: &P, x: &[f64], k: usize) -> Result<f64> {
    let d = pd.num_features();
    if d > SHAP_DIRECT_LIMIT {
        return Err(Error::EnumerationLimit {
            num_features: d,
            limit: SHAP_DIRECT_LIMIT,
        });
    }
    if k >= d {
        return Err(Error::FeatureOutOfRange {
            index: k,
            num_features: d,
        });
    }
    let lf = log_factorials(d);
    let others = FeatureSubset::full(d).without(k);
    let mut phi = 0.0;
    for s in others.subsets() {
        let weight = (lf[s.len()] + lf[d - s.len() - 1] - lf[d]).exp();
        phi += weight * (pd.pd(x, &s.with(k))? - pd.pd(x, &s)?);
    }
    Ok(phi)
}

/// All `d` Shapley values at `x`, evaluating each `v_S` once.
pub fn shap_direct_all<P: PdFunction + ?Sized>(pd: &P, x: &[f64]) -> Result<Vec<f64>> {
    let d = pd.num_features();
    if d > SHAP_DIRECT_LIMIT {
        return Err(Error::EnumerationLimit {
            num_features: d,
            limit: SHAP_DIRECT_LIMIT,
        });
    }
    let all: Vec<usize> = (0..d).collect();
    let v: Vec<f64> = (0..1u64 << d)
        .map(|mask| pd.pd(x, &expand_mask(mask, &all)))
        .collect::<Result<_>>()?;
    let lf = log_factorials(d);
    Ok((0..d)
        .map(|k| {
            let bit = 1usize << k;
            (0..v.len())
                .filter(|m| m & bit == 0)
                .map(|m| {
                    let size = m.count_ones() as usize;
                    (lf[size] + lf[d - size - 1] - lf[d]).exp() * (v[m | bit] - v[m])
                })
                .sum()
        })
        .collect())
}

/// `(x_k, m_0 + m_k(x_k))` for every evaluation row, sorted by `x_k`. A
/// feature without a main-effect component gives a flat line at `m_0`.
pub fn pd_plot(decomp: &Decomposition, k: usize) -> Result<Vec<(f64, f64)>> {
    if k >= decomp.num_features() {
        return Err(Error::FeatureOutOfRange {
            index: k,
            num_features: decomp.num_features(),
        });
    }
    let main = decomp.component(&FeatureSubset::singleton(k));
    let mut points: Vec<(f64, f64)> = (0..decomp.n_rows())
        .map(|i| {
            let m = main.map_or(0.0, |v| v[i]);
            (decomp.eval_points.get(i, k), decomp.intercept + m)
        })
        .collect();
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(points)
}

/// Mean absolute value of each component over the evaluation rows, largest
/// first. Ties keep subset order.
pub fn importance(decomp: &Decomposition) -> Vec<(FeatureSubset, f64)> {
    let n = decomp.n_rows() as f64;
    let mut out: Vec<(FeatureSubset, f64)> = decomp
        .components
        .iter()
        .map(|(s, v)| (s.clone(), v.iter().map(|m| m.abs()).sum::<f64>() / n))
        .collect();
    out.sort_by(|a, b| b.1.total_cmp(&a.1));
    out
}

/// Closed-form decomposition of `m(x) = x1 + 2 x1 x2` under a mean-zero
/// covariate distribution with `exy = E[X1 X2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteractionExample {
    pub m0: f64,
    pub m1: f64,
    pub m2: f64,
    pub m12: f64,
    pub phi1: f64,
}

pub fn analytic_interaction(x: [f64; 2], exy: f64) -> InteractionExample {
    let [x1, x2] = x;
    InteractionExample {
        m0: 2.0 * exy,
        m1: x1 - 2.0 * exy,
        m2: -2.0 * exy,
        m12: 2.0 * x1 * x2 + 2.0 * exy,
        phi1: x1 + x1 * x2 - exy,
    }
}
