//! Scenario data: observed value matrices with per-dimension kinds and
//! per-scenario probabilities.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::Rng;

/// Tolerance for the probability-sum invariant.
pub const PROBABILITY_TOLERANCE: f64 = 1e-9;

/// Whether a dimension carries objective costs or observable meta data.
///
/// Feature dimensions may be queried by tree splits but never enter any
/// objective; they correspond to problem variables pinned to zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DimensionKind {
    Cost,
    Feature,
}

/// A named column of the scenario matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dimension {
    pub name: String,
    pub kind: DimensionKind,
}

impl Dimension {
    pub fn cost(name: impl Into<String>) -> Self {
        Dimension { name: name.into(), kind: DimensionKind::Cost }
    }

    pub fn feature(name: impl Into<String>) -> Self {
        Dimension { name: name.into(), kind: DimensionKind::Feature }
    }
}

/// An N x n' matrix of observed scenario values plus scenario probabilities.
///
/// Immutable after construction; validation happens once in [`ScenarioSet::new`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSet {
    dimensions: Vec<Dimension>,
    /// Row-major values, `num_scenarios` rows by `dimensions.len()` columns.
    values: Vec<f64>,
    probabilities: Vec<f64>,
}

impl ScenarioSet {
    /// Validates and constructs a scenario set from row vectors.
    pub fn new(
        dimensions: Vec<Dimension>,
        rows: Vec<Vec<f64>>,
        probabilities: Vec<f64>,
    ) -> Result<Self> {
        let width = dimensions.len();
        if width == 0 {
            return Err(Error::schema("scenario set needs at least one dimension"));
        }
        for (i, dim) in dimensions.iter().enumerate() {
            if dimensions[..i].iter().any(|d| d.name == dim.name) {
                return Err(Error::schema(format!("duplicate dimension name `{}`", dim.name)));
            }
        }
        if !dimensions.iter().any(|d| d.kind == DimensionKind::Cost) {
            return Err(Error::schema("scenario set needs at least one cost dimension"));
        }
        if rows.is_empty() {
            return Err(Error::validation("scenario set needs at least one scenario"));
        }
        if rows.len() != probabilities.len() {
            return Err(Error::schema(format!(
                "{} scenarios but {} probabilities",
                rows.len(),
                probabilities.len()
            )));
        }
        let mut values = Vec::with_capacity(rows.len() * width);
        for (j, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(Error::schema(format!(
                    "scenario {} has {} values, expected {}",
                    j + 1,
                    row.len(),
                    width
                )));
            }
            for (i, v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::validation(format!(
                        "non-finite value in scenario {}, dimension `{}`",
                        j + 1,
                        dimensions[i].name
                    )));
                }
                values.push(*v);
            }
        }
        let mut sum = 0.0;
        for (j, p) in probabilities.iter().enumerate() {
            if !p.is_finite() || *p < 0.0 || *p > 1.0 {
                return Err(Error::validation(format!(
                    "probability of scenario {} is {}, expected a value in [0, 1]",
                    j + 1,
                    p
                )));
            }
            sum += *p;
        }
        if (sum - 1.0).abs() > PROBABILITY_TOLERANCE {
            return Err(Error::validation(format!(
                "probabilities sum to {sum}, expected 1"
            )));
        }
        Ok(ScenarioSet { dimensions, values, probabilities })
    }

    /// Constructs a set with uniform probabilities 1/N.
    pub fn with_uniform_probabilities(
        dimensions: Vec<Dimension>,
        rows: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::validation("scenario set needs at least one scenario"));
        }
        let p = 1.0 / n as f64;
        Self::new(dimensions, rows, alloc::vec![p; n])
    }

    pub fn num_scenarios(&self) -> usize {
        self.probabilities.len()
    }

    /// Total number of dimensions n' (cost and feature).
    pub fn num_dimensions(&self) -> usize {
        self.dimensions.len()
    }

    pub fn dimensions(&self) -> &[Dimension] {
        &self.dimensions
    }

    pub fn dimension_names(&self) -> Vec<String> {
        self.dimensions.iter().map(|d| d.name.clone()).collect()
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn probability(&self, scenario: usize) -> f64 {
        self.probabilities[scenario]
    }

    /// One scenario row (all dimensions, in declaration order).
    pub fn row(&self, scenario: usize) -> &[f64] {
        let w = self.dimensions.len();
        &self.values[scenario * w..(scenario + 1) * w]
    }

    pub fn value(&self, scenario: usize, dimension: usize) -> f64 {
        self.values[scenario * self.dimensions.len() + dimension]
    }

    /// Indices of the cost dimensions, in declaration order.
    pub fn cost_dimensions(&self) -> Vec<usize> {
        self.dimensions
            .iter()
            .enumerate()
            .filter(|(_, d)| d.kind == DimensionKind::Cost)
            .map(|(i, _)| i)
            .collect()
    }

    /// Number of cost dimensions n.
    pub fn num_cost_dimensions(&self) -> usize {
        self.dimensions
            .iter()
            .filter(|d| d.kind == DimensionKind::Cost)
            .count()
    }

    /// The cost entries of one scenario, i.e. the row restricted to cost
    /// dimensions.
    pub fn cost_row(&self, scenario: usize) -> CostVector {
        let row = self.row(scenario);
        CostVector(
            self.cost_dimensions()
                .iter()
                .map(|&i| row[i])
                .collect(),
        )
    }

    /// Smallest and largest observed value over all dimensions.
    pub fn value_range(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &v in &self.values {
            if v < lo {
                lo = v;
            }
            if v > hi {
                hi = v;
            }
        }
        (lo, hi)
    }

    /// Builds a new set from a subset of rows, renormalized to uniform
    /// probabilities.
    pub fn subset_uniform(&self, indices: &[usize]) -> Result<ScenarioSet> {
        let rows: Vec<Vec<f64>> = indices.iter().map(|&j| self.row(j).to_vec()).collect();
        Self::with_uniform_probabilities(self.dimensions.clone(), rows)
    }
}

/// A cost vector over the cost dimensions of a scenario set, indexed like the
/// problem variables.
#[derive(Debug, Clone, PartialEq)]
pub struct CostVector(pub Vec<f64>);

impl CostVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// Probability-weighted sum of the cost rows of the given scenarios:
/// entry i is sum over j in `indices` of p_j * c_ji, cost dimensions only.
///
/// With uniform probabilities this is the plain per-leaf cost sum scaled by
/// 1/N, which preserves every argmin.
pub fn aggregate_costs(set: &ScenarioSet, indices: &[usize]) -> Result<CostVector> {
    if indices.is_empty() {
        return Err(Error::contract("aggregate_costs over an empty scenario subset"));
    }
    let cost_dims = set.cost_dimensions();
    let mut out = alloc::vec![0.0; cost_dims.len()];
    for &j in indices {
        if j >= set.num_scenarios() {
            return Err(Error::contract(format!("scenario index {j} out of range")));
        }
        let p = set.probability(j);
        let row = set.row(j);
        for (slot, &dim) in out.iter_mut().zip(cost_dims.iter()) {
            *slot += p * row[dim];
        }
    }
    Ok(CostVector(out))
}

/// Splits the rows into a training part of `train_count` rows and a test
/// part, using a seed-deterministic shuffle. Both parts keep rows in their
/// original relative order and are renormalized to uniform probabilities.
///
/// `train_count == N` returns `(full copy, None)`; an empty scenario set
/// cannot exist.
pub fn split_train_test(
    set: &ScenarioSet,
    train_count: usize,
    seed: u64,
) -> Result<(ScenarioSet, Option<ScenarioSet>)> {
    let n = set.num_scenarios();
    if train_count == 0 || train_count > n {
        return Err(Error::contract(format!(
            "train_count {train_count} out of range 1..={n}"
        )));
    }
    if train_count == n {
        return Ok((set.subset_uniform(&(0..n).collect::<Vec<_>>())?, None));
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = Rng::seeded(seed);
    rng.shuffle(&mut order);
    let mut train: Vec<usize> = order[..train_count].to_vec();
    let mut test: Vec<usize> = order[train_count..].to_vec();
    train.sort_unstable();
    test.sort_unstable();
    Ok((
        set.subset_uniform(&train)?,
        Some(set.subset_uniform(&test)?),
    ))
}
