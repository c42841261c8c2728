//! Deterministic nominal problems: minimize a linear cost over a binary
//! feasible set. This is the single extension point every tree builder and
//! baseline routes its subproblems through.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scenario::{CostVector, DimensionKind, ScenarioSet};

/// Supported nominal problem classes.
///
/// Variables are always binary. For path problems the variable index equals
/// the arc index; grid arcs are enumerated row-major with all horizontal arcs
/// first, then all vertical arcs (see [`grid_arcs`]).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum ProblemSpec {
    /// Pick exactly `p` of `n` items.
    Selection { n: usize, p: usize },
    /// Directed grid, `width * height` nodes, arcs oriented right and up,
    /// source bottom-left, sink top-right.
    GridShortestPath { width: usize, height: usize },
    /// Arbitrary DAG with explicit arcs; arc index = variable index.
    ExplicitDag {
        node_count: usize,
        arcs: Vec<(usize, usize)>,
        source: usize,
        sink: usize,
    },
}

/// Arcs of a `width x height` grid in the documented order: for each row
/// bottom to top, the rightward arcs left to right; then for each row, the
/// upward arcs left to right. Node index is `row * width + col`.
pub fn grid_arcs(width: usize, height: usize) -> Vec<(usize, usize)> {
    let node = |col: usize, row: usize| row * width + col;
    let mut arcs = Vec::with_capacity(height * (width - 1) + width * (height - 1));
    for row in 0..height {
        for col in 0..width - 1 {
            arcs.push((node(col, row), node(col + 1, row)));
        }
    }
    for row in 0..height - 1 {
        for col in 0..width {
            arcs.push((node(col, row), node(col, row + 1)));
        }
    }
    arcs
}

impl ProblemSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            ProblemSpec::Selection { n, p } => {
                if *p < 1 || *p > *n {
                    return Err(Error::Validation(format!(
                        "selection needs 1 <= p <= n, got p={p}, n={n}"
                    )));
                }
            }
            ProblemSpec::GridShortestPath { width, height } => {
                if *width < 2 || *height < 2 {
                    return Err(Error::Validation(format!(
                        "grid needs width, height >= 2, got {width}x{height}"
                    )));
                }
            }
            ProblemSpec::ExplicitDag { node_count, arcs, source, sink } => {
                if *source >= *node_count || *sink >= *node_count {
                    return Err(Error::Validation("dag source/sink out of range".into()));
                }
                for &(tail, head) in arcs {
                    if tail >= *node_count || head >= *node_count {
                        return Err(Error::Validation("dag arc endpoint out of range".into()));
                    }
                }
                let order = topological_order(*node_count, arcs)?;
                let mut reach = vec![false; *node_count];
                reach[*source] = true;
                for &v in &order {
                    if reach[v] {
                        for &(tail, head) in arcs.iter() {
                            if tail == v {
                                reach[head] = true;
                            }
                        }
                    }
                }
                if !reach[*sink] {
                    return Err(Error::infeasible("dag sink not reachable from source"));
                }
            }
        }
        Ok(())
    }

    /// Number of binary variables.
    pub fn num_variables(&self) -> usize {
        match self {
            ProblemSpec::Selection { n, .. } => *n,
            ProblemSpec::GridShortestPath { width, height } => {
                height * (width - 1) + width * (height - 1)
            }
            ProblemSpec::ExplicitDag { arcs, .. } => arcs.len(),
        }
    }

    fn dag_parts(&self) -> Option<(usize, Vec<(usize, usize)>, usize, usize)> {
        match self {
            ProblemSpec::Selection { .. } => None,
            ProblemSpec::GridShortestPath { width, height } => Some((
                width * height,
                grid_arcs(*width, *height),
                0,
                width * height - 1,
            )),
            ProblemSpec::ExplicitDag { node_count, arcs, source, sink } => {
                Some((*node_count, arcs.clone(), *source, *sink))
            }
        }
    }

    /// Checks binary-vector feasibility: exact cardinality for selections,
    /// unit source-to-sink flow for path problems.
    pub fn is_feasible(&self, x: &[u8]) -> bool {
        if x.len() != self.num_variables() || x.iter().any(|&v| v > 1) {
            return false;
        }
        match self {
            ProblemSpec::Selection { p, .. } => {
                x.iter().filter(|&&v| v == 1).count() == *p
            }
            _ => {
                let (node_count, arcs, source, sink) = self.dag_parts().unwrap();
                let mut balance = vec![0i64; node_count];
                for (a, &(tail, head)) in arcs.iter().enumerate() {
                    if x[a] == 1 {
                        balance[tail] += 1;
                        balance[head] -= 1;
                    }
                }
                (0..node_count).all(|v| {
                    let want = if v == source {
                        1
                    } else if v == sink {
                        -1
                    } else {
                        0
                    };
                    balance[v] == want
                })
            }
        }
    }
}

fn topological_order(node_count: usize, arcs: &[(usize, usize)]) -> Result<Vec<usize>> {
    let mut indegree = vec![0usize; node_count];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); node_count];
    for &(tail, head) in arcs {
        indegree[head] += 1;
        out[tail].push(head);
    }
    let mut ready: Vec<usize> = (0..node_count).filter(|&v| indegree[v] == 0).collect();
    let mut order = Vec::with_capacity(node_count);
    while let Some(v) = ready.pop() {
        order.push(v);
        for &w in &out[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                ready.push(w);
            }
        }
    }
    if order.len() != node_count {
        return Err(Error::Validation("arcs contain a cycle".into()));
    }
    Ok(order)
}

/// A binary solution together with the objective value of the cost vector it
/// was solved against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub x: Vec<u8>,
    pub value: f64,
}

/// Dot product of a binary vector with a cost vector, accumulated in
/// ascending variable order. Every objective in this crate is computed
/// through this one function so that equal solutions always produce
/// bit-equal values.
pub fn dot_cost(x: &[u8], costs: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), costs.len());
    let mut total = 0.0;
    for (xi, c) in x.iter().zip(costs) {
        if *xi != 0 {
            total += *c;
        }
    }
    total
}

/// Cost of a solution in one scenario: dot product over the cost dimensions
/// of the row, feature dimensions excluded.
pub fn solution_cost(set: &ScenarioSet, scenario: usize, x: &[u8]) -> f64 {
    let row = set.row(scenario);
    let mut total = 0.0;
    let mut var = 0;
    for (i, dim) in set.dimensions().iter().enumerate() {
        if dim.kind == DimensionKind::Cost {
            if x[var] != 0 {
                total += row[i];
            }
            var += 1;
        }
    }
    debug_assert_eq!(var, x.len());
    total
}

/// Solves the nominal problem `min c^T x` over the spec's feasible set.
///
/// Deterministic tie-breaking: selections sort by `(cost, index)`; path
/// problems prefer the predecessor arc with the smaller index on equal
/// labels. Costs may be negative.
pub fn solve_nominal(spec: &ProblemSpec, costs: &CostVector) -> Result<Solution> {
    let n = spec.num_variables();
    if costs.len() != n {
        return Err(Error::contract(format!(
            "cost vector has {} entries, problem has {n} variables",
            costs.len()
        )));
    }
    let c = costs.as_slice();
    match spec {
        ProblemSpec::Selection { n, p } => {
            let mut order: Vec<usize> = (0..*n).collect();
            order.sort_by(|&a, &b| c[a].total_cmp(&c[b]).then(a.cmp(&b)));
            let mut x = vec![0u8; *n];
            for &i in order.iter().take(*p) {
                x[i] = 1;
            }
            let value = dot_cost(&x, c);
            Ok(Solution { x, value })
        }
        _ => {
            let (node_count, arcs, source, sink) = spec.dag_parts().unwrap();
            let order = topological_order(node_count, &arcs)?;
            // Incoming arcs per node, ascending arc index.
            let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); node_count];
            for (a, &(_, head)) in arcs.iter().enumerate() {
                incoming[head].push(a);
            }
            let mut dist = vec![f64::INFINITY; node_count];
            let mut pred: Vec<Option<usize>> = vec![None; node_count];
            dist[source] = 0.0;
            for &v in &order {
                for &a in &incoming[v] {
                    let tail = arcs[a].0;
                    if dist[tail].is_finite() {
                        let cand = dist[tail] + c[a];
                        if cand < dist[v] {
                            dist[v] = cand;
                            pred[v] = Some(a);
                        }
                    }
                }
            }
            if !dist[sink].is_finite() {
                return Err(Error::infeasible("sink not reachable from source"));
            }
            let mut x = vec![0u8; arcs.len()];
            let mut v = sink;
            while v != source {
                let a = pred[v].expect("finite label implies a predecessor");
                x[a] = 1;
                v = arcs[a].0;
            }
            let value = dot_cost(&x, c);
            Ok(Solution { x, value })
        }
    }
}

/// Optimal objective value per scenario, using each scenario's raw
/// (unweighted) cost row.
pub fn per_scenario_optimum(spec: &ProblemSpec, set: &ScenarioSet) -> Result<Vec<f64>> {
    (0..set.num_scenarios())
        .map(|j| solve_nominal(spec, &set.cost_row(j)).map(|s| s.value))
        .collect()
}
