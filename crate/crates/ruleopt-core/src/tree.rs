//! Decision trees that route scenarios to prepared solutions: routing,
//! evaluation and plain-text rendering.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::{solution_cost, ProblemSpec};
use crate::scenario::ScenarioSet;

/// One threshold test: values `<= threshold` go left, values `> threshold`
/// cross to the right subtree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Split {
    pub dimension: usize,
    pub threshold: f64,
}

/// Whether all nodes of a level share one split or every internal node has
/// its own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeStructure {
    LevelUniform,
    PerNode,
}

/// Whether a leaf solution was fitted on assigned scenarios or filled in by
/// the empty-leaf fallback policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LeafOrigin {
    Fitted,
    Fallback,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Leaf {
    pub x: Vec<u8>,
    pub origin: LeafOrigin,
}

/// A depth-Q binary decision tree with `2^Q` leaf solutions.
///
/// Leaves are indexed 0-based; the leaf reached by a scenario has index
/// `sum over levels q (1-based) of bit_q * 2^(Q-q)` where `bit_q` is 1 when
/// the queried value exceeds the threshold. For `PerNode` trees the splits
/// are stored in level order (root first).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionTree {
    pub depth: usize,
    pub structure: TreeStructure,
    pub splits: Vec<Split>,
    pub leaves: Vec<Leaf>,
}

impl DecisionTree {
    /// Validates counts, thresholds, dimension indices and leaf feasibility.
    pub fn new(
        depth: usize,
        structure: TreeStructure,
        splits: Vec<Split>,
        leaves: Vec<Leaf>,
        problem: &ProblemSpec,
        num_dimensions: usize,
    ) -> Result<Self> {
        let expected_splits = match structure {
            TreeStructure::LevelUniform => depth,
            TreeStructure::PerNode => (1usize << depth) - 1,
        };
        if splits.len() != expected_splits {
            return Err(Error::schema(format!(
                "{} splits for depth {depth}, expected {expected_splits}",
                splits.len()
            )));
        }
        if leaves.len() != 1usize << depth {
            return Err(Error::schema(format!(
                "{} leaves for depth {depth}, expected {}",
                leaves.len(),
                1usize << depth
            )));
        }
        for split in &splits {
            if !split.threshold.is_finite() {
                return Err(Error::parse("split threshold is not finite".into()));
            }
            if split.dimension >= num_dimensions {
                return Err(Error::schema(format!(
                    "split dimension {} out of range ({} dimensions)",
                    split.dimension, num_dimensions
                )));
            }
        }
        for (k, leaf) in leaves.iter().enumerate() {
            if !problem.is_feasible(&leaf.x) {
                return Err(Error::validation(format!(
                    "leaf {} holds an infeasible solution",
                    k + 1
                )));
            }
        }
        Ok(DecisionTree { depth, structure, splits, leaves })
    }

    pub fn leaf_count(&self) -> usize {
        1usize << self.depth
    }
}

/// The leaf index each scenario is routed to.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    pub leaf_of: Vec<usize>,
    pub leaf_count: usize,
}

impl Assignment {
    /// Scenario indices per leaf.
    pub fn cells(&self) -> Vec<Vec<usize>> {
        let mut cells = alloc::vec![Vec::new(); self.leaf_count];
        for (j, &leaf) in self.leaf_of.iter().enumerate() {
            cells[leaf].push(j);
        }
        cells
    }
}

/// Aggregation criterion for evaluating a rule over a scenario set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    Laplace,
    WorstCase,
    Variance,
}

/// The level sets S_q (0-based leaves): `S_q` contains the leaves whose
/// level-q routing bit is 1, i.e. the leaves reached by crossing the level-q
/// threshold. Level 1 carries the most significant bit.
pub fn leaf_sets(depth: usize) -> Vec<Vec<usize>> {
    let k = 1usize << depth;
    (1..=depth)
        .map(|q| (0..k).filter(|leaf| (leaf >> (depth - q)) & 1 == 1).collect())
        .collect()
}

/// Routes one scenario row to a leaf index. Values equal to the threshold
/// stay on the left (`<=`) side.
pub fn route(tree: &DecisionTree, row: &[f64]) -> usize {
    let mut node = 1usize;
    for level in 0..tree.depth {
        let split = match tree.structure {
            TreeStructure::LevelUniform => &tree.splits[level],
            TreeStructure::PerNode => &tree.splits[node - 1],
        };
        let crossed = row[split.dimension] > split.threshold;
        node = 2 * node + crossed as usize;
    }
    node - tree.leaf_count()
}

/// Routes every scenario of the set.
pub fn assign(tree: &DecisionTree, set: &ScenarioSet) -> Assignment {
    Assignment {
        leaf_of: (0..set.num_scenarios()).map(|j| route(tree, set.row(j))).collect(),
        leaf_count: tree.leaf_count(),
    }
}

/// Cost of the routed solution in every scenario, in scenario order.
pub fn per_scenario_costs(tree: &DecisionTree, set: &ScenarioSet) -> Vec<f64> {
    (0..set.num_scenarios())
        .map(|j| solution_cost(set, j, &tree.leaves[route(tree, set.row(j))].x))
        .collect()
}

/// Evaluates the routed solutions under a criterion. Laplace is the
/// probability-weighted expected cost; under uniform probabilities it equals
/// the plain cost sum divided by N (see [`laplace_sum`]).
pub fn evaluate(tree: &DecisionTree, set: &ScenarioSet, criterion: Criterion) -> f64 {
    let costs = per_scenario_costs(tree, set);
    aggregate_criterion(&costs, set.probabilities(), criterion)
}

/// Folds per-scenario costs under a criterion; shared by trees and baseline
/// evaluations.
pub fn aggregate_criterion(costs: &[f64], probabilities: &[f64], criterion: Criterion) -> f64 {
    match criterion {
        Criterion::Laplace => {
            costs.iter().zip(probabilities).map(|(c, p)| p * c).sum()
        }
        Criterion::WorstCase => {
            costs.iter().fold(f64::NEG_INFINITY, |acc, &c| if c > acc { c } else { acc })
        }
        Criterion::Variance => {
            let mean: f64 = costs.iter().zip(probabilities).map(|(c, p)| p * c).sum();
            costs
                .iter()
                .zip(probabilities)
                .map(|(c, p)| p * (c - mean) * (c - mean))
                .sum()
        }
    }
}

/// Unweighted sum of routed-solution costs over all scenarios. Exact in
/// integer-valued fixtures, and the form in which training objectives are
/// usually reported.
pub fn laplace_sum(tree: &DecisionTree, set: &ScenarioSet) -> f64 {
    per_scenario_costs(tree, set).iter().sum()
}

/// Renders the rule as text: one line per split, then one line per leaf with
/// its path conditions and its solution in set notation (1-based indices).
pub fn render_rule(tree: &DecisionTree, dimension_names: &[String]) -> String {
    let mut out = String::new();
    let name = |split: &Split| -> &str { &dimension_names[split.dimension] };
    match tree.structure {
        TreeStructure::LevelUniform => {
            for (q, split) in tree.splits.iter().enumerate() {
                out.push_str(&format!(
                    "split {}: {} <= {}\n",
                    q + 1,
                    name(split),
                    split.threshold
                ));
            }
        }
        TreeStructure::PerNode => {
            for (i, split) in tree.splits.iter().enumerate() {
                out.push_str(&format!(
                    "node {}: {} <= {}\n",
                    i + 1,
                    name(split),
                    split.threshold
                ));
            }
        }
    }
    for (k, leaf) in tree.leaves.iter().enumerate() {
        let mut conditions = Vec::new();
        let mut node = 1usize;
        for level in 0..tree.depth {
            let split = match tree.structure {
                TreeStructure::LevelUniform => &tree.splits[level],
                TreeStructure::PerNode => &tree.splits[node - 1],
            };
            let crossed = (k >> (tree.depth - 1 - level)) & 1 == 1;
            let op = if crossed { ">" } else { "<=" };
            conditions.push(format!("{} {op} {}", name(split), split.threshold));
            node = 2 * node + crossed as usize;
        }
        let items: Vec<String> = leaf
            .x
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == 1)
            .map(|(i, _)| format!("{}", i + 1))
            .collect();
        let origin = match leaf.origin {
            LeafOrigin::Fitted => "",
            LeafOrigin::Fallback => " (fallback)",
        };
        if conditions.is_empty() {
            out.push_str(&format!("leaf {}: {{{}}}{}\n", k + 1, items.join(", "), origin));
        } else {
            out.push_str(&format!(
                "leaf {} [{}]: {{{}}}{}\n",
                k + 1,
                conditions.join(", "),
                items.join(", "),
                origin
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testdata;
    use alloc::vec;

    #[test]
    fn leaf_set_encoding() {
        // Depth 2: crossing level 1 reaches leaves {2,3}; level 2 {1,3}.
        assert_eq!(leaf_sets(2), vec![vec![2, 3], vec![1, 3]]);
        assert_eq!(leaf_sets(1), vec![vec![1]]);
        for s in leaf_sets(3) {
            assert_eq!(s.len(), 4);
        }
    }

    #[test]
    fn routes_worked_example_scenarios() {
        let set = testdata::selection_example_set();
        let tree = testdata::paper_tree();
        // Scenario 2: c2 = 7 > 5.5, c3 = 3 <= 6 -> bits (1, 0) -> leaf 2.
        assert_eq!(route(&tree, set.row(1)), 2);
        assert_eq!(tree.leaves[2].x, vec![0, 0, 1, 0, 1]);
        // Scenario 8: c2 = 4 <= 5.5, c3 = 7 > 6 -> bits (0, 1) -> leaf 1.
        assert_eq!(route(&tree, set.row(7)), 1);
        assert_eq!(tree.leaves[1].x, vec![0, 1, 0, 0, 1]);
    }

    #[test]
    fn threshold_boundary_stays_left() {
        let tree = testdata::paper_tree();
        // c2 exactly 5.5 and c3 exactly 6 take the <= branch twice.
        assert_eq!(route(&tree, &[0.0, 5.5, 6.0, 0.0, 0.0]), 0);
    }

    #[test]
    fn assignment_groups_match_example() {
        let set = testdata::selection_example_set();
        let tree = testdata::paper_tree();
        let cells = assign(&tree, &set).cells();
        assert_eq!(cells[0], vec![5, 6, 8]); // scenarios 6, 7, 9
        assert_eq!(cells[1], vec![3, 7]); // scenarios 4, 8
        assert_eq!(cells[2], vec![1, 2, 9]); // scenarios 2, 3, 10
        assert_eq!(cells[3], vec![0, 4]); // scenarios 1, 5
    }

    #[test]
    fn laplace_matches_example_total() {
        let set = testdata::selection_example_set();
        let tree = testdata::paper_tree();
        assert_eq!(laplace_sum(&tree, &set), 63.0);
        let weighted = evaluate(&tree, &set, Criterion::Laplace);
        assert!((weighted - 6.3).abs() < 1e-12);
    }

    #[test]
    fn degenerate_criteria() {
        let set = crate::scenario::ScenarioSet::with_uniform_probabilities(
            vec![crate::scenario::Dimension::cost("a"), crate::scenario::Dimension::cost("b")],
            vec![vec![3.0, 1.0]],
        )
        .unwrap();
        let spec = ProblemSpec::Selection { n: 2, p: 1 };
        let tree = DecisionTree::new(
            0,
            TreeStructure::LevelUniform,
            vec![],
            vec![Leaf { x: vec![0, 1], origin: LeafOrigin::Fitted }],
            &spec,
            2,
        )
        .unwrap();
        assert_eq!(evaluate(&tree, &set, Criterion::Laplace), 1.0);
        assert_eq!(evaluate(&tree, &set, Criterion::WorstCase), 1.0);
        assert_eq!(evaluate(&tree, &set, Criterion::Variance), 0.0);
        assert_eq!(assign(&tree, &set).leaf_of, vec![0]);
    }

    #[test]
    fn variance_zero_when_costs_identical() {
        let set = crate::scenario::ScenarioSet::with_uniform_probabilities(
            vec![crate::scenario::Dimension::cost("a")],
            vec![vec![2.0], vec![2.0], vec![2.0]],
        )
        .unwrap();
        let spec = ProblemSpec::Selection { n: 1, p: 1 };
        let tree = DecisionTree::new(
            0,
            TreeStructure::LevelUniform,
            vec![],
            vec![Leaf { x: vec![1], origin: LeafOrigin::Fitted }],
            &spec,
            1,
        )
        .unwrap();
        assert_eq!(evaluate(&tree, &set, Criterion::Variance), 0.0);
    }

    #[test]
    fn render_has_split_and_leaf_lines() {
        let set = testdata::selection_example_set();
        let tree = testdata::paper_tree();
        let text = render_rule(&tree, &set.dimension_names());
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 6);
        assert_eq!(lines[0], "split 1: c2 <= 5.5");
        assert_eq!(lines[1], "split 2: c3 <= 6");
        assert!(lines[2].starts_with("leaf 1 [c2 <= 5.5, c3 <= 6]: {2, 3}"));
        assert!(lines[5].contains("{1, 5}"));
    }

    #[test]
    fn tree_validation_rejects_bad_shapes() {
        let spec = testdata::selection_example_problem();
        let leaf = Leaf { x: vec![1, 1, 0, 0, 0], origin: LeafOrigin::Fitted };
        // Wrong leaf count for the depth.
        assert!(DecisionTree::new(
            2,
            TreeStructure::LevelUniform,
            vec![
                Split { dimension: 0, threshold: 1.0 },
                Split { dimension: 1, threshold: 1.0 }
            ],
            vec![leaf.clone(); 3],
            &spec,
            5,
        )
        .is_err());
        // Infeasible leaf (three items picked).
        let bad = Leaf { x: vec![1, 1, 1, 0, 0], origin: LeafOrigin::Fitted };
        assert!(DecisionTree::new(
            0,
            TreeStructure::LevelUniform,
            vec![],
            vec![bad],
            &spec,
            5,
        )
        .is_err());
        // Non-finite threshold.
        assert!(DecisionTree::new(
            1,
            TreeStructure::LevelUniform,
            vec![Split { dimension: 0, threshold: f64::NAN }],
            vec![leaf.clone(), leaf.clone()],
            &spec,
            5,
        )
        .is_err());
    }

    #[test]
    fn per_node_tree_routes_by_path() {
        let spec = ProblemSpec::Selection { n: 2, p: 1 };
        let a = Leaf { x: vec![1, 0], origin: LeafOrigin::Fitted };
        let b = Leaf { x: vec![0, 1], origin: LeafOrigin::Fitted };
        let tree = DecisionTree::new(
            2,
            TreeStructure::PerNode,
            vec![
                Split { dimension: 0, threshold: 5.0 },
                Split { dimension: 1, threshold: 1.0 },
                Split { dimension: 1, threshold: 2.0 },
            ],
            vec![a.clone(), b.clone(), a.clone(), b.clone()],
            &spec,
            2,
        )
        .unwrap();
        // Left of root, then right at node 2 (value 3 > 1).
        assert_eq!(route(&tree, &[4.0, 3.0]), 1);
        // Right of root, then left at node 3 (value 1.5 <= 2).
        assert_eq!(route(&tree, &[9.0, 1.5]), 2);
        let text = render_rule(&tree, &["u".into(), "v".into()]);
        assert_eq!(text.lines().count(), 3 + 4);
    }
}
