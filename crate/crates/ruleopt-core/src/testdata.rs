//! Shared fixtures for unit tests: the 10-scenario, 5-item selection example.

use alloc::vec;
use alloc::vec::Vec;

use crate::problem::ProblemSpec;
use crate::scenario::{Dimension, ScenarioSet};
use crate::tree::{DecisionTree, Leaf, LeafOrigin, Split, TreeStructure};

/// Cost matrix of the worked selection example (10 scenarios, 5 items).
pub fn selection_example_rows() -> Vec<Vec<f64>> {
    vec![
        vec![4.0, 7.0, 8.0, 6.0, 4.0],
        vec![6.0, 7.0, 3.0, 10.0, 2.0],
        vec![3.0, 8.0, 1.0, 10.0, 4.0],
        vec![7.0, 1.0, 7.0, 3.0, 7.0],
        vec![2.0, 9.0, 8.0, 10.0, 3.0],
        vec![1.0, 3.0, 4.0, 8.0, 6.0],
        vec![10.0, 3.0, 3.0, 9.0, 10.0],
        vec![8.0, 4.0, 7.0, 2.0, 3.0],
        vec![10.0, 4.0, 2.0, 10.0, 5.0],
        vec![8.0, 9.0, 5.0, 6.0, 1.0],
    ]
}

/// The example scenario set with uniform probabilities.
pub fn selection_example_set() -> ScenarioSet {
    let dims = (1..=5).map(|i| Dimension::cost(alloc::format!("c{i}"))).collect();
    ScenarioSet::with_uniform_probabilities(dims, selection_example_rows()).unwrap()
}

/// The matching problem: pick exactly 2 of 5 items.
pub fn selection_example_problem() -> ProblemSpec {
    ProblemSpec::Selection { n: 5, p: 2 }
}

/// The worked-example tree: split on c2 at 5.5, then on c3 at 6, with the
/// example's four leaf solutions in canonical leaf order.
pub fn paper_tree() -> DecisionTree {
    DecisionTree::new(
        2,
        TreeStructure::LevelUniform,
        vec![
            Split { dimension: 1, threshold: 5.5 },
            Split { dimension: 2, threshold: 6.0 },
        ],
        vec![
            // (<=, <=): {2, 3}
            Leaf { x: vec![0, 1, 1, 0, 0], origin: LeafOrigin::Fitted },
            // (<=, >): {2, 5}
            Leaf { x: vec![0, 1, 0, 0, 1], origin: LeafOrigin::Fitted },
            // (>, <=): {3, 5}
            Leaf { x: vec![0, 0, 1, 0, 1], origin: LeafOrigin::Fitted },
            // (>, >): {1, 5}
            Leaf { x: vec![1, 0, 0, 0, 1], origin: LeafOrigin::Fitted },
        ],
        &selection_example_problem(),
        5,
    )
    .unwrap()
}
