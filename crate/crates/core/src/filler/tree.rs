use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::complex::Cube;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    /// Swept inside the input, towards the filling.
    Inner,
    /// Swept on the far side; its cells are the complement of the filling.
    Outer,
}

/// One cap episode of the filling front.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchNode {
    pub id: usize,
    /// Integer centroid of the cap that opened the episode.
    pub center: Vec<i64>,
    pub kind: NodeKind,
    pub parent: Option<usize>,
    /// Grid cells claimed by this episode.
    pub fill: Vec<Cube>,
}

/// Forest of cap episodes; a node's parent is the episode whose cap split off.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BranchTree {
    pub nodes: Vec<BranchNode>,
}

impl BranchTree {
    pub fn add(&mut self, center: Vec<i64>, kind: NodeKind, parent: Option<usize>) -> usize {
        let id = self.nodes.len();
        self.nodes.push(BranchNode {
            id,
            center,
            kind,
            parent,
            fill: Vec::new(),
        });
        id
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn roots(&self) -> impl Iterator<Item = &BranchNode> {
        self.nodes.iter().filter(|n| n.parent.is_none())
    }

    pub fn children(&self, id: usize) -> impl Iterator<Item = &BranchNode> {
        self.nodes.iter().filter(move |n| n.parent == Some(id))
    }

    /// Parents precede children and no cell is claimed twice.
    pub fn is_well_formed(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.nodes.iter().enumerate().all(|(i, n)| {
            n.id == i
                && n.parent.is_none_or(|p| p < i)
                && n.fill.iter().all(|c| seen.insert(c.clone()))
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tree serializes")
    }
}
