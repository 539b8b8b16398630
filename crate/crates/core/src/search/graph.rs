use crate::difference::difference_indices;
use crate::pattern::{CodeParams, SchedulingPattern};

use super::bitset::Bitset;

/// Patterns as vertices; an edge joins two patterns whose arrays of
/// differences share an element in some cell.
#[derive(Debug, Clone)]
pub struct ConflictGraph {
    pub params: CodeParams,
    pub vertices: Vec<SchedulingPattern>,
    adjacency: Vec<Bitset>,
}

impl ConflictGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &Bitset {
        &self.adjacency[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].count()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.len()).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(k, &u)| set[k + 1..].iter().all(|&v| u != v && !self.adjacent(u, v)))
    }
}

/// Builds the graph through an inverted index from difference elements to
/// the patterns that contain them. Patterns are assumed to fit `params`.
pub fn build_conflict_graph(patterns: Vec<SchedulingPattern>, params: &CodeParams) -> ConflictGraph {
    let n = patterns.len();
    let cells = params.channels * params.channels * params.length;
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); cells];
    for (v, p) in patterns.iter().enumerate() {
        for idx in difference_indices(p, params) {
            holders[idx].push(v);
        }
    }
    let mut adjacency = vec![Bitset::new(n); n];
    for list in &holders {
        for (k, &u) in list.iter().enumerate() {
            for &v in &list[k + 1..] {
                adjacency[u].insert(v);
                adjacency[v].insert(u);
            }
        }
    }
    ConflictGraph {
        params: *params,
        vertices: patterns,
        adjacency,
    }
}
