//! Exact computation of `A(M, L, w)` on small instances as a maximum
//! independent set in the conflict graph of canonical patterns.

pub mod bitset;
pub mod enumerate;
pub mod graph;
pub mod mis;

use std::fmt;
use std::time::{Duration, Instant};

use crate::bounds::{bound_for, BoundResult};
use crate::difference::difference_indices;
use crate::code::{verify_code, verify_definitional, Code};
use crate::error::{Error, Result};
use crate::pattern::CodeParams;

pub use bitset::Bitset;
pub use enumerate::{enumerate_patterns, orbit_size, InstanceCap};
pub use graph::{build_conflict_graph, ConflictGraph};
pub use mis::{greedy_independent_set, max_independent_set, MisConfig, MisResult, Packing};

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub restricted: bool,
    pub node_budget: Option<u64>,
    pub time_limit: Option<Duration>,
    pub jobs: usize,
    /// Stop once the incumbent meets the closed-form upper bound. Off by
    /// default so that optimality comes from exhausting the tree.
    pub bound_prune: bool,
    /// Known code used as the starting incumbent.
    pub seed: Option<Code>,
    pub cap: InstanceCap,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            restricted: false,
            node_budget: None,
            time_limit: None,
            jobs: 1,
            bound_prune: false,
            seed: None,
            cap: InstanceCap::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    Optimal,
    LowerBoundOnly,
}

impl fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchStatus::Optimal => "optimal",
            SearchStatus::LowerBoundOnly => "lower-bound-only",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub best_code: Code,
    pub size: usize,
    pub status: SearchStatus,
    pub restricted: bool,
    pub nodes_explored: u64,
    pub elapsed: Duration,
    /// Optimality came from meeting the closed-form bound rather than from
    /// exhausting the tree.
    pub closed_by_bound: bool,
}

/// Conflict-degree descending, ties in lexicographic pattern order.
fn ordered_graph(params: &CodeParams, restricted: bool, cap: InstanceCap) -> Result<ConflictGraph> {
    let patterns = enumerate_patterns(params, restricted, cap)?;
    let first = build_conflict_graph(patterns, params);
    let mut order: Vec<usize> = (0..first.len()).collect();
    order.sort_by(|&a, &b| {
        first
            .degree(b)
            .cmp(&first.degree(a))
            .then_with(|| first.vertices[a].cmp(&first.vertices[b]))
    });
    let sorted = order.iter().map(|&v| first.vertices[v].clone()).collect();
    Ok(build_conflict_graph(sorted, params))
}

/// Each vertex as the set of flat difference indices it occupies.
fn packing(graph: &ConflictGraph) -> Packing {
    let p = &graph.params;
    let cells = p.channels * p.channels * p.length;
    let resources = graph
        .vertices
        .iter()
        .map(|v| {
            let mut b = Bitset::new(cells);
            for idx in difference_indices(v, p) {
                b.insert(idx);
            }
            b
        })
        .collect();
    Packing { resources }
}

/// Largest code for `params` found within the configured limits.
pub fn max_code(params: CodeParams, config: &SearchConfig) -> Result<SearchOutcome> {
    let start = Instant::now();
    let graph = ordered_graph(&params, config.restricted, config.cap)?;

    let mut incumbent = greedy_independent_set(&graph);
    if let Some(seed) = &config.seed {
        if *seed.params() != params {
            return Err(Error::InvalidParams(format!(
                "seed code has parameters {}, search is for {params}",
                seed.params()
            )));
        }
        if !verify_code(seed, config.restricted).valid {
            return Err(Error::Validation("seed code is not a valid code".into()));
        }
        let mut seeded = Vec::with_capacity(seed.len());
        for p in seed.patterns() {
            let c = p.canonicalize(params.length);
            let v = graph
                .vertices
                .iter()
                .position(|q| *q == c)
                .ok_or_else(|| Error::Validation(format!("seed pattern {c} is not a search vertex")))?;
            seeded.push(v);
        }
        if seeded.len() > incumbent.len() {
            incumbent = seeded;
        }
    }

    let target = if config.bound_prune {
        bound_for(params.channels, params.length, params.weight, config.restricted)
            .ok()
            .map(|b| b.value as usize)
    } else {
        None
    };
    let result = max_independent_set(
        &graph,
        incumbent,
        &MisConfig {
            node_budget: config.node_budget,
            time_limit: config.time_limit,
            jobs: config.jobs,
            target,
        },
        Some(packing(&graph)),
    );
    if !graph.is_independent(&result.best) {
        return Err(Error::Internal("search returned a dependent vertex set".into()));
    }
    let closed_by_bound = target.is_some_and(|t| result.best.len() >= t);
    let patterns = result.best.iter().map(|&v| graph.vertices[v].clone()).collect();
    let best_code = Code::new(params, patterns)?;
    Ok(SearchOutcome {
        size: best_code.len(),
        best_code,
        status: if result.complete {
            SearchStatus::Optimal
        } else {
            SearchStatus::LowerBoundOnly
        },
        restricted: config.restricted,
        nodes_explored: result.nodes,
        elapsed: start.elapsed(),
        closed_by_bound,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gap {
    /// `bound - A(M, L, w)`, exact because the search was exhaustive.
    Exact(u64),
    /// Only `bound - A(M, L, w) <= value` is known.
    AtMost(u64),
    /// No closed-form bound applies to these parameters.
    NoBound,
}

#[derive(Debug, Clone)]
pub struct CertifyReport {
    pub params: CodeParams,
    pub size: usize,
    pub status: SearchStatus,
    pub bound: Option<BoundResult>,
    pub gap: Gap,
}

impl fmt::Display for CertifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let relation = match self.status {
            SearchStatus::Optimal => "=",
            SearchStatus::LowerBoundOnly => ">=",
        };
        write!(f, "A{} {relation} {} ({})", self.params, self.size, self.status)?;
        match (&self.bound, &self.gap) {
            (Some(b), Gap::Exact(g)) => write!(f, "; bound {b}; gap = {g}"),
            (Some(b), Gap::AtMost(g)) => write!(f, "; bound {b}; gap <= {g}"),
            _ => write!(f, "; no closed-form bound applies"),
        }
    }
}

/// Re-verifies the outcome's code with both verifiers and compares its size
/// with the applicable closed-form bound.
pub fn certify(outcome: &SearchOutcome) -> Result<CertifyReport> {
    let code = &outcome.best_code;
    if code.len() != outcome.size
        || !verify_code(code, outcome.restricted).valid
        || !verify_definitional(code, outcome.restricted).valid
    {
        return Err(Error::Internal("corrupted outcome: best code fails verification".into()));
    }
    let p = *code.params();
    let bound = bound_for(p.channels, p.length, p.weight, outcome.restricted).ok();
    let gap = match &bound {
        None => Gap::NoBound,
        Some(b) => {
            let size = outcome.size as u64;
            if size > b.value {
                return Err(Error::Internal(format!(
                    "code of size {size} exceeds the bound {} for {p}",
                    b.value
                )));
            }
            match outcome.status {
                SearchStatus::Optimal => Gap::Exact(b.value - size),
                SearchStatus::LowerBoundOnly => Gap::AtMost(b.value - size),
            }
        }
    };
    Ok(CertifyReport {
        params: p,
        size: outcome.size,
        status: outcome.status,
        bound,
        gap,
    })
}
