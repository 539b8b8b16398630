//! Backtracking exact cover with primary and secondary items.
//!
//! Primary items must be covered exactly once, secondary items at most once.
//! The branching item is the uncovered primary item with the fewest live
//! options (ties go to the smallest item); options are tried in input order.
//! Given the same input the search is fully deterministic.

/// How a bounded search ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchResult<T> {
    Found(T),
    /// The node budget ran out before the tree was exhausted.
    NotFound,
    /// The whole tree was explored without a solution.
    ProvenNonexistent,
}

impl<T> SearchResult<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchResult::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> SearchResult<U> {
        match self {
            SearchResult::Found(t) => SearchResult::Found(f(t)),
            SearchResult::NotFound => SearchResult::NotFound,
            SearchResult::ProvenNonexistent => SearchResult::ProvenNonexistent,
        }
    }
}

pub struct ExactCover {
    primary: usize,
    options: Vec<Vec<usize>>,
    by_item: Vec<Vec<usize>>,
}

impl ExactCover {
    /// `options[k]` lists the items of option `k`; items `< primary` are
    /// primary, the rest secondary.
    pub fn new(primary: usize, secondary: usize, options: Vec<Vec<usize>>) -> Self {
        let mut by_item = vec![Vec::new(); primary + secondary];
        for (k, opt) in options.iter().enumerate() {
            for &i in opt {
                by_item[i].push(k);
            }
        }
        ExactCover {
            primary,
            options,
            by_item,
        }
    }

    /// First solution in search order, as indices into the option list.
    /// `nodes` accumulates the number of search nodes visited.
    pub fn solve(&self, budget: u64, nodes: &mut u64) -> SearchResult<Vec<usize>> {
        let mut state = State {
            covered: vec![false; self.by_item.len()],
            chosen: Vec::new(),
            nodes: 0,
            budget,
        };
        let out = match self.search(&mut state) {
            Step::Solved => SearchResult::Found(state.chosen.clone()),
            Step::Exhausted => SearchResult::ProvenNonexistent,
            Step::OutOfBudget => SearchResult::NotFound,
        };
        *nodes += state.nodes;
        out
    }

    fn live(&self, k: usize, covered: &[bool]) -> bool {
        self.options[k].iter().all(|&i| !covered[i])
    }

    fn search(&self, st: &mut State) -> Step {
        st.nodes += 1;
        if st.nodes > st.budget {
            return Step::OutOfBudget;
        }
        let mut best: Option<(usize, usize)> = None;
        for item in 0..self.primary {
            if st.covered[item] {
                continue;
            }
            let n = self.by_item[item]
                .iter()
                .filter(|&&k| self.live(k, &st.covered))
                .count();
            if best.is_none_or(|(_, bn)| n < bn) {
                best = Some((item, n));
                if n == 0 {
                    break;
                }
            }
        }
        let Some((item, n)) = best else {
            return Step::Solved;
        };
        if n == 0 {
            return Step::Exhausted;
        }
        for &k in &self.by_item[item] {
            if !self.live(k, &st.covered) {
                continue;
            }
            for &i in &self.options[k] {
                st.covered[i] = true;
            }
            st.chosen.push(k);
            match self.search(st) {
                Step::Exhausted => {}
                other => return other,
            }
            st.chosen.pop();
            for &i in &self.options[k] {
                st.covered[i] = false;
            }
        }
        Step::Exhausted
    }
}

struct State {
    covered: Vec<bool>,
    chosen: Vec<usize>,
    nodes: u64,
    budget: u64,
}

enum Step {
    Solved,
    Exhausted,
    OutOfBudget,
}
