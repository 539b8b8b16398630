//! Branch-and-bound maximum independent set.
//!
//! Maximum clique on the complement graph in the style of Tomita's MCQ: the
//! candidate set is greedily partitioned into cliques of the conflict graph
//! (independent sets of the complement), and the number of parts bounds how
//! many more vertices can be added. Top-level branches can be spread over
//! worker threads that share the incumbent size.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use super::bitset::Bitset;
use super::graph::ConflictGraph;

#[derive(Debug, Clone)]
pub struct MisConfig {
    pub node_budget: Option<u64>,
    pub time_limit: Option<Duration>,
    pub jobs: usize,
    /// Stop as soon as the incumbent reaches this size.
    pub target: Option<usize>,
}

/// Vertices as sets of resources, two vertices being adjacent exactly when
/// their sets meet. Enables a packing bound alongside the coloring bound.
#[derive(Debug, Clone)]
pub struct Packing {
    pub resources: Vec<Bitset>,
}

#[derive(Debug, Clone)]
pub struct MisResult {
    pub best: Vec<usize>,
    /// The tree was explored completely, or the incumbent reached `target`.
    pub complete: bool,
    pub nodes: u64,
}

struct Shared<'a> {
    graph: &'a ConflictGraph,
    compat: Vec<Bitset>,
    best_size: AtomicUsize,
    best: Mutex<Vec<usize>>,
    nodes: AtomicU64,
    aborted: AtomicBool,
    reached_target: AtomicBool,
    budget: u64,
    deadline: Option<Instant>,
    target: Option<usize>,
    packing: Option<PackingBound>,
}

struct PackingBound {
    resources: Vec<Bitset>,
    /// Vertices by ascending resource count.
    by_cost: Vec<(usize, usize)>,
}

impl PackingBound {
    /// Most vertices of `p` whose total cost fits in the resources that
    /// `p` can still reach.
    fn bound(&self, p: &Bitset) -> usize {
        let mut reach: Option<Bitset> = None;
        for v in p.iter() {
            match &mut reach {
                Some(r) => r.union_with(&self.resources[v]),
                None => reach = Some(self.resources[v].clone()),
            }
        }
        let Some(reach) = reach else { return 0 };
        let mut left = reach.count();
        let mut k = 0;
        for &(cost, v) in &self.by_cost {
            if p.contains(v) {
                if cost > left {
                    break;
                }
                left -= cost;
                k += 1;
            }
        }
        k
    }
}

impl Shared<'_> {
    fn offer(&self, set: &[usize]) {
        let n = set.len();
        if self.best_size.fetch_max(n, Ordering::SeqCst) < n {
            let mut guard = self.best.lock().expect("incumbent lock");
            if guard.len() < n {
                *guard = set.to_vec();
            }
        }
        if self.target.is_some_and(|t| n >= t) {
            self.reached_target.store(true, Ordering::SeqCst);
        }
    }

    fn stop(&self) -> bool {
        self.aborted.load(Ordering::Relaxed) || self.reached_target.load(Ordering::Relaxed)
    }

    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.budget {
            self.aborted.store(true, Ordering::SeqCst);
        }
        if n.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.aborted.store(true, Ordering::SeqCst);
        }
        self.stop()
    }

    /// Greedy clique cover of `p` in the conflict graph, as `(vertex, part)`
    /// pairs in assignment order; part numbers are 1-based and nondecreasing.
    fn color(&self, p: &Bitset) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(p.count());
        let mut uncolored = p.clone();
        let mut k = 0;
        while !uncolored.is_empty() {
            k += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                uncolored.remove(v);
                q.remove(v);
                q.intersect_with(self.graph.neighbors(v));
                out.push((v, k));
            }
        }
        out
    }

    fn expand(&self, current: &mut Vec<usize>, mut p: Bitset) {
        if self.tick() {
            return;
        }
        if let Some(pb) = &self.packing {
            if current.len() + pb.bound(&p) <= self.best_size.load(Ordering::Relaxed) {
                return;
            }
        }
        let colored = self.color(&p);
        for &(v, k) in colored.iter().rev() {
            if current.len() + k <= self.best_size.load(Ordering::Relaxed) || self.stop() {
                return;
            }
            current.push(v);
            let next = p.intersection(&self.compat[v]);
            if next.is_empty() {
                self.offer(current);
            } else {
                self.expand(current, next);
            }
            current.pop();
            p.remove(v);
        }
    }
}

/// Maximum independent set of `graph`, starting from `incumbent`.
pub fn max_independent_set(
    graph: &ConflictGraph,
    incumbent: Vec<usize>,
    config: &MisConfig,
    packing: Option<Packing>,
) -> MisResult {
    let n = graph.len();
    let compat: Vec<Bitset> = (0..n)
        .map(|v| {
            let mut c = Bitset::full(n);
            c.difference_with(graph.neighbors(v));
            c.remove(v);
            c
        })
        .collect();
    let shared = Shared {
        graph,
        compat,
        best_size: AtomicUsize::new(incumbent.len()),
        best: Mutex::new(incumbent.clone()),
        nodes: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
        reached_target: AtomicBool::new(config.target.is_some_and(|t| incumbent.len() >= t)),
        budget: config.node_budget.unwrap_or(u64::MAX),
        deadline: config.time_limit.map(|d| Instant::now() + d),
        target: config.target,
        packing: packing.map(|pk| {
            let mut by_cost: Vec<(usize, usize)> =
                pk.resources.iter().enumerate().map(|(v, r)| (r.count(), v)).collect();
            by_cost.sort_unstable();
            PackingBound {
                resources: pk.resources,
                by_cost,
            }
        }),
    };

    if n > 0 && !shared.stop() {
        shared.tick();
        let root = Bitset::full(n);
        let colored = shared.color(&root);
        // Branch i fixes vertex v_i and excludes the vertices fixed before it.
        let mut tasks = Vec::with_capacity(n);
        let mut remaining = root;
        for &(v, k) in colored.iter().rev() {
            let p = remaining.intersection(&shared.compat[v]);
            tasks.push((v, k, p));
            remaining.remove(v);
        }
        let next = AtomicUsize::new(0);
        let worker = || {
            let mut current = Vec::new();
            loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some((v, k, p)) = tasks.get(i) else { break };
                if *k <= shared.best_size.load(Ordering::SeqCst) || shared.stop() {
                    break;
                }
                current.clear();
                current.push(*v);
                if p.is_empty() {
                    shared.offer(&current);
                } else {
                    shared.expand(&mut current, p.clone());
                }
            }
        };
        let jobs = config.jobs.max(1);
        if jobs == 1 {
            worker();
        } else {
            std::thread::scope(|s| {
                for _ in 0..jobs {
                    s.spawn(worker);
                }
            });
        }
    }

    let complete = !shared.aborted.load(Ordering::SeqCst) || shared.reached_target.load(Ordering::SeqCst);
    let mut best = shared.best.into_inner().expect("incumbent lock");
    best.sort_unstable();
    MisResult {
        best,
        complete,
        nodes: shared.nodes.load(Ordering::SeqCst),
    }
}

/// Greedy independent set, lowest conflict degree first.
pub fn greedy_independent_set(graph: &ConflictGraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..graph.len()).collect();
    order.sort_by_key(|&v| (graph.degree(v), v));
    let mut blocked = Bitset::new(graph.len());
    let mut out = Vec::new();
    for v in order {
        if !blocked.contains(v) {
            out.push(v);
            blocked.insert(v);
            for u in graph.neighbors(v).iter() {
                blocked.insert(u);
            }
        }
    }
    out.sort_unstable();
    out
}
