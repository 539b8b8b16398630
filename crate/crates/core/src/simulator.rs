//! Slot-synchronous multichannel collision channel without feedback.
//!
//! A node with pattern `S` and offset `tau` transmits on channel `i` in every
//! active slot `s` with `(i, (s - tau) mod L)` in `S`. A packet gets through
//! only if it is alone on its channel in its slot.

use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::code::{verify_code, Code};
use crate::error::{Error, Result};
use crate::pattern::SchedulingPattern;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeConfig {
    pub pattern: SchedulingPattern,
    pub offset: usize,
    pub activation_slot: usize,
    /// First slot in which the node is no longer active.
    pub deactivation_slot: Option<usize>,
}

impl NodeConfig {
    /// Node active from slot 0 until the end of the run.
    pub fn always(pattern: SchedulingPattern, offset: usize) -> Self {
        NodeConfig {
            pattern,
            offset,
            activation_slot: 0,
            deactivation_slot: None,
        }
    }

    fn active_until(&self, horizon: usize) -> usize {
        self.deactivation_slot.map_or(horizon, |d| d.min(horizon))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Success,
    Collision,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Transmission {
    pub slot: usize,
    pub channel: usize,
    pub node: usize,
    pub outcome: Outcome,
}

#[derive(Debug, Clone)]
pub struct TransmissionLog {
    pub horizon: usize,
    pub length: usize,
    /// Transmitting nodes per `(slot, channel)`, for occupied cells only.
    pub events: BTreeMap<(usize, usize), Vec<usize>>,
    /// Every packet sent, in `(slot, channel, node)` order.
    pub transmissions: Vec<Transmission>,
    /// Half-open activity interval of each node, clipped to the horizon.
    pub activity: Vec<(usize, usize)>,
}

impl TransmissionLog {
    pub fn collisions(&self) -> usize {
        self.events.values().filter(|v| v.len() > 1).count()
    }

    pub fn successes_of(&self, node: usize) -> Vec<usize> {
        self.transmissions
            .iter()
            .filter(|t| t.node == node && t.outcome == Outcome::Success)
            .map(|t| t.slot)
            .collect()
    }

    /// Most packets any node sends within a single slot.
    pub fn max_packets_per_slot(&self) -> usize {
        let mut per: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for t in &self.transmissions {
            *per.entry((t.node, t.slot)).or_default() += 1;
        }
        per.values().copied().max().unwrap_or(0)
    }

    /// Largest number of collisions between one pair of nodes inside any
    /// `window` consecutive slots.
    pub fn max_pairwise_clashes(&self, window: usize) -> usize {
        let mut slots: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (&(slot, _), nodes) in &self.events {
            for (k, &a) in nodes.iter().enumerate() {
                for &b in &nodes[k + 1..] {
                    slots.entry((a, b)).or_default().push(slot);
                }
            }
        }
        let mut best = 0;
        for list in slots.values() {
            let mut lo = 0;
            for hi in 0..list.len() {
                while list[hi] - list[lo] >= window {
                    lo += 1;
                }
                best = best.max(hi - lo + 1);
            }
        }
        best
    }
}

/// Runs the channel for `horizon` slots.
pub fn simulate(code: &Code, nodes: &[NodeConfig], horizon: usize) -> Result<TransmissionLog> {
    let params = code.params();
    let length = params.length;
    if horizon < length {
        return Err(Error::InvalidParams(format!("horizon {horizon} is shorter than L = {length}")));
    }
    for n in nodes {
        if code.position(&n.pattern).is_none() {
            return Err(Error::UnknownCodeword);
        }
        if n.offset >= length {
            return Err(Error::TimeOutOfRange {
                time: n.offset,
                length,
            });
        }
        if n.deactivation_slot.is_some_and(|d| d <= n.activation_slot) {
            return Err(Error::InvalidParams("deactivation slot must follow activation slot".into()));
        }
    }

    let mut events: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let mut activity = Vec::with_capacity(nodes.len());
    for (id, n) in nodes.iter().enumerate() {
        let end = n.active_until(horizon);
        activity.push((n.activation_slot.min(end), end));
        for slot in n.activation_slot..end {
            let t = (slot + length - n.offset) % length;
            for &(ch, time) in n.pattern.entries() {
                if time == t {
                    events.entry((slot, ch)).or_default().push(id);
                }
            }
        }
    }
    let mut transmissions = Vec::new();
    for (&(slot, channel), ids) in &events {
        let outcome = if ids.len() == 1 {
            Outcome::Success
        } else {
            Outcome::Collision
        };
        for &node in ids {
            transmissions.push(Transmission {
                slot,
                channel,
                node,
                outcome,
            });
        }
    }
    Ok(TransmissionLog {
        horizon,
        length,
        events,
        transmissions,
        activity,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowViolation {
    pub node: usize,
    pub window_start: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GuaranteeReport {
    pub pass: bool,
    pub violations: Vec<WindowViolation>,
    /// Over all nodes and all slots `s` that start a full window: slots from
    /// `s` to the node's next success. `None` if no window fits.
    pub worst_delay: Option<usize>,
}

/// Every active node must succeed at least once in every `L` consecutive
/// slots that lie entirely inside its activity interval.
pub fn check_guarantee(log: &TransmissionLog, code: &Code, active_count_cap: usize) -> Result<GuaranteeReport> {
    let length = code.params().length;
    if log.length != length {
        return Err(Error::InvalidParams(format!(
            "log was recorded with L = {}, code has L = {length}",
            log.length
        )));
    }
    let mut delta = vec![0i64; log.horizon + 1];
    for &(a, b) in &log.activity {
        delta[a] += 1;
        delta[b] -= 1;
    }
    let mut active = 0;
    for (slot, d) in delta.iter().enumerate().take(log.horizon) {
        active += d;
        if active as usize > active_count_cap {
            return Err(Error::GuaranteeNotClaimed(format!(
                "{active} nodes active at slot {slot}, the guarantee covers at most {active_count_cap}"
            )));
        }
    }

    let mut violations = Vec::new();
    let mut worst: Option<usize> = None;
    for (node, &(a, b)) in log.activity.iter().enumerate() {
        if b < a + length {
            continue;
        }
        let mut success = vec![false; b - a];
        for s in log.successes_of(node) {
            success[s - a] = true;
        }
        // next[k]: offset from k to the first success at or after k.
        let mut next = vec![usize::MAX; b - a + 1];
        for k in (0..b - a).rev() {
            next[k] = if success[k] { 0 } else { next[k + 1].saturating_add(1) };
        }
        for start in 0..=(b - a - length) {
            let d = next[start];
            if d >= length {
                violations.push(WindowViolation {
                    node,
                    window_start: a + start,
                });
            }
            if d != usize::MAX {
                worst = Some(worst.map_or(d, |w| w.max(d)));
            } else {
                worst = Some(usize::MAX);
            }
        }
    }
    Ok(GuaranteeReport {
        pass: violations.is_empty(),
        violations,
        worst_delay: worst,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialSummary {
    pub seed: u64,
    pub trials: usize,
    pub active_count: usize,
    pub horizon: usize,
    pub passes: usize,
    pub failures: usize,
    pub worst_delay: Option<usize>,
    /// Indices of failing trials, for replay.
    pub failing_trials: Vec<usize>,
    /// Largest number of clashes between two nodes within `L` slots.
    pub max_pairwise_clashes: usize,
}

fn one_trial(code: &Code, seed: u64, trial: usize, active_count: usize) -> Result<(GuaranteeReport, usize, usize)> {
    let length = code.params().length;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    let chosen = sample(&mut rng, code.len(), active_count);
    let nodes: Vec<NodeConfig> = chosen
        .iter()
        .map(|k| NodeConfig::always(code.patterns()[k].clone(), rng.gen_range(0..length)))
        .collect();
    let log = simulate(code, &nodes, 10 * length)?;
    let report = check_guarantee(&log, code, code.params().weight)?;
    Ok((report, log.max_pairwise_clashes(length), log.max_packets_per_slot()))
}

/// Seeded random trials; each trial draws `active_count` distinct codewords
/// and uniform offsets, then runs `10 L` slots.
pub fn random_trials(code: &Code, trials: usize, seed: u64, active_count: usize, restricted: bool) -> Result<TrialSummary> {
    random_trials_jobs(code, trials, seed, active_count, restricted, 1)
}

/// As [`random_trials`], spreading trials over `jobs` threads. Each trial
/// uses its own stream of the generator, so the summary does not depend on
/// `jobs`.
pub fn random_trials_jobs(
    code: &Code,
    trials: usize,
    seed: u64,
    active_count: usize,
    restricted: bool,
    jobs: usize,
) -> Result<TrialSummary> {
    let w = code.params().weight;
    if active_count > w {
        return Err(Error::GuaranteeNotClaimed(format!(
            "{active_count} active nodes, the guarantee covers at most {w}"
        )));
    }
    if active_count > code.len() {
        return Err(Error::InvalidParams(format!(
            "{active_count} active nodes requested from a code of size {}",
            code.len()
        )));
    }
    if !verify_code(code, restricted).valid {
        return Err(Error::Validation("random trials need a valid code".into()));
    }

    let jobs = jobs.max(1).min(trials.max(1));
    let run_range = |lo: usize, hi: usize| -> Result<Vec<(usize, GuaranteeReport, usize, usize)>> {
        (lo..hi)
            .map(|t| one_trial(code, seed, t, active_count).map(|(r, c, p)| (t, r, c, p)))
            .collect()
    };
    let mut results = Vec::with_capacity(trials);
    if jobs == 1 {
        results = run_range(0, trials)?;
    } else {
        let chunk = trials.div_ceil(jobs);
        let parts: Vec<Result<Vec<_>>> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..jobs)
                .map(|j| {
                    let (lo, hi) = ((j * chunk).min(trials), ((j + 1) * chunk).min(trials));
                    s.spawn(move || run_range(lo, hi))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("trial worker panicked")).collect()
        });
        for p in parts {
            results.extend(p?);
        }
    }

    let mut summary = TrialSummary {
        seed,
        trials,
        active_count,
        horizon: 10 * code.params().length,
        passes: 0,
        failures: 0,
        worst_delay: None,
        failing_trials: Vec::new(),
        max_pairwise_clashes: 0,
    };
    for (t, report, clashes, packets) in results {
        let restricted_breach = restricted && packets > 1;
        if report.pass && !restricted_breach {
            summary.passes += 1;
        } else {
            summary.failures += 1;
            summary.failing_trials.push(t);
        }
        if let Some(d) = report.worst_delay {
            summary.worst_delay = Some(summary.worst_delay.map_or(d, |w| w.max(d)));
        }
        summary.max_pairwise_clashes = summary.max_pairwise_clashes.max(clashes);
    }
    Ok(summary)
}

/// Every `active_count`-subset of codewords under every offset vector.
/// Returns `(runs, failures)`.
pub fn exhaustive_guarantee(code: &Code, active_count: usize) -> Result<(usize, usize)> {
    let length = code.params().length;
    let n = code.len();
    let mut runs = 0;
    let mut failures = 0;
    let mut subset: Vec<usize> = (0..active_count).collect();
    if active_count > n {
        return Ok((0, 0));
    }
    loop {
        let combos = length.pow(active_count as u32);
        for c in 0..combos {
            let mut rest = c;
            let nodes: Vec<NodeConfig> = subset
                .iter()
                .map(|&k| {
                    let off = rest % length;
                    rest /= length;
                    NodeConfig::always(code.patterns()[k].clone(), off)
                })
                .collect();
            let log = simulate(code, &nodes, 10 * length)?;
            runs += 1;
            if !check_guarantee(&log, code, code.params().weight)?.pass {
                failures += 1;
            }
        }
        // Next combination in lexicographic order.
        let mut i = active_count;
        loop {
            if i == 0 {
                return Ok((runs, failures));
            }
            i -= 1;
            if subset[i] < n - active_count + i {
                break;
            }
        }
        subset[i] += 1;
        for j in i + 1..active_count {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::catalog::{example1, example6};
    use crate::pattern::CodeParams;

    fn node(code: &Code, k: usize, offset: usize) -> NodeConfig {
        NodeConfig::always(code.patterns()[k].clone(), offset)
    }

    #[test]
    fn lone_node_always_succeeds() {
        let code = example1();
        let s1 = SchedulingPattern::on_channel(0, &[0, 1, 2]).unwrap();
        let log = simulate(&code, &[NodeConfig::always(s1, 0)], 10).unwrap();
        let slots: Vec<_> = log.transmissions.iter().map(|t| (t.slot, t.channel)).collect();
        assert_eq!(slots, vec![(0, 0), (1, 0), (2, 0), (5, 0), (6, 0), (7, 0)]);
        assert!(log.transmissions.iter().all(|t| t.outcome == Outcome::Success));
    }

    #[test]
    fn one_collision_per_period() {
        let code = example1();
        // S4 = {(0,0),(1,0),(2,0)}, S5 = {(0,0),(1,1),(2,2)}
        let s4 = SchedulingPattern::new([(0, 0), (1, 0), (2, 0)]).unwrap();
        let s5 = SchedulingPattern::new([(0, 0), (1, 1), (2, 2)]).unwrap();
        let log = simulate(&code, &[NodeConfig::always(s4, 0), NodeConfig::always(s5, 0)], 5).unwrap();
        let collided: Vec<_> = log.events.iter().filter(|(_, v)| v.len() > 1).map(|(k, _)| *k).collect();
        assert_eq!(collided, vec![(0, 0)]);
    }

    #[test]
    fn disjoint_channels_never_collide() {
        let code = example1();
        for a in 0..5 {
            for b in 0..5 {
                let nodes = [node(&code, 0, 0), node(&code, 1, a), node(&code, 2, b)];
                assert_eq!(simulate(&code, &nodes, 25).unwrap().collisions(), 0);
            }
        }
    }

    #[test]
    fn unknown_codeword_rejected() {
        let code = example1();
        let stranger = SchedulingPattern::on_channel(0, &[0, 1, 3]).unwrap();
        assert_eq!(
            simulate(&code, &[NodeConfig::always(stranger, 0)], 5).unwrap_err(),
            Error::UnknownCodeword
        );
    }

    #[test]
    fn too_many_active() {
        let code = example1();
        let nodes: Vec<_> = (0..4).map(|k| node(&code, k, 0)).collect();
        let log = simulate(&code, &nodes, 50).unwrap();
        assert!(matches!(check_guarantee(&log, &code, 3), Err(Error::GuaranteeNotClaimed(_))));
    }

    #[test]
    fn invalid_code_two_nodes() {
        let params = CodeParams::new(1, 5, 3).unwrap();
        let code = Code::new(
            params,
            vec![
                SchedulingPattern::on_channel(0, &[0, 1, 2]).unwrap(),
                SchedulingPattern::on_channel(0, &[0, 2, 4]).unwrap(),
            ],
        )
        .unwrap();
        // Both packets at relative shift 0 collide twice per period, which
        // still leaves one success each: two nodes cannot break weight 3.
        let log = simulate(&code, &[node(&code, 0, 0), node(&code, 1, 0)], 50).unwrap();
        assert_eq!(log.max_pairwise_clashes(5), 2);
        let report = check_guarantee(&log, &code, 3).unwrap();
        assert!(report.pass);
        assert_eq!(report.worst_delay, Some(4));
    }

    #[test]
    fn example1_exhaustive() {
        assert_eq!(exhaustive_guarantee(&example1(), 3).unwrap(), (56 * 125, 0));
    }

    #[test]
    fn trials_pass_and_replay() {
        for code in [example1(), example6()] {
            let a = random_trials(&code, 300, 7, 3, false).unwrap();
            assert_eq!(a.passes, 300);
            assert!(a.worst_delay.unwrap() < code.params().length);
            assert!(a.max_pairwise_clashes <= 1);
            assert_eq!(a, random_trials_jobs(&code, 300, 7, 3, false, 4).unwrap());
        }
    }

    #[test]
    fn zero_trials() {
        let s = random_trials(&example1(), 0, 1, 3, false).unwrap();
        assert_eq!((s.passes, s.failures, s.worst_delay), (0, 0, None));
    }

    #[test]
    fn active_count_above_weight() {
        assert!(matches!(
            random_trials(&example1(), 5, 1, 4, false),
            Err(Error::GuaranteeNotClaimed(_))
        ));
    }

    #[test]
    fn mid_run_activation_windows() {
        let code = example1();
        let mut n = node(&code, 3, 2);
        n.activation_slot = 3;
        n.deactivation_slot = Some(9);
        let log = simulate(&code, &[n], 20).unwrap();
        assert_eq!(log.activity, vec![(3, 9)]);
        assert!(log.transmissions.iter().all(|t| (3..9).contains(&t.slot)));
        assert!(check_guarantee(&log, &code, 3).unwrap().pass);
    }
}
