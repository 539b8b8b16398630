//! Single-channel conflict-avoiding codes.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exact_cover::{ExactCover, SearchResult};
use crate::numtheory::{is_prime, quadratic_residue};
use crate::pattern::SchedulingPattern;

/// A CAC of length `L` and weight `w`: time patterns whose same-channel
/// difference sets are pairwise disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cac {
    pub length: usize,
    pub weight: usize,
    /// Sorted time sets.
    pub patterns: Vec<Vec<usize>>,
    pub equi_difference: bool,
    /// Normalized generator `min(a, L - a)` of each pattern when equi-difference.
    pub generators: Option<Vec<usize>>,
}

/// Nonzero differences of a time set.
pub fn cac_differences(times: &[usize], length: usize) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for &a in times {
        for &b in times {
            if a != b {
                out.insert((a + length - b) % length);
            }
        }
    }
    out
}

/// `{0, a, 2a, ..., (w-1)a}` sorted, or `None` if the elements are not distinct.
pub fn equi_difference_pattern(generator: usize, weight: usize, length: usize) -> Option<Vec<usize>> {
    let mut times: Vec<usize> = (0..weight).map(|k| k * generator % length).collect();
    times.sort_unstable();
    let before = times.len();
    times.dedup();
    (times.len() == before).then_some(times)
}

pub fn normalize_generator(a: usize, length: usize) -> usize {
    let a = a % length;
    a.min(length - a)
}

impl Cac {
    /// Builds an equi-difference CAC from generators (not checked for validity).
    pub fn from_generators(length: usize, weight: usize, generators: &[usize]) -> Result<Self> {
        let mut patterns = Vec::with_capacity(generators.len());
        let mut gens = Vec::with_capacity(generators.len());
        for &a in generators {
            let p = equi_difference_pattern(a, weight, length).ok_or_else(|| {
                Error::InvalidParams(format!("generator {a} gives repeated times mod {length}"))
            })?;
            patterns.push(p);
            gens.push(normalize_generator(a, length));
        }
        Ok(Cac {
            length,
            weight,
            patterns,
            equi_difference: true,
            generators: Some(gens),
        })
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// The pattern as a scheduling pattern on `channel`.
    pub fn on_channel(&self, index: usize, channel: usize) -> SchedulingPattern {
        SchedulingPattern::on_channel(channel, &self.patterns[index]).expect("CAC patterns have distinct times")
    }
}

/// Disjointness of difference sets, pattern shape, and the generator form
/// for equi-difference codes.
pub fn verify_cac(cac: &Cac) -> bool {
    let l = cac.length;
    let mut used = vec![false; l];
    for (k, p) in cac.patterns.iter().enumerate() {
        let distinct: BTreeSet<usize> = p.iter().copied().collect();
        if p.len() != cac.weight || distinct.len() != p.len() || p.iter().any(|&t| t >= l) {
            return false;
        }
        for d in cac_differences(p, l) {
            if used[d] {
                return false;
            }
            used[d] = true;
        }
        if cac.equi_difference {
            let Some(gens) = &cac.generators else {
                return false;
            };
            let Some(&a) = gens.get(k) else {
                return false;
            };
            match equi_difference_pattern(a, cac.weight, l) {
                Some(expected) if cac_differences(&expected, l) == cac_differences(p, l) => {
                    // the pattern must be a shift of {0, a, ..., (w-1)a}
                    let shifted = (0..l).any(|tau| {
                        let mut s: Vec<usize> = expected.iter().map(|&t| (t + tau) % l).collect();
                        s.sort_unstable();
                        s == *p
                    });
                    if !shifted {
                        return false;
                    }
                }
                _ => return false,
            }
        }
    }
    true
}

/// Equi-difference and every nonzero element of `Z_L` is a difference.
pub fn is_tight(cac: &Cac) -> bool {
    if !cac.equi_difference || !verify_cac(cac) {
        return false;
    }
    let covered: usize = cac
        .patterns
        .iter()
        .map(|p| cac_differences(p, cac.length).len())
        .sum();
    covered == cac.length - 1
}

/// Exact search for an equi-difference tight CAC(L, w).
///
/// Candidate generators are `1..=L/2` in ascending order; a solution is an
/// exact cover of `Z_L \ {0}` by their difference sets.
pub fn search_equi_diff_tight_cac(length: usize, weight: usize, budget: u64) -> Result<SearchResult<Cac>> {
    if weight != 3 && weight != 4 {
        return Err(Error::UnsupportedWeight(weight));
    }
    if length < weight {
        return Err(Error::InvalidParams(format!(
            "length {length} is shorter than weight {weight}"
        )));
    }
    let mut gens = Vec::new();
    let mut options = Vec::new();
    for a in 1..=length / 2 {
        if let Some(p) = equi_difference_pattern(a, weight, length) {
            gens.push(a);
            options.push(cac_differences(&p, length).into_iter().map(|d| d - 1).collect());
        }
    }
    let ec = ExactCover::new(length - 1, 0, options);
    let mut nodes = 0;
    let result = ec.solve(budget, &mut nodes);
    Ok(match result {
        SearchResult::Found(mut picked) => {
            picked.sort_unstable();
            let chosen: Vec<usize> = picked.iter().map(|&k| gens[k]).collect();
            SearchResult::Found(Cac::from_generators(length, weight, &chosen)?)
        }
        SearchResult::NotFound => SearchResult::NotFound,
        SearchResult::ProvenNonexistent => SearchResult::ProvenNonexistent,
    })
}

fn non_residue(a: i64, p: u64) -> Result<bool> {
    Ok(a.rem_euclid(p as i64) != 0 && !quadratic_residue(a, p)?)
}

/// True for odd primes `t > 3` where `-1` and `-3` are quadratic non-residues.
pub fn momihara_hypothesis(t: u64) -> bool {
    t > 3
        && is_prime(t)
        && non_residue(-1, t).unwrap_or(false)
        && non_residue(-3, t).unwrap_or(false)
}

const MOMIHARA_BUDGET: u64 = 50_000_000;

/// A CAC(2t, 3) with `(t-1)/2` codewords.
///
/// Found by exact cover: every codeword must use four differences other
/// than `t`, so `(t-1)/2` of them cover `Z_2t \ {0, t}` exactly, with `t`
/// itself used at most once.
pub fn momihara_cac(t: u64) -> Result<Cac> {
    if !momihara_hypothesis(t) {
        return Err(Error::HypothesisNotMet(format!(
            "{t} is not a prime > 3 with -1 and -3 both quadratic non-residues"
        )));
    }
    let t = t as usize;
    let length = 2 * t;
    // primary items: nonzero d != t, secondary item: t
    let item = |d: usize| -> usize {
        if d == t {
            length - 2
        } else if d < t {
            d - 1
        } else {
            d - 2
        }
    };
    let mut candidates = BTreeSet::new();
    for a in 1..length {
        for b in (a + 1)..length {
            let p = SchedulingPattern::on_channel(0, &[0, a, b]).expect("distinct");
            candidates.insert(p.canonicalize(length));
        }
    }
    let mut times_list = Vec::new();
    let mut options = Vec::new();
    for p in candidates {
        let times: Vec<usize> = p.entries().iter().map(|&(_, x)| x).collect();
        let diffs = cac_differences(&times, length);
        if diffs.iter().filter(|&&d| d != t).count() != 4 {
            continue;
        }
        options.push(diffs.iter().map(|&d| item(d)).collect());
        times_list.push(times);
    }
    let ec = ExactCover::new(length - 2, 1, options);
    let mut nodes = 0;
    match ec.solve(MOMIHARA_BUDGET, &mut nodes) {
        SearchResult::Found(mut picked) => {
            picked.sort_unstable();
            let patterns: Vec<Vec<usize>> = picked.iter().map(|&k| times_list[k].clone()).collect();
            let cac = Cac {
                length,
                weight: 3,
                patterns,
                equi_difference: false,
                generators: None,
            };
            if cac.len() != (t - 1) / 2 || !verify_cac(&cac) {
                return Err(Error::Internal(format!("CAC({length},3) search returned an invalid code")));
            }
            Ok(cac)
        }
        SearchResult::NotFound => Err(Error::Internal(format!(
            "CAC({length},3) with {} codewords not found within {MOMIHARA_BUDGET} nodes",
            (t - 1) / 2
        ))),
        SearchResult::ProvenNonexistent => Err(Error::Internal(format!(
            "no CAC({length},3) with {} codewords exists, contradicting the existence theorem",
            (t - 1) / 2
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn found(l: usize, w: usize) -> Cac {
        search_equi_diff_tight_cac(l, w, 1_000_000).unwrap().found().unwrap()
    }

    #[test]
    fn example2_generators() {
        let c = found(13, 3);
        assert_eq!(c.generators, Some(vec![1, 3, 4]));
        assert_eq!(c.patterns, vec![vec![0, 1, 2], vec![0, 3, 6], vec![0, 4, 8]]);
        assert!(is_tight(&c));
    }

    #[test]
    fn length5() {
        assert_eq!(found(5, 3).generators, Some(vec![1]));
    }

    #[test]
    fn length7_nonexistent() {
        assert_eq!(
            search_equi_diff_tight_cac(7, 3, 1_000_000).unwrap(),
            SearchResult::ProvenNonexistent
        );
    }

    #[test]
    fn length7_by_enumeration() {
        // Oracle: every subset of candidate generators, checked for a partition.
        let l = 7;
        let cands: Vec<BTreeSet<usize>> = (1..=l / 2)
            .filter_map(|a| equi_difference_pattern(a, 3, l))
            .map(|p| cac_differences(&p, l))
            .collect();
        let any = (0u32..(1 << cands.len())).any(|mask| {
            let mut seen = BTreeSet::new();
            let mut total = 0;
            for (k, d) in cands.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    total += d.len();
                    seen.extend(d.iter().copied());
                }
            }
            total == l - 1 && seen.len() == l - 1
        });
        assert!(!any);
    }

    #[test]
    fn unsupported_weight() {
        assert_eq!(
            search_equi_diff_tight_cac(13, 5, 10),
            Err(Error::UnsupportedWeight(5))
        );
    }

    #[test]
    fn budget_is_distinct_from_nonexistence() {
        assert_eq!(
            search_equi_diff_tight_cac(101, 3, 3).unwrap(),
            SearchResult::NotFound
        );
    }

    #[test]
    fn momihara_counts() {
        let c = momihara_cac(11).unwrap();
        assert_eq!(c.len(), 5);
        assert_eq!(c.length, 22);
        assert!(verify_cac(&c));
        assert!(matches!(momihara_cac(5), Err(Error::HypothesisNotMet(_))));
        assert!(matches!(momihara_cac(7), Err(Error::HypothesisNotMet(_))));
        assert!(matches!(momihara_cac(3), Err(Error::HypothesisNotMet(_))));
    }

    #[test]
    fn verify_rejects_overlap() {
        let c = Cac {
            length: 5,
            weight: 3,
            patterns: vec![vec![0, 1, 2], vec![0, 2, 4]],
            equi_difference: false,
            generators: None,
        };
        assert!(!verify_cac(&c));
    }

    #[test]
    fn hypothesis_is_11_mod_12() {
        for t in 5..200u64 {
            if is_prime(t) {
                assert_eq!(momihara_hypothesis(t), t % 12 == 11, "t={t}");
            }
        }
    }
}
