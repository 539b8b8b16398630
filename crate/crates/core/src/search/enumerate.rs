//! Canonical representatives of all weight-`w` patterns.

use crate::error::{Error, Result};
use crate::pattern::{CodeParams, SchedulingPattern};

/// Limits on exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceCap {
    pub max_positions: usize,
    pub max_weight: usize,
}

impl Default for InstanceCap {
    fn default() -> Self {
        InstanceCap {
            max_positions: 64,
            max_weight: 4,
        }
    }
}

/// One representative per shift class, in lexicographic order.
///
/// A canonical pattern always contains `(m0, 0)` for its smallest channel
/// `m0`, so only subsets with that least element are generated.
pub fn enumerate_patterns(params: &CodeParams, restricted: bool, cap: InstanceCap) -> Result<Vec<SchedulingPattern>> {
    let (m, l, w) = (params.channels, params.length, params.weight);
    if m * l > cap.max_positions || w > cap.max_weight {
        return Err(Error::InstanceTooLarge(format!(
            "{params}: M*L = {} (cap {}), w = {w} (cap {})",
            m * l,
            cap.max_positions,
            cap.max_weight
        )));
    }
    let positions = m * l;
    let mut out = Vec::new();
    let mut rest = Vec::with_capacity(w);
    for m0 in 0..m {
        let first = m0 * l;
        rest.clear();
        rest.push(first);
        extend(first + 1, positions, w, &mut rest, &mut |idx: &[usize]| {
            let p = SchedulingPattern::new(idx.iter().map(|&x| (x / l, x % l))).expect("distinct positions");
            if p.is_canonical(l) && (!restricted || p.is_single_transmitter()) {
                out.push(p);
            }
        });
    }
    out.sort();
    Ok(out)
}

fn extend(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in start..n {
        if n - i < k - cur.len() {
            break;
        }
        cur.push(i);
        extend(i + 1, n, k, cur, f);
        cur.pop();
    }
}

/// Number of distinct time shifts of `pattern`.
pub fn orbit_size(pattern: &SchedulingPattern, length: usize) -> usize {
    (1..length)
        .find(|&tau| pattern.shift(tau, length) == *pattern)
        .unwrap_or(length)
}
