//! Pattern types for weights 3 and 4, closed-form sizes of same-channel
//! difference sets, and per-type codeword counts.

use std::collections::BTreeMap;
use std::fmt;

use crate::code::Code;
use crate::error::{Error, Result};
use crate::pattern::SchedulingPattern;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeTag {
    /// Weight 3, one channel.
    W3I,
    /// Weight 3, three channels.
    W3II,
    /// Weight 3, two packets in one channel and one in another.
    W3III,
    /// Weight 4, one channel.
    W4I,
    /// Weight 4, four channels.
    W4II,
    /// Weight 4, split 3 + 1.
    W4III,
    /// Weight 4, split 2 + 2.
    W4IV,
    /// Weight 4, split 2 + 1 + 1.
    W4V,
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeTag::W3I => "W3-I",
            TypeTag::W3II => "W3-II",
            TypeTag::W3III => "W3-III",
            TypeTag::W4I => "W4-I",
            TypeTag::W4II => "W4-II",
            TypeTag::W4III => "W4-III",
            TypeTag::W4IV => "W4-IV",
            TypeTag::W4V => "W4-V",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternType {
    pub tag: TypeTag,
    /// Channel occupancy, largest part first.
    pub partition: Vec<usize>,
}

fn occupancy(pattern: &SchedulingPattern) -> Vec<(usize, usize)> {
    // (channel, count) in channel order
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &(m, _) in pattern.entries() {
        match out.last_mut() {
            Some((c, n)) if *c == m => *n += 1,
            _ => out.push((m, 1)),
        }
    }
    out
}

pub fn classify(pattern: &SchedulingPattern) -> Result<PatternType> {
    let mut partition: Vec<usize> = occupancy(pattern).iter().map(|&(_, n)| n).collect();
    partition.sort_unstable_by(|a, b| b.cmp(a));
    let tag = match (pattern.weight(), partition.as_slice()) {
        (3, [3]) => TypeTag::W3I,
        (3, [1, 1, 1]) => TypeTag::W3II,
        (3, [2, 1]) => TypeTag::W3III,
        (4, [4]) => TypeTag::W4I,
        (4, [1, 1, 1, 1]) => TypeTag::W4II,
        (4, [3, 1]) => TypeTag::W4III,
        (4, [2, 2]) => TypeTag::W4IV,
        (4, [2, 1, 1]) => TypeTag::W4V,
        (w, _) => return Err(Error::ClassificationUnsupported(w)),
    };
    Ok(PatternType { tag, partition })
}

fn diff(a: usize, b: usize, length: usize) -> usize {
    (a + length - b) % length
}

/// True when the three times form an arithmetic progression mod `length`.
pub fn is_equi_difference3(times: [usize; 3], length: usize) -> bool {
    (0..3).any(|mid| {
        let (x, y) = (times[(mid + 1) % 3], times[(mid + 2) % 3]);
        (x + y) % length == (2 * times[mid]) % length
    })
}

fn has_half_difference(times: &[usize], length: usize) -> bool {
    length.is_multiple_of(2)
        && times
            .iter()
            .enumerate()
            .any(|(k, &a)| times[k + 1..].iter().any(|&b| diff(a, b, length) == length / 2))
}

fn all_differences_multiple_of(times: &[usize], step: usize, length: usize) -> bool {
    times
        .iter()
        .all(|&a| times.iter().all(|&b| diff(a, b, length).is_multiple_of(step)))
}

/// `|D_S(m, m)|` for three packets on one channel, read off the case table
/// rather than counted: 2 for the `L/3` progression, 3 for the `L/4`
/// progression, 5 if some pair is `L/2` apart, 6 for a non-progression with no
/// such pair, 4 otherwise.
pub fn same_channel_size_w3(times: [usize; 3], length: usize) -> usize {
    if length.is_multiple_of(3) && all_differences_multiple_of(&times, length / 3, length) {
        2
    } else if length.is_multiple_of(4)
        && all_differences_multiple_of(&times, length / 4, length)
        && is_equi_difference3(times, length)
    {
        3
    } else if has_half_difference(&times, length) {
        5
    } else if !is_equi_difference3(times, length) {
        6
    } else {
        4
    }
}

/// `|D_S(m1, m1)|` for a pattern with two packets on `m1` and one elsewhere.
pub fn split_diagonal_size_w3(t1: usize, t2: usize, length: usize) -> usize {
    if length.is_multiple_of(2) && diff(t1, t2, length) == length / 2 {
        1
    } else {
        2
    }
}

/// Same-channel weight-4 patterns whose difference set has fewer than six
/// elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShortFamily {
    /// The full coset `{0, L/4, L/2, 3L/4}`.
    Quarters,
    /// Four of the five multiples of `L/5`.
    Fifths,
    /// Two cosets of `{0, L/2}`, i.e. `{0, a, L/2, L/2 + a}` with `a != L/4`.
    HalfPairs,
    /// Four of the six multiples of `L/6` not covered above, such as
    /// `{0, L/6, L/3, L/2}` or `{0, L/6, L/2, 5L/6}`. Like `HalfPairs`,
    /// their differences always include `L/2`.
    Sixths,
}

impl ShortFamily {
    pub fn difference_count(self) -> usize {
        match self {
            ShortFamily::Quarters => 3,
            ShortFamily::Fifths => 4,
            ShortFamily::HalfPairs | ShortFamily::Sixths => 5,
        }
    }
}

pub fn short_family_w4(times: [usize; 4], length: usize) -> Option<ShortFamily> {
    if length.is_multiple_of(4) && all_differences_multiple_of(&times, length / 4, length) {
        return Some(ShortFamily::Quarters);
    }
    if length.is_multiple_of(5) && all_differences_multiple_of(&times, length / 5, length) {
        return Some(ShortFamily::Fifths);
    }
    if length.is_multiple_of(2)
        && times
            .iter()
            .all(|&t| times.contains(&((t + length / 2) % length)))
    {
        return Some(ShortFamily::HalfPairs);
    }
    if length.is_multiple_of(6) && all_differences_multiple_of(&times, length / 6, length) {
        return Some(ShortFamily::Sixths);
    }
    None
}

/// Keys of the per-type counts used in the weight-3 and weight-4 counting
/// arguments.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CensusKey {
    /// All packets on one channel (`N_i`).
    Single(usize),
    /// Weight 3: two packets on `pair`, one on `single` (`N_{pair,single}`).
    PairSingle { pair: usize, single: usize },
    /// Weight 4: one packet on `single`, three on `triple` (`N_{single,triple}`).
    SingleTriple { single: usize, triple: usize },
    /// Weight 4: two packets on each of two channels (`N_{{a,b}}`), `a < b`.
    TwoPairs(usize, usize),
    /// Weight 4: two packets on `pair`, one each on `others` (`N_{pair,{j,k}}`).
    PairTwoSingles { pair: usize, others: (usize, usize) },
    /// All packets on distinct channels (`N_A`, `N_B`), sorted.
    Distinct(Vec<usize>),
}

/// Counts of codewords per census key. Keys with zero count are omitted, so
/// an empty code gives an empty map.
pub fn type_census(code: &Code) -> Result<BTreeMap<CensusKey, usize>> {
    let w = code.params().weight;
    if w != 3 && w != 4 {
        return Err(Error::ClassificationUnsupported(w));
    }
    let mut out = BTreeMap::new();
    for p in code.patterns() {
        let occ = occupancy(p);
        let by_count = |n: usize| -> Vec<usize> {
            occ.iter().filter(|&&(_, c)| c == n).map(|&(m, _)| m).collect()
        };
        let key = match classify(p)?.tag {
            TypeTag::W3I | TypeTag::W4I => CensusKey::Single(occ[0].0),
            TypeTag::W3II | TypeTag::W4II => CensusKey::Distinct(by_count(1)),
            TypeTag::W3III => CensusKey::PairSingle {
                pair: by_count(2)[0],
                single: by_count(1)[0],
            },
            TypeTag::W4III => CensusKey::SingleTriple {
                single: by_count(1)[0],
                triple: by_count(3)[0],
            },
            TypeTag::W4IV => {
                let two = by_count(2);
                CensusKey::TwoPairs(two[0], two[1])
            }
            TypeTag::W4V => {
                let ones = by_count(1);
                CensusKey::PairTwoSingles {
                    pair: by_count(2)[0],
                    others: (ones[0], ones[1]),
                }
            }
        };
        *out.entry(key).or_insert(0) += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(e: &[(usize, usize)]) -> SchedulingPattern {
        SchedulingPattern::new(e.iter().copied()).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify(&pat(&[(0, 0), (0, 1), (0, 2)])).unwrap().tag,
            TypeTag::W3I
        );
        let t = classify(&pat(&[(0, 0), (1, 0), (2, 5), (3, 7)])).unwrap();
        assert_eq!(t.tag, TypeTag::W4II);
        let t = classify(&pat(&[(0, 0), (0, 2), (1, 1), (1, 4)])).unwrap();
        assert_eq!(t.tag, TypeTag::W4IV);
        assert_eq!(t.partition, vec![2, 2]);
        let t = classify(&pat(&[(0, 0), (0, 2), (1, 1), (3, 4)])).unwrap();
        assert_eq!(t.tag, TypeTag::W4V);
        assert_eq!(
            classify(&pat(&[(1, 0), (0, 2), (1, 1)])).unwrap().partition,
            vec![2, 1]
        );
    }

    #[test]
    fn classify_rejects_other_weights() {
        assert_eq!(
            classify(&pat(&[(0, 0), (1, 1)])),
            Err(Error::ClassificationUnsupported(2))
        );
    }

    #[test]
    fn size_table_w3() {
        assert_eq!(same_channel_size_w3([0, 4, 8], 12), 2);
        assert_eq!(same_channel_size_w3([0, 3, 6], 12), 3);
        assert_eq!(same_channel_size_w3([0, 1, 6], 12), 5);
        assert_eq!(same_channel_size_w3([0, 1, 3], 7), 6);
        assert_eq!(same_channel_size_w3([0, 1, 2], 13), 4);
        assert_eq!(split_diagonal_size_w3(0, 3, 6), 1);
        assert_eq!(split_diagonal_size_w3(0, 2, 6), 2);
    }

    #[test]
    fn short_families_w4() {
        assert_eq!(short_family_w4([0, 3, 6, 9], 12), Some(ShortFamily::Quarters));
        assert_eq!(short_family_w4([0, 2, 4, 8], 10), Some(ShortFamily::Fifths));
        assert_eq!(short_family_w4([0, 1, 6, 7], 12), Some(ShortFamily::HalfPairs));
        assert_eq!(short_family_w4([0, 2, 4, 6], 12), Some(ShortFamily::Sixths));
        assert_eq!(short_family_w4([0, 2, 6, 10], 12), Some(ShortFamily::Sixths));
        assert_eq!(short_family_w4([0, 1, 2, 3], 12), None);
    }
}
