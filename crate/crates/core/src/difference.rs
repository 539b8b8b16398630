//! Sets and arrays of differences.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::pattern::{CodeParams, SchedulingPattern};

/// `D_S(i1, i2)`: time differences `t1 - t2 mod L` between entries on
/// channel `i1` and channel `i2`, with zero removed on the diagonal.
pub fn difference_set(
    pattern: &SchedulingPattern,
    i1: usize,
    i2: usize,
    channels: usize,
    length: usize,
) -> Result<BTreeSet<usize>> {
    for &ch in &[i1, i2] {
        if ch >= channels {
            return Err(Error::ChannelOutOfRange {
                channel: ch,
                channels,
            });
        }
    }
    let first = pattern.times_on(i1);
    let second = pattern.times_on(i2);
    let mut out = BTreeSet::new();
    for &t1 in &first {
        for &t2 in &second {
            let d = (t1 + length - t2 % length) % length;
            if i1 != i2 || d != 0 {
                out.insert(d);
            }
        }
    }
    Ok(out)
}

/// The `M x M` array of difference sets of one pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceArray {
    channels: usize,
    length: usize,
    cells: Vec<BTreeSet<usize>>,
}

impl DifferenceArray {
    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn cell(&self, i1: usize, i2: usize) -> &BTreeSet<usize> {
        &self.cells[i1 * self.channels + i2]
    }

    /// Sum of all cell sizes.
    pub fn total_size(&self) -> usize {
        self.cells.iter().map(BTreeSet::len).sum()
    }

    /// Cells that share an element with `other`, as `(i1, i2, d)`.
    pub fn intersection(&self, other: &DifferenceArray) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for i1 in 0..self.channels {
            for i2 in 0..self.channels {
                for &d in self.cell(i1, i2).intersection(other.cell(i1, i2)) {
                    out.push((i1, i2, d));
                }
            }
        }
        out
    }

    pub fn is_disjoint(&self, other: &DifferenceArray) -> bool {
        self.cells
            .iter()
            .zip(&other.cells)
            .all(|(a, b)| a.is_disjoint(b))
    }
}

pub fn difference_array(pattern: &SchedulingPattern, params: &CodeParams) -> Result<DifferenceArray> {
    pattern.check(params)?;
    let m = params.channels;
    let mut cells = Vec::with_capacity(m * m);
    for i1 in 0..m {
        for i2 in 0..m {
            cells.push(difference_set(pattern, i1, i2, m, params.length)?);
        }
    }
    Ok(DifferenceArray {
        channels: m,
        length: params.length,
        cells,
    })
}

/// Cell sizes `|D_S(i1, i2)|`, listing only the non-empty cells.
pub fn difference_profile(
    pattern: &SchedulingPattern,
    params: &CodeParams,
) -> Result<BTreeMap<(usize, usize), usize>> {
    let array = difference_array(pattern, params)?;
    let mut out = BTreeMap::new();
    for i1 in 0..params.channels {
        for i2 in 0..params.channels {
            let n = array.cell(i1, i2).len();
            if n > 0 {
                out.insert((i1, i2), n);
            }
        }
    }
    Ok(out)
}

/// Flat indices `(i1 * M + i2) * L + d` of every element of every cell.
///
/// Two patterns violate disjointness exactly when their index lists meet.
/// The pattern is assumed to fit `params`.
pub fn difference_indices(pattern: &SchedulingPattern, params: &CodeParams) -> Vec<usize> {
    let (m, l) = (params.channels, params.length);
    let mut out = Vec::with_capacity(pattern.weight() * pattern.weight());
    for &(i1, t1) in pattern.entries() {
        for &(i2, t2) in pattern.entries() {
            let d = (t1 + l - t2) % l;
            if i1 == i2 && d == 0 {
                continue;
            }
            out.push((i1 * m + i2) * l + d);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Inverse of the flat index used by [`difference_indices`].
pub fn decode_index(index: usize, params: &CodeParams) -> (usize, usize, usize) {
    let (m, l) = (params.channels, params.length);
    let d = index % l;
    let cell = index / l;
    (cell / m, cell % m, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(m: usize, l: usize, w: usize) -> CodeParams {
        CodeParams::new(m, l, w).unwrap()
    }

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn fig2_s7_cell() {
        let s7 = SchedulingPattern::new([(0, 0), (1, 3), (2, 1)]).unwrap();
        assert_eq!(difference_set(&s7, 0, 1, 3, 5).unwrap(), set(&[2]));
    }

    #[test]
    fn fig2_s1_diagonal() {
        let s1 = SchedulingPattern::on_channel(0, &[0, 1, 2]).unwrap();
        assert_eq!(difference_set(&s1, 0, 0, 3, 5).unwrap(), set(&[1, 2, 3, 4]));
    }

    #[test]
    fn one_entry_per_channel_has_empty_diagonal() {
        let s = SchedulingPattern::new([(0, 0), (1, 1), (2, 2)]).unwrap();
        assert!(difference_set(&s, 0, 0, 3, 5).unwrap().is_empty());
    }

    #[test]
    fn channel_out_of_range() {
        let s = SchedulingPattern::new([(0, 0), (1, 1), (2, 2)]).unwrap();
        assert!(matches!(
            difference_set(&s, 0, 3, 3, 5),
            Err(Error::ChannelOutOfRange { channel: 3, .. })
        ));
    }

    #[test]
    fn fig2_s5_array() {
        let s5 = SchedulingPattern::new([(0, 0), (1, 1), (2, 2)]).unwrap();
        let a = difference_array(&s5, &params(3, 5, 3)).unwrap();
        assert_eq!(a.cell(0, 1), &set(&[4]));
        assert_eq!(a.cell(0, 2), &set(&[3]));
        assert_eq!(a.cell(1, 0), &set(&[1]));
        assert_eq!(a.cell(1, 2), &set(&[4]));
        assert_eq!(a.cell(2, 0), &set(&[2]));
        assert_eq!(a.cell(2, 1), &set(&[1]));
        for i in 0..3 {
            assert!(a.cell(i, i).is_empty());
        }
    }

    #[test]
    fn fig2_s4_array() {
        let s4 = SchedulingPattern::new([(0, 0), (1, 0), (2, 0)]).unwrap();
        let a = difference_array(&s4, &params(3, 5, 3)).unwrap();
        for i1 in 0..3 {
            for i2 in 0..3 {
                if i1 == i2 {
                    assert!(a.cell(i1, i2).is_empty());
                } else {
                    assert_eq!(a.cell(i1, i2), &set(&[0]));
                }
            }
        }
    }

    #[test]
    fn weight_one_array_is_empty() {
        let s = SchedulingPattern::new([(0, 0)]).unwrap();
        let a = difference_array(&s, &params(3, 5, 1)).unwrap();
        assert_eq!(a.total_size(), 0);
    }

    #[test]
    fn profile_examples() {
        let p = SchedulingPattern::on_channel(0, &[0, 4, 8]).unwrap();
        assert_eq!(difference_profile(&p, &params(1, 12, 3)).unwrap()[&(0, 0)], 2);

        let p = SchedulingPattern::new([(0, 0), (0, 3), (1, 1)]).unwrap();
        assert_eq!(difference_profile(&p, &params(2, 6, 3)).unwrap()[&(0, 0)], 1);

        let p = SchedulingPattern::on_channel(0, &[0, 1, 3]).unwrap();
        assert_eq!(difference_profile(&p, &params(1, 7, 3)).unwrap()[&(0, 0)], 6);
    }

    #[test]
    fn indices_match_array() {
        let p = SchedulingPattern::new([(0, 0), (0, 2), (1, 1), (2, 4)]).unwrap();
        let pr = params(3, 7, 4);
        let a = difference_array(&p, &pr).unwrap();
        let idx = difference_indices(&p, &pr);
        assert_eq!(idx.len(), a.total_size());
        for &x in &idx {
            let (i1, i2, d) = decode_index(x, &pr);
            assert!(a.cell(i1, i2).contains(&d));
        }
    }
}
