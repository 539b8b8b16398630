//! Codes and the two independent validity checks.
//!
//! [`verify_code`] works on arrays of differences: a set of patterns is a
//! valid code exactly when, cell by cell, the difference sets of distinct
//! patterns are disjoint. [`verify_definitional`] evaluates the cyclic
//! cross-correlation of every pair of codewords at every shift. The two must
//! always agree on validity.

use std::collections::HashSet;
use std::fmt;

use crate::difference::{decode_index, difference_indices};
use crate::error::{Error, Result};
use crate::pattern::{CodeParams, SchedulingPattern};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code {
    params: CodeParams,
    patterns: Vec<SchedulingPattern>,
}

impl Code {
    /// Canonicalizes every pattern and rejects wrong weights, out-of-range
    /// entries and repeated codewords.
    pub fn new(params: CodeParams, patterns: Vec<SchedulingPattern>) -> Result<Self> {
        let mut seen = std::collections::HashMap::new();
        let mut canon = Vec::with_capacity(patterns.len());
        for (index, p) in patterns.into_iter().enumerate() {
            p.check(&params)?;
            if p.weight() != params.weight {
                return Err(Error::WeightMismatch {
                    index,
                    found: p.weight(),
                    expected: params.weight,
                });
            }
            let c = p.canonicalize(params.length);
            if let Some(&prev) = seen.get(&c) {
                return Err(Error::DuplicatePattern(prev, index));
            }
            seen.insert(c.clone(), index);
            canon.push(c);
        }
        Ok(Code {
            params,
            patterns: canon,
        })
    }

    /// Keeps the patterns as given; only channel and time ranges are checked.
    /// Used for codes under test, which may have wrong weights or repeats.
    pub fn unchecked(params: CodeParams, patterns: Vec<SchedulingPattern>) -> Result<Self> {
        for p in &patterns {
            p.check(&params)?;
        }
        Ok(Code { params, patterns })
    }

    pub fn empty(params: CodeParams) -> Self {
        Code {
            params,
            patterns: Vec::new(),
        }
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn patterns(&self) -> &[SchedulingPattern] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// Index of the codeword whose shift class contains `pattern`.
    pub fn position(&self, pattern: &SchedulingPattern) -> Option<usize> {
        let c = pattern.canonicalize(self.params.length);
        self.patterns
            .iter()
            .position(|p| p.canonicalize(self.params.length) == c)
    }

    /// Concatenation of two codes with equal parameters.
    pub fn union(&self, other: &Code) -> Result<Code> {
        if self.params != other.params {
            return Err(Error::InvalidParams(format!(
                "cannot join codes with parameters {} and {}",
                self.params, other.params
            )));
        }
        let mut patterns = self.patterns.clone();
        patterns.extend(other.patterns.iter().cloned());
        Code::new(self.params, patterns)
    }
}

/// Which check produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMethod {
    Disjointness,
    CrossCorrelation,
}

impl fmt::Display for VerifyMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyMethod::Disjointness => write!(f, "difference-array disjointness"),
            VerifyMethod::CrossCorrelation => write!(f, "cross-correlation"),
        }
    }
}

/// Two patterns share difference `difference` in cell `channels`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Conflict {
    pub first: usize,
    pub second: usize,
    pub channels: (usize, usize),
    pub difference: usize,
}

/// Two codewords overlap in `overlap > 1` positions at relative shift `shift`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct CorrelationViolation {
    pub first: usize,
    pub second: usize,
    pub shift: usize,
    pub overlap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub valid: bool,
    pub weight_violations: Vec<usize>,
    pub conflicts: Vec<Conflict>,
    pub correlation_violations: Vec<CorrelationViolation>,
    /// Restricted mode only: patterns sending two packets in one slot.
    pub column_violations: Vec<usize>,
    pub method: VerifyMethod,
}

impl VerificationReport {
    fn finish(mut self) -> Self {
        self.valid = self.weight_violations.is_empty()
            && self.conflicts.is_empty()
            && self.correlation_violations.is_empty()
            && self.column_violations.is_empty();
        self
    }

    fn start(method: VerifyMethod) -> Self {
        VerificationReport {
            valid: false,
            weight_violations: Vec::new(),
            conflicts: Vec::new(),
            correlation_violations: Vec::new(),
            column_violations: Vec::new(),
            method,
        }
    }
}

fn shape_checks(code: &Code, restricted: bool, report: &mut VerificationReport) {
    let w = code.params.weight;
    for (k, p) in code.patterns.iter().enumerate() {
        if p.weight() != w {
            report.weight_violations.push(k);
        }
        if restricted && !p.is_single_transmitter() {
            report.column_violations.push(k);
        }
    }
}

/// Disjointness check on arrays of differences. Every conflicting pair is
/// reported, once per shared `(cell, difference)`.
pub fn verify_code(code: &Code, restricted: bool) -> VerificationReport {
    let mut report = VerificationReport::start(VerifyMethod::Disjointness);
    shape_checks(code, restricted, &mut report);

    let params = code.params;
    let cells = params.channels * params.channels * params.length;
    let mut owners: Vec<Vec<usize>> = vec![Vec::new(); cells];
    for (k, p) in code.patterns.iter().enumerate() {
        for idx in difference_indices(p, &params) {
            owners[idx].push(k);
        }
    }
    for (idx, list) in owners.iter().enumerate() {
        if list.len() < 2 {
            continue;
        }
        let (i1, i2, d) = decode_index(idx, &params);
        for (a, &first) in list.iter().enumerate() {
            for &second in &list[a + 1..] {
                report.conflicts.push(Conflict {
                    first,
                    second,
                    channels: (i1, i2),
                    difference: d,
                });
            }
        }
    }
    report.conflicts.sort();
    report.finish()
}

/// `sum_{i,j} X_k(i, j) X_l(i, j + tau mod L)` for the 0-1 arrays of
/// codewords `k` and `l`.
pub fn cross_correlation(code: &Code, k: usize, l: usize, tau: usize) -> Result<usize> {
    if k == l {
        return Err(Error::InvalidPair(k));
    }
    for &i in &[k, l] {
        if i >= code.len() {
            return Err(Error::PatternIndexOutOfRange(i));
        }
    }
    let length = code.params.length;
    let other = &code.patterns[l];
    Ok(code.patterns[k]
        .entries()
        .iter()
        .filter(|&&(m, t)| other.contains(m, (t + tau) % length))
        .count())
}

/// Validity straight from the definition: weight `w` for every codeword and
/// cross-correlation at most one for every ordered pair and every shift.
pub fn verify_definitional(code: &Code, restricted: bool) -> VerificationReport {
    let mut report = VerificationReport::start(VerifyMethod::CrossCorrelation);
    shape_checks(code, restricted, &mut report);

    let length = code.params.length;
    let grids: Vec<HashSet<(usize, usize)>> = code
        .patterns
        .iter()
        .map(|p| p.entries().iter().copied().collect())
        .collect();
    for k in 0..code.len() {
        for l in (k + 1)..code.len() {
            for tau in 0..length {
                let overlap = code.patterns[k]
                    .entries()
                    .iter()
                    .filter(|&&(m, t)| grids[l].contains(&(m, (t + tau) % length)))
                    .count();
                if overlap > 1 {
                    report.correlation_violations.push(CorrelationViolation {
                        first: k,
                        second: l,
                        shift: tau,
                        overlap,
                    });
                }
            }
        }
    }
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::catalog::example1;

    fn rows_code() -> Code {
        let params = CodeParams::new(1, 5, 3).unwrap();
        Code::unchecked(
            params,
            vec![
                SchedulingPattern::on_channel(0, &[0, 1, 2]).unwrap(),
                SchedulingPattern::on_channel(0, &[0, 2, 4]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn example1_valid() {
        let code = example1();
        let r = verify_code(&code, false);
        assert!(r.valid, "{r:?}");
        assert!(verify_definitional(&code, false).valid);
    }

    #[test]
    fn shared_same_channel_difference() {
        let r = verify_code(&rows_code(), false);
        assert!(!r.valid);
        assert!(r.conflicts.contains(&Conflict {
            first: 0,
            second: 1,
            channels: (0, 0),
            difference: 2
        }));
        assert!(!verify_definitional(&rows_code(), false).valid);
    }

    #[test]
    fn restricted_rejects_s4_only() {
        let code = example1();
        let r = verify_code(&code, true);
        assert!(!r.valid);
        assert_eq!(r.column_violations, vec![3]);
        assert!(r.conflicts.is_empty());
    }

    #[test]
    fn correlation_examples() {
        let code = example1();
        for tau in 0..5 {
            assert_eq!(cross_correlation(&code, 0, 1, tau).unwrap(), 0);
        }
        assert_eq!(cross_correlation(&code, 3, 4, 0).unwrap(), 1);
        assert_eq!(cross_correlation(&rows_code(), 0, 1, 0).unwrap(), 2);
        assert_eq!(cross_correlation(&code, 2, 2, 0), Err(Error::InvalidPair(2)));
    }

    #[test]
    fn duplicates_rejected_by_new_but_reported_by_verify() {
        let params = CodeParams::new(1, 5, 3).unwrap();
        let a = SchedulingPattern::on_channel(0, &[0, 1, 2]).unwrap();
        let b = SchedulingPattern::on_channel(0, &[1, 2, 3]).unwrap();
        assert_eq!(
            Code::new(params, vec![a.clone(), b.clone()]),
            Err(Error::DuplicatePattern(0, 1))
        );
        let code = Code::unchecked(params, vec![a, b]).unwrap();
        assert!(!verify_code(&code, false).valid);
        assert!(!verify_definitional(&code, false).valid);
    }

    #[test]
    fn weight_violation_reported() {
        let params = CodeParams::new(2, 5, 3).unwrap();
        let code = Code::unchecked(
            params,
            vec![SchedulingPattern::new([(0, 0), (1, 1)]).unwrap()],
        )
        .unwrap();
        let r = verify_code(&code, false);
        assert_eq!(r.weight_violations, vec![0]);
        assert!(!r.valid);
    }
}
