//! Optimal MC-CACs from a GBRD plus per-channel copies of an
//! equi-difference tight CAC.

use std::fmt;

use crate::bounds::{bound_weight3, bound_weight4, BoundResult};
use crate::code::{verify_code, Code};
use crate::error::{Error, Result};
use crate::exact_cover::SearchResult;
use crate::pattern::{CodeParams, SchedulingPattern};

use super::cac::{cac_differences, momihara_cac, momihara_hypothesis, search_equi_diff_tight_cac, Cac};
use super::gbrd::{gbrd_4x4t, search_gbrd, Gbrd};
use super::matrix::{multiplication_table, multiplication_table_applies};

/// Which exceptional generators the tight CAC contains.
///
/// Weight 3: `B` has `L/3` only, `C` has `L/4` only, `D` both.
/// Weight 4: `B` has `L/4` only, `C` has an `L/5` progression only, `D` both.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComposeCase {
    A,
    B,
    C,
    D,
}

impl fmt::Display for ComposeCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ComposeCase::A => "a",
            ComposeCase::B => "b",
            ComposeCase::C => "c",
            ComposeCase::D => "d",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GbrdSource {
    /// The explicit `4 x 4t` family over `Z_2t`.
    FourByFourT,
    /// Multiplication table `i*j mod L`.
    MultiplicationTable,
    Search,
}

impl fmt::Display for GbrdSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GbrdSource::FourByFourT => "explicit 4x4t family",
            GbrdSource::MultiplicationTable => "multiplication-table difference matrix",
            GbrdSource::Search => "exact search",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub case: ComposeCase,
    /// Generators of the tight CAC with fewer than `2(w-1)` differences.
    pub exceptional: Vec<usize>,
    /// Closed-form size for the detected case.
    pub expected_size: u64,
    pub bound: BoundResult,
    pub meets_bound: bool,
    pub gbrd_source: GbrdSource,
    pub cac_generators: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Composition {
    pub code: Code,
    pub certificate: Certificate,
}

/// Size-reducing constant of the case formula:
/// weight 3 gives `M/12 (2ML + L + c)`, weight 4 gives `M/12 (ML + L + c)`.
pub fn case_constant(weight: usize, case: ComposeCase) -> i64 {
    match (weight, case) {
        (3, ComposeCase::A) => -3,
        (3, ComposeCase::B) => 3,
        (3, ComposeCase::C) => 0,
        (3, ComposeCase::D) => 6,
        (_, ComposeCase::A) => -2,
        (_, ComposeCase::B) => 4,
        (_, ComposeCase::C) => 2,
        (_, ComposeCase::D) => 8,
    }
}

/// Exact closed-form size of the composed code, `None` if not integral.
pub fn case_size(channels: usize, length: usize, weight: usize, case: ComposeCase) -> Option<u64> {
    let (m, l) = (channels as i64, length as i64);
    let inner = if weight == 3 { 2 * m * l + l } else { m * l + l } + case_constant(weight, case);
    let num = m * inner;
    (num % 12 == 0 && num >= 0).then_some((num / 12) as u64)
}

/// Classifies a tight CAC by its exceptional codewords. A weight-4
/// codeword generated by `L/6` has five differences and fits none of the
/// cases; it occurs for `L = 6`.
pub fn detect_case(cac: &Cac) -> Result<(ComposeCase, Vec<usize>)> {
    let w = cac.weight;
    let full = 2 * (w - 1);
    let mut small_first = false; // w=3: size 2 (L/3); w=4: size 3 (L/4)
    let mut small_second = false; // w=3: size 3 (L/4); w=4: size 4 (fifths)
    let mut exceptional = Vec::new();
    for (k, p) in cac.patterns.iter().enumerate() {
        let n = cac_differences(p, cac.length).len();
        if n >= full {
            continue;
        }
        if let Some(g) = cac.generators.as_ref().and_then(|g| g.get(k)) {
            exceptional.push(*g);
        }
        match (w, n) {
            (3, 2) | (4, 3) => small_first = true,
            (3, 3) | (4, 4) => small_second = true,
            _ => {
                return Err(Error::ConstructionUnavailable(format!(
                    "tight CAC({}, {w}) has an exceptional codeword with {n} differences, outside the composition cases",
                    cac.length
                )))
            }
        }
    }
    exceptional.sort_unstable();
    let case = match (small_first, small_second) {
        (false, false) => ComposeCase::A,
        (true, false) => ComposeCase::B,
        (false, true) => ComposeCase::C,
        (true, true) => ComposeCase::D,
    };
    Ok((case, exceptional))
}

/// A GBRD with `channels` rows and `weight` filled cells per column:
/// the explicit family first, then a multiplication table, then search.
pub fn acquire_gbrd(channels: usize, length: usize, weight: usize, budget: u64) -> Result<(Gbrd, GbrdSource)> {
    if channels == 4 && weight == 3 && length.is_multiple_of(2) {
        return Ok((gbrd_4x4t(length / 2), GbrdSource::FourByFourT));
    }
    if channels == weight && multiplication_table_applies(channels, length) {
        return Ok((
            Gbrd::from_difference_matrix(&multiplication_table(channels, length)),
            GbrdSource::MultiplicationTable,
        ));
    }
    match search_gbrd(channels, length, weight, budget)? {
        SearchResult::Found(g) => Ok((g, GbrdSource::Search)),
        SearchResult::NotFound => Err(Error::ConstructionUnavailable(format!(
            "no {channels}-row GBRD over Z_{length} with weight {weight} found within {budget} nodes"
        ))),
        SearchResult::ProvenNonexistent => Err(Error::ConstructionUnavailable(format!(
            "no {channels}-row GBRD over Z_{length} with weight {weight} exists"
        ))),
    }
}

pub const DEFAULT_COMPOSE_BUDGET: u64 = 20_000_000;

/// GBRD columns plus `M` per-channel copies of every tight-CAC codeword.
pub fn compose_optimal(channels: usize, length: usize, weight: usize, budget: u64) -> Result<Composition> {
    if weight != 3 && weight != 4 {
        return Err(Error::UnsupportedWeight(weight));
    }
    if !(length >= channels && channels >= weight) {
        return Err(Error::ConstructionUnavailable(format!(
            "composition needs L >= M >= w (got M={channels}, L={length}, w={weight})"
        )));
    }
    let cac = match search_equi_diff_tight_cac(length, weight, budget)? {
        SearchResult::Found(c) => c,
        SearchResult::NotFound => {
            return Err(Error::ConstructionUnavailable(format!(
                "equi-difference tight CAC({length},{weight}) not found within {budget} nodes"
            )))
        }
        SearchResult::ProvenNonexistent => {
            return Err(Error::ConstructionUnavailable(format!(
                "no equi-difference tight CAC({length},{weight}) exists"
            )))
        }
    };
    let (gbrd, gbrd_source) = acquire_gbrd(channels, length, weight, budget)?;

    let params = CodeParams::new(channels, length, weight)?;
    let mut patterns = gbrd.patterns();
    for i in 0..channels {
        for k in 0..cac.len() {
            patterns.push(cac.on_channel(k, i));
        }
    }
    let code = Code::new(params, patterns)?;
    let report = verify_code(&code, false);
    if !report.valid {
        return Err(Error::Internal(format!(
            "composed code for {params} failed verification: {} conflicts",
            report.conflicts.len()
        )));
    }

    let (case, exceptional) = detect_case(&cac)?;
    let expected_size = case_size(channels, length, weight, case).ok_or_else(|| {
        Error::Internal(format!("case ({case}) size formula is not integral for {params}"))
    })?;
    if expected_size != code.len() as u64 {
        return Err(Error::Internal(format!(
            "composed {} codewords, case ({case}) formula gives {expected_size}",
            code.len()
        )));
    }
    let bound = if weight == 3 {
        bound_weight3(channels, length)?
    } else {
        bound_weight4(channels, length)?
    };
    let meets_bound = bound.value == expected_size;
    Ok(Composition {
        code,
        certificate: Certificate {
            case,
            exceptional,
            expected_size,
            bound,
            meets_bound,
            gbrd_source,
            cac_generators: cac.generators.clone().unwrap_or_default(),
        },
    })
}

/// The optimal MC-CAC(4, 2t, 3): `4t` columns of the explicit GBRD plus
/// four channel copies of a CAC(2t, 3) with `(t-1)/2` codewords.
pub fn family_4_2t(t: u64) -> Result<Code> {
    if !momihara_hypothesis(t) {
        return Err(Error::HypothesisNotMet(format!(
            "{t} is not a prime > 3 with -1 and -3 both quadratic non-residues"
        )));
    }
    let tt = t as usize;
    let cac = momihara_cac(t)?;
    let params = CodeParams::new(4, 2 * tt, 3)?;
    let mut patterns: Vec<SchedulingPattern> = gbrd_4x4t(tt).patterns();
    for i in 0..4 {
        for k in 0..cac.len() {
            patterns.push(cac.on_channel(k, i));
        }
    }
    let code = Code::new(params, patterns)?;
    if !verify_code(&code, false).valid || code.len() != 6 * tt - 2 {
        return Err(Error::Internal(format!("family code for t={t} failed verification")));
    }
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example5() {
        let c = compose_optimal(3, 13, 3, DEFAULT_COMPOSE_BUDGET).unwrap();
        assert_eq!(c.code.len(), 22);
        assert_eq!(c.certificate.case, ComposeCase::A);
        assert!(c.certificate.meets_bound);
        assert_eq!(c.certificate.gbrd_source, GbrdSource::MultiplicationTable);
    }

    #[test]
    fn example1_size() {
        let c = compose_optimal(3, 5, 3, DEFAULT_COMPOSE_BUDGET).unwrap();
        assert_eq!(c.code.len(), 8);
        assert!(c.certificate.meets_bound);
    }

    #[test]
    fn weight3_case_b() {
        let c = compose_optimal(3, 15, 3, DEFAULT_COMPOSE_BUDGET).unwrap();
        assert_eq!(c.certificate.case, ComposeCase::B);
        assert_eq!(c.certificate.exceptional, vec![5]);
        assert_eq!(c.code.len(), 27);
        assert!(c.certificate.meets_bound);
    }

    #[test]
    fn weight3_case_c() {
        let c = compose_optimal(4, 4, 3, DEFAULT_COMPOSE_BUDGET).unwrap();
        assert_eq!(c.certificate.case, ComposeCase::C);
        assert_eq!(c.code.len(), 12);
        assert!(c.certificate.meets_bound);
    }

    #[test]
    fn weight4_cases() {
        let c = compose_optimal(4, 7, 4, DEFAULT_COMPOSE_BUDGET).unwrap();
        assert_eq!(c.certificate.case, ComposeCase::A);
        assert_eq!(c.code.len(), 11);
        assert!(c.certificate.meets_bound);

        let c = compose_optimal(4, 35, 4, DEFAULT_COMPOSE_BUDGET).unwrap();
        assert_eq!(c.certificate.case, ComposeCase::C);
        assert_eq!(c.code.len(), 59);
        assert!(c.certificate.meets_bound);
    }

    #[test]
    fn missing_cac_is_reported() {
        match compose_optimal(3, 7, 3, DEFAULT_COMPOSE_BUDGET) {
            Err(Error::ConstructionUnavailable(msg)) => assert!(msg.contains("tight CAC(7,3)")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn family_t11() {
        let code = family_4_2t(11).unwrap();
        assert_eq!(code.len(), 64);
        assert!(matches!(family_4_2t(7), Err(Error::HypothesisNotMet(_))));
    }

    #[test]
    fn case_sizes_match_counts() {
        // (L-1)/4 codewords per channel plus LM(M-1)/6 columns
        assert_eq!(case_size(3, 13, 3, ComposeCase::A), Some(13 + 9));
        assert_eq!(case_size(4, 13, 3, ComposeCase::A), Some(26 + 12));
    }
}
