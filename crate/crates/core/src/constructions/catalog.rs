//! Worked examples embedded as data.

use crate::code::Code;
use crate::error::{Error, Result};
use crate::pattern::{CodeParams, SchedulingPattern};

use super::cac::Cac;
use super::gbrd::Gbrd;
use super::matrix::DifferenceMatrix;

pub const FIXTURES: &[&str] = &["example1", "example2", "example3", "example4", "example6"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogObject {
    Code(Code),
    Cac(Cac),
    DifferenceMatrix(DifferenceMatrix),
    Gbrd(Gbrd),
}

impl CatalogObject {
    /// Every fixture read as an MC-CAC: a CAC is a one-channel code, and the
    /// columns of a matrix or design are patterns on distinct channels.
    pub fn to_code(&self) -> Result<Code> {
        match self {
            CatalogObject::Code(c) => Ok(c.clone()),
            CatalogObject::Cac(c) => Code::new(
                CodeParams::new(1, c.length, c.weight)?,
                (0..c.len()).map(|k| c.on_channel(k, 0)).collect(),
            ),
            CatalogObject::DifferenceMatrix(x) => {
                let g = Gbrd::from_difference_matrix(x);
                Code::new(CodeParams::new(g.rows, g.length, g.rows)?, g.patterns())
            }
            CatalogObject::Gbrd(g) => {
                let w = g.columns.first().map_or(0, |c| c.iter().flatten().count());
                Code::new(CodeParams::new(g.rows, g.length, w)?, g.patterns())
            }
        }
    }
}

pub fn catalog(name: &str) -> Result<CatalogObject> {
    Ok(match name {
        "example1" => CatalogObject::Code(example1()),
        "example2" => CatalogObject::Cac(example2()),
        "example3" => CatalogObject::DifferenceMatrix(example3()),
        "example4" => CatalogObject::Gbrd(example4()),
        "example6" => CatalogObject::Code(example6()),
        other => return Err(Error::UnknownFixture(other.to_string())),
    })
}

fn code_from(params: (usize, usize, usize), patterns: &[&[(usize, usize)]]) -> Code {
    let params = CodeParams::new(params.0, params.1, params.2).expect("fixture parameters");
    let patterns = patterns
        .iter()
        .map(|p| SchedulingPattern::new(p.iter().copied()).expect("fixture pattern"))
        .collect();
    Code::new(params, patterns).expect("fixture code")
}

/// The eight codewords of the MC-CAC(3, 5, 3), in listing order `S1..S8`.
pub fn example1() -> Code {
    code_from(
        (3, 5, 3),
        &[
            &[(0, 0), (0, 1), (0, 2)],
            &[(1, 0), (1, 1), (1, 2)],
            &[(2, 0), (2, 1), (2, 2)],
            &[(0, 0), (1, 0), (2, 0)],
            &[(0, 0), (1, 1), (2, 2)],
            &[(0, 0), (1, 2), (2, 4)],
            &[(0, 0), (1, 3), (2, 1)],
            &[(0, 0), (1, 4), (2, 3)],
        ],
    )
}

/// Equi-difference tight CAC(13, 3) `{0,1,2}, {0,3,6}, {0,4,8}`.
pub fn example2() -> Cac {
    Cac {
        length: 13,
        weight: 3,
        patterns: vec![vec![0, 1, 2], vec![0, 3, 6], vec![0, 4, 8]],
        equi_difference: true,
        generators: Some(vec![1, 3, 4]),
    }
}

/// `3 x 13` difference matrix over `Z_13`.
pub fn example3() -> DifferenceMatrix {
    DifferenceMatrix {
        modulus: 13,
        rows: vec![
            vec![0; 13],
            vec![0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12],
            vec![0, 2, 4, 6, 8, 10, 12, 1, 3, 5, 7, 9, 11],
        ],
    }
}

/// `4 x 20` GBRD over `Z_10`, rows as printed (`None` for blank cells).
pub fn example4() -> Gbrd {
    const E: i8 = -1;
    let rows: [[i8; 20]; 4] = [
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, E, E, E, E, E],
        [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, E, E, E, E, E, 0, 0, 0, 0, 0],
        [0, 2, 4, 6, 8, E, E, E, E, E, 1, 3, 5, 7, 9, 5, 6, 7, 8, 9],
        [E, E, E, E, E, 5, 4, 3, 2, 1, 6, 7, 8, 9, 0, 1, 3, 5, 7, 9],
    ];
    let columns = (0..20)
        .map(|j| {
            rows.iter()
                .map(|r| (r[j] >= 0).then(|| r[j] as usize))
                .collect()
        })
        .collect();
    Gbrd {
        rows: 4,
        length: 10,
        columns,
    }
}

/// MC-CAC(4, 10, 3) with 28 codewords: the 20 columns of [`example4`] and
/// `{(i,0),(i,1),(i,2)}`, `{(i,0),(i,3),(i,6)}` on each channel.
pub fn example6() -> Code {
    let mut patterns: Vec<Vec<(usize, usize)>> = vec![
        vec![(0, 0), (1, 0), (2, 0)],
        vec![(0, 0), (1, 1), (2, 2)],
        vec![(0, 0), (1, 2), (2, 4)],
        vec![(0, 0), (1, 3), (2, 6)],
        vec![(0, 0), (1, 4), (2, 8)],
        vec![(0, 0), (1, 5), (3, 5)],
        vec![(0, 0), (1, 6), (3, 4)],
        vec![(0, 0), (1, 7), (3, 3)],
        vec![(0, 0), (1, 8), (3, 2)],
        vec![(0, 0), (1, 9), (3, 1)],
        vec![(0, 0), (2, 1), (3, 6)],
        vec![(0, 0), (2, 3), (3, 7)],
        vec![(0, 0), (2, 5), (3, 8)],
        vec![(0, 0), (2, 7), (3, 9)],
        vec![(0, 0), (2, 9), (3, 0)],
        vec![(1, 0), (2, 5), (3, 1)],
        vec![(1, 0), (2, 6), (3, 3)],
        vec![(1, 0), (2, 7), (3, 5)],
        vec![(1, 0), (2, 8), (3, 7)],
        vec![(1, 0), (2, 9), (3, 9)],
    ];
    for i in 0..4 {
        patterns.push(vec![(i, 0), (i, 1), (i, 2)]);
        patterns.push(vec![(i, 0), (i, 3), (i, 6)]);
    }
    let refs: Vec<&[(usize, usize)]> = patterns.iter().map(Vec::as_slice).collect();
    code_from((4, 10, 3), &refs)
}
