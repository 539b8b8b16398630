//! Generalized Bhaskar Rao designs signed over `Z_L`.
//!
//! An `M x b` array with `b = L M (M-1) / (w (w-1))` columns, exactly `w`
//! filled cells per column, and for every pair of rows the differences over
//! the columns where both are filled running through `Z_L` once each.
//! Each column is a scheduling pattern on `w` distinct channels.

use crate::error::{Error, Result};
use crate::exact_cover::{ExactCover, SearchResult};
use crate::pattern::SchedulingPattern;

use super::matrix::DifferenceMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gbrd {
    pub rows: usize,
    pub length: usize,
    /// Column-major; each column has one cell per row.
    pub columns: Vec<Vec<Option<usize>>>,
}

impl Gbrd {
    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    pub fn cell(&self, row: usize, column: usize) -> Option<usize> {
        self.columns[column][row]
    }

    /// Column `j` as `{(row, value)}`.
    pub fn column_pattern(&self, j: usize) -> SchedulingPattern {
        SchedulingPattern::new(
            self.columns[j]
                .iter()
                .enumerate()
                .filter_map(|(r, v)| v.map(|x| (r, x))),
        )
        .expect("column has at least one filled cell")
    }

    pub fn patterns(&self) -> Vec<SchedulingPattern> {
        (0..self.columns.len()).map(|j| self.column_pattern(j)).collect()
    }

    /// A difference matrix is a GBRD with every cell filled.
    pub fn from_difference_matrix(x: &DifferenceMatrix) -> Self {
        let columns = (0..x.modulus)
            .map(|j| x.rows.iter().map(|r| Some(r[j])).collect())
            .collect();
        Gbrd {
            rows: x.rows.len(),
            length: x.modulus,
            columns,
        }
    }
}

/// Column count `L M (M-1) / (w (w-1))`, if integral.
pub fn gbrd_columns(rows: usize, length: usize, weight: usize) -> Option<usize> {
    if weight < 2 || weight > rows {
        return None;
    }
    let num = length * rows * (rows - 1);
    let den = weight * (weight - 1);
    num.is_multiple_of(den).then_some(num / den)
}

/// Filled cells per row, `L (M-1) / (w-1)`, if integral: each row meets
/// every other row in `L` columns and each of its columns holds `w-1`
/// partners.
pub fn gbrd_replication(rows: usize, length: usize, weight: usize) -> Option<usize> {
    if weight < 2 || weight > rows {
        return None;
    }
    let num = length * (rows - 1);
    num.is_multiple_of(weight - 1).then_some(num / (weight - 1))
}

pub fn verify_gbrd(g: &Gbrd, length: usize, weight: usize) -> bool {
    if g.length != length || gbrd_columns(g.rows, length, weight) != Some(g.columns.len()) {
        return false;
    }
    for col in &g.columns {
        if col.len() != g.rows || col.iter().flatten().count() != weight {
            return false;
        }
        if col.iter().flatten().any(|&v| v >= length) {
            return false;
        }
    }
    for a in 0..g.rows {
        for b in (a + 1)..g.rows {
            let mut seen = vec![false; length];
            let mut count = 0;
            for col in &g.columns {
                if let (Some(x), Some(y)) = (col[a], col[b]) {
                    let d = (x + length - y) % length;
                    if seen[d] {
                        return false;
                    }
                    seen[d] = true;
                    count += 1;
                }
            }
            if count != length {
                return false;
            }
        }
    }
    true
}

/// The `4 x 4t` design over `Z_2t` with three filled cells per column,
/// listed as four families of `t` columns each.
pub fn gbrd_4x4t(t: usize) -> Gbrd {
    assert!(t >= 1, "t must be positive");
    let l = 2 * t;
    let mut columns = Vec::with_capacity(4 * t);
    let col = |cells: [(usize, usize); 3]| {
        let mut c = vec![None; 4];
        for (r, v) in cells {
            c[r] = Some(v % l);
        }
        c
    };
    for j in 0..t {
        columns.push(col([(0, 0), (1, j), (2, 2 * j)]));
    }
    for j in 0..t {
        columns.push(col([(0, 0), (1, t + j), (3, t + l - j)]));
    }
    for j in 0..t {
        columns.push(col([(0, 0), (2, 2 * j + 1), (3, t + j + 1)]));
    }
    for j in 0..t {
        columns.push(col([(1, 0), (2, t + j), (3, 2 * j + 1)]));
    }
    Gbrd {
        rows: 4,
        length: l,
        columns,
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Exact search for a GBRD. Columns are normalized so the first filled row
/// holds 0; row subsets and values are tried in lexicographic order.
pub fn search_gbrd(rows: usize, length: usize, weight: usize, budget: u64) -> Result<SearchResult<Gbrd>> {
    if weight < 2 || weight > rows || length == 0 {
        return Err(Error::ShapeInfeasible(format!(
            "need 2 <= w <= M and L >= 1 (got M={rows}, L={length}, w={weight})"
        )));
    }
    if gbrd_columns(rows, length, weight).is_none() {
        return Err(Error::ShapeInfeasible(format!(
            "L M (M-1) = {} is not divisible by w (w-1) = {}",
            length * rows * (rows - 1),
            weight * (weight - 1)
        )));
    }
    if gbrd_replication(rows, length, weight).is_none() {
        return Err(Error::ShapeInfeasible(format!(
            "L (M-1) = {} is not divisible by w-1 = {}",
            length * (rows - 1),
            weight - 1
        )));
    }
    let pair_index = |a: usize, b: usize| -> usize {
        // a < b, row-major over the upper triangle
        a * rows - a * (a + 1) / 2 + (b - a - 1)
    };
    let pairs = rows * (rows - 1) / 2;

    let mut columns = Vec::new();
    let mut options = Vec::new();
    for subset in combinations(rows, weight) {
        let free = weight - 1;
        let total = length.pow(free as u32);
        for code in 0..total {
            let mut values = vec![0usize; weight];
            let mut c = code;
            for v in values.iter_mut().skip(1).rev() {
                *v = c % length;
                c /= length;
            }
            let mut items = Vec::with_capacity(weight * (weight - 1) / 2);
            for x in 0..weight {
                for y in (x + 1)..weight {
                    let d = (values[x] + length - values[y]) % length;
                    items.push(pair_index(subset[x], subset[y]) * length + d);
                }
            }
            let mut column = vec![None; rows];
            for (r, v) in subset.iter().zip(&values) {
                column[*r] = Some(*v);
            }
            columns.push(column);
            options.push(items);
        }
    }
    let ec = ExactCover::new(pairs * length, 0, options);
    let mut nodes = 0;
    Ok(ec.solve(budget, &mut nodes).map(|mut picked| {
        picked.sort_unstable();
        Gbrd {
            rows,
            length,
            columns: picked.iter().map(|&k| columns[k].clone()).collect(),
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::matrix::difference_matrix_prime;

    #[test]
    fn family_small_t() {
        for t in 1..=12 {
            let g = gbrd_4x4t(t);
            assert_eq!(g.column_count(), 4 * t);
            assert!(verify_gbrd(&g, 2 * t, 3), "t={t}");
        }
    }

    #[test]
    fn blanked_cell_fails() {
        let mut g = gbrd_4x4t(5);
        g.columns[7][0] = None;
        assert!(!verify_gbrd(&g, 10, 3));
    }

    #[test]
    fn difference_matrix_is_full_gbrd() {
        let g = Gbrd::from_difference_matrix(&difference_matrix_prime(3, 13).unwrap());
        assert!(verify_gbrd(&g, 13, 3));
        let g = Gbrd::from_difference_matrix(&difference_matrix_prime(4, 7).unwrap());
        assert!(verify_gbrd(&g, 7, 4));
    }

    #[test]
    fn search_small() {
        let g = search_gbrd(3, 5, 3, 1_000_000).unwrap().found().unwrap();
        assert!(verify_gbrd(&g, 5, 3));
        assert!(matches!(
            search_gbrd(5, 4, 3, 10),
            Err(Error::ShapeInfeasible(_))
        ));
    }

    #[test]
    fn search_3x4_has_no_solution() {
        assert_eq!(
            search_gbrd(3, 4, 3, 10_000_000).unwrap(),
            SearchResult::ProvenNonexistent
        );
    }

    #[test]
    fn brute_force_3x4() {
        // Oracle: normalize column entries so row 0 is zero, then rows 1 and
        // 2 range over all 4^4 vectors each; no choice is a difference matrix.
        let mut hits = 0;
        for r1 in 0..256usize {
            for r2 in 0..256usize {
                let row = |code: usize| (0..4).map(|j| (code >> (2 * j)) & 3).collect::<Vec<_>>();
                let x = DifferenceMatrix {
                    modulus: 4,
                    rows: vec![vec![0; 4], row(r1), row(r2)],
                };
                if crate::constructions::matrix::verify_difference_matrix(&x) {
                    hits += 1;
                }
            }
        }
        assert_eq!(hits, 0);
    }
}
