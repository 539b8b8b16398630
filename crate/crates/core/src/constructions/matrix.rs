//! Difference matrices over `Z_L`.

use crate::error::{Error, Result};
use crate::numtheory::{is_prime, smallest_prime_factor};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceMatrix {
    pub modulus: usize,
    pub rows: Vec<Vec<usize>>,
}

impl DifferenceMatrix {
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }
}

/// The `k x p` table `(i, j) -> i*j mod p`.
pub fn difference_matrix_prime(rows: usize, p: usize) -> Result<DifferenceMatrix> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if rows == 0 || rows > p {
        return Err(Error::TooManyRows { rows, modulus: p });
    }
    Ok(multiplication_table(rows, p))
}

/// `i*j mod L` for `i < rows`. This is a difference matrix whenever every
/// difference of two row indices is a unit mod `L`, i.e. when the smallest
/// prime factor of `L` is at least `rows`.
pub fn multiplication_table(rows: usize, length: usize) -> DifferenceMatrix {
    DifferenceMatrix {
        modulus: length,
        rows: (0..rows)
            .map(|i| (0..length).map(|j| i * j % length).collect())
            .collect(),
    }
}

pub fn multiplication_table_applies(rows: usize, length: usize) -> bool {
    length == 1 || smallest_prime_factor(length as u64).is_some_and(|p| p as usize >= rows)
}

/// Every pair of distinct rows has a difference vector that is a
/// permutation of `Z_L`.
pub fn verify_difference_matrix(x: &DifferenceMatrix) -> bool {
    let l = x.modulus;
    if x.rows.iter().any(|r| r.len() != l || r.iter().any(|&v| v >= l)) {
        return false;
    }
    for a in 0..x.rows.len() {
        for b in (a + 1)..x.rows.len() {
            let mut seen = vec![false; l];
            for j in 0..l {
                let d = (x.rows[a][j] + l - x.rows[b][j]) % l;
                if seen[d] {
                    return false;
                }
                seen[d] = true;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example3_table() {
        let x = difference_matrix_prime(3, 13).unwrap();
        assert_eq!(x.rows[2], vec![0, 2, 4, 6, 8, 10, 12, 1, 3, 5, 7, 9, 11]);
        assert!(verify_difference_matrix(&x));
    }

    #[test]
    fn single_row() {
        let x = difference_matrix_prime(1, 5).unwrap();
        assert_eq!(x.rows, vec![vec![0; 5]]);
        assert!(verify_difference_matrix(&x));
    }

    #[test]
    fn not_prime() {
        assert_eq!(difference_matrix_prime(3, 4), Err(Error::NotPrime(4)));
        assert!(matches!(
            difference_matrix_prime(6, 5),
            Err(Error::TooManyRows { .. })
        ));
    }

    #[test]
    fn repeated_difference_rejected() {
        let x = DifferenceMatrix {
            modulus: 4,
            rows: vec![vec![0, 0, 0, 0], vec![0, 1, 2, 2]],
        };
        assert!(!verify_difference_matrix(&x));
    }

    #[test]
    fn composite_moduli() {
        assert!(verify_difference_matrix(&multiplication_table(3, 25)));
        assert!(multiplication_table_applies(3, 25));
        assert!(!multiplication_table_applies(3, 10));
        assert!(!verify_difference_matrix(&multiplication_table(3, 10)));
    }
}
