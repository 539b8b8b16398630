//! Difference matrices, GBRDs, single-channel CACs and their composition
//! into optimal multichannel codes.

pub mod cac;
pub mod catalog;
pub mod compose;
pub mod gbrd;
pub mod matrix;

pub use cac::{
    is_tight, momihara_cac, momihara_hypothesis, search_equi_diff_tight_cac, verify_cac, Cac,
};
pub use catalog::{catalog, CatalogObject};
pub use compose::{compose_optimal, family_4_2t, Certificate, ComposeCase, Composition, GbrdSource};
pub use gbrd::{gbrd_4x4t, search_gbrd, verify_gbrd, Gbrd};
pub use matrix::{difference_matrix_prime, verify_difference_matrix, DifferenceMatrix};
