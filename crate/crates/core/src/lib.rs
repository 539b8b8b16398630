//! Multichannel conflict-avoiding codes: construction, verification, upper
//! bounds, exact search and collision-channel simulation.
//!
//! A code is a set of weight-`w` scheduling patterns on `M` channels with
//! period `L`. It is valid when, at every relative time shift, any two
//! codewords overlap in at most one `(channel, slot)` position, so each of up
//! to `w` active users gets a packet through in every `L` consecutive slots.

pub mod bounds;
pub mod classify;
pub mod code;
pub mod constructions;
pub mod difference;
pub mod error;
pub mod exact_cover;
pub mod io;
pub mod numtheory;
pub mod pattern;
pub mod search;
pub mod simulator;

pub use bounds::{bound_for, bound_restricted, bound_weight3, bound_weight4, bound_weight4_derived, BoundResult};
pub use code::{cross_correlation, verify_code, verify_definitional, Code, VerificationReport};
pub use difference::{difference_array, difference_set, DifferenceArray};
pub use error::{Error, Result};
pub use exact_cover::SearchResult;
pub use pattern::{CodeParams, SchedulingPattern};
