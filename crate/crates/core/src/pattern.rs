//! Code parameters and scheduling patterns.
//!
//! A scheduling pattern is the set of `(channel, time)` positions at which a
//! codeword transmits during one period. Patterns that differ only by a cyclic
//! shift of the time component describe the same codeword.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `(M, L, w)`: number of channels, period length in slots and codeword weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CodeParams {
    pub channels: usize,
    pub length: usize,
    pub weight: usize,
}

impl CodeParams {
    pub fn new(channels: usize, length: usize, weight: usize) -> Result<Self> {
        if channels == 0 || length == 0 || weight == 0 {
            return Err(Error::InvalidParams(format!(
                "M, L and w must be positive (got M={channels}, L={length}, w={weight})"
            )));
        }
        if weight > channels * length {
            return Err(Error::InvalidParams(format!(
                "weight {weight} exceeds the {} available positions",
                channels * length
            )));
        }
        Ok(CodeParams {
            channels,
            length,
            weight,
        })
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.channels, self.length, self.weight)
    }
}

/// A set of `(channel, time)` pairs, kept sorted by `(channel, time)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchedulingPattern {
    entries: Vec<(usize, usize)>,
}

impl SchedulingPattern {
    /// Builds a pattern from arbitrary-order entries. Repeated entries are an error.
    pub fn new<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut entries: Vec<(usize, usize)> = entries.into_iter().collect();
        if entries.is_empty() {
            return Err(Error::EmptyPattern);
        }
        entries.sort_unstable();
        if let Some(w) = entries.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEntry(w[0].0, w[0].1));
        }
        Ok(SchedulingPattern { entries })
    }

    /// Single-channel pattern `{(channel, t) : t in times}`.
    pub fn on_channel(channel: usize, times: &[usize]) -> Result<Self> {
        Self::new(times.iter().map(|&t| (channel, t)))
    }

    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    pub fn weight(&self) -> usize {
        self.entries.len()
    }

    pub fn contains(&self, channel: usize, time: usize) -> bool {
        self.entries.binary_search(&(channel, time)).is_ok()
    }

    /// Checks channel and time ranges and the weight against `params`.
    pub fn check(&self, params: &CodeParams) -> Result<()> {
        for &(m, t) in &self.entries {
            if m >= params.channels {
                return Err(Error::ChannelOutOfRange {
                    channel: m,
                    channels: params.channels,
                });
            }
            if t >= params.length {
                return Err(Error::TimeOutOfRange {
                    time: t,
                    length: params.length,
                });
            }
        }
        Ok(())
    }

    /// Cyclic time shift by `tau` modulo `length`.
    pub fn shift(&self, tau: usize, length: usize) -> Self {
        let mut entries: Vec<(usize, usize)> = self
            .entries
            .iter()
            .map(|&(m, t)| (m, (t + tau) % length))
            .collect();
        entries.sort_unstable();
        SchedulingPattern { entries }
    }

    /// Lexicographically least member of the shift class.
    ///
    /// The least shift starts with `(m0, 0)` where `m0` is the smallest
    /// occupied channel, so only shifts that move one of the `m0` entries to
    /// time zero need to be compared.
    pub fn canonicalize(&self, length: usize) -> Self {
        let m0 = self.entries[0].0;
        self.entries
            .iter()
            .take_while(|&&(m, _)| m == m0)
            .map(|&(_, t)| self.shift((length - t % length) % length, length))
            .min()
            .expect("pattern is non-empty")
    }

    pub fn is_canonical(&self, length: usize) -> bool {
        *self == self.canonicalize(length)
    }

    /// Number of entries per channel, indexed by channel.
    pub fn channel_counts(&self, channels: usize) -> Vec<usize> {
        let mut counts = vec![0; channels];
        for &(m, _) in &self.entries {
            counts[m] += 1;
        }
        counts
    }

    /// Distinct occupied channels in increasing order.
    pub fn occupied_channels(&self) -> Vec<usize> {
        let mut chans: Vec<usize> = self.entries.iter().map(|&(m, _)| m).collect();
        chans.dedup();
        chans
    }

    /// Times of the entries on `channel`, ascending.
    pub fn times_on(&self, channel: usize) -> Vec<usize> {
        self.entries
            .iter()
            .filter(|&&(m, _)| m == channel)
            .map(|&(_, t)| t)
            .collect()
    }

    /// True when no two entries share a time index (one transmitter per node).
    pub fn is_single_transmitter(&self) -> bool {
        let mut times: Vec<usize> = self.entries.iter().map(|&(_, t)| t).collect();
        times.sort_unstable();
        times.windows(2).all(|w| w[0] != w[1])
    }
}

impl fmt::Display for SchedulingPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (m, t)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({m},{t})")?;
        }
        write!(f, "}}")
    }
}
