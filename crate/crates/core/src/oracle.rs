//! Brute-force enumeration of compositions and staircase windows.
//!
//! Everything else in the crate is checked against this module, so it is kept
//! deliberately literal: compositions come from the cut-position bijection and
//! staircases are counted window by window.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_CAP: u32 = 24;

/// An ordered sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<u32>);

impl Composition {
    /// Returns `None` if any part is zero.
    pub fn new(parts: Vec<u32>) -> Option<Self> {
        parts.iter().all(|&p| p >= 1).then_some(Composition(parts))
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    /// Decodes the composition of `n` whose cut positions are the set bits of
    /// `mask` (bit `i` set means a cut after the `(i + 1)`-th unit).
    fn from_cuts(n: u32, mask: u64) -> Self {
        if n == 0 {
            return Composition::empty();
        }
        let mut parts = Vec::with_capacity(mask.count_ones() as usize + 1);
        let mut run = 1;
        for i in 0..n - 1 {
            if mask >> i & 1 == 1 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        Composition(parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Iterator over all compositions of a fixed `n`.
#[derive(Debug, Clone)]
pub struct Compositions {
    n: u32,
    next: u64,
    end: u64,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        if self.next >= self.end {
            return None;
        }
        let c = Composition::from_cuts(self.n, self.next);
        self.next += 1;
        Some(c)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = (self.end - self.next) as usize;
        (rest, Some(rest))
    }
}

impl ExactSizeIterator for Compositions {}

/// Counts overlapping occurrences of `1⁺2⁺…m⁺` in `parts`.
fn windows_in(parts: &[u32], m: usize) -> u32 {
    if parts.len() < m {
        return 0;
    }
    parts
        .windows(m)
        .filter(|w| w.iter().enumerate().all(|(j, &p)| p as usize > j))
        .count() as u32
}

/// Number of start positions at which the staircase `1⁺2⁺…m⁺` fits in `c`.
pub fn count_staircases(c: &Composition, m: u32) -> Result<u32> {
    if m == 0 {
        return Err(Error::InvalidPattern(m));
    }
    Ok(windows_in(c.parts(), m as usize))
}

/// Exact counts `n(a, b, s)` for one fixed `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    pub a: u32,
    counts: BTreeMap<(u32, u32), u64>,
}

impl Histogram {
    /// Count for `b` parts and `s` staircases; absent keys are zero.
    pub fn get(&self, b: u32, s: u32) -> u64 {
        self.counts.get(&(b, s)).copied().unwrap_or(0)
    }

    /// Nonzero entries sorted by `(b, s)`.
    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), u64)> + '_ {
        self.counts.iter().map(|(&k, &v)| (k, v))
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// Exhaustive enumerator with an explicit size cap.
#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    cap: u32,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

impl Oracle {
    pub fn with_cap(cap: u32) -> Self {
        Oracle { cap }
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    fn check(&self, n: u32) -> Result<()> {
        // 63 keeps the cut mask inside a u64 regardless of the configured cap.
        if n > self.cap || n > 63 {
            Err(Error::EnumerationLimit { n, cap: self.cap })
        } else {
            Ok(())
        }
    }

    /// Every composition of `n` exactly once; `n = 0` gives only the empty one.
    pub fn compositions(&self, n: u32) -> Result<Compositions> {
        self.check(n)?;
        let end = if n == 0 { 1 } else { 1u64 << (n - 1) };
        Ok(Compositions { n, next: 0, end })
    }

    pub fn histogram(&self, a: u32, m: u32) -> Result<Histogram> {
        if m == 0 {
            return Err(Error::InvalidPattern(m));
        }
        let mut counts = BTreeMap::new();
        for c in self.compositions(a)? {
            let s = windows_in(c.parts(), m as usize);
            *counts.entry((c.len() as u32, s)).or_insert(0) += 1;
        }
        Ok(Histogram { a, counts })
    }

    /// Total staircase occurrences over all compositions of `n` with `parts` parts.
    pub fn total_staircases(&self, n: u32, parts: u32, m: u32) -> Result<u64> {
        if m == 0 {
            return Err(Error::InvalidPattern(m));
        }
        Ok(self
            .compositions(n)?
            .filter(|c| c.len() == parts as usize)
            .map(|c| windows_in(c.parts(), m as usize) as u64)
            .sum())
    }
}

/// [`Oracle::compositions`] with the default cap.
pub fn enumerate_compositions(n: u32) -> Result<Compositions> {
    Oracle::default().compositions(n)
}

/// [`Oracle::histogram`] with the default cap.
pub fn staircase_histogram(a: u32, m: u32) -> Result<Histogram> {
    Oracle::default().histogram(a, m)
}

/// [`Oracle::total_staircases`] with the default cap.
pub fn total_staircases_oracle(n: u32, parts: u32, m: u32) -> Result<u64> {
    Oracle::default().total_staircases(n, parts, m)
}
