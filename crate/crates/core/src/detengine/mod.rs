//! The linear system for `F, F₁, F₁₂, …` and its determinants.
//!
//! [`system`] builds the Cramer system from the word recurrences,
//! [`determinant`] holds the division-free determinant algorithms, and
//! [`reduced`] evaluates `det N_m`, `det C_m`, `det A` and `det B` through the
//! last-row reductions and their closed forms.

pub mod determinant;
pub mod reduced;
pub mod system;

pub use determinant::{
    det_division_free, BirdDeterminant, DeterminantAlgorithm, DeterminantRegistry,
    LaplaceExpansion, DEFAULT_DET_LIMIT,
};
pub use reduced::{c_det, det_a, det_b, n_det, DetMode};
pub use system::{build_b, build_c, build_n, build_system, SeriesMatrix};

use crate::error::{Error, Result};

/// Staircase length `m` and truncation order `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PatternParams {
    m: u32,
    trunc: u32,
}

impl PatternParams {
    pub fn new(m: u32, trunc: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidPattern(m));
        }
        if trunc == 0 {
            return Err(Error::InvalidTruncation(trunc));
        }
        Ok(PatternParams { m, trunc })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }
}
