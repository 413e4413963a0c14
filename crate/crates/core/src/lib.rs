//! Exact generating functions for staircase patterns `1⁺2⁺…m⁺` in integer
//! compositions.
//!
//! - [`oracle`]: brute-force enumeration, the ground truth for everything else
//! - [`series`]: truncated power series in `x`, `y`, `q` over big integers
//! - [`detengine`]: the Cramer system and its determinants
//! - [`genfun`]: the generating function, its `q = 1` specialisations and the
//!   closed-form staircase totals
//! - [`verify`]: the cross-check suite run by the command-line tool

pub mod combinat;
pub mod detengine;
pub mod error;
pub mod genfun;
pub mod oracle;
pub mod registry;
pub mod series;
pub mod verify;

pub use detengine::{DetMode, PatternParams, SeriesMatrix};
pub use error::{Error, Result};
pub use genfun::{
    dq_at_q1, gf_at_q1, staircase_gf, staircase_gf_cramer, total_staircases_formula, GfRegistry,
    GfStrategy,
};
pub use oracle::{
    count_staircases, enumerate_compositions, staircase_histogram, total_staircases_oracle,
    Composition, Histogram, Oracle,
};
pub use registry::{Named, Registry};
pub use series::TriSeries;
