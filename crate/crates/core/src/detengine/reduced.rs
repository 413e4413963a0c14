//! `det N_m`, `det C_m`, `det A`, `det B` via last-row reductions.
//!
//! `N_m` is the leading `m × m` block of `B`; `C_m` is `N_{m+1}` with its first
//! row and column removed. Both satisfy three-term recurrences whose kernel
//! solutions give the closed forms evaluated in [`DetMode::Closed`].

use std::fmt;
use std::str::FromStr;

use crate::combinat::choose2;
use crate::series::TriSeries;

use super::system::z_series;
use super::PatternParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetMode {
    Closed,
    Recurrence,
}

impl FromStr for DetMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "closed" => Ok(DetMode::Closed),
            "recurrence" => Ok(DetMode::Recurrence),
            other => Err(format!("unknown determinant mode `{other}`")),
        }
    }
}

impl fmt::Display for DetMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DetMode::Closed => "closed",
            DetMode::Recurrence => "recurrence",
        })
    }
}

/// `y / (1 - x)`
fn y_over_one_minus_x(trunc: u32) -> TriSeries {
    TriSeries::geometric(trunc).shift(0, 1, 0)
}

/// `(1 - x - xy) / (1 - x)`
fn composition_ratio(trunc: u32) -> TriSeries {
    let numerator =
        TriSeries::one(trunc) - TriSeries::x(trunc) - TriSeries::monomial(1, 1, 0, 1, trunc);
    numerator * TriSeries::geometric(trunc)
}

/// `Σ_{j<terms} x^(k·j - C(j,2)) · (y/(1-x))^j`
fn kernel_sum(k: u32, terms: u32, trunc: u32) -> TriSeries {
    let ratio = y_over_one_minus_x(trunc);
    let mut power = TriSeries::one(trunc);
    let mut acc = TriSeries::zero(trunc);
    for j in 0..terms {
        acc = acc + power.shift(k * j - choose2(j), 0, 0);
        power = &power * &ratio;
    }
    acc
}

/// Three-term recurrence `D_k = (1 - x^(k+offset) y (1+z)) D_{k-1} + x^(k+offset) y z D_{k-2}`
/// run from the two seeds up to `steps` applications.
fn run_recurrence(
    seeds: (TriSeries, TriSeries),
    first_k: u32,
    offset: i64,
    steps: u32,
    trunc: u32,
) -> TriSeries {
    let z = z_series(trunc);
    let one_plus_z = TriSeries::one(trunc) + &z;
    let (mut prev, mut cur) = seeds;
    for k in first_k..first_k + steps {
        let e = (k as i64 + offset) as u32;
        let lead = TriSeries::one(trunc) - one_plus_z.shift(e, 1, 0);
        let next = &lead * &cur + z.shift(e, 1, 0) * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `det N_m` for `m >= 0`.
pub fn n_det(m: u32, trunc: u32, mode: DetMode) -> TriSeries {
    match mode {
        DetMode::Closed => kernel_sum(m, m, trunc),
        DetMode::Recurrence => match m {
            0 => TriSeries::zero(trunc),
            _ => run_recurrence(
                (TriSeries::zero(trunc), TriSeries::one(trunc)),
                2,
                -1,
                m - 1,
                trunc,
            ),
        },
    }
}

/// `det C_m` for `m >= -1`.
///
/// # Panics
/// If `m < -1`.
pub fn c_det(m: i32, trunc: u32, mode: DetMode) -> TriSeries {
    assert!(m >= -1, "det C_m is defined for m >= -1 (got {m})");
    match mode {
        DetMode::Closed => {
            let k = (m + 1) as u32;
            let head = y_over_one_minus_x(trunc)
                .pow(k)
                .shift(choose2(k + 1), 0, 0);
            head + composition_ratio(trunc) * kernel_sum(k, k, trunc)
        }
        DetMode::Recurrence => match m {
            -1 | 0 => TriSeries::one(trunc),
            _ => run_recurrence(
                (TriSeries::one(trunc), TriSeries::one(trunc)),
                1,
                0,
                m as u32,
                trunc,
            ),
        },
    }
}

/// `det A = det C_{m-1} + z q x^m y · det C_{m-2}`
pub fn det_a(p: &PatternParams, mode: DetMode) -> TriSeries {
    let (m, n) = (p.m(), p.trunc());
    let m_i = m as i32;
    c_det(m_i - 1, n, mode) + z_series(n).shift(m, 1, 1) * c_det(m_i - 2, n, mode)
}

/// `det B = det N_m + z q x^m y · det N_{m-1}`
pub fn det_b(p: &PatternParams, mode: DetMode) -> TriSeries {
    let (m, n) = (p.m(), p.trunc());
    n_det(m, n, mode) + z_series(n).shift(m, 1, 1) * n_det(m - 1, n, mode)
}
