//! Cross-check suite: every closed form against the oracle and against the
//! other algebraic routes.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::combinat::{binomial, choose2};
use crate::detengine::{
    build_b, build_system, c_det, det_a, det_b, det_division_free, n_det, DetMode,
    PatternParams, DEFAULT_DET_LIMIT,
};
use crate::error::{Error, Result};
use crate::genfun::{dq_at_q1, staircase_gf, staircase_gf_cramer, total_staircases_formula};
use crate::oracle::Oracle;
use crate::series::TriSeries;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub m: u32,
    pub max_n: u32,
    pub trunc: u32,
    pub oracle: Oracle,
    pub det_limit: usize,
}

impl VerifyConfig {
    pub fn new(m: u32, max_n: u32) -> Self {
        VerifyConfig {
            m,
            max_n,
            trunc: max_n,
            oracle: Oracle::default(),
            det_limit: DEFAULT_DET_LIMIT,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
    /// Summary on success, first mismatch on failure.
    pub detail: String,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {:<22} {}", self.name, self.detail)
    }
}

fn report(name: &'static str, outcome: std::result::Result<String, String>) -> CheckReport {
    match outcome {
        Ok(detail) => CheckReport {
            name,
            passed: true,
            detail,
        },
        Err(detail) => CheckReport {
            name,
            passed: false,
            detail,
        },
    }
}

fn same(label: &str, left: &TriSeries, right: &TriSeries) -> std::result::Result<(), String> {
    match left.first_difference(right) {
        None => Ok(()),
        Some(d) => Err(format!("{label}: first difference at {d}")),
    }
}

/// Coefficients of `f` at `x^a` against the oracle histogram, both directions.
pub fn compare_with_oracle(
    f: &TriSeries,
    oracle: &Oracle,
    m: u32,
    max_n: u32,
) -> Result<std::result::Result<usize, String>> {
    let mut compared = 0;
    for a in 1..=max_n {
        let h = oracle.histogram(a, m)?;
        for ((b, s), count) in h.iter() {
            let got = f.coeff(a, b, s)?;
            if got != BigInt::from(count) {
                return Ok(Err(format!(
                    "x^{a} y^{b} q^{s}: series {got} != oracle {count}"
                )));
            }
            compared += 1;
        }
        for (_, b, s, c) in f.terms().filter(|t| t.0 == a) {
            if h.get(b, s) == 0 {
                return Ok(Err(format!("x^{a} y^{b} q^{s}: series {c} != oracle 0")));
            }
        }
    }
    Ok(Ok(compared))
}

/// Non-negativity, support and marginal laws on a computed table.
pub fn check_support(f: &TriSeries, m: u32, max_n: u32) -> std::result::Result<String, String> {
    let min_weight = choose2(m + 1);
    let mut marginals = std::collections::BTreeMap::<(u32, u32), BigInt>::new();
    for (a, b, s, c) in f.terms().filter(|t| t.0 <= max_n) {
        if c.is_negative() {
            return Err(format!("x^{a} y^{b} q^{s}: negative coefficient {c}"));
        }
        if b > a || s > (b + 1).saturating_sub(m) {
            return Err(format!("x^{a} y^{b} q^{s}: outside the support"));
        }
        if s >= 1 && a < min_weight {
            return Err(format!(
                "x^{a} y^{b} q^{s}: staircase in weight below {min_weight}"
            ));
        }
        *marginals.entry((a, b)).or_default() += c;
    }
    for a in 1..=max_n {
        for b in 0..=a {
            let got = marginals.get(&(a, b)).cloned().unwrap_or_default();
            let expected = binomial(a as i64 - 1, b as i64 - 1);
            if got != expected {
                return Err(format!("x^{a} y^{b}: sum over s is {got}, expected {expected}"));
            }
        }
    }
    Ok(format!("{} coefficients", f.term_count()))
}

/// Runs every check; a check that fails reports its first mismatch, while an
/// error (enumeration cap, non-unit) aborts the suite.
pub fn run_suite(cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let p = PatternParams::new(cfg.m, cfg.trunc)?;
    if cfg.max_n > cfg.trunc {
        return Err(Error::TruncationExceeded {
            degree: cfg.max_n,
            trunc: cfg.trunc,
        });
    }
    if cfg.max_n > cfg.oracle.cap() {
        return Err(Error::EnumerationLimit {
            n: cfg.max_n,
            cap: cfg.oracle.cap(),
        });
    }
    let (m, n) = (cfg.m, cfg.trunc);
    let f = staircase_gf(&p)?;
    let mut reports = Vec::new();

    reports.push(report(
        "oracle-vs-closed-form",
        compare_with_oracle(&f, &cfg.oracle, m, cfg.max_n)?
            .map(|k| format!("{k} coefficients, a <= {}", cfg.max_n)),
    ));

    let cramer = staircase_gf_cramer(&p)?;
    reports.push(report(
        "cramer-vs-closed-form",
        same("F", &cramer, &f).map(|_| format!("N = {n}")),
    ));

    let lemmas = (|| {
        for k in 0..=m + 1 {
            same(
                &format!("det N_{k}"),
                &n_det(k, n, DetMode::Closed),
                &n_det(k, n, DetMode::Recurrence),
            )?;
        }
        for k in -1..=m as i32 {
            same(
                &format!("det C_{k}"),
                &c_det(k, n, DetMode::Closed),
                &c_det(k, n, DetMode::Recurrence),
            )?;
        }
        let mut detail = "closed = recurrence".to_string();
        if (m as usize) < cfg.det_limit {
            let (a, _) = build_system(&p);
            let direct_a = det_division_free(&a, cfg.det_limit).map_err(|e| e.to_string())?;
            let direct_b =
                det_division_free(&build_b(&p), cfg.det_limit).map_err(|e| e.to_string())?;
            same("det A", &direct_a, &det_a(&p, DetMode::Closed))?;
            same("det B", &direct_b, &det_b(&p, DetMode::Closed))?;
            detail.push_str(", reductions = direct determinants");
        }
        Ok(detail)
    })();
    reports.push(report("lemma-recurrences", lemmas));

    let corollary = (|| {
        for total in 1..=cfg.max_n {
            for parts in 1..=total {
                let formula = total_staircases_formula(total, parts, m);
                let brute = cfg
                    .oracle
                    .total_staircases(total, parts, m)
                    .map_err(|e| e.to_string())?;
                if formula != BigInt::from(brute) {
                    return Err(format!(
                        "n={total} parts={parts}: formula {formula} != oracle {brute}"
                    ));
                }
            }
        }
        Ok(format!("n <= {}", cfg.max_n))
    })();
    reports.push(report("corollary-vs-oracle", corollary));

    let q1 = (|| {
        let at_one = f.subst_q1();
        for a in 0..=n {
            for b in 0..=a + 1 {
                let expected = if a == 0 {
                    BigInt::from(u8::from(b == 0))
                } else {
                    binomial(a as i64 - 1, b as i64 - 1)
                };
                let got = at_one.coeff(a, b, 0).map_err(|e| e.to_string())?;
                if got != expected {
                    return Err(format!("x^{a} y^{b}: {got} != {expected}"));
                }
            }
        }
        Ok(format!("{} coefficients at q = 1", at_one.term_count()))
    })();
    reports.push(report("q1-marginal", q1));

    let derivative = dq_at_q1(&p)?;
    reports.push(report(
        "derivative-at-q1",
        same("dF/dq", &derivative, &f.diff_q().subst_q1()).map(|_| format!("N = {n}")),
    ));

    let first_moment = (|| {
        let d = f.diff_q().subst_q1();
        for total in 1..=n {
            for parts in 1..=total {
                let got = d.coeff(total, parts, 0).map_err(|e| e.to_string())?;
                let expected = total_staircases_formula(total, parts, m);
                if got != expected {
                    return Err(format!("n={total} parts={parts}: {got} != {expected}"));
                }
            }
        }
        Ok(format!("N = {n}"))
    })();
    reports.push(report("first-moment", first_moment));

    reports.push(report("support-laws", check_support(&f, m, n)));

    Ok(reports)
}

/// True when every report passed.
pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.passed)
}
