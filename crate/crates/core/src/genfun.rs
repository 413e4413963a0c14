//! The generating function `F(x, y, q)` and its specialisations.
//!
//! The coefficient of `x^a y^b q^s` in `F` is the number of compositions of `a`
//! with `b` parts containing exactly `s` occurrences of `1⁺2⁺…m⁺`.
//! Several interchangeable [`GfStrategy`] implementations produce `F`; they
//! must agree coefficient-wise and are registered by name in
//! [`GfRegistry::default`].

use num_bigint::BigInt;
use num_traits::Zero;

use crate::combinat::{binomial, choose2};
use crate::detengine::{
    build_b, build_system, det_a, det_b, n_det, BirdDeterminant, DetMode, DeterminantAlgorithm,
    LaplaceExpansion, PatternParams, DEFAULT_DET_LIMIT,
};
use crate::error::{Error, Result};
use crate::registry::{Named, Registry};
use crate::series::TriSeries;

pub trait GfStrategy: Named + Send + Sync {
    fn generating_function(&self, p: &PatternParams) -> Result<TriSeries>;
}

pub type GfRegistry = Registry<dyn GfStrategy>;

impl Default for GfRegistry {
    fn default() -> Self {
        let mut reg: Self = Registry::empty("generating-function strategy");
        reg.register(Box::new(ClosedForm));
        reg.register(Box::new(CramerDirect::laplace()));
        reg.register(Box::new(CramerDirect::bird()));
        reg.register(Box::new(CramerReduced));
        reg
    }
}

/// Ratio of the `N_m` numerator and the rewritten denominator.
#[derive(Debug, Clone, Copy, Default)]
pub struct ClosedForm;

impl Named for ClosedForm {
    fn name(&self) -> &'static str {
        "closed"
    }

    fn description(&self) -> &'static str {
        "closed form in det N_m and det N_(m-1)"
    }
}

impl GfStrategy for ClosedForm {
    fn generating_function(&self, p: &PatternParams) -> Result<TriSeries> {
        let (m, n) = (p.m(), p.trunc());
        let geometric = TriSeries::geometric(n);
        let numerator = n_det(m, n, DetMode::Closed)
            - geometric.shift(m, 1, 1) * n_det(m - 1, n, DetMode::Closed);
        let ratio = geometric.shift(0, 1, 0);
        let one_minus_q = TriSeries::one(n) - TriSeries::q(n);
        let composition = (TriSeries::one(n) - TriSeries::x(n) - TriSeries::monomial(1, 1, 0, 1, n))
            * &geometric;
        let denominator =
            one_minus_q * ratio.pow(m).shift(choose2(m + 1), 0, 0) + composition * &numerator;
        Ok(numerator * denominator.inv()?)
    }
}

/// `det B / det A` with both determinants computed directly from the matrices.
pub struct CramerDirect {
    name: &'static str,
    description: &'static str,
    algorithm: Box<dyn DeterminantAlgorithm>,
    limit: usize,
}

impl CramerDirect {
    pub fn new(
        name: &'static str,
        description: &'static str,
        algorithm: Box<dyn DeterminantAlgorithm>,
        limit: usize,
    ) -> Self {
        CramerDirect {
            name,
            description,
            algorithm,
            limit,
        }
    }

    pub fn laplace() -> Self {
        Self::new(
            "cramer",
            "det B / det A, cofactor expansion of the assembled matrices",
            Box::new(LaplaceExpansion),
            DEFAULT_DET_LIMIT,
        )
    }

    pub fn bird() -> Self {
        Self::new(
            "cramer-bird",
            "det B / det A, Bird's algorithm on the assembled matrices",
            Box::new(BirdDeterminant),
            DEFAULT_DET_LIMIT,
        )
    }
}

impl Named for CramerDirect {
    fn name(&self) -> &'static str {
        self.name
    }

    fn description(&self) -> &'static str {
        self.description
    }
}

impl GfStrategy for CramerDirect {
    fn generating_function(&self, p: &PatternParams) -> Result<TriSeries> {
        let dim = p.m() as usize + 1;
        if dim > self.limit {
            return Err(Error::DeterminantLimit {
                dim,
                limit: self.limit,
            });
        }
        let (a, _) = build_system(p);
        let da = self.algorithm.determinant(&a);
        let db = self.algorithm.determinant(&build_b(p));
        Ok(db * da.inv()?)
    }
}

/// `det B / det A` with the determinants taken from the last-row reductions.
#[derive(Debug, Clone, Copy, Default)]
pub struct CramerReduced;

impl Named for CramerReduced {
    fn name(&self) -> &'static str {
        "cramer-reduced"
    }

    fn description(&self) -> &'static str {
        "det B / det A via the det N_m and det C_m recurrences"
    }
}

impl GfStrategy for CramerReduced {
    fn generating_function(&self, p: &PatternParams) -> Result<TriSeries> {
        let da = det_a(p, DetMode::Recurrence);
        let db = det_b(p, DetMode::Recurrence);
        Ok(db * da.inv()?)
    }
}

/// `F` from the closed form.
pub fn staircase_gf(p: &PatternParams) -> Result<TriSeries> {
    ClosedForm.generating_function(p)
}

/// `F` by Cramer's rule: direct determinants while the system fits under
/// [`DEFAULT_DET_LIMIT`], the reduced determinants beyond it.
pub fn staircase_gf_cramer(p: &PatternParams) -> Result<TriSeries> {
    if (p.m() as usize) < DEFAULT_DET_LIMIT {
        CramerDirect::laplace().generating_function(p)
    } else {
        CramerReduced.generating_function(p)
    }
}

/// `(1 - x) / (1 - x - xy)`: compositions by size and number of parts.
pub fn composition_gf(trunc: u32) -> Result<TriSeries> {
    let denominator =
        TriSeries::one(trunc) - TriSeries::x(trunc) - TriSeries::monomial(1, 1, 0, 1, trunc);
    Ok((TriSeries::one(trunc) - TriSeries::x(trunc)) * denominator.inv()?)
}

/// `F` at `q = 1`.
pub fn gf_at_q1(p: &PatternParams) -> Result<TriSeries> {
    Ok(staircase_gf(p)?.subst_q1())
}

/// `∂F/∂q` at `q = 1` in closed form:
/// `x^C(m+1,2) y^m / ((1 - x - xy)² (1 - x)^(m-2))`.
pub fn dq_at_q1(p: &PatternParams) -> Result<TriSeries> {
    let (m, n) = (p.m(), p.trunc());
    let denominator = TriSeries::one(n) - TriSeries::x(n) - TriSeries::monomial(1, 1, 0, 1, n);
    let inv = denominator.inv()?;
    let one_minus_x = TriSeries::one(n) - TriSeries::x(n);
    let power = if m <= 2 {
        one_minus_x.pow(2 - m)
    } else {
        TriSeries::geometric(n).pow(m - 2)
    };
    Ok((&inv * &inv * power).shift(choose2(m + 1), m, 0))
}

/// Total occurrences of `1⁺…m⁺` over all compositions of `n` with `parts`
/// parts: `(parts - m + 1) · C(n - 1 - C(m,2), parts - 1)`, and zero when
/// `parts < m` (where the product formula would go negative).
pub fn total_staircases_formula(n: u32, parts: u32, m: u32) -> BigInt {
    if parts < m {
        return BigInt::zero();
    }
    let factor = BigInt::from(parts - m + 1);
    factor * binomial(n as i64 - 1 - choose2(m) as i64, parts as i64 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{staircase_histogram, total_staircases_oracle};

    fn params(m: u32, n: u32) -> PatternParams {
        PatternParams::new(m, n).unwrap()
    }

    #[test]
    fn three_two_one_for_pairs() {
        let f = staircase_gf(&params(2, 10)).unwrap();
        assert_eq!(f.coeff(3, 2, 1).unwrap(), BigInt::from(1));
    }

    #[test]
    fn constant_term_is_one() {
        for m in 1..=6 {
            let f = staircase_gf(&params(m, 8)).unwrap();
            assert_eq!(f.coeff(0, 0, 0).unwrap(), BigInt::from(1));
        }
    }

    #[test]
    fn single_part_pattern_marks_every_part() {
        let f = staircase_gf(&params(1, 10)).unwrap();
        for (a, b, s, _) in f.terms() {
            assert_eq!(s, b, "x^{a} y^{b} q^{s}");
        }
        for a in 1..=10 {
            for b in 1..=a {
                assert_eq!(
                    f.coeff(a, b, b).unwrap(),
                    binomial(a as i64 - 1, b as i64 - 1)
                );
            }
        }
    }

    #[test]
    fn oracle_agreement_small() {
        for m in 1..=3 {
            let f = staircase_gf(&params(m, 10)).unwrap();
            for a in 1..=10 {
                let h = staircase_histogram(a, m).unwrap();
                let mut seen = 0;
                for (aa, b, s, c) in f.terms().filter(|t| t.0 == a) {
                    assert_eq!(c, &BigInt::from(h.get(b, s)), "m={m} a={aa} b={b} s={s}");
                    seen += 1;
                }
                assert_eq!(seen, h.len());
            }
        }
    }

    #[test]
    fn strategies_agree() {
        let reg = GfRegistry::default();
        assert_eq!(
            reg.names(),
            vec!["closed", "cramer", "cramer-bird", "cramer-reduced"]
        );
        for m in 1..=4 {
            let p = params(m, 10);
            let reference = staircase_gf(&p).unwrap();
            for strategy in reg.iter() {
                assert_eq!(
                    strategy.generating_function(&p).unwrap(),
                    reference,
                    "{} m={m}",
                    strategy.name()
                );
            }
        }
    }

    #[test]
    fn cramer_direct_respects_limit() {
        let p = params(8, 6);
        let reg = GfRegistry::default();
        assert!(matches!(
            reg.get("cramer").unwrap().generating_function(&p),
            Err(Error::DeterminantLimit { dim: 9, limit: 8 })
        ));
        // Falls back to the reduced determinants.
        assert_eq!(
            staircase_gf_cramer(&p).unwrap(),
            staircase_gf(&p).unwrap()
        );
    }

    #[test]
    fn avoiders_of_pairs() {
        // q = 0 slice for m = 2 counts compositions with no 1⁺2⁺.
        let f = staircase_gf_cramer(&params(2, 12)).unwrap().q_coefficient(0);
        for a in 1..=12 {
            let h = staircase_histogram(a, 2).unwrap();
            for b in 1..=a {
                assert_eq!(f.coeff(a, b, 0).unwrap(), BigInt::from(h.get(b, 0)));
            }
        }
    }

    #[test]
    fn q_one_forgets_the_pattern() {
        let comp = composition_gf(20).unwrap();
        assert_eq!(comp.coeff(5, 3, 0).unwrap(), BigInt::from(6));
        assert_eq!(
            gf_at_q1(&params(2, 20)).unwrap(),
            gf_at_q1(&params(5, 20)).unwrap()
        );
        assert_eq!(gf_at_q1(&params(3, 20)).unwrap(), comp);
    }

    #[test]
    fn derivative_examples() {
        let d1 = dq_at_q1(&params(1, 12)).unwrap();
        for n in 1..=12 {
            for l in 1..=n {
                assert_eq!(
                    d1.coeff(n, l, 0).unwrap(),
                    BigInt::from(l) * binomial(n as i64 - 1, l as i64 - 1)
                );
            }
        }
        let d2 = dq_at_q1(&params(2, 12)).unwrap();
        assert_eq!(d2.coeff(4, 2, 0).unwrap(), BigInt::from(2));
        let d3 = dq_at_q1(&params(3, 12)).unwrap();
        for n in 0..=12 {
            assert!(d3.coeff(n, 0, 0).unwrap().is_zero());
            assert!(d3.coeff(n, 1, 0).unwrap().is_zero());
        }
    }

    #[test]
    fn derivative_matches_symbolic_derivative() {
        for m in 1..=4 {
            let p = params(m, 14);
            let symbolic = staircase_gf(&p).unwrap().diff_q().subst_q1();
            assert_eq!(dq_at_q1(&p).unwrap(), symbolic, "m={m}");
        }
    }

    #[test]
    fn corollary_examples() {
        assert_eq!(total_staircases_formula(4, 2, 2), BigInt::from(2));
        assert_eq!(total_staircases_formula(3, 2, 2), BigInt::from(1));
        assert_eq!(total_staircases_formula(3, 1, 3), BigInt::zero());
        for n in 1..=10 {
            for l in 1..=n {
                assert_eq!(
                    total_staircases_formula(n, l, 1),
                    BigInt::from(l) * binomial(n as i64 - 1, l as i64 - 1)
                );
            }
        }
    }

    #[test]
    fn corollary_matches_oracle() {
        for m in 1..=4 {
            for n in 1..=11 {
                for l in 1..=n {
                    assert_eq!(
                        total_staircases_formula(n, l, m),
                        BigInt::from(total_staircases_oracle(n, l, m).unwrap()),
                        "n={n} l={l} m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn first_moment_law() {
        for m in 1..=4 {
            let f = staircase_gf(&params(m, 14)).unwrap();
            let mut moments = std::collections::BTreeMap::<(u32, u32), BigInt>::new();
            for (a, b, s, c) in f.terms() {
                *moments.entry((a, b)).or_default() += c * s;
            }
            for n in 1..=14 {
                for l in 0..=n + 1 {
                    let got = moments.get(&(n, l)).cloned().unwrap_or_default();
                    assert_eq!(got, total_staircases_formula(n, l.max(1), m) * u32::from(l > 0));
                }
            }
        }
    }
}
