//! Truncated trivariate power series with exact integer coefficients.
//!
//! A [`TriSeries`] is a polynomial in `x`, `y`, `q` where every term of
//! `x`-degree above the truncation order is dropped. Storage is dense in the
//! `x`-degree and sparse in `(y, q)`: slice `a` maps `(b, s)` to the
//! coefficient of `x^a y^b q^s`. Zero coefficients are never stored.
//!
//! Only `x` is truncated. `y` and `q` degrees are bounded in practice because
//! every series built from compositions has `b <= a` and `s <= b`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

type Slice = BTreeMap<(u32, u32), BigInt>;

#[derive(Clone, Debug)]
pub struct TriSeries {
    trunc: u32,
    slices: Vec<Slice>,
}

/// First coefficient at which two series disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Difference {
    pub a: u32,
    pub b: u32,
    pub s: u32,
    pub left: BigInt,
    pub right: BigInt,
}

impl fmt::Display for Difference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x^{} y^{} q^{}: {} != {}",
            self.a, self.b, self.s, self.left, self.right
        )
    }
}

fn add_into(slice: &mut Slice, key: (u32, u32), value: BigInt) {
    if value.is_zero() {
        return;
    }
    match slice.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(value);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += value;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn mul_slices(out: &mut Slice, lhs: &Slice, rhs: &Slice) {
    for (&(b1, s1), c1) in lhs {
        for (&(b2, s2), c2) in rhs {
            add_into(out, (b1 + b2, s1 + s2), c1 * c2);
        }
    }
}

impl TriSeries {
    pub fn zero(trunc: u32) -> Self {
        TriSeries {
            trunc,
            slices: vec![Slice::new(); trunc as usize + 1],
        }
    }

    pub fn one(trunc: u32) -> Self {
        Self::constant(1, trunc)
    }

    pub fn constant(c: impl Into<BigInt>, trunc: u32) -> Self {
        Self::monomial(0, 0, 0, c, trunc)
    }

    /// `coeff · x^a y^b q^s`, or zero when `a` lies beyond the truncation.
    pub fn monomial(a: u32, b: u32, s: u32, coeff: impl Into<BigInt>, trunc: u32) -> Self {
        let mut out = Self::zero(trunc);
        if a <= trunc {
            add_into(&mut out.slices[a as usize], (b, s), coeff.into());
        }
        out
    }

    pub fn x(trunc: u32) -> Self {
        Self::monomial(1, 0, 0, 1, trunc)
    }

    pub fn y(trunc: u32) -> Self {
        Self::monomial(0, 1, 0, 1, trunc)
    }

    pub fn q(trunc: u32) -> Self {
        Self::monomial(0, 0, 1, 1, trunc)
    }

    /// `1 / (1 - x)` = `1 + x + … + x^trunc`.
    pub fn geometric(trunc: u32) -> Self {
        let mut out = Self::zero(trunc);
        for slice in &mut out.slices {
            slice.insert((0, 0), BigInt::one());
        }
        out
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.slices.iter().all(Slice::is_empty)
    }

    pub fn coeff(&self, a: u32, b: u32, s: u32) -> Result<BigInt> {
        if a > self.trunc {
            return Err(Error::TruncationExceeded {
                degree: a,
                trunc: self.trunc,
            });
        }
        Ok(self.slices[a as usize]
            .get(&(b, s))
            .cloned()
            .unwrap_or_default())
    }

    /// Nonzero terms `(a, b, s, coeff)` in lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, u32, &BigInt)> + '_ {
        self.slices
            .iter()
            .enumerate()
            .flat_map(|(a, slice)| slice.iter().map(move |(&(b, s), c)| (a as u32, b, s, c)))
    }

    pub fn term_count(&self) -> usize {
        self.slices.iter().map(Slice::len).sum()
    }

    /// Drops every term of `x`-degree above `trunc` (no-op if already lower).
    pub fn truncate(&self, trunc: u32) -> Self {
        let trunc = trunc.min(self.trunc);
        TriSeries {
            trunc,
            slices: self.slices[..=trunc as usize].to_vec(),
        }
    }

    pub fn scale(&self, factor: impl Into<BigInt>) -> Self {
        let factor = factor.into();
        if factor.is_zero() {
            return Self::zero(self.trunc);
        }
        self.map_slices(|slice| slice.iter().map(|(&k, c)| (k, c * &factor)).collect())
    }

    /// Multiplies by the monomial `x^a y^b q^s`.
    pub fn shift(&self, a: u32, b: u32, s: u32) -> Self {
        let mut out = Self::zero(self.trunc);
        for (i, slice) in self.slices.iter().enumerate() {
            let target = i + a as usize;
            if target > self.trunc as usize {
                break;
            }
            out.slices[target] = slice
                .iter()
                .map(|(&(bb, ss), c)| ((bb + b, ss + s), c.clone()))
                .collect();
        }
        out
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.trunc);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse in the truncated ring.
    ///
    /// The `x^0` part must be exactly `±1`: anything else in it (a stray `y` or
    /// `q` term) would need an inverse that is infinite in an untruncated
    /// variable.
    pub fn inv(&self) -> Result<Self> {
        let head = &self.slices[0];
        let constant = head.get(&(0, 0)).cloned().unwrap_or_default();
        if !(constant.abs().is_one()) || head.len() != 1 {
            return Err(Error::NonUnit {
                extra: head.len() - usize::from(!constant.is_zero()),
                constant,
            });
        }
        let mut out = Self::zero(self.trunc);
        out.slices[0].insert((0, 0), constant.clone());
        for k in 1..=self.trunc as usize {
            let mut acc = Slice::new();
            for i in 1..=k {
                mul_slices(&mut acc, &self.slices[i], &out.slices[k - i]);
            }
            // constant is ±1, so dividing by it is multiplying by it.
            let neg_c = -&constant;
            out.slices[k] = acc.into_iter().map(|(key, c)| (key, c * &neg_c)).collect();
        }
        Ok(out)
    }

    /// The series at `q = 1`: coefficients are summed over the `q`-degree.
    pub fn subst_q1(&self) -> Self {
        self.map_slices(|slice| {
            let mut out = Slice::new();
            for (&(b, _), c) in slice {
                add_into(&mut out, (b, 0), c.clone());
            }
            out
        })
    }

    /// Formal partial derivative in `q`.
    pub fn diff_q(&self) -> Self {
        self.map_slices(|slice| {
            slice
                .iter()
                .filter(|(&(_, s), _)| s > 0)
                .map(|(&(b, s), c)| ((b, s - 1), c * s))
                .collect()
        })
    }

    /// Coefficient of `q^s`, as a series in `x` and `y` only.
    pub fn q_coefficient(&self, s: u32) -> Self {
        self.map_slices(|slice| {
            slice
                .iter()
                .filter(|(&(_, ss), _)| ss == s)
                .map(|(&(b, _), c)| ((b, 0), c.clone()))
                .collect()
        })
    }

    /// The first term, in `(a, b, s)` order, where the two series differ up to
    /// their common truncation.
    pub fn first_difference(&self, other: &TriSeries) -> Option<Difference> {
        let t = self.trunc.min(other.trunc) as usize;
        let zero = BigInt::zero();
        for a in 0..=t {
            let (l, r) = (&self.slices[a], &other.slices[a]);
            if l == r {
                continue;
            }
            let keys: std::collections::BTreeSet<_> = l.keys().chain(r.keys()).collect();
            for &(b, s) in keys {
                let lc = l.get(&(b, s)).unwrap_or(&zero);
                let rc = r.get(&(b, s)).unwrap_or(&zero);
                if lc != rc {
                    return Some(Difference {
                        a: a as u32,
                        b,
                        s,
                        left: lc.clone(),
                        right: rc.clone(),
                    });
                }
            }
        }
        None
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&SeriesJson::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: SeriesJson = serde_json::from_str(text)?;
        Self::try_from(raw)
    }

    fn map_slices(&self, f: impl Fn(&Slice) -> Slice) -> Self {
        TriSeries {
            trunc: self.trunc,
            slices: self.slices.iter().map(f).collect(),
        }
    }

    fn zip_with(&self, other: &TriSeries, sign: i32) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let mut out = self.truncate(trunc);
        for (slice, rhs) in out.slices.iter_mut().zip(&other.slices) {
            for (&k, c) in rhs {
                add_into(slice, k, if sign < 0 { -c } else { c.clone() });
            }
        }
        out
    }
}

impl PartialEq for TriSeries {
    /// Coefficient-wise equality up to the common truncation.
    fn eq(&self, other: &Self) -> bool {
        let t = self.trunc.min(other.trunc) as usize;
        self.slices[..=t] == other.slices[..=t]
    }
}

impl Add<&TriSeries> for &TriSeries {
    type Output = TriSeries;
    fn add(self, rhs: &TriSeries) -> TriSeries {
        self.zip_with(rhs, 1)
    }
}

impl Sub<&TriSeries> for &TriSeries {
    type Output = TriSeries;
    fn sub(self, rhs: &TriSeries) -> TriSeries {
        self.zip_with(rhs, -1)
    }
}

impl Mul<&TriSeries> for &TriSeries {
    type Output = TriSeries;
    fn mul(self, rhs: &TriSeries) -> TriSeries {
        let trunc = self.trunc.min(rhs.trunc) as usize;
        let mut out = TriSeries::zero(trunc as u32);
        for (i, lhs) in self.slices[..=trunc].iter().enumerate() {
            if lhs.is_empty() {
                continue;
            }
            for (j, r) in rhs.slices[..=trunc - i].iter().enumerate() {
                mul_slices(&mut out.slices[i + j], lhs, r);
            }
        }
        out
    }
}

impl Neg for &TriSeries {
    type Output = TriSeries;
    fn neg(self) -> TriSeries {
        self.map_slices(|slice| slice.iter().map(|(&k, c)| (k, -c)).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<TriSeries> for TriSeries {
            type Output = TriSeries;
            fn $method(self, rhs: TriSeries) -> TriSeries {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&TriSeries> for TriSeries {
            type Output = TriSeries;
            fn $method(self, rhs: &TriSeries) -> TriSeries {
                (&self).$method(rhs)
            }
        }
        impl $tr<TriSeries> for &TriSeries {
            type Output = TriSeries;
            fn $method(self, rhs: TriSeries) -> TriSeries {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for TriSeries {
    type Output = TriSeries;
    fn neg(self) -> TriSeries {
        -&self
    }
}

impl fmt::Display for TriSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, b, s, c) in self.terms() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let mut factors = Vec::new();
            for (var, e) in [("x", a), ("y", b), ("q", s)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            if factors.is_empty() || !mag.is_one() {
                factors.insert(0, mag.to_string());
            }
            f.write_str(&factors.join("*"))?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.trunc + 1)
    }
}

/// Wire form: `{"trunc": N, "terms": [{"a","b","s","c": "<decimal>"}]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesJson {
    pub trunc: u32,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub a: u32,
    pub b: u32,
    pub s: u32,
    pub c: String,
}

impl From<&TriSeries> for SeriesJson {
    fn from(series: &TriSeries) -> Self {
        SeriesJson {
            trunc: series.trunc,
            terms: series
                .terms()
                .map(|(a, b, s, c)| TermJson {
                    a,
                    b,
                    s,
                    c: c.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<SeriesJson> for TriSeries {
    type Error = Error;

    fn try_from(raw: SeriesJson) -> Result<Self> {
        let mut out = TriSeries::zero(raw.trunc);
        for t in raw.terms {
            if t.a > raw.trunc {
                return Err(Error::MalformedSeries(format!(
                    "term x^{} beyond truncation {}",
                    t.a, raw.trunc
                )));
            }
            let c: BigInt = t
                .c
                .parse()
                .map_err(|_| Error::MalformedSeries(format!("bad coefficient `{}`", t.c)))?;
            add_into(&mut out.slices[t.a as usize], (t.b, t.s), c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const N: u32 = 20;

    #[test]
    fn monomials() {
        let one = TriSeries::monomial(0, 0, 0, 1, N);
        assert_eq!(one, TriSeries::one(N));
        assert_eq!(one.term_count(), 1);

        let m = TriSeries::monomial(3, 2, 1, 1, N);
        assert_eq!(m.coeff(3, 2, 1).unwrap(), BigInt::one());
        assert_eq!(m.term_count(), 1);

        assert!(TriSeries::monomial(25, 0, 0, 7, N).is_zero());
        assert!(TriSeries::monomial(2, 0, 0, 0, N).is_zero());
    }

    #[test]
    fn geometric_identity() {
        let one_minus_x = TriSeries::one(N) - TriSeries::x(N);
        assert_eq!(&one_minus_x * &TriSeries::geometric(N), TriSeries::one(N));
        assert_eq!(one_minus_x.inv().unwrap(), TriSeries::geometric(N));
    }

    #[test]
    fn ring_identities() {
        let xy = TriSeries::monomial(1, 1, 0, 1, N);
        assert_eq!(&xy * &xy, TriSeries::monomial(2, 2, 0, 1, N));
        let f = &xy + &TriSeries::monomial(4, 1, 3, -5, N);
        assert_eq!(&f * &TriSeries::one(N), f);
        assert!((&f - &f).is_zero());
        assert_eq!(-(-f.clone()), f);
    }

    #[test]
    fn inverse_of_one() {
        assert_eq!(TriSeries::one(N).inv().unwrap(), TriSeries::one(N));
        let minus_one = TriSeries::constant(-1, N);
        assert_eq!(minus_one.inv().unwrap(), minus_one);
    }

    #[test]
    fn inverse_of_composition_denominator() {
        let x = TriSeries::x(N);
        let d = TriSeries::one(N) - &x - TriSeries::monomial(1, 1, 0, 1, N);
        let g = d.inv().unwrap();
        assert_eq!(&d * &g, TriSeries::one(N));
        // 1/(1-x-xy) = Σ x^a (1+y)^a
        assert_eq!(g.coeff(5, 2, 0).unwrap(), BigInt::from(10));
    }

    #[test]
    fn non_units_rejected() {
        let two = TriSeries::constant(2, N);
        assert!(matches!(two.inv(), Err(Error::NonUnit { .. })));
        assert!(TriSeries::x(N).inv().is_err());
        let one_minus_y = TriSeries::one(N) - TriSeries::y(N);
        assert!(matches!(
            one_minus_y.inv(),
            Err(Error::NonUnit { extra: 1, .. })
        ));
    }

    #[test]
    fn coefficient_access() {
        let g = TriSeries::geometric(N);
        assert_eq!(g.coeff(5, 0, 0).unwrap(), BigInt::one());
        assert_eq!(TriSeries::one(N).coeff(0, 0, 0).unwrap(), BigInt::one());
        assert!(matches!(
            g.coeff(N + 1, 0, 0),
            Err(Error::TruncationExceeded { degree: 21, trunc: 20 })
        ));
    }

    #[test]
    fn q_substitution_and_derivative() {
        assert_eq!(TriSeries::q(N).subst_q1(), TriSeries::one(N));
        let f = TriSeries::monomial(3, 2, 0, 1, N) + TriSeries::monomial(3, 2, 1, 1, N);
        assert_eq!(f.subst_q1(), TriSeries::monomial(3, 2, 0, 2, N));

        let q2 = TriSeries::monomial(0, 0, 2, 1, N);
        assert_eq!(q2.diff_q(), TriSeries::monomial(0, 0, 1, 2, N));
        assert!(TriSeries::monomial(3, 2, 0, 1, N).diff_q().is_zero());

        let mixed = TriSeries::monomial(2, 1, 3, 4, N) + TriSeries::monomial(2, 1, 0, 9, N);
        assert_eq!(mixed.q_coefficient(0), TriSeries::monomial(2, 1, 0, 9, N));
        assert_eq!(mixed.q_coefficient(3), TriSeries::monomial(2, 1, 0, 4, N));
    }

    #[test]
    fn mixed_truncations_take_the_minimum() {
        let a = TriSeries::geometric(10);
        let b = TriSeries::geometric(5);
        assert_eq!((&a + &b).trunc(), 5);
        assert_eq!((&a * &b).trunc(), 5);
        assert_eq!((&a * &b).coeff(5, 0, 0).unwrap(), BigInt::from(6));
    }

    #[test]
    fn first_difference_reports_lowest_term() {
        let a = TriSeries::monomial(2, 1, 0, 3, N) + TriSeries::monomial(4, 0, 0, 1, N);
        let b = TriSeries::monomial(2, 1, 0, 3, N) + TriSeries::monomial(3, 2, 1, 1, N);
        let d = a.first_difference(&b).unwrap();
        assert_eq!((d.a, d.b, d.s), (3, 2, 1));
        assert_eq!(d.left, BigInt::zero());
        assert_eq!(d.right, BigInt::one());
        assert!(a.first_difference(&a).is_none());
    }

    #[test]
    fn json_shape() {
        let f = TriSeries::monomial(1, 1, 1, 2, 3) - TriSeries::one(3);
        let v: serde_json::Value = serde_json::from_str(&f.to_json().unwrap()).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "trunc": 3,
                "terms": [
                    {"a": 0, "b": 0, "s": 0, "c": "-1"},
                    {"a": 1, "b": 1, "s": 1, "c": "2"}
                ]
            })
        );
        assert!(TriSeries::from_json(r#"{"trunc":1,"terms":[{"a":2,"b":0,"s":0,"c":"1"}]}"#).is_err());
        assert!(TriSeries::from_json(r#"{"trunc":1,"terms":[{"a":0,"b":0,"s":0,"c":"x"}]}"#).is_err());
    }

    #[test]
    fn display() {
        let f = TriSeries::one(4) - TriSeries::monomial(1, 1, 0, 1, 4)
            + TriSeries::monomial(3, 0, 2, 5, 4);
        assert_eq!(f.to_string(), "1 - x*y + 5*x^3*q^2 + O(x^5)");
        assert_eq!(TriSeries::zero(2).to_string(), "0 + O(x^3)");
    }

    #[test]
    fn pow_matches_repeated_product() {
        let f = TriSeries::one(12) + TriSeries::monomial(1, 1, 1, -2, 12) + TriSeries::x(12);
        let mut acc = TriSeries::one(12);
        for k in 0..6 {
            assert_eq!(f.pow(k), acc);
            acc = &acc * &f;
        }
    }

    fn sparse_series(trunc: u32) -> impl Strategy<Value = TriSeries> {
        prop::collection::vec((0..=trunc, 0u32..4, 0u32..4, -5i64..=5), 0..8).prop_map(
            move |terms| {
                terms.into_iter().fold(TriSeries::zero(trunc), |acc, (a, b, s, c)| {
                    acc + TriSeries::monomial(a, b, s, c, trunc)
                })
            },
        )
    }

    fn unit_series(trunc: u32) -> impl Strategy<Value = TriSeries> {
        (sparse_series(trunc), prop::bool::ANY).prop_map(move |(f, neg)| {
            let tail = f.shift(1, 0, 0);
            TriSeries::constant(if neg { -1 } else { 1 }, trunc) + tail
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(f in sparse_series(12), g in sparse_series(12), h in sparse_series(12)) {
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&f + &g, &g + &f);
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        }

        #[test]
        fn inverse_multiplies_back(f in unit_series(12)) {
            prop_assert_eq!(&f * &f.inv().unwrap(), TriSeries::one(12));
        }

        #[test]
        fn truncation_coherence(f in sparse_series(20), g in sparse_series(20), u in unit_series(20)) {
            let (f10, g10, u10) = (f.truncate(10), g.truncate(10), u.truncate(10));
            prop_assert_eq!((&f * &g).truncate(10), &f10 * &g10);
            prop_assert_eq!((&f + &g).truncate(10), &f10 + &g10);
            prop_assert_eq!((-&f).truncate(10), -&f10);
            prop_assert_eq!(u.inv().unwrap().truncate(10), u10.inv().unwrap());
            prop_assert_eq!(f.diff_q().truncate(10), f10.diff_q());
            prop_assert_eq!(f.subst_q1().truncate(10), f10.subst_q1());
        }

        #[test]
        fn json_round_trip(f in sparse_series(9)) {
            let back = TriSeries::from_json(&f.to_json().unwrap()).unwrap();
            prop_assert_eq!(back.trunc(), f.trunc());
            prop_assert_eq!(back, f);
        }
    }
}
