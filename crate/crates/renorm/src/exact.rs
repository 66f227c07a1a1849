//! Exact arithmetic over numbers of the form `q + m·κ + n·δ`, where `q` is a
//! rational and κ, δ are formal positive infinitesimals.
//!
//! Comparisons are resolved "for all sufficiently small κ, δ > 0": rational
//! parts dominate, and when they tie the infinitesimal coefficients decide.
//! The two infinitesimals are never related to each other by the underlying
//! theory, so a fixed priority (δ before κ) makes the order total; comparisons
//! whose outcome depends on that priority are flagged so callers can surface a
//! warning.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// Convenience constructor for an exact rational from an integer pair.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `q + m·κ + n·δ` with exact rational `q` and integer coefficients `m`, `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactValue {
    pub rational: BigRational,
    pub kappa: i64,
    pub delta: i64,
}

impl ExactValue {
    pub fn new(rational: BigRational, kappa: i64, delta: i64) -> Self {
        ExactValue { rational, kappa, delta }
    }

    pub fn from_int(n: i64) -> Self {
        ExactValue::new(BigRational::from(BigInt::from(n)), 0, 0)
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        ExactValue::new(ratio(num, den), 0, 0)
    }

    pub fn from_rational(q: BigRational) -> Self {
        ExactValue::new(q, 0, 0)
    }

    /// `m·κ`.
    pub fn kappa(m: i64) -> Self {
        ExactValue::new(BigRational::zero(), m, 0)
    }

    /// `n·δ`.
    pub fn delta(n: i64) -> Self {
        ExactValue::new(BigRational::zero(), 0, n)
    }

    pub fn zero() -> Self {
        ExactValue::from_int(0)
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.kappa == 0 && self.delta == 0
    }

    /// Strict positivity for all sufficiently small κ, δ > 0.
    pub fn is_positive(&self) -> bool {
        self.compare(&ExactValue::zero()) == Ordering::Greater
    }

    /// Non-negativity of every component separately (a stronger statement
    /// than `>= 0` in the infinitesimal order).
    pub fn is_componentwise_nonneg(&self) -> bool {
        !self.rational.is_negative() && self.kappa >= 0 && self.delta >= 0
    }

    /// Ordering valid for all sufficiently small κ, δ > 0. Rational parts are
    /// compared first; on a tie the δ coefficients decide, then the κ
    /// coefficients.
    pub fn compare(&self, other: &ExactValue) -> Ordering {
        self.compare_detailed(other).0
    }

    /// Like [`compare`](Self::compare), but also reports whether the verdict
    /// depends on the artifact's δ-before-κ priority convention (i.e. whether
    /// comparing κ coefficients first would have given a different answer).
    pub fn compare_detailed(&self, other: &ExactValue) -> (Ordering, bool) {
        let rat = self.rational.cmp(&other.rational);
        if rat != Ordering::Equal {
            return (rat, false);
        }
        let by_delta = (self.delta, self.kappa).cmp(&(other.delta, other.kappa));
        let by_kappa = (self.kappa, self.delta).cmp(&(other.kappa, other.delta));
        (by_delta, by_delta != by_kappa)
    }

    /// Floating-point evaluation at concrete small κ, δ (sanity cross-checks
    /// and numeric interop only; all decisions go through [`compare`](Self::compare)).
    pub fn eval_f64(&self, kappa: f64, delta: f64) -> f64 {
        rational_to_f64(&self.rational) + self.kappa as f64 * kappa + self.delta as f64 * delta
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        // κ/δ coefficients stay integers only under integer scaling; rational
        // scaling of a pure rational is the common case.
        assert!(
            self.kappa == 0 && self.delta == 0 || c.is_integer(),
            "rational scaling of infinitesimal parts would leave the ring"
        );
        if c.is_integer() {
            let f: i64 = int_part(c);
            ExactValue::new(&self.rational * c, self.kappa * f, self.delta * f)
        } else {
            ExactValue::new(&self.rational * c, 0, 0)
        }
    }
}

fn int_part(c: &BigRational) -> i64 {
    use num::ToPrimitive;
    c.to_integer().to_i64().expect("scale factor out of i64 range")
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    use num::ToPrimitive;
    q.to_f64().expect("rational out of f64 range")
}

impl Add for ExactValue {
    type Output = ExactValue;
    fn add(self, rhs: ExactValue) -> ExactValue {
        ExactValue::new(self.rational + rhs.rational, self.kappa + rhs.kappa, self.delta + rhs.delta)
    }
}

impl<'a> Add<&'a ExactValue> for ExactValue {
    type Output = ExactValue;
    fn add(self, rhs: &ExactValue) -> ExactValue {
        ExactValue::new(self.rational + &rhs.rational, self.kappa + rhs.kappa, self.delta + rhs.delta)
    }
}

impl AddAssign<&ExactValue> for ExactValue {
    fn add_assign(&mut self, rhs: &ExactValue) {
        self.rational += &rhs.rational;
        self.kappa += rhs.kappa;
        self.delta += rhs.delta;
    }
}

impl Sub for ExactValue {
    type Output = ExactValue;
    fn sub(self, rhs: ExactValue) -> ExactValue {
        ExactValue::new(self.rational - rhs.rational, self.kappa - rhs.kappa, self.delta - rhs.delta)
    }
}

impl<'a> Sub<&'a ExactValue> for ExactValue {
    type Output = ExactValue;
    fn sub(self, rhs: &ExactValue) -> ExactValue {
        ExactValue::new(self.rational - &rhs.rational, self.kappa - rhs.kappa, self.delta - rhs.delta)
    }
}

impl SubAssign<&ExactValue> for ExactValue {
    fn sub_assign(&mut self, rhs: &ExactValue) {
        self.rational -= &rhs.rational;
        self.kappa -= rhs.kappa;
        self.delta -= rhs.delta;
    }
}

impl Neg for ExactValue {
    type Output = ExactValue;
    fn neg(self) -> ExactValue {
        ExactValue::new(-self.rational, -self.kappa, -self.delta)
    }
}

impl Mul<i64> for ExactValue {
    type Output = ExactValue;
    fn mul(self, rhs: i64) -> ExactValue {
        ExactValue::new(self.rational * BigInt::from(rhs), self.kappa * rhs, self.delta * rhs)
    }
}

impl Sum for ExactValue {
    fn sum<I: Iterator<Item = ExactValue>>(iter: I) -> ExactValue {
        let mut acc = ExactValue::zero();
        for v in iter {
            acc += &v;
        }
        acc
    }
}

/// Exact componentwise sum; the empty list yields zero.
pub fn sum(values: &[ExactValue]) -> ExactValue {
    let mut acc = ExactValue::zero();
    for v in values {
        acc += v;
    }
    acc
}

fn fmt_term(f: &mut fmt::Formatter<'_>, first: &mut bool, coeff: i64, name: &str) -> fmt::Result {
    if coeff == 0 {
        return Ok(());
    }
    let sign = if coeff < 0 { "-" } else { "+" };
    let mag = coeff.unsigned_abs();
    if *first {
        if coeff < 0 {
            write!(f, "-")?;
        }
    } else {
        write!(f, " {} ", sign)?;
    }
    *first = false;
    if mag == 1 {
        write!(f, "{}", name)
    } else {
        write!(f, "{}*{}", mag, name)
    }
}

impl fmt::Display for ExactValue {
    /// Serialized as `q + m*kappa + n*delta` with `q` in lowest terms,
    /// omitting zero components (e.g. `-1/2 - 5*kappa`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if !self.rational.is_zero() {
            write!(f, "{}", self.rational)?;
            first = false;
        }
        fmt_term(f, &mut first, self.kappa, "kappa")?;
        fmt_term(f, &mut first, self.delta, "delta")
    }
}

impl Serialize for ExactValue {
    /// Serializes as the report string `q + m*kappa + n*delta`.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl Default for ExactValue {
    fn default() -> Self {
        ExactValue::zero()
    }
}

impl From<i64> for ExactValue {
    fn from(n: i64) -> Self {
        ExactValue::from_int(n)
    }
}

pub fn big(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

/// Binomial coefficient as an exact rational (integer-valued).
pub fn binomial(n: usize, k: usize) -> BigRational {
    if k > n {
        return BigRational::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k.min(n - k) {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    BigRational::new(num, den)
}

pub fn factorial_u128(n: u32) -> u128 {
    (1..=n as u128).product::<u128>().max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compare_rational_dominates() {
        // 5/2 + δ < 3
        let a = ExactValue::new(ratio(5, 2), 0, 1);
        let b = ExactValue::from_int(3);
        assert_eq!(a.compare(&b), Ordering::Less);
    }

    #[test]
    fn compare_equal() {
        let a = ExactValue::from_int(25);
        assert_eq!(a.compare(&ExactValue::from_int(25)), Ordering::Equal);
    }

    #[test]
    fn compare_kappa_tiebreak() {
        // -1/2 - 5κ < -1/2
        let a = ExactValue::new(ratio(-1, 2), -5, 0);
        let b = ExactValue::from_ratio(-1, 2);
        let (ord, flagged) = a.compare_detailed(&b);
        assert_eq!(ord, Ordering::Less);
        assert!(!flagged);
    }

    #[test]
    fn cross_priority_is_flagged() {
        // δ vs 2κ: ordering depends on which infinitesimal is "smaller".
        let a = ExactValue::delta(1);
        let b = ExactValue::kappa(2);
        let (ord, flagged) = a.compare_detailed(&b);
        assert_eq!(ord, Ordering::Greater); // δ-first convention
        assert!(flagged);
    }

    #[test]
    fn sum_examples() {
        // [3, 3, 3, 5/2+δ, 5/2+δ] → 14 + 2δ
        let vals = vec![
            ExactValue::from_int(3),
            ExactValue::from_int(3),
            ExactValue::from_int(3),
            ExactValue::new(ratio(5, 2), 0, 1),
            ExactValue::new(ratio(5, 2), 0, 1),
        ];
        assert_eq!(sum(&vals), ExactValue::new(big(14), 0, 2));
        assert_eq!(sum(&[]), ExactValue::zero());
        // |I(Xi)| = |Xi| + 2
        let xi = ExactValue::new(ratio(-5, 2), -1, 0);
        assert_eq!(
            sum(&[xi, ExactValue::from_int(2)]),
            ExactValue::new(ratio(-1, 2), -1, 0)
        );
    }

    #[test]
    fn display_format() {
        assert_eq!(ExactValue::new(ratio(-1, 2), -5, 0).to_string(), "-1/2 - 5*kappa");
        assert_eq!(ExactValue::new(ratio(-5, 2), -1, 0).to_string(), "-5/2 - kappa");
        assert_eq!(ExactValue::zero().to_string(), "0");
        assert_eq!(ExactValue::new(big(0), 0, 2).to_string(), "2*delta");
        assert_eq!(ExactValue::new(big(14), 1, 2).to_string(), "14 + kappa + 2*delta");
    }

    #[test]
    fn float_cross_check_distinct_rationals() {
        let a = ExactValue::new(ratio(7, 3), 4, -9);
        let b = ExactValue::new(ratio(5, 2), -3, 2);
        let ord = a.compare(&b);
        let fa = a.eval_f64(1e-9, 1e-9);
        let fb = b.eval_f64(1e-9, 1e-9);
        assert_eq!(ord, fa.partial_cmp(&fb).unwrap());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), big(6));
        assert_eq!(binomial(6, 0), big(1));
        assert_eq!(binomial(3, 5), big(0));
    }
}
