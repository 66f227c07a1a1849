//! The mass counterterm and the θ(ε) schedule.

use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num::rational::BigRational;
use num::Zero;

use crate::error::WickError;
use crate::exact::rational_to_f64;

/// A quantity of the form `a·log(1/ε) + b`, closed under the linear
/// operations the counterterm formula needs. Multiplying the log-divergent
/// renormalisation constants by rational weights stays in this space.
#[derive(Clone, Debug, PartialEq)]
pub struct LogLinear {
    pub log_coeff: BigRational,
    pub constant: BigRational,
}

impl LogLinear {
    pub fn new(log_coeff: BigRational, constant: BigRational) -> Self {
        LogLinear { log_coeff, constant }
    }

    pub fn constant(c: BigRational) -> Self {
        LogLinear { log_coeff: BigRational::zero(), constant: c }
    }

    pub fn zero() -> Self {
        LogLinear::constant(BigRational::zero())
    }

    /// Evaluate at a concrete ε.
    pub fn eval(&self, eps: f64) -> f64 {
        rational_to_f64(&self.log_coeff) * (1.0 / eps).ln() + rational_to_f64(&self.constant)
    }
}

impl Add for LogLinear {
    type Output = LogLinear;
    fn add(self, rhs: LogLinear) -> LogLinear {
        LogLinear::new(self.log_coeff + rhs.log_coeff, self.constant + rhs.constant)
    }
}

impl Mul<BigRational> for LogLinear {
    type Output = LogLinear;
    fn mul(self, rhs: BigRational) -> LogLinear {
        LogLinear::new(self.log_coeff * rhs.clone(), self.constant * rhs)
    }
}

/// Values the counterterm can be evaluated over: anything closed under
/// addition and scaling by rationals.
pub trait CtValue: Clone + Add<Output = Self> + Mul<BigRational, Output = Self> {
    fn ct_zero() -> Self;
}

impl CtValue for BigRational {
    fn ct_zero() -> Self {
        BigRational::zero()
    }
}

impl CtValue for LogLinear {
    fn ct_zero() -> Self {
        LogLinear::zero()
    }
}

/// `C = Σ_{k,ℓ=1}^{m} λ_k λ_ℓ [ (2k+1)(2k) C_{2k-1,2ℓ+1} + (2k+1)(2ℓ+1) C_{2k,2ℓ} ]`,
/// the mass counterterm entering the renormalised equation. `lambdas[j]` is
/// `λ_{j+1}`; `constants` is keyed by the generator indices.
pub fn mass_counterterm<V: CtValue>(
    lambdas: &[BigRational],
    constants: &BTreeMap<(u32, u32), V>,
) -> Result<V, WickError> {
    let m = lambdas.len() as u32;
    let mut acc = V::ct_zero();
    for k in 1..=m {
        for l in 1..=m {
            let lam = lambdas[(k - 1) as usize].clone() * lambdas[(l - 1) as usize].clone();
            let odd = constants
                .get(&(2 * k - 1, 2 * l + 1))
                .ok_or(WickError::MissingConstant(2 * k - 1, 2 * l + 1))?
                .clone();
            let even = constants
                .get(&(2 * k, 2 * l))
                .ok_or(WickError::MissingConstant(2 * k, 2 * l))?
                .clone();
            let c_odd = crate::exact::big(((2 * k + 1) * (2 * k)) as i64);
            let c_even = crate::exact::big(((2 * k + 1) * (2 * l + 1)) as i64);
            acc = acc + odd * (c_odd * lam.clone()) + even * (c_even * lam);
        }
    }
    Ok(acc)
}

/// Leading coefficient of the θ schedule: `9 â_1² C_log / â_0'`.
pub fn theta_log_coefficient(
    a1_hat: &BigRational,
    a0_prime_hat: &BigRational,
    c_log: &BigRational,
) -> Result<BigRational, WickError> {
    if a0_prime_hat.is_zero() {
        return Err(WickError::ZeroPitchforkDerivative);
    }
    Ok(crate::exact::big(9) * a1_hat * a1_hat * c_log / a0_prime_hat)
}

/// Leading term of the schedule: `θ(ε) = (9 â_1² C_log / â_0') · ε |log ε|`.
/// Negative whenever `â_1 ≠ 0`, `â_0' < 0` and `C_log > 0`.
pub fn theta_schedule(
    a1_hat: f64,
    a0_prime_hat: f64,
    c_log: f64,
    eps: f64,
) -> Result<f64, WickError> {
    if a0_prime_hat == 0.0 {
        return Err(WickError::ZeroPitchforkDerivative);
    }
    assert!(eps > 0.0 && eps < 1.0, "theta schedule needs eps in (0,1)");
    Ok(9.0 * a1_hat * a1_hat * c_log / a0_prime_hat * eps * eps.ln().abs())
}
