//! Polynomials in one variable, moment sequences, Wick (Appell) polynomials,
//! potential averaging, and the pitchfork check.

use std::fmt;

use num::rational::BigRational;
use num::{One, Signed, Zero};

use super::Scalar;
use crate::error::WickError;
use crate::exact::binomial;

/// Dense polynomial, `coeffs[i]` multiplying `x^i`; trailing zeros pruned.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<S = BigRational> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn monomial(n: usize) -> Self {
        let mut c = vec![S::zero(); n + 1];
        c[n] = S::one();
        Polynomial { coeffs: c }
    }

    pub fn constant(c: S) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(self.coeff(i) + other.coeff(i));
        }
        Polynomial::new(c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(self.coeff(i) - other.coeff(i));
        }
        Polynomial::new(c)
    }

    pub fn scale(&self, s: &S) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut c = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let mut c = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, a) in self.coeffs.iter().enumerate().skip(1) {
            c.push(a.clone() * S::from_count(i));
        }
        Polynomial::new(c)
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Only even powers present.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(i, c)| i % 2 == 0 || c.is_zero())
    }

    /// Only odd powers present.
    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(i, c)| i % 2 == 1 || c.is_zero())
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "({})*x", c)?,
                _ => write!(f, "({})*x^{}", c, i)?,
            }
        }
        Ok(())
    }
}

/// Moments `m_0..m_N` of a one-dimensional law, `m_0 = 1`. In symmetric mode
/// all odd moments must vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentSequence<S = BigRational> {
    moments: Vec<S>,
    symmetric: bool,
}

impl<S: Scalar> MomentSequence<S> {
    pub fn new(moments: Vec<S>) -> Result<Self, WickError> {
        if moments.first().map_or(true, |m| !m.is_one()) {
            return Err(WickError::BadMomentSequence("m_0 must be 1".into()));
        }
        Ok(MomentSequence { moments, symmetric: false })
    }

    pub fn new_symmetric(moments: Vec<S>) -> Result<Self, WickError> {
        let mut s = Self::new(moments)?;
        if s.moments.iter().skip(1).step_by(2).any(|m| !m.is_zero()) {
            return Err(WickError::BadMomentSequence(
                "odd moments must vanish in symmetric mode".into(),
            ));
        }
        s.symmetric = true;
        Ok(s)
    }

    /// Point mass at zero: `m_0 = 1`, all others zero.
    pub fn point_mass_at_zero(order: usize) -> Self {
        let mut m = vec![S::zero(); order + 1];
        m[0] = S::one();
        MomentSequence { moments: m, symmetric: true }
    }

    pub fn max_order(&self) -> usize {
        self.moments.len().saturating_sub(1)
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn moment(&self, n: usize) -> Result<S, WickError> {
        self.moments
            .get(n)
            .cloned()
            .ok_or(WickError::InsufficientMoments { needed: n, have: self.max_order() })
    }

    pub fn moments(&self) -> &[S] {
        &self.moments
    }
}

/// Standard Gaussian moments up to `order`.
pub fn gaussian_moments(order: usize) -> MomentSequence<BigRational> {
    let mut m = vec![BigRational::zero(); order + 1];
    m[0] = BigRational::one();
    for n in (2..=order).step_by(2) {
        // (n-1)!!
        let mut v = BigRational::one();
        let mut i = n as i64 - 1;
        while i > 1 {
            v *= BigRational::from_integer(i.into());
            i -= 2;
        }
        m[n] = v;
    }
    MomentSequence::new_symmetric(m).unwrap()
}

/// Coefficients of the `n`-th Wick power `W_{n,μ}` by exact inversion of the
/// exponential moment generating series: if `M(t) = Σ m_j t^j / j!` and
/// `1/M(t) = Σ w_j t^j / j!`, then `W_{n,μ}(x) = Σ_j C(n,j) w_{n-j} x^j`.
pub fn wick_polynomial<S: Scalar>(
    n: usize,
    mu: &MomentSequence<S>,
) -> Result<Polynomial<S>, WickError> {
    if mu.max_order() < n {
        return Err(WickError::InsufficientMoments { needed: n, have: mu.max_order() });
    }
    let w = inverse_egf(mu, n)?;
    let mut coeffs = Vec::with_capacity(n + 1);
    for j in 0..=n {
        coeffs.push(scalar_binomial::<S>(n, j) * w[n - j].clone());
    }
    Ok(Polynomial::new(coeffs))
}

/// Coefficients `w_0..w_order` of the reciprocal exponential generating
/// series: Σ_{j=0}^{k} C(k,j) m_j w_{k-j} = [k = 0].
fn inverse_egf<S: Scalar>(mu: &MomentSequence<S>, order: usize) -> Result<Vec<S>, WickError> {
    let mut w = Vec::with_capacity(order + 1);
    w.push(S::one());
    for k in 1..=order {
        let mut acc = S::zero();
        for j in 1..=k {
            acc = acc + scalar_binomial::<S>(k, j) * mu.moment(j)? * w[k - j].clone();
        }
        w.push(S::zero() - acc);
    }
    Ok(w)
}

fn scalar_binomial<S: Scalar>(n: usize, k: usize) -> S {
    use num::ToPrimitive;
    let b = binomial(n, k).to_integer().to_u64().expect("binomial out of range");
    S::from_u64(b).expect("binomial out of range for scalar")
}

/// `⟨V⟩(x) = E_μ V(x + Y)` by binomial expansion against the moments of μ.
pub fn averaged_potential<S: Scalar>(
    v: &Polynomial<S>,
    mu: &MomentSequence<S>,
) -> Result<Polynomial<S>, WickError> {
    if mu.max_order() < v.degree() && !v.is_zero() {
        return Err(WickError::InsufficientMoments { needed: v.degree(), have: mu.max_order() });
    }
    let deg = if v.is_zero() { 0 } else { v.degree() };
    let mut out = vec![S::zero(); deg + 1];
    for (i, vi) in v.coeffs().iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        for j in 0..=i {
            let term = vi.clone() * scalar_binomial::<S>(i, j) * mu.moment(i - j)?;
            out[j] = out[j].clone() + term;
        }
    }
    Ok(Polynomial::new(out))
}

/// A potential family `V_θ`, represented per x-coefficient by its value and
/// first θ-derivative at `θ = 0`. Only these two jets enter the conclusions.
#[derive(Clone, Debug, PartialEq)]
pub struct PotentialFamily {
    /// `(value at θ=0, ∂_θ at θ=0)` for each coefficient of `x^i`.
    pub coeffs: Vec<(BigRational, BigRational)>,
}

impl PotentialFamily {
    pub fn at_zero(&self) -> Polynomial<BigRational> {
        Polynomial::new(self.coeffs.iter().map(|(v, _)| v.clone()).collect())
    }

    pub fn theta_derivative(&self) -> Polynomial<BigRational> {
        Polynomial::new(self.coeffs.iter().map(|(_, d)| d.clone()).collect())
    }

    pub fn is_even(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, (v, d))| i % 2 == 0 || (v.is_zero() && d.is_zero()))
    }
}

/// Result of the pitchfork-bifurcation check on the averaged potential:
/// `⟨V_θ⟩'(x) = Σ_j â_j(θ) x^{2j+1}` must satisfy `â_1 > 0`, `â_0 = 0`,
/// `â_0' < 0`.
#[derive(Clone, Debug)]
pub struct PitchforkReport {
    /// `â_j(0)` for `j = 0..`.
    pub a_hat: Vec<BigRational>,
    /// `â_0'(0)`.
    pub a_hat0_prime: BigRational,
    pub verdict: bool,
}

/// Checks the pitchfork conditions for a symmetric potential family against a
/// symmetric law μ. Asymmetric input is rejected.
pub fn check_pitchfork(
    v: &PotentialFamily,
    mu: &MomentSequence<BigRational>,
) -> Result<PitchforkReport, WickError> {
    if !v.is_even() {
        return Err(WickError::AsymmetricPotential);
    }
    if !mu.is_symmetric() {
        return Err(WickError::AsymmetricLaw);
    }
    let avg0 = averaged_potential(&v.at_zero(), mu)?.derivative();
    let avg_dtheta = averaged_potential(&v.theta_derivative(), mu)?.derivative();
    debug_assert!(avg0.is_odd());
    let m = if avg0.is_zero() { 0 } else { avg0.degree() / 2 };
    let a_hat: Vec<BigRational> = (0..=m).map(|j| avg0.coeff(2 * j + 1)).collect();
    let a_hat0_prime = avg_dtheta.coeff(1);
    let verdict = a_hat.len() > 1
        && a_hat[1].is_positive()
        && a_hat[0].is_zero()
        && a_hat0_prime.is_negative();
    Ok(PitchforkReport { a_hat, a_hat0_prime, verdict })
}
