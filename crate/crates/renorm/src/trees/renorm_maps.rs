//! The symbol-level renormalisation maps: Wick renormalisation `M^Wick_μ`
//! (each maximal `Ψ^n` factor becomes the Wick polynomial `W_{n,μ}(Ψ)`) and
//! mass renormalisation `M_0 = exp(-Σ C_{k,l} L_{k,l})`.

use std::collections::BTreeMap;

use num::rational::BigRational;

use super::{Symbol, SymbolCombination};
use crate::error::TreeError;
use crate::wick::{wick_polynomial, MomentSequence};

/// `M^Wick_μ`: fixes `Ξ` and `X^k`, maps `Ψ^n ↦ W_{n,μ}(Ψ)` and commutes
/// with `I`, `E^k` and multiplication, acting factor-wise on products (the
/// multiplicativity rule `M(τ·I(τ̄)) = M(τ)·I(M τ̄)`).
pub fn apply_wick_renorm(
    tau: &Symbol,
    mu: &MomentSequence<BigRational>,
) -> Result<SymbolCombination, TreeError> {
    Ok(match tau {
        Symbol::Xi | Symbol::Mono(_) => SymbolCombination::from_symbol(tau.clone()),
        Symbol::Integ(t) => apply_wick_renorm(t, mu)?.map_integ(),
        Symbol::Eps(k, t) => apply_wick_renorm(t, mu)?.map_eps(*k),
        Symbol::Prod(factors) => {
            let mut psi_count = 0u32;
            let mut rest = SymbolCombination::from_symbol(Symbol::one());
            for f in factors {
                if *f == Symbol::psi() {
                    psi_count += 1;
                } else {
                    rest = rest.mul(&apply_wick_renorm(f, mu)?);
                }
            }
            let w = wick_polynomial(psi_count as usize, mu).map_err(TreeError::Wick)?;
            let mut psi_part = SymbolCombination::zero();
            for (j, c) in w.coeffs().iter().enumerate() {
                psi_part.add_term(Symbol::psi_pow(j as u32), c.clone());
            }
            psi_part.mul(&rest)
        }
    })
}

/// The action of the generator `L_{a,b}` on a symbol, if the symbol lies in
/// the generator's domain. Index pairs must be both even (`L_{2k,2l}`) or
/// both odd (`L_{2k-1,2l+1}`):
///
/// ```text
/// L_{2k,2l}:    E^{k-1}(Ψ^{2k}   I(E^{l-1} Ψ^{2l}))   ↦ 1
///               E^{k-1}(Ψ^{2k}   I(E^{l-1} Ψ^{2l+1})) ↦ (2l+1)·Ψ
/// L_{2k-1,2l+1}: E^{k-1}(Ψ^{2k-1} I(E^{l-1} Ψ^{2l+1})) ↦ 1
///               E^{k-1}(Ψ^{2k}   I(E^{l-1} Ψ^{2l+1})) ↦ (2k)·Ψ
/// ```
pub fn generator_action(a: u32, b: u32, tau: &Symbol) -> Result<Option<SymbolCombination>, TreeError> {
    let domain = |outer: u32, inner: u32, e_out: u32, e_in: u32| -> Symbol {
        Symbol::eps(
            e_out,
            Symbol::product(vec![
                Symbol::psi_pow(outer),
                Symbol::integ(Symbol::eps(e_in, Symbol::psi_pow(inner))),
            ]),
        )
    };
    if a >= 2 && a % 2 == 0 && b >= 2 && b % 2 == 0 {
        let (k, l) = (a / 2, b / 2);
        if *tau == domain(2 * k, 2 * l, k - 1, l - 1) {
            return Ok(Some(SymbolCombination::from_symbol(Symbol::one())));
        }
        if *tau == domain(2 * k, 2 * l + 1, k - 1, l - 1) {
            let mut c = SymbolCombination::zero();
            c.add_term(Symbol::psi(), crate::exact::big((2 * l + 1) as i64));
            return Ok(Some(c));
        }
        Ok(None)
    } else if a % 2 == 1 && b % 2 == 1 && b >= 3 {
        let (k, l) = ((a + 1) / 2, (b - 1) / 2);
        if *tau == domain(2 * k - 1, 2 * l + 1, k - 1, l - 1) {
            return Ok(Some(SymbolCombination::from_symbol(Symbol::one())));
        }
        if *tau == domain(2 * k, 2 * l + 1, k - 1, l - 1) {
            let mut c = SymbolCombination::zero();
            c.add_term(Symbol::psi(), crate::exact::big((2 * k) as i64));
            return Ok(Some(c));
        }
        Ok(None)
    } else {
        Err(TreeError::BadGeneratorIndex(a, b))
    }
}

/// `M_0 τ = exp(-Σ C_{k,l} L_{k,l}) τ`. Every generator maps into
/// `span{1, Ψ}`, which all generators annihilate, so the exponential
/// truncates exactly at first order: `M_0 = id - Σ C_{k,l} L_{k,l}`.
pub fn apply_mass_renorm(
    tau: &Symbol,
    constants: &BTreeMap<(u32, u32), BigRational>,
) -> Result<SymbolCombination, TreeError> {
    let mut out = SymbolCombination::from_symbol(tau.clone());
    for (&(a, b), c) in constants {
        if let Some(action) = generator_action(a, b, tau)? {
            out = out.sub(&action.scale(c));
        }
    }
    Ok(out)
}

/// Scalar-polynomial shadow of a combination of pure `Ψ`-powers: the
/// coefficient of `Ψ^j` becomes the coefficient of `x^j`. Terms that are not
/// plain `Ψ`-powers are rejected.
pub fn psi_power_shadow(
    comb: &SymbolCombination,
) -> Option<crate::wick::Polynomial<BigRational>> {
    let mut coeffs: Vec<BigRational> = Vec::new();
    for (sym, c) in comb.terms() {
        let p = if sym.is_one() {
            0
        } else if *sym == Symbol::psi() {
            1
        } else if let Symbol::Prod(fs) = sym {
            if !fs.iter().all(|f| *f == Symbol::psi()) {
                return None;
            }
            fs.len()
        } else {
            return None;
        };
        if coeffs.len() <= p {
            coeffs.resize(p + 1, BigRational::from_integer(0.into()));
        }
        coeffs[p] = c.clone();
    }
    Some(crate::wick::Polynomial::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{big, ratio};
    use crate::wick::averaged_potential;

    fn mu_with_m2(c: BigRational) -> MomentSequence<BigRational> {
        MomentSequence::new(vec![big(1), big(0), c]).unwrap()
    }

    #[test]
    fn wick_renorm_psi_squared() {
        // Ψ² with m2 = c → Ψ² - c·1
        let c = ratio(2, 5);
        let out = apply_wick_renorm(&Symbol::psi_pow(2), &mu_with_m2(c.clone())).unwrap();
        assert_eq!(out.coeff(&Symbol::psi_pow(2)), big(1));
        assert_eq!(out.coeff(&Symbol::one()), -c);
        assert_eq!(out.len(), 2);
    }

    #[test]
    fn wick_renorm_fixes_xi() {
        let mu = mu_with_m2(big(1));
        let out = apply_wick_renorm(&Symbol::xi(), &mu).unwrap();
        assert_eq!(out, SymbolCombination::from_symbol(Symbol::xi()));
    }

    #[test]
    fn wick_renorm_leibniz_four_terms() {
        // Ψ²I(Ψ²) with m2 = c → (Ψ²-c)I(Ψ²-c): four terms
        let c = ratio(1, 3);
        let tau = Symbol::product(vec![Symbol::psi_pow(2), Symbol::integ(Symbol::psi_pow(2))]);
        let out = apply_wick_renorm(&tau, &mu_with_m2(c.clone())).unwrap();
        assert_eq!(out.len(), 4);
        assert_eq!(out.coeff(&tau), big(1));
        let i_psi2 = Symbol::integ(Symbol::psi_pow(2));
        let i_one = Symbol::integ(Symbol::one());
        assert_eq!(out.coeff(&i_psi2), -c.clone());
        assert_eq!(out.coeff(&Symbol::product(vec![Symbol::psi_pow(2), i_one.clone()])), -c.clone());
        assert_eq!(out.coeff(&i_one), c.clone() * c);
    }

    #[test]
    fn wick_renorm_point_mass_is_identity() {
        let mu = MomentSequence::point_mass_at_zero(8);
        for tau in [
            Symbol::psi_pow(3),
            Symbol::eps(1, Symbol::psi_pow(5)),
            Symbol::product(vec![Symbol::psi_pow(2), Symbol::integ(Symbol::psi_pow(3))]),
        ] {
            let out = apply_wick_renorm(&tau, &mu).unwrap();
            assert_eq!(out, SymbolCombination::from_symbol(tau));
        }
    }

    #[test]
    fn mass_renorm_examples() {
        // Ψ²I(Ψ²) with C_{2,2} = c → Ψ²I(Ψ²) - c·1
        let c = ratio(3, 7);
        let tau = Symbol::product(vec![Symbol::psi_pow(2), Symbol::integ(Symbol::psi_pow(2))]);
        let mut constants = BTreeMap::new();
        constants.insert((2, 2), c.clone());
        let out = apply_mass_renorm(&tau, &constants).unwrap();
        assert_eq!(out.coeff(&tau), big(1));
        assert_eq!(out.coeff(&Symbol::one()), -c);

        // Ψ²I(Ψ³) with C_{2,2} = a, C_{1,3} = b → Ψ²I(Ψ³) - 3aΨ - 2bΨ
        let (a, b) = (ratio(1, 2), ratio(1, 5));
        let tau = Symbol::product(vec![Symbol::psi_pow(2), Symbol::integ(Symbol::psi_pow(3))]);
        let mut constants = BTreeMap::new();
        constants.insert((2, 2), a.clone());
        constants.insert((1, 3), b.clone());
        let out = apply_mass_renorm(&tau, &constants).unwrap();
        assert_eq!(out.coeff(&tau), big(1));
        assert_eq!(out.coeff(&Symbol::psi()), -(big(3) * a + big(2) * b));
    }

    #[test]
    fn mass_renorm_fixes_xi() {
        let mut constants = BTreeMap::new();
        constants.insert((2, 2), big(1));
        let out = apply_mass_renorm(&Symbol::xi(), &constants).unwrap();
        assert_eq!(out, SymbolCombination::from_symbol(Symbol::xi()));
    }

    #[test]
    fn generators_are_nilpotent_on_generated_symbols() {
        // L maps into span{1, Ψ}; every generator annihilates both
        for (a, b) in [(2u32, 2u32), (1, 3), (2, 4), (4, 2), (3, 3), (3, 5)] {
            assert_eq!(generator_action(a, b, &Symbol::one()).unwrap(), None);
            assert_eq!(generator_action(a, b, &Symbol::psi()).unwrap(), None);
        }
        assert!(generator_action(2, 3, &Symbol::psi()).is_err());
    }

    #[test]
    fn wick_then_average_reproduces_plain_powers() {
        // the scalar shadow of M^Wick Ψ^n averages back to x^n
        let mu = MomentSequence::new_symmetric(vec![
            big(1),
            big(0),
            ratio(4, 7),
            big(0),
            ratio(19, 6),
            big(0),
            ratio(23, 2),
        ])
        .unwrap();
        for n in 0..=6u32 {
            let comb = apply_wick_renorm(&Symbol::psi_pow(n), &mu).unwrap();
            let shadow = psi_power_shadow(&comb).unwrap();
            let avg = averaged_potential(&shadow, &mu).unwrap();
            assert_eq!(avg, crate::wick::Polynomial::monomial(n as usize));
        }
    }
}
