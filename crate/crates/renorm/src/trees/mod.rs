//! Regularity-structure symbols: tree-structured basis elements over the
//! constructors `Ξ`, `X^k`, `I(·)`, `E^k(·)` and commutative products, with
//! exact homogeneities and the symbol-level renormalisation maps.

mod generate;
mod parse;
mod renorm_maps;

use std::collections::BTreeMap;
use std::fmt;

use num::rational::BigRational;
use num::Zero;
use serde::{Deserialize, Serialize};

use crate::exact::ExactValue;

pub use generate::{classify_family, generate_symbols, Family, GeneratedSymbols, SymbolInfo};
pub use parse::parse_symbol;
pub use renorm_maps::{apply_mass_renorm, apply_wick_renorm, generator_action, psi_power_shadow};

/// Multi-index over `(X_0, X_1, X_2, X_3)`; `X_0` is the time direction and
/// counts twice in the parabolic degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MultiIndex(pub [u32; 4]);

impl MultiIndex {
    pub fn zero() -> Self {
        MultiIndex([0; 4])
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 4]
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        let mut out = [0; 4];
        for i in 0..4 {
            out[i] = self.0[i] + other.0[i];
        }
        MultiIndex(out)
    }
}

/// Parabolic degree `|k| = 2 k_0 + k_1 + k_2 + k_3`.
pub fn parabolic_degree(k: &MultiIndex) -> u32 {
    2 * k.0[0] + k.0[1] + k.0[2] + k.0[3]
}

/// A basis symbol in canonical form.
///
/// Canonical form: products are flattened, hold at most one monomial factor
/// (multi-indices of juxtaposed monomials add), drop unit factors, and keep
/// their children sorted by the derived structural order, so equal symbols
/// compare equal. The unit `1` is `Mono(0)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Symbol {
    /// The noise symbol Ξ.
    Xi,
    /// `X^k`; `X^0` is the unit `1`.
    Mono(MultiIndex),
    /// Abstract integration `I(τ)`.
    Integ(Box<Symbol>),
    /// `E^k(τ)`, `k ≥ 1` (one formal power of ε per unit of `k`).
    Eps(u32, Box<Symbol>),
    /// Commutative product of at least two non-unit factors.
    Prod(Vec<Symbol>),
}

impl Symbol {
    pub fn one() -> Symbol {
        Symbol::Mono(MultiIndex::zero())
    }

    pub fn xi() -> Symbol {
        Symbol::Xi
    }

    /// `Ψ = I(Ξ)`.
    pub fn psi() -> Symbol {
        Symbol::Integ(Box::new(Symbol::Xi))
    }

    pub fn mono(k: [u32; 4]) -> Symbol {
        Symbol::Mono(MultiIndex(k))
    }

    /// `X_i` for `i = 0..3`.
    pub fn x(i: usize) -> Symbol {
        let mut k = [0; 4];
        k[i] = 1;
        Symbol::Mono(MultiIndex(k))
    }

    pub fn integ(tau: Symbol) -> Symbol {
        Symbol::Integ(Box::new(tau))
    }

    /// `E^k(τ)`; `E^0(τ) = τ`.
    pub fn eps(k: u32, tau: Symbol) -> Symbol {
        if k == 0 {
            tau
        } else {
            Symbol::Eps(k, Box::new(tau))
        }
    }

    /// Canonical commutative product of the given factors.
    pub fn product(factors: Vec<Symbol>) -> Symbol {
        let mut mono = MultiIndex::zero();
        let mut rest: Vec<Symbol> = Vec::new();
        let mut stack = factors;
        while let Some(f) = stack.pop() {
            match f {
                Symbol::Mono(k) => mono = mono.add(&k),
                Symbol::Prod(children) => stack.extend(children),
                other => rest.push(other),
            }
        }
        if !mono.is_zero() {
            rest.push(Symbol::Mono(mono));
        }
        rest.sort();
        match rest.len() {
            0 => Symbol::one(),
            1 => rest.pop().unwrap(),
            _ => Symbol::Prod(rest),
        }
    }

    pub fn psi_pow(n: u32) -> Symbol {
        Symbol::product(vec![Symbol::psi(); n as usize])
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Symbol::Mono(k) if k.is_zero())
    }

    /// Exact homogeneity: `|Ξ| = -5/2 - κ`, `|X^k| = |k|`,
    /// `|I(τ)| = |τ| + 2`, `|E^k(τ)| = k + |τ|`, `|τ τ̄| = |τ| + |τ̄|`.
    pub fn homogeneity(&self) -> ExactValue {
        match self {
            Symbol::Xi => ExactValue::new(crate::exact::ratio(-5, 2), -1, 0),
            Symbol::Mono(k) => ExactValue::from_int(parabolic_degree(k) as i64),
            Symbol::Integ(t) => t.homogeneity() + &ExactValue::from_int(2),
            Symbol::Eps(k, t) => t.homogeneity() + &ExactValue::from_int(*k as i64),
            Symbol::Prod(factors) => factors.iter().map(|f| f.homogeneity()).sum(),
        }
    }

    /// Product factors of a symbol (the symbol itself if not a product).
    pub fn factors(&self) -> Vec<&Symbol> {
        match self {
            Symbol::Prod(fs) => fs.iter().collect(),
            other => vec![other],
        }
    }
}

fn fmt_atom(sym: &Symbol, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match sym {
        Symbol::Xi => write!(f, "Xi"),
        Symbol::Mono(k) if k.is_zero() => write!(f, "1"),
        Symbol::Mono(k) => write!(f, "X^({},{},{},{})", k.0[0], k.0[1], k.0[2], k.0[3]),
        Symbol::Integ(t) => write!(f, "I({})", t),
        Symbol::Eps(k, t) => {
            if *k == 1 {
                write!(f, "E({})", t)
            } else {
                write!(f, "E^{}({})", k, t)
            }
        }
        Symbol::Prod(_) => unreachable!("products are formatted by Display"),
    }
}

impl fmt::Display for Symbol {
    /// Canonical text grammar: `Xi`, `X^(k0,k1,k2,k3)`, `I(...)`, `E^k(...)`,
    /// factors joined with `*`, repeated factors grouped as `atom^n`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Prod(factors) => {
                let mut i = 0;
                let mut first = true;
                while i < factors.len() {
                    let mut run = 1;
                    while i + run < factors.len() && factors[i + run] == factors[i] {
                        run += 1;
                    }
                    if !first {
                        write!(f, "*")?;
                    }
                    first = false;
                    fmt_atom(&factors[i], f)?;
                    if run > 1 {
                        write!(f, "^{}", run)?;
                    }
                    i += run;
                }
                Ok(())
            }
            atom => fmt_atom(atom, f),
        }
    }
}

/// Finite linear combination of symbols with exact rational coefficients.
/// Zero coefficients are pruned.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SymbolCombination {
    terms: BTreeMap<Symbol, BigRational>,
}

impl SymbolCombination {
    pub fn zero() -> Self {
        SymbolCombination { terms: BTreeMap::new() }
    }

    pub fn from_symbol(sym: Symbol) -> Self {
        let mut c = SymbolCombination::zero();
        c.add_term(sym, BigRational::from_integer(1.into()));
        c
    }

    pub fn add_term(&mut self, sym: Symbol, coeff: BigRational) {
        use std::collections::btree_map::Entry;
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(sym) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn add(&self, other: &SymbolCombination) -> SymbolCombination {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymbolCombination) -> SymbolCombination {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> SymbolCombination {
        let mut out = SymbolCombination::zero();
        for (s, v) in &self.terms {
            out.add_term(s.clone(), v * c);
        }
        out
    }

    /// Pointwise product, expanding into canonical symbols.
    pub fn mul(&self, other: &SymbolCombination) -> SymbolCombination {
        let mut out = SymbolCombination::zero();
        for (s1, c1) in &self.terms {
            for (s2, c2) in &other.terms {
                out.add_term(Symbol::product(vec![s1.clone(), s2.clone()]), c1 * c2);
            }
        }
        out
    }

    /// Apply `I(·)` term by term.
    pub fn map_integ(&self) -> SymbolCombination {
        let mut out = SymbolCombination::zero();
        for (s, c) in &self.terms {
            out.add_term(Symbol::integ(s.clone()), c.clone());
        }
        out
    }

    /// Apply `E^k(·)` term by term.
    pub fn map_eps(&self, k: u32) -> SymbolCombination {
        let mut out = SymbolCombination::zero();
        for (s, c) in &self.terms {
            out.add_term(Symbol::eps(k, s.clone()), c.clone());
        }
        out
    }

    pub fn coeff(&self, sym: &Symbol) -> BigRational {
        self.terms.get(sym).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Symbol, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for SymbolCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})*{}", c, s)?;
        }
        Ok(())
    }
}
