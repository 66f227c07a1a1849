//! Generation of the symbol set `W = U ∪ V` from its production rules.
//!
//! Starting from `X^k ∈ U` and `Ξ ∈ V`, for every `j = 1..m`:
//!
//! ```text
//! τ_1, .., τ_{2j+1} ∈ U  ⇒  E^{j-1}(τ_1 ⋯ τ_{2j+1}) ∈ V
//! τ ∈ V                  ⇒  I(τ) ∈ U
//! ```
//!
//! pruned to homogeneity strictly below the cap (3/2 unless overridden).
//! Products of `U`-elements appear only under the `E^{j-1}` applications (the
//! `j = 1` case has no `E` factor); other extended-basis products are never
//! emitted.

use std::collections::BTreeMap;

use num::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{parabolic_degree, MultiIndex, Symbol};
use crate::error::TreeError;
use crate::exact::ExactValue;

/// Recognized closed-form families among the generated symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// `E^{k-1} Ψ^{2k+1-n}`, homogeneity `(n-3)/2 - (2k+1-n)κ`.
    First { k: u32, n: u32 },
    /// `E^{⌊(k-1)/2⌋}(Ψ^k I(E^{⌊l/2⌋-1} Ψ^l))`, homogeneity
    /// `⌊(k-1)/2⌋ + ⌊l/2⌋ - (k+l)(1/2+κ) + 1`; `k` odd with `l` even is
    /// excluded. `delta_tau` is the parity of `k + l`.
    Second { k: u32, l: u32, delta_tau: u8 },
}

impl Family {
    /// The closed-form homogeneity of the family member.
    pub fn homogeneity(&self) -> ExactValue {
        match *self {
            Family::First { k, n } => ExactValue::new(
                crate::exact::ratio(n as i64 - 3, 2),
                -((2 * k + 1 - n) as i64),
                0,
            ),
            Family::Second { k, l, .. } => {
                let floor_a = ((k - 1) / 2) as i64;
                let floor_b = (l / 2) as i64;
                ExactValue::new(
                    crate::exact::ratio(2 * (floor_a + floor_b + 1) - (k + l) as i64, 2),
                    -((k + l) as i64),
                    0,
                )
            }
        }
    }

    /// The symbol this family index denotes.
    pub fn symbol(&self) -> Symbol {
        match *self {
            Family::First { k, n } => Symbol::eps(k - 1, Symbol::psi_pow(2 * k + 1 - n)),
            Family::Second { k, l, .. } => Symbol::eps(
                (k - 1) / 2,
                Symbol::product(vec![
                    Symbol::psi_pow(k),
                    Symbol::integ(Symbol::eps(l / 2 - 1, Symbol::psi_pow(l))),
                ]),
            ),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SymbolInfo {
    pub homogeneity: ExactValue,
    pub in_u: bool,
    pub in_v: bool,
    pub family: Option<Family>,
}

/// The generated symbol set with per-symbol metadata.
#[derive(Clone, Debug, Default)]
pub struct GeneratedSymbols {
    pub entries: BTreeMap<Symbol, SymbolInfo>,
}

impl GeneratedSymbols {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, sym: &Symbol) -> bool {
        self.entries.contains_key(sym)
    }

    /// Symbols with strictly negative homogeneity, ascending.
    pub fn negative(&self) -> Vec<(&Symbol, &SymbolInfo)> {
        let zero = ExactValue::zero();
        let mut v: Vec<_> = self
            .entries
            .iter()
            .filter(|(_, info)| info.homogeneity.compare(&zero) == std::cmp::Ordering::Less)
            .collect();
        v.sort_by(|a, b| a.1.homogeneity.compare(&b.1.homogeneity).then_with(|| a.0.cmp(b.0)));
        v
    }
}

/// Fast homogeneity for generation: all candidate symbols have homogeneity
/// `halves/2 + kappa·κ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct FastHom {
    halves: i64,
    kappa: i64,
}

impl FastHom {
    fn add(self, other: FastHom) -> FastHom {
        FastHom { halves: self.halves + other.halves, kappa: self.kappa + other.kappa }
    }

    fn to_exact(self) -> ExactValue {
        ExactValue::new(crate::exact::ratio(self.halves, 2), self.kappa, 0)
    }
}

struct Cap {
    num: i128,
    den: i128,
    kappa: i64,
    delta: i64,
}

impl Cap {
    fn from_exact(cap: &ExactValue) -> Cap {
        let num = cap.rational.numer().to_i128().expect("cap out of range");
        let den = cap.rational.denom().to_i128().expect("cap out of range");
        Cap { num, den, kappa: cap.kappa, delta: cap.delta }
    }

    /// `halves/2 < cap` under the small-infinitesimal order.
    fn admits(&self, h: FastHom) -> bool {
        let lhs = h.halves as i128 * self.den;
        let rhs = 2 * self.num;
        if lhs != rhs {
            return lhs < rhs;
        }
        // rational tie: compare (delta, kappa) lexicographically
        (0, h.kappa) < (self.delta, self.kappa)
    }

    /// No completion with rational part `>= halves/2` can be admitted.
    fn rational_part_too_big(&self, halves: i64) -> bool {
        halves as i128 * self.den > 2 * self.num
    }
}

fn fast_hom(sym: &Symbol) -> FastHom {
    match sym {
        Symbol::Xi => FastHom { halves: -5, kappa: -1 },
        Symbol::Mono(k) => FastHom { halves: 2 * parabolic_degree(k) as i64, kappa: 0 },
        Symbol::Integ(t) => fast_hom(t).add(FastHom { halves: 4, kappa: 0 }),
        Symbol::Eps(k, t) => fast_hom(t).add(FastHom { halves: 2 * *k as i64, kappa: 0 }),
        Symbol::Prod(fs) => fs
            .iter()
            .map(fast_hom)
            .fold(FastHom { halves: 0, kappa: 0 }, FastHom::add),
    }
}

/// Generate the closure of `{X^k, Ξ}` under the production rules with
/// maximal nonlinearity index `m`, pruned to homogeneity `< cap`.
pub fn generate_symbols(m: u32, cap: &ExactValue) -> Result<GeneratedSymbols, TreeError> {
    if m < 1 {
        return Err(TreeError::BadNonlinearityIndex);
    }
    let cap = Cap::from_exact(cap);

    // U and V as parallel maps symbol -> fast homogeneity
    let mut u: BTreeMap<Symbol, FastHom> = BTreeMap::new();
    let mut v: BTreeMap<Symbol, FastHom> = BTreeMap::new();

    for mono in monomials_below(&cap) {
        let h = fast_hom(&mono);
        u.insert(mono, h);
    }
    v.insert(Symbol::xi(), fast_hom(&Symbol::xi()));

    loop {
        let mut changed = false;

        // I(tau) for tau in V
        let new_u: Vec<(Symbol, FastHom)> = v
            .iter()
            .filter_map(|(sym, h)| {
                let hi = h.add(FastHom { halves: 4, kappa: 0 });
                if cap.admits(hi) {
                    let s = Symbol::integ(sym.clone());
                    if !u.contains_key(&s) {
                        return Some((s, hi));
                    }
                }
                None
            })
            .collect();
        for (s, h) in new_u {
            u.insert(s, h);
            changed = true;
        }

        // E^{j-1}(products of 2j+1 U-elements)
        let pool: Vec<(Symbol, FastHom)> = {
            let mut p: Vec<_> = u.iter().map(|(s, h)| (s.clone(), *h)).collect();
            p.sort_by_key(|(_, h)| (h.halves, h.kappa));
            p
        };
        for j in 1..=m {
            let slots = 2 * j as usize + 1;
            let eps_shift = FastHom { halves: 2 * (j as i64 - 1), kappa: 0 };
            let mut chosen: Vec<usize> = Vec::with_capacity(slots);
            enumerate_products(
                &pool,
                0,
                slots,
                FastHom { halves: 0, kappa: 0 },
                eps_shift,
                &cap,
                &mut chosen,
                &mut |factors: &[usize], total: FastHom| {
                    let prod =
                        Symbol::product(factors.iter().map(|&i| pool[i].0.clone()).collect());
                    let sym = Symbol::eps(j - 1, prod);
                    if !v.contains_key(&sym) {
                        v.insert(sym, total);
                        changed = true;
                    }
                },
            );
        }

        if !changed {
            break;
        }
    }

    let mut out = GeneratedSymbols::default();
    for (sym, h) in &u {
        out.entries.insert(
            sym.clone(),
            SymbolInfo {
                homogeneity: h.to_exact(),
                in_u: true,
                in_v: false,
                family: classify_family(sym),
            },
        );
    }
    for (sym, h) in &v {
        out.entries
            .entry(sym.clone())
            .and_modify(|info| info.in_v = true)
            .or_insert_with(|| SymbolInfo {
                homogeneity: h.to_exact(),
                in_u: false,
                in_v: true,
                family: classify_family(sym),
            });
    }
    Ok(out)
}

/// Recursively choose `slots` factors from `pool[from..]` (non-decreasing
/// index, so multisets are enumerated once), pruning branches whose best
/// possible rational homogeneity already exceeds the cap.
#[allow(clippy::too_many_arguments)]
fn enumerate_products(
    pool: &[(Symbol, FastHom)],
    from: usize,
    slots: usize,
    partial: FastHom,
    shift: FastHom,
    cap: &Cap,
    chosen: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize], FastHom),
) {
    if slots == 0 {
        let total = partial.add(shift);
        if cap.admits(total) {
            emit(chosen, total);
        }
        return;
    }
    for i in from..pool.len() {
        let h = pool[i].1;
        // best completion keeps picking this same element
        let best = partial.halves + shift.halves + slots as i64 * h.halves;
        if cap.rational_part_too_big(best) {
            break; // pool sorted ascending: later elements are no better
        }
        chosen.push(i);
        enumerate_products(pool, i, slots - 1, partial.add(h), shift, cap, chosen, emit);
        chosen.pop();
    }
}

fn monomials_below(cap: &Cap) -> Vec<Symbol> {
    let mut out = Vec::new();
    // parabolic degree of X^k is 2k0 + k1 + k2 + k3; enumerate a safe box
    let max_deg = ((2 * cap.num) / cap.den).max(0) as u32 + 1;
    for k0 in 0..=max_deg / 2 {
        for k1 in 0..=max_deg {
            for k2 in 0..=max_deg {
                for k3 in 0..=max_deg {
                    let k = MultiIndex([k0, k1, k2, k3]);
                    let h = FastHom { halves: 2 * parabolic_degree(&k) as i64, kappa: 0 };
                    if cap.admits(h) {
                        out.push(Symbol::Mono(k));
                    }
                }
            }
        }
    }
    out
}

fn psi_power_of(sym: &Symbol) -> Option<u32> {
    match sym {
        s if s.is_one() => Some(0),
        s if *s == Symbol::psi() => Some(1),
        Symbol::Prod(fs) => {
            if fs.iter().all(|f| *f == Symbol::psi()) {
                Some(fs.len() as u32)
            } else {
                None
            }
        }
        _ => None,
    }
}

/// Classify a symbol into one of the closed-form families, if it fits.
pub fn classify_family(sym: &Symbol) -> Option<Family> {
    let (e, body) = match sym {
        Symbol::Eps(k, t) => (*k, t.as_ref()),
        other => (0, other),
    };
    if let Some(p) = psi_power_of(body) {
        if p >= 1 {
            let k = e + 1;
            let n = (2 * k + 1).checked_sub(p)?;
            if n <= 3 {
                return Some(Family::First { k, n });
            }
        }
        return None;
    }
    // Psi^k * I(E^{c} Psi^l)
    let factors = body.factors();
    let mut psi_count = 0u32;
    let mut inner: Option<&Symbol> = None;
    for f in factors {
        if *f == Symbol::psi() {
            psi_count += 1;
        } else if let Symbol::Integ(t) = f {
            if inner.is_some() {
                return None;
            }
            inner = Some(t);
        } else {
            return None;
        }
    }
    let inner = inner?;
    if psi_count == 0 {
        return None;
    }
    let (c, inner_body) = match inner {
        Symbol::Eps(k, t) => (*k, t.as_ref()),
        other => (0, other),
    };
    let l = psi_power_of(inner_body)?;
    if l < 2 {
        return None;
    }
    let k = psi_count;
    if k % 2 == 1 && l % 2 == 0 {
        return None; // excluded parity combination
    }
    if e != (k - 1) / 2 || c != l / 2 - 1 {
        return None;
    }
    Some(Family::Second { k, l, delta_tau: ((k + l) % 2) as u8 })
}
