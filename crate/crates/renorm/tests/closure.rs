//! The generated symbol set is closed under the production rules: applying
//! them once more to the output (with the same cap) adds nothing. This
//! re-derivation is independent of the generator's internal fixpoint loop.

use std::cmp::Ordering;

use renorm::exact::ExactValue;
use renorm::trees::{generate_symbols, Symbol};
use renorm::wick::CumulantTable;

fn below_cap(sym: &Symbol, cap: &ExactValue) -> bool {
    sym.homogeneity().compare(cap) == Ordering::Less
}

#[test]
fn generated_set_is_rule_closed() {
    let cap = ExactValue::from_ratio(3, 2);
    for m in 1..=2u32 {
        let generated = generate_symbols(m, &cap).unwrap();
        let u: Vec<Symbol> = generated
            .entries
            .iter()
            .filter(|(_, info)| info.in_u)
            .map(|(s, _)| s.clone())
            .collect();
        let v: Vec<Symbol> = generated
            .entries
            .iter()
            .filter(|(_, info)| info.in_v)
            .map(|(s, _)| s.clone())
            .collect();

        // integration rule: V -> U
        for tau in &v {
            let integ = Symbol::integ(tau.clone());
            if below_cap(&integ, &cap) {
                assert!(
                    generated.entries.get(&integ).map(|i| i.in_u).unwrap_or(false),
                    "m = {}: I({}) missing from U",
                    m,
                    tau
                );
            }
        }

        // product rule: 2j+1 factors from U, E^{j-1} applied, prune by cap
        for j in 1..=m {
            let slots = (2 * j + 1) as usize;
            let mut chosen = vec![0usize; slots];
            let mut check = |indices: &[usize]| {
                let prod =
                    Symbol::product(indices.iter().map(|&i| u[i].clone()).collect());
                let sym = Symbol::eps(j - 1, prod);
                if below_cap(&sym, &cap) {
                    assert!(
                        generated.entries.get(&sym).map(|i| i.in_v).unwrap_or(false),
                        "m = {}: {} missing from V",
                        m,
                        sym
                    );
                }
            };
            // non-decreasing index tuples = multisets
            fn rec(
                pos: usize,
                from: usize,
                n: usize,
                chosen: &mut Vec<usize>,
                check: &mut impl FnMut(&[usize]),
            ) {
                if pos == chosen.len() {
                    check(chosen);
                    return;
                }
                for i in from..n {
                    chosen[pos] = i;
                    rec(pos + 1, i, n, chosen, check);
                }
            }
            rec(0, 0, u.len(), &mut chosen, &mut check);
        }
    }
}

#[test]
fn symmetric_mode_forces_odd_cumulants_to_zero() {
    let mut table: CumulantTable = CumulantTable::new_symmetric();
    table.insert(&[0, 0], renorm::exact::big(2));
    table.insert(&[0, 0, 0], renorm::exact::big(5)); // silently dropped
    table.insert(&[0, 1, 2, 3], renorm::exact::ratio(1, 3));
    assert_eq!(table.get(&vec![0, 0, 0]), renorm::exact::big(0));
    assert_eq!(table.get(&vec![0, 0]), renorm::exact::big(2));
    assert!(table.is_symmetric());
}
