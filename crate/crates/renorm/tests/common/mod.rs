//! Independent oracles shared by the acceptance suite. These re-derive
//! expected values by brute force and must not reuse the implementation
//! paths they check.

use std::collections::BTreeMap;

use num::rational::BigRational;
use num::Zero;

use renorm::exact::binomial;
use renorm::wick::{Pairing, Polynomial};

/// Coefficients of `W(x+y)` grouped by powers of `y`: entry `j` is the
/// x-polynomial multiplying `y^{deg - j}`.
pub fn translate_poly(w: &Polynomial<BigRational>) -> Vec<Polynomial<BigRational>> {
    let n = w.degree();
    // bivariate expansion c[a][b] of sum_m w_m (x+y)^m
    let mut c = vec![vec![BigRational::zero(); n + 1]; n + 1];
    for (m, wm) in w.coeffs().iter().enumerate() {
        if wm.is_zero() {
            continue;
        }
        for a in 0..=m {
            c[a][m - a] += wm * binomial(m, a);
        }
    }
    (0..=n)
        .map(|j| {
            let b = n - j; // power of y
            Polynomial::new((0..=n).map(|a| c[a][b].clone()).collect())
        })
        .collect()
}

/// All partitions of `{0..n-1}`, self-contained (checked against small Bell
/// numbers below).
fn partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(i: usize, n: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(i);
            go(i + 1, n, cur, out);
            cur[b].pop();
        }
        cur.push(vec![i]);
        go(i + 1, n, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

/// Brute-force labelled chaos expansion of the `(k, l)` second-order object:
/// positions `0..l` are the inner legs, `l..l+k` the outer legs. Every set
/// partition of the positions is read as (singletons = uncontracted noise,
/// larger blocks = cumulants); configurations with a within-side or odd-size
/// cumulant block are dropped (polynomial annihilation, Wick renormalisation
/// and symmetry of the noise respectively), and the rest are grouped by
/// `(p, q, pairing)`. The counts are the expected multiplicities.
pub fn chaos_oracle(k: u32, l: u32) -> BTreeMap<(u32, u32, Pairing), u64> {
    let total = (k + l) as usize;
    let is_inner = |pos: usize| pos < l as usize;
    let mut out: BTreeMap<(u32, u32, Pairing), u64> = BTreeMap::new();
    'partitions: for pi in partitions(total) {
        let mut blocks = Vec::new();
        let mut p = l; // uncontracted inner
        let mut q = k; // uncontracted outer
        for block in &pi {
            if block.len() == 1 {
                continue;
            }
            let inner = block.iter().filter(|&&pos| is_inner(pos)).count() as u32;
            let outer = block.len() as u32 - inner;
            if inner == 0 || outer == 0 || block.len() % 2 == 1 {
                continue 'partitions;
            }
            blocks.push((outer, inner));
            p -= inner;
            q -= outer;
        }
        let key = (p, q, Pairing::new(blocks));
        *out.entry(key).or_insert(0) += 1;
    }
    out
}

#[allow(dead_code)]
pub fn bell_check() {
    assert_eq!(partitions(4).len(), 15);
    assert_eq!(partitions(6).len(), 203);
}
