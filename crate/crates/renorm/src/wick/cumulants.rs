//! Joint moments, joint cumulants, and Wick expansions over abstract labels.
//!
//! Variables are identified by `u32` labels; a product of variables is a
//! sorted multiset of labels. The moment–cumulant identity
//! `E(X^B) = Σ_{π ∈ P(B)} Π_{B̄ ∈ π} E_c(X_B̄)` is applied over *positions*
//! of the multiset, which handles repeated variables (powers) uniformly.

use std::collections::BTreeMap;

use num::rational::BigRational;

use super::partitions::set_partitions;
use super::Scalar;
use crate::error::WickError;

/// Sorted multiset of variable labels.
pub type Multiset = Vec<u32>;

pub fn multiset(labels: &[u32]) -> Multiset {
    let mut m = labels.to_vec();
    m.sort_unstable();
    m
}

/// Joint cumulants `E_c(X_B)` indexed by label multisets. Absent entries are
/// zero; the empty multiset never appears. In symmetric mode every odd-size
/// entry is forced to zero on insertion.
#[derive(Clone, Debug, PartialEq)]
pub struct CumulantTable<S = BigRational> {
    entries: BTreeMap<Multiset, S>,
    symmetric: bool,
}

impl<S: Scalar> CumulantTable<S> {
    pub fn new() -> Self {
        CumulantTable { entries: BTreeMap::new(), symmetric: false }
    }

    /// Table in which odd-order entries vanish identically.
    pub fn new_symmetric() -> Self {
        CumulantTable { entries: BTreeMap::new(), symmetric: true }
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn insert(&mut self, labels: &[u32], value: S) {
        assert!(!labels.is_empty(), "the empty-set entry is not stored");
        if self.symmetric && labels.len() % 2 == 1 {
            return;
        }
        if value.is_zero() {
            self.entries.remove(&multiset(labels));
        } else {
            self.entries.insert(multiset(labels), value);
        }
    }

    pub fn get(&self, labels: &Multiset) -> S {
        self.entries.get(labels).cloned().unwrap_or_else(S::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Multiset, &S)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Univariate table: `kappa[i]` is the cumulant of order `i+1` of the
    /// single variable `0`.
    pub fn univariate(kappa: &[S]) -> Self {
        let mut t = CumulantTable::new();
        for (i, k) in kappa.iter().enumerate() {
            t.insert(&vec![0; i + 1], k.clone());
        }
        t
    }
}

impl<S: Scalar> Default for CumulantTable<S> {
    fn default() -> Self {
        CumulantTable::new()
    }
}

fn sub_multiset(b: &Multiset, positions: &[usize]) -> Multiset {
    positions.iter().map(|&i| b[i]).collect()
}

/// Cumulants from joint moments by induction over the moment–partition
/// identity. `moments` must contain every non-empty sub-multiset of each of
/// its keys.
pub fn moments_to_cumulants<S: Scalar>(
    moments: &BTreeMap<Multiset, S>,
) -> Result<CumulantTable<S>, WickError> {
    let mut keys: Vec<&Multiset> = moments.keys().collect();
    keys.sort_by_key(|k| k.len());
    let mut table = CumulantTable::new();
    for b in keys {
        if b.is_empty() {
            continue;
        }
        if !table.entries.contains_key(b) {
            let value = cumulant_of(b, moments, &mut table)?;
            if !value.is_zero() {
                table.entries.insert(b.clone(), value);
            }
        }
    }
    Ok(table)
}

fn cumulant_of<S: Scalar>(
    b: &Multiset,
    moments: &BTreeMap<Multiset, S>,
    table: &mut CumulantTable<S>,
) -> Result<S, WickError> {
    let m = moments
        .get(b)
        .cloned()
        .ok_or_else(|| WickError::MissingMoment(format!("{:?}", b)))?;
    let n = b.len();
    let mut acc = m;
    for pi in set_partitions(n) {
        if pi.len() == 1 {
            continue; // the block {B} itself carries the unknown cumulant
        }
        let mut prod = None::<S>;
        for block in &pi {
            let key = {
                let mut k = sub_multiset(b, block);
                k.sort_unstable();
                k
            };
            let kappa = match table.entries.get(&key) {
                Some(v) => v.clone(),
                None => {
                    // strictly smaller than |B|, so this recursion terminates
                    let v = cumulant_of(&key, moments, table)?;
                    table.entries.insert(key.clone(), v.clone());
                    v
                }
            };
            prod = Some(match prod {
                None => kappa,
                Some(p) => p * kappa,
            });
        }
        if let Some(p) = prod {
            acc = acc - p;
        }
    }
    Ok(acc)
}

/// Moments from cumulants (the forward direction of the same identity).
/// Produces a moment for every key of the table and every sub-multiset of it.
pub fn cumulants_to_moments<S: Scalar>(table: &CumulantTable<S>) -> BTreeMap<Multiset, S> {
    let mut wanted: Vec<Multiset> = Vec::new();
    for (k, _) in table.entries() {
        for mask in 1u32..(1 << k.len()) {
            let positions: Vec<usize> = (0..k.len()).filter(|i| mask >> i & 1 == 1).collect();
            let mut s = sub_multiset(k, &positions);
            s.sort_unstable();
            wanted.push(s);
        }
    }
    wanted.sort();
    wanted.dedup();
    let mut out = BTreeMap::new();
    out.insert(Vec::new(), S::one());
    for b in wanted {
        let m = moment_from_cumulants(&b, table);
        out.insert(b, m);
    }
    out
}

pub fn moment_from_cumulants<S: Scalar>(b: &Multiset, table: &CumulantTable<S>) -> S {
    let n = b.len();
    if n == 0 {
        return S::one();
    }
    let mut acc = S::zero();
    for pi in set_partitions(n) {
        let mut prod = S::one();
        let mut zero = false;
        for block in &pi {
            let mut key = sub_multiset(b, block);
            key.sort_unstable();
            let kappa = table.get(&key);
            if kappa.is_zero() {
                zero = true;
                break;
            }
            prod = prod * kappa;
        }
        if !zero {
            acc = acc + prod;
        }
    }
    acc
}

/// Wick expansion of the product `X^A`: the coefficient of `:X_B:` for each
/// sub-multiset `B ⊆ A`, i.e. `X^A = Σ_B c_B :X_B:` with
/// `c_B = Σ_{π ∈ P(A∖B)} Π κ(block)`. Position-subsets with the same label
/// multiset are grouped.
pub fn wick_expand<S: Scalar>(
    a: &Multiset,
    cumulants: &CumulantTable<S>,
) -> BTreeMap<Multiset, S> {
    let n = a.len();
    assert!(n <= 16, "wick_expand is meant for small products");
    let mut out: BTreeMap<Multiset, S> = BTreeMap::new();
    for mask in 0u32..(1 << n) {
        let kept: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let dropped: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
        let coeff = partition_sum(&dropped, a, cumulants);
        if coeff.is_zero() {
            continue;
        }
        let mut key = sub_multiset(a, &kept);
        key.sort_unstable();
        let entry = out.entry(key).or_insert_with(S::zero);
        *entry = entry.clone() + coeff;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn partition_sum<S: Scalar>(positions: &[usize], a: &Multiset, cumulants: &CumulantTable<S>) -> S {
    if positions.is_empty() {
        return S::one();
    }
    let mut acc = S::zero();
    for pi in set_partitions(positions.len()) {
        let mut prod = S::one();
        let mut zero = false;
        for block in &pi {
            let mut key: Multiset = block.iter().map(|&i| a[positions[i]]).collect();
            key.sort_unstable();
            let kappa = cumulants.get(&key);
            if kappa.is_zero() {
                zero = true;
                break;
            }
            prod = prod * kappa;
        }
        if !zero {
            acc = acc + prod;
        }
    }
    acc
}
