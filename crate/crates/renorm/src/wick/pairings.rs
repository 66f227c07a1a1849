//! Pairings of a tuple `(k, ℓ)`: multisets of blocks `(k_j, ℓ_j)` with
//! `k_j, ℓ_j ≥ 1`, `Σ k_j = k`, `Σ ℓ_j = ℓ`. Each block stands for a joint
//! cumulant straddling the two vertex groups; `π!` counts the labelled
//! contractions realizing the pairing.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::factorial_u128;

/// A pairing, stored as blocks sorted in decreasing order (a canonical
/// multiset representative).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pairing {
    blocks: Vec<(u32, u32)>,
}

impl Pairing {
    pub fn new(mut blocks: Vec<(u32, u32)>) -> Self {
        assert!(blocks.iter().all(|&(a, b)| a >= 1 && b >= 1));
        blocks.sort_unstable_by(|a, b| b.cmp(a));
        Pairing { blocks }
    }

    /// The empty pairing of `(0, 0)`.
    pub fn empty() -> Self {
        Pairing { blocks: Vec::new() }
    }

    pub fn blocks(&self) -> &[(u32, u32)] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn left_sum(&self) -> u32 {
        self.blocks.iter().map(|b| b.0).sum()
    }

    pub fn right_sum(&self) -> u32 {
        self.blocks.iter().map(|b| b.1).sum()
    }

    /// Every block has even total size (`k_j + ℓ_j` even). Odd joint
    /// cumulants of a symmetric noise vanish, so only these survive.
    pub fn all_blocks_even(&self) -> bool {
        self.blocks.iter().all(|&(a, b)| (a + b) % 2 == 0)
    }

    /// All blocks are `(1,1)`.
    pub fn is_pairwise(&self) -> bool {
        self.blocks.iter().all(|&b| b == (1, 1))
    }

    /// The all-(1,1) pairing of `(n, n)`.
    pub fn pairwise(n: u32) -> Self {
        Pairing { blocks: vec![(1, 1); n as usize] }
    }

    /// The single-block pairing `{(k, ℓ)}`.
    pub fn single(k: u32, l: u32) -> Self {
        Pairing::new(vec![(k, l)])
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (a, b)) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({},{})", a, b)?;
        }
        write!(f, "}}")
    }
}

/// All pairings of `(k, ℓ)`, deduplicated as multisets, in a deterministic
/// order. `enumerate_pairings(0, 0)` yields just the empty pairing;
/// `P(k, 0)` for `k ≥ 1` is empty since every block needs a vertex on each
/// side.
pub fn enumerate_pairings(k: u32, l: u32) -> Vec<Pairing> {
    let mut out = Vec::new();
    let mut blocks = Vec::new();
    // blocks chosen in non-increasing order to enumerate each multiset once
    fn go(
        rem_k: u32,
        rem_l: u32,
        max_block: (u32, u32),
        blocks: &mut Vec<(u32, u32)>,
        out: &mut Vec<Pairing>,
    ) {
        if rem_k == 0 && rem_l == 0 {
            out.push(Pairing { blocks: blocks.clone() });
            return;
        }
        if rem_k == 0 || rem_l == 0 {
            return;
        }
        for a in (1..=rem_k).rev() {
            for b in (1..=rem_l).rev() {
                if (a, b) > max_block {
                    continue;
                }
                blocks.push((a, b));
                go(rem_k - a, rem_l - b, (a, b), blocks, out);
                blocks.pop();
            }
        }
    }
    go(k, l, (u32::MAX, u32::MAX), &mut blocks, &mut out);
    out.sort();
    out
}

/// `π!`: the number of ways to contract `k` labelled left vertices and `ℓ`
/// labelled right vertices according to the pairing `π`, i.e.
/// `[k!·ℓ! / Π_j (k_j!·ℓ_j!)] / Π_types (multiplicity of repeated block)!`.
pub fn pairing_multiplicity(pi: &Pairing, k: u32, l: u32) -> u64 {
    assert_eq!(pi.left_sum(), k, "pairing does not sum to k");
    assert_eq!(pi.right_sum(), l, "pairing does not sum to l");
    let mut num = factorial_u128(k) * factorial_u128(l);
    for &(a, b) in pi.blocks() {
        num /= factorial_u128(a) * factorial_u128(b);
    }
    let mut i = 0;
    while i < pi.blocks.len() {
        let mut run = 1u32;
        while i + (run as usize) < pi.blocks.len() && pi.blocks[i + run as usize] == pi.blocks[i] {
            run += 1;
        }
        num /= factorial_u128(run);
        i += run as usize;
    }
    u64::try_from(num).expect("pairing multiplicity overflows u64")
}
