//! Construction of first- and second-order chaos graphs from symbol data.

use super::{Edge, HyperEdge, LabelledGraph, Provenance, Role};
use crate::error::GraphError;
use crate::exact::{binomial, ExactValue};
use crate::wick::{enumerate_pairings, pairing_multiplicity, Pairing};

/// Graph of `E^{k-1} Ψ^{2k+1-n}`: a single internal vertex (which doubles as
/// the test-function endpoint `v⋆`) with `2k+1-n` external noise legs of
/// degree 3. The ε budget `k-1` is recorded but not yet attached to edges.
pub fn first_order_graph(k: u32, n: u32) -> Result<LabelledGraph, GraphError> {
    if k < 1 || n > 3 || 2 * k + 1 <= n {
        return Err(GraphError::BadIndices(format!(
            "first-order graph needs k >= 1, n <= 3 and 2k+1-n >= 1, got ({}, {})",
            k, n
        )));
    }
    let legs = 2 * k + 1 - n;
    let mut roles = vec![Role::Root, Role::VStarLower];
    let mut edges = vec![Edge::test_function(1, 0)];
    for _ in 0..legs {
        let v = roles.len();
        roles.push(Role::ExternalNoise);
        edges.push(Edge::kernel(v, 1, 3, true));
    }
    Ok(LabelledGraph {
        roles,
        edges,
        hyper_edges: Vec::new(),
        eps_prefactor: ExactValue::from_int(k as i64 - 1),
        provenance: Provenance::FirstOrder { k, n },
        allocated: false,
    })
}

/// One Wick-model chaos component of the second-order symbol
/// `E^{⌊(k-1)/2⌋}(Ψ^k I(E^{⌊l/2⌋-1} Ψ^l))`.
#[derive(Clone, Debug)]
pub struct ChaosTerm {
    /// External noise legs at `v★` (the inner side).
    pub p: u32,
    /// External noise legs at `v⋆` (the outer side).
    pub q: u32,
    /// Total contracted noise vertices.
    pub n: u32,
    /// Cumulant-block pattern over (outer, inner) contracted legs.
    pub pairing: Pairing,
    /// Count of labelled contractions realizing this component:
    /// `C(l, p') · C(k, q') · π!`.
    pub multiplicity: u64,
    pub graph: LabelledGraph,
}

impl ChaosTerm {
    pub fn chaos_order(&self) -> u32 {
        self.p + self.q
    }
}

fn validate_second_order(k: u32, l: u32) -> Result<(), GraphError> {
    if k % 2 == 1 && l % 2 == 0 {
        return Err(GraphError::BadParity);
    }
    if k < 1 || l < 2 {
        return Err(GraphError::BadIndices(format!(
            "second-order symbols need k >= 1 and l >= 2, got ({}, {})",
            k, l
        )));
    }
    Ok(())
}

/// Enumerate the Wick-renormalised chaos components of the `(k, l)`
/// second-order symbol. The inner side (`v★`, source of the barred arrow)
/// carries the `l` legs of `I(E^{⌊l/2⌋-1} Ψ^l)`; the outer side (`v⋆`)
/// carries the `k` legs. `q'` outer and `p'` inner legs are contracted into
/// cumulant blocks; every block straddles both sides, and blocks of odd total
/// size are dropped (odd cumulants of a symmetric noise vanish). Within-side
/// blocks never appear in the Wick model: inner-side self-contractions are
/// killed by the kernel's polynomial annihilation, outer-side ones by the
/// Wick renormalisation itself.
pub fn second_order_chaos_terms(k: u32, l: u32) -> Result<Vec<ChaosTerm>, GraphError> {
    validate_second_order(k, l)?;
    let delta_tau = ((k + l) % 2) as i64;
    let mut out = Vec::new();
    for q_contracted in 0..=k {
        for p_contracted in 0..=l {
            for pairing in enumerate_pairings(q_contracted, p_contracted) {
                if !pairing.all_blocks_even() {
                    continue;
                }
                let p = l - p_contracted;
                let q = k - q_contracted;
                let n = p_contracted + q_contracted;
                let multiplicity = to_u64(binomial(l as usize, p_contracted as usize))
                    * to_u64(binomial(k as usize, q_contracted as usize))
                    * pairing_multiplicity(&pairing, q_contracted, p_contracted);
                let graph = chaos_graph(k, l, p, q, &pairing, delta_tau);
                out.push(ChaosTerm { p, q, n, pairing, multiplicity, graph });
            }
        }
    }
    Ok(out)
}

fn to_u64(b: num::rational::BigRational) -> u64 {
    use num::ToPrimitive;
    b.to_integer().to_u64().expect("binomial out of u64 range")
}

fn chaos_graph(k: u32, l: u32, p: u32, q: u32, pairing: &Pairing, delta_tau: i64) -> LabelledGraph {
    let mut roles = vec![Role::Root, Role::VStarLower, Role::VStarUpper];
    let (root, v_low, v_up) = (0, 1, 2);
    let mut edges = vec![Edge::test_function(v_low, root), Edge::barred(v_up, v_low)];
    // external legs: p at v★ (inner), q at v⋆ (outer)
    for _ in 0..p {
        let v = roles.len();
        roles.push(Role::ExternalNoise);
        edges.push(Edge::kernel(v, v_up, 3, true));
    }
    for _ in 0..q {
        let v = roles.len();
        roles.push(Role::ExternalNoise);
        edges.push(Edge::kernel(v, v_low, 3, true));
    }
    let mut hyper_edges = Vec::new();
    for &(outer, inner) in pairing.blocks() {
        let mut members = Vec::new();
        for _ in 0..inner {
            let v = roles.len();
            roles.push(Role::ContractedNoise);
            edges.push(Edge::kernel(v, v_up, 3, true));
            members.push(v);
        }
        for _ in 0..outer {
            let v = roles.len();
            roles.push(Role::ContractedNoise);
            edges.push(Edge::kernel(v, v_low, 3, true));
            members.push(v);
        }
        hyper_edges.push(HyperEdge { vertices: members });
    }
    let n = pairing.left_sum() + pairing.right_sum();
    let budget_halves = (p + q + n) as i64 - 4 - delta_tau;
    LabelledGraph {
        roles,
        edges,
        hyper_edges,
        eps_prefactor: ExactValue::from_ratio(budget_halves, 2),
        provenance: Provenance::SecondOrder { k, l, p, q, n, pairing: pairing.clone() },
        allocated: false,
    }
}

/// The un-mass-renormalised 0th-chaos graph of `(k, l)` with pairing `π`:
/// `v★` with the `l` inner legs, `v⋆` with the `k` outer legs, all legs
/// contracted, barred kernel between them, test function to the origin. This
/// is the graph whose failure of the subset conditions shows the necessity of
/// the mass renormalisation.
pub fn zeroth_chaos_constant_graph(k: u32, l: u32, pairing: &Pairing) -> Result<LabelledGraph, GraphError> {
    validate_second_order(k, l)?;
    if pairing.left_sum() != k || pairing.right_sum() != l {
        return Err(GraphError::BadIndices(format!(
            "pairing {} does not contract ({}, {})",
            pairing, k, l
        )));
    }
    if (k + l) % 2 != 0 {
        return Err(GraphError::BadIndices(
            "zeroth chaos only occurs for k + l even".to_string(),
        ));
    }
    let delta_tau = 0;
    Ok(chaos_graph(k, l, 0, 0, pairing, delta_tau))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_order_shapes() {
        // Ψ³: three degree-3 legs
        let g = first_order_graph(1, 0).unwrap();
        assert_eq!(g.roles.iter().filter(|r| r.is_external()).count(), 3);
        assert!(g.eps_prefactor.is_zero());
        // E Ψ²: two legs
        let g = first_order_graph(2, 3).unwrap();
        assert_eq!(g.roles.iter().filter(|r| r.is_external()).count(), 2);
        // E Ψ⁵: five legs, budget 1
        let g = first_order_graph(2, 0).unwrap();
        assert_eq!(g.roles.iter().filter(|r| r.is_external()).count(), 5);
        assert_eq!(g.eps_prefactor, ExactValue::from_int(1));
        assert!(first_order_graph(0, 0).is_err());
        assert!(first_order_graph(1, 3).is_err()); // zero legs
    }

    #[test]
    fn parity_exclusion() {
        assert!(matches!(second_order_chaos_terms(1, 2), Err(GraphError::BadParity)));
        assert!(second_order_chaos_terms(2, 3).is_ok());
    }

    #[test]
    fn chaos_terms_2_2() {
        // matches the Ψ²I(Ψ²) display with within-side contractions removed:
        // 4th chaos ×1, 2nd chaos ×4 (one cross pair), 0th chaos pairwise ×2
        // and all-four ×1
        let terms = second_order_chaos_terms(2, 2).unwrap();
        let top = terms.iter().find(|t| t.n == 0).unwrap();
        assert_eq!((top.p, top.q, top.multiplicity), (2, 2, 1));
        let second: Vec<_> = terms.iter().filter(|t| t.chaos_order() == 2).collect();
        assert_eq!(second.len(), 1);
        assert_eq!(second[0].multiplicity, 4);
        let zeroth: Vec<_> = terms.iter().filter(|t| t.chaos_order() == 0).collect();
        assert_eq!(zeroth.len(), 2);
        let pairwise = zeroth.iter().find(|t| t.pairing.is_pairwise()).unwrap();
        assert_eq!(pairwise.multiplicity, 2);
        let all4 = zeroth.iter().find(|t| !t.pairing.is_pairwise()).unwrap();
        assert_eq!(all4.multiplicity, 1);
    }

    #[test]
    fn full_wick_chaos_1_3() {
        let terms = second_order_chaos_terms(1, 3).unwrap();
        let top = terms.iter().find(|t| t.n == 0).unwrap();
        assert_eq!(top.multiplicity, 1);
        assert_eq!(top.graph.eps_prefactor, ExactValue::zero());
    }

    #[test]
    fn zeroth_chaos_multiplicities_sum_to_pairing_total() {
        for (k, l) in [(2u32, 2u32), (3, 3), (2, 4), (4, 4)] {
            let total: u64 = second_order_chaos_terms(k, l)
                .unwrap()
                .iter()
                .filter(|t| t.chaos_order() == 0)
                .map(|t| t.multiplicity)
                .sum();
            let expected: u64 = enumerate_pairings(k, l)
                .iter()
                .filter(|pi| pi.all_blocks_even())
                .map(|pi| pairing_multiplicity(pi, k, l))
                .sum();
            assert_eq!(total, expected, "({}, {})", k, l);
        }
    }
}
