//! Graph rewrites used to bound the 0th- and 1st-chaos objects: collapsing a
//! cumulant hyper-edge to a point (at the price of `ε^{5(n/2-1)}` gained by
//! the prefactor), merging the two kernels at a valence-2 vertex (degrees add
//! minus the parabolic dimension 5), and absorbing prefactor ε into a
//! smoothed edge. Total exponent `α + prefactor` is conserved by all three.

use serde::Serialize;

use super::{Edge, EdgeKind, HyperEdge, LabelledGraph, Provenance, Role, VertexId};
use crate::error::GraphError;
use crate::exact::ExactValue;
use crate::wick::Pairing;

/// Replace the `n`-vertex hyper-edge by a single internal vertex. Former leg
/// kernels keep their degree but are marked ε-smoothed; parallel kernels to
/// the same endpoint multiply pointwise, so their degrees add. The prefactor
/// gains `5(n/2 - 1)`.
pub fn collapse_cumulant(g: &LabelledGraph, hyper: usize) -> Result<LabelledGraph, GraphError> {
    if hyper >= g.hyper_edges.len() {
        return Err(GraphError::NoSuchHyperEdge(hyper));
    }
    let mut out = g.clone();
    let h = out.hyper_edges.remove(hyper);
    let n = h.vertices.len() as i64;
    let hub = out.roles.len();
    out.roles.push(Role::Internal);
    for e in &mut out.edges {
        if h.vertices.contains(&e.tail) {
            e.tail = hub;
            e.smoothed = true;
        }
        if h.vertices.contains(&e.head) {
            e.head = hub;
            e.smoothed = true;
        }
    }
    for v in h.vertices {
        out.roles[v] = Role::Internal; // detached; dropped below
    }
    out.eps_prefactor += &ExactValue::from_ratio(5 * (n - 2), 2);
    combine_parallel(&mut out);
    prune_isolated(&mut out);
    Ok(out)
}

/// Merge the two kernel edges at a valence-2 internal vertex into one edge of
/// degree `a + b - 5`; smoothing flags are or-ed.
pub fn merge_kernels(g: &LabelledGraph, v: VertexId) -> Result<LabelledGraph, GraphError> {
    if !matches!(g.roles.get(v), Some(Role::Internal)) {
        return Err(GraphError::BadValence(0));
    }
    let incident: Vec<usize> = g
        .edges
        .iter()
        .enumerate()
        .filter(|(_, e)| e.counts() && (e.tail == v || e.head == v))
        .map(|(i, _)| i)
        .collect();
    if incident.len() != 2 {
        return Err(GraphError::BadValence(incident.len()));
    }
    if g.hyper_edges.iter().any(|h| h.vertices.contains(&v)) {
        return Err(GraphError::BadValence(3));
    }
    let (i, j) = (incident[0], incident[1]);
    if g.edges[i].renorm != 0 || g.edges[j].renorm != 0 {
        return Err(GraphError::UnrecognizedShape);
    }
    let other = |e: &Edge| if e.tail == v { e.head } else { e.tail };
    let (a, b) = (other(&g.edges[i]), other(&g.edges[j]));
    let mut out = g.clone();
    let merged = Edge {
        tail: a,
        head: b,
        degree: g.edges[i].degree.clone() + &g.edges[j].degree - &ExactValue::from_int(5),
        renorm: 0,
        eps_absorbed: g.edges[i].eps_absorbed.clone() + &g.edges[j].eps_absorbed,
        smoothed: g.edges[i].smoothed || g.edges[j].smoothed,
        kind: EdgeKind::Kernel,
    };
    let mut keep: Vec<Edge> = Vec::with_capacity(out.edges.len() - 1);
    for (idx, e) in out.edges.drain(..).enumerate() {
        if idx != i && idx != j {
            keep.push(e);
        }
    }
    keep.push(merged);
    out.edges = keep;
    combine_parallel(&mut out);
    prune_isolated(&mut out);
    Ok(out)
}

/// Move `amount` of the ε prefactor into a smoothed edge, lowering its
/// degree.
pub fn absorb_epsilon(
    g: &LabelledGraph,
    edge: usize,
    amount: &ExactValue,
) -> Result<LabelledGraph, GraphError> {
    if edge >= g.edges.len() {
        return Err(GraphError::NoSuchEdge(edge));
    }
    if !g.edges[edge].smoothed {
        return Err(GraphError::NotSmoothed);
    }
    let remaining = g.eps_prefactor.clone() - amount;
    if !remaining.is_componentwise_nonneg() {
        return Err(GraphError::OverAbsorb);
    }
    let mut out = g.clone();
    out.edges[edge].degree -= amount;
    out.edges[edge].eps_absorbed += amount;
    out.eps_prefactor = remaining;
    Ok(out)
}

/// Combine parallel plain kernels between the same endpoints (pointwise
/// products of kernels: degrees add).
fn combine_parallel(g: &mut LabelledGraph) {
    let mut i = 0;
    while i < g.edges.len() {
        if g.edges[i].kind != EdgeKind::Kernel {
            i += 1;
            continue;
        }
        let mut j = i + 1;
        while j < g.edges.len() {
            let same = g.edges[j].kind == EdgeKind::Kernel
                && ((g.edges[j].tail == g.edges[i].tail && g.edges[j].head == g.edges[i].head)
                    || (g.edges[j].tail == g.edges[i].head
                        && g.edges[j].head == g.edges[i].tail));
            if same {
                let e = g.edges.remove(j);
                g.edges[i].degree += &e.degree;
                g.edges[i].eps_absorbed += &e.eps_absorbed;
                g.edges[i].smoothed |= e.smoothed;
            } else {
                j += 1;
            }
        }
        i += 1;
    }
}

/// Drop vertices with no incident edges or hyper-edges (renumbering).
fn prune_isolated(g: &mut LabelledGraph) {
    let n = g.roles.len();
    let mut used = vec![false; n];
    for e in &g.edges {
        used[e.tail] = true;
        used[e.head] = true;
    }
    for h in &g.hyper_edges {
        for &v in &h.vertices {
            used[v] = true;
        }
    }
    let mut remap = vec![usize::MAX; n];
    let mut roles = Vec::new();
    for v in 0..n {
        if used[v] {
            remap[v] = roles.len();
            roles.push(g.roles[v]);
        }
    }
    for e in &mut g.edges {
        e.tail = remap[e.tail];
        e.head = remap[e.head];
    }
    for h in &mut g.hyper_edges {
        for v in &mut h.vertices {
            *v = remap[*v];
        }
    }
    g.roles = roles;
}

/// Which side carries the leftover noise leg in a first-chaos component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ChaosOneVariant {
    /// Contraction of the first type: all `l` inner legs with `k-1` outer
    /// ones; the noise leg sits at `v⋆`.
    NoiseOuter,
    /// Second type: `l-1` inner legs with all `k` outer ones; the noise leg
    /// sits at `v★` and the renormalised kernel (label `r_e = -1`) appears.
    NoiseInner,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Divergence {
    /// Terminal budget zero on a parabolic-degree-5 marginal loop: the
    /// constant grows like `|log ε|`.
    LogDivergent,
    /// Bounded, with residual rate `ε^θ`, `θ ≥ 0`.
    Finite { theta: ExactValue },
}

/// Classify the divergence of a renormalisation-constant configuration by
/// executing the rewrite chain symbolically: collapse every cumulant block,
/// merge the resulting valence-2 vertices, then absorb the accumulated ε
/// budget into the combined two-star bundle.
///
/// Chaos 0 takes `π ∈ P(k, l)` (all blocks of even size); the marginal case
/// (bundle reducible only to degree 2, closing a degree-5 loop with the
/// kernel to the origin, with zero budget) is the logarithmically divergent
/// one. Chaos 1 takes the contraction type and `π ∈ P(k-1, l)` (first type)
/// or `π ∈ P(k, l-1)` (second type); its marginal case is finite with
/// `θ = 0` because the bundle becomes the renormalised distribution.
pub fn classify_divergence(
    k: u32,
    l: u32,
    pi: &Pairing,
    chaos: u32,
    variant: Option<ChaosOneVariant>,
) -> Result<Divergence, GraphError> {
    if !pi.all_blocks_even() {
        return Err(GraphError::UnrecognizedConfiguration(
            "pairing has odd blocks (odd cumulants vanish)".to_string(),
        ));
    }
    let (outer_legs, inner_legs, budget_halves, target) = match (chaos, variant) {
        (0, _) => {
            if (k + l) % 2 != 0 {
                return Err(GraphError::UnrecognizedConfiguration(
                    "zeroth chaos needs k + l even".to_string(),
                ));
            }
            (k, l, k as i64 + l as i64 - 4, 2i64)
        }
        (1, Some(ChaosOneVariant::NoiseOuter)) => (k - 1, l, k as i64 + l as i64 - 5, 2),
        (1, Some(ChaosOneVariant::NoiseInner)) => (k, l - 1, k as i64 + l as i64 - 5, 5),
        _ => {
            return Err(GraphError::UnrecognizedConfiguration(
                "chaos must be 0, or 1 with a contraction type".to_string(),
            ))
        }
    };
    if pi.left_sum() != outer_legs || pi.right_sum() != inner_legs {
        return Err(GraphError::UnrecognizedConfiguration(format!(
            "pairing {} does not contract ({}, {}) legs",
            pi, outer_legs, inner_legs
        )));
    }

    // constant-shaped graph: v★ with the inner legs, v⋆ with the outer legs,
    // blocks as hyper-edges; the second-type chaos-1 bundle includes the
    // direct kernel between the stars.
    let mut roles = vec![Role::Root, Role::VStarLower, Role::VStarUpper];
    let (root, v_low, v_up) = (0usize, 1usize, 2usize);
    let mut edges = vec![Edge::test_function(v_low, root), Edge::kernel(v_up, root, 3, false)];
    let mut hyper_edges = Vec::new();
    for &(outer, inner) in pi.blocks() {
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
    if target == 5 {
        // second-type bundle: the plain kernel of the unrenormalised Q
        edges.push(Edge::kernel(v_up, v_low, 3, false));
    }
    let mut g = LabelledGraph {
        roles,
        edges,
        hyper_edges,
        eps_prefactor: ExactValue::from_ratio(budget_halves, 2),
        provenance: Provenance::Constant { k, l, pairing: pi.clone() },
        allocated: true,
    };

    // collapse every block, then merge the hubs into star-to-star edges
    while !g.hyper_edges.is_empty() {
        g = collapse_cumulant(&g, 0)?;
    }
    loop {
        let hub = g.roles.iter().enumerate().find_map(|(v, r)| {
            if *r != Role::Internal {
                return None;
            }
            let deg =
                g.edges.iter().filter(|e| e.counts() && (e.tail == v || e.head == v)).count();
            (deg == 2).then_some(v)
        });
        match hub {
            Some(v) => g = merge_kernels(&g, v)?,
            None => break,
        }
    }

    // the star-to-star bundle is now a single edge
    let v_low = g.v_star_lower().ok_or(GraphError::UnrecognizedShape)?;
    let v_up = g.v_star_upper().ok_or(GraphError::UnrecognizedShape)?;
    let bundle = g
        .edges
        .iter()
        .position(|e| {
            e.counts()
                && ((e.tail == v_up && e.head == v_low) || (e.tail == v_low && e.head == v_up))
        })
        .ok_or_else(|| {
            GraphError::UnrecognizedConfiguration("no star-to-star bundle after rewriting".into())
        })?;
    let bundle_degree = g.edges[bundle].degree.clone();
    let needed = bundle_degree - &ExactValue::from_int(target);
    let budget = g.eps_prefactor.clone();
    let slack = budget.clone() - &needed;
    if !slack.is_componentwise_nonneg() {
        return Err(GraphError::UnrecognizedConfiguration(format!(
            "budget {} cannot reduce the bundle to degree {}",
            budget, target
        )));
    }
    if needed.is_zero() {
        // marginal: nothing to absorb, nothing left over
        if chaos == 0 {
            // degree-5 loop (bundle 2 + closing kernel 3) with zero budget
            return Ok(Divergence::LogDivergent);
        }
        return Ok(Divergence::Finite { theta: budget });
    }
    // absorb all but δ of the needed power: residual θ = slack + δ
    let absorbed = needed - &ExactValue::delta(1);
    let g = absorb_epsilon(&g, bundle, &absorbed)?;
    Ok(Divergence::Finite { theta: g.eps_prefactor })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::graph_homogeneity;

    fn total_exponent(g: &LabelledGraph) -> ExactValue {
        graph_homogeneity(g) + &g.eps_prefactor
    }

    #[test]
    fn collapse_gains() {
        let g = crate::graphs::zeroth_chaos_constant_graph(2, 2, &Pairing::single(2, 2)).unwrap();
        let before = total_exponent(&g);
        let collapsed = collapse_cumulant(&g, 0).unwrap();
        // n = 4 block: prefactor gain 5
        assert_eq!(
            collapsed.eps_prefactor,
            g.eps_prefactor.clone() + &ExactValue::from_int(5)
        );
        assert_eq!(total_exponent(&collapsed), before);
        // n = 2 block: gain 0
        let g = crate::graphs::zeroth_chaos_constant_graph(2, 2, &Pairing::pairwise(2)).unwrap();
        let collapsed = collapse_cumulant(&g, 0).unwrap();
        assert_eq!(collapsed.eps_prefactor, g.eps_prefactor);
    }

    #[test]
    fn merge_degree_arithmetic() {
        // two degree-3 kernels chained at an internal vertex merge to 3+3-5=1
        let g = LabelledGraph {
            roles: vec![Role::Root, Role::VStarLower, Role::Internal, Role::VStarUpper],
            edges: vec![
                Edge::test_function(1, 0),
                Edge::kernel(3, 2, 3, true),
                Edge::kernel(2, 1, 3, false),
            ],
            hyper_edges: vec![],
            eps_prefactor: ExactValue::zero(),
            provenance: Provenance::Synthetic("chain".into()),
            allocated: true,
        };
        let before = total_exponent(&g);
        let merged = merge_kernels(&g, 2).unwrap();
        let e = merged.edges.iter().find(|e| e.counts()).unwrap();
        assert_eq!(e.degree, ExactValue::from_int(1));
        assert!(e.smoothed);
        assert_eq!(total_exponent(&merged), before);
        assert!(merge_kernels(&g, 1).is_err()); // not an Internal vertex
    }

    #[test]
    fn absorb_bookkeeping() {
        let g = LabelledGraph {
            roles: vec![Role::Root, Role::VStarLower, Role::ExternalNoise],
            edges: vec![Edge::test_function(1, 0), Edge::kernel(2, 1, 3, true)],
            hyper_edges: vec![],
            eps_prefactor: ExactValue::from_int(1),
            provenance: Provenance::Synthetic("leg".into()),
            allocated: true,
        };
        let half_minus_delta = ExactValue::new(crate::exact::ratio(1, 2), 0, -1);
        let out = absorb_epsilon(&g, 1, &half_minus_delta).unwrap();
        assert_eq!(out.edges[1].degree, ExactValue::new(crate::exact::ratio(5, 2), 0, 1));
        assert_eq!(total_exponent(&out), total_exponent(&g));
        // absorb 0 is the identity
        let same = absorb_epsilon(&g, 1, &ExactValue::zero()).unwrap();
        assert_eq!(same.edges[1].degree, g.edges[1].degree);
        // over-absorption is refused
        assert!(absorb_epsilon(&g, 1, &ExactValue::from_int(2)).is_err());
        // non-smoothed target is refused
        let mut g2 = g.clone();
        g2.edges[1].smoothed = false;
        assert!(absorb_epsilon(&g2, 1, &half_minus_delta).is_err());
    }

    #[test]
    fn classify_marginal_cases() {
        // (2,2) pairwise chaos 0 → log divergent
        assert_eq!(
            classify_divergence(2, 2, &Pairing::pairwise(2), 0, None).unwrap(),
            Divergence::LogDivergent
        );
        // (2,2) all-four chaos 0 → finite with θ > 0
        match classify_divergence(2, 2, &Pairing::single(2, 2), 0, None).unwrap() {
            Divergence::Finite { theta } => assert!(theta.is_positive()),
            other => panic!("expected finite, got {:?}", other),
        }
        // (2,3) pairwise chaos 1 (second type) → finite with θ = 0
        match classify_divergence(2, 3, &Pairing::pairwise(2), 1, Some(ChaosOneVariant::NoiseInner))
            .unwrap()
        {
            Divergence::Finite { theta } => assert!(theta.is_zero()),
            other => panic!("expected finite theta 0, got {:?}", other),
        }
    }

    #[test]
    fn classify_first_type_2_3() {
        // (2,3) first type: π ∈ P(1,3), single block; finite θ > 0
        let pi = Pairing::single(1, 3);
        match classify_divergence(2, 3, &pi, 1, Some(ChaosOneVariant::NoiseOuter)).unwrap() {
            Divergence::Finite { theta } => assert!(theta.is_positive()),
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn classify_rejects_odd_blocks() {
        let pi = Pairing::new(vec![(1, 2), (1, 1)]);
        assert!(classify_divergence(2, 3, &pi, 0, None).is_err());
    }
}
