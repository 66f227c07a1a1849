//! Verification of the four subset power-counting conditions, exhaustively
//! over all qualifying subsets and through the reduced worst-case families.
//!
//! Edge sets for a subset `H̄` (test-function links never participate):
//!
//! ```text
//! E↑(H̄) = { e : e ∩ H̄ = {e_-}, r_e > 0 }
//! E↓(H̄) = { e : e ∩ H̄ = {e_+}, r_e > 0 }
//! E0(H̄) = { e : e ⊆ H̄ }          (hyper-edges: all vertices in H̄)
//! E(H̄)  = { e : e ∩ H̄ ≠ ∅ }
//! ```
//!
//! The conditions (all strict; equality counts as a violation):
//!
//! 1. every edge: `a_e + (r_e ∧ 0) < 5`;
//! 2. `H̄ ⊆ H_0`, `|H̄| ≥ 3`:
//!    `Σ_{E0} a < 5(|H̄_in| + ½(|H̄_ex| - 1 - 1_{H̄_ex=∅}))`;
//! 3. `0 ∈ H̄`, `|H̄| ≥ 2`:
//!    `Σ_{E0} a + Σ_{E↑}(a + r - 1) - Σ_{E↓} r < 5(|H̄_in| + ½|H̄_ex|)`;
//! 4. non-empty `H̄ ⊆ H ∖ H_⋆`:
//!    `Σ_{E(H̄)∖E↓} a + Σ_{E↑} r - Σ_{E↓}(r - 1) > 5(|H̄_in| + ½|H̄_ex|)`.
//!
//! Condition 4 is taken over subsets avoiding `H_⋆ = {0, v⋆}`: the source
//! text writes `H̄ ⊂ H_⋆` there, but every use assumes `v⋆ ∉ H̄`, so the
//! complement is what is checked (and what the worst-case reduction needs).

use std::cmp::Ordering;

use serde::Serialize;

use super::{EdgeKind, LabelledGraph, Provenance, Role, VertexId};
use crate::error::GraphError;
use crate::exact::ExactValue;

/// Whether to treat the barred arrow as having degree `3 + δ`. The bump
/// resolves the marginal equality of the full-Wick components with two inner
/// legs (`l = 2`), the `Ψ²I(Ψ²)` fourth chaos being the prototype; `Auto`
/// applies it exactly there.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BumpMode {
    #[default]
    Auto,
    On,
    Off,
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub bump: BumpMode,
    /// Brute-force subset enumeration refuses graphs with more vertices.
    pub vertex_limit: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { bump: BumpMode::Auto, vertex_limit: 22 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    /// Condition index, 1–4.
    pub condition: u8,
    /// Sorted vertex ids of the offending subset (empty for condition 1,
    /// where `subset` holds the edge endpoints instead).
    pub subset: Vec<VertexId>,
    pub lhs: ExactValue,
    pub rhs: ExactValue,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub pass: bool,
    pub violations: Vec<Violation>,
    /// Some comparison's verdict depended on the δ-before-κ convention.
    pub cross_priority_warning: bool,
}

struct Prepared<'g> {
    g: &'g LabelledGraph,
    /// Effective degree per edge (bump applied), aligned with `g.edges`.
    degrees: Vec<ExactValue>,
}

impl<'g> Prepared<'g> {
    fn new(g: &'g LabelledGraph, options: &CheckOptions) -> Prepared<'g> {
        let bump = match options.bump {
            BumpMode::On => true,
            BumpMode::Off => false,
            BumpMode::Auto => matches!(
                g.provenance,
                Provenance::SecondOrder { l: 2, n: 0, .. }
            ),
        };
        let degrees = g
            .edges
            .iter()
            .map(|e| {
                if bump && e.kind == EdgeKind::BarredKernel {
                    e.degree.clone() + &ExactValue::delta(1)
                } else {
                    e.degree.clone()
                }
            })
            .collect();
        Prepared { g, degrees }
    }

    fn rhs_counts(&self, subset: &[bool]) -> (i64, i64) {
        let mut internal = 0;
        let mut external = 0;
        for (v, r) in self.g.roles.iter().enumerate() {
            if subset[v] {
                if r.is_internal() {
                    internal += 1;
                } else if r.is_external() {
                    external += 1;
                }
            }
        }
        (internal, external)
    }

    /// `(lhs, rhs)` of condition 2 on a subset.
    fn condition2(&self, subset: &[bool]) -> (ExactValue, ExactValue) {
        let mut lhs = ExactValue::zero();
        for (i, e) in self.g.edges.iter().enumerate() {
            if e.counts() && subset[e.tail] && subset[e.head] {
                lhs += &self.degrees[i];
            }
        }
        for h in &self.g.hyper_edges {
            if h.vertices.iter().all(|&v| subset[v]) {
                lhs += &h.degree();
            }
        }
        let (internal, external) = self.rhs_counts(subset);
        let empty_ex = if external == 0 { 1 } else { 0 };
        let rhs = ExactValue::from_int(5 * internal)
            + &ExactValue::from_ratio(5 * (external - 1 - empty_ex), 2);
        (lhs, rhs)
    }

    fn condition3(&self, subset: &[bool]) -> (ExactValue, ExactValue) {
        let mut lhs = ExactValue::zero();
        for (i, e) in self.g.edges.iter().enumerate() {
            if !e.counts() {
                continue;
            }
            let (tin, hin) = (subset[e.tail], subset[e.head]);
            if tin && hin {
                lhs += &self.degrees[i];
            } else if e.renorm > 0 && tin {
                lhs += &self.degrees[i];
                lhs += &ExactValue::from_int(e.renorm as i64 - 1);
            } else if e.renorm > 0 && hin {
                lhs -= &ExactValue::from_int(e.renorm as i64);
            }
        }
        for h in &self.g.hyper_edges {
            if h.vertices.iter().all(|&v| subset[v]) {
                lhs += &h.degree();
            }
        }
        let (internal, external) = self.rhs_counts(subset);
        let rhs = ExactValue::from_int(5 * internal) + &ExactValue::from_ratio(5 * external, 2);
        (lhs, rhs)
    }

    fn condition4(&self, subset: &[bool]) -> (ExactValue, ExactValue) {
        let mut lhs = ExactValue::zero();
        for (i, e) in self.g.edges.iter().enumerate() {
            if !e.counts() {
                continue;
            }
            let (tin, hin) = (subset[e.tail], subset[e.head]);
            if !tin && !hin {
                continue;
            }
            let down = e.renorm > 0 && hin && !tin;
            let up = e.renorm > 0 && tin && !hin;
            if !down {
                lhs += &self.degrees[i];
            }
            if up {
                lhs += &ExactValue::from_int(e.renorm as i64);
            }
            if down {
                lhs -= &ExactValue::from_int(e.renorm as i64 - 1);
            }
        }
        for h in &self.g.hyper_edges {
            if h.vertices.iter().any(|&v| subset[v]) {
                lhs += &h.degree();
            }
        }
        let (internal, external) = self.rhs_counts(subset);
        let rhs = ExactValue::from_int(5 * internal) + &ExactValue::from_ratio(5 * external, 2);
        (lhs, rhs)
    }
}

struct Outcome {
    violations: Vec<Violation>,
    warn: bool,
}

impl Outcome {
    fn new() -> Outcome {
        Outcome { violations: Vec::new(), warn: false }
    }

    fn record(&mut self, condition: u8, subset: Vec<VertexId>, lhs: ExactValue, rhs: ExactValue, want: Ordering) {
        let (ord, flagged) = lhs.compare_detailed(&rhs);
        self.warn |= flagged;
        if ord != want {
            self.violations.push(Violation { condition, subset, lhs, rhs });
        }
    }
}

fn subset_ids(subset: &[bool]) -> Vec<VertexId> {
    subset.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v).collect()
}

fn check_condition1(prep: &Prepared, outcome: &mut Outcome) {
    let five = ExactValue::from_int(5);
    for (i, e) in prep.g.edges.iter().enumerate() {
        if !e.counts() {
            continue;
        }
        let lhs = prep.degrees[i].clone() + &ExactValue::from_int(e.renorm.min(0) as i64);
        outcome.record(1, vec![e.tail, e.head], lhs, five.clone(), Ordering::Less);
    }
}

fn run_conditions(prep: &Prepared, subsets2: &[Vec<bool>], subsets3: &[Vec<bool>], subsets4: &[Vec<bool>], outcome: &mut Outcome) {
    for s in subsets2 {
        let (lhs, rhs) = prep.condition2(s);
        outcome.record(2, subset_ids(s), lhs, rhs, Ordering::Less);
    }
    for s in subsets3 {
        let (lhs, rhs) = prep.condition3(s);
        outcome.record(3, subset_ids(s), lhs, rhs, Ordering::Less);
    }
    for s in subsets4 {
        let (lhs, rhs) = prep.condition4(s);
        outcome.record(4, subset_ids(s), lhs, rhs, Ordering::Greater);
    }
}

/// Exhaustive check of conditions 1–4 over every qualifying subset, by
/// bitmask enumeration in increasing order (reports are deterministic).
pub fn check_assumption_bruteforce(
    g: &LabelledGraph,
    options: &CheckOptions,
) -> Result<CheckReport, GraphError> {
    let n = g.vertex_count();
    if n > options.vertex_limit {
        return Err(GraphError::VertexLimit(n, options.vertex_limit));
    }
    let prep = Prepared::new(g, options);
    let root = g.root();
    let v_low = g.v_star_lower();

    let free: Vec<VertexId> = (0..n).filter(|&v| v != root).collect();
    let mut subsets2 = Vec::new();
    let mut subsets3 = Vec::new();
    for mask in 0u64..(1 << free.len()) {
        let mut subset = vec![false; n];
        let mut count = 0;
        for (bit, &v) in free.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                subset[v] = true;
                count += 1;
            }
        }
        if count >= 3 {
            subsets2.push(subset.clone());
        }
        if count >= 1 {
            subset[root] = true;
            subsets3.push(subset);
        }
    }

    let free4: Vec<VertexId> =
        (0..n).filter(|&v| v != root && Some(v) != v_low).collect();
    let mut subsets4 = Vec::new();
    for mask in 1u64..(1 << free4.len()) {
        let mut subset = vec![false; n];
        for (bit, &v) in free4.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                subset[v] = true;
            }
        }
        subsets4.push(subset);
    }

    let mut outcome = Outcome::new();
    check_condition1(&prep, &mut outcome);
    run_conditions(&prep, &subsets2, &subsets3, &subsets4, &mut outcome);
    Ok(CheckReport {
        pass: outcome.violations.is_empty(),
        violations: outcome.violations,
        cross_priority_warning: outcome.warn,
    })
}

/// Vertex groups of the recognized graph shapes: the two distinguished
/// vertices, the external legs on each side, and the contracted noise.
struct Groups {
    v_up: Option<VertexId>,
    v_low: VertexId,
    inner_ext: Vec<VertexId>,
    outer_ext: Vec<VertexId>,
    contracted: Vec<VertexId>,
}

fn groups(g: &LabelledGraph) -> Result<Groups, GraphError> {
    match g.provenance {
        Provenance::FirstOrder { .. } | Provenance::SecondOrder { .. } => {}
        _ => return Err(GraphError::UnrecognizedShape),
    }
    let v_low = g.v_star_lower().ok_or(GraphError::UnrecognizedShape)?;
    let v_up = g.v_star_upper();
    let mut inner_ext = Vec::new();
    let mut outer_ext = Vec::new();
    let contracted: Vec<VertexId> = g
        .roles
        .iter()
        .enumerate()
        .filter(|(_, r)| **r == Role::ContractedNoise)
        .map(|(v, _)| v)
        .collect();
    for e in g.edges.iter().filter(|e| e.counts()) {
        if g.roles[e.tail] == Role::ExternalNoise {
            if Some(e.head) == v_up {
                inner_ext.push(e.tail);
            } else if e.head == v_low {
                outer_ext.push(e.tail);
            } else {
                return Err(GraphError::UnrecognizedShape);
            }
        }
    }
    Ok(Groups { v_up, v_low, inner_ext, outer_ext, contracted })
}

/// Reduced verification: only the worst-case subsets of the verification
/// lemma are tested. Per condition, each side's externals enter all-or-none
/// (tied to its distinguished vertex), and the contracted vertices enter
/// exactly when both distinguished vertices do. For first-order graphs this
/// degenerates to all-or-nothing leg subsets. Soundness: the reduced family
/// is a subfamily of the brute-force one, and by the verification lemma a
/// pass on it implies the full conditions, so the two checkers always agree
/// on the overall verdict.
pub fn check_assumption_reduced(
    g: &LabelledGraph,
    options: &CheckOptions,
) -> Result<CheckReport, GraphError> {
    let prep = Prepared::new(g, options);
    let n = g.vertex_count();
    let root = g.root();
    let gr = groups(g)?;

    let build = |with_root: bool, up: bool, low: bool, inner: bool, outer: bool, contr: bool| {
        let mut s = vec![false; n];
        if with_root {
            s[root] = true;
        }
        if up {
            if let Some(v) = gr.v_up {
                s[v] = true;
            }
        }
        if low {
            s[gr.v_low] = true;
        }
        if inner {
            for &v in &gr.inner_ext {
                s[v] = true;
            }
        }
        if outer {
            for &v in &gr.outer_ext {
                s[v] = true;
            }
        }
        if contr {
            for &v in &gr.contracted {
                s[v] = true;
            }
        }
        s
    };
    let size = |s: &[bool]| s.iter().filter(|&&b| b).count();

    // condition 2: stars in/out, a side's externals only with its star (or
    // alone with it: the {v★} option), contracted iff both stars
    let mut subsets2 = Vec::new();
    for up in [false, true] {
        for low in [false, true] {
            let inner_opts: &[bool] = if up { &[false, true] } else { &[false] };
            let outer_opts: &[bool] = if low { &[false, true] } else { &[false] };
            for &inner in inner_opts {
                for &outer in outer_opts {
                    let contr = up && low || (gr.v_up.is_none() && low);
                    let s = build(false, up, low, inner, outer, contr);
                    if size(&s) >= 3 {
                        subsets2.push(s);
                    }
                }
            }
        }
    }

    // condition 3: as above but a side's externals are forced with its star
    let mut subsets3 = Vec::new();
    for up in [false, true] {
        for low in [false, true] {
            let contr = up && low || (gr.v_up.is_none() && low);
            let s = build(true, up, low, up, low, contr);
            if size(&s) >= 2 {
                subsets3.push(s);
            }
        }
    }

    // condition 4: the single worst case {v★} ∪ inner ∪ contracted
    let mut subsets4 = Vec::new();
    if gr.v_up.is_some() {
        subsets4.push(build(false, true, false, true, false, true));
    } else if !gr.outer_ext.is_empty() {
        // first order: all legs
        subsets4.push(build(false, false, false, false, true, false));
    }

    let mut outcome = Outcome::new();
    check_condition1(&prep, &mut outcome);
    run_conditions(&prep, &subsets2, &subsets3, &subsets4, &mut outcome);
    Ok(CheckReport {
        pass: outcome.violations.is_empty(),
        violations: outcome.violations,
        cross_priority_warning: outcome.warn,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{
        allocate_epsilon, first_order_graph, second_order_chaos_terms,
        zeroth_chaos_constant_graph,
    };
    use crate::wick::Pairing;

    #[test]
    fn allocated_first_order_passes() {
        let opts = CheckOptions::default();
        let g = allocate_epsilon(&first_order_graph(1, 0).unwrap()).unwrap();
        assert!(check_assumption_bruteforce(&g, &opts).unwrap().pass);
        assert!(check_assumption_reduced(&g, &opts).unwrap().pass);
    }

    #[test]
    fn twenty_five_equals_twenty_five() {
        // the un-mass-renormalised C_{2,2,pairwise} zeroth-chaos graph fails
        // the cardinality-3 condition at H̄ = H_0 with both sides 25
        let opts = CheckOptions::default();
        let g = zeroth_chaos_constant_graph(2, 2, &Pairing::pairwise(2)).unwrap();
        let g = allocate_epsilon(&g).unwrap();
        let report = check_assumption_bruteforce(&g, &opts).unwrap();
        assert!(!report.pass);
        let witness = report
            .violations
            .iter()
            .find(|v| v.condition == 2 && v.subset.len() == g.vertex_count() - 1)
            .expect("no H_0 violation");
        assert_eq!(witness.lhs, ExactValue::from_int(25));
        assert_eq!(witness.rhs, ExactValue::from_int(25));
        // the reduced checker sees the same failure
        let reduced = check_assumption_reduced(&g, &opts).unwrap();
        assert!(!reduced.pass);
    }

    #[test]
    fn five_unreduced_legs_fail() {
        // first-order style graph with 5 degree-3 legs violates the
        // cardinality-3 condition (criticality of the quintic term)
        let opts = CheckOptions::default();
        let g = first_order_graph(2, 0).unwrap(); // unallocated: all legs at 3
        let report = check_assumption_bruteforce(&g, &opts).unwrap();
        assert!(!report.pass);
        assert!(report.violations.iter().any(|v| v.condition == 2));
        let reduced = check_assumption_reduced(&g, &opts).unwrap();
        assert!(!reduced.pass);
    }

    #[test]
    fn higher_chaos_2_2_passes_with_default_bump() {
        let opts = CheckOptions::default();
        for term in second_order_chaos_terms(2, 2).unwrap() {
            let g = allocate_epsilon(&term.graph).unwrap();
            let brute = check_assumption_bruteforce(&g, &opts).unwrap();
            let reduced = check_assumption_reduced(&g, &opts).unwrap();
            assert_eq!(brute.pass, reduced.pass, "p={} q={} n={}", term.p, term.q, term.n);
            assert_eq!(brute.pass, term.chaos_order() >= 2);
        }
    }

    #[test]
    fn bump_off_makes_top_chaos_marginal() {
        let opts = CheckOptions { bump: BumpMode::Off, ..Default::default() };
        let top = second_order_chaos_terms(2, 2)
            .unwrap()
            .into_iter()
            .find(|t| t.n == 0)
            .unwrap();
        let g = allocate_epsilon(&top.graph).unwrap();
        let report = check_assumption_bruteforce(&g, &opts).unwrap();
        assert!(!report.pass);
        assert!(report
            .violations
            .iter()
            .all(|v| v.condition == 4 && v.lhs == v.rhs));
    }

    #[test]
    fn no_cross_priority_warnings_on_generated_graphs() {
        let opts = CheckOptions::default();
        for term in second_order_chaos_terms(2, 3).unwrap() {
            let g = allocate_epsilon(&term.graph).unwrap();
            let r = check_assumption_bruteforce(&g, &opts).unwrap();
            assert!(!r.cross_priority_warning);
        }
    }
}
