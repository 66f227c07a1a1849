//! Labelled chaos graphs and the moment-bound power counting.
//!
//! A graph carries vertices with roles (the origin, the distinguished
//! vertices `v⋆` and `v★`, internal vertices, external and contracted noise),
//! kernel edges labelled with a degree `a_e` and a renormalisation label
//! `r_e`, and cumulant hyper-edges of degree `5n/2`. The subset conditions of
//! the moment-bound assumption are verified exhaustively or through the
//! reduced worst-case families; collapse/merge/absorb rewrites drive the
//! divergence classification of the renormalisation constants.

mod allocate;
mod build;
mod check;
mod rewrite;

use serde::Serialize;

use crate::exact::ExactValue;
use crate::wick::Pairing;

pub use allocate::{allocate_epsilon, graph_homogeneity};
pub use build::{
    first_order_graph, second_order_chaos_terms, zeroth_chaos_constant_graph, ChaosTerm,
};
pub use check::{
    check_assumption_bruteforce, check_assumption_reduced, BumpMode, CheckOptions, CheckReport,
    Violation,
};
pub use rewrite::{
    absorb_epsilon, classify_divergence, collapse_cumulant, merge_kernels, ChaosOneVariant,
    Divergence,
};

pub type VertexId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Role {
    /// The origin `0`; carries the test-function link, counts in no vertex
    /// class.
    Root,
    /// `v⋆`: the distinguished vertex joined to the origin by the test
    /// function. Internal for counting purposes but excluded from
    /// `H_in ∖ H_⋆`.
    VStarLower,
    /// `v★`: the source of the barred kernel in second-order graphs.
    VStarUpper,
    /// Plain internal (integrated) vertex.
    Internal,
    /// Noise vertex that has not been contracted (external).
    ExternalNoise,
    /// Noise vertex absorbed into a cumulant hyper-edge; counts as internal.
    ContractedNoise,
}

impl Role {
    /// Membership in `H_in` (internal vertices; the origin is excluded).
    pub fn is_internal(self) -> bool {
        matches!(
            self,
            Role::VStarLower | Role::VStarUpper | Role::Internal | Role::ContractedNoise
        )
    }

    pub fn is_external(self) -> bool {
        self == Role::ExternalNoise
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EdgeKind {
    /// Plain kernel arrow, `r_e = 0`.
    Kernel,
    /// Barred arrow `K(z'-z) - K(-z)`; always `(a_e, r_e) = (3, 1)`.
    BarredKernel,
    /// Renormalised distribution (`r_e = -1`).
    WavedKernel,
    /// Test-function link; never enters any power-counting sum.
    TestFunction,
}

/// Directed kernel edge from `tail` (`e_-`) to `head` (`e_+`). Orientation
/// matters only when `r_e > 0`.
#[derive(Clone, Debug, Serialize)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
    pub degree: ExactValue,
    pub renorm: i32,
    /// Total ε power absorbed into this edge so far.
    pub eps_absorbed: ExactValue,
    /// Kernel argument is smoothed at scale ε (true for noise-adjacent
    /// kernels and preserved by the rewrites); only such edges can absorb ε.
    pub smoothed: bool,
    pub kind: EdgeKind,
}

impl Edge {
    pub(crate) fn kernel(tail: VertexId, head: VertexId, degree: i64, smoothed: bool) -> Edge {
        Edge {
            tail,
            head,
            degree: ExactValue::from_int(degree),
            renorm: 0,
            eps_absorbed: ExactValue::zero(),
            smoothed,
            kind: EdgeKind::Kernel,
        }
    }

    pub(crate) fn barred(tail: VertexId, head: VertexId) -> Edge {
        Edge {
            tail,
            head,
            degree: ExactValue::from_int(3),
            renorm: 1,
            eps_absorbed: ExactValue::zero(),
            smoothed: false,
            kind: EdgeKind::BarredKernel,
        }
    }

    pub(crate) fn test_function(tail: VertexId, head: VertexId) -> Edge {
        Edge {
            tail,
            head,
            degree: ExactValue::zero(),
            renorm: 0,
            eps_absorbed: ExactValue::zero(),
            smoothed: false,
            kind: EdgeKind::TestFunction,
        }
    }

    /// Counts in the power-counting sums (everything except the test link).
    pub fn counts(&self) -> bool {
        self.kind != EdgeKind::TestFunction
    }
}

/// Cumulant hyper-edge over `n ≥ 2` contracted noise vertices, degree `5n/2`,
/// `r_e = 0`.
#[derive(Clone, Debug, Serialize)]
pub struct HyperEdge {
    pub vertices: Vec<VertexId>,
}

impl HyperEdge {
    pub fn degree(&self) -> ExactValue {
        ExactValue::from_ratio(5 * self.vertices.len() as i64, 2)
    }
}

/// Where a graph came from; drives allocation and the reduced checker.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Provenance {
    /// `E^{k-1} Ψ^{2k+1-n}`: one internal vertex with `2k+1-n` noise legs.
    FirstOrder { k: u32, n: u32 },
    /// A chaos component of `E^a(Ψ^k I(E^b Ψ^l))`.
    SecondOrder { k: u32, l: u32, p: u32, q: u32, n: u32, pairing: Pairing },
    /// The deterministic constant graph for `C_{k,l,π}`.
    Constant { k: u32, l: u32, pairing: Pairing },
    /// Hand-built or rewrite-produced.
    Synthetic(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct LabelledGraph {
    pub roles: Vec<Role>,
    pub edges: Vec<Edge>,
    pub hyper_edges: Vec<HyperEdge>,
    /// ε exponent multiplying the graph that has not been attached to edges.
    pub eps_prefactor: ExactValue,
    pub provenance: Provenance,
    pub allocated: bool,
}

impl LabelledGraph {
    pub fn root(&self) -> VertexId {
        self.roles.iter().position(|r| *r == Role::Root).expect("graph has no root vertex")
    }

    pub fn v_star_lower(&self) -> Option<VertexId> {
        self.roles.iter().position(|r| *r == Role::VStarLower)
    }

    pub fn v_star_upper(&self) -> Option<VertexId> {
        self.roles.iter().position(|r| *r == Role::VStarUpper)
    }

    pub fn vertex_count(&self) -> usize {
        self.roles.len()
    }

    /// Kernel edges incident to a noise vertex (external or contracted).
    pub fn noise_legs(&self) -> impl Iterator<Item = (usize, &Edge)> {
        self.edges.iter().enumerate().filter(|(_, e)| {
            e.counts()
                && (matches!(self.roles[e.tail], Role::ExternalNoise | Role::ContractedNoise)
                    || matches!(self.roles[e.head], Role::ExternalNoise | Role::ContractedNoise))
        })
    }

    /// GraphViz DOT export: vertex roles as shapes, hyper-edges as filled
    /// gray clusters.
    pub fn to_dot(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        writeln!(s, "digraph chaos {{").unwrap();
        writeln!(s, "  rankdir=BT;").unwrap();
        for (ci, h) in self.hyper_edges.iter().enumerate() {
            writeln!(s, "  subgraph cluster_{} {{", ci).unwrap();
            writeln!(s, "    style=filled; color=lightgray; label=\"c{}\";", h.vertices.len())
                .unwrap();
            for &v in &h.vertices {
                writeln!(s, "    v{};", v).unwrap();
            }
            writeln!(s, "  }}").unwrap();
        }
        for (i, r) in self.roles.iter().enumerate() {
            let (shape, label) = match r {
                Role::Root => ("doublecircle", "0".to_string()),
                Role::VStarLower => ("circle", "v_*".to_string()),
                Role::VStarUpper => ("circle", "v^*".to_string()),
                Role::Internal => ("point", String::new()),
                Role::ExternalNoise => ("triangle", format!("x{}", i)),
                Role::ContractedNoise => ("point", String::new()),
            };
            writeln!(s, "  v{} [shape={}, label=\"{}\"];", i, shape, label).unwrap();
        }
        for e in &self.edges {
            let style = match e.kind {
                EdgeKind::Kernel => "solid",
                EdgeKind::BarredKernel => "dashed",
                EdgeKind::WavedKernel => "dotted",
                EdgeKind::TestFunction => "bold",
            };
            let label = if e.counts() {
                format!("({},{})", e.degree, e.renorm)
            } else {
                "phi".to_string()
            };
            writeln!(s, "  v{} -> v{} [style={}, label=\"{}\"];", e.tail, e.head, style, label)
                .unwrap();
        }
        writeln!(s, "}}").unwrap();
        s
    }
}
