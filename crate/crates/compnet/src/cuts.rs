//! Minimum cuts: the cheapest resources whose removal zeroes the flow.
//!
//! Three cut families exist in a computing network: *communication* cuts
//! remove links only, *computation* cuts remove processing capacity only,
//! and *joint* cuts may mix both. The exact solvers phrase cut-ness with
//! node potentials on the two-layer expansion: a potential drop of one from
//! the source to the (lower-layer) destination must be paid for by selected
//! resources along every path. Selection variables are binary; potentials
//! stay continuous in [0, 1], which is enough because any feasible
//! assignment can be clamped to [0, 1] without breaking a constraint.
//!
//! Exact optima come from branch and bound. Two fast alternatives avoid it:
//! the minimum computation cut is just a reachability intersection (linear
//! time, exact), and a classical min cut on the layered graph gives
//! communication and joint cuts at most twice the optimum — each link's
//! capacity is charged per layer copy there, hence the factor two.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{classical_min_cut, CostedDigraph};
use crate::lp::{
    lp_ident, LinearProgram, MilpOptions, Rel, Sense, SolveStatus, SolverLimits, VarId,
};
use crate::model::{
    ComputingNetwork, LayeredEdgeKind, LayeredGraph, LinkId, NodeId,
};

/// Which resources a cut may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutMode {
    Communication,
    Computation,
    Joint,
}

impl std::fmt::Display for CutMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CutMode::Communication => "communication",
            CutMode::Computation => "computation",
            CutMode::Joint => "joint",
        })
    }
}

/// A set of links and/or computation nodes that disconnects the
/// source-destination pair, with its total capacity.
#[derive(Debug, Clone, Serialize)]
pub struct CutSolution {
    pub mode: CutMode,
    /// Cut links, sorted by endpoint ids.
    pub links: Vec<LinkId>,
    /// Cut computation nodes, sorted by id.
    pub nodes: Vec<NodeId>,
    /// Sum of the capacities of the listed resources.
    pub value: f64,
    /// Whether the solver proved optimality (false when a node or time
    /// limit stopped the search at an incumbent).
    pub optimal: bool,
    /// Whether the cut was re-checked to disconnect the pair.
    pub verified: bool,
    /// Potential certificate from the exact solvers, keyed by layered node
    /// label (lower-layer copies carry a prime suffix).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub potentials: Option<BTreeMap<String, f64>>,
}

impl CutSolution {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("cut serialization cannot fail")
    }
}

/// True iff removing the cut's resources leaves no computation path from
/// `source` to `dest`.
pub fn is_cut(
    net: &ComputingNetwork,
    source: &NodeId,
    dest: &NodeId,
    cut: &CutSolution,
) -> Result<bool> {
    let layered = net.build_layered(source, dest)?;
    let removed = layered.map_cut_to_layered(net, &cut.links, &cut.nodes)?;
    Ok(!layered.connects_with_removed(&removed))
}

/// Minimum computation cut by reachability: the computation nodes lying on
/// some source-to-destination route, i.e. reachable from the source and
/// co-reachable to the destination. Exact, and linear in the network size:
/// any smaller node set leaves some such node usable, and flow can be
/// processed there.
pub fn min_computation_cut(
    net: &ComputingNetwork,
    source: &NodeId,
    dest: &NodeId,
) -> Result<CutSolution> {
    if net.node(source).is_none() {
        return Err(Error::UnknownNode(source.to_string()));
    }
    if net.node(dest).is_none() {
        return Err(Error::UnknownNode(dest.to_string()));
    }
    if source == dest {
        return Err(Error::SourceEqualsDest(source.to_string()));
    }
    let n = net.nodes().len();
    let mut forward: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut backward: Vec<Vec<usize>> = vec![Vec::new(); n];
    for link in net.links() {
        if link.capacity > 0.0 {
            let u = net.node_position(&link.from).unwrap();
            let v = net.node_position(&link.to).unwrap();
            forward[u].push(v);
            backward[v].push(u);
        }
    }
    let from_s = reach(&forward, net.node_position(source).unwrap());
    let to_t = reach(&backward, net.node_position(dest).unwrap());
    let nodes: Vec<NodeId> = net
        .nodes()
        .iter()
        .enumerate()
        .filter(|&(i, node)| node.is_computation() && from_s[i] && to_t[i])
        .map(|(_, node)| node.id.clone())
        .collect();
    let value = nodes
        .iter()
        .map(|id| net.node(id).unwrap().processing_capacity)
        .sum();
    let cut = CutSolution {
        mode: CutMode::Computation,
        links: Vec::new(),
        nodes,
        value,
        optimal: true,
        verified: false,
        potentials: None,
    };
    finish(net, source, dest, cut)
}

fn reach(adj: &[Vec<usize>], start: usize) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Exact minimum communication cut (links only).
pub fn min_comm_cut_exact(
    net: &ComputingNetwork,
    source: &NodeId,
    dest: &NodeId,
    limits: &SolverLimits,
) -> Result<CutSolution> {
    exact_cut(net, source, dest, CutMode::Communication, limits)
}

/// Exact minimum computation cut (nodes only).
pub fn min_comp_cut_exact(
    net: &ComputingNetwork,
    source: &NodeId,
    dest: &NodeId,
    limits: &SolverLimits,
) -> Result<CutSolution> {
    exact_cut(net, source, dest, CutMode::Computation, limits)
}

/// Exact minimum joint cut (links and nodes together).
pub fn min_joint_cut_exact(
    net: &ComputingNetwork,
    source: &NodeId,
    dest: &NodeId,
    limits: &SolverLimits,
) -> Result<CutSolution> {
    exact_cut(net, source, dest, CutMode::Joint, limits)
}

/// The cut program for `mode` in LP text format, for external inspection.
pub fn cut_lp_text(
    net: &ComputingNetwork,
    source: &NodeId,
    dest: &NodeId,
    mode: CutMode,
) -> Result<String> {
    let layered = net.build_layered(source, dest)?;
    Ok(build_cut_milp(net, &layered, mode)?.lp.to_lp_text())
}

pub(crate) struct CutMilp {
    pub lp: LinearProgram,
    /// Selection variable per link (when the mode allows links).
    pub link_vars: Vec<Option<VarId>>,
    /// Selection variable per computation node (when the mode allows nodes).
    pub node_vars: Vec<Option<VarId>>,
    /// Potential variable per layered node.
    pub p_vars: Vec<VarId>,
}

pub(crate) fn build_cut_milp(
    net: &ComputingNetwork,
    layered: &LayeredGraph,
    mode: CutMode,
) -> Result<CutMilp> {
    let mut lp = LinearProgram::new(Sense::Minimize);
    let use_links = mode != CutMode::Computation;
    let use_nodes = mode != CutMode::Communication;

    let mut link_vars: Vec<Option<VarId>> = vec![None; net.links().len()];
    if use_links {
        for (i, link) in net.links().iter().enumerate() {
            link_vars[i] = Some(lp.add_integer_var(
                lp_ident(&["y", link.from.as_str(), link.to.as_str()]),
                (0.0, 1.0),
                link.capacity,
            )?);
        }
    }
    let mut node_vars: Vec<Option<VarId>> = vec![None; net.nodes().len()];
    if use_nodes {
        for (i, node) in net.nodes().iter().enumerate() {
            if node.is_computation() {
                node_vars[i] = Some(lp.add_integer_var(
                    lp_ident(&["y", node.id.as_str()]),
                    (0.0, 1.0),
                    node.processing_capacity,
                )?);
            }
        }
    }
    let p_vars: Vec<VarId> = (0..layered.node_count())
        .map(|v| lp.add_var(lp_ident(&["p", &layered.label(v)]), (0.0, 1.0), 0.0))
        .collect::<Result<_>>()?;

    // Every layered edge (except the return arc) must not drop potential
    // unless its resource is selected: p_head - p_tail + y >= 0.
    for edge in &layered.edges {
        let (selection, name) = match edge.kind {
            LayeredEdgeKind::UpperLink(i) => {
                let l = &net.links()[i];
                (link_vars[i], lp_ident(&["upper", l.from.as_str(), l.to.as_str()]))
            }
            LayeredEdgeKind::LowerLink(i) => {
                let l = &net.links()[i];
                (link_vars[i], lp_ident(&["lower", l.from.as_str(), l.to.as_str()]))
            }
            LayeredEdgeKind::Process(i) => {
                (node_vars[i], lp_ident(&["cross", net.nodes()[i].id.as_str()]))
            }
            LayeredEdgeKind::Return => continue,
        };
        let mut terms = vec![(p_vars[edge.head], 1.0), (p_vars[edge.tail], -1.0)];
        if let Some(y) = selection {
            terms.push((y, 1.0));
        }
        lp.add_row(name, Rel::Ge, 0.0, &terms)?;
    }
    // The separation row: a full unit of potential drops from the source to
    // the lower-layer destination.
    lp.add_row(
        "sep",
        Rel::Ge,
        1.0,
        &[(p_vars[layered.source], 1.0), (p_vars[layered.sink], -1.0)],
    )?;
    Ok(CutMilp {
        lp,
        link_vars,
        node_vars,
        p_vars,
    })
}

/// A feasible MILP point from a known cut: selected resources at one, and
/// potentials at one exactly on the layered nodes still reachable from the
/// source after the removal.
fn cut_hint(
    net: &ComputingNetwork,
    layered: &LayeredGraph,
    milp: &CutMilp,
    links: &[LinkId],
    nodes: &[NodeId],
) -> Result<Vec<f64>> {
    let mut hint = vec![0.0; milp.lp.num_vars()];
    for link in links {
        let i = net
            .link_position(link)
            .ok_or_else(|| Error::UnknownLink(link.to_string()))?;
        if let Some(y) = milp.link_vars[i] {
            hint[y.index()] = 1.0;
        }
    }
    for node in nodes {
        let i = net
            .node_position(node)
            .ok_or_else(|| Error::UnknownNode(node.to_string()))?;
        if let Some(y) = milp.node_vars[i] {
            hint[y.index()] = 1.0;
        }
    }
    let removed = layered.map_cut_to_layered(net, links, nodes)?;
    let reachable = layered.reachable_with_removed(&removed);
    for (v, &p) in milp.p_vars.iter().enumerate() {
        hint[p.index()] = if reachable[v] { 1.0 } else { 0.0 };
    }
    Ok(hint)
}

fn exact_cut(
    net: &ComputingNetwork,
    source: &NodeId,
    dest: &NodeId,
    mode: CutMode,
    limits: &SolverLimits,
) -> Result<CutSolution> {
    let layered = net.build_layered(source, dest)?;
    if !layered.connects_with_removed(&[]) {
        // Nothing to cut: no computation path exists in the first place.
        let cut = CutSolution {
            mode,
            links: Vec::new(),
            nodes: Vec::new(),
            value: 0.0,
            optimal: true,
            verified: false,
            potentials: None,
        };
        return finish(net, source, dest, cut);
    }
    let milp = build_cut_milp(net, &layered, mode)?;

    // Seed branch and bound with the matching fast heuristic's cut.
    let warm = match mode {
        CutMode::Communication => approx_comm_cut(net, source, dest)?,
        CutMode::Joint => approx_joint_cut(net, source, dest)?,
        CutMode::Computation => min_computation_cut(net, source, dest)?,
    };
    let options = MilpOptions {
        incumbent_hint: Some(cut_hint(net, &layered, &milp, &warm.links, &warm.nodes)?),
        ..Default::default()
    };
    let sol = milp.lp.solve_milp(limits, &options)?;
    let optimal = match sol.status {
        SolveStatus::Optimal => true,
        SolveStatus::Limit if !sol.values.is_empty() => false,
        status => {
            return Err(Error::Solver(format!(
                "cut search ended with status {status:?} and no usable cut"
            )))
        }
    };

    let mut links = Vec::new();
    for (i, var) in milp.link_vars.iter().enumerate() {
        if let Some(y) = var {
            if sol.value(*y) > 0.5 {
                links.push(net.links()[i].id());
            }
        }
    }
    let mut nodes = Vec::new();
    for (i, var) in milp.node_vars.iter().enumerate() {
        if let Some(y) = var {
            if sol.value(*y) > 0.5 {
                nodes.push(net.nodes()[i].id.clone());
            }
        }
    }
    links.sort();
    nodes.sort();
    let value = cut_capacity(net, &links, &nodes)?;
    let potentials = milp
        .p_vars
        .iter()
        .enumerate()
        .map(|(v, &p)| (layered.label(v), sol.value(p)))
        .collect();
    let cut = CutSolution {
        mode,
        links,
        nodes,
        value,
        optimal,
        verified: false,
        potentials: Some(potentials),
    };
    finish(net, source, dest, cut)
}

fn cut_capacity(net: &ComputingNetwork, links: &[LinkId], nodes: &[NodeId]) -> Result<f64> {
    let mut value = 0.0;
    for id in links {
        value += net
            .link(&id.from, &id.to)
            .ok_or_else(|| Error::UnknownLink(id.to_string()))?
            .capacity;
    }
    for id in nodes {
        value += net
            .node(id)
            .ok_or_else(|| Error::UnknownNode(id.to_string()))?
            .processing_capacity;
    }
    Ok(value)
}

fn finish(
    net: &ComputingNetwork,
    source: &NodeId,
    dest: &NodeId,
    mut cut: CutSolution,
) -> Result<CutSolution> {
    cut.verified = is_cut(net, source, dest, &cut)?;
    Ok(cut)
}

/// Communication cut at most twice the optimum, via one classical min cut:
/// cross edges get a prohibitive cost so only links are selected, each layer
/// copy of a link carries the link's full capacity, and the resulting edge
/// cut is projected back to links. A link cut in both layers is paid twice
/// by the classical cut but only once in the projection — that gap is the
/// entire approximation loss, hence the factor two.
pub fn approx_comm_cut(
    net: &ComputingNetwork,
    source: &NodeId,
    dest: &NodeId,
) -> Result<CutSolution> {
    approx_cut(net, source, dest, CutMode::Communication)
}

/// Joint cut at most twice the optimum: as [`approx_comm_cut`], but cross
/// edges cost their node's processing capacity, so the classical cut can
/// choose processing resources too.
pub fn approx_joint_cut(
    net: &ComputingNetwork,
    source: &NodeId,
    dest: &NodeId,
) -> Result<CutSolution> {
    approx_cut(net, source, dest, CutMode::Joint)
}

fn approx_cut(
    net: &ComputingNetwork,
    source: &NodeId,
    dest: &NodeId,
    mode: CutMode,
) -> Result<CutSolution> {
    let layered = net.build_layered(source, dest)?;
    let prohibitive = net.total_capacity() + 1.0;
    let mut graph = CostedDigraph::new(layered.node_count());
    // Edge index in the digraph matches the layered edge index (the return
    // arc is skipped by giving it no edge — see below).
    let mut kind_of: Vec<LayeredEdgeKind> = Vec::new();
    for edge in &layered.edges {
        let cost = match edge.kind {
            LayeredEdgeKind::UpperLink(_) | LayeredEdgeKind::LowerLink(_) => edge.capacity,
            LayeredEdgeKind::Process(i) => match mode {
                CutMode::Joint => net.nodes()[i].processing_capacity,
                _ => prohibitive,
            },
            LayeredEdgeKind::Return => continue,
        };
        graph.add_edge(edge.tail, edge.head, cost);
        kind_of.push(edge.kind);
    }
    let classical = classical_min_cut(&graph, layered.source, layered.sink);
    let mut links = Vec::new();
    let mut nodes = Vec::new();
    for &ei in &classical.cut_edges {
        match kind_of[ei] {
            LayeredEdgeKind::UpperLink(i) | LayeredEdgeKind::LowerLink(i) => {
                let id = net.links()[i].id();
                if !links.contains(&id) {
                    links.push(id);
                }
            }
            LayeredEdgeKind::Process(i) => nodes.push(net.nodes()[i].id.clone()),
            LayeredEdgeKind::Return => unreachable!("return arc never enters the digraph"),
        }
    }
    links.sort();
    nodes.sort();
    let value = cut_capacity(net, &links, &nodes)?;
    let cut = CutSolution {
        mode,
        links,
        nodes,
        value,
        optimal: true,
        verified: false,
        potentials: None,
    };
    finish(net, source, dest, cut)
}
