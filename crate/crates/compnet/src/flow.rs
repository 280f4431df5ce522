//! Maximum processed flow.
//!
//! The maximum throughput between a source and a destination is the optimum
//! of a linear program over the two-layer expansion: one flow variable per
//! layered edge, conservation at every layered node (the return arc closes
//! the circulation), a capacity row per computation node, and a *coupled*
//! capacity row per link: the upper-layer and lower-layer copies of a link
//! share its capacity, because unprocessed and processed traffic ride the
//! same physical link. The row duals of the capacity constraints are shadow
//! prices: the marginal throughput gained per unit of extra capacity. They
//! drive the greedy interdiction heuristics.
//!
//! Also here: a flow decomposition into computation paths, a classical
//! (single-layer) max-flow/min-cut used by the approximation algorithms, and
//! a path-enumeration solver used as an independent cross-check in tests.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lp::{lp_ident, LinearProgram, LpSolution, Rel, RowId, Sense, SolverLimits, VarId};
use crate::model::{
    ComputingNetwork, LayeredEdgeKind, LayeredGraph, LinkId, NodeId, TOL,
};

/// Support threshold when walking flows; tighter than [`TOL`] so real flow
/// is not dropped mid-decomposition.
const SUPPORT_TOL: f64 = 1e-9;

/// The flow LP over a layered graph, with handles to recover per-resource
/// duals afterwards.
pub(crate) struct FlowLp {
    pub lp: LinearProgram,
    /// One variable per layered edge, in edge order.
    pub edge_vars: Vec<VarId>,
    /// Coupled capacity row per network link, in link order.
    pub link_rows: Vec<RowId>,
    /// Capacity row per network node (computation nodes only).
    pub node_rows: Vec<Option<RowId>>,
}

pub(crate) fn build_flow_lp(net: &ComputingNetwork, layered: &LayeredGraph) -> Result<FlowLp> {
    let link_caps: Vec<f64> = net.links().iter().map(|l| l.capacity).collect();
    let node_caps: Vec<f64> = net.nodes().iter().map(|n| n.processing_capacity).collect();
    build_flow_lp_with_caps(net, layered, &link_caps, &node_caps)
}

/// Same program shape as [`build_flow_lp`], but with the capacity rows'
/// right-hand sides taken from `link_caps`/`node_caps` (indexed by link and
/// node position) instead of the network's own capacities. The layered graph
/// still determines which edges exist.
pub(crate) fn build_flow_lp_with_caps(
    net: &ComputingNetwork,
    layered: &LayeredGraph,
    link_caps: &[f64],
    node_caps: &[f64],
) -> Result<FlowLp> {
    let mut lp = LinearProgram::new(Sense::Maximize);
    let mut edge_vars = Vec::with_capacity(layered.edges.len());
    for (ei, edge) in layered.edges.iter().enumerate() {
        let name = match edge.kind {
            LayeredEdgeKind::UpperLink(i) => {
                let l = &net.links()[i];
                lp_ident(&["fu", l.from.as_str(), l.to.as_str()])
            }
            LayeredEdgeKind::LowerLink(i) => {
                let l = &net.links()[i];
                lp_ident(&["fl", l.from.as_str(), l.to.as_str()])
            }
            LayeredEdgeKind::Process(i) => lp_ident(&["fp", net.nodes()[i].id.as_str()]),
            LayeredEdgeKind::Return => "fret".to_string(),
        };
        let objective = if ei == layered.return_edge { 1.0 } else { 0.0 };
        edge_vars.push(lp.add_var(name, (0.0, f64::INFINITY), objective)?);
    }

    // Conservation at every layered node; the return arc is part of these
    // rows, so plain flow-in = flow-out holds at the source and sink too.
    let mut terms_at: Vec<Vec<(VarId, f64)>> = vec![Vec::new(); layered.node_count()];
    for (ei, edge) in layered.edges.iter().enumerate() {
        terms_at[edge.head].push((edge_vars[ei], 1.0));
        terms_at[edge.tail].push((edge_vars[ei], -1.0));
    }
    for (v, terms) in terms_at.iter().enumerate() {
        lp.add_row(
            lp_ident(&["node", &layered.label(v)]),
            Rel::Eq,
            0.0,
            terms,
        )?;
    }

    // Coupled link capacity: both layer copies share the physical capacity.
    let mut link_edges: Vec<Vec<VarId>> = vec![Vec::new(); net.links().len()];
    let mut node_edges: Vec<Option<VarId>> = vec![None; net.nodes().len()];
    for (ei, edge) in layered.edges.iter().enumerate() {
        match edge.kind {
            LayeredEdgeKind::UpperLink(i) | LayeredEdgeKind::LowerLink(i) => {
                link_edges[i].push(edge_vars[ei]);
            }
            LayeredEdgeKind::Process(i) => node_edges[i] = Some(edge_vars[ei]),
            LayeredEdgeKind::Return => {}
        }
    }
    let mut link_rows = Vec::with_capacity(net.links().len());
    for (i, link) in net.links().iter().enumerate() {
        let terms: Vec<(VarId, f64)> = link_edges[i].iter().map(|&v| (v, 1.0)).collect();
        link_rows.push(lp.add_row(
            lp_ident(&["cap", link.from.as_str(), link.to.as_str()]),
            Rel::Le,
            link_caps[i],
            &terms,
        )?);
    }
    let mut node_rows = vec![None; net.nodes().len()];
    for (i, node) in net.nodes().iter().enumerate() {
        if let Some(var) = node_edges[i] {
            node_rows[i] = Some(lp.add_row(
                lp_ident(&["cap", node.id.as_str()]),
                Rel::Le,
                node_caps[i],
                &[(var, 1.0)],
            )?);
        }
    }
    Ok(FlowLp {
        lp,
        edge_vars,
        link_rows,
        node_rows,
    })
}

/// An optimal flow, with per-edge values on the layered graph and shadow
/// prices per resource.
#[derive(Debug, Clone)]
pub struct FlowSolution {
    /// Maximum processed throughput from source to destination.
    pub value: f64,
    /// The expansion the program was solved on.
    pub layered: LayeredGraph,
    /// Flow per layered edge, in `layered.edges` order.
    pub edge_flows: Vec<f64>,
    /// Shadow price of each link's capacity.
    pub link_duals: BTreeMap<LinkId, f64>,
    /// Shadow price of each computation node's processing capacity.
    pub node_duals: BTreeMap<NodeId, f64>,
}

impl FlowSolution {
    pub fn link_dual(&self, link: &LinkId) -> f64 {
        self.link_duals.get(link).copied().unwrap_or(0.0)
    }

    pub fn node_dual(&self, node: &NodeId) -> f64 {
        self.node_duals.get(node).copied().unwrap_or(0.0)
    }

    /// Decompose the flow into computation paths (plus any residual cycles,
    /// which carry no source-to-destination value).
    pub fn decompose(&self) -> Result<FlowDecomposition> {
        decompose_flow(&self.layered, &self.edge_flows)
    }
}

/// Maximum processed flow from `source` to `dest`.
pub fn max_flow(
    net: &ComputingNetwork,
    source: &NodeId,
    dest: &NodeId,
    limits: &SolverLimits,
) -> Result<FlowSolution> {
    let layered = net.build_layered(source, dest)?;
    let built = build_flow_lp(net, &layered)?;
    let sol = built.lp.solve_lp(limits)?;
    if !sol.is_optimal() {
        return Err(Error::Solver(format!(
            "flow program ended with status {:?}",
            sol.status
        )));
    }
    Ok(extract_solution(net, layered, &built, &sol))
}

/// The flow LP in LP text format, for external inspection.
pub fn flow_lp_text(net: &ComputingNetwork, source: &NodeId, dest: &NodeId) -> Result<String> {
    let layered = net.build_layered(source, dest)?;
    Ok(build_flow_lp(net, &layered)?.lp.to_lp_text())
}

fn extract_solution(
    net: &ComputingNetwork,
    layered: LayeredGraph,
    built: &FlowLp,
    sol: &LpSolution,
) -> FlowSolution {
    let edge_flows: Vec<f64> = built.edge_vars.iter().map(|&v| sol.value(v)).collect();
    let link_duals = net
        .links()
        .iter()
        .zip(&built.link_rows)
        .map(|(link, &row)| (link.id(), sol.dual(row)))
        .collect();
    let node_duals = net
        .nodes()
        .iter()
        .zip(&built.node_rows)
        .filter_map(|(node, row)| row.map(|r| (node.id.clone(), sol.dual(r))))
        .collect();
    FlowSolution {
        value: sol.objective,
        layered,
        edge_flows,
        link_duals,
        node_duals,
    }
}

/// One computation path: the node sequence from source to destination, the
/// node where processing happens, and the amount routed along it.
#[derive(Debug, Clone)]
pub struct FlowPath {
    /// Network-level node sequence; nodes may repeat when the path rides a
    /// link before and after processing.
    pub nodes: Vec<NodeId>,
    pub processed_at: NodeId,
    pub amount: f64,
}

/// A flow split into computation paths and residual circulation cycles.
#[derive(Debug, Clone)]
pub struct FlowDecomposition {
    pub paths: Vec<FlowPath>,
    /// Cycles not through the destination: they carry no value and are
    /// usually absent, but an optimal basis may include them.
    pub cycles: Vec<(Vec<NodeId>, f64)>,
}

impl FlowDecomposition {
    pub fn total(&self) -> f64 {
        self.paths.iter().map(|p| p.amount).sum()
    }
}

/// Peel the circulation into elementary cycles; cycles through the return
/// arc are source-to-destination computation paths.
fn decompose_flow(layered: &LayeredGraph, edge_flows: &[f64]) -> Result<FlowDecomposition> {
    let mut flows = edge_flows.to_vec();
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); layered.node_count()];
    for (ei, edge) in layered.edges.iter().enumerate() {
        out_edges[edge.tail].push(ei);
    }
    let mut paths = Vec::new();
    let mut cycles = Vec::new();

    // Paths first: each unit on the return arc closes a source-to-sink walk.
    while flows[layered.return_edge] > SUPPORT_TOL {
        let walk = walk_to(
            layered,
            &mut flows,
            &out_edges,
            layered.source,
            layered.sink,
            &mut cycles,
        )?;
        let mut bottleneck = flows[layered.return_edge];
        for &ei in &walk {
            bottleneck = bottleneck.min(flows[ei]);
        }
        for &ei in &walk {
            flows[ei] -= bottleneck;
        }
        flows[layered.return_edge] -= bottleneck;
        if bottleneck > TOL {
            paths.push(describe_path(layered, &walk, bottleneck));
        }
    }

    // Whatever remains is circulation on cycles avoiding the return arc.
    loop {
        let Some(start) = flows
            .iter()
            .enumerate()
            .position(|(ei, &f)| ei != layered.return_edge && f > SUPPORT_TOL)
        else {
            break;
        };
        let tail = layered.edges[start].tail;
        let walk = walk_to(
            layered,
            &mut flows,
            &out_edges,
            layered.edges[start].head,
            tail,
            &mut cycles,
        )?;
        let mut bottleneck = flows[start];
        for &ei in &walk {
            bottleneck = bottleneck.min(flows[ei]);
        }
        flows[start] -= bottleneck;
        for &ei in &walk {
            flows[ei] -= bottleneck;
        }
        if bottleneck > TOL {
            let mut nodes = vec![layered.describe(tail).0.clone()];
            nodes.push(layered.describe(layered.edges[start].head).0.clone());
            for &ei in &walk {
                nodes.push(layered.describe(layered.edges[ei].head).0.clone());
            }
            cycles.push((nodes, bottleneck));
        }
    }
    Ok(FlowDecomposition { paths, cycles })
}

/// Walk the flow support from `from` to `to`; any loop met along the way is
/// peeled off as a cycle on the spot (zeroing its bottleneck edge, so the
/// walk cannot retrace it) and dropped from the walk. Conservation
/// guarantees the walk cannot get stuck anywhere else.
fn walk_to(
    layered: &LayeredGraph,
    flows: &mut [f64],
    out_edges: &[Vec<usize>],
    from: usize,
    to: usize,
    cycles: &mut Vec<(Vec<NodeId>, f64)>,
) -> Result<Vec<usize>> {
    let mut walk: Vec<usize> = Vec::new();
    let mut on_walk: Vec<Option<usize>> = vec![None; layered.node_count()]; // node -> walk position
    let mut at = from;
    on_walk[from] = Some(0);
    let mut steps = 0usize;
    while at != to {
        steps += 1;
        if steps > layered.edges.len() * (layered.node_count() + 1) {
            return Err(Error::Solver("flow decomposition did not terminate".into()));
        }
        let next = out_edges[at]
            .iter()
            .copied()
            .find(|&ei| ei != layered.return_edge && flows[ei] > SUPPORT_TOL);
        let Some(ei) = next else {
            return Err(Error::Solver(
                "flow decomposition stuck at a node with unbalanced flow".into(),
            ));
        };
        let head = layered.edges[ei].head;
        walk.push(ei);
        if head == to {
            break;
        }
        if let Some(pos) = on_walk[head] {
            // Lap detected: walk[pos..] closes a loop at `head`. Peel its
            // flow now — leaving it in place would send the deterministic
            // edge choice around the same loop again.
            let loop_edges = &walk[pos..];
            let bottleneck = loop_edges
                .iter()
                .map(|&ei| flows[ei])
                .fold(f64::INFINITY, f64::min);
            for &ei in loop_edges {
                flows[ei] -= bottleneck;
            }
            if bottleneck > TOL {
                let mut nodes = vec![layered.describe(head).0.clone()];
                for &ei in loop_edges {
                    nodes.push(layered.describe(layered.edges[ei].head).0.clone());
                }
                cycles.push((nodes, bottleneck));
            }
            for &dropped in loop_edges {
                on_walk[layered.edges[dropped].tail] = None;
            }
            walk.truncate(pos);
            on_walk[head] = Some(pos);
            at = head;
        } else {
            on_walk[head] = Some(walk.len());
            at = head;
        }
    }
    Ok(walk)
}

fn describe_path(layered: &LayeredGraph, walk: &[usize], amount: f64) -> FlowPath {
    let mut nodes = vec![layered.describe(layered.source).0.clone()];
    let mut processed_at = None;
    for &ei in walk {
        let edge = &layered.edges[ei];
        if matches!(edge.kind, LayeredEdgeKind::Process(_)) {
            // The cross edge stays on the same network node; record it as
            // the processing point instead of repeating the node.
            processed_at = Some(layered.describe(edge.head).0.clone());
        } else {
            nodes.push(layered.describe(edge.head).0.clone());
        }
    }
    FlowPath {
        nodes,
        processed_at: processed_at.expect("every source-to-sink walk crosses a process edge"),
        amount,
    }
}

/// A plain directed graph with edge costs, as consumed by the classical
/// min-cut step of the approximation algorithms.
#[derive(Debug, Clone)]
pub struct CostedDigraph {
    node_count: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl CostedDigraph {
    pub fn new(node_count: usize) -> Self {
        CostedDigraph {
            node_count,
            edges: Vec::new(),
        }
    }

    pub fn add_edge(&mut self, tail: usize, head: usize, cost: f64) -> usize {
        debug_assert!(tail < self.node_count && head < self.node_count);
        self.edges.push((tail, head, cost));
        self.edges.len() - 1
    }

    pub fn edge(&self, idx: usize) -> (usize, usize, f64) {
        self.edges[idx]
    }
}

/// A minimum s-t cut in a plain digraph, found by augmenting-path max flow
/// (breadth-first, so termination does not depend on capacity values).
#[derive(Debug, Clone)]
pub struct ClassicalCut {
    /// Total cost of the cut = value of the max flow.
    pub value: f64,
    /// Indices of cut edges (source side to sink side, saturated).
    pub cut_edges: Vec<usize>,
    /// Which side of the cut each node ends on (true = source side).
    pub source_side: Vec<bool>,
}

pub fn classical_min_cut(graph: &CostedDigraph, s: usize, t: usize) -> ClassicalCut {
    let n = graph.node_count;
    // Residual network: forward and backward arc per edge.
    let mut heads = Vec::with_capacity(graph.edges.len() * 2);
    let mut caps = Vec::with_capacity(graph.edges.len() * 2);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(tail, head, cost) in &graph.edges {
        adj[tail].push(heads.len());
        heads.push(head);
        caps.push(cost);
        adj[head].push(heads.len());
        heads.push(tail);
        caps.push(0.0);
    }
    let mut value = 0.0;
    loop {
        // Shortest augmenting path in the residual network.
        let mut pred: Vec<Option<usize>> = vec![None; n];
        let mut queue = std::collections::VecDeque::from([s]);
        let mut seen = vec![false; n];
        seen[s] = true;
        while let Some(v) = queue.pop_front() {
            if v == t {
                break;
            }
            for &a in &adj[v] {
                let w = heads[a];
                if !seen[w] && caps[a] > SUPPORT_TOL {
                    seen[w] = true;
                    pred[w] = Some(a);
                    queue.push_back(w);
                }
            }
        }
        if !seen[t] {
            let cut_edges = graph
                .edges
                .iter()
                .enumerate()
                .filter(|&(_, &(tail, head, cost))| cost > 0.0 && seen[tail] && !seen[head])
                .map(|(i, _)| i)
                .collect();
            return ClassicalCut {
                value,
                cut_edges,
                source_side: seen,
            };
        }
        let mut bottleneck = f64::INFINITY;
        let mut v = t;
        while v != s {
            let a = pred[v].expect("path reaches the source");
            bottleneck = bottleneck.min(caps[a]);
            v = heads[a ^ 1];
        }
        let mut v = t;
        while v != s {
            let a = pred[v].expect("path reaches the source");
            caps[a] -= bottleneck;
            caps[a ^ 1] += bottleneck;
            v = heads[a ^ 1];
        }
        value += bottleneck;
    }
}

/// Maximum processed flow by explicit path enumeration: list every simple
/// computation path, then pack them against link and node capacities (a path
/// that rides a link in both layers charges it twice). Exponential in the
/// worst case — `path_limit` bounds the enumeration — but an independent
/// formulation, which is the point: tests cross-check the layered program
/// against it.
pub fn max_flow_by_paths(
    net: &ComputingNetwork,
    source: &NodeId,
    dest: &NodeId,
    path_limit: usize,
    limits: &SolverLimits,
) -> Result<f64> {
    let layered = net.build_layered(source, dest)?;
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); layered.node_count()];
    for (ei, edge) in layered.edges.iter().enumerate() {
        if ei != layered.return_edge {
            out_edges[edge.tail].push(ei);
        }
    }
    // Each path is recorded as how often it uses each link and which node
    // processes it.
    let mut paths: Vec<(Vec<(usize, f64)>, usize)> = Vec::new();
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut visited = vec![false; layered.node_count()];
    enumerate_paths(
        &layered,
        &out_edges,
        layered.source,
        &mut visited,
        &mut edge_stack,
        &mut paths,
        path_limit,
    )?;
    if paths.is_empty() {
        return Ok(0.0);
    }
    let mut lp = LinearProgram::new(Sense::Maximize);
    let vars: Vec<VarId> = (0..paths.len())
        .map(|i| lp.add_var(format!("p{i}"), (0.0, f64::INFINITY), 1.0))
        .collect::<Result<_>>()?;
    for (li, link) in net.links().iter().enumerate() {
        let terms: Vec<(VarId, f64)> = paths
            .iter()
            .zip(&vars)
            .filter_map(|((uses, _), &v)| {
                uses.iter()
                    .find(|&&(l, _)| l == li)
                    .map(|&(_, mult)| (v, mult))
            })
            .collect();
        if !terms.is_empty() {
            lp.add_row(
                lp_ident(&["cap", link.from.as_str(), link.to.as_str()]),
                Rel::Le,
                link.capacity,
                &terms,
            )?;
        }
    }
    for (ni, node) in net.nodes().iter().enumerate() {
        if !node.is_computation() {
            continue;
        }
        let terms: Vec<(VarId, f64)> = paths
            .iter()
            .zip(&vars)
            .filter_map(|(&(_, proc_at), &v)| (proc_at == ni).then_some((v, 1.0)))
            .collect();
        if !terms.is_empty() {
            lp.add_row(
                lp_ident(&["cap", node.id.as_str()]),
                Rel::Le,
                node.processing_capacity,
                &terms,
            )?;
        }
    }
    let sol = lp.solve_lp(limits)?;
    if !sol.is_optimal() {
        return Err(Error::Solver(format!(
            "path packing ended with status {:?}",
            sol.status
        )));
    }
    Ok(sol.objective)
}

fn enumerate_paths(
    layered: &LayeredGraph,
    out_edges: &[Vec<usize>],
    at: usize,
    visited: &mut Vec<bool>,
    edge_stack: &mut Vec<usize>,
    paths: &mut Vec<(Vec<(usize, f64)>, usize)>,
    path_limit: usize,
) -> Result<()> {
    if at == layered.sink {
        if paths.len() >= path_limit {
            return Err(Error::PathLimit(path_limit));
        }
        let mut uses: Vec<(usize, f64)> = Vec::new();
        let mut processed_at = None;
        for &ei in edge_stack.iter() {
            match layered.edges[ei].kind {
                LayeredEdgeKind::UpperLink(l) | LayeredEdgeKind::LowerLink(l) => {
                    match uses.iter_mut().find(|(i, _)| *i == l) {
                        Some((_, mult)) => *mult += 1.0,
                        None => uses.push((l, 1.0)),
                    }
                }
                LayeredEdgeKind::Process(n) => processed_at = Some(n),
                LayeredEdgeKind::Return => {}
            }
        }
        let processed_at =
            processed_at.expect("sink lives in the lower layer, so the path crossed");
        paths.push((uses, processed_at));
        return Ok(());
    }
    visited[at] = true;
    for &ei in &out_edges[at] {
        let head = layered.edges[ei].head;
        if visited[head] || layered.edges[ei].capacity <= 0.0 {
            continue;
        }
        edge_stack.push(ei);
        enumerate_paths(layered, out_edges, head, visited, edge_stack, paths, path_limit)?;
        edge_stack.pop();
    }
    visited[at] = false;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::NetworkBuilder;

    fn limits() -> SolverLimits {
        SolverLimits::default()
    }

    fn source() -> NodeId {
        NodeId::from("s")
    }

    fn dest() -> NodeId {
        NodeId::from("t")
    }

    #[test]
    fn single_path_is_capped_by_every_stage() {
        let net = NetworkBuilder::new()
            .node("s", 0.0)
            .node("u", 10.0)
            .node("t", 0.0)
            .link("s", "u", 1.0)
            .link("u", "t", 1.0)
            .build()
            .unwrap();
        let sol = max_flow(&net, &source(), &dest(), &limits()).unwrap();
        assert!((sol.value - 1.0).abs() < TOL);
    }

    #[test]
    fn shared_link_is_charged_in_both_layers() {
        // Cycle s -> t -> v -> s with processing only at v: every unit must
        // ride s -> t unprocessed and again processed, so the coupled
        // capacity halves the throughput.
        let net = NetworkBuilder::new()
            .node("s", 0.0)
            .node("t", 0.0)
            .node("v", 2.0)
            .link("s", "t", 2.0)
            .link("t", "v", 2.0)
            .link("v", "s", 2.0)
            .build()
            .unwrap();
        let sol = max_flow(&net, &source(), &dest(), &limits()).unwrap();
        assert!((sol.value - 1.0).abs() < TOL);
        // The doubly-loaded link is the bottleneck; one extra unit of its
        // capacity buys half a unit of throughput.
        assert!((sol.link_dual(&LinkId::new("s", "t")) - 0.5).abs() < TOL);
        assert!(sol.link_dual(&LinkId::new("t", "v")).abs() < TOL);
        assert!(sol.node_dual(&NodeId::from("v")).abs() < TOL);
    }

    #[test]
    fn no_computation_means_no_flow() {
        let net = NetworkBuilder::new()
            .node("s", 0.0)
            .node("t", 0.0)
            .link("s", "t", 5.0)
            .build()
            .unwrap();
        let sol = max_flow(&net, &source(), &dest(), &limits()).unwrap();
        assert!(sol.value.abs() < TOL);
    }

    #[test]
    fn disconnected_pair_has_zero_flow() {
        let net = NetworkBuilder::new()
            .node("s", 0.0)
            .node("t", 0.0)
            .node("u", 1.0)
            .link("t", "u", 1.0)
            .link("u", "s", 1.0)
            .build()
            .unwrap();
        let sol = max_flow(&net, &source(), &dest(), &limits()).unwrap();
        assert!(sol.value.abs() < TOL);
    }

    #[test]
    fn saturated_node_carries_its_shadow_price() {
        let net = NetworkBuilder::new()
            .node("s", 0.0)
            .node("u", 1.0)
            .node("t", 0.0)
            .link("s", "u", 5.0)
            .link("u", "t", 5.0)
            .build()
            .unwrap();
        let sol = max_flow(&net, &source(), &dest(), &limits()).unwrap();
        assert!((sol.value - 1.0).abs()< TOL);
        assert!((sol.node_dual(&NodeId::from("u")) - 1.0).abs() < TOL);
        assert!(sol.link_dual(&LinkId::new("s", "u")).abs() < TOL);
    }

    #[test]
    fn decompose_recovers_the_round_trip_path() {
        let net = NetworkBuilder::new()
            .node("s", 0.0)
            .node("t", 0.0)
            .node("v", 2.0)
            .link("s", "t", 2.0)
            .link("t", "v", 2.0)
            .link("v", "s", 2.0)
            .build()
            .unwrap();
        let sol = max_flow(&net, &source(), &dest(), &limits()).unwrap();
        let dec = sol.decompose().unwrap();
        assert!((dec.total() - sol.value).abs() < TOL);
        assert_eq!(dec.paths.len(), 1);
        let path = &dec.paths[0];
        assert_eq!(path.processed_at, NodeId::from("v"));
        let ids: Vec<&str> = path.nodes.iter().map(|n| n.as_str()).collect();
        assert_eq!(ids, ["s", "t", "v", "s", "t"]);
        assert!(dec.cycles.is_empty());
    }

    #[test]
    fn decompose_splits_parallel_routes() {
        let net = NetworkBuilder::new()
            .node("s", 0.0)
            .node("u1", 1.0)
            .node("u2", 1.0)
            .node("t", 0.0)
            .link("s", "u1", 5.0)
            .link("u1", "t", 5.0)
            .link("s", "u2", 5.0)
            .link("u2", "t", 5.0)
            .build()
            .unwrap();
        let sol = max_flow(&net, &source(), &dest(), &limits()).unwrap();
        assert!((sol.value - 2.0).abs() < TOL);
        let dec = sol.decompose().unwrap();
        assert!((dec.total() - 2.0).abs() < TOL);
        assert_eq!(dec.paths.len(), 2);
        let mut processed: Vec<String> = dec
            .paths
            .iter()
            .map(|p| p.processed_at.to_string())
            .collect();
        processed.sort();
        assert_eq!(processed, ["u1", "u2"]);
    }

    #[test]
    fn path_packing_agrees_with_layered_program() {
        let net = NetworkBuilder::new()
            .node("s", 0.0)
            .node("t", 0.0)
            .node("v", 2.0)
            .node("u", 1.0)
            .link("s", "t", 2.0)
            .link("t", "v", 2.0)
            .link("v", "s", 2.0)
            .link("s", "u", 0.5)
            .link("u", "t", 3.0)
            .build()
            .unwrap();
        let lp_value = max_flow(&net, &source(), &dest(), &limits()).unwrap().value;
        let path_value = max_flow_by_paths(&net, &source(), &dest(), 10_000, &limits()).unwrap();
        assert!((lp_value - path_value).abs() < TOL, "{lp_value} vs {path_value}");
    }

    #[test]
    fn path_enumeration_respects_its_limit() {
        let net = NetworkBuilder::new()
            .node("s", 0.0)
            .node("u", 1.0)
            .node("t", 0.0)
            .link("s", "u", 1.0)
            .link("u", "t", 1.0)
            .build()
            .unwrap();
        let err = max_flow_by_paths(&net, &source(), &dest(), 0, &limits()).unwrap_err();
        assert!(matches!(err, Error::PathLimit(0)));
    }

    #[test]
    fn classical_cut_matches_hand_value() {
        // Diamond: s -> a -> t and s -> b -> t with a cross edge a -> b.
        let mut g = CostedDigraph::new(4);
        g.add_edge(0, 1, 3.0);
        g.add_edge(0, 2, 2.0);
        g.add_edge(1, 3, 2.0);
        g.add_edge(2, 3, 3.0);
        g.add_edge(1, 2, 1.0);
        let cut = classical_min_cut(&g, 0, 3);
        assert!((cut.value - 5.0).abs() < TOL);
        assert!(cut.source_side[0]);
        assert!(!cut.source_side[3]);
        let cut_cost: f64 = cut.cut_edges.iter().map(|&e| g.edge(e).2).sum();
        assert!((cut_cost - cut.value).abs() < TOL);
    }
}
