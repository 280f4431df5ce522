//! Brute-force minimum-cut oracle, independent of the optimization stack.
//!
//! Enumerates every subset of the eligible resources, keeps the cheapest one
//! whose removal leaves no processed route, and certifies the winner by the
//! same reachability check. No linear programming is involved, so the result
//! can confront the exact solvers in tests.

use crate::cuts::{CutMode, CutSolution};
use crate::error::{Error, Result};
use crate::model::{ComputingNetwork, LinkId, NodeId};

/// Subset enumeration is exponential; refuse instances with more eligible
/// resources than this.
pub const CUT_ORACLE_RESOURCE_LIMIT: usize = 20;

const TOL: f64 = 1e-9;

/// Minimum cut of the requested mode by exhaustive subset search.
///
/// Eligible resources are the positive-capacity links (communication), the
/// computation nodes (computation), or both (joint). Subsets are pruned by
/// capacity before the reachability check, and the returned cut is verified
/// to disconnect every processed route.
pub fn cut_oracle(
    net: &ComputingNetwork,
    source: &NodeId,
    dest: &NodeId,
    mode: CutMode,
) -> Result<CutSolution> {
    let layered = net.build_layered(source, dest)?;

    let mut link_ids: Vec<LinkId> = Vec::new();
    let mut node_ids: Vec<NodeId> = Vec::new();
    if matches!(mode, CutMode::Communication | CutMode::Joint) {
        link_ids.extend(
            net.links()
                .iter()
                .filter(|l| l.capacity > 0.0)
                .map(|l| l.id()),
        );
    }
    if matches!(mode, CutMode::Computation | CutMode::Joint) {
        node_ids.extend(net.computation_nodes().map(|n| n.id.clone()));
    }

    // Each candidate: its capacity contribution and its layered edges.
    let mut values: Vec<f64> = Vec::new();
    let mut edges: Vec<Vec<usize>> = Vec::new();
    for id in &link_ids {
        values.push(net.link(&id.from, &id.to).unwrap().capacity);
        edges.push(layered.map_cut_to_layered(net, std::slice::from_ref(id), &[])?);
    }
    for id in &node_ids {
        values.push(net.node(id).unwrap().processing_capacity);
        edges.push(layered.map_cut_to_layered(net, &[], std::slice::from_ref(id))?);
    }
    let n = values.len();
    if n > CUT_ORACLE_RESOURCE_LIMIT {
        return Err(Error::OracleSize {
            found: n,
            limit: CUT_ORACLE_RESOURCE_LIMIT,
        });
    }

    let mut best_value = f64::INFINITY;
    let mut best_mask: u32 = 0;
    let mut found = false;
    let mut removed: Vec<usize> = Vec::new();
    for mask in 0u32..1u32 << n {
        let mut value = 0.0;
        for (i, v) in values.iter().enumerate() {
            if mask >> i & 1 == 1 {
                value += v;
            }
        }
        if found && value >= best_value - TOL {
            continue;
        }
        removed.clear();
        for (i, es) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                removed.extend_from_slice(es);
            }
        }
        if !layered.connects_with_removed(&removed) {
            best_value = value;
            best_mask = mask;
            found = true;
        }
    }
    if !found {
        // Removing every eligible resource still leaves a processed route;
        // a cut of this mode does not exist (e.g. a source-to-destination
        // route with no computation on it, asked for a computation cut).
        return Err(Error::Unsupported(format!(
            "no {mode} cut exists for {source} -> {dest}",
        )));
    }

    let mut links: Vec<LinkId> = link_ids
        .iter()
        .enumerate()
        .filter(|&(i, _)| best_mask >> i & 1 == 1)
        .map(|(_, id)| id.clone())
        .collect();
    let mut nodes: Vec<NodeId> = node_ids
        .iter()
        .enumerate()
        .filter(|&(i, _)| best_mask >> (link_ids.len() + i) & 1 == 1)
        .map(|(_, id)| id.clone())
        .collect();
    links.sort();
    nodes.sort();
    Ok(CutSolution {
        mode,
        links,
        nodes,
        value: best_value,
        optimal: true,
        verified: true,
        potentials: None,
    })
}
