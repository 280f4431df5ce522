//! Seeded random instances for cross-checking solvers against oracles.
//!
//! Two families: small networks sized for exhaustive oracles (at most six
//! nodes and ten directed links), and mid-size networks with interdiction
//! costs drawn independently of capacities. Both are deterministic in the
//! seed, so a failing case names itself.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{ComputingNetwork, Link, Node, NodeId};

const SMALL_LINK_CAP: (f64, f64) = (0.2, 2.0);
const SMALL_NODE_CAP: (f64, f64) = (0.3, 1.5);
const COSTED_CAP: (f64, f64) = (0.3, 2.0);
const COSTED_COST: (f64, f64) = (0.2, 1.8);

/// Random network with 3–6 nodes and at most 10 directed links, suitable
/// for every enumeration oracle. A forward spine n0 -> n1 -> ... guarantees
/// a route from the returned source to the returned destination, at least
/// one interior node computes, and interdiction costs equal capacities.
pub fn random_small_network(seed: u64) -> (ComputingNetwork, NodeId, NodeId) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(3..=6usize);

    // Undirected pairs: the spine, then random chords up to five in total.
    let mut pairs: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    let mut chords: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 2..n {
            chords.push((i, j));
        }
    }
    chords.shuffle(&mut rng);
    while pairs.len() < 5 && !chords.is_empty() && rng.gen_bool(0.7) {
        pairs.push(chords.pop().unwrap());
    }

    let mut links = Vec::new();
    for &(a, b) in &pairs {
        links.push(plain_link(a, b, draw(&mut rng, SMALL_LINK_CAP)));
        if rng.gen_bool(0.5) {
            links.push(plain_link(b, a, draw(&mut rng, SMALL_LINK_CAP)));
        }
    }

    let mut computes = vec![false; n];
    for c in computes.iter_mut().take(n - 1).skip(1) {
        *c = rng.gen_bool(0.6);
    }
    if !computes.iter().any(|&c| c) {
        computes[rng.gen_range(1..n - 1)] = true;
    }
    let nodes: Vec<Node> = (0..n)
        .map(|i| {
            let cap = if computes[i] {
                draw(&mut rng, SMALL_NODE_CAP)
            } else {
                0.0
            };
            plain_node(i, cap)
        })
        .collect();

    let net = ComputingNetwork::new(nodes, links).expect("generated network is valid");
    (net, node_id(0), node_id(n - 1))
}

/// Random network at the scale of a small backbone: 11 nodes, 14
/// undirected edges (the spine plus four chords) giving 28 directed links,
/// three interior computation nodes, and interdiction costs drawn
/// independently of capacities on every resource.
pub fn random_costed_network(seed: u64) -> (ComputingNetwork, NodeId, NodeId) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 11usize;

    let mut pairs: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    let mut chords: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 2..n {
            chords.push((i, j));
        }
    }
    chords.shuffle(&mut rng);
    pairs.extend(chords.into_iter().take(4));

    let mut links = Vec::new();
    for &(a, b) in &pairs {
        for (from, to) in [(a, b), (b, a)] {
            links.push(Link {
                from: node_id(from),
                to: node_id(to),
                capacity: draw(&mut rng, COSTED_CAP),
                interdiction_cost: Some(draw(&mut rng, COSTED_COST)),
            });
        }
    }

    let mut interior: Vec<usize> = (1..n - 1).collect();
    interior.shuffle(&mut rng);
    let mut computing: Vec<usize> = interior.into_iter().take(3).collect();
    computing.sort_unstable();
    let nodes: Vec<Node> = (0..n)
        .map(|i| {
            if computing.contains(&i) {
                Node {
                    id: node_id(i),
                    processing_capacity: draw(&mut rng, COSTED_CAP),
                    interdiction_cost: Some(draw(&mut rng, COSTED_COST)),
                }
            } else {
                plain_node(i, 0.0)
            }
        })
        .collect();

    let net = ComputingNetwork::new(nodes, links).expect("generated network is valid");
    (net, node_id(0), node_id(n - 1))
}

/// Redraw every capacity while keeping the topology, the set of computation
/// nodes, and any explicit interdiction costs. Produces a second capacity
/// vector over the same network for concavity and sensitivity checks.
pub fn resample_capacities(net: &ComputingNetwork, seed: u64) -> ComputingNetwork {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nodes: Vec<Node> = net
        .nodes()
        .iter()
        .map(|node| Node {
            id: node.id.clone(),
            processing_capacity: if node.is_computation() {
                draw(&mut rng, SMALL_NODE_CAP)
            } else {
                0.0
            },
            interdiction_cost: node.interdiction_cost,
        })
        .collect();
    let links: Vec<Link> = net
        .links()
        .iter()
        .map(|link| Link {
            from: link.from.clone(),
            to: link.to.clone(),
            capacity: draw(&mut rng, SMALL_LINK_CAP),
            interdiction_cost: link.interdiction_cost,
        })
        .collect();
    ComputingNetwork::new(nodes, links).expect("resampled network is valid")
}

/// Convex combination of two capacity vectors over the same topology:
/// every node gets `alpha * a + (1 - alpha) * b` processing capacity, every
/// link likewise. Node and link lists must match by position. Explicit
/// interdiction costs blend the same way when either side has one.
pub fn combine_capacities(
    a: &ComputingNetwork,
    b: &ComputingNetwork,
    alpha: f64,
) -> Result<ComputingNetwork> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidRange(format!(
            "blend weight {alpha} outside [0, 1]"
        )));
    }
    if a.nodes().len() != b.nodes().len() || a.links().len() != b.links().len() {
        return Err(Error::InvalidNetwork(
            "capacity blend needs identical topologies".into(),
        ));
    }
    let mut nodes = Vec::with_capacity(a.nodes().len());
    for (na, nb) in a.nodes().iter().zip(b.nodes()) {
        if na.id != nb.id {
            return Err(Error::InvalidNetwork(format!(
                "node mismatch: {} vs {}",
                na.id, nb.id
            )));
        }
        let cost = if na.interdiction_cost.is_some() || nb.interdiction_cost.is_some() {
            Some(alpha * na.cost() + (1.0 - alpha) * nb.cost())
        } else {
            None
        };
        nodes.push(Node {
            id: na.id.clone(),
            processing_capacity: alpha * na.processing_capacity
                + (1.0 - alpha) * nb.processing_capacity,
            interdiction_cost: cost,
        });
    }
    let mut links = Vec::with_capacity(a.links().len());
    for (la, lb) in a.links().iter().zip(b.links()) {
        if la.from != lb.from || la.to != lb.to {
            return Err(Error::InvalidNetwork(format!(
                "link mismatch: {} vs {}",
                la.id(),
                lb.id()
            )));
        }
        let cost = if la.interdiction_cost.is_some() || lb.interdiction_cost.is_some() {
            Some(alpha * la.cost() + (1.0 - alpha) * lb.cost())
        } else {
            None
        };
        links.push(Link {
            from: la.from.clone(),
            to: la.to.clone(),
            capacity: alpha * la.capacity + (1.0 - alpha) * lb.capacity,
            interdiction_cost: cost,
        });
    }
    ComputingNetwork::new(nodes, links)
}

fn node_id(i: usize) -> NodeId {
    NodeId::new(format!("n{i}"))
}

fn plain_node(i: usize, processing: f64) -> Node {
    Node {
        id: node_id(i),
        processing_capacity: processing,
        interdiction_cost: None,
    }
}

fn plain_link(a: usize, b: usize, capacity: f64) -> Link {
    Link {
        from: node_id(a),
        to: node_id(b),
        capacity,
        interdiction_cost: None,
    }
}

fn draw(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    rng.gen_range(lo..hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_networks_fit_the_oracle_budget() {
        for seed in 0..50 {
            let (net, s, t) = random_small_network(seed);
            assert!(net.nodes().len() <= 6, "seed {seed}");
            assert!(net.links().len() <= 10, "seed {seed}");
            assert!(net.computation_nodes().count() >= 1, "seed {seed}");
            assert!(net.costs_equal_capacities(), "seed {seed}");
            assert_eq!(s.as_str(), "n0");
            assert_eq!(t.as_str(), format!("n{}", net.nodes().len() - 1));
        }
    }

    #[test]
    fn generation_is_deterministic_in_the_seed() {
        let (a, _, _) = random_small_network(7);
        let (b, _, _) = random_small_network(7);
        let (c, _, _) = random_small_network(8);
        let ja = a.to_json();
        assert_eq!(ja, b.to_json());
        assert_ne!(ja, c.to_json());
    }

    #[test]
    fn costed_networks_have_independent_costs() {
        let (net, s, t) = random_costed_network(3);
        assert_eq!(net.nodes().len(), 11);
        assert_eq!(net.links().len(), 28);
        assert_eq!(net.computation_nodes().count(), 3);
        assert!(!net.costs_equal_capacities());
        assert!(net.links().iter().all(|l| l.interdiction_cost.is_some()));
        assert_eq!(s.as_str(), "n0");
        assert_eq!(t.as_str(), "n10");
    }

    #[test]
    fn resampling_keeps_the_shape() {
        let (net, _, _) = random_small_network(11);
        let other = resample_capacities(&net, 99);
        assert_eq!(net.nodes().len(), other.nodes().len());
        assert_eq!(net.links().len(), other.links().len());
        for (a, b) in net.nodes().iter().zip(other.nodes()) {
            assert_eq!(a.id, b.id);
            assert_eq!(a.is_computation(), b.is_computation());
        }
        let caps_a: Vec<f64> = net.links().iter().map(|l| l.capacity).collect();
        let caps_b: Vec<f64> = other.links().iter().map(|l| l.capacity).collect();
        assert_ne!(caps_a, caps_b);
    }

    #[test]
    fn blending_interpolates_capacities() {
        let (net, _, _) = random_small_network(21);
        let other = resample_capacities(&net, 22);
        let mid = combine_capacities(&net, &other, 0.25).unwrap();
        for ((la, lb), lm) in net.links().iter().zip(other.links()).zip(mid.links()) {
            let want = 0.25 * la.capacity + 0.75 * lb.capacity;
            assert!((lm.capacity - want).abs() < 1e-12);
        }
        for ((na, nb), nm) in net.nodes().iter().zip(other.nodes()).zip(mid.nodes()) {
            let want = 0.25 * na.processing_capacity + 0.75 * nb.processing_capacity;
            assert!((nm.processing_capacity - want).abs() < 1e-12);
        }
    }

    #[test]
    fn blending_rejects_mismatched_shapes() {
        let (a, _, _) = random_small_network(1);
        let (b, _, _) = random_costed_network(1);
        assert!(matches!(
            combine_capacities(&a, &b, 0.5),
            Err(Error::InvalidNetwork(_))
        ));
        let err = combine_capacities(&a, &a, 1.5).unwrap_err();
        assert!(matches!(err, Error::InvalidRange(_)));
    }
}
