//! Reduction from "exact cover by 3-sets" to minimum communication cuts.
//!
//! An instance has 3q elements and m triples. The reduction builds a network
//! whose minimum communication cut is exactly m + q when the triples contain
//! an exact cover (q pairwise-disjoint triples covering every element), and
//! strictly more otherwise. Each triple i contributes a gadget path
//! s1 -> u_i -> v_i -> t1 with capacities (k, 2, 1); each element threads a
//! path from s2 to t2 through the (u_i, v_i) edges of the triples containing
//! it, joined by capacity-k connectors. Computation happens only at s2 and
//! t1, so every processed route crosses either a gadget or an element chain,
//! and with k at least 2m no capacity-k link is ever worth cutting:
//! per-triple blocking costs 1 or 2 and per-element coverage reuses the
//! 2-capacity edges precisely when the picked triples are disjoint.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{ComputingNetwork, Link, Node, NodeId};

/// An exact-cover-by-3-sets instance plus the big capacity used by its
/// network reduction.
#[derive(Debug, Clone, PartialEq)]
pub struct X3CInstance {
    /// Number of triples in an exact cover; the universe is 1..=3q.
    q: usize,
    /// The candidate triples, each three distinct elements of the universe.
    triples: Vec<[usize; 3]>,
    /// Capacity of the non-cuttable links; at least twice the triple count.
    k: f64,
}

impl X3CInstance {
    /// Validate and build an instance; `k` defaults to `2 m`.
    pub fn new(q: usize, triples: Vec<[usize; 3]>) -> Result<Self> {
        if q == 0 || triples.is_empty() {
            return Err(Error::InvalidRange(
                "an instance needs q >= 1 and at least one triple".into(),
            ));
        }
        let universe = 3 * q;
        for t in &triples {
            let distinct: BTreeSet<usize> = t.iter().copied().collect();
            if distinct.len() != 3 || t.iter().any(|&e| e == 0 || e > universe) {
                return Err(Error::InvalidTriple(format!("{t:?}")));
            }
        }
        let k = 2.0 * triples.len() as f64;
        Ok(X3CInstance { q, triples, k })
    }

    /// Replace the big capacity; it must stay at least `2 m`.
    pub fn with_k(mut self, k: f64) -> Result<Self> {
        if !k.is_finite() || k < 2.0 * self.m() as f64 {
            return Err(Error::InvalidRange(format!(
                "k = {k} must be at least 2 m = {}",
                2 * self.m()
            )));
        }
        self.k = k;
        Ok(self)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Number of triples.
    pub fn m(&self) -> usize {
        self.triples.len()
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// Universe size, 3q.
    pub fn universe(&self) -> usize {
        3 * self.q
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    /// The communication-cut value that witnesses an exact cover.
    pub fn target_cut(&self) -> f64 {
        (self.m() + self.q) as f64
    }

    /// Exhaustively decide whether some q pairwise-disjoint triples cover
    /// the universe. Branches on the lowest uncovered element, so the tree
    /// stays small for test-sized instances.
    pub fn has_exact_cover(&self) -> bool {
        fn solve(covered: u128, universe: usize, triples: &[[usize; 3]]) -> bool {
            let full = (1u128 << universe) - 1;
            if covered == full {
                return true;
            }
            let lowest = (!covered & full).trailing_zeros() as usize + 1;
            for t in triples {
                if !t.contains(&lowest) {
                    continue;
                }
                let mask: u128 = t.iter().map(|&e| 1u128 << (e - 1)).sum();
                if covered & mask == 0 && solve(covered | mask, universe, triples) {
                    return true;
                }
            }
            false
        }
        solve(0, self.universe(), &self.triples)
    }
}

/// Build the reduction network. Flow runs from the returned source to the
/// returned destination; the interesting metric is the minimum
/// communication cut, which equals `m + q` exactly when the instance has an
/// exact cover.
pub fn build_x3c_reduction(inst: &X3CInstance) -> Result<(ComputingNetwork, NodeId, NodeId)> {
    let k = inst.k();
    if k < 2.0 * inst.m() as f64 {
        return Err(Error::InvalidRange(format!(
            "k = {k} must be at least 2 m = {}",
            2 * inst.m()
        )));
    }

    let mut nodes = vec![
        plain_node("s", 0.0),
        plain_node("s1", 0.0),
        plain_node("s2", k),
        plain_node("t1", k),
        plain_node("t2", 0.0),
        plain_node("t", 0.0),
    ];
    for i in 1..=inst.m() {
        nodes.push(plain_node(&format!("u{i}"), 0.0));
        nodes.push(plain_node(&format!("v{i}"), 0.0));
    }

    let mut links = vec![
        plain_link("s", "s1", k),
        plain_link("s", "s2", k),
        plain_link("t1", "t", k),
        plain_link("t2", "t", k),
    ];
    for i in 1..=inst.m() {
        links.push(plain_link("s1", &format!("u{i}"), k));
        links.push(plain_link(&format!("u{i}"), &format!("v{i}"), 2.0));
        links.push(plain_link(&format!("v{i}"), "t1", 1.0));
    }

    // Element chains: s2 -> u_{i1} -> v_{i1} -> u_{i2} -> ... -> t2 for the
    // triples i1 < i2 < ... containing the element. The u -> v hops reuse
    // the gadget edges; the joining connectors are deduplicated since
    // elements sharing consecutive triples share them.
    let mut connectors: BTreeSet<(String, String)> = BTreeSet::new();
    for element in 1..=inst.universe() {
        let hits: Vec<usize> = inst
            .triples()
            .iter()
            .enumerate()
            .filter(|(_, t)| t.contains(&element))
            .map(|(i, _)| i + 1)
            .collect();
        let mut at = "s2".to_string();
        for i in hits {
            connectors.insert((at, format!("u{i}")));
            at = format!("v{i}");
        }
        connectors.insert((at, "t2".to_string()));
    }
    for (from, to) in connectors {
        links.push(plain_link(&from, &to, k));
    }

    let net = ComputingNetwork::new(nodes, links)?;
    Ok((net, NodeId::from("s"), NodeId::from("t")))
}

fn plain_node(id: &str, processing: f64) -> Node {
    Node {
        id: NodeId::from(id),
        processing_capacity: processing,
        interdiction_cost: None,
    }
}

fn plain_link(from: &str, to: &str, capacity: f64) -> Link {
    Link {
        from: NodeId::from(from),
        to: NodeId::from(to),
        capacity,
        interdiction_cost: None,
    }
}

/// An exact cover (as 0-based triple indices) whose gadget-edge removal,
/// combined with cutting every other triple's exit edge, disconnects all
/// processed routes of the reduction — including routes that splice
/// between different elements' chains through shared gadget nodes. The
/// classic m + q cut exists exactly for such covers; an exact cover
/// without this property leaves a spliced route alive and the minimum cut
/// exceeds m + q.
///
/// Decided by pure graph search on the chain structure, independently of
/// any solver.
pub fn blocking_cover(inst: &X3CInstance) -> Option<Vec<usize>> {
    let m = inst.m();
    // Chain adjacency over triples: which triples start a chain, end one,
    // and follow one another consecutively in some element's chain.
    let mut starts = vec![false; m];
    let mut ends = vec![false; m];
    let mut follows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m];
    for hits in element_memberships(inst).values() {
        if hits.is_empty() {
            continue;
        }
        starts[hits[0] - 1] = true;
        ends[hits[hits.len() - 1] - 1] = true;
        for w in hits.windows(2) {
            follows[w[0] - 1].insert(w[1] - 1);
        }
    }
    let blocks = |cover: &[usize]| -> bool {
        let mut dead = vec![false; m];
        for &i in cover {
            dead[i] = true;
        }
        let mut seen = vec![false; m];
        let mut stack: Vec<usize> = (0..m).filter(|&i| starts[i] && !dead[i]).collect();
        for &i in &stack {
            seen[i] = true;
        }
        while let Some(i) = stack.pop() {
            if ends[i] {
                return false;
            }
            for &j in &follows[i] {
                if !dead[j] && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        true
    };

    fn search(
        covered: u128,
        universe: usize,
        triples: &[[usize; 3]],
        chosen: &mut Vec<usize>,
        blocks: &dyn Fn(&[usize]) -> bool,
    ) -> Option<Vec<usize>> {
        let full = (1u128 << universe) - 1;
        if covered == full {
            return blocks(chosen).then(|| chosen.clone());
        }
        let lowest = (!covered & full).trailing_zeros() as usize + 1;
        for (i, t) in triples.iter().enumerate() {
            if !t.contains(&lowest) {
                continue;
            }
            let mask: u128 = t.iter().map(|&e| 1u128 << (e - 1)).sum();
            if covered & mask != 0 {
                continue;
            }
            chosen.push(i);
            if let Some(found) = search(covered | mask, universe, triples, chosen, blocks) {
                return Some(found);
            }
            chosen.pop();
        }
        None
    }
    search(0, inst.universe(), &inst.triples, &mut Vec::new(), &blocks)
}

/// A random instance with a planted exact cover that provably yields the
/// m + q minimum cut: a random partition of the universe into q triples
/// plus `extra` random distractors, redrawn until [`blocking_cover`]
/// certifies some cover.
pub fn planted_cover_instance(q: usize, extra: usize, seed: u64) -> X3CInstance {
    for attempt in 0..10_000u64 {
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt.wrapping_mul(0x9e37_79b9)));
        let mut elements: Vec<usize> = (1..=3 * q).collect();
        elements.shuffle(&mut rng);
        let mut triples: Vec<[usize; 3]> = elements
            .chunks(3)
            .map(|c| {
                let mut t = [c[0], c[1], c[2]];
                t.sort_unstable();
                t
            })
            .collect();
        let mut seen: BTreeSet<[usize; 3]> = triples.iter().copied().collect();
        while triples.len() < q + extra {
            let t = random_triple(&mut rng, 3 * q);
            if seen.insert(t) {
                triples.push(t);
            }
        }
        triples.shuffle(&mut rng);
        let inst = X3CInstance::new(q, triples).expect("generated triples are valid");
        if blocking_cover(&inst).is_some() {
            return inst;
        }
    }
    panic!("no certified instance with q = {q}, extra = {extra} found after 10000 draws")
}

/// A random instance with every element covered but NO exact cover,
/// certified by exhaustive search. Draws fresh instances until one
/// qualifies.
pub fn no_cover_instance(q: usize, m: usize, seed: u64) -> Result<X3CInstance> {
    for attempt in 0..10_000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt.wrapping_mul(0x9e37_79b9)));
        let mut seen: BTreeSet<[usize; 3]> = BTreeSet::new();
        while seen.len() < m {
            seen.insert(random_triple(&mut rng, 3 * q));
        }
        let triples: Vec<[usize; 3]> = seen.into_iter().collect();
        let covered: BTreeSet<usize> = triples.iter().flatten().copied().collect();
        if covered.len() != 3 * q {
            continue;
        }
        let inst = X3CInstance::new(q, triples)?;
        if !inst.has_exact_cover() {
            return Ok(inst);
        }
    }
    Err(Error::Unsupported(format!(
        "found no cover-free instance with q = {q}, m = {m} after 10000 draws"
    )))
}

fn random_triple(rng: &mut ChaCha8Rng, universe: usize) -> [usize; 3] {
    let mut picked = BTreeSet::new();
    while picked.len() < 3 {
        picked.insert(rng.gen_range(1..=universe));
    }
    let v: Vec<usize> = picked.into_iter().collect();
    [v[0], v[1], v[2]]
}

/// The worked example: six elements, three triples, one exact cover of size
/// two, so the minimum communication cut of the reduction is 3 + 2 = 5.
pub fn worked_instance() -> X3CInstance {
    X3CInstance::new(2, vec![[1, 2, 3], [1, 2, 4], [3, 5, 6]]).expect("static instance is valid")
}

/// Per-element membership map, mainly for diagnostics and tests.
pub fn element_memberships(inst: &X3CInstance) -> BTreeMap<usize, Vec<usize>> {
    let mut map = BTreeMap::new();
    for element in 1..=inst.universe() {
        let hits: Vec<usize> = inst
            .triples()
            .iter()
            .enumerate()
            .filter(|(_, t)| t.contains(&element))
            .map(|(i, _)| i + 1)
            .collect();
        map.insert(element, hits);
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_instance_has_a_cover() {
        let inst = worked_instance();
        assert_eq!(inst.m(), 3);
        assert_eq!(inst.q(), 2);
        assert_eq!(inst.k(), 6.0);
        assert!(inst.has_exact_cover());
        assert_eq!(inst.target_cut(), 5.0);
    }

    #[test]
    fn cover_detection_spots_missing_covers() {
        // Every pair of these triples intersects, so no two of them can
        // cover six elements disjointly.
        let inst =
            X3CInstance::new(2, vec![[1, 2, 3], [1, 4, 5], [1, 4, 6], [2, 5, 6]]).unwrap();
        assert!(!inst.has_exact_cover());
        // A single covering triple over a three-element universe.
        let tiny = X3CInstance::new(1, vec![[1, 2, 3]]).unwrap();
        assert!(tiny.has_exact_cover());
    }

    #[test]
    fn rejects_malformed_triples() {
        assert!(matches!(
            X3CInstance::new(2, vec![[1, 1, 2]]),
            Err(Error::InvalidTriple(_))
        ));
        assert!(matches!(
            X3CInstance::new(1, vec![[1, 2, 7]]),
            Err(Error::InvalidTriple(_))
        ));
    }

    #[test]
    fn reduction_shape_for_the_worked_instance() {
        let inst = worked_instance();
        let (net, s, t) = build_x3c_reduction(&inst).unwrap();
        assert_eq!(net.nodes().len(), 6 + 2 * inst.m());
        // 4 terminal links, 3 per gadget, 7 distinct element connectors.
        assert_eq!(net.links().len(), 4 + 3 * inst.m() + 7);
        let comp: Vec<&str> = net
            .computation_nodes()
            .map(|n| n.id.as_str())
            .collect();
        assert_eq!(comp, vec!["s2", "t1"]);
        assert_eq!(s.as_str(), "s");
        assert_eq!(t.as_str(), "t");
        assert!(net.costs_equal_capacities());
    }

    #[test]
    fn planted_instances_carry_a_certified_cover() {
        for seed in 0..5 {
            let inst = planted_cover_instance(3, 3, seed);
            assert_eq!(inst.m(), 6);
            assert!(inst.has_exact_cover(), "seed {seed}");
            let cover = blocking_cover(&inst).expect("planted instances are certified");
            assert_eq!(cover.len(), inst.q(), "seed {seed}");
        }
    }

    #[test]
    fn a_cover_bypassed_by_spliced_routes_is_rejected() {
        // This instance's only exact cover is {[2,3,6], [7,8,9], [1,4,5]},
        // but removing those triples' gadget edges leaves a route that
        // enters one leftover triple's gadget through one element's chain
        // and exits through another's, so the certifier must refuse it.
        let inst = X3CInstance::new(
            3,
            vec![
                [3, 4, 6],
                [2, 3, 6],
                [3, 6, 9],
                [2, 4, 8],
                [7, 8, 9],
                [1, 4, 5],
            ],
        )
        .unwrap();
        assert!(inst.has_exact_cover());
        assert!(blocking_cover(&inst).is_none());
    }

    #[test]
    fn worked_instance_cover_is_certified() {
        let cover = blocking_cover(&worked_instance()).unwrap();
        assert_eq!(cover, vec![1, 2]);
    }

    #[test]
    fn no_cover_instances_are_certified() {
        for seed in 0..5 {
            let inst = no_cover_instance(2, 4, seed).unwrap();
            assert_eq!(inst.m(), 4);
            assert!(!inst.has_exact_cover(), "seed {seed}");
            let all: BTreeSet<usize> = inst.triples().iter().flatten().copied().collect();
            assert_eq!(all.len(), inst.universe(), "seed {seed} leaves an element uncovered");
        }
    }

    #[test]
    fn k_must_dominate_the_gadget_cost() {
        let inst = worked_instance();
        assert!(inst.clone().with_k(5.0).is_err());
        let bigger = inst.with_k(10.0).unwrap();
        let (net, _, _) = build_x3c_reduction(&bigger).unwrap();
        let l = net
            .link(&NodeId::from("s"), &NodeId::from("s1"))
            .unwrap();
        assert_eq!(l.capacity, 10.0);
    }
}
