//! Network model: nodes with processing capacity, directed links with
//! transmission capacity, JSON (de)serialization, the two-layer expansion used
//! by all solvers, capacity removal, and seeded random generation.
//!
//! A *computing network* is a directed graph in which every node may carry a
//! processing capacity (nodes with positive capacity are *computation nodes*)
//! and every link carries a transmission capacity. Flow from a source to a
//! destination only counts if it is processed at some computation node along
//! its route, which is what the two-layer expansion encodes: an upper copy of
//! the graph carries unprocessed flow, a lower copy carries processed flow,
//! and a cross edge at each computation node moves flow between the layers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance used for all capacity/flow/value comparisons.
pub const TOL: f64 = 1e-6;

/// Identifier of a node. Ids are arbitrary non-empty strings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub String);

impl NodeId {
    pub fn new(id: impl Into<String>) -> Self {
        NodeId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for NodeId {
    fn from(s: &str) -> Self {
        NodeId(s.to_string())
    }
}

/// Identifier of a directed link: the ordered pair of endpoint ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LinkId {
    pub from: NodeId,
    pub to: NodeId,
}

impl LinkId {
    pub fn new(from: impl Into<String>, to: impl Into<String>) -> Self {
        LinkId {
            from: NodeId::new(from),
            to: NodeId::new(to),
        }
    }
}

impl fmt::Display for LinkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.from, self.to)
    }
}

/// A removable resource: either a directed link or a node's processing capacity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Resource {
    Link { from: NodeId, to: NodeId },
    Node { id: NodeId },
}

impl Resource {
    pub fn link(from: impl Into<String>, to: impl Into<String>) -> Self {
        Resource::Link {
            from: NodeId::new(from),
            to: NodeId::new(to),
        }
    }

    pub fn node(id: impl Into<String>) -> Self {
        Resource::Node { id: NodeId::new(id) }
    }
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Resource::Link { from, to } => write!(f, "link {from}->{to}"),
            Resource::Node { id } => write!(f, "node {id}"),
        }
    }
}

/// A node with an optional processing capability.
///
/// `interdiction_cost` is the price of removing the node's full processing
/// capacity; when omitted it defaults to the capacity itself.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Node {
    pub id: NodeId,
    pub processing_capacity: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interdiction_cost: Option<f64>,
}

impl Node {
    /// Effective interdiction cost: explicit if given, else the capacity.
    pub fn cost(&self) -> f64 {
        self.interdiction_cost.unwrap_or(self.processing_capacity)
    }

    /// A node is a computation node iff its processing capacity is positive.
    pub fn is_computation(&self) -> bool {
        self.processing_capacity > 0.0
    }
}

/// A directed link with a transmission capacity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Link {
    pub from: NodeId,
    pub to: NodeId,
    pub capacity: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interdiction_cost: Option<f64>,
}

impl Link {
    pub fn cost(&self) -> f64 {
        self.interdiction_cost.unwrap_or(self.capacity)
    }

    pub fn id(&self) -> LinkId {
        LinkId {
            from: self.from.clone(),
            to: self.to.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkFile {
    nodes: Vec<Node>,
    links: Vec<Link>,
}

/// A validated computing network.
///
/// Construction always goes through validation, so any `ComputingNetwork`
/// in hand satisfies: unique non-empty node ids, link endpoints that exist,
/// no duplicate directed links, and finite non-negative capacities and costs.
#[derive(Debug, Clone, PartialEq)]
pub struct ComputingNetwork {
    nodes: Vec<Node>,
    links: Vec<Link>,
    node_index: BTreeMap<NodeId, usize>,
    link_index: BTreeMap<(NodeId, NodeId), usize>,
}

impl ComputingNetwork {
    /// Build a network from parts, validating every model invariant.
    pub fn new(nodes: Vec<Node>, links: Vec<Link>) -> Result<Self> {
        let mut node_index = BTreeMap::new();
        for (i, node) in nodes.iter().enumerate() {
            if node.id.as_str().is_empty() {
                return Err(Error::InvalidNetwork("node with empty id".into()));
            }
            if node_index.insert(node.id.clone(), i).is_some() {
                return Err(Error::InvalidNetwork(format!(
                    "duplicate node id '{}'",
                    node.id
                )));
            }
            check_capacity(&format!("node {}", node.id), node.processing_capacity)?;
            if let Some(c) = node.interdiction_cost {
                check_cost(&format!("node {}", node.id), c)?;
            }
        }
        let mut link_index = BTreeMap::new();
        for (i, link) in links.iter().enumerate() {
            for end in [&link.from, &link.to] {
                if !node_index.contains_key(end) {
                    return Err(Error::InvalidNetwork(format!(
                        "link {}->{} references unknown node '{}'",
                        link.from, link.to, end
                    )));
                }
            }
            let key = (link.from.clone(), link.to.clone());
            if link_index.insert(key, i).is_some() {
                return Err(Error::InvalidNetwork(format!(
                    "duplicate link {}->{}",
                    link.from, link.to
                )));
            }
            check_capacity(&format!("link {}->{}", link.from, link.to), link.capacity)?;
            if let Some(c) = link.interdiction_cost {
                check_cost(&format!("link {}->{}", link.from, link.to), c)?;
            }
        }
        Ok(ComputingNetwork {
            nodes,
            links,
            node_index,
            link_index,
        })
    }

    /// Parse and validate a network from its JSON representation.
    pub fn from_json(json: &str) -> Result<Self> {
        let file: NetworkFile = serde_json::from_str(json)?;
        ComputingNetwork::new(file.nodes, file.links)
    }

    /// Serialize to the canonical JSON representation (pretty-printed).
    ///
    /// `from_json(to_json(net))` reproduces the network exactly.
    pub fn to_json(&self) -> String {
        let file = NetworkFile {
            nodes: self.nodes.clone(),
            links: self.links.clone(),
        };
        serde_json::to_string_pretty(&file).expect("network serialization cannot fail")
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn node(&self, id: &NodeId) -> Option<&Node> {
        self.node_index.get(id).map(|&i| &self.nodes[i])
    }

    pub fn node_position(&self, id: &NodeId) -> Option<usize> {
        self.node_index.get(id).copied()
    }

    pub fn link(&self, from: &NodeId, to: &NodeId) -> Option<&Link> {
        self.link_index
            .get(&(from.clone(), to.clone()))
            .map(|&i| &self.links[i])
    }

    pub fn link_position(&self, id: &LinkId) -> Option<usize> {
        self.link_index
            .get(&(id.from.clone(), id.to.clone()))
            .copied()
    }

    /// Nodes with positive processing capacity.
    pub fn computation_nodes(&self) -> impl Iterator<Item = &Node> {
        self.nodes.iter().filter(|n| n.is_computation())
    }

    /// Sum of all link and processing capacities. One more than this value is
    /// used wherever an "effectively infinite" capacity is needed, which
    /// provably exceeds any feasible flow or cut in the network.
    pub fn total_capacity(&self) -> f64 {
        let links: f64 = self.links.iter().map(|l| l.capacity).sum();
        let nodes: f64 = self.nodes.iter().map(|n| n.processing_capacity).sum();
        links + nodes
    }

    /// True iff every resource's interdiction cost equals its capacity within
    /// tolerance (the regime required by the shadow-price greedy and by the
    /// enumeration oracles' pruning bound).
    pub fn costs_equal_capacities(&self) -> bool {
        self.first_cost_capacity_mismatch().is_none()
    }

    /// First resource whose cost differs from its capacity, if any.
    pub fn first_cost_capacity_mismatch(&self) -> Option<Resource> {
        for link in &self.links {
            if (link.cost() - link.capacity).abs() > TOL {
                return Some(Resource::Link {
                    from: link.from.clone(),
                    to: link.to.clone(),
                });
            }
        }
        for node in &self.nodes {
            if (node.cost() - node.processing_capacity).abs() > TOL {
                return Some(Resource::Node { id: node.id.clone() });
            }
        }
        None
    }

    /// Apply a (possibly fractional) removal: each listed link keeps
    /// `1 - z` of its capacity and each listed node keeps `1 - z` of its
    /// processing capacity. Links and nodes that reach zero stay in the
    /// network with capacity 0.
    ///
    /// Explicit interdiction costs are preserved unchanged; costs that were
    /// defaulted continue to track the (now reduced) capacity.
    pub fn apply_removal(&self, removal: &RemovalSpec) -> Result<ComputingNetwork> {
        let mut net = self.clone();
        for (resource, &fraction) in &removal.fractions {
            if !(-TOL..=1.0 + TOL).contains(&fraction) || !fraction.is_finite() {
                return Err(Error::InvalidFraction {
                    resource: resource.to_string(),
                    fraction,
                });
            }
            let keep = (1.0 - fraction).clamp(0.0, 1.0);
            match resource {
                Resource::Link { from, to } => {
                    let idx = net
                        .link_index
                        .get(&(from.clone(), to.clone()))
                        .copied()
                        .ok_or_else(|| Error::UnknownLink(format!("{from}->{to}")))?;
                    net.links[idx].capacity *= keep;
                }
                Resource::Node { id } => {
                    let idx = net
                        .node_index
                        .get(id)
                        .copied()
                        .ok_or_else(|| Error::UnknownNode(id.to_string()))?;
                    net.nodes[idx].processing_capacity *= keep;
                }
            }
        }
        Ok(net)
    }

    /// Build the two-layer expansion for a source/destination pair.
    pub fn build_layered(&self, source: &NodeId, dest: &NodeId) -> Result<LayeredGraph> {
        if self.node(source).is_none() {
            return Err(Error::UnknownNode(source.to_string()));
        }
        if self.node(dest).is_none() {
            return Err(Error::UnknownNode(dest.to_string()));
        }
        if source == dest {
            return Err(Error::SourceEqualsDest(source.to_string()));
        }
        let n = self.nodes.len();
        let s_idx = self.node_index[source];
        let t_idx = self.node_index[dest];
        let mut edges = Vec::with_capacity(2 * self.links.len() + n + 1);
        for (li, link) in self.links.iter().enumerate() {
            let u = self.node_index[&link.from];
            let v = self.node_index[&link.to];
            edges.push(LayeredEdge {
                tail: u,
                head: v,
                capacity: link.capacity,
                kind: LayeredEdgeKind::UpperLink(li),
            });
            edges.push(LayeredEdge {
                tail: n + u,
                head: n + v,
                capacity: link.capacity,
                kind: LayeredEdgeKind::LowerLink(li),
            });
        }
        for (ni, node) in self.nodes.iter().enumerate() {
            if node.is_computation() {
                edges.push(LayeredEdge {
                    tail: ni,
                    head: n + ni,
                    capacity: node.processing_capacity,
                    kind: LayeredEdgeKind::Process(ni),
                });
            }
        }
        // The return arc closes the circulation so that plain conservation
        // holds at every layered node, including the source and sink. Its
        // capacity exceeds the sum of all capacities, so it never binds.
        let return_capacity = self.total_capacity() + 1.0;
        let return_edge = edges.len();
        edges.push(LayeredEdge {
            tail: n + t_idx,
            head: s_idx,
            capacity: return_capacity,
            kind: LayeredEdgeKind::Return,
        });
        Ok(LayeredGraph {
            network_nodes: self.nodes.iter().map(|nd| nd.id.clone()).collect(),
            edges,
            source: s_idx,
            sink: n + t_idx,
            return_edge,
            n,
        })
    }

    /// Seeded random network over an undirected edge list: every undirected
    /// edge becomes two directed links with independently drawn capacities.
    pub fn gen_random(spec: &RandomNetworkSpec) -> Result<ComputingNetwork> {
        spec.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        let mut ids: BTreeSet<&str> = BTreeSet::new();
        for (a, b) in &spec.undirected_edges {
            ids.insert(a.as_str());
            ids.insert(b.as_str());
        }
        // Draw order is fixed (sorted nodes, then edges in input order) so a
        // given seed always produces the same network byte for byte.
        let mut nodes = Vec::new();
        for id in &ids {
            let capacity = draw(&mut rng, spec.node_capacity);
            let interdiction_cost = match spec.cost_mode {
                CostMode::EqualsCapacity => None,
                CostMode::Independent {
                    node_cost: range, ..
                } => Some(draw(&mut rng, range)),
            };
            nodes.push(Node {
                id: NodeId::new(*id),
                processing_capacity: capacity,
                interdiction_cost,
            });
        }
        let mut seen = BTreeSet::new();
        let mut links = Vec::new();
        for (a, b) in &spec.undirected_edges {
            if a == b {
                return Err(Error::InvalidRange(format!("self-loop edge '{a}'")));
            }
            let key = if a < b { (a, b) } else { (b, a) };
            if !seen.insert(key) {
                return Err(Error::InvalidRange(format!("duplicate edge {a}-{b}")));
            }
            for (from, to) in [(a, b), (b, a)] {
                let capacity = draw(&mut rng, spec.link_capacity);
                let interdiction_cost = match spec.cost_mode {
                    CostMode::EqualsCapacity => None,
                    CostMode::Independent {
                        link_cost: range, ..
                    } => Some(draw(&mut rng, range)),
                };
                links.push(Link {
                    from: NodeId::new(from.clone()),
                    to: NodeId::new(to.clone()),
                    capacity,
                    interdiction_cost,
                });
            }
        }
        ComputingNetwork::new(nodes, links)
    }
}

fn check_capacity(what: &str, value: f64) -> Result<()> {
    if !value.is_finite() || value < 0.0 {
        return Err(Error::InvalidNetwork(format!(
            "{what} has invalid capacity {value}: must be finite and >= 0"
        )));
    }
    Ok(())
}

fn check_cost(what: &str, value: f64) -> Result<()> {
    if !value.is_finite() || value < 0.0 {
        return Err(Error::InvalidNetwork(format!(
            "{what} has invalid interdiction cost {value}: must be finite and >= 0"
        )));
    }
    Ok(())
}

fn draw(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    if hi > lo {
        rng.gen_range(lo..hi)
    } else {
        lo
    }
}

/// Convenience builder for hand-constructed networks (fixtures, tests).
#[derive(Debug, Default)]
pub struct NetworkBuilder {
    nodes: Vec<Node>,
    links: Vec<Link>,
}

impl NetworkBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add a node with the given processing capacity (0 = forwarding only).
    pub fn node(mut self, id: &str, processing_capacity: f64) -> Self {
        self.nodes.push(Node {
            id: NodeId::new(id),
            processing_capacity,
            interdiction_cost: None,
        });
        self
    }

    pub fn node_with_cost(mut self, id: &str, processing_capacity: f64, cost: f64) -> Self {
        self.nodes.push(Node {
            id: NodeId::new(id),
            processing_capacity,
            interdiction_cost: Some(cost),
        });
        self
    }

    pub fn link(mut self, from: &str, to: &str, capacity: f64) -> Self {
        self.links.push(Link {
            from: NodeId::new(from),
            to: NodeId::new(to),
            capacity,
            interdiction_cost: None,
        });
        self
    }

    pub fn link_with_cost(mut self, from: &str, to: &str, capacity: f64, cost: f64) -> Self {
        self.links.push(Link {
            from: NodeId::new(from),
            to: NodeId::new(to),
            capacity,
            interdiction_cost: Some(cost),
        });
        self
    }

    /// Add both directions of an undirected edge with the same capacity.
    pub fn bilink(self, a: &str, b: &str, capacity: f64) -> Self {
        self.link(a, b, capacity).link(b, a, capacity)
    }

    pub fn build(self) -> Result<ComputingNetwork> {
        ComputingNetwork::new(self.nodes, self.links)
    }
}

/// Cost mode for random network generation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CostMode {
    /// Interdiction costs are left implicit (cost = capacity).
    EqualsCapacity,
    /// Costs drawn independently of capacities, from their own ranges.
    Independent {
        link_cost: (f64, f64),
        node_cost: (f64, f64),
    },
}

/// Specification for [`ComputingNetwork::gen_random`].
#[derive(Debug, Clone)]
pub struct RandomNetworkSpec {
    /// Undirected edges; each becomes two directed links.
    pub undirected_edges: Vec<(String, String)>,
    /// Uniform range for directed link capacities.
    pub link_capacity: (f64, f64),
    /// Uniform range for node processing capacities.
    pub node_capacity: (f64, f64),
    pub cost_mode: CostMode,
    pub seed: u64,
}

impl RandomNetworkSpec {
    fn validate(&self) -> Result<()> {
        if self.undirected_edges.is_empty() {
            return Err(Error::InvalidRange("empty edge list".into()));
        }
        for (name, (lo, hi)) in [
            ("link capacity", self.link_capacity),
            ("node capacity", self.node_capacity),
        ] {
            check_range(name, lo, hi)?;
        }
        if let CostMode::Independent {
            link_cost,
            node_cost,
        } = self.cost_mode
        {
            check_range("link cost", link_cost.0, link_cost.1)?;
            check_range("node cost", node_cost.0, node_cost.1)?;
        }
        Ok(())
    }
}

fn check_range(name: &str, lo: f64, hi: f64) -> Result<()> {
    if !lo.is_finite() || !hi.is_finite() || lo < 0.0 || hi < lo {
        return Err(Error::InvalidRange(format!("{name} range ({lo}, {hi})")));
    }
    Ok(())
}

/// A (possibly fractional) removal of resources: resource -> fraction z in [0, 1].
/// Binary removals use z = 1 throughout.
///
/// Serializes as a list of `{kind, ..., fraction}` entries so the JSON form
/// has no non-string map keys.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<RemovalEntry>", into = "Vec<RemovalEntry>")]
pub struct RemovalSpec {
    pub fractions: BTreeMap<Resource, f64>,
}

/// Wire format for one [`RemovalSpec`] entry.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct RemovalEntry {
    #[serde(flatten)]
    resource: Resource,
    fraction: f64,
}

impl From<Vec<RemovalEntry>> for RemovalSpec {
    fn from(entries: Vec<RemovalEntry>) -> Self {
        let mut spec = RemovalSpec::new();
        for e in entries {
            spec.fractions.insert(e.resource, e.fraction);
        }
        spec
    }
}

impl From<RemovalSpec> for Vec<RemovalEntry> {
    fn from(spec: RemovalSpec) -> Self {
        spec.fractions
            .into_iter()
            .map(|(resource, fraction)| RemovalEntry { resource, fraction })
            .collect()
    }
}

impl RemovalSpec {
    pub fn new() -> Self {
        Self::default()
    }

    /// Binary removal of the listed resources (z = 1 each).
    pub fn full(resources: impl IntoIterator<Item = Resource>) -> Self {
        let mut spec = RemovalSpec::new();
        for r in resources {
            spec.fractions.insert(r, 1.0);
        }
        spec
    }

    /// Add `fraction` to the removal of `resource`, clamped at full removal.
    pub fn add(&mut self, resource: Resource, fraction: f64) {
        let entry = self.fractions.entry(resource).or_insert(0.0);
        *entry = (*entry + fraction).min(1.0);
    }

    pub fn is_empty(&self) -> bool {
        self.fractions.is_empty()
    }

    /// Removal fraction recorded for `resource` (0 when absent).
    pub fn fraction(&self, resource: &Resource) -> f64 {
        self.fractions.get(resource).copied().unwrap_or(0.0)
    }

    /// True iff every fraction is 0 or 1 within tolerance.
    pub fn is_binary(&self) -> bool {
        self.fractions
            .values()
            .all(|&z| z.abs() <= TOL || (z - 1.0).abs() <= TOL)
    }
}

/// Which layer of the two-layer expansion a node or link copy lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Layer {
    /// Carries flow that has not been processed yet.
    Upper,
    /// Carries flow after processing.
    Lower,
}

/// Role of an edge in the two-layer expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayeredEdgeKind {
    /// Copy of link `i` in the upper (unprocessed) layer.
    UpperLink(usize),
    /// Copy of link `i` in the lower (processed) layer.
    LowerLink(usize),
    /// Cross edge of computation node `i`, capacity = processing capacity.
    Process(usize),
    /// The sink-to-source arc that closes the circulation.
    Return,
}

/// An edge of the two-layer expansion. `tail`/`head` index layered nodes:
/// `0..n` are the upper copies of the network's nodes (in network order),
/// `n..2n` the lower copies.
#[derive(Debug, Clone)]
pub struct LayeredEdge {
    pub tail: usize,
    pub head: usize,
    pub capacity: f64,
    pub kind: LayeredEdgeKind,
}

/// The two-layer expansion of a network for a fixed source/destination pair.
#[derive(Debug, Clone)]
pub struct LayeredGraph {
    network_nodes: Vec<NodeId>,
    pub edges: Vec<LayeredEdge>,
    /// Layered index of the source (upper copy).
    pub source: usize,
    /// Layered index of the destination (lower copy).
    pub sink: usize,
    /// Index into `edges` of the return arc.
    pub return_edge: usize,
    n: usize,
}

impl LayeredGraph {
    /// Number of layered nodes (two per network node).
    pub fn node_count(&self) -> usize {
        2 * self.n
    }

    /// Number of nodes in the underlying network.
    pub fn network_node_count(&self) -> usize {
        self.n
    }

    /// The network-level node underlying a layered node, and its layer.
    pub fn describe(&self, layered: usize) -> (&NodeId, Layer) {
        if layered < self.n {
            (&self.network_nodes[layered], Layer::Upper)
        } else {
            (&self.network_nodes[layered - self.n], Layer::Lower)
        }
    }

    /// Human-readable label: upper copies print as the node id, lower copies
    /// with a prime suffix.
    pub fn label(&self, layered: usize) -> String {
        let (id, layer) = self.describe(layered);
        match layer {
            Layer::Upper => id.to_string(),
            Layer::Lower => format!("{id}'"),
        }
    }

    /// Layered index of a network node position in the given layer.
    pub fn layered_index(&self, node_pos: usize, layer: Layer) -> usize {
        match layer {
            Layer::Upper => node_pos,
            Layer::Lower => self.n + node_pos,
        }
    }

    /// Map a network-level cut (links and nodes) to the set of layered edges
    /// whose removal disconnects the layered source from the layered sink:
    /// both copies of every cut link plus the cross edge of every cut node.
    pub fn map_cut_to_layered(
        &self,
        net: &ComputingNetwork,
        links: &[LinkId],
        nodes: &[NodeId],
    ) -> Result<Vec<usize>> {
        let mut link_set = vec![false; net.links().len()];
        for link in links {
            let idx = net
                .link_position(link)
                .ok_or_else(|| Error::UnknownLink(link.to_string()))?;
            link_set[idx] = true;
        }
        let mut node_set = vec![false; net.nodes().len()];
        for node in nodes {
            let idx = net
                .node_position(node)
                .ok_or_else(|| Error::UnknownNode(node.to_string()))?;
            node_set[idx] = true;
        }
        let mut out = Vec::new();
        for (ei, edge) in self.edges.iter().enumerate() {
            let cut = match edge.kind {
                LayeredEdgeKind::UpperLink(i) | LayeredEdgeKind::LowerLink(i) => link_set[i],
                LayeredEdgeKind::Process(i) => node_set[i],
                LayeredEdgeKind::Return => false,
            };
            if cut {
                out.push(ei);
            }
        }
        Ok(out)
    }

    /// Layered nodes reachable from the source over positive-capacity edges
    /// not listed in `removed_edges` (the return arc is never taken).
    pub fn reachable_with_removed(&self, removed_edges: &[usize]) -> Vec<bool> {
        let mut removed = vec![false; self.edges.len()];
        for &e in removed_edges {
            removed[e] = true;
        }
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.node_count()];
        for (ei, edge) in self.edges.iter().enumerate() {
            if !removed[ei] && edge.capacity > 0.0 && !matches!(edge.kind, LayeredEdgeKind::Return)
            {
                adj[edge.tail].push(edge.head);
            }
        }
        let mut seen = vec![false; self.node_count()];
        let mut stack = vec![self.source];
        seen[self.source] = true;
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

    /// True iff the sink is still reachable from the source after the
    /// removal — exactly "a computation path able to carry flow exists".
    pub fn connects_with_removed(&self, removed_edges: &[usize]) -> bool {
        self.reachable_with_removed(removed_edges)[self.sink]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_path_net() -> ComputingNetwork {
        NetworkBuilder::new()
            .node("s", 0.0)
            .node("u", 1.0)
            .node("t", 0.0)
            .link("s", "u", 2.0)
            .link("u", "t", 2.0)
            .build()
            .unwrap()
    }

    #[test]
    fn json_round_trip_is_identity() {
        let net = NetworkBuilder::new()
            .node("s", 0.0)
            .node_with_cost("u", 1.5, 0.75)
            .node("t", 0.0)
            .link("s", "u", 2.0)
            .link_with_cost("u", "t", 3.0, 1.25)
            .build()
            .unwrap();
        let json = net.to_json();
        let back = ComputingNetwork::from_json(&json).unwrap();
        assert_eq!(net, back);
    }

    #[test]
    fn load_rejects_dangling_endpoint() {
        let json = r#"{
            "nodes": [{"id": "s", "processing_capacity": 0}],
            "links": [{"from": "s", "to": "ghost", "capacity": 1}]
        }"#;
        let err = ComputingNetwork::from_json(json).unwrap_err();
        assert!(err.to_string().contains("ghost"), "got: {err}");
    }

    #[test]
    fn load_rejects_duplicate_link() {
        let json = r#"{
            "nodes": [{"id": "a", "processing_capacity": 0}, {"id": "b", "processing_capacity": 0}],
            "links": [
                {"from": "a", "to": "b", "capacity": 1},
                {"from": "a", "to": "b", "capacity": 2}
            ]
        }"#;
        let err = ComputingNetwork::from_json(json).unwrap_err();
        assert!(err.to_string().contains("duplicate link"), "got: {err}");
    }

    #[test]
    fn load_rejects_negative_capacity() {
        let json = r#"{
            "nodes": [{"id": "a", "processing_capacity": -1}],
            "links": []
        }"#;
        assert!(ComputingNetwork::from_json(json).is_err());
    }

    #[test]
    fn load_rejects_unknown_field() {
        let json = r#"{
            "nodes": [{"id": "a", "processing_capacity": 0, "capactiy": 3}],
            "links": []
        }"#;
        let err = ComputingNetwork::from_json(json).unwrap_err();
        assert!(err.to_string().contains("capactiy"), "got: {err}");
    }

    #[test]
    fn omitted_cost_defaults_to_capacity() {
        let net = two_path_net();
        let u = net.node(&NodeId::from("u")).unwrap();
        assert_eq!(u.cost(), 1.0);
        let l = net
            .link(&NodeId::from("s"), &NodeId::from("u"))
            .unwrap();
        assert_eq!(l.cost(), 2.0);
    }

    #[test]
    fn layered_has_expected_shape() {
        let net = two_path_net();
        let layered = net
            .build_layered(&NodeId::from("s"), &NodeId::from("t"))
            .unwrap();
        // 2 links x 2 layers + 1 cross + 1 return arc.
        assert_eq!(layered.edges.len(), 6);
        assert_eq!(layered.node_count(), 6);
        let ret = &layered.edges[layered.return_edge];
        assert_eq!(ret.capacity, net.total_capacity() + 1.0);
        assert_eq!(ret.tail, layered.sink);
        assert_eq!(ret.head, layered.source);
        // Exactly one cross edge, for the single computation node.
        let crosses = layered
            .edges
            .iter()
            .filter(|e| matches!(e.kind, LayeredEdgeKind::Process(_)))
            .count();
        assert_eq!(crosses, 1);
    }

    #[test]
    fn layered_rejects_same_endpoints() {
        let net = two_path_net();
        let err = net
            .build_layered(&NodeId::from("s"), &NodeId::from("s"))
            .unwrap_err();
        assert!(matches!(err, Error::SourceEqualsDest(_)));
    }

    #[test]
    fn apply_removal_scales_and_keeps_zeroed_links() {
        let net = two_path_net();
        let mut spec = RemovalSpec::new();
        spec.add(Resource::link("s", "u"), 1.0);
        spec.add(Resource::node("u"), 0.5);
        let reduced = net.apply_removal(&spec).unwrap();
        assert_eq!(reduced.links().len(), net.links().len());
        let l = reduced
            .link(&NodeId::from("s"), &NodeId::from("u"))
            .unwrap();
        assert_eq!(l.capacity, 0.0);
        let u = reduced.node(&NodeId::from("u")).unwrap();
        assert!((u.processing_capacity - 0.5).abs() < TOL);
    }

    #[test]
    fn removal_spec_json_round_trip() {
        let mut spec = RemovalSpec::new();
        spec.add(Resource::link("s", "u"), 0.25);
        spec.add(Resource::node("u"), 1.0);
        let json = serde_json::to_string(&spec).unwrap();
        assert!(json.contains("\"fraction\":0.25"));
        assert!(json.contains("\"kind\":\"node\""));
        let back: RemovalSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn apply_removal_rejects_bad_fraction() {
        let net = two_path_net();
        let mut spec = RemovalSpec::new();
        spec.fractions.insert(Resource::link("s", "u"), 1.5);
        assert!(matches!(
            net.apply_removal(&spec),
            Err(Error::InvalidFraction { .. })
        ));
    }

    #[test]
    fn apply_removal_rejects_unknown_resource() {
        let net = two_path_net();
        let mut spec = RemovalSpec::new();
        spec.add(Resource::link("u", "s"), 1.0);
        assert!(matches!(
            net.apply_removal(&spec),
            Err(Error::UnknownLink(_))
        ));
    }

    #[test]
    fn map_cut_covers_both_copies_and_cross_edges() {
        let net = two_path_net();
        let layered = net
            .build_layered(&NodeId::from("s"), &NodeId::from("t"))
            .unwrap();
        let cut_links = vec![LinkId::new("s", "u")];
        let cut_nodes = vec![NodeId::from("u")];
        let edges = layered
            .map_cut_to_layered(&net, &cut_links, &cut_nodes)
            .unwrap();
        assert_eq!(edges.len(), 3); // upper + lower copy + cross edge
        assert!(!layered.connects_with_removed(&edges));
    }

    #[test]
    fn gen_random_is_deterministic_per_seed() {
        let spec = RandomNetworkSpec {
            undirected_edges: vec![("a".into(), "b".into()), ("b".into(), "c".into())],
            link_capacity: (0.0, 1.0),
            node_capacity: (0.0, 0.1),
            cost_mode: CostMode::EqualsCapacity,
            seed: 42,
        };
        let n1 = ComputingNetwork::gen_random(&spec).unwrap();
        let n2 = ComputingNetwork::gen_random(&spec).unwrap();
        assert_eq!(n1.to_json(), n2.to_json());
        assert_eq!(n1.links().len(), 4);
        assert_eq!(n1.nodes().len(), 3);
        let spec3 = RandomNetworkSpec { seed: 43, ..spec };
        let n3 = ComputingNetwork::gen_random(&spec3).unwrap();
        assert_ne!(n1.to_json(), n3.to_json());
    }

    #[test]
    fn gen_random_rejects_inverted_range() {
        let spec = RandomNetworkSpec {
            undirected_edges: vec![("a".into(), "b".into())],
            link_capacity: (1.0, 0.5),
            node_capacity: (0.0, 0.1),
            cost_mode: CostMode::EqualsCapacity,
            seed: 1,
        };
        assert!(matches!(
            ComputingNetwork::gen_random(&spec),
            Err(Error::InvalidRange(_))
        ));
    }
}
