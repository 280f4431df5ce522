//! Named benchmark networks with frozen expected values.
//!
//! Each fixture bundles a network, a source/destination pair, and a list of
//! expectations — metric, value, and a basis tag saying how the value was
//! obtained (`stated` by the scenario the fixture reproduces, `derived` by
//! independent analysis, `trivial` by inspection). Integration tests sweep
//! every expectation through the real solvers; the fixture files double as
//! CLI inputs via `--fixture NAME` or the exported JSON.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cuts::{self, CutMode};
use crate::error::{Error, Result};
use crate::flow;
use crate::interdict::{self, InterdictionMode, Method};
use crate::lp::SolverLimits;
use crate::model::{ComputingNetwork, NetworkBuilder, NodeId};
use crate::testkit::x3c;

/// How an expected value was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// Given with the scenario the fixture reproduces.
    Stated,
    /// Worked out independently for this network.
    Derived,
    /// Immediate from the topology.
    Trivial,
}

/// The measurable quantity an expectation pins down.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExpectedMetric {
    /// Maximum processed flow from source to destination.
    MaxFlow,
    /// Exact minimum cut value in the given mode.
    MinCut { mode: CutMode },
    /// Residual flow after an optimal whole-resource interdiction.
    ResidualExactBinary { budget: f64 },
    /// Residual flow after an optimal fractional attack, by the
    /// cut-enumeration oracle.
    ResidualPartialOracle { budget: f64 },
}

/// One frozen expected value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Expectation {
    #[serde(flatten)]
    pub metric: ExpectedMetric,
    pub value: f64,
    pub basis: Basis,
}

/// A named network with its expectations.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub network: ComputingNetwork,
    pub source: NodeId,
    pub dest: NodeId,
    pub expected: Vec<Expectation>,
}

impl Fixture {
    /// Compute the quantity an expectation refers to, using the real
    /// solvers (never the frozen value).
    pub fn evaluate(&self, metric: &ExpectedMetric, limits: &SolverLimits) -> Result<f64> {
        evaluate_metric(&self.network, &self.source, &self.dest, metric, limits)
    }
}

/// Compute a metric on a network with the production solvers.
pub fn evaluate_metric(
    net: &ComputingNetwork,
    source: &NodeId,
    dest: &NodeId,
    metric: &ExpectedMetric,
    limits: &SolverLimits,
) -> Result<f64> {
    match metric {
        ExpectedMetric::MaxFlow => Ok(flow::max_flow(net, source, dest, limits)?.value),
        ExpectedMetric::MinCut { mode } => {
            let cut = match mode {
                CutMode::Communication => cuts::min_comm_cut_exact(net, source, dest, limits)?,
                CutMode::Computation => cuts::min_comp_cut_exact(net, source, dest, limits)?,
                CutMode::Joint => cuts::min_joint_cut_exact(net, source, dest, limits)?,
            };
            Ok(cut.value)
        }
        ExpectedMetric::ResidualExactBinary { budget } => Ok(interdict::solve_with_method(
            net,
            source,
            dest,
            *budget,
            Method::Exact,
            InterdictionMode::Binary,
            limits,
        )?
        .residual_flow),
        ExpectedMetric::ResidualPartialOracle { budget } => Ok(interdict::solve_with_method(
            net,
            source,
            dest,
            *budget,
            Method::Oracle,
            InterdictionMode::Partial,
            limits,
        )?
        .residual_flow),
    }
}

/// All named fixtures, in a stable order.
pub fn fixtures() -> Vec<Fixture> {
    vec![
        fig1(),
        fig3(),
        fig4(),
        fig34(),
        fig5(),
        fig5v(),
        fig6(),
        abilene_fixture(),
        x3c_fixture(),
    ]
}

/// Look up a fixture by name.
pub fn fixture(name: &str) -> Result<Fixture> {
    fixtures()
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| {
            let known: Vec<&str> = fixtures().iter().map(|f| f.name).collect();
            Error::Unsupported(format!(
                "no fixture named '{name}' (available: {})",
                known.join(", ")
            ))
        })
}

fn expect(metric: ExpectedMetric, value: f64, basis: Basis) -> Expectation {
    Expectation {
        metric,
        value,
        basis,
    }
}

fn min_cut(mode: CutMode, value: f64, basis: Basis) -> Expectation {
    expect(ExpectedMetric::MinCut { mode }, value, basis)
}

fn fig1() -> Fixture {
    let network = NetworkBuilder::new()
        .node("s", 0.0)
        .node("u1", 1.0)
        .node("v1", 1.0)
        .node("u2", 1.0)
        .node("v2", 1.0)
        .node("t", 0.0)
        .link("s", "u1", 2.0)
        .link("u1", "v1", 2.0)
        .link("v1", "t", 2.0)
        .link("s", "u2", 2.0)
        .link("u2", "v2", 2.0)
        .link("v2", "t", 2.0)
        .build()
        .expect("fig1 network is valid");
    Fixture {
        name: "fig1",
        description: "Two disjoint three-hop routes, each with two unit \
                      computation nodes; both routes fill completely.",
        network,
        source: NodeId::from("s"),
        dest: NodeId::from("t"),
        expected: vec![
            expect(ExpectedMetric::MaxFlow, 4.0, Basis::Stated),
            min_cut(CutMode::Communication, 4.0, Basis::Derived),
            min_cut(CutMode::Computation, 4.0, Basis::Derived),
            min_cut(CutMode::Joint, 4.0, Basis::Derived),
        ],
    }
}

fn fig3() -> Fixture {
    let network = NetworkBuilder::new()
        .node("s", 0.0)
        .node("u1", 1.0)
        .node("u2", 1.0)
        .node("t", 0.0)
        .link("s", "u1", 5.0)
        .link("u1", "t", 5.0)
        .link("s", "u2", 5.0)
        .link("u2", "t", 5.0)
        .build()
        .expect("fig3 network is valid");
    Fixture {
        name: "fig3",
        description: "Two wide parallel routes throttled by unit computation \
                      nodes: links are cheap to keep but dear to cut.",
        network,
        source: NodeId::from("s"),
        dest: NodeId::from("t"),
        expected: vec![
            expect(ExpectedMetric::MaxFlow, 2.0, Basis::Stated),
            min_cut(CutMode::Communication, 10.0, Basis::Stated),
            min_cut(CutMode::Joint, 2.0, Basis::Stated),
            min_cut(CutMode::Computation, 2.0, Basis::Derived),
        ],
    }
}

fn fig4() -> Fixture {
    let network = NetworkBuilder::new()
        .node("s", 0.0)
        .node("u", 10.0)
        .node("v", 10.0)
        .node("t", 0.0)
        .link("s", "u", 1.0)
        .link("u", "v", 1.0)
        .link("v", "t", 1.0)
        .build()
        .expect("fig4 network is valid");
    Fixture {
        name: "fig4",
        description: "One thin route through two heavyweight computation \
                      nodes: the mirror image of fig3.",
        network,
        source: NodeId::from("s"),
        dest: NodeId::from("t"),
        expected: vec![
            expect(ExpectedMetric::MaxFlow, 1.0, Basis::Stated),
            min_cut(CutMode::Computation, 20.0, Basis::Stated),
            min_cut(CutMode::Joint, 1.0, Basis::Stated),
            min_cut(CutMode::Communication, 1.0, Basis::Derived),
        ],
    }
}

fn fig34() -> Fixture {
    let network = NetworkBuilder::new()
        .node("s", 0.0)
        .node("u1", 1.0)
        .node("u2", 1.0)
        .node("u", 10.0)
        .node("v", 10.0)
        .node("t", 0.0)
        .link("s", "u1", 5.0)
        .link("u1", "t", 5.0)
        .link("s", "u2", 5.0)
        .link("u2", "t", 5.0)
        .link("s", "u", 1.0)
        .link("u", "v", 1.0)
        .link("v", "t", 1.0)
        .build()
        .expect("fig34 network is valid");
    Fixture {
        name: "fig34",
        description: "fig3 and fig4 in parallel between shared endpoints; \
                      the joint cut mixes nodes from one part with a link \
                      from the other.",
        network,
        source: NodeId::from("s"),
        dest: NodeId::from("t"),
        expected: vec![
            min_cut(CutMode::Joint, 3.0, Basis::Stated),
            min_cut(CutMode::Communication, 11.0, Basis::Stated),
            min_cut(CutMode::Computation, 22.0, Basis::Stated),
            expect(ExpectedMetric::MaxFlow, 3.0, Basis::Derived),
        ],
    }
}

fn fig5_network(processing: f64) -> ComputingNetwork {
    NetworkBuilder::new()
        .node("s", 0.0)
        .node("t", 0.0)
        .node("v", processing)
        .link("s", "t", 2.0)
        .link("t", "v", 2.0)
        .link("v", "s", 2.0)
        .build()
        .expect("cycle network is valid")
}

fn fig5() -> Fixture {
    Fixture {
        name: "fig5",
        description: "A three-node cycle where the only computation node sits \
                      behind the destination, so flow crosses the (s,t) link \
                      twice — once raw, once processed.",
        network: fig5_network(2.0),
        source: NodeId::from("s"),
        dest: NodeId::from("t"),
        expected: vec![
            expect(ExpectedMetric::MaxFlow, 1.0, Basis::Stated),
            min_cut(CutMode::Joint, 2.0, Basis::Stated),
            min_cut(CutMode::Communication, 2.0, Basis::Derived),
            min_cut(CutMode::Computation, 2.0, Basis::Derived),
        ],
    }
}

fn fig5v() -> Fixture {
    Fixture {
        name: "fig5v",
        description: "The fig5 cycle with computation capacity 1.5: the node \
                      becomes the cheapest joint cut while the flow, which \
                      never saturates it, is unchanged.",
        network: fig5_network(1.5),
        source: NodeId::from("s"),
        dest: NodeId::from("t"),
        expected: vec![
            min_cut(CutMode::Joint, 1.5, Basis::Stated),
            expect(ExpectedMetric::MaxFlow, 1.0, Basis::Derived),
        ],
    }
}

fn fig6() -> Fixture {
    let mut b = NetworkBuilder::new()
        .node("s", 0.0)
        .node("u", 0.0)
        .node("t", 0.0)
        .link("s", "u", 1.0)
        .link("u", "t", 1.5);
    for i in 1..=4 {
        let w = format!("w{i}");
        b = b.node(&w, 0.0).link("s", &w, 0.25).link(&w, "u", 0.25);
    }
    for j in 1..=6 {
        let v = format!("v{j}");
        b = b.node(&v, 0.25).link("u", &v, 0.25).link(&v, "s", 0.25);
    }
    let network = b.build().expect("fig6 network is valid");

    // Optimal residual flow after an attack with budget B, on the quarter
    // grid: the entry links give 1 - B/2 (each unit of budget removes half
    // a unit of flow, since flow crosses the source twice), the computation
    // pool and the exit link give 1.5 - B, and the adversary takes the
    // lower envelope, clamped at zero.
    let grid: Vec<(f64, f64)> = (0..=6)
        .map(|i| {
            let b = 0.25 * i as f64;
            (b, (1.0 - 0.5 * b).min(1.5 - b).max(0.0))
        })
        .collect();
    let mut expected = vec![
        expect(ExpectedMetric::MaxFlow, 1.0, Basis::Stated),
        min_cut(CutMode::Joint, 1.5, Basis::Stated),
    ];
    for &(budget, value) in &grid {
        let basis = if budget == 0.0 {
            Basis::Trivial
        } else {
            Basis::Stated
        };
        expected.push(expect(
            ExpectedMetric::ResidualExactBinary { budget },
            value,
            basis,
        ));
    }
    for &(budget, value) in &grid {
        let basis = if budget == 0.0 {
            Basis::Trivial
        } else {
            Basis::Stated
        };
        expected.push(expect(
            ExpectedMetric::ResidualPartialOracle { budget },
            value,
            basis,
        ));
    }
    Fixture {
        name: "fig6",
        description: "A ring of quarter-capacity feeders and computation \
                      nodes around a central relay; optimal attacks trace \
                      the lower envelope of two linear budget responses.",
        network,
        source: NodeId::from("s"),
        dest: NodeId::from("t"),
        expected,
    }
}

/// The 14 undirected edges of the reference backbone topology, as pairs of
/// node labels "1".."11".
pub fn abilene_edges() -> &'static [(&'static str, &'static str)] {
    &[
        ("1", "11"),
        ("1", "9"),
        ("11", "10"),
        ("11", "9"),
        ("10", "7"),
        ("9", "8"),
        ("8", "7"),
        ("8", "6"),
        ("7", "5"),
        ("6", "2"),
        ("6", "5"),
        ("5", "4"),
        ("2", "3"),
        ("3", "4"),
    ]
}

/// The reference backbone with unit-capacity links in both directions and
/// the given processing capacities (all other nodes forward only).
pub fn abilene_network(processing: &[(&str, f64)]) -> ComputingNetwork {
    let mut b = NetworkBuilder::new();
    for i in 1..=11 {
        let id = i.to_string();
        let cap = processing
            .iter()
            .find(|(n, _)| *n == id)
            .map_or(0.0, |&(_, c)| c);
        b = b.node(&id, cap);
    }
    for &(x, y) in abilene_edges() {
        b = b.bilink(x, y, 1.0);
    }
    b.build().expect("backbone network is valid")
}

fn abilene_fixture() -> Fixture {
    Fixture {
        name: "abilene",
        description: "An 11-node backbone with unit links and two half-unit \
                      computation nodes; total processing, not bandwidth, \
                      caps the flow.",
        network: abilene_network(&[("6", 0.5), ("11", 0.5)]),
        source: NodeId::from("8"),
        dest: NodeId::from("7"),
        expected: vec![
            expect(ExpectedMetric::MaxFlow, 1.0, Basis::Derived),
            min_cut(CutMode::Computation, 1.0, Basis::Derived),
        ],
    }
}

fn x3c_fixture() -> Fixture {
    let inst = x3c::worked_instance();
    let (network, source, dest) =
        x3c::build_x3c_reduction(&inst).expect("worked instance reduces cleanly");
    Fixture {
        name: "x3c",
        description: "Set-cover reduction gadget for the worked 6-element, \
                      3-triple instance: the minimum communication cut of 5 \
                      witnesses its exact cover.",
        network,
        source,
        dest,
        expected: vec![min_cut(CutMode::Communication, 5.0, Basis::Stated)],
    }
}

/// Manifest describing the exported fixture files.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FixtureManifest {
    pub fixtures: Vec<ManifestEntry>,
}

/// One fixture's row in the manifest.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    /// Topology file, relative to the manifest.
    pub file: String,
    pub source: String,
    pub dest: String,
    pub description: String,
    pub expected: Vec<Expectation>,
}

/// The manifest for the current fixture set.
pub fn manifest() -> FixtureManifest {
    FixtureManifest {
        fixtures: fixtures()
            .into_iter()
            .map(|f| ManifestEntry {
                name: f.name.to_string(),
                file: format!("{}.json", f.name),
                source: f.source.to_string(),
                dest: f.dest.to_string(),
                description: normalize_ws(f.description),
                expected: f.expected,
            })
            .collect(),
    }
}

/// Write every fixture's topology plus `manifest.json` into `dir`.
pub fn export_fixtures(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    for f in fixtures() {
        let path = dir.join(format!("{}.json", f.name));
        let mut text = f.network.to_json();
        text.push('\n');
        fs::write(path, text)?;
    }
    let mut text = serde_json::to_string_pretty(&manifest())?;
    text.push('\n');
    fs::write(dir.join("manifest.json"), text)?;
    Ok(())
}

/// Collapse the indentation continuation whitespace of literal strings.
fn normalize_ws(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn fixture_names_are_unique_and_loadable() {
        let all = fixtures();
        let names: BTreeSet<&str> = all.iter().map(|f| f.name).collect();
        assert_eq!(names.len(), all.len());
        for f in &all {
            let again = fixture(f.name).unwrap();
            assert_eq!(again.name, f.name);
            assert!(!f.expected.is_empty(), "{} has no expectations", f.name);
        }
        assert!(fixture("nope").is_err());
    }

    #[test]
    fn fixture_endpoints_exist() {
        for f in fixtures() {
            assert!(f.network.node(&f.source).is_some(), "{}", f.name);
            assert!(f.network.node(&f.dest).is_some(), "{}", f.name);
            assert_ne!(f.source, f.dest, "{}", f.name);
        }
    }

    #[test]
    fn ring_fixture_shapes() {
        let f = fixture("fig6").unwrap();
        assert_eq!(f.network.nodes().len(), 13);
        assert_eq!(f.network.links().len(), 22);
        assert_eq!(f.network.computation_nodes().count(), 6);
        // 2 cuts/flow + 7 binary residuals + 7 partial residuals.
        assert_eq!(f.expected.len(), 16);

        let a = fixture("abilene").unwrap();
        assert_eq!(a.network.nodes().len(), 11);
        assert_eq!(a.network.links().len(), 28);
        assert_eq!(a.network.computation_nodes().count(), 2);
    }

    #[test]
    fn flow_metric_matches_on_the_first_fixture() {
        let f = fixture("fig1").unwrap();
        let value = f
            .evaluate(&ExpectedMetric::MaxFlow, &SolverLimits::default())
            .unwrap();
        assert!((value - 4.0).abs() < 1e-6);
    }

    #[test]
    fn expectations_serialize_with_flattened_metric() {
        let e = min_cut(CutMode::Joint, 2.0, Basis::Stated);
        let json = serde_json::to_string(&e).unwrap();
        assert!(json.contains("\"kind\":\"min_cut\""), "{json}");
        assert!(json.contains("\"mode\":\"joint\""), "{json}");
        assert!(json.contains("\"basis\":\"stated\""), "{json}");
        let back: Expectation = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn manifest_rows_mirror_the_fixture_list() {
        let m = manifest();
        let all = fixtures();
        assert_eq!(m.fixtures.len(), all.len());
        for (row, f) in m.fixtures.iter().zip(&all) {
            assert_eq!(row.name, f.name);
            assert_eq!(row.file, format!("{}.json", f.name));
            assert_eq!(row.expected, f.expected);
            assert!(!row.description.contains("  "));
        }
    }

    #[test]
    fn export_writes_loadable_topologies() {
        let dir = std::env::temp_dir().join(format!("fixtures-export-{}", std::process::id()));
        export_fixtures(&dir).unwrap();
        let manifest_text = fs::read_to_string(dir.join("manifest.json")).unwrap();
        let m: FixtureManifest = serde_json::from_str(&manifest_text).unwrap();
        for row in &m.fixtures {
            let text = fs::read_to_string(dir.join(&row.file)).unwrap();
            let net = ComputingNetwork::from_json(&text).unwrap();
            assert!(net.node(&NodeId::new(row.source.clone())).is_some());
        }
        fs::remove_dir_all(&dir).unwrap();
    }
}
