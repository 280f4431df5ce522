//! Randomized invariants over the seeded network corpus.

use proptest::prelude::*;

use compnet::flow::max_flow;
use compnet::interdict::{solve_with_method, InterdictionMode, Method};
use compnet::lp::SolverLimits;
use compnet::model::{ComputingNetwork, RemovalSpec, Resource};
use compnet::testkit::{random_costed_network, random_small_network};

const TOL: f64 = 1e-6;

fn limits() -> SolverLimits {
    SolverLimits::default()
}

/// All interdictable resources of a network, links first, in storage order.
fn resources(net: &ComputingNetwork) -> Vec<Resource> {
    net.links()
        .iter()
        .map(|l| Resource::Link {
            from: l.from.clone(),
            to: l.to.clone(),
        })
        .chain(net.computation_nodes().map(|n| Resource::Node { id: n.id.clone() }))
        .collect()
}

proptest! {
    /// Serialization is lossless: parse(render(net)) renders identically.
    #[test]
    fn json_round_trip(seed in any::<u64>(), costed in any::<bool>()) {
        let net = if costed {
            random_costed_network(seed).0
        } else {
            random_small_network(seed).0
        };
        let text = net.to_json();
        let back = ComputingNetwork::from_json(&text).unwrap();
        prop_assert_eq!(text, back.to_json());
    }

    /// Weakening more resources never helps: if removal B dominates removal A
    /// pointwise, the surviving flow under B is no larger.
    #[test]
    fn removal_is_monotone(
        seed in 0u64..1000,
        mask_a in any::<u16>(),
        mask_b in any::<u16>(),
        frac_a in 0.0f64..=1.0,
        frac_b in 0.0f64..=1.0,
    ) {
        let (net, s, t) = random_small_network(seed);
        let pool = resources(&net);
        let mut a = RemovalSpec::new();
        let mut b = RemovalSpec::new();
        for (i, r) in pool.iter().enumerate() {
            if mask_a & (1 << (i % 16)) != 0 {
                a.add(r.clone(), frac_a);
                b.add(r.clone(), frac_a);
            }
            if mask_b & (1 << (i % 16)) != 0 {
                b.add(r.clone(), frac_b);
            }
        }
        let base = max_flow(&net, &s, &t, &limits()).unwrap().value;
        let under_a = max_flow(&net.apply_removal(&a).unwrap(), &s, &t, &limits())
            .unwrap()
            .value;
        let under_b = max_flow(&net.apply_removal(&b).unwrap(), &s, &t, &limits())
            .unwrap()
            .value;
        prop_assert!(under_a <= base + TOL, "removal A raised flow: {under_a} > {base}");
        prop_assert!(under_b <= under_a + TOL, "dominating removal raised flow: {under_b} > {under_a}");
    }

    /// Path decomposition accounts for the whole value, and every path is a
    /// source-to-destination walk processed at a computation node.
    #[test]
    fn decomposition_conserves_value(seed in 0u64..1000) {
        let (net, s, t) = random_small_network(seed);
        let sol = max_flow(&net, &s, &t, &limits()).unwrap();
        let decomp = sol.decompose().unwrap();
        prop_assert!(
            (decomp.total() - sol.value).abs() <= TOL,
            "paths total {} vs flow {}",
            decomp.total(),
            sol.value
        );
        for path in &decomp.paths {
            prop_assert!(path.amount > 0.0);
            prop_assert_eq!(path.nodes.first().unwrap(), &s);
            prop_assert_eq!(path.nodes.last().unwrap(), &t);
            let processor = net.node(&path.processed_at).unwrap();
            prop_assert!(processor.is_computation(), "processed at non-computation node");
            prop_assert!(path.nodes.contains(&path.processed_at));
        }
    }

    /// The reported shadow prices certify optimality: they are nonnegative
    /// and their capacity-weighted total equals the primal value.
    #[test]
    fn duals_certify_optimality(seed in 0u64..1000) {
        let (net, s, t) = random_small_network(seed);
        let sol = max_flow(&net, &s, &t, &limits()).unwrap();
        let mut dual_total = 0.0;
        for link in net.links() {
            let q = sol.link_dual(&link.id());
            prop_assert!(q >= -1e-9, "negative link dual {q}");
            dual_total += q * link.capacity;
        }
        for node in net.computation_nodes() {
            let q = sol.node_dual(&node.id);
            prop_assert!(q >= -1e-9, "negative node dual {q}");
            dual_total += q * node.processing_capacity;
        }
        prop_assert!(
            (dual_total - sol.value).abs() <= TOL * (1.0 + sol.value.abs()),
            "dual total {dual_total} vs primal {}",
            sol.value
        );
    }

    /// Every interdiction method respects its budget, reports what it spent,
    /// and returns a residual that matches re-solving the weakened network.
    #[test]
    fn interdiction_respects_budget(
        seed in 0u64..200,
        method_pick in 0usize..4,
        budget_frac in 0.05f64..0.9,
    ) {
        let (net, s, t) = random_small_network(seed);
        let total: f64 = net.links().iter().map(|l| l.cost()).sum::<f64>()
            + net.computation_nodes().map(|n| n.cost()).sum::<f64>();
        let budget = budget_frac * total;
        let method = [
            Method::Exact,
            Method::Greedy,
            Method::GreedyCost,
            Method::GreedyCostAware,
        ][method_pick];
        let sol =
            solve_with_method(&net, &s, &t, budget, method, InterdictionMode::Binary, &limits())
                .unwrap();
        prop_assert!(sol.spent <= budget + 1e-9, "spent {} over budget {budget}", sol.spent);
        let spent: f64 = sol
            .removal
            .fractions
            .iter()
            .map(|(r, &z)| {
                let cost = match r {
                    Resource::Link { from, to } => net.link(from, to).unwrap().cost(),
                    Resource::Node { id } => net.node(id).unwrap().cost(),
                };
                cost * z
            })
            .sum();
        prop_assert!((spent - sol.spent).abs() <= 1e-9, "spent ledger mismatch");
        let weakened = net.apply_removal(&sol.removal).unwrap();
        let recomputed = max_flow(&weakened, &s, &t, &limits()).unwrap().value;
        prop_assert!(
            (recomputed - sol.residual_flow).abs() <= TOL,
            "reported residual {} vs recomputed {recomputed}",
            sol.residual_flow
        );
    }
}
