//! Acceptance sweep: one test per criterion, each printing a single
//! PASS/FAIL line (visible with `--nocapture`, and echoed by the harness
//! as the test verdict).

use std::time::Instant;

use compnet::cuts::{
    approx_comm_cut, approx_joint_cut, min_comm_cut_exact, min_comp_cut_exact,
    min_joint_cut_exact, CutMode,
};
use compnet::flow::{max_flow, max_flow_by_paths};
use compnet::interdict::{
    interdict_oracle_partial_sweep, solve_with_method, InterdictionMode, Method,
};
use compnet::lp::SolverLimits;
use compnet::model::{ComputingNetwork, NodeId};
use compnet::testkit::{
    abilene_network, build_x3c_reduction, combine_capacities, cut_oracle, fixture,
    no_cover_instance, planted_cover_instance, random_costed_network, random_small_network,
    resample_capacities, worked_instance,
};

const TOL: f64 = 1e-6;

fn limits() -> SolverLimits {
    SolverLimits::default()
}

fn report(criterion: usize, failures: &[String], detail: String) {
    if failures.is_empty() {
        println!("criterion {criterion}: PASS — {detail}");
    } else {
        println!(
            "criterion {criterion}: FAIL — {} violation(s), first: {}",
            failures.len(),
            failures[0]
        );
        panic!(
            "criterion {criterion} failed with {} violation(s):\n{}",
            failures.len(),
            failures.join("\n")
        );
    }
}

/// Three deterministic interdiction budgets for a small corpus network:
/// low quantiles of the resource costs, so enumeration stays cheap.
fn corpus_budgets(net: &ComputingNetwork) -> Vec<f64> {
    let mut costs: Vec<f64> = net
        .links()
        .iter()
        .map(|l| l.cost())
        .chain(net.computation_nodes().map(|n| n.cost()))
        .collect();
    costs.sort_by(f64::total_cmp);
    [1usize, 3, 5]
        .iter()
        .map(|&i| costs[i.min(costs.len() - 1)])
        .collect()
}

#[test]
fn criterion_1_fixture_golden_values() {
    let t0 = Instant::now();
    let golden: &[(&str, &str, f64)] = &[
        ("fig1", "flow", 4.0),
        ("fig3", "flow", 2.0),
        ("fig3", "comm", 10.0),
        ("fig3", "joint", 2.0),
        ("fig4", "flow", 1.0),
        ("fig4", "comp", 20.0),
        ("fig4", "joint", 1.0),
        ("fig34", "joint", 3.0),
        ("fig34", "comm", 11.0),
        ("fig34", "comp", 22.0),
        ("fig5", "flow", 1.0),
        ("fig5", "joint", 2.0),
        ("fig5v", "joint", 1.5),
    ];
    let mut failures = Vec::new();
    for &(name, metric, want) in golden {
        let f = fixture(name).unwrap();
        let got = match metric {
            "flow" => max_flow(&f.network, &f.source, &f.dest, &limits())
                .unwrap()
                .value,
            "comm" => min_comm_cut_exact(&f.network, &f.source, &f.dest, &limits())
                .unwrap()
                .value,
            "comp" => min_comp_cut_exact(&f.network, &f.source, &f.dest, &limits())
                .unwrap()
                .value,
            "joint" => min_joint_cut_exact(&f.network, &f.source, &f.dest, &limits())
                .unwrap()
                .value,
            other => unreachable!("unknown metric {other}"),
        };
        if (got - want).abs() > TOL {
            failures.push(format!("{name} {metric}: got {got}, want {want}"));
        }
    }
    let elapsed = t0.elapsed().as_secs_f64();
    if elapsed >= 5.0 {
        failures.push(format!("took {elapsed:.2}s, budget 5s"));
    }
    report(
        1,
        &failures,
        format!("{} golden values in {elapsed:.2}s", golden.len()),
    );
}

#[test]
fn criterion_2_interdiction_curve() {
    let f = fixture("fig6").unwrap();
    let budgets: Vec<f64> = (0..=6).map(|i| 0.25 * i as f64).collect();
    let curve = |b: f64| (1.0 - 0.5 * b).min(1.5 - b).max(0.0);
    let mut failures = Vec::new();

    for &b in &budgets {
        let sol = solve_with_method(
            &f.network,
            &f.source,
            &f.dest,
            b,
            Method::Exact,
            InterdictionMode::Binary,
            &limits(),
        )
        .unwrap();
        if !sol.optimal {
            failures.push(format!("binary B={b}: solver did not prove optimality"));
        }
        if (sol.residual_flow - curve(b)).abs() > TOL {
            failures.push(format!(
                "binary B={b}: residual {}, curve {}",
                sol.residual_flow,
                curve(b)
            ));
        }
    }

    let partial =
        interdict_oracle_partial_sweep(&f.network, &f.source, &f.dest, &budgets, &limits())
            .unwrap();
    for (sol, &b) in partial.iter().zip(&budgets) {
        if (sol.residual_flow - curve(b)).abs() > TOL {
            failures.push(format!(
                "partial B={b}: residual {}, curve {}",
                sol.residual_flow,
                curve(b)
            ));
        }
    }
    report(
        2,
        &failures,
        format!(
            "binary and partial residuals match the two-branch curve at {} budgets",
            budgets.len()
        ),
    );
}

#[test]
fn criterion_3_backbone_scenarios() {
    let t0 = Instant::now();
    let mut failures = Vec::new();

    // Scenario i: half-unit computation at nodes 6 and 11; every ordered
    // pair moves exactly the total processing capacity.
    let net = abilene_network(&[("6", 0.5), ("11", 0.5)]);
    let ids: Vec<NodeId> = (1..=11).map(|i| NodeId::new(i.to_string())).collect();
    let mut pairs = 0usize;
    for s in &ids {
        for t in &ids {
            if s == t {
                continue;
            }
            pairs += 1;
            let flow = max_flow(&net, s, t, &limits()).unwrap().value;
            if (flow - 1.0).abs() > TOL {
                failures.push(format!("pair ({s},{t}): flow {flow}, want 1"));
            }
            let cut = min_comp_cut_exact(&net, s, t, &limits()).unwrap().value;
            if (cut - 1.0).abs() > TOL {
                failures.push(format!("pair ({s},{t}): comp cut {cut}, want 1"));
            }
        }
    }

    // Scenario ii: ample computation; bandwidth rules.
    let net = abilene_network(&[("6", 5.0), ("11", 5.0)]);
    let (s, t) = (NodeId::from("8"), NodeId::from("7"));
    let comm = min_comm_cut_exact(&net, &s, &t, &limits()).unwrap().value;
    if (comm - 3.0).abs() > TOL {
        failures.push(format!("scenario ii comm cut {comm}, want 3"));
    }
    let flow = max_flow(&net, &s, &t, &limits()).unwrap().value;
    if (flow - 2.5).abs() > TOL {
        failures.push(format!("scenario ii flow {flow}, want 2.5"));
    }

    // Scenario iii: asymmetric computation splits the joint cut.
    let net = abilene_network(&[("6", 5.0), ("11", 0.5)]);
    let joint = min_joint_cut_exact(&net, &s, &t, &limits()).unwrap().value;
    if (joint - 2.5).abs() > TOL {
        failures.push(format!("scenario iii joint cut {joint}, want 2.5"));
    }
    let flow = max_flow(&net, &s, &t, &limits()).unwrap().value;
    if (flow - 2.25).abs() > TOL {
        failures.push(format!("scenario iii flow {flow}, want 2.25"));
    }

    let elapsed = t0.elapsed().as_secs_f64();
    if elapsed >= 60.0 {
        failures.push(format!("took {elapsed:.2}s, budget 60s"));
    }
    report(
        3,
        &failures,
        format!("{pairs} ordered pairs plus two capacity scenarios in {elapsed:.2}s"),
    );
}

#[test]
fn criterion_4_oracle_equivalence() {
    let t0 = Instant::now();
    let mut failures = Vec::new();
    let mut interdiction_solves = 0usize;
    for seed in 0..100u64 {
        let (net, s, t) = random_small_network(seed);

        let lp_flow = max_flow(&net, &s, &t, &limits()).unwrap().value;
        let path_flow = max_flow_by_paths(&net, &s, &t, 10_000, &limits()).unwrap();
        if (lp_flow - path_flow).abs() > TOL {
            failures.push(format!("seed {seed}: flow {lp_flow} vs path oracle {path_flow}"));
        }

        for mode in [CutMode::Communication, CutMode::Computation, CutMode::Joint] {
            let exact = match mode {
                CutMode::Communication => min_comm_cut_exact(&net, &s, &t, &limits()),
                CutMode::Computation => min_comp_cut_exact(&net, &s, &t, &limits()),
                CutMode::Joint => min_joint_cut_exact(&net, &s, &t, &limits()),
            }
            .unwrap();
            let oracle = cut_oracle(&net, &s, &t, mode).unwrap();
            if (exact.value - oracle.value).abs() > TOL {
                failures.push(format!(
                    "seed {seed} {mode}: exact {} vs oracle {}",
                    exact.value, oracle.value
                ));
            }
        }

        for b in corpus_budgets(&net) {
            interdiction_solves += 1;
            let exact = solve_with_method(
                &net,
                &s,
                &t,
                b,
                Method::Exact,
                InterdictionMode::Binary,
                &limits(),
            )
            .unwrap();
            let oracle = solve_with_method(
                &net,
                &s,
                &t,
                b,
                Method::Oracle,
                InterdictionMode::Binary,
                &limits(),
            )
            .unwrap();
            if (exact.residual_flow - oracle.residual_flow).abs() > TOL {
                failures.push(format!(
                    "seed {seed} B={b:.4}: exact residual {} vs oracle {}",
                    exact.residual_flow, oracle.residual_flow
                ));
            }
        }
    }
    let elapsed = t0.elapsed().as_secs_f64();
    if elapsed >= 600.0 {
        failures.push(format!("took {elapsed:.2}s, budget 600s"));
    }
    report(
        4,
        &failures,
        format!(
            "100 networks: flow vs path oracle, 3 cut modes vs enumeration, \
             {interdiction_solves} interdiction budgets vs enumeration in {elapsed:.2}s"
        ),
    );
}

#[test]
fn criterion_5_cut_bounds() {
    let mut failures = Vec::new();
    for seed in 0..100u64 {
        let (net, s, t) = random_small_network(seed);
        let flow = max_flow(&net, &s, &t, &limits()).unwrap().value;
        let comm = min_comm_cut_exact(&net, &s, &t, &limits()).unwrap().value;
        let comp = min_comp_cut_exact(&net, &s, &t, &limits()).unwrap().value;
        let joint = min_joint_cut_exact(&net, &s, &t, &limits()).unwrap().value;

        if flow > joint + TOL || joint > 2.0 * flow + TOL {
            failures.push(format!(
                "seed {seed}: flow {flow}, joint {joint} outside [flow, 2 flow]"
            ));
        }
        if joint > comm.min(comp) + TOL {
            failures.push(format!(
                "seed {seed}: joint {joint} above min(comm {comm}, comp {comp})"
            ));
        }
        let approx_c = approx_comm_cut(&net, &s, &t).unwrap().value;
        if approx_c < comm - TOL || approx_c > 2.0 * comm + TOL {
            failures.push(format!(
                "seed {seed}: approx comm {approx_c} outside [{comm}, {}]",
                2.0 * comm
            ));
        }
        let approx_j = approx_joint_cut(&net, &s, &t).unwrap().value;
        if approx_j < joint - TOL || approx_j > 2.0 * joint + TOL {
            failures.push(format!(
                "seed {seed}: approx joint {approx_j} outside [{joint}, {}]",
                2.0 * joint
            ));
        }
    }
    report(
        5,
        &failures,
        "flow/joint sandwich, joint vs single-mode cuts, and both \
         2-approximations on 100 networks"
            .to_string(),
    );
}

#[test]
fn criterion_6_concavity_and_sensitivity() {
    let mut failures = Vec::new();
    for trial in 0..50u64 {
        let (net1, s, t) = random_small_network(trial);
        let net2 = resample_capacities(&net1, 10_000 + trial);
        let alpha = [0.25, 0.5, 0.75][(trial % 3) as usize];

        let f1 = max_flow(&net1, &s, &t, &limits()).unwrap();
        let f2 = max_flow(&net2, &s, &t, &limits()).unwrap();

        let blend = combine_capacities(&net1, &net2, alpha).unwrap();
        let fb = max_flow(&blend, &s, &t, &limits()).unwrap().value;
        let lower = alpha * f1.value + (1.0 - alpha) * f2.value;
        if fb < lower - TOL {
            failures.push(format!(
                "trial {trial}: F(blend) {fb} below combination {lower}"
            ));
        }

        // Shadow prices at net1 form a supergradient of the concave
        // value function: F(m2) <= F(m1) + q1 . (m2 - m1).
        let mut bound = f1.value;
        for (l1, l2) in net1.links().iter().zip(net2.links()) {
            bound += f1.link_dual(&l1.id()) * (l2.capacity - l1.capacity);
        }
        for (n1, n2) in net1.nodes().iter().zip(net2.nodes()) {
            bound += f1.node_dual(&n1.id) * (n2.processing_capacity - n1.processing_capacity);
        }
        if f2.value > bound + TOL {
            failures.push(format!(
                "trial {trial}: F(m2) {} above supergradient bound {bound}",
                f2.value
            ));
        }
    }
    report(
        6,
        &failures,
        "convex-combination and supergradient inequalities on 50 capacity pairs".to_string(),
    );
}

#[test]
fn criterion_7_hardness_reduction() {
    let mut failures = Vec::new();

    let worked = worked_instance();
    let (net, s, t) = build_x3c_reduction(&worked).unwrap();
    let cut = min_comm_cut_exact(&net, &s, &t, &limits()).unwrap().value;
    if (cut - 5.0).abs() > TOL || (worked.target_cut() - 5.0).abs() > TOL {
        failures.push(format!("worked instance: cut {cut}, want 5"));
    }

    for seed in 0..20u64 {
        let q = 2 + (seed % 2) as usize;
        let extra = 1 + (seed % 3) as usize;
        let inst = planted_cover_instance(q, extra, seed);
        let (net, s, t) = build_x3c_reduction(&inst).unwrap();
        let cut = min_comm_cut_exact(&net, &s, &t, &limits()).unwrap().value;
        if (cut - inst.target_cut()).abs() > TOL {
            failures.push(format!(
                "planted seed {seed}: cut {cut}, want {}",
                inst.target_cut()
            ));
        }
    }

    for seed in 0..20u64 {
        let m = 4 + (seed % 2) as usize;
        let inst = no_cover_instance(2, m, seed).unwrap();
        let (net, s, t) = build_x3c_reduction(&inst).unwrap();
        let cut = min_comm_cut_exact(&net, &s, &t, &limits()).unwrap().value;
        if cut <= inst.target_cut() + TOL {
            failures.push(format!(
                "no-cover seed {seed}: cut {cut} not above {}",
                inst.target_cut()
            ));
        }
    }
    report(
        7,
        &failures,
        "worked instance at 5, 20 planted instances at m+q, 20 certified \
         no-cover instances above m+q"
            .to_string(),
    );
}

#[test]
fn criterion_8_milp_self_consistency() {
    let mut failures = Vec::new();
    let mut solves = 0usize;
    let mut check = |name: String, net: &ComputingNetwork, s: &NodeId, t: &NodeId, b: f64| {
        let sol = solve_with_method(
            net,
            s,
            t,
            b,
            Method::Exact,
            InterdictionMode::Binary,
            &limits(),
        )
        .unwrap();
        solves += 1;
        let objective = sol
            .objective
            .expect("exact solves always report an objective");
        // residual_flow is recomputed from scratch on the interdicted
        // network, so this ties the MILP objective to an independent
        // max-flow solve.
        if (objective - sol.residual_flow).abs() > TOL {
            failures.push(format!(
                "{name}: objective {objective} vs residual flow {}",
                sol.residual_flow
            ));
        }
    };

    for seed in 0..100u64 {
        let (net, s, t) = random_small_network(seed);
        for b in corpus_budgets(&net) {
            check(format!("seed {seed} B={b:.4}"), &net, &s, &t, b);
        }
    }
    let f = fixture("fig6").unwrap();
    for i in 0..=6 {
        let b = 0.25 * i as f64;
        check(format!("fig6 B={b}"), &f.network, &f.source, &f.dest, b);
    }
    report(
        8,
        &failures,
        format!("objective equals recomputed residual max flow on {solves} exact solves"),
    );
}

#[test]
fn criterion_9_costed_greedy_comparison() {
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    let mut instance_success = 0usize;
    let mut better = 0usize;
    let mut tie = 0usize;
    let mut worse = 0usize;

    for seed in 0..30u64 {
        let (net, s, t) = random_costed_network(seed);
        let total: f64 = net.links().iter().map(|l| l.cost()).sum::<f64>()
            + net.computation_nodes().map(|n| n.cost()).sum::<f64>();

        // Smallest budget that zeroes the flow, by bisection on the exact
        // solver; test budgets sit below it so residuals stay positive.
        let mut lo = 0.0f64;
        let mut hi = total;
        for _ in 0..20 {
            let mid = 0.5 * (lo + hi);
            let sol = solve_with_method(
                &net,
                &s,
                &t,
                mid,
                Method::Exact,
                InterdictionMode::Binary,
                &limits(),
            )
            .unwrap();
            if sol.residual_flow <= TOL {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let kill = hi;

        let mut aware_never_worse = true;
        for frac in [0.35, 0.7] {
            let b = frac * kill;
            let exact = solve_with_method(
                &net,
                &s,
                &t,
                b,
                Method::Exact,
                InterdictionMode::Binary,
                &limits(),
            )
            .unwrap();
            let plain = solve_with_method(
                &net,
                &s,
                &t,
                b,
                Method::GreedyCost,
                InterdictionMode::Binary,
                &limits(),
            )
            .unwrap();
            let aware = solve_with_method(
                &net,
                &s,
                &t,
                b,
                Method::GreedyCostAware,
                InterdictionMode::Binary,
                &limits(),
            )
            .unwrap();

            for (label, sol) in [("plain", &plain), ("cost-aware", &aware)] {
                if sol.residual_flow < exact.residual_flow - TOL {
                    failures.push(format!(
                        "seed {seed} B={b:.3}: {label} residual {} below exact {}",
                        sol.residual_flow, exact.residual_flow
                    ));
                }
            }
            let delta = aware.residual_flow - plain.residual_flow;
            if delta.abs() <= 1e-9 {
                tie += 1;
            } else if delta < 0.0 {
                better += 1;
            } else {
                worse += 1;
                aware_never_worse = false;
            }
            rows.push(format!(
                "seed {seed:2} B={b:6.3} (kill {kill:6.3}): exact {:7.4}  plain {:7.4}  \
                 cost-aware {:7.4}",
                exact.residual_flow, plain.residual_flow, aware.residual_flow
            ));
        }
        if aware_never_worse {
            instance_success += 1;
        }
    }

    println!("residual distribution over 30 instances x 2 budgets:");
    for row in &rows {
        println!("  {row}");
    }
    println!(
        "cost-aware vs plain: better {better}, tie {tie}, worse {worse}; \
         instances where cost-aware never worse: {instance_success}/30"
    );
    if 2 * instance_success <= 30 {
        failures.push(format!(
            "cost-aware beat or matched plain greedy on only {instance_success} of 30 instances"
        ));
    }
    report(
        9,
        &failures,
        format!(
            "greedy ≥ exact on all 60 solves; cost-aware ≤ plain on \
             {instance_success}/30 instances (better {better}, tie {tie}, worse {worse})"
        ),
    );
}
