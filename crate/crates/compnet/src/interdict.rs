//! Budget-constrained capacity interdiction.
//!
//! Given a network, a source/destination pair, and a budget, an attacker
//! removes link capacity and/or processing capacity to minimize the residual
//! maximum processed flow. Removal is either *binary* (a resource is removed
//! entirely at its full interdiction cost) or *partial* (any fraction may be
//! removed at proportional cost).
//!
//! Solvers provided:
//! - [`interdict_binary_exact`]: a mixed-integer program over the two-layer
//!   expansion whose objective is exactly the residual max flow.
//! - [`interdict_binary_greedy`] and friends: iterative heuristics that
//!   repeatedly solve the flow LP and remove the most attractive affordable
//!   resource, scored by shadow prices (optionally normalized by cost, and
//!   optionally priced against a cost-weighted LP).
//! - [`interdict_partial_greedy`]: the same selection loop, with the final
//!   pick allowed to be fractional so the budget is spent exactly.
//! - [`interdict_oracle`]: brute-force ground truth for small instances.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::cuts::{build_cut_milp, CutMode};
use crate::error::{Error, Result};
use crate::flow::{self, build_flow_lp_with_caps};
use crate::lp::{
    lp_ident, LinearProgram, MilpOptions, Rel, Sense, SolveStatus, SolverLimits, VarId,
};
use crate::model::{ComputingNetwork, LayeredEdgeKind, LinkId, NodeId, RemovalSpec, Resource, TOL};

/// Budgets below this are treated as exhausted.
const BUDGET_EPS: f64 = 1e-9;

/// Costs below this count as zero (free removals).
const COST_EPS: f64 = 1e-12;

/// Largest candidate-resource count the enumeration oracles accept.
const ORACLE_RESOURCE_LIMIT: usize = 30;

/// Largest number of removal states the cut-enumeration oracle will visit.
const ORACLE_STATE_LIMIT: usize = 200_000;

/// Whether resources are removed entirely or fractionally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InterdictionMode {
    /// A selected resource loses all its capacity; its full cost is paid.
    Binary,
    /// A fraction z of a resource may be removed at z times its cost.
    Partial,
}

/// An interdiction instance: which network, which flow to suppress, how much
/// budget, and whether removals are binary or fractional.
///
/// Per-resource costs come from the network: a link or node with an explicit
/// `interdiction_cost` uses it, every other resource costs its own capacity.
/// Removing the remaining `1 - z` fraction of a partially removed resource
/// costs `(1 - z)` times its cost.
#[derive(Debug, Clone)]
pub struct InterdictionProblem {
    network: ComputingNetwork,
    source: NodeId,
    dest: NodeId,
    budget: f64,
    mode: InterdictionMode,
}

impl InterdictionProblem {
    pub fn new(
        network: ComputingNetwork,
        source: NodeId,
        dest: NodeId,
        budget: f64,
        mode: InterdictionMode,
    ) -> Result<Self> {
        if !budget.is_finite() || budget < 0.0 {
            return Err(Error::InvalidBudget(budget));
        }
        if network.node(&source).is_none() {
            return Err(Error::UnknownNode(source.to_string()));
        }
        if network.node(&dest).is_none() {
            return Err(Error::UnknownNode(dest.to_string()));
        }
        if source == dest {
            return Err(Error::SourceEqualsDest(source.to_string()));
        }
        Ok(InterdictionProblem {
            network,
            source,
            dest,
            budget,
            mode,
        })
    }

    pub fn network(&self) -> &ComputingNetwork {
        &self.network
    }

    pub fn source(&self) -> &NodeId {
        &self.source
    }

    pub fn dest(&self) -> &NodeId {
        &self.dest
    }

    pub fn budget(&self) -> f64 {
        self.budget
    }

    pub fn mode(&self) -> InterdictionMode {
        self.mode
    }

    /// The same instance with a different budget.
    pub fn with_budget(&self, budget: f64) -> Result<Self> {
        InterdictionProblem::new(
            self.network.clone(),
            self.source.clone(),
            self.dest.clone(),
            budget,
            self.mode,
        )
    }

    fn require_mode(&self, mode: InterdictionMode, what: &str) -> Result<()> {
        if self.mode != mode {
            return Err(Error::Unsupported(format!(
                "{what} requires {} mode",
                match mode {
                    InterdictionMode::Binary => "binary",
                    InterdictionMode::Partial => "partial",
                }
            )));
        }
        Ok(())
    }
}

/// One greedy pick: which resource, the score it won with, and the fraction
/// of the resource removed (1 except possibly for the last partial pick).
#[derive(Debug, Clone, Serialize)]
pub struct GreedyStep {
    pub resource: Resource,
    pub score: f64,
    pub amount: f64,
}

/// The outcome of an interdiction run.
#[derive(Debug, Clone, Serialize)]
pub struct InterdictionSolution {
    /// What was removed, as fractions per resource.
    pub removal: RemovalSpec,
    /// Total cost paid; never exceeds the budget beyond tolerance.
    pub spent: f64,
    /// Maximum flow of the network after the removal, recomputed from
    /// scratch on the reduced network.
    pub residual_flow: f64,
    /// True when the producing method certifies optimality for its mode.
    pub optimal: bool,
    /// Pick-by-pick record for greedy methods; empty for exact and oracle.
    pub trace: Vec<GreedyStep>,
    /// The integer program's own objective value, when one was solved. Its
    /// agreement with `residual_flow` is a correctness invariant.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub objective: Option<f64>,
}

impl InterdictionSolution {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("interdiction solution serialization cannot fail")
    }
}

fn link_resource(link: &crate::model::Link) -> Resource {
    Resource::Link {
        from: link.from.clone(),
        to: link.to.clone(),
    }
}

/// Residual max flow after applying `removal`, solved from scratch.
fn residual_flow(
    net: &ComputingNetwork,
    removal: &RemovalSpec,
    source: &NodeId,
    dest: &NodeId,
    limits: &SolverLimits,
) -> Result<f64> {
    let reduced = net.apply_removal(removal)?;
    Ok(flow::max_flow(&reduced, source, dest, limits)?.value)
}

// ---------------------------------------------------------------------------
// Exact binary interdiction
// ---------------------------------------------------------------------------

/// Exact binary interdiction as a mixed-integer program.
///
/// Binary variables z select which resources to remove, subject to the cost
/// budget. Continuous variables couple a min-cut program of the *residual*
/// network to the selection: potentials p on the layered nodes and cut
/// indicators b with
///
/// ```text
/// p_head - p_tail + b_r + z_r >= 0   for every layered edge of resource r,
/// p_source - p_sink >= 1,            sum_r cost_r * z_r <= budget,
/// ```
///
/// minimizing `sum_r capacity_r * b_r`. For any fixed selection the inner
/// minimum is the residual min cut, which equals the residual max flow, so
/// the optimum selects the flow-minimizing removal. The reported
/// `residual_flow` is nevertheless recomputed on the reduced network and must
/// agree with the objective.
///
/// A greedy run seeds the branch-and-bound incumbent, so a time or node limit
/// still yields the best selection found (`optimal = false`).
pub fn interdict_binary_exact(
    p: &InterdictionProblem,
    limits: &SolverLimits,
) -> Result<InterdictionSolution> {
    p.require_mode(InterdictionMode::Binary, "exact interdiction")?;
    let net = p.network();
    let layered = net.build_layered(p.source(), p.dest())?;

    let mut lp = LinearProgram::new(Sense::Minimize);
    let mut beta_links = Vec::with_capacity(net.links().len());
    for link in net.links() {
        beta_links.push(lp.add_var(
            lp_ident(&["bl", link.from.as_str(), link.to.as_str()]),
            (0.0, 1.0),
            link.capacity,
        )?);
    }
    let mut beta_nodes: Vec<Option<VarId>> = vec![None; net.nodes().len()];
    for (i, node) in net.nodes().iter().enumerate() {
        if node.is_computation() {
            beta_nodes[i] = Some(lp.add_var(
                lp_ident(&["bn", node.id.as_str()]),
                (0.0, 1.0),
                node.processing_capacity,
            )?);
        }
    }
    let mut z_links = Vec::with_capacity(net.links().len());
    for link in net.links() {
        z_links.push(lp.add_integer_var(
            lp_ident(&["zl", link.from.as_str(), link.to.as_str()]),
            (0.0, 1.0),
            0.0,
        )?);
    }
    let mut z_nodes: Vec<Option<VarId>> = vec![None; net.nodes().len()];
    for (i, node) in net.nodes().iter().enumerate() {
        if node.is_computation() {
            z_nodes[i] = Some(lp.add_integer_var(
                lp_ident(&["zn", node.id.as_str()]),
                (0.0, 1.0),
                0.0,
            )?);
        }
    }
    let p_vars: Vec<VarId> = (0..layered.node_count())
        .map(|v| lp.add_var(lp_ident(&["p", &layered.label(v)]), (0.0, 1.0), 0.0))
        .collect::<Result<_>>()?;

    for edge in &layered.edges {
        let (beta, z, name) = match edge.kind {
            LayeredEdgeKind::UpperLink(i) => {
                let l = &net.links()[i];
                (
                    beta_links[i],
                    z_links[i],
                    lp_ident(&["upper", l.from.as_str(), l.to.as_str()]),
                )
            }
            LayeredEdgeKind::LowerLink(i) => {
                let l = &net.links()[i];
                (
                    beta_links[i],
                    z_links[i],
                    lp_ident(&["lower", l.from.as_str(), l.to.as_str()]),
                )
            }
            LayeredEdgeKind::Process(i) => (
                beta_nodes[i].expect("process edge implies computation node"),
                z_nodes[i].expect("process edge implies computation node"),
                lp_ident(&["cross", net.nodes()[i].id.as_str()]),
            ),
            LayeredEdgeKind::Return => continue,
        };
        lp.add_row(
            name,
            Rel::Ge,
            0.0,
            &[
                (p_vars[edge.head], 1.0),
                (p_vars[edge.tail], -1.0),
                (beta, 1.0),
                (z, 1.0),
            ],
        )?;
    }
    lp.add_row(
        "sep",
        Rel::Ge,
        1.0,
        &[(p_vars[layered.source], 1.0), (p_vars[layered.sink], -1.0)],
    )?;
    let mut budget_terms: Vec<(VarId, f64)> = Vec::new();
    for (i, link) in net.links().iter().enumerate() {
        budget_terms.push((z_links[i], link.cost()));
    }
    for (i, node) in net.nodes().iter().enumerate() {
        if let Some(z) = z_nodes[i] {
            budget_terms.push((z, node.cost()));
        }
    }
    lp.add_row("budget", Rel::Le, p.budget(), &budget_terms)?;

    let options = MilpOptions {
        incumbent_hint: exact_incumbent_hint(p, limits, &lp, &beta_links, &beta_nodes, &z_links, &z_nodes, &p_vars),
        ..MilpOptions::default()
    };
    let sol = lp.solve_milp(limits, &options)?;
    let optimal = match sol.status {
        SolveStatus::Optimal => true,
        SolveStatus::Limit if !sol.values.is_empty() => false,
        other => {
            return Err(Error::Solver(format!(
                "interdiction program ended with status {other:?} and no incumbent"
            )))
        }
    };

    let mut removal = RemovalSpec::new();
    let mut spent = 0.0;
    for (i, link) in net.links().iter().enumerate() {
        if sol.value(z_links[i]) > 0.5 {
            removal.add(link_resource(link), 1.0);
            spent += link.cost();
        }
    }
    for (i, node) in net.nodes().iter().enumerate() {
        if let Some(z) = z_nodes[i] {
            if sol.value(z) > 0.5 {
                removal.add(Resource::Node { id: node.id.clone() }, 1.0);
                spent += node.cost();
            }
        }
    }
    let residual = residual_flow(net, &removal, p.source(), p.dest(), limits)?;
    Ok(InterdictionSolution {
        removal,
        spent,
        residual_flow: residual,
        optimal,
        trace: Vec::new(),
        objective: Some(sol.objective),
    })
}

/// Build a feasible starting point for the interdiction program from a greedy
/// run: its selection fixes z, and an LP solve of the relaxed min-cut program
/// on the reduced network supplies matching potentials and cut indicators, so
/// the incumbent's objective equals the greedy residual flow.
#[allow(clippy::too_many_arguments)]
fn exact_incumbent_hint(
    p: &InterdictionProblem,
    limits: &SolverLimits,
    lp: &LinearProgram,
    beta_links: &[VarId],
    beta_nodes: &[Option<VarId>],
    z_links: &[VarId],
    z_nodes: &[Option<VarId>],
    p_vars: &[VarId],
) -> Option<Vec<f64>> {
    let variant = if p.network().costs_equal_capacities() {
        GreedyVariant::Shadow
    } else {
        GreedyVariant::Cost
    };
    let greedy = greedy_run(p, variant, false, limits).ok()?;
    let reduced = p.network().apply_removal(&greedy.removal).ok()?;
    let lay = reduced.build_layered(p.source(), p.dest()).ok()?;
    let cut = build_cut_milp(&reduced, &lay, CutMode::Joint).ok()?;
    let relax = cut.lp.solve_lp(limits).ok()?;
    if !relax.is_optimal() {
        return None;
    }

    let mut hint = vec![0.0; lp.num_vars()];
    for (i, link) in p.network().links().iter().enumerate() {
        let removed = greedy.removal.fraction(&link_resource(link)) > 0.5;
        hint[z_links[i].index()] = if removed { 1.0 } else { 0.0 };
        if !removed {
            if let Some(y) = cut.link_vars[i] {
                hint[beta_links[i].index()] = relax.value(y);
            }
        }
    }
    for (i, node) in p.network().nodes().iter().enumerate() {
        let (Some(zv), Some(bv)) = (z_nodes[i], beta_nodes[i]) else {
            continue;
        };
        let removed = greedy
            .removal
            .fraction(&Resource::Node { id: node.id.clone() })
            > 0.5;
        hint[zv.index()] = if removed { 1.0 } else { 0.0 };
        if !removed {
            if let Some(y) = cut.node_vars[i] {
                hint[bv.index()] = relax.value(y);
            }
        }
    }
    for (v, &pv) in p_vars.iter().enumerate() {
        hint[pv.index()] = relax.value(cut.p_vars[v]);
    }
    Some(hint)
}

// ---------------------------------------------------------------------------
// Greedy heuristics
// ---------------------------------------------------------------------------

/// How the greedy loop scores a candidate resource in each iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GreedyVariant {
    /// Score = the resource's shadow price in the current flow LP. Only
    /// meaningful when every cost equals the capacity, and rejected
    /// otherwise: affordability is judged in capacity units.
    Shadow,
    /// Score = shadow price x remaining capacity / remaining cost: flow
    /// destroyed per unit of budget, to first order.
    Cost,
    /// Like [`GreedyVariant::Cost`], but the shadow prices come from an LP
    /// whose capacity rows carry the interdiction *costs* as right-hand
    /// sides, approximating a minimum-cost cut of the residual network.
    CostAware,
}

/// Shadow-price greedy: repeatedly remove the affordable resource with the
/// highest shadow price in the current flow LP. Requires cost = capacity.
pub fn interdict_binary_greedy(
    p: &InterdictionProblem,
    limits: &SolverLimits,
) -> Result<InterdictionSolution> {
    p.require_mode(InterdictionMode::Binary, "binary greedy")?;
    greedy_run(p, GreedyVariant::Shadow, false, limits)
}

/// Cost-ratio greedy: like [`interdict_binary_greedy`] but scores each
/// resource by shadow price x capacity / cost, so arbitrary cost models are
/// supported. Affordability and budget bookkeeping use costs.
pub fn interdict_binary_greedy_cost(
    p: &InterdictionProblem,
    limits: &SolverLimits,
) -> Result<InterdictionSolution> {
    p.require_mode(InterdictionMode::Binary, "binary greedy")?;
    greedy_run(p, GreedyVariant::Cost, false, limits)
}

/// Cost-aware greedy: the per-iteration shadow prices are taken from an LP
/// whose capacity rows use the interdiction costs as right-hand sides, so
/// the scores reflect membership in cheap cuts rather than tight ones.
pub fn interdict_binary_greedy_cost_aware(
    p: &InterdictionProblem,
    limits: &SolverLimits,
) -> Result<InterdictionSolution> {
    p.require_mode(InterdictionMode::Binary, "binary greedy")?;
    greedy_run(p, GreedyVariant::CostAware, false, limits)
}

/// Partial-removal greedy: same selection rule as the chosen binary variant,
/// but the last pick may remove only a fraction of its resource so the
/// budget is spent exactly.
pub fn interdict_partial_greedy(
    p: &InterdictionProblem,
    variant: GreedyVariant,
    limits: &SolverLimits,
) -> Result<InterdictionSolution> {
    p.require_mode(InterdictionMode::Partial, "partial greedy")?;
    greedy_run(p, variant, true, limits)
}

/// Shadow prices per resource for the current residual network, according to
/// the scoring variant.
fn variant_duals(
    p: &InterdictionProblem,
    removal: &RemovalSpec,
    reduced: &ComputingNetwork,
    flow_sol: &flow::FlowSolution,
    variant: GreedyVariant,
    limits: &SolverLimits,
) -> Result<(BTreeMap<LinkId, f64>, BTreeMap<NodeId, f64>)> {
    if variant != GreedyVariant::CostAware {
        return Ok((flow_sol.link_duals.clone(), flow_sol.node_duals.clone()));
    }
    // Cost-weighted pricing: same program shape as the flow LP on the reduced
    // network, but every capacity row's right-hand side is the cost of the
    // resource's remaining fraction.
    let layered = reduced.build_layered(p.source(), p.dest())?;
    let net = p.network();
    let link_caps: Vec<f64> = net
        .links()
        .iter()
        .map(|l| {
            let z = removal.fraction(&link_resource(l));
            l.cost() * (1.0 - z).clamp(0.0, 1.0)
        })
        .collect();
    let node_caps: Vec<f64> = net
        .nodes()
        .iter()
        .map(|n| {
            let z = removal.fraction(&Resource::Node { id: n.id.clone() });
            n.cost() * (1.0 - z).clamp(0.0, 1.0)
        })
        .collect();
    let built = build_flow_lp_with_caps(reduced, &layered, &link_caps, &node_caps)?;
    let sol = built.lp.solve_lp(limits)?;
    if !sol.is_optimal() {
        return Err(Error::Solver(format!(
            "cost-weighted pricing program ended with status {:?}",
            sol.status
        )));
    }
    let link_duals = net
        .links()
        .iter()
        .zip(&built.link_rows)
        .map(|(link, &row)| (link.id(), sol.dual(row)))
        .collect();
    let node_duals = reduced
        .nodes()
        .iter()
        .zip(&built.node_rows)
        .filter_map(|(node, row)| row.map(|r| (node.id.clone(), sol.dual(r))))
        .collect();
    Ok((link_duals, node_duals))
}

/// A candidate pick under consideration.
struct Candidate {
    resource: Resource,
    score: f64,
    /// Remaining capacity (for tie-breaking: larger first).
    capacity: f64,
    /// Cost of removing the remaining fraction.
    cost: f64,
    /// Fraction of the original resource still present.
    remaining: f64,
}

/// True when `a` wins over `b`: higher score, then larger capacity, then
/// the smaller resource identity — a total order, so traces are
/// deterministic.
fn wins(a: &Candidate, b: &Candidate) -> bool {
    if a.score != b.score {
        return a.score > b.score;
    }
    if a.capacity != b.capacity {
        return a.capacity > b.capacity;
    }
    a.resource < b.resource
}

fn greedy_run(
    p: &InterdictionProblem,
    variant: GreedyVariant,
    partial: bool,
    limits: &SolverLimits,
) -> Result<InterdictionSolution> {
    if variant == GreedyVariant::Shadow {
        if let Some(r) = p.network().first_cost_capacity_mismatch() {
            return Err(Error::CostModelMismatch(r.to_string()));
        }
    }
    let net = p.network();
    let mut removal = RemovalSpec::new();
    let mut spent = 0.0;
    let mut trace = Vec::new();

    loop {
        let b = p.budget() - spent;
        if b <= BUDGET_EPS {
            break;
        }
        let reduced = net.apply_removal(&removal)?;
        let flow_sol = flow::max_flow(&reduced, p.source(), p.dest(), limits)?;
        if flow_sol.value <= TOL {
            break;
        }
        let (link_q, node_q) = variant_duals(p, &removal, &reduced, &flow_sol, variant, limits)?;

        // Score the resources that still have capacity left. A free resource
        // with a positive shadow price outranks everything; otherwise the
        // shadow price itself (or the per-cost ratio) decides. Binary mode
        // only considers picks the remaining budget can pay in full.
        let mut best: Option<Candidate> = None;
        let mut consider = |resource: Resource, capacity: f64, cost: f64, q: f64, remaining: f64| {
            if capacity <= COST_EPS {
                return;
            }
            if !partial && cost > b + BUDGET_EPS {
                return;
            }
            let score = match variant {
                _ if cost <= COST_EPS => {
                    if q > TOL {
                        f64::INFINITY
                    } else {
                        return;
                    }
                }
                GreedyVariant::Shadow => q,
                GreedyVariant::Cost | GreedyVariant::CostAware => q * capacity / cost,
            };
            if score <= BUDGET_EPS {
                return;
            }
            let cand = Candidate {
                resource,
                score,
                capacity,
                cost,
                remaining,
            };
            if best.as_ref().is_none_or(|cur| wins(&cand, cur)) {
                best = Some(cand);
            }
        };
        for (i, link) in net.links().iter().enumerate() {
            let resource = link_resource(link);
            let z = removal.fraction(&resource);
            if z >= 1.0 - COST_EPS {
                continue;
            }
            let capacity = reduced.links()[i].capacity;
            let cost = link.cost() * (1.0 - z);
            consider(resource, capacity, cost, link_q.get(&link.id()).copied().unwrap_or(0.0), 1.0 - z);
        }
        for node in net.nodes() {
            if !node.is_computation() {
                continue;
            }
            let resource = Resource::Node { id: node.id.clone() };
            let z = removal.fraction(&resource);
            if z >= 1.0 - COST_EPS {
                continue;
            }
            let capacity = reduced.node(&node.id).expect("node preserved").processing_capacity;
            let cost = node.cost() * (1.0 - z);
            consider(resource, capacity, cost, node_q.get(&node.id).copied().unwrap_or(0.0), 1.0 - z);
        }

        let Some(pick) = best else {
            break;
        };
        let (z_add, pay) = if pick.cost <= b + BUDGET_EPS {
            (pick.remaining, pick.cost)
        } else {
            // Only reachable in partial mode: spend the rest of the budget on
            // a proportional slice of the picked resource.
            (pick.remaining * (b / pick.cost), b)
        };
        trace.push(GreedyStep {
            resource: pick.resource.clone(),
            score: pick.score,
            amount: z_add,
        });
        removal.add(pick.resource, z_add);
        spent += pay;
    }

    let residual = residual_flow(net, &removal, p.source(), p.dest(), limits)?;
    Ok(InterdictionSolution {
        removal,
        spent,
        residual_flow: residual,
        optimal: false,
        trace,
        objective: None,
    })
}

// ---------------------------------------------------------------------------
// Enumeration oracles
// ---------------------------------------------------------------------------

/// Ground-truth interdiction by exhaustive enumeration.
///
/// Binary mode enumerates all affordable resource subsets (depth-first over
/// resources in decreasing cost order, with a sound bound when costs equal
/// capacities: removing capacity c can lower the flow by at most c). Partial
/// mode — available only when every cost equals the capacity — enumerates
/// the minimal cuts and, for each, spreads the budget uniformly over the
/// cut's resources, truncated at full removal; the best cut wins.
///
/// Instances beyond [`ORACLE_RESOURCE_LIMIT`] candidate resources are
/// rejected with [`Error::OracleSize`]; oracles trade scale for certainty.
pub fn interdict_oracle(
    p: &InterdictionProblem,
    limits: &SolverLimits,
) -> Result<InterdictionSolution> {
    match p.mode() {
        InterdictionMode::Binary => oracle_binary(p, limits),
        InterdictionMode::Partial => oracle_partial(p, limits),
    }
}

struct BinaryOracle<'a> {
    p: &'a InterdictionProblem,
    limits: &'a SolverLimits,
    resources: Vec<(Resource, f64)>,
    costs_equal: bool,
    best_value: f64,
    best_set: Vec<usize>,
    best_spent: f64,
}

impl BinaryOracle<'_> {
    fn dfs(&mut self, start: usize, chosen: &mut Vec<usize>, spent: f64) -> Result<()> {
        let removal = RemovalSpec::full(
            chosen
                .iter()
                .map(|&i| self.resources[i].0.clone())
                .collect::<Vec<_>>(),
        );
        let value = residual_flow(
            self.p.network(),
            &removal,
            self.p.source(),
            self.p.dest(),
            self.limits,
        )?;
        if value < self.best_value - BUDGET_EPS {
            self.best_value = value;
            self.best_set = chosen.clone();
            self.best_spent = spent;
        }
        if value <= TOL {
            return Ok(());
        }
        let remaining = self.p.budget() - spent;
        // With cost = capacity, spending r more budget removes at most r
        // capacity, hence lowers the flow by at most r.
        if self.costs_equal && value - remaining >= self.best_value - BUDGET_EPS {
            return Ok(());
        }
        for i in start..self.resources.len() {
            let cost = self.resources[i].1;
            if cost <= remaining + BUDGET_EPS {
                chosen.push(i);
                self.dfs(i + 1, chosen, spent + cost)?;
                chosen.pop();
            }
        }
        Ok(())
    }
}

fn oracle_binary(p: &InterdictionProblem, limits: &SolverLimits) -> Result<InterdictionSolution> {
    let net = p.network();
    let mut resources: Vec<(Resource, f64)> = Vec::new();
    for link in net.links() {
        if link.capacity > COST_EPS && link.cost() <= p.budget() + BUDGET_EPS {
            resources.push((link_resource(link), link.cost()));
        }
    }
    for node in net.computation_nodes() {
        if node.cost() <= p.budget() + BUDGET_EPS {
            resources.push((Resource::Node { id: node.id.clone() }, node.cost()));
        }
    }
    if resources.len() > ORACLE_RESOURCE_LIMIT {
        return Err(Error::OracleSize {
            found: resources.len(),
            limit: ORACLE_RESOURCE_LIMIT,
        });
    }
    resources.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .expect("costs are finite")
            .then_with(|| a.0.cmp(&b.0))
    });

    let base_flow = residual_flow(net, &RemovalSpec::new(), p.source(), p.dest(), limits)?;
    let mut search = BinaryOracle {
        p,
        limits,
        resources,
        costs_equal: net.costs_equal_capacities(),
        best_value: base_flow,
        best_set: Vec::new(),
        best_spent: 0.0,
    };
    search.dfs(0, &mut Vec::new(), 0.0)?;

    let removal = RemovalSpec::full(
        search
            .best_set
            .iter()
            .map(|&i| search.resources[i].0.clone())
            .collect::<Vec<_>>(),
    );
    let residual = residual_flow(net, &removal, p.source(), p.dest(), limits)?;
    Ok(InterdictionSolution {
        removal,
        spent: search.best_spent,
        residual_flow: residual,
        optimal: true,
        trace: Vec::new(),
        objective: None,
    })
}

/// All minimal resource sets whose full removal disconnects the processed
/// flow, found by repeatedly blocking a live computation path.
fn enumerate_minimal_cuts(
    net: &ComputingNetwork,
    source: &NodeId,
    dest: &NodeId,
) -> Result<Vec<BTreeSet<Resource>>> {
    let layered = net.build_layered(source, dest)?;
    let resource_count = net.links().iter().filter(|l| l.capacity > COST_EPS).count()
        + net.computation_nodes().count();
    if resource_count > ORACLE_RESOURCE_LIMIT {
        return Err(Error::OracleSize {
            found: resource_count,
            limit: ORACLE_RESOURCE_LIMIT,
        });
    }

    // Resource carried by each layered edge (the return arc has none).
    let edge_resource: Vec<Option<Resource>> = layered
        .edges
        .iter()
        .map(|e| match e.kind {
            LayeredEdgeKind::UpperLink(i) | LayeredEdgeKind::LowerLink(i) => {
                Some(link_resource(&net.links()[i]))
            }
            LayeredEdgeKind::Process(i) => Some(Resource::Node {
                id: net.nodes()[i].id.clone(),
            }),
            LayeredEdgeKind::Return => None,
        })
        .collect();

    // Shortest live path, as the distinct resources along it.
    let find_path = |blocked: &BTreeSet<Resource>| -> Option<Vec<Resource>> {
        let mut parent: Vec<Option<usize>> = vec![None; layered.node_count()];
        let mut seen = vec![false; layered.node_count()];
        let mut queue = std::collections::VecDeque::new();
        seen[layered.source] = true;
        queue.push_back(layered.source);
        while let Some(v) = queue.pop_front() {
            if v == layered.sink {
                let mut resources = BTreeSet::new();
                let mut at = v;
                while let Some(ei) = parent[at] {
                    resources.insert(edge_resource[ei].clone().expect("path avoids return arc"));
                    at = layered.edges[ei].tail;
                }
                return Some(resources.into_iter().collect());
            }
            for (ei, edge) in layered.edges.iter().enumerate() {
                if edge.tail != v
                    || edge.capacity <= COST_EPS
                    || ei == layered.return_edge
                    || seen[edge.head]
                {
                    continue;
                }
                match &edge_resource[ei] {
                    Some(r) if blocked.contains(r) => continue,
                    _ => {}
                }
                seen[edge.head] = true;
                parent[edge.head] = Some(ei);
                queue.push_back(edge.head);
            }
        }
        None
    };

    // Branch on the resources of a live path. The i-th branch commits the
    // path's i-th resource to the cut and forbids the earlier ones, so every
    // minimal cut is reached exactly once: it survives in the branch of the
    // first of its members on the path.
    let mut visited = 0usize;
    let mut cuts: BTreeSet<BTreeSet<Resource>> = BTreeSet::new();
    let mut stack: Vec<(BTreeSet<Resource>, BTreeSet<Resource>)> =
        vec![(BTreeSet::new(), BTreeSet::new())];
    while let Some((current, forbidden)) = stack.pop() {
        visited += 1;
        if visited > ORACLE_STATE_LIMIT {
            return Err(Error::OracleSize {
                found: visited,
                limit: ORACLE_STATE_LIMIT,
            });
        }
        match find_path(&current) {
            Some(path) => {
                let mut branch_forbidden = forbidden.clone();
                for r in path {
                    if branch_forbidden.contains(&r) {
                        continue;
                    }
                    let mut next = current.clone();
                    next.insert(r.clone());
                    stack.push((next, branch_forbidden.clone()));
                    branch_forbidden.insert(r);
                }
            }
            None => {
                // Keep only minimal cuts: every member must be necessary. A
                // member can go redundant when later picks block its paths.
                let minimal = current.iter().all(|r| {
                    let mut without = current.clone();
                    without.remove(r);
                    find_path(&without).is_some()
                });
                if minimal {
                    cuts.insert(current);
                }
            }
        }
    }
    Ok(cuts.into_iter().collect())
}

fn oracle_partial(p: &InterdictionProblem, limits: &SolverLimits) -> Result<InterdictionSolution> {
    let mut sols =
        interdict_oracle_partial_sweep(p.network(), p.source(), p.dest(), &[p.budget()], limits)?;
    Ok(sols.pop().expect("one budget in, one solution out"))
}

/// Partial-mode oracle over many budgets at once: the minimal cuts are
/// enumerated a single time and every budget is evaluated against them.
/// Requires cost = capacity, like [`interdict_oracle`] in partial mode.
pub fn interdict_oracle_partial_sweep(
    net: &ComputingNetwork,
    source: &NodeId,
    dest: &NodeId,
    budgets: &[f64],
    limits: &SolverLimits,
) -> Result<Vec<InterdictionSolution>> {
    if let Some(r) = net.first_cost_capacity_mismatch() {
        return Err(Error::CostModelMismatch(r.to_string()));
    }
    for &b in budgets {
        if !b.is_finite() || b < 0.0 {
            return Err(Error::InvalidBudget(b));
        }
    }
    let base_flow = residual_flow(net, &RemovalSpec::new(), source, dest, limits)?;
    let identity = InterdictionSolution {
        removal: RemovalSpec::new(),
        spent: 0.0,
        residual_flow: base_flow,
        optimal: true,
        trace: Vec::new(),
        objective: None,
    };
    if base_flow <= TOL {
        return Ok(vec![identity; budgets.len()]);
    }

    let resource_cost = |r: &Resource| -> f64 {
        match r {
            Resource::Link { from, to } => net.link(from, to).expect("cut resource exists").cost(),
            Resource::Node { id } => net.node(id).expect("cut resource exists").cost(),
        }
    };
    let cuts = enumerate_minimal_cuts(net, source, dest)?;

    let mut out = Vec::with_capacity(budgets.len());
    for &budget in budgets {
        let mut best: Option<(f64, f64, RemovalSpec)> = None;
        for cut in &cuts {
            let cost: f64 = cut.iter().map(&resource_cost).sum();
            let z = (budget / cost).min(1.0);
            let mut removal = RemovalSpec::new();
            for r in cut {
                removal.add(r.clone(), z);
            }
            let value = residual_flow(net, &removal, source, dest, limits)?;
            let spent = z * cost;
            let improves = match &best {
                None => true,
                Some((bv, bs, _)) => {
                    value < bv - BUDGET_EPS
                        || ((value - bv).abs() <= BUDGET_EPS && spent < bs - BUDGET_EPS)
                }
            };
            if improves {
                best = Some((value, spent, removal));
            }
        }
        let (value, spent, removal) =
            best.unwrap_or_else(|| (base_flow, 0.0, RemovalSpec::new()));
        out.push(InterdictionSolution {
            removal,
            spent,
            residual_flow: value,
            optimal: true,
            trace: Vec::new(),
            objective: None,
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Budget sweeps
// ---------------------------------------------------------------------------

/// Interdiction method selector, shared by sweeps and front-ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    Greedy,
    GreedyCost,
    GreedyCostAware,
    Oracle,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Greedy => "greedy",
            Method::GreedyCost => "greedy_cost",
            Method::GreedyCostAware => "greedy_cost_aware",
            Method::Oracle => "oracle",
        }
    }
}

/// Run one method on one budget.
pub fn solve_with_method(
    net: &ComputingNetwork,
    source: &NodeId,
    dest: &NodeId,
    budget: f64,
    method: Method,
    mode: InterdictionMode,
    limits: &SolverLimits,
) -> Result<InterdictionSolution> {
    let p = InterdictionProblem::new(net.clone(), source.clone(), dest.clone(), budget, mode)?;
    match (method, mode) {
        (Method::Exact, InterdictionMode::Binary) => interdict_binary_exact(&p, limits),
        (Method::Exact, InterdictionMode::Partial) => Err(Error::Unsupported(
            "exact partial interdiction is not implemented; the oracle covers cost = capacity instances".into(),
        )),
        (Method::Greedy, InterdictionMode::Binary) => interdict_binary_greedy(&p, limits),
        (Method::Greedy, InterdictionMode::Partial) => {
            interdict_partial_greedy(&p, GreedyVariant::Shadow, limits)
        }
        (Method::GreedyCost, InterdictionMode::Binary) => interdict_binary_greedy_cost(&p, limits),
        (Method::GreedyCost, InterdictionMode::Partial) => {
            interdict_partial_greedy(&p, GreedyVariant::Cost, limits)
        }
        (Method::GreedyCostAware, InterdictionMode::Binary) => {
            interdict_binary_greedy_cost_aware(&p, limits)
        }
        (Method::GreedyCostAware, InterdictionMode::Partial) => {
            interdict_partial_greedy(&p, GreedyVariant::CostAware, limits)
        }
        (Method::Oracle, _) => interdict_oracle(&p, limits),
    }
}

/// One sweep result row.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub budget: f64,
    /// Method label; partial-mode rows carry a `partial_` prefix.
    pub method: String,
    pub residual_flow: f64,
    pub spent: f64,
    pub optimal: bool,
}

/// Run every requested (method, mode) combination on every budget.
///
/// Rows are ordered by the budgets as given, then by the method list order,
/// so output is deterministic.
pub fn budget_sweep(
    net: &ComputingNetwork,
    source: &NodeId,
    dest: &NodeId,
    budgets: &[f64],
    methods: &[(Method, InterdictionMode)],
    limits: &SolverLimits,
) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::with_capacity(budgets.len() * methods.len());
    for &budget in budgets {
        for &(method, mode) in methods {
            let sol = solve_with_method(net, source, dest, budget, method, mode, limits)?;
            let label = match mode {
                InterdictionMode::Binary => method.label().to_string(),
                InterdictionMode::Partial => format!("partial_{}", method.label()),
            };
            rows.push(SweepRow {
                budget,
                method: label,
                residual_flow: sol.residual_flow,
                spent: sol.spent,
                optimal: sol.optimal,
            });
        }
    }
    Ok(rows)
}

/// Render sweep rows as CSV (six decimal places, `.` decimal separator).
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("budget,method,residual_flow,spent,optimal\n");
    for row in rows {
        out.push_str(&format!(
            "{:.6},{},{:.6},{:.6},{}\n",
            row.budget, row.method, row.residual_flow, row.spent, row.optimal
        ));
    }
    out
}

/// Render sweep rows as pretty-printed JSON.
pub fn sweep_json(rows: &[SweepRow]) -> String {
    serde_json::to_string_pretty(rows).expect("sweep row serialization cannot fail")
}
