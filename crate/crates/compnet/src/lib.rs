//! Flow, cut, and interdiction solvers for computing networks.
//!
//! A computing network is a directed graph whose nodes may process traffic
//! (in-network computation) and whose links carry it. Flow between a source
//! and a destination only counts when it passes through a computation node,
//! which changes where the bottlenecks sit compared to classic flow networks.
//! This crate models such networks and answers the three questions that come
//! up when studying their robustness:
//!
//! * [`flow`] — how much processed throughput the network supports
//!   (a linear program over a two-layer expansion, with shadow prices).
//! * [`cuts`] — the cheapest set of links and/or computation nodes whose
//!   removal drops the throughput to zero (exact solvers and fast
//!   approximations with a factor-two guarantee).
//! * [`interdict`] — how a budgeted adversary best degrades throughput, and
//!   how well greedy attacks based on shadow prices approximate the optimum.
//!
//! [`model`] holds the network representation and its JSON serialization,
//! [`lp`] the simplex/branch-and-bound engine behind the exact solvers, and
//! [`testkit`] fixtures, reference oracles, and generators used by the test
//! suite and the command-line tool.

pub mod cuts;
pub mod error;
pub mod flow;
pub mod interdict;
pub mod lp;
pub mod model;
pub mod testkit;

pub use error::{Error, Result};
