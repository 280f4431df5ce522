//! Verification backbone: named fixtures with frozen expected values,
//! brute-force oracles independent of the optimization stack, seeded random
//! instance generators, and the set-cover reduction used to probe cut
//! hardness. Everything here is exact and deliberately unoptimized — these
//! are the referees, not the players.

pub mod fixtures;
pub mod oracle;
pub mod random;
pub mod x3c;

pub use fixtures::{
    abilene_edges, abilene_network, evaluate_metric, export_fixtures, fixture, fixtures, manifest,
    Basis, ExpectedMetric, Expectation, Fixture, FixtureManifest, ManifestEntry,
};
pub use oracle::{cut_oracle, CUT_ORACLE_RESOURCE_LIMIT};
pub use random::{
    combine_capacities, random_costed_network, random_small_network, resample_capacities,
};
pub use x3c::{
    blocking_cover, build_x3c_reduction, no_cover_instance, planted_cover_instance,
    worked_instance, X3CInstance,
};
