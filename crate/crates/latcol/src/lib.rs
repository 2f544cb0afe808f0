//! Catalogs of orbit partitions of the cubic lattices `Z^d`: enumeration
//! drivers, JSON files, verification, reports and pictures.

mod error;
pub mod pipeline;
pub mod render;
pub mod report;
pub mod schema;
pub mod two_step;
pub mod verify;

pub use error::{CatalogError, Result};
pub use pipeline::{
    enumerate_node_transitive, enumerate_partitions, node_budget_from_env, Catalog, RunConfig, RunStats,
    TransitiveGroup, NODE_BUDGET_ENV,
};
pub use render::{render_slices, render_svg};
pub use report::report_tables;
pub use schema::CatalogJson;
pub use two_step::{two_step_enumerate, SubgroupStep, TwoStepConfig};
pub use verify::{verify_catalog, Mismatch, VerifyReport};
