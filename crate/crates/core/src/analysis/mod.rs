//! Scoring, searches, shape studies, shot estimation and circuit growth.

pub mod auc;
pub mod estimate;
pub mod growth;
pub mod search;
pub mod shapes;

pub use auc::{auc_roc, spearman};
pub use estimate::{estimate_activation, estimate_aucs, estimate_dataset, EstimateRow, DEFAULT_SHOTS};
pub use growth::{circuit_growth, GrowthRow};
pub use search::{
    extended_param_grid, grid_search, grid_search_over, param_grid, weight_grid, SearchReport, SearchResult,
    DEFAULT_RESOLUTION,
};
pub use shapes::{metric, shape_study, MetricKind, ShapePoint};
