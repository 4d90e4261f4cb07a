//! Ground-truth oracles and constructive procedures on concrete graphs.

mod brute;
mod edit;
mod grow;
mod local;
mod partition;
mod ratios;
mod stability;

pub use brute::{brute_curve, brute_min, brute_min_capped, curve_csv, CurvePoint, BRUTE_MAX_ORDER};
pub use edit::{
    edit_distance_to_family, edit_distance_with, EditConfig, EditDistance, EDIT_EXACT_MAX_ORDER, EDIT_EXACT_U_MAX,
};
pub use grow::{grow_trianglefree, random_trianglefree, GrowResult};
pub use local::{adjust_edges, climb, family_start, local_min, local_min_with, LocalMinConfig, LocalMinResult, LOCAL_MAX_ORDER};
pub use ratios::{minimize_ratios, project_ratios, ratio_objective, RatioPoint};
pub use stability::{distance_to_turan, stability_probe, StabilityEntry, StabilityReport};
