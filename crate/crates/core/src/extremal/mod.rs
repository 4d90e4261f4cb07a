//! Closed-form extremal quantities, the extremal family and graph-limit joins.

mod family;
mod join;
mod fivecomb;
mod params;

pub use family::{
    construct_h, construct_h_dense, h_statistics, multipartite_patterns, HFamilySpec, HStats, UVariant,
    STATS_MAX_CLIQUE,
};
pub use join::{
    bipartite_limit, compare_join_forms, join_eval, join_eval_orbit_form, multipartite_limit_density, phi_member,
    phi_member_join, zero_hom, BipartiteLimit, DensityVector, Evaluator, Join, JoinFormRow, PsiSpec, ZeroHom,
    JOIN_MAX_ORDER,
};
pub use fivecomb::{g1_g2, verify_5comb, FiveCombCheck};
pub use params::{
    bound_36, c_of, c_residual, choose, curve_csv, curve_row, eta_root, goodman_bound, goodman_density, grid, h3,
    h_r, h_t_explicit, k41_lower_bound, kr_recursion_residual, link_edge_density, params, t_of, CurveRow,
    ExtremalParams, K41Bound,
};
