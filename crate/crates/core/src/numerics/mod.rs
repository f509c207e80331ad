//! Shared numerical kernels: quadrature, root finding, log-space sums.

pub mod logspace;
pub mod quad;
pub mod roots;

pub use logspace::{log_add, log_sum_exp_pairwise, LogWeight};
pub use quad::{integrate, integrate_unit, QUAD_TOL};
pub use roots::{golden_max, grow_bracket, solve_bracketed, RootResult, ROOT_RES_TOL, ROOT_X_TOL};
