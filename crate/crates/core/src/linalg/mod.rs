//! Exact integer and rational linear algebra.

mod matrix;
mod normal_form;
mod system;

use thiserror::Error;

pub use matrix::{dot, int_vec, IntegerMatrix};
pub use normal_form::{
    hermite_normal_form, lattice_basis, rank, smith_normal_form, HermiteForm, SmithForm,
};
pub use system::{
    integer_kernel, lattice_points_bounded, rational_feasible, rational_interval,
    solve_integer_system, Equality, Feasibility, Inequality, IntegerSolution, Interval,
    LinearSystem,
};
pub(crate) use system::{lattice_points_in_box, solve_matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("constraint has {found} coefficients, system has {expected} variables")]
    DimensionMismatch { expected: usize, found: usize },
}
