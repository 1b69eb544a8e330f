//! Tensor calculus on a single coordinate chart.

mod calculus;
mod chart;
mod connection;
mod curvature;
mod forms;
mod frame;
mod lie;
mod metric;
mod signature;
mod tensor;

use thiserror::Error;

use crate::symexpr::ExprError;

pub use calculus::{differential, gradient, hessian};
pub use chart::Chart;
pub use connection::{christoffel, covariant_derivative, Connection};
pub use curvature::{
    ricci, ricci_from_riemann, ricci_operator, riemann, riemann_apply, riemann_from_connection,
    scalar_curvature, Curvature,
};
pub use forms::{evaluate_form, exterior_derivative, wedge, wedge_power, KForm};
pub use frame::{frame_component, Frame, FrameSlot};
pub use lie::{
    curvature_variation_from_connection, lie_bracket, lie_derivative, lie_derivative_of_connection,
    lie_derivative_of_curvature,
};
pub use metric::{invert, Metric};
pub use signature::{find_regular_point, inertia, rank, signature_at, Inertia};
pub use tensor::{multi_indices, TensorField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("chart has no coordinates")]
    EmptyChart,
    #[error("tensors live on different charts")]
    ChartMismatch,
    #[error("expected a ({}, {}) tensor, found ({}, {})", .expected.0, .expected.1, .found.0, .found.1)]
    RankMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("expected {expected} components, found {found}")]
    ComponentCount { expected: usize, found: usize },
    #[error("expected a {expected} matrix, found {found}")]
    ShapeMismatch { expected: String, found: String },
    #[error("symbol '{0}' is not defined on the chart")]
    ForeignSymbol(String),
    #[error("metric is not symmetric at ({i}, {j})")]
    AsymmetricMetric { i: usize, j: usize },
    #[error("metric determinant is identically zero")]
    DegenerateMetric,
    #[error("frame vectors are linearly dependent")]
    DegenerateFrame,
    #[error("tensor is not totally antisymmetric")]
    NotAntisymmetric,
    #[error("exterior derivative of a degree-{degree} form on a {dim}-dimensional chart")]
    TopDegree { degree: usize, dim: usize },
    #[error("wedge product of total degree {degree} exceeds dimension {dim}")]
    DegreeOverflow { degree: usize, dim: usize },
    #[error("argument count or slot types do not match the tensor")]
    ArityMismatch,
    #[error(transparent)]
    Expr(#[from] ExprError),
}
