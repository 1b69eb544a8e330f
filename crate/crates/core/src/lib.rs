//! Exact symbolic tensor calculus for paracontact geometry: structure
//! checks, curvature, and conformal η-Ricci soliton solving.

// Tensor code reads best with explicit index loops.
#![allow(clippy::needless_range_loop)]

pub mod geometry;
pub mod manifest;
pub mod paracontact;
pub mod pipeline;
pub mod report;
pub mod soliton;
pub mod symexpr;

pub use geometry::{Chart, Curvature, Frame, KForm, Metric, TensorField};
pub use manifest::{load_manifest, parse_manifest, Manifest, ManifestError};
pub use paracontact::{ParacontactStructure, StructureVerdict};
pub use report::{CheckOutcome, Status, VerdictReport};
pub use soliton::{SolitonError, SolitonProblem, SolitonSolution};
pub use symexpr::{parse_expr, Expr, ExprError, Symbol, SymbolKind, SymbolTable};
