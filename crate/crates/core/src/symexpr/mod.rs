//! Exact rational functions over ℚ: arithmetic, differentiation, zero
//! testing, parsing and printing, and affine solving over the function field.

mod expr;
pub mod format;
mod gcd;
mod linear;
mod parse;
pub mod poly;
mod symbol;

use thiserror::Error;

pub use expr::Expr;
pub use format::format_expr;
pub use gcd::gcd as poly_gcd;
pub use linear::{solve_linear, LinearSolution, LinearSystem};
pub use parse::parse_expr;
pub use poly::{Poly, Rational};
pub use symbol::{Symbol, SymbolKind, SymbolTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown symbol '{name}' at position {pos}")]
    UnknownSymbol { name: String, pos: usize },
    #[error("division by zero{}", .pos.map(|p| format!(" at position {p}")).unwrap_or_default())]
    DivisionByZero { pos: Option<usize> },
    #[error("exponent is not an integer at position {pos}")]
    NonIntegerExponent { pos: usize },
    #[error("exponent too large")]
    ExponentTooLarge,
    #[error("symbol '{0}' has no value at the evaluation point")]
    UnassignedSymbol(String),
    #[error("denominator vanishes at the evaluation point")]
    Pole,
    #[error("duplicate symbol '{0}'")]
    DuplicateSymbol(String),
    #[error("'{0}' is not a valid symbol name")]
    InvalidSymbolName(String),
    #[error("'{0}' is not declared as an unknown")]
    NotAnUnknown(String),
    #[error("equation {equation} is not affine in the unknowns")]
    NotAffine { equation: usize },
}
