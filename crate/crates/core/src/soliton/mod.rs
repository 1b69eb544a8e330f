//! Conformal η-Ricci solitons on paracontact metric manifolds: residuals,
//! exact solving for λ and μ, and the classification checks.

mod classify;

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::geometry::{hessian, lie_derivative, Curvature, GeometryError, TensorField};
use crate::paracontact::ParacontactStructure;
use crate::symexpr::{solve_linear, Expr, ExprError, LinearSolution, LinearSystem, Symbol};

pub use classify::{
    classify_branch, collinearity_analysis, commutation_residual, connection_variation_residual,
    contact_transformation, curvature_variation_residual, eta_einstein_extract, eta_lie_xi_check,
    expected_contact_factor, killing_check, phi_invariance_check, ricci_form_checks, ricci_form_mu,
    Branch, BranchCase, Collinearity, ContactTransformation, EtaEinstein, EtaLieXi, RicciForm,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolitonError {
    #[error("the problem has no {0}")]
    Missing(&'static str),
    #[error("p must not depend on coordinates: {0}")]
    CoordinateDependentP(String),
    #[error("not a soliton: component ({}, {}) reduces to {equation} = 0", .index.0, .index.1)]
    NotASoliton {
        index: (usize, usize),
        equation: Expr,
    },
    #[error("solution depends on coordinates: lambda = {lambda}, mu = {mu}")]
    NonConstantSolution { lambda: Expr, mu: Expr },
    #[error("underdetermined: free unknowns {free:?}")]
    Underdetermined {
        free: Vec<String>,
        pivots: BTreeMap<String, Expr>,
    },
    #[error("not eta-Einstein: component ({}, {}) reduces to {residual} = 0", .index.0, .index.1)]
    NotEtaEinstein {
        index: (usize, usize),
        residual: Expr,
    },
    #[error(
        "not an infinitesimal contact transformation: L_V eta - a eta = {residual} at {index}"
    )]
    NotContactTransformation { index: usize, residual: Expr },
    #[error("V is not collinear with xi: V - eta(V) xi = {residual} at {index}")]
    NotCollinear { index: usize, residual: Expr },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// λ or μ: solved for, or supplied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarMode {
    Unknown,
    Given(Expr),
}

/// Which soliton equation the residual comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equation {
    /// `L_V g + 2S + [2λ − (p + 2/(2n+1))]g + 2μ η⊗η`.
    Conformal,
    /// `Hess f + S + [λ − (p/2 + 1/(2n+1))]g + μ η⊗η`.
    Gradient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionKind {
    Constants,
    Functions,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolitonSolution {
    pub lambda: Expr,
    pub mu: Expr,
    pub kind: SolutionKind,
    pub residual_zero: bool,
}

#[derive(Clone, Debug)]
pub struct SolitonProblem {
    structure: ParacontactStructure,
    curvature: Arc<Curvature>,
    v: Option<TensorField>,
    f: Option<Expr>,
    p: Expr,
    pub lambda: ScalarMode,
    pub mu: ScalarMode,
}

impl SolitonProblem {
    pub fn new(
        structure: ParacontactStructure,
        v: Option<TensorField>,
        f: Option<Expr>,
        p: Expr,
    ) -> Result<Self, SolitonError> {
        if v.is_none() && f.is_none() {
            return Err(SolitonError::Missing("vector field V or potential f"));
        }
        if let Some(v) = &v {
            v.expect_rank(1, 0)?;
            v.same_chart(structure.metric().tensor())?;
        }
        let coords = structure.chart().coord_names();
        if !p.free_of(coords.iter().copied()) {
            return Err(SolitonError::CoordinateDependentP(p.to_string()));
        }
        let curvature = Arc::new(Curvature::compute(structure.metric()));
        Ok(SolitonProblem {
            structure,
            curvature,
            v,
            f,
            p,
            lambda: ScalarMode::Unknown,
            mu: ScalarMode::Unknown,
        })
    }

    pub fn with_lambda(mut self, lambda: ScalarMode) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn with_mu(mut self, mu: ScalarMode) -> Self {
        self.mu = mu;
        self
    }

    pub fn structure(&self) -> &ParacontactStructure {
        &self.structure
    }

    pub fn curvature(&self) -> &Curvature {
        &self.curvature
    }

    pub fn v(&self) -> Option<&TensorField> {
        self.v.as_ref()
    }

    pub fn f(&self) -> Option<&Expr> {
        self.f.as_ref()
    }

    pub fn p(&self) -> &Expr {
        &self.p
    }

    fn one_over_dim(&self) -> Expr {
        Expr::ratio(1, self.structure.dim() as i64)
    }
}

pub fn conformal_residual(
    prob: &SolitonProblem,
    lambda: &Expr,
    mu: &Expr,
) -> Result<TensorField, SolitonError> {
    let v = prob
        .v
        .as_ref()
        .ok_or(SolitonError::Missing("vector field V"))?;
    let s = &prob.structure;
    let lvg = lie_derivative(s.metric().tensor(), v)?;
    let coeff = lambda.scale_int(2) - (&prob.p + prob.one_over_dim().scale_int(2));
    combine(
        s,
        &lvg,
        &prob.curvature.ricci.scale(&Expr::from_int(2)),
        &coeff,
        &mu.scale_int(2),
    )
}

pub fn gradient_residual(
    prob: &SolitonProblem,
    lambda: &Expr,
    mu: &Expr,
) -> Result<TensorField, SolitonError> {
    let f = prob
        .f
        .as_ref()
        .ok_or(SolitonError::Missing("potential f"))?;
    let s = &prob.structure;
    let hess = hessian(f, s.metric());
    let coeff = lambda - (&prob.p * Expr::ratio(1, 2) + prob.one_over_dim());
    combine(s, &hess, &prob.curvature.ricci, &coeff, mu)
}

pub fn residual(
    prob: &SolitonProblem,
    equation: Equation,
    lambda: &Expr,
    mu: &Expr,
) -> Result<TensorField, SolitonError> {
    match equation {
        Equation::Conformal => conformal_residual(prob, lambda, mu),
        Equation::Gradient => gradient_residual(prob, lambda, mu),
    }
}

// first + ricci + coeff·g + eta_coeff·η⊗η
fn combine(
    s: &ParacontactStructure,
    first: &TensorField,
    ricci: &TensorField,
    coeff: &Expr,
    eta_coeff: &Expr,
) -> Result<TensorField, SolitonError> {
    let g = s.metric().tensor().scale(coeff);
    let ee = s.eta_eta().scale(eta_coeff);
    Ok(first.add(ricci)?.add(&g)?.add(&ee)?)
}

/// A symbol name not already used on the structure's chart.
pub(crate) fn fresh_name(s: &ParacontactStructure, base: &str) -> String {
    let table = s.chart().table();
    let mut name = base.to_string();
    while table.contains(&name) {
        name.push('_');
    }
    name
}

/// Upper-triangle `(i, j)` pairs, `i <= j`.
pub(crate) fn upper_triangle(dim: usize) -> Vec<(usize, usize)> {
    (0..dim)
        .flat_map(|i| (i..dim).map(move |j| (i, j)))
        .collect()
}

/// λ, μ such that the conformal soliton residual vanishes, required to be free of
/// coordinates.
pub fn solve_constants(prob: &SolitonProblem) -> Result<SolitonSolution, SolitonError> {
    solve(prob, Equation::Conformal, SolutionKind::Constants)
}

/// As [`solve_constants`] but λ, μ may depend on the coordinates.
pub fn solve_almost(prob: &SolitonProblem) -> Result<SolitonSolution, SolitonError> {
    solve(prob, Equation::Conformal, SolutionKind::Functions)
}

pub fn solve(
    prob: &SolitonProblem,
    equation: Equation,
    kind: SolutionKind,
) -> Result<SolitonSolution, SolitonError> {
    let s = &prob.structure;
    let lname = fresh_name(s, "lambda");
    let mname = fresh_name(s, "mu");
    let mut unknowns = Vec::new();
    let lambda = match &prob.lambda {
        ScalarMode::Given(e) => e.clone(),
        ScalarMode::Unknown => {
            unknowns.push(Symbol::unknown(&lname));
            Expr::symbol(&lname)
        }
    };
    let mu = match &prob.mu {
        ScalarMode::Given(e) => e.clone(),
        ScalarMode::Unknown => {
            unknowns.push(Symbol::unknown(&mname));
            Expr::symbol(&mname)
        }
    };
    let res = residual(prob, equation, &lambda, &mu)?;
    let pairs = upper_triangle(s.dim());
    let equations: Vec<Expr> = pairs
        .iter()
        .map(|&(i, j)| res.get(&[i, j]).clone())
        .collect();
    let system = LinearSystem::new(unknowns, equations)?;
    let values = match solve_linear(&system) {
        LinearSolution::Unique(values) => values,
        LinearSolution::Inconsistent { equation, residual } => {
            return Err(SolitonError::NotASoliton {
                index: pairs[equation],
                equation: residual,
            })
        }
        LinearSolution::Underdetermined { free, pivots } => {
            return Err(SolitonError::Underdetermined { free, pivots })
        }
    };
    let lambda = values.get(&lname).cloned().unwrap_or(lambda);
    let mu = values.get(&mname).cloned().unwrap_or(mu);
    let coords = s.chart().coord_names();
    let constant = lambda.free_of(coords.iter().copied()) && mu.free_of(coords.iter().copied());
    if kind == SolutionKind::Constants && !constant {
        return Err(SolitonError::NonConstantSolution { lambda, mu });
    }
    let residual_zero = residual(prob, equation, &lambda, &mu)?.is_zero();
    Ok(SolitonSolution {
        lambda,
        mu,
        kind: if constant {
            SolutionKind::Constants
        } else {
            SolutionKind::Functions
        },
        residual_zero,
    })
}
