use super::{
    fresh_name, upper_triangle, SolitonError, SolitonProblem, SolitonSolution, SolutionKind,
};
use crate::geometry::{
    curvature_variation_from_connection, lie_bracket, lie_derivative, lie_derivative_of_connection,
    Curvature, Metric, TensorField,
};
use crate::paracontact::{ParacontactStructure, StructureVerdict};
use crate::symexpr::{solve_linear, Expr, LinearSolution, LinearSystem, Symbol};

fn n_expr(s: &ParacontactStructure) -> Expr {
    Expr::from_int(s.n() as i64)
}

fn inv_dim(s: &ParacontactStructure) -> Expr {
    Expr::ratio(1, s.dim() as i64)
}

/// V is Killing iff `L_V g = 0`.
pub fn killing_check(v: &TensorField, g: &Metric) -> Result<StructureVerdict, SolitonError> {
    let lvg = lie_derivative(g.tensor(), v)?;
    Ok(StructureVerdict::from_residual(
        "V Killing: L_V g = 0",
        &lvg,
    ))
}

/// V leaves φ invariant iff `L_V φ = 0`.
pub fn phi_invariance_check(
    v: &TensorField,
    s: &ParacontactStructure,
) -> Result<StructureVerdict, SolitonError> {
    let lvphi = lie_derivative(s.phi(), v)?;
    Ok(StructureVerdict::from_residual(
        "V leaves phi invariant: L_V phi = 0",
        &lvphi,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaEinstein {
    pub a: Expr,
    pub b: Expr,
    pub einstein: bool,
}

/// Coordinate-free `a`, `b` with `S = a g + b η⊗η`.
pub fn eta_einstein_extract(
    s: &ParacontactStructure,
    curv: &Curvature,
) -> Result<EtaEinstein, SolitonError> {
    let an = fresh_name(s, "a");
    let bn = fresh_name(s, "b");
    let (a, b) = (Expr::symbol(&an), Expr::symbol(&bn));
    let pairs = upper_triangle(s.dim());
    let equations: Vec<Expr> = pairs
        .iter()
        .map(|&(i, j)| {
            curv.ricci.get(&[i, j])
                - &a * s.metric().at(i, j)
                - &b * s.eta().get(&[i]) * s.eta().get(&[j])
        })
        .collect();
    let system = LinearSystem::new(vec![Symbol::unknown(&an), Symbol::unknown(&bn)], equations)?;
    let coords = s.chart().coord_names();
    match solve_linear(&system) {
        LinearSolution::Unique(values) => {
            let a = values[&an].clone();
            let b = values[&bn].clone();
            if !a.free_of(coords.iter().copied()) || !b.free_of(coords.iter().copied()) {
                // Pointwise η-Einstein only; report the coefficient that varies.
                let residual = if a.free_of(coords.iter().copied()) {
                    b
                } else {
                    a
                };
                return Err(SolitonError::NotEtaEinstein {
                    index: (0, 0),
                    residual,
                });
            }
            Ok(EtaEinstein {
                einstein: b.is_zero(),
                a,
                b,
            })
        }
        LinearSolution::Inconsistent { equation, residual } => Err(SolitonError::NotEtaEinstein {
            index: pairs[equation],
            residual,
        }),
        LinearSolution::Underdetermined { free, pivots } => {
            Err(SolitonError::Underdetermined { free, pivots })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactTransformation {
    pub a: Expr,
    /// `a = 0`.
    pub strict: bool,
}

/// Solves `L_V η = a η` for a scalar `a`.
pub fn contact_transformation(
    v: &TensorField,
    s: &ParacontactStructure,
) -> Result<ContactTransformation, SolitonError> {
    let lve = lie_derivative(s.eta(), v)?;
    let k = (0..s.dim())
        .find(|&i| !s.eta().get(&[i]).is_zero())
        .expect("eta(xi) = 1 forces a nonzero component");
    let a = lve.get(&[k]).div(s.eta().get(&[k]))?;
    let rest = lve.sub(&s.eta().scale(&a))?;
    if let Some((idx, residual)) = rest.first_nonzero() {
        return Err(SolitonError::NotContactTransformation {
            index: idx[0],
            residual,
        });
    }
    Ok(ContactTransformation {
        strict: a.is_zero(),
        a,
    })
}

/// `a = 2n − λ − μ + p/2 + 1/(2n+1)` on a para-Sasakian soliton.
pub fn expected_contact_factor(prob: &SolitonProblem, sol: &SolitonSolution) -> Expr {
    let s = prob.structure();
    n_expr(s).scale_int(2) - &sol.lambda - &sol.mu + prob.p() * Expr::ratio(1, 2) + inv_dim(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collinearity {
    /// `η(V)`.
    pub f: Expr,
    pub constant: bool,
    /// `(expected r, matches)` for `r = 2 − 2μ + (2n+1)(p − 2λ)`.
    pub r_formula: Option<(Expr, bool)>,
}

/// Checks `V = f ξ` with `f = η(V)`.
pub fn collinearity_analysis(
    v: &TensorField,
    s: &ParacontactStructure,
    sol: Option<(&SolitonSolution, &Expr, &Curvature)>,
) -> Result<Collinearity, SolitonError> {
    let f: Expr = (0..s.dim()).map(|i| s.eta().get(&[i]) * v.get(&[i])).sum();
    let rest = v.sub(&s.xi().scale(&f))?;
    if let Some((idx, residual)) = rest.first_nonzero() {
        return Err(SolitonError::NotCollinear {
            index: idx[0],
            residual,
        });
    }
    let coords = s.chart().coord_names();
    let constant = coords.iter().all(|c| f.differentiate(c).is_zero());
    let r_formula = sol.map(|(sol, p, curv)| {
        let expected = Expr::from_int(2) - sol.mu.scale_int(2)
            + Expr::from_int(s.dim() as i64) * (p - sol.lambda.scale_int(2));
        let ok = expected == curv.scalar;
        (expected, ok)
    });
    Ok(Collinearity {
        f,
        constant,
        r_formula,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaLieXi {
    /// `η(L_V ξ)`.
    pub eta_lv_xi: Expr,
    /// `−(L_V η)(ξ)`.
    pub minus_lv_eta_xi: Expr,
    /// `λ − p/2 − 1/(2n+1) − 2n + μ`.
    pub expected: Expr,
    pub pass: bool,
}

pub fn eta_lie_xi_check(
    prob: &SolitonProblem,
    sol: &SolitonSolution,
) -> Result<EtaLieXi, SolitonError> {
    let s = prob.structure();
    let v = prob.v().ok_or(SolitonError::Missing("vector field V"))?;
    let lv_xi = lie_bracket(v, s.xi())?;
    let eta_lv_xi: Expr = (0..s.dim())
        .map(|i| s.eta().get(&[i]) * lv_xi.get(&[i]))
        .sum();
    let lv_eta = lie_derivative(s.eta(), v)?;
    let minus_lv_eta_xi: Expr = -(0..s.dim())
        .map(|i| lv_eta.get(&[i]) * s.xi().get(&[i]))
        .sum::<Expr>();
    let expected =
        &sol.lambda - prob.p() * Expr::ratio(1, 2) - inv_dim(s) - n_expr(s).scale_int(2) + &sol.mu;
    let pass = eta_lv_xi == expected && minus_lv_eta_xi == expected;
    Ok(EtaLieXi {
        eta_lv_xi,
        minus_lv_eta_xi,
        expected,
        pass,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchCase {
    Killing,
    PhiInvariant,
    Neither,
    NotApplicable,
}

impl BranchCase {
    pub fn label(self) -> &'static str {
        match self {
            BranchCase::Killing => "Killing",
            BranchCase::PhiInvariant => "phi-invariant",
            BranchCase::Neither => "neither",
            BranchCase::NotApplicable => "not applicable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub case: BranchCase,
    /// `λ − (p/2 + 1/(2n+1) + 2n − μ)`.
    pub killing_residual: Option<Expr>,
    /// `λ − (p/2 + 1/(2n+1) − 2n + μ − 4)`.
    pub phi_invariant_residual: Option<Expr>,
    /// Killing on the Killing branch, `L_V φ = 0` on the φ-invariant branch.
    pub branch_property: Option<StructureVerdict>,
    /// `S = (μ−2n)g − μ η⊗η` on the Killing branch, `S = 2g − 2(n+1) η⊗η` on the φ-invariant branch.
    pub ricci_form: Option<StructureVerdict>,
}

impl Branch {
    fn not_applicable() -> Self {
        Branch {
            case: BranchCase::NotApplicable,
            killing_residual: None,
            phi_invariant_residual: None,
            branch_property: None,
            ricci_form: None,
        }
    }

    /// A branch was selected and both of its properties verify.
    pub fn consistent(&self) -> bool {
        matches!(self.case, BranchCase::Killing | BranchCase::PhiInvariant)
            && self.branch_property.as_ref().is_some_and(|v| v.pass)
            && self.ricci_form.as_ref().is_some_and(|v| v.pass)
    }
}

/// Picks the soliton branch. `para_sasakian` gates the classification.
pub fn classify_branch(
    prob: &SolitonProblem,
    sol: &SolitonSolution,
    para_sasakian: bool,
) -> Result<Branch, SolitonError> {
    let Some(v) = prob.v() else {
        return Ok(Branch::not_applicable());
    };
    if !para_sasakian || !sol.residual_zero || sol.kind != SolutionKind::Constants {
        return Ok(Branch::not_applicable());
    }
    let s = prob.structure();
    let n = n_expr(s);
    let base = prob.p() * Expr::ratio(1, 2) + inv_dim(s);
    let r1 = &sol.lambda - (&base + n.scale_int(2) - &sol.mu);
    let r2 = &sol.lambda - (&base - n.scale_int(2) + &sol.mu - Expr::from_int(4));
    let killing = killing_check(v, s.metric())?;
    let case = match (r1.is_zero(), r2.is_zero()) {
        (true, false) => BranchCase::Killing,
        (false, true) => BranchCase::PhiInvariant,
        (true, true) if killing.pass => BranchCase::Killing,
        (true, true) => BranchCase::PhiInvariant,
        (false, false) => BranchCase::Neither,
    };
    let ricci = &prob.curvature().ricci;
    let g = s.metric().tensor();
    let (branch_property, ricci_form) = match case {
        BranchCase::Killing => {
            let expected = g
                .scale(&(&sol.mu - n.scale_int(2)))
                .sub(&s.eta_eta().scale(&sol.mu))?;
            (
                Some(killing),
                Some(StructureVerdict::from_residual(
                    "S = (mu - 2n)g - mu eta(x)eta",
                    &ricci.sub(&expected)?,
                )),
            )
        }
        BranchCase::PhiInvariant => {
            let expected = g
                .scale(&Expr::from_int(2))
                .sub(&s.eta_eta().scale(&(n + Expr::one()).scale_int(2)))?;
            (
                Some(phi_invariance_check(v, s)?),
                Some(StructureVerdict::from_residual(
                    "S = 2g - 2(n+1) eta(x)eta",
                    &ricci.sub(&expected)?,
                )),
            )
        }
        _ => (None, None),
    };
    Ok(Branch {
        case,
        killing_residual: Some(r1),
        phi_invariant_residual: Some(r2),
        branch_property,
        ricci_form,
    })
}

/// μ for which the η-Einstein pair has the form `(μ − 2n, −μ)`.
pub fn ricci_form_mu(ee: &EtaEinstein, s: &ParacontactStructure) -> Option<Expr> {
    let mu = -&ee.b;
    (ee.a == &mu - n_expr(s).scale_int(2)).then_some(mu)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RicciForm {
    /// `QX = (μ − 2n)X − μ η(X)ξ`.
    pub ricci_form: StructureVerdict,
    /// `2nμ − 2n(2n+1)`.
    pub trace_expected: Expr,
    pub trace_pass: bool,
    /// For `μ = 0`: `Q = −2n I` and `r = −2n(2n+1)`.
    pub einstein: Option<bool>,
}

pub fn ricci_form_checks(
    s: &ParacontactStructure,
    curv: &Curvature,
    mu: &Expr,
) -> Result<RicciForm, SolitonError> {
    let n = n_expr(s);
    let two_n = n.scale_int(2);
    let id = TensorField::identity(s.chart());
    let expected = id.scale(&(mu - &two_n)).sub(&s.eta_xi().scale(mu))?;
    let ricci_form = StructureVerdict::from_residual(
        "QX = (mu - 2n)X - mu eta(X)xi",
        &curv.ricci_operator.sub(&expected)?,
    );
    let dim = Expr::from_int(s.dim() as i64);
    let trace_expected = &two_n * mu - &two_n * &dim;
    let trace_pass = curv.scalar == trace_expected;
    let einstein = mu.is_zero().then(|| {
        curv.ricci_operator
            .sub(&id.scale(&-&two_n))
            .is_ok_and(|t| t.is_zero())
            && curv.scalar == -(&two_n * &dim)
    });
    Ok(RicciForm {
        ricci_form,
        trace_expected,
        trace_pass,
        einstein,
    })
}

/// `(L_V∇)(X, ξ) − [2(μ−2n)φX − 2QφX]`, components `[k, i]` for `X = ∂i`.
pub fn connection_variation_residual(
    v: &TensorField,
    s: &ParacontactStructure,
    curv: &Curvature,
    mu: &Expr,
) -> Result<TensorField, SolitonError> {
    let lv = lie_derivative_of_connection(v, &curv.connection)?;
    let qphi = curv.ricci_operator.compose(s.phi())?;
    let c = (mu - n_expr(s).scale_int(2)).scale_int(2);
    let dim = s.dim();
    Ok(TensorField::from_fn(s.chart(), 1, 1, |idx| {
        let (k, i) = (idx[0], idx[1]);
        let lhs: Expr = (0..dim)
            .map(|j| lv.get(&[k, i, j]) * s.xi().get(&[j]))
            .sum();
        lhs - &c * s.phi().get(&[k, i]) + qphi.get(&[k, i]).scale_int(2)
    }))
}

/// `(L_V R)(X, ξ)ξ − [4(μ−2n)X − 4QX − 4μ η(X)ξ]`, components `[l, i]`.
pub fn curvature_variation_residual(
    v: &TensorField,
    s: &ParacontactStructure,
    curv: &Curvature,
    mu: &Expr,
) -> Result<TensorField, SolitonError> {
    let lr = lie_derivative(&curv.riemann, v)?;
    let c = (mu - n_expr(s).scale_int(2)).scale_int(4);
    let dim = s.dim();
    let xi = s.xi();
    Ok(TensorField::from_fn(s.chart(), 1, 1, |idx| {
        let (l, i) = (idx[0], idx[1]);
        let mut lhs = Expr::zero();
        for j in 0..dim {
            if xi.get(&[j]).is_zero() {
                continue;
            }
            for k in 0..dim {
                if !xi.get(&[k]).is_zero() {
                    lhs = lhs + lr.get(&[l, k, i, j]) * xi.get(&[j]) * xi.get(&[k]);
                }
            }
        }
        let mut rhs = curv.ricci_operator.get(&[l, i]).scale_int(-4)
            - (mu * s.eta().get(&[i]) * xi.get(&[l])).scale_int(4);
        if l == i {
            rhs = rhs + &c;
        }
        lhs - rhs
    }))
}

/// `L_V R` minus the commutation-formula right side built from `L_V∇`.
pub fn commutation_residual(
    v: &TensorField,
    curv: &Curvature,
) -> Result<TensorField, SolitonError> {
    let lr = lie_derivative(&curv.riemann, v)?;
    let rhs = curvature_variation_from_connection(v, &curv.connection)?;
    Ok(lr.sub(&rhs)?)
}
