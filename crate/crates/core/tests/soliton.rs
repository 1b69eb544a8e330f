mod common;

use common::*;
use paracontact_core::geometry::{frame_component, FrameSlot, TensorField};
use paracontact_core::paracontact::ParacontactStructure;
use paracontact_core::soliton::{
    classify_branch, collinearity_analysis, commutation_residual, connection_variation_residual,
    contact_transformation, curvature_variation_residual, eta_einstein_extract, eta_lie_xi_check,
    expected_contact_factor, killing_check, phi_invariance_check, residual, ricci_form_checks,
    ricci_form_mu, solve, solve_almost, solve_constants, BranchCase, Equation, ScalarMode,
    SolutionKind,
};
use paracontact_core::{Curvature, Expr, Metric, SolitonError, SolitonProblem};

fn ps3_problem() -> SolitonProblem {
    let m = ps3();
    let spec = m.soliton.unwrap();
    SolitonProblem::new(m.structure.unwrap(), spec.v, None, spec.p).unwrap()
}

fn flat3_problem(v: &[&str]) -> SolitonProblem {
    let s = flat3_structure();
    let c = s.chart().clone();
    let p = e(&c, "p");
    SolitonProblem::new(s, Some(vector(&c, v)), None, p).unwrap()
}

#[test]
fn ps3_solves_for_lambda_and_mu() {
    let prob = ps3_problem();
    let c = prob.structure().chart().clone();
    let sol = solve_constants(&prob).unwrap();
    assert_eq!(sol.lambda, e(&c, "p/2 - 8/3"));
    assert_eq!(sol.mu, e(&c, "3"));
    assert_eq!(sol.kind, SolutionKind::Constants);
    assert!(sol.residual_zero);
    assert!(residual(&prob, Equation::Conformal, &sol.lambda, &sol.mu)
        .unwrap()
        .is_zero());
    assert_eq!(solve_almost(&prob).unwrap(), sol);
}

#[test]
fn given_lambda_leaves_mu_to_solve() {
    let c = xyz();
    let prob = ps3_problem().with_lambda(ScalarMode::Given(e(&c, "p/2 - 8/3")));
    let sol = solve_constants(&prob).unwrap();
    assert_eq!(sol.mu, e(&c, "3"));
    let wrong = ps3_problem().with_lambda(ScalarMode::Given(Expr::zero()));
    assert!(matches!(
        solve_constants(&wrong),
        Err(SolitonError::NotASoliton { .. })
    ));
}

#[test]
fn eta_lie_xi_value_matches_solution() {
    let prob = ps3_problem();
    let c = prob.structure().chart().clone();
    let sol = solve_constants(&prob).unwrap();
    let check = eta_lie_xi_check(&prob, &sol).unwrap();
    assert_eq!(check.eta_lv_xi, e(&c, "-2"));
    assert_eq!(check.minus_lv_eta_xi, e(&c, "-2"));
    assert_eq!(check.expected, e(&c, "-2"));
    assert!(check.pass);
}

#[test]
fn ps3_classifies_on_the_phi_invariant_branch() {
    let prob = ps3_problem();
    let sol = solve_constants(&prob).unwrap();
    let branch = classify_branch(&prob, &sol, true).unwrap();
    assert_eq!(branch.case, BranchCase::PhiInvariant);
    assert_eq!(branch.phi_invariant_residual, Some(Expr::zero()));
    assert_eq!(branch.killing_residual, Some(Expr::from_int(-2)));
    assert!(branch.consistent());
    let gated = classify_branch(&prob, &sol, false).unwrap();
    assert_eq!(gated.case, BranchCase::NotApplicable);
}

#[test]
fn ps3_field_is_phi_invariant_contact_but_not_killing() {
    let prob = ps3_problem();
    let s = prob.structure();
    let c = s.chart().clone();
    let v = prob.v().unwrap();
    assert!(phi_invariance_check(v, s).unwrap().pass);

    let killing = killing_check(v, s.metric()).unwrap();
    assert!(!killing.pass);
    let lvg = paracontact_core::geometry::lie_derivative(s.metric().tensor(), v).unwrap();
    let frame = ps3().frame("e").unwrap().frame.clone();
    let e3 = frame.vector(2);
    let at_e3 = frame_component(&lvg, &[FrameSlot::Vector(e3), FrameSlot::Vector(e3)]).unwrap();
    assert_eq!(at_e3, e(&c, "4"));

    let ct = contact_transformation(v, s).unwrap();
    assert_eq!(ct.a, e(&c, "2"));
    assert!(!ct.strict);
    let sol = solve_constants(&prob).unwrap();
    assert_eq!(expected_contact_factor(&prob, &sol), e(&c, "2"));
}

#[test]
fn ps3_field_is_not_collinear_with_xi() {
    let prob = ps3_problem();
    let err = collinearity_analysis(prob.v().unwrap(), prob.structure(), None).unwrap_err();
    let SolitonError::NotCollinear { index, residual } = err else {
        panic!("expected NotCollinear, got {err:?}");
    };
    assert_eq!(index, 0);
    assert_eq!(residual, e(prob.structure().chart(), "x"));
}

#[test]
fn xi_itself_is_collinear_with_constant_factor() {
    let s = ps3_structure();
    let col = collinearity_analysis(s.xi(), &s, None).unwrap();
    assert_eq!(col.f, Expr::one());
    assert!(col.constant);
}

#[test]
fn ps3_eta_einstein_data_and_ricci_form() {
    let prob = ps3_problem();
    let s = prob.structure();
    let curv = prob.curvature();
    let ee = eta_einstein_extract(s, curv).unwrap();
    assert_eq!(ee.a, Expr::from_int(2));
    assert_eq!(ee.b, Expr::from_int(-4));
    assert!(!ee.einstein);
    // r = (2n+1)a + b
    assert_eq!(curv.scalar, Expr::from_int(3) * &ee.a + &ee.b);
    let mu = ricci_form_mu(&ee, s).unwrap();
    assert_eq!(mu, Expr::from_int(4));
    let rf = ricci_form_checks(s, curv, &mu).unwrap();
    assert!(rf.ricci_form.pass);
    assert_eq!(rf.trace_expected, Expr::from_int(2));
    assert!(rf.trace_pass);
    assert_eq!(rf.einstein, None);
}

#[test]
fn variation_formulas_hold_on_ps3() {
    let prob = ps3_problem();
    let s = prob.structure();
    let v = prob.v().unwrap();
    let curv = prob.curvature();
    let sol = solve_constants(&prob).unwrap();
    assert!(connection_variation_residual(v, s, curv, &sol.mu)
        .unwrap()
        .is_zero());
    assert!(curvature_variation_residual(v, s, curv, &sol.mu)
        .unwrap()
        .is_zero());
    assert!(commutation_residual(v, curv).unwrap().is_zero());
    // A wrong μ leaves a nonzero residual.
    assert!(!connection_variation_residual(v, s, curv, &Expr::zero())
        .unwrap()
        .is_zero());
}

#[test]
fn flat3_zero_field_solves_with_mu_zero() {
    let prob = flat3_problem(&["0", "0", "0"]);
    let c = prob.structure().chart().clone();
    let sol = solve_constants(&prob).unwrap();
    assert_eq!(sol.lambda, e(&c, "p/2 + 1/3"));
    assert_eq!(sol.mu, Expr::zero());
}

#[test]
fn flat3_shear_field_is_not_a_soliton() {
    let prob = flat3_problem(&["y", "0", "0"]);
    let err = solve_constants(&prob).unwrap_err();
    let SolitonError::NotASoliton { index, equation } = &err else {
        panic!("expected NotASoliton, got {err:?}");
    };
    assert_eq!(*index, (0, 1));
    assert_eq!(*equation, Expr::one());
    assert!(err.to_string().ends_with("reduces to 1 = 0"));
}

#[test]
fn flat3_x_dz_is_not_a_contact_transformation() {
    let s = flat3_structure();
    let c = s.chart().clone();
    let err = contact_transformation(&vector(&c, &["0", "0", "x"]), &s).unwrap_err();
    assert_eq!(
        err,
        SolitonError::NotContactTransformation {
            index: 0,
            residual: Expr::one()
        }
    );
}

#[test]
fn warped_metric_is_not_eta_einstein() {
    let c = xyz();
    let g = Metric::from_matrix(
        &c,
        rows(
            &c,
            &[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1 + x^2"]],
        ),
    )
    .unwrap();
    let phi = TensorField::endomorphism(
        &c,
        rows(&c, &[&["0", "1", "0"], &["1", "0", "0"], &["0", "0", "0"]]),
    )
    .unwrap();
    let s = ParacontactStructure::new(
        phi,
        vector(&c, &["0", "0", "1"]),
        covector(&c, &["0", "0", "1"]),
        g,
    )
    .unwrap();
    let curv = Curvature::compute(s.metric());
    assert!(matches!(
        eta_einstein_extract(&s, &curv),
        Err(SolitonError::NotEtaEinstein { .. })
    ));
}

#[test]
fn gradient_equation_with_non_gradient_potential_fails() {
    let m = ps3();
    let spec = m.soliton.unwrap();
    let prob = SolitonProblem::new(m.structure.unwrap(), None, spec.f, spec.p).unwrap();
    assert!(matches!(
        solve(&prob, Equation::Gradient, SolutionKind::Functions),
        Err(SolitonError::NotASoliton { .. })
    ));
    assert!(matches!(
        solve(&prob, Equation::Conformal, SolutionKind::Constants),
        Err(SolitonError::Missing(_))
    ));
}

#[test]
fn problem_construction_validates_inputs() {
    let s = ps3_structure();
    let c = s.chart().clone();
    assert!(matches!(
        SolitonProblem::new(s.clone(), None, None, Expr::zero()),
        Err(SolitonError::Missing(_))
    ));
    assert!(matches!(
        SolitonProblem::new(s, Some(vector(&c, &["1", "0", "0"])), None, e(&c, "x")),
        Err(SolitonError::CoordinateDependentP(_))
    ));
}
