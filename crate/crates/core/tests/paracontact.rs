mod common;

use common::*;
use paracontact_core::geometry::TensorField;
use paracontact_core::paracontact::{
    check_almost_paracontact, check_compatibility, check_contact_condition, check_para_sasakian,
    check_paracontact_metric, compute_h, nijenhuis, para_sasakian_identity_suite,
    para_sasakian_residual, ParacontactError, ParacontactStructure,
};
use paracontact_core::{Curvature, Metric};

fn verdict_named<'a>(
    vs: &'a [paracontact_core::StructureVerdict],
    name: &str,
) -> &'a paracontact_core::StructureVerdict {
    vs.iter()
        .find(|v| v.axiom == name)
        .expect("verdict present")
}

#[test]
fn ps3_structure_axioms_hold_exactly() {
    let s = ps3_structure();
    for v in check_almost_paracontact(&s) {
        assert!(v.pass, "{} failed: {:?}", v.axiom, v.witnesses);
    }
    assert!(check_compatibility(&s).pass);
    assert!(check_paracontact_metric(&s).pass);
    let contact = check_contact_condition(&s);
    assert!(contact.pass);
    assert!(contact.note.unwrap().ends_with("= -1/24"));
    assert!(nijenhuis(&s).1.pass);
    assert!(check_para_sasakian(&s).unwrap().pass);
}

#[test]
fn ps3_identity_suite_passes_ten_of_ten() {
    let suite = para_sasakian_identity_suite(&ps3_structure()).unwrap();
    assert_eq!(suite.len(), 10);
    for v in &suite {
        assert!(v.pass, "{} failed: {:?}", v.axiom, v.witnesses);
    }
}

#[test]
fn doubled_phi_fails_phi_squared_axiom() {
    let s = ps3_structure();
    let c = s.chart().clone();
    let two = e(&c, "2");
    let doubled = ParacontactStructure::new(
        s.phi().scale(&two),
        s.xi().clone(),
        s.eta().clone(),
        s.metric().clone(),
    )
    .unwrap();
    let vs = check_almost_paracontact(&doubled);
    let sq = verdict_named(&vs, "phi^2 = I - eta(x)xi");
    assert!(!sq.pass);
    // 4φ² − I + η⊗ξ = 3(I − η⊗ξ) on the ∂x slot.
    let w = sq.witness().unwrap();
    assert_eq!(w.index, vec![0, 0]);
    assert_eq!(w.residual, e(&c, "3"));
    assert!(verdict_named(&vs, "eta(xi) = 1").pass);
}

#[test]
fn doubled_eta_breaks_eta_xi_and_fundamental_form() {
    let s = ps3_structure();
    let c = s.chart().clone();
    let doubled = ParacontactStructure::new(
        s.phi().clone(),
        s.xi().clone(),
        s.eta().scale(&e(&c, "2")),
        s.metric().clone(),
    )
    .unwrap();
    let vs = check_almost_paracontact(&doubled);
    let eta_xi = verdict_named(&vs, "eta(xi) = 1");
    assert!(!eta_xi.pass);
    assert_eq!(eta_xi.witness().unwrap().residual, e(&c, "1"));
    let pm = check_paracontact_metric(&doubled);
    assert!(!pm.pass);
    let w = pm.witness().unwrap();
    assert_eq!(w.label(&c), "(∂x,∂y)");
    assert_eq!(w.residual, e(&c, "-1/4"));
}

#[test]
fn flat3_is_almost_paracontact_but_not_compatible() {
    let m = fixture("flat3");
    let s = m.structure.unwrap();
    for v in check_almost_paracontact(&s) {
        assert!(v.pass, "{} failed", v.axiom);
    }
    let compat = check_compatibility(&s);
    assert!(!compat.pass);
    let labels: Vec<String> = compat
        .witnesses
        .iter()
        .map(|w| w.label(s.chart()))
        .collect();
    assert_eq!(labels, ["(∂x,∂x)", "(∂y,∂y)"]);
    assert!(compat
        .witnesses
        .iter()
        .all(|w| w.residual == e(s.chart(), "2")));
    assert!(!check_contact_condition(&s).pass);
    assert!(matches!(
        check_para_sasakian(&s),
        Err(ParacontactError::Precondition(_))
    ));
}

#[test]
fn ps3_typo_fails_compatibility_with_witness() {
    let m = fixture("ps3-typo");
    let s = m.structure.unwrap();
    let c = s.chart().clone();
    let compat = check_compatibility(&s);
    assert!(!compat.pass);
    let yy = compat
        .witnesses
        .iter()
        .find(|w| w.label(&c) == "(∂y,∂y)")
        .expect("(∂y,∂y) witness");
    assert_eq!(yy.residual, e(&c, "(y^2 - 1)/4"));
    assert!(matches!(
        check_para_sasakian(&s),
        Err(ParacontactError::Precondition(_))
    ));
    let curv = Curvature::compute(s.metric());
    assert!(!para_sasakian_residual(&s, &curv).is_zero());
    assert!(para_sasakian_identity_suite(&s).is_err());
}

#[test]
fn even_dimension_is_rejected() {
    let c = paracontact_core::Chart::new(&["x", "y"], &[]).unwrap();
    let g = Metric::from_matrix(&c, TensorField::identity(&c).matrix()).unwrap();
    let err = ParacontactStructure::new(
        TensorField::identity(&c),
        vector(&c, &["1", "0"]),
        covector(&c, &["1", "0"]),
        g,
    )
    .unwrap_err();
    assert_eq!(err, ParacontactError::EvenDimension(2));
}

#[test]
fn h_vanishes_and_annihilates_xi() {
    for s in [ps3_structure(), flat3_structure()] {
        let h = compute_h(&s);
        assert!(h.is_zero());
        assert!(h.apply(s.xi()).unwrap().is_zero());
    }
}

#[test]
fn nijenhuis_tensor_is_antisymmetric() {
    // A structure with nonconstant φ so that N_φ is not identically zero.
    let c = xyz();
    let phi = TensorField::endomorphism(
        &c,
        rows(
            &c,
            &[&["0", "x", "0"], &["1/x", "0", "0"], &["0", "0", "0"]],
        ),
    )
    .unwrap();
    let s = ParacontactStructure::new(
        phi,
        vector(&c, &["0", "0", "1"]),
        covector(&c, &["0", "0", "1"]),
        flat3_metric(&c),
    )
    .unwrap();
    let (n, _) = nijenhuis(&s);
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(*n.get(&[k, i, j]), -n.get(&[k, j, i]).clone());
            }
        }
    }
    let (n, _) = nijenhuis(&ps3_structure());
    assert!(n.is_zero());
}

#[test]
fn phi_cubed_equals_phi() {
    for s in [
        ps3_structure(),
        flat3_structure(),
        fixture("ps3-typo").structure.unwrap(),
    ] {
        let phi3 = s.phi().compose(s.phi()).unwrap().compose(s.phi()).unwrap();
        assert_eq!(phi3, *s.phi());
    }
}

#[test]
fn h_is_self_adjoint_on_ps3() {
    let s = ps3_structure();
    let gh = s.metric().lower_first(&compute_h(&s)).unwrap();
    assert_eq!(gh, gh.transpose_cov(0, 1));
}

#[test]
fn normality_and_para_sasakian_agree_on_paracontact_metric_fixtures() {
    let s = ps3_structure();
    assert!(check_paracontact_metric(&s).pass);
    assert_eq!(nijenhuis(&s).1.pass, check_para_sasakian(&s).unwrap().pass);
}

#[test]
fn fundamental_form_is_antisymmetric_on_ps3() {
    let s = ps3_structure();
    let phi_form = s.fundamental_form();
    assert_eq!(phi_form, phi_form.transpose_cov(0, 1).neg());
}
