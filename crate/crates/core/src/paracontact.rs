//! Almost paracontact metric structures `(φ, ξ, η, g)` on a chart of
//! dimension `2n+1`: structure axioms, normality, the para-Sasakian
//! condition and the identities that follow from it.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::geometry::{
    covariant_derivative, exterior_derivative, find_regular_point, lie_bracket, lie_derivative,
    rank, wedge, wedge_power, Chart, Curvature, GeometryError, KForm, Metric, TensorField,
};
use crate::symexpr::{Expr, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParacontactError {
    #[error("paracontact structures need odd dimension 2n+1 with n >= 1, got {0}")]
    EvenDimension(usize),
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Nonzero residual component witnessing a failed identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Index tuple into the residual tensor (contravariant slots first).
    pub index: Vec<usize>,
    pub residual: Expr,
    /// Contravariant rank of the residual, for labelling the index tuple.
    pub contra: usize,
}

impl Witness {
    /// Human label such as `(∂y,∂y)` or `dx(∂x,∂y)`.
    pub fn label(&self, chart: &Chart) -> String {
        let (up, down) = self.index.split_at(self.contra);
        let ups: Vec<String> = up.iter().map(|&i| format!("d{}", chart.coord(i))).collect();
        let downs: Vec<String> = down
            .iter()
            .map(|&i| format!("∂{}", chart.coord(i)))
            .collect();
        let args = format!("({})", downs.join(","));
        if ups.is_empty() {
            if downs.is_empty() {
                "scalar".into()
            } else {
                args
            }
        } else if downs.is_empty() {
            ups.join("⊗")
        } else {
            format!("{}{}", ups.join("⊗"), args)
        }
    }
}

/// Outcome of one structure identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureVerdict {
    pub axiom: String,
    pub pass: bool,
    /// Every nonzero residual component, in index order.
    pub witnesses: Vec<Witness>,
    pub note: Option<String>,
}

impl StructureVerdict {
    /// Passes iff `residual` vanishes identically.
    pub fn from_residual(axiom: &str, residual: &TensorField) -> Self {
        let contra = residual.contravariant_rank();
        let witnesses: Vec<Witness> = residual
            .indices()
            .filter(|idx| !residual.get(idx).is_zero())
            .map(|index| Witness {
                residual: residual.get(&index).clone(),
                index,
                contra,
            })
            .collect();
        StructureVerdict {
            axiom: axiom.to_string(),
            pass: witnesses.is_empty(),
            witnesses,
            note: None,
        }
    }

    /// A verdict decided by something other than a residual tensor.
    pub fn plain(axiom: &str, pass: bool, note: Option<String>) -> Self {
        StructureVerdict {
            axiom: axiom.to_string(),
            pass,
            witnesses: Vec::new(),
            note,
        }
    }

    /// The first nonzero component.
    pub fn witness(&self) -> Option<&Witness> {
        self.witnesses.first()
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// The quadruple `(φ, ξ, η, g)`.
#[derive(Clone, Debug)]
pub struct ParacontactStructure {
    phi: TensorField,
    xi: TensorField,
    eta: TensorField,
    g: Metric,
    n: usize,
}

impl ParacontactStructure {
    pub fn new(
        phi: TensorField,
        xi: TensorField,
        eta: TensorField,
        g: Metric,
    ) -> Result<Self, ParacontactError> {
        phi.expect_rank(1, 1)?;
        xi.expect_rank(1, 0)?;
        eta.expect_rank(0, 1)?;
        phi.same_chart(g.tensor())?;
        xi.same_chart(g.tensor())?;
        eta.same_chart(g.tensor())?;
        let dim = g.dim();
        if dim.is_multiple_of(2) || dim < 3 {
            return Err(ParacontactError::EvenDimension(dim));
        }
        Ok(ParacontactStructure {
            phi,
            xi,
            eta,
            g,
            n: (dim - 1) / 2,
        })
    }

    pub fn phi(&self) -> &TensorField {
        &self.phi
    }

    pub fn xi(&self) -> &TensorField {
        &self.xi
    }

    pub fn eta(&self) -> &TensorField {
        &self.eta
    }

    pub fn metric(&self) -> &Metric {
        &self.g
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.g.chart()
    }

    /// `n` in `dim = 2n + 1`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    /// `η ⊗ ξ` as the (1,1) tensor `X ↦ η(X) ξ`.
    pub fn eta_xi(&self) -> TensorField {
        TensorField::from_fn(self.chart(), 1, 1, |i| {
            self.xi.get(&[i[0]]) * self.eta.get(&[i[1]])
        })
    }

    /// `η ⊗ η` as a (0,2) tensor.
    pub fn eta_eta(&self) -> TensorField {
        TensorField::from_fn(self.chart(), 0, 2, |i| {
            self.eta.get(&[i[0]]) * self.eta.get(&[i[1]])
        })
    }

    /// The fundamental 2-form `Φ(X,Y) = g(X, φY)`.
    pub fn fundamental_form(&self) -> TensorField {
        self.g
            .lower_first(&self.phi)
            .expect("φ and g share the chart")
    }

    /// `η(ξ)`.
    pub fn eta_of_xi(&self) -> Expr {
        (0..self.dim())
            .map(|i| self.eta.get(&[i]) * self.xi.get(&[i]))
            .sum()
    }

    /// `φ ∂_i` as a vector field.
    pub fn phi_column(&self, i: usize) -> TensorField {
        TensorField::from_fn(self.chart(), 1, 0, |k| self.phi.get(&[k[0], i]).clone())
    }

    fn scalar_residual(&self, e: Expr) -> TensorField {
        TensorField::scalar(self.chart(), e)
    }
}

/// φ² = I − η⊗ξ, η(ξ) = 1, φξ = 0, η∘φ = 0, tr φ = 0, and the ±1
/// eigenspace count of φ at one regular sample point.
pub fn check_almost_paracontact(s: &ParacontactStructure) -> Vec<StructureVerdict> {
    let chart = s.chart();
    let id = TensorField::identity(chart);
    let phi2 = s.phi.compose(&s.phi).expect("(1,1) tensors");
    let phi_squared = phi2
        .sub(&id)
        .and_then(|t| t.add(&s.eta_xi()))
        .expect("same shape");
    let eta_xi = s.scalar_residual(s.eta_of_xi() - Expr::one());
    let phi_xi = s.phi.apply(&s.xi).expect("φ is (1,1)");
    let eta_phi = s.phi.insert_covector(0, &s.eta).expect("φ is (1,1)");
    let trace = s.scalar_residual((0..s.dim()).map(|i| s.phi.get(&[i, i]).clone()).sum());

    vec![
        StructureVerdict::from_residual("phi^2 = I - eta(x)xi", &phi_squared),
        StructureVerdict::from_residual("eta(xi) = 1", &eta_xi),
        StructureVerdict::from_residual("phi xi = 0", &phi_xi),
        StructureVerdict::from_residual("eta o phi = 0", &eta_phi),
        StructureVerdict::from_residual("trace phi = 0", &trace),
        eigenspace_verdict(s),
    ]
}

fn eigenspace_verdict(s: &ParacontactStructure) -> StructureVerdict {
    let name = "paracomplex eigenspaces of equal dimension n";
    let extras: Vec<&Expr> = s
        .phi
        .components()
        .iter()
        .chain(s.xi.components())
        .chain(s.eta.components())
        .collect();
    let Some(point) = find_regular_point(&s.g, &extras) else {
        return StructureVerdict::plain(
            name,
            false,
            Some("generic-point check: no regular rational sample point found".into()),
        );
    };
    let dim = s.dim();
    let value = |i: usize, j: usize| -> Rational {
        s.phi
            .get(&[i, j])
            .evaluate_at(&point)
            .expect("sample point avoids poles")
    };
    let shifted = |lambda: i64| -> Vec<Vec<Rational>> {
        (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        let v = value(i, j);
                        if i == j {
                            v - Rational::from_integer(lambda.into())
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect()
    };
    let plus = dim - rank(shifted(1));
    let minus = dim - rank(shifted(-1));
    let pass = plus == s.n() && minus == s.n();
    StructureVerdict::plain(
        name,
        pass,
        Some(format!(
            "generic-point check at {}: dim E(+1) = {plus}, dim E(-1) = {minus}, n = {}",
            format_point(&point),
            s.n()
        )),
    )
}

pub fn format_point(point: &BTreeMap<String, Rational>) -> String {
    let parts: Vec<String> = point.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("({})", parts.join(", "))
}

/// g(φX, φY) = −g(X,Y) + η(X)η(Y).
pub fn check_compatibility(s: &ParacontactStructure) -> StructureVerdict {
    StructureVerdict::from_residual(
        "compatible metric: g(phi X, phi Y) = -g(X,Y) + eta(X)eta(Y)",
        &compatibility_residual(s),
    )
}

pub fn compatibility_residual(s: &ParacontactStructure) -> TensorField {
    let n = s.dim();
    TensorField::from_fn(s.chart(), 0, 2, |idx| {
        let (i, j) = (idx[0], idx[1]);
        let mut acc = s.g.at(i, j) - s.eta.get(&[i]) * s.eta.get(&[j]);
        for a in 0..n {
            let pa = s.phi.get(&[a, i]);
            if pa.is_zero() {
                continue;
            }
            for b in 0..n {
                let pb = s.phi.get(&[b, j]);
                if !pb.is_zero() {
                    acc = acc + pa * s.g.at(a, b) * pb;
                }
            }
        }
        acc
    })
}

pub fn d_eta(s: &ParacontactStructure) -> KForm {
    let eta = KForm::from_covector(&s.eta).expect("η is a covector");
    exterior_derivative(&eta).expect("dim >= 3")
}

/// The top form `η ∧ (dη)^n`.
pub fn contact_volume(s: &ParacontactStructure) -> KForm {
    let eta = KForm::from_covector(&s.eta).expect("η is a covector");
    let power = wedge_power(&d_eta(s), s.n()).expect("degree 2n fits");
    wedge(&eta, &power).expect("degree 2n+1 fits")
}

/// η ∧ (dη)^n ≠ 0.
pub fn check_contact_condition(s: &ParacontactStructure) -> StructureVerdict {
    let vol = contact_volume(s);
    let top: Vec<usize> = (0..s.dim()).collect();
    let c = vol.component(&top).clone();
    StructureVerdict::plain(
        "contact: eta ^ (d eta)^n != 0",
        !c.is_zero(),
        Some(format!("(eta ^ (d eta)^n)(∂1,..,∂{}) = {c}", s.dim())),
    )
}

/// Φ = dη (½-normalized) together with the contact condition.
pub fn check_paracontact_metric(s: &ParacontactStructure) -> StructureVerdict {
    let residual = d_eta(s)
        .tensor()
        .sub(&s.fundamental_form())
        .expect("same shape");
    let v =
        StructureVerdict::from_residual("paracontact metric: d eta(X,Y) = g(X, phi Y)", &residual);
    let contact = check_contact_condition(s);
    let note = contact.note.clone().unwrap_or_default();
    if v.pass && !contact.pass {
        return StructureVerdict {
            pass: false,
            note: Some(format!(
                "Phi = d eta holds but contact condition fails: {note}"
            )),
            ..v
        };
    }
    if v.pass {
        v
    } else {
        v.with_note(note)
    }
}

/// `h = ½ L_ξ φ`.
pub fn compute_h(s: &ParacontactStructure) -> TensorField {
    lie_derivative(&s.phi, &s.xi)
        .expect("φ and ξ share the chart")
        .scale(&Expr::ratio(1, 2))
}

/// `N_φ(X,Y) = [φ,φ](X,Y) − 2dη(X,Y)ξ` on coordinate fields, components
/// `[k, i, j]` for `X = ∂i`, `Y = ∂j`.
pub fn nijenhuis(s: &ParacontactStructure) -> (TensorField, StructureVerdict) {
    let n = s.dim();
    let coords = s.chart().coord_names();
    let deta = d_eta(s);
    let cols: Vec<TensorField> = (0..n).map(|i| s.phi_column(i)).collect();
    let mut out = TensorField::zeros(s.chart(), 1, 2);
    for i in 0..n {
        for j in 0..n {
            let br = lie_bracket(&cols[i], &cols[j]).expect("vectors on one chart");
            for k in 0..n {
                let mut acc = br.get(&[k]).clone();
                for m in 0..n {
                    let pkm = s.phi.get(&[k, m]);
                    if pkm.is_zero() {
                        continue;
                    }
                    acc = acc - pkm * s.phi.get(&[m, j]).differentiate(coords[i]);
                    acc = acc + pkm * s.phi.get(&[m, i]).differentiate(coords[j]);
                }
                acc = acc - deta.component(&[i, j]).scale_int(2) * s.xi.get(&[k]);
                out.set(&[k, i, j], acc);
            }
        }
    }
    let verdict = StructureVerdict::from_residual("normality: N_phi = 0", &out);
    (out, verdict)
}

/// `(∇_X φ)Y + g(X,Y)ξ − η(Y)X`, components `[k, i, j]` for `X = ∂i`, `Y = ∂j`.
pub fn para_sasakian_residual(s: &ParacontactStructure, curv: &Curvature) -> TensorField {
    let dphi = covariant_derivative(&s.phi, &curv.connection).expect("same chart");
    TensorField::from_fn(s.chart(), 1, 2, |idx| {
        let (k, i, j) = (idx[0], idx[1], idx[2]);
        let mut acc = dphi.get(&[k, i, j]) + s.g.at(i, j) * s.xi.get(&[k]);
        if k == i {
            acc = acc - s.eta.get(&[j]);
        }
        acc
    })
}

/// (∇_X φ)Y = −g(X,Y)ξ + η(Y)X. Refuses structures that are not
/// paracontact metric (compatible metric, d eta = Phi and the contact condition).
pub fn check_para_sasakian(s: &ParacontactStructure) -> Result<StructureVerdict, ParacontactError> {
    require_paracontact_metric(s)?;
    let curv = Curvature::compute(&s.g);
    Ok(StructureVerdict::from_residual(
        "para-Sasakian: (nabla_X phi)Y = -g(X,Y)xi + eta(Y)X",
        &para_sasakian_residual(s, &curv),
    ))
}

fn require_paracontact_metric(s: &ParacontactStructure) -> Result<(), ParacontactError> {
    if !check_compatibility(s).pass {
        return Err(ParacontactError::Precondition(
            "metric is not compatible with the structure".into(),
        ));
    }
    if !check_paracontact_metric(s).pass {
        return Err(ParacontactError::Precondition(
            "structure is not paracontact metric (d eta = Phi or the contact condition fails)"
                .into(),
        ));
    }
    Ok(())
}

/// The ten identities every para-Sasakian structure satisfies.
pub fn para_sasakian_identity_suite(
    s: &ParacontactStructure,
) -> Result<Vec<StructureVerdict>, ParacontactError> {
    let sasakian = check_para_sasakian(s)?;
    if !sasakian.pass {
        return Err(ParacontactError::Precondition(
            "structure is not para-Sasakian".into(),
        ));
    }
    let curv = Curvature::compute(&s.g);
    Ok(identity_suite_with(s, &curv))
}

pub(crate) fn identity_suite_with(
    s: &ParacontactStructure,
    curv: &Curvature,
) -> Vec<StructureVerdict> {
    let chart = s.chart();
    let dim = s.dim();
    let two_n = Expr::from_int(2 * s.n() as i64);
    let phi = &s.phi;
    let xi = &s.xi;
    let eta = &s.eta;
    let g = &s.g;
    let r = &curv.riemann;
    let q = &curv.ricci_operator;
    let delta = |a: usize, b: usize| Expr::from_int((a == b) as i64);

    // ∇ξ has components [k, i] = (∇_i ξ)^k.
    let dxi = covariant_derivative(xi, &curv.connection).expect("same chart");
    let nabla_xi = dxi.add(phi).expect("(1,1)");

    let r_xy_xi = TensorField::from_fn(chart, 1, 2, |idx| {
        let (l, i, j) = (idx[0], idx[1], idx[2]);
        let rx: Expr = (0..dim).map(|k| r.get(&[l, k, i, j]) * xi.get(&[k])).sum();
        rx - eta.get(&[i]) * delta(l, j) + eta.get(&[j]) * delta(l, i)
    });

    let r_x_xi = TensorField::from_fn(chart, 1, 2, |idx| {
        let (l, i, j) = (idx[0], idx[1], idx[2]);
        let rx: Expr = (0..dim).map(|m| r.get(&[l, j, i, m]) * xi.get(&[m])).sum();
        rx - g.at(i, j) * xi.get(&[l]) + eta.get(&[j]) * delta(l, i)
    });

    let q_xi = q
        .apply(xi)
        .expect("Q is (1,1)")
        .add(&xi.scale(&two_n))
        .expect("vectors");

    let qphi = q.compose(phi).expect("(1,1)");
    let q_phi_commute = qphi.sub(&phi.compose(q).expect("(1,1)")).expect("(1,1)");

    // ∇Q has components [k, i, j] = (∇_i Q)^k_j.
    let dq = covariant_derivative(q, &curv.connection).expect("same chart");
    let nabla_xi_q = TensorField::from_fn(chart, 1, 1, |idx| {
        let (k, j) = (idx[0], idx[1]);
        (0..dim).map(|i| xi.get(&[i]) * dq.get(&[k, i, j])).sum()
    });
    let nabla_q_xi = TensorField::from_fn(chart, 1, 1, |idx| {
        let (k, i) = (idx[0], idx[1]);
        let lhs: Expr = (0..dim).map(|j| dq.get(&[k, i, j]) * xi.get(&[j])).sum();
        lhs - qphi.get(&[k, i]) - &two_n * phi.get(&[k, i])
    });

    let dphi = covariant_derivative(phi, &curv.connection).expect("same chart");
    let phi_phi_formula = TensorField::from_fn(chart, 1, 2, |idx| {
        let (k, i, j) = (idx[0], idx[1], idx[2]);
        let mut first = Expr::zero();
        for a in 0..dim {
            let pa = phi.get(&[a, i]);
            if pa.is_zero() {
                continue;
            }
            for b in 0..dim {
                let pb = phi.get(&[b, j]);
                if !pb.is_zero() {
                    first = first + pa * pb * dphi.get(&[k, a, b]);
                }
            }
        }
        let rhs = g.at(i, j).scale_int(2) * xi.get(&[k])
            - eta.get(&[j]) * (delta(k, i) + eta.get(&[i]) * xi.get(&[k]));
        first - dphi.get(&[k, i, j]) - rhs
    });

    let h = compute_h(s);
    let lxi_g = lie_derivative(g.tensor(), xi).expect("same chart");

    vec![
        StructureVerdict::from_residual("nabla_X xi = -phi X", &nabla_xi),
        StructureVerdict::from_residual("R(X,Y)xi = eta(X)Y - eta(Y)X", &r_xy_xi),
        StructureVerdict::from_residual("R(X,xi)Y = g(X,Y)xi - eta(Y)X", &r_x_xi),
        StructureVerdict::from_residual("Q xi = -2n xi", &q_xi),
        StructureVerdict::from_residual("Q phi = phi Q", &q_phi_commute),
        StructureVerdict::from_residual("(nabla_xi Q)X = 0", &nabla_xi_q),
        StructureVerdict::from_residual("(nabla_X Q)xi = Q phi X + 2n phi X", &nabla_q_xi),
        StructureVerdict::from_residual(
            "(nabla_{phi X} phi)phi Y - (nabla_X phi)Y = 2g(X,Y)xi - eta(Y)[X + eta(X)xi]",
            &phi_phi_formula,
        ),
        StructureVerdict::from_residual("h = 0", &h),
        StructureVerdict::from_residual("L_xi g = 0 (xi Killing)", &lxi_g),
    ]
}
