//! The `check`, `curvature`, `soliton` and `report` pipelines over a
//! loaded manifest.

use thiserror::Error;

use crate::geometry::{
    find_regular_point, frame_component, gradient, signature_at, Chart, Curvature, FrameSlot,
    TensorField,
};
use crate::manifest::{Manifest, NamedFrame};
use crate::paracontact::{
    check_almost_paracontact, check_compatibility, check_contact_condition, check_para_sasakian,
    check_paracontact_metric, format_point, identity_suite_with, nijenhuis, ParacontactStructure,
    StructureVerdict,
};
use crate::report::{CheckOutcome, Status, VerdictReport};
use crate::soliton::{
    classify_branch, collinearity_analysis, commutation_residual, connection_variation_residual,
    contact_transformation, eta_einstein_extract, eta_lie_xi_check, expected_contact_factor,
    killing_check, phi_invariance_check, residual, ricci_form_checks, ricci_form_mu, solve,
    BranchCase, Equation, ScalarMode, SolitonError, SolitonProblem, SolitonSolution, SolutionKind,
};
use crate::symexpr::{parse_expr, Expr, ExprError};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("manifest has no [structure] section")]
    MissingStructure,
    #[error("manifest has no [soliton] section")]
    MissingSoliton,
    #[error("manifest has no frame named '{0}'")]
    UnknownFrame(String),
    #[error("--{flag}: {source}")]
    Flag {
        flag: &'static str,
        source: ExprError,
    },
    #[error(transparent)]
    Soliton(#[from] SolitonError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SolitonMode {
    /// Constant λ, μ in the conformal equation.
    #[default]
    Solve,
    /// Function-valued λ, μ in the conformal equation.
    Almost,
    /// The gradient equation with potential f.
    Gradient,
}

#[derive(Clone, Debug, Default)]
pub struct SolitonOptions {
    pub mode: SolitonMode,
    pub lambda: Option<String>,
    pub mu: Option<String>,
}

fn structure(m: &Manifest) -> Result<&ParacontactStructure, PipelineError> {
    m.structure.as_ref().ok_or(PipelineError::MissingStructure)
}

/// Structure axioms, normality, the para-Sasakian condition and, when it
/// holds, the identity suite.
pub fn cmd_check(m: &Manifest) -> Result<VerdictReport, PipelineError> {
    let s = structure(m)?;
    let chart = s.chart();
    let mut report = VerdictReport::new(&m.name);
    let push =
        |r: &mut VerdictReport, v: &StructureVerdict| r.push(CheckOutcome::from_verdict(v, chart));

    let almost = check_almost_paracontact(s);
    for v in &almost {
        push(&mut report, v);
    }
    let compat = check_compatibility(s);
    push(&mut report, &compat);
    let metric = check_paracontact_metric(s);
    push(&mut report, &metric);
    let contact = check_contact_condition(s);
    push(&mut report, &contact);
    let (_, normal) = nijenhuis(s);
    push(&mut report, &normal);

    let upstream = almost.iter().all(|v| v.pass) && compat.pass && metric.pass;
    let sasakian_name = "para-Sasakian: (nabla_X phi)Y = -g(X,Y)xi + eta(Y)X";
    if !upstream {
        report.push(
            CheckOutcome::new(sasakian_name, Status::NotApplicable)
                .with("reason", "structure is not paracontact metric"),
        );
        report.push(
            CheckOutcome::new("para-Sasakian identity suite", Status::NotApplicable)
                .with("reason", "structure is not para-Sasakian"),
        );
        return Ok(report);
    }
    let sasakian = check_para_sasakian(s).expect("preconditions checked above");
    push(&mut report, &sasakian);
    if !sasakian.pass {
        report.push(
            CheckOutcome::new("para-Sasakian identity suite", Status::NotApplicable)
                .with("reason", "structure is not para-Sasakian"),
        );
        return Ok(report);
    }
    let curv = Curvature::compute(s.metric());
    for v in identity_suite_with(s, &curv) {
        push(&mut report, &v);
    }
    Ok(report)
}

/// True when every stage of [`cmd_check`] up to the para-Sasakian check passes.
pub fn is_para_sasakian(s: &ParacontactStructure) -> bool {
    check_almost_paracontact(s).iter().all(|v| v.pass)
        && check_para_sasakian(s).is_ok_and(|v| v.pass)
}

fn index_label(chart: &Chart, idx: &[usize]) -> String {
    idx.iter()
        .map(|&i| chart.coord(i))
        .collect::<Vec<_>>()
        .join(",")
}

/// Connection, curvature, signature and optional frame views of the metric.
pub fn cmd_curvature(m: &Manifest, frame: Option<&str>) -> Result<VerdictReport, PipelineError> {
    let frame = match frame {
        None => None,
        Some(name) => Some(
            m.frame(name)
                .ok_or_else(|| PipelineError::UnknownFrame(name.into()))?,
        ),
    };
    let chart = &m.chart;
    let n = chart.dim();
    let curv = Curvature::compute(&m.metric);
    let mut report = VerdictReport::new(&m.name);

    let mut gamma = CheckOutcome::new("Christoffel symbols", Status::Solved);
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                let v = curv.connection.gamma(k, i, j);
                if !v.is_zero() {
                    let key = format!("Gamma^{}_({})", chart.coord(k), index_label(chart, &[i, j]));
                    gamma = gamma.with(key, v);
                }
            }
        }
    }
    report.push(gamma);

    let mut riem = CheckOutcome::new("Riemann tensor R(d_i,d_j)d_k = R^l_kij d_l", Status::Solved);
    for idx in curv.riemann.indices() {
        if idx[2] < idx[3] && !curv.riemann.get(&idx).is_zero() {
            let key = format!(
                "R^{}_({})",
                chart.coord(idx[0]),
                index_label(chart, &idx[1..])
            );
            riem = riem.with(key, curv.riemann.get(&idx));
        }
    }
    if riem.payload.is_empty() {
        riem = riem.with("all", "0");
    }
    report.push(riem);

    let mut ricci = CheckOutcome::new("Ricci tensor", Status::Solved);
    let mut q = CheckOutcome::new("Ricci operator", Status::Solved);
    for i in 0..n {
        for j in 0..n {
            if j >= i && !curv.ricci.get(&[i, j]).is_zero() {
                ricci = ricci.with(
                    format!("S_({})", index_label(chart, &[i, j])),
                    curv.ricci.get(&[i, j]),
                );
            }
            if !curv.ricci_operator.get(&[i, j]).is_zero() {
                q = q.with(
                    format!("Q^{}_{}", chart.coord(i), chart.coord(j)),
                    curv.ricci_operator.get(&[i, j]),
                );
            }
        }
    }
    for c in [&mut ricci, &mut q] {
        if c.payload.is_empty() {
            c.payload.insert("all".into(), "0".into());
        }
    }
    report.push(ricci);
    report.push(q);
    report.push(CheckOutcome::new("scalar curvature", Status::Solved).with("r", &curv.scalar));

    let sig = match find_regular_point(&m.metric, &[]) {
        Some(point) => {
            let inertia = signature_at(&m.metric, &point).expect("regular point has no poles");
            CheckOutcome::new("metric signature", Status::Solved)
                .with("point", format_point(&point))
                .with("positive", inertia.positive)
                .with("negative", inertia.negative)
                .with("zero", inertia.zero)
        }
        None => CheckOutcome::new("metric signature", Status::NotApplicable)
            .with("reason", "no regular rational sample point found"),
    };
    report.push(sig);

    if let Some(f) = frame {
        frame_views(&mut report, m, f, &curv);
    }
    Ok(report)
}

fn frame_views(report: &mut VerdictReport, m: &Manifest, f: &NamedFrame, curv: &Curvature) {
    let n = m.chart.dim();
    let name = &f.frame.name;
    let e = |a: usize| f.frame.vector(a);
    let l = |a: usize| f.labels[a].as_str();

    let mut gram = CheckOutcome::new(
        format!("frame {name}: Gram matrix g(e_a, e_b)"),
        Status::Solved,
    );
    let mut ricci = CheckOutcome::new(format!("frame {name}: Ricci S(e_a, e_b)"), Status::Solved);
    for a in 0..n {
        for b in a..n {
            let key = format!("({},{})", l(a), l(b));
            let args = [FrameSlot::Vector(e(a)), FrameSlot::Vector(e(b))];
            let gv = frame_component(m.metric.tensor(), &args).expect("(0,2)");
            let sv = frame_component(&curv.ricci, &args).expect("(0,2)");
            gram = gram.with(key.clone(), gv);
            ricci = ricci.with(key, sv);
        }
    }
    report.push(gram);
    report.push(ricci);

    let mut riem = CheckOutcome::new(
        format!("frame {name}: curvature R(e_a, e_b)e_c"),
        Status::Solved,
    );
    for a in 0..n {
        for b in a + 1..n {
            for c in 0..n {
                let v = curv
                    .riemann
                    .eval_vectors(&[e(c), e(a), e(b)])
                    .expect("vectors on the chart");
                let coeffs = f.frame.decompose(&v).expect("vector");
                riem = riem.with(
                    format!("R({},{}){}", l(a), l(b), l(c)),
                    f.frame.describe(&coeffs, &f.labels),
                );
            }
        }
    }
    report.push(riem);
}

fn flag_expr(chart: &Chart, flag: &'static str, text: &str) -> Result<Expr, PipelineError> {
    parse_expr(text, chart.table()).map_err(|source| PipelineError::Flag { flag, source })
}

fn mode_of(value: Option<Expr>) -> ScalarMode {
    value.map_or(ScalarMode::Unknown, ScalarMode::Given)
}

/// Soliton residual or solve, followed by the classification analyses.
pub fn cmd_soliton(m: &Manifest, opts: &SolitonOptions) -> Result<VerdictReport, PipelineError> {
    let s = structure(m)?;
    let spec = m.soliton.as_ref().ok_or(PipelineError::MissingSoliton)?;
    let chart = s.chart();
    let lambda = match &opts.lambda {
        Some(t) => Some(flag_expr(chart, "lambda", t)?),
        None => spec.lambda.clone(),
    };
    let mu = match &opts.mu {
        Some(t) => Some(flag_expr(chart, "mu", t)?),
        None => spec.mu.clone(),
    };
    let prob = SolitonProblem::new(s.clone(), spec.v.clone(), spec.f.clone(), spec.p.clone())?
        .with_lambda(mode_of(lambda))
        .with_mu(mode_of(mu));
    let para_sasakian = is_para_sasakian(s);
    let mut report = VerdictReport::new(&m.name);

    match opts.mode {
        SolitonMode::Solve | SolitonMode::Almost => {
            if prob.v().is_none() {
                return Err(SolitonError::Missing("vector field V").into());
            }
            let kind = if opts.mode == SolitonMode::Solve {
                SolutionKind::Constants
            } else {
                SolutionKind::Functions
            };
            let sol = solve_entry(
                &mut report,
                &prob,
                Equation::Conformal,
                kind,
                "conformal soliton",
            )?;
            if let Some(sol) = sol {
                analyses(&mut report, &prob, &sol, para_sasakian)?;
            }
        }
        SolitonMode::Gradient => {
            let f = prob.f().ok_or(SolitonError::Missing("potential f"))?;
            if let Some(v) = prob.v() {
                let df = gradient(f, s.metric());
                let same = &df == v;
                report.push(
                    CheckOutcome::new("gradient consistency: V = Df", Status::from_pass(same))
                        .with("Df", vector_text(&df))
                        .with("V", vector_text(v)),
                );
                if !same {
                    solve_entry(
                        &mut report,
                        &prob,
                        Equation::Conformal,
                        SolutionKind::Constants,
                        "conformal soliton with the given V",
                    )?;
                }
            }
            let sol = solve_entry(
                &mut report,
                &prob,
                Equation::Gradient,
                SolutionKind::Functions,
                "true gradient soliton",
            )?;
            if let Some(sol) = sol {
                ricci_form_entry(&mut report, s, prob.curvature(), &sol.mu, para_sasakian)?;
            }
        }
    }
    Ok(report)
}

fn vector_text(v: &TensorField) -> String {
    let parts: Vec<String> = v.components().iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Evaluates the residual when λ and μ are both given, otherwise solves.
/// Pushes one entry and returns the solution when the residual vanishes.
fn solve_entry(
    report: &mut VerdictReport,
    prob: &SolitonProblem,
    equation: Equation,
    kind: SolutionKind,
    label: &str,
) -> Result<Option<SolitonSolution>, PipelineError> {
    let chart = prob.structure().chart().clone();
    if let (ScalarMode::Given(l), ScalarMode::Given(mu)) = (&prob.lambda, &prob.mu) {
        let res = residual(prob, equation, l, mu)?;
        let name = format!("{label}: residual at given lambda, mu");
        let mut entry = CheckOutcome::new(name, Status::from_pass(res.is_zero()))
            .with("lambda", l)
            .with("mu", mu);
        if let Some((idx, r)) = res.first_nonzero() {
            entry = entry
                .with(
                    "at",
                    format!("(∂{},∂{})", chart.coord(idx[0]), chart.coord(idx[1])),
                )
                .with("residual", r);
            report.push(entry);
            return Ok(None);
        }
        report.push(entry);
        let coords = chart.coord_names();
        let constant = l.free_of(coords.iter().copied()) && mu.free_of(coords.iter().copied());
        return Ok(Some(SolitonSolution {
            lambda: l.clone(),
            mu: mu.clone(),
            kind: if constant {
                SolutionKind::Constants
            } else {
                SolutionKind::Functions
            },
            residual_zero: true,
        }));
    }
    let name = format!("{label}: solve for lambda, mu");
    match solve(prob, equation, kind) {
        Ok(sol) => {
            let status = if sol.residual_zero {
                Status::Solved
            } else {
                Status::Fail
            };
            report.push(
                CheckOutcome::new(name, status)
                    .with("lambda", &sol.lambda)
                    .with("mu", &sol.mu)
                    .with(
                        "kind",
                        match sol.kind {
                            SolutionKind::Constants => "constants",
                            SolutionKind::Functions => "functions",
                        },
                    )
                    .with("residual_zero", sol.residual_zero),
            );
            Ok(sol.residual_zero.then_some(sol))
        }
        Err(SolitonError::NotASoliton { index, equation }) => {
            report.push(
                CheckOutcome::new(name, Status::Fail)
                    .with("result", "not a soliton")
                    .with(
                        "at",
                        format!("(∂{},∂{})", chart.coord(index.0), chart.coord(index.1)),
                    )
                    .with("witness", format!("{equation} = 0")),
            );
            Ok(None)
        }
        Err(SolitonError::NonConstantSolution { lambda, mu }) => {
            report.push(
                CheckOutcome::new(name, Status::Fail)
                    .with("result", "non-constant solution")
                    .with("lambda", lambda)
                    .with("mu", mu)
                    .with("hint", "rerun with --almost"),
            );
            Ok(None)
        }
        Err(SolitonError::Underdetermined { free, pivots }) => {
            let mut entry = CheckOutcome::new(name, Status::Fail)
                .with("result", "underdetermined")
                .with("free", free.join(", "));
            for (k, v) in pivots {
                entry = entry.with(k, v);
            }
            report.push(entry);
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn na(name: &str) -> CheckOutcome {
    CheckOutcome::new(name, Status::NotApplicable).with("reason", "structure is not para-Sasakian")
}

fn analyses(
    report: &mut VerdictReport,
    prob: &SolitonProblem,
    sol: &SolitonSolution,
    para_sasakian: bool,
) -> Result<(), PipelineError> {
    let s = prob.structure();
    let chart = s.chart();
    let v = prob.v().expect("conformal mode has V");
    let curv = prob.curvature();
    let hypothesis_label = |pass: bool| {
        if s.n() > 1 {
            Status::from_pass(pass)
        } else {
            Status::OutsideHypothesis
        }
    };

    if para_sasakian {
        let l = eta_lie_xi_check(prob, sol)?;
        report.push(
            CheckOutcome::new("eta(L_V xi) = -(L_V eta)(xi)", Status::from_pass(l.pass))
                .with("eta(L_V xi)", &l.eta_lv_xi)
                .with("-(L_V eta)(xi)", &l.minus_lv_eta_xi)
                .with("lambda - p/2 - 1/(2n+1) - 2n + mu", &l.expected),
        );
        let t = classify_branch(prob, sol, true)?;
        let status = match t.case {
            BranchCase::NotApplicable => Status::NotApplicable,
            _ => Status::from_pass(t.consistent()),
        };
        let mut entry =
            CheckOutcome::new("soliton branch classification", status).with("case", t.case.label());
        if let Some(r) = &t.killing_residual {
            entry = entry.with("Killing branch residual", r);
        }
        if let Some(r) = &t.phi_invariant_residual {
            entry = entry.with("phi-invariant branch residual", r);
        }
        for check in t.branch_property.iter().chain(&t.ricci_form) {
            entry = entry.with(
                check.axiom.clone(),
                if check.pass { "holds" } else { "fails" },
            );
        }
        report.push(entry);
    } else {
        report.push(na("eta(L_V xi) = -(L_V eta)(xi)"));
        report.push(na("soliton branch classification"));
    }

    let killing = killing_check(v, s.metric())?;
    let mut entry =
        CheckOutcome::new("V Killing (L_V g = 0)", Status::Solved).with("killing", killing.pass);
    if let Some(w) = killing.witness() {
        entry = entry.with("at", w.label(chart)).with("L_V g", &w.residual);
    }
    report.push(entry);

    let phi_inv = phi_invariance_check(v, s)?;
    let mut entry = CheckOutcome::new("V leaves phi invariant (L_V phi = 0)", Status::Solved)
        .with("invariant", phi_inv.pass);
    if let Some(w) = phi_inv.witness() {
        entry = entry
            .with("at", w.label(chart))
            .with("L_V phi", &w.residual);
    }
    report.push(entry);

    let coords = chart.coord_names();
    match contact_transformation(v, s) {
        Ok(ct) => {
            report.push(
                CheckOutcome::new(
                    "infinitesimal contact transformation (L_V eta = a eta)",
                    Status::Solved,
                )
                .with("a", &ct.a)
                .with("strict", ct.strict),
            );
            if para_sasakian
                && sol.kind == SolutionKind::Constants
                && ct.a.free_of(coords.iter().copied())
            {
                let expected = expected_contact_factor(prob, sol);
                let ok = expected == ct.a;
                report.push(
                    CheckOutcome::new(
                        "contact factor: a = 2n - lambda - mu + p/2 + 1/(2n+1)",
                        hypothesis_label(ok),
                    )
                    .with("a", &ct.a)
                    .with("expected", expected)
                    .with("consistent", ok)
                    .with("hypothesis", "n > 1"),
                );
            }
        }
        Err(SolitonError::NotContactTransformation { index, residual }) => {
            report.push(
                CheckOutcome::new(
                    "infinitesimal contact transformation (L_V eta = a eta)",
                    Status::Solved,
                )
                .with("contact", false)
                .with("at", format!("d{}", chart.coord(index)))
                .with("residual", residual),
            );
        }
        Err(e) => return Err(e.into()),
    }

    let with_sol = para_sasakian.then_some((sol, prob.p(), curv));
    match collinearity_analysis(v, s, with_sol) {
        Ok(c) => {
            let mut entry = CheckOutcome::new("V collinear with xi", Status::Solved)
                .with("collinear", true)
                .with("f", &c.f)
                .with("constant", c.constant);
            if let Some((expected, ok)) = &c.r_formula {
                entry = entry
                    .with("r = 2 - 2mu + (2n+1)(p - 2lambda)", expected)
                    .with("r formula holds", ok);
            }
            report.push(entry);
        }
        Err(SolitonError::NotCollinear { index, residual }) => {
            report.push(
                CheckOutcome::new("V collinear with xi", Status::Solved)
                    .with("collinear", false)
                    .with("at", format!("∂{}", chart.coord(index)))
                    .with("residual", residual),
            );
        }
        Err(e) => return Err(e.into()),
    }

    if para_sasakian {
        let variation = connection_variation_residual(v, s, curv, &sol.mu)?;
        report.push(CheckOutcome::from_verdict(
            &StructureVerdict::from_residual(
                "(L_V nabla)(X, xi) = 2(mu - 2n)phi X - 2Q phi X",
                &variation,
            ),
            chart,
        ));
        let commutation = commutation_residual(v, curv)?;
        report.push(CheckOutcome::from_verdict(
            &StructureVerdict::from_residual(
                "commutation formula: (L_V R)(X,Y)Z = (nabla_X L_V nabla)(Y,Z) - (nabla_Y L_V nabla)(X,Z)",
                &commutation,
            ),
            chart,
        ));
        eta_einstein_entries(report, s, curv)?;
    }
    Ok(())
}

fn eta_einstein_entries(
    report: &mut VerdictReport,
    s: &ParacontactStructure,
    curv: &Curvature,
) -> Result<(), PipelineError> {
    match eta_einstein_extract(s, curv) {
        Ok(ee) => {
            let trace = Expr::from_int(s.dim() as i64) * &ee.a + &ee.b;
            report.push(
                CheckOutcome::new("eta-Einstein: S = a g + b eta(x)eta", Status::Solved)
                    .with("a", &ee.a)
                    .with("b", &ee.b)
                    .with("einstein", ee.einstein),
            );
            report.push(
                CheckOutcome::new(
                    "trace identity: r = (2n+1)a + b",
                    Status::from_pass(trace == curv.scalar),
                )
                .with("r", &curv.scalar)
                .with("(2n+1)a + b", trace),
            );
            match ricci_form_mu(&ee, s) {
                Some(mu) => ricci_form_entry(report, s, curv, &mu, true)?,
                None => report.push(
                    CheckOutcome::new(
                        "Ricci operator: QX = (mu - 2n)X - mu eta(X)xi",
                        Status::Solved,
                    )
                    .with("matches (mu - 2n, -mu)", false),
                ),
            }
        }
        Err(SolitonError::NotEtaEinstein { index, residual }) => report.push(
            CheckOutcome::new("eta-Einstein: S = a g + b eta(x)eta", Status::Fail)
                .with(
                    "at",
                    format!(
                        "(∂{},∂{})",
                        s.chart().coord(index.0),
                        s.chart().coord(index.1)
                    ),
                )
                .with("residual", residual),
        ),
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn ricci_form_entry(
    report: &mut VerdictReport,
    s: &ParacontactStructure,
    curv: &Curvature,
    mu: &Expr,
    para_sasakian: bool,
) -> Result<(), PipelineError> {
    if !para_sasakian {
        report.push(na("Ricci operator: QX = (mu - 2n)X - mu eta(X)xi"));
        return Ok(());
    }
    let t = ricci_form_checks(s, curv, mu)?;
    let ok = t.ricci_form.pass && t.trace_pass && t.einstein.unwrap_or(true);
    let status = if s.n() > 1 {
        Status::from_pass(ok)
    } else {
        Status::OutsideHypothesis
    };
    let mut entry = CheckOutcome::new("Ricci operator: QX = (mu - 2n)X - mu eta(X)xi", status)
        .with("mu", mu)
        .with("QX = (mu - 2n)X - mu eta(X)xi", t.ricci_form.pass)
        .with("r = 2n mu - 2n(2n+1)", &t.trace_expected)
        .with("trace holds", t.trace_pass)
        .with("consistent", ok)
        .with("hypothesis", "dim > 3");
    if let Some(e) = t.einstein {
        entry = entry.with("Einstein with constant -2n", e);
    }
    report.push(entry);
    Ok(())
}

/// Every pipeline that applies to the manifest.
pub fn cmd_report(m: &Manifest) -> Result<VerdictReport, PipelineError> {
    let mut report = VerdictReport::new(&m.name);
    if m.structure.is_some() {
        report.extend(cmd_check(m)?);
    }
    let frame = m.frames.first().map(|f| f.frame.name.clone());
    report.extend(cmd_curvature(m, frame.as_deref())?);
    if m.structure.is_some() && m.soliton.as_ref().is_some_and(|s| s.v.is_some()) {
        report.extend(cmd_soliton(m, &SolitonOptions::default())?);
    }
    Ok(report)
}
