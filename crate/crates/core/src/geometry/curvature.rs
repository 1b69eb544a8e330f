//! Curvature under the convention `R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_[X,Y] Z`.
//!
//! The Riemann tensor is stored as a (1,3) field with components
//! `[l, k, i, j]` such that `R(∂i, ∂j)∂k = R^l_kij ∂l`. The Ricci tensor is the
//! trace of `Z ↦ R(Z, X)Y`.

use super::connection::christoffel;
use super::{Connection, GeometryError, Metric, TensorField};
use crate::symexpr::Expr;

/// Everything curvature-related for one metric, computed once.
#[derive(Clone, Debug)]
pub struct Curvature {
    pub connection: Connection,
    pub riemann: TensorField,
    pub ricci: TensorField,
    pub ricci_operator: TensorField,
    pub scalar: Expr,
}

impl Curvature {
    pub fn compute(g: &Metric) -> Curvature {
        let connection = christoffel(g);
        let riemann = riemann_from_connection(&connection);
        let ricci = ricci_from_riemann(&riemann);
        let ricci_operator = g
            .raise_first(&ricci)
            .expect("ricci is (0,2) on the metric chart");
        let n = g.dim();
        let scalar = (0..n).map(|i| ricci_operator.get(&[i, i]).clone()).sum();
        Curvature {
            connection,
            riemann,
            ricci,
            ricci_operator,
            scalar,
        }
    }
}

pub fn riemann_from_connection(conn: &Connection) -> TensorField {
    let chart = conn.chart().clone();
    let n = chart.dim();
    let coords = chart.coord_names();
    let mut out = TensorField::zeros(&chart, 1, 3);
    for l in 0..n {
        for k in 0..n {
            for i in 0..n {
                for j in (i + 1)..n {
                    let mut acc = conn.gamma(l, j, k).differentiate(coords[i])
                        - conn.gamma(l, i, k).differentiate(coords[j]);
                    for m in 0..n {
                        let a = conn.gamma(l, i, m);
                        if !a.is_zero() {
                            acc = acc + a * conn.gamma(m, j, k);
                        }
                        let b = conn.gamma(l, j, m);
                        if !b.is_zero() {
                            acc = acc - b * conn.gamma(m, i, k);
                        }
                    }
                    out.set(&[l, k, j, i], acc.neg());
                    out.set(&[l, k, i, j], acc);
                }
            }
        }
    }
    out
}

/// `S_ab = R^i_{b i a}`, the trace of `Z ↦ R(Z, ∂a)∂b`.
pub fn ricci_from_riemann(riemann: &TensorField) -> TensorField {
    let n = riemann.dim();
    TensorField::from_fn(riemann.chart(), 0, 2, |idx| {
        (0..n)
            .map(|i| riemann.get(&[i, idx[1], i, idx[0]]).clone())
            .sum()
    })
}

pub fn riemann(g: &Metric) -> TensorField {
    riemann_from_connection(&christoffel(g))
}

pub fn ricci(g: &Metric) -> TensorField {
    ricci_from_riemann(&riemann(g))
}

pub fn ricci_operator(g: &Metric) -> TensorField {
    Curvature::compute(g).ricci_operator
}

pub fn scalar_curvature(g: &Metric) -> Expr {
    Curvature::compute(g).scalar
}

/// `R(X, Y)Z` for vector fields.
pub fn riemann_apply(
    riemann: &TensorField,
    x: &TensorField,
    y: &TensorField,
    z: &TensorField,
) -> Result<TensorField, GeometryError> {
    riemann.expect_rank(1, 3)?;
    riemann.eval_vectors(&[z, x, y])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Chart;

    #[test]
    fn polar_is_flat() {
        let c = Chart::new(&["x", "y"], &[]).unwrap();
        let x = Expr::symbol("x");
        let g = Metric::from_matrix(
            &c,
            vec![vec![Expr::one(), Expr::zero()], vec![Expr::zero(), &x * &x]],
        )
        .unwrap();
        let curv = Curvature::compute(&g);
        assert!(curv.riemann.is_zero());
        assert!(curv.ricci.is_zero());
        assert!(curv.scalar.is_zero());
    }

    #[test]
    fn round_sphere_has_positive_curvature() {
        // Stereographic chart on the unit sphere: g = 4/(1+x²+y²)² δ.
        let c = Chart::new(&["x", "y"], &[]).unwrap();
        let x = Expr::symbol("x");
        let y = Expr::symbol("y");
        let w = Expr::one() + &x * &x + &y * &y;
        let f = Expr::from_int(4).div(&(&w * &w)).unwrap();
        let g = Metric::from_matrix(
            &c,
            vec![vec![f.clone(), Expr::zero()], vec![Expr::zero(), f.clone()]],
        )
        .unwrap();
        // Scalar curvature of the unit 2-sphere is 2.
        assert_eq!(scalar_curvature(&g), Expr::from_int(2));
    }
}
