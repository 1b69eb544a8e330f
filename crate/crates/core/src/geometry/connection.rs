use std::sync::Arc;

use super::{multi_indices, Chart, GeometryError, Metric, TensorField};
use crate::symexpr::Expr;

/// Levi-Civita connection in coordinates: `∇_{∂i} ∂j = Γ^k_ij ∂k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    chart: Arc<Chart>,
    gamma: Vec<Expr>,
}

impl Connection {
    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    /// Γ^k_ij.
    pub fn gamma(&self, k: usize, i: usize, j: usize) -> &Expr {
        let n = self.chart.dim();
        &self.gamma[(k * n + i) * n + j]
    }

    /// The symbols as a (1,2) tensor-shaped array, indices `[k, i, j]`.
    /// Not a tensor under coordinate change, but convenient for reporting.
    pub fn as_array(&self) -> TensorField {
        TensorField::from_fn(&self.chart, 1, 2, |idx| {
            self.gamma(idx[0], idx[1], idx[2]).clone()
        })
    }

    /// `∇_X Y` for vector fields.
    pub fn covariant_derivative_along(
        &self,
        x: &TensorField,
        y: &TensorField,
    ) -> Result<TensorField, GeometryError> {
        x.expect_rank(1, 0)?;
        let dy = covariant_derivative(y, self)?;
        dy.insert_vector(0, x)
    }
}

/// Christoffel symbols of the second kind,
/// `Γ^k_ij = ½ g^{kl}(∂_i g_jl + ∂_j g_il − ∂_l g_ij)`.
pub fn christoffel(g: &Metric) -> Connection {
    let chart = g.chart().clone();
    let n = chart.dim();
    let coords = chart.coord_names();
    // dg[l][i][j] = ∂_l g_ij
    let dg: Vec<Vec<Vec<Expr>>> = (0..n)
        .map(|l| {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| g.at(i, j).differentiate(coords[l]))
                        .collect()
                })
                .collect()
        })
        .collect();
    // First kind: Γ_{l,ij} = ½(∂_i g_jl + ∂_j g_il − ∂_l g_ij)
    let half = Expr::ratio(1, 2);
    let mut first = vec![Expr::zero(); n * n * n];
    for l in 0..n {
        for i in 0..n {
            for j in i..n {
                let v = (&dg[i][j][l] + &dg[j][i][l] - &dg[l][i][j]) * &half;
                first[(l * n + i) * n + j] = v.clone();
                first[(l * n + j) * n + i] = v;
            }
        }
    }
    let mut gamma = vec![Expr::zero(); n * n * n];
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                let v: Expr = (0..n)
                    .filter(|&l| !g.inv_at(k, l).is_zero())
                    .map(|l| g.inv_at(k, l) * &first[(l * n + i) * n + j])
                    .sum();
                gamma[(k * n + i) * n + j] = v.clone();
                gamma[(k * n + j) * n + i] = v;
            }
        }
    }
    Connection { chart, gamma }
}

/// `∇T`, a tensor with one extra covariant slot. The derivative direction
/// is the first covariant index: components `[a.., i, b..] = (∇_i T)^{a..}_{b..}`.
pub fn covariant_derivative(
    t: &TensorField,
    conn: &Connection,
) -> Result<TensorField, GeometryError> {
    if t.chart() != conn.chart() {
        return Err(GeometryError::ChartMismatch);
    }
    let (r, s) = t.rank();
    let n = t.dim();
    let coords = t.chart().coord_names();
    let mut out = TensorField::zeros(t.chart(), r, s + 1);
    for idx in multi_indices(n, r + s + 1) {
        let i = idx[r];
        let mut base: Vec<usize> = Vec::with_capacity(r + s);
        base.extend_from_slice(&idx[..r]);
        base.extend_from_slice(&idx[r + 1..]);
        let mut acc = t.get(&base).differentiate(coords[i]);
        for p in 0..r {
            let a = base[p];
            for m in 0..n {
                let gm = conn.gamma(a, i, m);
                if gm.is_zero() {
                    continue;
                }
                let mut b = base.clone();
                b[p] = m;
                acc = acc + gm * t.get(&b);
            }
        }
        for q in 0..s {
            let bq = base[r + q];
            for m in 0..n {
                let gm = conn.gamma(m, i, bq);
                if gm.is_zero() {
                    continue;
                }
                let mut b = base.clone();
                b[r + q] = m;
                acc = acc - gm * t.get(&b);
            }
        }
        out.set(&idx, acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn polar() -> Metric {
        let c = Chart::new(&["x", "y"], &[]).unwrap();
        let x = Expr::symbol("x");
        Metric::from_matrix(
            &c,
            vec![vec![Expr::one(), Expr::zero()], vec![Expr::zero(), &x * &x]],
        )
        .unwrap()
    }

    #[test]
    fn polar_christoffel() {
        let conn = christoffel(&polar());
        let x = Expr::symbol("x");
        let inv_x = Expr::one().div(&x).unwrap();
        assert_eq!(conn.gamma(0, 1, 1), &x.neg());
        assert_eq!(conn.gamma(1, 0, 1), &inv_x);
        assert_eq!(conn.gamma(1, 1, 0), &inv_x);
        for (k, i, j) in [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1)] {
            assert!(conn.gamma(k, i, j).is_zero());
        }
    }

    #[test]
    fn metric_is_parallel() {
        let g = polar();
        let conn = christoffel(&g);
        assert!(covariant_derivative(g.tensor(), &conn).unwrap().is_zero());
        let id = TensorField::identity(g.chart());
        assert!(covariant_derivative(&id, &conn).unwrap().is_zero());
    }

    #[test]
    fn constant_scalar_has_zero_gradient() {
        let g = polar();
        let conn = christoffel(&g);
        let f = TensorField::scalar(g.chart(), Expr::from_int(5));
        let df = covariant_derivative(&f, &conn).unwrap();
        assert_eq!(df.rank(), (0, 1));
        assert!(df.is_zero());
    }
}
