use super::connection::covariant_derivative;
use super::curvature::riemann_from_connection;
use super::{multi_indices, Connection, GeometryError, Metric, TensorField};
use crate::symexpr::Expr;

/// `[X, Y]^k = X^j ∂_j Y^k − Y^j ∂_j X^k`.
pub fn lie_bracket(x: &TensorField, y: &TensorField) -> Result<TensorField, GeometryError> {
    x.expect_rank(1, 0)?;
    y.expect_rank(1, 0)?;
    lie_derivative(y, x)
}

/// `L_V T` for any tensor type via the coordinate formula
///
/// `(L_V T)^{a..}_{b..} = V^m ∂_m T − Σ T^{..m..} ∂_m V^a + Σ T_{..m..} ∂_b V^m`.
pub fn lie_derivative(t: &TensorField, v: &TensorField) -> Result<TensorField, GeometryError> {
    v.expect_rank(1, 0)?;
    t.same_chart(v)?;
    let n = t.dim();
    let (r, s) = t.rank();
    let coords = t.chart().coord_names();
    let vc = v.components();
    // dv[m][a] = ∂_m V^a
    let dv: Vec<Vec<Expr>> = (0..n)
        .map(|m| (0..n).map(|a| vc[a].differentiate(coords[m])).collect())
        .collect();
    let mut out = TensorField::zeros(t.chart(), r, s);
    for idx in multi_indices(n, r + s) {
        let mut acc = Expr::zero();
        for m in 0..n {
            if !vc[m].is_zero() {
                acc = acc + &vc[m] * t.get(&idx).differentiate(coords[m]);
            }
        }
        for p in 0..r {
            let a = idx[p];
            for m in 0..n {
                if dv[m][a].is_zero() {
                    continue;
                }
                let mut b = idx.clone();
                b[p] = m;
                acc = acc - t.get(&b) * &dv[m][a];
            }
        }
        for q in r..r + s {
            let bq = idx[q];
            for m in 0..n {
                if dv[bq][m].is_zero() {
                    continue;
                }
                let mut b = idx.clone();
                b[q] = m;
                acc = acc + t.get(&b) * &dv[bq][m];
            }
        }
        out.set(&idx, acc);
    }
    Ok(out)
}

/// `(L_V∇)(X, Y) = L_V(∇_X Y) − ∇_[V,X] Y − ∇_X(L_V Y)`, as a (1,2) tensor
/// with components `[k, i, j]` for `X = ∂i`, `Y = ∂j`.
///
/// On coordinate fields this is
/// `∂_i∂_j V^k + V^m ∂_m Γ^k_ij − Γ^m_ij ∂_m V^k + Γ^k_mj ∂_i V^m + Γ^k_im ∂_j V^m`.
pub fn lie_derivative_of_connection(
    v: &TensorField,
    conn: &Connection,
) -> Result<TensorField, GeometryError> {
    v.expect_rank(1, 0)?;
    if v.chart() != conn.chart() {
        return Err(GeometryError::ChartMismatch);
    }
    let n = v.dim();
    let coords = v.chart().coord_names();
    let vc = v.components();
    let dv: Vec<Vec<Expr>> = (0..n)
        .map(|m| (0..n).map(|a| vc[a].differentiate(coords[m])).collect())
        .collect();
    Ok(TensorField::from_fn(v.chart(), 1, 2, |idx| {
        let (k, i, j) = (idx[0], idx[1], idx[2]);
        let mut acc = dv[j][k].differentiate(coords[i]);
        for m in 0..n {
            if !vc[m].is_zero() {
                acc = acc + &vc[m] * conn.gamma(k, i, j).differentiate(coords[m]);
            }
            acc = acc - conn.gamma(m, i, j) * &dv[m][k];
            acc = acc + conn.gamma(k, m, j) * &dv[i][m];
            acc = acc + conn.gamma(k, i, m) * &dv[j][m];
        }
        acc
    }))
}

/// `L_V R` for the (1,3) curvature tensor of `g`.
pub fn lie_derivative_of_curvature(
    v: &TensorField,
    g: &Metric,
) -> Result<TensorField, GeometryError> {
    let conn = super::christoffel(g);
    let r = riemann_from_connection(&conn);
    lie_derivative(&r, v)
}

/// The right side of the commutation identity
/// `(L_V R)(X,Y)Z = (∇_X L_V∇)(Y,Z) − (∇_Y L_V∇)(X,Z)`, laid out like the
/// Riemann tensor (`[l, k, i, j]` for `X = ∂i`, `Y = ∂j`, `Z = ∂k`).
pub fn curvature_variation_from_connection(
    v: &TensorField,
    conn: &Connection,
) -> Result<TensorField, GeometryError> {
    let lv = lie_derivative_of_connection(v, conn)?;
    // d[l, i, a, b] = (∇_i L_V∇)^l_{ab}
    let d = covariant_derivative(&lv, conn)?;
    Ok(TensorField::from_fn(v.chart(), 1, 3, |idx| {
        let (l, k, i, j) = (idx[0], idx[1], idx[2], idx[3]);
        d.get(&[l, i, j, k]) - d.get(&[l, j, i, k])
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Chart;

    fn flat3() -> std::sync::Arc<crate::geometry::Chart> {
        Chart::new(&["x", "y", "z"], &[]).unwrap()
    }

    fn vec3(c: &std::sync::Arc<Chart>, a: Expr, b: Expr, d: Expr) -> TensorField {
        TensorField::vector(c, vec![a, b, d]).unwrap()
    }

    #[test]
    fn brackets() {
        let c = flat3();
        let dx = TensorField::basis_vector(&c, 0);
        let dy = TensorField::basis_vector(&c, 1);
        assert!(lie_bracket(&dx, &dy).unwrap().is_zero());

        let x = Expr::symbol("x");
        let y = Expr::symbol("y");
        let a = vec3(&c, Expr::zero(), x.clone(), Expr::zero());
        let b = vec3(&c, y.clone(), Expr::zero(), Expr::zero());
        let br = lie_bracket(&a, &b).unwrap();
        assert_eq!(br, vec3(&c, x, y.neg(), Expr::zero()));
    }

    #[test]
    fn bracket_is_antisymmetric() {
        let c = flat3();
        let x = Expr::symbol("x");
        let z = Expr::symbol("z");
        let a = vec3(&c, &x * &z, Expr::one(), x.clone());
        let b = vec3(&c, z.clone(), &x * &x, Expr::zero());
        let ab = lie_bracket(&a, &b).unwrap();
        let ba = lie_bracket(&b, &a).unwrap();
        assert!(ab.add(&ba).unwrap().is_zero());
    }

    #[test]
    fn translations_are_affine_on_flat_space() {
        let c = flat3();
        let g = Metric::new(TensorField::from_fn(&c, 0, 2, |i| {
            Expr::from_int((i[0] == i[1]) as i64)
        }))
        .unwrap();
        let conn = super::super::christoffel(&g);
        let v = vec3(&c, Expr::one(), Expr::from_int(2), Expr::zero());
        assert!(lie_derivative_of_connection(&v, &conn).unwrap().is_zero());
        let lin = vec3(&c, Expr::symbol("y"), Expr::symbol("x"), Expr::zero());
        assert!(lie_derivative_of_curvature(&lin, &g).unwrap().is_zero());
    }
}
