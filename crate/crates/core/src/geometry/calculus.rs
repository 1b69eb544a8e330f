use super::{christoffel, Metric, TensorField};
use crate::symexpr::Expr;

/// `df` as a 1-form.
pub fn differential(f: &Expr, g: &Metric) -> TensorField {
    let coords = g.chart().coord_names();
    TensorField::from_fn(g.chart(), 0, 1, |idx| f.differentiate(coords[idx[0]]))
}

/// `(Df)^i = g^{ij} ∂_j f`.
pub fn gradient(f: &Expr, g: &Metric) -> TensorField {
    let df = differential(f, g);
    g.raise(&df).expect("df lives on the metric chart")
}

/// `(Hess f)_ij = ∂_i∂_j f − Γ^k_ij ∂_k f`.
pub fn hessian(f: &Expr, g: &Metric) -> TensorField {
    let conn = christoffel(g);
    let coords = g.chart().coord_names();
    let n = g.dim();
    let df: Vec<Expr> = coords.iter().map(|c| f.differentiate(c)).collect();
    TensorField::from_fn(g.chart(), 0, 2, |idx| {
        let (i, j) = (idx[0], idx[1]);
        let mut acc = df[j].differentiate(coords[i]);
        for k in 0..n {
            if !df[k].is_zero() {
                acc = acc - conn.gamma(k, i, j) * &df[k];
            }
        }
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Chart;

    #[test]
    fn flat_gradient_and_hessian() {
        let c = Chart::new(&["x", "y", "z"], &[]).unwrap();
        let g = Metric::from_matrix(&c, TensorField::identity(&c).matrix()).unwrap();
        let x = Expr::symbol("x");
        let f = &x * &x * Expr::ratio(1, 2);
        assert_eq!(
            gradient(&f, &g).components(),
            &[x.clone(), Expr::zero(), Expr::zero()]
        );
        let sq: Expr = ["x", "y", "z"]
            .iter()
            .map(|s| Expr::symbol(s) * Expr::symbol(s) * Expr::ratio(1, 2))
            .sum();
        assert_eq!(&hessian(&sq, &g), g.tensor());
        let k = Expr::from_int(3);
        assert!(gradient(&k, &g).is_zero());
        assert!(hessian(&k, &g).is_zero());
    }

    #[test]
    fn polar_hessian_of_radius() {
        let c = Chart::new(&["x", "y"], &[]).unwrap();
        let x = Expr::symbol("x");
        let g = Metric::from_matrix(
            &c,
            vec![vec![Expr::one(), Expr::zero()], vec![Expr::zero(), &x * &x]],
        )
        .unwrap();
        let h = hessian(&x, &g);
        assert_eq!(h.get(&[1, 1]), &x);
        assert!(h.get(&[0, 0]).is_zero());
        assert!(h.get(&[0, 1]).is_zero());
    }
}
