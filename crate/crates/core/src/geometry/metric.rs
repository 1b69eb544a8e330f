use std::sync::Arc;

use super::{Chart, GeometryError, TensorField};
use crate::symexpr::Expr;

/// Nondegenerate symmetric (0,2) tensor with cached inverse and determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric {
    g: TensorField,
    inverse: TensorField,
    det: Expr,
}

impl Metric {
    pub fn new(g: TensorField) -> Result<Self, GeometryError> {
        g.expect_rank(0, 2)?;
        let n = g.dim();
        for i in 0..n {
            for j in i + 1..n {
                if g.get(&[i, j]) != g.get(&[j, i]) {
                    return Err(GeometryError::AsymmetricMetric { i, j });
                }
            }
        }
        let (inv, det) = invert(&g.matrix());
        let inv = inv.ok_or(GeometryError::DegenerateMetric)?;
        let inverse = TensorField::from_fn(g.chart(), 2, 0, |idx| inv[idx[0]][idx[1]].clone());
        Ok(Metric { g, inverse, det })
    }

    pub fn from_matrix(chart: &Arc<Chart>, rows: Vec<Vec<Expr>>) -> Result<Self, GeometryError> {
        Self::new(TensorField::bilinear(chart, rows)?)
    }

    pub fn tensor(&self) -> &TensorField {
        &self.g
    }

    pub fn inverse(&self) -> &TensorField {
        &self.inverse
    }

    pub fn determinant(&self) -> &Expr {
        &self.det
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.g.chart()
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn at(&self, i: usize, j: usize) -> &Expr {
        self.g.get(&[i, j])
    }

    pub fn inv_at(&self, i: usize, j: usize) -> &Expr {
        self.inverse.get(&[i, j])
    }

    /// g(X, Y) for vector fields.
    pub fn inner(&self, x: &TensorField, y: &TensorField) -> Result<Expr, GeometryError> {
        Ok(self
            .g
            .eval_vectors(&[x, y])?
            .as_scalar()
            .cloned()
            .expect("two vectors fill a (0,2) tensor"))
    }

    /// The 1-form g(X, ·).
    pub fn lower(&self, x: &TensorField) -> Result<TensorField, GeometryError> {
        self.g.insert_vector(0, x)
    }

    /// The vector g⁻¹(ω, ·).
    pub fn raise(&self, w: &TensorField) -> Result<TensorField, GeometryError> {
        self.inverse.insert_covector(0, w)
    }

    /// Raises the first covariant slot of a (0,2) tensor: `T^i_j = g^{ik} T_kj`.
    pub fn raise_first(&self, t: &TensorField) -> Result<TensorField, GeometryError> {
        t.expect_rank(0, 2)?;
        t.same_chart(&self.g)?;
        let n = self.dim();
        Ok(TensorField::from_fn(self.chart(), 1, 1, |idx| {
            (0..n)
                .map(|k| self.inv_at(idx[0], k) * t.get(&[k, idx[1]]))
                .sum()
        }))
    }

    /// Lowers a (1,1) tensor to `T_ij = g_ik A^k_j`.
    pub fn lower_first(&self, a: &TensorField) -> Result<TensorField, GeometryError> {
        a.expect_rank(1, 1)?;
        a.same_chart(&self.g)?;
        let n = self.dim();
        Ok(TensorField::from_fn(self.chart(), 0, 2, |idx| {
            (0..n)
                .map(|k| self.at(idx[0], k) * a.get(&[k, idx[1]]))
                .sum()
        }))
    }
}

/// Gauss–Jordan inverse over the function field. Returns `None` for the
/// inverse when the matrix is singular, together with the determinant.
pub fn invert(m: &[Vec<Expr>]) -> (Option<Vec<Vec<Expr>>>, Expr) {
    let n = m.len();
    let mut a: Vec<Vec<Expr>> = m.to_vec();
    let mut inv: Vec<Vec<Expr>> = (0..n)
        .map(|i| (0..n).map(|j| Expr::from_int((i == j) as i64)).collect())
        .collect();
    let mut det = Expr::one();
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].complexity());
        let Some(p) = pivot else {
            return (None, Expr::zero());
        };
        if p != col {
            a.swap(p, col);
            inv.swap(p, col);
            det = det.neg();
        }
        let pv = a[col][col].clone();
        det = det.mul(&pv);
        let r = pv.recip().expect("pivot nonzero");
        for j in 0..n {
            a[col][j] = a[col][j].mul(&r);
            inv[col][j] = inv[col][j].mul(&r);
        }
        for row in 0..n {
            if row == col || a[row][col].is_zero() {
                continue;
            }
            let f = a[row][col].clone();
            for j in 0..n {
                let t = f.mul(&a[col][j]);
                a[row][j] = a[row][j].sub(&t);
                let t = f.mul(&inv[col][j]);
                inv[row][j] = inv[row][j].sub(&t);
            }
        }
    }
    (Some(inv), det)
}
