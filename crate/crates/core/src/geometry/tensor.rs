use std::sync::Arc;

use super::{Chart, GeometryError};
use crate::symexpr::Expr;

/// Type-(r,s) tensor field on a chart with dense components.
///
/// Components are stored row-major over the index tuple
/// `(i1..ir, j1..js)`: contravariant indices first, then covariant ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorField {
    chart: Arc<Chart>,
    contra: usize,
    cov: usize,
    comps: Vec<Expr>,
}

/// All index tuples of length `slots` over `0..dim`, in storage order.
pub fn multi_indices(dim: usize, slots: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = dim.pow(slots as u32);
    (0..total).map(move |mut flat| {
        let mut idx = vec![0; slots];
        for k in (0..slots).rev() {
            idx[k] = flat % dim;
            flat /= dim;
        }
        idx
    })
}

impl TensorField {
    pub fn new(
        chart: Arc<Chart>,
        contra: usize,
        cov: usize,
        comps: Vec<Expr>,
    ) -> Result<Self, GeometryError> {
        let expected = chart.dim().pow((contra + cov) as u32);
        if comps.len() != expected {
            return Err(GeometryError::ComponentCount {
                expected,
                found: comps.len(),
            });
        }
        for e in &comps {
            for s in e.symbols() {
                if !chart.table().contains(&s) {
                    return Err(GeometryError::ForeignSymbol(s.to_string()));
                }
            }
        }
        Ok(TensorField {
            chart,
            contra,
            cov,
            comps,
        })
    }

    /// Builds components from a function of the index tuple. The caller is
    /// responsible for only using chart symbols.
    pub fn from_fn<F>(chart: &Arc<Chart>, contra: usize, cov: usize, mut f: F) -> Self
    where
        F: FnMut(&[usize]) -> Expr,
    {
        let comps = multi_indices(chart.dim(), contra + cov)
            .map(|idx| f(&idx))
            .collect();
        TensorField {
            chart: chart.clone(),
            contra,
            cov,
            comps,
        }
    }

    pub fn zeros(chart: &Arc<Chart>, contra: usize, cov: usize) -> Self {
        Self::from_fn(chart, contra, cov, |_| Expr::zero())
    }

    pub fn scalar(chart: &Arc<Chart>, value: Expr) -> Self {
        TensorField {
            chart: chart.clone(),
            contra: 0,
            cov: 0,
            comps: vec![value],
        }
    }

    pub fn vector(chart: &Arc<Chart>, comps: Vec<Expr>) -> Result<Self, GeometryError> {
        Self::new(chart.clone(), 1, 0, comps)
    }

    pub fn covector(chart: &Arc<Chart>, comps: Vec<Expr>) -> Result<Self, GeometryError> {
        Self::new(chart.clone(), 0, 1, comps)
    }

    /// Coordinate basis vector ∂_i.
    pub fn basis_vector(chart: &Arc<Chart>, i: usize) -> Self {
        Self::from_fn(chart, 1, 0, |idx| Expr::from_int((idx[0] == i) as i64))
    }

    /// Coordinate covector dx^i.
    pub fn basis_covector(chart: &Arc<Chart>, i: usize) -> Self {
        Self::from_fn(chart, 0, 1, |idx| Expr::from_int((idx[0] == i) as i64))
    }

    /// The identity endomorphism δ^i_j.
    pub fn identity(chart: &Arc<Chart>) -> Self {
        Self::from_fn(chart, 1, 1, |idx| Expr::from_int((idx[0] == idx[1]) as i64))
    }

    /// A (1,1) tensor from a matrix with `rows[i][j] = T^i_j`.
    pub fn endomorphism(chart: &Arc<Chart>, rows: Vec<Vec<Expr>>) -> Result<Self, GeometryError> {
        Self::new(chart.clone(), 1, 1, flatten_square(chart.dim(), rows)?)
    }

    /// A (0,2) tensor from a matrix with `rows[i][j] = T_ij`.
    pub fn bilinear(chart: &Arc<Chart>, rows: Vec<Vec<Expr>>) -> Result<Self, GeometryError> {
        Self::new(chart.clone(), 0, 2, flatten_square(chart.dim(), rows)?)
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn contravariant_rank(&self) -> usize {
        self.contra
    }

    pub fn covariant_rank(&self) -> usize {
        self.cov
    }

    pub fn rank(&self) -> (usize, usize) {
        (self.contra, self.cov)
    }

    pub fn components(&self) -> &[Expr] {
        &self.comps
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.contra + self.cov);
        idx.iter().fold(0, |acc, &i| acc * self.dim() + i)
    }

    pub fn get(&self, idx: &[usize]) -> &Expr {
        &self.comps[self.flat_index(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: Expr) {
        let k = self.flat_index(idx);
        self.comps[k] = value;
    }

    pub fn indices(&self) -> impl Iterator<Item = Vec<usize>> {
        multi_indices(self.dim(), self.contra + self.cov)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Expr::is_zero)
    }

    /// First nonzero component in storage order.
    pub fn first_nonzero(&self) -> Option<(Vec<usize>, Expr)> {
        self.indices()
            .zip(&self.comps)
            .find(|(_, e)| !e.is_zero())
            .map(|(i, e)| (i, e.clone()))
    }

    pub fn same_chart(&self, other: &TensorField) -> Result<(), GeometryError> {
        if Arc::ptr_eq(&self.chart, &other.chart) || self.chart == other.chart {
            Ok(())
        } else {
            Err(GeometryError::ChartMismatch)
        }
    }

    fn same_shape(&self, other: &TensorField) -> Result<(), GeometryError> {
        self.same_chart(other)?;
        if self.rank() != other.rank() {
            return Err(GeometryError::RankMismatch {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        Ok(())
    }

    pub fn expect_rank(&self, contra: usize, cov: usize) -> Result<(), GeometryError> {
        if self.rank() != (contra, cov) {
            return Err(GeometryError::RankMismatch {
                expected: (contra, cov),
                found: self.rank(),
            });
        }
        Ok(())
    }

    pub fn map<F: FnMut(&Expr) -> Expr>(&self, f: F) -> TensorField {
        TensorField {
            chart: self.chart.clone(),
            contra: self.contra,
            cov: self.cov,
            comps: self.comps.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &TensorField) -> Result<TensorField, GeometryError> {
        self.same_shape(other)?;
        Ok(TensorField {
            chart: self.chart.clone(),
            contra: self.contra,
            cov: self.cov,
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &TensorField) -> Result<TensorField, GeometryError> {
        self.same_shape(other)?;
        Ok(TensorField {
            chart: self.chart.clone(),
            contra: self.contra,
            cov: self.cov,
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Expr) -> TensorField {
        self.map(|e| e * c)
    }

    pub fn neg(&self) -> TensorField {
        self.map(|e| -e)
    }

    /// Outer product; indices ordered (contra self, contra other, cov self, cov other).
    pub fn tensor_product(&self, other: &TensorField) -> Result<TensorField, GeometryError> {
        self.same_chart(other)?;
        let (r1, s1) = self.rank();
        let (r2, _) = other.rank();
        let contra = self.contra + other.contra;
        let cov = self.cov + other.cov;
        Ok(TensorField::from_fn(&self.chart, contra, cov, |idx| {
            let mut a = Vec::with_capacity(r1 + s1);
            a.extend_from_slice(&idx[..r1]);
            a.extend_from_slice(&idx[contra..contra + s1]);
            let mut b = Vec::with_capacity(other.contra + other.cov);
            b.extend_from_slice(&idx[r1..r1 + r2]);
            b.extend_from_slice(&idx[contra + s1..]);
            self.get(&a) * other.get(&b)
        }))
    }

    /// Contracts contravariant slot `upper` with covariant slot `lower`
    /// (both counted within their own group).
    pub fn contract(&self, upper: usize, lower: usize) -> Result<TensorField, GeometryError> {
        if upper >= self.contra || lower >= self.cov {
            return Err(GeometryError::ArityMismatch);
        }
        let dim = self.dim();
        let up_pos = upper;
        let low_pos = self.contra + lower;
        Ok(TensorField::from_fn(
            &self.chart,
            self.contra - 1,
            self.cov - 1,
            |idx| {
                let mut full = Vec::with_capacity(idx.len() + 2);
                let mut src = idx.iter();
                for p in 0..self.contra + self.cov {
                    if p == up_pos || p == low_pos {
                        full.push(0);
                    } else {
                        full.push(*src.next().expect("index arity"));
                    }
                }
                (0..dim)
                    .map(|m| {
                        full[up_pos] = m;
                        full[low_pos] = m;
                        self.get(&full).clone()
                    })
                    .sum()
            },
        ))
    }

    /// Inserts the vector `v` into covariant slot `slot`.
    pub fn insert_vector(
        &self,
        slot: usize,
        v: &TensorField,
    ) -> Result<TensorField, GeometryError> {
        v.expect_rank(1, 0)?;
        self.same_chart(v)?;
        if slot >= self.cov {
            return Err(GeometryError::ArityMismatch);
        }
        let pos = self.contra + slot;
        Ok(TensorField::from_fn(
            &self.chart,
            self.contra,
            self.cov - 1,
            |idx| {
                let mut full: Vec<usize> = Vec::with_capacity(idx.len() + 1);
                full.extend_from_slice(&idx[..pos]);
                full.push(0);
                full.extend_from_slice(&idx[pos..]);
                (0..self.dim())
                    .filter(|&m| !v.comps[m].is_zero())
                    .map(|m| {
                        full[pos] = m;
                        self.get(&full) * &v.comps[m]
                    })
                    .sum()
            },
        ))
    }

    /// Inserts the covector `w` into contravariant slot `slot`.
    pub fn insert_covector(
        &self,
        slot: usize,
        w: &TensorField,
    ) -> Result<TensorField, GeometryError> {
        w.expect_rank(0, 1)?;
        self.same_chart(w)?;
        if slot >= self.contra {
            return Err(GeometryError::ArityMismatch);
        }
        Ok(TensorField::from_fn(
            &self.chart,
            self.contra - 1,
            self.cov,
            |idx| {
                let mut full: Vec<usize> = Vec::with_capacity(idx.len() + 1);
                full.extend_from_slice(&idx[..slot]);
                full.push(0);
                full.extend_from_slice(&idx[slot..]);
                (0..self.dim())
                    .filter(|&m| !w.comps[m].is_zero())
                    .map(|m| {
                        full[slot] = m;
                        self.get(&full) * &w.comps[m]
                    })
                    .sum()
            },
        ))
    }

    /// Fills every covariant slot with vectors, in order.
    pub fn eval_vectors(&self, args: &[&TensorField]) -> Result<TensorField, GeometryError> {
        if args.len() != self.cov {
            return Err(GeometryError::ArityMismatch);
        }
        let mut t = self.clone();
        for a in args {
            t = t.insert_vector(0, a)?;
        }
        Ok(t)
    }

    /// The single component of a (0,0) tensor.
    pub fn as_scalar(&self) -> Option<&Expr> {
        (self.contra == 0 && self.cov == 0).then(|| &self.comps[0])
    }

    /// Matrix view of a rank-2 tensor: `m[i][j]` is the component at `(i, j)`.
    pub fn matrix(&self) -> Vec<Vec<Expr>> {
        assert_eq!(self.contra + self.cov, 2, "matrix view needs two slots");
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.get(&[i, j]).clone()).collect())
            .collect()
    }

    /// Composition `A ∘ B` of (1,1) tensors.
    pub fn compose(&self, other: &TensorField) -> Result<TensorField, GeometryError> {
        self.expect_rank(1, 1)?;
        other.expect_rank(1, 1)?;
        self.same_chart(other)?;
        let n = self.dim();
        Ok(TensorField::from_fn(&self.chart, 1, 1, |idx| {
            (0..n)
                .map(|k| self.get(&[idx[0], k]) * other.get(&[k, idx[1]]))
                .sum()
        }))
    }

    /// `A(v)` for a (1,1) tensor `A` and vector `v`.
    pub fn apply(&self, v: &TensorField) -> Result<TensorField, GeometryError> {
        self.expect_rank(1, 1)?;
        self.insert_vector(0, v)
    }

    /// Swaps the two covariant slots `a` and `b`.
    pub fn transpose_cov(&self, a: usize, b: usize) -> TensorField {
        let (pa, pb) = (self.contra + a, self.contra + b);
        TensorField::from_fn(&self.chart, self.contra, self.cov, |idx| {
            let mut j = idx.to_vec();
            j.swap(pa, pb);
            self.get(&j).clone()
        })
    }
}

fn flatten_square(dim: usize, rows: Vec<Vec<Expr>>) -> Result<Vec<Expr>, GeometryError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(GeometryError::ShapeMismatch {
            expected: format!("{dim}x{dim}"),
            found: format!("{}x{}", rows.len(), rows.first().map(Vec::len).unwrap_or(0)),
        });
    }
    Ok(rows.into_iter().flatten().collect())
}
