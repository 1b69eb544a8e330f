//! Differential forms as totally antisymmetric covariant tensors.
//!
//! Normalization: `Alt(T) = (1/k!) Σ sgn(σ) T∘σ`, `α ∧ β = Alt(α ⊗ β)` and
//! `dω(X0..Xk) = 1/(k+1) Σ (−1)^a X_a ω(..X̂_a..) + bracket terms`, so that for a
//! 1-form `dη(X,Y) = ½(Xη(Y) − Yη(X) − η([X,Y]))`. With these choices `d` is
//! a graded derivation of `∧` and `d∘d = 0`.

use std::sync::Arc;

use super::{multi_indices, Chart, GeometryError, TensorField};
use crate::symexpr::Expr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KForm {
    tensor: TensorField,
}

impl KForm {
    /// Wraps a (0,k) tensor after checking total antisymmetry.
    pub fn new(tensor: TensorField) -> Result<Self, GeometryError> {
        if tensor.contravariant_rank() != 0 {
            return Err(GeometryError::RankMismatch {
                expected: (0, tensor.covariant_rank()),
                found: tensor.rank(),
            });
        }
        let k = tensor.covariant_rank();
        for a in 0..k.saturating_sub(1) {
            let swapped = tensor.transpose_cov(a, a + 1);
            if !tensor.add(&swapped)?.is_zero() {
                return Err(GeometryError::NotAntisymmetric);
            }
        }
        Ok(KForm { tensor })
    }

    pub fn from_covector(w: &TensorField) -> Result<Self, GeometryError> {
        w.expect_rank(0, 1)?;
        Ok(KForm { tensor: w.clone() })
    }

    /// A 0-form.
    pub fn function(chart: &Arc<Chart>, f: Expr) -> Self {
        KForm {
            tensor: TensorField::scalar(chart, f),
        }
    }

    /// The coordinate 1-form dx^i.
    pub fn coordinate_differential(chart: &Arc<Chart>, i: usize) -> Self {
        KForm {
            tensor: TensorField::basis_covector(chart, i),
        }
    }

    pub fn degree(&self) -> usize {
        self.tensor.covariant_rank()
    }

    pub fn tensor(&self) -> &TensorField {
        &self.tensor
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.tensor.chart()
    }

    pub fn is_zero(&self) -> bool {
        self.tensor.is_zero()
    }

    pub fn component(&self, idx: &[usize]) -> &Expr {
        self.tensor.get(idx)
    }

    pub fn scale(&self, c: &Expr) -> KForm {
        KForm {
            tensor: self.tensor.scale(c),
        }
    }

    pub fn add(&self, other: &KForm) -> Result<KForm, GeometryError> {
        Ok(KForm {
            tensor: self.tensor.add(&other.tensor)?,
        })
    }

    pub fn sub(&self, other: &KForm) -> Result<KForm, GeometryError> {
        Ok(KForm {
            tensor: self.tensor.sub(&other.tensor)?,
        })
    }
}

pub fn exterior_derivative(w: &KForm) -> Result<KForm, GeometryError> {
    let k = w.degree();
    let n = w.chart().dim();
    if k >= n {
        return Err(GeometryError::TopDegree { degree: k, dim: n });
    }
    let coords = w.chart().coord_names();
    let factor = Expr::ratio(1, (k + 1) as i64);
    let t = &w.tensor;
    let tensor = TensorField::from_fn(w.chart(), 0, k + 1, |idx| {
        let mut acc = Expr::zero();
        for a in 0..=k {
            let mut rest = Vec::with_capacity(k);
            rest.extend_from_slice(&idx[..a]);
            rest.extend_from_slice(&idx[a + 1..]);
            let d = t.get(&rest).differentiate(coords[idx[a]]);
            acc = if a % 2 == 0 { acc + d } else { acc - d };
        }
        acc * &factor
    });
    Ok(KForm { tensor })
}

pub fn wedge(a: &KForm, b: &KForm) -> Result<KForm, GeometryError> {
    a.tensor.same_chart(&b.tensor)?;
    let (p, q) = (a.degree(), b.degree());
    let n = a.chart().dim();
    if p + q > n {
        return Err(GeometryError::DegreeOverflow {
            degree: p + q,
            dim: n,
        });
    }
    let m = p + q;
    let perms = permutations(m);
    let norm = Expr::ratio(1, factorial(m) as i64);
    let tensor = TensorField::from_fn(a.chart(), 0, m, |idx| {
        if has_repeat(idx) {
            return Expr::zero();
        }
        let mut acc = Expr::zero();
        for (perm, sign) in &perms {
            let permuted: Vec<usize> = perm.iter().map(|&s| idx[s]).collect();
            let term = a.tensor.get(&permuted[..p]) * b.tensor.get(&permuted[p..]);
            acc = if *sign > 0 { acc + term } else { acc - term };
        }
        acc * &norm
    });
    Ok(KForm { tensor })
}

/// Value on vector fields, `ω(X1, .., Xk)`.
pub fn evaluate_form(w: &KForm, vectors: &[&TensorField]) -> Result<Expr, GeometryError> {
    let t = w.tensor.eval_vectors(vectors)?;
    Ok(t.as_scalar().cloned().expect("all slots filled"))
}

/// Repeated wedge `ω ∧ ω ∧ .. ∧ ω` (`times` factors; zero factors give the constant 1).
pub fn wedge_power(w: &KForm, times: usize) -> Result<KForm, GeometryError> {
    let mut acc = KForm::function(w.chart(), Expr::one());
    for _ in 0..times {
        acc = wedge(&acc, w)?;
    }
    Ok(acc)
}

fn factorial(m: usize) -> usize {
    (1..=m).product()
}

fn has_repeat(idx: &[usize]) -> bool {
    idx.iter()
        .enumerate()
        .any(|(i, a)| idx[i + 1..].contains(a))
}

/// All permutations of `0..m` with their signs.
fn permutations(m: usize) -> Vec<(Vec<usize>, i32)> {
    multi_indices(m.max(1), m)
        .filter(|p| !has_repeat(p))
        .map(|p| {
            let inversions = (0..m)
                .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            (p, sign)
        })
        .collect()
}
