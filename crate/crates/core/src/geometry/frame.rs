use super::metric::invert;
use super::{GeometryError, TensorField};
use crate::symexpr::Expr;

/// One argument of a full contraction: vectors fill covariant slots and
/// covectors fill contravariant slots.
#[derive(Clone, Copy, Debug)]
pub enum FrameSlot<'a> {
    Vector(&'a TensorField),
    Covector(&'a TensorField),
}

/// Full contraction of `t` against frame arguments. The contravariant slots
/// are filled first, in order, then the covariant ones.
pub fn frame_component(t: &TensorField, frame: &[FrameSlot<'_>]) -> Result<Expr, GeometryError> {
    let (r, s) = t.rank();
    if frame.len() != r + s {
        return Err(GeometryError::ArityMismatch);
    }
    let mut cur = t.clone();
    for slot in &frame[..r] {
        let FrameSlot::Covector(w) = slot else {
            return Err(GeometryError::ArityMismatch);
        };
        cur = cur.insert_covector(0, w)?;
    }
    for slot in &frame[r..] {
        let FrameSlot::Vector(v) = slot else {
            return Err(GeometryError::ArityMismatch);
        };
        cur = cur.insert_vector(0, v)?;
    }
    Ok(cur.as_scalar().cloned().expect("all slots filled"))
}

/// A named local frame with its dual coframe.
#[derive(Clone, Debug)]
pub struct Frame {
    pub name: String,
    vectors: Vec<TensorField>,
    dual: Vec<TensorField>,
}

impl Frame {
    pub fn new(name: &str, vectors: Vec<TensorField>) -> Result<Self, GeometryError> {
        let Some(first) = vectors.first() else {
            return Err(GeometryError::ArityMismatch);
        };
        let n = first.dim();
        if vectors.len() != n {
            return Err(GeometryError::ArityMismatch);
        }
        for v in &vectors {
            v.expect_rank(1, 0)?;
            v.same_chart(first)?;
        }
        // Columns of the matrix are the frame vectors; rows of its inverse
        // are the dual covectors.
        let m: Vec<Vec<Expr>> = (0..n)
            .map(|i| (0..n).map(|a| vectors[a].get(&[i]).clone()).collect())
            .collect();
        let (inv, _) = invert(&m);
        let inv = inv.ok_or(GeometryError::DegenerateFrame)?;
        let dual = (0..n)
            .map(|a| TensorField::from_fn(first.chart(), 0, 1, |idx| inv[a][idx[0]].clone()))
            .collect();
        Ok(Frame {
            name: name.to_string(),
            vectors,
            dual,
        })
    }

    pub fn vectors(&self) -> &[TensorField] {
        &self.vectors
    }

    pub fn vector(&self, a: usize) -> &TensorField {
        &self.vectors[a]
    }

    pub fn dual(&self, a: usize) -> &TensorField {
        &self.dual[a]
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Coefficients of `v` in this frame.
    pub fn decompose(&self, v: &TensorField) -> Result<Vec<Expr>, GeometryError> {
        self.dual
            .iter()
            .map(|w| frame_component(v, &[FrameSlot::Covector(w)]))
            .collect()
    }

    /// `Σ c_a e_a`, written with the given frame labels, e.g. `-3*e2`.
    pub fn describe(&self, coeffs: &[Expr], labels: &[String]) -> String {
        let parts: Vec<String> = coeffs
            .iter()
            .zip(labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| {
                if c.is_one() {
                    l.clone()
                } else if c.neg().is_one() {
                    format!("-{l}")
                } else if c.numerator().num_terms() == 1 && c.denominator().is_one() {
                    format!("{c}*{l}")
                } else {
                    format!("({c})*{l}")
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ").replace("+ -", "- ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Chart;

    #[test]
    fn decompose_in_sheared_frame() {
        let c = Chart::new(&["x", "y"], &[]).unwrap();
        let y = Expr::symbol("y");
        let e1 = TensorField::vector(&c, vec![Expr::one(), y.clone()]).unwrap();
        let e2 = TensorField::vector(&c, vec![Expr::zero(), Expr::from_int(2)]).unwrap();
        let f = Frame::new("e", vec![e1.clone(), e2.clone()]).unwrap();
        let v = e1.scale(&Expr::from_int(3)).sub(&e2).unwrap();
        assert_eq!(
            f.decompose(&v).unwrap(),
            vec![Expr::from_int(3), Expr::from_int(-1)]
        );
        let labels = vec!["e1".to_string(), "e2".to_string()];
        assert_eq!(f.describe(&f.decompose(&v).unwrap(), &labels), "3*e1 - e2");
    }

    #[test]
    fn arity_is_checked() {
        let c = Chart::new(&["x", "y"], &[]).unwrap();
        let id = TensorField::identity(&c);
        let e = TensorField::basis_vector(&c, 0);
        assert_eq!(
            frame_component(&id, &[FrameSlot::Vector(&e)]).unwrap_err(),
            GeometryError::ArityMismatch
        );
        assert_eq!(
            frame_component(&id, &[FrameSlot::Vector(&e), FrameSlot::Vector(&e)]).unwrap_err(),
            GeometryError::ArityMismatch
        );
    }
}
