use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{GeometryError, Metric};
use crate::symexpr::{Expr, Rational};

/// Counts of positive, negative and zero eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Inertia of the metric at a rational point, by symmetric elimination
/// (congruence transforms preserve inertia).
pub fn signature_at(
    g: &Metric,
    point: &BTreeMap<String, Rational>,
) -> Result<Inertia, GeometryError> {
    let n = g.dim();
    let mut a = vec![vec![Rational::zero(); n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = g.at(i, j).evaluate_at(point)?;
        }
    }
    Ok(inertia(a))
}

/// Inertia of a symmetric rational matrix.
pub fn inertia(mut a: Vec<Vec<Rational>>) -> Inertia {
    let mut out = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    let mut active: Vec<usize> = (0..a.len()).collect();
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // All diagonal entries vanish. Any nonzero off-diagonal a_ij lets
                // us replace e_i by e_i + e_j, giving diagonal 2 a_ij ≠ 0.
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero());
                let Some((i, j)) = pair else {
                    out.zero += active.len();
                    break;
                };
                let n = a.len();
                for k in 0..n {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for k in 0..n {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                i
            }
        };
        let d = a[p][p].clone();
        if d.is_positive() {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
        active.retain(|&i| i != p);
        let rows: Vec<usize> = active.clone();
        for &i in &rows {
            if a[i][p].is_zero() {
                continue;
            }
            let f = &a[i][p] / &d;
            for &j in &rows {
                let v = &f * &a[p][j];
                a[i][j] -= v;
            }
            a[i][p] = Rational::zero();
            a[p][i] = Rational::zero();
        }
    }
    out
}

/// Rank of a rational matrix by exact elimination.
pub fn rank(mut a: Vec<Vec<Rational>>) -> usize {
    let rows = a.len();
    let cols = a.first().map(Vec::len).unwrap_or(0);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[r][c];
            for j in c..cols {
                let v = &f * &a[r][j];
                a[i][j] -= v;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Deterministically picks a rational point, assigning every coordinate and
/// parameter of the chart, at which the metric is finite and nondegenerate
/// and every expression in `extra` is finite.
pub fn find_regular_point(g: &Metric, extra: &[&Expr]) -> Option<BTreeMap<String, Rational>> {
    let chart = g.chart();
    let names: Vec<&str> = chart
        .coords()
        .iter()
        .chain(chart.params())
        .map(|s| s.name())
        .collect();
    let seeds: [i64; 8] = [0, 1, 2, 3, -1, -2, 5, 7];
    let candidates = seeds.iter().map(|&c| vec![c; names.len()]).chain(
        seeds
            .iter()
            .map(|&c| (0..names.len() as i64).map(|k| c + k).collect()),
    );
    for values in candidates {
        let point: BTreeMap<String, Rational> = names
            .iter()
            .zip(values)
            .map(|(n, v)| (n.to_string(), Rational::from_integer(v.into())))
            .collect();
        let finite = |e: &Expr| e.evaluate_at(&point).is_ok();
        if !g.tensor().components().iter().all(finite) || !extra.iter().all(|e| finite(e)) {
            continue;
        }
        match g.determinant().evaluate_at(&point) {
            Ok(d) if !d.is_zero() => return Some(point),
            _ => continue,
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    #[test]
    fn hyperbolic_plane_block() {
        let a = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
        assert_eq!(
            inertia(a),
            Inertia {
                positive: 1,
                negative: 1,
                zero: 0
            }
        );
    }

    #[test]
    fn degenerate() {
        let a = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
        assert_eq!(
            inertia(a),
            Inertia {
                positive: 1,
                negative: 0,
                zero: 1
            }
        );
    }

    #[test]
    fn diag_mixed() {
        let a = vec![
            vec![q(-2), q(0), q(0)],
            vec![q(0), q(0), q(0)],
            vec![q(0), q(0), q(5)],
        ];
        assert_eq!(
            inertia(a),
            Inertia {
                positive: 1,
                negative: 1,
                zero: 1
            }
        );
    }
}
