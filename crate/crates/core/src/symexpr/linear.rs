//! Exact Gaussian elimination over the rational-function field.

use std::collections::BTreeMap;

use super::expr::Expr;
use super::symbol::{Symbol, SymbolKind};
use super::ExprError;

/// Equations `e = 0`, each affine in `unknowns`.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    unknowns: Vec<Symbol>,
    equations: Vec<Expr>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(BTreeMap<String, Expr>),
    /// Row `equation` (index into the original list) reduces to
    /// `residual = 0` with `residual` a nonzero expression free of unknowns.
    Inconsistent {
        equation: usize,
        residual: Expr,
    },
    /// Pivot unknowns expressed through the free ones.
    Underdetermined {
        free: Vec<String>,
        pivots: BTreeMap<String, Expr>,
    },
}

impl LinearSystem {
    pub fn new(unknowns: Vec<Symbol>, equations: Vec<Expr>) -> Result<Self, ExprError> {
        for u in &unknowns {
            if u.kind() != SymbolKind::Unknown {
                return Err(ExprError::NotAnUnknown(u.name().to_string()));
            }
        }
        let names: Vec<&str> = unknowns.iter().map(Symbol::name).collect();
        for (i, e) in equations.iter().enumerate() {
            if !e.is_affine_in(&names) {
                return Err(ExprError::NotAffine { equation: i });
            }
        }
        Ok(LinearSystem {
            unknowns,
            equations,
        })
    }

    pub fn unknowns(&self) -> &[Symbol] {
        &self.unknowns
    }

    pub fn equations(&self) -> &[Expr] {
        &self.equations
    }

    /// Every equation with `solution` substituted.
    pub fn residuals(&self, solution: &BTreeMap<String, Expr>) -> Result<Vec<Expr>, ExprError> {
        self.equations
            .iter()
            .map(|e| e.substitute(solution))
            .collect()
    }
}

struct Row {
    origin: usize,
    coeffs: Vec<Expr>,
    constant: Expr,
}

pub fn solve_linear(system: &LinearSystem) -> LinearSolution {
    let names: Vec<String> = system
        .unknowns
        .iter()
        .map(|s| s.name().to_string())
        .collect();
    let zero_all: BTreeMap<String, Expr> =
        names.iter().map(|n| (n.clone(), Expr::zero())).collect();

    let mut rows: Vec<Row> = system
        .equations
        .iter()
        .enumerate()
        .map(|(origin, e)| Row {
            origin,
            coeffs: names.iter().map(|n| e.differentiate(n)).collect(),
            constant: e
                .substitute(&zero_all)
                .expect("affine equations have unknown-free denominators"),
        })
        .collect();

    let ncols = names.len();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        // Pick the simplest nonzero entry to keep intermediate swell down.
        let best = (r..rows.len())
            .filter(|&i| !rows[i].coeffs[col].is_zero())
            .min_by_key(|&i| rows[i].coeffs[col].complexity());
        let Some(p) = best else { continue };
        rows.swap(r, p);
        let inv = rows[r].coeffs[col].recip().expect("pivot is nonzero");
        let scale = |x: &Expr| x.mul(&inv);
        let pivot_coeffs: Vec<Expr> = rows[r].coeffs.iter().map(scale).collect();
        let pivot_const = scale(&rows[r].constant);
        rows[r].coeffs = pivot_coeffs.clone();
        rows[r].constant = pivot_const.clone();
        for i in 0..rows.len() {
            if i == r || rows[i].coeffs[col].is_zero() {
                continue;
            }
            let f = rows[i].coeffs[col].clone();
            for (c, pc) in rows[i].coeffs.iter_mut().zip(&pivot_coeffs) {
                *c = c.sub(&f.mul(pc));
            }
            rows[i].constant = rows[i].constant.sub(&f.mul(&pivot_const));
        }
        pivot_cols.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }

    // Rows past the pivots have all-zero coefficients; a nonzero constant is a contradiction.
    let mut bad: Vec<&Row> = rows[r..]
        .iter()
        .filter(|row| !row.constant.is_zero())
        .collect();
    bad.sort_by_key(|row| row.origin);
    if let Some(row) = bad.first() {
        return LinearSolution::Inconsistent {
            equation: row.origin,
            residual: row.constant.clone(),
        };
    }

    let free: Vec<String> = (0..ncols)
        .filter(|c| !pivot_cols.contains(c))
        .map(|c| names[c].clone())
        .collect();
    let mut pivots = BTreeMap::new();
    for (k, &col) in pivot_cols.iter().enumerate() {
        let row = &rows[k];
        let mut value = row.constant.neg();
        for (c, coeff) in row.coeffs.iter().enumerate() {
            if c != col && !coeff.is_zero() {
                value = value.sub(&coeff.mul(&Expr::symbol(&names[c])));
            }
        }
        pivots.insert(names[col].clone(), value);
    }
    if free.is_empty() {
        LinearSolution::Unique(pivots)
    } else {
        LinearSolution::Underdetermined { free, pivots }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::{parse_expr, SymbolTable};

    fn table() -> SymbolTable {
        SymbolTable::from_symbols([
            Symbol::parameter("p"),
            Symbol::unknown("lambda"),
            Symbol::unknown("mu"),
            Symbol::coordinate("x"),
        ])
        .unwrap()
    }

    fn sys(eqs: &[&str]) -> LinearSystem {
        let t = table();
        LinearSystem::new(
            vec![Symbol::unknown("lambda"), Symbol::unknown("mu")],
            eqs.iter().map(|s| parse_expr(s, &t).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn soliton_constants() {
        let s = sys(&["2*lambda - p - 2/3 + 6", "2*mu - 6"]);
        let LinearSolution::Unique(sol) = solve_linear(&s) else {
            panic!("expected unique solution")
        };
        assert_eq!(sol["lambda"].to_string(), "p/2 - 8/3");
        assert_eq!(sol["mu"], Expr::from_int(3));
        assert!(s.residuals(&sol).unwrap().iter().all(Expr::is_zero));
    }

    #[test]
    fn inconsistent() {
        let s = sys(&["lambda", "lambda - 1"]);
        assert!(matches!(
            solve_linear(&s),
            LinearSolution::Inconsistent { equation: 1, .. }
        ));
    }

    #[test]
    fn underdetermined() {
        let s = sys(&["lambda + mu - 1"]);
        match solve_linear(&s) {
            LinearSolution::Underdetermined { free, pivots } => {
                assert_eq!(free, vec!["mu".to_string()]);
                assert_eq!(pivots["lambda"].to_string(), "-mu + 1");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn function_coefficients() {
        let s = sys(&["x*lambda - 1", "mu - lambda*x^2"]);
        let LinearSolution::Unique(sol) = solve_linear(&s) else {
            panic!()
        };
        assert_eq!(sol["lambda"].to_string(), "1/x");
        assert_eq!(sol["mu"].to_string(), "x");
    }

    #[test]
    fn rejects_nonlinear() {
        let t = table();
        let e = parse_expr("lambda*mu", &t).unwrap();
        let err = LinearSystem::new(
            vec![Symbol::unknown("lambda"), Symbol::unknown("mu")],
            vec![e],
        );
        assert!(matches!(err, Err(ExprError::NotAffine { equation: 0 })));
    }
}
