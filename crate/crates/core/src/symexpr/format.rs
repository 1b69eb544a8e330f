//! Canonical text rendering. Output re-parses to the identical `Expr`.

use num_traits::{One, Signed};

use super::expr::{rational_is_negative, Expr};
use super::poly::{Monomial, Poly, Rational};

pub fn format_expr(e: &Expr) -> String {
    if e.denominator().is_one() {
        return format_polynomial_expr(e.numerator());
    }
    // Clear fractional coefficients so the quotient prints as one fraction.
    let c = Rational::from_integer(e.numerator().coefficient_denominator_lcm());
    let num = &e.numerator().scale(&c);
    let den = &e.denominator().scale(&c);
    let n = if num.num_terms() == 1 {
        format_poly(num)
    } else {
        format!("({})", format_poly(num))
    };
    let d = if is_bare_power(den) {
        format_poly(den)
    } else {
        format!("({})", format_poly(den))
    };
    format!("{n}/{d}")
}

// Several terms over one shared denominator print as `(y^2 - 1)/4`.
fn format_polynomial_expr(p: &Poly) -> String {
    let c = p.coefficient_denominator_lcm();
    let shared = p.num_terms() > 1 && !c.is_one() && p.terms_desc().all(|(_, k)| k.denom() == &c);
    if shared {
        let scaled = p.scale(&Rational::from_integer(c.clone()));
        format!("({})/{c}", format_poly(&scaled))
    } else {
        format_poly(p)
    }
}

fn is_bare_power(p: &Poly) -> bool {
    p.num_terms() == 1
        && p.leading()
            .is_some_and(|(m, c)| c.is_one() && m.powers().len() == 1)
}

pub fn format_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms_desc().enumerate() {
        let neg = rational_is_negative(c);
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&format_term(m, &c.abs()));
    }
    out
}

fn format_term(m: &Monomial, c: &Rational) -> String {
    if m.is_one() {
        return format_rational(c);
    }
    let numer = c.numer();
    let denom = c.denom();
    let mono = format_monomial(m);
    let mut s = if numer.is_one() {
        mono
    } else {
        format!("{numer}*{mono}")
    };
    if !denom.is_one() {
        s.push('/');
        s.push_str(&denom.to_string());
    }
    s
}

fn format_rational(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn format_monomial(m: &Monomial) -> String {
    m.powers()
        .iter()
        .map(|(v, e)| {
            if *e == 1 {
                v.to_string()
            } else {
                format!("{v}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_forms() {
        assert_eq!(format_expr(&Expr::zero()), "0");
        let y = Expr::symbol("y");
        assert_eq!(format_expr(&(y.clone() + Expr::one())), "y + 1");
        let p = Expr::symbol("p");
        let lam = p.scale(&Rational::new(1.into(), 2.into())) - Expr::ratio(8, 3);
        assert_eq!(format_expr(&lam), "p/2 - 8/3");
        let inv = Expr::one().div(&(y.clone() * y.clone())).unwrap();
        assert_eq!(format_expr(&inv), "1/y^2");
        let q = (Expr::symbol("x") + Expr::one())
            .div(&(Expr::symbol("x") * y))
            .unwrap();
        assert_eq!(format_expr(&q), "(x + 1)/(x*y)");
        assert_eq!(format_expr(&Expr::ratio(-3, 4)), "-3/4");
        let y2 = Expr::symbol("y") * Expr::symbol("y") - Expr::from_int(2);
        let r = (Expr::symbol("y") * Expr::ratio(3, 2)).div(&y2).unwrap();
        assert_eq!(format_expr(&r), "3*y/(2*y^2 - 4)");
        let q = (Expr::symbol("y") * Expr::symbol("y") - Expr::one()) * Expr::ratio(1, 4);
        assert_eq!(format_expr(&q), "(y^2 - 1)/4");
    }
}
