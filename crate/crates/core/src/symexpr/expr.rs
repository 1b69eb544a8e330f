use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::gcd::gcd;
use super::poly::{Poly, Rational, Var};
use super::ExprError;

/// Exact rational function over ℚ in named symbols.
///
/// Always canonical: numerator and denominator are coprime, the denominator
/// has leading coefficient one under graded-lex order, and zero is `0/1`.
/// Structural equality is therefore mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Expr {
    num: Poly,
    den: Poly,
}

impl Default for Expr {
    fn default() -> Self {
        Self::zero()
    }
}

impl Expr {
    pub fn zero() -> Self {
        Expr {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Expr {
            num: Poly::from_int(n),
            den: Poly::one(),
        }
    }

    pub fn from_rational(q: Rational) -> Self {
        Expr {
            num: Poly::constant(q),
            den: Poly::one(),
        }
    }

    /// `n / d` as an exact constant. Panics when `d == 0`.
    pub fn ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator in Expr::ratio");
        Self::from_rational(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn symbol(name: &str) -> Self {
        Expr {
            num: Poly::var(name),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        Expr {
            num: p,
            den: Poly::one(),
        }
    }

    /// Builds `num/den` in canonical form.
    pub fn from_parts(num: Poly, den: Poly) -> Result<Self, ExprError> {
        if den.is_zero() {
            return Err(ExprError::DivisionByZero { pos: None });
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.as_constant() {
            return Expr {
                num: num.scale(&c.recip()),
                den: Poly::one(),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::normalize(num, den)
    }

    /// Reduces `num/den` given that every common factor divides `g`.
    fn reduce_by(num: Poly, den: Poly, g: &Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if g.is_constant() {
            return Self::normalize(num, den);
        }
        let c = gcd(&num, g);
        if c.is_constant() {
            return Self::normalize(num, den);
        }
        Self::normalize(
            num.div_exact(&c).expect("gcd divides numerator"),
            den.div_exact(&c).expect("gcd divides denominator"),
        )
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            Expr { num, den }
        } else {
            let inv = lc.recip();
            Expr {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// The constant value, if the expression involves no symbols.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn symbols(&self) -> BTreeSet<Var> {
        let mut s = self.num.variables();
        s.extend(self.den.variables());
        s
    }

    pub fn contains_symbol(&self, name: &str) -> bool {
        self.num.contains_var(name) || self.den.contains_var(name)
    }

    /// True when none of `names` occurs.
    pub fn free_of<'a, I: IntoIterator<Item = &'a str>>(&self, names: I) -> bool {
        names.into_iter().all(|n| !self.contains_symbol(n))
    }

    pub fn add(&self, other: &Expr) -> Expr {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::reduce(self.num.add(&other.num), self.den.clone());
        }
        if self.den.is_one() {
            return Self::normalize(self.num.mul(&other.den).add(&other.num), other.den.clone());
        }
        if other.den.is_one() {
            return Self::normalize(self.num.add(&other.num.mul(&self.den)), self.den.clone());
        }
        let g = gcd(&self.den, &other.den);
        let a_cof = other.den.div_exact(&g).expect("gcd divides");
        let b_cof = self.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&a_cof).add(&other.num.mul(&b_cof));
        let den = self.den.mul(&a_cof);
        // Both summands are reduced, so any common factor divides g.
        Self::reduce_by(num, den, &g)
    }

    pub fn neg(&self) -> Expr {
        Expr {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Expr) -> Expr {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Expr) -> Expr {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.as_rational() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_rational() {
            return self.scale(&c);
        }
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = other.den.div_exact(&g1).expect("gcd divides");
        let n2 = other.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        Self::normalize(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn scale(&self, c: &Rational) -> Expr {
        if c.is_zero() {
            return Self::zero();
        }
        Expr {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Expr {
        self.scale(&Rational::from_integer(BigInt::from(n)))
    }

    pub fn recip(&self) -> Result<Expr, ExprError> {
        if self.is_zero() {
            return Err(ExprError::DivisionByZero { pos: None });
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Expr) -> Result<Expr, ExprError> {
        if other.is_zero() {
            return Err(ExprError::DivisionByZero { pos: None });
        }
        if let Some(c) = other.as_rational() {
            return Ok(self.scale(&c.recip()));
        }
        Ok(self.mul(&other.recip()?))
    }

    pub fn pow(&self, exp: i64) -> Result<Expr, ExprError> {
        if exp < 0 {
            let base = self.recip()?;
            return base.pow(-exp);
        }
        let e = u32::try_from(exp).map_err(|_| ExprError::ExponentTooLarge)?;
        Ok(Expr {
            num: self.num.pow(e),
            den: self.den.pow(e),
        })
    }

    /// Partial derivative by the quotient rule.
    pub fn differentiate(&self, s: &str) -> Expr {
        let dn = self.num.derivative(s);
        if self.den.is_one() {
            return Expr {
                num: dn,
                den: Poly::one(),
            };
        }
        let dd = self.den.derivative(s);
        if dd.is_zero() {
            return Self::reduce(dn, self.den.clone());
        }
        // With g = gcd(d, d'), n'(d/g) - n(d'/g) can only share factors of g
        // with the denominator d(d/g).
        let g = gcd(&self.den, &dd);
        let d_g = self.den.div_exact(&g).expect("gcd divides");
        let dd_g = dd.div_exact(&g).expect("gcd divides");
        let num = dn.mul(&d_g).sub(&self.num.mul(&dd_g));
        Self::reduce_by(num, self.den.mul(&d_g), &g)
    }

    /// Exact value at a point. Every symbol must be assigned.
    pub fn evaluate_at(&self, point: &BTreeMap<String, Rational>) -> Result<Rational, ExprError> {
        let lookup = |v: &str| point.get(v).cloned();
        let missing = || {
            self.symbols()
                .into_iter()
                .find(|v| !point.contains_key(&**v))
                .map(|v| v.to_string())
                .unwrap_or_default()
        };
        let d = self
            .den
            .evaluate(lookup)
            .ok_or_else(|| ExprError::UnassignedSymbol(missing()))?;
        let n = self
            .num
            .evaluate(lookup)
            .ok_or_else(|| ExprError::UnassignedSymbol(missing()))?;
        if d.is_zero() {
            return Err(ExprError::Pole);
        }
        Ok(n / d)
    }

    /// Replaces symbols by expressions; symbols not in `map` stay.
    pub fn substitute(&self, map: &BTreeMap<String, Expr>) -> Result<Expr, ExprError> {
        let num = substitute_poly(&self.num, map);
        let den = substitute_poly(&self.den, map);
        num.div(&den)
    }

    /// True when the expression, viewed in `names`, has total degree at most
    /// one in them and a denominator free of them.
    pub fn is_affine_in(&self, names: &[&str]) -> bool {
        if names.iter().any(|n| self.den.contains_var(n)) {
            return false;
        }
        self.num
            .terms_desc()
            .all(|(m, _)| names.iter().map(|n| m.exponent(n)).sum::<u32>() <= 1)
    }

    pub(crate) fn complexity(&self) -> usize {
        self.num.num_terms() + self.den.num_terms()
    }
}

fn substitute_poly(p: &Poly, map: &BTreeMap<String, Expr>) -> Expr {
    let mut acc = Expr::zero();
    for (m, c) in p.terms_desc() {
        let mut t = Expr::from_rational(c.clone());
        for (v, e) in m.powers() {
            let base = map.get(&**v).cloned().unwrap_or_else(|| Expr::symbol(v));
            let pw = Expr {
                num: base.num.pow(*e),
                den: base.den.pow(*e),
            };
            t = t.mul(&pw);
        }
        acc = acc.add(&t);
    }
    acc
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({self})")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::format::format_expr(self))
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Self {
        Expr::from_int(n)
    }
}

impl From<Rational> for Expr {
    fn from(q: Rational) -> Self {
        Expr::from_rational(q)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                Expr::$m(self, rhs)
            }
        }
        impl $tr<Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                Expr::$m(&self, &rhs)
            }
        }
        impl $tr<&Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                Expr::$m(&self, rhs)
            }
        }
        impl $tr<Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                Expr::$m(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(&self)
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(self)
    }
}

impl std::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        iter.fold(Expr::zero(), |a, b| a.add(&b))
    }
}

/// Sign helper used by the formatter.
pub(crate) fn rational_is_negative(q: &Rational) -> bool {
    q.is_negative()
}
