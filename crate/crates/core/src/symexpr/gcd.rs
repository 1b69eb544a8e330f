//! Multivariate polynomial GCD over ℚ by recursive primitive remainder
//! sequences. Polynomials here are tiny (a handful of variables, low degree),
//! so the classical algorithm is plenty.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::poly::{Poly, Rational, Var};

/// Monic greatest common divisor. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.monic();
    }
    if let Some(g) = heuristic_gcd(a, b) {
        return g;
    }
    // Cheap exit when one divides the other.
    if a.num_terms() <= b.num_terms() {
        if b.div_exact(a).is_some() {
            return a.monic();
        }
    } else if a.div_exact(b).is_some() {
        return b.monic();
    }

    let vars_a = a.variables();
    let vars_b = b.variables();
    if let Some(v) = vars_a.symmetric_difference(&vars_b).next().cloned() {
        return if vars_a.contains(&v) {
            gcd_with_coefficients(a, b, &v)
        } else {
            gcd_with_coefficients(b, a, &v)
        };
    }
    // Main variable of least degree keeps the remainder sequence short.
    let Some(v) = vars_a
        .iter()
        .min_by_key(|v| a.degree_in(v).max(b.degree_in(v)))
        .cloned()
    else {
        return Poly::one();
    };

    let cont_a = content(a, &v);
    let cont_b = content(b, &v);
    let pa = integer_primitive(&a.div_exact(&cont_a).expect("content divides"));
    let pb = integer_primitive(&b.div_exact(&cont_b).expect("content divides"));
    let c = gcd(&cont_a, &cont_b);
    let g = primitive_prs_gcd(pa, pb, &v);
    c.mul(&g).monic()
}

/// Heuristic gcd (Char, Geddes and Gonnet): evaluate one variable at a large
/// integer ξ, take the gcd of the images recursively, rebuild a candidate
/// from its ξ-adic digits and accept it if it divides both inputs. With
/// ξ ≥ 2·min(|a|∞, |b|∞) + 2 an accepted candidate is the gcd. `None` means
/// every attempt failed and the caller should fall back to remainder
/// sequences.
fn heuristic_gcd(a: &Poly, b: &Poly) -> Option<Poly> {
    let a = integer_primitive(a);
    let b = integer_primitive(b);
    heu(&a, &b).map(|g| g.monic())
}

const HEU_ATTEMPTS: usize = 6;

// Inputs have coprime integer coefficients; the result is primitive too.
fn heu(a: &Poly, b: &Poly) -> Option<Poly> {
    let mut vars = a.variables();
    vars.extend(b.variables());
    let Some(v) = vars.into_iter().next() else {
        let (x, y) = (a.as_constant()?, b.as_constant()?);
        return Some(Poly::constant(Rational::from_integer(
            x.to_integer().gcd(&y.to_integer()),
        )));
    };
    let norm = a.max_norm().min(b.max_norm()).to_integer();
    let mut xi: BigInt = norm * 2 + 29;
    for _ in 0..HEU_ATTEMPTS {
        let at = Rational::from_integer(xi.clone());
        let (ea, eb) = (eval_at(a, &v, &at), eval_at(b, &v, &at));
        if !ea.is_zero() && !eb.is_zero() {
            if let Some(h) = heu_image(&ea, &eb) {
                let cand = integer_primitive(&interpolate(&h, &v, &xi));
                if !cand.is_zero() && a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
                    return Some(cand);
                }
            }
        }
        let root = xi.sqrt().sqrt();
        xi = &xi * BigInt::from(73794) * root / BigInt::from(27011);
    }
    None
}

// gcd of two integer polynomials whose content need not be one; the
// integer content is kept so the image gcd is exact.
fn heu_image(a: &Poly, b: &Poly) -> Option<Poly> {
    let (pa, pb) = (integer_primitive(a), integer_primitive(b));
    let ca = content_integer(a, &pa);
    let cb = content_integer(b, &pb);
    let c = Rational::from_integer(ca.to_integer().gcd(&cb.to_integer()));
    heu(&pa, &pb).map(|g| g.scale(&c))
}

// The positive integer k with p = k · primitive.
fn content_integer(p: &Poly, primitive: &Poly) -> Rational {
    (p.leading_coeff() / primitive.leading_coeff()).abs()
}

fn eval_at(p: &Poly, v: &Var, x: &Rational) -> Poly {
    let mut acc = Poly::zero();
    for c in p.coefficients_in(v).iter().rev() {
        acc = acc.scale(x).add(c);
    }
    acc
}

// Σ_k d_k v^k where the d_k are the symmetric base-ξ digits of h.
fn interpolate(h: &Poly, v: &Var, xi: &BigInt) -> Poly {
    let half = xi / BigInt::from(2);
    let mut digits = Vec::new();
    let mut rest = h.clone();
    while !rest.is_zero() {
        let d = rest.map_coefficients(|c| {
            let mut r = c.to_integer().mod_floor(xi);
            if r > half {
                r -= xi;
            }
            Rational::from_integer(r)
        });
        rest = rest
            .sub(&d)
            .scale(&Rational::new(BigInt::from(1), xi.clone()));
        digits.push(d);
    }
    Poly::from_coefficients(v, &digits)
}

/// gcd(a, b) where `b` is free of `v`: b must divide every coefficient of `a`.
fn gcd_with_coefficients(a: &Poly, b: &Poly, v: &Var) -> Poly {
    let mut g = b.clone();
    for c in a.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            return Poly::one();
        }
    }
    g.monic()
}

/// gcd of the coefficients of `p` viewed in `v`.
pub fn content(p: &Poly, v: &Var) -> Poly {
    let mut g = Poly::zero();
    for c in p.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            return Poly::one();
        }
    }
    if g.is_zero() {
        Poly::one()
    } else {
        g
    }
}

fn primitive_part(p: &Poly, v: &Var) -> Poly {
    let c = content(p, v);
    integer_primitive(&p.div_exact(&c).expect("content divides"))
}

/// `p` scaled to coprime integer coefficients. Without this the rational
/// coefficients of a remainder sequence grow without bound.
fn integer_primitive(p: &Poly) -> Poly {
    let lcm = p.coefficient_denominator_lcm();
    let num_gcd = p
        .terms_desc()
        .map(|(_, c)| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .fold(BigInt::zero(), |g, n| g.gcd(&n));
    if num_gcd.is_zero() {
        return p.clone();
    }
    p.scale(&BigRational::new(lcm, num_gcd))
}

/// Both inputs primitive in `v` and of positive degree in it.
fn primitive_prs_gcd(a: Poly, b: Poly, v: &Var) -> Poly {
    let (mut r0, mut r1) = if a.degree_in(v) >= b.degree_in(v) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        let r = pseudo_remainder(&r0, &r1, v);
        if r.is_zero() {
            return primitive_part(&r1, v).monic();
        }
        if r.degree_in(v) == 0 {
            return Poly::one();
        }
        r0 = r1;
        r1 = primitive_part(&r, v);
    }
}

/// Sparse pseudo-remainder of `a` by `b` in the variable `v`.
pub fn pseudo_remainder(a: &Poly, b: &Poly, v: &Var) -> Poly {
    let db = b.degree_in(v);
    let b_coeffs = b.coefficients_in(v);
    let lb = b_coeffs[db as usize].clone();
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.degree_in(v);
        if dr < db {
            break;
        }
        let lr = r.coefficients_in(v)[dr as usize].clone();
        let shift = Poly::from_coefficients(v, &{
            let mut c = vec![Poly::zero(); (dr - db) as usize + 1];
            c[(dr - db) as usize] = lr;
            c
        });
        r = lb.mul(&r).sub(&shift.mul(b));
    }
    r
}
