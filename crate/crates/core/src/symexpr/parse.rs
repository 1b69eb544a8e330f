//! Recursive-descent parser for the expression grammar
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | base ('^' integer)?
//! base   := rational | symbol | '(' expr ')'
//! ```
//!
//! Rational literals are integers, `a/b` (via the division rule) or finite
//! decimals, converted exactly. Positions in errors are 0-based character
//! offsets.

use num_bigint::BigInt;
use num_traits::{pow, Zero};

use super::expr::Expr;
use super::poly::Rational;
use super::symbol::SymbolTable;
use super::ExprError;

pub fn parse_expr(text: &str, table: &SymbolTable) -> Result<Expr, ExprError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        table,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.syntax("empty expression"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.syntax(&format!("unexpected '{}'", p.chars[p.pos])));
    }
    Ok(e)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    table: &'a SymbolTable,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn syntax(&self, msg: &str) -> ExprError {
        ExprError::Syntax {
            pos: self.pos,
            message: msg.to_string(),
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some('/') => {
                    let at = self.pos;
                    self.pos += 1;
                    let rhs = self.factor()?;
                    if rhs.is_zero() {
                        return Err(ExprError::DivisionByZero { pos: Some(at) });
                    }
                    acc = acc.div(&rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        self.skip_ws();
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(self.factor()?.neg());
        }
        let base = self.base()?;
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(base);
        }
        let caret = self.pos;
        self.pos += 1;
        let exp = self.integer_exponent(caret)?;
        if exp < 0 && base.is_zero() {
            return Err(ExprError::DivisionByZero { pos: Some(caret) });
        }
        base.pow(exp)
    }

    fn integer_exponent(&mut self, caret: usize) -> Result<i64, ExprError> {
        self.skip_ws();
        let start = self.pos;
        let mut negative = false;
        if self.peek() == Some('-') {
            negative = true;
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.chars[digits_start..self.pos].iter().collect();
        let trailing_fraction = self.peek() == Some('.');
        if digits.is_empty() || trailing_fraction {
            return Err(ExprError::NonIntegerExponent {
                pos: start.max(caret + 1),
            });
        }
        let v: i64 = digits.parse().map_err(|_| ExprError::ExponentTooLarge)?;
        Ok(if negative { -v } else { v })
    }

    fn base(&mut self) -> Result<Expr, ExprError> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.syntax("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.syntax("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(),
            Some(c) if c.is_alphabetic() || c == '_' => self.symbol(),
            Some(c) => Err(self.syntax(&format!("unexpected '{c}'"))),
        }
    }

    fn number(&mut self) -> Result<Expr, ExprError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let int_part: String = self.chars[start..self.pos].iter().collect();
        let mut frac_part = String::new();
        if self.peek() == Some('.') {
            self.pos += 1;
            let fs = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            frac_part = self.chars[fs..self.pos].iter().collect();
            if int_part.is_empty() && frac_part.is_empty() {
                self.pos = start;
                return Err(self.syntax("malformed number"));
            }
        }
        let digits = format!("{int_part}{frac_part}");
        let n: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| ExprError::Syntax {
                pos: start,
                message: "malformed number".into(),
            })?
        };
        let d = pow(BigInt::from(10), frac_part.len());
        Ok(Expr::from_rational(Rational::new(n, d)))
    }

    fn symbol(&mut self) -> Result<Expr, ExprError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        if !self.table.contains(&name) {
            return Err(ExprError::UnknownSymbol { name, pos: start });
        }
        Ok(Expr::symbol(&name))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::{Symbol, SymbolTable};

    fn table() -> SymbolTable {
        SymbolTable::from_symbols([
            Symbol::coordinate("x"),
            Symbol::coordinate("y"),
            Symbol::coordinate("z"),
            Symbol::parameter("p"),
        ])
        .unwrap()
    }

    #[test]
    fn metric_entry() {
        let e = parse_expr("(y^2-1)/4", &table()).unwrap();
        assert_eq!(e.to_string(), "(y^2 - 1)/4");
        assert!(e.denominator().is_one());
    }

    #[test]
    fn zero_and_cancellation() {
        assert!(parse_expr("0", &table()).unwrap().is_zero());
        assert!(parse_expr("x/x", &table()).unwrap().is_one());
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_expr("0.25", &table()).unwrap(), Expr::ratio(1, 4));
        assert_eq!(parse_expr("1.5*x", &table()).unwrap().to_string(), "3*x/2");
    }

    #[test]
    fn precedence() {
        let t = table();
        assert_eq!(
            parse_expr("-x^2", &t).unwrap(),
            parse_expr("-(x*x)", &t).unwrap()
        );
        assert_eq!(
            parse_expr("1/x*y", &t).unwrap(),
            parse_expr("y/x", &t).unwrap()
        );
        assert_eq!(
            parse_expr("x^-2", &t).unwrap(),
            parse_expr("1/(x*x)", &t).unwrap()
        );
        assert_eq!(parse_expr("2 - 3 - 4", &t).unwrap(), Expr::from_int(-5));
    }

    #[test]
    fn errors() {
        let t = table();
        assert!(matches!(
            parse_expr("x + ", &t),
            Err(ExprError::Syntax { pos: 4, .. })
        ));
        assert_eq!(
            parse_expr("x + w", &t),
            Err(ExprError::UnknownSymbol {
                name: "w".into(),
                pos: 4
            })
        );
        assert_eq!(
            parse_expr("x/0", &t),
            Err(ExprError::DivisionByZero { pos: Some(1) })
        );
        assert!(matches!(
            parse_expr("x^1.5", &t),
            Err(ExprError::NonIntegerExponent { .. })
        ));
        assert!(matches!(
            parse_expr("x^y", &t),
            Err(ExprError::NonIntegerExponent { .. })
        ));
        assert!(matches!(
            parse_expr("(x", &t),
            Err(ExprError::Syntax { .. })
        ));
    }
}
