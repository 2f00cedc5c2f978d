//! Text syntax for polynomials.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := ('+' | '-')? factor ('*' factor)*
//! factor   := base ('^' exponent)?
//! base     := 'x' | 'y' | 'i' | 'g'<k> | rational | '(' expr ')'
//! exponent := integer | '(' integer ('/' positive-integer)? ')'
//! ```
//!
//! Whitespace is ignored. `x` may carry fractional or negative exponents,
//! `y` only nonnegative integers. `g<k>` names the generator of level `k` of
//! a user supplied tower.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldElem, Tower, UniPoly, Var};
use crate::laurent::LaurentPoly;
use crate::Exp;

/// Coefficient field used while parsing.
#[derive(Clone, Debug, Default)]
pub enum FieldSpec {
    /// ℚ, adjoining i on first use.
    #[default]
    Auto,
    /// ℚ only; `i` is rejected.
    Rationals,
    /// Everything is lifted to ℚ(i).
    Gaussian,
    /// A user supplied tower.
    Tower(Tower),
}

impl FieldSpec {
    fn base_tower(&self) -> Tower {
        match self {
            FieldSpec::Auto | FieldSpec::Rationals => Tower::rationals(),
            FieldSpec::Gaussian => Tower::gaussian(),
            FieldSpec::Tower(t) => t.clone(),
        }
    }
}

/// Parses a polynomial over the default field.
pub fn parse_poly(text: &str) -> Result<LaurentPoly> {
    parse_poly_in(text, &FieldSpec::Auto)
}

/// Parses a polynomial over the given field.
pub fn parse_poly_in(text: &str, field: &FieldSpec) -> Result<LaurentPoly> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, field, yname: b'y' };
    let out = p.parse_all()?;
    out.lift(&out.tower().join(&field.base_tower()).map_err(|_| p.err("coefficient outside the selected field"))?)
}

/// Parses a tower description: one monic irreducible polynomial in `z` per
/// line, whose coefficients may use the generators of earlier lines.
pub fn parse_tower(text: &str) -> Result<Tower> {
    let mut tower = Tower::rationals();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let field = FieldSpec::Tower(tower.clone());
        let mut p = Parser { src: line.as_bytes(), pos: 0, field: &field, yname: b'z' };
        let poly = p.parse_all().map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse { pos, msg: format!("line {}: {msg}", lineno + 1) },
            other => other,
        })?;
        if poly.terms().any(|(e, _)| !e.x.is_zero()) {
            return Err(Error::Parse { pos: 0, msg: format!("line {}: x in a minimal polynomial", lineno + 1) });
        }
        let poly = poly.lift(&poly.tower().join(&tower)?)?;
        let n = poly.deg_y().unwrap_or(0) as usize;
        let coeffs: Vec<FieldElem> =
            (0..=n).map(|k| poly.coeff(&crate::laurent::ExponentPair::int(0, k as i64))).collect();
        let m = UniPoly::new(&coeffs, Var::Z)?;
        tower = tower.extend(&m)?;
    }
    Ok(tower)
}

/// Prints a polynomial in the syntax accepted by [`parse_poly`].
pub fn print_poly(p: &LaurentPoly) -> String {
    p.to_string()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a FieldSpec,
    yname: u8,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_all(&mut self) -> Result<LaurentPoly> {
        let e = self.expr()?;
        if self.peek().is_some() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                let t = self.term()?;
                acc = acc.try_add(&t)?;
            } else if self.eat(b'-') {
                let t = self.term()?;
                acc = acc.try_sub(&t)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = acc.try_mul(&f)?;
        }
        Ok(if neg { acc.neg() } else { acc })
    }

    fn factor(&mut self) -> Result<LaurentPoly> {
        let start = self.pos;
        let (base, kind) = self.base()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let epos = self.pos;
        let e = self.exponent()?;
        match kind {
            BaseKind::X => Ok(LaurentPoly::monomial(FieldElem::one(), e, 0)?),
            BaseKind::Y => {
                if !e.is_integer() {
                    Err(Error::Parse { pos: epos, msg: "fractional y-exponent".into() })
                } else if e.is_negative() {
                    Err(Error::Parse { pos: epos, msg: "negative y-exponent".into() })
                } else {
                    Ok(LaurentPoly::y().pow(e.to_integer() as u32))
                }
            }
            BaseKind::Other => {
                if !e.is_integer() {
                    return Err(Error::Parse { pos: epos, msg: "fractional exponent on a compound base".into() });
                }
                let n = e.to_integer();
                if n >= 0 {
                    return Ok(base.pow(n as u32));
                }
                if base.is_monomial() {
                    let (pt, c) = base.terms().next().unwrap();
                    if pt.y == 0 {
                        let inv = c.pow(n).map_err(|_| Error::Parse { pos: start, msg: "division by zero".into() })?;
                        return Ok(LaurentPoly::monomial(inv, pt.x * n, 0)?);
                    }
                }
                Err(Error::Parse { pos: epos, msg: "negative exponent on a non-invertible base".into() })
            }
        }
    }

    fn base(&mut self) -> Result<(LaurentPoly, BaseKind)> {
        let c = self.peek().ok_or_else(|| self.err("unexpected end of input"))?;
        if c == b'(' {
            self.pos += 1;
            let e = self.expr()?;
            if !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            return Ok((e, BaseKind::Other));
        }
        if c == b'x' {
            self.pos += 1;
            return Ok((LaurentPoly::x(), BaseKind::X));
        }
        if c == self.yname {
            self.pos += 1;
            return Ok((LaurentPoly::y(), BaseKind::Y));
        }
        if c == b'i' {
            let at = self.pos;
            self.pos += 1;
            let i = self.imaginary_unit().ok_or(Error::Parse { pos: at, msg: "i is not in the selected field".into() })?;
            return Ok((LaurentPoly::constant(i), BaseKind::Other));
        }
        if c == b'g' {
            let at = self.pos;
            self.pos += 1;
            let k = self.digits().ok_or(Error::Parse { pos: at, msg: "expected generator index".into() })?;
            let k: usize = k.to_string().parse().map_err(|_| Error::Parse { pos: at, msg: "bad generator index".into() })?;
            let tower = self.field.base_tower();
            let g = FieldElem::generator_at(&tower, k)
                .ok_or(Error::Parse { pos: at, msg: format!("unknown generator g{k}") })?;
            return Ok((LaurentPoly::constant(g), BaseKind::Other));
        }
        if c.is_ascii_digit() {
            let r = self.rational()?;
            return Ok((LaurentPoly::constant(FieldElem::from_rational(r)), BaseKind::Other));
        }
        Err(self.err(&format!("unexpected character '{}'", c as char)))
    }

    fn imaginary_unit(&self) -> Option<FieldElem> {
        match self.field {
            FieldSpec::Rationals => None,
            FieldSpec::Auto | FieldSpec::Gaussian => Some(FieldElem::i()),
            FieldSpec::Tower(t) => {
                let g1 = t.truncated(1);
                if t.depth() >= 1 && g1.same(&Tower::gaussian()) {
                    FieldElem::generator_at(t, 1)
                } else {
                    None
                }
            }
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn rational(&mut self) -> Result<BigRational> {
        let n = self.digits().ok_or_else(|| self.err("expected a number"))?;
        let save = self.pos;
        if self.eat(b'/') {
            if let Some(d) = self.digits() {
                if d.is_zero() {
                    return Err(self.err("zero denominator"));
                }
                return Ok(BigRational::new(n, d));
            }
            self.pos = save;
            return Err(self.err("expected a denominator"));
        }
        Ok(BigRational::from_integer(n))
    }

    fn small_int(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let d = self.digits().ok_or_else(|| self.err("expected an integer"))?;
        let v: i64 = d.to_string().parse().map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn exponent(&mut self) -> Result<Exp> {
        if self.eat(b'(') {
            let n = self.small_int()?;
            let mut d = 1;
            if self.eat(b'/') {
                let at = self.pos;
                d = self.small_int()?;
                if d <= 0 {
                    return Err(Error::Parse { pos: at, msg: "denominator must be positive".into() });
                }
            }
            if !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            Ok(Exp::new(n, d))
        } else {
            Ok(Exp::from_integer(self.small_int()?))
        }
    }
}

#[derive(Clone, Copy)]
enum BaseKind {
    X,
    Y,
    Other,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::ExponentPair;

    #[test]
    fn basic_parse() {
        let p = parse_poly("y^2 - x^3").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.coeff(&ExponentPair::int(3, 0)), FieldElem::from_int(-1));
        assert_eq!(print_poly(&p), "y^2 - x^3");
    }

    #[test]
    fn fractional_x_exponent_sets_l() {
        let p = parse_poly("x^(3/2)*y + 1").unwrap();
        assert_eq!(p.l(), 2);
        assert_eq!(p.coeff(&ExponentPair::new(Exp::new(3, 2), 1)), FieldElem::one());
    }

    #[test]
    fn fractional_y_exponent_is_rejected() {
        match parse_poly("y^(1/2)") {
            Err(Error::Parse { msg, .. }) => assert_eq!(msg, "fractional y-exponent"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_error_has_position() {
        match parse_poly("x + * y") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn gaussian_coefficients() {
        let p = parse_poly("(1 + 2*i)*x*y - i").unwrap();
        assert_eq!(p.tower().depth(), 1);
        let q = parse_poly(&print_poly(&p)).unwrap();
        assert_eq!(p, q);
        assert!(parse_poly_in("i*x", &FieldSpec::Rationals).is_err());
    }

    #[test]
    fn tower_file() {
        let t = parse_tower("z^2 + 1\nz^2 - i\n").unwrap();
        assert_eq!(t.depth(), 2);
        let p = parse_poly_in("g2^2*x - i*x", &FieldSpec::Tower(t)).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn negative_and_rational_powers() {
        let p = parse_poly("x^-2 + (2/3)^2 + x^(-1/3)").unwrap();
        assert_eq!(p.coeff(&ExponentPair::int(0, 0)), FieldElem::from_ratio(4, 9));
        assert_eq!(p.l(), 3);
        let q = parse_poly("(2*x)^-1").unwrap();
        assert_eq!(q.coeff(&ExponentPair::int(-1, 0)), FieldElem::from_ratio(1, 2));
    }
}
