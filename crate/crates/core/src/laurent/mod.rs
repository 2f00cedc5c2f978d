//! Sparse bivariate Laurent polynomials in `x^{1/l}` and `y`.
//!
//! Exponents of `x` are rationals whose denominators divide the ring
//! parameter `l`; exponents of `y` are nonnegative integers.

mod direction;

pub use direction::{Direction, ExponentPair};

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{rat, FieldElem, Repr, Tower};
use crate::Exp;

/// A sparse Laurent polynomial with coefficients in a tower field.
#[derive(Clone)]
pub struct LaurentPoly {
    l: i64,
    tower: Tower,
    terms: BTreeMap<ExponentPair, Repr>,
}

/// Leading form with respect to a direction and its two endpoints.
#[derive(Clone, Debug)]
pub struct LeadingForm {
    pub form: LaurentPoly,
    /// Support point with maximal `y`-exponent.
    pub en: ExponentPair,
    /// Support point with minimal `y`-exponent.
    pub st: ExponentPair,
}

fn lcm(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &LaurentPoly) -> bool {
        match self.tower.join(&other.tower) {
            Ok(t) => {
                self.terms.len() == other.terms.len()
                    && self.terms.iter().zip(&other.terms).all(|((e1, c1), (e2, c2))| {
                        e1 == e2 && t.lift_repr(c1.clone(), self.tower.depth()) == t.lift_repr(c2.clone(), other.tower.depth())
                    })
            }
            Err(_) => false,
        }
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly { l: 1, tower: Tower::rationals(), terms: BTreeMap::new() }
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::constant(FieldElem::one())
    }

    pub fn constant(c: FieldElem) -> LaurentPoly {
        LaurentPoly::monomial(c, Exp::zero(), 0).unwrap()
    }

    pub fn x() -> LaurentPoly {
        LaurentPoly::monomial(FieldElem::one(), Exp::one(), 0).unwrap()
    }

    pub fn y() -> LaurentPoly {
        LaurentPoly::monomial(FieldElem::one(), Exp::zero(), 1).unwrap()
    }

    /// `c·x^x_exp·y^y_exp`; errors on a negative `y`-exponent.
    pub fn monomial(c: FieldElem, x_exp: Exp, y_exp: i64) -> Result<LaurentPoly> {
        LaurentPoly::from_terms([(ExponentPair::new(x_exp, y_exp), c)])
    }

    /// Sums the given terms. The ring parameter is the lcm of the denominators.
    pub fn from_terms(terms: impl IntoIterator<Item = (ExponentPair, FieldElem)>) -> Result<LaurentPoly> {
        let terms: Vec<_> = terms.into_iter().collect();
        let mut tower = Tower::rationals();
        let mut l = 1;
        for (e, c) in &terms {
            if e.y < 0 {
                return Err(Error::Domain(format!("negative y-exponent {}", e.y)));
            }
            tower = tower.join(c.tower())?;
            l = lcm(l, *e.x.denom());
        }
        let mut out = LaurentPoly { l, tower: tower.clone(), terms: BTreeMap::new() };
        for (e, c) in terms {
            let r = c.lift(&tower)?.into_repr();
            out.add_term(e, r);
        }
        Ok(out)
    }

    fn add_term(&mut self, e: ExponentPair, r: Repr) {
        if r.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(c) => {
                let s = self.tower.add(c, &r);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *c = s;
                }
            }
            None => {
                self.terms.insert(e, r);
            }
        }
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    /// The same polynomial in the ring with parameter `lcm(l, new_l)`.
    pub fn rebased(&self, new_l: i64) -> LaurentPoly {
        let mut p = self.clone();
        p.l = lcm(self.l, new_l);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Terms in increasing `(x, y)` order.
    pub fn terms(&self) -> impl Iterator<Item = (ExponentPair, FieldElem)> + '_ {
        self.terms.iter().map(|(e, r)| (*e, FieldElem::from_repr(self.tower.clone(), r.clone())))
    }

    pub fn support(&self) -> Vec<ExponentPair> {
        self.terms.keys().copied().collect()
    }

    pub fn coeff(&self, e: &ExponentPair) -> FieldElem {
        let r = self.terms.get(e).cloned().unwrap_or_else(Repr::zero);
        FieldElem::from_repr(self.tower.clone(), r)
    }

    pub fn lift(&self, tower: &Tower) -> Result<LaurentPoly> {
        if !self.tower.is_prefix_of(tower) {
            return Err(Error::IncompatibleTowers);
        }
        let d = self.tower.depth();
        let terms = self.terms.iter().map(|(e, r)| (*e, tower.lift_repr(r.clone(), d))).collect();
        Ok(LaurentPoly { l: self.l, tower: tower.clone(), terms })
    }

    fn aligned(&self, o: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)> {
        let t = self.tower.join(&o.tower)?;
        Ok((self.lift(&t)?, o.lift(&t)?))
    }

    pub fn try_add(&self, o: &LaurentPoly) -> Result<LaurentPoly> {
        let (mut a, b) = self.aligned(o)?;
        a.l = lcm(a.l, b.l);
        for (e, r) in b.terms {
            a.add_term(e, r);
        }
        Ok(a)
    }

    pub fn try_sub(&self, o: &LaurentPoly) -> Result<LaurentPoly> {
        self.try_add(&o.neg())
    }

    pub fn try_mul(&self, o: &LaurentPoly) -> Result<LaurentPoly> {
        let (a, b) = self.aligned(o)?;
        let t = a.tower.clone();
        let mut out = LaurentPoly { l: lcm(a.l, b.l), tower: t.clone(), terms: BTreeMap::new() };
        for (e1, c1) in &a.terms {
            for (e2, c2) in &b.terms {
                let e = ExponentPair::new(e1.x + e2.x, e1.y + e2.y);
                out.add_term(e, t.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(e, r)| (*e, self.tower.neg(r))).collect();
        LaurentPoly { l: self.l, tower: self.tower.clone(), terms }
    }

    pub fn scale(&self, c: &FieldElem) -> Result<LaurentPoly> {
        self.try_mul(&LaurentPoly::constant(c.clone()))
    }

    /// Multiplies by `x^e`.
    pub fn shift_x(&self, e: Exp) -> LaurentPoly {
        let terms = self.terms.iter().map(|(p, r)| (ExponentPair::new(p.x + e, p.y), r.clone())).collect();
        LaurentPoly { l: lcm(self.l, *e.denom()), tower: self.tower.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one().lift(&self.tower).unwrap().rebased(self.l);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Largest `x`-exponent; `None` for the zero polynomial.
    pub fn deg_x(&self) -> Option<Exp> {
        self.terms.keys().map(|e| e.x).max()
    }

    pub fn min_x(&self) -> Option<Exp> {
        self.terms.keys().map(|e| e.x).min()
    }

    pub fn deg_y(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.y).max()
    }

    /// Smallest `y`-exponent.
    pub fn ord_y(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.y).min()
    }

    /// Whether all exponents are nonnegative integers.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.x.is_integer() && !e.x.is_negative())
    }

    /// `v_{ρ,σ}(P)`: the maximal weight over the support.
    pub fn valuation(&self, d: &Direction) -> Result<Exp> {
        self.terms.keys().map(|e| d.weight(e)).max().ok_or(Error::ZeroPolynomial)
    }

    /// `ℓ_{ρ,σ}(P)` together with `en` and `st`.
    pub fn leading_form(&self, d: &Direction) -> Result<LeadingForm> {
        let v = self.valuation(d)?;
        let terms: BTreeMap<_, _> =
            self.terms.iter().filter(|(e, _)| d.weight(e) == v).map(|(e, r)| (*e, r.clone())).collect();
        let en = *terms.keys().max_by_key(|e| e.y).unwrap();
        let st = *terms.keys().min_by_key(|e| e.y).unwrap();
        Ok(LeadingForm { form: LaurentPoly { l: self.l, tower: self.tower.clone(), terms }, en, st })
    }

    /// Outward normals of every edge of the Newton polygon, in angular order.
    pub fn edge_directions(&self) -> Vec<Direction> {
        let big_l = self.terms.keys().fold(1i64, |acc, e| lcm(acc, *e.x.denom())) as i128;
        let mut pts: Vec<(i128, i128)> = self
            .terms
            .keys()
            .map(|e| ((*e.x.numer() as i128) * (big_l / *e.x.denom() as i128), e.y as i128))
            .collect();
        pts.sort();
        pts.dedup();
        if pts.len() < 2 {
            return Vec::new();
        }
        let hull = convex_hull(&pts);
        let mut out = Vec::new();
        for k in 0..hull.len() {
            let (p, q) = (hull[k], hull[(k + 1) % hull.len()]);
            let (dx, dy) = (q.0 - p.0, q.1 - p.1);
            // weight ρ'X + σ'Y with X = L·x: (ρ, σ) = (ρ'·L, σ')
            let (rho, sigma) = (dy * big_l, -dx);
            let g = rho.gcd(&sigma);
            out.push(Direction::new((rho / g) as i64, (sigma / g) as i64).unwrap());
        }
        out.sort();
        out.dedup();
        out
    }

    /// Edge directions with `ρ > 0`, in angular order.
    pub fn dir_set(&self) -> Vec<Direction> {
        self.edge_directions().into_iter().filter(|d| d.rho() > 0).collect()
    }

    /// Nearest elements of [`dir_set`](Self::dir_set) strictly above and below `d`.
    pub fn succ_pred(&self, d: &Direction) -> (Option<Direction>, Option<Direction>) {
        let dirs = self.dir_set();
        let succ = dirs.iter().find(|e| *e > d).copied();
        let pred = dirs.iter().rev().find(|e| *e < d).copied();
        (succ, pred)
    }

    /// Coefficients of the powers of `y`, as polynomials in `x`, indexed by exponent.
    pub fn y_coeffs(&self) -> Vec<LaurentPoly> {
        let n = self.deg_y().unwrap_or(-1);
        let mut out: Vec<LaurentPoly> =
            (0..=n).map(|_| LaurentPoly { l: self.l, tower: self.tower.clone(), terms: BTreeMap::new() }).collect();
        for (e, r) in &self.terms {
            out[e.y as usize].terms.insert(ExponentPair::new(e.x, 0), r.clone());
        }
        out
    }

    /// Substitutes `y ↦ y + Σ a_k x^{e_k}`.
    pub fn apply_shift(&self, shift: &[(Exp, FieldElem)]) -> Result<LaurentPoly> {
        if shift.is_empty() || self.is_zero() {
            return Ok(self.clone());
        }
        let mut s = LaurentPoly::y();
        for (e, a) in shift {
            s = s.try_add(&LaurentPoly::monomial(a.clone(), *e, 0)?)?;
        }
        let coeffs = self.y_coeffs();
        let mut acc = LaurentPoly::zero();
        for c in coeffs.iter().rev() {
            acc = acc.try_mul(&s)?.try_add(c)?;
        }
        acc.l = lcm(acc.l, self.l);
        Ok(acc)
    }

    /// The substitution `x ↦ x + y`; needs nonnegative integer `x`-exponents.
    pub fn psi(&self) -> Result<LaurentPoly> {
        if !self.is_polynomial() {
            return Err(Error::Domain("x ↦ x + y needs nonnegative integer x-exponents".into()));
        }
        let xy = LaurentPoly::x() + LaurentPoly::y();
        let mut acc = LaurentPoly::zero().lift(&self.tower)?;
        for (e, c) in self.terms() {
            let u = e.x.to_integer() as u32;
            let m = xy.pow(u).try_mul(&LaurentPoly::monomial(c, Exp::zero(), e.y)?)?;
            acc = acc.try_add(&m)?;
        }
        Ok(acc)
    }

    pub fn partial_x(&self) -> LaurentPoly {
        let mut out = LaurentPoly { l: self.l, tower: self.tower.clone(), terms: BTreeMap::new() };
        for (e, r) in &self.terms {
            if e.x.is_zero() {
                continue;
            }
            let c = r.clone();
            let f = Repr::Rat(num_rational::BigRational::new((*e.x.numer()).into(), (*e.x.denom()).into()));
            out.add_term(ExponentPair::new(e.x - Exp::one(), e.y), self.tower.mul(&c, &f));
        }
        out
    }

    pub fn partial_y(&self) -> LaurentPoly {
        let mut out = LaurentPoly { l: self.l, tower: self.tower.clone(), terms: BTreeMap::new() };
        for (e, r) in &self.terms {
            if e.y == 0 {
                continue;
            }
            out.add_term(ExponentPair::new(e.x, e.y - 1), self.tower.mul(r, &Repr::Rat(rat(e.y))));
        }
        out
    }

    pub fn partials(&self) -> (LaurentPoly, LaurentPoly) {
        (self.partial_x(), self.partial_y())
    }

    /// `[P, Q] = P_x Q_y − Q_x P_y`.
    pub fn bracket(&self, q: &LaurentPoly) -> Result<LaurentPoly> {
        let a = self.partial_x().try_mul(&q.partial_y())?;
        let b = q.partial_x().try_mul(&self.partial_y())?;
        a.try_sub(&b)
    }

    /// JSON list of `[x_exp, y_exp, coeff]` in increasing `(x, y)` order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms()
                .map(|(e, c)| Value::Array(vec![Value::String(e.x.to_string()), Value::from(e.y), c.to_json()]))
                .collect(),
        )
    }
}

/// Vertices of the convex hull in counterclockwise order (collinear points dropped).
fn convex_hull(pts: &[(i128, i128)]) -> Vec<(i128, i128)> {
    fn cross(o: (i128, i128), a: (i128, i128), b: (i128, i128)) -> i128 {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    }
    let mut lower: Vec<(i128, i128)> = Vec::new();
    for &p in pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i128, i128)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<_> = self.terms().collect();
        ordered.sort_by(|(a, _), (b, _)| b.y.cmp(&a.y).then(b.x.cmp(&a.x)));
        for (k, (e, c)) in ordered.iter().enumerate() {
            let mut mono = Vec::new();
            if !e.x.is_zero() {
                mono.push(if e.x.is_one() {
                    "x".to_string()
                } else if e.x.is_integer() {
                    format!("x^{}", e.x)
                } else {
                    format!("x^({})", e.x)
                });
            }
            if e.y != 0 {
                mono.push(if e.y == 1 { "y".to_string() } else { format!("y^{}", e.y) });
            }
            let mono = mono.join("*");
            let (neg, body) = match c.to_rational() {
                Some(r) if r.is_negative() => (true, (-r).to_string()),
                Some(r) => (false, r.to_string()),
                None if c.is_compound() => (false, format!("({c})")),
                None => (false, c.to_string()),
            };
            let term = if mono.is_empty() {
                body
            } else if body == "1" {
                mono
            } else {
                format!("{body}*{mono}")
            };
            match (k == 0, neg) {
                (true, true) => write!(f, "-{term}")?,
                (true, false) => write!(f, "{term}")?,
                (false, true) => write!(f, " - {term}")?,
                (false, false) => write!(f, " + {term}")?,
            }
        }
        Ok(())
    }
}

macro_rules! forward_poly_op {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            /// Panics when the operands live in incompatible towers.
            fn $m(self, o: &LaurentPoly) -> LaurentPoly {
                self.$f(o).expect("operands in incompatible towers")
            }
        }
        impl std::ops::$tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: LaurentPoly) -> LaurentPoly {
                (&self).$m(&o)
            }
        }
    };
}

forward_poly_op!(Add, add, try_add);
forward_poly_op!(Sub, sub, try_sub);
forward_poly_op!(Mul, mul, try_mul);

impl std::ops::Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::neg(&self)
    }
}

#[cfg(test)]
mod tests;
