//! Exact coefficient arithmetic over ℚ and towers of simple algebraic extensions.
//!
//! A [`Tower`] is a chain ℚ ⊂ K₁ ⊂ … ⊂ K_d where each K_{k} = K_{k-1}[θ_k]/(m_k).
//! Elements are stored as nested coefficient vectors in the power basis of each
//! level. Extensions are never merged into a primitive element.

mod dense;
mod factor;
mod poly;

pub use poly::{Factorization, RootFamily, UniPoly, Var};

use std::borrow::Cow;
use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Arbitrary precision rational number.
pub type Rational = BigRational;

/// Default limit on the number of stacked extensions.
pub const DEFAULT_MAX_TOWER_DEPTH: usize = 8;

/// Tower depth limit, overridable through `JACPAIR_MAX_TOWER`.
pub fn max_tower_depth() -> usize {
    static LIMIT: OnceLock<usize> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var("JACPAIR_MAX_TOWER")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_TOWER_DEPTH)
    })
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Internal representation of an element relative to a tower level.
///
/// `Rat` is a constant valid at every level. `Ext(v)` holds the coefficients of
/// the power basis of the top level; entries live one level down. Canonical
/// vectors are trimmed and a length-one vector holding a `Rat` collapses.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Repr {
    Rat(BigRational),
    Ext(Vec<Repr>),
}

impl Repr {
    pub(crate) fn zero() -> Repr {
        Repr::Rat(BigRational::zero())
    }

    pub(crate) fn one() -> Repr {
        Repr::Rat(BigRational::one())
    }

    pub(crate) fn is_zero(&self) -> bool {
        matches!(self, Repr::Rat(r) if r.is_zero())
    }

    pub(crate) fn is_one(&self) -> bool {
        matches!(self, Repr::Rat(r) if r.is_one())
    }

    fn normalize(mut v: Vec<Repr>) -> Repr {
        while v.last().is_some_and(Repr::is_zero) {
            v.pop();
        }
        match v.len() {
            0 => Repr::zero(),
            1 if matches!(v[0], Repr::Rat(_)) => v.pop().unwrap(),
            _ => Repr::Ext(v),
        }
    }

    fn as_slice(&self) -> Cow<'_, [Repr]> {
        match self {
            Repr::Rat(_) => Cow::Owned(vec![self.clone()]),
            Repr::Ext(v) => Cow::Borrowed(v),
        }
    }

    fn scale_rat(&self, c: &BigRational) -> Repr {
        match self {
            Repr::Rat(r) => Repr::Rat(r * c),
            Repr::Ext(v) => Repr::Ext(v.iter().map(|e| e.scale_rat(c)).collect()),
        }
    }

    /// Total order used only to sort factor lists deterministically.
    pub(crate) fn canonical_cmp(&self, other: &Repr) -> Ordering {
        match (self, other) {
            (Repr::Rat(a), Repr::Rat(b)) => a.cmp(b),
            (Repr::Rat(_), Repr::Ext(_)) => Ordering::Less,
            (Repr::Ext(_), Repr::Rat(_)) => Ordering::Greater,
            (Repr::Ext(a), Repr::Ext(b)) => a.len().cmp(&b.len()).then_with(|| {
                a.iter()
                    .zip(b)
                    .map(|(x, y)| x.canonical_cmp(y))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            }),
        }
    }
}

pub(crate) struct Level {
    parent: Tower,
    minpoly: Vec<Repr>,
    depth: usize,
    name: String,
}

/// A tower of simple algebraic extensions of ℚ. Cheap to clone.
#[derive(Clone, Default)]
pub struct Tower(Option<Arc<Level>>);

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tower[")?;
        for (k, lv) in self.levels().iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}: {}", lv.name, lv.parent.poly_string(&lv.minpoly, "z"))?;
        }
        write!(f, "]")
    }
}

impl Tower {
    /// The rational field.
    pub fn rationals() -> Tower {
        Tower(None)
    }

    /// ℚ(i) with i² = −1.
    pub fn gaussian() -> Tower {
        static GAUSS: OnceLock<Tower> = OnceLock::new();
        GAUSS
            .get_or_init(|| Tower::rationals().extend_unchecked(vec![Repr::one(), Repr::zero(), Repr::one()]))
            .clone()
    }

    pub fn depth(&self) -> usize {
        self.0.as_ref().map_or(0, |l| l.depth)
    }

    /// Degree of the top level over its parent.
    pub fn degree(&self) -> usize {
        self.0.as_ref().map_or(1, |l| l.minpoly.len() - 1)
    }

    /// Degree over ℚ.
    pub fn absolute_degree(&self) -> usize {
        self.levels().iter().map(|l| l.minpoly.len() - 1).product()
    }

    pub fn parent(&self) -> Option<Tower> {
        self.0.as_ref().map(|l| l.parent.clone())
    }

    /// Name of the top generator (`i` for ℚ(i), otherwise `g<depth>`).
    pub fn name(&self) -> Option<&str> {
        self.0.as_ref().map(|l| l.name.as_str())
    }

    /// Generator names from the bottom level up.
    pub fn generator_names(&self) -> Vec<String> {
        self.levels().iter().map(|l| l.name.clone()).collect()
    }

    /// Minimal polynomial of the top generator over the parent level.
    pub fn minpoly(&self) -> Option<UniPoly> {
        self.0
            .as_ref()
            .map(|l| UniPoly::from_reprs(l.parent.clone(), l.minpoly.clone(), Var::Z))
    }

    /// Prefix of this tower with the given depth.
    pub fn truncated(&self, depth: usize) -> Tower {
        let mut t = self.clone();
        while t.depth() > depth {
            t = t.parent().unwrap();
        }
        t
    }

    fn levels(&self) -> Vec<Arc<Level>> {
        let mut out = Vec::new();
        let mut t = self.clone();
        while let Some(l) = t.0.clone() {
            t = l.parent.clone();
            out.push(l);
        }
        out.reverse();
        out
    }

    fn level(&self) -> &Level {
        self.0.as_deref().expect("extension element over the rational level")
    }

    /// Adjoins a root of `minpoly`, which must be irreducible over this tower.
    pub fn extend(&self, minpoly: &UniPoly) -> Result<Tower> {
        let p = minpoly.lift(self)?;
        let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
        if deg < 2 {
            return Err(Error::NotIrreducible);
        }
        let monic = p.monic();
        if !monic.is_squarefree() || factor::factor_squarefree(self, monic.reprs())?.len() != 1 {
            return Err(Error::NotIrreducible);
        }
        if self.depth() >= max_tower_depth() {
            return Err(Error::ExtensionOverflow { limit: max_tower_depth() });
        }
        Ok(self.extend_unchecked(monic.reprs().to_vec()))
    }

    pub(crate) fn extend_unchecked(&self, minpoly: Vec<Repr>) -> Tower {
        let depth = self.depth() + 1;
        let is_i = depth == 1 && minpoly == vec![Repr::one(), Repr::zero(), Repr::one()];
        let name = if is_i { "i".to_string() } else { format!("g{depth}") };
        Tower(Some(Arc::new(Level { parent: self.clone(), minpoly, depth, name })))
    }

    /// Structural equality of towers (names are ignored).
    pub fn same(&self, other: &Tower) -> bool {
        match (&self.0, &other.0) {
            (None, None) => true,
            (Some(a), Some(b)) => {
                Arc::ptr_eq(a, b) || (a.depth == b.depth && a.minpoly == b.minpoly && a.parent.same(&b.parent))
            }
            _ => false,
        }
    }

    /// Whether `self` is an initial segment of `other`.
    pub fn is_prefix_of(&self, other: &Tower) -> bool {
        self.depth() <= other.depth() && self.same(&other.truncated(self.depth()))
    }

    /// The smaller tower containing both, if one extends the other.
    pub fn join(&self, other: &Tower) -> Result<Tower> {
        if self.is_prefix_of(other) {
            Ok(other.clone())
        } else if other.is_prefix_of(self) {
            Ok(self.clone())
        } else {
            Err(Error::IncompatibleTowers)
        }
    }

    /// Re-expresses an element of a prefix tower of depth `from` in this tower.
    pub(crate) fn lift_repr(&self, r: Repr, from: usize) -> Repr {
        match r {
            Repr::Rat(_) => r,
            ext => {
                let mut out = ext;
                for _ in from..self.depth() {
                    out = Repr::Ext(vec![out]);
                }
                out
            }
        }
    }

    pub(crate) fn add(&self, a: &Repr, b: &Repr) -> Repr {
        match (a, b) {
            (Repr::Rat(x), Repr::Rat(y)) => Repr::Rat(x + y),
            _ => {
                let p = &self.level().parent;
                let (u, v) = (a.as_slice(), b.as_slice());
                let n = u.len().max(v.len());
                let z = Repr::zero();
                let out = (0..n).map(|i| p.add(u.get(i).unwrap_or(&z), v.get(i).unwrap_or(&z))).collect();
                Repr::normalize(out)
            }
        }
    }

    pub(crate) fn neg(&self, a: &Repr) -> Repr {
        a.scale_rat(&rat(-1))
    }

    pub(crate) fn sub(&self, a: &Repr, b: &Repr) -> Repr {
        self.add(a, &self.neg(b))
    }

    pub(crate) fn mul(&self, a: &Repr, b: &Repr) -> Repr {
        match (a, b) {
            (Repr::Rat(x), Repr::Rat(y)) => Repr::Rat(x * y),
            (Repr::Rat(x), e) | (e, Repr::Rat(x)) => {
                if x.is_zero() {
                    Repr::zero()
                } else {
                    e.scale_rat(x)
                }
            }
            (Repr::Ext(u), Repr::Ext(v)) => {
                let lv = self.level();
                let p = &lv.parent;
                let mut prod = dense::mul(p, u, v);
                let d = lv.minpoly.len() - 1;
                for i in (d..prod.len()).rev() {
                    if prod[i].is_zero() {
                        continue;
                    }
                    let c = std::mem::replace(&mut prod[i], Repr::zero());
                    for j in 0..d {
                        let t = p.mul(&c, &lv.minpoly[j]);
                        prod[i - d + j] = p.sub(&prod[i - d + j], &t);
                    }
                }
                prod.truncate(d);
                Repr::normalize(prod)
            }
        }
    }

    pub(crate) fn inv(&self, a: &Repr) -> Option<Repr> {
        match a {
            Repr::Rat(x) if x.is_zero() => None,
            Repr::Rat(x) => Some(Repr::Rat(x.recip())),
            Repr::Ext(v) => {
                let lv = self.level();
                let (g, s, _) = dense::ext_gcd(&lv.parent, v, &lv.minpoly);
                debug_assert_eq!(g.len(), 1);
                let gi = lv.parent.inv(&g[0])?;
                Some(Repr::normalize(dense::scale(&lv.parent, &s, &gi)))
            }
        }
    }

    pub(crate) fn pow(&self, a: &Repr, mut e: u64) -> Repr {
        let mut base = a.clone();
        let mut acc = Repr::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Field norm of an element of the top level down to the parent level.
    pub(crate) fn norm_down(&self, a: &Repr) -> Repr {
        let lv = self.level();
        let d = lv.minpoly.len() - 1;
        match a {
            Repr::Rat(x) => Repr::Rat(num_traits::pow(x.clone(), d)),
            Repr::Ext(v) => dense::resultant(&lv.parent, &lv.minpoly, v),
        }
    }

    /// The generator θ of the top level as a representation.
    pub(crate) fn gen_repr(&self) -> Repr {
        Repr::Ext(vec![Repr::zero(), Repr::one()])
    }

    fn repr_string(&self, r: &Repr) -> String {
        match r {
            Repr::Rat(x) => x.to_string(),
            Repr::Ext(v) => {
                let lv = self.level();
                let mut parts = Vec::new();
                for (k, c) in v.iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    let cs = lv.parent.repr_string(c);
                    let g = match k {
                        0 => String::new(),
                        1 => lv.name.clone(),
                        _ => format!("{}^{}", lv.name, k),
                    };
                    let compound = matches!(c, Repr::Ext(_));
                    let term = if k == 0 {
                        cs
                    } else if c.is_one() {
                        g
                    } else if *c == Repr::Rat(rat(-1)) {
                        format!("-{g}")
                    } else if compound {
                        format!("({cs})*{g}")
                    } else {
                        format!("{cs}*{g}")
                    };
                    parts.push(term);
                }
                let mut s = String::new();
                for (k, p) in parts.iter().enumerate() {
                    if k == 0 {
                        s.push_str(p);
                    } else if let Some(rest) = p.strip_prefix('-') {
                        s.push_str(" - ");
                        s.push_str(rest);
                    } else {
                        s.push_str(" + ");
                        s.push_str(p);
                    }
                }
                s
            }
        }
    }

    fn poly_string(&self, coeffs: &[Repr], var: &str) -> String {
        let p = UniPoly::from_reprs(self.clone(), coeffs.to_vec(), Var::Z);
        p.to_string().replace('z', var)
    }

    /// JSON description: one entry per level with the generator name and the
    /// minimal polynomial coefficients (constant term first).
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.levels()
                .iter()
                .map(|l| {
                    serde_json::json!({
                        "name": l.name,
                        "minpoly": l.minpoly.iter().map(repr_json).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    }
}

pub(crate) fn repr_json(r: &Repr) -> Value {
    match r {
        Repr::Rat(x) => Value::String(x.to_string()),
        Repr::Ext(v) => Value::Array(v.iter().map(repr_json).collect()),
    }
}

/// An element of a tower field.
#[derive(Clone)]
pub struct FieldElem {
    tower: Tower,
    repr: Repr,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tower.repr_string(&self.repr))
    }
}

impl FieldElem {
    pub(crate) fn from_repr(tower: Tower, repr: Repr) -> FieldElem {
        FieldElem { tower, repr }
    }

    pub fn from_rational(r: BigRational) -> FieldElem {
        FieldElem { tower: Tower::rationals(), repr: Repr::Rat(r) }
    }

    pub fn from_int(n: i64) -> FieldElem {
        FieldElem::from_rational(rat(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> FieldElem {
        FieldElem::from_rational(BigRational::new(n.into(), d.into()))
    }

    pub fn zero() -> FieldElem {
        FieldElem::from_int(0)
    }

    pub fn one() -> FieldElem {
        FieldElem::from_int(1)
    }

    /// The imaginary unit of ℚ(i).
    pub fn i() -> FieldElem {
        FieldElem::generator(&Tower::gaussian()).unwrap()
    }

    /// The top generator of `tower`.
    pub fn generator(tower: &Tower) -> Option<FieldElem> {
        tower.0.as_ref()?;
        Some(FieldElem { tower: tower.clone(), repr: tower.gen_repr() })
    }

    /// The generator of the level at `depth` (1-based), seen in `tower`.
    pub fn generator_at(tower: &Tower, depth: usize) -> Option<FieldElem> {
        if depth == 0 || depth > tower.depth() {
            return None;
        }
        FieldElem::generator(&tower.truncated(depth))?.lift(tower).ok()
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub(crate) fn repr(&self) -> &Repr {
        &self.repr
    }

    pub(crate) fn into_repr(self) -> Repr {
        self.repr
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.repr.is_one()
    }

    /// The value as a rational number, if it lies in ℚ.
    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.repr {
            Repr::Rat(r) => Some(r.clone()),
            Repr::Ext(_) => None,
        }
    }

    /// The same element viewed in a larger tower.
    pub fn lift(&self, tower: &Tower) -> Result<FieldElem> {
        if !self.tower.is_prefix_of(tower) {
            return Err(Error::IncompatibleTowers);
        }
        Ok(FieldElem { tower: tower.clone(), repr: tower.lift_repr(self.repr.clone(), self.tower.depth()) })
    }

    fn binary(&self, o: &FieldElem, f: impl Fn(&Tower, &Repr, &Repr) -> Repr) -> Result<FieldElem> {
        let t = self.tower.join(&o.tower)?;
        let a = t.lift_repr(self.repr.clone(), self.tower.depth());
        let b = t.lift_repr(o.repr.clone(), o.tower.depth());
        let repr = f(&t, &a, &b);
        Ok(FieldElem { tower: t, repr })
    }

    pub fn try_add(&self, o: &FieldElem) -> Result<FieldElem> {
        self.binary(o, Tower::add)
    }

    pub fn try_sub(&self, o: &FieldElem) -> Result<FieldElem> {
        self.binary(o, Tower::sub)
    }

    pub fn try_mul(&self, o: &FieldElem) -> Result<FieldElem> {
        self.binary(o, Tower::mul)
    }

    pub fn try_div(&self, o: &FieldElem) -> Result<FieldElem> {
        let inv = o.inv()?;
        self.try_mul(&inv)
    }

    pub fn inv(&self) -> Result<FieldElem> {
        let repr = self.tower.inv(&self.repr).ok_or(Error::DivisionByZero)?;
        Ok(FieldElem { tower: self.tower.clone(), repr })
    }

    pub fn pow(&self, e: i64) -> Result<FieldElem> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let repr = self.tower.pow(&base.repr, e.unsigned_abs());
        Ok(FieldElem { tower: self.tower.clone(), repr })
    }

    /// JSON value: a `"p/q"` string for rationals, nested coefficient arrays otherwise.
    pub fn to_json(&self) -> Value {
        repr_json(&self.repr)
    }

    /// Whether the printed form needs parentheses when used as a factor.
    pub fn is_compound(&self) -> bool {
        match &self.repr {
            Repr::Rat(r) => !r.is_integer() || r.is_negative(),
            Repr::Ext(v) => v.iter().filter(|c| !c.is_zero()).count() > 1 || !v.last().is_some_and(Repr::is_one),
        }
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &FieldElem) -> bool {
        match self.tower.join(&other.tower) {
            Ok(t) => {
                t.lift_repr(self.repr.clone(), self.tower.depth()) == t.lift_repr(other.repr.clone(), other.tower.depth())
            }
            Err(_) => false,
        }
    }
}

impl Eq for FieldElem {}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            /// Panics when the operands live in incompatible towers.
            fn $m(self, o: &FieldElem) -> FieldElem {
                self.$f(o).expect("operands in incompatible towers")
            }
        }
        impl std::ops::$tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: FieldElem) -> FieldElem {
                (&self).$m(&o)
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);

impl std::ops::Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { tower: self.tower.clone(), repr: self.tower.neg(&self.repr) }
    }
}

impl std::ops::Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

impl From<i64> for FieldElem {
    fn from(n: i64) -> FieldElem {
        FieldElem::from_int(n)
    }
}

impl From<BigRational> for FieldElem {
    fn from(r: BigRational) -> FieldElem {
        FieldElem::from_rational(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_unit_squares_to_minus_one() {
        let i = FieldElem::i();
        assert_eq!(&i * &i, FieldElem::from_int(-1));
        assert_eq!(i.to_string(), "i");
    }

    #[test]
    fn inverse_in_extension() {
        let i = FieldElem::i();
        let a = &FieldElem::from_int(3) + &(&FieldElem::from_int(2) * &i);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        assert_eq!(b.to_string(), "-2/13*i + 3/13");
    }

    #[test]
    fn nested_extension_arithmetic() {
        // sqrt(i) : z^2 - i over Q(i)
        let g = Tower::gaussian();
        let m = UniPoly::new(&[-FieldElem::i(), FieldElem::zero(), FieldElem::one()], Var::Z).unwrap();
        let t = g.extend(&m).unwrap();
        let w = FieldElem::generator(&t).unwrap();
        let w4 = w.pow(4).unwrap();
        assert_eq!(w4, FieldElem::from_int(-1));
        let i_up = FieldElem::i().lift(&t).unwrap();
        assert_eq!(&w * &w, i_up);
        assert!((&w * &w.inv().unwrap()).is_one());
    }

    #[test]
    fn extend_rejects_reducible() {
        let m = UniPoly::from_ints(&[-1, 0, 1], Var::Z);
        assert_eq!(Tower::rationals().extend(&m).unwrap_err(), Error::NotIrreducible);
        let m = UniPoly::new(&[FieldElem::one(), FieldElem::zero(), FieldElem::one()], Var::Z).unwrap();
        assert_eq!(Tower::gaussian().extend(&m).unwrap_err(), Error::NotIrreducible);
    }

    #[test]
    fn structural_tower_equality() {
        let m = UniPoly::from_ints(&[-2, 0, 1], Var::Z);
        let a = Tower::rationals().extend(&m).unwrap();
        let b = Tower::rationals().extend(&m).unwrap();
        assert!(a.same(&b));
        assert!(!a.same(&Tower::gaussian()));
        let x = FieldElem::generator(&a).unwrap();
        let y = FieldElem::generator(&b).unwrap();
        assert_eq!(x, y);
        assert!(Tower::gaussian().join(&a).is_err());
    }
}
