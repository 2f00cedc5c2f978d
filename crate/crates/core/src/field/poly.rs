use std::fmt;

use serde_json::Value;

use super::{dense, factor, max_tower_depth, repr_json, FieldElem, Repr, Tower};
use crate::error::{Error, Result};

/// Name of the indeterminate of a [`UniPoly`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Pi,
    Z,
    T,
}

impl Var {
    pub fn symbol(self) -> &'static str {
        match self {
            Var::Pi => "pi",
            Var::Z => "z",
            Var::T => "t",
        }
    }
}

/// Dense univariate polynomial over a tower field.
#[derive(Clone)]
pub struct UniPoly {
    tower: Tower,
    coeffs: Vec<Repr>,
    var: Var,
}

/// A root of a polynomial together with its multiplicity and the number of
/// conjugates it stands for.
///
/// When the root generates a new extension, `value` is the generator of that
/// extension and `conjugates` is the degree of the irreducible factor it
/// came from; every conjugate has the same multiplicity.
#[derive(Clone, Debug)]
pub struct RootFamily {
    pub value: FieldElem,
    pub multiplicity: usize,
    pub conjugates: usize,
}

/// Factorization into a unit and monic irreducible factors with multiplicities.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub unit: FieldElem,
    pub factors: Vec<(UniPoly, usize)>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let v = self.var.symbol();
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = self.coeff(k);
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => v.to_string(),
                _ => format!("{v}^{k}"),
            };
            let (neg, body) = match c.to_rational() {
                Some(r) if r < num_rational::BigRational::from_integer(0.into()) => (true, (-c.clone()).to_string()),
                _ => (false, c.to_string()),
            };
            let body = if c.is_compound() && c.to_rational().is_none() { format!("({body})") } else { body };
            let term = if k == 0 {
                body
            } else if body == "1" {
                mono
            } else {
                format!("{body}*{mono}")
            };
            match (first, neg) {
                (true, true) => write!(f, "-{term}")?,
                (true, false) => write!(f, "{term}")?,
                (false, true) => write!(f, " - {term}")?,
                (false, false) => write!(f, " + {term}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl PartialEq for UniPoly {
    fn eq(&self, other: &UniPoly) -> bool {
        self.coeffs.len() == other.coeffs.len() && (0..self.coeffs.len()).all(|k| self.coeff(k) == other.coeff(k))
    }
}

impl UniPoly {
    pub(crate) fn from_reprs(tower: Tower, coeffs: Vec<Repr>, var: Var) -> UniPoly {
        UniPoly { tower, coeffs: dense::trim(coeffs), var }
    }

    pub(crate) fn reprs(&self) -> &[Repr] {
        &self.coeffs
    }

    /// Builds a polynomial from coefficients, constant term first.
    pub fn new(coeffs: &[FieldElem], var: Var) -> Result<UniPoly> {
        let mut tower = Tower::rationals();
        for c in coeffs {
            tower = tower.join(c.tower())?;
        }
        let reprs = coeffs.iter().map(|c| c.lift(&tower).map(FieldElem::into_repr)).collect::<Result<Vec<_>>>()?;
        Ok(UniPoly::from_reprs(tower, reprs, var))
    }

    pub fn from_ints(coeffs: &[i64], var: Var) -> UniPoly {
        let cs: Vec<FieldElem> = coeffs.iter().map(|&c| FieldElem::from_int(c)).collect();
        UniPoly::new(&cs, var).unwrap()
    }

    pub fn zero(tower: &Tower, var: Var) -> UniPoly {
        UniPoly { tower: tower.clone(), coeffs: Vec::new(), var }
    }

    pub fn constant(c: FieldElem, var: Var) -> UniPoly {
        UniPoly::new(&[c], var).unwrap()
    }

    /// The polynomial `var - c`.
    pub fn linear_root(c: &FieldElem, var: Var) -> UniPoly {
        UniPoly::new(&[-c, FieldElem::one()], var).unwrap()
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> UniPoly {
        self.var = var;
        self
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> FieldElem {
        let r = self.coeffs.get(k).cloned().unwrap_or_else(Repr::zero);
        FieldElem::from_repr(self.tower.clone(), r)
    }

    pub fn coeffs(&self) -> Vec<FieldElem> {
        (0..self.coeffs.len()).map(|k| self.coeff(k)).collect()
    }

    pub fn leading(&self) -> FieldElem {
        self.coeff(self.coeffs.len().saturating_sub(1))
    }

    pub fn lift(&self, tower: &Tower) -> Result<UniPoly> {
        if !self.tower.is_prefix_of(tower) {
            return Err(Error::IncompatibleTowers);
        }
        let from = self.tower.depth();
        let coeffs = self.coeffs.iter().map(|r| tower.lift_repr(r.clone(), from)).collect();
        Ok(UniPoly { tower: tower.clone(), coeffs, var: self.var })
    }

    fn joined(&self, o: &UniPoly) -> Result<(Tower, UniPoly, UniPoly)> {
        let t = self.tower.join(&o.tower)?;
        Ok((t.clone(), self.lift(&t)?, o.lift(&t)?))
    }

    fn wrap(&self, tower: Tower, coeffs: Vec<Repr>) -> UniPoly {
        UniPoly { tower, coeffs, var: self.var }
    }

    pub fn try_add(&self, o: &UniPoly) -> Result<UniPoly> {
        let (t, a, b) = self.joined(o)?;
        Ok(self.wrap(t.clone(), dense::add(&t, &a.coeffs, &b.coeffs)))
    }

    pub fn try_sub(&self, o: &UniPoly) -> Result<UniPoly> {
        let (t, a, b) = self.joined(o)?;
        Ok(self.wrap(t.clone(), dense::sub(&t, &a.coeffs, &b.coeffs)))
    }

    pub fn try_mul(&self, o: &UniPoly) -> Result<UniPoly> {
        let (t, a, b) = self.joined(o)?;
        Ok(self.wrap(t.clone(), dense::mul(&t, &a.coeffs, &b.coeffs)))
    }

    pub fn scale(&self, c: &FieldElem) -> Result<UniPoly> {
        let t = self.tower.join(c.tower())?;
        let a = self.lift(&t)?;
        let c = c.lift(&t)?;
        Ok(self.wrap(t.clone(), dense::scale(&t, &a.coeffs, c.repr())))
    }

    pub fn neg(&self) -> UniPoly {
        self.scale(&FieldElem::from_int(-1)).unwrap()
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::constant(FieldElem::one(), self.var).lift(&self.tower).unwrap();
        for _ in 0..e {
            acc = acc.try_mul(self).unwrap();
        }
        acc
    }

    /// Euclidean division; errors on a zero divisor.
    pub fn divrem(&self, o: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (t, a, b) = self.joined(o)?;
        let (q, r) = dense::divrem(&t, &a.coeffs, &b.coeffs);
        Ok((self.wrap(t.clone(), q), self.wrap(t, r)))
    }

    /// Monic gcd; the zero polynomial when both inputs vanish.
    pub fn gcd(&self, o: &UniPoly) -> Result<UniPoly> {
        let (t, a, b) = self.joined(o)?;
        Ok(self.wrap(t.clone(), dense::gcd(&t, &a.coeffs, &b.coeffs)))
    }

    pub fn monic(&self) -> UniPoly {
        self.wrap(self.tower.clone(), dense::monic(&self.tower, &self.coeffs))
    }

    pub fn derivative(&self) -> UniPoly {
        self.wrap(self.tower.clone(), dense::derivative(&self.tower, &self.coeffs))
    }

    pub fn eval(&self, x: &FieldElem) -> Result<FieldElem> {
        let t = self.tower.join(x.tower())?;
        let a = self.lift(&t)?;
        let x = x.lift(&t)?;
        Ok(FieldElem::from_repr(t.clone(), dense::eval(&t, &a.coeffs, x.repr())))
    }

    /// The polynomial `f(var + c)`.
    pub fn shift(&self, c: &FieldElem) -> Result<UniPoly> {
        let t = self.tower.join(c.tower())?;
        let a = self.lift(&t)?;
        let c = c.lift(&t)?;
        Ok(self.wrap(t.clone(), dense::shift(&t, &a.coeffs, c.repr())))
    }

    /// Resultant over the coefficient field.
    pub fn resultant(&self, o: &UniPoly) -> Result<FieldElem> {
        let (t, a, b) = self.joined(o)?;
        Ok(FieldElem::from_repr(t.clone(), dense::resultant(&t, &a.coeffs, &b.coeffs)))
    }

    /// Discriminant `(-1)^{n(n-1)/2} Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> Result<FieldElem> {
        let n = self.degree().ok_or(Error::ZeroPolynomial)?;
        let r = self.resultant(&self.derivative())?;
        let r = if (n * n.saturating_sub(1) / 2) % 2 == 1 { -r } else { r };
        r.try_div(&self.leading())
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => dense::gcd(&self.tower, &self.coeffs, &dense::derivative(&self.tower, &self.coeffs)).len() == 1,
        }
    }

    /// Yun's squarefree decomposition: monic parts `a_k` with f = lc · Π a_k^k.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(UniPoly, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let t = &self.tower;
        let f = dense::monic(t, &self.coeffs);
        let df = dense::derivative(t, &f);
        let a0 = dense::gcd(t, &f, &df);
        let mut b = dense::divrem(t, &f, &a0).0;
        let mut c = dense::divrem(t, &df, &a0).0;
        let mut d = dense::sub(t, &c, &dense::derivative(t, &b));
        let mut out = Vec::new();
        let mut k = 1;
        while b.len() > 1 {
            let a = dense::gcd(t, &b, &d);
            b = dense::divrem(t, &b, &a).0;
            c = dense::divrem(t, &d, &a).0;
            d = dense::sub(t, &c, &dense::derivative(t, &b));
            if a.len() > 1 {
                out.push((self.wrap(t.clone(), a), k));
            }
            k += 1;
        }
        Ok(out)
    }

    /// Factorization over the current tower.
    pub fn factor(&self) -> Result<Factorization> {
        let unit = self.leading();
        let mut factors = Vec::new();
        for (part, k) in self.squarefree_decomposition()? {
            for g in factor::factor_squarefree(&self.tower, &part.coeffs)? {
                factors.push((self.wrap(self.tower.clone(), g), k));
            }
        }
        Ok(Factorization { unit, factors })
    }

    /// One representative root per irreducible factor. Non-linear factors are
    /// adjoined as new extensions of the current tower; each extension is
    /// independent of the others.
    pub fn root_families(&self) -> Result<Vec<RootFamily>> {
        let mut out = Vec::new();
        for (g, k) in self.factor()?.factors {
            let deg = g.degree().unwrap();
            let value = if deg == 1 {
                -g.coeff(0)
            } else {
                if self.tower.depth() >= max_tower_depth() {
                    return Err(Error::ExtensionOverflow { limit: max_tower_depth() });
                }
                let ext = self.tower.extend_unchecked(g.coeffs.clone());
                FieldElem::generator(&ext).unwrap()
            };
            out.push(RootFamily { value, multiplicity: k, conjugates: deg });
        }
        Ok(out)
    }

    /// Every root with its multiplicity, splitting the polynomial completely.
    ///
    /// Roots are returned in a common tower obtained by adjoining one root of
    /// each remaining irreducible factor in turn.
    pub fn roots_with_multiplicity(&self) -> Result<Vec<(FieldElem, usize)>> {
        self.roots_with_multiplicity_limited(max_tower_depth())
    }

    pub fn roots_with_multiplicity_limited(&self, max_depth: usize) -> Result<Vec<(FieldElem, usize)>> {
        if self.degree().is_none_or(|d| d == 0) {
            return Err(Error::Domain("roots of a constant polynomial".into()));
        }
        let mut tower = self.tower.clone();
        let mut pending: Vec<(UniPoly, usize)> = self.squarefree_decomposition()?;
        let mut roots: Vec<(FieldElem, usize)> = Vec::new();
        while let Some((part, k)) = pending.pop() {
            let part = part.lift(&tower)?;
            let mut factors = factor::factor_squarefree(&tower, &part.coeffs)?;
            factors.retain(|g| g.len() >= 2);
            let mut rest: Vec<Vec<Repr>> = Vec::new();
            for g in factors {
                if g.len() == 2 {
                    let r = tower.neg(&dense::monic(&tower, &g)[0]);
                    roots.push((FieldElem::from_repr(tower.clone(), r), k));
                } else {
                    rest.push(g);
                }
            }
            if let Some(g) = rest.pop() {
                if tower.depth() >= max_depth {
                    return Err(Error::ExtensionOverflow { limit: max_depth });
                }
                tower = tower.extend_unchecked(g.clone());
                let theta = tower.gen_repr();
                roots.push((FieldElem::from_repr(tower.clone(), theta.clone()), k));
                let lifted: Vec<Repr> = g.into_iter().map(|r| tower.lift_repr(r, tower.depth() - 1)).collect();
                let q = dense::divrem(&tower, &lifted, &[tower.neg(&theta), Repr::one()]).0;
                let prev = tower.parent().unwrap();
                for h in rest {
                    pending.push((self.wrap(prev.clone(), h), k));
                }
                if q.len() > 1 {
                    pending.push((self.wrap(tower.clone(), q), k));
                }
            }
        }
        roots.into_iter().map(|(r, k)| Ok((r.lift(&tower)?, k))).collect()
    }

    /// Multiplicity of `x` as a root (0 when it is not a root).
    pub fn root_multiplicity(&self, x: &FieldElem) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let lin = UniPoly::linear_root(x, self.var);
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = p.divrem(&lin)?;
            if !r.is_zero() {
                return Ok(k);
            }
            p = q;
            k += 1;
        }
    }

    /// JSON coefficient list, constant term first.
    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(repr_json).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c, Var::Pi)
    }

    #[test]
    fn rational_roots() {
        let r = p(&[-1, 0, 1]).roots_with_multiplicity().unwrap();
        let vals: Vec<_> = r.iter().map(|(v, k)| (v.to_string(), *k)).collect();
        assert!(vals.contains(&("1".into(), 1)) && vals.contains(&("-1".into(), 1)));
        let r = p(&[1, -2, 1]).roots_with_multiplicity().unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].0, FieldElem::one());
        assert_eq!(r[0].1, 2);
    }

    #[test]
    fn quartic_splits_after_two_extensions() {
        // pi^4 - 2 splits over Q(2^(1/4), i)
        let f = p(&[-2, 0, 0, 0, 1]);
        let roots = f.roots_with_multiplicity().unwrap();
        assert_eq!(roots.len(), 4);
        for (r, k) in &roots {
            assert_eq!(*k, 1);
            assert!(f.eval(r).unwrap().is_zero());
        }
        for a in 0..4 {
            for b in a + 1..4 {
                assert_ne!(roots[a].0, roots[b].0);
            }
        }
    }

    #[test]
    fn squarefree_checks() {
        assert!(p(&[-1, 0, 1]).is_squarefree());
        assert!(!p(&[1, -2, 1]).is_squarefree());
        // (pi+1)^2 pi^2
        let f = p(&[1, 1]).pow(2).try_mul(&p(&[0, 1]).pow(2)).unwrap();
        assert!(!f.is_squarefree());
        let parts = f.squarefree_decomposition().unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].1, 2);
        assert_eq!(parts[0].0, p(&[0, 1, 1]));
    }

    #[test]
    fn factor_over_gaussian() {
        let i = FieldElem::i();
        // pi^2 + 1 = (pi - i)(pi + i) over Q(i)
        let f = UniPoly::new(&[FieldElem::one(), FieldElem::zero(), FieldElem::one()], Var::Pi)
            .unwrap()
            .lift(i.tower())
            .unwrap();
        let fac = f.factor().unwrap();
        assert_eq!(fac.factors.len(), 2);
        // pi^4 + 4 has the roots ±1 ± i
        let g = p(&[4, 0, 0, 0, 1]).lift(i.tower()).unwrap();
        assert_eq!(g.factor().unwrap().factors.len(), 4);
        // pi^4 - 2 stays irreducible over Q(i)
        let h = p(&[-2, 0, 0, 0, 1]).lift(i.tower()).unwrap();
        assert_eq!(h.factor().unwrap().factors.len(), 1);
    }

    #[test]
    fn resultant_and_discriminant() {
        let d = p(&[1, 0, 1]).discriminant().unwrap();
        assert_eq!(d, FieldElem::from_int(-4));
        let r = p(&[-1, 1]).resultant(&p(&[-3, 1])).unwrap();
        assert_eq!(r, FieldElem::from_int(-2));
    }

    #[test]
    fn extension_overflow_is_reported() {
        let f = p(&[-2, 0, 0, 0, 1]);
        assert_eq!(f.roots_with_multiplicity_limited(1).unwrap_err(), Error::ExtensionOverflow { limit: 1 });
    }
}
