//! Truncated Puiseux series at infinity and Newton–Puiseux expansion.
//!
//! A series is a finite list of terms `a·x^e` in strictly descending order
//! together with a truncation order: every exponent above it is exact and
//! nothing is known at or below it. An absent truncation order means the
//! series is an exact finite sum.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::bivariate;
use crate::error::{Error, Result};
use crate::field::{FieldElem, Tower, UniPoly, Var};
use crate::laurent::LaurentPoly;
use crate::Exp;

/// Default limit on the number of deepening retries.
pub const DEFAULT_STEP_LIMIT: usize = 64;

/// A degree that may be `−∞` (the zero series).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(Exp),
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(e) => write!(f, "{e}"),
        }
    }
}

/// A truncated series in descending powers of `x^{1/l}`.
#[derive(Clone)]
pub struct PuiseuxSeries {
    l: i64,
    tower: Tower,
    terms: Vec<(Exp, FieldElem)>,
    trunc: Option<Exp>,
}

impl fmt::Debug for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*x^({e})")?;
        }
        match self.trunc {
            Some(t) => write!(f, " + O(x^({t}))"),
            None => Ok(()),
        }
    }
}

fn max_trunc(a: Option<Exp>, b: Option<Exp>) -> Option<Exp> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

impl PuiseuxSeries {
    /// Builds a series, sorting terms and discarding zero terms and terms at
    /// or below the truncation order.
    pub fn new(terms: Vec<(Exp, FieldElem)>, trunc: Option<Exp>) -> Result<PuiseuxSeries> {
        let mut tower = Tower::rationals();
        let mut l = 1;
        for (e, c) in &terms {
            tower = tower.join(c.tower())?;
            l = l.lcm(e.denom());
        }
        if let Some(t) = trunc {
            l = l.lcm(t.denom());
        }
        let mut merged: Vec<(Exp, FieldElem)> = Vec::new();
        let mut sorted = terms;
        sorted.sort_by(|a, b| b.0.cmp(&a.0));
        for (e, c) in sorted {
            let c = c.lift(&tower)?;
            match merged.last_mut() {
                Some((le, lc)) if *le == e => *lc = &*lc + &c,
                _ => merged.push((e, c)),
            }
        }
        merged.retain(|(e, c)| !c.is_zero() && trunc.is_none_or(|t| *e > t));
        Ok(PuiseuxSeries { l, tower, terms: merged, trunc })
    }

    /// An exact finite series.
    pub fn exact(terms: Vec<(Exp, FieldElem)>) -> Result<PuiseuxSeries> {
        PuiseuxSeries::new(terms, None)
    }

    /// The series of an `x`-only Laurent polynomial.
    pub fn from_laurent(p: &LaurentPoly) -> Result<PuiseuxSeries> {
        if p.terms().any(|(e, _)| e.y != 0) {
            return Err(Error::Domain("polynomial depends on y".into()));
        }
        let mut s = PuiseuxSeries::exact(p.terms().map(|(e, c)| (e.x, c)).collect())?;
        s.tower = p.tower().clone();
        s.l = s.l.lcm(&p.l());
        Ok(s)
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn terms(&self) -> &[(Exp, FieldElem)] {
        &self.terms
    }

    pub fn trunc(&self) -> Option<Exp> {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    pub fn leading(&self) -> Option<&(Exp, FieldElem)> {
        self.terms.first()
    }

    /// Coefficient of `x^e`; errors when `e` is not above the truncation order.
    pub fn coeff_at(&self, e: Exp) -> Result<FieldElem> {
        if self.trunc.is_some_and(|t| e <= t) {
            return Err(Error::Undecided { trunc: self.trunc.unwrap().to_string() });
        }
        Ok(self
            .terms
            .iter()
            .find(|(x, _)| *x == e)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| FieldElem::zero().lift(&self.tower).unwrap()))
    }

    /// Terms with exponent strictly above `j`; errors when those are not all known.
    pub fn prefix_above(&self, j: Exp) -> Result<Vec<(Exp, FieldElem)>> {
        if self.trunc.is_some_and(|t| t > j) {
            return Err(Error::Undecided { trunc: self.trunc.unwrap().to_string() });
        }
        Ok(self.terms.iter().filter(|(e, _)| *e > j).cloned().collect())
    }

    /// The degree of the series if its leading term is certified.
    pub fn certified_degree(&self) -> Result<Degree> {
        match (self.terms.first(), self.trunc) {
            (Some((e, _)), _) => Ok(Degree::Finite(*e)),
            (None, None) => Ok(Degree::NegInfinity),
            (None, Some(t)) => Err(Error::Undecided { trunc: t.to_string() }),
        }
    }

    pub fn lift(&self, tower: &Tower) -> Result<PuiseuxSeries> {
        let terms = self.terms.iter().map(|(e, c)| Ok((*e, c.lift(tower)?))).collect::<Result<Vec<_>>>()?;
        Ok(PuiseuxSeries { l: self.l, tower: tower.clone(), terms, trunc: self.trunc })
    }

    fn aligned(&self, o: &PuiseuxSeries) -> Result<(PuiseuxSeries, PuiseuxSeries)> {
        let t = self.tower.join(&o.tower)?;
        Ok((self.lift(&t)?, o.lift(&t)?))
    }

    pub fn try_add(&self, o: &PuiseuxSeries) -> Result<PuiseuxSeries> {
        let (a, b) = self.aligned(o)?;
        let trunc = max_trunc(a.trunc, b.trunc);
        let mut terms = a.terms;
        terms.extend(b.terms);
        let mut s = PuiseuxSeries::new(terms, trunc)?;
        s.tower = a.tower;
        s.l = self.l.lcm(&o.l).lcm(&s.l);
        Ok(s)
    }

    pub fn neg(&self) -> PuiseuxSeries {
        let terms = self.terms.iter().map(|(e, c)| (*e, -c)).collect();
        PuiseuxSeries { l: self.l, tower: self.tower.clone(), terms, trunc: self.trunc }
    }

    pub fn try_sub(&self, o: &PuiseuxSeries) -> Result<PuiseuxSeries> {
        self.try_add(&o.neg())
    }

    /// Largest exponent that may carry a nonzero term: the leading exponent
    /// or the truncation order.
    fn reach(&self) -> Option<Exp> {
        match (self.terms.first(), self.trunc) {
            (Some((e, _)), Some(t)) => Some((*e).max(t)),
            (Some((e, _)), None) => Some(*e),
            (None, t) => t,
        }
    }

    pub fn try_mul(&self, o: &PuiseuxSeries) -> Result<PuiseuxSeries> {
        let (a, b) = self.aligned(o)?;
        if (a.terms.is_empty() && a.trunc.is_none()) || (b.terms.is_empty() && b.trunc.is_none()) {
            return Ok(PuiseuxSeries { l: a.l.lcm(&b.l), tower: a.tower, terms: Vec::new(), trunc: None });
        }
        let t1 = match (a.trunc, b.reach()) {
            (Some(t), Some(r)) => Some(t + r),
            _ => None,
        };
        let t2 = match (b.trunc, a.reach()) {
            (Some(t), Some(r)) => Some(t + r),
            _ => None,
        };
        let trunc = max_trunc(t1, t2);
        let mut terms = Vec::with_capacity(a.terms.len() * b.terms.len());
        for (e1, c1) in &a.terms {
            for (e2, c2) in &b.terms {
                if trunc.is_none_or(|t| *e1 + *e2 > t) {
                    terms.push((*e1 + *e2, c1 * c2));
                }
            }
        }
        let mut s = PuiseuxSeries::new(terms, trunc)?;
        s.tower = a.tower;
        s.l = a.l.lcm(&b.l).lcm(&s.l);
        Ok(s)
    }

    /// JSON: `{"l", "terms": [[exp, coeff], ...], "trunc"}`.
    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "l": self.l,
            "terms": self.terms.iter().map(|(e, c)| Value::Array(vec![Value::String(e.to_string()), c.to_json()])).collect::<Vec<_>>(),
            "trunc": self.trunc.map(|t| Value::String(t.to_string())).unwrap_or(Value::Null),
        })
    }
}

/// A family of roots of `P` sharing one truncated expansion.
///
/// `conjugates` counts the conjugate embeddings of the coefficient field the
/// family stands for; `cluster` counts distinct roots per embedding that agree
/// down to the truncation order; `multiplicity` is the multiplicity of each of
/// them as a root of `P`.
#[derive(Clone, Debug)]
pub struct RootSeries {
    pub series: PuiseuxSeries,
    pub multiplicity: usize,
    pub cluster: usize,
    pub conjugates: usize,
}

impl RootSeries {
    /// Number of roots of `P` (with multiplicity) this family accounts for.
    pub fn count(&self) -> usize {
        self.multiplicity * self.cluster * self.conjugates
    }
}

/// The default truncation order `−(deg_x P + deg_y P + 1)`.
pub fn default_depth(p: &LaurentPoly) -> Exp {
    let dx = p.deg_x().unwrap_or_else(Exp::zero).max(Exp::zero());
    let dy = p.deg_y().unwrap_or(0);
    -(dx + Exp::from_integer(dy + 1))
}

struct Frame {
    shifted: LaurentPoly,
    prefix: Vec<(Exp, FieldElem)>,
    conjugates: usize,
    upper: Option<Exp>,
}

/// Newton–Puiseux expansion of the roots of `P` in `y`, exact down to `depth`.
///
/// The polynomial is first split into squarefree parts in `y`; each part is
/// expanded by following the Newton polygon edges of successive shifts.
pub fn expand_roots(p: &LaurentPoly, depth: Exp) -> Result<Vec<RootSeries>> {
    expand_roots_below(p, None, depth)
}

/// Like [`expand_roots`], restricted to roots whose leading exponent is at
/// most `max_order` (all roots when `None`).
pub fn expand_roots_below(p: &LaurentPoly, max_order: Option<Exp>, depth: Exp) -> Result<Vec<RootSeries>> {
    let n = p.deg_y().ok_or(Error::ZeroPolynomial)?;
    if n < 1 {
        return Err(Error::Domain("expansion needs deg_y P ≥ 1".into()));
    }
    let mut out = Vec::new();
    for (part, mult) in squarefree_parts(p)? {
        for mut r in expand_squarefree(&part, max_order, depth)? {
            r.multiplicity = mult;
            out.push(r);
        }
    }
    Ok(out)
}

/// Squarefree decomposition in `y` over `K(x^{1/l})`.
pub fn squarefree_parts(p: &LaurentPoly) -> Result<Vec<(LaurentPoly, usize)>> {
    let tower = p.tower().clone();
    let (yp, _) = bivariate::to_ypoly(p, p.l(), &tower)?;
    let parts = bivariate::squarefree_y(&yp, &tower)?;
    if parts.len() == 1 && parts[0].1 == 1 {
        return Ok(vec![(p.clone(), 1)]);
    }
    parts
        .into_iter()
        .map(|(a, k)| Ok((bivariate::ypoly_to_laurent(&a, p.l(), 0)?.lift(&tower)?, k)))
        .collect()
}

fn edge_polynomial(form: &LaurentPoly, st_y: i64) -> Result<UniPoly> {
    let n = form.deg_y().unwrap() - st_y;
    let mut cs = vec![FieldElem::zero(); n as usize + 1];
    for (e, c) in form.terms() {
        cs[(e.y - st_y) as usize] = c;
    }
    UniPoly::new(&cs, Var::Z)
}

fn expand_squarefree(p: &LaurentPoly, max_order: Option<Exp>, depth: Exp) -> Result<Vec<RootSeries>> {
    let mut out = Vec::new();
    let mut stack = vec![Frame { shifted: p.clone(), prefix: Vec::new(), conjugates: 1, upper: None }];
    while let Some(fr) = stack.pop() {
        let zeros = fr.shifted.ord_y().unwrap_or(0);
        if zeros > 0 {
            out.push(RootSeries {
                series: PuiseuxSeries::new(fr.prefix.clone(), None)?.lift(fr.shifted.tower())?,
                multiplicity: 1,
                cluster: zeros as usize,
                conjugates: fr.conjugates,
            });
        }
        for d in fr.shifted.dir_set() {
            let j = d.order().unwrap();
            if fr.upper.is_some_and(|u| j >= u) || (fr.upper.is_none() && max_order.is_some_and(|m| j > m)) {
                continue;
            }
            let lf = fr.shifted.leading_form(&d)?;
            let width = (lf.en.y - lf.st.y) as usize;
            if j <= depth {
                out.push(RootSeries {
                    series: PuiseuxSeries::new(fr.prefix.clone(), Some(depth))?.lift(fr.shifted.tower())?,
                    multiplicity: 1,
                    cluster: width,
                    conjugates: fr.conjugates,
                });
                continue;
            }
            let h = edge_polynomial(&lf.form, lf.st.y)?;
            for fam in h.root_families()? {
                let t = fam.value.tower().clone();
                let mut prefix: Vec<(Exp, FieldElem)> =
                    fr.prefix.iter().map(|(e, c)| Ok((*e, c.lift(&t)?))).collect::<Result<_>>()?;
                prefix.push((j, fam.value.clone()));
                let shifted = fr.shifted.lift(&t)?.apply_shift(&[(j, fam.value.clone())])?;
                stack.push(Frame { shifted, prefix, conjugates: fr.conjugates * fam.conjugates, upper: Some(j) });
            }
        }
    }
    out.sort_by(|a, b| cmp_series(&a.series, &b.series));
    Ok(out)
}

/// Deterministic ordering of families: by exponent lists, then printed coefficients.
fn cmp_series(a: &PuiseuxSeries, b: &PuiseuxSeries) -> Ordering {
    let ka: Vec<_> = a.terms.iter().map(|(e, c)| (*e, c.to_string())).collect();
    let kb: Vec<_> = b.terms.iter().map(|(e, c)| (*e, c.to_string())).collect();
    kb.cmp(&ka)
}

/// `P(α)` as a truncated series.
pub fn eval_series(p: &LaurentPoly, alpha: &PuiseuxSeries) -> Result<PuiseuxSeries> {
    let coeffs = p.y_coeffs();
    let mut acc = PuiseuxSeries::exact(Vec::new())?;
    for c in coeffs.iter().rev() {
        let cs = PuiseuxSeries::from_laurent(c)?;
        acc = acc.try_mul(alpha)?.try_add(&cs)?;
    }
    Ok(acc)
}

/// `deg_x(α − β)`, or `−∞` when both are exact and equal.
pub fn series_deg_delta(alpha: &PuiseuxSeries, beta: &PuiseuxSeries) -> Result<Degree> {
    alpha.try_sub(beta)?.certified_degree()
}

/// Runs `f` on expansions of increasing depth until it stops reporting an
/// undecided truncation.
pub fn with_adaptive_depth<T>(
    p: &LaurentPoly,
    start: Option<Exp>,
    step_limit: usize,
    mut f: impl FnMut(&[RootSeries]) -> Result<T>,
) -> Result<T> {
    let base = default_depth(p);
    let step = -base;
    let mut depth = start.unwrap_or(base);
    let mut last = None;
    for _ in 0..=step_limit {
        let roots = expand_roots(p, depth)?;
        match f(&roots) {
            Err(e @ Error::Undecided { .. }) => last = Some(e),
            other => return other,
        }
        depth -= step.max(Exp::one());
    }
    Err(last.unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_poly;

    fn p(s: &str) -> LaurentPoly {
        parse_poly(s).unwrap()
    }

    fn e(n: i64, d: i64) -> Exp {
        Exp::new(n, d)
    }

    fn exact(ts: &[(i64, i64, i64)]) -> PuiseuxSeries {
        PuiseuxSeries::exact(ts.iter().map(|&(n, d, c)| (e(n, d), FieldElem::from_int(c))).collect()).unwrap()
    }

    fn leading_terms(roots: &[RootSeries]) -> Vec<String> {
        let mut v: Vec<String> = roots.iter().map(|r| r.series.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn expand_simple_quadratics() {
        let r = expand_roots(&p("y^2 - x^2"), e(-3, 1)).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(leading_terms(&r), vec!["(-1)*x^(1)".to_string(), "(1)*x^(1)".to_string()]);
        assert!(r.iter().all(|x| x.series.is_exact()));
        let r = expand_roots(&p("y^2 - x^3"), e(-3, 1)).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|x| x.series.l() == 2 && x.series.terms().len() == 1));
        let r = expand_roots(&p("y^2 - (2*x+1)*y + x^2 + x"), e(-3, 1)).unwrap();
        assert_eq!(leading_terms(&r), vec!["(1)*x^(1)".to_string(), "(1)*x^(1) + (1)*x^(0)".to_string()]);
    }

    #[test]
    fn conjugate_families_carry_weights() {
        // y^2 + x^2 + 1: roots ±i x (1 + x^{-2}/2 + ...), one family over Q(i)
        let r = expand_roots(&p("y^2 + x^2 + 1"), e(-4, 1)).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].conjugates, 2);
        assert_eq!(r[0].count(), 2);
        let s = &r[0].series;
        assert_eq!(s.terms().len(), 3);
    }

    #[test]
    fn multiple_roots_are_recorded() {
        let r = expand_roots(&p("(y - x)^2*(y + 1)"), e(-2, 1)).unwrap();
        let total: usize = r.iter().map(RootSeries::count).sum();
        assert_eq!(total, 3);
        assert!(r.iter().any(|x| x.multiplicity == 2));
    }

    #[test]
    fn eval_examples() {
        let v = eval_series(&p("y^2 - x^2"), &exact(&[(1, 1, 1)])).unwrap();
        assert_eq!(v.certified_degree().unwrap(), Degree::NegInfinity);
        let alpha = PuiseuxSeries::new(vec![(e(1, 1), FieldElem::from_int(-1))], Some(e(-1, 1))).unwrap();
        let v = eval_series(&p("y"), &alpha).unwrap();
        assert_eq!(v.certified_degree().unwrap(), Degree::Finite(e(1, 1)));
        let v = eval_series(&p("y^2 - x^3"), &exact(&[(3, 2, 1), (0, 1, 1)])).unwrap();
        assert_eq!(v.certified_degree().unwrap(), Degree::Finite(e(3, 2)));
        assert_eq!(v.terms().len(), 2);
    }

    #[test]
    fn truncated_zero_is_undecided() {
        let alpha = PuiseuxSeries::new(vec![(e(1, 1), FieldElem::one())], Some(e(-2, 1))).unwrap();
        let v = eval_series(&p("y - x"), &alpha).unwrap();
        assert!(matches!(v.certified_degree(), Err(Error::Undecided { .. })));
    }

    #[test]
    fn deg_delta_examples() {
        assert_eq!(series_deg_delta(&exact(&[(1, 1, 1), (0, 1, 1)]), &exact(&[(1, 1, 1)])).unwrap(), Degree::Finite(e(0, 1)));
        assert_eq!(series_deg_delta(&exact(&[(1, 1, 1)]), &exact(&[(1, 1, 1)])).unwrap(), Degree::NegInfinity);
        let t = PuiseuxSeries::new(vec![(e(1, 1), FieldElem::one())], Some(e(-1, 1))).unwrap();
        assert!(series_deg_delta(&t, &t).is_err());
        assert_eq!(series_deg_delta(&exact(&[(3, 2, 1)]), &exact(&[(3, 2, -1)])).unwrap(), Degree::Finite(e(3, 2)));
    }
}
