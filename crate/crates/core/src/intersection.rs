//! Resultants in `y`, intersection numbers at infinity and the major/minor
//! root formulas.
//!
//! The resultant sign convention is the Sylvester matrix with the rows of the
//! first argument on top.

use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::bivariate;
use crate::error::{Error, Result};
use crate::field::{FieldElem, Tower};
use crate::laurent::LaurentPoly;
use crate::piroot::{self, Enumeration, RootKind, XiPolicy};
use crate::puiseux::{self, Degree, PuiseuxSeries, RootSeries};
use crate::Exp;

fn exp_json(e: Exp) -> Value {
    Value::String(e.to_string())
}

fn resultant_with(
    p: &LaurentPoly,
    q: &LaurentPoly,
    method: fn(&bivariate::YPoly, &bivariate::YPoly, &Tower) -> crate::field::UniPoly,
) -> Result<LaurentPoly> {
    let (big_l, tower) = bivariate::common_frame(p, q)?;
    let (a, sa) = bivariate::to_ypoly(p, big_l, &tower)?;
    let (b, sb) = bivariate::to_ypoly(q, big_l, &tower)?;
    let r = method(&a, &b, &tower);
    let (n, m) = (p.deg_y().unwrap_or(0), q.deg_y().unwrap_or(0));
    bivariate::t_poly_to_laurent(&r, big_l, sa * m + sb * n)
}

/// `Res_y(P, Q)` by the subresultant remainder sequence.
pub fn resultant_y(p: &LaurentPoly, q: &LaurentPoly) -> Result<LaurentPoly> {
    resultant_with(p, q, bivariate::subresultant)
}

/// `Res_y(P, Q)` as a Sylvester determinant; the reference for [`resultant_y`].
pub fn sylvester_resultant(p: &LaurentPoly, q: &LaurentPoly) -> Result<LaurentPoly> {
    resultant_with(p, q, bivariate::sylvester)
}

/// `I(P, Q) = deg_x Res_y(P, Q)`.
pub fn i_number(p: &LaurentPoly, q: &LaurentPoly) -> Result<Exp> {
    resultant_y(p, q)?.deg_x().ok_or(Error::ResultantZero)
}

fn certified(d: Degree) -> Result<Exp> {
    match d {
        Degree::Finite(e) => Ok(e),
        Degree::NegInfinity => Err(Error::ResultantZero),
    }
}

/// `Σ_{α ∈ 𝓡(P)} deg_x Q(α) + deg_x(lc_y P)·deg_y Q`, from Puiseux expansions.
/// Equals `I(P, Q)` when the resultant is nonzero.
pub fn sum_degrees_at_roots(p: &LaurentPoly, q: &LaurentPoly) -> Result<Exp> {
    let p = &p.lift(&p.tower().join(q.tower())?)?;
    let n = p.deg_y().ok_or(Error::ZeroPolynomial)?;
    let m = q.deg_y().ok_or(Error::ZeroPolynomial)?;
    let lead = p.y_coeffs()[n as usize].deg_x().unwrap();
    let base = lead * Exp::from_integer(m);
    if n == 0 {
        return Ok(base);
    }
    puiseux::with_adaptive_depth(p, None, puiseux::DEFAULT_STEP_LIMIT, |roots| {
        let mut total = base;
        for r in roots {
            let v = puiseux::eval_series(q, &r.series)?.certified_degree()?;
            total += certified(v)? * Exp::from_integer(r.count() as i64);
        }
        Ok(total)
    })
}

/// Sum of `deg_x Q(α)` over the roots `α ∈ D_τ^P`, times the weight of `τ`.
fn node_degree_sum(p: &LaurentPoly, q: &LaurentPoly, tau: &piroot::PiRoot, weight: usize) -> Result<Exp> {
    let step = -puiseux::default_depth(p);
    let mut depth = (tau.j0 - Exp::one()).min(puiseux::default_depth(p));
    let mut last = None;
    for _ in 0..=puiseux::DEFAULT_STEP_LIMIT {
        let roots = piroot::roots_in_node(p, tau, depth)?;
        let sum = roots.iter().try_fold(Exp::zero(), |acc, r: &RootSeries| -> Result<Exp> {
            let v = certified(puiseux::eval_series(q, &r.series)?.certified_degree()?)?;
            Ok(acc + v * Exp::from_integer(r.count() as i64))
        });
        match sum {
            Ok(s) => return Ok(s * Exp::from_integer(weight as i64)),
            Err(e @ Error::Undecided { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
        depth -= step;
    }
    Err(last.unwrap())
}

/// One row of the per-τ table.
#[derive(Clone, Debug)]
pub struct RootRow {
    pub prefix: String,
    pub j0: Exp,
    pub kind: RootKind,
    /// `|D_τ^P|` times the number of conjugate copies.
    pub count: usize,
    pub lambda: Exp,
    pub lambda_q: Option<Exp>,
    pub delta: Option<Exp>,
}

impl RootRow {
    pub fn to_json(&self) -> Value {
        json!({
            "prefix": self.prefix,
            "j0": exp_json(self.j0),
            "kind": self.kind.as_str(),
            "count": self.count,
            "lambda": exp_json(self.lambda),
            "lambda_q": self.lambda_q.map(exp_json).unwrap_or(Value::Null),
            "delta": self.delta.map(exp_json).unwrap_or(Value::Null),
        })
    }
}

fn rows(e: &Enumeration) -> Vec<RootRow> {
    e.finals
        .iter()
        .map(|f| RootRow {
            prefix: f.base.prefix.iter().map(|(x, c)| format!("({c})*x^({x})")).collect::<Vec<_>>().join(" + "),
            j0: f.base.j0,
            kind: f.kind,
            count: f.total(),
            lambda: f.base.lambda,
            lambda_q: f.lambda_q,
            delta: f.delta,
        })
        .collect()
}

/// `I_M = Σ_{τ ∈ P_M} |D_τ^P| λ_τ^Q` with the expansion-based oracle
/// `Σ_{α major} deg_x Q(α)`.
#[derive(Clone, Debug)]
pub struct MajorReport {
    pub xi: FieldElem,
    pub value: Exp,
    pub oracle: Exp,
    pub rows: Vec<RootRow>,
}

impl MajorReport {
    pub fn to_json(&self) -> Value {
        json!({
            "xi": self.xi.to_json(),
            "i_major": exp_json(self.value),
            "oracle": exp_json(self.oracle),
            "consistent": self.value == self.oracle,
            "roots": self.rows.iter().map(RootRow::to_json).collect::<Vec<_>>(),
        })
    }
}

/// `P + ξ` over the field of both polynomials.
fn shifted_p(p: &LaurentPoly, q: &LaurentPoly, xi: &FieldElem) -> Result<LaurentPoly> {
    let p = p.lift(&p.tower().join(q.tower())?)?;
    if xi.is_zero() {
        Ok(p)
    } else {
        p.try_add(&LaurentPoly::constant(xi.clone()))
    }
}

pub fn i_major(p: &LaurentPoly, q: &LaurentPoly, policy: &XiPolicy) -> Result<MajorReport> {
    let e = piroot::enumerate_final(p, Some(q), policy)?;
    major_from(p, q, &e)
}

fn major_from(p: &LaurentPoly, q: &LaurentPoly, e: &Enumeration) -> Result<MajorReport> {
    let px = shifted_p(p, q, &e.xi)?;
    let mut value = Exp::zero();
    let mut oracle = Exp::zero();
    for f in e.finals.iter().filter(|f| f.kind == RootKind::Major) {
        value += Exp::from_integer(f.total() as i64) * f.lambda_q.unwrap();
        oracle += node_degree_sum(&px, q, &f.base, f.weight)?;
    }
    Ok(MajorReport { xi: e.xi.clone(), value, oracle, rows: rows(e) })
}

/// Both sides of an identity or inequality, computed independently.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sides {
    pub lhs: Exp,
    pub rhs: Exp,
}

impl Sides {
    pub fn to_json(&self, relation: &str) -> Value {
        let holds = match relation {
            "=" => self.lhs == self.rhs,
            _ => self.lhs <= self.rhs,
        };
        json!({"lhs": exp_json(self.lhs), "rhs": exp_json(self.rhs), "relation": relation, "holds": holds})
    }
}

/// `I_m = 1 − Σ_{τ ∈ P_m}(δ_τ + 1)` with the two supporting relations.
///
/// `inter1`: `I(P, P_y Q)` against `deg_y P − Σ_{P_m} |D_τ^P|(1 + δ_τ)`.
/// `inter2`: `I(P, P_y)` against `deg_y P − 1 − Σ_{P_m}(|D_τ^P| − 1)(δ_τ + 1)`.
#[derive(Clone, Debug)]
pub struct MinorReport {
    pub xi: FieldElem,
    pub value: Exp,
    pub i_resultant: Exp,
    pub inter1: Sides,
    pub inter2: Sides,
    /// `I(P, P_y Q) − I(P, P_y)`, which equals `I(P, Q)` by multiplicativity.
    pub decomposition: Exp,
    pub rows: Vec<RootRow>,
}

impl MinorReport {
    pub fn to_json(&self) -> Value {
        json!({
            "xi": self.xi.to_json(),
            "i_minor_bound": exp_json(self.value),
            "i_resultant": exp_json(self.i_resultant),
            "bound_holds": self.value <= self.i_resultant,
            "inter1": self.inter1.to_json("="),
            "inter2": self.inter2.to_json("<="),
            "decomposition": exp_json(self.decomposition),
            "roots": self.rows.iter().map(RootRow::to_json).collect::<Vec<_>>(),
        })
    }
}

pub fn i_minor_bound(p: &LaurentPoly, q: &LaurentPoly, policy: &XiPolicy) -> Result<MinorReport> {
    let e = piroot::enumerate_final(p, Some(q), policy)?;
    minor_from(p, q, &e)
}

fn minor_from(p: &LaurentPoly, q: &LaurentPoly, e: &Enumeration) -> Result<MinorReport> {
    let px = shifted_p(p, q, &e.xi)?;
    let n = Exp::from_integer(px.deg_y().unwrap());
    let one = Exp::one();
    let mut value = one;
    let mut rhs1 = n;
    let mut rhs2 = n - one;
    for f in e.finals.iter().filter(|f| f.kind == RootKind::Minor) {
        let d = f.delta.unwrap();
        let (w, c) = (Exp::from_integer(f.weight as i64), Exp::from_integer(f.base.count as i64));
        value -= w * (d + one);
        rhs1 -= w * c * (one + d);
        rhs2 -= w * (c - one) * (d + one);
    }
    let py = px.partial_y();
    let i_pyq = i_number(&px, &py.try_mul(q)?)?;
    let i_py = i_number(&px, &py)?;
    Ok(MinorReport {
        xi: e.xi.clone(),
        value,
        i_resultant: i_number(&px, q)?,
        inter1: Sides { lhs: i_pyq, rhs: rhs1 },
        inter2: Sides { lhs: i_py, rhs: rhs2 },
        decomposition: i_pyq - i_py,
        rows: rows(e),
    })
}

/// Everything about one pair: `I(P, Q)`, `I_M`, `I_m` and the per-τ table.
#[derive(Clone, Debug)]
pub struct IntersectionReport {
    pub major: MajorReport,
    pub minor: MinorReport,
}

pub fn intersection_report(p: &LaurentPoly, q: &LaurentPoly, policy: &XiPolicy) -> Result<IntersectionReport> {
    let e = piroot::enumerate_final(p, Some(q), policy)?;
    Ok(IntersectionReport { major: major_from(p, q, &e)?, minor: minor_from(p, q, &e)? })
}

impl IntersectionReport {
    pub fn to_json(&self) -> Value {
        json!({
            "i_resultant": exp_json(self.minor.i_resultant),
            "i_major": exp_json(self.major.value),
            "i_minor_bound": exp_json(self.minor.value),
            "major": self.major.to_json(),
            "minor": self.minor.to_json(),
        })
    }
}

/// Outcome of a check on a truncated series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    True,
    False,
    Inconclusive,
}

impl Check {
    pub fn as_str(self) -> &'static str {
        match self {
            Check::True => "true",
            Check::False => "false",
            Check::Inconclusive => "inconclusive",
        }
    }
}

fn series_derivative(s: &PuiseuxSeries) -> Result<PuiseuxSeries> {
    let terms = s
        .terms()
        .iter()
        .map(|(e, c)| (*e - Exp::one(), c * &FieldElem::from_ratio(*e.numer(), *e.denom())))
        .collect();
    PuiseuxSeries::new(terms, s.trunc().map(|t| t - Exp::one()))?.lift(s.tower())
}

/// Whether `Q_y(α)·(P(α))′ − P_y(α)·(Q(α))′` is a nonzero constant, as far as
/// the truncation of `α` certifies.
pub fn jacobian_derivative_check(p: &LaurentPoly, q: &LaurentPoly, alpha: &PuiseuxSeries) -> Result<Check> {
    let ev = |f: &LaurentPoly| puiseux::eval_series(f, alpha);
    let a = ev(&q.partial_y())?.try_mul(&series_derivative(&ev(p)?)?)?;
    let b = ev(&p.partial_y())?.try_mul(&series_derivative(&ev(q)?)?)?;
    let d = a.try_sub(&b)?;
    Ok(match (d.terms(), d.trunc()) {
        ([], None) => Check::False,
        ([], Some(_)) => Check::Inconclusive,
        ([(e, _)], trunc) if e.is_zero() => {
            if trunc.is_none_or(|t| t < Exp::zero()) {
                Check::True
            } else {
                Check::Inconclusive
            }
        }
        ([(e, _), ..], trunc) if e.is_zero() && trunc.is_some_and(|t| t >= Exp::zero()) => Check::Inconclusive,
        _ => Check::False,
    })
}

/// One corner entry of a shape computation: `roots` final π-roots, each with
/// `m·b` roots and `λ^Q = k/l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShapeCorner {
    pub roots: i64,
    pub b: i64,
    pub k: i64,
    pub l: i64,
}

/// A value `coeff·m`, linear in the shape multiplier `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinearInM {
    pub coeff: Exp,
}

impl LinearInM {
    pub fn eval(&self, m: i64) -> Exp {
        self.coeff * Exp::from_integer(m)
    }
}

impl fmt::Display for LinearInM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            write!(f, "0")
        } else if self.coeff.is_one() {
            write!(f, "m")
        } else if self.coeff.is_integer() {
            write!(f, "{}*m", self.coeff)
        } else {
            write!(f, "({})*m", self.coeff)
        }
    }
}

/// `I_M = Σ roots·m·b·(k/l)`, symbolic in `m`.
pub fn shape_level_im(corners: &[ShapeCorner]) -> Result<LinearInM> {
    let mut coeff = Exp::zero();
    for c in corners {
        if c.l <= 0 || c.k < 1 || c.b < 1 || c.roots < 0 {
            return Err(Error::Domain(format!("invalid corner entry {c:?}")));
        }
        coeff += Exp::from_integer(c.roots * c.b) * Exp::new(c.k, c.l);
    }
    Ok(LinearInM { coeff })
}

#[cfg(test)]
mod tests;
