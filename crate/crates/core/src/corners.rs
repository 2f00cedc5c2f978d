//! Lower-side corner analysis: the `ϑ`/`t′` conditions, the `b = 2`
//! criterion and explicit `[G, R] = R^i` certificates.

use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::laurent::{Direction, ExponentPair, LaurentPoly};
use crate::par::{self, Exec};
use crate::Exp;

fn dir_json(d: &Direction) -> Value {
    json!([d.rho(), d.sigma()])
}

/// Whether `(0,−1) < d < (1,−1)`: `ρ > 0` and `ρ + σ < 0`.
fn in_lower_range(d: &Direction) -> bool {
    d.rho() > 0 && d.total() < 0
}

/// A candidate lower corner `(a/l, b)`, `(c/l, d)` with derived data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerData {
    pub a: i64,
    pub l: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    /// `−dir((a/l, b) − (c/l, d))`.
    pub direction: Direction,
    pub n1: i64,
    pub n2: i64,
    /// Minimal positive integer with `ℓ·v(a/l, b) + ρ + σ > 0`.
    pub ell: i64,
    pub s: i64,
}

impl CornerData {
    pub fn new(a: i64, l: i64, b: i64, c: i64, d: i64) -> Result<CornerData> {
        let bad = |m: &str| Err(Error::InvalidCorner(m.into()));
        if l <= 0 {
            return bad("l must be positive");
        }
        if !(a > b * l && b > d && d >= 0) {
            return bad("a/l > b > d ≥ 0 violated");
        }
        if !(a > c && c > 0) {
            return bad("a > c > 0 violated");
        }
        if (b - d) * l >= a - c {
            return bad("b − d < a/l − c/l violated");
        }
        let direction = Direction::of_point(ExponentPair::new(Exp::new(a - c, l), b - d))?.opposite();
        if !in_lower_range(&direction) {
            return bad("direction outside ((0,−1), (1,−1))");
        }
        let (rho, sigma) = (direction.rho(), direction.sigma());
        let v = direction.weight(&ExponentPair::new(Exp::new(a, l), b));
        if v <= Exp::zero() {
            return bad("v(a/l, b) > 0 violated");
        }
        // ℓ·v + ρ + σ > 0 with ρ + σ < 0
        let need = Exp::from_integer(-(rho + sigma)) / v;
        let ell = need.floor().to_integer() + 1;
        let num = rho * a + sigma * b * l;
        let s = num / num.gcd(&(rho * l + sigma * l));
        let s = s.abs();
        if s >= b {
            return bad("s < b violated");
        }
        Ok(CornerData { a, l, b, c, d, direction, n1: (a - c).gcd(&(b - d)), n2: c.gcd(&d), ell, s })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "a": self.a, "l": self.l, "b": self.b, "c": self.c, "d": self.d,
            "direction": dir_json(&self.direction),
            "n1": self.n1, "n2": self.n2, "ell": self.ell, "s": self.s,
        })
    }
}

/// A value of `t′` meeting the direction equality with `ϑ = s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaHit {
    pub t_prime: i64,
    /// `ϑ ≤ N₁`.
    pub condition: bool,
    /// `d > 0` and `ϑ | N₂`.
    pub condition_prime: bool,
    /// `ϑ/t′ = −(ρa/l + σb)/(ρ + σ)`.
    pub ratio_identity: bool,
}

#[derive(Clone, Debug)]
pub struct ThetaReport {
    pub corner: CornerData,
    pub theta: i64,
    pub hits: Vec<ThetaHit>,
}

impl ThetaReport {
    pub fn holds(&self) -> bool {
        self.hits.iter().any(|h| h.condition || h.condition_prime)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "corner": self.corner.to_json(),
            "theta": self.theta,
            "holds": self.holds(),
            "hits": self.hits.iter().map(|h| json!({
                "t_prime": h.t_prime,
                "condition": h.condition,
                "condition_prime": h.condition_prime,
                "ratio_identity": h.ratio_identity,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Scans `t′ ∈ [1, ℓϑ)` with `ϑ = s` for `(ρ,σ) = −dir(t′(c/l, d) + ϑ(1,1))`.
pub fn theta_condition(cd: &CornerData) -> ThetaReport {
    let theta = cd.s;
    let (rho, sigma) = (cd.direction.rho(), cd.direction.sigma());
    let target = -(Exp::from_integer(rho) * Exp::new(cd.a, cd.l) + Exp::from_integer(sigma * cd.b)) / Exp::from_integer(rho + sigma);
    let mut hits = Vec::new();
    for t in 1..cd.ell * theta {
        let pt = ExponentPair::new(Exp::new(t * cd.c, cd.l) + Exp::from_integer(theta), t * cd.d + theta);
        let Ok(dir) = Direction::of_point(pt) else {
            continue;
        };
        if dir.opposite() != cd.direction {
            continue;
        }
        hits.push(ThetaHit {
            t_prime: t,
            condition: theta <= cd.n1,
            condition_prime: cd.d > 0 && cd.n2 % theta == 0,
            ratio_identity: Exp::new(theta, t) == target,
        });
    }
    ThetaReport { corner: cd.clone(), theta, hits }
}

/// All `Δ` with `l < Δ < a/2` and `(a − 2Δ) | (Δ − l)`.
pub fn b2_decide(a: i64, l: i64) -> Result<Vec<i64>> {
    if l <= 0 || a <= 2 * l {
        return Err(Error::Domain("b2_decide needs a/l > 2".into()));
    }
    Ok((l + 1..)
        .take_while(|delta| 2 * delta < a)
        .filter(|delta| (delta - l) % (a - 2 * delta) == 0)
        .collect())
}

/// The same set by solving `k₁(a − 2Δ) = Δ − l` for `Δ = (l + k₁a)/(2k₁ + 1)`.
pub fn b2_brute_force(a: i64, l: i64) -> Vec<i64> {
    let mut out: Vec<i64> = (1..=a)
        .filter_map(|k1| {
            let num = l + k1 * a;
            (num % (2 * k1 + 1) == 0).then(|| num / (2 * k1 + 1))
        })
        .filter(|&delta| l < delta && 2 * delta < a)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Results of the exact checks on a witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessChecks {
    pub bracket: bool,
    pub en: bool,
    pub st: bool,
    pub v_positive: bool,
    pub i_formula: bool,
    pub direction: bool,
    pub theta: bool,
}

impl WitnessChecks {
    pub fn all(&self) -> bool {
        self.bracket && self.en && self.st && self.v_positive && self.i_formula && self.direction && self.theta
    }
}

/// `R = x^{c/l} y + x^{a/l} y²` and `G` with `[G, R] = R^{k₁+1}`.
#[derive(Clone, Debug)]
pub struct CornerWitness {
    pub a: i64,
    pub l: i64,
    pub delta: i64,
    pub c: i64,
    pub k1: i64,
    pub r: LaurentPoly,
    pub g: LaurentPoly,
    pub i: i64,
    pub direction: Direction,
    pub checks: WitnessChecks,
}

impl CornerWitness {
    pub fn verified(&self) -> bool {
        self.checks.all()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "a": self.a, "l": self.l, "delta": self.delta, "c": self.c, "k1": self.k1, "i": self.i,
            "direction": dir_json(&self.direction),
            "R": self.r.to_json(),
            "G": self.g.to_json(),
            "R_text": self.r.to_string(),
            "G_text": self.g.to_string(),
            "verified": self.verified(),
            "checks": {
                "bracket": self.checks.bracket, "en": self.checks.en, "st": self.checks.st,
                "v_positive": self.checks.v_positive, "i_formula": self.checks.i_formula,
                "direction": self.checks.direction, "theta": self.checks.theta,
            },
        })
    }

    pub fn csv_row(&self) -> String {
        format!("{},{},{},{},{},{}", self.a, self.l, self.delta, self.c, self.k1, self.verified())
    }
}

pub const CSV_HEADER: &str = "a,l,delta,c,k1,verified";

fn binomial(n: i64, k: i64) -> i64 {
    (0..k).fold(1i64, |acc, j| acc * (n - j) / (j + 1))
}

/// Builds and verifies the witness for `(a, l, Δ)`.
pub fn b2_construct(a: i64, l: i64, delta: i64) -> Result<CornerWitness> {
    if !(l > 0 && l < delta && 2 * delta < a) {
        return Err(Error::InvalidCorner("l < Δ < a/2 violated".into()));
    }
    if (delta - l) % (a - 2 * delta) != 0 {
        return Err(Error::InvalidCorner("(a − 2Δ) ∤ (Δ − l)".into()));
    }
    let c = a - delta;
    let k1 = (delta - l) / (a - 2 * delta);
    let one = FieldElem::one();
    let r = LaurentPoly::monomial(one.clone(), Exp::new(c, l), 1)?.try_add(&LaurentPoly::monomial(one, Exp::new(a, l), 2)?)?;
    // g(z) = Σ_j C(k₁, j) z^{k₁+j+1}/(k₁+j+1), z = x^{Δ/l} y
    let scale = Exp::new(l, 2 * delta - a);
    let mut g = LaurentPoly::zero();
    for j in 0..=k1 {
        let e = k1 + j + 1;
        let coef = scale * Exp::new(binomial(k1, j), e);
        let term = LaurentPoly::monomial(FieldElem::from_ratio(*coef.numer(), *coef.denom()), Exp::new(e * delta, l), e)?;
        g = g.try_add(&term)?;
    }
    let direction = Direction::of_point(ExponentPair::new(Exp::new(delta, l), 1))?.opposite();
    let lf = r.leading_form(&direction)?;
    let v = r.valuation(&direction)?;
    let i_formula = (Exp::one() - Exp::from_integer(direction.total()) / v).ceil().to_integer();
    let theta = CornerData::new(a, l, 2, c, 1).map(|cd| {
        let rep = theta_condition(&cd);
        cd.s == 1 && rep.hits.iter().any(|h| h.t_prime < cd.ell && (h.condition || h.condition_prime))
    });
    let checks = WitnessChecks {
        bracket: g.bracket(&r)? == r.pow((k1 + 1) as u32),
        en: lf.en == ExponentPair::new(Exp::new(a, l), 2),
        st: lf.st == ExponentPair::new(Exp::new(c, l), 1),
        v_positive: v > Exp::zero() && v == Exp::new(a - 2 * delta, l) * Exp::from_integer(direction.rho()),
        i_formula: i_formula == k1 + 1,
        direction: direction == Direction::new(l, -delta)?,
        theta: theta.unwrap_or(false),
    };
    Ok(CornerWitness { a, l, delta, c, k1, r, g, i: k1 + 1, direction, checks })
}

/// One `(a, l)` cell of the corner grid.
#[derive(Clone, Debug)]
pub struct GridCell {
    pub a: i64,
    pub l: i64,
    pub deltas: Vec<i64>,
    pub brute: Vec<i64>,
    pub witnesses: Vec<CornerWitness>,
}

impl GridCell {
    /// Decision agrees with the brute-force scan and every witness verifies.
    pub fn ok(&self) -> bool {
        self.deltas == self.brute && self.witnesses.len() == self.deltas.len() && self.witnesses.iter().all(CornerWitness::verified)
    }
}

/// Runs the `b = 2` decision and construction over `l ≤ l_max`, `2l < a ≤ a_max`.
pub fn corner_grid(a_max: i64, l_max: i64, exec: Exec) -> Result<Vec<GridCell>> {
    let cells: Vec<(i64, i64)> = (1..=l_max).flat_map(|l| (2 * l + 1..=a_max).map(move |a| (a, l))).collect();
    let out = par::map(exec, &cells, |&(a, l)| -> Result<GridCell> {
        let deltas = b2_decide(a, l)?;
        let witnesses = deltas.iter().map(|&d| b2_construct(a, l, d)).collect::<Result<Vec<_>>>()?;
        Ok(GridCell { a, l, deltas, brute: b2_brute_force(a, l), witnesses })
    });
    let mut cells = out.into_iter().collect::<Result<Vec<_>>>()?;
    cells.sort_by_key(|c| (c.a, c.l));
    Ok(cells)
}

/// Verdict of a hypothesis-gated check.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub holds: bool,
    pub reason: Option<String>,
    pub residual: Option<LaurentPoly>,
}

/// Whether `[ℓ(P), ℓ(Q)] = 0` in direction `d`, after checking
/// `en(P)/m = en(Q)/n = (a/l, b)` with `a/l > b > 0` and `v(P) > 0`.
pub fn jacobian_vanish_precheck(p: &LaurentPoly, q: &LaurentPoly, d: &Direction, m: i64, n: i64) -> Result<Verdict> {
    let not_met = |s: &str| Err(Error::HypothesisNotMet(s.into()));
    if m <= 0 || n <= 0 {
        return not_met("m, n must be positive");
    }
    let (lp, lq) = (p.leading_form(d)?, q.leading_form(d)?);
    let scale = |e: ExponentPair, k: i64| (e.x / Exp::from_integer(k), Exp::new(e.y, k));
    let (ep, eq) = (scale(lp.en, m), scale(lq.en, n));
    if ep != eq {
        return not_met("en(P)/m ≠ en(Q)/n");
    }
    let (x, y) = ep;
    if !y.is_integer() || !(x > y && y > Exp::zero()) {
        return not_met("a/l > b > 0 fails");
    }
    if p.valuation(d)? <= Exp::zero() {
        return not_met("v(P) > 0 fails");
    }
    let res = lp.form.bracket(&lq.form)?;
    Ok(Verdict { holds: res.is_zero(), reason: None, residual: Some(res) })
}

/// Whether `ℓ(P) = λ x^{u/ρ} (z − μ)^{mb}` with `z = x^{−σ/ρ} y`, for a
/// direction with `ρ + σ > 0`.
pub fn positive_dir_shape_check(p: &LaurentPoly, d: &Direction, m: i64) -> Result<Verdict> {
    if d.rho() <= 0 || d.total() <= 0 {
        return Err(Error::HypothesisNotMet("needs ρ > 0 and ρ + σ > 0".into()));
    }
    let no = |r: &str| Ok(Verdict { holds: false, reason: Some(r.into()), residual: None });
    if p.l() % d.rho() != 0 {
        return no("ρ|l fails");
    }
    let lf = p.leading_form(d)?;
    let n = lf.en.y;
    if m <= 0 || n % m != 0 {
        return Err(Error::HypothesisNotMet("m does not divide v_{0,1}(en)".into()));
    }
    if lf.st.y != 0 {
        return no("st has positive y-exponent");
    }
    let mut cs = vec![FieldElem::zero(); n as usize + 1];
    for (e, c) in lf.form.terms() {
        cs[e.y as usize] = c;
    }
    let f = crate::field::UniPoly::new(&cs, crate::field::Var::Z)?;
    let lead = f.leading();
    let mu = (-&cs[n as usize - 1]).try_div(&(&lead * &FieldElem::from_int(n)))?;
    let power = crate::field::UniPoly::linear_root(&mu, crate::field::Var::Z).pow(n as u32).scale(&lead)?;
    if power == f && !mu.is_zero() {
        Ok(Verdict { holds: true, reason: None, residual: None })
    } else {
        no("not a power of one linear factor")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_poly;

    fn p(s: &str) -> LaurentPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn theta_example() {
        let cd = CornerData::new(5, 1, 2, 3, 1).unwrap();
        assert_eq!(cd.direction, Direction::new(1, -2).unwrap());
        assert_eq!((cd.s, cd.ell, cd.n1, cd.n2), (1, 2, 1, 1));
        let rep = theta_condition(&cd);
        assert_eq!(rep.hits.len(), 1);
        assert_eq!(rep.hits[0].t_prime, 1);
        assert!(rep.hits[0].condition && rep.hits[0].ratio_identity);
    }

    #[test]
    fn theta_d_zero_only_condition() {
        let cd = CornerData::new(5, 1, 2, 1, 0).unwrap();
        assert_eq!(cd.s, 1);
        let rep = theta_condition(&cd);
        assert!(rep.hits.iter().all(|h| !h.condition_prime));
    }

    #[test]
    fn s_at_least_b_is_rejected() {
        let err = CornerData::new(6, 1, 2, 2, 0).unwrap_err();
        assert_eq!(err, Error::InvalidCorner("s < b violated".into()));
    }

    #[test]
    fn decide_examples() {
        assert_eq!(b2_decide(5, 1).unwrap(), vec![2]);
        assert!(b2_decide(6, 1).unwrap().is_empty());
        assert!(b2_decide(5, 2).unwrap().is_empty());
        assert_eq!(b2_decide(8, 1).unwrap(), vec![3]);
        assert!(b2_decide(4, 2).is_err());
    }

    #[test]
    fn construct_examples() {
        let w = b2_construct(5, 1, 2).unwrap();
        assert_eq!((w.c, w.k1, w.i), (3, 1, 2));
        assert_eq!(w.r, p("x^3*y + x^5*y^2"));
        assert_eq!(w.g, p("-1/2*x^4*y^2 - 1/3*x^6*y^3"));
        assert!(w.verified(), "{:?}", w.checks);
        let w = b2_construct(7, 1, 3).unwrap();
        assert_eq!(w.k1, 2);
        assert_eq!(w.r, p("x^4*y + x^7*y^2"));
        assert_eq!(w.g, p("-(1/3*x^9*y^3 + 1/2*x^12*y^4 + 1/5*x^15*y^5)"));
        assert!(w.verified());
        assert!(b2_construct(6, 1, 2).is_err());
    }

    #[test]
    fn grid_small() {
        let cells = corner_grid(12, 2, Exec::Sequential).unwrap();
        assert!(cells.iter().all(GridCell::ok));
        let rows: Vec<i64> = cells.iter().filter(|c| c.l == 1 && c.a <= 8 && !c.witnesses.is_empty()).map(|c| c.a).collect();
        assert_eq!(rows, vec![5, 7, 8]);
    }

    #[test]
    fn vanish_precheck() {
        let w = b2_construct(5, 1, 2).unwrap();
        let (pp, qq) = (w.r.pow(2), w.r.pow(3));
        let v = jacobian_vanish_precheck(&pp, &qq, &w.direction, 2, 3).unwrap();
        assert!(v.holds);
        let err = jacobian_vanish_precheck(&p("x*y^2"), &p("x*y^2"), &Direction::new(1, -2).unwrap(), 1, 1);
        assert!(matches!(err, Err(Error::HypothesisNotMet(_))));
        let d = Direction::new(1, -1).unwrap();
        let v = jacobian_vanish_precheck(&p("x^3*y + y"), &p("x^3*y + x^2"), &d, 1, 1).unwrap();
        assert!(!v.holds);
    }

    #[test]
    fn positive_shape() {
        let d = Direction::new(1, 1).unwrap();
        assert!(positive_dir_shape_check(&p("x^2*(x^-1*y - 1)^4"), &d, 2).unwrap().holds);
        assert!(!positive_dir_shape_check(&p("x^2*(x^-1*y - 1)^3*(x^-1*y - 2)"), &d, 2).unwrap().holds);
        let d2 = Direction::new(2, 1).unwrap();
        let v = positive_dir_shape_check(&p("y^2 - x + 1"), &d2, 1).unwrap();
        assert_eq!(v.reason.as_deref(), Some("ρ|l fails"));
    }
}
