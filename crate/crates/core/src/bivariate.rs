//! Polynomials in `y` with coefficients in `K[t]`, `t = x^{1/L}`.
//!
//! This is the representation used for resultants, gcds in `y` and
//! squarefree decomposition. Laurent polynomials are moved into it by
//! multiplying with a power of `t`.

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::field::{FieldElem, Tower, UniPoly, Var};
use crate::laurent::{ExponentPair, LaurentPoly};
use crate::Exp;

/// Coefficients in `y`, constant term first; each entry is a polynomial in `t`.
pub(crate) type YPoly = Vec<UniPoly>;

/// Moves `p` into `K[t][y]` with `t = x^{1/big_l}`. Returns the shift `s`
/// such that the result equals `t^s · p`.
pub(crate) fn to_ypoly(p: &LaurentPoly, big_l: i64, tower: &Tower) -> Result<(YPoly, i64)> {
    let min_t = p.min_x().map(|m| (m * big_l).to_integer()).unwrap_or(0);
    let shift = -min_t;
    let n = p.deg_y().unwrap_or(0) as usize;
    let mut rows: Vec<BTreeMap<usize, FieldElem>> = vec![BTreeMap::new(); n + 1];
    for (e, c) in p.terms() {
        let k = (e.x * big_l).to_integer() + shift;
        rows[e.y as usize].insert(k as usize, c.lift(tower)?);
    }
    let out = rows
        .into_iter()
        .map(|row| {
            let deg = row.keys().max().copied().map_or(0, |m| m + 1);
            let mut cs = vec![FieldElem::zero().lift(tower).unwrap(); deg];
            for (k, c) in row {
                cs[k] = c;
            }
            UniPoly::new(&cs, Var::T).map(|u| if u.is_zero() { UniPoly::zero(tower, Var::T) } else { u.lift(tower).unwrap() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((trim(out), shift))
}

/// Inverse of [`to_ypoly`] for a polynomial free of `y`: `t^k ↦ x^{(k - shift)/big_l}`.
pub(crate) fn t_poly_to_laurent(u: &UniPoly, big_l: i64, shift: i64) -> Result<LaurentPoly> {
    let terms = u
        .coeffs()
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (ExponentPair::new(Exp::new(k as i64 - shift, big_l), 0), c));
    let p = LaurentPoly::from_terms(terms)?;
    let p = if p.is_zero() { p } else { p.lift(u.tower())? };
    Ok(p.rebased(big_l))
}

pub(crate) fn ypoly_to_laurent(a: &YPoly, big_l: i64, shift: i64) -> Result<LaurentPoly> {
    let mut terms = Vec::new();
    for (v, u) in a.iter().enumerate() {
        for (k, c) in u.coeffs().into_iter().enumerate() {
            if !c.is_zero() {
                terms.push((ExponentPair::new(Exp::new(k as i64 - shift, big_l), v as i64), c));
            }
        }
    }
    Ok(LaurentPoly::from_terms(terms)?.rebased(big_l))
}

fn trim(mut a: YPoly) -> YPoly {
    while a.last().is_some_and(UniPoly::is_zero) {
        a.pop();
    }
    a
}

fn deg(a: &YPoly) -> Option<usize> {
    a.len().checked_sub(1)
}

fn mul_scalar(a: &YPoly, c: &UniPoly) -> YPoly {
    trim(a.iter().map(|u| u.try_mul(c).unwrap()).collect())
}

fn div_scalar(a: &YPoly, c: &UniPoly) -> YPoly {
    a.iter()
        .map(|u| {
            let (q, r) = u.divrem(c).unwrap();
            debug_assert!(r.is_zero(), "inexact division in K[t]");
            q
        })
        .collect()
}

fn sub(a: &YPoly, b: &YPoly, tower: &Tower) -> YPoly {
    let n = a.len().max(b.len());
    let z = UniPoly::zero(tower, Var::T);
    trim((0..n).map(|i| a.get(i).unwrap_or(&z).try_sub(b.get(i).unwrap_or(&z)).unwrap()).collect())
}

pub(crate) fn derivative(a: &YPoly) -> YPoly {
    trim(a.iter().enumerate().skip(1).map(|(k, u)| u.scale(&FieldElem::from_int(k as i64)).unwrap()).collect())
}

/// Pseudo-remainder: `lc(b)^{deg a - deg b + 1} a mod b`.
fn prem(a: &YPoly, b: &YPoly) -> YPoly {
    let db = deg(b).unwrap();
    let lc = b[db].clone();
    let mut r = a.clone();
    let mut steps = deg(a).unwrap() + 1 - db;
    while let Some(dr) = deg(&r) {
        if dr < db {
            break;
        }
        let c = r[dr].clone();
        let mut next = mul_scalar(&r, &lc);
        for (j, bj) in b.iter().enumerate() {
            let t = bj.try_mul(&c).unwrap();
            next[dr - db + j] = next[dr - db + j].try_sub(&t).unwrap();
        }
        r = trim(next);
        steps -= 1;
    }
    let factor = lc.pow(steps as u32);
    mul_scalar(&r, &factor)
}

fn pow(u: &UniPoly, e: usize) -> UniPoly {
    u.pow(e as u32)
}

fn exact_div(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let (q, r) = a.divrem(b).unwrap();
    debug_assert!(r.is_zero(), "inexact division in K[t]");
    q
}

/// Resultant in `y` by the subresultant remainder sequence.
pub(crate) fn subresultant(a: &YPoly, b: &YPoly, tower: &Tower) -> UniPoly {
    let one = UniPoly::constant(FieldElem::one(), Var::T).lift(tower).unwrap();
    let zero = UniPoly::zero(tower, Var::T);
    let (Some(da), Some(db)) = (deg(a), deg(b)) else {
        return zero;
    };
    let (mut a, mut b, mut s) = if da < db { (b.clone(), a.clone(), if da * db % 2 == 1 { -1 } else { 1 }) } else { (a.clone(), b.clone(), 1) };
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let (da, db) = (deg(&a).unwrap(), deg(&b).unwrap());
        if db == 0 {
            // h^{1 - da} · lc(b)^{da}
            let num = pow(&b[0], da);
            let res = if da == 0 { one.clone() } else { exact_div(&num, &pow(&h, da - 1)) };
            return if s < 0 { res.neg() } else { res };
        }
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            return zero;
        }
        let denom = g.try_mul(&pow(&h, delta)).unwrap();
        a = b;
        b = div_scalar(&r, &denom);
        g = a[deg(&a).unwrap()].clone();
        h = if delta == 0 {
            h
        } else {
            exact_div(&pow(&g, delta), &pow(&h, delta - 1))
        };
    }
}

/// Resultant in `y` as the determinant of the Sylvester matrix (rows of `a`
/// first), computed with fraction-free elimination.
pub(crate) fn sylvester(a: &YPoly, b: &YPoly, tower: &Tower) -> UniPoly {
    let zero = UniPoly::zero(tower, Var::T);
    let one = UniPoly::constant(FieldElem::one(), Var::T).lift(tower).unwrap();
    let (Some(n), Some(m)) = (deg(a), deg(b)) else {
        return zero;
    };
    let size = n + m;
    if size == 0 {
        return one;
    }
    let mut mat: Vec<Vec<UniPoly>> = vec![vec![zero.clone(); size]; size];
    for r in 0..m {
        for (k, c) in a.iter().enumerate() {
            mat[r][r + n - k] = c.clone();
        }
    }
    for r in 0..n {
        for (k, c) in b.iter().enumerate() {
            mat[m + r][r + m - k] = c.clone();
        }
    }
    bareiss(mat, tower)
}

fn bareiss(mut mat: Vec<Vec<UniPoly>>, tower: &Tower) -> UniPoly {
    let size = mat.len();
    let mut sign = false;
    let mut prev = UniPoly::constant(FieldElem::one(), Var::T).lift(tower).unwrap();
    for k in 0..size {
        if mat[k][k].is_zero() {
            match (k + 1..size).find(|&i| !mat[i][k].is_zero()) {
                Some(i) => {
                    mat.swap(i, k);
                    sign = !sign;
                }
                None => return UniPoly::zero(tower, Var::T),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let t = mat[k][k].try_mul(&mat[i][j]).unwrap().try_sub(&mat[i][k].try_mul(&mat[k][j]).unwrap()).unwrap();
                mat[i][j] = exact_div(&t, &prev);
            }
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

fn content(a: &YPoly, tower: &Tower) -> UniPoly {
    let mut g = UniPoly::zero(tower, Var::T);
    for u in a {
        g = g.gcd(u).unwrap();
    }
    g
}

/// Primitive part with respect to `K[t]`, normalized so that the leading
/// coefficient in `y` is monic in `t`.
pub(crate) fn primitive(a: &YPoly, tower: &Tower) -> YPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let c = content(a, tower);
    let mut out = div_scalar(a, &c);
    let lc = out.last().unwrap().leading();
    let inv = lc.inv().unwrap();
    out = out.into_iter().map(|u| u.scale(&inv).unwrap()).collect();
    out
}

/// Exact quotient in `K[t][y]`; `b` must be primitive and divide `a`.
pub(crate) fn exact_div_y(a: &YPoly, b: &YPoly, tower: &Tower) -> Result<YPoly> {
    let db = deg(b).ok_or(Error::DivisionByZero)?;
    let mut r = a.clone();
    let Some(da) = deg(a) else {
        return Ok(Vec::new());
    };
    if da < db {
        return Err(Error::Internal("inexact division in y".into()));
    }
    let mut q = vec![UniPoly::zero(tower, Var::T); da - db + 1];
    while let Some(dr) = deg(&r) {
        if dr < db {
            return Err(Error::Internal("inexact division in y".into()));
        }
        let (c, rem) = r[dr].divrem(&b[db])?;
        if !rem.is_zero() {
            return Err(Error::Internal("inexact division in y".into()));
        }
        for (j, bj) in b.iter().enumerate() {
            let t = bj.try_mul(&c)?;
            r[dr - db + j] = r[dr - db + j].try_sub(&t)?;
        }
        q[dr - db] = c;
        r = trim(r);
    }
    Ok(trim(q))
}

/// Primitive gcd in `K[t][y]`.
pub(crate) fn gcd_y(a: &YPoly, b: &YPoly, tower: &Tower) -> YPoly {
    let (mut x, mut y) = (primitive(a, tower), primitive(b, tower));
    if deg(&x) < deg(&y) {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = prem(&x, &y);
        x = y;
        y = primitive(&r, tower);
    }
    x
}

/// Whether `f(t₀, y)` is squarefree of full degree for a small integer `t₀`.
/// A repeated factor of `f` over `K(t)` survives every specialization that
/// keeps the leading coefficient, so a hit certifies `f` squarefree.
fn squarefree_at_some_point(f: &YPoly, tower: &Tower) -> Result<bool> {
    let lead = f.last().expect("nonzero");
    for t0 in 0..6 {
        let t0 = FieldElem::from_int(t0).lift(tower)?;
        if lead.eval(&t0)?.is_zero() {
            continue;
        }
        let cs = f.iter().map(|c| c.eval(&t0)).collect::<Result<Vec<_>>>()?;
        if UniPoly::new(&cs, Var::Z)?.lift(tower)?.is_squarefree() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Squarefree decomposition in `y` over `K(t)`: primitive parts with multiplicities.
pub(crate) fn squarefree_y(p: &YPoly, tower: &Tower) -> Result<Vec<(YPoly, usize)>> {
    if deg(p).is_none_or(|d| d == 0) {
        return Ok(Vec::new());
    }
    // the content in t does not affect squarefreeness in y
    if squarefree_at_some_point(p, tower)? {
        return Ok(vec![(p.clone(), 1)]);
    }
    let f = primitive(p, tower);
    let df = derivative(&f);
    let a0 = gcd_y(&f, &df, tower);
    let mut b = exact_div_y(&f, &a0, tower)?;
    let c = exact_div_y(&df, &a0, tower)?;
    let mut d = sub(&c, &derivative(&b), tower);
    let mut out = Vec::new();
    let mut k = 1;
    while deg(&b).is_some_and(|n| n > 0) {
        let a = gcd_y(&b, &d, tower);
        b = exact_div_y(&b, &a, tower)?;
        let c = exact_div_y(&d, &a, tower)?;
        d = sub(&c, &derivative(&b), tower);
        if deg(&a).is_some_and(|n| n > 0) {
            out.push((a, k));
        }
        k += 1;
    }
    Ok(out)
}

/// Common ring parameter and tower of two polynomials.
pub(crate) fn common_frame(p: &LaurentPoly, q: &LaurentPoly) -> Result<(i64, Tower)> {
    Ok((p.l().lcm(&q.l()), p.tower().join(q.tower())?))
}
