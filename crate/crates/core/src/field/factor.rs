//! Irreducible factorization of squarefree polynomials over a tower.
//!
//! Over ℚ the work is delegated to `algebraics`. Above ℚ we use the norm
//! method: shift by a multiple of the top generator until the norm down to
//! the parent level is squarefree, factor the norm there, and recover the
//! factors by gcds.

use algebraics::polynomial::Polynomial;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::{dense, rat, Repr, Tower};
use crate::error::{Error, Result};

const MAX_NORM_SHIFTS: i64 = 64;

/// Monic irreducible factors of a monic squarefree polynomial, in canonical order.
pub(crate) fn factor_squarefree(t: &Tower, f: &[Repr]) -> Result<Vec<Vec<Repr>>> {
    let deg = f.len().checked_sub(1).ok_or(Error::ZeroPolynomial)?;
    let mut out = if deg <= 1 {
        vec![f.to_vec()]
    } else {
        match &t.0 {
            None => factor_rational(f),
            Some(_) => factor_over_level(t, f)?,
        }
    };
    out.sort_by(|a, b| {
        a.len().cmp(&b.len()).then_with(|| {
            a.iter()
                .rev()
                .zip(b.iter().rev())
                .map(|(x, y)| x.canonical_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    });
    Ok(out)
}

fn factor_rational(f: &[Repr]) -> Vec<Vec<Repr>> {
    let rats: Vec<BigRational> = f
        .iter()
        .map(|c| match c {
            Repr::Rat(r) => r.clone(),
            Repr::Ext(_) => unreachable!("extension coefficient at the rational level"),
        })
        .collect();
    let den = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| (r * &den).to_integer()).collect();
    let poly: Polynomial<BigInt> = ints.into_iter().collect();
    let factors = poly.factor();
    let t = Tower::rationals();
    factors
        .polynomial_factors
        .into_iter()
        .map(|pf| {
            let coeffs: Vec<Repr> = pf
                .polynomial
                .into_coefficients()
                .into_iter()
                .map(|c| Repr::Rat(BigRational::from_integer(c)))
                .collect();
            dense::monic(&t, &coeffs)
        })
        .collect()
}

fn factor_over_level(t: &Tower, f: &[Repr]) -> Result<Vec<Vec<Repr>>> {
    let parent = t.parent().unwrap();
    let theta = t.gen_repr();
    for k in 0..MAX_NORM_SHIFTS {
        let s = if k % 2 == 0 { -(k / 2) } else { k / 2 + 1 };
        // g(z) = f(z - s·θ)
        let c = t.mul(&theta, &Repr::Rat(rat(-s)));
        let g = if s == 0 { f.to_vec() } else { dense::shift(t, f, &c) };
        let n = poly_norm(t, &parent, &g);
        let dn = dense::derivative(&parent, &n);
        if dense::gcd(&parent, &n, &dn).len() > 1 {
            continue;
        }
        let nf = factor_squarefree(&parent, &dense::monic(&parent, &n))?;
        if nf.len() == 1 {
            return Ok(vec![f.to_vec()]);
        }
        let back = t.neg(&c);
        let mut out = Vec::with_capacity(nf.len());
        for h in nf {
            let lifted: Vec<Repr> = h.into_iter().map(|r| t.lift_repr(r, parent.depth())).collect();
            let gi = dense::gcd(t, &g, &lifted);
            let fi = if s == 0 { gi } else { dense::shift(t, &gi, &back) };
            out.push(fi);
        }
        return Ok(out);
    }
    Err(Error::Internal("no squarefree norm found".into()))
}

/// Norm of a polynomial over the top level down to the parent level,
/// computed by evaluation at integer points and interpolation.
fn poly_norm(t: &Tower, parent: &Tower, g: &[Repr]) -> Vec<Repr> {
    let dn = (g.len() - 1) * t.degree();
    let xs: Vec<BigRational> = (0..=dn as i64).map(rat).collect();
    let ys: Vec<Repr> = xs
        .iter()
        .map(|x| {
            let v = dense::eval(t, g, &Repr::Rat(x.clone()));
            if v.is_zero() {
                Repr::zero()
            } else {
                t.norm_down(&v)
            }
        })
        .collect();
    let n = dense::interpolate(parent, &xs, &ys);
    debug_assert!(!n.is_empty() && !n.last().unwrap().is_zero());
    n
}
