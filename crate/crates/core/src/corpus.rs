//! Seeded random inputs for the invariant suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::field::{FieldElem, Tower};
use crate::intersection::resultant_y;
use crate::laurent::{ExponentPair, LaurentPoly};
use crate::Exp;

/// Bounds for [`random_pairs`].
#[derive(Clone, Copy, Debug)]
pub struct CorpusShape {
    pub max_deg_y: i64,
    pub max_deg_x: i64,
    /// Maximum number of nonzero terms below the leading `y^n`.
    pub max_terms: usize,
    /// Coefficient parts are drawn from `[−coeff_bound, coeff_bound]`.
    pub coeff_bound: i64,
    pub gaussian: bool,
}

impl Default for CorpusShape {
    fn default() -> Self {
        CorpusShape { max_deg_y: 5, max_deg_x: 5, max_terms: 4, coeff_bound: 3, gaussian: true }
    }
}

fn coefficient(rng: &mut ChaCha8Rng, shape: &CorpusShape) -> FieldElem {
    loop {
        let re = FieldElem::from_int(rng.gen_range(-shape.coeff_bound..=shape.coeff_bound));
        let c = if shape.gaussian && rng.gen_bool(0.5) {
            let im = FieldElem::from_int(rng.gen_range(-shape.coeff_bound..=shape.coeff_bound));
            re.try_add(&im.try_mul(&FieldElem::i()).expect("gaussian")).expect("gaussian")
        } else {
            re
        };
        if !c.is_zero() {
            return c;
        }
    }
}

/// A random polynomial monic in `y` of degree `n`.
pub fn random_monic(rng: &mut ChaCha8Rng, n: i64, shape: &CorpusShape) -> Result<LaurentPoly> {
    let mut terms = vec![(ExponentPair::new(Exp::from_integer(0), n), FieldElem::one())];
    let k = rng.gen_range(1..=shape.max_terms.max(1));
    for _ in 0..k {
        let ey = rng.gen_range(0..n);
        let ex = rng.gen_range(0..=shape.max_deg_x);
        terms.push((ExponentPair::new(Exp::from_integer(ex), ey), coefficient(rng, shape)));
    }
    let p = LaurentPoly::from_terms(terms)?;
    if shape.gaussian {
        p.lift(&Tower::gaussian())
    } else {
        Ok(p)
    }
}

fn squarefree(p: &LaurentPoly) -> Result<bool> {
    if p.deg_y() == Some(1) {
        return Ok(true);
    }
    Ok(!resultant_y(p, &p.partial_y())?.is_zero())
}

/// `count` pairs `(P, Q)`, monic in `y`, squarefree, without common roots and
/// with `P` genuinely depending on `x`.
pub fn random_pairs(seed: u64, count: usize, shape: &CorpusShape) -> Result<Vec<(LaurentPoly, LaurentPoly)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(1..=shape.max_deg_y);
        let m = rng.gen_range(1..=shape.max_deg_y);
        let p = random_monic(&mut rng, n, shape)?;
        let q = random_monic(&mut rng, m, shape)?;
        if p.deg_x().is_none_or(|d| d <= Exp::from_integer(0)) {
            continue;
        }
        if !squarefree(&p)? || !squarefree(&q)? || resultant_y(&p, &q)?.is_zero() {
            continue;
        }
        out.push((p, q));
    }
    Ok(out)
}

fn small_rational(rng: &mut ChaCha8Rng, bound: i64) -> FieldElem {
    loop {
        let n = rng.gen_range(-bound..=bound);
        if n != 0 {
            return FieldElem::from_ratio(n, rng.gen_range(1..=bound));
        }
    }
}

/// A random polynomial over ℚ with `deg_y ≤ max_deg_y`, integer `x`-exponents in
/// `[−1, max_deg_x]` and coefficients `n/d` with `|n|, d ≤ bound`.
pub fn random_rational(rng: &mut ChaCha8Rng, max_deg_y: i64, max_deg_x: i64, bound: i64) -> Result<LaurentPoly> {
    loop {
        let k = rng.gen_range(1..=6);
        let terms = (0..k).map(|_| {
            let e = ExponentPair::new(Exp::from_integer(rng.gen_range(-1..=max_deg_x)), rng.gen_range(0..=max_deg_y));
            (e, small_rational(rng, bound))
        });
        let p = LaurentPoly::from_terms(terms.collect::<Vec<_>>())?;
        if p.deg_y().is_some_and(|d| d >= 1) {
            return Ok(p);
        }
    }
}

/// A random Laurent polynomial with fractional `x`-exponents, for parser tests.
pub fn random_laurent(rng: &mut ChaCha8Rng, gaussian: bool) -> Result<LaurentPoly> {
    let k = rng.gen_range(0..=6);
    let mut terms = Vec::new();
    for _ in 0..k {
        let e = ExponentPair::new(Exp::new(rng.gen_range(-6..=6), rng.gen_range(1..=3)), rng.gen_range(0..=4));
        let mut c = small_rational(rng, 10);
        if gaussian && rng.gen_bool(0.4) {
            c = c.try_add(&small_rational(rng, 10).try_mul(&FieldElem::i())?)?;
        }
        terms.push((e, c));
    }
    LaurentPoly::from_terms(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_well_formed() {
        let shape = CorpusShape::default();
        let a = random_pairs(7, 5, &shape).unwrap();
        let b = random_pairs(7, 5, &shape).unwrap();
        assert_eq!(a, b);
        for (p, q) in &a {
            assert!(p.deg_y().unwrap() <= 5 && q.deg_y().unwrap() <= 5);
            assert!(p.deg_x().unwrap() <= Exp::from_integer(5));
            assert!(!resultant_y(p, q).unwrap().is_zero());
        }
    }
}
