//! Dense univariate polynomial kernels over a tower level.
//!
//! Coefficient vectors are stored constant term first and kept trimmed.

use num_rational::BigRational;

use super::{Repr, Tower};

pub(crate) fn trim(mut v: Vec<Repr>) -> Vec<Repr> {
    while v.last().is_some_and(Repr::is_zero) {
        v.pop();
    }
    v
}

pub(crate) fn add(t: &Tower, a: &[Repr], b: &[Repr]) -> Vec<Repr> {
    let n = a.len().max(b.len());
    let z = Repr::zero();
    trim((0..n).map(|i| t.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect())
}

pub(crate) fn sub(t: &Tower, a: &[Repr], b: &[Repr]) -> Vec<Repr> {
    let n = a.len().max(b.len());
    let z = Repr::zero();
    trim((0..n).map(|i| t.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect())
}

pub(crate) fn scale(t: &Tower, a: &[Repr], c: &Repr) -> Vec<Repr> {
    if c.is_zero() {
        return Vec::new();
    }
    trim(a.iter().map(|x| t.mul(x, c)).collect())
}

pub(crate) fn mul(t: &Tower, a: &[Repr], b: &[Repr]) -> Vec<Repr> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Repr::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let p = t.mul(x, y);
            out[i + j] = t.add(&out[i + j], &p);
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem(t: &Tower, a: &[Repr], b: &[Repr]) -> (Vec<Repr>, Vec<Repr>) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let db = b.len() - 1;
    let lc_inv = t.inv(&b[db]).expect("nonzero leading coefficient");
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![Repr::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let c = t.mul(&r[i], &lc_inv);
        for (j, bj) in b.iter().enumerate() {
            let p = t.mul(&c, bj);
            r[i - db + j] = t.sub(&r[i - db + j], &p);
        }
        q[i - db] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub(crate) fn monic(t: &Tower, a: &[Repr]) -> Vec<Repr> {
    match a.last() {
        None => Vec::new(),
        Some(lc) => {
            let inv = t.inv(lc).unwrap();
            scale(t, a, &inv)
        }
    }
}

/// Monic greatest common divisor (empty for gcd(0, 0)).
pub(crate) fn gcd(t: &Tower, a: &[Repr], b: &[Repr]) -> Vec<Repr> {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let (_, r) = divrem(t, &x, &y);
        x = y;
        y = r;
    }
    monic(t, &x)
}

/// Returns `(g, s, u)` with `s·a + u·b = g`, `g` monic.
pub(crate) fn ext_gcd(t: &Tower, a: &[Repr], b: &[Repr]) -> (Vec<Repr>, Vec<Repr>, Vec<Repr>) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![Repr::one()], Vec::new());
    let (mut u0, mut u1) = (Vec::new(), vec![Repr::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(t, &r0, &r1);
        let s2 = sub(t, &s0, &mul(t, &q, &s1));
        let u2 = sub(t, &u0, &mul(t, &q, &u1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        u0 = std::mem::replace(&mut u1, u2);
    }
    match r0.last() {
        None => (r0, s0, u0),
        Some(lc) => {
            let inv = t.inv(lc).unwrap();
            (scale(t, &r0, &inv), scale(t, &s0, &inv), scale(t, &u0, &inv))
        }
    }
}

pub(crate) fn derivative(t: &Tower, a: &[Repr]) -> Vec<Repr> {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| t.mul(c, &Repr::Rat(super::rat(k as i64))))
            .collect(),
    )
}

pub(crate) fn eval(t: &Tower, a: &[Repr], x: &Repr) -> Repr {
    let mut acc = Repr::zero();
    for c in a.iter().rev() {
        acc = t.add(&t.mul(&acc, x), c);
    }
    acc
}

/// The polynomial `a(z + c)`.
pub(crate) fn shift(t: &Tower, a: &[Repr], c: &Repr) -> Vec<Repr> {
    let mut acc: Vec<Repr> = Vec::new();
    let lin = vec![c.clone(), Repr::one()];
    for coef in a.iter().rev() {
        acc = add(t, &mul(t, &acc, &lin), std::slice::from_ref(coef));
    }
    acc
}

/// Resultant over a field via the Euclidean remainder sequence.
pub(crate) fn resultant(t: &Tower, a: &[Repr], b: &[Repr]) -> Repr {
    if a.is_empty() || b.is_empty() {
        return Repr::zero();
    }
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    let mut acc = Repr::one();
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        if db == 0 {
            return t.mul(&acc, &t.pow(&b[0], da as u64));
        }
        if da == 0 {
            return t.mul(&acc, &t.pow(&a[0], db as u64));
        }
        let (_, r) = divrem(t, &a, &b);
        if r.is_empty() {
            return Repr::zero();
        }
        let dr = r.len() - 1;
        // Res(a, b) = (-1)^{da·db} lc(b)^{da - dr} Res(b, r)
        let mut factor = t.pow(&b[db], (da - dr) as u64);
        if da * db % 2 == 1 {
            factor = t.neg(&factor);
        }
        acc = t.mul(&acc, &factor);
        a = b;
        b = r;
    }
}

/// Newton interpolation through the points `(xs[k], ys[k])`.
pub(crate) fn interpolate(t: &Tower, xs: &[BigRational], ys: &[Repr]) -> Vec<Repr> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for k in (level..n).rev() {
            let diff = t.sub(&dd[k], &dd[k - 1]);
            let den = &xs[k] - &xs[k - level];
            dd[k] = t.mul(&diff, &Repr::Rat(den.recip()));
        }
    }
    let mut acc: Vec<Repr> = Vec::new();
    for k in (0..n).rev() {
        let lin = vec![Repr::Rat(-xs[k].clone()), Repr::one()];
        acc = add(t, &mul(t, &acc, &lin), std::slice::from_ref(&dd[k]));
    }
    acc
}
