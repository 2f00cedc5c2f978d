use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::Exp;

/// A support point `(x_exp, y_exp)` of a Laurent polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentPair {
    pub x: Exp,
    pub y: i64,
}

impl ExponentPair {
    pub fn new(x: Exp, y: i64) -> ExponentPair {
        ExponentPair { x, y }
    }

    pub fn int(x: i64, y: i64) -> ExponentPair {
        ExponentPair { x: Exp::from_integer(x), y }
    }
}

impl fmt::Display for ExponentPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Serialize for ExponentPair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.x.to_string(), self.y).serialize(s)
    }
}

/// A direction `(ρ, σ)`: coprime integers, not both zero.
///
/// Directions are ordered by counterclockwise angle, starting just after
/// `(0,-1)`, so that `(1,-1) < (1,0) < (1,1) < (0,1) < (-1,0) < (0,-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Direction {
    rho: i64,
    sigma: i64,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.rho, self.sigma)
    }
}

impl Serialize for Direction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.rho, self.sigma).serialize(s)
    }
}

impl Direction {
    /// Normalizes by a positive factor; errors on `(0,0)`.
    pub fn new(rho: i64, sigma: i64) -> Result<Direction> {
        if rho == 0 && sigma == 0 {
            return Err(Error::Domain("the zero vector is not a direction".into()));
        }
        let g = rho.gcd(&sigma);
        Ok(Direction { rho: rho / g, sigma: sigma / g })
    }

    pub fn rho(&self) -> i64 {
        self.rho
    }

    pub fn sigma(&self) -> i64 {
        self.sigma
    }

    /// The unique direction with `ρ > 0` and `σ/ρ = j`.
    pub fn of_order(j: Exp) -> Direction {
        Direction { rho: *j.denom(), sigma: *j.numer() }
    }

    /// The direction with `ρ·p_x + σ·p_y = 0` and `ρ + σ > 0`.
    pub fn of_point(p: ExponentPair) -> Result<Direction> {
        if p.x == Exp::from_integer(p.y) {
            return Err(Error::Domain(format!("point {p} is proportional to (1,1)")));
        }
        // (ρ,σ) ∝ (p_y, -p_x), scaled to integers
        let den = *p.x.denom();
        let (r, s) = (p.y * den, -*p.x.numer());
        let d = Direction::new(r, s)?;
        Ok(if d.rho + d.sigma > 0 { d } else { d.opposite() })
    }

    pub fn opposite(&self) -> Direction {
        Direction { rho: -self.rho, sigma: -self.sigma }
    }

    /// `σ/ρ` when `ρ > 0`.
    pub fn order(&self) -> Option<Exp> {
        (self.rho > 0).then(|| Exp::new(self.sigma, self.rho))
    }

    /// The weight `ρ·x + σ·y` of a support point.
    pub fn weight(&self, p: &ExponentPair) -> Exp {
        p.x * self.rho + Exp::from_integer(self.sigma * p.y)
    }

    /// `ρ + σ`.
    pub fn total(&self) -> i64 {
        self.rho + self.sigma
    }

    fn rotated(&self) -> (i64, i64) {
        (-self.sigma, self.rho)
    }

    fn class(&self) -> u8 {
        let (u, v) = self.rotated();
        match (u.signum(), v.signum()) {
            (_, 1) => 0,
            (-1, 0) => 1,
            (_, -1) => 2,
            _ => 3,
        }
    }

    /// Whether `self` lies in the half-open interval `]lo, hi]` of the order.
    /// The lower end `(0,-1)` stands for the start of the order.
    pub fn in_interval(&self, lo: &Direction, hi: &Direction) -> bool {
        let lo_ok = (lo.rho == 0 && lo.sigma == -1) || lo < self;
        lo_ok && self <= hi
    }
}

impl Ord for Direction {
    fn cmp(&self, other: &Direction) -> Ordering {
        self.class().cmp(&other.class()).then_with(|| {
            let (a, b) = (self.rotated(), other.rotated());
            let cross = a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128;
            0.cmp(&cross)
        })
    }
}

impl PartialOrd for Direction {
    fn partial_cmp(&self, other: &Direction) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(r: i64, s: i64) -> Direction {
        Direction::new(r, s).unwrap()
    }

    #[test]
    fn angular_order() {
        let seq = [d(1, -2), d(1, -1), d(1, 0), d(1, 1), d(0, 1), d(-1, 1), d(-1, 0), d(-1, -1), d(0, -1)];
        for w in seq.windows(2) {
            assert!(w[0] < w[1], "{} < {}", w[0], w[1]);
        }
        assert!(d(0, -1) > d(-1, -2));
        assert!(d(1, -2).in_interval(&d(0, -1), &d(1, -1)));
    }

    #[test]
    fn of_order_examples() {
        assert_eq!(Direction::of_order(Exp::new(3, 2)), d(2, 3));
        assert_eq!(Direction::of_order(Exp::from_integer(0)), d(1, 0));
        assert_eq!(Direction::of_order(Exp::from_integer(-2)), d(1, -2));
    }

    #[test]
    fn of_point_examples() {
        assert_eq!(Direction::of_point(ExponentPair::int(2, 1)).unwrap(), d(-1, 2));
        assert_eq!(Direction::of_point(ExponentPair::int(1, -2)).unwrap(), d(2, 1));
        assert!(Direction::of_point(ExponentPair::int(1, 1)).is_err());
        assert!(Direction::of_point(ExponentPair::int(0, 0)).is_err());
        // -dir((a-c)/l, b-d) ~ (lb - ld, c - a) for (a,b,c,d,l) = (5,2,3,1,1)
        let p = ExponentPair::int(2, 1);
        assert_eq!(Direction::of_point(p).unwrap().opposite(), d(1, -2));
    }
}
