//! Rational surgery slopes.
//!
//! A slope `p/q` is stored reduced with the sign carried by the numerator.
//! The meridian `1/0` is representable (it is needed for distances) but is
//! rejected by every dimension query.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A reduced surgery coefficient `p/q` with `q >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    /// The meridional slope `1/0`.
    pub const INFINITY: Slope = Slope { p: 1, q: 0 };

    /// Reduces `p/q`, moving the sign onto the numerator.
    pub fn new(p: i64, q: i64) -> Result<Slope> {
        normalize(p, q)
    }

    pub fn integer(n: i64) -> Slope {
        Slope { p: n, q: 1 }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn is_infinite(&self) -> bool {
        self.q == 0
    }

    pub fn is_integral(&self) -> bool {
        self.q == 1
    }

    /// The slope `-p/q`, i.e. the same surgery on the mirror knot.
    pub fn negate(&self) -> Slope {
        if self.is_infinite() {
            *self
        } else {
            Slope {
                p: -self.p,
                q: self.q,
            }
        }
    }
}

/// Reduces `(p, q)` to a [`Slope`]. Rejects `(0, 0)`.
pub fn normalize(p: i64, q: i64) -> Result<Slope> {
    if p == 0 && q == 0 {
        return Err(Error::InvalidSlope("0/0 is not a slope".into()));
    }
    if q == 0 {
        return Ok(Slope::INFINITY);
    }
    let g = p.gcd(&q);
    let (mut p, mut q) = (p / g, q / g);
    if q < 0 {
        p = -p;
        q = -q;
    }
    Ok(Slope { p, q })
}

/// The geometric intersection number `|p1 q2 - p2 q1|` of two slopes.
pub fn distance(a: Slope, b: Slope) -> u64 {
    let det = a.p as i128 * b.q as i128 - b.p as i128 * a.q as i128;
    det.unsigned_abs() as u64
}

/// The two distance-one slopes `a/b`, `c/d` whose mediant is `s`.
///
/// Ordered by denominator, then numerator. Requires `q >= 2`.
pub fn farey_parents(s: Slope) -> Result<(Slope, Slope)> {
    let (p, q) = (s.p as i128, s.q as i128);
    if q <= 1 {
        return Err(Error::InvalidSlope(format!(
            "{s} has denominator {q}; Farey parents need q >= 2"
        )));
    }
    // p*b == 1 (mod q) with 0 < b < q, then a = (p*b - 1)/q.
    let egcd = p.rem_euclid(q).extended_gcd(&q);
    debug_assert_eq!(egcd.gcd, 1);
    let b = egcd.x.rem_euclid(q);
    let a = (p * b - 1).div_euclid(q);
    let (c, d) = (p - a, q - b);
    let first = Slope {
        p: a as i64,
        q: b as i64,
    };
    let second = Slope {
        p: c as i64,
        q: d as i64,
    };
    let key = |s: &Slope| (s.q, s.p);
    if key(&first) <= key(&second) {
        Ok((first, second))
    } else {
        Ok((second, first))
    }
}

/// The slope on the companion `K` realising `(pq + eps)`-surgery on the
/// `(p, q)`-cable of `K`: `(pq + eps)/q^2`. Only `eps = ±1` is supported.
pub fn cable_slope(p: i64, q: i64, eps: i64) -> Result<Slope> {
    if eps.abs() != 1 {
        return Err(Error::Unsupported(format!(
            "cable slope only for eps = ±1, got {eps}"
        )));
    }
    if q < 2 {
        return Err(Error::InvalidSlope(format!(
            "cable parameter q = {q} must be >= 2"
        )));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::InvalidSlope(format!(
            "cable parameters ({p}, {q}) are not coprime"
        )));
    }
    normalize(p * q + eps, q * q)
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = Error;

    /// Accepts `p/q` or a bare integer `n` (read as `n/1`).
    fn from_str(s: &str) -> Result<Slope> {
        let s = s.trim();
        let bad = || Error::InvalidSlope(format!("cannot parse slope {s:?}"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p = p.trim().parse::<i64>().map_err(|_| bad())?;
                let q = q.trim().parse::<i64>().map_err(|_| bad())?;
                normalize(p, q)
            }
            None => Ok(Slope::integer(s.parse::<i64>().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Slope, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sl(p: i64, q: i64) -> Slope {
        normalize(p, q).unwrap()
    }

    /// Every `(a/b, c/d)` with `b + d = q`, `a + c = p` and pairwise distance one.
    fn parents_brute_force(s: Slope) -> Vec<(Slope, Slope)> {
        let (p, q) = (s.p(), s.q());
        let mut found = Vec::new();
        for b in 1..q {
            let d = q - b;
            // |a q - p b| = 1 pins a to (p b ± 1)/q
            for num in [p * b - 1, p * b + 1] {
                if num.rem_euclid(q) != 0 {
                    continue;
                }
                let a = num / q;
                let c = p - a;
                let (x, y) = (Slope { p: a, q: b }, Slope { p: c, q: d });
                if a.gcd(&b) != 1 || c.gcd(&d) != 1 {
                    continue;
                }
                if distance(x, s) == 1 && distance(y, s) == 1 && distance(x, y) == 1 {
                    let pair = if (x.q, x.p) <= (y.q, y.p) {
                        (x, y)
                    } else {
                        (y, x)
                    };
                    if !found.contains(&pair) {
                        found.push(pair);
                    }
                }
            }
        }
        found
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(sl(2, -4), Slope { p: -1, q: 2 });
        assert_eq!(sl(0, 7), Slope { p: 0, q: 1 });
        assert_eq!(sl(-3, 0), Slope::INFINITY);
        assert!(normalize(0, 0).is_err());
    }

    #[test]
    fn distance_examples() {
        for n in -20..20 {
            assert_eq!(distance(Slope::INFINITY, Slope::integer(n)), 1);
        }
        assert_eq!(distance(sl(0, 1), sl(-1, 3)), 1);
        assert_eq!(distance(sl(1, 2), sl(1, 2)), 0);
    }

    #[test]
    fn parents_examples() {
        assert_eq!(farey_parents(sl(-1, 4)).unwrap(), (sl(0, 1), sl(-1, 3)));
        assert_eq!(farey_parents(sl(1, 2)).unwrap(), (sl(0, 1), sl(1, 1)));
        assert_eq!(farey_parents(sl(3, 2)).unwrap(), (sl(1, 1), sl(2, 1)));
        assert!(farey_parents(sl(5, 1)).is_err());
        assert!(farey_parents(Slope::INFINITY).is_err());
    }

    #[test]
    fn parents_match_brute_force_up_to_q_200() {
        for q in 2..=200i64 {
            // every residue class of p, plus a few shifted representatives
            for p in (-q - 3..=2 * q + 3).filter(|p| p.gcd(&q) == 1) {
                let s = sl(p, q);
                let brute = parents_brute_force(s);
                assert_eq!(brute.len(), 1, "slope {s}: {brute:?}");
                assert_eq!(farey_parents(s).unwrap(), brute[0], "slope {s}");
            }
        }
    }

    #[test]
    fn cable_examples() {
        assert_eq!(cable_slope(-1, 2, 1).unwrap(), sl(-1, 4));
        assert_eq!(cable_slope(2, 3, 1).unwrap(), sl(7, 9));
        assert_eq!(cable_slope(-1, 2, -1).unwrap(), sl(-3, 4));
        assert!(cable_slope(-1, 2, 2).is_err());
        assert!(cable_slope(2, 4, 1).is_err());
        assert_eq!(distance(cable_slope(2, 3, 1).unwrap(), sl(2, 3)), 3);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("-1/4".parse::<Slope>().unwrap(), sl(-1, 4));
        assert_eq!("3".parse::<Slope>().unwrap(), sl(3, 1));
        assert_eq!(" 6 / -4 ".parse::<Slope>().unwrap(), sl(-3, 2));
        assert!("x/2".parse::<Slope>().is_err());
        assert_eq!(sl(6, -4).to_string(), "-3/2");
        assert_eq!(serde_json::to_string(&sl(1, 0)).unwrap(), "\"1/0\"");
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(p in -10_000i64..10_000, q in -10_000i64..10_000) {
            prop_assume!(p != 0 || q != 0);
            let s = sl(p, q);
            prop_assert_eq!(normalize(s.p(), s.q()).unwrap(), s);
            prop_assert!(s.q() >= 0);
            prop_assert_eq!(s.p().gcd(&s.q()), 1);
        }

        #[test]
        fn distance_symmetric_and_separating(
            a in -500i64..500, b in 0i64..500, c in -500i64..500, d in 0i64..500
        ) {
            prop_assume!((a, b) != (0, 0) && (c, d) != (0, 0));
            let (x, y) = (sl(a, b), sl(c, d));
            prop_assert_eq!(distance(x, y), distance(y, x));
            prop_assert_eq!(distance(x, y) == 0, x == y);
        }
    }
}
