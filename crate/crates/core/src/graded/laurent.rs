//! Integer Laurent polynomials in one variable `t`, used for Alexander
//! polynomials and the Casson-invariant bookkeeping.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents.
    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> LaurentPoly {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert(0) += c;
        }
        map.retain(|_, c| *c != 0);
        LaurentPoly { terms: map }
    }

    pub fn constant(c: i64) -> LaurentPoly {
        LaurentPoly::from_terms([(0, c)])
    }

    pub fn coeff(&self, e: i32) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Δ(t) = Δ(t⁻¹)`.
    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(&e, &c)| self.coeff(-e) == c)
    }

    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// First derivative evaluated at `t = 1`: `Σ c·e`.
    pub fn derivative_at_one(&self) -> i64 {
        self.terms.iter().map(|(&e, &c)| c * e as i64).sum()
    }

    /// Second derivative evaluated at `t = 1`: `Σ c·e(e−1)`.
    pub fn second_derivative_at_one(&self) -> i64 {
        self.terms
            .iter()
            .map(|(&e, &c)| c * e as i64 * (e as i64 - 1))
            .sum()
    }

    /// The substitution `t ↦ t²`.
    pub fn cable_substitute(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(&e, &c)| (2 * e, c)))
    }

    /// `χ = −Δ''(1)` for a symmetric polynomial.
    pub fn casson_chi(&self) -> Result<i64> {
        if !self.is_symmetric() {
            return Err(Error::OutOfRange(format!(
                "{self} is not symmetric under t -> 1/t"
            )));
        }
        Ok(-self.second_derivative_at_one())
    }

    /// The genus-one Alexander form `a t + (1 − 2a) + a t⁻¹`.
    pub fn genus1_alexander(a: i64) -> LaurentPoly {
        LaurentPoly::from_terms([(1, a), (0, 1 - 2 * a), (-1, a)])
    }
}

pub fn second_derivative_at_1(p: &LaurentPoly) -> i64 {
    p.second_derivative_at_one()
}

pub fn cable_substitute(p: &LaurentPoly) -> LaurentPoly {
    p.cable_substitute()
}

pub fn casson_chi(p: &LaurentPoly) -> Result<i64> {
    p.casson_chi()
}

pub fn genus1_alexander(a: i64) -> LaurentPoly {
    LaurentPoly::genus1_alexander(a)
}

impl fmt::Display for LaurentPoly {
    /// Descending exponents, e.g. `2t^2 - 3 + 2t^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (&e, &c)) in self.terms.iter().rev().enumerate() {
            let mag = c.unsigned_abs();
            match (idx, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if e == 0 || mag != 1 {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}
