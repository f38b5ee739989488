//! Exact rational polynomials and the odd polynomials interpolating the
//! `d_{j,i}` coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::coeff::d_coeff;
use crate::error::{Error, Result};

/// Coefficients indexed by degree, trailing zeros trimmed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl RatPoly {
    pub fn new(coeffs: Vec<BigRational>) -> RatPoly {
        let mut p = RatPoly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> RatPoly {
        RatPoly::default()
    }

    pub fn constant(c: BigRational) -> RatPoly {
        RatPoly::new(vec![c])
    }

    /// The monomial `t`.
    pub fn t() -> RatPoly {
        RatPoly::new(vec![BigRational::zero(), BigRational::one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> BigRational {
        self.coeffs
            .get(d)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// All even-degree coefficients vanish.
    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(|c| c.is_zero())
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_int(&self, t: i64) -> BigRational {
        self.eval(&rat(t))
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|d| self.coeff(d) + other.coeff(d)).collect())
    }

    pub fn scale(&self, c: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    /// The binomial polynomial `C(t, m) = t(t−1)…(t−m+1)/m!`.
    pub fn binomial_basis(m: usize) -> RatPoly {
        let mut p = RatPoly::constant(BigRational::one());
        for i in 0..m {
            let factor = RatPoly::new(vec![rat(-(i as i64)), BigRational::one()]);
            p = p
                .mul(&factor)
                .scale(&(BigRational::one() / rat(i as i64 + 1)));
        }
        p
    }

    /// The unique `P` with `P(0) = 0` and `P(t+1) − P(t) = self(t)`,
    /// computed through Newton's forward-difference expansion.
    pub fn antidifference(&self) -> RatPoly {
        let Some(deg) = self.degree() else {
            return RatPoly::zero();
        };
        // forward differences at 0: self = Σ a_m C(t, m)
        let mut values: Vec<BigRational> = (0..=deg as i64).map(|t| self.eval_int(t)).collect();
        let mut newton = Vec::with_capacity(deg + 1);
        for _ in 0..=deg {
            newton.push(values[0].clone());
            values = values.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        newton
            .iter()
            .enumerate()
            .fold(RatPoly::zero(), |acc, (m, a)| {
                acc.add(&RatPoly::binomial_basis(m + 1).scale(a))
            })
    }

    /// The Lagrange interpolant through `(x_k, y_k)`.
    pub fn interpolate(points: &[(i64, BigRational)]) -> RatPoly {
        let mut out = RatPoly::zero();
        for (k, (xk, yk)) in points.iter().enumerate() {
            let mut basis = RatPoly::constant(yk.clone());
            for (m, (xm, _)) in points.iter().enumerate() {
                if m != k {
                    let factor = RatPoly::new(vec![rat(-xm), BigRational::one()]);
                    basis = basis
                        .mul(&factor)
                        .scale(&(BigRational::one() / rat(xk - xm)));
                }
            }
            out = out.add(&basis);
        }
        out
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigRational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let show_mag = d == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match d {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{d}")?,
            }
        }
        Ok(())
    }
}

/// `Π_{ℓ=1}^{j−2} ((h−ℓ) − t) / (j−2)!`, the polynomial form of `C(h−t−1, j−2)`.
fn shifted_binomial(j: i64, h: i64) -> RatPoly {
    let mut p = RatPoly::constant(BigRational::one());
    for l in 1..=j - 2 {
        p = p
            .mul(&RatPoly::new(vec![rat(h - l), rat(-1)]))
            .scale(&(BigRational::one() / rat(l)));
    }
    p
}

/// `p_0, …, p_{2h+1}` for the given `h`.
pub fn p_polys(h: i64) -> Result<Vec<RatPoly>> {
    if h < 1 {
        return Err(Error::OutOfRange(format!("h = {h} must be positive")));
    }
    let mut out = vec![RatPoly::zero(), RatPoly::zero()];
    for j in 2..=2 * h + 1 {
        let step = out[(j - 1) as usize].add(&shifted_binomial(j, h));
        out.push(step.antidifference());
    }
    Ok(out)
}

/// The odd polynomial with `p_j(i) = d_{j,i}` for `−h ≤ i ≤ h`.
pub fn p_poly(j: i64, h: i64) -> Result<RatPoly> {
    if j < 0 || j > 2 * h + 1 {
        return Err(Error::OutOfRange(format!(
            "need 0 <= j <= 2h + 1, got j = {j}, h = {h}"
        )));
    }
    Ok(p_polys(h)?.swap_remove(j as usize))
}

/// The structural claims about `p_j`, checked exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyCertificate {
    pub j: i64,
    pub h: i64,
    pub odd: bool,
    pub degree_bounded: bool,
    /// Only meaningful for even `j ≥ 2`; `true` otherwise.
    pub exact_degree: bool,
    pub interpolates: bool,
}

impl PolyCertificate {
    pub fn holds(&self) -> bool {
        self.odd && self.degree_bounded && self.exact_degree && self.interpolates
    }
}

pub fn certify(j: i64, p: &RatPoly, h: i64) -> Result<PolyCertificate> {
    let bound = (j - 1).max(0) as usize;
    let deg = p.degree();
    let mut interpolates = true;
    for i in -h..=h {
        if p.eval_int(i) != BigRational::from_integer(d_coeff(j, i, h)?) {
            interpolates = false;
            break;
        }
    }
    Ok(PolyCertificate {
        j,
        h,
        odd: p.is_odd(),
        degree_bounded: deg.is_none_or(|d| d <= bound),
        exact_degree: !(j >= 2 && j % 2 == 0) || deg == Some((j - 1) as usize),
        interpolates,
    })
}

pub fn certify_all(h: i64) -> Result<Vec<PolyCertificate>> {
    p_polys(h)?
        .iter()
        .enumerate()
        .map(|(j, p)| certify(j as i64, p, h))
        .collect()
}
