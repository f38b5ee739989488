//! ℤ/4-graded dimension bookkeeping, exact triangles, Frøyshov and
//! connected-sum dimension relations, and the finite solver for the
//! `(ν♯, r₀) = (0, 2)` case analysis.

pub mod laurent;
pub mod section9;
pub mod triangle;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use laurent::LaurentPoly;
pub use section9::{
    section9_contradiction, solve_section9, Branch, Section9Config, Section9Query, Section9Report,
    Section9Solution,
};
pub use triangle::{
    triangle_feasible, triangle_third_dims, triangle_witnesses, TriangleRanks, TriangleSpec,
};

/// An element of ℤ/4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Z4(u8);

impl Z4 {
    pub const ALL: [Z4; 4] = [Z4(0), Z4(1), Z4(2), Z4(3)];

    pub fn new(n: i64) -> Z4 {
        Z4(n.rem_euclid(4) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    fn idx(self) -> usize {
        self.0 as usize
    }
}

impl Add for Z4 {
    type Output = Z4;
    fn add(self, rhs: Z4) -> Z4 {
        Z4((self.0 + rhs.0) % 4)
    }
}

impl Sub for Z4 {
    type Output = Z4;
    fn sub(self, rhs: Z4) -> Z4 {
        Z4((self.0 + 4 - rhs.0) % 4)
    }
}

impl Neg for Z4 {
    type Output = Z4;
    fn neg(self) -> Z4 {
        Z4((4 - self.0) % 4)
    }
}

impl fmt::Display for Z4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Dimensions `(d₀, d₁, d₂, d₃)` of a ℤ/4-graded rational vector space.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct GradedDim(pub [u64; 4]);

impl GradedDim {
    pub const ZERO: GradedDim = GradedDim([0; 4]);

    /// One `Q` summand per listed grading, e.g. `[0, k − 1, k]`.
    pub fn from_gradings(gradings: impl IntoIterator<Item = Z4>) -> GradedDim {
        let mut d = [0u64; 4];
        for g in gradings {
            d[g.idx()] += 1;
        }
        GradedDim(d)
    }

    pub fn get(&self, g: Z4) -> u64 {
        self.0[g.idx()]
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn euler_char(&self) -> i64 {
        self.0[0] as i64 - self.0[1] as i64 + self.0[2] as i64 - self.0[3] as i64
    }

    pub fn direct_sum(&self, other: &GradedDim) -> GradedDim {
        GradedDim(std::array::from_fn(|i| self.0[i] + other.0[i]))
    }

    /// Tensor product of graded dimension vectors.
    pub fn tensor(&self, other: &GradedDim) -> GradedDim {
        let mut out = [0u64; 4];
        for a in Z4::ALL {
            for b in Z4::ALL {
                out[(a + b).idx()] += self.get(a) * other.get(b);
            }
        }
        GradedDim(out)
    }

    /// Every graded vector with the given total dimension.
    pub fn all_with_total(total: u64) -> Vec<GradedDim> {
        let mut out = Vec::new();
        for d0 in 0..=total {
            for d1 in 0..=total - d0 {
                for d2 in 0..=total - d0 - d1 {
                    out.push(GradedDim([d0, d1, d2, total - d0 - d1 - d2]));
                }
            }
        }
        out
    }
}

impl fmt::Display for GradedDim {
    /// Summand notation, e.g. `Q0⊕Q2⊕Q3`, or `0` for the zero space.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Z4::ALL
            .iter()
            .flat_map(|&g| std::iter::repeat_n(format!("Q{g}"), self.get(g) as usize))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("⊕"))
        }
    }
}

pub fn euler_char(g: &GradedDim) -> i64 {
    g.euler_char()
}

/// Degree mod 4 of a cobordism map:
/// `−3(χ+σ)/2 + (b₁(out) − b₁(in))/2 + 2ν²`.
pub fn cobordism_degree(chi: i64, sigma: i64, b1_in: i64, b1_out: i64, nu_sq: i64) -> Result<Z4> {
    if (chi + sigma).rem_euclid(2) != 0 {
        return Err(Error::OutOfRange(format!(
            "chi + sigma = {} is odd",
            chi + sigma
        )));
    }
    if (b1_out - b1_in).rem_euclid(2) != 0 {
        return Err(Error::OutOfRange(format!(
            "b1_out - b1_in = {} is odd",
            b1_out - b1_in
        )));
    }
    Ok(Z4::new(
        -3 * (chi + sigma) / 2 + (b1_out - b1_in) / 2 + 2 * nu_sq,
    ))
}

/// Degrees of the six 2-handle maps in the `n = −1` and `n = 0` surgery triangles.
pub mod degrees {
    use super::Z4;

    pub const F_MINUS1: Z4 = Z4(2);
    pub const G_0: Z4 = Z4(3);
    pub const H_0: Z4 = Z4(2);
    pub const F_0: Z4 = Z4(3);
    pub const G_1: Z4 = Z4(2);
    pub const H_1: Z4 = Z4(2);
}

/// `|h| = (dim I − dim Î)/2`.
pub fn froyshov_gap(dim_i: u64, dim_ihat: u64) -> Result<u64> {
    if dim_i < dim_ihat {
        return Err(Error::OutOfRange(format!(
            "dim I = {dim_i} < dim Î = {dim_ihat}"
        )));
    }
    if !(dim_i - dim_ihat).is_multiple_of(2) {
        return Err(Error::OutOfRange(format!(
            "dim I - dim Î = {} is odd",
            dim_i - dim_ihat
        )));
    }
    Ok((dim_i - dim_ihat) / 2)
}

/// For a knot of genus at most two, `dim I♯(S³_{±1}) = 1 + 2a`; returns `a`.
pub fn fukaya_pm1(dim_isharp: u64, genus_at_most_two: bool) -> Result<u64> {
    if !genus_at_most_two {
        return Err(Error::Unsupported(
            "relation requires Seifert genus at most 2".into(),
        ));
    }
    if dim_isharp.is_multiple_of(2) {
        return Err(Error::inconsistent(
            "FUKAYA",
            format!("dim I#(S^3_(+-1)) = {dim_isharp} is even; it must be 1 + 2a"),
        ));
    }
    Ok((dim_isharp - 1) / 2)
}

/// For a knot of genus at most two, the zero-surgery dimensions with
/// the meridional bundle agree.
pub fn fukaya_zero(dim_isharp_zero_mu: u64, dim_i_zero_mu: u64) -> bool {
    dim_isharp_zero_mu == dim_i_zero_mu
}
