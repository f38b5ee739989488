//! The matrices `N` and `M` attached to an index set, and the kernel
//! lifting check showing `M` is singular.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::coeff::{c_coeff, d_coeff};
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// `0 < i₁ < … < i_k ≤ h` with `k ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexSet {
    h: i64,
    indices: Vec<i64>,
}

impl IndexSet {
    pub fn new(h: i64, indices: Vec<i64>) -> Result<IndexSet> {
        if h < 1 {
            return Err(Error::OutOfRange(format!("h = {h} must be positive")));
        }
        if indices.is_empty() {
            return Err(Error::OutOfRange("index set is empty".into()));
        }
        if indices[0] <= 0 || *indices.last().expect("nonempty") > h {
            return Err(Error::OutOfRange(format!(
                "indices {indices:?} must lie in 1..={h}"
            )));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::OutOfRange(format!(
                "indices {indices:?} are not strictly increasing"
            )));
        }
        Ok(IndexSet { h, indices })
    }

    pub fn h(&self) -> i64 {
        self.h
    }

    pub fn k(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[i64] {
        &self.indices
    }

    /// Column labels of `M`: `−i_k, …, −i₁, i₁, …, i_k`.
    pub fn signed_columns(&self) -> Vec<i64> {
        self.indices
            .iter()
            .rev()
            .map(|i| -i)
            .chain(self.indices.iter().copied())
            .collect()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "h={} ({})", self.h, idx.join(","))
    }
}

/// `2k × k`, entry `(j, m) = d_{j, i_m}`.
pub fn build_n(ix: &IndexSet) -> IntMatrix {
    IntMatrix::from_fn(2 * ix.k(), ix.k(), |j, m| {
        d_coeff(j as i64, ix.indices[m], ix.h).expect("indices in range")
    })
}

/// `2k × 2k`, entry `(j, col) = c_{j, col}` over the signed columns.
pub fn build_m(ix: &IndexSet) -> IntMatrix {
    let cols = ix.signed_columns();
    IntMatrix::from_fn(2 * ix.k(), 2 * ix.k(), |j, c| {
        c_coeff(j as i64, cols[c], ix.h).expect("indices in range")
    })
}

/// `(x_k, …, x₁, −x₁, …, −x_k)`.
pub fn lift(x: &[BigInt]) -> Vec<BigInt> {
    x.iter()
        .rev()
        .cloned()
        .chain(x.iter().map(|v| -v.clone()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexReport {
    pub index_set: IndexSet,
    pub rank_n: usize,
    pub rank_bound_holds: bool,
    pub kernel_vector: Option<Vec<BigInt>>,
    pub lifted: Option<Vec<BigInt>>,
    pub m_annihilates: bool,
    pub det_m_zero: bool,
}

impl IndexReport {
    pub fn passed(&self) -> bool {
        self.rank_bound_holds
            && self.kernel_vector.is_some()
            && self.m_annihilates
            && self.det_m_zero
    }
}

/// Checks `rank N ≤ k − 1`, finds a primitive kernel vector, and confirms
/// `M` kills its lift, so `det M = 0`.
pub fn verify_index_set(ix: &IndexSet) -> IndexReport {
    let n = build_n(ix);
    let m = build_m(ix);
    let rank_n = n.rank();
    let kernel_vector = n.nullspace().into_iter().next();
    let lifted = kernel_vector.as_deref().map(lift);
    let m_annihilates = lifted.as_ref().is_some_and(|v| {
        v.iter().any(|x| !x.is_zero())
            && m.mul_vec(v)
                .expect("shapes match")
                .iter()
                .all(|x| x.is_zero())
    });
    let det_m_zero = m.det().expect("square").is_zero();
    IndexReport {
        index_set: ix.clone(),
        rank_n,
        rank_bound_holds: rank_n < ix.k(),
        kernel_vector,
        lifted,
        m_annihilates,
        det_m_zero,
    }
}
