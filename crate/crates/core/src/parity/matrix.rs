//! Exact integer matrices with fraction-free elimination.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

/// Row echelon form from Bareiss elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    swaps: usize,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<IntMatrix> {
        if entries.len() != rows * cols {
            return Err(Error::OutOfRange(format!(
                "{} entries for a {rows} x {cols} matrix",
                entries.len()
            )));
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> BigInt,
    ) -> IntMatrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        IntMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<IntMatrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::OutOfRange("ragged rows".into()));
        }
        Ok(IntMatrix::from_fn(rows.len(), cols, |i, j| {
            BigInt::from(rows[i][j])
        }))
    }

    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix::from_fn(rows, cols, |_, _| BigInt::zero())
    }

    pub fn identity(n: usize) -> IntMatrix {
        IntMatrix::from_fn(n, n, |i, j| BigInt::from(u8::from(i == j)))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::OutOfRange(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(IntMatrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols)
                .map(|k| self.get(i, k) * other.get(k, j))
                .sum()
        }))
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::OutOfRange(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    fn bareiss(&self) -> Echelon {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut prev = BigInt::one();
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&p| !a[p][c].is_zero()) else {
                continue;
            };
            if p != r {
                a.swap(p, r);
                swaps += 1;
            }
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                    debug_assert!((&num % &prev).is_zero(), "Bareiss division is exact");
                    a[i][j] = num / &prev;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        Echelon {
            rows: a,
            pivots,
            swaps,
        }
    }

    pub fn rank(&self) -> usize {
        self.bareiss().pivots.len()
    }

    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::OutOfRange(format!(
                "det of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if self.rows == 0 {
            return Ok(BigInt::one());
        }
        let e = self.bareiss();
        if e.pivots.len() < self.rows {
            return Ok(BigInt::zero());
        }
        let d = e.rows[self.rows - 1][self.cols - 1].clone();
        Ok(if e.swaps.is_multiple_of(2) { d } else { -d })
    }

    /// A basis of the rational kernel, each vector scaled to a primitive
    /// integer vector whose first nonzero entry is positive.
    pub fn nullspace(&self) -> Vec<Vec<BigInt>> {
        let e = self.bareiss();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut x = vec![BigRational::zero(); self.cols];
            x[f] = BigRational::one();
            for (r, &pc) in e.pivots.iter().enumerate().rev() {
                let mut acc = BigRational::zero();
                for j in pc + 1..self.cols {
                    if !x[j].is_zero() && !e.rows[r][j].is_zero() {
                        acc += BigRational::from_integer(e.rows[r][j].clone()) * &x[j];
                    }
                }
                x[pc] = -acc / BigRational::from_integer(e.rows[r][pc].clone());
            }
            basis.push(primitive(&x));
        }
        basis
    }
}

/// Clears denominators, divides by the content and fixes the sign.
pub fn primitive(x: &[BigRational]) -> Vec<BigInt> {
    let lcm = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = x.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if content.is_zero() {
        return ints;
    }
    let mut out: Vec<BigInt> = ints.into_iter().map(|v| v / &content).collect();
    if out
        .iter()
        .find(|v| !v.is_zero())
        .is_some_and(|v| v.is_negative())
    {
        for v in &mut out {
            *v = -v.clone();
        }
    }
    out
}

pub fn nullspace_int(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    m.nullspace()
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
