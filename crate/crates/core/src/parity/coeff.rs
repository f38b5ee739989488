//! Truncated binomials and the integer coefficient families built from them.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::matrix::IntMatrix;

/// `C(a, b)`, zero unless `0 ≤ b ≤ a`.
pub fn binom(a: i64, b: i64) -> BigInt {
    if a < 0 || b < 0 || a < b {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    acc
}

fn check_range(i: i64, h: i64) -> Result<()> {
    if h < 1 {
        return Err(Error::OutOfRange(format!("h = {h} must be positive")));
    }
    if i < -h || i > h {
        return Err(Error::OutOfRange(format!("index {i} outside [-{h}, {h}]")));
    }
    Ok(())
}

/// `c_{n,i}` for `−h ≤ i ≤ h`: `(−1)^i` for `n = 0`, the parity indicator
/// `i ≢ h (mod 2)` for `n = 1`, and `Σ_{k≥1} C(h−i−2k, n−2)` for `n ≥ 2`.
pub fn c_coeff(n: i64, i: i64, h: i64) -> Result<BigInt> {
    check_range(i, h)?;
    if n < 0 {
        return Err(Error::OutOfRange(format!("n = {n} must be nonnegative")));
    }
    Ok(match n {
        0 => BigInt::from(if i.rem_euclid(2) == 0 { 1 } else { -1 }),
        1 => BigInt::from(if (i - h).rem_euclid(2) == 0 { 0 } else { 1 }),
        _ => {
            let mut acc = BigInt::zero();
            let mut top = h - i - 2;
            while top >= 0 {
                acc += binom(top, n - 2);
                top -= 2;
            }
            acc
        }
    })
}

/// `d_{j,i} = c_{j,−i} − c_{j,i}`, antisymmetric in `i`.
pub fn d_coeff(j: i64, i: i64, h: i64) -> Result<BigInt> {
    check_range(i, h)?;
    Ok(c_coeff(j, -i, h)? - c_coeff(j, i, h)?)
}

/// `(C(h−i, n−1))` for `i = −h..h`.
pub fn v_coeffs(h: i64, n: i64) -> Result<Vec<BigInt>> {
    if h < 1 || n < 1 || n > 2 * h + 1 {
        return Err(Error::OutOfRange(format!(
            "need 1 <= n <= 2h + 1, got h = {h}, n = {n}"
        )));
    }
    Ok((-h..=h).map(|i| binom(h - i, n - 1)).collect())
}

/// Where the entries of [`v_coeffs`] live.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VSupport {
    /// Every entry with `i > h − (n − 1)` is zero.
    pub upper_vanishes: bool,
    /// Entries on `1 − h ≤ i ≤ h − (n − 1)` are positive.
    pub interior_positive: bool,
    /// The `i = −h` entry, `C(2h, n − 1)`. It multiplies a generator that
    /// vanishes, so it never contributes; it is not itself zero.
    pub boundary_entry: BigInt,
}

pub fn v_support(h: i64, n: i64) -> Result<VSupport> {
    let v = v_coeffs(h, n)?;
    let at = |i: i64| &v[(i + h) as usize];
    Ok(VSupport {
        upper_vanishes: (h - n + 2..=h).all(|i| at(i).is_zero()),
        interior_positive: (1 - h..=h - n + 1).all(|i| *at(i) > BigInt::zero()),
        boundary_entry: at(-h).clone(),
    })
}

/// `Σ_{ℓ=0}^{m} C(ℓ, k) = C(m+1, k+1)`.
pub fn hockey_stick(m: i64, k: i64) -> bool {
    let lhs: BigInt = (0..=m).map(|l| binom(l, k)).sum();
    lhs == binom(m + 1, k + 1)
}

/// The `2h × 2h` matrix with ones strictly below the diagonal.
pub fn strictly_lower_ones(h: usize) -> IntMatrix {
    let n = 2 * h;
    IntMatrix::from_fn(n, n, |i, j| BigInt::from(u8::from(i > j)))
}

/// `L^{n−1}` for the strictly lower all-ones matrix `L`.
pub fn pathcount_power(h: usize, n: usize) -> Result<IntMatrix> {
    if h < 1 || n < 1 {
        return Err(Error::OutOfRange(format!(
            "need h, n >= 1, got h = {h}, n = {n}"
        )));
    }
    let l = strictly_lower_ones(h);
    let mut acc = IntMatrix::identity(2 * h);
    for _ in 1..n {
        acc = acc.mul(&l)?;
    }
    Ok(acc)
}

/// Entrywise `C(i−j−1, n−2)` (1-based indices), the identity for `n = 1`.
pub fn pathcount_closed_form(h: usize, n: usize) -> IntMatrix {
    IntMatrix::from_fn(2 * h, 2 * h, |i, j| {
        if n == 1 {
            BigInt::from(u8::from(i == j))
        } else {
            binom(i as i64 - j as i64 - 1, n as i64 - 2)
        }
    })
}

/// `Σ_{i=j+1}^{h−n+1} (−1)^{i−j−1} C(h−i, n−1) = c_{n,j}` for `−h ≤ j ≤ h−n`.
pub fn telescoping_holds(h: i64, n: i64, j: i64) -> Result<bool> {
    let lhs: BigInt = (j + 1..=h - n + 1)
        .map(|i| {
            let b = binom(h - i, n - 1);
            if (i - j - 1) % 2 == 0 {
                b
            } else {
                -b
            }
        })
        .sum();
    Ok(lhs == c_coeff(n, j, h)?)
}

/// `d_{j,i+1} − d_{j,i} = d_{j−1,i} + C(h−i−1, j−2)`.
pub fn difference_recurrence_holds(j: i64, i: i64, h: i64) -> Result<bool> {
    Ok(
        d_coeff(j, i + 1, h)? - d_coeff(j, i, h)?
            == d_coeff(j - 1, i, h)? + binom(h - i - 1, j - 2),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binom(5, 2), b(10));
        assert_eq!(binom(0, 0), b(1));
        assert_eq!(binom(3, 4), b(0));
        assert_eq!(binom(-1, 0), b(0));
        assert_eq!(binom(3, -1), b(0));
        assert_eq!(
            binom(60, 30),
            "118264581564861424".parse::<BigInt>().unwrap()
        );
    }

    #[test]
    fn pascal_rule() {
        for a in 1..40 {
            for k in 1..=a {
                assert_eq!(binom(a, k), binom(a - 1, k) + binom(a - 1, k - 1));
            }
        }
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(c_coeff(1, 0, 3).unwrap(), b(1));
        assert_eq!(c_coeff(2, 0, 3).unwrap(), b(1));
        assert_eq!(c_coeff(3, -2, 2).unwrap(), b(2));
        assert_eq!(c_coeff(0, -3, 5).unwrap(), b(-1));
        assert!(c_coeff(2, 4, 3).is_err());
        assert_eq!(d_coeff(0, 5, 7).unwrap(), b(0));
        assert_eq!(d_coeff(3, 2, 2).unwrap(), b(2));
        for h in 1..=20 {
            for i in 1..=h {
                assert_eq!(d_coeff(2, i, h).unwrap(), b(i));
                assert_eq!(d_coeff(1, i, h).unwrap(), b(0));
            }
        }
    }

    #[test]
    fn c_closed_form_from_expansion() {
        // for 1 <= i <= h: d_{j,i} = C(h+i-2, j-2) + C(h+i-4, j-2) + ... + C(h-i, j-2)
        for h in 1..=10 {
            for j in 2..=2 * h + 1 {
                for i in 1..=h {
                    let sum: BigInt = (0..i).map(|s| binom(h + i - 2 - 2 * s, j - 2)).sum();
                    assert_eq!(d_coeff(j, i, h).unwrap(), sum, "h={h} j={j} i={i}");
                }
            }
        }
    }

    #[test]
    fn antisymmetry_and_recurrence() {
        for h in 1..=12 {
            for j in 0..=2 * h + 1 {
                for i in -h..=h {
                    assert_eq!(d_coeff(j, -i, h).unwrap(), -d_coeff(j, i, h).unwrap());
                }
            }
            for j in 2..=2 * h + 1 {
                for i in -h..h {
                    assert!(
                        difference_recurrence_holds(j, i, h).unwrap(),
                        "h={h} j={j} i={i}"
                    );
                }
            }
        }
    }

    #[test]
    fn v_coefficient_support() {
        let v = v_coeffs(2, 1).unwrap();
        assert_eq!(v, vec![b(1); 5]);
        assert_eq!(v_coeffs(2, 5).unwrap(), vec![b(1), b(0), b(0), b(0), b(0)]);
        for h in 1..=12 {
            for n in 1..=2 * h + 1 {
                let s = v_support(h, n).unwrap();
                assert!(s.upper_vanishes, "h={h} n={n}");
                assert!(s.interior_positive, "h={h} n={n}");
                assert_eq!(s.boundary_entry, binom(2 * h, n - 1));
            }
        }
        assert!(v_coeffs(2, 6).is_err());
    }

    #[test]
    fn hockey_stick_small() {
        assert!(hockey_stick(4, 1));
        assert!(hockey_stick(0, 0));
        assert!(hockey_stick(30, 13));
        let lhs: BigInt = (0..=4).map(|l| binom(l, 1)).sum();
        assert_eq!(lhs, b(10));
    }

    #[test]
    fn pathcounts() {
        let m = pathcount_power(2, 3).unwrap();
        assert_eq!(m.get(3, 0), &b(2));
        assert_eq!(pathcount_power(4, 1).unwrap(), IntMatrix::identity(8));
        assert_eq!(pathcount_power(3, 2).unwrap(), strictly_lower_ones(3));
        for h in 1..=8 {
            for n in 1..=2 * h + 1 {
                assert_eq!(
                    pathcount_power(h, n).unwrap(),
                    pathcount_closed_form(h, n),
                    "h={h} n={n}"
                );
            }
        }
    }

    #[test]
    fn telescoping() {
        for h in 1..=12 {
            for n in 1..=2 * h + 1 {
                for j in -h..=h - n {
                    assert!(telescoping_holds(h, n, j).unwrap(), "h={h} n={n} j={j}");
                }
            }
        }
    }
}
