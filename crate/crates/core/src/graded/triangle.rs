//! Rank feasibility for exact triangles of ℤ/4-graded spaces with
//! homogeneous maps.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{GradedDim, Z4};

/// `A → B → C → A` with the degree of each map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleSpec {
    pub a: GradedDim,
    pub b: GradedDim,
    pub c: GradedDim,
    pub deg_ab: Z4,
    pub deg_bc: Z4,
    pub deg_ca: Z4,
}

/// Per-grading ranks; `ab[g]` is the rank of `A → B` restricted to `A_g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TriangleRanks {
    pub ab: [u64; 4],
    pub bc: [u64; 4],
    pub ca: [u64; 4],
}

impl TriangleRanks {
    pub fn total_ab(&self) -> u64 {
        self.ab.iter().sum()
    }

    pub fn total_bc(&self) -> u64 {
        self.bc.iter().sum()
    }

    pub fn total_ca(&self) -> u64 {
        self.ca.iter().sum()
    }
}

fn sub(a: u64, b: u64) -> Option<u64> {
    a.checked_sub(b)
}

/// Every rank assignment making the triangle exact in each grading.
///
/// Exactness at a vertex in grading `g` says its dimension is the rank
/// coming in plus the rank going out. Choosing the four ranks of `A → B`
/// determines the rest.
pub fn triangle_witnesses(t: &TriangleSpec) -> Vec<TriangleRanks> {
    let ranges: [u64; 4] = std::array::from_fn(|g| {
        let g = Z4::new(g as i64);
        t.a.get(g).min(t.b.get(g + t.deg_ab))
    });
    let mut out = Vec::new();
    for r0 in 0..=ranges[0] {
        for r1 in 0..=ranges[1] {
            for r2 in 0..=ranges[2] {
                for r3 in 0..=ranges[3] {
                    if let Some(w) = complete(t, [r0, r1, r2, r3]) {
                        out.push(w);
                    }
                }
            }
        }
    }
    out
}

fn complete(t: &TriangleSpec, ab: [u64; 4]) -> Option<TriangleRanks> {
    let mut bc = [0u64; 4];
    let mut ca = [0u64; 4];
    for g in Z4::ALL {
        let r = sub(t.b.get(g), ab[(g - t.deg_ab).value() as usize])?;
        if r > t.c.get(g + t.deg_bc) {
            return None;
        }
        bc[g.value() as usize] = r;
    }
    for g in Z4::ALL {
        let r = sub(t.c.get(g), bc[(g - t.deg_bc).value() as usize])?;
        if r > t.a.get(g + t.deg_ca) {
            return None;
        }
        ca[g.value() as usize] = r;
    }
    for g in Z4::ALL {
        if t.a.get(g) != ca[(g - t.deg_ca).value() as usize] + ab[g.value() as usize] {
            return None;
        }
    }
    Some(TriangleRanks { ab, bc, ca })
}

/// One exactness witness, if any exists.
pub fn triangle_feasible(t: &TriangleSpec) -> Option<TriangleRanks> {
    triangle_witnesses(t).into_iter().next()
}

/// Total dimensions `x` for which an ungraded exact triangle with the other
/// two vertices of dimensions `a` and `b` exists.
pub fn triangle_third_dims(a: u64, b: u64) -> BTreeSet<u64> {
    let lo = a.abs_diff(b);
    (lo..=a + b).filter(|x| (a + b + x).is_multiple_of(2)).collect()
}
