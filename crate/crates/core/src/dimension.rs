//! Framed instanton dimensions of Dehn surgeries, the slope-denominator
//! bound, and the small-`r₀` classification.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::LaurentPoly;
use crate::knot::{is_zero_or_odd, KnotRecord, Shape};
use crate::slope::Slope;

/// Bundle on zero-surgery: trivial, or the one dual to the meridian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bundle {
    Trivial,
    Meridional,
}

impl fmt::Display for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bundle::Trivial => "trivial",
            Bundle::Meridional => "meridional",
        })
    }
}

fn known_pair(rec: &KnotRecord) -> Result<(i64, u64)> {
    if let Some(v) = rec.validate().into_iter().next() {
        return Err(Error::inconsistent(v.rule, v.message));
    }
    let nu = rec.nu_sharp.ok_or(Error::Missing("nu_sharp"))?;
    let r0 = rec.r0.ok_or(Error::Missing("r0"))?;
    Ok((nu, r0))
}

/// `q·r₀ + |p − qν♯|`, as a set because zero-surgery on a `ν♯ = 0` knot of
/// unknown shape is only pinned to `{r₀, r₀ + 2}`.
pub fn dim_surgery(rec: &KnotRecord, s: Slope, bundle: Bundle) -> Result<BTreeSet<u64>> {
    if s.is_infinite() {
        return Err(Error::InvalidSlope(
            "1/0 is not a surgery coefficient here".into(),
        ));
    }
    let (nu, r0) = known_pair(rec)?;
    let (p, q) = (s.p() as i128, s.q() as i128);
    let (nu, r0i) = (nu as i128, r0 as i128);
    let value = |v: i128| v as u64;
    if p != 0 {
        return Ok([value(q * r0i + (p - q * nu).abs())].into());
    }
    if nu != 0 {
        return Ok([value(r0i + nu.abs())].into());
    }
    Ok(match (rec.shape, bundle) {
        (Some(Shape::W), Bundle::Trivial) | (Some(Shape::V), Bundle::Meridional) => [r0 + 2].into(),
        (Some(Shape::W), Bundle::Meridional) | (Some(Shape::V), Bundle::Trivial) => [r0].into(),
        (None, _) => [r0, r0 + 2].into(),
    })
}

/// [`dim_surgery`] over a list of slopes, in order.
pub fn dim_table(
    rec: &KnotRecord,
    slopes: &[Slope],
    bundle: Bundle,
) -> Result<Vec<(Slope, BTreeSet<u64>)>> {
    slopes
        .iter()
        .map(|&s| Ok((s, dim_surgery(rec, s, bundle)?)))
        .collect()
}

/// A solution of `q·r + |p − qν| = D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurgeryCandidate {
    pub q: i64,
    pub p: i64,
    pub nu: i64,
    pub r0: i64,
}

impl SurgeryCandidate {
    pub fn slope(&self) -> Slope {
        Slope::new(self.p, self.q).expect("q >= 1")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeBound {
    pub dim: u64,
    pub exclude_exceptional: bool,
    /// The proven denominator bound: `⌊D/3⌋` when trefoils and the figure
    /// eight are excluded, otherwise `D`.
    pub q_max: u64,
    /// Feasible candidates with `3q = D`.
    pub equality_cases: Vec<SurgeryCandidate>,
    pub feasible: Vec<SurgeryCandidate>,
}

impl SlopeBound {
    /// Largest denominator that actually occurs in the feasible set.
    pub fn q_attained(&self) -> Option<i64> {
        self.feasible.iter().map(|c| c.q).max()
    }
}

/// The smallest `r₀` admitted: 3 once the unknot, trefoils and figure eight
/// are excluded, otherwise 1 (any nontrivial knot).
pub fn min_r0(exclude_exceptional: bool) -> i64 {
    if exclude_exceptional {
        3
    } else {
        1
    }
}

/// Is `(p, q, ν, r)` a rational-homology-sphere surgery of dimension `D`
/// consistent with the invariant constraints?
pub fn is_feasible(d: u64, c: &SurgeryCandidate, exclude_exceptional: bool) -> bool {
    c.q >= 1
        && c.p != 0
        && c.p.gcd(&c.q) == 1
        && c.r0 >= min_r0(exclude_exceptional)
        && c.r0 >= c.nu.abs()
        && (c.r0 - c.nu) % 2 == 0
        && is_zero_or_odd(c.nu)
        && c.q as i128 * c.r0 as i128 + (c.p as i128 - c.q as i128 * c.nu as i128).abs()
            == d as i128
}

/// Enumerates every surgery description of dimension `D` and reports the
/// denominator bound.
pub fn slope_bound(d: u64, exclude_exceptional: bool) -> Result<SlopeBound> {
    if d == 0 {
        return Err(Error::OutOfRange("dimension must be positive".into()));
    }
    let di = d as i64;
    let mut feasible = Vec::new();
    for q in 1..=di {
        for r in min_r0(exclude_exceptional)..=di / q {
            let rem = di - q * r;
            for nu in (-r..=r).filter(|nu| (r - nu) % 2 == 0 && is_zero_or_odd(*nu)) {
                let mut ps = vec![q * nu - rem, q * nu + rem];
                ps.dedup();
                for p in ps {
                    let c = SurgeryCandidate { q, p, nu, r0: r };
                    if is_feasible(d, &c, exclude_exceptional) {
                        feasible.push(c);
                    }
                }
            }
        }
    }
    feasible.sort();
    let equality_cases = feasible.iter().copied().filter(|c| 3 * c.q == di).collect();
    let q_max = if exclude_exceptional { d / 3 } else { d };
    Ok(SlopeBound {
        dim: d,
        exclude_exceptional,
        q_max,
        equality_cases,
        feasible,
    })
}

/// What `(ν♯, r₀)` says about the knot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    /// The knot is determined.
    Identified {
        knot: String,
    },
    /// Only partial constraints are known.
    Constrained {
        genus: u64,
        alexander: Vec<String>,
        known_examples: Vec<String>,
        /// `known_examples` is believed, not proven, to be complete.
        conjectural_list: bool,
    },
    Unclassified,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Identified { knot } => write!(f, "{knot}"),
            Classification::Constrained {
                genus,
                alexander,
                known_examples,
                conjectural_list,
            } => {
                write!(f, "genus {genus}")?;
                if !alexander.is_empty() {
                    write!(f, "; Alexander polynomial in {{{}}}", alexander.join(", "))?;
                }
                if !known_examples.is_empty() {
                    let tag = if *conjectural_list {
                        " (conjecturally complete)"
                    } else {
                        ""
                    };
                    write!(f, "; known examples {}{tag}", known_examples.join(", "))?;
                }
                Ok(())
            }
            Classification::Unclassified => f.write_str("no classification"),
        }
    }
}

pub fn classify_small(nu: i64, r0: u64) -> Result<Classification> {
    let rec = KnotRecord {
        nu_sharp: Some(nu),
        r0: Some(r0),
        ..KnotRecord::named("query")
    };
    if let Some(v) = rec.validate().into_iter().next() {
        return Err(Error::inconsistent(v.rule, v.message));
    }
    let identified = |k: &str| Classification::Identified { knot: k.into() };
    Ok(match (nu, r0) {
        (0, 0) => identified("unknot"),
        (1, 1) => identified("right_trefoil"),
        (-1, 1) => identified("left_trefoil"),
        (0, 2) => identified("fig8"),
        (3, 3) => identified("T2_5"),
        (-3, 3) => identified("T2_5_mirror"),
        (1, 3) | (-1, 3) => Classification::Constrained {
            genus: 1,
            alexander: vec![
                LaurentPoly::genus1_alexander(2).to_string(),
                LaurentPoly::constant(1).to_string(),
            ],
            known_examples: vec![if nu == 1 { "mirror(5_2)" } else { "5_2" }.into()],
            conjectural_list: true,
        },
        _ => Classification::Unclassified,
    })
}
