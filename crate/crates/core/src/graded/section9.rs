//! The graded case analysis for a knot with `(ν♯, r₀) = (0, 2)` that is
//! not the figure eight, run as a finite enumeration.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::laurent::LaurentPoly;
use super::triangle::{triangle_third_dims, triangle_witnesses, TriangleSpec};
use super::{degrees, froyshov_gap, fukaya_zero, GradedDim, Z4};
use crate::dimension::{dim_surgery, Bundle};
use crate::error::{Error, Result};
use crate::knot::{KnotRecord, Shape};
use crate::slope::cable_slope;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section9Query {
    /// Total dimension of `I♯(S³₀(K))`.
    pub dim_zero_total: u64,
    pub forced_k: Option<Z4>,
    pub forced_m: Option<Z4>,
}

impl Default for Section9Query {
    fn default() -> Self {
        Section9Query {
            dim_zero_total: 2,
            forced_k: None,
            forced_m: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Section9Solution {
    pub k: Z4,
    pub m: Z4,
    /// `I♯(S³₋₁(K)) = Q₀ ⊕ Q_{k−1} ⊕ Q_k`.
    pub minus1: GradedDim,
    /// `I♯(S³₁(K)) = Q₀ ⊕ Q_{m−1} ⊕ Q_m`.
    pub plus1: GradedDim,
    pub zero: GradedDim,
}

fn pm1_shape(k: Z4) -> GradedDim {
    GradedDim::from_gradings([Z4::new(0), k - Z4::new(1), k])
}

/// All `(k, m, I♯(S³₀))` for which both surgery triangles
/// `S³ → S³₋₁ → S³₀` and `S³ → S³₀ → S³₁` are exact with the fixed map
/// degrees, and `I♯(S³₀)` has Euler characteristic zero.
pub fn solve_section9(query: &Section9Query) -> BTreeSet<Section9Solution> {
    let s3 = GradedDim::from_gradings([Z4::new(0)]);
    let zeros: Vec<GradedDim> = GradedDim::all_with_total(query.dim_zero_total)
        .into_iter()
        .filter(|z| z.euler_char() == 0)
        .collect();
    let mut out = BTreeSet::new();
    for k in Z4::ALL
        .into_iter()
        .filter(|k| query.forced_k.is_none_or(|f| f == *k))
    {
        for m in Z4::ALL
            .into_iter()
            .filter(|m| query.forced_m.is_none_or(|f| f == *m))
        {
            let (minus1, plus1) = (pm1_shape(k), pm1_shape(m));
            for &zero in &zeros {
                let first = TriangleSpec {
                    a: s3,
                    b: minus1,
                    c: zero,
                    deg_ab: degrees::F_MINUS1,
                    deg_bc: degrees::G_0,
                    deg_ca: degrees::H_0,
                };
                let second = TriangleSpec {
                    a: s3,
                    b: zero,
                    c: plus1,
                    deg_ab: degrees::F_0,
                    deg_bc: degrees::G_1,
                    deg_ca: degrees::H_1,
                };
                if !triangle_witnesses(&first).is_empty() && !triangle_witnesses(&second).is_empty()
                {
                    out.insert(Section9Solution {
                        k,
                        m,
                        minus1,
                        plus1,
                        zero,
                    });
                }
            }
        }
    }
    out
}

/// Graded `X` with `X ⊗ H_*(S³) = r`, where `H_*(S³) = Q₀ ⊕ Q₃`.
fn deconvolve_sphere(r: &GradedDim) -> Vec<GradedDim> {
    let s3 = GradedDim::from_gradings([Z4::new(0), Z4::new(3)]);
    let total = r.total();
    if !total.is_multiple_of(2) {
        return Vec::new();
    }
    GradedDim::all_with_total(total / 2)
        .into_iter()
        .filter(|x| x.tensor(&s3) == *r)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section9Config {
    /// Total dimension of `I♯(S³₀(K))` with the trivial bundle: 2 or 4.
    pub dim_zero_total: u64,
    /// Overrides the Alexander coefficient `a` derived from the chase.
    pub forced_a: Option<i64>,
}

impl Default for Section9Config {
    fn default() -> Self {
        Section9Config {
            dim_zero_total: 2,
            forced_a: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `dim I♯(S³₀(K), μ) = 2`: the fibered figure-eight case.
    FigureEight,
    /// The Alexander bound exceeds every dimension allowed by surgery.
    Contradiction,
    /// The chain closes without conflict.
    NoContradiction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section9Report {
    pub branch: Branch,
    pub solution: Option<Section9Solution>,
    pub alexander_a: Option<i64>,
    pub alexander: Option<String>,
    pub cable_alexander: Option<String>,
    pub lower_bound: Option<u64>,
    pub cable_surgery_slope: Option<String>,
    pub cable_surgery_dim: Option<u64>,
    pub feasible: BTreeSet<u64>,
    pub trace: Vec<String>,
}

impl Section9Report {
    pub fn is_contradiction(&self) -> bool {
        self.branch == Branch::Contradiction
    }
}

fn single(set: BTreeSet<u64>, what: &str) -> Result<u64> {
    match set.len() {
        1 => Ok(*set.iter().next().expect("one element")),
        _ => Err(Error::OutOfRange(format!(
            "{what} is not determined: {set:?}"
        ))),
    }
}

/// Runs the whole chain: graded solve, Frøyshov gap, Alexander polynomial,
/// cable bound, and the comparison with the surgery dimension formula.
pub fn section9_contradiction(config: &Section9Config) -> Result<Section9Report> {
    let mut trace = Vec::new();
    let mut report = Section9Report {
        branch: Branch::NoContradiction,
        solution: None,
        alexander_a: None,
        alexander: None,
        cable_alexander: None,
        lower_bound: None,
        cable_surgery_slope: None,
        cable_surgery_dim: None,
        feasible: BTreeSet::new(),
        trace: Vec::new(),
    };

    let (nu, r0) = (0i64, 2u64);
    let zero_dims: BTreeSet<u64> = [r0, r0 + 2].into();
    if !zero_dims.contains(&config.dim_zero_total) {
        return Err(Error::OutOfRange(format!(
            "dim I#(S^3_0(K)) must lie in {zero_dims:?}, got {}",
            config.dim_zero_total
        )));
    }
    trace.push(format!(
        "(nu#, r0) = ({nu}, {r0}); zero-surgery dimensions {{{}, {}}}",
        r0,
        r0 + 2
    ));
    if config.dim_zero_total == r0 + 2 {
        trace.push("dim I#(S^3_0(K), mu) = 2: I#_odd is 1-dimensional, K is fibered with nu# = 0, the figure eight".into());
        report.branch = Branch::FigureEight;
        report.trace = trace;
        return Ok(report);
    }
    // not the figure eight: trivial bundle r0, meridional r0 + 2
    let rec = KnotRecord {
        nu_sharp: Some(nu),
        r0: Some(r0),
        shape: Some(Shape::V),
        ..KnotRecord::named("K")
    };
    let dim_mu = single(
        dim_surgery(&rec, crate::slope::Slope::integer(0), Bundle::Meridional)?,
        "dim I#(S^3_0, mu)",
    )?;
    trace.push(format!(
        "dim I#(S^3_0(K)) = {}, dim I#(S^3_0(K), mu) = {dim_mu}",
        config.dim_zero_total
    ));

    let solutions = solve_section9(&Section9Query {
        dim_zero_total: config.dim_zero_total,
        ..Default::default()
    });
    if solutions.len() != 1 {
        return Err(Error::OutOfRange(format!(
            "graded solve gave {} solutions, expected 1",
            solutions.len()
        )));
    }
    let sol = *solutions.iter().next().expect("one solution");
    trace.push(format!(
        "graded solve: k = {}, m = {}, I#(S^3_-1) = {}, I#(S^3_1) = {}, I#(S^3_0) = {}",
        sol.k, sol.m, sol.minus1, sol.plus1, sol.zero
    ));
    report.solution = Some(sol);

    let mut reduced = sol.minus1;
    reduced.0[0] -= 1;
    let hat = match deconvolve_sphere(&reduced).as_slice() {
        [x] => *x,
        other => return Err(Error::OutOfRange(format!("Î not determined: {other:?}"))),
    };
    // mod-8 lift of a mod-4 periodic group: Q_j ⊕ Q_{j+4}
    let mut hat8 = [0u64; 8];
    hat8[..4].copy_from_slice(&hat.0);
    hat8[4..].copy_from_slice(&hat.0);
    let dim_hat: u64 = hat8.iter().sum();
    trace.push(format!(
        "Î(S^3_-1) has mod-8 dimensions {hat8:?} (total {dim_hat})"
    ));

    // Floer's triangle gives dim I(S^3_-1) = dim I(S^3_0)_mu = dim I#(S^3_0, mu)
    let dim_i = dim_mu;
    if !fukaya_zero(dim_mu, dim_i) {
        return Err(Error::inconsistent(
            "FUKAYA",
            "zero-surgery dimensions disagree",
        ));
    }
    let h = froyshov_gap(dim_i, dim_hat)?;
    trace.push(format!(
        "dim I(S^3_-1) = {dim_i}, so |h(S^3_-1)| = {h}; genus 1 bounds 0 <= h <= 1"
    ));
    if h > 1 {
        return Err(Error::inconsistent(
            "R7",
            format!("h(S^3_-1) = {h} exceeds the genus-one bound"),
        ));
    }
    let mut i8 = hat8;
    if h == 1 {
        i8[1] += 1;
        i8[5] += 1;
    }
    let chi: i64 = i8
        .iter()
        .enumerate()
        .map(|(j, &d)| if j % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum();
    trace.push(format!(
        "I(S^3_-1) has mod-8 dimensions {i8:?}, chi = {chi}"
    ));

    // chi = -Δ''(1) and Δ''(1) = 2a for the genus-one form
    let derived_a = if (-chi) % 2 == 0 {
        Some(-chi / 2)
    } else {
        None
    };
    let a = match (config.forced_a, derived_a) {
        (Some(a), _) => {
            trace.push(format!("Alexander coefficient forced to a = {a}"));
            a
        }
        (None, Some(a)) => a,
        (None, None) => return Err(Error::OutOfRange(format!("chi = {chi} is odd"))),
    };
    let delta = LaurentPoly::genus1_alexander(a);
    let cable = delta.cable_substitute();
    let bound = cable.casson_chi()?.unsigned_abs();
    trace.push(format!(
        "Delta_K = {delta}; Delta_C = {cable}; dim I(S^3_-1(C)) >= |chi| = {bound}"
    ));
    report.alexander_a = Some(a);
    report.alexander = Some(delta.to_string());
    report.cable_alexander = Some(cable.to_string());
    report.lower_bound = Some(bound);

    let slope = cable_slope(-1, 2, 1)?;
    let rec = KnotRecord {
        nu_sharp: Some(nu),
        r0: Some(r0),
        ..KnotRecord::named("K")
    };
    let d = single(
        dim_surgery(&rec, slope, Bundle::Trivial)?,
        "dim I#(S^3_-1/4)",
    )?;
    let feasible = triangle_third_dims(1, d);
    trace.push(format!(
        "S^3_-1(C) = S^3_{slope}(K) has dim I# = {d}; the surgery triangle allows dim I#(S^3_0(C), mu) in {feasible:?}"
    ));
    trace.push(format!(
        "C has genus 2, so dim I(S^3_0(C))_mu lies in {feasible:?}"
    ));
    report.cable_surgery_slope = Some(slope.to_string());
    report.cable_surgery_dim = Some(d);

    let max = *feasible.iter().max().expect("nonempty");
    report.branch = if !feasible.iter().any(|&x| x >= bound) {
        trace.push(format!("contradiction: {bound} > {max}"));
        Branch::Contradiction
    } else {
        trace.push(format!("no contradiction: bound {bound} is attainable"));
        Branch::NoContradiction
    };
    report.feasible = feasible;
    report.trace = trace;
    Ok(report)
}
