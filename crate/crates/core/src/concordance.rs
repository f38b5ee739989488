//! Connected sums, mirrors, `ε♯` and the ordering it induces.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::knot::{is_zero_or_odd, Flag, KnotRecord, Shape};

/// `ε♯ ∈ {−1, 0, 1}`, or unknown.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EpsilonValue(pub Option<i8>);

impl EpsilonValue {
    pub const UNKNOWN: EpsilonValue = EpsilonValue(None);
    pub const ZERO: EpsilonValue = EpsilonValue(Some(0));
    pub const PLUS: EpsilonValue = EpsilonValue(Some(1));
    pub const MINUS: EpsilonValue = EpsilonValue(Some(-1));
    pub const ALL: [EpsilonValue; 4] = [Self::MINUS, Self::ZERO, Self::PLUS, Self::UNKNOWN];

    pub fn negate(self) -> EpsilonValue {
        EpsilonValue(self.0.map(|e| -e))
    }
}

impl fmt::Display for EpsilonValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(e) => write!(f, "{e}"),
            None => f.write_str("unknown"),
        }
    }
}

fn mirror_name(name: &str) -> String {
    match name
        .strip_prefix("mirror(")
        .and_then(|s| s.strip_suffix(')'))
    {
        Some(inner) => inner.to_string(),
        None => format!("mirror({name})"),
    }
}

/// The mirror image: `ν♯`, `τ♯`, `σ` change sign; `r₀`, genera and shape
/// are kept; the `±1`-surgery Frøyshov signs swap and negate.
pub fn mirror(rec: &KnotRecord) -> KnotRecord {
    let mut flags: BTreeMap<Flag, bool> = rec
        .flags
        .iter()
        .filter(|(f, _)| !f.is_chiral())
        .map(|(f, v)| (*f, *v))
        .collect();
    let mirror_flags: BTreeMap<Flag, bool> = rec
        .flags
        .iter()
        .filter(|(f, _)| f.is_chiral())
        .map(|(f, v)| (*f, *v))
        .collect();
    flags.extend(
        rec.mirror_flags
            .iter()
            .filter(|(f, _)| f.is_chiral())
            .map(|(f, v)| (*f, *v)),
    );
    KnotRecord {
        name: mirror_name(&rec.name),
        nu_sharp: rec.nu_sharp.map(|v| -v),
        r0: rec.r0,
        tau_sharp: rec.tau_sharp.map(|v| -v),
        genus: rec.genus,
        slice_genus: rec.slice_genus,
        shape: rec.shape,
        signature: rec.signature.map(|v| -v),
        flags,
        mirror_flags,
        froyshov_plus1: rec.froyshov_minus1.map(|s| s.negate()),
        froyshov_minus1: rec.froyshov_plus1.map(|s| s.negate()),
        provenance: rec.provenance.clone(),
    }
}

fn check_parity(nu: i64) -> Result<()> {
    if is_zero_or_odd(nu) {
        Ok(())
    } else {
        Err(Error::inconsistent(
            "R1",
            format!("nu_sharp = {nu} is neither zero nor odd"),
        ))
    }
}

/// Candidate values of `ν♯(K # L)`.
pub fn nu_of_sum(nu_k: i64, nu_l: i64) -> Result<BTreeSet<i64>> {
    check_parity(nu_k)?;
    check_parity(nu_l)?;
    if nu_k == 0 {
        return Ok([nu_l].into());
    }
    if nu_l == 0 {
        return Ok([nu_k].into());
    }
    let s = nu_k + nu_l;
    Ok((s - 1..=s + 1).filter(|&v| is_zero_or_odd(v)).collect())
}

/// `ε♯ = 2τ♯ − ν♯`. Zero whenever `ν♯ = 0`, even if `τ♯` is unknown.
pub fn epsilon(rec: &KnotRecord) -> Result<EpsilonValue> {
    match (rec.tau_sharp, rec.nu_sharp) {
        (_, Some(0)) => {
            if let Some(t) = rec.tau_sharp {
                if t != 0 {
                    return Err(Error::inconsistent(
                        "R6",
                        format!("tau_sharp = {t} with nu_sharp = 0"),
                    ));
                }
            }
            Ok(EpsilonValue::ZERO)
        }
        (Some(t), Some(n)) => {
            let e = 2 * t as i128 - n as i128;
            if e.abs() > 1 {
                return Err(Error::inconsistent(
                    "R6",
                    format!("2*tau_sharp - nu_sharp = {e}"),
                ));
            }
            Ok(EpsilonValue(Some(e as i8)))
        }
        _ => Ok(EpsilonValue::UNKNOWN),
    }
}

pub fn epsilon_of_sum(e1: EpsilonValue, e2: EpsilonValue) -> EpsilonValue {
    match (e1.0, e2.0) {
        (Some(0), _) => e2,
        (_, Some(0)) => e1,
        (Some(a), Some(b)) if a == b => e1,
        _ => EpsilonValue::UNKNOWN,
    }
}

/// The ℤ/2 shape homomorphism on `ker ν♯`.
pub fn shape_of_sum(s1: Shape, s2: Shape) -> Shape {
    if s1 == s2 {
        Shape::W
    } else {
        Shape::V
    }
}

/// `τ♯(K) = (ν♯(K#K) − ν♯(K))/2`.
pub fn tau_from_doubling(nu_k: i64, nu_kk: i64) -> Result<i64> {
    let diff = nu_kk - nu_k;
    if diff % 2 != 0 {
        return Err(Error::OutOfRange(format!(
            "nu(K#K) - nu(K) = {diff} is odd"
        )));
    }
    Ok(diff / 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ordering {
    Greater,
    Less,
    Equivalent,
    Undetermined,
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ordering::Greater => "greater",
            Ordering::Less => "less",
            Ordering::Equivalent => "equivalent",
            Ordering::Undetermined => "undetermined",
        })
    }
}

/// Compares classes in `𝒞 / ker ν♯` through the sign of `ε♯(K # mirror K′)`.
pub fn compare(a: &KnotRecord, b: &KnotRecord) -> Result<Ordering> {
    let e = epsilon_of_sum(epsilon(a)?, epsilon(b)?.negate());
    Ok(match e.0 {
        Some(1) => Ordering::Greater,
        Some(-1) => Ordering::Less,
        Some(_) => Ordering::Equivalent,
        None => Ordering::Undetermined,
    })
}

/// A connected sum of knots, some mirrored. Summand order is irrelevant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumExpr {
    summands: Vec<KnotRecord>,
}

/// What the sum rules determine about a connected sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumReport {
    pub nu_candidates: BTreeSet<i64>,
    pub tau_sharp: Option<i64>,
    pub epsilon: EpsilonValue,
    pub shape: Option<Shape>,
}

impl SumExpr {
    /// `(record, mirrored)` pairs; mirrored summands are replaced by their mirrors.
    pub fn new(summands: impl IntoIterator<Item = (KnotRecord, bool)>) -> Result<SumExpr> {
        let mut summands: Vec<KnotRecord> = summands
            .into_iter()
            .map(|(r, m)| if m { mirror(&r) } else { r })
            .collect();
        if summands.is_empty() {
            return Err(Error::OutOfRange(
                "a connected sum needs at least one summand".into(),
            ));
        }
        summands.sort_by(|a, b| {
            let key = |r: &KnotRecord| (r.name.clone(), r.nu_sharp, r.tau_sharp, r.r0);
            key(a)
                .cmp(&key(b))
                .then_with(|| format!("{a:?}").cmp(&format!("{b:?}")))
        });
        Ok(SumExpr { summands })
    }

    pub fn summands(&self) -> &[KnotRecord] {
        &self.summands
    }

    pub fn evaluate(&self) -> Result<SumReport> {
        for r in &self.summands {
            if let Some(v) = r.validate().into_iter().next() {
                return Err(Error::inconsistent(
                    v.rule,
                    format!("{}: {}", r.name, v.message),
                ));
            }
        }
        let nus: Option<Vec<i64>> = self.summands.iter().map(|r| r.nu_sharp).collect();
        let taus: Option<Vec<i64>> = self.summands.iter().map(|r| r.tau_sharp).collect();
        let tau_sharp = taus.map(|t| t.iter().sum::<i64>());

        let mut eps = epsilon(&self.summands[0])?;
        for r in &self.summands[1..] {
            eps = epsilon_of_sum(eps, epsilon(r)?);
        }

        let mut nu_candidates = match &nus {
            Some(nus) => {
                // fold ν♯ over the summands, nonzero ones only widen the interval
                let mut acc: BTreeSet<i64> = [nus[0]].into();
                for &n in &nus[1..] {
                    let mut next = BTreeSet::new();
                    for &a in &acc {
                        next.extend(nu_of_sum(a, n)?);
                    }
                    acc = next;
                }
                acc
            }
            None => BTreeSet::new(),
        };
        if let Some(t) = tau_sharp {
            let allowed: BTreeSet<i64> = match eps.0 {
                Some(e) => [2 * t - e as i64].into(),
                None => (2 * t - 1..=2 * t + 1).collect(),
            };
            nu_candidates = if nus.is_some() {
                nu_candidates.intersection(&allowed).copied().collect()
            } else {
                allowed
            };
            nu_candidates.retain(|&v| is_zero_or_odd(v));
        }

        let shape = match &nus {
            Some(nus) if nus.iter().all(|&n| n == 0) => self
                .summands
                .iter()
                .map(|r| r.shape)
                .collect::<Option<Vec<_>>>()
                .map(|s| s.into_iter().fold(Shape::W, shape_of_sum)),
            _ => None,
        };
        Ok(SumReport {
            nu_candidates,
            tau_sharp,
            epsilon: eps,
            shape,
        })
    }
}
