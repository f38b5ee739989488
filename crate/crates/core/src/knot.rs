//! Knot records with candidate-set semantics: every invariant is optional,
//! and an absent value means "unknown", never a default.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Zero-surgery profile of a knot with `ν♯ = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Shape {
    W,
    V,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::W => "W",
            Shape::V => "V",
        })
    }
}

/// Boolean knot attributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    Fibered,
    StronglyQuasipositive,
    Quasipositive,
    Slice,
    RationallySlice,
    Alternating,
    LspaceKnot,
    PositiveSlTransverse,
}

impl Flag {
    pub const ALL: [Flag; 8] = [
        Flag::Fibered,
        Flag::StronglyQuasipositive,
        Flag::Quasipositive,
        Flag::Slice,
        Flag::RationallySlice,
        Flag::Alternating,
        Flag::LspaceKnot,
        Flag::PositiveSlTransverse,
    ];

    /// Attributes that are not preserved by mirroring.
    pub fn is_chiral(self) -> bool {
        matches!(
            self,
            Flag::StronglyQuasipositive
                | Flag::Quasipositive
                | Flag::LspaceKnot
                | Flag::PositiveSlTransverse
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Flag::Fibered => "fibered",
            Flag::StronglyQuasipositive => "strongly_quasipositive",
            Flag::Quasipositive => "quasipositive",
            Flag::Slice => "slice",
            Flag::RationallySlice => "rationally_slice",
            Flag::Alternating => "alternating",
            Flag::LspaceKnot => "lspace_knot",
            Flag::PositiveSlTransverse => "positive_sl_transverse",
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A nonempty subset of `{−, 0, +}` describing what is known about the
/// sign of a Frøyshov invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignSet(u8);

impl SignSet {
    const NEG_BIT: u8 = 1;
    const ZERO_BIT: u8 = 2;
    const POS_BIT: u8 = 4;

    pub const NEG: SignSet = SignSet(Self::NEG_BIT);
    pub const ZERO: SignSet = SignSet(Self::ZERO_BIT);
    pub const POS: SignSet = SignSet(Self::POS_BIT);
    pub const ZERO_OR_NEG: SignSet = SignSet(Self::NEG_BIT | Self::ZERO_BIT);
    pub const ZERO_OR_POS: SignSet = SignSet(Self::ZERO_BIT | Self::POS_BIT);
    pub const NONZERO: SignSet = SignSet(Self::NEG_BIT | Self::POS_BIT);
    pub const UNKNOWN: SignSet = SignSet(7);

    /// Builds a set from the signs (`-1`, `0`, `1`) it contains; `None` if empty.
    pub fn from_signs(signs: impl IntoIterator<Item = i64>) -> Option<SignSet> {
        let bits = signs.into_iter().fold(0u8, |acc, s| acc | Self::bit(s));
        (bits != 0).then_some(SignSet(bits))
    }

    fn bit(sign: i64) -> u8 {
        match sign.signum() {
            -1 => Self::NEG_BIT,
            0 => Self::ZERO_BIT,
            _ => Self::POS_BIT,
        }
    }

    pub fn contains(self, sign: i64) -> bool {
        self.0 & Self::bit(sign) != 0
    }

    pub fn signs(self) -> Vec<i64> {
        [-1, 0, 1]
            .into_iter()
            .filter(|&s| self.contains(s))
            .collect()
    }

    /// The set of signs of `-h` when `h` has signs in `self`.
    pub fn negate(self) -> SignSet {
        SignSet::from_signs(self.signs().into_iter().map(|s| -s)).expect("nonempty")
    }

    pub fn name(self) -> &'static str {
        match self.0 {
            1 => "neg",
            2 => "zero",
            4 => "pos",
            3 => "zero_or_neg",
            6 => "zero_or_pos",
            5 => "nonzero",
            _ => "unknown",
        }
    }
}

impl fmt::Display for SignSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SignSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<SignSet, Error> {
        Ok(match s {
            "neg" => SignSet::NEG,
            "zero" => SignSet::ZERO,
            "pos" => SignSet::POS,
            "zero_or_neg" => SignSet::ZERO_OR_NEG,
            "zero_or_pos" => SignSet::ZERO_OR_POS,
            "nonzero" => SignSet::NONZERO,
            "unknown" => SignSet::UNKNOWN,
            other => return Err(Error::OutOfRange(format!("unknown sign set {other:?}"))),
        })
    }
}

impl Serialize for SignSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for SignSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<SignSet, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Partial knowledge of the invariants of one knot.
///
/// `flags` describe the knot itself. `mirror_flags` holds chiral attributes
/// known for the mirror, so that mirroring loses no information.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnotRecord {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu_sharp: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r0: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_sharp: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slice_genus: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<Shape>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<i64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub flags: BTreeMap<Flag, bool>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub mirror_flags: BTreeMap<Flag, bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub froyshov_plus1: Option<SignSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub froyshov_minus1: Option<SignSet>,
    /// Per-field source tag such as `asserted` or `derived(R4)`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub provenance: BTreeMap<String, String>,
}

/// A structural invariant broken by a record, tagged with the rule it breaks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: String,
    pub fields: Vec<String>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.rule, self.message)
    }
}

/// `ν♯` values allowed by parity: zero or odd.
pub fn is_zero_or_odd(n: i64) -> bool {
    n == 0 || n % 2 != 0
}

impl KnotRecord {
    pub fn named(name: impl Into<String>) -> KnotRecord {
        KnotRecord {
            name: name.into(),
            ..KnotRecord::default()
        }
    }

    pub fn flag(&self, f: Flag) -> Option<bool> {
        self.flags.get(&f).copied()
    }

    pub fn mirror_flag(&self, f: Flag) -> Option<bool> {
        self.mirror_flags.get(&f).copied()
    }

    pub fn with_flag(mut self, f: Flag, value: bool) -> KnotRecord {
        self.flags.insert(f, value);
        self
    }

    /// Checks the structural invariants. An empty list means the record is
    /// structurally sound; inference may still find deeper contradictions.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut push = |rule: &str, fields: &[&str], message: String| {
            out.push(Violation {
                rule: rule.into(),
                fields: fields.iter().map(|s| s.to_string()).collect(),
                message,
            })
        };
        if self.name.trim().is_empty() {
            push("NAME", &["name"], "record name is empty".into());
        }
        if let Some(nu) = self.nu_sharp {
            if !is_zero_or_odd(nu) {
                push(
                    "R1",
                    &["nu_sharp"],
                    format!("nu_sharp = {nu} is neither zero nor odd"),
                );
            }
        }
        if let (Some(nu), Some(r0)) = (self.nu_sharp, self.r0) {
            if (r0 as i128) < (nu as i128).abs() {
                push(
                    "R2",
                    &["r0", "nu_sharp"],
                    format!("r0 = {r0} < |nu_sharp| = {}", nu.abs()),
                );
            }
            if (r0 as i128 - nu as i128) % 2 != 0 {
                push(
                    "R2",
                    &["r0", "nu_sharp"],
                    format!("r0 = {r0} and nu_sharp = {nu} differ in parity"),
                );
            }
        }
        if let (Some(tau), Some(nu)) = (self.tau_sharp, self.nu_sharp) {
            let eps = 2 * tau as i128 - nu as i128;
            if eps.abs() > 1 {
                push(
                    "R6",
                    &["tau_sharp", "nu_sharp"],
                    format!("2*tau_sharp - nu_sharp = {eps} is outside {{-1, 0, 1}}"),
                );
            }
        }
        if let (Some(g), Some(gs)) = (self.genus, self.slice_genus) {
            if gs > g {
                push(
                    "R13",
                    &["slice_genus", "genus"],
                    format!("slice_genus = {gs} exceeds genus = {g}"),
                );
            }
        }
        if let (Some(gs), Some(nu)) = (self.slice_genus, self.nu_sharp) {
            if gs > 0 && (nu.unsigned_abs() as u128) > 2 * gs as u128 - 1 {
                push(
                    "R13",
                    &["nu_sharp", "slice_genus"],
                    format!(
                        "|nu_sharp| = {} exceeds 2*slice_genus - 1 = {}",
                        nu.abs(),
                        2 * gs - 1
                    ),
                );
            }
        }
        if let (Some(shape), Some(nu)) = (self.shape, self.nu_sharp) {
            if nu != 0 {
                push(
                    "SHAPE",
                    &["shape", "nu_sharp"],
                    format!("shape {shape} set but nu_sharp = {nu} != 0"),
                );
            }
        }
        if let Some(s) = self.signature {
            if s % 2 != 0 {
                push("SIG", &["signature"], format!("signature = {s} is odd"));
            }
        }
        for f in self.mirror_flags.keys() {
            if !f.is_chiral() {
                push(
                    "MIRROR",
                    &["mirror_flags"],
                    format!("mirror_flags holds achiral attribute {f}"),
                );
            }
        }
        out
    }
}

/// The shipped database: unknot, both trefoils, figure eight, `T(2,5)` and its mirror.
pub fn seed_database() -> Vec<KnotRecord> {
    use Flag::*;
    let mut unknot = KnotRecord {
        nu_sharp: Some(0),
        r0: Some(0),
        tau_sharp: Some(0),
        genus: Some(0),
        slice_genus: Some(0),
        signature: Some(0),
        shape: Some(Shape::W),
        ..KnotRecord::named("unknot")
    };
    for f in [Fibered, Slice, RationallySlice] {
        unknot.flags.insert(f, true);
    }

    let positive_torus = |name: &str, g: u64| {
        let nu = 2 * g as i64 - 1;
        let mut rec = KnotRecord {
            nu_sharp: Some(nu),
            r0: Some(nu as u64),
            tau_sharp: Some(g as i64),
            genus: Some(g),
            slice_genus: Some(g),
            signature: Some(-2 * g as i64),
            ..KnotRecord::named(name)
        };
        for f in [
            Fibered,
            StronglyQuasipositive,
            Quasipositive,
            Alternating,
            LspaceKnot,
            PositiveSlTransverse,
        ] {
            rec.flags.insert(f, true);
        }
        rec.flags.insert(Slice, false);
        rec.flags.insert(RationallySlice, false);
        rec
    };
    let right_trefoil = positive_torus("right_trefoil", 1);
    let t25 = positive_torus("T2_5", 2);

    let mut fig8 = KnotRecord {
        nu_sharp: Some(0),
        r0: Some(2),
        tau_sharp: Some(0),
        genus: Some(1),
        slice_genus: Some(1),
        signature: Some(0),
        shape: Some(Shape::W),
        ..KnotRecord::named("fig8")
    };
    for (f, v) in [
        (Fibered, true),
        (Alternating, true),
        (Slice, false),
        (RationallySlice, true),
    ] {
        fig8.flags.insert(f, v);
    }

    let mut left_trefoil = crate::concordance::mirror(&right_trefoil);
    left_trefoil.name = "left_trefoil".into();
    let mut t25_mirror = crate::concordance::mirror(&t25);
    t25_mirror.name = "T2_5_mirror".into();

    vec![unknot, right_trefoil, left_trefoil, fig8, t25, t25_mirror]
}
