//! Forward-chaining inference over partial knot records.
//!
//! Every unknown invariant is a finite candidate set. Each rule is a
//! relation over two or three variables, and propagation removes values
//! that have no supporting tuple until nothing changes. Removal is
//! monotone, so the fixpoint does not depend on the order rules run in.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::concordance::EpsilonValue;
use crate::dimension::{classify_small, dim_surgery, Bundle, Classification};
use crate::knot::{is_zero_or_odd, seed_database, Flag, KnotRecord, Shape, SignSet};
use crate::slope::Slope;

/// Default `|ν♯|` bound when nothing else limits the domain.
pub const DEFAULT_NU_BOUND: i64 = 99;

/// One unknown of the constraint network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Nu,
    R0,
    Tau,
    Epsilon,
    Genus,
    SliceGenus,
    Signature,
    /// `0` when `ν♯ ≠ 0`, `1` for W, `2` for V.
    Shape,
    HPlus1,
    HMinus1,
    Flag(Flag),
    MirrorFlag(Flag),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Int,
    Bool,
    Sign,
    Shape,
}

impl Var {
    pub fn all() -> Vec<Var> {
        let mut v = vec![
            Var::Nu,
            Var::R0,
            Var::Tau,
            Var::Epsilon,
            Var::Genus,
            Var::SliceGenus,
            Var::Signature,
            Var::Shape,
            Var::HPlus1,
            Var::HMinus1,
        ];
        v.extend(Flag::ALL.iter().map(|&f| Var::Flag(f)));
        v.extend(
            Flag::ALL
                .iter()
                .filter(|f| f.is_chiral())
                .map(|&f| Var::MirrorFlag(f)),
        );
        v
    }

    fn kind(self) -> Kind {
        match self {
            Var::Epsilon | Var::HPlus1 | Var::HMinus1 => Kind::Sign,
            Var::Shape => Kind::Shape,
            Var::Flag(_) | Var::MirrorFlag(_) => Kind::Bool,
            _ => Kind::Int,
        }
    }

    /// The record field this variable lives in.
    pub fn field(self) -> String {
        match self {
            Var::Nu => "nu_sharp".into(),
            Var::R0 => "r0".into(),
            Var::Tau => "tau_sharp".into(),
            Var::Epsilon => "epsilon_sharp".into(),
            Var::Genus => "genus".into(),
            Var::SliceGenus => "slice_genus".into(),
            Var::Signature => "signature".into(),
            Var::Shape => "shape".into(),
            Var::HPlus1 => "froyshov_plus1".into(),
            Var::HMinus1 => "froyshov_minus1".into(),
            Var::Flag(f) => format!("flags.{f}"),
            Var::MirrorFlag(f) => format!("mirror_flags.{f}"),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field())
    }
}

fn render(kind: Kind, set: &BTreeSet<i64>) -> String {
    let label = |v: i64| match kind {
        Kind::Int | Kind::Sign => v.to_string(),
        Kind::Bool => (v != 0).to_string(),
        Kind::Shape => match v {
            0 => "none".into(),
            1 => "W".into(),
            _ => "V".into(),
        },
    };
    if set.len() > 8 {
        let (lo, hi) = (
            set.first().expect("nonempty"),
            set.last().expect("nonempty"),
        );
        return format!("{{{lo}..{hi}; {} values}}", set.len());
    }
    let items: Vec<String> = set.iter().map(|&v| label(v)).collect();
    format!("{{{}}}", items.join(", "))
}

type Pred = Box<dyn Fn(&[i64]) -> bool + Send + Sync>;

/// A rule: a relation over a short tuple of variables.
pub struct Constraint {
    pub rule_id: &'static str,
    pub anchor: &'static str,
    pub scope: Vec<Var>,
    pred: Pred,
}

impl fmt::Debug for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Constraint")
            .field("rule_id", &self.rule_id)
            .field("anchor", &self.anchor)
            .field("scope", &self.scope)
            .finish()
    }
}

impl Constraint {
    fn new(rule_id: &'static str, anchor: &'static str, scope: Vec<Var>, pred: Pred) -> Constraint {
        Constraint {
            rule_id,
            anchor,
            scope,
            pred,
        }
    }

    pub fn holds(&self, values: &[i64]) -> bool {
        (self.pred)(values)
    }
}

fn imp(a: bool, b: bool) -> bool {
    !a || b
}

fn on(x: i64) -> bool {
    x != 0
}

fn seed_value(rec: &KnotRecord, var: Var) -> Option<i64> {
    match var {
        Var::Nu => rec.nu_sharp,
        Var::R0 => rec.r0.map(|v| v as i64),
        Var::Tau => rec.tau_sharp,
        Var::Epsilon => None,
        Var::Genus => rec.genus.map(|v| v as i64),
        Var::SliceGenus => rec.slice_genus.map(|v| v as i64),
        Var::Signature => rec.signature,
        Var::Shape => match (rec.nu_sharp, rec.shape) {
            (Some(n), _) if n != 0 => Some(0),
            (_, Some(Shape::W)) => Some(1),
            (_, Some(Shape::V)) => Some(2),
            _ => None,
        },
        Var::HPlus1 | Var::HMinus1 => None,
        Var::Flag(f) => rec.flag(f).map(i64::from),
        Var::MirrorFlag(f) => rec.mirror_flag(f).map(i64::from),
    }
}

/// The seed knot a `(ν♯, r₀)` pair pins down, if any.
fn identified(nu: i64, r0: i64) -> Option<String> {
    match classify_small(nu, u64::try_from(r0).ok()?) {
        Ok(Classification::Identified { knot }) => Some(knot),
        _ => None,
    }
}

fn build_rules() -> Vec<Constraint> {
    use crate::knot::Flag::{
        Alternating, Fibered, LspaceKnot, PositiveSlTransverse, Quasipositive, RationallySlice,
        Slice, StronglyQuasipositive,
    };
    use Var::{
        Epsilon, Genus, HMinus1, HPlus1, MirrorFlag, Nu, Shape, Signature, SliceGenus, Tau, R0,
    };
    let mut rules = Vec::new();
    let mut add = |id, anchor, scope: Vec<Var>, pred: Pred| {
        rules.push(Constraint::new(id, anchor, scope, pred))
    };

    add(
        "R1",
        "nu-sharp is either zero or odd",
        vec![Nu],
        Box::new(|v| is_zero_or_odd(v[0])),
    );
    add(
        "R2",
        "r0 >= |nu-sharp| and r0 = nu-sharp mod 2",
        vec![Nu, R0],
        Box::new(|v| v[1] >= v[0].abs() && (v[1] - v[0]) % 2 == 0),
    );
    add(
        "R3",
        "r0 > 0 for every nontrivial knot",
        vec![R0, Genus],
        Box::new(|v| (v[0] == 0) == (v[1] == 0)),
    );

    // knots pinned down by (nu, r0): every known invariant must match
    let seeds = seed_database();
    let targets: Vec<Var> = Var::all()
        .into_iter()
        .filter(|v| !matches!(v, Nu | R0))
        .collect();
    for target in targets {
        let table: Vec<((i64, i64), i64)> = seeds
            .iter()
            .filter_map(|s| {
                let key = (s.nu_sharp?, s.r0? as i64);
                (identified(key.0, key.1).as_deref() == Some(s.name.as_str()))
                    .then(|| seed_value(s, target).map(|x| (key, x)))
                    .flatten()
            })
            .collect();
        if table.is_empty() {
            continue;
        }
        add(
            "R3",
            "r0 <= 2 leaves only the unknot, the trefoils and the figure eight; nu-sharp = +-3 with r0 = 3 is T(2,5) or its mirror",
            vec![Nu, R0, target],
            Box::new(move |v| table.iter().all(|&((n, r), x)| n != v[0] || r != v[1] || x == v[2])),
        );
    }

    let lspace = "for nontrivial knots r0 = nu-sharp exactly for instanton L-space knots, which are fibered, strongly quasipositive and have r0 = nu-sharp = 2g - 1";
    add(
        "R4",
        lspace,
        vec![Var::Flag(LspaceKnot), Nu, R0],
        Box::new(|v| on(v[0]) == (v[2] == v[1] && v[1] > 0)),
    );
    add(
        "R4",
        lspace,
        vec![Var::Flag(LspaceKnot), Nu, Genus],
        Box::new(|v| imp(on(v[0]), v[1] == 2 * v[2] - 1)),
    );
    add(
        "R4",
        lspace,
        vec![Var::Flag(LspaceKnot), Var::Flag(Fibered)],
        Box::new(|v| imp(on(v[0]), on(v[1]))),
    );
    add(
        "R4",
        lspace,
        vec![Var::Flag(LspaceKnot), Var::Flag(StronglyQuasipositive)],
        Box::new(|v| imp(on(v[0]), on(v[1]))),
    );
    let lspace_m = "the mirror statement of the L-space rule";
    add(
        "R15",
        lspace_m,
        vec![MirrorFlag(LspaceKnot), Nu, R0],
        Box::new(|v| on(v[0]) == (v[2] == -v[1] && v[1] < 0)),
    );
    add(
        "R15",
        lspace_m,
        vec![MirrorFlag(LspaceKnot), Nu, Genus],
        Box::new(|v| imp(on(v[0]), -v[1] == 2 * v[2] - 1)),
    );
    add(
        "R15",
        lspace_m,
        vec![MirrorFlag(LspaceKnot), Var::Flag(Fibered)],
        Box::new(|v| imp(on(v[0]), on(v[1]))),
    );
    add(
        "R15",
        lspace_m,
        vec![MirrorFlag(LspaceKnot), MirrorFlag(StronglyQuasipositive)],
        Box::new(|v| imp(on(v[0]), on(v[1]))),
    );

    add(
        "R5",
        "if tau-sharp > 0 then nu-sharp > 0",
        vec![Tau, Nu],
        Box::new(|v| imp(v[0] > 0, v[1] > 0)),
    );
    add(
        "R15",
        "if tau-sharp < 0 then nu-sharp < 0",
        vec![Tau, Nu],
        Box::new(|v| imp(v[0] < 0, v[1] < 0)),
    );
    add(
        "R6",
        "epsilon-sharp = 2 tau-sharp - nu-sharp lies in {-1, 0, 1}",
        vec![Tau, Nu, Epsilon],
        Box::new(|v| v[2] == 2 * v[0] - v[1]),
    );

    add(
        "R7",
        "h(S^3_1(K)) <= 0 for every knot",
        vec![HPlus1],
        Box::new(|v| v[0] <= 0),
    );
    add(
        "R7",
        "if nu-sharp > 0 then h(S^3_1(K)) < 0",
        vec![Nu, HPlus1],
        Box::new(|v| imp(v[0] > 0, v[1] < 0)),
    );
    add(
        "R15",
        "h(S^3_-1(K)) >= 0 for every knot",
        vec![HMinus1],
        Box::new(|v| v[0] >= 0),
    );
    add(
        "R15",
        "if nu-sharp < 0 then h(S^3_-1(K)) > 0",
        vec![Nu, HMinus1],
        Box::new(|v| imp(v[0] < 0, v[1] > 0)),
    );

    add(
        "R8",
        "W/V shape is defined exactly when nu-sharp = 0",
        vec![Nu, Shape],
        Box::new(|v| (v[0] != 0) == (v[1] == 0)),
    );
    add(
        "R8",
        "a V-shaped knot has h(S^3_-1(K)) > 0 and h(S^3_1(K)) < 0",
        vec![Shape, HPlus1],
        Box::new(|v| imp(v[0] == 2, v[1] < 0)),
    );
    add(
        "R8",
        "a V-shaped knot has h(S^3_-1(K)) > 0 and h(S^3_1(K)) < 0",
        vec![Shape, HMinus1],
        Box::new(|v| imp(v[0] == 2, v[1] > 0)),
    );

    let rs = "a rationally slice knot has nu-sharp = tau-sharp = 0 and is W-shaped";
    add(
        "R9",
        rs,
        vec![Var::Flag(RationallySlice), Nu],
        Box::new(|v| imp(on(v[0]), v[1] == 0)),
    );
    add(
        "R9",
        rs,
        vec![Var::Flag(RationallySlice), Tau],
        Box::new(|v| imp(on(v[0]), v[1] == 0)),
    );
    add(
        "R9",
        rs,
        vec![Var::Flag(RationallySlice), Shape],
        Box::new(|v| imp(on(v[0]), v[1] == 1)),
    );
    add(
        "R9",
        "S^3_1 of a rationally slice knot bounds a rational ball, so h >= 0",
        vec![Var::Flag(RationallySlice), HPlus1],
        Box::new(|v| imp(on(v[0]), v[1] >= 0)),
    );
    add(
        "R9",
        "S^3_-1 of a rationally slice knot bounds a rational ball, so h <= 0",
        vec![Var::Flag(RationallySlice), HMinus1],
        Box::new(|v| imp(on(v[0]), v[1] <= 0)),
    );
    add(
        "R9",
        "a slice knot is rationally slice",
        vec![Var::Flag(Slice), Var::Flag(RationallySlice)],
        Box::new(|v| imp(on(v[0]), on(v[1]))),
    );

    add(
        "R12",
        "positive transverse self-linking gives nu-sharp >= 1",
        vec![Var::Flag(PositiveSlTransverse), Nu],
        Box::new(|v| imp(on(v[0]), v[1] >= 1)),
    );
    add(
        "R12",
        "quasipositive knots have tau-sharp = g_s",
        vec![Var::Flag(Quasipositive), Tau, SliceGenus],
        Box::new(|v| imp(on(v[0]), v[1] == v[2])),
    );
    add(
        "R12",
        "alternating knots have tau-sharp = -signature/2",
        vec![Var::Flag(Alternating), Tau, Signature],
        Box::new(|v| imp(on(v[0]), 2 * v[1] == -v[2])),
    );
    add(
        "R15",
        "a mirror with positive transverse self-linking gives nu-sharp <= -1",
        vec![MirrorFlag(PositiveSlTransverse), Nu],
        Box::new(|v| imp(on(v[0]), v[1] <= -1)),
    );
    add(
        "R15",
        "a quasipositive mirror gives tau-sharp = -g_s",
        vec![MirrorFlag(Quasipositive), Tau, SliceGenus],
        Box::new(|v| imp(on(v[0]), -v[1] == v[2])),
    );

    add(
        "R13",
        "|nu-sharp| <= 2 g_s - 1 whenever nu-sharp != 0",
        vec![Nu, SliceGenus],
        Box::new(|v| v[0] == 0 || v[0].abs() < 2 * v[1]),
    );
    add(
        "R13",
        "g_s <= g",
        vec![SliceGenus, Genus],
        Box::new(|v| v[0] <= v[1]),
    );
    add(
        "R13",
        "a knot is slice exactly when g_s = 0",
        vec![Var::Flag(Slice), SliceGenus],
        Box::new(|v| on(v[0]) == (v[1] == 0)),
    );

    add(
        "R14",
        "r0 - nu-sharp = 2 with nu-sharp <= 1 forces Seifert genus 1",
        vec![Nu, R0, Genus],
        Box::new(|v| imp(v[1] - v[0] == 2 && v[0] <= 1, v[2] == 1)),
    );
    add(
        "R15",
        "r0 + nu-sharp = 2 with nu-sharp >= -1 forces Seifert genus 1",
        vec![Nu, R0, Genus],
        Box::new(|v| imp(v[1] + v[0] == 2 && v[0] >= -1, v[2] == 1)),
    );

    add(
        "SIG",
        "the signature of a knot is even",
        vec![Signature],
        Box::new(|v| v[0] % 2 == 0),
    );
    rules
}

/// The fixed rule table, in its default order.
pub fn rules() -> &'static [Constraint] {
    static RULES: OnceLock<Vec<Constraint>> = OnceLock::new();
    RULES.get_or_init(build_rules)
}

/// The first rule a complete assignment breaks, if any. Variables missing
/// from `values` make every rule that mentions them vacuous.
pub fn violated_rule(values: &BTreeMap<Var, i64>) -> Option<&'static Constraint> {
    rules().iter().find(|c| {
        let tuple: Option<Vec<i64>> = c.scope.iter().map(|v| values.get(v).copied()).collect();
        tuple.is_some_and(|t| !c.holds(&t))
    })
}

/// One narrowing step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub field: String,
    pub before: String,
    pub after: String,
    pub rule_id: String,
    pub anchor: String,
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}: {} -> {} ({})",
            self.rule_id, self.field, self.before, self.after, self.anchor
        )
    }
}

/// Raised when a candidate set empties or a record breaks a structural rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contradiction {
    pub rule_id: String,
    pub fields: Vec<String>,
    pub values: Vec<String>,
    pub message: String,
}

impl fmt::Display for Contradiction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.rule_id, self.message)
    }
}

/// A conclusion with no field of its own.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Statement {
    pub rule_id: String,
    pub text: String,
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.rule_id, self.text)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InferenceOptions {
    /// Bound on `|ν♯|` and on the other unbounded integers.
    pub nu_bound: i64,
    /// A permutation of rule indices; the default order when `None`.
    pub order: Option<Vec<usize>>,
}

impl InferenceOptions {
    pub fn new() -> InferenceOptions {
        InferenceOptions {
            nu_bound: DEFAULT_NU_BOUND,
            order: None,
        }
    }
}

/// Candidate sets at the fixpoint, with the log that produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixpoint {
    pub domains: BTreeMap<Var, BTreeSet<i64>>,
    pub initial: BTreeMap<Var, BTreeSet<i64>>,
    pub derivations: Vec<Derivation>,
    pub contradictions: Vec<Contradiction>,
    /// Last rule that narrowed each variable.
    pub narrowed_by: BTreeMap<Var, &'static str>,
}

impl Fixpoint {
    pub fn domain(&self, v: Var) -> &BTreeSet<i64> {
        &self.domains[&v]
    }

    pub fn value(&self, v: Var) -> Option<i64> {
        let d = self.domain(v);
        (d.len() == 1).then(|| *d.first().expect("singleton"))
    }
}

fn effective_bound(rec: &KnotRecord, bound: i64) -> i64 {
    let asserted = [
        rec.nu_sharp.map(i64::abs),
        rec.r0.map(|v| v as i64),
        rec.tau_sharp.map(i64::abs),
        rec.genus.map(|v| v as i64),
        rec.slice_genus.map(|v| v as i64),
        rec.signature.map(|v| v.abs() / 2 + 1),
    ];
    let m = asserted.into_iter().flatten().max().unwrap_or(0);
    bound.max(1).max(2 * m + 1)
}

fn initial_domains(rec: &KnotRecord, b: i64) -> BTreeMap<Var, BTreeSet<i64>> {
    let int = |v: Option<i64>, lo: i64, hi: i64| -> BTreeSet<i64> {
        match v {
            Some(x) => [x].into(),
            None => (lo..=hi).collect(),
        }
    };
    let signs = |s: Option<SignSet>| {
        s.unwrap_or(SignSet::UNKNOWN)
            .signs()
            .into_iter()
            .collect::<BTreeSet<i64>>()
    };
    let bool_dom = |v: Option<bool>| match v {
        Some(x) => BTreeSet::from([i64::from(x)]),
        None => BTreeSet::from([0, 1]),
    };
    let mut d = BTreeMap::new();
    for var in Var::all() {
        let dom = match var {
            Var::Nu => int(rec.nu_sharp, -b, b),
            Var::R0 => int(rec.r0.map(|v| v as i64), 0, b),
            Var::Tau => int(rec.tau_sharp, -b, b),
            Var::Epsilon => [-1, 0, 1].into(),
            Var::Genus => int(rec.genus.map(|v| v as i64), 0, b),
            Var::SliceGenus => int(rec.slice_genus.map(|v| v as i64), 0, b),
            Var::Signature => match rec.signature {
                Some(s) => [s].into(),
                None => (-b..=b).map(|x| 2 * x).collect(),
            },
            Var::Shape => match rec.shape {
                Some(Shape::W) => [1].into(),
                Some(Shape::V) => [2].into(),
                None => [0, 1, 2].into(),
            },
            Var::HPlus1 => signs(rec.froyshov_plus1),
            Var::HMinus1 => signs(rec.froyshov_minus1),
            Var::Flag(f) => bool_dom(rec.flag(f)),
            Var::MirrorFlag(f) => bool_dom(rec.mirror_flag(f)),
        };
        d.insert(var, dom);
    }
    d
}

/// Does `values[pos] = x` extend to a tuple satisfying `c` over `doms`?
fn supported(c: &Constraint, doms: &[&BTreeSet<i64>], pos: usize, x: i64) -> bool {
    fn go(
        c: &Constraint,
        doms: &[&BTreeSet<i64>],
        pos: usize,
        at: usize,
        tuple: &mut Vec<i64>,
    ) -> bool {
        if at == doms.len() {
            return c.holds(tuple);
        }
        if at == pos {
            return go(c, doms, pos, at + 1, tuple);
        }
        for &y in doms[at] {
            tuple[at] = y;
            if go(c, doms, pos, at + 1, tuple) {
                return true;
            }
        }
        false
    }
    let mut tuple = vec![0; doms.len()];
    tuple[pos] = x;
    go(c, doms, pos, 0, &mut tuple)
}

/// Runs every rule to the fixpoint. A record that breaks a structural
/// invariant is reported as is, without propagation.
pub fn propagate(rec: &KnotRecord, opts: &InferenceOptions) -> Fixpoint {
    let table = rules();
    let b = effective_bound(rec, opts.nu_bound);
    let initial = initial_domains(rec, b);
    let mut fx = Fixpoint {
        domains: initial.clone(),
        initial,
        derivations: Vec::new(),
        contradictions: Vec::new(),
        narrowed_by: BTreeMap::new(),
    };

    let structural = rec.validate();
    if !structural.is_empty() {
        fx.contradictions = structural
            .into_iter()
            .map(|v| Contradiction {
                rule_id: v.rule,
                fields: v.fields,
                values: Vec::new(),
                message: v.message,
            })
            .collect();
        return fx;
    }

    let order: Vec<usize> = match &opts.order {
        Some(o) if is_permutation(o, table.len()) => o.clone(),
        _ => (0..table.len()).collect(),
    };
    let mut watchers: BTreeMap<Var, Vec<usize>> = BTreeMap::new();
    for &ci in &order {
        for &v in &table[ci].scope {
            watchers.entry(v).or_default().push(ci);
        }
    }
    let mut queue: VecDeque<usize> = order.iter().copied().collect();
    let mut queued = vec![true; table.len()];

    while let Some(ci) = queue.pop_front() {
        queued[ci] = false;
        let c = &table[ci];
        for pos in 0..c.scope.len() {
            let var = c.scope[pos];
            let doms: Vec<&BTreeSet<i64>> = c.scope.iter().map(|v| &fx.domains[v]).collect();
            let keep: BTreeSet<i64> = doms[pos]
                .iter()
                .copied()
                .filter(|&x| supported(c, &doms, pos, x))
                .collect();
            if keep.len() == doms[pos].len() {
                continue;
            }
            let before = render(var.kind(), doms[pos]);
            let after = render(var.kind(), &keep);
            if keep.is_empty() {
                fx.contradictions.push(Contradiction {
                    rule_id: c.rule_id.into(),
                    fields: c.scope.iter().map(|v| v.field()).collect(),
                    values: c
                        .scope
                        .iter()
                        .map(|v| render(v.kind(), &fx.domains[v]))
                        .collect(),
                    message: format!("{} has no value left: {}", var.field(), c.anchor),
                });
                fx.domains.insert(var, keep);
                return fx;
            }
            fx.derivations.push(Derivation {
                field: var.field(),
                before,
                after,
                rule_id: c.rule_id.into(),
                anchor: c.anchor.into(),
            });
            fx.domains.insert(var, keep);
            fx.narrowed_by.insert(var, c.rule_id);
            for &other in &watchers[&var] {
                if !queued[other] {
                    queued[other] = true;
                    queue.push_back(other);
                }
            }
        }
    }
    fx
}

fn is_permutation(o: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    o.len() == n
        && o.iter()
            .all(|&i| i < n && !std::mem::replace(&mut seen[i], true))
}

/// Everything [`apply_rules`] learns about one record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InferenceReport {
    pub record: KnotRecord,
    pub epsilon: EpsilonValue,
    /// Integer fields narrowed but not determined.
    pub candidates: BTreeMap<String, Vec<i64>>,
    pub derivations: Vec<Derivation>,
    pub contradictions: Vec<Contradiction>,
    pub statements: Vec<Statement>,
}

impl InferenceReport {
    pub fn is_consistent(&self) -> bool {
        self.contradictions.is_empty()
    }
}

fn enrich(rec: &KnotRecord, fx: &Fixpoint) -> KnotRecord {
    let mut out = rec.clone();
    let mark = |out: &mut KnotRecord, var: Var, was_known: bool| {
        let field = var.field();
        if was_known {
            out.provenance
                .entry(field)
                .or_insert_with(|| "asserted".into());
        } else if let Some(rule) = fx.narrowed_by.get(&var) {
            out.provenance.insert(field, format!("derived({rule})"));
        }
    };
    macro_rules! fill {
        ($field:ident, $var:expr, $conv:expr) => {
            let known = out.$field.is_some();
            if !known {
                out.$field = fx.value($var).map($conv);
            }
            if out.$field.is_some() {
                mark(&mut out, $var, known);
            }
        };
    }
    fill!(nu_sharp, Var::Nu, |v| v);
    fill!(r0, Var::R0, |v| v as u64);
    fill!(tau_sharp, Var::Tau, |v| v);
    fill!(genus, Var::Genus, |v| v as u64);
    fill!(slice_genus, Var::SliceGenus, |v| v as u64);
    fill!(signature, Var::Signature, |v| v);
    let shape_known = out.shape.is_some();
    if !shape_known {
        out.shape = match fx.value(Var::Shape) {
            Some(1) => Some(Shape::W),
            Some(2) => Some(Shape::V),
            _ => None,
        };
    }
    if out.shape.is_some() {
        mark(&mut out, Var::Shape, shape_known);
    }
    for (var, slot) in [(Var::HPlus1, 0), (Var::HMinus1, 1)] {
        let narrowed = fx.domain(var) != &fx.initial[&var];
        let current = if slot == 0 {
            out.froyshov_plus1
        } else {
            out.froyshov_minus1
        };
        let known = current.is_some();
        if narrowed || known {
            let set = SignSet::from_signs(fx.domain(var).iter().copied());
            if slot == 0 {
                out.froyshov_plus1 = set;
            } else {
                out.froyshov_minus1 = set;
            }
            mark(&mut out, var, known && !narrowed);
        }
    }
    for f in Flag::ALL {
        let known = out.flags.contains_key(&f);
        if !known {
            if let Some(v) = fx.value(Var::Flag(f)) {
                out.flags.insert(f, v != 0);
            }
        }
        if out.flags.contains_key(&f) {
            mark(&mut out, Var::Flag(f), known);
        }
        if f.is_chiral() {
            let known = out.mirror_flags.contains_key(&f);
            if !known {
                if let Some(v) = fx.value(Var::MirrorFlag(f)) {
                    out.mirror_flags.insert(f, v != 0);
                }
            }
            if out.mirror_flags.contains_key(&f) {
                mark(&mut out, Var::MirrorFlag(f), known);
            }
        }
    }
    out
}

fn statements(fx: &Fixpoint) -> Vec<Statement> {
    let mut out = Vec::new();
    let nus = fx.domain(Var::Nu);
    let r0s = fx.domain(Var::R0);
    if nus.iter().all(|&n| n > 0) {
        out.push(Statement {
            rule_id: "R10".into(),
            text: "the homology spheres S^3_{1/n}(K), n >= 1, are linearly independent in the homology cobordism group"
                .into(),
        });
    }
    if nus.iter().all(|&n| n < 0) {
        out.push(Statement {
            rule_id: "R15".into(),
            text: "the homology spheres S^3_{-1/n}(K), n >= 1, are linearly independent in the homology cobordism group"
                .into(),
        });
    }

    if nus.len() * r0s.len() <= 64 {
        let pairs: Vec<(i64, i64)> = nus
            .iter()
            .flat_map(|&n| r0s.iter().map(move |&r| (n, r)))
            .filter(|&(n, r)| r >= n.abs() && (r - n) % 2 == 0)
            .collect();
        let classes: BTreeSet<String> = pairs
            .iter()
            .filter_map(|&(n, r)| classify_small(n, r as u64).ok())
            .map(|c| c.to_string())
            .collect();
        let all_identified =
            !pairs.is_empty() && pairs.iter().all(|&(n, r)| identified(n, r).is_some());
        if all_identified {
            let names: Vec<String> = classes.into_iter().collect();
            let text = if names == ["left_trefoil", "right_trefoil"] {
                "K is a trefoil (left_trefoil or right_trefoil)".to_string()
            } else {
                format!("K is {}", names.join(" or "))
            };
            out.push(Statement {
                rule_id: "R3".into(),
                text,
            });
        } else if pairs.len() == 1 {
            let (n, r) = pairs[0];
            if let Ok(c @ Classification::Constrained { .. }) = classify_small(n, r as u64) {
                let rule = if n > 0 { "R14" } else { "R15" };
                out.push(Statement {
                    rule_id: rule.into(),
                    text: format!("K has {c}"),
                });
            }
        }
        if pairs.len() == 1 {
            let (n, r) = pairs[0];
            let shape = match fx.value(Var::Shape) {
                Some(1) => Some(Shape::W),
                Some(2) => Some(Shape::V),
                _ => None,
            };
            let probe = KnotRecord {
                nu_sharp: Some(n),
                r0: Some(r as u64),
                shape,
                ..KnotRecord::named("probe")
            };
            if let Ok(dims) = dim_surgery(&probe, Slope::integer(0), Bundle::Trivial) {
                if dims == BTreeSet::from([2]) {
                    out.push(Statement {
                        rule_id: "R11".into(),
                        text: "dim I#(S^3_0(K)) = 2, so K is the unknot or a trefoil".into(),
                    });
                }
            }
        }
    }
    out
}

/// Runs the rules to a fixpoint and reports the enriched record.
pub fn apply_rules(rec: &KnotRecord, opts: &InferenceOptions) -> InferenceReport {
    let fx = propagate(rec, opts);
    if !fx.contradictions.is_empty() {
        return InferenceReport {
            record: rec.clone(),
            epsilon: EpsilonValue::UNKNOWN,
            candidates: BTreeMap::new(),
            derivations: fx.derivations,
            contradictions: fx.contradictions,
            statements: Vec::new(),
        };
    }
    let mut candidates = BTreeMap::new();
    for var in [
        Var::Nu,
        Var::R0,
        Var::Tau,
        Var::Genus,
        Var::SliceGenus,
        Var::Signature,
    ] {
        let d = fx.domain(var);
        if d.len() > 1 && d != &fx.initial[&var] {
            candidates.insert(var.field(), d.iter().copied().collect());
        }
    }
    InferenceReport {
        record: enrich(rec, &fx),
        epsilon: EpsilonValue(fx.value(Var::Epsilon).map(|e| e as i8)),
        candidates,
        statements: statements(&fx),
        derivations: fx.derivations,
        contradictions: fx.contradictions,
    }
}

/// Contradictions only; empty means consistent.
pub fn check_consistency(rec: &KnotRecord, opts: &InferenceOptions) -> Vec<Contradiction> {
    propagate(rec, opts).contradictions
}

/// [`apply_rules`] over many records, in parallel when the `parallel`
/// feature is on. Output order follows input order.
pub fn apply_batch(recs: &[KnotRecord], opts: &InferenceOptions) -> Vec<InferenceReport> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        recs.par_iter().map(|r| apply_rules(r, opts)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        recs.iter().map(|r| apply_rules(r, opts)).collect()
    }
}
