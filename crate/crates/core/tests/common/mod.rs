//! Random consistent knot records for property tests.
//!
//! A generator first draws a complete assignment of every invariant, checks
//! it against every rule, and only then forgets a random subset of fields.
//! Such records can never be contradictory.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use sharpknot::inference::{violated_rule, Var};
use sharpknot::{seed_database, Flag, KnotRecord, Shape, SignSet};

/// A complete assignment; `None` if the draw broke a rule.
fn draw_full(rng: &mut impl Rng) -> Option<BTreeMap<Var, i64>> {
    let odd = |rng: &mut dyn rand::RngCore| 2 * rng.gen_range(-5i64..=4) + 1;
    let nu = if rng.gen_bool(0.3) { 0 } else { odd(rng) };
    let r0 = nu.abs() + 2 * rng.gen_range(0..=3);
    if matches!(
        (nu, r0),
        (0, 0) | (1, 1) | (-1, 1) | (0, 2) | (3, 3) | (-3, 3)
    ) {
        return None;
    }
    let eps = if nu == 0 { 0 } else { *[-1, 1].choose(rng)? };
    let tau = (nu + eps) / 2;
    let lspace = r0 == nu && nu > 0;
    let mirror_lspace = r0 == -nu && nu < 0;
    let min_gs = if nu == 0 { 1 } else { (nu.abs() + 1) / 2 };
    let (genus, gs) = if lspace || mirror_lspace {
        let g = (nu.abs() + 1) / 2;
        (g, g)
    } else {
        let gs = min_gs + rng.gen_range(0..=2);
        (gs + rng.gen_range(0..=2), gs)
    };
    let genus = if (r0 + nu == 2 && nu >= -1) || (r0 - nu == 2 && nu <= 1) {
        1
    } else {
        genus
    };
    let gs = gs.min(genus);
    let shape = if nu != 0 { 0 } else { rng.gen_range(1..=2) };
    let alternating = rng.gen_bool(0.4);
    let signature = if alternating {
        -2 * tau
    } else {
        2 * rng.gen_range(-genus..=genus)
    };
    let rationally_slice = nu == 0 && shape == 1 && rng.gen_bool(0.5);
    let h_plus = if nu > 0 || shape == 2 {
        -1
    } else if rationally_slice {
        0
    } else {
        rng.gen_range(-1..=0)
    };
    let h_minus = if nu < 0 || shape == 2 {
        1
    } else if rationally_slice {
        0
    } else {
        rng.gen_range(0..=1)
    };
    let b = |x: bool| i64::from(x);
    let fibered = lspace || mirror_lspace || rng.gen_bool(0.5);
    let mut m = BTreeMap::from([
        (Var::Nu, nu),
        (Var::R0, r0),
        (Var::Tau, tau),
        (Var::Epsilon, eps),
        (Var::Genus, genus),
        (Var::SliceGenus, gs),
        (Var::Signature, signature),
        (Var::Shape, shape),
        (Var::HPlus1, h_plus),
        (Var::HMinus1, h_minus),
        (Var::Flag(Flag::Fibered), b(fibered)),
        (
            Var::Flag(Flag::StronglyQuasipositive),
            b(lspace || (tau == gs && rng.gen_bool(0.3))),
        ),
        (
            Var::Flag(Flag::Quasipositive),
            b(tau == gs && rng.gen_bool(0.5)),
        ),
        (Var::Flag(Flag::Slice), b(gs == 0)),
        (Var::Flag(Flag::RationallySlice), b(rationally_slice)),
        (Var::Flag(Flag::Alternating), b(alternating)),
        (Var::Flag(Flag::LspaceKnot), b(lspace)),
        (
            Var::Flag(Flag::PositiveSlTransverse),
            b(nu >= 1 && rng.gen_bool(0.5)),
        ),
        (
            Var::MirrorFlag(Flag::StronglyQuasipositive),
            b(mirror_lspace || (-tau == gs && rng.gen_bool(0.3))),
        ),
        (
            Var::MirrorFlag(Flag::Quasipositive),
            b(-tau == gs && rng.gen_bool(0.5)),
        ),
        (Var::MirrorFlag(Flag::LspaceKnot), b(mirror_lspace)),
        (
            Var::MirrorFlag(Flag::PositiveSlTransverse),
            b(nu <= -1 && rng.gen_bool(0.5)),
        ),
    ]);
    if violated_rule(&m).is_some() {
        return None;
    }
    m.remove(&Var::Epsilon);
    Some(m)
}

fn seed_assignment(rec: &KnotRecord) -> BTreeMap<Var, i64> {
    let mut m = BTreeMap::new();
    let mut put = |v: Var, x: Option<i64>| {
        if let Some(x) = x {
            m.insert(v, x);
        }
    };
    put(Var::Nu, rec.nu_sharp);
    put(Var::R0, rec.r0.map(|v| v as i64));
    put(Var::Tau, rec.tau_sharp);
    put(Var::Genus, rec.genus.map(|v| v as i64));
    put(Var::SliceGenus, rec.slice_genus.map(|v| v as i64));
    put(Var::Signature, rec.signature);
    put(
        Var::Shape,
        rec.shape.map(|s| match s {
            Shape::W => 1,
            Shape::V => 2,
        }),
    );
    for f in Flag::ALL {
        put(Var::Flag(f), rec.flag(f).map(i64::from));
        put(Var::MirrorFlag(f), rec.mirror_flag(f).map(i64::from));
    }
    m
}

fn to_record(name: String, full: &BTreeMap<Var, i64>, keep: impl Fn(Var) -> bool) -> KnotRecord {
    let get = |v: Var| full.get(&v).copied().filter(|_| keep(v));
    let mut rec = KnotRecord::named(name);
    rec.nu_sharp = get(Var::Nu);
    rec.r0 = get(Var::R0).map(|v| v as u64);
    rec.tau_sharp = get(Var::Tau);
    rec.genus = get(Var::Genus).map(|v| v as u64);
    rec.slice_genus = get(Var::SliceGenus).map(|v| v as u64);
    rec.signature = get(Var::Signature);
    rec.shape = match get(Var::Shape) {
        Some(1) => Some(Shape::W),
        Some(2) => Some(Shape::V),
        _ => None,
    };
    let sign = |v: Var, widen: bool| {
        get(v).map(|x| {
            if widen {
                SignSet::from_signs([x, -x]).expect("nonempty")
            } else {
                SignSet::from_signs([x]).expect("nonempty")
            }
        })
    };
    rec.froyshov_plus1 = sign(Var::HPlus1, keep(Var::Epsilon));
    rec.froyshov_minus1 = sign(Var::HMinus1, keep(Var::Epsilon));
    for f in Flag::ALL {
        if let Some(x) = get(Var::Flag(f)) {
            rec.flags.insert(f, x != 0);
        }
        if let Some(x) = get(Var::MirrorFlag(f)) {
            rec.mirror_flags.insert(f, x != 0);
        }
    }
    rec
}

/// A record that is a random projection of a consistent knot. One in
/// eight is a projection of a seed knot.
pub fn random_record(rng: &mut impl Rng, index: usize) -> KnotRecord {
    let full = if rng.gen_range(0..8) == 0 {
        seed_assignment(seed_database().choose(rng).expect("nonempty"))
    } else {
        loop {
            if let Some(m) = draw_full(rng) {
                break m;
            }
        }
    };
    let p = rng.gen_range(0.2..0.9);
    let kept: BTreeMap<Var, bool> = Var::all()
        .into_iter()
        .map(|v| (v, rng.gen_bool(p)))
        .collect();
    to_record(format!("k{index}"), &full, |v| kept[&v])
}
