//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sharpknot::concordance::Ordering;
use sharpknot::dimension::{min_r0, SurgeryCandidate};
use sharpknot::graded::{
    section9_contradiction, solve_section9, GradedDim, LaurentPoly, Section9Config, Section9Query,
    Z4,
};
use sharpknot::inference::{apply_rules, propagate, rules, InferenceOptions};
use sharpknot::knot::is_zero_or_odd;
use sharpknot::parity::{
    index_sets, run_identity_suite, sweep_sequential, IdentityLimits, IndexSet,
};
use sharpknot::{
    compare, dim_surgery, epsilon, epsilon_of_sum, mirror, nu_of_sum, seed_database, shape_of_sum,
    slope_bound, Bundle, EpsilonValue, Flag, KnotRecord, Shape, SignSet, Slope,
};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sl(p: i64, q: i64) -> Slope {
    Slope::new(p, q).expect("valid slope")
}

fn single(set: BTreeSet<u64>) -> Result<u64, String> {
    match set.len() {
        1 => Ok(*set.first().expect("one")),
        _ => Err(format!("expected one value, got {set:?}")),
    }
}

fn record(nu: i64, r0: u64, shape: Option<Shape>) -> KnotRecord {
    KnotRecord {
        nu_sharp: Some(nu),
        r0: Some(r0),
        shape,
        ..KnotRecord::named("k")
    }
}

fn ac1() -> Check {
    let err = |e: sharpknot::Error| e.to_string();
    let k02 = record(0, 2, None);
    let d = single(dim_surgery(&k02, sl(-1, 4), Bundle::Trivial).map_err(err)?)?;
    ensure(d == 9, || format!("dim S^3_-1/4 = {d}, expected 9"))?;
    let fig8 = seed_database()
        .into_iter()
        .find(|r| r.name == "fig8")
        .expect("seed");
    let triv = single(dim_surgery(&fig8, sl(0, 1), Bundle::Trivial).map_err(err)?)?;
    let mer = single(dim_surgery(&fig8, sl(0, 1), Bundle::Meridional).map_err(err)?)?;
    ensure((triv, mer) == (4, 2), || {
        format!("figure eight zero surgery ({triv}, {mer})")
    })?;
    let unknot = record(0, 0, Some(Shape::W));
    for n in (-200..=200).filter(|&n| n != 0) {
        let d = single(dim_surgery(&unknot, sl(1, n), Bundle::Trivial).map_err(err)?)?;
        ensure(d == 1, || format!("unknot 1/{n} surgery has dim {d}"))?;
    }
    let trefoil = record(1, 1, None);
    let profile: Vec<(i64, u64)> = (-20..=20)
        .filter(|&n| n != 0)
        .map(|n| {
            dim_surgery(&trefoil, Slope::integer(n), Bundle::Trivial)
                .map(|s| (n, *s.first().expect("one")))
        })
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let min = profile.iter().min_by_key(|(_, d)| *d).expect("nonempty");
    ensure(*min == (1, 1), || format!("trefoil minimum at {min:?}"))?;
    ensure(profile.iter().filter(|(_, d)| *d == 1).count() == 1, || {
        "minimum not unique".into()
    })?;
    Ok("dims 9, (4, 2), unknot 1/n = 1, trefoil minimum 1 at n = 1".into())
}

/// `(q, p, ν, r)` found by scanning every numerator, without the
/// two-root shortcut used by the enumeration.
fn brute_feasible(d: i64, exclude: bool) -> BTreeSet<SurgeryCandidate> {
    let mut out = BTreeSet::new();
    for q in 1..=d {
        for r in min_r0(exclude)..=d / q {
            for nu in -r..=r {
                if !is_zero_or_odd(nu) || (r - nu) % 2 != 0 {
                    continue;
                }
                for p in -2 * d..=2 * d {
                    if p != 0 && p.gcd(&q) == 1 && q * r + (p - q * nu).abs() == d {
                        out.insert(SurgeryCandidate { q, p, nu, r0: r });
                    }
                }
            }
        }
    }
    out
}

fn ac2() -> Check {
    let b = slope_bound(3, true).map_err(|e| e.to_string())?;
    ensure(b.q_max == 1, || format!("q_max = {}", b.q_max))?;
    let eq: BTreeSet<(i64, i64)> = b.equality_cases.iter().map(|c| (c.p, c.q)).collect();
    let want: BTreeSet<(i64, i64)> = [(-3, 1), (-1, 1), (1, 1), (3, 1)].into();
    ensure(eq == want, || format!("equality slopes {eq:?}"))?;
    let mut total = 0;
    for d in 1..=60 {
        for exclude in [true, false] {
            let got = slope_bound(d as u64, exclude).map_err(|e| e.to_string())?;
            let got_set: BTreeSet<SurgeryCandidate> = got.feasible.iter().copied().collect();
            ensure(got_set.len() == got.feasible.len(), || {
                format!("duplicates at D = {d}")
            })?;
            let oracle = brute_feasible(d, exclude);
            ensure(got_set == oracle, || {
                format!("D = {d}, exclude = {exclude}: enumeration differs from brute force")
            })?;
            if exclude {
                ensure(got.feasible.iter().all(|c| 3 * c.q <= d), || {
                    format!("D = {d}: q above D/3")
                })?;
            }
            total += oracle.len();
        }
    }
    Ok(format!(
        "q_max 1, equality {{±1, ±3}}, {total} candidates match brute force for D <= 60"
    ))
}

/// Independent coefficient tables from Pascal's triangle.
struct Oracle {
    pascal: Vec<Vec<BigInt>>,
}

impl Oracle {
    fn new(size: usize) -> Oracle {
        let mut pascal = vec![vec![BigInt::from(1)]];
        for a in 1..=size {
            let prev = &pascal[a - 1];
            let row = (0..=a)
                .map(|b| {
                    let left = if b > 0 {
                        prev[b - 1].clone()
                    } else {
                        BigInt::zero()
                    };
                    let right = prev.get(b).cloned().unwrap_or_default();
                    left + right
                })
                .collect();
            pascal.push(row);
        }
        Oracle { pascal }
    }

    fn binom(&self, a: i64, b: i64) -> BigInt {
        if a < 0 || b < 0 || b > a {
            return BigInt::zero();
        }
        self.pascal[a as usize][b as usize].clone()
    }

    fn c(&self, n: i64, i: i64, h: i64) -> BigInt {
        match n {
            0 => BigInt::from(if i % 2 == 0 { 1 } else { -1 }),
            1 => BigInt::from(i64::from((h - i) % 2 != 0)),
            _ => (1..=h + 1).map(|k| self.binom(h - i - 2 * k, n - 2)).sum(),
        }
    }

    fn d(&self, j: i64, i: i64, h: i64) -> BigInt {
        self.c(j, -i, h) - self.c(j, i, h)
    }
}

fn independent_certificate(o: &Oracle, ix: &IndexSet, x: &[BigInt]) -> Result<(), String> {
    let k = ix.k();
    let idx = ix.indices();
    let h = ix.h();
    ensure(x.len() == k && x.iter().any(|v| !v.is_zero()), || {
        format!("{ix}: kernel vector {x:?}")
    })?;
    for j in 0..2 * k as i64 {
        let s: BigInt = (0..k).map(|m| o.d(j, idx[m], h) * &x[m]).sum();
        ensure(s.is_zero(), || format!("{ix}: row {j} of N x is {s}"))?;
    }
    let cols: Vec<i64> = idx
        .iter()
        .rev()
        .map(|i| -i)
        .chain(idx.iter().copied())
        .collect();
    let lifted: Vec<BigInt> = x
        .iter()
        .rev()
        .cloned()
        .chain(x.iter().map(|v| -v))
        .collect();
    for j in 0..2 * k as i64 {
        let s: BigInt = cols
            .iter()
            .zip(&lifted)
            .map(|(&col, v)| o.c(j, col, h) * v)
            .sum();
        ensure(s.is_zero(), || format!("{ix}: row {j} of M lift(x) is {s}"))?;
    }
    Ok(())
}

fn ac3() -> Check {
    let report = sweep_sequential(12, 5).map_err(|e| e.to_string())?;
    ensure(report.passed(), || {
        format!(
            "{} failures, first {:?}",
            report.failures.len(),
            report.failures.first()
        )
    })?;
    let expected = index_sets(12, 5).len();
    ensure(report.checked == expected, || {
        format!("checked {} of {expected}", report.checked)
    })?;
    let oracle = Oracle::new(64);
    for ix in index_sets(12, 5) {
        let r = sharpknot::parity::verify_index_set(&ix);
        let x = r
            .kernel_vector
            .ok_or_else(|| format!("{ix}: no kernel vector"))?;
        independent_certificate(&oracle, &ix, &x)?;
    }
    Ok(format!(
        "{expected} index sets, kernel vectors re-checked against Pascal-table coefficients"
    ))
}

fn ac4() -> Check {
    let checks = run_identity_suite(&IdentityLimits::default()).map_err(|e| e.to_string())?;
    let mut total = 0;
    for c in &checks {
        ensure(c.passed(), || {
            format!("{}: {} of {} failed", c.name, c.failed, c.checked)
        })?;
        total += c.checked;
    }
    Ok(format!(
        "{} identity families, {total} instances",
        checks.len()
    ))
}

fn ac5() -> Check {
    let sols = solve_section9(&Section9Query::default());
    ensure(sols.len() == 1, || format!("{} solutions", sols.len()))?;
    let s = sols.first().expect("one");
    let q = |gs: &[i64]| GradedDim::from_gradings(gs.iter().map(|&g| Z4::new(g)));
    ensure((s.k, s.m) == (Z4::new(3), Z4::new(2)), || {
        format!("(k, m) = ({}, {})", s.k, s.m)
    })?;
    ensure(
        s.minus1 == q(&[0, 2, 3]) && s.plus1 == q(&[0, 1, 2]) && s.zero == q(&[2, 3]),
        || format!("shapes {} / {} / {}", s.minus1, s.plus1, s.zero),
    )?;
    let r = section9_contradiction(&Section9Config::default()).map_err(|e| e.to_string())?;
    ensure(r.is_contradiction(), || format!("branch {:?}", r.branch))?;
    ensure(r.lower_bound == Some(16), || {
        format!("lower bound {:?}", r.lower_bound)
    })?;
    ensure(r.feasible == BTreeSet::from([8, 10]), || {
        format!("feasible {:?}", r.feasible)
    })?;
    Ok(format!(
        "(k, m) = (3, 2); I#(S^3_-1) = {}, I#(S^3_1) = {}, I#(S^3_0) = {}; bound 16 vs {{8, 10}}",
        s.minus1, s.plus1, s.zero
    ))
}

fn second_derivative_oracle(terms: &[(i32, i64)]) -> i64 {
    terms
        .iter()
        .map(|&(e, c)| c * e as i64 * (e as i64 - 1))
        .sum()
}

fn ac6() -> Check {
    let delta = LaurentPoly::genus1_alexander(2);
    ensure(delta.second_derivative_at_one() == 4, || {
        format!("Δ''(1) = {}", delta.second_derivative_at_one())
    })?;
    let cable = delta.cable_substitute();
    ensure(cable.to_string() == "2t^2 - 3 + 2t^-2", || {
        format!("cable {cable}")
    })?;
    ensure(cable.second_derivative_at_one() == 16, || {
        "cable Δ''(1) != 16".into()
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..500 {
        let half = rng.gen_range(0..=5);
        let mut terms = vec![(0, rng.gen_range(-20..=20))];
        for e in 1..=half {
            let c = rng.gen_range(-20..=20);
            terms.push((e, c));
            terms.push((-e, c));
        }
        let p = LaurentPoly::from_terms(terms.iter().copied());
        ensure(p.is_symmetric(), || format!("{p} not symmetric"))?;
        let d2 = p.second_derivative_at_one();
        ensure(d2 == second_derivative_oracle(&terms), || {
            format!("{p}: Δ''(1) = {d2}")
        })?;
        let doubled: Vec<(i32, i64)> = terms.iter().map(|&(e, c)| (2 * e, c)).collect();
        let sub = p.cable_substitute();
        ensure(
            sub == LaurentPoly::from_terms(doubled.iter().copied()),
            || format!("Δ(t^2) of {p} is {sub}"),
        )?;
        ensure(sub.second_derivative_at_one() == 4 * d2, || {
            format!("{p}: identity fails")
        })?;
    }
    Ok("Δ''(1) = 4, cable 2t^2 - 3 + 2t^-2 with Δ''(1) = 16, 500 random identities".into())
}

fn ac7() -> Check {
    let shapes = [Shape::W, Shape::V];
    for &a in &shapes {
        ensure(shape_of_sum(a, Shape::W) == a, || {
            "W is not the identity".into()
        })?;
        ensure(shape_of_sum(a, a) == Shape::W, || "not of order two".into())?;
        for &b in &shapes {
            ensure(shape_of_sum(a, b) == shape_of_sum(b, a), || {
                "not commutative".into()
            })?;
            for &c in &shapes {
                ensure(
                    shape_of_sum(shape_of_sum(a, b), c) == shape_of_sum(a, shape_of_sum(b, c)),
                    || "not associative".into(),
                )?;
            }
        }
    }
    for e1 in [-1i8, 0, 1] {
        for e2 in [-1i8, 0, 1] {
            let got = epsilon_of_sum(EpsilonValue(Some(e1)), EpsilonValue(Some(e2)));
            let want = if e1 == 0 {
                Some(e2)
            } else if e2 == 0 || e1 == e2 {
                Some(e1)
            } else {
                None
            };
            ensure(got.0 == want, || format!("ε({e1}) # ε({e2}) = {got}"))?;
        }
    }
    let nus: Vec<i64> = (-15..=15).filter(|&n| is_zero_or_odd(n)).collect();
    for &a in &nus {
        for &b in &nus {
            let s = nu_of_sum(a, b).map_err(|e| e.to_string())?;
            ensure((s.len() == 1) == (a == 0 || b == 0), || {
                format!("nu({a} # {b}) = {s:?}")
            })?;
            ensure(
                s.iter()
                    .all(|&v| is_zero_or_odd(v) && (v - a - b).abs() <= 1),
                || format!("nu({a} # {b}) = {s:?}"),
            )?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let recs: Vec<KnotRecord> = (0..10_000)
        .map(|i| common::random_record(&mut rng, i))
        .collect();
    for (i, r) in recs.iter().enumerate() {
        ensure(r.validate().is_empty(), || {
            format!("generator produced {r:?}")
        })?;
        let m = mirror(r);
        ensure(mirror(&m) == *r, || {
            format!("mirror not an involution on {}", r.name)
        })?;
        let (e, em) = (
            epsilon(r).map_err(|e| e.to_string())?,
            epsilon(&m).map_err(|e| e.to_string())?,
        );
        ensure(em == e.negate(), || {
            format!("{}: ε = {e}, ε(mirror) = {em}", r.name)
        })?;
        let other = &recs[(i * 7919 + 1) % recs.len()];
        let (ab, ba) = (
            compare(r, other).map_err(|e| e.to_string())?,
            compare(other, r).map_err(|e| e.to_string())?,
        );
        let flipped = match ab {
            Ordering::Greater => Ordering::Less,
            Ordering::Less => Ordering::Greater,
            x => x,
        };
        ensure(ba == flipped, || {
            format!("compare({}, {}) = {ab}, reverse {ba}", r.name, other.name)
        })?;
    }
    Ok("shape group law, ε sum rules, ν singleton rule, 10^4 mirror/compare checks".into())
}

fn ac8() -> Check {
    let opts = InferenceOptions::new();
    let qp = KnotRecord {
        slice_genus: Some(2),
        ..KnotRecord::named("qp")
    }
    .with_flag(Flag::Quasipositive, true)
    .with_flag(Flag::Slice, false);
    let r = apply_rules(&qp, &opts);
    ensure(r.is_consistent(), || format!("{:?}", r.contradictions))?;
    ensure(
        r.record.tau_sharp == Some(2) && r.record.nu_sharp == Some(3),
        || {
            format!(
                "tau = {:?}, nu = {:?}",
                r.record.tau_sharp, r.record.nu_sharp
            )
        },
    )?;
    ensure(r.record.froyshov_plus1 == Some(SignSet::NEG), || {
        format!("h(S^3_1) {:?}", r.record.froyshov_plus1)
    })?;
    ensure(
        r.statements
            .iter()
            .any(|s| s.rule_id == "R10" && s.text.contains("linearly independent")),
        || "no linear independence statement".into(),
    )?;
    ensure(r.derivations.iter().all(|d| !d.anchor.is_empty()), || {
        "derivation without anchor".into()
    })?;
    let used: BTreeSet<&str> = r.derivations.iter().map(|d| d.rule_id.as_str()).collect();
    for id in ["R1", "R5", "R6", "R7", "R12", "R13"] {
        ensure(used.contains(id), || format!("chain lacks {id}: {used:?}"))?;
    }

    let rs = apply_rules(
        &KnotRecord::named("rs").with_flag(Flag::RationallySlice, true),
        &opts,
    );
    ensure(
        (rs.record.nu_sharp, rs.record.tau_sharp, rs.record.shape)
            == (Some(0), Some(0), Some(Shape::W)),
        || {
            format!(
                "rationally slice gave {:?}",
                (rs.record.nu_sharp, rs.record.tau_sharp, rs.record.shape)
            )
        },
    )?;

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let n = rules().len();
    let seeds = seed_database();
    let base: Vec<_> = seeds.iter().map(|s| propagate(s, &opts).domains).collect();
    for _ in 0..100 {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let o = InferenceOptions {
            order: Some(order),
            ..InferenceOptions::new()
        };
        for (s, b) in seeds.iter().zip(&base) {
            ensure(propagate(s, &o).domains == *b, || {
                format!("{}: fixpoint depends on order", s.name)
            })?;
        }
    }
    Ok(format!(
        "tau = 2, nu = 3, h(S^3_1) < 0, R10; (0, 0, W); 100 orders x {} seeds",
        seeds.len()
    ))
}

type Criterion = (&'static str, &'static str, Duration, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1", "dimension values", Duration::from_secs(1), ac1),
        (
            "AC2",
            "slope bound and brute-force enumeration",
            Duration::from_secs(5),
            ac2,
        ),
        (
            "AC3",
            "parity matrix sweep h <= 12, k <= 5",
            Duration::from_secs(60),
            ac3,
        ),
        ("AC4", "identity suite", Duration::from_secs(30), ac4),
        ("AC5", "graded case analysis", Duration::from_secs(1), ac5),
        ("AC6", "Alexander toolkit", Duration::from_secs(5), ac6),
        (
            "AC7",
            "concordance properties",
            Duration::from_secs(30),
            ac7,
        ),
        ("AC8", "inference engine", Duration::from_secs(30), ac8),
    ];
    let mut failed = 0;
    for (id, title, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > limit => {
                Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!("[PASS] {id} {title}: {detail} ({elapsed:.2?})"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {id} {title}: {why} ({elapsed:.2?})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
