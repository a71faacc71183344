//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! A criterion may be red only for the cases pinned in its `known_red` list,
//! each with the reason it cannot hold. Any other failure, or a pinned case
//! that unexpectedly passes, makes the run exit non-zero.

mod common;

use common::*;
use kappa_core::gswf_spectrum::{k_of_space, SpaceModel};
use kappa_core::kappa_engine::{bundled_paths, kappa_candidates, kappa_exact, torus_table};
use kappa_core::knot_algebra::{signature, KnotExpr};
use kappa_core::obstruction_engine::{
    a_of, baseline_bounds, genus_base, genus_bound, nonsmoothable_certificate, sn_lower_bound, Baseline, Family, Target,
};
use kappa_core::rep_ring::euler_c_plus_minus;
use kappa_core::seifert_plumbing::{mu_bar, SeifertData};
use kappa_core::{q, qi, Q, Z};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

// Runtime ceilings.
const TORUS_LIMIT: Duration = Duration::from_secs(2);
const TWO_BRIDGE_LIMIT: Duration = Duration::from_secs(5);
const RING_LIMIT: Duration = Duration::from_secs(1);
// Random expressions per property.
const PROPERTY_CASES: u32 = 200;
// Brieskorn sweep bound on a₁a₂a₃.
const BRIESKORN_LIMIT: i64 = 2000;

struct Outcome {
    /// Case labels that failed.
    failures: Vec<String>,
    summary: String,
}

impl Outcome {
    fn new(summary: impl Into<String>) -> Self {
        Outcome {
            failures: Vec::new(),
            summary: summary.into(),
        }
    }

    fn check(&mut self, ok: bool, label: impl Into<String>) {
        if !ok {
            self.failures.push(label.into());
        }
    }
}

fn secs(d: Duration) -> String {
    format!("{:.3} s", d.as_secs_f64())
}

/// κ(#ₘ T(3, q)) as tabulated: c·m/2 with c fixed by q mod 12.
fn tabulated_torus_kappa(q3: i64, m: i64) -> Q {
    let c = match q3.rem_euclid(12) {
        7 => -1,
        11 | 1 => 0,
        5 => 1,
        r => panic!("q ≡ {r} mod 12 is not in the table"),
    };
    q(c * m, 2)
}

fn torus_kappa_table() -> Outcome {
    let c = corpus();
    let start = Instant::now();
    let rows = torus_table(49, 3, c);
    let elapsed = start.elapsed();
    let mut o = Outcome::new("");
    let mut families = BTreeSet::new();
    let mut n = 0;
    for k in 1.. {
        let qs: Vec<i64> = [6 * k - 1, 6 * k + 1].into_iter().filter(|&x| x <= 49).collect();
        if qs.is_empty() {
            break;
        }
        for q3 in qs {
            // μ̄ straight from the plumbing of Σ(2, 3, q).
            let mb = mu_bar(&SeifertData::brieskorn(2, 3, q3).unwrap()).unwrap();
            o.check(q(-mb, 2) == tabulated_torus_kappa(q3, 1), format!("μ̄(Σ(2,3,{q3})) = {mb}"));
            for m in 1..=3 {
                for mirrored in [false, true] {
                    let mut kx = KnotExpr::torus(3, q3).unwrap().repeat(m as u32);
                    if mirrored {
                        kx = kx.mirror();
                    }
                    let want = if mirrored { -tabulated_torus_kappa(q3, m) } else { tabulated_torus_kappa(q3, m) };
                    let got = kappa_exact(&kx, c).as_exact().cloned();
                    o.check(got.as_ref() == Some(&want), format!("{kx}: {got:?} vs {want}"));
                    let row = rows.iter().find(|r| r.knot == kx.to_string());
                    o.check(row.is_some_and(|r| r.matches && r.kappa == got), format!("table row {kx}"));
                    families.insert((q3.rem_euclid(12), mirrored));
                    n += 1;
                }
            }
        }
    }
    o.check(families.len() == 8, format!("{} row families", families.len()));
    o.check(rows.len() == n, format!("table has {} rows, expected {n}", rows.len()));
    o.check(elapsed < TORUS_LIMIT, format!("runtime {}", secs(elapsed)));
    o.summary = format!("{n} rows over {} families, {}", families.len(), secs(elapsed));
    o
}

fn two_bridge_law() -> Outcome {
    let c = corpus();
    let mut o = Outcome::new("");
    let start = Instant::now();
    let mut results = Vec::new();
    for p in (3..=99).step_by(2) {
        for qq in 1..p {
            if num_integer::gcd(p, qq) != 1 {
                continue;
            }
            let k = KnotExpr::two_bridge(p, qq).unwrap();
            let s = signature(&k, c).unwrap();
            let kappa = kappa_exact(&k, c).as_exact().cloned();
            results.push((p, qq, s, kappa));
        }
    }
    let elapsed = start.elapsed();
    for (p, qq, s, kappa) in &results {
        let oracle = two_bridge_signature_oracle(*p, *qq);
        o.check(*s == oracle, format!("σ(K({p},{qq})) = {s}, oracle {oracle}"));
        o.check(kappa.as_ref() == Some(&q(-oracle, 16)), format!("κ(K({p},{qq})) = {kappa:?}"));
    }
    o.check(elapsed < TWO_BRIDGE_LIMIT, format!("runtime {}", secs(elapsed)));
    o.summary = format!("{} knots, {}", results.len(), secs(elapsed));
    o
}

fn ring_identities() -> Outcome {
    let mut o = Outcome::new("");
    let start = Instant::now();
    let (w, z) = (R::w(), R::z());
    let two = Z::from(2);
    let id1 = w.clone() * w.clone() == w.scale(&two);
    let id2 = w.clone() * z.clone() * (w.clone() + z.clone() - w.clone() * z) == w.scale(&two);
    let mut ks = Vec::new();
    for s in 0..=6 {
        for l in 0..=6u32 {
            let x = SpaceModel::representation_sphere(s, l);
            ks.push((s, l, k_of_space(&x).ok(), x));
        }
    }
    let elapsed = start.elapsed();
    o.check(id1, "w² = 2w");
    o.check(id2, "wz(w + z − wz) = 2w");
    for (s, l, k, x) in &ks {
        o.check(*k == Some(*l), format!("k at s={s}, l={l}: {k:?}"));
        let brute = brute_axis_gcd(x.ideal(), 3);
        o.check(brute == Z::from(1i64 << l), format!("enumerated axis gcd at s={s}, l={l}: {brute}"));
    }
    for l in 0..=6 {
        let brute = brute_k_principal(&euler_c_plus_minus().pow(l), 2, 8);
        o.check(brute == Some(l), format!("enumerated k at l={l}: {brute:?}"));
    }
    o.check(elapsed < RING_LIMIT, format!("runtime {}", secs(elapsed)));
    o.summary = format!("{} spheres, {}", ks.len(), secs(elapsed));
    o
}

fn crossing_change_table() -> Outcome {
    let c = corpus();
    let paths = bundled_paths(c).unwrap();
    let mut o = Outcome::new("8_10 → {1/8}, 8_5 → {1/4, 5/4}");
    for (name, want) in [("8_10", vec![q(1, 8)]), ("8_5", vec![q(1, 4), q(5, 4)])] {
        let got = kappa_candidates(&parse(name), &paths, c).map(|r| r.values());
        o.check(got.as_ref() == Ok(&want), format!("{name}: {got:?}"));
    }
    o
}

fn stabilizing_numbers() -> Outcome {
    let c = corpus();
    let mut o = Outcome::new("");
    let mut n = 0;
    // (family, q(l), base(l, m), refined bound needs l ≥ 2)
    type Row = (&'static str, fn(i64) -> i64, fn(i64, i64) -> i64, bool);
    let rows: [Row; 4] = [
        ("12l-1", |l| 12 * l - 1, |l, m| 9 * m * l, false),
        ("12l+1", |l| 12 * l + 1, |l, m| 9 * m * l, false),
        ("12l-5", |l| 12 * l - 5, |l, m| 9 * m * l - 4 * m, true),
        ("12l-7", |l| 12 * l - 7, |l, m| 9 * m * l - 5 * m, true),
    ];
    for (family, qf, base, needs_l2) in rows {
        for l in 1..=4 {
            for m in 1..=4 {
                let k = KnotExpr::torus(3, qf(l)).unwrap().repeat(m as u32);
                let r = sn_lower_bound(&k, c, &[], None).unwrap();
                let lb = r.lower_bound.unwrap();
                let b = base(l, m);
                o.check(lb.exact == qi(b) && lb.ceiling == b, format!("{family} l={l} m={m}: base {} vs {b}", lb.exact));
                if !needs_l2 || l >= 2 {
                    let want = b + a_of(m * l) as i64;
                    o.check(lb.best == want, format!("{family} l={l} m={m}: refined {} vs {want}", lb.best));
                }
                n += 1;
            }
        }
    }
    let two = sn_lower_bound(&parse("2*T(3,11)"), c, &[], None).unwrap().lower_bound.unwrap();
    o.check(two.ceiling == 18, format!("sn(#2 T(3,11)) ≥ {}", two.ceiling));
    o.summary = format!("{n} knots, sn(#2 T(3,11)) ≥ {}", two.ceiling);
    o
}

fn genus_bounds() -> Outcome {
    let c = corpus();
    let mut o = Outcome::new("");
    for m in 1..=10i64 {
        let k = parse("K(7,3)").repeat(m as u32);
        for n in 1..=10u64 {
            let target = Target::K3 { n, x2: 0 };
            // m ≤ n + g
            let r = genus_bound(&k, &target, c, &[], None).unwrap();
            let want = (m - n as i64).max(0);
            o.check(
                r.lower_bound
                    .as_ref()
                    .is_some_and(|lb| lb.exact == qi(m - n as i64) && lb.ceiling == want && lb.best >= want),
                format!("#{m} 5_2 in #{n} K3: {:?}", r.lower_bound.map(|lb| lb.exact)),
            );
            // m ≤ 2n + g from the relative 10/8 baseline
            let bs = baseline_bounds(&target.scenario(&k).unwrap(), c, 16).unwrap();
            let man = bs.iter().find(|b| b.name() == "Manolescu relative 10/8").and_then(Baseline::report);
            o.check(
                man.and_then(|r| r.lower_bound.as_ref()).is_some_and(|lb| lb.exact == qi(m - 2 * n as i64)),
                format!("baseline for #{m} 5_2 in #{n} K3"),
            );
        }
        // (7/4)m ≤ g in #m CP² # #m(−CP²) with x = (2, …, 2): the printed
        // arithmetic uses σ(#m T(3,7)) = −4m; the engine's σ = −8m gives 4m.
        let printed = genus_base(0, m as u64, 0, -4 * m, &q(-m, 2));
        o.check(printed == q(7 * m, 4), format!("printed CP² arithmetic at m={m}: {printed}"));
        let t = Target::Cp {
            a: vec![2; m as usize],
            b: vec![2; m as usize],
        };
        let k7 = parse("T(3,7)").repeat(m as u32);
        let r = genus_bound(&k7, &t, c, &[], None).unwrap();
        let lb = r.lower_bound.unwrap();
        o.check(lb.exact >= q(7 * m, 4), format!("CP² bound at m={m}: {}", lb.exact));
        o.check(lb.exact == qi(4 * m), format!("CP² bound at m={m}: {} vs 4m", lb.exact));
    }
    o.summary = "m ≤ n + g, m ≤ 2n + g for m, n ≤ 10; (7/4)m ≤ 4m ≤ g".into();
    o
}

fn nonsmoothable() -> Outcome {
    let c = corpus();
    let mut o = Outcome::new("");
    let mut n_certs = 0;
    for (family, ns) in [(Family::SixNMinus1, 2..=5), (Family::SixNPlus1, 1..=5)] {
        for n in ns {
            for m in 1..=3 {
                let cert = nonsmoothable_certificate(n, m, family, c).unwrap();
                let (qb, bpw, bpi) = match family {
                    Family::SixNMinus1 => (4 * n * m, 4 * n * m, 4 * n * m),
                    Family::SixNPlus1 => (4 * n * m + m, 4 * n * m + 2 * m, 4 * n * m + m),
                };
                let tag = format!("{family:?} n={n} m={m}");
                o.check(
                    cert.quotient_b_plus == qb && cert.quotient_b_minus == qb,
                    format!("{tag}: quotient ({}, {})", cert.quotient_b_plus, cert.quotient_b_minus),
                );
                o.check(
                    cert.sigma_w == -8 * n * m && cert.b_plus_w == bpw && cert.b_plus_iota == bpi,
                    format!("{tag}: σ, b⁺, b⁺_ι"),
                );
                o.check(cert.certified, format!("{tag}: not certified"));
                n_certs += 1;
            }
        }
    }
    o.summary = format!("{n_certs} (n, m) pairs");
    o
}

fn runner() -> TestRunner {
    let config = Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn properties() -> Outcome {
    let mut o = Outcome::new("");
    let r = runner().run(&(expr(), expr()), |(a, b)| prop_signature(&a, &b));
    o.check(r.is_ok(), format!("signature: {r:?}"));
    let r = runner().run(&expr(), |s| prop_rokhlin(&s));
    o.check(r.is_ok(), format!("Rokhlin congruence: {r:?}"));
    let r = runner().run(&(expr(), expr()), |(a, b)| prop_arf(&a, &b));
    o.check(r.is_ok(), format!("Arf: {r:?}"));
    let triples = brieskorn_triples(BRIESKORN_LIMIT);
    for &(a1, a2, a3) in &triples {
        if let Err(e) = check_mu_bar_independence(a1, a2, a3) {
            o.failures.push(e);
        }
    }
    match check_tl_at_minus_one() {
        Ok(n) => o.summary = format!("{PROPERTY_CASES} cases each, {} Brieskorn spheres, {n} corpus matrices", triples.len()),
        Err(e) => o.failures.push(e),
    }
    o
}

/// Cases that cannot hold, with the reason.
fn known_red(criterion: usize) -> (Vec<String>, &'static str) {
    match criterion {
        5 => {
            let mut v = Vec::new();
            // N = −σ/16 − κ = ml is 1 at l = m = 1, below the N ≥ 2 the
            // refinement needs: T(3,11) and T(3,13) stay at 9.
            v.push("12l-1 l=1 m=1: refined 9 vs 11".to_string());
            v.push("12l+1 l=1 m=1: refined 9 vs 11".to_string());
            // For 12l−7, κ = +m/2 gives N = ml − m, not ml.
            for l in 2..=4i64 {
                for m in 1..=4i64 {
                    let b = 9 * m * l - 5 * m;
                    let nn = m * l - m;
                    let got = if nn >= 2 { b + a_of(nn) as i64 } else { b };
                    let want = b + a_of(m * l) as i64;
                    if got != want {
                        v.push(format!("12l-7 l={l} m={m}: refined {got} vs {want}"));
                    }
                }
            }
            (v, "N ≥ 2 fails at ml = 1, and N = ml − m for 12l−7")
        }
        7 => (
            vec![
                "SixNPlus1 n=1 m=1: not certified".to_string(),
                "SixNPlus1 n=2 m=1: not certified".to_string(),
            ],
            "the plus family satisfies both inequalities at (n, m) = (1, 1), (2, 1)",
        ),
        _ => (vec![], ""),
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("torus kappa table", torus_kappa_table),
        ("two-bridge law", two_bridge_law),
        ("ring identities", ring_identities),
        ("crossing-change table", crossing_change_table),
        ("stabilizing numbers", stabilizing_numbers),
        ("genus bounds", genus_bounds),
        ("non-smoothability", nonsmoothable),
        ("property suites", properties),
    ];
    let mut unexpected = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let id = i + 1;
        let o = f();
        let (pinned, why) = known_red(id);
        let verdict = if o.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("{verdict} {id} {name}: {}", o.summary);
        let got: BTreeSet<&String> = o.failures.iter().collect();
        let want: BTreeSet<&String> = pinned.iter().collect();
        for f in &o.failures {
            let mark = if want.contains(f) { "known" } else { "UNEXPECTED" };
            println!("    {mark}: {f}");
        }
        if !pinned.is_empty() && !o.failures.is_empty() {
            println!("    reason: {why}");
        }
        for p in want.difference(&got) {
            println!("    UNEXPECTED pass of pinned case: {p}");
        }
        if got != want {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        println!("{unexpected} criteria deviate from their pinned outcome");
        return ExitCode::FAILURE;
    }
    ExitCode::SUCCESS
}
