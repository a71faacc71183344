//! Oracles, generators and property bodies shared by the test targets.
#![allow(dead_code)]

use kappa_core::kappa_engine::kappa_exact;
use kappa_core::knot_algebra::{arf, parse_knot, signature_data, tl_signature_matrix, Corpus, KnotExpr};
use kappa_core::rep_ring::{w_lattice, IdealPresentation, RepElem};
use kappa_core::seifert_plumbing::{build_plumbing, build_plumbing_shifted, mu_bar, mu_bar_of_graph, SeifertData};
use kappa_core::{Q, Z};
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use std::sync::OnceLock;

pub type R = RepElem<Z>;

pub fn corpus() -> &'static Corpus {
    static C: OnceLock<Corpus> = OnceLock::new();
    C.get_or_init(Corpus::bundled)
}

pub fn parse(s: &str) -> KnotExpr {
    parse_knot(s, corpus()).unwrap_or_else(|e| panic!("{s}: {e}"))
}

/// gcd of the ℤw-axis points reached by integer combinations of the lattice
/// generators with coefficients in [−b, b].
pub fn brute_axis_gcd(j: &IdealPresentation, b: i64) -> Z {
    let gens = w_lattice(j);
    let n = gens.len();
    let mut coef = vec![-b; n];
    let mut g = Z::zero();
    loop {
        let (mut u, mut v) = (Z::zero(), Z::zero());
        for (c, x) in coef.iter().zip(&gens) {
            u += Z::from(*c) * &x[0];
            v += Z::from(*c) * &x[1];
        }
        if v.is_zero() {
            g = g.gcd(&u);
        }
        let mut i = 0;
        while i < n && coef[i] == b {
            coef[i] = -b;
            i += 1;
        }
        if i == n {
            return g;
        }
        coef[i] += 1;
    }
}

/// Least k with 2^k·w = w·a·g for a ranging over a coefficient box.
pub fn brute_k_principal(g: &R, b: i64, kmax: u32) -> Option<u32> {
    let w = R::w();
    let mut best: Option<u32> = None;
    let range: Vec<i64> = (-b..=b).collect();
    for &a0 in &range {
        for &a1 in &range {
            for &a2 in &range {
                for &a3 in &range {
                    let a = R::from_i64([a0, a1, a2, a3]);
                    let y = w.clone() * a * g.clone();
                    if let Some(c) = y.w_multiple() {
                        for k in 0..=kmax {
                            if c == Z::from(1i64 << k) && best.is_none_or(|b| k < b) {
                                best = Some(k);
                            }
                        }
                    }
                }
            }
        }
    }
    best
}

/// σ(T(p, q)) by counting lattice points: pairs 0 < i < p, 0 < j < q with
/// i/p + j/q inside (1/2, 3/2) count −1, the others +1.
pub fn torus_signature_oracle(p: i64, q: i64) -> i64 {
    let mut s = 0;
    for i in 1..p {
        for j in 1..q {
            // 2(iq + jp) against pq and 3pq
            let x = 2 * (i * q + j * p);
            if x > p * q && x < 3 * p * q {
                s -= 1;
            } else {
                s += 1;
            }
        }
    }
    s
}

/// Murasugi's formula σ(K(p, q)) = −Σ_{i=1}^{p−1} (−1)^⌊iq'/p⌋ with q' the
/// odd representative of q in (0, 2p).
pub fn two_bridge_signature_oracle(p: i64, q: i64) -> i64 {
    let qo = if q % 2 == 1 { q } else { q + p };
    -(1..p).map(|i| if (i * qo / p) % 2 == 0 { 1 } else { -1 }).sum::<i64>()
}

/// Pairwise coprime a₁ < … with a₁ even, a₂ < a₃ and a₁a₂a₃ ≤ limit.
pub fn brieskorn_triples(limit: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for a1 in (2..=limit).step_by(2) {
        for a2 in 2..=limit / a1 {
            for a3 in (a2 + 1)..=limit / (a1 * a2) {
                if a1.gcd(&a2) == 1 && a1.gcd(&a3) == 1 && a2.gcd(&a3) == 1 {
                    out.push((a1, a2, a3));
                }
            }
        }
    }
    out
}

/// μ̄ agrees across reparameterized and blown-up plumbings, and flips sign
/// under orientation reversal.
pub fn check_mu_bar_independence(a1: i64, a2: i64, a3: i64) -> Result<i64, String> {
    let tag = format!("Σ({a1},{a2},{a3})");
    let d = SeifertData::brieskorn(a1, a2, a3).map_err(|e| format!("{tag}: {e}"))?;
    let mb = mu_bar(&d).map_err(|e| format!("{tag}: {e}"))?;
    let g = build_plumbing(&d).map_err(|e| format!("{tag}: {e}"))?;
    for shifts in [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [2, 0, 1]] {
        let h = build_plumbing_shifted(&d, &shifts).map_err(|e| format!("{tag}: {e}"))?;
        let v = mu_bar_of_graph(&h).map_err(|e| format!("{tag}: {e}"))?;
        if v != mb {
            return Err(format!("{tag}: shifts {shifts:?} give {v}, expected {mb}"));
        }
    }
    for e in 0..g.edges().len().min(3) {
        let v = mu_bar_of_graph(&g.blow_up_edge(e)).map_err(|e| format!("{tag}: {e}"))?;
        if v != mb {
            return Err(format!("{tag}: blow-up of edge {e} gives {v}, expected {mb}"));
        }
    }
    let r = mu_bar(&d.reversed()).map_err(|e| format!("{tag}: {e}"))?;
    if r != -mb {
        return Err(format!("{tag}: reversed gives {r}, expected {}", -mb));
    }
    Ok(mb)
}

/// σ_K(−1) = σ(K) for every corpus knot that carries a Seifert matrix.
pub fn check_tl_at_minus_one() -> Result<usize, String> {
    let mut n = 0;
    for e in corpus().entries() {
        let Some(v) = e.seifert_matrix() else { continue };
        let s = tl_signature_matrix(&v, 1, 2).map_err(|err| format!("{}: {err}", e.id))?;
        if s != e.sigma {
            return Err(format!("{}: σ(−1) = {s}, σ = {}", e.id, e.sigma));
        }
        n += 1;
    }
    Ok(n)
}

pub fn atom() -> impl Strategy<Value = String> {
    let names: Vec<String> = corpus().entries().iter().map(|e| e.id.clone()).collect();
    prop_oneof![
        Just("U".to_string()),
        (2i64..6, 2i64..26, any::<bool>())
            .prop_filter("coprime", |(p, q, _)| p.gcd(q) == 1)
            .prop_map(|(p, q, neg)| if neg { format!("T({p},-{q})") } else { format!("T({p},{q})") }),
        (1i64..25, 1i64..50)
            .prop_map(|(h, q)| (2 * h + 1, q % (2 * h + 1)))
            .prop_filter("coprime", |(p, q)| *q > 0 && p.gcd(q) == 1)
            .prop_map(|(p, q)| format!("K({p},{q})")),
        proptest::sample::select(names),
    ]
}

/// Expr := Term ('#' Term)*; Term := INT*Term | m(Expr) | atom.
pub fn expr() -> impl Strategy<Value = String> {
    atom().prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            (1u32..4, inner.clone()).prop_map(|(k, t)| format!("{k}*{t}")),
            inner.clone().prop_map(|e| format!("m({e})")),
            proptest::collection::vec(inner, 2..4).prop_map(|v| v.join(" # ")),
        ]
    })
}

pub fn prop_signature(a: &str, b: &str) -> Result<(), TestCaseError> {
    let c = corpus();
    let (ka, kb) = (parse(a), parse(b));
    let sa = signature_data(&ka, c).unwrap();
    let sb = signature_data(&kb, c).unwrap();
    prop_assert_eq!(sa % 2, 0, "{}", a);
    let sum = parse(&format!("{a} # {b}"));
    prop_assert_eq!(signature_data(&sum, c).unwrap(), sa + sb, "{} # {}", a, b);
    prop_assert_eq!(signature_data(&ka.clone().mirror(), c).unwrap(), -sa, "m({})", a);
    prop_assert_eq!(signature_data(&ka.repeat(3), c).unwrap(), 3 * sa, "3*{}", a);
    Ok(())
}

pub fn prop_arf(a: &str, b: &str) -> Result<(), TestCaseError> {
    let c = corpus();
    let (ka, kb) = (parse(a), parse(b));
    let sum = parse(&format!("{a} # {b}"));
    prop_assert_eq!(arf(&sum, c).unwrap(), arf(&ka, c).unwrap() ^ arf(&kb, c).unwrap());
    prop_assert_eq!(arf(&ka.clone().mirror(), c).unwrap(), arf(&ka, c).unwrap());
    Ok(())
}

/// 2κ ≡ −σ/8 modulo 2ℤ whenever κ is determined, i.e. 16κ + σ ∈ 16ℤ.
pub fn prop_rokhlin(s: &str) -> Result<(), TestCaseError> {
    let c = corpus();
    let k = parse(s);
    if let Some(v) = kappa_exact(&k, c).as_exact() {
        let sigma = signature_data(&k, c).unwrap();
        let sixteen = v * Q::from_integer(16.into());
        prop_assert!(sixteen.is_integer(), "{}: κ = {}", s, v);
        let d = sixteen.to_integer() + Z::from(sigma);
        prop_assert!(d.is_multiple_of(&16.into()), "{}: κ = {}, σ = {}", s, v, sigma);
        let m = kappa_exact(&k.clone().mirror(), c);
        prop_assert_eq!(m.as_exact().cloned(), Some(-v.clone()));
    }
    Ok(())
}
