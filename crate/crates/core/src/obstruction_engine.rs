//! 10/8-type inequalities on concrete data: branched-cover homology, the
//! relative inequality for knots and its A(N) refinement, stabilizing-number
//! and genus bounds, the involution obstructions, and the classical baselines
//! they are compared with.
//!
//! Hypotheses the engine cannot check (the characteristic condition,
//! H₁(W) = 0, divisibility of [S]) are user assertions and are echoed in
//! every report.

use crate::kappa_engine::{is_swf_spherical, kappa_best, kappa_exact, CrossingPath, KappaError, KappaKind};
use crate::knot_algebra::{arf, parse_knot, signature_data, tl_signature, Corpus, KnotError, KnotExpr};
use crate::seifert_plumbing::{mu_bar, PlumbingError, SeifertData};
use crate::{q, qfmt, qi, Q};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const CITE_BRANCHED: &str = "branched double cover: σ = 2σ(X) − [S]²/2 − σ(K) + σ(K'), \
b⁺ = 2b⁺(X) + g − [S]²/4 − σ(K)/2 + σ(K')/2, b⁺_ι = b⁺(X)";
pub const CITE_INVOLUTION: &str =
    "relative 10/8 inequality for involutions: −σ(W)/16 + κ(Y₀) ≤ b⁺(W) − b⁺_ι(W) + κ(Y₁)";
pub const CITE_KNOT: &str = "relative 10/8 inequality for knots: \
−σ(W)/8 + 9[S]²/32 − 9σ(K')/16 + 9σ(K)/16 ≤ b⁺(W) + g(S) + κ(K') − κ(K)";
pub const CITE_REFINED: &str = "Crabb–Stolz refinement: + A(N) on the left when N ≥ 2, \
b⁺ − b⁺_ι ≥ 1 and both ends are SWF-spherical";
pub const CITE_SN: &str = "stabilizing number: sn(K) ≥ −9σ(K)/16 − κ(K)";
pub const CITE_SEIFERT: &str = "Seifert spheres: κ(Σ, ι) = −μ̄(Σ)/2, additive under connected sum";
pub const CITE_MANOLESCU: &str =
    "Manolescu relative 10/8: −σ(X)/4 + 5[S]²/16 − 5σ(K)/8 − κ*(K) ≤ 2b⁺(X) + g(S)";
pub const CITE_TL: &str =
    "Tristram–Levine: |σ_K(e^{2πir/m}) + σ(X) − 2r(m−r)[S]²/m²| ≤ b₂(X) + 2g for m = pᵏ dividing [S]";
pub const CITE_ARF: &str = "Robertson: a knot H-slice in a spin 4-manifold has Arf(K) = 0";
pub const CITE_GSIGNATURE: &str = "G-signature: |σ(W) + [S]² + σ(K)|/2 ≤ b₂(W)/2 + g(S)";
pub const CITE_FREEDMAN: &str =
    "Boyer: simply connected with even form and homology sphere boundary, the form fixes the homeomorphism type (cited)";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("HypothesisViolated: {0}")]
    HypothesisViolated(String),
    #[error("ArfNonzero: Arf({0}) = 1, so it is not H-slice in any #N S²×S²")]
    ArfNonzero(String),
    #[error("KappaUnknown: no κ value or candidates for {0}")]
    KappaUnknown(String),
    #[error("InvalidParams: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Plumbing(#[from] PlumbingError),
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error(transparent)]
    Kappa(#[from] KappaError),
}

impl ObstructionError {
    pub fn kind(&self) -> &'static str {
        match self {
            ObstructionError::HypothesisViolated(_) => "HypothesisViolated",
            ObstructionError::ArfNonzero(_) => "ArfNonzero",
            ObstructionError::KappaUnknown(_) => "KappaUnknown",
            ObstructionError::InvalidParams(_) => "InvalidParams",
            ObstructionError::Plumbing(e) => e.kind(),
            ObstructionError::Knot(e) => e.kind(),
            ObstructionError::Kappa(e) => e.kind(),
        }
    }

    /// Whether the error is a failed mathematical hypothesis rather than bad input.
    pub fn is_hypothesis(&self) -> bool {
        matches!(
            self,
            ObstructionError::HypothesisViolated(_)
                | ObstructionError::ArfNonzero(_)
                | ObstructionError::KappaUnknown(_)
        )
    }
}

fn violated(msg: impl Into<String>) -> ObstructionError {
    ObstructionError::HypothesisViolated(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HypStatus {
    /// Taken on the user's word.
    Asserted,
    Verified,
    /// Checked through a sufficient condition only.
    Sufficient,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub status: HypStatus,
}

fn hyp(name: &str, status: HypStatus) -> Hypothesis {
    Hypothesis {
        name: name.to_string(),
        status,
    }
}

fn check(name: &str, ok: bool) -> Hypothesis {
    hyp(name, if ok { HypStatus::Verified } else { HypStatus::Failed })
}

/// The refined value base + A(N), when the refinement applies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refinement {
    pub n: i64,
    pub a: u8,
    #[serde(with = "qfmt")]
    pub value: Q,
}

/// A lower bound for a genus or stabilizing number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBound {
    #[serde(with = "qfmt")]
    pub exact: Q,
    /// max(0, ⌈exact⌉).
    pub ceiling: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refined: Option<Refinement>,
    /// The sharpest integer bound.
    pub best: i64,
}

impl LowerBound {
    fn new(exact: Q, refined: Option<Refinement>) -> Self {
        let ceiling = ceil_nonneg(&exact);
        let best = match &refined {
            Some(r) => ceiling.max(ceil_nonneg(&r.value)),
            None => ceiling,
        };
        LowerBound {
            exact,
            ceiling,
            refined,
            best,
        }
    }
}

fn ceil_nonneg(x: &Q) -> i64 {
    x.ceil().to_integer().to_i64().expect("bound fits i64").max(0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    #[serde(with = "qfmt")]
    pub lhs: Q,
    #[serde(with = "qfmt")]
    pub rhs: Q,
    /// lhs ≤ rhs.
    pub satisfied: bool,
    /// rhs − lhs.
    #[serde(with = "qfmt")]
    pub slack: Q,
    pub citations: Vec<String>,
    #[serde(default)]
    pub hypotheses: Vec<Hypothesis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower_bound: Option<LowerBound>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl BoundReport {
    pub fn new(name: &str, lhs: Q, rhs: Q, citations: &[&str]) -> Self {
        let slack = &rhs - &lhs;
        BoundReport {
            name: name.to_string(),
            satisfied: !slack.is_negative(),
            lhs,
            rhs,
            slack,
            citations: citations.iter().map(|c| c.to_string()).collect(),
            hypotheses: Vec::new(),
            lower_bound: None,
            verdict: None,
            notes: Vec::new(),
        }
    }

    /// A report for "bound ≤ value": the value is the claimed one, or the
    /// best bound itself when nothing is claimed.
    fn for_lower_bound(name: &str, lb: LowerBound, claim: Option<i64>, citations: &[&str]) -> Self {
        let rhs = qi(claim.unwrap_or(lb.best));
        let mut r = BoundReport::new(name, qi(lb.best), rhs, citations);
        r.lower_bound = Some(lb);
        r
    }
}

/// A(N) ∈ {1, 2, 3}: 1 for N ≡ 0, 2, 3 for N ≡ 6, else 2 (mod 8).
pub fn a_of(n: i64) -> u8 {
    match n.rem_euclid(8) {
        0 | 2 => 1,
        6 => 3,
        _ => 2,
    }
}

/// Homology of the branched double cover of W along S.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BranchedCover {
    pub sigma: i64,
    pub b_plus: i64,
    pub b_minus: i64,
    pub b1: i64,
    pub b_plus_iota: i64,
}

/// Homology of Σ(S) for S ⊂ W a surface from K to K'. A negative b± means
/// no such surface exists; it is returned as is.
#[allow(clippy::too_many_arguments)]
pub fn branched_cover_homology(
    sigma_x: i64,
    b_plus_x: i64,
    b_minus_x: i64,
    self_int_s: i64,
    genus_s: i64,
    sigma_k: i64,
    sigma_kprime: i64,
) -> Result<BranchedCover, ObstructionError> {
    if self_int_s.rem_euclid(4) != 0 {
        return Err(violated(format!("[S]² = {self_int_s} is not divisible by 4")));
    }
    if sigma_x != b_plus_x - b_minus_x {
        return Err(violated(format!("σ = {sigma_x} ≠ b⁺ − b⁻ = {}", b_plus_x - b_minus_x)));
    }
    if b_plus_x < 0 || b_minus_x < 0 || genus_s < 0 {
        return Err(violated("Betti numbers and genus are nonnegative"));
    }
    if sigma_k % 2 != 0 || sigma_kprime % 2 != 0 {
        return Err(violated("knot signatures are even"));
    }
    let d = (sigma_kprime - sigma_k) / 2;
    let c = BranchedCover {
        sigma: 2 * sigma_x - self_int_s / 2 - sigma_k + sigma_kprime,
        b_plus: 2 * b_plus_x + genus_s - self_int_s / 4 + d,
        b_minus: 2 * b_minus_x + genus_s + self_int_s / 4 - d,
        b1: 0,
        b_plus_iota: b_plus_x,
    };
    Ok(c)
}

fn unknot() -> KnotExpr {
    KnotExpr::Unknot
}

fn two() -> u64 {
    2
}

/// A surface S of genus g in a cobordism W from (S³, K) to (S³, K').
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Scenario {
    pub sigma_w: i64,
    pub b_plus_w: u64,
    /// b⁺_ι of the branched cover; b⁺(W) when absent.
    pub b_plus_iota: Option<u64>,
    pub self_int_s: i64,
    pub genus_s: u64,
    pub knot_from: KnotExpr,
    pub knot_to: KnotExpr,
    /// PD(w₂(W)) = [S]/2 mod 2, asserted by the user.
    pub characteristic: bool,
    /// Asserted d with [S] ∈ d·H₂(W); 0 means [S] = 0.
    pub divisibility: u64,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct ScenarioFile {
    sigma_w: i64,
    b_plus_w: u64,
    #[serde(default)]
    b_plus_iota: Option<u64>,
    #[serde(default)]
    self_int_s: i64,
    #[serde(default)]
    genus_s: u64,
    #[serde(default)]
    knot_from: Option<String>,
    #[serde(default)]
    knot_to: Option<String>,
    #[serde(default)]
    characteristic: bool,
    #[serde(default = "two")]
    divisibility: u64,
}

impl Scenario {
    /// A closed-manifold scenario for a knot K: S is a surface in X° bounding K.
    pub fn closed(sigma_x: i64, b_plus_x: u64, self_int_s: i64, knot: KnotExpr) -> Self {
        Scenario {
            sigma_w: sigma_x,
            b_plus_w: b_plus_x,
            b_plus_iota: None,
            self_int_s,
            genus_s: 0,
            knot_from: unknot(),
            knot_to: knot,
            characteristic: true,
            divisibility: if self_int_s == 0 { 0 } else { 2 },
        }
    }

    pub fn from_json_str(text: &str, corpus: &Corpus) -> Result<Self, ObstructionError> {
        let f: ScenarioFile =
            serde_json::from_str(text).map_err(|e| ObstructionError::InvalidParams(format!("scenario: {e}")))?;
        let parse = |s: Option<String>| -> Result<KnotExpr, ObstructionError> {
            match s {
                Some(s) => Ok(parse_knot(&s, corpus)?),
                None => Ok(unknot()),
            }
        };
        Ok(Scenario {
            sigma_w: f.sigma_w,
            b_plus_w: f.b_plus_w,
            b_plus_iota: f.b_plus_iota,
            self_int_s: f.self_int_s,
            genus_s: f.genus_s,
            knot_from: parse(f.knot_from)?,
            knot_to: parse(f.knot_to)?,
            characteristic: f.characteristic,
            divisibility: f.divisibility,
        })
    }

    fn b_minus_w(&self) -> i64 {
        self.b_plus_w as i64 - self.sigma_w
    }

    /// b₂ = b⁺ + b⁻.
    pub fn b2(&self) -> i64 {
        2 * self.b_plus_w as i64 - self.sigma_w
    }

    /// Checks the stated invariants and returns the branched cover.
    pub fn validate(&self, corpus: &Corpus) -> Result<BranchedCover, ObstructionError> {
        if self.b_minus_w() < 0 {
            return Err(violated(format!(
                "σ(W) = {} exceeds b⁺(W) = {}",
                self.sigma_w, self.b_plus_w
            )));
        }
        match self.divisibility {
            0 if self.self_int_s != 0 => return Err(violated("[S] = 0 but [S]² ≠ 0")),
            0 => {}
            d if d % 2 != 0 => return Err(violated(format!("[S] must be divisible by 2, asserted d = {d}"))),
            d => {
                let d2 = (d * d) as i64;
                if self.self_int_s.rem_euclid(d2) != 0 {
                    return Err(violated(format!(
                        "[S] divisible by {d} forces [S]² ≡ 0 mod {d2}, got {}",
                        self.self_int_s
                    )));
                }
            }
        }
        let cover = branched_cover_homology(
            self.sigma_w,
            self.b_plus_w as i64,
            self.b_minus_w(),
            self.self_int_s,
            self.genus_s as i64,
            signature_data(&self.knot_from, corpus)?,
            signature_data(&self.knot_to, corpus)?,
        )?;
        if let Some(bi) = self.b_plus_iota {
            if bi as i64 > cover.b_plus {
                return Err(violated(format!("b⁺_ι = {bi} exceeds b⁺ = {} of the cover", cover.b_plus)));
            }
        }
        Ok(cover)
    }

    fn b_plus_iota(&self) -> i64 {
        self.b_plus_iota.unwrap_or(self.b_plus_w) as i64
    }

    fn asserted(&self) -> Vec<Hypothesis> {
        vec![
            hyp("H₁(W) = 0", HypStatus::Asserted),
            hyp(&format!("[S] divisible by {}", self.divisibility.max(2)), HypStatus::Asserted),
            hyp(
                "PD(w₂(W)) = [S]/2 mod 2",
                if self.characteristic {
                    HypStatus::Asserted
                } else {
                    HypStatus::Failed
                },
            ),
        ]
    }
}

/// The relative 10/8 inequality for knots, with κ values supplied.
pub fn main_inequality(s: &Scenario, kappa_from: &Q, kappa_to: &Q, corpus: &Corpus) -> Result<BoundReport, ObstructionError> {
    if !s.characteristic {
        return Err(violated("PD(w₂(W)) = [S]/2 mod 2 must be asserted"));
    }
    let cover = s.validate(corpus)?;
    let sk = signature_data(&s.knot_from, corpus)?;
    let skp = signature_data(&s.knot_to, corpus)?;
    let lhs = q(-s.sigma_w, 8) + q(9 * s.self_int_s, 32) - q(9 * skp, 16) + q(9 * sk, 16);
    let rhs = qi(2 * s.b_plus_w as i64 - s.b_plus_iota() + s.genus_s as i64) + kappa_to - kappa_from;
    let mut r = BoundReport::new("relative 10/8 for knots", lhs, rhs, &[CITE_KNOT, CITE_BRANCHED]);
    r.hypotheses = s.asserted();
    r.notes.push(format!(
        "branched cover: σ = {}, b⁺ = {}, b⁻ = {}, b⁺_ι = {}",
        cover.sigma,
        cover.b_plus,
        cover.b_minus,
        s.b_plus_iota()
    ));
    Ok(r)
}

/// N = −σ(Σ)/16 + κ(K) − κ(K'), the integer fed to A.
fn refinement_n(cover: &BranchedCover, kappa_from: &Q, kappa_to: &Q) -> i64 {
    let n = q(-cover.sigma, 16) + kappa_from - kappa_to;
    assert!(n.is_integer(), "N is an integer by the congruence κ ≡ −σ/16");
    n.to_integer().to_i64().expect("N fits i64")
}

/// The A(N)-refined inequality. Requires both knots to be SWF-spherical,
/// N ≥ 2 and b⁺ − b⁺_ι ≥ 1 on the branched cover.
pub fn refined_inequality(s: &Scenario, kappa_from: &Q, kappa_to: &Q, corpus: &Corpus) -> Result<BoundReport, ObstructionError> {
    let mut r = main_inequality(s, kappa_from, kappa_to, corpus)?;
    let cover = s.validate(corpus)?;
    if !is_swf_spherical(&s.knot_from, corpus) || !is_swf_spherical(&s.knot_to, corpus) {
        return Err(violated("both knots must be sums of two-bridge and odd torus knots"));
    }
    let n = refinement_n(&cover, kappa_from, kappa_to);
    if n < 2 {
        return Err(violated(format!("N = {n} < 2")));
    }
    if cover.b_plus - s.b_plus_iota() < 1 {
        return Err(violated("b⁺ − b⁺_ι of the branched cover is 0"));
    }
    let a = a_of(n);
    let mut out = BoundReport::new("refined relative 10/8 for knots", &r.lhs + qi(a as i64), r.rhs.clone(), &[
        CITE_KNOT,
        CITE_REFINED,
        CITE_BRANCHED,
    ]);
    r.hypotheses.push(check("SWF-spherical ends", true));
    r.hypotheses.push(check("N ≥ 2", true));
    r.hypotheses.push(check("b⁺ − b⁺_ι ≥ 1", true));
    out.hypotheses = r.hypotheses;
    out.notes = r.notes;
    out.notes.push(format!("N = {n}, A(N) = {a}"));
    Ok(out)
}

/// κ for bounding purposes: the value if exact, else the largest candidate.
fn kappa_for_bound(k: &KnotExpr, corpus: &Corpus, paths: &[CrossingPath]) -> Result<(Q, bool, Vec<String>), ObstructionError> {
    let r = kappa_best(k, paths, corpus)?;
    match &r.kind {
        KappaKind::Exact(v) => Ok((v.clone(), true, r.provenance.clone())),
        KappaKind::Candidates(_) => Ok((r.max_value().unwrap(), false, r.provenance.clone())),
        KappaKind::Unknown => Err(ObstructionError::KappaUnknown(k.to_string())),
    }
}

/// Cited topological stabilizing numbers for sums of T(3, 6n ± 1), which are
/// quoted rather than recomputed.
fn cited_sn_top(k: &KnotExpr) -> Option<String> {
    let terms = k.terms();
    let [t] = terms.as_slice() else { return None };
    let KnotExpr::Torus(p, qq) = t.atom else { return None };
    if t.mirrored || *p != 3 || *qq <= 3 {
        return None;
    }
    let m = t.count as i64;
    let (n, plus) = match qq % 6 {
        5 => ((qq + 1) / 6, false),
        1 => ((qq - 1) / 6, true),
        _ => return None,
    };
    let v = if plus { 4 * n * m + m } else { 4 * n * m };
    Some(format!("cited: sn^Top({k}) ≤ {v}, from the topological 4-genus of T(3, 6n ± 1)"))
}

/// Lower bound for sn(K), the least N with K H-slice in #N S²×S².
pub fn sn_lower_bound(
    k: &KnotExpr,
    corpus: &Corpus,
    paths: &[CrossingPath],
    claim: Option<i64>,
) -> Result<BoundReport, ObstructionError> {
    if arf(k, corpus)? != 0 {
        return Err(ObstructionError::ArfNonzero(k.to_string()));
    }
    let sigma = signature_data(k, corpus)?;
    let (kappa, exact, provenance) = kappa_for_bound(k, corpus, paths)?;
    let base = q(-9 * sigma, 16) - &kappa;
    let spherical = is_swf_spherical(k, corpus);
    let mut hyps = vec![check("Arf(K) = 0", true), check("κ(K) exact", exact)];
    let mut refined = None;
    let mut notes = Vec::new();
    if exact {
        let n = q(-sigma, 16) - &kappa;
        let n = n.to_integer().to_i64().expect("N fits i64");
        let witness = ceil_nonneg(&base) + sigma / 2;
        hyps.push(check("SWF-spherical", spherical));
        hyps.push(check(&format!("N = −σ/16 − κ = {n} ≥ 2"), n >= 2));
        hyps.push(hyp(
            "b⁺ − b⁺_ι = sn + σ/2 ≥ 1",
            if witness >= 1 {
                HypStatus::Sufficient
            } else {
                HypStatus::Failed
            },
        ));
        if spherical && n >= 2 && witness >= 1 {
            let a = a_of(n);
            refined = Some(Refinement {
                n,
                a,
                value: &base + qi(a as i64),
            });
        }
    } else {
        notes.push("κ not determined; bound uses the largest candidate".to_string());
    }
    notes.extend(provenance);
    notes.extend(cited_sn_top(k));
    let lb = LowerBound::new(base, refined);
    let mut r = BoundReport::for_lower_bound("stabilizing number", lb, claim, &[CITE_SN, CITE_REFINED]);
    r.hypotheses = hyps;
    r.notes = notes;
    Ok(r)
}

/// Ambient closed 4-manifold and class x = [S] for a genus bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Target {
    /// #n K3 with x² given; x divisible by 4.
    K3 { n: u64, x2: i64 },
    /// #n CP² # #m (−CP²) with x = (a₁, …, aₙ; b₁, …, bₘ), all ≡ 2 mod 4.
    Cp { a: Vec<i64>, b: Vec<i64> },
    /// #n S²×S² with x² given; x divisible by 4.
    S2xS2 { n: u64, x2: i64 },
    /// Any X with the data asserted by the user.
    Custom { sigma: i64, b_plus: u64, x2: i64 },
}

impl Target {
    /// (σ(X), b⁺(X), x²), after checking the characteristic condition where it
    /// can be checked.
    pub fn data(&self) -> Result<(i64, u64, i64), ObstructionError> {
        match self {
            Target::K3 { n, x2 } => {
                if x2.rem_euclid(32) != 0 {
                    return Err(violated(format!("x ∈ 4·H₂(#K3) forces x² ≡ 0 mod 32, got {x2}")));
                }
                Ok((-16 * *n as i64, 3 * n, *x2))
            }
            Target::S2xS2 { n, x2 } => {
                if x2.rem_euclid(32) != 0 {
                    return Err(violated(format!("x ∈ 4·H₂(#S²×S²) forces x² ≡ 0 mod 32, got {x2}")));
                }
                Ok((0, *n, *x2))
            }
            Target::Cp { a, b } => {
                if let Some(c) = a.iter().chain(b).find(|c| c.rem_euclid(4) != 2) {
                    return Err(violated(format!("coefficient {c} is not ≡ 2 mod 4")));
                }
                let x2 = a.iter().map(|c| c * c).sum::<i64>() - b.iter().map(|c| c * c).sum::<i64>();
                Ok((a.len() as i64 - b.len() as i64, a.len() as u64, x2))
            }
            Target::Custom { sigma, b_plus, x2 } => {
                if x2.rem_euclid(4) != 0 {
                    return Err(violated(format!("x divisible by 2 forces x² ≡ 0 mod 4, got {x2}")));
                }
                Ok((*sigma, *b_plus, *x2))
            }
        }
    }

    pub fn scenario(&self, k: &KnotExpr) -> Result<Scenario, ObstructionError> {
        let (sigma, b_plus, x2) = self.data()?;
        let mut s = Scenario::closed(sigma, b_plus, x2, k.clone());
        if let Target::Cp { a, b } = self {
            if !a.is_empty() || !b.is_empty() {
                s.divisibility = 2;
            }
        }
        Ok(s)
    }
}

/// −σ(X)/8 + 9x²/32 − 9σ(K)/16 ≤ b⁺(X) + g + κ(K), solved for g.
pub fn genus_base(sigma_x: i64, b_plus_x: u64, x2: i64, sigma_k: i64, kappa: &Q) -> Q {
    q(-sigma_x, 8) + q(9 * x2, 32) - q(9 * sigma_k, 16) - qi(b_plus_x as i64) - kappa
}

/// Lower bound for the genus of S ⊂ X° with ∂S = K and [S] = x.
pub fn genus_bound(
    k: &KnotExpr,
    target: &Target,
    corpus: &Corpus,
    paths: &[CrossingPath],
    claim: Option<i64>,
) -> Result<BoundReport, ObstructionError> {
    let (sx, bp, x2) = target.data()?;
    let s = target.scenario(k)?;
    s.validate(corpus)?;
    let sigma = signature_data(k, corpus)?;
    let (kappa, exact, provenance) = kappa_for_bound(k, corpus, paths)?;
    let base = genus_base(sx, bp, x2, sigma, &kappa);
    let mut hyps = s.asserted();
    hyps.push(check("κ(K) exact", exact));
    let mut refined = None;
    let mut notes = Vec::new();
    if exact {
        let n = q(-sx, 8) + q(x2, 32) - q(sigma, 16) - &kappa;
        let spherical = is_swf_spherical(k, corpus);
        hyps.push(check("SWF-spherical", spherical));
        if n.is_integer() {
            let n = n.to_integer().to_i64().expect("N fits i64");
            let witness = bp as i64 + ceil_nonneg(&base) - x2 / 4 + sigma / 2;
            hyps.push(check(&format!("N = {n} ≥ 2"), n >= 2));
            hyps.push(hyp(
                "b⁺ + g − x²/4 + σ(K)/2 ≥ 1",
                if witness >= 1 {
                    HypStatus::Sufficient
                } else {
                    HypStatus::Failed
                },
            ));
            if spherical && n >= 2 && witness >= 1 {
                let a = a_of(n);
                refined = Some(Refinement {
                    n,
                    a,
                    value: &base + qi(a as i64),
                });
            }
        } else {
            hyps.push(check("N integral", false));
        }
    } else {
        notes.push("κ not determined; bound uses the largest candidate".to_string());
    }
    notes.extend(provenance);
    let lb = LowerBound::new(base, refined);
    let mut r = BoundReport::for_lower_bound("genus", lb, claim, &[CITE_KNOT, CITE_REFINED, CITE_BRANCHED]);
    r.hypotheses = hyps;
    r.notes = notes;
    Ok(r)
}

/// Whether an involution of a Seifert boundary extends over W.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Extendability {
    pub mu_bar: Vec<i64>,
    pub mu_bar_total: i64,
    /// The extension as a smooth involution is excluded.
    pub obstructed: bool,
    /// σ(W) ≠ 8μ̄, so no homologically trivial smooth extension exists.
    pub homologically_trivial_excluded: bool,
    pub report: BoundReport,
}

/// The boundary involution ι(z₁, …) = (−z₁, …) on #Σ(a₁, …) extends over W
/// only if −σ(W)/16 ≤ b⁺ − b⁺_ι − μ̄/2.
pub fn nonextendability(
    summands: &[SeifertData],
    sigma_w: i64,
    b_plus_w: u64,
    b_plus_iota: u64,
) -> Result<Extendability, ObstructionError> {
    if summands.is_empty() {
        return Err(PlumbingError::InvalidSeifert("no summands".into()).into());
    }
    if let Some(d) = summands.iter().find(|d| !d.has_even_fibre()) {
        return Err(PlumbingError::InvalidSeifert(format!(
            "Σ{:?} has no even multiplicity for the involution",
            d.multiplicities()
        ))
        .into());
    }
    if b_plus_iota > b_plus_w {
        return Err(ObstructionError::InvalidParams(format!("b⁺_ι = {b_plus_iota} > b⁺ = {b_plus_w}")));
    }
    let mu: Vec<i64> = summands.iter().map(mu_bar).collect::<Result<_, _>>()?;
    let total: i64 = mu.iter().sum();
    let lhs = q(-sigma_w, 16);
    let rhs = qi(b_plus_w as i64 - b_plus_iota as i64) - q(total, 2);
    let mut report = BoundReport::new("involution extension", lhs, rhs, &[CITE_INVOLUTION, CITE_SEIFERT]);
    let obstructed = !report.satisfied;
    let excluded = sigma_w != 8 * total;
    report.verdict = Some(if obstructed { "Obstructed" } else { "NotObstructed" }.to_string());
    report.notes.push(if excluded {
        format!("σ(W) ≠ 8μ̄ = {}: no homologically trivial smooth extension", 8 * total)
    } else {
        "σ(W) = 8μ̄: extension not excluded".to_string()
    });
    report.hypotheses = vec![hyp("W spin with b₁(W) = 0", HypStatus::Asserted)];
    Ok(Extendability {
        mu_bar: mu,
        mu_bar_total: total,
        obstructed,
        homologically_trivial_excluded: excluded,
        report,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// W = ♮ₘ M(2,3,6n−1) #_{2nm+m} S²×S², n ≥ 2.
    SixNMinus1,
    /// W = ♮ₘ M(2,3,6n+1) #_{2nm+2m} S²×S², n ≥ 1.
    SixNPlus1,
}

/// The data behind a non-smoothable involution on a Milnor-fibre family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NonsmoothCertificate {
    pub family: Family,
    pub n: i64,
    pub m: i64,
    pub boundary_knot: String,
    pub intersection_form: String,
    pub sigma_w: i64,
    pub b_plus_w: i64,
    pub b_plus_iota: i64,
    pub quotient_b_plus: i64,
    pub quotient_b_minus: i64,
    #[serde(with = "qfmt")]
    pub kappa_boundary: Q,
    /// The inequality every smooth extension satisfies.
    pub plain: BoundReport,
    /// The A(N) version, when its hypotheses hold.
    pub refined: Option<BoundReport>,
    /// Some required inequality fails, so the involution is not smooth.
    pub certified: bool,
    pub citations: Vec<String>,
}

/// W carries a locally linear involution whose quotient is #_N S²×S² with a
/// genus-0 branch surface bounding #ₘ T(3, 6n ± 1); the certificate is the
/// failure of the smooth-involution inequality on that data.
pub fn nonsmoothable_certificate(n: i64, m: i64, family: Family, corpus: &Corpus) -> Result<NonsmoothCertificate, ObstructionError> {
    let min_n = match family {
        Family::SixNMinus1 => 2,
        Family::SixNPlus1 => 1,
    };
    if n < min_n || m < 1 {
        return Err(ObstructionError::InvalidParams(format!(
            "{family:?} needs n ≥ {min_n} and m ≥ 1, got n = {n}, m = {m}"
        )));
    }
    let (qq, milnor_b_plus, hyperbolic, extra) = match family {
        Family::SixNMinus1 => (6 * n - 1, 2 * n - 1, 2 * n - 1, 2 * n * m + m),
        Family::SixNPlus1 => (6 * n + 1, 2 * n, 2 * n, 2 * n * m + 2 * m),
    };
    let knot = KnotExpr::torus(3, qq)?.repeat(m as u32);
    let sigma_k = signature_data(&knot, corpus)?;
    let quotient = match family {
        Family::SixNMinus1 => 4 * n * m,
        Family::SixNPlus1 => 4 * n * m + m,
    };
    // The homeomorphism model: the form of W is m·n(−E₈) ⊕ (m·h + extra)H.
    let sigma_w = -8 * n * m;
    let b_plus_w = m * milnor_b_plus + extra;
    let cover = branched_cover_homology(0, quotient, quotient, 0, 0, 0, sigma_k)?;
    if cover.sigma != sigma_w || cover.b_plus != b_plus_w {
        return Err(ObstructionError::InvalidParams(format!(
            "branched cover (σ, b⁺) = ({}, {}) does not match the model ({sigma_w}, {b_plus_w})",
            cover.sigma, cover.b_plus
        )));
    }
    let kappa = kappa_exact(&knot, corpus)
        .as_exact()
        .cloned()
        .ok_or_else(|| ObstructionError::KappaUnknown(knot.to_string()))?;
    let diff = b_plus_w - cover.b_plus_iota;
    let lhs = q(-sigma_w, 16);
    let rhs = qi(diff) + &kappa;
    let mut plain = BoundReport::new("smooth involution", lhs.clone(), rhs.clone(), &[CITE_INVOLUTION, CITE_SEIFERT]);
    plain.hypotheses = vec![check("spin, b₁(W) = 0", true)];
    let nn = &lhs - &kappa;
    let nn = nn.to_integer().to_i64().expect("N fits i64");
    let refined = if nn >= 2 && diff >= 1 {
        let mut r = BoundReport::new(
            "smooth involution, refined",
            &lhs + qi(a_of(nn) as i64),
            rhs,
            &[CITE_INVOLUTION, CITE_REFINED, CITE_SEIFERT],
        );
        r.notes.push(format!("N = {nn}, A(N) = {}", a_of(nn)));
        r.hypotheses = vec![check("N ≥ 2", true), check("b⁺ − b⁺_ι ≥ 1", true), check("SWF-spherical boundary", true)];
        Some(r)
    } else {
        None
    };
    let certified = !plain.satisfied || refined.as_ref().is_some_and(|r| !r.satisfied);
    let verdict = if certified { "NotSmoothable" } else { "Inconclusive" };
    plain.verdict = Some(verdict.to_string());
    Ok(NonsmoothCertificate {
        family,
        n,
        m,
        boundary_knot: knot.to_string(),
        intersection_form: format!("{}(−E8) ⊕ {}H", n * m, m * hyperbolic + extra),
        sigma_w,
        b_plus_w,
        b_plus_iota: cover.b_plus_iota,
        quotient_b_plus: quotient,
        quotient_b_minus: quotient,
        kappa_boundary: kappa,
        plain,
        refined,
        certified,
        citations: vec![CITE_BRANCHED.to_string(), CITE_FREEDMAN.to_string()],
    })
}

/// A baseline that was evaluated, or why it does not apply.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Baseline {
    Report(Box<BoundReport>),
    Skipped { name: String, reason: String },
}

impl Baseline {
    pub fn name(&self) -> &str {
        match self {
            Baseline::Report(r) => &r.name,
            Baseline::Skipped { name, .. } => name,
        }
    }

    pub fn report(&self) -> Option<&BoundReport> {
        match self {
            Baseline::Report(r) => Some(r.as_ref()),
            Baseline::Skipped { .. } => None,
        }
    }
}

fn skipped(name: &str, reason: impl Into<String>) -> Baseline {
    Baseline::Skipped {
        name: name.to_string(),
        reason: reason.into(),
    }
}

/// Manolescu's κ of Σ(K): −σ/8 for sums of two-bridge knots, or the
/// tabulated value of a single corpus knot.
pub fn kappa_star(k: &KnotExpr, corpus: &Corpus) -> Result<Option<Q>, KnotError> {
    let terms = k.terms();
    let two_bridge = |a: &KnotExpr| match a {
        KnotExpr::Unknot | KnotExpr::TwoBridge(..) => true,
        KnotExpr::Torus(p, q) => p.abs() == 2 || q.abs() == 2,
        KnotExpr::Named(id) => corpus.get(id).is_some_and(|e| e.two_bridge.is_some()),
        _ => false,
    };
    if terms.iter().all(|t| two_bridge(t.atom)) {
        return Ok(Some(q(-signature_data(k, corpus)?, 8)));
    }
    if let [t] = terms.as_slice() {
        if let (KnotExpr::Named(id), false, 1) = (t.atom, t.mirrored, t.count) {
            let e = corpus.get(id).ok_or_else(|| KnotError::UnknownName(id.clone()))?;
            return Ok(e.kappa_star.clone());
        }
    }
    Ok(None)
}

/// Lower bound on g with the genus term moved to the right: lhs ≤ c + g·w.
fn genus_from(lhs: &Q, rhs_without_g: &Q, weight: i64) -> LowerBound {
    LowerBound::new((lhs - rhs_without_g) / qi(weight), None)
}

fn is_prime_power(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let p = (2..=m).find(|p| m.is_multiple_of(*p)).unwrap();
    let mut x = m;
    while x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

/// σ_K(ω) summed over atoms, since it is additive and odd under mirroring.
fn tl_sum(k: &KnotExpr, r: i64, m: i64, corpus: &Corpus) -> Result<i64, KnotError> {
    let mut total = 0;
    for t in k.terms() {
        if matches!(t.atom, KnotExpr::Unknot) {
            continue;
        }
        let s = tl_signature(t.atom, r, m, corpus)?;
        total += if t.mirrored { -s } else { s } * t.count as i64;
    }
    Ok(total)
}

/// Manolescu, Tristram–Levine (prime powers m ≤ `tl_cap`), Arf and
/// G-signature baselines for the scenario's target knot.
pub fn baseline_bounds(s: &Scenario, corpus: &Corpus, tl_cap: u64) -> Result<Vec<Baseline>, ObstructionError> {
    s.validate(corpus)?;
    let k = &s.knot_to;
    let sigma = signature_data(k, corpus)?;
    let from_unknot = s.knot_from == KnotExpr::Unknot;
    let g = s.genus_s as i64;
    let b2 = s.b2();
    let mut out = Vec::new();

    const MANOLESCU: &str = "Manolescu relative 10/8";
    if !from_unknot {
        out.push(skipped(MANOLESCU, "needs a surface from the unknot"));
    } else if !s.characteristic {
        out.push(skipped(MANOLESCU, "characteristic condition not asserted"));
    } else {
        match kappa_star(k, corpus)? {
            None => out.push(skipped(MANOLESCU, format!("κ*({k}) not available"))),
            Some(ks) => {
                let lhs = q(-s.sigma_w, 4) + q(5 * s.self_int_s, 16) - q(5 * sigma, 8) - &ks;
                let c = qi(2 * s.b_plus_w as i64);
                let mut r = BoundReport::new(MANOLESCU, lhs.clone(), &c + qi(g), &[CITE_MANOLESCU]);
                r.lower_bound = Some(genus_from(&lhs, &c, 1));
                r.hypotheses = s.asserted();
                r.notes.push(format!("κ* = {ks}"));
                out.push(Baseline::Report(Box::new(r)));
            }
        }
    }

    const TL: &str = "Tristram–Levine";
    if !from_unknot {
        out.push(skipped(TL, "needs a surface from the unknot"));
    } else {
        let mut best: Option<(Q, i64, i64, i64)> = None;
        let mut missing = None;
        for m in 2..=tl_cap {
            if !is_prime_power(m) || (s.divisibility != 0 && !s.divisibility.is_multiple_of(m)) {
                continue;
            }
            let m = m as i64;
            for r in 1..m {
                let sw = match tl_sum(k, r, m, corpus) {
                    Ok(v) => v,
                    Err(KnotError::AlexanderRoot { .. }) => continue,
                    Err(e) => {
                        missing = Some(e);
                        break;
                    }
                };
                let v = (qi(sw + s.sigma_w) - q(2 * r * (m - r) * s.self_int_s, m * m)).abs();
                if best.as_ref().is_none_or(|b| v > b.0) {
                    best = Some((v, r, m, sw));
                }
            }
        }
        match (best, missing) {
            (_, Some(e)) => out.push(skipped(TL, e.to_string())),
            (None, None) => out.push(skipped(TL, "no admissible prime power m")),
            (Some((v, r, m, sw)), None) => {
                let mut rep = BoundReport::new(TL, v.clone(), qi(b2 + 2 * g), &[CITE_TL]);
                rep.lower_bound = Some(genus_from(&v, &qi(b2), 2));
                rep.notes.push(format!("sharpest at ω = e^(2πi·{r}/{m}), σ_K(ω) = {sw}"));
                rep.hypotheses = vec![
                    hyp("H₁(X) = 0", HypStatus::Asserted),
                    hyp(&format!("[S] divisible by {m}"), HypStatus::Asserted),
                ];
                out.push(Baseline::Report(Box::new(rep)));
            }
        }
    }

    const ARF: &str = "Arf";
    if from_unknot && g == 0 && s.divisibility == 0 && s.characteristic {
        let a = arf(k, corpus)?;
        let mut r = BoundReport::new(ARF, qi(a as i64), Q::zero(), &[CITE_ARF]);
        r.verdict = Some(if a == 0 { "NotObstructed" } else { "Obstructed" }.into());
        r.hypotheses = vec![hyp("X spin", HypStatus::Asserted), check("S a null-homologous disk", true)];
        out.push(Baseline::Report(Box::new(r)));
    } else {
        out.push(skipped(ARF, "needs a null-homologous disk from the unknot in a spin manifold"));
    }

    const GSIG: &str = "G-signature";
    if from_unknot {
        let lhs = qi(s.sigma_w + s.self_int_s + sigma).abs() / qi(2);
        let c = q(b2, 2);
        let mut r = BoundReport::new(GSIG, lhs.clone(), &c + qi(g), &[CITE_GSIGNATURE]);
        r.lower_bound = Some(genus_from(&lhs, &c, 1));
        r.hypotheses = vec![hyp("S connected, the fixed set of a locally linear involution", HypStatus::Asserted)];
        out.push(Baseline::Report(Box::new(r)));
    } else {
        out.push(skipped(GSIG, "needs a surface from the unknot"));
    }
    Ok(out)
}
