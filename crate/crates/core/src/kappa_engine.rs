//! κ(K) for the families where it is known exactly, and candidate sets for
//! other knots from crossing-change paths.

use crate::knot_algebra::{parse_knot, signature_data, Corpus, KnotError, KnotExpr};
use crate::seifert_plumbing::{mu_bar, SeifertData};
use crate::{qfmt, Q, Z};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};
use std::path::Path;
use thiserror::Error;

pub const RULE_UNKNOT: &str = "unknot: κ(U) = 0";
pub const RULE_TWO_BRIDGE: &str = "two-bridge: κ(K(p,q)) = −σ/16";
pub const RULE_TORUS: &str = "odd torus: κ(T(p,q)) = −μ̄(Σ(2,p,q))/2";
pub const RULE_DELTA: &str = "branched cover: κ(K) = δ(Σ(K))/2";
pub const RULE_MIRROR: &str = "mirror: κ(m(K)) = −κ(K)";
pub const RULE_SUM: &str = "connected sum: κ(K # K') = κ(K) + κ(K') for K' a sum of two-bridge and odd torus knots";
pub const RULE_CC: &str = "n crossing changes: |κ(K') − κ(K) + 9σ(K')/16 − 9σ(K)/16| ≤ n";
pub const RULE_CC_POSITIVE: &str = "positive crossing changes: κ(K') − κ(K) ≤ 9σ(K)/16 − 9σ(K')/16";
pub const RULE_CONGRUENCE: &str = "congruence: κ(K) ≡ −σ(K)/16 mod 1";
pub const RULE_MIRROR_SUM: &str = "κ(K) + κ(m(K)) ≥ 0";
pub const RULE_TABULATED: &str = "tabulated candidates, not re-derived";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KappaError {
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error("InconsistentConstraints for {query}: {detail}")]
    InconsistentConstraints { query: String, detail: String },
    #[error("InvalidPath {index}: {msg}")]
    InvalidPath { index: usize, msg: String },
    #[error("PathFile: {0}")]
    PathFile(String),
}

impl KappaError {
    pub fn kind(&self) -> &'static str {
        match self {
            KappaError::Knot(e) => e.kind(),
            KappaError::InconsistentConstraints { .. } => "InconsistentConstraints",
            KappaError::InvalidPath { .. } => "InvalidPath",
            KappaError::PathFile(_) => "PathFile",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KappaKind {
    Exact(Q),
    /// Sorted, nonempty, with at least two values.
    Candidates(Vec<Q>),
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaResult {
    pub kind: KappaKind,
    pub provenance: Vec<String>,
}

impl KappaResult {
    fn exact(v: Q, rules: &[&str]) -> Self {
        KappaResult {
            kind: KappaKind::Exact(v),
            provenance: rules.iter().map(|r| r.to_string()).collect(),
        }
    }

    fn unknown(why: String) -> Self {
        KappaResult {
            kind: KappaKind::Unknown,
            provenance: vec![why],
        }
    }

    fn from_values(mut values: Vec<Q>, provenance: Vec<String>) -> Self {
        values.sort();
        values.dedup();
        let kind = match values.len() {
            0 => KappaKind::Unknown,
            1 => KappaKind::Exact(values.pop().unwrap()),
            _ => KappaKind::Candidates(values),
        };
        KappaResult { kind, provenance }
    }

    pub fn as_exact(&self) -> Option<&Q> {
        match &self.kind {
            KappaKind::Exact(v) => Some(v),
            _ => None,
        }
    }

    /// Every value still possible; empty when unknown.
    pub fn values(&self) -> Vec<Q> {
        match &self.kind {
            KappaKind::Exact(v) => vec![v.clone()],
            KappaKind::Candidates(c) => c.clone(),
            KappaKind::Unknown => vec![],
        }
    }

    /// Largest possible value, used for conservative lower bounds.
    pub fn max_value(&self) -> Option<Q> {
        self.values().into_iter().max()
    }

    fn shift(self, by: &Q, rule: &str) -> Self {
        let mut provenance = self.provenance;
        provenance.push(rule.to_string());
        let kind = match self.kind {
            KappaKind::Exact(v) => KappaKind::Exact(v + by),
            KappaKind::Candidates(c) => KappaKind::Candidates(c.into_iter().map(|v| v + by).collect()),
            KappaKind::Unknown => KappaKind::Unknown,
        };
        KappaResult { kind, provenance }
    }

    fn negate(self) -> Self {
        let mut provenance = self.provenance;
        provenance.push(RULE_MIRROR.to_string());
        let kind = match self.kind {
            KappaKind::Exact(v) => KappaKind::Exact(-v),
            KappaKind::Candidates(c) => {
                let mut c: Vec<Q> = c.into_iter().map(|v| -v).collect();
                c.sort();
                KappaKind::Candidates(c)
            }
            KappaKind::Unknown => KappaKind::Unknown,
        };
        KappaResult { kind, provenance }
    }
}

impl Serialize for KappaResult {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            kind: &'static str,
            #[serde(skip_serializing_if = "Option::is_none")]
            kappa: Option<String>,
            #[serde(skip_serializing_if = "Option::is_none")]
            candidates: Option<Vec<String>>,
            provenance: &'a [String],
        }
        let (kind, kappa, candidates) = match &self.kind {
            KappaKind::Exact(v) => ("exact", Some(qfmt::fmt_q(v)), None),
            KappaKind::Candidates(c) => ("candidates", None, Some(c.iter().map(qfmt::fmt_q).collect())),
            KappaKind::Unknown => ("unknown", None, None),
        };
        Out {
            kind,
            kappa,
            candidates,
            provenance: &self.provenance,
        }
        .serialize(s)
    }
}

/// Whether an atom lies in a family with a proven κ formula, as opposed to
/// a tabulated δ value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Coverage {
    Family,
    Tabulated,
}

fn q16(sigma: i64) -> Q {
    Q::new(Z::from(-sigma), Z::from(16))
}

/// κ of a single unmirrored atom, if covered.
fn atom_kappa(atom: &KnotExpr, corpus: &Corpus) -> Result<Option<(Q, &'static str, Coverage)>, KnotError> {
    Ok(match atom {
        KnotExpr::Unknot => Some((Q::zero(), RULE_UNKNOT, Coverage::Family)),
        KnotExpr::TwoBridge(..) => Some((q16(signature_data(atom, corpus)?), RULE_TWO_BRIDGE, Coverage::Family)),
        // T(2, n) is the two-bridge knot K(n, 1).
        KnotExpr::Torus(p, q) if p.abs() == 2 || q.abs() == 2 => {
            Some((q16(signature_data(atom, corpus)?), RULE_TWO_BRIDGE, Coverage::Family))
        }
        KnotExpr::Torus(p, q) if p % 2 != 0 && q % 2 != 0 => {
            let d = SeifertData::brieskorn(2, p.abs(), q.abs()).expect("odd coprime torus parameters");
            let mb = mu_bar(&d).expect("Brieskorn plumbing is unimodular");
            let v = Q::new(Z::from(-mb), Z::from(2));
            Some((if (*p < 0) != (*q < 0) { -v } else { v }, RULE_TORUS, Coverage::Family))
        }
        KnotExpr::Torus(..) => None,
        KnotExpr::Named(id) => {
            let e = corpus.get(id).ok_or_else(|| KnotError::UnknownName(id.clone()))?;
            if let Some(d) = &e.delta_branched {
                Some((d / Q::from_integer(Z::from(2)), RULE_DELTA, Coverage::Tabulated))
            } else if e.two_bridge.is_some() {
                Some((q16(e.sigma), RULE_TWO_BRIDGE, Coverage::Family))
            } else {
                None
            }
        }
        _ => unreachable!("terms() yields atoms"),
    })
}

/// κ(K) when every summand is covered and at most one summand lies outside
/// the two-bridge and odd torus families.
pub fn kappa_exact(k: &KnotExpr, corpus: &Corpus) -> KappaResult {
    match kappa_exact_inner(k, corpus) {
        Ok(r) => r,
        Err(e) => KappaResult::unknown(e.to_string()),
    }
}

fn kappa_exact_inner(k: &KnotExpr, corpus: &Corpus) -> Result<KappaResult, KnotError> {
    let terms = k.terms();
    let mut total = Q::zero();
    let mut rules: Vec<&str> = Vec::new();
    let mut outside = 0u64;
    for t in &terms {
        let Some((v, rule, cov)) = atom_kappa(t.atom, corpus)? else {
            return Ok(KappaResult::unknown(format!("no κ formula covers {}", t.atom)));
        };
        if cov == Coverage::Tabulated {
            outside += t.count;
        }
        let v = if t.mirrored { -v } else { v };
        total += v * Q::from_integer(Z::from(t.count));
        if !rules.contains(&rule) {
            rules.push(rule);
        }
        if t.mirrored && !rules.contains(&RULE_MIRROR) {
            rules.push(RULE_MIRROR);
        }
    }
    if outside > 1 {
        return Ok(KappaResult::unknown(
            "additivity is only known when all but one summand are two-bridge or odd torus knots".into(),
        ));
    }
    if terms.iter().map(|t| t.count).sum::<u64>() > 1 {
        rules.push(RULE_SUM);
    }
    Ok(KappaResult::exact(total, &rules))
}

/// Whether every summand is unknotted, two-bridge or an odd torus knot, so
/// that the branched double cover with its involution is SWF-spherical.
pub fn is_swf_spherical(k: &KnotExpr, corpus: &Corpus) -> bool {
    k.terms()
        .iter()
        .all(|t| matches!(atom_kappa(t.atom, corpus), Ok(Some((_, _, Coverage::Family)))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChangeSign {
    Positive,
    Unsigned,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossingStep {
    pub from: KnotExpr,
    pub to: KnotExpr,
    pub sign: ChangeSign,
}

/// A sequence of single crossing changes, each step starting where the
/// previous one ended.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossingPath {
    pub steps: Vec<CrossingStep>,
    /// The path is printed in the literature rather than user-supplied.
    pub attested: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CrossingPath {
    pub fn new(steps: Vec<CrossingStep>) -> Self {
        CrossingPath {
            steps,
            attested: false,
            note: None,
        }
    }

    fn nodes(&self) -> Vec<&KnotExpr> {
        let mut out: Vec<&KnotExpr> = self.steps.iter().map(|s| &s.from).collect();
        if let Some(last) = self.steps.last() {
            out.push(&last.to);
        }
        out
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStep {
    from: String,
    to: String,
    sign: ChangeSign,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPath {
    #[serde(default)]
    query: Option<String>,
    #[serde(default)]
    attested: bool,
    #[serde(default)]
    note: Option<String>,
    steps: Vec<RawStep>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawFile {
    Bare(Vec<RawPath>),
    Tagged { paths: Vec<RawPath> },
}

const BUNDLED_PATHS: &str = include_str!("../data/paths.json");

/// Parses a path file against a corpus and checks each path.
pub fn paths_from_json_str(text: &str, corpus: &Corpus) -> Result<Vec<CrossingPath>, KappaError> {
    if text.trim().is_empty() {
        return Ok(vec![]);
    }
    let raw: RawFile = serde_json::from_str(text).map_err(|e| KappaError::PathFile(e.to_string()))?;
    let raw = match raw {
        RawFile::Bare(v) | RawFile::Tagged { paths: v } => v,
    };
    let mut out = Vec::new();
    for (index, r) in raw.into_iter().enumerate() {
        let bad = |msg: String| KappaError::InvalidPath { index, msg };
        let parse = |s: &str| parse_knot(s, corpus).map_err(|e| bad(format!("{s:?}: {e}")));
        if let Some(q) = &r.query {
            parse(q)?;
        }
        let mut steps = Vec::new();
        for s in &r.steps {
            steps.push(CrossingStep {
                from: parse(&s.from)?,
                to: parse(&s.to)?,
                sign: s.sign,
            });
        }
        let path = CrossingPath {
            steps,
            attested: r.attested,
            note: r.note,
        };
        check_path(&path, corpus).map_err(bad)?;
        out.push(path);
    }
    Ok(out)
}

/// The crossing-change paths shipped with the crate.
pub fn bundled_paths(corpus: &Corpus) -> Result<Vec<CrossingPath>, KappaError> {
    paths_from_json_str(BUNDLED_PATHS, corpus)
}

pub fn load_paths(path: &Path, corpus: &Corpus) -> Result<Vec<CrossingPath>, KappaError> {
    let text = std::fs::read_to_string(path).map_err(|e| KappaError::PathFile(format!("{}: {e}", path.display())))?;
    paths_from_json_str(&text, corpus)
}

/// Steps must chain, and a positive change lowers σ by 0 or 2.
fn check_path(path: &CrossingPath, corpus: &Corpus) -> Result<(), String> {
    if path.steps.is_empty() {
        return Err("empty path".into());
    }
    for w in path.steps.windows(2) {
        if normal_form(&w[0].to) != normal_form(&w[1].from) {
            return Err(format!("step ends at {} but the next starts at {}", w[0].to, w[1].from));
        }
    }
    for s in &path.steps {
        if s.sign != ChangeSign::Positive {
            continue;
        }
        if let (Ok(a), Ok(b)) = (signature_data(&s.from, corpus), signature_data(&s.to, corpus)) {
            if b != a && b != a - 2 {
                return Err(format!(
                    "positive change {} → {} takes σ from {a} to {b}, expected {a} or {}",
                    s.from,
                    s.to,
                    a - 2
                ));
            }
        }
    }
    Ok(())
}

/// Summands as (atom, mirrored), expanded and sorted, unknots dropped.
fn normal_form(k: &KnotExpr) -> Vec<(String, bool)> {
    let mut out = Vec::new();
    for t in k.terms() {
        let (key, flip) = match t.atom {
            KnotExpr::Unknot => continue,
            KnotExpr::Torus(p, q) => {
                let (a, b) = (p.abs().min(q.abs()), p.abs().max(q.abs()));
                (format!("T({a},{b})"), (*p < 0) != (*q < 0))
            }
            atom => (atom.to_string(), false),
        };
        for _ in 0..t.count {
            out.push((key.clone(), t.mirrored != flip));
        }
    }
    out.sort();
    out
}

fn mirrored_form(nf: &[(String, bool)]) -> Vec<(String, bool)> {
    let mut m: Vec<(String, bool)> = nf.iter().map(|(k, b)| (k.clone(), !b)).collect();
    m.sort();
    m
}

/// Closed interval of κ values allowed by the paths, with the rules used.
struct Window {
    lo: Option<Q>,
    hi: Option<Q>,
    rules: Vec<String>,
}

impl Window {
    fn new() -> Self {
        Window {
            lo: None,
            hi: None,
            rules: vec![],
        }
    }

    fn meet(&mut self, lo: Option<Q>, hi: Option<Q>, rule: &str) {
        if let Some(l) = lo {
            if self.lo.as_ref().is_none_or(|x| &l > x) {
                self.lo = Some(l);
            }
        }
        if let Some(h) = hi {
            if self.hi.as_ref().is_none_or(|x| &h < x) {
                self.hi = Some(h);
            }
        }
        if !self.rules.iter().any(|r| r == rule) {
            self.rules.push(rule.to_string());
        }
    }

    fn is_bounded(&self) -> bool {
        self.lo.is_some() && self.hi.is_some()
    }

    /// Points of −σ/16 + ℤ inside the window.
    fn lattice(&self, sigma: i64) -> Vec<Q> {
        let (Some(lo), Some(hi)) = (&self.lo, &self.hi) else {
            return vec![];
        };
        let base = q16(sigma);
        let first = (lo - &base).ceil().to_integer();
        let last = (hi - &base).floor().to_integer();
        let mut out = Vec::new();
        let mut t = first;
        while t <= last {
            out.push(&base + Q::from_integer(t.clone()));
            t += 1;
        }
        out
    }
}

fn nine_sixteenths(sigma: i64) -> Q {
    Q::new(Z::from(9 * sigma), Z::from(16))
}

/// Intersects the crossing-change constraints on the knot with normal form
/// `target` from every path, using exact anchors at the other end.
fn window_for(
    target: &[(String, bool)],
    sigma: i64,
    paths: &[CrossingPath],
    corpus: &Corpus,
    query: &str,
) -> Result<Window, KappaError> {
    let mut win = Window::new();
    for path in paths {
        let nodes = path.nodes();
        let forms: Vec<_> = nodes.iter().map(|n| normal_form(n)).collect();
        let anchors: Vec<Option<(Q, i64)>> = nodes
            .iter()
            .map(|n| {
                let r = kappa_exact(n, corpus);
                match (r.as_exact(), signature_data(n, corpus)) {
                    (Some(v), Ok(s)) => Some((v.clone(), s)),
                    _ => None,
                }
            })
            .collect();
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                let n = Q::from_integer(Z::from(j - i));
                let positive = path.steps[i..j].iter().all(|s| s.sign == ChangeSign::Positive);
                let (qi, qj) = (forms[i] == target, forms[j] == target);
                match (qi, qj, &anchors[i], &anchors[j]) {
                    (false, true, Some((ka, sa)), _) => {
                        // anchor → query
                        let c = ka - nine_sixteenths(sigma) + nine_sixteenths(*sa);
                        win.meet(Some(&c - &n), Some(&c + &n), RULE_CC);
                        if positive {
                            win.meet(None, Some(c), RULE_CC_POSITIVE);
                        }
                    }
                    (true, false, _, Some((kb, sb))) => {
                        // query → anchor
                        let c = kb + nine_sixteenths(*sb) - nine_sixteenths(sigma);
                        win.meet(Some(&c - &n), Some(&c + &n), RULE_CC);
                        if positive {
                            win.meet(Some(c), None, RULE_CC_POSITIVE);
                        }
                    }
                    (false, false, Some((ka, sa)), Some((kb, sb))) => {
                        let d = kb - ka + nine_sixteenths(*sb) - nine_sixteenths(*sa);
                        let ok = d.abs() <= n && (!positive || kb - ka <= nine_sixteenths(*sa) - nine_sixteenths(*sb));
                        if !ok {
                            return Err(KappaError::InconsistentConstraints {
                                query: query.to_string(),
                                detail: format!("anchors {} and {} violate the crossing-change bounds", nodes[i], nodes[j]),
                            });
                        }
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(win)
}

/// Candidate values of κ(K) from crossing-change paths, the congruence
/// κ ≡ −σ/16 (mod 1), and κ(K) + κ(m(K)) ≥ 0 when the mirror is also
/// constrained. Falls back to [`kappa_exact`] when no path reaches K.
pub fn kappa_candidates(k: &KnotExpr, paths: &[CrossingPath], corpus: &Corpus) -> Result<KappaResult, KappaError> {
    let query = k.to_string();
    let sigma = signature_data(k, corpus)?;
    let target = normal_form(k);
    let mirror = mirrored_form(&target);
    let win = window_for(&target, sigma, paths, corpus, &query)?;
    let exact = kappa_exact(k, corpus);
    if !win.is_bounded() {
        return Ok(exact);
    }
    let mut values = win.lattice(sigma);
    let mut provenance = win.rules.clone();
    provenance.push(RULE_CONGRUENCE.to_string());
    if mirror != target {
        let mwin = window_for(&mirror, -sigma, paths, corpus, &query)?;
        if mwin.is_bounded() {
            if let Some(top) = mwin.lattice(-sigma).into_iter().max() {
                values.retain(|v| v + &top >= Q::zero());
                provenance.push(RULE_MIRROR_SUM.to_string());
            }
        }
    }
    if values.is_empty() {
        return Err(KappaError::InconsistentConstraints {
            query,
            detail: "no value of −σ/16 + ℤ satisfies every bound".into(),
        });
    }
    if let Some(v) = exact.as_exact() {
        if !values.contains(v) {
            return Err(KappaError::InconsistentConstraints {
                query,
                detail: format!("the exact value {v} is excluded by the path data"),
            });
        }
    }
    Ok(KappaResult::from_values(values, provenance))
}

/// The sharpest available answer: exact, then path candidates, then the
/// tabulated candidates of a single corpus summand shifted by the exact
/// value of the remaining summands.
pub fn kappa_best(k: &KnotExpr, paths: &[CrossingPath], corpus: &Corpus) -> Result<KappaResult, KappaError> {
    let r = kappa_candidates(k, paths, corpus)?;
    if r.kind != KappaKind::Unknown {
        return Ok(r);
    }
    let terms = k.terms();
    let open: Vec<_> = terms
        .iter()
        .filter(|t| !matches!(atom_kappa(t.atom, corpus), Ok(Some((_, _, Coverage::Family)))))
        .collect();
    let [t] = open.as_slice() else {
        return Ok(r);
    };
    if t.count != 1 {
        return Ok(r);
    }
    let single = if t.mirrored { t.atom.clone().mirror() } else { t.atom.clone() };
    let mut part = kappa_candidates(&single, paths, corpus)?;
    if part.kind == KappaKind::Unknown {
        let KnotExpr::Named(id) = t.atom else {
            return Ok(r);
        };
        let e = corpus.get(id).ok_or_else(|| KnotError::UnknownName(id.clone()))?;
        if e.kappa_asserted.is_empty() {
            return Ok(r);
        }
        part = KappaResult::from_values(e.kappa_asserted.clone(), vec![RULE_TABULATED.to_string()]);
        if t.mirrored {
            part = part.negate();
        }
    }
    if terms.len() == 1 {
        return Ok(part);
    }
    let rest: Vec<KnotExpr> = terms
        .iter()
        .filter(|u| !std::ptr::eq(u.atom, t.atom) || u.mirrored != t.mirrored)
        .map(|u| {
            let a = if u.mirrored { u.atom.clone().mirror() } else { u.atom.clone() };
            a.repeat(u.count as u32)
        })
        .collect();
    let rest = kappa_exact(&KnotExpr::sum(rest), corpus);
    match rest.as_exact() {
        Some(v) => {
            let mut out = part.shift(v, RULE_SUM);
            out.provenance.extend(rest.provenance);
            out.provenance.dedup();
            Ok(out)
        }
        None => Ok(r),
    }
}

/// Family label of T(3, q) for q = 6k ± 1 and the coefficient c with
/// κ(#m T(3, q)) = c·m/2, as tabulated.
pub fn torus_family(q: i64) -> Option<(&'static str, i64)> {
    if q < 5 || q % 2 == 0 || q % 3 == 0 {
        return None;
    }
    Some(match q.rem_euclid(12) {
        7 => ("12n−5", -1),
        11 => ("12n−1", 0),
        5 => ("12n−7", 1),
        1 => ("12n+1", 0),
        _ => unreachable!("odd and prime to 3"),
    })
}

/// One row of the κ(#m T(3, 6k ± 1)) table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorusRow {
    pub knot: String,
    pub family: &'static str,
    pub m: u32,
    pub mirrored: bool,
    #[serde(with = "qfmt::opt")]
    pub kappa: Option<Q>,
    #[serde(with = "qfmt")]
    pub expected: Q,
    pub matches: bool,
}

/// κ(#m T(3, q)) and its mirror for 5 ≤ q ≤ `max`, 1 ≤ m ≤ `m_max`, computed
/// through the plumbing μ̄ and compared with the tabulated closed form.
pub fn torus_table(max: i64, m_max: u32, corpus: &Corpus) -> Vec<TorusRow> {
    let mut rows = Vec::new();
    for q in 5..=max {
        let Some((family, c)) = torus_family(q) else { continue };
        for m in 1..=m_max {
            for mirrored in [false, true] {
                let base = KnotExpr::Torus(3, q).repeat(m);
                let k = if mirrored { base.mirror() } else { base };
                let kappa = kappa_exact(&k, corpus).as_exact().cloned();
                let sign = if mirrored { -1 } else { 1 };
                let expected = Q::new(Z::from(sign * c * m as i64), Z::from(2));
                rows.push(TorusRow {
                    knot: k.to_string(),
                    family,
                    m,
                    mirrored,
                    matches: kappa.as_ref() == Some(&expected),
                    kappa,
                    expected,
                });
            }
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    fn k(s: &str, c: &Corpus) -> KnotExpr {
        parse_knot(s, c).unwrap()
    }

    #[test]
    fn exact_examples() {
        let c = Corpus::bundled();
        let ex = |s: &str| kappa_exact(&k(s, &c), &c).as_exact().cloned();
        assert_eq!(ex("K(7,3)"), Some(q(1, 8)));
        assert_eq!(ex("T(3,5)"), Some(q(1, 2)));
        assert_eq!(ex("m(T(3,5))"), Some(q(-1, 2)));
        assert_eq!(ex("T(3,-5)"), Some(q(-1, 2)));
        assert_eq!(ex("T(3,7) # K(7,3)"), Some(q(-3, 8)));
        assert_eq!(ex("9_49"), Some(q(1, 4)));
        assert_eq!(ex("U"), Some(q(0, 1)));
        assert_eq!(ex("T(2,5)"), Some(q(1, 4)));
        assert_eq!(ex("6_3"), Some(q(0, 1)));
        assert_eq!(ex("T(3,4)"), None);
        assert_eq!(ex("8_10"), None);
        assert_eq!(ex("9_49 # 9_47"), None);
        assert_eq!(ex("9_49 # T(3,5)"), Some(q(3, 4)));
    }

    #[test]
    fn path_examples() {
        let c = Corpus::bundled();
        let paths = bundled_paths(&c).unwrap();
        let r = kappa_candidates(&k("8_10", &c), &paths, &c).unwrap();
        assert_eq!(r.kind, KappaKind::Exact(q(1, 8)));
        let r = kappa_candidates(&k("8_5", &c), &paths, &c).unwrap();
        assert_eq!(r.kind, KappaKind::Candidates(vec![q(1, 4), q(5, 4)]));
        let r = kappa_candidates(&KnotExpr::Unknot, &[], &c).unwrap();
        assert_eq!(r.kind, KappaKind::Exact(q(0, 1)));
    }

    #[test]
    fn unsigned_step_is_weaker() {
        let c = Corpus::bundled();
        let p = CrossingPath::new(vec![CrossingStep {
            from: k("8_5", &c),
            to: k("K(5,1)", &c),
            sign: ChangeSign::Unsigned,
        }]);
        let r = kappa_candidates(&k("8_5", &c), &[p], &c).unwrap();
        assert_eq!(r.kind, KappaKind::Candidates(vec![q(-3, 4), q(1, 4), q(5, 4)]));
    }

    #[test]
    fn bad_paths() {
        let c = Corpus::bundled();
        let jump = r#"[{"steps":[{"from":"8_10","to":"T(2,7)","sign":"positive"}]}]"#;
        assert!(matches!(paths_from_json_str(jump, &c), Err(KappaError::InvalidPath { index: 0, .. })));
        let gap = r#"[{"steps":[{"from":"6_3","to":"8_10","sign":"positive"},{"from":"8_5","to":"U","sign":"unsigned"}]}]"#;
        assert!(matches!(paths_from_json_str(gap, &c), Err(KappaError::InvalidPath { .. })));
        // Two anchors whose κ values are too far apart for one change.
        let far = r#"[{"steps":[{"from":"T(3,5)","to":"m(T(3,5))","sign":"unsigned"}]}]"#;
        let p = paths_from_json_str(far, &c).unwrap();
        assert!(matches!(
            kappa_candidates(&k("8_10", &c), &p, &c),
            Err(KappaError::InconsistentConstraints { .. })
        ));
    }

    #[test]
    fn tabulated_fallback() {
        let c = Corpus::bundled();
        let r = kappa_best(&k("8_16", &c), &[], &c).unwrap();
        assert_eq!(r.provenance, vec![RULE_TABULATED.to_string()]);
        assert!(!r.values().is_empty());
        let m = kappa_best(&k("m(8_16) # K(7,3)", &c), &[], &c).unwrap();
        let expect: Vec<Q> = {
            let mut v: Vec<Q> = r.values().iter().map(|x| q(1, 8) - x).collect();
            v.sort();
            v
        };
        assert_eq!(m.values(), expect);
    }
}
