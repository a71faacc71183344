//! Tabulated knots.
//!
//! A corpus file is JSON, either a bare array of entries (signatures in the
//! σ(T(2,3)) = −2 convention) or an object
//! `{"convention": "paper" | "knot_atlas", "entries": [...]}`. Tables in the
//! Knot Atlas convention have their signatures negated on load.
//!
//! Entry fields: `id`, `sigma`, `arf`, and optionally `determinant`,
//! `seifert` (integer matrix), `two_bridge` ([p, q]), `delta_branched`
//! (rational string, δ of the branched double cover), `kappa_asserted`
//! (rational strings), `kappa_star`, `flags`, `note`.

use super::seifert::{two_bridge_seifert, SeifertMatrix};
use super::KnotExpr;
use crate::linalg::{det_bareiss, signature_int, symmetrize};
use crate::{qfmt, Q, Z};
use num_integer::Integer;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::path::Path;
use thiserror::Error;

const BUNDLED: &str = include_str!("../../data/knots.json");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("cannot read corpus {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("SchemaError{}: {msg}", row.map(|r| format!(" at row {r}")).unwrap_or_default())]
    SchemaError { row: Option<usize>, msg: String },
    #[error("ConventionConflict at row {row} ({id}): stored σ = {stored}, Seifert matrix gives {computed}")]
    ConventionConflict {
        row: usize,
        id: String,
        stored: i64,
        computed: i64,
    },
}

impl CorpusError {
    pub fn kind(&self) -> &'static str {
        match self {
            CorpusError::Io { .. } => "Io",
            CorpusError::SchemaError { .. } => "SchemaError",
            CorpusError::ConventionConflict { .. } => "ConventionConflict",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    #[default]
    Paper,
    KnotAtlas,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorpusFlag {
    QuasiAlternating,
    NoIrreducibleSolutions,
    /// Candidate κ values copied from the published table, not re-derived.
    PaperAsserted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub id: String,
    pub sigma: i64,
    pub arf: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub determinant: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seifert: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_bridge: Option<(i64, i64)>,
    #[serde(default, with = "qfmt::opt", skip_serializing_if = "Option::is_none")]
    pub delta_branched: Option<Q>,
    #[serde(default, with = "qfmt::vec", skip_serializing_if = "Vec::is_empty")]
    pub kappa_asserted: Vec<Q>,
    #[serde(default, with = "qfmt::opt", skip_serializing_if = "Option::is_none")]
    pub kappa_star: Option<Q>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<CorpusFlag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CorpusEntry {
    /// The stored matrix, or the two-bridge one when the entry is two-bridge.
    pub fn seifert_matrix(&self) -> Option<SeifertMatrix> {
        self.seifert
            .as_ref()
            .map(|rows| SeifertMatrix(rows.iter().map(|r| r.iter().map(|&x| Z::from(x)).collect()).collect()))
            .or_else(|| self.two_bridge.map(|(p, q)| two_bridge_seifert(p, q)))
    }

    pub fn has_flag(&self, f: CorpusFlag) -> bool {
        self.flags.contains(&f)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FileShape {
    Bare(Vec<serde_json::Value>),
    Tagged {
        #[serde(default)]
        convention: Convention,
        entries: Vec<serde_json::Value>,
    },
}

/// A validated, read-only set of corpus entries.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    entries: Vec<CorpusEntry>,
    index: HashMap<String, usize>,
}

impl Corpus {
    pub fn empty() -> Self {
        Corpus::default()
    }

    /// The 8- and 9-crossing table shipped with the crate.
    pub fn bundled() -> Self {
        Corpus::from_json_str(BUNDLED).expect("bundled corpus is valid")
    }

    pub fn bundled_source() -> &'static str {
        BUNDLED
    }

    pub fn load(path: &Path) -> Result<Self, CorpusError> {
        let text = std::fs::read_to_string(path).map_err(|e| CorpusError::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        })?;
        Corpus::from_json_str(&text)
    }

    pub fn from_json_str(text: &str) -> Result<Self, CorpusError> {
        if text.trim().is_empty() {
            return Ok(Corpus::empty());
        }
        let shape: FileShape = serde_json::from_str(text).map_err(|e| CorpusError::SchemaError {
            row: None,
            msg: e.to_string(),
        })?;
        let (convention, raw) = match shape {
            FileShape::Bare(v) => (Convention::Paper, v),
            FileShape::Tagged {
                convention,
                entries,
            } => (convention, entries),
        };
        let mut corpus = Corpus::empty();
        for (row, value) in raw.into_iter().enumerate() {
            let schema = |msg: String| CorpusError::SchemaError {
                row: Some(row),
                msg,
            };
            let mut e: CorpusEntry = serde_json::from_value(value).map_err(|e| schema(e.to_string()))?;
            if convention == Convention::KnotAtlas {
                e.sigma = -e.sigma;
            }
            validate(&e, row)?;
            if corpus.index.contains_key(&e.id) {
                return Err(schema(format!("duplicate id {}", e.id)));
            }
            corpus.index.insert(e.id.clone(), corpus.entries.len());
            corpus.entries.push(e);
        }
        Ok(corpus)
    }

    pub fn get(&self, id: &str) -> Option<&CorpusEntry> {
        self.index.get(id).map(|&i| &self.entries[i])
    }

    pub fn entries(&self) -> &[CorpusEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn named(&self, id: &str) -> Option<KnotExpr> {
        self.get(id).map(|_| KnotExpr::Named(id.to_string()))
    }
}

fn arf_of_det(d: &Z) -> u8 {
    let r = d.mod_floor(&Z::from(8));
    if r == Z::from(1) || r == Z::from(7) {
        0
    } else {
        1
    }
}

fn validate(e: &CorpusEntry, row: usize) -> Result<(), CorpusError> {
    let schema = |msg: String| CorpusError::SchemaError {
        row: Some(row),
        msg: format!("{}: {msg}", e.id),
    };
    if e.id.is_empty() {
        return Err(schema("empty id".into()));
    }
    if e.sigma % 2 != 0 {
        return Err(schema(format!("signature {} is odd", e.sigma)));
    }
    if e.arf > 1 {
        return Err(schema(format!("arf {} not in {{0,1}}", e.arf)));
    }
    if let Some(d) = e.determinant {
        if d % 2 == 0 {
            return Err(schema(format!("determinant {d} is even")));
        }
        if arf_of_det(&Z::from(d)) != e.arf {
            return Err(schema(format!("arf {} disagrees with determinant {d}", e.arf)));
        }
    }
    if let Some((p, q)) = e.two_bridge {
        KnotExpr::two_bridge(p, q).map_err(|err| schema(err.to_string()))?;
        if let Some(d) = e.determinant {
            if d.abs() != p {
                return Err(schema(format!("two-bridge K({p},{q}) has determinant {p}, not {d}")));
            }
        }
    }
    if let Some(v) = e.seifert_matrix() {
        if !v.is_valid() {
            return Err(schema("det(V − Vᵀ) ≠ ±1".into()));
        }
        let s = symmetrize(&v.0);
        let computed = signature_int(&s);
        if computed != e.sigma {
            if computed == -e.sigma {
                return Err(CorpusError::ConventionConflict {
                    row,
                    id: e.id.clone(),
                    stored: e.sigma,
                    computed,
                });
            }
            return Err(schema(format!("stored σ = {}, Seifert matrix gives {computed}", e.sigma)));
        }
        let det = det_bareiss(&s);
        if arf_of_det(&det) != e.arf {
            return Err(schema(format!("arf {} disagrees with Δ(−1) = {det}", e.arf)));
        }
        if let Some(d) = e.determinant {
            if det.abs() != Z::from(d.abs()) {
                return Err(schema(format!("determinant {d} disagrees with Δ(−1) = {det}")));
            }
        }
    }
    // κ ≡ −σ/16 (mod 1) for every recorded κ value.
    let congruent = |k: &Q| (k + Q::new(Z::from(e.sigma), Z::from(16))).is_integer();
    if let Some(d) = &e.delta_branched {
        if !congruent(&(d / Q::from(Z::from(2)))) {
            return Err(schema(format!("δ = {d} violates the Rokhlin congruence")));
        }
    }
    if let Some(k) = e.kappa_asserted.iter().find(|k| !congruent(k)) {
        return Err(schema(format!("κ = {k} violates the Rokhlin congruence")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_table() {
        let c = Corpus::bundled();
        let ids = [
            "8_5", "8_10", "8_16", "8_17", "8_18", "8_19", "8_20", "8_21", "9_16", "9_22", "9_24",
            "9_25", "9_28", "9_29", "9_30", "9_32", "9_33", "9_34", "9_35", "9_36", "9_37", "9_38",
            "9_39", "9_40", "9_41", "9_42", "9_43", "9_44", "9_45", "9_46", "9_47", "9_48", "9_49",
        ];
        for id in ids {
            let e = c.get(id).unwrap_or_else(|| panic!("{id} missing"));
            assert!(!e.kappa_asserted.is_empty(), "{id}");
        }
    }

    #[test]
    fn empty_and_bad_rows() {
        assert!(Corpus::from_json_str("").unwrap().is_empty());
        assert!(Corpus::from_json_str("[]").unwrap().is_empty());
        let odd = r#"[{"id":"x","sigma":0,"arf":0},{"id":"y","sigma":3,"arf":0}]"#;
        assert!(matches!(
            Corpus::from_json_str(odd),
            Err(CorpusError::SchemaError { row: Some(1), .. })
        ));
        let dup = r#"[{"id":"x","sigma":0,"arf":0},{"id":"x","sigma":0,"arf":0}]"#;
        assert!(matches!(Corpus::from_json_str(dup), Err(CorpusError::SchemaError { .. })));
    }

    #[test]
    fn conventions() {
        let atlas = r#"{"convention":"knot_atlas","entries":[{"id":"3_1","sigma":2,"arf":1,"two_bridge":[3,1]}]}"#;
        assert_eq!(Corpus::from_json_str(atlas).unwrap().get("3_1").unwrap().sigma, -2);
        let clash = r#"[{"id":"3_1","sigma":2,"arf":1,"two_bridge":[3,1]}]"#;
        assert!(matches!(
            Corpus::from_json_str(clash),
            Err(CorpusError::ConventionConflict { row: 0, .. })
        ));
    }
}
