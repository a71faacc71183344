use super::KnotError;
use num_integer::Integer;
use serde::{Serialize, Serializer};
use std::fmt;

/// A knot built from atoms by connected sum and mirroring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum KnotExpr {
    Unknot,
    /// T(p, q): coprime, |p|, |q| ≥ 2. A negative entry denotes the mirror.
    Torus(i64, i64),
    /// K(p, q): p odd, 0 < q < p, coprime; its branched double cover is L(p, q).
    TwoBridge(i64, i64),
    /// A tabulated knot, e.g. `8_10`.
    Named(String),
    ConnSum(Vec<KnotExpr>),
    Mirror(Box<KnotExpr>),
    Repeat(u32, Box<KnotExpr>),
}

/// A leaf of an expression with its accumulated mirror parity and multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term<'a> {
    pub atom: &'a KnotExpr,
    pub mirrored: bool,
    pub count: u64,
}

impl KnotExpr {
    pub fn torus(p: i64, q: i64) -> Result<Self, KnotError> {
        if p.abs() < 2 || q.abs() < 2 {
            return Err(KnotError::InvalidAtom(format!("T({p},{q}) needs |p|,|q| ≥ 2")));
        }
        if p.gcd(&q) != 1 {
            return Err(KnotError::NonCoprime { p, q });
        }
        Ok(KnotExpr::Torus(p, q))
    }

    pub fn two_bridge(p: i64, q: i64) -> Result<Self, KnotError> {
        if p % 2 == 0 {
            return Err(KnotError::EvenTwoBridge { p });
        }
        if p <= 0 || q <= 0 || q >= p {
            return Err(KnotError::InvalidAtom(format!("K({p},{q}) needs 0 < q < p")));
        }
        if p.gcd(&q) != 1 {
            return Err(KnotError::NonCoprime { p, q });
        }
        Ok(KnotExpr::TwoBridge(p, q))
    }

    pub fn mirror(self) -> Self {
        KnotExpr::Mirror(Box::new(self))
    }

    pub fn repeat(self, k: u32) -> Self {
        KnotExpr::Repeat(k, Box::new(self))
    }

    pub fn sum(parts: Vec<KnotExpr>) -> Self {
        match parts.len() {
            0 => KnotExpr::Unknot,
            1 => parts.into_iter().next().unwrap(),
            _ => KnotExpr::ConnSum(parts),
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(
            self,
            KnotExpr::Unknot | KnotExpr::Torus(..) | KnotExpr::TwoBridge(..) | KnotExpr::Named(_)
        )
    }

    /// The leaves of the expression, with mirror parity and multiplicity.
    pub fn terms(&self) -> Vec<Term<'_>> {
        let mut out = Vec::new();
        self.collect_terms(false, 1, &mut out);
        out
    }

    fn collect_terms<'a>(&'a self, mirrored: bool, count: u64, out: &mut Vec<Term<'a>>) {
        match self {
            KnotExpr::ConnSum(parts) => {
                for p in parts {
                    p.collect_terms(mirrored, count, out);
                }
            }
            KnotExpr::Mirror(sub) => sub.collect_terms(!mirrored, count, out),
            KnotExpr::Repeat(k, sub) => sub.collect_terms(mirrored, count * *k as u64, out),
            atom => {
                if count > 0 {
                    out.push(Term {
                        atom,
                        mirrored,
                        count,
                    })
                }
            }
        }
    }

    /// Named atoms occurring in the expression.
    pub fn names(&self) -> Vec<&str> {
        self.terms()
            .into_iter()
            .filter_map(|t| match t.atom {
                KnotExpr::Named(n) => Some(n.as_str()),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotExpr::Unknot => write!(f, "U"),
            KnotExpr::Torus(p, q) => write!(f, "T({p},{q})"),
            KnotExpr::TwoBridge(p, q) => write!(f, "K({p},{q})"),
            KnotExpr::Named(n) => write!(f, "{n}"),
            KnotExpr::ConnSum(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " # ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
            KnotExpr::Mirror(sub) => write!(f, "m({sub})"),
            KnotExpr::Repeat(1, sub) => write!(f, "{sub}"),
            KnotExpr::Repeat(k, sub) => match **sub {
                KnotExpr::ConnSum(_) => write!(f, "{k}*m(m({sub}))"),
                _ => write!(f, "{k}*{sub}"),
            },
        }
    }
}

impl Serialize for KnotExpr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
