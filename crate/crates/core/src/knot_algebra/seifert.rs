use super::{Corpus, KnotError, KnotExpr};
use crate::linalg::{antisymmetrize, block_diag, det_bareiss, transpose};
use crate::{ZMatrix, Z};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A Seifert matrix V of size 2g; det(V − Vᵀ) = ±1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertMatrix(pub ZMatrix);

impl SeifertMatrix {
    pub fn size(&self) -> usize {
        self.0.len()
    }

    /// −Vᵀ, a Seifert matrix of the mirror.
    pub fn mirror(&self) -> SeifertMatrix {
        SeifertMatrix(
            transpose(&self.0)
                .into_iter()
                .map(|r| r.into_iter().map(|x| -x).collect())
                .collect(),
        )
    }

    pub fn is_valid(&self) -> bool {
        let n = self.size();
        n.is_multiple_of(2) && self.0.iter().all(|r| r.len() == n) && det_bareiss(&antisymmetrize(&self.0)).abs().is_one()
    }
}

/// Seifert matrix of T(p, q) for p, q ≥ 2 coprime: −(Λ_p ⊗ Λ_q), where Λ_n is
/// the (n−1)×(n−1) upper bidiagonal matrix with 1 on the diagonal and −1 above.
/// Negative parameters give the mirror.
pub fn torus_seifert(p: i64, q: i64) -> SeifertMatrix {
    let (a, b) = (p.unsigned_abs() as usize, q.unsigned_abs() as usize);
    let lambda = |i: usize, j: usize| -> i64 {
        if i == j {
            1
        } else if j == i + 1 {
            -1
        } else {
            0
        }
    };
    let (ra, rb) = (a - 1, b - 1);
    let n = ra * rb;
    let mut v = vec![vec![Z::zero(); n]; n];
    for i1 in 0..ra {
        for j1 in 0..ra {
            let x = lambda(i1, j1);
            if x == 0 {
                continue;
            }
            for i2 in 0..rb {
                for j2 in 0..rb {
                    let y = lambda(i2, j2);
                    if y != 0 {
                        v[i1 * rb + i2][j1 * rb + j2] = Z::from(-x * y);
                    }
                }
            }
        }
    }
    let v = SeifertMatrix(v);
    if (p < 0) != (q < 0) {
        v.mirror()
    } else {
        v
    }
}

/// Expansion p/q' = c₁ − 1/(c₂ − 1/(… − 1/c_{2g})) with every cᵢ even, where
/// q' ∈ {q, q − p} is the even representative of q mod p.
pub fn even_continued_fraction(p: i64, q: i64) -> Vec<i64> {
    let q = if q % 2 == 0 { q } else { q - p };
    let (mut a, mut b) = (Z::from(p), Z::from(q));
    let mut out = Vec::new();
    while !b.is_zero() {
        // Nearest even integer d to a/b, so that |a − d·b| < |b|.
        let d = (&a + &b).div_floor(&(&b * Z::from(2))) * Z::from(2);
        let rem = &a - &d * &b;
        out.push(i64::try_from(&d).expect("continued fraction entry fits i64"));
        // a/b − d = rem/b = −1/(next), next = −b/rem.
        let (na, nb) = (-b, rem);
        a = na;
        b = nb;
    }
    out
}

/// Seifert matrix of K(p, q) from the linear plumbing of bands with
/// half-framings cᵢ/2: diag(cᵢ/2) with ones on the superdiagonal.
pub fn two_bridge_seifert(p: i64, q: i64) -> SeifertMatrix {
    let cf = even_continued_fraction(p, q);
    let n = cf.len();
    let mut v = vec![vec![Z::zero(); n]; n];
    for (i, c) in cf.iter().enumerate() {
        v[i][i] = Z::from(c / 2);
        if i + 1 < n {
            v[i][i + 1] = Z::one();
        }
    }
    SeifertMatrix(v)
}

/// Block-diagonal Seifert matrix of a knot expression.
pub fn seifert_matrix(k: &KnotExpr, corpus: &Corpus) -> Result<SeifertMatrix, KnotError> {
    let mut blocks = Vec::new();
    for t in k.terms() {
        let v = match t.atom {
            KnotExpr::Unknot => continue,
            KnotExpr::Torus(p, q) => torus_seifert(*p, *q),
            KnotExpr::TwoBridge(p, q) => two_bridge_seifert(*p, *q),
            KnotExpr::Named(id) => corpus
                .get(id)
                .ok_or_else(|| KnotError::UnknownName(id.clone()))?
                .seifert_matrix()
                .ok_or_else(|| KnotError::MissingCorpusMatrix(id.clone()))?,
            _ => unreachable!("terms() yields atoms"),
        };
        let v = if t.mirrored { v.mirror() } else { v };
        for _ in 0..t.count {
            blocks.push(v.0.clone());
        }
    }
    Ok(SeifertMatrix(block_diag(&blocks)))
}
