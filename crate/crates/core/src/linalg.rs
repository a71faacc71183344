//! Dense exact linear algebra: congruence diagonalization of symmetric forms,
//! Bareiss determinants, and mod-2 solving.

// Index loops mirror the matrix notation.
#![allow(clippy::needless_range_loop)]

use crate::scalar::OrderedField;
use crate::{ZMatrix, Z};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Counts of positive, negative and zero diagonal entries after diagonalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Inertia {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.pos as i64 - self.neg as i64
    }
}

/// Inertia of a symmetric integer matrix, by fraction-free congruence.
///
/// Eliminating pivot p from [[p, mᵀ], [m, M]] leaves p·M − m·mᵀ, which is p²
/// times the Schur complement up to the factor 1/p; its signature is therefore
/// sign(p) times that of the complement. Rows are divided by their common
/// content to keep entries small.
pub fn inertia_int(a: &ZMatrix) -> Inertia {
    let mut m: Vec<Vec<Z>> = a.to_vec();
    let mut out = Inertia::default();
    let mut flip = false;
    loop {
        let n = m.len();
        if n == 0 {
            break;
        }
        let piv = (0..n).find(|&i| !m[i][i].is_zero());
        let piv = match piv {
            Some(i) => i,
            None => match off_diagonal_nonzero(&m) {
                Some((i, j)) => {
                    // row_i += row_j, col_i += col_j makes m_ii = 2 m_ij ≠ 0.
                    for k in 0..n {
                        let v = m[j][k].clone();
                        m[i][k] += v;
                    }
                    for k in 0..n {
                        let v = m[k][j].clone();
                        m[k][i] += v;
                    }
                    i
                }
                None => {
                    out.zero += n;
                    break;
                }
            },
        };
        let p = m[piv][piv].clone();
        let positive = p.is_positive() != flip;
        if positive {
            out.pos += 1;
        } else {
            out.neg += 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&i| i != piv).collect();
        let mut next: Vec<Vec<Z>> = rest
            .iter()
            .map(|&i| {
                rest.iter()
                    .map(|&j| &p * &m[i][j] - &m[i][piv] * &m[piv][j])
                    .collect()
            })
            .collect();
        let content = next
            .iter()
            .flatten()
            .fold(Z::zero(), |g, x| g.gcd(x));
        if !content.is_zero() && !content.is_one() {
            for row in next.iter_mut() {
                for x in row.iter_mut() {
                    *x = &*x / &content;
                }
            }
        }
        if p.is_negative() {
            flip = !flip;
        }
        m = next;
    }
    out
}

fn off_diagonal_nonzero(m: &[Vec<Z>]) -> Option<(usize, usize)> {
    let n = m.len();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| i != j && !m[i][j].is_zero())
}

/// Signature of a symmetric integer matrix.
pub fn signature_int(a: &ZMatrix) -> i64 {
    inertia_int(a).signature()
}

/// Inertia of a symmetric matrix over an ordered field by symmetric
/// Gaussian elimination with largest-diagonal pivoting.
pub fn inertia<F: OrderedField>(a: &[Vec<F>]) -> Inertia {
    let mut m: Vec<Vec<F>> = a.to_vec();
    let mut out = Inertia::default();
    let mut alive: Vec<usize> = (0..m.len()).collect();
    while !alive.is_empty() {
        let piv = alive
            .iter()
            .copied()
            .filter(|&i| !m[i][i].is_zero())
            .max_by(|&i, &j| m[i][i].abs().partial_cmp(&m[j][j].abs()).unwrap());
        let piv = match piv {
            Some(i) => i,
            None => {
                let pair = alive
                    .iter()
                    .flat_map(|&i| alive.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !m[i][j].is_zero());
                let Some((i, j)) = pair else {
                    out.zero += alive.len();
                    break;
                };
                for &k in &alive {
                    let v = m[j][k].clone();
                    m[i][k] = m[i][k].clone() + v;
                }
                for &k in &alive {
                    let v = m[k][j].clone();
                    m[k][i] = m[k][i].clone() + v;
                }
                i
            }
        };
        let p = m[piv][piv].clone();
        if p.is_positive() {
            out.pos += 1;
        } else {
            out.neg += 1;
        }
        alive.retain(|&i| i != piv);
        for &i in &alive {
            let f = m[i][piv].clone() / p.clone();
            if f.is_zero() {
                continue;
            }
            for &j in &alive {
                let v = f.clone() * m[piv][j].clone();
                m[i][j] = m[i][j].clone() - v;
            }
        }
    }
    out
}

/// Determinant of a square integer matrix (Bareiss elimination).
pub fn det_bareiss(a: &ZMatrix) -> Z {
    let n = a.len();
    if n == 0 {
        return Z::one();
    }
    let mut m = a.to_vec();
    let mut sign = Z::one();
    let mut prev = Z::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Z::zero();
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

pub fn transpose(a: &ZMatrix) -> ZMatrix {
    let n = a.len();
    let c = a.first().map_or(0, |r| r.len());
    (0..c).map(|j| (0..n).map(|i| a[i][j].clone()).collect()).collect()
}

/// A + Aᵀ.
pub fn symmetrize(a: &ZMatrix) -> ZMatrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| &a[i][j] + &a[j][i]).collect())
        .collect()
}

/// A − Aᵀ.
pub fn antisymmetrize(a: &ZMatrix) -> ZMatrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| &a[i][j] - &a[j][i]).collect())
        .collect()
}

pub fn block_diag(blocks: &[ZMatrix]) -> ZMatrix {
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    let mut out = vec![vec![Z::zero(); n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                out[off + i][off + j] = x.clone();
            }
        }
        off += b.len();
    }
    out
}

pub fn from_i64(rows: &[&[i64]]) -> ZMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| Z::from(x)).collect())
        .collect()
}

/// Solves A·x ≡ b (mod 2). Returns `None` when A is singular mod 2.
pub fn solve_mod2(a: &ZMatrix, b: &[bool]) -> Option<Vec<bool>> {
    let n = a.len();
    let words = (n + 1).div_ceil(64);
    let bit = |row: &mut Vec<u64>, j: usize| row[j / 64] |= 1u64 << (j % 64);
    let get = |row: &[u64], j: usize| (row[j / 64] >> (j % 64)) & 1 == 1;
    let mut rows: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut r = vec![0u64; words];
            for j in 0..n {
                if a[i][j].is_odd() {
                    bit(&mut r, j);
                }
            }
            if b[i] {
                bit(&mut r, n);
            }
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| get(&rows[r], col))?;
        rows.swap(col, p);
        let pr = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != col && get(row, col) {
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x ^= y;
                }
            }
        }
    }
    Some((0..n).map(|i| get(&rows[i], n)).collect())
}
