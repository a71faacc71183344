use super::seifert::{seifert_matrix, SeifertMatrix};
use super::{Corpus, KnotError, KnotExpr};
use crate::interval::{cos_sin_2pi, hermitian_inertia, CIv, Prec};
use crate::linalg::{det_bareiss, signature_int, symmetrize, transpose};
use crate::{ZMatrix, Q, Z};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// σ(K) = sign(V + Vᵀ), computed from the Seifert matrix of every atom.
pub fn signature(k: &KnotExpr, corpus: &Corpus) -> Result<i64, KnotError> {
    // Block-diagonal, so each distinct atom is diagonalized once.
    let mut total = 0i64;
    for t in k.terms() {
        let v = seifert_matrix(t.atom, corpus)?;
        let s = signature_int(&symmetrize(&v.0));
        total += if t.mirrored { -s } else { s } * t.count as i64;
    }
    Ok(total)
}

/// σ(K) using the tabulated signature for named atoms without a matrix.
pub fn signature_data(k: &KnotExpr, corpus: &Corpus) -> Result<i64, KnotError> {
    let mut total = 0i64;
    for t in k.terms() {
        let s = match t.atom {
            KnotExpr::Named(id) => {
                corpus
                    .get(id)
                    .ok_or_else(|| KnotError::UnknownName(id.clone()))?
                    .sigma
            }
            atom => signature(atom, corpus)?,
        };
        total += if t.mirrored { -s } else { s } * t.count as i64;
    }
    Ok(total)
}

/// |Δ_K(−1)| = |det(V + Vᵀ)|, multiplicative over connected sum.
pub fn determinant(k: &KnotExpr, corpus: &Corpus) -> Result<Z, KnotError> {
    let mut total = Z::one();
    for t in k.terms() {
        let d = match t.atom {
            KnotExpr::Named(id) => {
                let e = corpus.get(id).ok_or_else(|| KnotError::UnknownName(id.clone()))?;
                match (e.seifert_matrix(), e.determinant) {
                    (Some(v), _) => det_bareiss(&symmetrize(&v.0)).abs(),
                    (None, Some(d)) => Z::from(d.abs()),
                    (None, None) => return Err(KnotError::MissingCorpusMatrix(id.clone())),
                }
            }
            atom => det_bareiss(&symmetrize(&seifert_matrix(atom, corpus)?.0)).abs(),
        };
        total *= num_traits::pow(d, t.count as usize);
    }
    Ok(total)
}

/// Arf(K): 0 iff Δ_K(−1) ≡ ±1 (mod 8). Additive mod 2, mirror-invariant.
pub fn arf(k: &KnotExpr, corpus: &Corpus) -> Result<u8, KnotError> {
    let mut total = 0u64;
    for t in k.terms() {
        let a = match t.atom {
            KnotExpr::Named(id) => {
                corpus
                    .get(id)
                    .ok_or_else(|| KnotError::UnknownName(id.clone()))?
                    .arf
            }
            atom => {
                let d = det_bareiss(&symmetrize(&seifert_matrix(atom, corpus)?.0));
                let r = d.mod_floor(&Z::from(8));
                u8::from(!(r == Z::one() || r == Z::from(7)))
            }
        };
        total += a as u64 * t.count;
    }
    Ok((total % 2) as u8)
}

/// Coefficients (constant term first) of det(V − tVᵀ), by interpolation at
/// t = 0, …, n.
pub fn alexander_polynomial(v: &SeifertMatrix) -> Vec<Z> {
    let n = v.size();
    let vt = transpose(&v.0);
    let xs: Vec<Z> = (0..=n as i64).map(Z::from).collect();
    let ys: Vec<Q> = xs
        .iter()
        .map(|t| {
            let m: ZMatrix = (0..n)
                .map(|i| (0..n).map(|j| &v.0[i][j] - t * &vt[i][j]).collect())
                .collect();
            Q::from(det_bareiss(&m))
        })
        .collect();
    // Newton divided differences, then expand to the monomial basis.
    let mut coef = ys.clone();
    for j in 1..=n {
        for i in (j..=n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / Q::from(&xs[i] - &xs[i - j]);
        }
    }
    let mut poly: Vec<Q> = vec![Q::zero(); n + 1];
    for i in (0..=n).rev() {
        // poly = poly·(t − xᵢ) + coefᵢ
        let mut next = vec![Q::zero(); n + 1];
        for d in 0..n {
            next[d + 1] = &next[d + 1] + &poly[d];
        }
        for d in 0..=n {
            next[d] = &next[d] - &poly[d] * Q::from(xs[i].clone());
        }
        next[0] = &next[0] + &coef[i];
        poly = next;
    }
    let mut out: Vec<Z> = poly
        .into_iter()
        .map(|c| {
            assert!(c.is_integer(), "Alexander polynomial has integer coefficients");
            c.to_integer()
        })
        .collect();
    while out.len() > 1 && out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

fn poly_rem_monic(a: &[Z], m: &[Z]) -> Vec<Z> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = r.len() - dm;
        for (i, c) in m.iter().take(dm).enumerate() {
            r[shift + i] -= &lead * c;
        }
    }
    r
}

fn poly_div_exact_monic(a: &[Z], m: &[Z]) -> Vec<Z> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let mut q = vec![Z::zero(); r.len() - dm];
    while r.len() > dm {
        let lead = r.pop().unwrap();
        let shift = r.len() - dm;
        for (i, c) in m.iter().take(dm).enumerate() {
            r[shift + i] -= &lead * c;
        }
        q[shift] = lead;
    }
    debug_assert!(r.iter().all(|c| c.is_zero()));
    q
}

/// The cyclotomic polynomial Φ_d, constant term first.
pub fn cyclotomic(d: u64) -> Vec<Z> {
    let mut p = vec![Z::zero(); d as usize + 1];
    p[0] = -Z::one();
    p[d as usize] = Z::one();
    for e in 1..d {
        if d.is_multiple_of(e) {
            p = poly_div_exact_monic(&p, &cyclotomic(e));
        }
    }
    p
}

/// σ_K(e^{2πir/m}) for a knot expression.
pub fn tl_signature(k: &KnotExpr, r: i64, m: i64, corpus: &Corpus) -> Result<i64, KnotError> {
    let v = seifert_matrix(k, corpus)?;
    tl_signature_matrix(&v, r, m)
}

/// Signature of (1−ω)V + (1−ω̄)Vᵀ at ω = e^{2πir/m}.
///
/// ω is first checked not to be a root of Δ_K: with d = m/gcd(r, m), ω is a
/// primitive d-th root of unity, and Φ_d is irreducible, so Δ_K(ω) = 0 iff
/// Φ_d | Δ_K. The pivots are then certified at increasing precision.
pub fn tl_signature_matrix(v: &SeifertMatrix, r: i64, m: i64) -> Result<i64, KnotError> {
    if m < 2 || r <= 0 || r >= m {
        return Err(KnotError::InvalidOmega { r, m });
    }
    let n = v.size();
    if n == 0 {
        return Ok(0);
    }
    let d = (m / r.gcd(&m)) as u64;
    let delta = alexander_polynomial(v);
    if poly_rem_monic(&delta, &cyclotomic(d)).iter().all(|c| c.is_zero()) {
        return Err(KnotError::AlexanderRoot { r, m });
    }
    let mut bits = 64u32;
    loop {
        let p = Prec(bits);
        let (c, s) = cos_sin_2pi(r, m, p);
        let one_minus_c = p.exact_int(&Z::one()).sub(&c);
        let h: Vec<Vec<CIv>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let sym = p.exact_int(&(&v.0[i][j] + &v.0[j][i]));
                        let anti = p.exact_int(&(&v.0[j][i] - &v.0[i][j]));
                        CIv {
                            re: p.mul(&one_minus_c, &sym),
                            im: p.mul(&s, &anti),
                        }
                    })
                    .collect()
            })
            .collect();
        if let Some(inertia) = hermitian_inertia(&h, p) {
            assert_eq!(inertia.zero, 0);
            return Ok(inertia.signature());
        }
        bits *= 2;
        assert!(bits <= 1 << 16, "precision escalation did not certify pivots");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(s: &str) -> KnotExpr {
        super::super::parse_knot(s, &Corpus::bundled()).unwrap()
    }

    #[test]
    fn signature_examples() {
        let c = Corpus::empty();
        assert_eq!(signature(&k("T(2,3)"), &c), Ok(-2));
        assert_eq!(signature(&k("m(T(2,3))"), &c), Ok(2));
        assert_eq!(signature(&k("K(3,1)"), &c), Ok(-2));
        assert_eq!(signature(&k("K(7,3)"), &c), Ok(-2));
        assert_eq!(signature(&k("2*T(3,11)"), &c), Ok(-32));
        assert_eq!(signature(&k("T(3,4)"), &c), Ok(-6));
        assert_eq!(signature(&k("K(5,2)"), &c), Ok(0));
    }

    #[test]
    fn arf_examples() {
        let c = Corpus::empty();
        assert_eq!(arf(&k("T(3,7)"), &c), Ok(0));
        assert_eq!(arf(&k("T(2,3)"), &c), Ok(1));
        assert_eq!(arf(&k("U"), &c), Ok(0));
        assert_eq!(arf(&k("T(2,3) # T(2,3)"), &c), Ok(0));
        assert_eq!(determinant(&k("K(7,3)"), &c), Ok(Z::from(7)));
    }

    #[test]
    fn alexander_of_torus_knots() {
        // Δ_{T(2,3)} = t² − t + 1 up to units.
        let d = alexander_polynomial(&super::super::torus_seifert(2, 3));
        assert_eq!(d, vec![Z::one(), -Z::one(), Z::one()]);
        assert_eq!(cyclotomic(6), vec![Z::one(), -Z::one(), Z::one()]);
        assert_eq!(cyclotomic(4), vec![Z::one(), Z::zero(), Z::one()]);
    }

    #[test]
    fn tristram_levine_examples() {
        let c = Corpus::empty();
        assert_eq!(tl_signature(&k("T(2,3)"), 1, 2, &c), Ok(-2));
        assert_eq!(
            tl_signature(&k("T(2,3)"), 1, 6, &c),
            Err(KnotError::AlexanderRoot { r: 1, m: 6 })
        );
        assert_eq!(tl_signature(&k("T(2,3)"), 1, 4, &c), Ok(-2));
        assert_eq!(tl_signature(&k("T(2,3)"), 0, 4, &c), Err(KnotError::InvalidOmega { r: 0, m: 4 }));
        assert_eq!(tl_signature(&k("T(2,3)"), 1, 12, &c), Ok(0));
        assert_eq!(tl_signature(&k("U"), 1, 3, &c), Ok(0));
    }
}
