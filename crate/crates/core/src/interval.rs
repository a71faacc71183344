//! Fixed-point interval arithmetic with outward rounding, used to certify the
//! signs of pivots of Hermitian forms with entries in ℤ[e^{2πi r/m}].
//!
//! An interval at precision `p` is a pair of integers [lo, hi] standing for
//! [lo·2⁻ᵖ, hi·2⁻ᵖ]. Every operation rounds outward, so the true value is
//! always enclosed.

use crate::linalg::Inertia;
use crate::Z;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Iv {
    pub lo: Z,
    pub hi: Z,
}

/// Shared precision context.
#[derive(Debug, Clone, Copy)]
pub struct Prec(pub u32);

impl Prec {
    fn unit(&self) -> Z {
        Z::one() << self.0
    }

    pub fn exact_int(&self, n: &Z) -> Iv {
        let v = n << self.0;
        Iv { lo: v.clone(), hi: v }
    }

    pub fn zero(&self) -> Iv {
        Iv {
            lo: Z::zero(),
            hi: Z::zero(),
        }
    }

    pub fn mul(&self, a: &Iv, b: &Iv) -> Iv {
        let ps = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
        let lo = ps.iter().min().unwrap();
        let hi = ps.iter().max().unwrap();
        let u = self.unit();
        Iv {
            lo: lo.div_floor(&u),
            hi: hi.div_ceil(&u),
        }
    }

    /// a / b for b not containing zero.
    pub fn div(&self, a: &Iv, b: &Iv) -> Iv {
        debug_assert!(b.certified_sign() != 0);
        let u = self.unit();
        let mut lo: Option<Z> = None;
        let mut hi: Option<Z> = None;
        for x in [&a.lo, &a.hi] {
            for y in [&b.lo, &b.hi] {
                let num = x * &u;
                let f = num.div_floor(y);
                let c = num.div_ceil(y);
                lo = Some(lo.map_or(f.clone(), |l: Z| l.min(f)));
                hi = Some(hi.map_or(c.clone(), |h: Z| h.max(c)));
            }
        }
        Iv {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        }
    }
}

impl Iv {
    pub fn add(&self, o: &Iv) -> Iv {
        Iv {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn sub(&self, o: &Iv) -> Iv {
        Iv {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }

    pub fn neg(&self) -> Iv {
        Iv {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    /// +1 or −1 when the interval excludes zero, else 0.
    pub fn certified_sign(&self) -> i32 {
        if self.lo.is_positive() {
            1
        } else if self.hi.is_negative() {
            -1
        } else {
            0
        }
    }

    /// Lower bound for |x| over the interval.
    pub fn mag_lo(&self) -> Z {
        match self.certified_sign() {
            1 => self.lo.clone(),
            -1 => -&self.hi,
            _ => Z::zero(),
        }
    }
}

/// Complex interval (rectangular).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CIv {
    pub re: Iv,
    pub im: Iv,
}

impl CIv {
    pub fn add(&self, o: &CIv) -> CIv {
        CIv {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    pub fn sub(&self, o: &CIv) -> CIv {
        CIv {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }

    pub fn conj(&self) -> CIv {
        CIv {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn mul(&self, o: &CIv, p: Prec) -> CIv {
        CIv {
            re: p.mul(&self.re, &o.re).sub(&p.mul(&self.im, &o.im)),
            im: p.mul(&self.re, &o.im).add(&p.mul(&self.im, &o.re)),
        }
    }

    pub fn div_real(&self, d: &Iv, p: Prec) -> CIv {
        CIv {
            re: p.div(&self.re, d),
            im: p.div(&self.im, d),
        }
    }

    /// Enclosure of |x|².
    pub fn norm_sq(&self, p: Prec) -> Iv {
        let sq = |x: &Iv| {
            let s = p.mul(x, x);
            if x.certified_sign() == 0 {
                Iv { lo: Z::zero(), hi: s.hi }
            } else {
                s
            }
        };
        sq(&self.re).add(&sq(&self.im))
    }

    /// True when the modulus is certified positive.
    pub fn certified_nonzero(&self) -> bool {
        self.re.certified_sign() != 0 || self.im.certified_sign() != 0
    }
}

/// π at precision `p` (Machin's formula), enclosed by a few ulps.
fn pi_fixed(bits: u32) -> Z {
    let g = bits + 16;
    let one = Z::one() << g;
    let atan_inv = |n: i64| {
        let n = Z::from(n);
        let n2 = &n * &n;
        let mut power = &one / &n;
        let mut sum = Z::zero();
        let mut k = 0i64;
        while !power.is_zero() {
            let term = &power / Z::from(2 * k + 1);
            if k % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
            power = &power / &n2;
            k += 1;
        }
        sum
    };
    let pi = atan_inv(5) * Z::from(16) - atan_inv(239) * Z::from(4);
    pi >> 16
}

/// Enclosures of cos(2πr/m) and sin(2πr/m).
pub fn cos_sin_2pi(r: i64, m: i64, p: Prec) -> (Iv, Iv) {
    let g = p.0 + 32;
    let one = Z::one() << g;
    let x = pi_fixed(g) * Z::from(2 * r) / Z::from(m);
    let x2 = (&x * &x) >> g;
    let series = |start: Z, first_k: i64| {
        // Σ (−1)^k x^{2k+first_k}/(2k+first_k)!
        let mut term = start;
        let mut sum = Z::zero();
        let mut k = 0i64;
        let mut terms = 0i64;
        while !term.is_zero() || k == 0 {
            if k % 2 == 0 {
                sum += &term;
            } else {
                sum -= &term;
            }
            let a = 2 * k + first_k + 1;
            term = ((&term * &x2) >> g) / Z::from(a * (a + 1));
            k += 1;
            terms += 1;
        }
        (sum, terms)
    };
    let (c, nc) = series(one.clone(), 0);
    let (s, ns) = series(x.clone(), 1);
    // Rounding error per term is a few guard ulps; the argument itself is
    // off by at most 2r/m·(few ulps) ≤ 2⁸ ulps, and |d/dx| ≤ 1.
    let enclose = |v: Z, terms: i64| {
        let err = Z::from(8 * terms + 512);
        let lo = (&v - &err) >> 32u32;
        let hi = -((-(&v + &err)) >> 32u32);
        Iv { lo, hi }
    };
    (enclose(c, nc), enclose(s, ns))
}

/// Certified inertia of the Hermitian matrix H = A + iB (A symmetric, B
/// antisymmetric) given by interval entries at precision `p`. Returns `None`
/// when some pivot decision cannot be certified at this precision.
pub fn hermitian_inertia(h: &[Vec<CIv>], p: Prec) -> Option<Inertia> {
    let mut m: Vec<Vec<CIv>> = h.to_vec();
    let mut alive: Vec<usize> = (0..m.len()).collect();
    let mut out = Inertia::default();
    while !alive.is_empty() {
        let diag = alive
            .iter()
            .copied()
            .filter(|&i| m[i][i].re.certified_sign() != 0)
            .max_by_key(|&i| m[i][i].re.mag_lo());
        let piv = match diag {
            Some(i) => i,
            None => {
                // All diagonal entries straddle zero. Pick a certified nonzero
                // h_ij and replace row/column i by row_i + h_ij·row_j; the new
                // diagonal is h_ii + 2|h_ij|² + |h_ij|² h_jj.
                let (i, j) = alive
                    .iter()
                    .flat_map(|&i| alive.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && m[i][j].certified_nonzero())?;
                let a = m[i][j].clone();
                let abar = a.conj();
                for &k in &alive {
                    let v = a.mul(&m[j][k], p);
                    m[i][k] = m[i][k].add(&v);
                }
                for &k in &alive {
                    let v = m[k][j].mul(&abar, p);
                    m[k][i] = m[k][i].add(&v);
                }
                m[i][i].im = p.zero();
                if m[i][i].re.certified_sign() == 0 {
                    return None;
                }
                i
            }
        };
        let d = m[piv][piv].re.clone();
        if d.certified_sign() > 0 {
            out.pos += 1;
        } else {
            out.neg += 1;
        }
        alive.retain(|&i| i != piv);
        let col: Vec<(usize, CIv)> = alive
            .iter()
            .map(|&i| (i, m[i][piv].div_real(&d, p)))
            .collect();
        for (i, f) in &col {
            for &j in &alive {
                let v = f.mul(&m[piv][j], p);
                m[*i][j] = m[*i][j].sub(&v);
            }
        }
        for &i in &alive {
            m[i][i].im = p.zero();
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn to_f64(x: &Iv, p: Prec) -> (f64, f64) {
        let s = 2f64.powi(p.0 as i32);
        (
            x.lo.to_string().parse::<f64>().unwrap() / s,
            x.hi.to_string().parse::<f64>().unwrap() / s,
        )
    }

    #[test]
    fn trig_enclosures() {
        let p = Prec(80);
        for m in 2..=12 {
            for r in 1..m {
                let (c, s) = cos_sin_2pi(r, m, p);
                let t = 2.0 * std::f64::consts::PI * r as f64 / m as f64;
                let (cl, ch) = to_f64(&c, p);
                let (sl, sh) = to_f64(&s, p);
                assert!(cl - 1e-12 <= t.cos() && t.cos() <= ch + 1e-12);
                assert!(sl - 1e-12 <= t.sin() && t.sin() <= sh + 1e-12);
                assert!(c.hi.clone() - c.lo.clone() < Z::from(1u64 << 20));
            }
        }
        let (c, _) = cos_sin_2pi(1, 2, p);
        assert!(c.lo <= -(Z::one() << 80u32) && -(Z::one() << 80u32) <= c.hi);
    }

    #[test]
    fn hermitian_two_by_two() {
        let p = Prec(40);
        let e = |x: i64| p.exact_int(&Z::from(x));
        let c = |re: i64, im: i64| CIv { re: e(re), im: e(im) };
        // [[0, 1+i], [1−i, 0]] has eigenvalues ±√2.
        let h = vec![vec![c(0, 0), c(1, 1)], vec![c(1, -1), c(0, 0)]];
        assert_eq!(hermitian_inertia(&h, p), Some(Inertia { pos: 1, neg: 1, zero: 0 }));
        let h = vec![vec![c(2, 0), c(0, 1)], vec![c(0, -1), c(2, 0)]];
        assert_eq!(hermitian_inertia(&h, p), Some(Inertia { pos: 2, neg: 0, zero: 0 }));
    }
}
