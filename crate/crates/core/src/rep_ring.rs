//! The representation ring R(G) of G = ℤ₄, presented as ℤ[t]/(t⁴−1).
//!
//! Elements are stored in the basis (1, t, t², t³). The classes
//! w = 1 − t² and z = 1 − t generate the augmentation ideal and satisfy
//! w² = 2w and w − 2z + z² = 0.
//!
//! The multiple w·R(G) is the rank-2 lattice ℤw ⊕ ℤwt (because wt² = −w), so
//! the invariant k of an ideal J reduces to a 2-column Hermite normal form.

use crate::scalar::Ring;
use crate::Z;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    /// (w·J) ∩ ℤw is zero or not generated by a power of two.
    #[error("no k: (w·J) ∩ ℤw = {d}·ℤw")]
    NoSuchK { d: Z },
}

/// Element of ℤ[t]/(t⁴−1) with coefficients in `T`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RepElem<T> {
    pub coeffs: [T; 4],
}

impl<T: Ring> RepElem<T> {
    pub fn new(coeffs: [T; 4]) -> Self {
        RepElem { coeffs }
    }

    pub fn zero() -> Self {
        RepElem::new([T::zero(), T::zero(), T::zero(), T::zero()])
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        RepElem::new([c, T::zero(), T::zero(), T::zero()])
    }

    /// The generator t (the defining character of ℤ₄).
    pub fn t() -> Self {
        RepElem::new([T::zero(), T::one(), T::zero(), T::zero()])
    }

    /// w = 1 − t², the Euler class of C̃.
    pub fn w() -> Self {
        RepElem::new([T::one(), T::zero(), -T::one(), T::zero()])
    }

    /// z = 1 − t, the Euler class of ℂ₊.
    pub fn z() -> Self {
        RepElem::new([T::one(), -T::one(), T::zero(), T::zero()])
    }

    /// w + z − wz = 1 − t³, the Euler class of ℂ₋.
    pub fn euler_c_minus() -> Self {
        let (w, z) = (Self::w(), Self::z());
        w.clone() + z.clone() - w * z
    }

    /// tⁱ for any integer i.
    pub fn t_pow(i: i64) -> Self {
        let mut c = [T::zero(), T::zero(), T::zero(), T::zero()];
        c[i.rem_euclid(4) as usize] = T::one();
        RepElem::new(c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, c: &T) -> Self {
        RepElem::new(self.coeffs.clone().map(|x| x * c.clone()))
    }

    /// Restriction to R(H), H = {±1} ⊂ ℤ₄, sending t ↦ s with s² = 1.
    pub fn restrict_h(&self) -> HRestriction<T> {
        let [a0, a1, a2, a3] = self.coeffs.clone();
        HRestriction {
            coeffs: [a0 + a2, a1 + a3],
        }
    }

    /// Augmentation t ↦ 1 (the virtual dimension).
    pub fn augmentation(&self) -> T {
        let [a0, a1, a2, a3] = self.coeffs.clone();
        a0 + a1 + a2 + a3
    }

    /// Coordinates (u, v) of w·self = u·w + v·wt.
    pub fn w_coords(&self) -> [T; 2] {
        let [a0, a1, a2, a3] = self.coeffs.clone();
        [a0 - a2, a1 - a3]
    }
}

impl<T: Ring> Add for RepElem<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let [a0, a1, a2, a3] = self.coeffs;
        let [b0, b1, b2, b3] = o.coeffs;
        RepElem::new([a0 + b0, a1 + b1, a2 + b2, a3 + b3])
    }
}

impl<T: Ring> Sub for RepElem<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<T: Ring> Neg for RepElem<T> {
    type Output = Self;
    fn neg(self) -> Self {
        RepElem::new(self.coeffs.map(|x| -x))
    }
}

impl<T: Ring> Mul for RepElem<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut c = [T::zero(), T::zero(), T::zero(), T::zero()];
        for i in 0..4 {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                let k = (i + j) % 4;
                c[k] = c[k].clone() + self.coeffs[i].clone() * o.coeffs[j].clone();
            }
        }
        RepElem::new(c)
    }
}

impl<T: Ring + fmt::Display> fmt::Display for RepElem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a0, a1, a2, a3] = &self.coeffs;
        write!(f, "({a0}, {a1}, {a2}, {a3})")
    }
}

impl<T: Ring> fmt::Debug for RepElem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RepElem{:?}", self.coeffs)
    }
}

/// Image of an element in R(H) = ℤ[s]/(s²−1), basis (1, s).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRestriction<T> {
    pub coeffs: [T; 2],
}

impl<T: Ring> HRestriction<T> {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// Summands of a representation whose Euler classes are multiplied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EulerLabel {
    /// C̃, the real-sign representation tensored with ℂ.
    CTilde,
    /// ℂ₊, the defining representation of ℤ₄.
    CPlus,
    /// ℂ₋, its conjugate.
    CMinus,
}

/// Product of the Euler classes of the listed summands.
pub fn euler_class<T: Ring>(labels: &[EulerLabel]) -> RepElem<T> {
    labels.iter().fold(RepElem::one(), |acc, l| {
        acc * match l {
            EulerLabel::CTilde => RepElem::w(),
            EulerLabel::CPlus => RepElem::z(),
            EulerLabel::CMinus => RepElem::euler_c_minus(),
        }
    })
}

/// An ideal of R(G) given by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealPresentation {
    pub generators: Vec<RepElem<Z>>,
}

impl IdealPresentation {
    pub fn new(generators: Vec<RepElem<Z>>) -> Self {
        assert!(!generators.is_empty(), "an ideal needs at least one generator");
        IdealPresentation { generators }
    }

    pub fn unit() -> Self {
        IdealPresentation::new(vec![RepElem::one()])
    }

    pub fn principal(g: RepElem<Z>) -> Self {
        IdealPresentation::new(vec![g])
    }

    /// The ideal e·J.
    pub fn times(&self, e: &RepElem<Z>) -> Self {
        IdealPresentation::new(
            self.generators
                .iter()
                .map(|g| g.clone() * e.clone())
                .collect(),
        )
    }
}

/// Generators of w·J inside ℤw ⊕ ℤwt, as (w, wt)-coordinates.
///
/// Both w·g and w·g·t are listed, so the lattice is closed under the R(G)
/// action (multiplication by t acts as (u, v) ↦ (−v, u)).
pub fn w_lattice(j: &IdealPresentation) -> Vec<[Z; 2]> {
    j.generators
        .iter()
        .flat_map(|g| {
            let [u, v] = g.w_coords();
            [[u.clone(), v.clone()], [-v, u]]
        })
        .collect()
}

/// Generator d ≥ 0 of (w·J) ∩ ℤw, read off a Hermite reduction of the lattice.
pub fn w_axis_generator(j: &IdealPresentation) -> Z {
    let mut rows = w_lattice(j);
    // Euclid on the wt-column until at most one row has a nonzero entry there.
    loop {
        let pivot = rows
            .iter()
            .enumerate()
            .filter(|(_, r)| !r[1].is_zero())
            .min_by(|a, b| a.1[1].abs().cmp(&b.1[1].abs()))
            .map(|(i, _)| i);
        let Some(p) = pivot else { break };
        let pr = rows[p].clone();
        let mut changed = false;
        for (i, r) in rows.iter_mut().enumerate() {
            if i == p || r[1].is_zero() {
                continue;
            }
            let qt = r[1].div_floor(&pr[1]);
            r[0] = &r[0] - &qt * &pr[0];
            r[1] = &r[1] - &qt * &pr[1];
            changed = true;
        }
        if !changed {
            break;
        }
    }
    rows.iter()
        .filter(|r| r[1].is_zero())
        .fold(Z::zero(), |g, r| g.gcd(&r[0]))
}

/// The least k ≥ 0 with 2^k·w ∈ w·J.
pub fn k_of_ideal(j: &IdealPresentation) -> Result<u32, RepError> {
    let d = w_axis_generator(j);
    let mag = d.magnitude();
    if mag.count_ones() != 1 {
        return Err(RepError::NoSuchK { d });
    }
    Ok(mag.trailing_zeros().unwrap_or(0) as u32)
}

/// z·(w+z−wz), the Euler class of ℂ₊ ⊕ ℂ₋.
pub fn euler_c_plus_minus() -> RepElem<Z> {
    RepElem::z() * RepElem::euler_c_minus()
}

impl RepElem<Z> {
    pub fn from_i64(c: [i64; 4]) -> Self {
        RepElem::new(c.map(Z::from))
    }

    /// True iff the element lies in ℤ·w, i.e. has the shape (a, 0, −a, 0).
    pub fn in_z_w(&self) -> bool {
        let [a0, a1, a2, a3] = &self.coeffs;
        a1.is_zero() && a3.is_zero() && (a0 + a2).is_zero()
    }

    /// Returns c with self = c·w, when such c exists.
    pub fn w_multiple(&self) -> Option<Z> {
        self.in_z_w().then(|| self.coeffs[0].clone())
    }
}
