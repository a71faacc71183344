//! Spaces of type G-SWF modelled by their level and ideal, spectrum classes
//! with formal desuspensions, and the invariant k on both.

use crate::rep_ring::{euler_class, k_of_ideal, EulerLabel, IdealPresentation, RepError};
use crate::{Q, Z};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("level {0} is odd")]
    OddLevel(u32),
    #[error("R̃ may only enter through a double")]
    BareRTilde,
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// Multiset of the irreducible summands R̃, C̃, ℂ₊, ℂ₋.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RepSum {
    pub r_tilde: u32,
    pub c_tilde: u32,
    pub c_plus: u32,
    pub c_minus: u32,
}

impl RepSum {
    pub fn c_tilde(n: u32) -> Self {
        RepSum {
            c_tilde: n,
            ..Default::default()
        }
    }

    /// (ℂ₊ ⊕ ℂ₋)^n.
    pub fn c_pm(n: u32) -> Self {
        RepSum {
            c_plus: n,
            c_minus: n,
            ..Default::default()
        }
    }

    pub fn plus(self, o: RepSum) -> RepSum {
        RepSum {
            r_tilde: self.r_tilde + o.r_tilde,
            c_tilde: self.c_tilde + o.c_tilde,
            c_plus: self.c_plus + o.c_plus,
            c_minus: self.c_minus + o.c_minus,
        }
    }

    pub fn is_empty(&self) -> bool {
        *self == RepSum::default()
    }
}

/// Doubling V ↦ V ⊗_ℝ ℂ restricted to the summands we track:
/// R̃^t ↦ C̃^t, C̃ ↦ C̃², ℂ₊^a ⊕ ℂ₋^b ↦ (ℂ₊⊕ℂ₋)^{a+b}.
pub fn double(reps: RepSum) -> RepSum {
    let pm = reps.c_plus + reps.c_minus;
    RepSum {
        r_tilde: 0,
        c_tilde: reps.r_tilde + 2 * reps.c_tilde,
        c_plus: pm,
        c_minus: pm,
    }
}

/// A space X of type G-SWF, remembered by s with X^H ≃ (R̃^s)⁺ and by 𝔍(X).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceModel {
    level: u32,
    ideal: IdealPresentation,
}

impl SpaceModel {
    pub fn new(level: u32, ideal: IdealPresentation) -> Result<Self, SpectrumError> {
        if level % 2 == 1 {
            return Err(SpectrumError::OddLevel(level));
        }
        k_of_ideal(&ideal)?;
        Ok(SpaceModel { level, ideal })
    }

    /// S⁰ with the trivial action.
    pub fn sphere() -> Self {
        SpaceModel {
            level: 0,
            ideal: IdealPresentation::unit(),
        }
    }

    /// (C̃^s ⊕ (ℂ₊⊕ℂ₋)^l)⁺.
    pub fn representation_sphere(s: u32, l: u32) -> Self {
        suspend(&SpaceModel::sphere(), RepSum::c_tilde(s).plus(RepSum::c_pm(l)))
            .expect("suspension of S⁰ is defined")
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn ideal(&self) -> &IdealPresentation {
        &self.ideal
    }
}

/// Σ^V X: the ideal is multiplied by the Euler class of the ℂ₊/ℂ₋ part and the
/// level grows by 2 per copy of C̃.
pub fn suspend(x: &SpaceModel, rep: RepSum) -> Result<SpaceModel, SpectrumError> {
    if rep.r_tilde > 0 {
        return Err(SpectrumError::BareRTilde);
    }
    let mut labels = vec![EulerLabel::CPlus; rep.c_plus as usize];
    labels.extend(std::iter::repeat_n(EulerLabel::CMinus, rep.c_minus as usize));
    let e = euler_class::<Z>(&labels);
    Ok(SpaceModel {
        level: x.level + 2 * rep.c_tilde,
        ideal: x.ideal.times(&e),
    })
}

pub fn k_of_space(x: &SpaceModel) -> Result<u32, SpectrumError> {
    Ok(k_of_ideal(&x.ideal)?)
}

/// A triple (D, m, n): D desuspended formally by C̃^m and (ℂ₊⊕ℂ₋)^n.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumClass {
    pub space: SpaceModel,
    pub m: i64,
    pub n: Q,
}

impl SpectrumClass {
    pub fn new(space: SpaceModel, m: i64, n: Q) -> Self {
        SpectrumClass { space, m, n }
    }

    /// Suspends the underlying space and records the same shift in (m, n), so
    /// the stable class is unchanged.
    pub fn restabilize(&self, c_tilde: u32, c_pm: u32) -> Result<Self, SpectrumError> {
        Ok(SpectrumClass {
            space: suspend(&self.space, RepSum::c_tilde(c_tilde).plus(RepSum::c_pm(c_pm)))?,
            m: self.m + c_tilde as i64,
            n: &self.n + crate::qi(c_pm as i64),
        })
    }
}

/// k(D, m, n) = k(D) − n.
pub fn k_of_class(c: &SpectrumClass) -> Result<Q, SpectrumError> {
    let k = k_of_space(&c.space)?;
    Ok(crate::qi(k as i64) - &c.n)
}

/// The duality predicate k(X) + k(X') ≥ l.
pub fn check_duality_bound(x: &SpaceModel, y: &SpaceModel, l: u32) -> Result<bool, SpectrumError> {
    Ok(k_of_space(x)? + k_of_space(y)? >= l)
}
