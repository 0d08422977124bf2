//! Hilbert–Mumford stability with slope (a, b) for the pairs of curves on
//! P(1,1,4) that parameterize the first vertical wall's exceptional divisor,
//! plus the fiber-dimension bookkeeping of that wall crossing.

use crate::exactmath::{rat, Rational};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GitError {
    #[error("the zero point is excluded from the weighted projective space")]
    ZeroPoint,
    #[error("slope coordinates must be positive")]
    NonPositiveSlope,
}

/// A degree-10 curve z²xy + z·f₆(x,y) + f₁₀(x,y) = 0 on P(1,1,4), where f₆
/// contains no monomial divisible by xy: the point (f₆, f₁₀) of
/// V₁ ⊕ H⁰(O_P¹(10)) with V₁ = C·x⁶ ⊕ C·y⁶.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoint {
    /// Coefficients of x⁶ and y⁶.
    pub f6: [Rational; 2],
    /// Coefficients of x¹⁰, x⁹y, …, y¹⁰.
    pub f10: [Rational; 11],
}

impl QPoint {
    pub fn new(f6: [Rational; 2], f10: [Rational; 11]) -> Result<Self, GitError> {
        let q = QPoint { f6, f10 };
        if q.is_zero() {
            return Err(GitError::ZeroPoint);
        }
        Ok(q)
    }

    pub fn is_zero(&self) -> bool {
        self.f6.iter().all(Rational::is_zero) && self.f10.iter().all(Rational::is_zero)
    }
}

/// A degree-2 curve λ₁x² + λ₂xy + λ₃y² = 0 on P(1,1,4).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPoint {
    pub lambda: [Rational; 3],
}

impl LPoint {
    pub fn new(lambda: [Rational; 3]) -> Result<Self, GitError> {
        if lambda.iter().all(Rational::is_zero) {
            return Err(GitError::ZeroPoint);
        }
        Ok(LPoint { lambda })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GitStatus {
    #[serde(rename = "stable")]
    Stable,
    #[serde(rename = "polystable-strict")]
    PolystableStrict,
    #[serde(rename = "strictly-semistable")]
    StrictlySemistable,
    #[serde(rename = "unstable")]
    Unstable,
}

impl GitStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            GitStatus::Stable => "stable",
            GitStatus::PolystableStrict => "polystable-strict",
            GitStatus::StrictlySemistable => "strictly-semistable",
            GitStatus::Unstable => "unstable",
        }
    }

    pub fn is_semistable(self) -> bool {
        self != GitStatus::Unstable
    }

    pub fn is_polystable(self) -> bool {
        matches!(self, GitStatus::Stable | GitStatus::PolystableStrict)
    }
}

/// Closed interval of normalized σ'-weights over the nonzero coordinates of
/// a point. A monomial xⁱyʲ sitting in a coordinate of σ-weight w
/// contributes (i − j)/w; normalizing by the σ-weight is what makes the
/// result invariant under the rescaling that defines the weighted
/// projective space.
pub trait StateInterval {
    fn state_interval(&self) -> Result<(Rational, Rational), GitError>;
}

impl StateInterval for QPoint {
    fn state_interval(&self) -> Result<(Rational, Rational), GitError> {
        let mut weights: Vec<Rational> = Vec::new();
        // f6 coordinates x⁶ and y⁶ have σ-weight 1
        if !self.f6[0].is_zero() {
            weights.push(rat(6, 1));
        }
        if !self.f6[1].is_zero() {
            weights.push(rat(-6, 1));
        }
        // f10 coordinate of x^(10−k)·y^k has σ-weight 2
        for (k, c) in self.f10.iter().enumerate() {
            if !c.is_zero() {
                weights.push(rat(10 - 2 * k as i64, 2));
            }
        }
        min_max(weights)
    }
}

impl StateInterval for LPoint {
    fn state_interval(&self) -> Result<(Rational, Rational), GitError> {
        let mut weights: Vec<Rational> = Vec::new();
        for (k, c) in self.lambda.iter().enumerate() {
            // x², xy, y² have σ'-weights 2, 0, −2 in σ-weight-1 coordinates
            if !c.is_zero() {
                weights.push(rat(2 - 2 * k as i64, 1));
            }
        }
        min_max(weights)
    }
}

fn min_max(weights: Vec<Rational>) -> Result<(Rational, Rational), GitError> {
    let lo = weights.iter().min().cloned().ok_or(GitError::ZeroPoint)?;
    let hi = weights.iter().max().cloned().ok_or(GitError::ZeroPoint)?;
    Ok((lo, hi))
}

/// GIT status of ([Q], [L]) with respect to the one-parameter subgroup σ'
/// on O(a, b): position of 0 relative to the Minkowski sum
/// a·interval(Q) + b·interval(L).
pub fn git_status(
    q: &QPoint,
    l: &LPoint,
    a: &Rational,
    b: &Rational,
) -> Result<GitStatus, GitError> {
    if !a.is_positive() || !b.is_positive() {
        return Err(GitError::NonPositiveSlope);
    }
    let (qlo, qhi) = q.state_interval()?;
    let (llo, lhi) = l.state_interval()?;
    let lo = &(a * &qlo) + &(b * &llo);
    let hi = &(a * &qhi) + &(b * &lhi);
    Ok(if lo.is_positive() || hi.is_negative() {
        GitStatus::Unstable
    } else if lo.is_zero() && hi.is_zero() {
        GitStatus::PolystableStrict
    } else if lo.is_negative() && hi.is_positive() {
        GitStatus::Stable
    } else {
        GitStatus::StrictlySemistable
    })
}

/// Dimension of the fiber of the exceptional divisor of the first vertical
/// wall crossing over its center, on the plus side (dim P'₁₀ × {xy} = 12)
/// or the minus side (an isomorphism, dimension 0).
pub fn eplus_fiber_dim(plus_side: bool) -> u64 {
    // A'₁₀ = V₁ ⊕ H⁰(O(10)) has dimension 2 + 11 = 13, so dim P'₁₀ = 12.
    if plus_side {
        12
    } else {
        0
    }
}

/// The local VGIT relation d⁻ + d⁺ + 1 = codim(center) = 13.
pub fn fiber_dimension_identity() -> (u64, u64, u64) {
    let d_minus = eplus_fiber_dim(false);
    let d_plus = eplus_fiber_dim(true);
    (d_minus, d_plus, d_minus + d_plus + 1)
}
