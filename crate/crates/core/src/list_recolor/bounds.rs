//! Length guarantees of the list-recolouring engines.
//!
//! All values are exact integers; arithmetic saturates at `u128::MAX`.

use serde::Serialize;

use crate::error::{RecolorError, Result};

/// Constant of the closed form `C * k * n * q^m`, `q = ceil(2n/a) + 3`,
/// `m = ceil(k/a) - 2`. Unwinding [`bound_recursion`] gives
/// `B = k0*n*q^m + 10n^2 * (q^m - 1)/(q - 1)` with `k0 <= k`; since
/// `n < a*q/2`, `a < k/2` and `q >= 4`, the second term is at most
/// `(10/3) * k * n * q^m`, so `C = 5` dominates `B` whenever `k > 2a`.
pub const CLOSED_FORM_CONSTANT: u128 = 5;

fn q_factor(n: usize, a: usize) -> u128 {
    (2 * n as u128).div_ceil(a as u128) + 3
}

/// `B(n, k, a)`: `k*n` if `k <= 2a`, else
/// `ceil(2n/a + 3) * B(n, k - a, a) + 10 n^2`.
///
/// `a = 0` admits no finite guarantee and yields `u128::MAX` (or 0 when `n = 0`).
pub fn bound_recursion(n: usize, k: usize, a: usize) -> u128 {
    if n == 0 {
        return 0;
    }
    if a == 0 {
        return u128::MAX;
    }
    let n128 = n as u128;
    let q = q_factor(n, a);
    let mut levels = 0usize;
    let mut bottom = k;
    while bottom > 2 * a {
        bottom -= a;
        levels += 1;
    }
    let quad = 10u128.saturating_mul(n128).saturating_mul(n128);
    let mut b = (bottom as u128).saturating_mul(n128);
    for _ in 0..levels {
        b = q.saturating_mul(b).saturating_add(quad);
    }
    b
}

fn closed_form(n: usize, k: usize, a: usize) -> u128 {
    if n == 0 {
        return 0;
    }
    if k <= 2 * a {
        return (k as u128).saturating_mul(n as u128);
    }
    let m = (k.div_ceil(a) - 2) as u32;
    CLOSED_FORM_CONSTANT
        .saturating_mul(k as u128)
        .saturating_mul(n as u128)
        .saturating_mul(q_factor(n, a).saturating_pow(m))
}

/// Bound guaranteed by `transform_k` on an `n`-vertex `d`-degenerate graph.
pub fn transform_k_bound(n: usize, k: usize, d: usize) -> u128 {
    if k <= d + 2 {
        bound_recursion(n, k, 1)
    } else {
        2u128.saturating_mul(bound_recursion(n, d + 2, 1).saturating_add(n as u128))
    }
}

/// Inputs of [`theorem_bound`].
///
/// With `d` set the parameters describe a classical `k`-colouring of a
/// `d`-degenerate graph; otherwise an `a`-feasible list assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BoundParams {
    pub n: usize,
    pub k: usize,
    pub a: Option<usize>,
    pub d: Option<usize>,
    /// `epsilon = num / den`.
    pub epsilon: Option<(u64, u64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundCase {
    /// `k <= 2a`: every vertex moves at most `k` times.
    Linear,
    /// `k <= 3a` (lists) or `k >= 3/2 (d+1)` (graphs).
    Quadratic,
    /// `k <= (1 + 1/eps) a` (lists) or `k >= (1+eps)(d+2)` (graphs).
    Epsilon { power: u32 },
    /// Classical colouring with exactly `d + 2` colours.
    DegeneracyPlusTwo,
    /// Classical colouring with `k > d + 2` outside the cases above,
    /// bounded through the reference `(d+1)`-colouring.
    DegreeDPlusOne,
    /// List assignment with `k > 3a` outside the epsilon case.
    Polynomial,
}

impl BoundCase {
    pub fn label(&self) -> &'static str {
        match self {
            BoundCase::Linear => "linear",
            BoundCase::Quadratic => "quadratic",
            BoundCase::Epsilon { .. } => "epsilon",
            BoundCase::DegeneracyPlusTwo => "k = d+2",
            BoundCase::DegreeDPlusOne => "(Cn)^(d+1)",
            BoundCase::Polynomial => "polynomial",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub case: BoundCase,
    pub label: &'static str,
    /// Slack used for the list-colouring recursion.
    pub a: usize,
    /// `ceil(k/a) - 2`, the number of recursion levels (0 in the linear case).
    pub exponent: u32,
    /// Exact unwound recursion for the route the case describes.
    pub value: u128,
    /// `C * k * n * q^exponent` with `C = CLOSED_FORM_CONSTANT` (`k*n` when linear).
    pub closed_form: u128,
    pub constant: u128,
}

fn exponent(k: usize, a: usize) -> u32 {
    if k <= 2 * a {
        0
    } else {
        (k.div_ceil(a) - 2) as u32
    }
}

/// Selects the applicable case and evaluates the corresponding bound.
pub fn theorem_bound(p: BoundParams) -> Result<BoundReport> {
    let BoundParams { n, k, .. } = p;
    if k == 0 {
        return Err(RecolorError::InvalidInput("k must be at least 1".into()));
    }
    let eps = match p.epsilon {
        Some((_, 0)) => return Err(RecolorError::InvalidInput("epsilon denominator is 0".into())),
        Some((0, _)) => return Err(RecolorError::InvalidInput("epsilon must be positive".into())),
        e => e,
    };
    let report = |case: BoundCase, a: usize, value: u128, closed: u128, exp: u32| BoundReport {
        case,
        label: case.label(),
        a,
        exponent: exp,
        value,
        closed_form: closed,
        constant: if matches!(case, BoundCase::Linear) { 1 } else { CLOSED_FORM_CONSTANT },
    };
    if let Some(d) = p.d {
        if k < d + 2 {
            return Err(RecolorError::Unsupported(format!(
                "k = {k} < d + 2 = {}: connectivity is not guaranteed",
                d + 2
            )));
        }
        let a = k - d - 1;
        let direct = |case| report(case, a, bound_recursion(n, k, a), closed_form(n, k, a), exponent(k, a));
        if k <= 2 * a {
            return Ok(direct(BoundCase::Linear));
        }
        if k == d + 2 {
            return Ok(direct(BoundCase::DegeneracyPlusTwo));
        }
        if 2 * k >= 3 * (d + 1) {
            return Ok(direct(BoundCase::Quadratic));
        }
        if let Some((num, den)) = eps {
            // 0 < eps < 1 and k >= (1 + eps)(d + 2)
            let (num, den) = (num as u128, den as u128);
            if num < den && (k as u128) * den >= (den + num) * (d as u128 + 2) {
                let power = den.div_ceil(num) as u32;
                return Ok(direct(BoundCase::Epsilon { power }));
            }
        }
        let value = transform_k_bound(n, k, d);
        let closed = 2u128.saturating_mul(closed_form(n, d + 2, 1).saturating_add(n as u128));
        return Ok(report(BoundCase::DegreeDPlusOne, 1, value, closed, exponent(d + 2, 1)));
    }
    let a = p.a.ok_or_else(|| RecolorError::InvalidInput("either a or d is required".into()))?;
    if a == 0 {
        return Err(RecolorError::Unsupported("a = 0 gives no finite bound".into()));
    }
    let case = if k <= 2 * a {
        BoundCase::Linear
    } else if k <= 3 * a {
        BoundCase::Quadratic
    } else {
        match eps {
            Some((num, den))
                if (k as u128) * (num as u128) <= (num as u128 + den as u128) * a as u128 =>
            {
                BoundCase::Epsilon {
                    power: (den as u128).div_ceil(num as u128) as u32,
                }
            }
            _ => BoundCase::Polynomial,
        }
    };
    Ok(report(case, a, bound_recursion(n, k, a), closed_form(n, k, a), exponent(k, a)))
}
