//! Fringe operators: the weighted shifts that carry the third Koszul
//! condition once `μ` is fixed, their spectral radii and approximate point
//! spectra, and the drop census that replaces them at `μ = 0`.
//!
//! Every kind is exposed through the operator `T` that is actually tested for
//! approximate eigenvalues: `(T x)_k = ω(k) x_{k+1}` with
//! `ω(k) = |μ|^{M_k - M_{k+1}}`, restricted to the index range of the kind.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::diagram::{DiagramProfile, ExtInt, Side};
use crate::error::{Error, Result};
use crate::extnum::{eval_band, BandMembership, ExtReal, Membership};
use crate::params::SpectralParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ShiftKind {
    /// Indices `Z`; tested operator `B*`.
    Bilateral,
    /// Indices `j >= j0`; `F = λ - S` with `S` forward, tested operator `S*`.
    Unilateral,
    /// Indices `j <= j1`; `F = λ - S*`, tested operator `S`.
    UnilateralAdjoint,
    /// Both ends finite: the third condition fails exactly on `λ = 0`.
    FiniteNilpotent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftSpec {
    pub kind: ShiftKind,
    pub mu_abs: f64,
    pub profile: DiagramProfile,
    pub j0: ExtInt,
    pub j1: ExtInt,
}

impl ShiftSpec {
    fn m(&self, j: i64) -> i64 {
        self.profile
            .eval_m(j)
            .finite()
            .expect("shift weights need finite M on the index range")
    }

    /// Whether `k` lies in the index range.
    pub fn in_range(&self, k: i64) -> bool {
        ExtInt::Finite(k) >= self.j0 && ExtInt::Finite(k) <= self.j1
    }

    /// `ω(k) = |μ|^{M_k - M_{k+1}}`, the coefficient of `x_{k+1}` in `(T x)_k`.
    pub fn tested_weight(&self, k: i64) -> f64 {
        let drop = self.m(k) - self.m(k + 1);
        self.mu_abs.powi(drop as i32)
    }

    /// The weight of the shift as it appears in the fringe operator:
    /// `|μ|^{M_{j-1} - M_j}` for the adjoint kind, `|μ|^{M_j - M_{j+1}}` otherwise.
    pub fn weight(&self, j: i64) -> f64 {
        match self.kind {
            ShiftKind::UnilateralAdjoint => self.tested_weight(j - 1),
            _ => self.tested_weight(j),
        }
    }

    /// Up to `count` weights `(j, ω_j)` starting at the natural end of the index range.
    pub fn first_weights(&self, count: usize) -> Vec<(i64, f64)> {
        let n = count as i64;
        let (start, end) = match (self.kind, self.j0, self.j1) {
            (ShiftKind::Bilateral, _, _) => (-n / 2, -n / 2 + n - 1),
            (ShiftKind::Unilateral, ExtInt::Finite(a), _) => (a, a + n - 1),
            (ShiftKind::UnilateralAdjoint, _, ExtInt::Finite(b)) => (b - n + 1, b),
            // the last index of a finite range has no successor
            (_, ExtInt::Finite(a), ExtInt::Finite(b)) => (a, (a + n - 1).min(b - 1)),
            _ => unreachable!("index range inconsistent with kind"),
        };
        (start..=end).map(|j| (j, self.weight(j))).collect()
    }
}

/// The fringe operator of `profile` at `|μ| = mu_abs`.
pub fn fringe_operator(profile: &DiagramProfile, mu_abs: f64) -> Result<ShiftSpec> {
    if !(mu_abs > 0.0 && mu_abs < 1.0) {
        return Err(Error::MuOutOfRange(mu_abs));
    }
    let s = profile.validate()?;
    if s.is_simple {
        return Err(Error::SimpleDiagram);
    }
    let kind = match (s.j0.is_finite(), s.j1.is_finite()) {
        (false, false) => ShiftKind::Bilateral,
        (true, false) => ShiftKind::Unilateral,
        (false, true) => ShiftKind::UnilateralAdjoint,
        (true, true) => ShiftKind::FiniteNilpotent,
    };
    Ok(ShiftSpec {
        kind,
        mu_abs,
        profile: profile.clone(),
        j0: s.j0,
        j1: s.j1,
    })
}

/// Inner and outer spectral radii at both ends, as `base^exponent`.
///
/// For the bilateral kind these are the radii of `B` with the minus/plus
/// labels of the tested operator: `i⁻ = μ^{ρ+}`, `i⁺ = μ^{ρ-}`,
/// `r⁻ = μ^{δ+}`, `r⁺ = μ^{δ-}`. One-sided kinds only have one end; both
/// labels then carry the same value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RidgeBounds {
    pub base: f64,
    pub i_minus: ExtReal,
    pub i_plus: ExtReal,
    pub r_minus: ExtReal,
    pub r_plus: ExtReal,
}

impl RidgeBounds {
    pub fn values(&self) -> [f64; 4] {
        [&self.i_minus, &self.i_plus, &self.r_minus, &self.r_plus].map(|e| e.pow_of(self.base))
    }
}

pub fn ridge_bounds(spec: &ShiftSpec, params: &SpectralParams) -> RidgeBounds {
    let p = params;
    let (i_minus, i_plus, r_minus, r_plus) = match spec.kind {
        ShiftKind::Bilateral => (&p.rho_plus, &p.rho_minus, &p.delta_plus, &p.delta_minus),
        ShiftKind::Unilateral => (&p.rho_plus, &p.rho_plus, &p.delta_plus, &p.delta_plus),
        ShiftKind::UnilateralAdjoint => {
            (&p.rho_minus, &p.rho_minus, &p.delta_minus, &p.delta_minus)
        }
        ShiftKind::FiniteNilpotent => {
            let inf = &ExtReal::Infinity;
            (inf, inf, inf, inf)
        }
    };
    RidgeBounds {
        base: spec.mu_abs,
        i_minus: i_minus.clone(),
        i_plus: i_plus.clone(),
        r_minus: r_minus.clone(),
        r_plus: r_plus.clone(),
    }
}

/// Predicted membership of `lambda_abs` in the approximate point spectrum of the tested operator.
pub fn sigma_ap_predict(
    spec: &ShiftSpec,
    bounds: &RidgeBounds,
    lambda_abs: f64,
    tol: f64,
) -> Result<BandMembership> {
    if !(0.0..=1.0).contains(&lambda_abs) {
        return Err(Error::OutOfUnitInterval {
            name: "lambda_abs",
            value: lambda_abs,
        });
    }
    let a = bounds.base;
    let band = |p: &ExtReal, q: &ExtReal| eval_band(a, lambda_abs, p, q, tol);
    let b = bounds;
    let state = match spec.kind {
        // [i⁺, r⁺] ∪ [r⁺, i⁻] ∪ [i⁻, r⁻]
        ShiftKind::Bilateral => Membership::union([
            band(&b.r_plus, &b.i_plus),
            band(&b.i_minus, &b.r_plus),
            band(&b.r_minus, &b.i_minus),
        ]),
        // closed disc of radius r
        ShiftKind::Unilateral => band(&b.r_plus, &ExtReal::Infinity),
        // annulus [i, r]
        ShiftKind::UnilateralAdjoint => band(&b.r_plus, &b.i_plus),
        ShiftKind::FiniteNilpotent => {
            if lambda_abs == 0.0 {
                Membership::Inside
            } else {
                Membership::Outside
            }
        }
    };
    Ok(BandMembership {
        state,
        tolerance_used: tol,
    })
}

/// Extreme geometric means of `n` consecutive tested weights, split by side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RidgeEstimate {
    pub i_minus: f64,
    pub i_plus: f64,
    pub r_minus: f64,
    pub r_plus: f64,
}

/// Brute-force radii: min/max over windows `[k, k+n)` of `(ω_k ⋯ ω_{k+n-1})^{1/n}`,
/// with windows in `[0, span]` for the plus end and `[-span, 0]` for the minus end.
pub fn estimate_ridge_bruteforce(spec: &ShiftSpec, n: i64, span: i64) -> Result<RidgeEstimate> {
    if spec.kind == ShiftKind::FiniteNilpotent {
        return Err(Error::DegenerateSpec);
    }
    let log_mu = spec.mu_abs.ln();
    let mean = |k: i64| (log_mu * (spec.m(k) - spec.m(k + n)) as f64 / n as f64).exp();
    let extremes = |range: std::ops::RangeInclusive<i64>| {
        range
            .filter(|&k| spec.in_range(k) && spec.in_range(k + n))
            .map(mean)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            })
    };
    let (plus_lo, plus_hi) = extremes(0..=span);
    let (minus_lo, minus_hi) = extremes(-span - n..=-n);
    let est = match spec.kind {
        ShiftKind::Bilateral => RidgeEstimate {
            i_minus: plus_lo,
            r_minus: plus_hi,
            i_plus: minus_lo,
            r_plus: minus_hi,
        },
        ShiftKind::Unilateral => RidgeEstimate {
            i_minus: plus_lo,
            r_minus: plus_hi,
            i_plus: plus_lo,
            r_plus: plus_hi,
        },
        _ => RidgeEstimate {
            i_minus: minus_lo,
            r_minus: minus_hi,
            i_plus: minus_lo,
            r_plus: minus_hi,
        },
    };
    Ok(est)
}

/// Drop structure of the border sequence, which governs the third condition at `μ = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PpiCensus {
    pub has_backward: bool,
    pub has_unilateral: bool,
    pub truncated_indices_unbounded: bool,
    pub drop_positions: Vec<i64>,
    /// Gap between consecutive drops → number of occurrences in the scan.
    pub index_histogram: BTreeMap<i64, usize>,
}

pub fn ppi_census(profile: &DiagramProfile, scan: i64) -> Result<PpiCensus> {
    profile.validate()?;
    let drop_positions: Vec<i64> = (-scan..=scan)
        .filter(|&j| match (profile.eval_m(j), profile.eval_m(j + 1)) {
            (ExtInt::Finite(a), ExtInt::Finite(b)) => a > b,
            _ => false,
        })
        .collect();
    let mut index_histogram = BTreeMap::new();
    for w in drop_positions.windows(2) {
        *index_histogram.entry(w[1] - w[0]).or_insert(0) += 1;
    }
    let unbounded = |side: Side| profile.tail(side).has_unbounded_gaps();
    Ok(PpiCensus {
        has_backward: profile.minus_tail.is_flat(),
        has_unilateral: profile.plus_tail.is_flat(),
        truncated_indices_unbounded: unbounded(Side::Minus) || unbounded(Side::Plus),
        drop_positions,
        index_histogram,
    })
}
