//! The six asymptotic slope parameters of a border sequence.
//!
//! On each side, `δ` and `ρ` are the extreme long-run slopes over windows of
//! growing length, and `η` is the limit superior of the cumulative average
//! slope measured from the window edge. All are exact extended reals.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::diagram::{DiagramProfile, TailSpec};
use crate::error::{Error, Result};
use crate::extnum::ExtReal;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectralParams {
    pub delta_minus: ExtReal,
    pub delta_plus: ExtReal,
    pub eta_minus: ExtReal,
    pub eta_plus: ExtReal,
    pub rho_minus: ExtReal,
    pub rho_plus: ExtReal,
}

impl SpectralParams {
    pub fn min_delta(&self) -> ExtReal {
        self.delta_minus.clone().min(self.delta_plus.clone())
    }

    pub fn max_rho(&self) -> ExtReal {
        self.rho_minus.clone().max(self.rho_plus.clone())
    }

    pub fn is_ordered(&self) -> bool {
        self.delta_minus <= self.eta_minus
            && self.eta_minus <= self.rho_minus
            && self.delta_plus <= self.eta_plus
            && self.eta_plus <= self.rho_plus
    }
}

/// Asymptotics of one tail. `eta_inf` (the limit inferior of the cumulative
/// average) is carried along because mirroring swaps it with `eta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailParams {
    pub delta: ExtReal,
    pub eta: ExtReal,
    pub eta_inf: ExtReal,
    pub rho: ExtReal,
}

fn big(r: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Limit of the cumulative average at the ends of blocks in each phase.
fn geometric_phase_limits(slopes: &[Rational64], ratio: i64) -> Vec<BigRational> {
    let m = slopes.len();
    let r = BigRational::from_integer(BigInt::from(ratio));
    let inv_r = r.recip();
    let mut inv_r_m = BigRational::one();
    for _ in 0..m {
        inv_r_m *= &inv_r;
    }
    let scale = (BigRational::one() - &inv_r) / (BigRational::one() - inv_r_m);
    (0..m)
        .map(|phi| {
            let mut sum = BigRational::zero();
            let mut w = BigRational::one();
            for d in 0..m {
                sum += big(slopes[(phi + m - d) % m]) * &w;
                w *= &inv_r;
            }
            sum * &scale
        })
        .collect()
}

pub fn tail_params(tail: &TailSpec) -> TailParams {
    let same = |x: ExtReal| TailParams {
        delta: x.clone(),
        eta: x.clone(),
        eta_inf: x.clone(),
        rho: x,
    };
    match tail {
        TailSpec::EmptyRows | TailSpec::FullRows => same(ExtReal::Infinity),
        TailSpec::Periodic { period, rise } => same(ExtReal::ratio(*rise, *period)),
        TailSpec::GeometricBlocks { slopes, ratio, .. } => {
            let phases = geometric_phase_limits(slopes, *ratio);
            TailParams {
                delta: ExtReal::from(big(*slopes.iter().min().unwrap())),
                rho: ExtReal::from(big(*slopes.iter().max().unwrap())),
                eta: ExtReal::from(phases.iter().max().unwrap().clone()),
                eta_inf: ExtReal::from(phases.iter().min().unwrap().clone()),
            }
        }
        TailSpec::Mirrored { of, .. } => {
            let p = tail_params(of);
            TailParams {
                delta: p.rho.reciprocal(),
                eta: p.eta_inf.reciprocal(),
                eta_inf: p.eta.reciprocal(),
                rho: p.delta.reciprocal(),
            }
        }
    }
}

pub fn compute_params(profile: &DiagramProfile) -> Result<SpectralParams> {
    if profile.validate()?.is_simple {
        return Err(Error::SimpleDiagram);
    }
    let minus = tail_params(&profile.minus_tail);
    let plus = tail_params(&profile.plus_tail);
    Ok(SpectralParams {
        delta_minus: minus.delta,
        delta_plus: plus.delta,
        eta_minus: minus.eta,
        eta_plus: plus.eta,
        rho_minus: minus.rho,
        rho_plus: plus.rho,
    })
}

/// Finite-`n` estimates of the six parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamEstimate {
    pub delta_minus: f64,
    pub delta_plus: f64,
    pub eta_minus: f64,
    pub eta_plus: f64,
    pub rho_minus: f64,
    pub rho_plus: f64,
}

impl ParamEstimate {
    /// Largest absolute deviation from exact parameters.
    pub fn max_error(&self, exact: &SpectralParams) -> f64 {
        [
            (self.delta_minus, &exact.delta_minus),
            (self.delta_plus, &exact.delta_plus),
            (self.eta_minus, &exact.eta_minus),
            (self.eta_plus, &exact.eta_plus),
            (self.rho_minus, &exact.rho_minus),
            (self.rho_plus, &exact.rho_plus),
        ]
        .iter()
        .map(|(est, ex)| (est - ex.to_f64()).abs())
        .fold(0.0, f64::max)
    }
}

/// How far [`estimate_params_bruteforce`] may sit from the exact values:
/// `16 (window + log2 n + 2) / n`.
pub fn bruteforce_tolerance(profile: &DiagramProfile, n_max: i64) -> f64 {
    let w = profile.window.values.len() as f64;
    16.0 * (w + (n_max as f64).log2() + 2.0) / n_max as f64
}

/// Direct evaluation at a single window length `n = n_max`.
///
/// `δ` and `ρ` are the min and max of `(M_{j-n} - M_j)/n` over
/// `j ∈ [-j_span, 0]` (minus side) and of `(M_j - M_{j+n})/n` over
/// `j ∈ [0, j_span]` (plus side). `η` is the maximum of the cumulative average
/// from `j = 0` over the last decades `t ∈ [n/16, n]`, which contains a block
/// end of every phase for the supported tail families.
pub fn estimate_params_bruteforce(
    profile: &DiagramProfile,
    n_max: i64,
    j_span: i64,
) -> Result<ParamEstimate> {
    if n_max < 16 || j_span < 0 {
        return Err(Error::InvalidArgument(
            "need n_max >= 16 and j_span >= 0".into(),
        ));
    }
    let lo = -j_span - n_max;
    let hi = j_span + n_max;
    let m: Vec<i64> = (lo..=hi)
        .map(|j| profile.eval_m(j).finite().ok_or(Error::ScanOverflow { j }))
        .collect::<Result<_>>()?;
    let at = |j: i64| m[(j - lo) as usize];
    let n = n_max;
    let nf = n as f64;

    let (mut dm, mut rm) = (f64::INFINITY, f64::NEG_INFINITY);
    for j in -j_span..=0 {
        let s = (at(j - n) - at(j)) as f64 / nf;
        dm = dm.min(s);
        rm = rm.max(s);
    }
    let (mut dp, mut rp) = (f64::INFINITY, f64::NEG_INFINITY);
    for j in 0..=j_span {
        let s = (at(j) - at(j + n)) as f64 / nf;
        dp = dp.min(s);
        rp = rp.max(s);
    }
    let (mut em, mut ep) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for t in (n / 16).max(1)..=n {
        em = em.max((at(-t) - at(0)) as f64 / t as f64);
        ep = ep.max((at(0) - at(t)) as f64 / t as f64);
    }
    Ok(ParamEstimate {
        delta_minus: dm,
        delta_plus: dp,
        eta_minus: em,
        eta_plus: ep,
        rho_minus: rm,
        rho_plus: rp,
    })
}
