//! Symbolic descriptions of the Taylor spectrum and of the two loci where
//! exactness of the Koszul complex fails, as unions of exponent bands on the
//! `(|μ|, |λ|)` square together with axis and origin rules.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diagram::{DefectClass, StructureReport, WoldType};
use crate::error::{Error, Result};
use crate::extnum::{eval_band, BandMembership, ExtReal, Membership};
use crate::params::SpectralParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RegionKind {
    Taylor,
    Gamma2,
    Gamma3,
}

/// `|μ|^q <= |λ| <= |μ|^p` (non-strict), evaluated with the indeterminate-form conventions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Band {
    pub p: ExtReal,
    pub q: ExtReal,
}

impl Band {
    pub fn new(p: ExtReal, q: ExtReal) -> Band {
        Band { p, q }
    }

    pub fn eval(&self, a: f64, b: f64, tol: f64) -> Membership {
        eval_band(a, b, &self.p, &self.q, tol)
    }
}

/// Which of the Wold decompositions of the two generators have a unitary part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WoldCase {
    BothMixed,
    MixedW,
    MixedZ,
    BothShift,
}

impl WoldCase {
    pub fn of(structure: &StructureReport) -> WoldCase {
        let mixed = |w| w == WoldType::MixedUnitaryAndShift;
        match (mixed(structure.wold_w), mixed(structure.wold_z)) {
            (true, true) => WoldCase::BothMixed,
            (true, false) => WoldCase::MixedW,
            (false, true) => WoldCase::MixedZ,
            (false, false) => WoldCase::BothShift,
        }
    }
}

/// Pieces of the coordinate axes and torus faces that belong to the set
/// outright (`disc` = open unit disc, `circle` = unit circle).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct AxisRules {
    pub disc_times_zero: bool,
    pub zero_times_disc: bool,
    pub circle_times_closed_disc: bool,
    pub closed_disc_times_circle: bool,
    pub zero_times_circle: bool,
    pub circle_times_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegionSpec {
    pub kind: RegionKind,
    pub bands: Vec<Band>,
    pub axis_rules: AxisRules,
    pub origin_included: bool,
    pub wold_case: Option<WoldCase>,
}

fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::OutOfUnitInterval { name, value })
    }
}

impl RegionSpec {
    /// Tri-state membership of a point given by moduli.
    pub fn member(&self, mu_abs: f64, lambda_abs: f64, tol: f64) -> Result<BandMembership> {
        check_unit("mu_abs", mu_abs)?;
        check_unit("lambda_abs", lambda_abs)?;
        Ok(BandMembership {
            state: self.state(mu_abs, lambda_abs, tol),
            tolerance_used: tol,
        })
    }

    /// Membership depends on moduli only.
    pub fn member_complex(
        &self,
        mu: Complex64,
        lambda: Complex64,
        tol: f64,
    ) -> Result<BandMembership> {
        self.member(mu.norm(), lambda.norm(), tol)
    }

    fn state(&self, a: f64, b: f64, tol: f64) -> Membership {
        match self.kind {
            RegionKind::Taylor => self.bands[0].eval(a, b, tol),
            RegionKind::Gamma2 => self.gamma2_state(a, b, tol),
            RegionKind::Gamma3 => self.gamma3_state(a, b, tol),
        }
    }

    fn origin_state(&self) -> Membership {
        if self.origin_included {
            Membership::Inside
        } else {
            Membership::Outside
        }
    }

    fn gamma2_state(&self, a: f64, b: f64, tol: f64) -> Membership {
        let inside_if = |flag: bool| {
            if flag {
                Membership::Inside
            } else {
                Membership::Outside
            }
        };
        match (a, b) {
            (0.0, 0.0) => self.origin_state(),
            (1.0, 1.0) => Membership::Boundary,
            _ if a == 1.0 || b == 1.0 => Membership::Outside,
            (0.0, _) => inside_if(self.axis_rules.zero_times_disc),
            (_, 0.0) => inside_if(self.axis_rules.disc_times_zero),
            _ => self.bands[0].eval(a, b, tol),
        }
    }

    fn gamma3_state(&self, a: f64, b: f64, tol: f64) -> Membership {
        if a == 1.0 && b == 1.0 {
            return Membership::Boundary;
        }
        if a == 0.0 && b == 0.0 {
            return self.origin_state();
        }
        let rules = &self.axis_rules;
        if (rules.circle_times_closed_disc && a == 1.0)
            || (rules.closed_disc_times_circle && b == 1.0)
        {
            return Membership::Inside;
        }
        Membership::union(self.bands.iter().map(|band| band.eval(a, b, tol)))
    }
}

/// Single band `(min δ, max ρ)`.
pub fn taylor_region(params: &SpectralParams) -> RegionSpec {
    RegionSpec {
        kind: RegionKind::Taylor,
        bands: vec![Band::new(params.min_delta(), params.max_rho())],
        axis_rules: AxisRules::default(),
        origin_included: true,
        wold_case: None,
    }
}

pub fn taylor_member(
    params: &SpectralParams,
    mu_abs: f64,
    lambda_abs: f64,
    tol: f64,
) -> Result<BandMembership> {
    taylor_region(params).member(mu_abs, lambda_abs, tol)
}

/// Open band `|μ|^{η+} < |λ| < |μ|^{η-}` plus axis rules tied to the Wold types.
pub fn gamma2_region(params: &SpectralParams, structure: &StructureReport) -> RegionSpec {
    let mixed = |w| w == WoldType::MixedUnitaryAndShift;
    RegionSpec {
        kind: RegionKind::Gamma2,
        bands: vec![Band::new(params.eta_minus.clone(), params.eta_plus.clone())],
        axis_rules: AxisRules {
            disc_times_zero: mixed(structure.wold_w),
            zero_times_disc: mixed(structure.wold_z),
            ..AxisRules::default()
        },
        origin_included: true,
        wold_case: Some(WoldCase::of(structure)),
    }
}

pub fn gamma3_region(params: &SpectralParams, structure: &StructureReport) -> RegionSpec {
    let p = params;
    let case = WoldCase::of(structure);
    let (bands, circle_times_closed_disc, closed_disc_times_circle) = match case {
        WoldCase::BothMixed => (vec![], true, true),
        WoldCase::MixedW => (
            vec![Band::new(p.delta_minus.clone(), p.rho_minus.clone())],
            true,
            false,
        ),
        WoldCase::MixedZ => (
            vec![Band::new(p.delta_plus.clone(), p.rho_plus.clone())],
            false,
            true,
        ),
        WoldCase::BothShift => (
            vec![
                Band::new(p.delta_minus.clone(), p.rho_minus.clone()),
                // |μ|^{δ-} <= |λ| <= |μ|^{ρ+}; the exponents may come in either order
                Band::new(p.rho_plus.clone(), p.delta_minus.clone()),
                Band::new(p.delta_plus.clone(), p.rho_plus.clone()),
            ],
            false,
            false,
        ),
    };
    let mut spec = RegionSpec {
        kind: RegionKind::Gamma3,
        bands,
        axis_rules: AxisRules {
            circle_times_closed_disc,
            closed_disc_times_circle,
            ..AxisRules::default()
        },
        origin_included: structure.defect_class != DefectClass::NonPositive,
        wold_case: Some(case),
    };
    spec.axis_rules.zero_times_circle = spec.gamma3_state(0.0, 1.0, 0.0) == Membership::Inside;
    spec.axis_rules.circle_times_zero = spec.gamma3_state(1.0, 0.0, 0.0) == Membership::Inside;
    spec
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mismatch {
    pub mu_abs: f64,
    pub lambda_abs: f64,
    pub taylor: Membership,
    pub gamma2: Membership,
    pub gamma3: Membership,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub checked: usize,
    pub skipped_boundary: usize,
    pub mismatches: Vec<Mismatch>,
}

/// Checks `taylor Inside ⟺ (gamma2 Inside ∨ gamma3 Inside)` at samples where
/// none of the three sets reports Boundary.
pub fn parts_consistency_check(
    params: &SpectralParams,
    structure: &StructureReport,
    samples: &[(f64, f64)],
    tol: f64,
) -> Result<ConsistencyReport> {
    let regions = [
        taylor_region(params),
        gamma2_region(params, structure),
        gamma3_region(params, structure),
    ];
    let mut report = ConsistencyReport {
        checked: 0,
        skipped_boundary: 0,
        mismatches: Vec::new(),
    };
    for &(a, b) in samples {
        let [t, g2, g3] = [0, 1, 2].map(|k| regions[k].member(a, b, tol).map(|m| m.state));
        let (t, g2, g3) = (t?, g2?, g3?);
        if [t, g2, g3].contains(&Membership::Boundary) {
            report.skipped_boundary += 1;
            continue;
        }
        report.checked += 1;
        let union = g2 == Membership::Inside || g3 == Membership::Inside;
        if (t == Membership::Inside) != union {
            report.mismatches.push(Mismatch {
                mu_abs: a,
                lambda_abs: b,
                taylor: t,
                gamma2: g2,
                gamma3: g3,
            });
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AreaEstimate {
    pub fraction: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// Monte Carlo fraction of the unit square `(|μ|, |λ|)` reported Inside.
pub fn area_fraction(region: &RegionSpec, samples: usize, seed: u64, tol: f64) -> AreaEstimate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0usize;
    for _ in 0..samples {
        let (a, b): (f64, f64) = (rng.random(), rng.random());
        if region.state(a, b, tol) == Membership::Inside {
            hits += 1;
        }
    }
    let n = samples.max(1) as f64;
    let f = hits as f64 / n;
    AreaEstimate {
        fraction: f,
        std_error: (f * (1.0 - f) / n).sqrt(),
        samples,
    }
}

/// Uniform random points of the unit square, reproducible from `seed`.
pub fn random_samples(count: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (rng.random(), rng.random())).collect()
}
