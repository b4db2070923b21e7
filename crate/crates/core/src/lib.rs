//! Taylor spectrum of pairs of commuting isometries `(M_w, M_z)` given by
//! lattice diagrams: exact parameters, symbolic regions and numerical oracles.

pub mod catalog;
pub mod diagram;
pub mod error;
pub mod extnum;
pub mod oracle;
pub mod params;
pub mod regions;
pub mod shifts;

pub use diagram::{
    BorderReport, DefectClass, DiagramProfile, ExtInt, Rect, Side, StructureReport, TailSpec,
    Window, WoldType,
};
pub use error::{Error, Result};
pub use extnum::{band_member, BandMembership, ExtReal, Membership, DEFAULT_TOL};
pub use oracle::{
    gamma1_empty_check, gamma2_series_test, joint_adjoint_kernel_smin, window_smin_scan,
    ScanOptions, ScanVerdict, SeriesClass, SeriesVerdict, WindowScanResult,
};
pub use params::{compute_params, estimate_params_bruteforce, ParamEstimate, SpectralParams};
pub use regions::{
    area_fraction, gamma2_region, gamma3_region, parts_consistency_check, taylor_member,
    taylor_region, AreaEstimate, Band, RegionKind, RegionSpec, WoldCase,
};
pub use shifts::{
    fringe_operator, ppi_census, ridge_bounds, sigma_ap_predict, PpiCensus, RidgeBounds, ShiftKind,
    ShiftSpec,
};
