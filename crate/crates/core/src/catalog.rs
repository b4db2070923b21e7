//! Named example diagrams used by the test suites, benches and CLI docs.

use num_rational::Rational64;

use crate::diagram::{DiagramProfile, TailSpec};

fn periodic(period: i64, rise: i64) -> TailSpec {
    TailSpec::Periodic { period, rise }
}

fn geometric(slopes: &[(i64, i64)], ratio: i64, base_len: i64) -> TailSpec {
    TailSpec::GeometricBlocks {
        slopes: slopes.iter().map(|&(n, d)| Rational64::new(n, d)).collect(),
        ratio,
        base_len,
    }
}

/// `{j >= -(period/rise) i}` rasterised on both sides: all parameters equal `rise/period`.
pub fn slope_line(period: i64, rise: i64) -> DiagramProfile {
    DiagramProfile::new(0, vec![0], periodic(period, rise), periodic(period, rise))
}

/// Two half-lines meeting at the origin: slope 1/2 towards `j -> -inf`, slope 1 towards `j -> +inf`.
pub fn half_lines() -> DiagramProfile {
    DiagramProfile::new(0, vec![0], periodic(2, 1), periodic(1, 1))
}

/// `Z_+²` itself (simple).
pub fn quarter_plane() -> DiagramProfile {
    DiagramProfile::new(0, vec![0], TailSpec::EmptyRows, periodic(1, 0))
}

/// A non-simple staircase inside `Z_+²`.
pub fn corner_staircase() -> DiagramProfile {
    DiagramProfile::new(0, vec![2, 1, 0], TailSpec::EmptyRows, periodic(1, 0))
}

/// Full rows above, full columns to the right: both generators have unitary parts.
pub fn both_mixed() -> DiagramProfile {
    DiagramProfile::new(0, vec![1, 0], periodic(1, 0), TailSpec::FullRows)
}

/// `Z²` with one open quadrant removed.
pub fn plane_minus_quadrant() -> DiagramProfile {
    DiagramProfile::new(0, vec![0], periodic(1, 0), TailSpec::FullRows)
}

/// Slopes alternating 0, 1 on doubling blocks towards `j -> -inf`; slope 1 towards `+inf`.
pub fn geometric_minus() -> DiagramProfile {
    DiagramProfile::new(
        0,
        vec![0],
        geometric(&[(0, 1), (1, 1)], 2, 1),
        periodic(1, 1),
    )
}

/// Finitely many partial rows: both index ends finite.
pub fn finite_band() -> DiagramProfile {
    DiagramProfile::new(0, vec![1, 0], TailSpec::EmptyRows, TailSpec::FullRows)
}

/// Full rows above a slope-1 staircase (index range bounded above).
pub fn stair_under_full_rows() -> DiagramProfile {
    DiagramProfile::new(0, vec![0], periodic(1, 1), TailSpec::FullRows)
}

/// Empty rows below a slope-1/2 staircase (index range bounded below).
pub fn stair_over_empty_rows() -> DiagramProfile {
    DiagramProfile::new(0, vec![0], TailSpec::EmptyRows, periodic(2, 1))
}

/// Geometric tails with geometric structure on one or both sides.
pub fn geometric_profiles() -> Vec<DiagramProfile> {
    vec![
        geometric_minus(),
        DiagramProfile::new(
            0,
            vec![0],
            geometric(&[(1, 2), (2, 1)], 2, 1),
            periodic(1, 1),
        ),
        DiagramProfile::new(
            0,
            vec![0],
            geometric(&[(0, 1), (1, 1), (3, 1)], 2, 1),
            periodic(2, 1),
        ),
        DiagramProfile::new(
            3,
            vec![4, 4, 1],
            periodic(3, 2),
            geometric(&[(1, 1), (3, 1)], 2, 2),
        ),
        DiagramProfile::new(
            -1,
            vec![0, -2],
            geometric(&[(1, 3), (1, 1)], 3, 1),
            geometric(&[(2, 1), (1, 2)], 2, 1),
        ),
    ]
}

/// Positive-slope profiles whose transposes are representable.
pub fn transposable() -> Vec<DiagramProfile> {
    vec![
        slope_line(1, 1),
        slope_line(2, 1),
        slope_line(3, 2),
        half_lines(),
        DiagramProfile::new(-2, vec![5, 3, 3, 0], periodic(2, 3), periodic(3, 1)),
        DiagramProfile::new(
            0,
            vec![0],
            geometric(&[(1, 2), (2, 1)], 2, 1),
            periodic(1, 1),
        ),
        DiagramProfile::new(
            1,
            vec![2, 0],
            periodic(1, 2),
            geometric(&[(1, 1), (3, 1)], 2, 2),
        ),
        DiagramProfile::new(
            -1,
            vec![0, -2],
            geometric(&[(1, 3), (1, 1)], 3, 1),
            geometric(&[(2, 1), (1, 2)], 2, 1),
        ),
        DiagramProfile::new(
            0,
            vec![0],
            geometric(&[(3, 2), (1, 4), (1, 1)], 2, 3),
            periodic(2, 5),
        ),
        DiagramProfile::new(
            0,
            vec![3, 1, 0],
            periodic(4, 1),
            geometric(&[(5, 2), (1, 1)], 2, 1),
        ),
        corner_staircase(),
        both_mixed(),
        plane_minus_quadrant(),
        stair_under_full_rows(),
        stair_over_empty_rows(),
        finite_band(),
        quarter_plane(),
    ]
}

/// Non-simple profiles covering every structural case.
pub fn non_simple() -> Vec<DiagramProfile> {
    let mut v = vec![
        slope_line(1, 1),
        slope_line(2, 1),
        half_lines(),
        corner_staircase(),
        both_mixed(),
        plane_minus_quadrant(),
        finite_band(),
        stair_under_full_rows(),
        stair_over_empty_rows(),
        DiagramProfile::new(0, vec![2, 0], periodic(1, 0), periodic(1, 1)),
        DiagramProfile::new(0, vec![0], periodic(1, 1), periodic(1, 0)),
    ];
    v.extend(geometric_profiles());
    v
}

/// Everything above, simple diagrams included.
pub fn all() -> Vec<DiagramProfile> {
    let mut v = non_simple();
    v.extend(transposable());
    v.push(DiagramProfile::new(
        0,
        vec![0],
        periodic(1, 0),
        periodic(2, 0),
    ));
    v
}
