//! Acceptance suite: one `[PASS]`/`[FAIL]` line per criterion.
//!
//! Runs without the libtest harness so the lines always print; the process
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_rational::Rational64;

use isopair_core::catalog;
use isopair_core::oracle::{
    gamma2_series_test, joint_adjoint_kernel_smin, window_smin_scan, ScanOptions,
};
use isopair_core::params::{compute_params, estimate_params_bruteforce};
use isopair_core::regions::{
    area_fraction, gamma2_region, gamma3_region, parts_consistency_check, random_samples,
};
use isopair_core::shifts::{fringe_operator, ridge_bounds, sigma_ap_predict};
use isopair_core::{
    taylor_member, taylor_region, DiagramProfile, ExtReal, Membership, Rect, ScanVerdict,
    SeriesClass, TailSpec, DEFAULT_TOL,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn grid(n: usize) -> impl Iterator<Item = (f64, f64)> {
    let d = (n - 1) as f64;
    (0..n).flat_map(move |i| (0..n).map(move |k| (i as f64 / d, k as f64 / d)))
}

fn geometric(slopes: &[(i64, i64)]) -> DiagramProfile {
    let slopes = slopes.iter().map(|&(n, d)| Rational64::new(n, d)).collect();
    let tail = TailSpec::GeometricBlocks {
        slopes,
        ratio: 2,
        base_len: 1,
    };
    DiagramProfile::new(0, vec![0], tail, TailSpec::Periodic { period: 1, rise: 1 })
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `|λ|^α = |μ|` with `α = 1, 2`.
fn ac1() -> Outcome {
    let mut boundary = 0;
    for (alpha, prof) in [
        (1.0, catalog::slope_line(1, 1)),
        (2.0, catalog::slope_line(2, 1)),
    ] {
        let params = compute_params(&prof).map_err(|e| e.to_string())?;
        for (a, b) in grid(101) {
            let got = taylor_member(&params, a, b, DEFAULT_TOL)
                .map_err(|e| e.to_string())?
                .state;
            let on_curve = if a == 0.0 || b == 0.0 {
                a == 0.0 && b == 0.0
            } else {
                (alpha * b.ln() - a.ln()).abs() < alpha * DEFAULT_TOL
            };
            let want = if on_curve {
                Membership::Boundary
            } else {
                Membership::Outside
            };
            ensure(got == want, || {
                format!("α={alpha} at ({a}, {b}): {got:?}, expected {want:?}")
            })?;
            boundary += on_curve as usize;
        }
    }
    Ok(format!(
        "{boundary} boundary points, no Inside points, rest Outside"
    ))
}

fn ac2() -> Outcome {
    let params = compute_params(&catalog::half_lines()).map_err(|e| e.to_string())?;
    let inside = grid(201)
        .filter(|&(a, b)| {
            taylor_member(&params, a, b, DEFAULT_TOL).unwrap().state == Membership::Inside
        })
        .count();
    let frac = inside as f64 / (201.0 * 201.0);
    ensure((frac - 1.0 / 6.0).abs() <= 0.02, || {
        format!("fraction {frac:.4} vs 1/6")
    })?;
    Ok(format!("fraction {frac:.4} vs 1/6"))
}

fn ac3() -> Outcome {
    let mut parts = Vec::new();
    for (name, prof) in [
        ("corner_staircase", catalog::corner_staircase()),
        ("both_mixed", catalog::both_mixed()),
    ] {
        let params = compute_params(&prof).map_err(|e| e.to_string())?;
        let est = area_fraction(&taylor_region(&params), 100_000, 7, DEFAULT_TOL);
        ensure((est.fraction - 1.0).abs() <= 0.01, || {
            format!("{name}: area {}", est.fraction)
        })?;
        parts.push(format!("{name} {:.4}", est.fraction));
    }
    Ok(parts.join(", "))
}

fn ac4() -> Outcome {
    let suite: Vec<DiagramProfile> = catalog::transposable().into_iter().take(10).collect();
    let geometric_cases = suite
        .iter()
        .filter(|p| {
            [&p.minus_tail, &p.plus_tail]
                .iter()
                .any(|t| t.kind_name() == "geometric")
        })
        .count();
    ensure(geometric_cases >= 2, || {
        format!("only {geometric_cases} geometric profiles")
    })?;
    for prof in &suite {
        let p = compute_params(prof).map_err(|e| e.to_string())?;
        let t = prof.transpose().map_err(|e| format!("{prof}: {e}"))?;
        let q = compute_params(&t).map_err(|e| e.to_string())?;
        let pairs: [(&ExtReal, ExtReal); 4] = [
            (&q.delta_plus, p.rho_minus.reciprocal()),
            (&q.rho_plus, p.delta_minus.reciprocal()),
            (&q.delta_minus, p.rho_plus.reciprocal()),
            (&q.rho_minus, p.delta_plus.reciprocal()),
        ];
        for (got, want) in pairs {
            ensure(*got == want, || format!("{prof}: {got} != {want}"))?;
        }
    }
    Ok(format!(
        "{} profiles ({geometric_cases} geometric), 4 identities each",
        suite.len()
    ))
}

fn ac5() -> Outcome {
    let mut parts = Vec::new();
    for (slopes, exact) in [
        (&[(0, 1), (1, 1)][..], ExtReal::ratio(2, 3)),
        (&[(1, 2), (2, 1)][..], ExtReal::ratio(3, 2)),
        (&[(0, 1), (1, 1), (3, 1)][..], ExtReal::ratio(2, 1)),
    ] {
        let prof = geometric(slopes);
        let closed = compute_params(&prof).map_err(|e| e.to_string())?.eta_minus;
        ensure(closed == exact, || {
            format!("{slopes:?}: closed form {closed}, expected {exact}")
        })?;
        let est = estimate_params_bruteforce(&prof, 1_000_000, 0).map_err(|e| e.to_string())?;
        let err = (est.eta_minus - exact.to_f64()).abs();
        ensure(err < 1e-3, || {
            format!("{slopes:?}: simulated {} vs {exact}", est.eta_minus)
        })?;
        parts.push(format!("η-={exact} err {err:.1e}"));
    }
    Ok(parts.join(", "))
}

fn ac6() -> Outcome {
    let profiles = [
        catalog::half_lines(),
        catalog::corner_staircase(),
        catalog::both_mixed(),
        catalog::plane_minus_quadrant(),
        catalog::geometric_minus(),
        catalog::stair_under_full_rows(),
        catalog::stair_over_empty_rows(),
    ];
    for (k, prof) in profiles.iter().enumerate() {
        let params = compute_params(prof).map_err(|e| e.to_string())?;
        let structure = prof.validate().map_err(|e| e.to_string())?;
        let mut checked = 0;
        // draw until 1000 samples clear every boundary
        for (a, b) in random_samples(20_000, 100 + k as u64) {
            let r = parts_consistency_check(&params, &structure, &[(a, b)], DEFAULT_TOL)
                .map_err(|e| e.to_string())?;
            ensure(r.mismatches.is_empty(), || {
                format!("{prof}: {:?}", r.mismatches[0])
            })?;
            checked += r.checked;
            if checked == 1000 {
                break;
            }
        }
        ensure(checked == 1000, || {
            format!("{prof}: only {checked} off-boundary samples")
        })?;
    }
    Ok(format!(
        "{} profiles x 1000 samples, 0 mismatches",
        profiles.len()
    ))
}

fn ac7() -> Outcome {
    let opts = ScanOptions::new(vec![256, 1024, 4096]);
    let spec = fringe_operator(&catalog::slope_line(1, 1), 0.5).map_err(|e| e.to_string())?;
    let on = window_smin_scan(&spec, 0.5, &opts).map_err(|e| e.to_string())?;
    let last = *on.smin_by_size.last().unwrap();
    ensure(
        on.verdict == ScanVerdict::InsideApSpectrum && last < 1e-3,
        || format!("λ=0.5: {on:?}"),
    )?;
    for lambda in [0.8, 0.2] {
        let off = window_smin_scan(&spec, lambda, &opts).map_err(|e| e.to_string())?;
        let worst = off
            .smin_by_size
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        ensure(
            off.verdict == ScanVerdict::OutsideApSpectrum && worst >= 5e-2,
            || format!("λ={lambda}: {off:?}"),
        )?;
    }

    let prof = catalog::half_lines();
    let spec = fringe_operator(&prof, 0.5).map_err(|e| e.to_string())?;
    let bounds = ridge_bounds(&spec, &compute_params(&prof).map_err(|e| e.to_string())?);
    // candidates at least ~10% (in log scale) away from every ridge
    let candidates: Vec<f64> = (1..200)
        .map(|k| k as f64 / 200.0)
        .filter(|&l| {
            sigma_ap_predict(&spec, &bounds, l, 0.1).unwrap().state != Membership::Boundary
        })
        .collect();
    ensure(candidates.len() >= 20, || {
        "not enough off-boundary λ".into()
    })?;
    let step = candidates.len() as f64 / 20.0;
    let lambdas: Vec<f64> = (0..20)
        .map(|k| candidates[(k as f64 * step) as usize])
        .collect();
    let mut unresolved = 0;
    for &l in &lambdas {
        let pred = sigma_ap_predict(&spec, &bounds, l, DEFAULT_TOL)
            .unwrap()
            .state;
        let scan = window_smin_scan(&spec, l, &opts).map_err(|e| e.to_string())?;
        match scan.verdict {
            ScanVerdict::InsideApSpectrum => ensure(pred == Membership::Inside, || {
                format!("λ={l}: scan in, {pred:?}")
            })?,
            ScanVerdict::OutsideApSpectrum => ensure(pred == Membership::Outside, || {
                format!("λ={l}: scan out, {pred:?}")
            })?,
            ScanVerdict::Unresolved => unresolved += 1,
        }
    }
    ensure(unresolved * 5 <= lambdas.len(), || {
        format!("{unresolved}/20 unresolved")
    })?;
    Ok(format!("calibration smin(4096)={last:.2e}; half-lines 20 λ, {unresolved} unresolved, 0 disagreements"))
}

fn ac8() -> Outcome {
    let s = joint_adjoint_kernel_smin(
        &catalog::corner_staircase(),
        c(0.5),
        c(0.5),
        Rect::square(0, 40),
    )
    .map_err(|e| e.to_string())?;
    ensure(s < 1e-6, || format!("corner_staircase window 40: {s:e}"))?;
    let mut ladder = Vec::new();
    for n in [20, 40, 80] {
        let t = joint_adjoint_kernel_smin(
            &catalog::both_mixed(),
            c(0.5),
            c(0.5),
            Rect::centered(0, 0, n),
        )
        .map_err(|e| e.to_string())?;
        ensure(t >= 0.1, || format!("both_mixed window {n}: {t}"))?;
        ladder.push(format!("{t:.3}"));
    }
    Ok(format!(
        "staircase {s:.1e}; both_mixed ladder [{}]",
        ladder.join(", ")
    ))
}

fn ac9() -> Outcome {
    let profiles = catalog::non_simple();
    let excluded = catalog::plane_minus_quadrant();
    for prof in &profiles {
        let params = compute_params(prof).map_err(|e| e.to_string())?;
        let s = prof.validate().map_err(|e| e.to_string())?;
        let g2 = gamma2_region(&params, &s)
            .member(0.0, 0.0, DEFAULT_TOL)
            .map_err(|e| e.to_string())?
            .state;
        let g3 = gamma3_region(&params, &s)
            .member(0.0, 0.0, DEFAULT_TOL)
            .map_err(|e| e.to_string())?
            .state;
        ensure(g2 == Membership::Inside, || {
            format!("{prof}: gamma2 {g2:?} at origin")
        })?;
        let want = if *prof == excluded {
            Membership::Outside
        } else {
            Membership::Inside
        };
        ensure(g3 == want, || {
            format!("{prof}: gamma3 {g3:?} at origin, expected {want:?}")
        })?;
    }
    ensure(profiles.contains(&excluded), || {
        "suite lacks the quadrant-removed plane".into()
    })?;
    Ok(format!("{} non-simple profiles", profiles.len()))
}

fn ac10() -> Outcome {
    let prof = catalog::geometric_minus();
    let params = compute_params(&prof).map_err(|e| e.to_string())?;
    let g2 = gamma2_region(&params, &prof.validate().map_err(|e| e.to_string())?);
    let mut parts = Vec::new();
    for (exp, want, region) in [
        (0.8, SeriesClass::Converges, Membership::Inside),
        (0.5, SeriesClass::Diverges, Membership::Outside),
    ] {
        let lambda = 0.5f64.powf(exp);
        let v = gamma2_series_test(&prof, 0.5, lambda, 100_000, 1e-2).map_err(|e| e.to_string())?;
        let state = g2
            .member(0.5, lambda, DEFAULT_TOL)
            .map_err(|e| e.to_string())?
            .state;
        ensure(v.classification == want, || {
            format!("λ=0.5^{exp}: {:?}", v.classification)
        })?;
        ensure(state == region, || format!("λ=0.5^{exp}: gamma2 {state:?}"))?;
        parts.push(format!(
            "λ=0.5^{exp} root {:.4} {:?}",
            v.minus.root_estimate, v.classification
        ));
    }
    Ok(parts.join("; "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "AC1",
            "line diagrams: spectrum is the curve",
            ac1,
            Duration::from_secs(5),
        ),
        (
            "AC2",
            "two half-lines: band area 1/6",
            ac2,
            Duration::from_secs(10),
        ),
        ("AC3", "full bidisc cases", ac3, Duration::MAX),
        ("AC4", "transpose duality", ac4, Duration::MAX),
        ("AC5", "η closed form vs simulation", ac5, Duration::MAX),
        ("AC6", "parts consistency", ac6, Duration::MAX),
        (
            "AC7",
            "fringe oracle agreement",
            ac7,
            Duration::from_secs(120),
        ),
        ("AC8", "common adjoint kernel witness", ac8, Duration::MAX),
        ("AC9", "origin behaviour", ac9, Duration::MAX),
        ("AC10", "Γ2 series root test", ac10, Duration::MAX),
    ];
    let mut failed = 0;
    for (id, title, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > budget => Err(format!("{detail}; over time budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!(
                "[PASS] {id} {title} ({:.2}s): {detail}",
                elapsed.as_secs_f64()
            ),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {id} {title} ({:.2}s): {why}", elapsed.as_secs_f64());
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
