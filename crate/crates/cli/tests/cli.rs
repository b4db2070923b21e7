use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use isopair_core::{
    catalog, compute_params, gamma2_region, gamma3_region, taylor_region, DiagramProfile,
    Membership,
};
use serde_json::Value;

fn spec(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../specs")
        .join(format!("{name}.json"))
}

fn isopair(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isopair"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = isopair(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn sample_rows(spec_name: &str, resolution: usize) -> Vec<Vec<String>> {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("grid.csv");
    let res = resolution.to_string();
    let status = isopair(&[
        "sample",
        spec(spec_name).to_str().unwrap(),
        "--resolution",
        &res,
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(
        status.status.success(),
        "{}",
        String::from_utf8_lossy(&status.stderr)
    );
    let mut reader = csv::Reader::from_path(&out).unwrap();
    assert_eq!(
        reader.headers().unwrap(),
        vec!["mu_abs", "lambda_abs", "taylor", "gamma2", "gamma3"]
    );
    reader
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect()
}

fn raster(spec_name: &str, w: usize, h: usize) -> Vec<u8> {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.ppm");
    let (ws, hs) = (w.to_string(), h.to_string());
    let path = spec(spec_name);
    let args = [
        "raster",
        path.to_str().unwrap(),
        "--width",
        &ws,
        "--height",
        &hs,
        "--out",
        out.to_str().unwrap(),
    ];
    assert!(isopair(&args).status.success());
    std::fs::read(out).unwrap()
}

#[test]
fn sample_small_grids() {
    let rows = sample_rows("slope-1", 3);
    assert_eq!(rows.len(), 9);
    let mid = rows
        .iter()
        .find(|r| r[0] == "0.5" && r[1] == "0.5")
        .unwrap();
    assert_eq!(mid[2], "boundary");

    // band (0, 1): the origin is inside, (1, 1) sits on the torus
    let rows = sample_rows("flat-then-slope-1", 2);
    assert_eq!(rows.len(), 4);
    let at = |a: &str, b: &str| rows.iter().find(|r| r[0] == a && r[1] == b).unwrap()[2].clone();
    assert_eq!(at("0", "0"), "in");
    assert_eq!(at("1", "1"), "boundary");
}

#[test]
fn sample_half_lines_area() {
    let rows = sample_rows("half-lines", 101);
    assert_eq!(rows.len(), 101 * 101);
    let inside = rows.iter().filter(|r| r[2] == "in").count() as f64 / rows.len() as f64;
    assert!((inside - 1.0 / 6.0).abs() < 0.02, "{inside}");
}

#[test]
fn sample_round_trip_is_deterministic() {
    let rows = sample_rows("geometric-minus", 21);
    assert_eq!(rows, sample_rows("geometric-minus", 21));
    let prof = catalog::geometric_minus();
    let p = compute_params(&prof).unwrap();
    let s = prof.validate().unwrap();
    let regions = [
        taylor_region(&p),
        gamma2_region(&p, &s),
        gamma3_region(&p, &s),
    ];
    for r in rows {
        let (a, b): (f64, f64) = (r[0].parse().unwrap(), r[1].parse().unwrap());
        for k in 0..3 {
            let want: Membership = r[2 + k].parse().unwrap();
            assert_eq!(
                regions[k]
                    .member(a, b, isopair_core::DEFAULT_TOL)
                    .unwrap()
                    .state,
                want
            );
        }
    }
}

#[test]
fn raster_slope_one_is_the_antidiagonal() {
    let bytes = raster("slope-1", 16, 16);
    let header = b"P6\n16 16\n255\n";
    assert_eq!(&bytes[..header.len()], header);
    let px = &bytes[header.len()..];
    assert_eq!(px.len(), 16 * 16 * 3);
    for r in 0..16 {
        for c in 0..16 {
            let rgb = &px[3 * (16 * r + c)..3 * (16 * r + c) + 3];
            let want: &[u8] = if r + c == 15 {
                &[240, 200, 40]
            } else {
                &[245, 245, 245]
            };
            assert_eq!(rgb, want, "pixel ({r}, {c})");
        }
    }
}

#[test]
fn raster_quarter_plane_like_is_all_inside() {
    let bytes = raster("corner-staircase", 256, 256);
    let header = b"P6\n256 256\n255\n";
    assert_eq!(&bytes[..header.len()], header);
    assert!(bytes[header.len()..].chunks(3).all(|p| p == [30, 30, 200]));
}

#[test]
fn report_examples() {
    let r = ok_json(&["report", spec("half-lines").to_str().unwrap()]);
    assert_eq!(r["taylor_band"]["p"], "1/2");
    assert_eq!(r["taylor_band"]["q"], "1/1");
    let f = r["area_fraction"]["fraction"].as_f64().unwrap();
    assert!(f > 0.0 && f < 1.0 && (f - 1.0 / 6.0).abs() < 0.01);

    let r = ok_json(&["report", spec("corner-staircase").to_str().unwrap()]);
    assert_eq!(r["taylor_band"]["p"], "0/1");
    assert_eq!(r["taylor_band"]["q"], "inf");
    assert_eq!(r["area_fraction"]["fraction"], 1.0);

    let r = ok_json(&["report", spec("slope-1").to_str().unwrap()]);
    assert_eq!(r["area_fraction"]["fraction"], 0.0);

    let r = ok_json(&["report", spec("quarter-plane").to_str().unwrap()]);
    assert!(r.get("taylor_band").is_none());
    assert!(r["note"].as_str().unwrap().contains("doubly commuting"));
}

#[test]
fn report_is_translation_invariant() {
    let dir = tempfile::tempdir().unwrap();
    for prof in [
        catalog::geometric_minus(),
        catalog::corner_staircase(),
        catalog::both_mixed(),
    ] {
        let write = |p: &DiagramProfile, name: &str| {
            let path = dir.path().join(name);
            std::fs::write(&path, p.to_string()).unwrap();
            path
        };
        let a = write(&prof, "a.json");
        let b = write(&prof.translate(3, -5), "b.json");
        let mut ra = ok_json(&["report", a.to_str().unwrap()]);
        let mut rb = ok_json(&["report", b.to_str().unwrap()]);
        ra.as_object_mut().unwrap().remove("input");
        rb.as_object_mut().unwrap().remove("input");
        assert_eq!(
            serde_json::to_string(&ra).unwrap(),
            serde_json::to_string(&rb).unwrap()
        );
    }
}

#[test]
fn params_and_member() {
    let p = ok_json(&["params", spec("geometric-minus").to_str().unwrap()]);
    assert_eq!(p["eta_minus"], "2/3");
    let m = ok_json(&[
        "member",
        spec("half-lines").to_str().unwrap(),
        "--mu",
        "0.3,0.4",
        "--lambda",
        "-0.6",
    ]);
    assert_eq!(m["mu_abs"], 0.5);
    assert_eq!(m["taylor"], "inside");
}

#[test]
fn oracle_subcommands() {
    let s = spec("slope-1");
    let r = ok_json(&[
        "oracle",
        "fringe",
        s.to_str().unwrap(),
        "--mu",
        "0.5",
        "--lambda",
        "0.8",
        "--sizes",
        "64,256",
    ]);
    assert_eq!(r["scan"]["verdict"], "OutsideApSpectrum");
    assert_eq!(r["predicted"], "outside");
    assert_eq!(r["scan"]["smin_by_size"].as_array().unwrap().len(), 2);

    let g = spec("geometric-minus");
    let lambda = 0.5f64.powf(0.8).to_string();
    let r = ok_json(&[
        "oracle",
        "gamma2",
        g.to_str().unwrap(),
        "--mu",
        "0.5",
        "--lambda",
        &lambda,
        "--terms",
        "20000",
    ]);
    assert_eq!(r["verdict"]["classification"], "Converges");
    assert_eq!(r["gamma2_region"], "inside");

    let c = spec("corner-staircase");
    let r = ok_json(&[
        "oracle",
        "t3",
        c.to_str().unwrap(),
        "--mu",
        "0.5",
        "--lambda",
        "0.5",
        "--window",
        "0:40:0:40",
    ]);
    assert!(r["adjoint_kernel_smin"][0].as_f64().unwrap() < 1e-6);

    let r = ok_json(&[
        "fringe",
        s.to_str().unwrap(),
        "--mu",
        "0.5",
        "--weights",
        "4",
    ]);
    assert_eq!(r["kind"], "Bilateral");
    assert_eq!(r["weights"].as_array().unwrap().len(), 4);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"window": {"j_lo": 0, "values": [0, 1]}, "minus_tail": {"kind": "empty"}, "plus_tail": {"kind": "full"}}"#).unwrap();
    assert_eq!(
        isopair(&["validate", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
    std::fs::write(
        &bad,
        r#"{"window": {"j_lo": 0, "values": [0]}, "minus_tail": {"kind": "nope"}}"#,
    )
    .unwrap();
    let out = isopair(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    let c = spec("corner-staircase");
    let out = isopair(&[
        "oracle",
        "gamma2",
        c.to_str().unwrap(),
        "--mu",
        "0.5",
        "--lambda",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = isopair(&[
        "oracle",
        "fringe",
        spec("slope-1").to_str().unwrap(),
        "--mu",
        "1.5",
        "--lambda",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = isopair(&["params", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}
