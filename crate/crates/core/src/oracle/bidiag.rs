//! Smallest singular value of a bidiagonal matrix by bisection.
//!
//! A bidiagonal `R x C` matrix (`C <= R <= C + 1`) is encoded by the
//! off-diagonal chain of its Golub–Kahan form: the symmetric tridiagonal
//! matrix with zero diagonal whose eigenvalues are `±σ_i` plus `R - C` zeros.
//! Sylvester inertia counts of that matrix locate `σ_min` to full relative
//! accuracy without forming anything dense.

/// Number of eigenvalues below `x` of the zero-diagonal tridiagonal with squared off-diagonals `sq`.
fn count_below(sq: &[f64], x: f64) -> usize {
    const PIVMIN: f64 = 1e-300;
    let mut count = 0;
    let mut d = -x;
    if d.abs() < PIVMIN {
        d = -PIVMIN;
    }
    if d < 0.0 {
        count += 1;
    }
    for &b2 in sq {
        d = -x - b2 / d;
        if d.abs() < PIVMIN {
            d = -PIVMIN;
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// `σ_min` of the bidiagonal matrix whose Golub–Kahan chain has squared entries `sq`
/// and which has `rows` rows. The chain length is `rows + cols - 1`.
pub fn smallest_singular_value(sq: &[f64], rows: usize) -> f64 {
    let mut hi = 2.0 * sq.iter().copied().fold(0.0, f64::max).sqrt();
    if hi == 0.0 {
        return 0.0;
    }
    // below σ_min exactly `rows` eigenvalues are negative or zero
    if count_below(sq, hi) <= rows {
        return hi;
    }
    let mut lo = 0.0;
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 1e-15 * hi {
            break;
        }
        if count_below(sq, mid) > rows {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Chain of an `(n+1) x n` lower-bidiagonal matrix with diagonal `d` and subdiagonal `e`.
pub fn lower_rect_chain(d: &[f64], e: &[f64]) -> Vec<f64> {
    debug_assert_eq!(d.len(), e.len());
    d.iter().zip(e).flat_map(|(a, b)| [a * a, b * b]).collect()
}

/// Chain of an `n x n` upper-bidiagonal matrix with diagonal `a` and superdiagonal `b`
/// (`b[0]` is ignored; `b[c]` sits in column `c`).
pub fn upper_square_chain(a: &[f64], b: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), b.len());
    let mut out = Vec::with_capacity(2 * a.len());
    for c in 0..a.len() {
        if c > 0 {
            out.push(b[c] * b[c]);
        }
        out.push(a[c] * a[c]);
    }
    out
}
