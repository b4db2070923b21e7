//! Symmetric banded matrices: positive-definiteness by Cholesky and the
//! smallest eigenvalue by bisection on that test.

#[derive(Debug, Clone)]
pub struct SymBand {
    n: usize,
    bw: usize,
    /// Row-major lower band: `data[i * (bw + 1) + (i - j)] = A[i][j]` for `i - bw <= j <= i`.
    data: Vec<f64>,
}

impl SymBand {
    pub fn zeros(n: usize, bw: usize) -> Self {
        SymBand {
            n,
            bw,
            data: vec![0.0; n * (bw + 1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn bandwidth(&self) -> usize {
        self.bw
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        assert!(
            i - j <= self.bw,
            "entry ({i}, {j}) outside band {}",
            self.bw
        );
        i * (self.bw + 1) + (i - j)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
        if hi - lo > self.bw {
            0.0
        } else {
            self.data[self.slot(i, j)]
        }
    }

    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let s = self.slot(i, j);
        self.data[s] += v;
    }

    /// Whether `A - shift I` admits a Cholesky factorisation.
    pub fn is_positive_definite(&self, shift: f64) -> bool {
        let (n, bw) = (self.n, self.bw);
        let w = bw + 1;
        let mut l = vec![0.0; n * w];
        for i in 0..n {
            let j_start = i.saturating_sub(bw);
            for j in j_start..=i {
                let mut s = self.data[i * w + (i - j)];
                if i == j {
                    s -= shift;
                }
                let k_start = j_start.max(j.saturating_sub(bw));
                for k in k_start..j {
                    s -= l[i * w + (i - k)] * l[j * w + (j - k)];
                }
                if i == j {
                    if s <= 0.0 || !s.is_finite() {
                        return false;
                    }
                    l[i * w] = s.sqrt();
                } else {
                    l[i * w + (i - j)] = s / l[j * w];
                }
            }
        }
        true
    }

    /// Upper bound on `λ_min`: Cholesky of `A - x I` fails at the returned `x`
    /// and succeeds slightly below it. Assumes `A` is positive semidefinite.
    pub fn min_eigenvalue(&self) -> f64 {
        let mut hi = (0..self.n)
            .map(|i| self.data[i * (self.bw + 1)])
            .fold(f64::INFINITY, f64::min);
        if !self.is_positive_definite(0.0) {
            return 0.0;
        }
        if self.is_positive_definite(hi) {
            return hi;
        }
        let mut lo = 0.0;
        let stop = 1e-13 * hi;
        while hi - lo > stop {
            let mid = 0.5 * (lo + hi);
            if self.is_positive_definite(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    }
}
