//! Symmetric tridiagonal eigenvalues by Sturm-sequence bisection.

/// Symmetric tridiagonal matrix stored as its diagonal and off-diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

const PIVOT_GUARD: f64 = 1e-300;

impl SymTridiagonal {
    /// # Panics
    ///
    /// If `off.len() + 1 != diag.len()` for a non-empty diagonal.
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert!(
            diag.is_empty() && off.is_empty() || off.len() + 1 == diag.len(),
            "off-diagonal must be one shorter than the diagonal"
        );
        SymTridiagonal { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    /// Number of eigenvalues strictly below `x` (negative LDLᵀ pivots).
    pub fn sturm_count(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = 1.0;
        for i in 0..self.diag.len() {
            let coupling = if i == 0 { 0.0 } else { self.off[i - 1] * self.off[i - 1] / q };
            q = self.diag[i] - x - coupling;
            if q.abs() < PIVOT_GUARD {
                q = -PIVOT_GUARD;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// The `k`-th smallest eigenvalue (0-based).
    pub fn eigenvalue(&self, k: usize) -> Option<f64> {
        if k >= self.len() {
            return None;
        }
        let (lo, hi) = self.gershgorin();
        let pad = 1e-12 * (lo.abs() + hi.abs()).max(1.0);
        Some(self.eigenvalue_in(k, lo - pad, hi + pad))
    }

    /// Bisection for the `k`-th eigenvalue inside a bracket known to hold it.
    pub fn eigenvalue_in(&self, k: usize, mut lo: f64, mut hi: f64) -> f64 {
        loop {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                return mid;
            }
            if self.sturm_count(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        (0..self.len()).filter_map(|k| self.eigenvalue(k)).collect()
    }

    /// Unit eigenvector for eigenvalue `mu` by inverse iteration.
    pub fn eigenvector(&self, mu: f64) -> Vec<f64> {
        let n = self.len();
        let shift = mu + 1e-13 * mu.abs().max(1.0);
        let mut x = vec![1.0; n];
        for _ in 0..3 {
            x = self.solve_shifted(shift, &x);
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            x.iter_mut().for_each(|v| *v /= norm);
        }
        x
    }

    /// Solves `(T − shift·I) y = b` with the Thomas algorithm.
    fn solve_shifted(&self, shift: f64, b: &[f64]) -> Vec<f64> {
        let n = self.len();
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        let guard = |v: f64| if v.abs() < PIVOT_GUARD { PIVOT_GUARD } else { v };
        let mut denom = guard(self.diag[0] - shift);
        if n > 1 {
            c[0] = self.off[0] / denom;
        }
        d[0] = b[0] / denom;
        for i in 1..n {
            denom = guard(self.diag[i] - shift - self.off[i - 1] * c[i - 1]);
            if i + 1 < n {
                c[i] = self.off[i] / denom;
            }
            d[i] = (b[i] - self.off[i - 1] * d[i - 1]) / denom;
        }
        for i in (0..n - 1).rev() {
            d[i] -= c[i] * d[i + 1];
        }
        d
    }
}
