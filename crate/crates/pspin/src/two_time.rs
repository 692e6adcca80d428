//! Triangular storage for two-time kernels on the uniform grid.
//!
//! Entries are indexed by grid pairs `(k, k')` with `k >= k'`; row k is
//! stored contiguously so the hot integral loops stream over `k''` for a
//! fixed row. Memory is `(n+1)(n+2)/2` entries for a grid with `n` steps.

#[derive(Debug, Clone, PartialEq)]
pub struct TwoTimeField {
    n_points: usize,
    data: Vec<f64>,
}

impl TwoTimeField {
    pub fn zeros(n_points: usize) -> Self {
        Self { n_points, data: vec![0.0; n_points * (n_points + 1) / 2] }
    }

    /// Bytes needed for one field over `n_points` grid points.
    pub fn required_bytes(n_points: usize) -> u64 {
        (n_points as u64) * (n_points as u64 + 1) / 2 * 8
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    #[inline]
    fn offset(k: usize) -> usize {
        k * (k + 1) / 2
    }

    #[inline]
    pub fn get(&self, k: usize, kp: usize) -> f64 {
        debug_assert!(kp <= k && k < self.n_points);
        self.data[Self::offset(k) + kp]
    }

    /// Symmetric access: returns the entry at the ordered pair.
    #[inline]
    pub fn get_sym(&self, k: usize, kp: usize) -> f64 {
        if k >= kp {
            self.get(k, kp)
        } else {
            self.get(kp, k)
        }
    }

    #[inline]
    pub fn set(&mut self, k: usize, kp: usize, v: f64) {
        debug_assert!(kp <= k && k < self.n_points);
        self.data[Self::offset(k) + kp] = v;
    }

    /// Row `k` as a slice over `k' = 0..=k`.
    #[inline]
    pub fn row(&self, k: usize) -> &[f64] {
        debug_assert!(k < self.n_points);
        &self.data[Self::offset(k)..Self::offset(k) + k + 1]
    }

    #[inline]
    pub fn row_mut(&mut self, k: usize) -> &mut [f64] {
        debug_assert!(k < self.n_points);
        &mut self.data[Self::offset(k)..Self::offset(k) + k + 1]
    }
}
