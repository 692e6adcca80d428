//! Per-time solver diagnostics shared by both integrators.

/// Diagnostics along the run: the Lagrange multiplier `z(t)`, the energy
/// density `ε(t)`, a constraint residual per time, and (quantum runs
/// only) the curvature `A(t)` defined by `C(t + Δt, t) = 1 - A(t) Δt²`.
///
/// `z` entries are `None` where the multiplier is not computed: for a
/// quantum anneal the final grid point has divergent `s_K(τ)`, so `z(τ)`
/// is absent (it is not needed to produce `ε(τ)`).
#[derive(Debug, Clone, PartialEq)]
pub struct SolverTrace {
    pub times: Vec<f64>,
    pub s: Vec<f64>,
    pub z: Vec<Option<f64>>,
    pub energy: Vec<f64>,
    pub constraint_residual: Vec<f64>,
    /// Curvature A(t); quantum solver only. Final entry may be NaN when
    /// s_K(τ) is divergent.
    pub curvature: Option<Vec<f64>>,
}

impl SolverTrace {
    pub fn final_energy(&self) -> f64 {
        *self.energy.last().expect("non-empty trace")
    }

    pub fn final_z(&self) -> Option<f64> {
        self.z.last().copied().flatten()
    }
}
