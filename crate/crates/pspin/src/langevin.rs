//! Mean-field Langevin (simulated annealing) integrator.
//!
//! Integrates the closed two-time equations for the spherical mixed
//! p-spin model,
//!
//! ```text
//! ∂_t C(t,t') = -z(t) C(t,t')
//!             + (s(t)/2) ∫_0^t  dt'' s(t'') f''[C(t,t'')] C(t'',t') R(t,t'')
//!             + (s(t)/2) ∫_0^t' dt'' s(t'') f'[C(t,t'')] R(t',t''),
//! ∂_t R(t,t') = -z(t) R(t,t')
//!             + (s(t)/2) ∫_t'^t dt'' s(t'') f''[C(t,t'')] R(t,t'') R(t'',t'),
//! ```
//!
//! with the spherical multiplier
//!
//! ```text
//! z(t) = (s(t)/2) ∫_0^t dt'' s(t'') { f''[C(t,t'')] C(t,t'') + f'[C(t,t'')] } R(t,t'')
//!      + 1 - s(t),
//! ```
//!
//! and energy density `ε(t) = -(1/2) ∫_0^t dt'' s(t'') f'[C(t,t'')] R(t,t'')`.
//!
//! Discretization: forward Euler in t, left-endpoint rectangle sums for
//! every memory integral (the right endpoint would multiply R(t,t) = 0).
//! Boundary values after each step: C(t,t) = 1, R(t,t) = 0 and the
//! response kick R(t + Δt, t) = 1.
//!
//! Within one step the per-t' updates are independent; they run
//! data-parallel over t' with serial ascending-t'' inner sums, so results
//! are bitwise independent of the worker count.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::MixtureSpec;
use crate::schedule::{Schedule, TimeGrid};
use crate::trace::SolverTrace;
use crate::two_time::TwoTimeField;

/// Rows below this size are updated serially; parallel dispatch overhead
/// dominates otherwise.
const PAR_ROW_THRESHOLD: usize = 384;

#[derive(Debug, Clone)]
pub struct LangevinSolution {
    pub c: TwoTimeField,
    pub r: TwoTimeField,
    pub trace: SolverTrace,
}

/// Step-wise solver state. `advance` produces one new grid row; `run`
/// drives it to `t = τ` and returns the solution.
pub struct LangevinSolver {
    spec: MixtureSpec,
    grid: TimeGrid,
    s_arr: Vec<f64>,
    c: TwoTimeField,
    r: TwoTimeField,
    z: Vec<f64>,
    energy: Vec<f64>,
    resid: Vec<f64>,
    /// Index of the last completed row.
    row: usize,
}

/// Memory estimate for a Langevin run on `n_points` grid points.
pub fn required_bytes(n_points: usize) -> u64 {
    2 * TwoTimeField::required_bytes(n_points)
}

impl LangevinSolver {
    pub fn new(
        spec: MixtureSpec,
        sched: Schedule,
        grid: TimeGrid,
        memory_cap_bytes: Option<u64>,
    ) -> Result<Self> {
        sched.validate()?;
        let tau = grid.n_steps as f64 * grid.dt;
        if (tau - sched.tau).abs() > 1e-9 * sched.tau.max(1.0) {
            return Err(Error::Config(format!(
                "grid covers [0, {tau}] but schedule.tau = {}",
                sched.tau
            )));
        }
        let n_points = grid.n_points();
        if let Some(cap) = memory_cap_bytes {
            let required = required_bytes(n_points);
            if required > cap {
                return Err(Error::MemoryCap { required, cap });
            }
        }
        let s_arr: Vec<f64> = (0..n_points).map(|k| sched.s_at(grid.t(k))).collect();
        let mut c = TwoTimeField::zeros(n_points);
        let r = TwoTimeField::zeros(n_points);
        c.set(0, 0, 1.0);
        let mut solver = Self {
            spec,
            grid,
            s_arr,
            c,
            r,
            z: Vec::with_capacity(n_points),
            energy: Vec::with_capacity(n_points),
            resid: Vec::with_capacity(n_points),
            row: 0,
        };
        let (z0, e0, res0) = solver.row_diagnostics(0);
        solver.z.push(z0);
        solver.energy.push(e0);
        solver.resid.push(res0);
        Ok(solver)
    }

    pub fn current_row(&self) -> usize {
        self.row
    }

    pub fn c(&self) -> &TwoTimeField {
        &self.c
    }

    pub fn r(&self) -> &TwoTimeField {
        &self.r
    }

    /// Mutable kernel access; exists for causality (taint) testing.
    #[doc(hidden)]
    pub fn kernels_mut(&mut self) -> (&mut TwoTimeField, &mut TwoTimeField) {
        (&mut self.c, &mut self.r)
    }

    /// z(t), ε(t) and the quadrature residual for completed row `k`.
    ///
    /// The residual is the difference between the left-rectangle z(t)
    /// used by the update and a trapezoid-rule evaluation of the same
    /// integral; it vanishes as O(Δt) on smooth kernels.
    fn row_diagnostics(&self, k: usize) -> (f64, f64, f64) {
        let crow = self.c.row(k);
        let rrow = self.r.row(k);
        let sk = self.s_arr[k];
        let dt = self.grid.dt;
        let mut zsum = 0.0; // f''·C·R + f'·R integrand
        let mut esum = 0.0; // f'·R integrand
        for j in 0..k {
            let f1 = self.spec.eval_real(crow[j], 1);
            let f2 = self.spec.eval_real(crow[j], 2);
            let g = self.s_arr[j] * (f2 * crow[j] + f1) * rrow[j];
            zsum += g;
            esum += self.s_arr[j] * f1 * rrow[j];
        }
        let z = 0.5 * sk * dt * zsum + 1.0 - sk;
        // Trapezoid variant: half-weight at j = 0; the j = k endpoint
        // carries R(t, t) = 0 and contributes nothing either way.
        let ztrap = if k > 0 {
            let f1 = self.spec.eval_real(crow[0], 1);
            let f2 = self.spec.eval_real(crow[0], 2);
            let g0 = self.s_arr[0] * (f2 * crow[0] + f1) * rrow[0];
            0.5 * sk * dt * (zsum - 0.5 * g0) + 1.0 - sk
        } else {
            z
        };
        let energy = -0.5 * dt * esum;
        (z, energy, (ztrap - z).abs())
    }

    /// Advances the state by one step, filling row `t + Δt`.
    pub fn advance(&mut self) -> Result<()> {
        let k = self.row;
        assert!(k < self.grid.n_steps, "solver already at t = tau");
        let dt = self.grid.dt;
        let sk = self.s_arr[k];
        let zk = self.z[k];

        // Row-t integrand factors, shared across all t'.
        let crow = self.c.row(k).to_vec();
        let rrow = self.r.row(k).to_vec();
        let mut av = vec![0.0; k + 1]; // s'' f''[C(t,t'')] R(t,t'')
        let mut bv = vec![0.0; k + 1]; // s'' f'[C(t,t'')]
        for j in 0..=k {
            av[j] = self.s_arr[j] * self.spec.eval_real(crow[j], 2) * rrow[j];
            bv[j] = self.s_arr[j] * self.spec.eval_real(crow[j], 1);
        }

        let update = |j0: usize| -> (f64, f64) {
            // ∫_0^t s'' f'' C(t'',t') R(t,t''): split at t'' = t' so the
            // early part streams over row t' of C.
            let crow_j0 = self.c.row(j0);
            let rrow_j0 = self.r.row(j0);
            let mut sum1 = 0.0;
            for j in 0..j0.min(k) {
                sum1 += av[j] * crow_j0[j];
            }
            for j in j0..k {
                sum1 += av[j] * self.c.get(j, j0);
            }
            // ∫_0^t' s'' f'[C(t,t'')] R(t',t'')
            let mut sum2 = 0.0;
            for j in 0..j0.min(k) {
                sum2 += bv[j] * rrow_j0[j];
            }
            // ∫_t'^t s'' f''[C(t,t'')] R(t,t'') R(t'',t')
            let mut sum3 = 0.0;
            for j in j0..k {
                sum3 += av[j] * self.r.get(j, j0);
            }
            let rhs_c = -zk * crow[j0] + 0.5 * sk * dt * (sum1 + sum2);
            let rhs_r = -zk * rrow[j0] + 0.5 * sk * dt * sum3;
            (crow[j0] + dt * rhs_c, rrow[j0] + dt * rhs_r)
        };

        let new: Vec<(f64, f64)> = if k + 1 >= PAR_ROW_THRESHOLD {
            (0..=k).into_par_iter().map(update).collect()
        } else {
            (0..=k).map(update).collect()
        };

        {
            let row_c = self.c.row_mut(k + 1);
            for (j0, &(cv, _)) in new.iter().enumerate() {
                row_c[j0] = cv;
            }
            row_c[k + 1] = 1.0;
        }
        {
            let row_r = self.r.row_mut(k + 1);
            for (j0, &(_, rv)) in new.iter().enumerate() {
                row_r[j0] = rv;
            }
            row_r[k] = 1.0; // response kick
            row_r[k + 1] = 0.0;
        }

        if self.c.row(k + 1).iter().chain(self.r.row(k + 1)).any(|v| !v.is_finite()) {
            return Err(Error::BlowUp { t: self.grid.t(k + 1), dt });
        }

        self.row = k + 1;
        let (z, e, res) = self.row_diagnostics(k + 1);
        self.z.push(z);
        self.energy.push(e);
        self.resid.push(res);
        Ok(())
    }

    pub fn trace(&self) -> SolverTrace {
        SolverTrace {
            times: (0..=self.row).map(|k| self.grid.t(k)).collect(),
            s: self.s_arr[..=self.row].to_vec(),
            z: self.z.iter().map(|&v| Some(v)).collect(),
            energy: self.energy.clone(),
            constraint_residual: self.resid.clone(),
            curvature: None,
        }
    }

    pub fn run(mut self) -> Result<LangevinSolution> {
        while self.row < self.grid.n_steps {
            self.advance()?;
        }
        let trace = self.trace();
        Ok(LangevinSolution { c: self.c, r: self.r, trace })
    }
}

/// One-shot solve over the full grid.
pub fn solve(
    spec: &MixtureSpec,
    sched: &Schedule,
    grid: &TimeGrid,
    memory_cap_bytes: Option<u64>,
) -> Result<LangevinSolution> {
    LangevinSolver::new(spec.clone(), *sched, *grid, memory_cap_bytes)?.run()
}
