//! Real-time quantum-annealing integrator.
//!
//! Evolves the correlation and response kernels of the spherical mixed
//! p-spin model under Hamiltonian dynamics with time-dependent couplings
//! `s_J(t)` (potential) and `s_K(t)` (inverse kinetic coefficient),
//! using the exactly discretized equations with the three-point stencil
//!
//! ```text
//! (1/Δt²)[ s_K(t) C(t+Δt,t') - (s_K(t) + s_K(t-Δt)) C(t,t') + s_K(t-Δt) C(t-Δt,t') ]
//!   + z(t) C(t,t') + s_J(t) ∫_0^t dt'' s_J(t'') Im( f'[Q(t,t'')] Q(t',t'') ) = 0,
//! ```
//!
//! (and the R analog with the integral over [t', t]), where
//! `Q(t,t') ≡ C(t,t') - i R(t,t')/2` is materialized on the fly. The
//! imaginary part applies to the whole product, so the C-equation
//! integrand expands to `Im f'[Q(t,t'')] C(t',t'') - ½ Re f'[Q(t,t'')]
//! R(t',t'')` (the second term vanishes for t'' ≥ t' by causality); the
//! R-equation carries the real factor `Im f'[Q(t,t'')]` times `R(t'',t')`.
//!
//! The equal-time curvature `A(t)`, defined by
//! `C(t+Δt,t) = 1 - A(t)Δt²`, obeys the recursion
//!
//! ```text
//! A(t) = (s_K(t-Δt)²/s_K(t)²) A(t-Δt)
//!      - (s_J(t)Δt/s_K(t)) ∫_0^t dt'' s_J(t'') ∂_t Im f[Q(t,t'')],
//! ```
//!
//! with `∂_t` realized as a backward difference, and the multiplier is
//!
//! ```text
//! z(t) = 2 s_K(t) A(t-Δt)
//!      - s_J(t) ∫_0^t dt'' s_J(t'') Im( f'[Q(t,t'')] Q(t,t'') ).
//! ```
//!
//! Initial data (ground state of the decoupled constrained oscillator):
//! `z(0) = 1/(8 s_K(0))`, `A(0) = 1/(8 s_K(0)²)`, and the short-time
//! boundaries `C(t+Δt,t) = 1 - A(t)Δt²`, `R(t+Δt,t) = Δt/s_K(t)`.
//!
//! Energy density: `ε(t) = ∫_0^t dt'' s_J(t'') Im f[Q(t,t'')]`.
//!
//! For a linear anneal `s_K(τ)` diverges; update steps only ever read
//! `s_K` at times ≤ τ - Δt, and `z(τ)` / `A(τ)` are left absent (they
//! are not needed for `ε(τ)`).

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::MixtureSpec;
use crate::schedule::{Schedule, TimeGrid};
use crate::trace::SolverTrace;
use crate::two_time::TwoTimeField;

const PAR_ROW_THRESHOLD: usize = 384;

#[derive(Debug, Clone)]
pub struct KeldyshSolution {
    pub c: TwoTimeField,
    pub r: TwoTimeField,
    pub trace: SolverTrace,
}

pub struct KeldyshSolver {
    spec: MixtureSpec,
    grid: TimeGrid,
    sj: Vec<f64>,
    /// s_K(t_k); entry at k = n may be absent (divergent endpoint).
    sk: Vec<Option<f64>>,
    c: TwoTimeField,
    r: TwoTimeField,
    z: Vec<Option<f64>>,
    curvature: Vec<f64>,
    energy: Vec<f64>,
    resid: Vec<f64>,
    /// Im f[Q] along rows `row - 1` and `row`, reused by the backward
    /// difference in the curvature recursion.
    imf0_prev: Vec<f64>,
    imf0_cur: Vec<f64>,
    row: usize,
}

pub fn required_bytes(n_points: usize) -> u64 {
    2 * TwoTimeField::required_bytes(n_points)
}

impl KeldyshSolver {
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
        if grid.n_steps < 1 {
            return Err(Error::Config("grid must have at least one step".into()));
        }
        if sched.s_at(0.0) != 0.0 {
            return Err(Error::Config(
                "quantum solver requires s(0) = 0 (initial state is the decoupled ground state)"
                    .into(),
            ));
        }
        let n_points = grid.n_points();
        if let Some(cap) = memory_cap_bytes {
            let required = required_bytes(n_points);
            if required > cap {
                return Err(Error::MemoryCap { required, cap });
            }
        }
        let mut sj = Vec::with_capacity(n_points);
        let mut sk = Vec::with_capacity(n_points);
        for k in 0..n_points {
            let (s_j, s_k) = sched.quantum_coefficients(grid.t(k));
            // Update steps read s_K at times <= tau - dt only; a
            // divergence anywhere earlier makes the run infeasible.
            if k < grid.n_steps && s_k.finite().is_none() {
                return Err(Error::Config(format!(
                    "s(t) = 1 at t = {} < tau; quantum stiffness s_K diverges mid-run",
                    grid.t(k)
                )));
            }
            sj.push(s_j);
            sk.push(s_k.finite());
        }
        let dt = grid.dt;
        let sk0 = sk[0].expect("s(0) = 0 implies finite s_K(0)");
        let z0 = 1.0 / (8.0 * sk0);
        let a0 = 1.0 / (8.0 * sk0 * sk0);

        let mut c = TwoTimeField::zeros(n_points);
        let mut r = TwoTimeField::zeros(n_points);
        c.set(0, 0, 1.0);
        c.set(1, 0, 1.0 - a0 * dt * dt);
        c.set(1, 1, 1.0);
        r.set(1, 0, dt / sk0);

        let mut solver = Self {
            spec,
            grid,
            sj,
            sk,
            c,
            r,
            z: vec![None; n_points],
            curvature: vec![f64::NAN; n_points],
            energy: vec![0.0; n_points],
            resid: vec![0.0; n_points],
            imf0_prev: Vec::new(),
            imf0_cur: Vec::new(),
            row: 1,
        };
        solver.z[0] = Some(z0);
        solver.curvature[0] = a0;
        solver.imf0_prev = vec![0.0]; // Im f[Q(0,0)] = Im f[1] = 0
        solver.imf0_cur = (0..=1).map(|j| solver.im_f(1, j)).collect();
        solver.energy[1] = dt * solver.sj[0] * solver.imf0_cur[0];
        Ok(solver)
    }

    #[inline]
    fn q(&self, k: usize, j: usize) -> Complex64 {
        Complex64::new(self.c.get(k, j), -0.5 * self.r.get(k, j))
    }

    #[inline]
    fn im_f(&self, k: usize, j: usize) -> f64 {
        self.spec.eval(self.q(k, j), 0).im
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

    #[doc(hidden)]
    pub fn kernels_mut(&mut self) -> (&mut TwoTimeField, &mut TwoTimeField) {
        (&mut self.c, &mut self.r)
    }

    /// Advances the state by one step, filling row `t + Δt`.
    pub fn advance(&mut self) -> Result<()> {
        let k = self.row;
        assert!(k < self.grid.n_steps, "solver already at t = tau");
        let dt = self.grid.dt;
        let dt2 = dt * dt;
        let sj_k = self.sj[k];
        let sk_k = self.sk[k].expect("update steps only read finite s_K");
        let sk_prev = self.sk[k - 1].expect("update steps only read finite s_K");

        // Row-t complex factors, shared across all t'. Im f[Q(t,t'')] is
        // already cached in imf0_cur from the previous step.
        let mut imf1 = vec![0.0; k + 1]; // Im f'[Q(t,t'')]
        let mut ref1 = vec![0.0; k + 1]; // Re f'[Q(t,t'')]
        let mut imf1q = vec![0.0; k + 1]; // Im( f'[Q(t,t'')] Q(t,t'') )
        for j in 0..=k {
            let q = self.q(k, j);
            let f1 = self.spec.eval(q, 1);
            imf1[j] = f1.im;
            ref1[j] = f1.re;
            imf1q[j] = (f1 * q).im;
        }
        let imf0 = std::mem::take(&mut self.imf0_cur);
        debug_assert_eq!(imf0.len(), k + 1);

        let a_prev = self.curvature[k - 1];
        let mut zint = 0.0;
        let mut aint = 0.0;
        for j in 0..k {
            zint += self.sj[j] * imf1q[j];
            aint += self.sj[j] * (imf0[j] - self.imf0_prev[j]);
        }
        let z_k = 2.0 * sk_k * a_prev - sj_k * dt * zint;
        let a_k = (sk_prev * sk_prev) / (sk_k * sk_k) * a_prev - sj_k * dt / sk_k * aint;

        let update = |j0: usize| -> (f64, f64) {
            let crow_j0 = self.c.row(j0);
            let rrow_j0 = self.r.row(j0);
            let mut i_c = 0.0;
            // Im( f'[Q(t,t'')] Q(t',t'') ): the R(t',t'') part contributes
            // only for t'' < t'.
            for j in 0..j0 {
                i_c += self.sj[j] * (imf1[j] * crow_j0[j] - 0.5 * ref1[j] * rrow_j0[j]);
            }
            for j in j0..k {
                i_c += self.sj[j] * imf1[j] * self.c.get(j, j0);
            }
            let mut i_r = 0.0;
            for j in j0..k {
                i_r += self.sj[j] * imf1[j] * self.r.get(j, j0);
            }
            let c_mid = self.c.get(k, j0);
            let c_old = self.c.get(k - 1, j0);
            let r_mid = self.r.get(k, j0);
            let r_old = self.r.get(k - 1, j0);
            let c_new = ((sk_k + sk_prev) * c_mid - sk_prev * c_old
                - dt2 * (z_k * c_mid + sj_k * dt * i_c))
                / sk_k;
            let r_new = ((sk_k + sk_prev) * r_mid - sk_prev * r_old
                - dt2 * (z_k * r_mid + sj_k * dt * i_r))
                / sk_k;
            (c_new, r_new)
        };

        let new: Vec<(f64, f64)> = if k >= PAR_ROW_THRESHOLD {
            (0..k).into_par_iter().map(update).collect()
        } else {
            (0..k).map(update).collect()
        };

        {
            let row_c = self.c.row_mut(k + 1);
            for (j0, &(cv, _)) in new.iter().enumerate() {
                row_c[j0] = cv;
            }
            row_c[k] = 1.0 - a_k * dt2;
            row_c[k + 1] = 1.0;
        }
        {
            let row_r = self.r.row_mut(k + 1);
            for (j0, &(_, rv)) in new.iter().enumerate() {
                row_r[j0] = rv;
            }
            row_r[k] = dt / sk_k;
            row_r[k + 1] = 0.0;
        }

        if self.c.row(k + 1).iter().chain(self.r.row(k + 1)).any(|v| !v.is_finite()) {
            return Err(Error::BlowUp { t: self.grid.t(k + 1), dt });
        }

        // Constraint residual: the un-simplified (combined) multiplier
        // expression, which uses the freshly written row, must agree with
        // the zeroth-order z(t) to O(Δt).
        let den = sk_k * self.c.get(k + 1, k) + sk_k + sk_prev - sk_prev * self.c.get(k, k - 1);
        let mut comb_int = 0.0;
        for j in 0..k {
            let c_comb = sk_k * self.c.get(k + 1, j) + (sk_k + sk_prev) * self.c.get(k, j)
                - sk_prev * self.c.get(k - 1, j);
            let r_comb = sk_k * self.r.get(k + 1, j) + (sk_k + sk_prev) * self.r.get(k, j)
                - sk_prev * self.r.get(k - 1, j);
            comb_int += self.sj[j] * (imf1[j] * c_comb - 0.5 * ref1[j] * r_comb);
        }
        let num = 2.0 * sk_prev * (sk_k + sk_prev) * (1.0 - self.c.get(k, k - 1)) / dt2
            - sj_k * dt * comb_int;
        self.resid[k] = (num / den - z_k).abs();

        self.row = k + 1;
        self.z[k] = Some(z_k);
        self.curvature[k] = a_k;
        self.imf0_prev = imf0;
        self.imf0_cur = (0..=k + 1).map(|j| self.im_f(k + 1, j)).collect();
        let mut esum = 0.0;
        for j in 0..=k {
            esum += self.sj[j] * self.imf0_cur[j];
        }
        self.energy[k + 1] = dt * esum;
        Ok(())
    }

    /// Final-time multiplier and curvature, where `s_K(τ)` is finite.
    fn finalize(&mut self) {
        let n = self.grid.n_steps;
        debug_assert_eq!(self.row, n);
        let Some(sk_n) = self.sk[n] else { return };
        let dt = self.grid.dt;
        let mut zint = 0.0;
        let mut aint = 0.0;
        for j in 0..n {
            let q = self.q(n, j);
            let f1 = self.spec.eval(q, 1);
            zint += self.sj[j] * (f1 * q).im;
            aint += self.sj[j] * (self.imf0_cur[j] - self.imf0_prev[j]);
        }
        let a_prev = self.curvature[n - 1];
        let sk_prev = self.sk[n - 1].expect("penultimate s_K is finite");
        self.z[n] = Some(2.0 * sk_n * a_prev - self.sj[n] * dt * zint);
        self.curvature[n] =
            (sk_prev * sk_prev) / (sk_n * sk_n) * a_prev - self.sj[n] * dt / sk_n * aint;
    }

    pub fn trace(&self) -> SolverTrace {
        SolverTrace {
            times: (0..=self.row).map(|k| self.grid.t(k)).collect(),
            s: self.sj[..=self.row].to_vec(),
            z: self.z[..=self.row].to_vec(),
            energy: self.energy[..=self.row].to_vec(),
            constraint_residual: self.resid[..=self.row].to_vec(),
            curvature: Some(self.curvature[..=self.row].to_vec()),
        }
    }

    pub fn run(mut self) -> Result<KeldyshSolution> {
        while self.row < self.grid.n_steps {
            self.advance()?;
        }
        self.finalize();
        let trace = self.trace();
        Ok(KeldyshSolution { c: self.c, r: self.r, trace })
    }
}

/// One-shot solve over the full grid.
pub fn solve(
    spec: &MixtureSpec,
    sched: &Schedule,
    grid: &TimeGrid,
    memory_cap_bytes: Option<u64>,
) -> Result<KeldyshSolution> {
    KeldyshSolver::new(spec.clone(), *sched, *grid, memory_cap_bytes)?.run()
}
