//! Acceptance suite: one test per release criterion, each printing a
//! single PASS/FAIL line (visible with `--nocapture` or on failure).
//!
//! Criterion 5 runs a reduced runtime sweep (tau <= 100) by default and
//! checks the exponent ordering; set PSPIN_ACCEPTANCE_FULL=1 to extend
//! the sweeps to tau = 200 and enforce the absolute exponent windows.
//!
//! All tolerances are pinned as constants below.

use pspin::config::{GridConfig, RunConfig, SolverKind};
use pspin::oracle::OracleParams;
use pspin::schedule::ScheduleKind;
use pspin::{analysis, driver, keldysh, langevin, MixtureSpec, Schedule, TimeGrid};

const THRESHOLD_TOL_PURE: f64 = 1e-12;
const THRESHOLD_TOL_MIXED: f64 = 1e-4;
const MIXED_THRESHOLD_REF: f64 = -1.91420;

const FREE_NOISE_TAU: f64 = 5.0;
const FREE_NOISE_DTS: [f64; 2] = [0.01, 0.005];

const SA_SWEEP_DT: f64 = 0.1;
const SA_SWEEP_TAUS: [f64; 5] = [12.5, 25.0, 50.0, 100.0, 200.0];
const SA_EPS_INF_REF: f64 = -1.154700;
const SA_EPS_INF_TOL: f64 = 5e-3;
const SA_ALPHA_WINDOW: (f64, f64) = (0.56, 0.76);

const QA_SWEEP_DT: f64 = 0.04;
// tau = 12.5 is off the dt = 0.04 grid; that one point runs at dt = 0.025.
const QA_SHORT_TAU: f64 = 12.5;
const QA_SHORT_TAU_DT: f64 = 0.025;
const QA_SWEEP_TAUS: [f64; 4] = [25.0, 50.0, 100.0, 200.0];
const QA_EPS_INF_REL_TOL: f64 = 0.02;
// The asymptotic exponent is ~0.51; at this desk-scale tau ceiling the
// sweep is still pre-asymptotic and fits a slightly steeper decay.
const QA_ALPHA_WINDOW: (f64, f64) = (0.40, 0.68);

const MIXED_DT: f64 = 0.02;
const MIXED_TAUS_REDUCED: [f64; 4] = [12.5, 25.0, 50.0, 100.0];
const MIXED_TAUS_FULL: [f64; 5] = [12.5, 25.0, 50.0, 100.0, 200.0];
// Asymptotic exponents are ~0.54 (QA), ~0.28 (SA-anneal), ~0.30
// (two-stage); the classical sweeps are still pre-asymptotic at the
// tau = 200 ceiling (measured 0.43 / 0.39 at dt = 0.02), so their
// ceilings allow for the desk-scale steepening.
const MIXED_QA_ALPHA_WINDOW: (f64, f64) = (0.44, 0.64);
const MIXED_SA_ALPHA_WINDOW: (f64, f64) = (0.20, 0.46);
const MIXED_TWO_STAGE_ALPHA_WINDOW: (f64, f64) = (0.22, 0.44);
const MIXED_TWO_STAGE_S0: f64 = 0.6;
const SUB_THRESHOLD_MARGIN: f64 = 0.005;

const TWO_STAGE_TAU: f64 = 100.0;
const TWO_STAGE_S0_GRID: [f64; 3] = [0.5, 0.6, 0.7];
const TWO_STAGE_GAIN: f64 = 0.01;

const ORACLE_ABS_TOL: f64 = 0.02;

fn report(criterion: u32, description: &str, ok: bool, details: &str) {
    println!(
        "criterion {criterion} ({description}): {} [{details}]",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion} failed: {details}");
}

fn sched(kind: ScheduleKind, tau: f64) -> Schedule {
    Schedule { kind, tau, switch_time: None }
}

fn langevin_eps(spec: &MixtureSpec, kind: ScheduleKind, tau: f64, dt: f64) -> f64 {
    langevin::solve(spec, &sched(kind, tau), &TimeGrid::new(dt, tau).unwrap(), None)
        .unwrap()
        .trace
        .final_energy()
}

fn keldysh_eps(spec: &MixtureSpec, tau: f64, dt: f64) -> f64 {
    keldysh::solve(
        spec,
        &sched(ScheduleKind::LinearAnneal, tau),
        &TimeGrid::new(dt, tau).unwrap(),
        None,
    )
    .unwrap()
    .trace
    .final_energy()
}

fn fit_sweep(
    spec: &MixtureSpec,
    taus: &[f64],
    mut eps_at: impl FnMut(&MixtureSpec, f64) -> f64,
) -> analysis::PowerLawFit {
    let points: Vec<(f64, f64)> = taus.iter().map(|&t| (t, eps_at(spec, t))).collect();
    analysis::fit_power_law(&points, 4).unwrap()
}

#[test]
fn criterion_1_threshold_energies() {
    let mut max_pure_err: f64 = 0.0;
    for p in 2..=20 {
        let spec = MixtureSpec::pure(p).unwrap();
        let expected = -(2.0 * (p as f64 - 1.0) / p as f64).sqrt();
        max_pure_err = max_pure_err.max((spec.threshold_energy() - expected).abs());
    }
    let mixed = MixtureSpec::new(vec![(3, 1.0), (14, 1.0)]).unwrap();
    let mixed_err = (mixed.threshold_energy() - MIXED_THRESHOLD_REF).abs();
    let ok = max_pure_err <= THRESHOLD_TOL_PURE && mixed_err <= THRESHOLD_TOL_MIXED;
    report(
        1,
        "analytic threshold energies",
        ok,
        &format!("pure err {max_pure_err:.2e}, mixed err {mixed_err:.2e}"),
    );
}

#[test]
fn criterion_2_free_noise_closed_form() {
    let spec = MixtureSpec::pure(3).unwrap();
    let mut ok = true;
    let mut details = String::new();
    for &dt in &FREE_NOISE_DTS {
        let sol = langevin::solve(
            &spec,
            &sched(ScheduleKind::Constant { s: 0.0 }, FREE_NOISE_TAU),
            &TimeGrid::new(dt, FREE_NOISE_TAU).unwrap(),
            None,
        )
        .unwrap();
        let mut max_c_err: f64 = 0.0;
        for (k, &t) in sol.trace.times.iter().enumerate() {
            max_c_err = max_c_err.max((sol.c.get(k, 0) - (-t).exp()).abs());
            ok &= sol.trace.energy[k] == 0.0;
        }
        ok &= max_c_err <= 3.0 * dt;
        details.push_str(&format!("dt {dt}: max|C - e^-t| = {max_c_err:.2e}; "));
    }
    report(2, "s = 0 free-noise closed forms", ok, details.trim_end());
}

#[test]
fn criterion_3_classical_quench_scaling() {
    let spec = MixtureSpec::pure(3).unwrap();
    let fit = fit_sweep(&spec, &SA_SWEEP_TAUS, |s, tau| {
        langevin_eps(s, ScheduleKind::NaiveQuench, tau, SA_SWEEP_DT)
    });
    let eps_err = (fit.epsilon_inf - SA_EPS_INF_REF).abs();
    let ok = eps_err <= SA_EPS_INF_TOL
        && (SA_ALPHA_WINDOW.0..=SA_ALPHA_WINDOW.1).contains(&fit.alpha);
    report(
        3,
        "classical quench power law",
        ok,
        &format!("eps_inf = {:.6}, alpha = {:.4}", fit.epsilon_inf, fit.alpha),
    );
}

#[test]
fn criterion_4_quantum_anneal_scaling() {
    let spec = MixtureSpec::pure(3).unwrap();
    let mut points = vec![(QA_SHORT_TAU, keldysh_eps(&spec, QA_SHORT_TAU, QA_SHORT_TAU_DT))];
    points.extend(QA_SWEEP_TAUS.iter().map(|&tau| (tau, keldysh_eps(&spec, tau, QA_SWEEP_DT))));
    let fit = analysis::fit_power_law(&points, 4).unwrap();
    let rel_err = (fit.epsilon_inf - SA_EPS_INF_REF).abs() / SA_EPS_INF_REF.abs();
    let ok = rel_err <= QA_EPS_INF_REL_TOL
        && (QA_ALPHA_WINDOW.0..=QA_ALPHA_WINDOW.1).contains(&fit.alpha);
    report(
        4,
        "quantum anneal power law",
        ok,
        &format!("eps_inf = {:.6}, alpha = {:.4}", fit.epsilon_inf, fit.alpha),
    );
}

#[test]
fn criterion_5_mixed_model_exponent_ordering() {
    let full = std::env::var("PSPIN_ACCEPTANCE_FULL").map_or(false, |v| v == "1");
    let taus: &[f64] = if full { &MIXED_TAUS_FULL } else { &MIXED_TAUS_REDUCED };
    let spec = MixtureSpec::new(vec![(3, 1.0), (14, 1.0)]).unwrap();
    let eps_th = spec.threshold_energy();

    let qa = fit_sweep(&spec, taus, |s, tau| keldysh_eps(s, tau, MIXED_DT));
    let sa = fit_sweep(&spec, taus, |s, tau| {
        langevin_eps(s, ScheduleKind::LinearAnneal, tau, MIXED_DT)
    });
    let two = fit_sweep(&spec, taus, |s, tau| {
        langevin_eps(s, ScheduleKind::TwoStage { s0: MIXED_TWO_STAGE_S0 }, tau, MIXED_DT)
    });

    let mut ok = qa.alpha > sa.alpha && qa.alpha > two.alpha;
    ok &= sa.epsilon_inf < eps_th - SUB_THRESHOLD_MARGIN;
    ok &= two.epsilon_inf < eps_th - SUB_THRESHOLD_MARGIN;
    if full {
        ok &= (MIXED_QA_ALPHA_WINDOW.0..=MIXED_QA_ALPHA_WINDOW.1).contains(&qa.alpha);
        ok &= (MIXED_SA_ALPHA_WINDOW.0..=MIXED_SA_ALPHA_WINDOW.1).contains(&sa.alpha);
        ok &= (MIXED_TWO_STAGE_ALPHA_WINDOW.0..=MIXED_TWO_STAGE_ALPHA_WINDOW.1)
            .contains(&two.alpha);
    }
    report(
        5,
        if full { "mixed-model exponents (full)" } else { "mixed-model exponents (reduced)" },
        ok,
        &format!(
            "alpha QA = {:.4}, SA-anneal = {:.4}, two-stage = {:.4}; eps_inf SA = {:.5}, two-stage = {:.5}, eps_th = {eps_th:.5}",
            qa.alpha, sa.alpha, two.alpha, sa.epsilon_inf, two.epsilon_inf
        ),
    );
}

#[test]
fn criterion_6_two_stage_beats_naive_quench() {
    let spec = MixtureSpec::new(vec![(3, 1.0), (14, 1.0)]).unwrap();
    let eps_quench = langevin_eps(&spec, ScheduleKind::NaiveQuench, TWO_STAGE_TAU, MIXED_DT);
    let mut best = f64::INFINITY;
    let mut best_s0 = f64::NAN;
    for &s0 in &TWO_STAGE_S0_GRID {
        let eps = langevin_eps(&spec, ScheduleKind::TwoStage { s0 }, TWO_STAGE_TAU, MIXED_DT);
        if eps < best {
            best = eps;
            best_s0 = s0;
        }
    }
    let ok = best < eps_quench - TWO_STAGE_GAIN;
    report(
        6,
        "two-stage protocol improvement",
        ok,
        &format!("quench {eps_quench:.5}, best s0 = {best_s0} at {best:.5}"),
    );
}

#[test]
fn criterion_7_finite_n_oracle_agreement() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = RunConfig {
        model: MixtureSpec::pure(3).unwrap(),
        schedule: sched(ScheduleKind::NaiveQuench, 5.0),
        grid: GridConfig { dt: 0.02 },
        solver: SolverKind::Langevin,
        sweep: None,
        oracle: Some(OracleParams {
            n_spins: 128,
            n_samples: 100,
            base_seed: 20260826,
            dt: 0.01,
            t_max: 5.0,
        }),
        output_dir: dir.path().to_path_buf(),
        memory_cap_bytes: 8 * 1024 * 1024 * 1024,
        threads: None,
    };
    let rep = driver::cmd_oracle(&cfg).unwrap();
    let ok = rep.within_tolerance && rep.tolerance >= ORACLE_ABS_TOL;
    report(
        7,
        "finite-N oracle vs mean-field solver",
        ok,
        &format!(
            "max dev {:.4} vs tolerance {:.4} over {} samples",
            rep.max_abs_energy_deviation, rep.tolerance, rep.n_samples
        ),
    );
}

#[test]
fn criterion_8_structural_properties() {
    let spec = MixtureSpec::pure(3).unwrap();
    let mut ok = true;
    let mut details = String::new();

    // Diagonal pinning and causality under future-row poisoning.
    {
        let grid = TimeGrid::new(0.1, 2.0).unwrap();
        let quench = sched(ScheduleKind::NaiveQuench, 2.0);
        let mut a = langevin::LangevinSolver::new(spec.clone(), quench, grid, None).unwrap();
        let mut b = langevin::LangevinSolver::new(spec.clone(), quench, grid, None).unwrap();
        for _ in 0..8 {
            a.advance().unwrap();
            b.advance().unwrap();
        }
        {
            let (c, r) = b.kernels_mut();
            for k in 10..=15 {
                for kp in 0..=k {
                    c.set(k, kp, 1e6);
                    r.set(k, kp, -1e6);
                }
            }
        }
        while a.current_row() < 20 {
            a.advance().unwrap();
            b.advance().unwrap();
        }
        let mut causal = true;
        let mut pinned = true;
        for k in 0..=20 {
            pinned &= a.c().get(k, k) == 1.0 && a.r().get(k, k) == 0.0;
            for kp in 0..=k {
                causal &= a.c().get(k, kp) == b.c().get(k, kp);
                causal &= a.r().get(k, kp) == b.r().get(k, kp);
            }
        }
        ok &= causal && pinned;
        details.push_str(&format!("causality {causal}, pinning {pinned}; "));
    }

    // Equilibrium FDT at constant s = 0.3.
    {
        let s0 = 0.3;
        let dt = 0.05;
        let sol = langevin::solve(
            &spec,
            &sched(ScheduleKind::Constant { s: s0 }, 26.0),
            &TimeGrid::new(dt, 26.0).unwrap(),
            None,
        )
        .unwrap();
        let kw = (20.0 / dt).round() as usize;
        let mut max_dev: f64 = 0.0;
        let mut lag = 0.5;
        while lag <= 5.0 + 1e-9 {
            let k = kw + (lag / dt).round() as usize;
            let dc = (sol.c.get(k, kw + 1) - sol.c.get(k, kw)) / dt;
            // Unit-kick response: s R = (1/T) dC with T = (1-s)/s, so
            // R = dC / (1-s).
            max_dev = max_dev.max((sol.r.get(k, kw) - dc / (1.0 - s0)).abs());
            lag += 0.5;
        }
        ok &= max_dev <= 0.02;
        details.push_str(&format!("FDT dev {max_dev:.4}; "));
    }

    // Free-field time-translation invariance of the quantum solver.
    {
        let sol = keldysh::solve(
            &spec,
            &sched(ScheduleKind::Constant { s: 0.0 }, 5.0),
            &TimeGrid::new(0.01, 5.0).unwrap(),
            None,
        )
        .unwrap();
        let mut tti_dev: f64 = 0.0;
        for &(lag, shift) in &[(10usize, 50usize), (100, 200), (250, 100)] {
            tti_dev = tti_dev.max((sol.c.get(lag + shift, shift) - sol.c.get(lag, 0)).abs());
        }
        ok &= tti_dev <= 1e-6;
        details.push_str(&format!("TTI dev {tti_dev:.2e}; "));
    }

    // Finite-N gradient against central differences.
    {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(3);
        let n = 16;
        let sample = pspin::oracle::DisorderSample::draw(&spec, n, &mut rng).unwrap();
        let mut sigma: Vec<f64> = (0..n).map(|i| (i as f64 * 1.3).cos()).collect();
        pspin::oracle::project_to_sphere(&mut sigma);
        let mut grad = vec![0.0; n];
        sample.gradient(&sigma, &mut grad);
        let h = 1e-6;
        let mut grad_dev: f64 = 0.0;
        for i in 0..n {
            let mut plus = sigma.clone();
            let mut minus = sigma.clone();
            plus[i] += h;
            minus[i] -= h;
            let fd = (sample.hamiltonian(&plus) - sample.hamiltonian(&minus)) / (2.0 * h);
            grad_dev = grad_dev.max((grad[i] - fd).abs() / (1.0 + grad[i].abs()));
        }
        ok &= grad_dev <= 1e-6;
        details.push_str(&format!("grad FD dev {grad_dev:.2e}; "));
    }

    // First-order step-size convergence for both solvers.
    {
        let tau = 25.0;
        let l: Vec<f64> = [0.2, 0.1, 0.05]
            .iter()
            .map(|&dt| langevin_eps(&spec, ScheduleKind::NaiveQuench, tau, dt))
            .collect();
        let k: Vec<f64> = [0.2, 0.1, 0.05].iter().map(|&dt| keldysh_eps(&spec, tau, dt)).collect();
        let rl = (l[0] - l[1]).abs() / (l[1] - l[2]).abs();
        let rk = (k[0] - k[1]).abs() / (k[1] - k[2]).abs();
        ok &= (1.5..=3.0).contains(&rl) && (1.5..=3.0).contains(&rk);
        details.push_str(&format!("halving ratios {rl:.2}/{rk:.2}; "));
    }

    // Bitwise reproducibility across worker counts.
    {
        let grid = TimeGrid::new(0.1, 50.0).unwrap();
        let quench = sched(ScheduleKind::NaiveQuench, 50.0);
        let run_with = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| langevin::solve(&spec, &quench, &grid, None).unwrap())
        };
        let one = run_with(1);
        let four = run_with(4);
        let same = one.c == four.c && one.r == four.r && one.trace == four.trace;
        ok &= same;
        details.push_str(&format!("bitwise thread-invariance {same}"));
    }

    report(8, "structural property suite", ok, &details);
}
