//! Finite-N Langevin Monte Carlo, used to validate the mean-field
//! solver at small N and short times.
//!
//! Integrates `∂_t σ_j = -s(t) ∂H_0/∂σ_j + √(1-s(t)) ξ_j` by
//! Euler-Maruyama, enforcing the spherical constraint by exact rescaling
//! to radius √N after every step (equivalent to the explicit Lagrange
//! multiplier term at the order of the stepper). Degrees are restricted
//! to p ∈ {2, 3}; the couplings of higher degrees are dense tensors with
//! C(N, p) entries and are infeasible to materialize.
//!
//! Each (disorder, noise) sample owns an independent deterministic
//! random stream derived from the base seed, and aggregation is an
//! ordered serial reduction, so runs are reproducible for a fixed seed
//! regardless of worker count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::MixtureSpec;
use crate::schedule::Schedule;

/// Gaussian couplings over strictly increasing index tuples, one block
/// per active degree. Variance per coupling: p!/(2 N^{p-1}).
pub struct DisorderSample {
    pub n_spins: usize,
    pairs: Vec<(u32, u32, f64)>,
    triples: Vec<(u32, u32, u32, f64)>,
    sqrt_a2: f64,
    sqrt_a3: f64,
}

impl DisorderSample {
    pub fn draw(spec: &MixtureSpec, n_spins: usize, rng: &mut impl Rng) -> Result<Self> {
        let mut sample = DisorderSample {
            n_spins,
            pairs: Vec::new(),
            triples: Vec::new(),
            sqrt_a2: 0.0,
            sqrt_a3: 0.0,
        };
        let n = n_spins as f64;
        for &(p, a) in spec.terms() {
            match p {
                2 => {
                    sample.sqrt_a2 = a.sqrt();
                    let sd = (2.0 / (2.0 * n)).sqrt(); // sqrt(p!/2N^{p-1})
                    for i in 0..n_spins as u32 {
                        for j in (i + 1)..n_spins as u32 {
                            let g: f64 = rng.sample(StandardNormal);
                            sample.pairs.push((i, j, sd * g));
                        }
                    }
                }
                3 => {
                    sample.sqrt_a3 = a.sqrt();
                    let sd = (6.0 / (2.0 * n * n)).sqrt();
                    for i in 0..n_spins as u32 {
                        for j in (i + 1)..n_spins as u32 {
                            for k in (j + 1)..n_spins as u32 {
                                let g: f64 = rng.sample(StandardNormal);
                                sample.triples.push((i, j, k, sd * g));
                            }
                        }
                    }
                }
                _ => {
                    return Err(Error::Config(format!(
                        "oracle mode supports degrees 2 and 3 only, got p = {p}"
                    )))
                }
            }
        }
        Ok(sample)
    }

    /// Energy density H_0(σ)/N by direct tuple summation.
    pub fn energy_density(&self, sigma: &[f64]) -> f64 {
        self.hamiltonian(sigma) / self.n_spins as f64
    }

    pub fn hamiltonian(&self, sigma: &[f64]) -> f64 {
        let mut h = 0.0;
        let mut h2 = 0.0;
        for &(i, j, jc) in &self.pairs {
            h2 += jc * sigma[i as usize] * sigma[j as usize];
        }
        h += self.sqrt_a2 * h2;
        let mut h3 = 0.0;
        for &(i, j, k, jc) in &self.triples {
            h3 += jc * sigma[i as usize] * sigma[j as usize] * sigma[k as usize];
        }
        h += self.sqrt_a3 * h3;
        h
    }

    /// Gradient ∂H_0/∂σ, accumulating each tuple into its member indices.
    pub fn gradient(&self, sigma: &[f64], grad: &mut [f64]) {
        grad.fill(0.0);
        for &(i, j, jc) in &self.pairs {
            let (i, j) = (i as usize, j as usize);
            let w = self.sqrt_a2 * jc;
            grad[i] += w * sigma[j];
            grad[j] += w * sigma[i];
        }
        for &(i, j, k, jc) in &self.triples {
            let (i, j, k) = (i as usize, j as usize, k as usize);
            let w = self.sqrt_a3 * jc;
            grad[i] += w * sigma[j] * sigma[k];
            grad[j] += w * sigma[i] * sigma[k];
            grad[k] += w * sigma[i] * sigma[j];
        }
    }
}

/// Projects onto the sphere of radius √N.
pub fn project_to_sphere(sigma: &mut [f64]) {
    let n = sigma.len() as f64;
    let norm2: f64 = sigma.iter().map(|x| x * x).sum();
    let scale = (n / norm2).sqrt();
    for x in sigma {
        *x *= scale;
    }
}

/// One Euler-Maruyama step followed by exact spherical projection.
pub fn step(
    sigma: &mut [f64],
    grad_buf: &mut [f64],
    sample: &DisorderSample,
    s: f64,
    dt: f64,
    rng: &mut impl Rng,
) {
    sample.gradient(sigma, grad_buf);
    let noise_amp = (2.0 * (1.0 - s) * dt).sqrt();
    for (x, g) in sigma.iter_mut().zip(grad_buf.iter()) {
        let xi: f64 = rng.sample(StandardNormal);
        *x += -s * dt * g + noise_amp * xi;
    }
    project_to_sphere(sigma);
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize, PartialEq)]
pub struct OracleParams {
    pub n_spins: usize,
    pub n_samples: usize,
    pub base_seed: u64,
    pub dt: f64,
    pub t_max: f64,
}

/// Sample mean and stderr of ε(t) and C(t,0) across independent
/// (disorder, noise) samples, on the grid t_k = k·dt, k = 0..=n.
#[derive(Debug, Clone)]
pub struct OracleCurves {
    pub times: Vec<f64>,
    pub energy_mean: Vec<f64>,
    pub energy_stderr: Vec<f64>,
    pub c_t0_mean: Vec<f64>,
    pub c_t0_stderr: Vec<f64>,
    pub n_samples: usize,
}

fn sample_seed(base_seed: u64, k: usize) -> u64 {
    // splitmix64 of the sample index, xored into the base seed
    let mut x = (k as u64).wrapping_add(0x9E3779B97F4A7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D049BB133111EB);
    base_seed ^ (x ^ (x >> 31))
}

/// Trajectory of one (disorder, noise) sample: per-grid-time energy
/// density and overlap with the initial configuration.
pub fn run_sample(
    spec: &MixtureSpec,
    sched: &Schedule,
    params: &OracleParams,
    seed: u64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let n_steps = (params.t_max / params.dt).round() as usize;
    let n = params.n_spins;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let sample = DisorderSample::draw(spec, n, &mut rng)?;

    // Uniform random point on the sphere.
    let mut sigma: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
    project_to_sphere(&mut sigma);
    let sigma0 = sigma.clone();

    let mut grad = vec![0.0; n];
    let mut energy = Vec::with_capacity(n_steps + 1);
    let mut c_t0 = Vec::with_capacity(n_steps + 1);
    energy.push(sample.energy_density(&sigma));
    c_t0.push(1.0);
    for k in 0..n_steps {
        let s = sched.s_at(k as f64 * params.dt);
        step(&mut sigma, &mut grad, &sample, s, params.dt, &mut rng);
        energy.push(sample.energy_density(&sigma));
        let overlap: f64 =
            sigma.iter().zip(&sigma0).map(|(a, b)| a * b).sum::<f64>() / n as f64;
        c_t0.push(overlap);
    }
    Ok((energy, c_t0))
}

/// Mean and stderr columns from per-sample curves, reduced in sample
/// order.
pub fn aggregate(curves: &[(Vec<f64>, Vec<f64>)], dt: f64) -> OracleCurves {
    let n_samples = curves.len();
    let n_points = curves[0].0.len();
    let mut out = OracleCurves {
        times: (0..n_points).map(|k| k as f64 * dt).collect(),
        energy_mean: vec![0.0; n_points],
        energy_stderr: vec![0.0; n_points],
        c_t0_mean: vec![0.0; n_points],
        c_t0_stderr: vec![0.0; n_points],
        n_samples,
    };
    for t in 0..n_points {
        let (mut se, mut sc) = (0.0, 0.0);
        for (e, c) in curves {
            se += e[t];
            sc += c[t];
        }
        let me = se / n_samples as f64;
        let mc = sc / n_samples as f64;
        let (mut ve, mut vc) = (0.0, 0.0);
        for (e, c) in curves {
            ve += (e[t] - me) * (e[t] - me);
            vc += (c[t] - mc) * (c[t] - mc);
        }
        let denom = (n_samples.max(2) - 1) as f64 * n_samples as f64;
        out.energy_mean[t] = me;
        out.c_t0_mean[t] = mc;
        out.energy_stderr[t] = (ve / denom).sqrt();
        out.c_t0_stderr[t] = (vc / denom).sqrt();
    }
    out
}

/// Runs `n_samples` independent samples (parallel across samples) and
/// aggregates. Deterministic for a fixed base seed.
pub fn run(spec: &MixtureSpec, sched: &Schedule, params: &OracleParams) -> Result<OracleCurves> {
    if params.n_samples < 2 {
        return Err(Error::Contract("oracle requires n_samples >= 2".into()));
    }
    if !(params.dt > 0.0 && params.t_max > params.dt) {
        return Err(Error::Config("oracle requires 0 < dt < t_max".into()));
    }
    let curves: Vec<(Vec<f64>, Vec<f64>)> = (0..params.n_samples)
        .into_par_iter()
        .map(|k| run_sample(spec, sched, params, sample_seed(params.base_seed, k)))
        .collect::<Result<_>>()?;
    Ok(aggregate(&curves, params.dt))
}
