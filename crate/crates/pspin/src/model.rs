//! Mixture polynomial `f[Q] = Σ_p a_p Q^p` and the analytic threshold energy.
//!
//! Every dynamical equation depends on the model only through `f` and its
//! first two derivatives, so this module is the single place where the
//! model enters the solvers.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sparse mixture polynomial: degree -> weight pairs, sorted by degree.
///
/// Invariants enforced at construction: every degree >= 2, every weight
/// >= 0, at least one weight > 0, no duplicate degrees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u32, f64)>", into = "Vec<(u32, f64)>")]
pub struct MixtureSpec {
    terms: Vec<(u32, f64)>,
}

impl TryFrom<Vec<(u32, f64)>> for MixtureSpec {
    type Error = Error;
    fn try_from(pairs: Vec<(u32, f64)>) -> Result<Self> {
        MixtureSpec::new(pairs)
    }
}

impl From<MixtureSpec> for Vec<(u32, f64)> {
    fn from(spec: MixtureSpec) -> Self {
        spec.terms
    }
}

impl MixtureSpec {
    pub fn new(pairs: impl IntoIterator<Item = (u32, f64)>) -> Result<Self> {
        let mut terms: Vec<(u32, f64)> = pairs.into_iter().collect();
        terms.sort_by_key(|&(p, _)| p);
        if terms.is_empty() {
            return Err(Error::Config("mixture must have at least one term".into()));
        }
        for w in terms.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Config(format!("duplicate degree {} in mixture", w[0].0)));
            }
        }
        for &(p, a) in &terms {
            if p < 2 {
                return Err(Error::Config(format!("degree {p} < 2 not allowed")));
            }
            if !(a >= 0.0) || !a.is_finite() {
                return Err(Error::Config(format!("weight a_{p} = {a} must be finite and >= 0")));
            }
        }
        if !terms.iter().any(|&(_, a)| a > 0.0) {
            return Err(Error::Config("at least one mixture weight must be > 0".into()));
        }
        Ok(Self { terms })
    }

    /// Pure p-spin model, `f[Q] = Q^p`.
    pub fn pure(p: u32) -> Result<Self> {
        Self::new([(p, 1.0)])
    }

    pub fn terms(&self) -> &[(u32, f64)] {
        &self.terms
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.last().map(|&(p, _)| p).unwrap_or(0)
    }

    /// Evaluates `f`, `f'` or `f''` at a complex argument by a Horner
    /// recurrence over descending degree. For purely real arguments the
    /// imaginary part of the result is exactly zero (all intermediate
    /// imaginary parts stay 0.0).
    pub fn eval(&self, q: Complex64, derivative_order: u8) -> Complex64 {
        assert!(derivative_order <= 2, "derivative_order must be in {{0, 1, 2}}");
        // Dense coefficient vector of the requested derivative, highest
        // degree first. Max degree ~20, so the dense form costs nothing.
        let top = self.max_degree() as i64 - derivative_order as i64;
        if top < 0 {
            return Complex64::new(0.0, 0.0);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for deg in (0..=top).rev() {
            acc *= q;
            acc += Complex64::new(self.dense_coeff(deg as u32, derivative_order), 0.0);
        }
        acc
    }

    /// Real-argument evaluation; exact real arithmetic.
    pub fn eval_real(&self, q: f64, derivative_order: u8) -> f64 {
        self.eval(Complex64::new(q, 0.0), derivative_order).re
    }

    fn dense_coeff(&self, deg: u32, order: u8) -> f64 {
        let p = deg + order as u32;
        match self.terms.binary_search_by_key(&p, |&(d, _)| d) {
            Ok(i) => {
                let a = self.terms[i].1;
                match order {
                    0 => a,
                    1 => p as f64 * a,
                    _ => (p * (p - 1)) as f64 * a,
                }
            }
            Err(_) => 0.0,
        }
    }

    /// Threshold energy density of the mixed model,
    /// `ε_th = -(f[1](f''[1] - f'[1]) + f'[1]²) / (f'[1] √(2 f''[1]))`.
    ///
    /// For a pure model `f = Q^p` this reduces to `-√(2(p-1)/p)`.
    pub fn threshold_energy(&self) -> f64 {
        let f0 = self.eval_real(1.0, 0);
        let f1 = self.eval_real(1.0, 1);
        let f2 = self.eval_real(1.0, 2);
        -(f0 * (f2 - f1) + f1 * f1) / (f1 * (2.0 * f2).sqrt())
    }
}
