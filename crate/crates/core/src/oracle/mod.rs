//! Finite-mode baths: exact discrete sums and a truncated-Fock brute force.

mod fock;
mod suite;

pub use fock::{fock_oracle, FockSystem};
pub use suite::{
    default_suite, orbit_displacement, orbit_indicator, random_amplitudes, random_bath, random_case, run_case, run_suite, suite, CaseReport, OracleCase,
    DEFAULT_CASES, DEFAULT_SEED, MAX_COUPLING, MAX_SECTOR_DIM, ORACLE_TIMES, SUITE_BETAS, SUITE_LAYOUT,
};

use num_complex::Complex64 as C64;

use crate::dynamics::{assemble, dressed_density, BathFunctionals, EvolutionMode};
use crate::error::{DecoError, Result};
use crate::state::{Amplitudes, DensityMatrix4};

pub const MAX_MODES: usize = 4;
pub const MIN_N_MAX: usize = 2;
/// Bound on the full qubit ⊗ Fock dimension 4·(n_max+1)^K.
pub const MAX_DIMENSION: usize = 16384;
/// Largest top-level population accepted by the Fock oracle.
pub const TRUNCATION_LIMIT: f64 = 1e-8;

/// One bosonic mode coupled to qubit i through g·e^{−i·phase_i}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiscreteMode {
    pub omega: f64,
    pub g: C64,
    pub phase1: f64,
    pub phase2: f64,
}

impl DiscreteMode {
    pub fn new(omega: f64, g: C64, phase1: f64, phase2: f64) -> Result<Self> {
        let m = Self {
            omega,
            g,
            phase1,
            phase2,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = self.g.re.is_finite() && self.g.im.is_finite() && self.phase1.is_finite() && self.phase2.is_finite();
        if self.omega > 0.0 && self.omega.is_finite() && finite {
            Ok(())
        } else {
            Err(DecoError::InvalidParams(format!("invalid mode {self:?}")))
        }
    }

    /// Δ = phase1 − phase2.
    pub fn delta(&self) -> f64 {
        self.phase1 - self.phase2
    }

    /// Coupling of the mode to the sector with σᶻ eigenvalues (s1, s2).
    pub fn sector_coupling(&self, s1: f64, s2: f64) -> C64 {
        self.g * (s1 * C64::from_polar(1.0, -self.phase1) + s2 * C64::from_polar(1.0, -self.phase2))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteBath {
    pub modes: Vec<DiscreteMode>,
    pub n_max: usize,
}

impl DiscreteBath {
    pub fn new(modes: Vec<DiscreteMode>, n_max: usize) -> Result<Self> {
        let bath = Self { modes, n_max };
        bath.validate()?;
        Ok(bath)
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.modes.len();
        if !(1..=MAX_MODES).contains(&k) {
            return Err(DecoError::InvalidParams(format!("bath needs 1..={MAX_MODES} modes, got {k}")));
        }
        if self.n_max < MIN_N_MAX {
            return Err(DecoError::InvalidParams(format!("n_max = {} below {MIN_N_MAX}", self.n_max)));
        }
        for m in &self.modes {
            m.validate()?;
        }
        let dim = self.dimension();
        if dim > MAX_DIMENSION {
            return Err(DecoError::DimensionTooLarge {
                dim,
                limit: MAX_DIMENSION,
            });
        }
        Ok(())
    }

    /// (n_max+1)^K, saturating.
    pub fn bath_dimension(&self) -> usize {
        (0..self.modes.len()).fold(1usize, |d, _| d.saturating_mul(self.n_max + 1))
    }

    /// 4·(n_max+1)^K, saturating.
    pub fn dimension(&self) -> usize {
        self.bath_dimension().saturating_mul(4)
    }
}

fn coth(x: f64) -> f64 {
    1.0 / x.tanh()
}

/// Exact finite sums for the bath functionals; no quadrature involved.
pub fn discrete_sums(bath: &DiscreteBath, t: f64, beta: f64) -> BathFunctionals {
    let mut f = BathFunctionals::default();
    for m in &bath.modes {
        let w = m.omega;
        let a = 4.0 * m.g.norm_sqr();
        let (sin_d, cos_d) = m.delta().sin_cos();
        let (sin_wt, cos_wt) = (w * t).sin_cos();
        let one_minus = 1.0 - cos_wt;
        f.phi_plus += a / (w * w) * sin_wt * (1.0 + cos_d);
        f.phi_minus += a / (w * w) * sin_wt * (1.0 - cos_d);
        f.chi += a / (w * w) * sin_d * one_minus;
        f.ising_phase += a * cos_d * t / w;
        f.lambda_plus += 0.5 * beta * a * (1.0 + cos_d) / w;
        f.lambda_minus += 0.5 * beta * a * (1.0 - cos_d) / w;
        let decay = a * one_minus / (w * w) * coth(0.5 * beta * w);
        f.d_flat += decay;
        f.d_plus += decay * (1.0 + cos_d);
        f.d_minus += decay * (1.0 - cos_d);
    }
    f
}

/// Reduced state for a correlated thermal preparation with a discrete bath.
pub fn discrete_density_matrix(bath: &DiscreteBath, t: f64, psi: &Amplitudes, beta: f64, omega0: f64) -> DensityMatrix4 {
    let f = discrete_sums(bath, t, beta);
    dressed_density(psi, &assemble(psi, beta * omega0, &f, EvolutionMode::CorrelatedThermal))
}

/// Largest entrywise deviation |aᵢⱼ − bᵢⱼ|.
pub fn compare(a: &DensityMatrix4, b: &DensityMatrix4) -> f64 {
    (a.matrix() - b.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// ln k! for k = 0..=n.
fn ln_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(acc);
    for k in 1..=n {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}

/// Generalized Laguerre polynomial L_n^{(a)}(x).
fn laguerre(n: usize, a: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + a - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + a - x) * cur - (kf + a) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// |⟨n|D(z)|m⟩|² for a displacement with |z|² = x, given ln k! up to max(n, m).
fn displaced_overlap_sqr(n: usize, m: usize, x: f64, ln_fact: &[f64]) -> f64 {
    if x == 0.0 {
        return if n == m { 1.0 } else { 0.0 };
    }
    let (lo, hi) = (n.min(m), n.max(m));
    let lag = laguerre(lo, (hi - lo) as f64, x);
    if lag == 0.0 {
        return 0.0;
    }
    let ln = ln_fact[lo] - ln_fact[hi] + (hi - lo) as f64 * x.ln() - x + 2.0 * lag.abs().ln();
    ln.exp()
}

/// Population of level `n` in a thermal state of frequency `omega` displaced
/// by `disp`.
pub(crate) fn displaced_thermal_population(n: usize, omega: f64, beta: f64, disp: f64) -> f64 {
    let bw = beta * omega;
    let norm = -(-bw).exp_m1();
    // thermal weights below e^{-700} do not contribute
    let m_max = ((700.0 / bw).ceil() as usize).min(200_000);
    let ln_fact = ln_factorials(m_max.max(n));
    let x = disp * disp;
    (0..=m_max)
        .map(|m| norm * (-bw * m as f64).exp() * displaced_overlap_sqr(n, m, x, &ln_fact))
        .sum()
}

/// Top-level population of the thermal state displaced by 2|g|/ω, maximized
/// over modes.
pub fn truncation_indicator(bath: &DiscreteBath, beta: f64) -> f64 {
    bath.modes
        .iter()
        .map(|m| displaced_thermal_population(bath.n_max, m.omega, beta, 2.0 * m.g.norm() / m.omega))
        .fold(0.0, f64::max)
}
