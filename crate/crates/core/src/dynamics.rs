//! Reduced dynamics of the qubit pair.
//!
//! Every off-diagonal element ρᵢⱼ(t) = ψᵢψⱼ* fᵢⱼ(t) carries a dressing
//! factor that is a thermal average over the four bath sectors τ of the
//! initial Gibbs state,
//!
//! fᵢⱼ = Σ_τ w_τ exp(i θᵢⱼ,τ − Dᵢⱼ),  w_τ ∝ |ψ_τ|² e^{−βE_τ} e^{λ_τ},
//!
//! where θ is an integer-coefficient combination of (Φ₊, Φ₋, χ, J·t) and D is
//! one of D_flat, 2·D_plus, 2·D_minus. The same assembly serves the
//! continuum bath and the discrete-mode oracle.

use num_complex::Complex64 as C64;

use crate::error::{DecoError, Result};
use crate::exec::Execution;
use crate::kernels::{
    decay_kernel, gamma0_of_phi, gamma_saturation, ising_coupling, lambda_weight, phase_kernel, phi,
    KernelWeight, ModelParams, QuadratureConfig,
};
use crate::state::{concurrence, l1_coherence, Amplitudes, DensityMatrix4};

/// σᶻ eigenvalues (qubit 1, qubit 2) of |00⟩, |01⟩, |10⟩, |11⟩.
pub const SPINS: [(i8, i8); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];

/// Upper-triangle index pairs in the order φ, ζ, κ, κ̄, ζ̄, φ̄.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Tolerance of the coherence = concurrence check on GHZ-type states.
const GHZ_IDENTITY_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum EvolutionMode {
    /// Bath prepared by projecting the joint Gibbs state onto ψ.
    #[default]
    CorrelatedThermal,
    /// Bath in the ψ-independent thermal state of the ground sector |11⟩.
    UncorrelatedThermal,
}

/// Bath functionals that fully determine the dressing factors at one time.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct BathFunctionals {
    pub phi_plus: f64,
    pub phi_minus: f64,
    pub chi: f64,
    /// Accumulated bath-mediated σᶻσᶻ phase J·t.
    pub ising_phase: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub d_flat: f64,
    pub d_plus: f64,
    pub d_minus: f64,
}

impl BathFunctionals {
    fn phase_basis(&self) -> [f64; 4] {
        [self.phi_plus, self.phi_minus, self.chi, self.ising_phase]
    }
}

/// Dressing factors of the six upper-triangle elements.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoherenceFunctions {
    pub phi: C64,
    pub zeta: C64,
    pub kappa: C64,
    pub kappa_bar: C64,
    pub zeta_bar: C64,
    pub phi_bar: C64,
}

impl CoherenceFunctions {
    /// Values in [`PAIRS`] order.
    pub fn as_array(&self) -> [C64; 6] {
        [self.phi, self.zeta, self.kappa, self.kappa_bar, self.zeta_bar, self.phi_bar]
    }

    pub fn from_array(v: [C64; 6]) -> Self {
        Self {
            phi: v[0],
            zeta: v[1],
            kappa: v[2],
            kappa_bar: v[3],
            zeta_bar: v[4],
            phi_bar: v[5],
        }
    }

    /// Dressing of element (i, j), with fᵢⱼ = fⱼᵢ* and fᵢᵢ = 1.
    pub fn element(&self, i: usize, j: usize) -> C64 {
        if i == j {
            return C64::ONE;
        }
        let (lo, hi) = (i.min(j), i.max(j));
        let k = PAIRS.iter().position(|&p| p == (lo, hi)).expect("basis index out of range");
        let f = self.as_array()[k];
        if i < j {
            f
        } else {
            f.conj()
        }
    }
}

/// Coefficients of (Φ₊, Φ₋, χ, J·t) in the phase of element `(i, j)` for
/// bath sector `tau`.
pub fn phase_coefficients(i: usize, j: usize, tau: usize) -> [f64; 4] {
    let spin = |k: usize| {
        let (a, b) = SPINS[k];
        (f64::from(a), f64::from(b))
    };
    let (s1, s2) = spin(i);
    let (r1, r2) = spin(j);
    let (t1, t2) = spin(tau);
    let (x1, x2) = (s1 - t1, s2 - t2);
    let (y1, y2) = (r1 - t1, r2 - t2);
    let flat = y1 * y1 + y2 * y2 - x1 * x1 - x2 * x2;
    let cross = 2.0 * (y1 * y2 - x1 * x2);
    [
        (flat + cross) / 8.0,
        (flat - cross) / 8.0,
        -(y1 * x2 - y2 * x1) / 2.0,
        (s1 * s2 - r1 * r2) / 2.0,
    ]
}

/// Decay exponent of element `(i, j)`.
pub fn decay_exponent(i: usize, j: usize, f: &BathFunctionals) -> f64 {
    let (s1, s2) = SPINS[i];
    let (r1, r2) = SPINS[j];
    match (s1 != r1, s2 != r2) {
        (false, false) => 0.0,
        (true, false) | (false, true) => f.d_flat,
        (true, true) if s1 - r1 == s2 - r2 => 2.0 * f.d_plus,
        (true, true) => 2.0 * f.d_minus,
    }
}

/// ln of the unnormalized sector weights |ψ_τ|² e^{−βE_τ} e^{λ_τ}; −∞ for
/// empty sectors.
fn log_sector_weights(pops: &[f64; 4], beta_omega0: f64, f: &BathFunctionals) -> [f64; 4] {
    std::array::from_fn(|tau| {
        let (a, b) = SPINS[tau];
        let energy = 0.5 * beta_omega0 * f64::from(a + b);
        let lambda = if a == b { f.lambda_plus } else { f.lambda_minus };
        if pops[tau] > 0.0 {
            pops[tau].ln() - energy + lambda
        } else {
            f64::NEG_INFINITY
        }
    })
}

fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// Normalized sector weights for the given mode.
fn sector_weights(psi: &Amplitudes, beta_omega0: f64, f: &BathFunctionals, mode: EvolutionMode) -> [f64; 4] {
    match mode {
        EvolutionMode::UncorrelatedThermal => [0.0, 0.0, 0.0, 1.0],
        EvolutionMode::CorrelatedThermal => {
            let lw = log_sector_weights(&psi.populations(), beta_omega0, f);
            let lz = log_sum_exp(&lw);
            lw.map(|x| (x - lz).exp())
        }
    }
}

/// Assembles the six dressing factors from precomputed bath functionals.
pub fn assemble(psi: &Amplitudes, beta_omega0: f64, f: &BathFunctionals, mode: EvolutionMode) -> CoherenceFunctions {
    let weights = sector_weights(psi, beta_omega0, f, mode);
    let basis = f.phase_basis();
    CoherenceFunctions::from_array(PAIRS.map(|(i, j)| {
        let mut acc = C64::ZERO;
        for (tau, &w) in weights.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            let c = phase_coefficients(i, j, tau);
            let theta: f64 = c.iter().zip(&basis).map(|(c, b)| c * b).sum();
            acc += w * C64::from_polar(1.0, theta);
        }
        acc * (-decay_exponent(i, j, f)).exp()
    }))
}

/// ρᵢⱼ = ψᵢψⱼ* fᵢⱼ.
pub fn dressed_density(psi: &Amplitudes, cf: &CoherenceFunctions) -> DensityMatrix4 {
    let v = psi.as_array();
    DensityMatrix4::from_fn(|i, j| v[i] * v[j].conj() * cf.element(i, j))
}

/// Continuum bath with the time-independent pieces evaluated once.
#[derive(Clone, Copy, Debug)]
pub struct ContinuumBath {
    params: ModelParams,
    quad: QuadratureConfig,
    lambda_plus: f64,
    lambda_minus: f64,
    ising_rate: f64,
}

impl ContinuumBath {
    pub fn new(p: &ModelParams, q: &QuadratureConfig) -> Result<Self> {
        Ok(Self {
            params: *p,
            quad: *q,
            lambda_plus: lambda_weight(KernelWeight::Plus, p, q)?,
            lambda_minus: lambda_weight(KernelWeight::Minus, p, q)?,
            ising_rate: ising_coupling(p, q)?,
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn lambda_plus(&self) -> f64 {
        self.lambda_plus
    }

    pub fn lambda_minus(&self) -> f64 {
        self.lambda_minus
    }

    /// χ vanishes after the isotropic angular average.
    pub fn functionals(&self, t: f64) -> Result<BathFunctionals> {
        let (p, q) = (&self.params, &self.quad);
        Ok(BathFunctionals {
            phi_plus: phase_kernel(KernelWeight::Plus, t, p, q)?,
            phi_minus: phase_kernel(KernelWeight::Minus, t, p, q)?,
            chi: 0.0,
            ising_phase: self.ising_rate * t,
            lambda_plus: self.lambda_plus,
            lambda_minus: self.lambda_minus,
            d_flat: decay_kernel(KernelWeight::Flat, t, p, q)?,
            d_plus: decay_kernel(KernelWeight::Plus, t, p, q)?,
            d_minus: decay_kernel(KernelWeight::Minus, t, p, q)?,
        })
    }

    pub fn density_matrix(&self, t: f64, psi: &Amplitudes, mode: EvolutionMode) -> Result<DensityMatrix4> {
        let f = self.functionals(t)?;
        Ok(dressed_density(psi, &assemble(psi, self.params.beta_omega0(), &f, mode)))
    }
}

/// ln z′ with z′ = (|a|²e^{−βω₀} + |d|²e^{βω₀})e^{λ₊} + (|b|² + |c|²)e^{λ₋}.
pub fn ln_partition_zprime(psi: &Amplitudes, p: &ModelParams, q: &QuadratureConfig) -> Result<f64> {
    p.validate()?;
    let f = BathFunctionals {
        lambda_plus: lambda_weight(KernelWeight::Plus, p, q)?,
        lambda_minus: lambda_weight(KernelWeight::Minus, p, q)?,
        ..Default::default()
    };
    Ok(log_sum_exp(&log_sector_weights(&psi.populations(), p.beta_omega0(), &f)))
}

/// z′ itself; fails when it does not fit in an f64 (use [`ln_partition_zprime`]).
pub fn partition_zprime(psi: &Amplitudes, p: &ModelParams, q: &QuadratureConfig) -> Result<f64> {
    let ln_z = ln_partition_zprime(psi, p, q)?;
    let z = ln_z.exp();
    if z.is_finite() {
        Ok(z)
    } else {
        Err(DecoError::Numerical(format!("z' overflows: ln z' = {ln_z}")))
    }
}

/// Dressing factors for the correlated thermal preparation.
pub fn coherence_functions(t: f64, psi: &Amplitudes, p: &ModelParams, q: &QuadratureConfig) -> Result<CoherenceFunctions> {
    dressings(t, psi, p, q, EvolutionMode::CorrelatedThermal)
}

pub fn dressings(
    t: f64,
    psi: &Amplitudes,
    p: &ModelParams,
    q: &QuadratureConfig,
    mode: EvolutionMode,
) -> Result<CoherenceFunctions> {
    let bath = ContinuumBath::new(p, q)?;
    let f = bath.functionals(t)?;
    Ok(assemble(psi, p.beta_omega0(), &f, mode))
}

pub fn density_matrix(
    t: f64,
    psi: &Amplitudes,
    p: &ModelParams,
    q: &QuadratureConfig,
    mode: EvolutionMode,
) -> Result<DensityMatrix4> {
    ContinuumBath::new(p, q)?.density_matrix(t, psi, mode)
}

fn check_population(pvalue: f64) -> Result<()> {
    if (0.0..=1.0).contains(&pvalue) {
        Ok(())
    } else {
        Err(DecoError::InvalidParams(format!("population p = {pvalue} outside [0, 1]")))
    }
}

/// ½ ln((1−p)/p), the bias that an unequal superposition adds to βω₀.
fn population_bias(pvalue: f64) -> f64 {
    0.5 * ((1.0 - pvalue) / pvalue).ln()
}

/// Concurrence of √p|00⟩ + √(1−p)|11⟩ at time t (Bell state gives 1 at t = 0):
/// e^{−γ₀−2γ}·2√(p(1−p)), with γ = D\[Plus\] and γ₀ evaluated at the bias
/// βω₀ + ½ ln((1−p)/p).
pub fn closed_form_concurrence(t: f64, pvalue: f64, p: &ModelParams, q: &QuadratureConfig) -> Result<f64> {
    check_population(pvalue)?;
    if pvalue == 0.0 || pvalue == 1.0 {
        return Ok(0.0);
    }
    let big_phi = phi(t, p, q)?;
    let g = decay_kernel(KernelWeight::Plus, t, p, q)?;
    let g0 = gamma0_of_phi(big_phi, p.beta_omega0() + population_bias(pvalue));
    Ok((-g0 - 2.0 * g).exp() * 2.0 * (pvalue * (1.0 - pvalue)).sqrt())
}

/// Concurrence of √p|01⟩ + √(1−p)|10⟩: the single-excitation sector sees
/// Φ₋ and D\[Minus\] and no qubit-energy bias.
pub fn closed_form_concurrence_anti(t: f64, pvalue: f64, p: &ModelParams, q: &QuadratureConfig) -> Result<f64> {
    check_population(pvalue)?;
    if pvalue == 0.0 || pvalue == 1.0 {
        return Ok(0.0);
    }
    let big_phi = 2.0 * phase_kernel(KernelWeight::Minus, t, p, q)?;
    let g = decay_kernel(KernelWeight::Minus, t, p, q)?;
    let g0 = gamma0_of_phi(big_phi, population_bias(pvalue));
    Ok((-g0 - 2.0 * g).exp() * 2.0 * (pvalue * (1.0 - pvalue)).sqrt())
}

/// Late-time concurrence of the Bell state, e^{−2·D_sat\[Plus\]}.
pub fn plateau_concurrence(p: &ModelParams, q: &QuadratureConfig) -> Result<f64> {
    Ok((-2.0 * gamma_saturation(KernelWeight::Plus, p, q)?).exp())
}

/// Ratio of correlated to uncorrelated concurrence for the Bell state,
/// e^{−γ₀(t)}.
pub fn correlation_ratio(t: f64, p: &ModelParams, q: &QuadratureConfig) -> Result<f64> {
    let g0 = gamma0_of_phi(phi(t, p, q)?, p.beta_omega0());
    Ok((-g0).exp())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesRow {
    pub t: f64,
    pub gamma: f64,
    pub gamma0: f64,
    pub phi: f64,
    pub concurrence: f64,
    pub coherence: f64,
    pub dressings: CoherenceFunctions,
}

/// True for a|00⟩ + d|11⟩ and b|01⟩ + c|10⟩ states.
pub fn is_ghz_type(psi: &Amplitudes) -> bool {
    let z = psi.as_array().map(|x| x == C64::ZERO);
    (z[1] && z[2]) || (z[0] && z[3])
}

/// Time series of decoherence functions and entanglement measures.
///
/// For GHZ-type states every row is checked for coherence = concurrence.
pub fn series(
    psi: &Amplitudes,
    p: &ModelParams,
    q: &QuadratureConfig,
    mode: EvolutionMode,
    t_grid: &[f64],
    exec: Execution,
) -> Result<Vec<SeriesRow>> {
    check_grid(t_grid)?;
    let bath = ContinuumBath::new(p, q)?;
    let ghz = is_ghz_type(psi);
    exec.try_map(t_grid, |&t| {
        let f = bath.functionals(t)?;
        let cf = assemble(psi, p.beta_omega0(), &f, mode);
        let rho = dressed_density(psi, &cf);
        let c = concurrence(&rho)?;
        let n = l1_coherence(&rho)?;
        if ghz && (c - n).abs() > GHZ_IDENTITY_TOL {
            return Err(DecoError::Numerical(format!(
                "coherence {n} differs from concurrence {c} at t = {t}"
            )));
        }
        let big_phi = 2.0 * f.phi_plus;
        Ok(SeriesRow {
            t,
            gamma: f.d_plus,
            gamma0: gamma0_of_phi(big_phi, p.beta_omega0()),
            phi: big_phi,
            concurrence: c,
            coherence: n,
            dressings: cf,
        })
    })
}

pub fn check_grid(t_grid: &[f64]) -> Result<()> {
    let ok = t_grid.first().is_some_and(|&t| t >= 0.0)
        && t_grid.iter().all(|t| t.is_finite())
        && t_grid.windows(2).all(|w| w[0] < w[1]);
    if ok {
        Ok(())
    } else {
        Err(DecoError::InvalidParams(
            "time grid must be non-empty, finite, strictly increasing and start at t >= 0".into(),
        ))
    }
}

/// n points evenly spaced on [0, t_max].
pub fn uniform_grid(t_max: f64, n: usize) -> Vec<f64> {
    if n < 2 {
        return vec![0.0];
    }
    (0..n).map(|k| t_max * k as f64 / (n - 1) as f64).collect()
}
