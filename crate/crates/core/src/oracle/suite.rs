//! Seeded random baths for oracle comparisons.

use std::f64::consts::TAU;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    compare, discrete_density_matrix, displaced_thermal_population, truncation_indicator, DiscreteBath, DiscreteMode,
    FockSystem, TRUNCATION_LIMIT,
};
use crate::dynamics::SPINS;
use crate::error::{DecoError, Result};
use crate::exec::Execution;
use crate::state::Amplitudes;

pub const ORACLE_TIMES: [f64; 4] = [0.5, 1.0, 3.0, 5.0];
pub const SUITE_BETAS: [f64; 3] = [0.5, 2.0, 10.0];
/// (K, β) pattern of generated suites. A two-mode bath at β = 0.5 needs more
/// than 15 levels per mode, so it only appears with one mode.
pub const SUITE_LAYOUT: [(usize, f64); 5] = [(1, 0.5), (1, 2.0), (2, 2.0), (1, 10.0), (2, 10.0)];
pub const MAX_COUPLING: f64 = 0.25;
/// Bath blocks above this size are redrawn to keep a suite run short.
pub const MAX_SECTOR_DIM: usize = 256;
const MIN_LEVELS: usize = 6;
const LEVEL_MARGIN: usize = 2;
pub const DEFAULT_SEED: u64 = 20_240_611;
pub const DEFAULT_CASES: usize = 32;
const MAX_DRAWS: usize = 1_000;

#[derive(Clone, Debug, PartialEq)]
pub struct OracleCase {
    pub bath: DiscreteBath,
    pub psi: Amplitudes,
    pub beta: f64,
    pub omega0: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseReport {
    pub indicator: f64,
    /// (t, max entrywise deviation) per time.
    pub deviations: Vec<(f64, f64)>,
}

impl CaseReport {
    pub fn max_deviation(&self) -> f64 {
        self.deviations.iter().map(|&(_, d)| d).fold(0.0, f64::max)
    }
}

/// Largest distance from the origin reached by a coherent state that starts
/// at the equilibrium of sector τ and rotates about the equilibrium of
/// sector σ: max over (σ, τ) of (|G_σ| + |G_σ − G_τ|)/ω.
pub fn orbit_displacement(mode: &DiscreteMode) -> f64 {
    let g: Vec<C64> = SPINS
        .iter()
        .map(|&(a, b)| mode.sector_coupling(f64::from(a), f64::from(b)))
        .collect();
    let mut d = 0.0f64;
    for gs in &g {
        for gt in &g {
            d = d.max(gs.norm() + (gs - gt).norm());
        }
    }
    d / mode.omega
}

/// Top-level population of the thermal state displaced by the orbit
/// displacement, maximized over modes. Bounds the truncation error of the
/// evolution itself, not only of the initial state.
pub fn orbit_indicator(bath: &DiscreteBath, beta: f64) -> f64 {
    bath.modes
        .iter()
        .map(|m| displaced_thermal_population(bath.n_max, m.omega, beta, orbit_displacement(m)))
        .fold(0.0, f64::max)
}

/// Smallest n_max (at least 6) for which both indicators are below the
/// limit, plus a margin of two levels; `None` once n_max would exceed `cap`.
fn choose_n_max(modes: &[DiscreteMode], beta: f64, cap: usize) -> Option<usize> {
    let top = cap.checked_sub(LEVEL_MARGIN).filter(|&n| n >= MIN_LEVELS)?;
    let fits = |n: usize| {
        let bath = DiscreteBath {
            modes: modes.to_vec(),
            n_max: n,
        };
        truncation_indicator(&bath, beta) < TRUNCATION_LIMIT && orbit_indicator(&bath, beta) < TRUNCATION_LIMIT
    };
    // reject hopeless draws with a single evaluation
    if !fits(top) {
        return None;
    }
    (MIN_LEVELS..=top).find(|&n| fits(n)).map(|n| n + LEVEL_MARGIN)
}

/// Largest n_max with (n_max+1)^k ≤ MAX_SECTOR_DIM.
fn level_cap(k: usize) -> usize {
    let mut n = 0;
    while (n + 2usize).pow(k as u32) <= MAX_SECTOR_DIM {
        n += 1;
    }
    n
}

/// K random modes with ω ∈ [0.5, 2], |g| ≤ 0.25 and random phases, truncated
/// just above the indicator limit. Draws needing blocks larger than
/// [`MAX_SECTOR_DIM`] are rejected; fails after `MAX_DRAWS` rejections.
pub fn random_bath<R: Rng>(rng: &mut R, k: usize, beta: f64) -> Result<DiscreteBath> {
    for _ in 0..MAX_DRAWS {
        let modes: Vec<DiscreteMode> = (0..k)
            .map(|_| DiscreteMode {
                omega: rng.random_range(0.5..=2.0),
                g: C64::from_polar(rng.random_range(0.0..=MAX_COUPLING), rng.random_range(0.0..TAU)),
                phase1: rng.random_range(0.0..TAU),
                phase2: rng.random_range(0.0..TAU),
            })
            .collect();
        if let Some(n_max) = choose_n_max(&modes, beta, level_cap(k)) {
            return Ok(DiscreteBath { modes, n_max });
        }
    }
    Err(DecoError::InvalidParams(format!(
        "no {k}-mode bath at beta = {beta} fits {MAX_SECTOR_DIM} states per sector"
    )))
}

pub fn random_amplitudes<R: Rng>(rng: &mut R) -> Amplitudes {
    loop {
        let mut z = || C64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0));
        if let Ok(psi) = Amplitudes::normalized(z(), z(), z(), z()) {
            return psi;
        }
    }
}

pub fn random_case<R: Rng>(rng: &mut R, k: usize, beta: f64) -> Result<OracleCase> {
    Ok(OracleCase {
        bath: random_bath(rng, k, beta)?,
        psi: random_amplitudes(rng),
        beta,
        omega0: 1.0,
    })
}

/// The bundled suite with a fixed seed.
pub fn default_suite() -> Vec<OracleCase> {
    suite(DEFAULT_SEED, DEFAULT_CASES)
}

/// `count` cases cycling through [`SUITE_LAYOUT`].
pub fn suite(seed: u64, count: usize) -> Vec<OracleCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let (k, beta) = SUITE_LAYOUT[i % SUITE_LAYOUT.len()];
            random_case(&mut rng, k, beta).expect("suite layout only lists feasible (K, beta) pairs")
        })
        .collect()
}

/// Compares the discrete-sum state with the Fock brute force at each time.
pub fn run_case(case: &OracleCase, times: &[f64]) -> Result<CaseReport> {
    let sys = FockSystem::new(&case.bath, &case.psi, case.beta, case.omega0)?;
    let deviations = times
        .iter()
        .map(|&t| {
            let analytic = discrete_density_matrix(&case.bath, t, &case.psi, case.beta, case.omega0);
            (t, compare(&analytic, &sys.density_matrix(t)))
        })
        .collect();
    Ok(CaseReport {
        indicator: truncation_indicator(&case.bath, case.beta),
        deviations,
    })
}

/// Runs every case, in parallel when requested.
pub fn run_suite(cases: &[OracleCase], times: &[f64], exec: Execution) -> Result<Vec<CaseReport>> {
    exec.try_map(cases, |c| run_case(c, times))
}
