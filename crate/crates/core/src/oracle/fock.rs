//! Exact diagonalization in the truncated Fock space.
//!
//! The Hamiltonian commutes with both σᶻ operators, so it is block diagonal
//! in the four qubit sectors. Each block is the bath Hamiltonian
//! Σₖ ωₖ bₖ†bₖ + Gₖ bₖ + Gₖ* bₖ† plus the constant qubit energy; the constant
//! only enters the Gibbs weights, since it drops out of the interaction-picture
//! coherences.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;

use super::{truncation_indicator, DiscreteBath, TRUNCATION_LIMIT};
use crate::dynamics::SPINS;
use crate::error::{DecoError, Result};
use crate::state::{Amplitudes, DensityMatrix4};

struct Sector {
    energies: Vec<f64>,
    vectors: DMatrix<C64>,
}

fn sector_hamiltonian(bath: &DiscreteBath, s1: f64, s2: f64) -> DMatrix<C64> {
    let levels = bath.n_max + 1;
    let k = bath.modes.len();
    let dim = bath.bath_dimension();
    let strides: Vec<usize> = (0..k).map(|m| levels.pow((k - 1 - m) as u32)).collect();
    let couplings: Vec<C64> = bath.modes.iter().map(|m| m.sector_coupling(s1, s2)).collect();
    let mut h = DMatrix::<C64>::zeros(dim, dim);
    for idx in 0..dim {
        for (m, mode) in bath.modes.iter().enumerate() {
            let n = (idx / strides[m]) % levels;
            h[(idx, idx)] += mode.omega * n as f64;
            if n > 0 {
                // ⟨n−1| G b |n⟩ = G √n
                let lower = idx - strides[m];
                let amp = (n as f64).sqrt();
                h[(lower, idx)] += couplings[m] * amp;
                h[(idx, lower)] += couplings[m].conj() * amp;
            }
        }
    }
    h
}

/// Diagonalized bath blocks and the ψ-conditioned initial bath state, ready
/// to be evaluated at any time.
pub struct FockSystem {
    psi: Amplitudes,
    /// For each upper-triangle pair (σ, σ'): the energies of σ and σ',
    /// R = V_σ† ρ_B V_σ' and M = V_σ'† V_σ.
    pairs: Vec<PairData>,
}

struct PairData {
    row: usize,
    col: usize,
    e_row: Vec<f64>,
    e_col: Vec<f64>,
    r: DMatrix<C64>,
    m: DMatrix<C64>,
}

impl FockSystem {
    pub fn new(bath: &DiscreteBath, psi: &Amplitudes, beta: f64, omega0: f64) -> Result<Self> {
        bath.validate()?;
        if !(beta > 0.0 && beta.is_finite() && omega0.is_finite()) {
            return Err(DecoError::InvalidParams(format!("beta = {beta}, omega0 = {omega0}")));
        }
        let indicator = truncation_indicator(bath, beta);
        if !(indicator < TRUNCATION_LIMIT) {
            return Err(DecoError::Truncation {
                indicator,
                limit: TRUNCATION_LIMIT,
            });
        }
        let sectors: Vec<Sector> = SPINS
            .iter()
            .map(|&(a, b)| {
                let eig = SymmetricEigen::new(sector_hamiltonian(bath, f64::from(a), f64::from(b)));
                Sector {
                    energies: eig.eigenvalues.iter().copied().collect(),
                    vectors: eig.eigenvectors,
                }
            })
            .collect();
        let rho_b = conditioned_bath_state(&sectors, psi, beta, omega0);
        let mut pairs = Vec::with_capacity(6);
        for row in 0..4 {
            for col in row + 1..4 {
                let (vr, vc) = (&sectors[row].vectors, &sectors[col].vectors);
                pairs.push(PairData {
                    row,
                    col,
                    e_row: sectors[row].energies.clone(),
                    e_col: sectors[col].energies.clone(),
                    r: vr.adjoint() * &rho_b * vc,
                    m: vc.adjoint() * vr,
                });
            }
        }
        Ok(Self { psi: *psi, pairs })
    }

    /// Interaction-picture reduced state at time t.
    pub fn density_matrix(&self, t: f64) -> DensityMatrix4 {
        let v = self.psi.as_array();
        let mut rho = nalgebra::Matrix4::<C64>::from_fn(|i, j| if i == j { v[i] * v[i].conj() } else { C64::ZERO });
        for p in &self.pairs {
            // Tr[e^{−iE_σ t} R e^{iE_σ' t} M]
            let ur: Vec<C64> = p.e_row.iter().map(|e| C64::from_polar(1.0, -e * t)).collect();
            let uc: Vec<C64> = p.e_col.iter().map(|e| C64::from_polar(1.0, e * t)).collect();
            let mut f = C64::ZERO;
            for (b, ucb) in uc.iter().enumerate() {
                let acc: C64 = ur.iter().enumerate().map(|(a, ura)| ura * p.r[(a, b)] * p.m[(b, a)]).sum();
                f += acc * ucb;
            }
            let val = v[p.row] * v[p.col].conj() * f;
            rho[(p.row, p.col)] = val;
            rho[(p.col, p.row)] = val.conj();
        }
        DensityMatrix4::from_matrix_unchecked(rho)
    }
}

/// ρ_B ∝ Σ_σ |ψ_σ|² e^{−βE_σ} e^{−βH_σ}, normalized to unit trace.
fn conditioned_bath_state(sectors: &[Sector], psi: &Amplitudes, beta: f64, omega0: f64) -> DMatrix<C64> {
    let pops = psi.populations();
    let qubit_energy = |tau: usize| {
        let (a, b) = SPINS[tau];
        0.5 * omega0 * f64::from(a + b)
    };
    // shift every exponent by the global minimum energy for stability
    let e_min = (0..4)
        .filter(|&tau| pops[tau] > 0.0)
        .map(|tau| qubit_energy(tau) + sectors[tau].energies.iter().copied().fold(f64::INFINITY, f64::min))
        .fold(f64::INFINITY, f64::min);
    let dim = sectors[0].energies.len();
    let mut rho = DMatrix::<C64>::zeros(dim, dim);
    for (tau, sec) in sectors.iter().enumerate() {
        if pops[tau] == 0.0 {
            continue;
        }
        let w: Vec<C64> = sec
            .energies
            .iter()
            .map(|e| C64::from(pops[tau] * (-beta * (e + qubit_energy(tau) - e_min)).exp()))
            .collect();
        let scaled = DMatrix::from_fn(dim, dim, |i, j| sec.vectors[(i, j)] * w[j]);
        rho += scaled * sec.vectors.adjoint();
    }
    let tr = rho.trace();
    rho / tr
}

/// Single-time convenience wrapper around [`FockSystem`].
pub fn fock_oracle(bath: &DiscreteBath, t: f64, psi: &Amplitudes, beta: f64, omega0: f64) -> Result<DensityMatrix4> {
    Ok(FockSystem::new(bath, psi, beta, omega0)?.density_matrix(t))
}

#[cfg(test)]
mod tests {
    use super::super::{compare, discrete_density_matrix, DiscreteMode};
    use super::*;
    use crate::state::{pure_state_density, validate};
    use std::f64::consts::PI;

    #[test]
    fn hamiltonian_is_hermitian() {
        let modes = vec![
            DiscreteMode::new(1.0, C64::new(0.1, 0.05), 0.3, 1.1).unwrap(),
            DiscreteMode::new(0.6, C64::new(-0.2, 0.0), 2.0, 0.4).unwrap(),
        ];
        let bath = DiscreteBath::new(modes, 4).unwrap();
        let h = sector_hamiltonian(&bath, 1.0, -1.0);
        assert!((&h - h.adjoint()).norm() < 1e-15);
        assert_eq!(h.nrows(), 25);
    }

    #[test]
    fn single_mode_matches_discrete_sums() {
        let bath = DiscreteBath::new(vec![DiscreteMode::new(1.0, 0.2.into(), PI / 2.0, 0.0).unwrap()], 12).unwrap();
        let psi = Amplitudes::bell();
        let sys = FockSystem::new(&bath, &psi, 2.0, 1.0).unwrap();
        assert!(compare(&sys.density_matrix(0.0), &pure_state_density(&psi)) < 1e-10);
        for t in [0.5, 1.0, 3.0] {
            let fock = sys.density_matrix(t);
            let dev = compare(&fock, &discrete_density_matrix(&bath, t, &psi, 2.0, 1.0));
            assert!(dev < 1e-6, "t={t}: {dev}");
            assert!(validate(&fock).is_valid());
        }
    }

    #[test]
    fn rejects_coarse_truncation() {
        let bath = DiscreteBath::new(vec![DiscreteMode::new(1.0, 0.2.into(), 0.0, 0.0).unwrap()], 2).unwrap();
        let err = FockSystem::new(&bath, &Amplitudes::bell(), 0.1, 1.0).err().unwrap();
        assert!(matches!(err, DecoError::Truncation { .. }));
    }

    #[test]
    fn zero_coupling_is_frozen() {
        let bath = DiscreteBath::new(vec![DiscreteMode::new(0.8, C64::ZERO, 0.0, 1.0).unwrap()], 10).unwrap();
        let psi = Amplitudes::from_real(0.5, 0.5, 0.5, -0.5).unwrap();
        for t in [0.0, 2.0, 5.0] {
            let rho = fock_oracle(&bath, t, &psi, 5.0, 1.0).unwrap();
            assert!(compare(&rho, &pure_state_density(&psi)) < 1e-12);
        }
    }
}
