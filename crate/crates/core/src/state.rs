//! Two-qubit states in the ordered basis |00⟩, |01⟩, |10⟩, |11⟩, together with
//! the Wootters concurrence and the l1-norm of coherence.

use nalgebra::{Matrix4, SymmetricEigen, Vector4};
use num_complex::Complex64 as C64;

use crate::error::{DecoError, Result};

/// Tolerance on |ψ|² − 1 accepted by [`Amplitudes::new`].
pub const NORM_TOL: f64 = 1e-12;
/// Hermiticity and trace tolerance for density matrices.
pub const MATRIX_TOL: f64 = 1e-12;
/// Most negative eigenvalue tolerated as quadrature noise.
pub const PSD_TOL: f64 = 1e-9;

/// Pure two-qubit amplitudes a|00⟩ + b|01⟩ + c|10⟩ + d|11⟩.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Amplitudes {
    amps: [C64; 4],
}

impl Amplitudes {
    /// Rejects vectors whose squared norm is off by more than [`NORM_TOL`].
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        let amps = [a, b, c, d];
        let norm_sqr: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(DecoError::NotNormalized { norm_sqr });
        }
        Ok(Self { amps })
    }

    /// Rescales any non-zero vector onto the unit sphere.
    pub fn normalized(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        let amps = [a, b, c, d];
        let norm_sqr: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if !(norm_sqr.is_finite() && norm_sqr > 0.0) {
            return Err(DecoError::NotNormalized { norm_sqr });
        }
        let scale = norm_sqr.sqrt().recip();
        Ok(Self {
            amps: amps.map(|z| z * scale),
        })
    }

    pub fn from_real(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    /// (|00⟩ + |11⟩)/√2.
    pub fn bell() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            amps: [h.into(), C64::ZERO, C64::ZERO, h.into()],
        }
    }

    /// √p|00⟩ + √(1−p)|11⟩.
    pub fn ghz_family(p: f64) -> Result<Self> {
        check_population(p)?;
        Self::from_real(p.sqrt(), 0.0, 0.0, (1.0 - p).sqrt())
    }

    /// √p|01⟩ + √(1−p)|10⟩.
    pub fn anti_ghz_family(p: f64) -> Result<Self> {
        check_population(p)?;
        Self::from_real(0.0, p.sqrt(), (1.0 - p).sqrt(), 0.0)
    }

    pub fn a(&self) -> C64 {
        self.amps[0]
    }
    pub fn b(&self) -> C64 {
        self.amps[1]
    }
    pub fn c(&self) -> C64 {
        self.amps[2]
    }
    pub fn d(&self) -> C64 {
        self.amps[3]
    }

    pub fn as_array(&self) -> &[C64; 4] {
        &self.amps
    }

    /// Basis populations |a|², |b|², |c|², |d|².
    pub fn populations(&self) -> [f64; 4] {
        self.amps.map(|z| z.norm_sqr())
    }
}

fn check_population(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(DecoError::InvalidParams(format!("population p = {p} outside [0, 1]")))
    }
}

/// 4×4 reduced density matrix of the qubit pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix4(Matrix4<C64>);

impl DensityMatrix4 {
    /// Wraps a matrix after checking Hermiticity, unit trace and positivity.
    pub fn new(m: Matrix4<C64>) -> Result<Self> {
        let rho = Self(m);
        rho.check()?;
        Ok(rho)
    }

    /// Wraps a matrix without any checks; see [`validate`] for diagnostics.
    pub fn from_matrix_unchecked(m: Matrix4<C64>) -> Self {
        Self(m)
    }

    pub fn from_fn(f: impl FnMut(usize, usize) -> C64) -> Self {
        Self(Matrix4::from_fn(f))
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.0[(row, col)]
    }

    pub fn matrix(&self) -> &Matrix4<C64> {
        &self.0
    }

    pub fn diagonal(&self) -> [f64; 4] {
        [0, 1, 2, 3].map(|i| self.0[(i, i)].re)
    }

    /// Returns an error describing the first violated invariant.
    pub fn check(&self) -> Result<()> {
        let report = validate(self);
        if report.is_valid() {
            Ok(())
        } else {
            Err(DecoError::InvalidMatrix {
                hermiticity: report.hermiticity_residual,
                trace: report.trace_residual,
                min_eigenvalue: report.min_eigenvalue,
            })
        }
    }

    fn check_structure(&self) -> Result<()> {
        let report = validate(self);
        if report.hermiticity_residual > MATRIX_TOL || report.trace_residual > MATRIX_TOL {
            return Err(DecoError::InvalidMatrix {
                hermiticity: report.hermiticity_residual,
                trace: report.trace_residual,
                min_eigenvalue: report.min_eigenvalue,
            });
        }
        Ok(())
    }

    /// Hermitian part, used before Hermitian eigensolvers.
    fn hermitian_part(&self) -> Matrix4<C64> {
        (self.0 + self.0.adjoint()) * C64::from(0.5)
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> Vector4<f64> {
        let mut ev = SymmetricEigen::new(self.hermitian_part()).eigenvalues;
        ev.as_mut_slice().sort_by(f64::total_cmp);
        ev
    }
}

/// ρ = |ψ⟩⟨ψ|.
pub fn pure_state_density(psi: &Amplitudes) -> DensityMatrix4 {
    let v = psi.as_array();
    DensityMatrix4::from_fn(|i, j| v[i] * v[j].conj())
}

/// Diagnostic summary produced by [`validate`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ValidationReport {
    /// max |ρᵢⱼ − ρⱼᵢ*|
    pub hermiticity_residual: f64,
    /// |Tr ρ − 1|, including any imaginary part of the trace
    pub trace_residual: f64,
    pub min_eigenvalue: f64,
    pub hermiticity_violated: bool,
    pub trace_violated: bool,
    pub negativity_violated: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        !(self.hermiticity_violated || self.trace_violated || self.negativity_violated)
    }
}

pub fn validate(rho: &DensityMatrix4) -> ValidationReport {
    let m = rho.matrix();
    let mut herm = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            herm = herm.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    let trace = m.trace();
    let trace_residual = (trace - C64::ONE).norm();
    let min_eigenvalue = if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        rho.eigenvalues()[0]
    } else {
        f64::NAN
    };
    ValidationReport {
        hermiticity_residual: herm,
        trace_residual,
        min_eigenvalue,
        hermiticity_violated: !(herm <= MATRIX_TOL),
        trace_violated: !(trace_residual <= MATRIX_TOL),
        negativity_violated: !(min_eigenvalue >= -PSD_TOL),
    }
}

/// σʸ⊗σʸ, real and anti-diagonal with signs (−1, +1, +1, −1).
fn sigma_yy() -> Matrix4<C64> {
    let mut yy = Matrix4::<C64>::zeros();
    for (i, s) in [-1.0, 1.0, 1.0, -1.0].into_iter().enumerate() {
        yy[(i, 3 - i)] = C64::from(s);
    }
    yy
}

/// σʸ⊗σʸ ρ* σʸ⊗σʸ.
pub fn spin_flip(rho: &DensityMatrix4) -> Matrix4<C64> {
    let yy = sigma_yy();
    yy * rho.matrix().map(|z| z.conj()) * yy
}

fn wootters_combination(mut roots: [f64; 4]) -> f64 {
    roots.sort_by(|a, b| b.total_cmp(a));
    (roots[0] - roots[1] - roots[2] - roots[3]).clamp(0.0, 1.0)
}

/// Eigenvalues of ρ this close to zero are treated as exact zeros.
const NULL_EIGENVALUE: f64 = 64.0 * f64::EPSILON;

/// Wootters concurrence, normalized so that a Bell state gives 1.
///
/// With ρ = WW†, the square roots of the eigenvalues of ρρ̃ are the singular
/// values of W†(σʸ⊗σʸ)W*. Working with singular values avoids the √ε noise
/// that square roots of near-zero eigenvalues would add.
pub fn concurrence(rho: &DensityMatrix4) -> Result<f64> {
    rho.check_structure()?;
    let eig = SymmetricEigen::new(rho.hermitian_part());
    let min = eig.eigenvalues.min();
    if min < -PSD_TOL {
        let report = validate(rho);
        return Err(DecoError::InvalidMatrix {
            hermiticity: report.hermiticity_residual,
            trace: report.trace_residual,
            min_eigenvalue: min,
        });
    }
    let roots = eig
        .eigenvalues
        .map(|v| if v > NULL_EIGENVALUE { C64::from(v.sqrt()) } else { C64::ZERO });
    let w = eig.eigenvectors * Matrix4::from_diagonal(&roots);
    let a = w.adjoint() * sigma_yy() * w.map(|z| z.conj());
    let sv = a.singular_values();
    Ok(wootters_combination([sv[0], sv[1], sv[2], sv[3]]))
}

/// Concurrence from a general complex Schur factorization of ρρ̃.
///
/// Fails if an eigenvalue carries an imaginary part above 1e-10.
pub fn concurrence_via_schur(rho: &DensityMatrix4) -> Result<f64> {
    rho.check_structure()?;
    let prod = rho.matrix() * spin_flip(rho);
    let (_, t) = nalgebra::Schur::new(prod).unpack();
    let mut roots = [0.0; 4];
    for (i, root) in roots.iter_mut().enumerate() {
        let lam = t[(i, i)];
        if lam.im.abs() > 1e-10 {
            return Err(DecoError::Numerical(format!(
                "eigenvalue of rho*rho_tilde has imaginary part {:e}",
                lam.im
            )));
        }
        *root = lam.re.max(0.0).sqrt();
    }
    Ok(wootters_combination(roots))
}

/// Σ_{i≠j} |ρᵢⱼ| in the computational basis.
pub fn l1_coherence(rho: &DensityMatrix4) -> Result<f64> {
    rho.check_structure()?;
    let m = rho.matrix();
    let mut total = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                total += m[(i, j)].norm();
            }
        }
    }
    Ok(total)
}
