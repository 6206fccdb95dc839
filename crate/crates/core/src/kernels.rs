//! Continuum bath functionals for the spectral density
//! J(ω) ∝ ω e^{−ω²} (cutoff Ω = 1) with the angular factors 1 ± sinc(ωs).
//!
//! All frequencies and times are in units of the cutoff. `alpha` absorbs the
//! coupling prefactor, `s` is the qubit separation divided by the mode velocity.
//!
//! | functional | integral |
//! |---|---|
//! | `decay_kernel` D\[w\](t) | α ∫ ω e^{−ω²} w(ω) sin²(ωt/2) coth(βω/2) dω |
//! | `phase_kernel` P\[w\](t) | (α/2) ∫ ω e^{−ω²} w(ω) sin(ωt) dω |
//! | `lambda_weight` λ\[w\] | (αβ/4) ∫ ω² e^{−ω²} w(ω) dω |
//! | `ising_coupling` J | (α/2) ∫ ω² e^{−ω²} sinc(ωs) dω |
//!
//! every integral running over ω ∈ [0, ∞).

use std::f64::consts::TAU;

use num_complex::Complex64 as C64;

use crate::error::{DecoError, Result};
use crate::quadrature::{integrate_adaptive, GL_ORDER};

/// Separations at or above this value drop the sinc term (|sinc| < 1e-5 on
/// the bulk of the spectral weight).
pub const SINC_DROP_S: f64 = 1e5;

/// Dimensionless model parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    pub alpha: f64,
    pub beta: f64,
    pub omega0: f64,
    pub s: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            alpha: 1.0,
            beta: 1.0,
            omega0: 1.0,
            s: 1.0,
        }
    }
}

impl ModelParams {
    pub fn new(alpha: f64, beta: f64, omega0: f64, s: f64) -> Result<Self> {
        let p = Self {
            alpha,
            beta,
            omega0,
            s,
        };
        p.validate()?;
        Ok(p)
    }

    /// `alpha = 0` is accepted as the decoupled-bath limit.
    pub fn validate(&self) -> Result<()> {
        let ok = self.alpha.is_finite()
            && self.alpha >= 0.0
            && self.beta.is_finite()
            && self.beta > 0.0
            && self.omega0.is_finite()
            && self.omega0 >= 0.0
            && self.s.is_finite()
            && self.s >= 0.0;
        if ok {
            Ok(())
        } else {
            Err(DecoError::InvalidParams(format!("{self:?}")))
        }
    }

    pub fn with_beta(self, beta: f64) -> Self {
        Self { beta, ..self }
    }

    pub fn with_s(self, s: f64) -> Self {
        Self { s, ..self }
    }

    pub fn with_alpha(self, alpha: f64) -> Self {
        Self { alpha, ..self }
    }

    pub fn with_omega0(self, omega0: f64) -> Self {
        Self { omega0, ..self }
    }

    pub fn beta_omega0(&self) -> f64 {
        self.beta * self.omega0
    }
}

/// Controls for the semi-infinite frequency integrals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig {
    pub omega_max: f64,
    pub rel_tol: f64,
    pub min_nodes_per_period: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            omega_max: 8.0,
            rel_tol: 1e-9,
            min_nodes_per_period: 10,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.omega_max.is_finite()
            && self.omega_max >= 6.0
            && self.rel_tol > 0.0
            && self.rel_tol <= 1e-4
            && self.min_nodes_per_period >= 2;
        if ok {
            Ok(())
        } else {
            Err(DecoError::InvalidParams(format!("{self:?}")))
        }
    }

    /// Widest panel that keeps `min_nodes_per_period` nodes per period of
    /// the fastest oscillation `freq`.
    fn max_panel_width(&self, freq: f64) -> f64 {
        GL_ORDER as f64 * TAU / (self.min_nodes_per_period as f64 * freq.max(1.0))
    }
}

/// Angular weight of a bath mode pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KernelWeight {
    /// w = 1
    Flat,
    /// w = 1 + sinc(ωs)
    Plus,
    /// w = 1 − sinc(ωs)
    Minus,
}

impl KernelWeight {
    pub const ALL: [KernelWeight; 3] = [KernelWeight::Flat, KernelWeight::Plus, KernelWeight::Minus];

    /// Real-axis weight w(ω) for separation `s`.
    pub fn eval(self, omega: f64, s: f64) -> f64 {
        match self.shape(s) {
            Shape::Const(c) => c,
            Shape::Sinc { sign, s } => {
                let z = omega * s;
                if sign > 0.0 {
                    1.0 + sinc(z)
                } else {
                    one_minus_sinc(z)
                }
            }
        }
    }

    fn eval_complex(self, omega: C64, s: f64) -> C64 {
        match self.shape(s) {
            Shape::Const(c) => c.into(),
            Shape::Sinc { sign, s } => {
                let z = omega * s;
                if sign > 0.0 {
                    1.0 + csinc(z)
                } else {
                    one_minus_csinc(z)
                }
            }
        }
    }

    fn shape(self, s: f64) -> Shape {
        match self {
            KernelWeight::Flat => Shape::Const(1.0),
            _ if s >= SINC_DROP_S => Shape::Const(1.0),
            KernelWeight::Plus if s == 0.0 => Shape::Const(2.0),
            KernelWeight::Minus if s == 0.0 => Shape::Const(0.0),
            KernelWeight::Plus => Shape::Sinc { sign: 1.0, s },
            KernelWeight::Minus => Shape::Sinc { sign: -1.0, s },
        }
    }

    /// Separation that actually enters the integrand (0 when w is constant).
    fn active_s(self, s: f64) -> f64 {
        match self.shape(s) {
            Shape::Const(_) => 0.0,
            Shape::Sinc { s, .. } => s,
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Shape {
    Const(f64),
    Sinc { sign: f64, s: f64 },
}

fn sinc(z: f64) -> f64 {
    if z.abs() < 1e-4 {
        1.0 - z * z / 6.0
    } else {
        z.sin() / z
    }
}

fn one_minus_sinc(z: f64) -> f64 {
    if z.abs() < 1e-2 {
        let z2 = z * z;
        z2 / 6.0 - z2 * z2 / 120.0 + z2 * z2 * z2 / 5040.0
    } else {
        1.0 - z.sin() / z
    }
}

fn csinc(z: C64) -> C64 {
    if z.norm() < 1e-4 {
        1.0 - z * z / 6.0
    } else {
        z.sin() / z
    }
}

fn one_minus_csinc(z: C64) -> C64 {
    if z.norm() < 1e-2 {
        let z2 = z * z;
        z2 / 6.0 - z2 * z2 / 120.0 + z2 * z2 * z2 / 5040.0
    } else {
        1.0 - z.sin() / z
    }
}

/// ω·coth(βω/2), finite at ω = 0 (limit 2/β).
pub fn omega_coth(omega: f64, beta: f64) -> f64 {
    let u = 0.5 * beta * omega;
    if u.abs() < 1e-4 {
        (2.0 / beta) * (1.0 + u * u / 3.0)
    } else {
        omega / u.tanh()
    }
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(DecoError::InvalidParams(format!("time t = {t} must be finite and >= 0")))
    }
}

fn check_inputs(p: &ModelParams, q: &QuadratureConfig) -> Result<()> {
    p.validate()?;
    q.validate()
}

/// D\[w\](t) = α ∫ ω e^{−ω²} w(ω) sin²(ωt/2) coth(βω/2) dω.
pub fn decay_kernel(w: KernelWeight, t: f64, p: &ModelParams, q: &QuadratureConfig) -> Result<f64> {
    check_time(t)?;
    check_inputs(p, q)?;
    if t == 0.0 || p.alpha == 0.0 {
        return Ok(0.0);
    }
    let s = p.s;
    let freq = t.max(w.active_s(s));
    let integral = integrate_adaptive(0.0, q.omega_max, q.max_panel_width(freq), q.rel_tol, |om| {
        let sh = (0.5 * om * t).sin();
        omega_coth(om, p.beta) * (-om * om).exp() * w.eval(om, s) * sh * sh
    })?;
    Ok(p.alpha * integral.value)
}

/// P\[w\](t) = (α/2) ∫ ω e^{−ω²} w(ω) sin(ωt) dω.
///
/// The integrand is even and entire, so the integral is taken over the
/// whole real line shifted to Im ω = y, where y = max(t − s, 0)/2 removes
/// the dominant oscillation and the result keeps full relative accuracy
/// even when it is exponentially small.
pub fn phase_kernel(w: KernelWeight, t: f64, p: &ModelParams, q: &QuadratureConfig) -> Result<f64> {
    check_time(t)?;
    check_inputs(p, q)?;
    if t == 0.0 || p.alpha == 0.0 {
        return Ok(0.0);
    }
    let s = w.active_s(p.s);
    let y = 0.5 * (t - s).max(0.0);
    // residual oscillation along the shifted line is e^{ix(t − 2y)}
    let freq = (t - 2.0 * y).abs().max(s);
    let x_max = q.omega_max;
    let integral = integrate_adaptive(-x_max, x_max, q.max_panel_width(freq), q.rel_tol, |x| {
        let om = C64::new(x, y);
        om * (-om * om + C64::i() * om * t).exp() * w.eval_complex(om, p.s)
    })?;
    // ∫_{-∞}^{∞} ω e^{−ω²} w e^{iωt} dω = 2i ∫_0^∞ ω e^{−ω²} w sin(ωt) dω
    Ok(0.25 * p.alpha * integral.value.im)
}

/// λ\[w\] = (αβ/4) ∫ ω² e^{−ω²} w(ω) dω.
///
/// `Plus` and `Minus` give the exponents of the thermal sector weights;
/// `Flat` is their mean.
pub fn lambda_weight(w: KernelWeight, p: &ModelParams, q: &QuadratureConfig) -> Result<f64> {
    check_inputs(p, q)?;
    if p.alpha == 0.0 {
        return Ok(0.0);
    }
    let s = p.s;
    let integral = integrate_adaptive(
        0.0,
        q.omega_max,
        q.max_panel_width(w.active_s(s)),
        q.rel_tol,
        |om| om * om * (-om * om).exp() * w.eval(om, s),
    )?;
    Ok(0.25 * p.alpha * p.beta * integral.value)
}

/// Rate J of the bath-mediated σᶻσᶻ phase, J = (α/2) ∫ ω² e^{−ω²} sinc(ωs) dω.
///
/// Single-flip coherences pick up the phase ±J·t. Analytically
/// J = (λ₊ − λ₋)/β.
pub fn ising_coupling(p: &ModelParams, q: &QuadratureConfig) -> Result<f64> {
    check_inputs(p, q)?;
    if p.alpha == 0.0 || p.s >= SINC_DROP_S {
        return Ok(0.0);
    }
    let s = p.s;
    let integral = integrate_adaptive(0.0, q.omega_max, q.max_panel_width(s), q.rel_tol, |om| {
        om * om * (-om * om).exp() * sinc(om * s)
    })?;
    Ok(0.5 * p.alpha * integral.value)
}

/// γ(t) = D\[Plus\](t).
pub fn gamma(t: f64, p: &ModelParams, q: &QuadratureConfig) -> Result<f64> {
    decay_kernel(KernelWeight::Plus, t, p, q)
}

/// Φ(t) = 2·P\[Plus\](t), the phase entering the correlation factor.
pub fn phi(t: f64, p: &ModelParams, q: &QuadratureConfig) -> Result<f64> {
    Ok(2.0 * phase_kernel(KernelWeight::Plus, t, p, q)?)
}

/// γ₀ as a function of the phase Φ and a thermal bias x:
/// −½ ln\[cos²Φ + sin²Φ tanh²x\].
pub fn gamma0_of_phi(phi: f64, bias: f64) -> f64 {
    let sin2 = phi.sin().powi(2);
    let sech2 = sech_sqr(bias);
    -0.5 * (-sin2 * sech2).ln_1p()
}

fn sech_sqr(x: f64) -> f64 {
    let e = (-2.0 * x.abs()).exp();
    4.0 * e / ((1.0 + e) * (1.0 + e))
}

/// Extra decoherence from the correlated preparation, γ₀(t) with bias βω₀.
pub fn gamma0(t: f64, p: &ModelParams, q: &QuadratureConfig) -> Result<f64> {
    let phi = phi(t, p, q)?;
    Ok(gamma0_of_phi(phi, p.beta_omega0()))
}

/// lim_{t→∞} D\[w\](t) = (α/2) ∫ ω e^{−ω²} w(ω) coth(βω/2) dω.
pub fn gamma_saturation(w: KernelWeight, p: &ModelParams, q: &QuadratureConfig) -> Result<f64> {
    check_inputs(p, q)?;
    if p.alpha == 0.0 {
        return Ok(0.0);
    }
    let s = p.s;
    let integral = integrate_adaptive(
        0.0,
        q.omega_max,
        q.max_panel_width(w.active_s(s)),
        q.rel_tol,
        |om| omega_coth(om, p.beta) * (-om * om).exp() * w.eval(om, s),
    )?;
    Ok(0.5 * p.alpha * integral.value)
}
