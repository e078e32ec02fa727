//! Spin-1 matrices and the Dirac-like photon equation.
//!
//! With `(τ_l)_mn = −i ε_lmn` the matrix `τ·a` acts as `i a ×`, so the
//! helicity vectors are its eigenvectors. The 6×6 matrices
//!
//! ```text
//! β0 = ⎡ I   0 ⎤     β_i = ⎡  0   τ_i ⎤
//!      ⎣ 0  −I ⎦           ⎣ −τ_i  0  ⎦
//! ```
//!
//! turn the free Maxwell equations into `(β0 ω − β·k) ψ = 0` on plane waves.
//! The transverse spinors `f(k, ±1)` solve it; the longitudinal one does not,
//! leaving exactly `ω`. Everything here works on momentum-space spinors: the
//! plane-wave exponentials divide out.

use nalgebra::{Matrix3, Matrix6, Vector3, Vector6};
use num_complex::Complex64;

use crate::error::Result;
use crate::minkowski::FourMomentum;
use crate::momentum_basis::{helicity_polarization, max_abs, spinor_f, Helicity, KVector};
use crate::waveguide::{decompose, dispersion, WaveguideMode};

pub type CMatrix3 = Matrix3<Complex64>;
pub type CMatrix6 = Matrix6<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Levi-Civita symbol on zero-based indices, `ε_012 = 1`.
pub fn levi_civita(l: usize, m: usize, n: usize) -> f64 {
    match (l, m, n) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpinOneMatrices {
    pub tau: [CMatrix3; 3],
}

impl SpinOneMatrices {
    pub fn new() -> Self {
        let tau = std::array::from_fn(|l| CMatrix3::from_fn(|m, n| -I * levi_civita(l, m, n)));
        SpinOneMatrices { tau }
    }

    /// `τ·a`.
    pub fn dot(&self, a: &Vector3<f64>) -> CMatrix3 {
        (0..3).fold(CMatrix3::zeros(), |acc, l| acc + self.tau[l].scale(a[l]))
    }

    /// Max entry of `[τ_i, τ_j] − i ε_ijk τ_k` over all pairs.
    pub fn algebra_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let comm = self.tau[i] * self.tau[j] - self.tau[j] * self.tau[i];
                let rhs = (0..3).fold(CMatrix3::zeros(), |acc, k| acc + self.tau[k] * (I * levi_civita(i, j, k)));
                worst = worst.max(max_abs(&(comm - rhs)));
            }
        }
        worst
    }

    /// Max entry of `τ_i − τ_i†`.
    pub fn hermiticity_residual(&self) -> f64 {
        self.tau.iter().map(|t| max_abs(&(t - t.adjoint()))).fold(0.0, f64::max)
    }
}

impl Default for SpinOneMatrices {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BetaMatrices {
    pub beta0: CMatrix6,
    pub beta: [CMatrix6; 3],
}

impl BetaMatrices {
    pub fn new(spin: &SpinOneMatrices) -> Self {
        let beta0 = CMatrix6::from_fn(|a, b| match (a == b, a < 3) {
            (true, true) => ONE,
            (true, false) => -ONE,
            _ => ZERO,
        });
        let beta = std::array::from_fn(|l| {
            let mut m = CMatrix6::zeros();
            m.fixed_view_mut::<3, 3>(0, 3).copy_from(&spin.tau[l]);
            m.fixed_view_mut::<3, 3>(3, 0).copy_from(&(-spin.tau[l]));
            m
        });
        BetaMatrices { beta0, beta }
    }

    /// `β0 ω − β·k`.
    pub fn contract(&self, k: &FourMomentum) -> CMatrix6 {
        (0..3).fold(self.beta0.scale(k.time), |acc, l| acc - self.beta[l].scale(k.space[l]))
    }

    /// Max entry of `β0² − I`.
    pub fn beta0_square_residual(&self) -> f64 {
        max_abs(&(self.beta0 * self.beta0 - CMatrix6::identity()))
    }
}

pub fn build_matrices() -> (SpinOneMatrices, BetaMatrices) {
    let spin = SpinOneMatrices::new();
    let beta = BetaMatrices::new(&spin);
    (spin, beta)
}

fn spinor_vec(k: &KVector, h: Helicity) -> Result<Vector6<Complex64>> {
    Ok(spinor_f(k, h)?.to_vector6())
}

/// `‖(β0 ω − β·k) f(k, λ)‖` with `ω = |k|`.
///
/// Zero for `λ = ±1`; exactly `ω` for `λ = 0`, which is not a solution.
pub fn on_shell_residual(k: &KVector, h: Helicity) -> Result<f64> {
    let (_, beta) = build_matrices();
    let k4 = FourMomentum::lightlike(*k.as_vector());
    Ok((beta.contract(&k4) * spinor_vec(k, h)?).norm())
}

/// `‖β^μ(k_Lμ + m η_μ) f(k, λ)‖` for the guided photon `(mode, k3)`.
pub fn waveguide_dirac_residual(mode: &WaveguideMode, k3: f64, h: Helicity) -> Result<f64> {
    waveguide_dirac_residual_with_mass(mode, k3, h, mode.mass())
}

/// As [`waveguide_dirac_residual`] but with the transverse momentum carrying
/// mass `mass` instead of the mode's cutoff. Any mismatch puts the photon off
/// shell and shows up linearly in the residual.
pub fn waveguide_dirac_residual_with_mass(
    mode: &WaveguideMode,
    k3: f64,
    h: Helicity,
    mass: f64,
) -> Result<f64> {
    let (_, beta) = build_matrices();
    let d = decompose(mode, k3, mode.transverse_azimuth())?;
    let k = FourMomentum::from_parts(d.k_l.time, d.k_l.space + d.eta.space * mass);
    let phi = spinor_vec(&KVector(k.space), h)?;
    Ok((beta.contract(&k) * phi).norm())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KleinGordonResiduals {
    /// `|k_L·k_L − m²|`
    pub mass_shell: f64,
    /// `|k_L·k_L + k_T·k_T|`
    pub chain: f64,
}

pub fn klein_gordon_residual(mode: &WaveguideMode, k3: f64) -> Result<KleinGordonResiduals> {
    let m = mode.mass();
    let d = decompose(mode, k3, mode.transverse_azimuth())?;
    let e = dispersion(mode, k3)?;
    let shell = e.energy * e.energy - e.momentum * e.momentum;
    Ok(KleinGordonResiduals {
        mass_shell: ((shell - m * m).abs()).max((d.k_l.norm_sqr() - m * m).abs()),
        chain: (d.k_l.norm_sqr() + d.k_t.norm_sqr()).abs(),
    })
}

/// Max of `‖(τ·k̂) ε(k, λ) − λ ε(k, λ)‖` over the three helicities.
pub fn helicity_eigen_residual(k: &KVector) -> Result<f64> {
    let spin = SpinOneMatrices::new();
    let op = spin.dot(&k.as_vector().normalize());
    let mut worst: f64 = 0.0;
    for h in Helicity::ALL {
        let e = helicity_polarization(k, h)?;
        worst = worst.max((op * e - e * Complex64::from(h.as_f64())).norm());
    }
    Ok(worst)
}

/// `|η·k_L|` for the guided photon.
pub fn transversality_residual(mode: &WaveguideMode, k3: f64, azimuth: f64) -> Result<f64> {
    let d = decompose(mode, k3, azimuth)?;
    Ok(d.eta.dot(&d.k_l).abs())
}
