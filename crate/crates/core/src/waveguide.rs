//! Kinematics of photons in an ideal rectangular waveguide.
//!
//! A guide of cross-section `b1 × b2` and mode indices `(r, s)` fixes the
//! transverse wavenumbers `k1 = rπ/b1`, `k2 = sπ/b2`. Their magnitude is the
//! cutoff frequency, which acts as a rest mass `m = ω_c` for the axial
//! motion: `E² = p² + m²`, with the group velocity as the particle velocity
//! and the guide wavelength as the de Broglie wavelength. The equivalent
//! Compton wavelength `λ_com = 1/m` bounds how tightly the photon can be
//! confined before the field turns evanescent.
//!
//! Internally everything is in natural units. With lengths in metres the
//! frequencies come out as wavenumbers in 1/m; [`si`] converts those to
//! hertz and m/s.
//!
//! Mode indices follow `r ≥ 1, s ≥ 0`. The usual TE/TM split (TE needs
//! `r + s ≥ 1`, TM needs both `≥ 1`) is not enforced: only the cutoff enters
//! the kinematics.

use std::f64::consts::PI;

use nalgebra::Vector3;

use crate::error::{Error, Result};
use crate::minkowski::FourMomentum;
use crate::momentum_basis::{rotated_triad, KVector, RotatedFrame};

/// Transverse dimensions of a rectangular guide, stored with `b1 ≥ b2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WaveguideSpec {
    pub b1: f64,
    pub b2: f64,
    /// The inputs arrived with `b1 < b2` and were swapped.
    pub swapped: bool,
}

impl WaveguideSpec {
    pub fn new(b1: f64, b2: f64) -> Result<Self> {
        if !(b1.is_finite() && b2.is_finite() && b1 > 0.0 && b2 > 0.0) {
            return Err(Error::InvalidDimensions { b1, b2 });
        }
        Ok(if b1 < b2 {
            WaveguideSpec { b1: b2, b2: b1, swapped: true }
        } else {
            WaveguideSpec { b1, b2, swapped: false }
        })
    }
}

/// One eigenmode of a guide.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WaveguideMode {
    pub spec: WaveguideSpec,
    pub r: u32,
    pub s: u32,
    k1: f64,
    k2: f64,
    cutoff: f64,
}

impl WaveguideMode {
    pub fn new(spec: WaveguideSpec, r: u32, s: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidIndex { r, s });
        }
        let k1 = f64::from(r) * PI / spec.b1;
        let k2 = f64::from(s) * PI / spec.b2;
        Ok(WaveguideMode { spec, r, s, k1, k2, cutoff: k1.hypot(k2) })
    }

    /// Transverse wavenumbers `(rπ/b1, sπ/b2)`.
    pub fn transverse_wavenumbers(&self) -> (f64, f64) {
        (self.k1, self.k2)
    }

    /// Cutoff frequency `ω_c`.
    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    /// Apparent mass `m = ω_c`.
    pub fn mass(&self) -> f64 {
        self.cutoff
    }

    /// Equivalent Compton wavelength `1/m`.
    pub fn compton_wavelength(&self) -> f64 {
        1.0 / self.cutoff
    }

    /// Azimuth of `(k1, k2)` in the transverse plane.
    pub fn transverse_azimuth(&self) -> f64 {
        self.k2.atan2(self.k1)
    }
}

/// Shorthand for `WaveguideMode::new(WaveguideSpec::new(b1, b2)?, r, s)`.
pub fn mode(b1: f64, b2: f64, r: u32, s: u32) -> Result<WaveguideMode> {
    WaveguideMode::new(WaveguideSpec::new(b1, b2)?, r, s)
}

/// Energy and axial momentum of a guided photon.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dispersion {
    pub energy: f64,
    pub momentum: f64,
}

/// `E = √(k3² + m²)` for axial wavenumber `k3 ≥ 0`.
pub fn dispersion(mode: &WaveguideMode, k3: f64) -> Result<Dispersion> {
    if !k3.is_finite() {
        return Err(Error::NonFinite("axial wavenumber"));
    }
    if k3 < 0.0 {
        return Err(Error::NegativeWavenumber(k3));
    }
    Ok(Dispersion { energy: k3.hypot(mode.mass()), momentum: k3 })
}

/// Axial behaviour at a given energy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AxialWave {
    Propagating { k3: f64 },
    /// Below cutoff: the field decays as `exp(−κ z)`.
    Evanescent { decay: f64 },
}

/// Invert the dispersion relation: `k3 = √(E² − m²)` above cutoff, decay
/// constant `κ = √(m² − E²)` below.
pub fn axial_wavenumber(mode: &WaveguideMode, energy: f64) -> Result<AxialWave> {
    if !energy.is_finite() || energy < 0.0 {
        return Err(Error::NonFinite("energy"));
    }
    let m = mode.mass();
    Ok(if energy >= m {
        AxialWave::Propagating { k3: ((energy - m) * (energy + m)).sqrt() }
    } else {
        AxialWave::Evanescent { decay: ((m - energy) * (m + energy)).sqrt() }
    })
}

/// Group velocity, phase velocity and guide wavelength.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Velocities {
    pub group: f64,
    pub phase: f64,
    pub guide_wavelength: f64,
}

pub fn velocities(mode: &WaveguideMode, omega: f64) -> Result<Velocities> {
    let wc = mode.cutoff();
    if !(omega.is_finite() && omega > wc) {
        return Err(Error::AtOrBelowCutoff { omega, cutoff: wc });
    }
    let group = ((omega - wc) * (omega + wc)).sqrt() / omega;
    Ok(Velocities { group, phase: 1.0 / group, guide_wavelength: 2.0 * PI / omega / group })
}

/// Orthogonal split `k = k_L + k_T` of a guided photon's four-momentum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecomposedMomentum {
    /// The null four-momentum `(ω; k)`.
    pub k: FourMomentum,
    /// Apparent (time-like) part `(E; p)`.
    pub k_l: FourMomentum,
    /// Frozen (space-like) part `(0; k_T) = m η`.
    pub k_t: FourMomentum,
    /// Unit space-like vector `(0; k_T/|k_T|)`.
    pub eta: FourMomentum,
    /// Guide frame: `e3` along the axis.
    pub frame: RotatedFrame,
}

impl DecomposedMomentum {
    pub fn mass(&self) -> f64 {
        self.k_t.space.norm()
    }

    /// Max component of `|k − k_L − k_T|`.
    pub fn closure_residual(&self) -> f64 {
        let d = self.k - self.k_l - self.k_t;
        d.to_array().iter().fold(0.0, |a, x| a.max(x.abs()))
    }
}

/// Decompose with the guide along `e3`.
pub fn decompose(mode: &WaveguideMode, k3: f64, azimuth: f64) -> Result<DecomposedMomentum> {
    decompose_along(mode, k3, azimuth, &KVector::new(0.0, 0.0, 1.0))
}

/// Decompose with the guide along `axis`, whose rotated frame carries the
/// transverse momentum at angle `azimuth` from its first axis.
pub fn decompose_along(
    mode: &WaveguideMode,
    k3: f64,
    azimuth: f64,
    axis: &KVector,
) -> Result<DecomposedMomentum> {
    let Dispersion { energy, momentum } = dispersion(mode, k3)?;
    let frame = rotated_triad(axis)?;
    let m = mode.mass();
    let direction = frame.e1 * azimuth.cos() + frame.e2 * azimuth.sin();
    let k_t = FourMomentum::from_parts(0.0, direction * m);
    let k_l = FourMomentum::from_parts(energy, frame.e3 * momentum);
    Ok(DecomposedMomentum {
        k: FourMomentum::from_parts(energy, k_t.space + k_l.space),
        k_l,
        k_t,
        eta: FourMomentum::from_parts(0.0, direction),
        frame,
    })
}

/// The two null plane waves `(ω; ±k_T + p)` whose superposition is the
/// guided field.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZigzagPair {
    pub first: FourMomentum,
    pub second: FourMomentum,
    pub axis: Vector3<f64>,
}

impl ZigzagPair {
    /// Angle between each plane wave and the guide axis, in radians.
    pub fn zigzag_angle(&self) -> f64 {
        let s = self.first.space;
        (s.dot(&self.axis) / s.norm()).clamp(-1.0, 1.0).acos()
    }

    /// `(k1 + k2)²`.
    pub fn pair_mass_sqr(&self) -> f64 {
        (self.first + self.second).norm_sqr()
    }
}

pub fn plane_wave_pair(mode: &WaveguideMode, k3: f64) -> Result<ZigzagPair> {
    let d = decompose(mode, k3, mode.transverse_azimuth())?;
    Ok(ZigzagPair {
        first: d.k_l + d.k_t,
        second: d.k_l - d.k_t,
        axis: d.frame.e3,
    })
}

/// Rapidity of the frame in which the photon has no axial momentum,
/// `artanh(v_g)`.
pub fn rest_frame_rapidity(mode: &WaveguideMode, k3: f64) -> Result<f64> {
    let d = dispersion(mode, k3)?;
    Ok((d.momentum / d.energy).atanh())
}

/// Relative residuals of the kinematic identities at one frequency, each
/// normalised by the natural scale of its terms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KinematicResiduals {
    /// `E² − p² − m²`
    pub mass_shell: f64,
    /// `k_L·k_T`
    pub orthogonality: f64,
    /// `η·η + 1`
    pub eta_norm: f64,
    /// `k·k`
    pub null: f64,
    /// `(k1 + k2)² − 4m²`
    pub zigzag: f64,
    /// `v_g v_p − 1`
    pub velocity_product: f64,
    /// `E − m/√(1 − v_g²)`
    pub relativistic_energy: f64,
    /// `λ_g − λ/√(1 − (ω_c/ω)²)` and `p − 2π/λ_g`
    pub guide_wavelength: f64,
    /// `|k_T| − m`
    pub transverse_mass: f64,
}

impl KinematicResiduals {
    pub fn max(&self) -> f64 {
        [
            self.mass_shell,
            self.orthogonality,
            self.eta_norm,
            self.null,
            self.zigzag,
            self.velocity_product,
            self.relativistic_energy,
            self.guide_wavelength,
            self.transverse_mass,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

pub fn kinematic_residuals(mode: &WaveguideMode, omega: f64, azimuth: f64) -> Result<KinematicResiduals> {
    let m = mode.mass();
    let Velocities { group, phase, guide_wavelength } = velocities(mode, omega)?;
    let k3 = match axial_wavenumber(mode, omega)? {
        AxialWave::Propagating { k3 } => k3,
        AxialWave::Evanescent { .. } => unreachable!("velocities() rejects sub-cutoff input"),
    };
    let d = decompose(mode, k3, azimuth)?;
    let pair = plane_wave_pair(mode, k3)?;
    let (e, p) = (d.k_l.time, d.k_l.space.norm());
    let e2 = e * e;
    let free_wavelength = 2.0 * PI / omega;
    let lg_expected = free_wavelength / (1.0 - (mode.cutoff() / omega).powi(2)).sqrt();
    Ok(KinematicResiduals {
        mass_shell: (e2 - p * p - m * m).abs() / e2,
        orthogonality: d.k_l.dot(&d.k_t).abs() / (e * m),
        eta_norm: (d.eta.norm_sqr() + 1.0).abs(),
        null: d.k.norm_sqr().abs() / e2,
        zigzag: (pair.pair_mass_sqr() - 4.0 * m * m).abs() / (4.0 * e2),
        velocity_product: (group * phase - 1.0).abs(),
        relativistic_energy: (e - m / (1.0 - group * group).sqrt()).abs() / e,
        guide_wavelength: ((guide_wavelength - lg_expected).abs() / lg_expected)
            .max((p - 2.0 * PI / guide_wavelength).abs() / e)
            .max((e - omega).abs() / e),
        transverse_mass: (d.mass() - m).abs() / m,
    })
}

/// Outcome of shrinking the guide around a photon.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TunnelingVerdict {
    /// The photon frequency stays at or above the new cutoff in every frame.
    Propagates,
    /// The photon is below the new cutoff once boosted by `rapidity` or more
    /// (zero when it already is in the given frame).
    EvanescentInSomeFrame { rapidity: f64 },
}

/// Full record of a tunneling analysis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TunnelingAnalysis {
    pub old_mass: f64,
    pub compton_wavelength: f64,
    pub new_cutoff: f64,
    /// Rapidity at which the photon frequency is minimal (equal to the old mass).
    pub rest_rapidity: f64,
    pub verdict: TunnelingVerdict,
}

const BISECTION_TOL: f64 = 1e-12;

/// Compare the photon's lowest frequency over all axial boosts (its apparent
/// mass) with the cutoff of `new_mode`. Both frequencies are taken in the
/// same frame, with the new guide at rest there.
pub fn tunneling_predicate(
    old_mode: &WaveguideMode,
    k3: f64,
    new_mode: &WaveguideMode,
) -> Result<TunnelingAnalysis> {
    let Dispersion { energy, momentum } = dispersion(old_mode, k3)?;
    let m = old_mode.mass();
    let target = new_mode.cutoff();
    let rest_rapidity = (momentum / energy).atanh();
    let verdict = if target <= m {
        TunnelingVerdict::Propagates
    } else if energy <= target {
        TunnelingVerdict::EvanescentInSomeFrame { rapidity: 0.0 }
    } else {
        // E cosh χ − p sinh χ decreases monotonically on [0, χ_rest]
        let frequency = |chi: f64| energy * chi.cosh() - momentum * chi.sinh();
        let (mut lo, mut hi) = (0.0, rest_rapidity);
        while hi - lo > BISECTION_TOL {
            let mid = 0.5 * (lo + hi);
            if frequency(mid) > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        TunnelingVerdict::EvanescentInSomeFrame { rapidity: 0.5 * (lo + hi) }
    };
    Ok(TunnelingAnalysis {
        old_mass: m,
        compton_wavelength: old_mode.compton_wavelength(),
        new_cutoff: target,
        rest_rapidity,
        verdict,
    })
}

/// Conversions between natural units (lengths in metres) and SI.
pub mod si {
    use std::f64::consts::PI;

    use super::WaveguideMode;

    pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

    /// Cutoff frequency in Hz for a mode whose dimensions are in metres.
    pub fn cutoff_frequency_hz(mode: &WaveguideMode) -> f64 {
        wavenumber_to_hz(mode.cutoff())
    }

    pub fn wavenumber_to_hz(omega: f64) -> f64 {
        omega * SPEED_OF_LIGHT / (2.0 * PI)
    }

    pub fn hz_to_wavenumber(f: f64) -> f64 {
        2.0 * PI * f / SPEED_OF_LIGHT
    }

    pub fn velocity_to_si(v: f64) -> f64 {
        v * SPEED_OF_LIGHT
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_mass_mode() {
        let m = mode(PI, PI / 2.0, 1, 0).unwrap();
        assert!((m.mass() - 1.0).abs() < 1e-15);
        assert!((m.compton_wavelength() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn two_by_one_guide() {
        let m = mode(2.0, 1.0, 1, 1).unwrap();
        // π√5/2 = 3.5124073655203634...
        assert!((m.mass() - 3.512_407_365_520_363_4).abs() < 1e-14);
    }

    #[test]
    fn invalid_indices_and_dimensions() {
        let spec = WaveguideSpec::new(2.0, 1.0).unwrap();
        assert_eq!(WaveguideMode::new(spec, 0, 1), Err(Error::InvalidIndex { r: 0, s: 1 }));
        assert_eq!(WaveguideMode::new(spec, 0, 0), Err(Error::InvalidIndex { r: 0, s: 0 }));
        assert!(WaveguideSpec::new(-1.0, 1.0).is_err());
        assert!(WaveguideSpec::new(1.0, f64::NAN).is_err());
        let swapped = WaveguideSpec::new(1.0, 2.0).unwrap();
        assert!(swapped.swapped);
        assert_eq!((swapped.b1, swapped.b2), (2.0, 1.0));
    }

    #[test]
    fn dispersion_values() {
        let m = mode(PI, PI / 2.0, 1, 0).unwrap();
        assert_eq!(dispersion(&m, 0.0).unwrap().energy, 1.0);
        assert!((dispersion(&m, 3f64.sqrt()).unwrap().energy - 2.0).abs() < 1e-15);
        assert_eq!(dispersion(&m, -1.0), Err(Error::NegativeWavenumber(-1.0)));
        match axial_wavenumber(&m, 0.9).unwrap() {
            AxialWave::Evanescent { decay } => assert!((decay - 0.19f64.sqrt()).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
        assert_eq!(axial_wavenumber(&m, 1.0).unwrap(), AxialWave::Propagating { k3: 0.0 });
    }

    #[test]
    fn velocities_values() {
        let m = mode(PI, PI / 2.0, 1, 0).unwrap();
        let v = velocities(&m, 2.0).unwrap();
        assert!((v.group - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert!((v.phase - 2.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((v.group * v.phase - 1.0).abs() < 1e-15);
        let near = velocities(&m, 1.0 + 1e-9).unwrap();
        assert!(near.group < 1e-4);
        assert!(near.guide_wavelength > 1e4);
        assert!(matches!(velocities(&m, 1.0), Err(Error::AtOrBelowCutoff { .. })));
        assert!(matches!(velocities(&m, 0.5), Err(Error::AtOrBelowCutoff { .. })));
    }

    #[test]
    fn decomposition_at_cutoff() {
        let m = mode(PI, PI / 2.0, 1, 0).unwrap();
        let d = decompose(&m, 0.0, 0.0).unwrap();
        assert_eq!(d.k_l, FourMomentum::new(1.0, 0.0, 0.0, 0.0));
        assert_eq!(d.k_t, FourMomentum::new(0.0, 1.0, 0.0, 0.0));
        assert_eq!(d.closure_residual(), 0.0);
    }

    #[test]
    fn decomposition_invariants() {
        let m = mode(PI, PI / 2.0, 1, 0).unwrap();
        let d = decompose_along(&m, 3f64.sqrt(), 0.7, &KVector::new(0.2, -0.5, 0.4)).unwrap();
        assert!((d.k_l.norm_sqr() - 1.0).abs() < 1e-14);
        assert!(d.k_l.dot(&d.k_t).abs() < 1e-14);
        assert!(d.k.norm_sqr().abs() < 1e-14);
        assert!((d.eta.norm_sqr() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn zigzag_pair() {
        let m = mode(PI, PI / 2.0, 1, 0).unwrap();
        let pair = plane_wave_pair(&m, 3f64.sqrt()).unwrap();
        assert!((pair.first.time - 2.0).abs() < 1e-15);
        assert!(pair.first.norm_sqr().abs() < 1e-14);
        assert!(pair.second.norm_sqr().abs() < 1e-14);
        assert!((pair.pair_mass_sqr() - 4.0).abs() < 1e-14);
        let standing = plane_wave_pair(&m, 0.0).unwrap();
        assert!((standing.zigzag_angle() - PI / 2.0).abs() < 1e-15);
        assert_eq!(standing.first.space, -standing.second.space);
    }

    #[test]
    fn rest_frame_boost() {
        let m = mode(PI, PI / 2.0, 1, 0).unwrap();
        let d = decompose(&m, 3f64.sqrt(), 0.0).unwrap();
        let chi = rest_frame_rapidity(&m, 3f64.sqrt()).unwrap();
        let rest = d.k_l.boost(chi);
        assert!((rest.time - 1.0).abs() < 1e-14);
        assert!(rest.space.norm() < 1e-14);
    }

    #[test]
    fn tunneling_cases() {
        let old = mode(PI, PI / 2.0, 1, 0).unwrap();
        let t = tunneling_predicate(&old, 3.0, &old).unwrap();
        assert_eq!(t.verdict, TunnelingVerdict::Propagates);

        let wider = mode(2.0 * PI, PI, 1, 0).unwrap();
        assert!((wider.cutoff() - 0.5).abs() < 1e-15);
        assert_eq!(tunneling_predicate(&old, 3.0, &wider).unwrap().verdict, TunnelingVerdict::Propagates);

        let narrow = mode(PI / 2.0, PI / 4.0, 1, 0).unwrap();
        assert!((narrow.cutoff() - 2.0).abs() < 1e-15);
        let t = tunneling_predicate(&old, 3.0, &narrow).unwrap();
        let TunnelingVerdict::EvanescentInSomeFrame { rapidity } = t.verdict else {
            panic!("{t:?}");
        };
        // independent closed form: E′(χ) = m cosh(χ − χ_rest)
        let closed = (3.0f64 / 10f64.sqrt()).atanh() - 2f64.acosh();
        assert!((rapidity - closed).abs() < 1e-11, "{rapidity} vs {closed}");
        let e = 10f64.sqrt();
        assert!((e * rapidity.cosh() - 3.0 * rapidity.sinh() - 2.0).abs() < 1e-11);

        let slow = tunneling_predicate(&old, 1.0, &narrow).unwrap();
        assert_eq!(slow.verdict, TunnelingVerdict::EvanescentInSomeFrame { rapidity: 0.0 });
    }

    #[test]
    fn wr90_cutoff() {
        let m = mode(22.86e-3, 10.16e-3, 1, 0).unwrap();
        let fc = si::cutoff_frequency_hz(&m);
        assert!((fc - si::SPEED_OF_LIGHT / (2.0 * 22.86e-3)).abs() / fc < 1e-14);
        assert!((fc - 6.5566e9).abs() / 6.5566e9 < 1e-4);
    }
}
