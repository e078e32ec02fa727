//! Polarization triads, photon spinors and the momentum-space scalar product.
//!
//! Everything here is expressed in natural units (ħ = c = 1), so the photon
//! frequency is the wavenumber magnitude, `ω = |k|`.
//!
//! The rotated frame `e1, e2, e3` is singular on the negative `e3` half-axis.
//! On the axis itself the frame takes its limit along `p = (δ, 0, p3)` with
//! `δ → 0⁺`:
//!
//! * `p3 > 0`: the standard basis, `(e_i)_j = δ_ij`;
//! * `p3 < 0`: `e1 = (-1, 0, 0)`, `e2 = (0, 1, 0)`, `e3 = (0, 0, -1)`.
//!
//! Approaching the negative half-axis from different azimuths gives different
//! limits, so finite differences must keep clear of it (see [`SmoothDomain`]).

use std::fmt;
use std::sync::Arc;

use nalgebra::{DVector, Matrix3, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CVector3 = Vector3<Complex64>;

/// A wavenumber 3-vector `k = (k1, k2, k3)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KVector(pub Vector3<f64>);

impl KVector {
    pub fn new(k1: f64, k2: f64, k3: f64) -> Self {
        KVector(Vector3::new(k1, k2, k3))
    }

    /// The photon frequency `ω = |k|`.
    pub fn omega(&self) -> f64 {
        self.0.norm()
    }

    pub fn as_vector(&self) -> &Vector3<f64> {
        &self.0
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.0.x, self.0.y, self.0.z]
    }

    /// Shift by `step` along axis `axis` (0-based).
    pub fn shifted(&self, axis: usize, step: f64) -> Self {
        let mut v = self.0;
        v[axis] += step;
        KVector(v)
    }

    /// Reflected vector `-k`.
    pub fn reflected(&self) -> Self {
        KVector(-self.0)
    }

    fn require_nonzero(&self) -> Result<f64> {
        if !self.0.iter().all(|c| c.is_finite()) {
            return Err(Error::NonFinite("wavenumber"));
        }
        let w = self.omega();
        if w == 0.0 {
            return Err(Error::ZeroMomentum);
        }
        Ok(w)
    }
}

impl From<[f64; 3]> for KVector {
    fn from(a: [f64; 3]) -> Self {
        KVector::new(a[0], a[1], a[2])
    }
}

impl From<Vector3<f64>> for KVector {
    fn from(v: Vector3<f64>) -> Self {
        KVector(v)
    }
}

/// Photon helicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Helicity {
    Minus,
    Zero,
    Plus,
}

impl Helicity {
    pub const ALL: [Helicity; 3] = [Helicity::Minus, Helicity::Zero, Helicity::Plus];
    pub const TRANSVERSE: [Helicity; 2] = [Helicity::Minus, Helicity::Plus];

    pub fn value(self) -> i8 {
        match self {
            Helicity::Minus => -1,
            Helicity::Zero => 0,
            Helicity::Plus => 1,
        }
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.value())
    }

    pub fn from_value(v: i8) -> Option<Self> {
        match v {
            -1 => Some(Helicity::Minus),
            0 => Some(Helicity::Zero),
            1 => Some(Helicity::Plus),
            _ => None,
        }
    }

    /// Position in [`Helicity::ALL`].
    pub fn index(self) -> usize {
        (self.value() + 1) as usize
    }
}

impl fmt::Display for Helicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.value())
    }
}

/// Real right-handed orthonormal frame attached to a direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotatedFrame {
    pub e1: Vector3<f64>,
    pub e2: Vector3<f64>,
    pub e3: Vector3<f64>,
}

impl RotatedFrame {
    pub fn axis(&self, i: usize) -> Vector3<f64> {
        match i {
            0 => self.e1,
            1 => self.e2,
            _ => self.e3,
        }
    }

    /// Max deviation of `[e1 e2 e3]ᵀ[e1 e2 e3]` from the identity, combined
    /// with the right-handedness defect `|e1 × e2 − e3|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let m = Matrix3::from_columns(&[self.e1, self.e2, self.e3]);
        let gram = m.transpose() * m - Matrix3::identity();
        let handed = (self.e1.cross(&self.e2) - self.e3).amax();
        gram.amax().max(handed)
    }
}

/// The frame whose third axis is `p / |p|`.
///
/// Written in the form `e1 = (1 − n1²/(1+n3), −n1 n2/(1+n3), −n1)` and
/// `e2 = (−n1 n2/(1+n3), 1 − n2²/(1+n3), −n2)` with `n = p/|p|`, which equals
/// the rational expression in `p` but stays accurate near the positive axis.
/// Close to the negative axis `1 + n3` is evaluated as `ρ²/(|p|(|p| − p3))`
/// to avoid cancellation.
pub fn rotated_triad(p: &KVector) -> Result<RotatedFrame> {
    let norm = p.require_nonzero()?;
    let [p1, p2, p3] = p.to_array();
    let rho2 = p1 * p1 + p2 * p2;
    let e3 = p.0 / norm;
    if rho2 == 0.0 {
        let frame = if p3 > 0.0 {
            RotatedFrame { e1: Vector3::x(), e2: Vector3::y(), e3: Vector3::z() }
        } else {
            RotatedFrame { e1: -Vector3::x(), e2: Vector3::y(), e3: -Vector3::z() }
        };
        return Ok(frame);
    }
    let (n1, n2) = (p1 / norm, p2 / norm);
    // q = 1 / (1 + n3), accurate on both hemispheres.
    let q = if p3 >= 0.0 {
        norm / (norm + p3)
    } else {
        norm * (norm - p3) / rho2
    };
    let e1 = Vector3::new(1.0 - n1 * n1 * q, -n1 * n2 * q, -n1);
    let e2 = Vector3::new(-n1 * n2 * q, 1.0 - n2 * n2 * q, -n2);
    Ok(RotatedFrame { e1, e2, e3 })
}

/// Distance from `k` to the negative `e3` half-axis, where the frame
/// convention has its seam (the origin lies on it).
pub fn seam_distance(k: &KVector) -> f64 {
    let [k1, k2, k3] = k.to_array();
    if k3 <= 0.0 {
        k1.hypot(k2)
    } else {
        k.omega()
    }
}

/// Helicity polarization vector `ε(k, λ)`.
///
/// `ε(k, 0) = k/|k|` and `ε(k, ±1) = ∓(e1 ± i e2)/√2`, so that
/// `k̂ × ε(k, λ) = −iλ ε(k, λ)`.
pub fn helicity_polarization(k: &KVector, helicity: Helicity) -> Result<CVector3> {
    let frame = rotated_triad(k)?;
    Ok(polarization_from_frame(&frame, helicity))
}

fn polarization_from_frame(frame: &RotatedFrame, helicity: Helicity) -> CVector3 {
    let re = |v: &Vector3<f64>| v.map(|x| Complex64::new(x, 0.0));
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let e1 = re(&frame.e1);
    let ie2 = frame.e2.map(|x| Complex64::new(0.0, x));
    match helicity {
        Helicity::Zero => re(&frame.e3),
        Helicity::Plus => -(e1 + ie2).scale(s),
        Helicity::Minus => (e1 - ie2).scale(s),
    }
}

/// The three polarization vectors of one wavenumber together with the real
/// frame they are built from.
#[derive(Clone, Debug, PartialEq)]
pub struct PolarizationTriad {
    pub eps_minus: CVector3,
    pub eps_zero: CVector3,
    pub eps_plus: CVector3,
    pub frame: RotatedFrame,
}

impl PolarizationTriad {
    pub fn new(k: &KVector) -> Result<Self> {
        let frame = rotated_triad(k)?;
        Ok(PolarizationTriad {
            eps_minus: polarization_from_frame(&frame, Helicity::Minus),
            eps_zero: polarization_from_frame(&frame, Helicity::Zero),
            eps_plus: polarization_from_frame(&frame, Helicity::Plus),
            frame,
        })
    }

    pub fn get(&self, helicity: Helicity) -> &CVector3 {
        match helicity {
            Helicity::Minus => &self.eps_minus,
            Helicity::Zero => &self.eps_zero,
            Helicity::Plus => &self.eps_plus,
        }
    }

    /// Max entry of `|ε†(λ)ε(λ′) − δ_λλ′|`.
    pub fn orthonormality_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for a in Helicity::ALL {
            for b in Helicity::ALL {
                let delta = if a == b { 1.0 } else { 0.0 };
                let g = self.get(a).dotc(self.get(b));
                worst = worst.max((g - delta).norm());
            }
        }
        worst
    }

    /// Max entry of `|Σ_λ ε(λ)ε†(λ) − I|`.
    pub fn completeness_residual(&self) -> f64 {
        let sum: Matrix3<Complex64> = Helicity::ALL
            .iter()
            .map(|&h| self.get(h) * self.get(h).adjoint())
            .sum();
        max_abs(&(sum - Matrix3::identity()))
    }

    /// Max of `|k̂ × ε(λ) + iλ ε(λ)|` over the transverse helicities.
    pub fn helicity_residual(&self) -> f64 {
        let khat = self.frame.e3.map(|x| Complex64::new(x, 0.0));
        Helicity::TRANSVERSE
            .iter()
            .map(|&h| {
                let eps = self.get(h);
                let lhs = khat.cross(eps);
                let rhs = eps * Complex64::new(0.0, -h.as_f64());
                max_abs(&(lhs - rhs))
            })
            .fold(0.0, f64::max)
    }
}

/// Six-component photon spinor, split into its two 3-vector blocks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhotonSpinor {
    pub upper: CVector3,
    pub lower: CVector3,
}

impl PhotonSpinor {
    pub fn to_vector(&self) -> DVector<Complex64> {
        DVector::from_iterator(6, self.upper.iter().chain(self.lower.iter()).copied())
    }

    pub fn to_vector6(&self) -> nalgebra::Vector6<Complex64> {
        nalgebra::Vector6::from_iterator(self.upper.iter().chain(self.lower.iter()).copied())
    }

    pub fn norm(&self) -> f64 {
        (self.upper.norm_squared() + self.lower.norm_squared()).sqrt()
    }
}

fn spinor_prefactor(helicity: Helicity) -> f64 {
    let l = helicity.as_f64();
    1.0 / (1.0 + l * l).sqrt()
}

/// Positive-frequency spinor `f(k, λ) = (ε, λε)/√(1+λ²)`.
pub fn spinor_f(k: &KVector, helicity: Helicity) -> Result<PhotonSpinor> {
    let eps = helicity_polarization(k, helicity)?.scale(spinor_prefactor(helicity));
    Ok(PhotonSpinor { upper: eps, lower: eps.scale(helicity.as_f64()) })
}

/// Negative-frequency spinor `g(k, λ) = (λε, ε)/√(1+λ²)`.
pub fn spinor_g(k: &KVector, helicity: Helicity) -> Result<PhotonSpinor> {
    let eps = helicity_polarization(k, helicity)?.scale(spinor_prefactor(helicity));
    Ok(PhotonSpinor { upper: eps.scale(helicity.as_f64()), lower: eps })
}

/// Singular sets a finite-difference stencil must keep clear of.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SmoothDomain {
    /// `k = 0`.
    pub origin: bool,
    /// The half-axis `k1 = k2 = 0, k3 ≤ 0`.
    pub negative_axis: bool,
    /// The half-axis `k1 = k2 = 0, k3 ≥ 0` (seam of anything built on `ε(−k)`).
    pub positive_axis: bool,
}

impl SmoothDomain {
    pub const EVERYWHERE: SmoothDomain =
        SmoothDomain { origin: false, negative_axis: false, positive_axis: false };
    pub const ORIGIN: SmoothDomain =
        SmoothDomain { origin: true, negative_axis: false, positive_axis: false };
    /// Seam of `ε(k, λ)`.
    pub const POLARIZATION: SmoothDomain =
        SmoothDomain { origin: true, negative_axis: true, positive_axis: false };
    /// Seam of `ε(−k, λ)`.
    pub const REFLECTED_POLARIZATION: SmoothDomain =
        SmoothDomain { origin: true, negative_axis: false, positive_axis: true };

    pub fn union(self, other: SmoothDomain) -> SmoothDomain {
        SmoothDomain {
            origin: self.origin || other.origin,
            negative_axis: self.negative_axis || other.negative_axis,
            positive_axis: self.positive_axis || other.positive_axis,
        }
    }

    /// Distance from `k` to the nearest flagged singular set (∞ if none).
    pub fn distance(&self, k: &KVector) -> f64 {
        let mut d = f64::INFINITY;
        if self.origin {
            d = d.min(k.omega());
        }
        if self.negative_axis {
            d = d.min(seam_distance(k));
        }
        if self.positive_axis {
            d = d.min(seam_distance(&k.reflected()));
        }
        d
    }
}

type EvalFn = dyn Fn(&KVector) -> Result<DVector<Complex64>> + Send + Sync;

/// A momentum-space wavefunction: a rule `k ↦ ℂⁿ` with `n` = 3 (vector
/// field) or 6 (spinor field), plus the set on which it is not smooth.
#[derive(Clone)]
pub struct MomentumWavefunction {
    components: usize,
    domain: SmoothDomain,
    eval: Arc<EvalFn>,
}

impl fmt::Debug for MomentumWavefunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MomentumWavefunction")
            .field("components", &self.components)
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

impl MomentumWavefunction {
    pub fn new<F>(components: usize, domain: SmoothDomain, eval: F) -> Self
    where
        F: Fn(&KVector) -> Result<DVector<Complex64>> + Send + Sync + 'static,
    {
        MomentumWavefunction { components, domain, eval: Arc::new(eval) }
    }

    pub fn zero(components: usize) -> Self {
        Self::new(components, SmoothDomain::EVERYWHERE, move |_| Ok(DVector::zeros(components)))
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn domain(&self) -> SmoothDomain {
        self.domain
    }

    pub fn evaluate(&self, k: &KVector) -> Result<DVector<Complex64>> {
        let v = (self.eval)(k)?;
        if v.len() != self.components {
            return Err(Error::ComponentMismatch { expected: self.components, found: v.len() });
        }
        Ok(v)
    }

    /// `a·self + b·other`.
    pub fn combine(
        &self,
        a: Complex64,
        other: &MomentumWavefunction,
        b: Complex64,
    ) -> Result<MomentumWavefunction> {
        if self.components != other.components {
            return Err(Error::MixedComponentCount {
                left: self.components,
                right: other.components,
            });
        }
        let (lhs, rhs) = (self.clone(), other.clone());
        Ok(Self::new(self.components, self.domain.union(other.domain), move |k| {
            Ok(lhs.evaluate(k)? * a + rhs.evaluate(k)? * b)
        }))
    }

    /// Vector field `C √ω ε(k, λ) exp(−i x0·k)` with `C = 1`; eigenfunction of
    /// the position operator with eigenvalue `x0`.
    pub fn localized(x0: [f64; 3], helicity: Helicity) -> Self {
        Self::new(3, SmoothDomain::POLARIZATION, move |k| {
            let eps = helicity_polarization(k, helicity)?;
            let amp = localized_amplitude(k, &x0);
            Ok(DVector::from_iterator(3, eps.iter().map(|e| e * amp)))
        })
    }

    /// Spinor field `√ω f(k, λ) exp(−i x0·k)`.
    pub fn localized_spinor_plus(x0: [f64; 3], helicity: Helicity) -> Self {
        Self::new(6, SmoothDomain::POLARIZATION, move |k| {
            let amp = localized_amplitude(k, &x0);
            Ok(spinor_f(k, helicity)?.to_vector() * amp)
        })
    }

    /// Spinor field `√ω g(−k, λ) exp(−i x0·k)`.
    pub fn localized_spinor_minus(x0: [f64; 3], helicity: Helicity) -> Self {
        Self::new(6, SmoothDomain::REFLECTED_POLARIZATION, move |k| {
            let amp = localized_amplitude(k, &x0);
            Ok(spinor_g(&k.reflected(), helicity)?.to_vector() * amp)
        })
    }
}

/// Largest modulus among the entries of a complex matrix.
pub fn max_abs<R: nalgebra::Dim, C: nalgebra::Dim, S: nalgebra::RawStorage<Complex64, R, C>>(
    m: &nalgebra::Matrix<Complex64, R, C, S>,
) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `√ω exp(−i x0·k)`.
pub(crate) fn localized_amplitude(k: &KVector, x0: &[f64; 3]) -> Complex64 {
    let phase = -(x0[0] * k.0.x + x0[1] * k.0.y + x0[2] * k.0.z);
    Complex64::from_polar(k.omega().sqrt(), phase)
}

/// Momentum-space scalar product `Σ_k (1/ω) φ1†(k) φ2(k)` over a finite set
/// of wavenumbers.
pub fn scalar_product(
    phi1: &MomentumWavefunction,
    phi2: &MomentumWavefunction,
    lattice: &[KVector],
) -> Result<Complex64> {
    if phi1.components() != phi2.components() {
        return Err(Error::MixedComponentCount {
            left: phi1.components(),
            right: phi2.components(),
        });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for k in lattice {
        let w = k.require_nonzero()?;
        acc += phi1.evaluate(k)?.dotc(&phi2.evaluate(k)?) / w;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn on_axis_frame_is_standard_basis() {
        let f = rotated_triad(&KVector::new(0.0, 0.0, 1.0)).unwrap();
        assert_eq!(f.e1, Vector3::x());
        assert_eq!(f.e2, Vector3::y());
        assert_eq!(f.e3, Vector3::z());
    }

    #[test]
    fn frame_along_x() {
        let f = rotated_triad(&KVector::new(1.0, 0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(f.e1, Vector3::new(0.0, 0.0, -1.0), epsilon = 1e-15);
        assert_abs_diff_eq!(f.e2, Vector3::new(0.0, 1.0, 0.0), epsilon = 1e-15);
        assert_abs_diff_eq!(f.e3, Vector3::new(1.0, 0.0, 0.0), epsilon = 1e-15);
        assert_abs_diff_eq!(f.e1.cross(&f.e2), f.e3, epsilon = 1e-15);
    }

    /// The raw rational form, used as an independent oracle off-axis.
    fn rational_frame(p: [f64; 3]) -> (Vector3<f64>, Vector3<f64>) {
        let [p1, p2, p3] = p;
        let n = (p1 * p1 + p2 * p2 + p3 * p3).sqrt();
        let r = p1 * p1 + p2 * p2;
        let e1 = Vector3::new(
            (p1 * p1 * p3 + p2 * p2 * n) / (n * r),
            (p1 * p2 * p3 - p1 * p2 * n) / (n * r),
            -p1 / n,
        );
        let e2 = Vector3::new(
            (p1 * p2 * p3 - p1 * p2 * n) / (n * r),
            (p2 * p2 * p3 + p1 * p1 * n) / (n * r),
            -p2 / n,
        );
        (e1, e2)
    }

    #[test]
    fn stable_form_matches_rational_form() {
        for p in [[0.3, 0.4, 1.2], [-1.0, 2.0, -0.5], [0.7, -0.1, 0.0], [2.0, 1.0, -3.0]] {
            let f = rotated_triad(&p.into()).unwrap();
            let (e1, e2) = rational_frame(p);
            assert_abs_diff_eq!(f.e1, e1, epsilon = 1e-13);
            assert_abs_diff_eq!(f.e2, e2, epsilon = 1e-13);
        }
    }

    #[test]
    fn negative_axis_takes_limit_from_positive_k1() {
        let on_axis = rotated_triad(&KVector::new(0.0, 0.0, -1.0)).unwrap();
        assert_eq!(on_axis.e1, -Vector3::x());
        assert_eq!(on_axis.e2, Vector3::y());
        assert_eq!(on_axis.e3, -Vector3::z());
        for delta in [1e-3, 1e-5, 1e-7] {
            let p = KVector::new(delta, 0.0, -(1.0 - delta * delta).sqrt());
            let near = rotated_triad(&p).unwrap();
            assert!((near.e1 - on_axis.e1).amax() < 2.0 * delta);
            assert!((near.e2 - on_axis.e2).amax() < 2.0 * delta);
        }
        assert!(on_axis.orthonormality_defect() < 1e-12);
    }

    #[test]
    fn zero_momentum_is_rejected() {
        assert_eq!(rotated_triad(&KVector::new(0.0, 0.0, 0.0)), Err(Error::ZeroMomentum));
        assert!(helicity_polarization(&KVector::new(0.0, 0.0, 0.0), Helicity::Zero).is_err());
        assert!(spinor_f(&KVector::new(0.0, 0.0, 0.0), Helicity::Plus).is_err());
    }

    #[test]
    fn helicity_vectors_on_axis() {
        let k = KVector::new(0.0, 0.0, 1.0);
        let e0 = helicity_polarization(&k, Helicity::Zero).unwrap();
        assert_eq!(e0, CVector3::new(c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)));
        let ep = helicity_polarization(&k, Helicity::Plus).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let expected = CVector3::new(c(-s, 0.0), c(0.0, -s), c(0.0, 0.0));
        assert!(max_abs(&(ep - expected)) < 1e-15);
        // ẑ × ε = (−ε_y, ε_x, 0) by hand
        let cross = CVector3::new(-ep.y, ep.x, c(0.0, 0.0));
        assert!(max_abs(&(cross - ep * c(0.0, -1.0))) < 1e-15);
    }

    #[test]
    fn spinor_blocks() {
        let k = KVector::new(0.3, 0.4, 1.2);
        let eps0 = helicity_polarization(&k, Helicity::Zero).unwrap();
        let f0 = spinor_f(&k, Helicity::Zero).unwrap();
        let g0 = spinor_g(&k, Helicity::Zero).unwrap();
        assert_eq!(f0.upper, eps0);
        assert_eq!(f0.lower, CVector3::zeros());
        assert_eq!(g0.upper, CVector3::zeros());
        assert_eq!(g0.lower, eps0);

        let eps = helicity_polarization(&k, Helicity::Plus).unwrap();
        let f = spinor_f(&k, Helicity::Plus).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!(max_abs(&(f.upper - eps.scale(s))) < 1e-15);
        assert!(max_abs(&(f.lower - eps.scale(s))) < 1e-15);

        let fm = spinor_f(&k, Helicity::Minus).unwrap();
        assert!((fm.norm() - 1.0).abs() < 1e-15);
        assert!((spinor_g(&k, Helicity::Minus).unwrap().norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn scalar_product_cases() {
        let pts: Vec<KVector> =
            vec![[0.3, 0.4, 1.2].into(), [-1.0, 0.5, 0.2].into(), [2.0, -2.0, 1.0].into()];
        let zero = MomentumWavefunction::zero(3);
        assert_eq!(scalar_product(&zero, &zero, &pts).unwrap(), c(0.0, 0.0));

        let phi = MomentumWavefunction::localized([0.0; 3], Helicity::Plus);
        let n = scalar_product(&phi, &phi, &pts).unwrap();
        assert!((n - c(3.0, 0.0)).norm() < 1e-14);

        let a = MomentumWavefunction::localized([1.0, 0.0, -1.0], Helicity::Minus);
        let b = MomentumWavefunction::localized([0.0, 2.0, 0.5], Helicity::Minus)
            .combine(c(0.5, 1.0), &phi, c(-1.0, 0.25))
            .unwrap();
        let ab = scalar_product(&a, &b, &pts).unwrap();
        let ba = scalar_product(&b, &a, &pts).unwrap();
        assert!((ab - ba.conj()).norm() < 1e-14);
    }

    #[test]
    fn scalar_product_rejects_mixed_components() {
        let v = MomentumWavefunction::zero(3);
        let s = MomentumWavefunction::zero(6);
        let pts = [KVector::new(1.0, 0.0, 0.0)];
        assert_eq!(
            scalar_product(&v, &s, &pts),
            Err(Error::MixedComponentCount { left: 3, right: 6 })
        );
    }

    #[test]
    fn domain_distances() {
        let k = KVector::new(0.3, 0.4, -1.0);
        assert!((SmoothDomain::POLARIZATION.distance(&k) - 0.5).abs() < 1e-15);
        assert!((SmoothDomain::REFLECTED_POLARIZATION.distance(&k) - k.omega()).abs() < 1e-15);
        assert_eq!(SmoothDomain::EVERYWHERE.distance(&k), f64::INFINITY);
    }
}
