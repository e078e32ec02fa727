//! First-quantized photon position operators as finite-difference operators
//! in momentum space.
//!
//! All variants share the form
//!
//! ```text
//! X̂ = i(∇_k − k/2ω²) I − i Σ_λ [∇_k u(k, λ)] u†(k, λ)
//! ```
//!
//! with `u = ε(k, λ)` on 3-component fields and `u = f(k, λ)` or
//! `u = g(−k, λ)` on 6-component spinor fields. The naive operator is `i∇_k`
//! alone. Derivatives are central differences; nothing is differentiated in
//! closed form.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::momentum_basis::{
    helicity_polarization, spinor_f, spinor_g, Helicity, KVector, MomentumWavefunction,
    SmoothDomain,
};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Accuracy order of a central difference.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DifferenceOrder {
    Second,
    Fourth,
}

/// Central-difference rule for `∂/∂k_j`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FiniteDifferenceScheme {
    step: f64,
    order: DifferenceOrder,
}

impl FiniteDifferenceScheme {
    pub fn new(step: f64, order: DifferenceOrder) -> Result<Self> {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::InvalidScheme(format!("step must be positive, got {step}")));
        }
        Ok(FiniteDifferenceScheme { step, order })
    }

    /// Second-order scheme with step `h`.
    pub fn second_order(step: f64) -> Result<Self> {
        Self::new(step, DifferenceOrder::Second)
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn order(&self) -> DifferenceOrder {
        self.order
    }

    /// Same rule with the step scaled by `factor`.
    pub fn refined(&self, factor: f64) -> Result<Self> {
        Self::new(self.step * factor, self.order)
    }

    /// Largest displacement the stencil samples.
    pub fn reach(&self) -> f64 {
        match self.order {
            DifferenceOrder::Second => self.step,
            DifferenceOrder::Fourth => 2.0 * self.step,
        }
    }

    /// Reject evaluation points closer than ten stencil reaches to a
    /// singular set of `domain`.
    pub fn check(&self, k: &KVector, domain: SmoothDomain) -> Result<()> {
        let distance = domain.distance(k);
        if 10.0 * self.reach() > distance {
            return Err(Error::StencilCrossesSingularity { reach: self.reach(), distance });
        }
        Ok(())
    }

    /// `∂f/∂k_axis` at `k`, without any domain check.
    pub fn partial<F>(&self, f: F, k: &KVector, axis: usize) -> Result<DVector<Complex64>>
    where
        F: Fn(&KVector) -> Result<DVector<Complex64>>,
    {
        let h = self.step;
        match self.order {
            DifferenceOrder::Second => {
                let plus = f(&k.shifted(axis, h))?;
                let minus = f(&k.shifted(axis, -h))?;
                Ok((plus - minus).unscale(2.0 * h))
            }
            DifferenceOrder::Fourth => {
                let p1 = f(&k.shifted(axis, h))?;
                let m1 = f(&k.shifted(axis, -h))?;
                let p2 = f(&k.shifted(axis, 2.0 * h))?;
                let m2 = f(&k.shifted(axis, -2.0 * h))?;
                Ok(((p1 - m1).scale(8.0) - (p2 - m2)).unscale(12.0 * h))
            }
        }
    }
}

/// Central-difference gradient `(∂φ/∂k1, ∂φ/∂k2, ∂φ/∂k3)`.
pub fn grad_k(
    phi: &MomentumWavefunction,
    k: &KVector,
    scheme: &FiniteDifferenceScheme,
) -> Result<[DVector<Complex64>; 3]> {
    scheme.check(k, phi.domain())?;
    let f = |q: &KVector| phi.evaluate(q);
    Ok([scheme.partial(f, k, 0)?, scheme.partial(f, k, 1)?, scheme.partial(f, k, 2)?])
}

/// Which position operator to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PositionOperatorKind {
    /// `i∇_k` on fields with any number of components.
    Naive,
    /// Connection built from `ε(k, λ)`, acting on 3-component fields.
    Hawton3,
    /// Connection built from `f(k, λ)`, acting on spinor fields.
    SpinorPlus,
    /// Connection built from `g(−k, λ)`, acting on spinor fields.
    SpinorMinus,
}

impl PositionOperatorKind {
    pub const CONNECTED: [PositionOperatorKind; 3] = [
        PositionOperatorKind::Hawton3,
        PositionOperatorKind::SpinorPlus,
        PositionOperatorKind::SpinorMinus,
    ];

    pub fn components(self) -> Option<usize> {
        match self {
            PositionOperatorKind::Naive => None,
            PositionOperatorKind::Hawton3 => Some(3),
            PositionOperatorKind::SpinorPlus | PositionOperatorKind::SpinorMinus => Some(6),
        }
    }

    /// Where the frame vectors of this kind are smooth.
    pub fn domain(self) -> SmoothDomain {
        match self {
            PositionOperatorKind::Naive => SmoothDomain::EVERYWHERE,
            PositionOperatorKind::Hawton3 | PositionOperatorKind::SpinorPlus => {
                SmoothDomain::POLARIZATION
            }
            PositionOperatorKind::SpinorMinus => SmoothDomain::REFLECTED_POLARIZATION,
        }
    }

    /// The frame vector `u(k, λ)` whose derivative forms the connection.
    fn frame_vector(self, k: &KVector, helicity: Helicity) -> Result<DVector<Complex64>> {
        match self {
            PositionOperatorKind::Naive => unreachable!("naive operator has no connection"),
            PositionOperatorKind::Hawton3 => {
                let eps = helicity_polarization(k, helicity)?;
                Ok(DVector::from_iterator(3, eps.iter().copied()))
            }
            PositionOperatorKind::SpinorPlus => Ok(spinor_f(k, helicity)?.to_vector()),
            PositionOperatorKind::SpinorMinus => {
                Ok(spinor_g(&k.reflected(), helicity)?.to_vector())
            }
        }
    }
}

/// A position operator together with the switch for its `−k/2ω²` term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PositionOperator {
    pub kind: PositionOperatorKind,
    measure_term: bool,
}

impl PositionOperator {
    pub fn new(kind: PositionOperatorKind) -> Self {
        PositionOperator { kind, measure_term: true }
    }

    /// The same operator with `−k/2ω²` removed. Only useful as a negative
    /// control: the result no longer has the localized states as eigenstates.
    pub fn without_measure_term(self) -> Self {
        PositionOperator { measure_term: false, ..self }
    }

    pub fn has_measure_term(&self) -> bool {
        self.measure_term && self.kind != PositionOperatorKind::Naive
    }

    fn domain(&self) -> SmoothDomain {
        let d = self.kind.domain();
        if self.has_measure_term() {
            d.union(SmoothDomain::ORIGIN)
        } else {
            d
        }
    }

    /// `(X̂_1 φ, X̂_2 φ, X̂_3 φ)` at `k`.
    pub fn apply(
        &self,
        phi: &MomentumWavefunction,
        k: &KVector,
        scheme: &FiniteDifferenceScheme,
    ) -> Result<[DVector<Complex64>; 3]> {
        if let Some(n) = self.kind.components() {
            if phi.components() != n {
                return Err(Error::ComponentMismatch { expected: n, found: phi.components() });
            }
        }
        scheme.check(k, self.domain().union(phi.domain()))?;
        let value = phi.evaluate(k)?;
        let grads = grad_k(phi, k, scheme)?;
        let mut out = grads.map(|g| g * I);
        if self.kind == PositionOperatorKind::Naive {
            return Ok(out);
        }
        if self.measure_term {
            let w2 = k.omega().powi(2);
            for (axis, o) in out.iter_mut().enumerate() {
                *o -= &value * (I * (k.0[axis] / (2.0 * w2)));
            }
        }
        for helicity in Helicity::ALL {
            let kind = self.kind;
            let u = move |q: &KVector| kind.frame_vector(q, helicity);
            let overlap = u(k)?.dotc(&value);
            for (axis, o) in out.iter_mut().enumerate() {
                let du = scheme.partial(u, k, axis)?;
                *o -= du * (I * overlap);
            }
        }
        Ok(out)
    }

    /// The wavefunction `k ↦ (X̂_axis φ)(k)`, for nesting operators.
    pub fn image(
        &self,
        phi: &MomentumWavefunction,
        axis: usize,
        scheme: FiniteDifferenceScheme,
    ) -> MomentumWavefunction {
        let op = *self;
        let inner = phi.clone();
        MomentumWavefunction::new(phi.components(), self.domain().union(phi.domain()), move |k| {
            let [x, y, z] = op.apply(&inner, k, &scheme)?;
            Ok(match axis {
                0 => x,
                1 => y,
                _ => z,
            })
        })
    }
}

/// Apply the operator of `kind` (with all its terms) to `φ` at `k`.
pub fn apply_position(
    kind: PositionOperatorKind,
    phi: &MomentumWavefunction,
    k: &KVector,
    scheme: &FiniteDifferenceScheme,
) -> Result<[DVector<Complex64>; 3]> {
    PositionOperator::new(kind).apply(phi, k, scheme)
}

/// `‖X̂φ(k) − x0 φ(k)‖ / ‖φ(k)‖`, with the norm taken over all three vector
/// components of `X̂` jointly.
pub fn relative_eigen_residual(
    op: &PositionOperator,
    phi: &MomentumWavefunction,
    x0: [f64; 3],
    k: &KVector,
    scheme: &FiniteDifferenceScheme,
) -> Result<f64> {
    let value = phi.evaluate(k)?;
    let image = op.apply(phi, k, scheme)?;
    let num: f64 = image
        .iter()
        .zip(x0)
        .map(|(xi, x)| (xi - &value * Complex64::new(x, 0.0)).norm_squared())
        .sum();
    Ok(num.sqrt() / value.norm())
}

/// Max over `samples` of the relative eigenvalue residual of `x̂` on the
/// localized state of eigenvalue `x0` and helicity `λ`.
pub fn eigenvalue_residual(
    x0: [f64; 3],
    helicity: Helicity,
    samples: &[KVector],
    scheme: &FiniteDifferenceScheme,
) -> Result<f64> {
    eigenvalue_residual_with(
        &PositionOperator::new(PositionOperatorKind::Hawton3),
        x0,
        helicity,
        samples,
        scheme,
    )
}

/// As [`eigenvalue_residual`], for any connected operator. Spinor operators
/// are tested on `√ω f(k,λ)e^{−ix0·k}` or `√ω g(−k,λ)e^{−ix0·k}`.
pub fn eigenvalue_residual_with(
    op: &PositionOperator,
    x0: [f64; 3],
    helicity: Helicity,
    samples: &[KVector],
    scheme: &FiniteDifferenceScheme,
) -> Result<f64> {
    let phi = localized_state(op.kind, x0, helicity);
    let mut worst = 0.0_f64;
    for k in samples {
        worst = worst.max(relative_eigen_residual(op, &phi, x0, k, scheme)?);
    }
    Ok(worst)
}

/// The localized state matching the field type of `kind`.
pub fn localized_state(
    kind: PositionOperatorKind,
    x0: [f64; 3],
    helicity: Helicity,
) -> MomentumWavefunction {
    match kind {
        PositionOperatorKind::Naive | PositionOperatorKind::Hawton3 => {
            MomentumWavefunction::localized(x0, helicity)
        }
        PositionOperatorKind::SpinorPlus => MomentumWavefunction::localized_spinor_plus(x0, helicity),
        PositionOperatorKind::SpinorMinus => {
            MomentumWavefunction::localized_spinor_minus(x0, helicity)
        }
    }
}

/// `‖[X̂_i, X̂_j] φ(k)‖ / ‖φ(k)‖` by nested application.
pub fn commutator_residual(
    op: &PositionOperator,
    i: usize,
    j: usize,
    phi: &MomentumWavefunction,
    k: &KVector,
    scheme: &FiniteDifferenceScheme,
) -> Result<f64> {
    if i == j {
        return Ok(0.0);
    }
    let xj_phi = op.image(phi, j, *scheme);
    let xi_phi = op.image(phi, i, *scheme);
    let ij = op.apply(&xj_phi, k, scheme)?;
    let ji = op.apply(&xi_phi, k, scheme)?;
    Ok((&ij[i] - &ji[j]).norm() / phi.evaluate(k)?.norm())
}

/// Residual of `∇ε(λ) = Σ_λ′ [∇ε(λ′)] ε†(λ′) ε(λ)`, both sides built from the
/// same stencil.
pub fn connection_identity_residual(
    k: &KVector,
    helicity: Helicity,
    scheme: &FiniteDifferenceScheme,
) -> Result<f64> {
    connection_identity_residual_over(k, helicity, scheme, &Helicity::ALL)
}

/// As [`connection_identity_residual`] with the sum restricted to `sum_over`.
/// Dropping a helicity breaks completeness, and the residual shows it.
pub fn connection_identity_residual_over(
    k: &KVector,
    helicity: Helicity,
    scheme: &FiniteDifferenceScheme,
    sum_over: &[Helicity],
) -> Result<f64> {
    scheme.check(k, SmoothDomain::POLARIZATION)?;
    let kind = PositionOperatorKind::Hawton3;
    let target = kind.frame_vector(k, helicity)?;
    let mut total = 0.0;
    for axis in 0..3 {
        let lhs = scheme.partial(|q| kind.frame_vector(q, helicity), k, axis)?;
        let mut rhs = DVector::zeros(3);
        for &h in sum_over {
            let du = scheme.partial(|q| kind.frame_vector(q, h), k, axis)?;
            rhs += du * kind.frame_vector(k, h)?.dotc(&target);
        }
        total += (lhs - rhs).norm_squared();
    }
    Ok(total.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::momentum_basis::{max_abs, SmoothDomain};

    fn k0() -> KVector {
        KVector::new(0.3, 0.4, 1.2)
    }

    fn scheme(h: f64) -> FiniteDifferenceScheme {
        FiniteDifferenceScheme::second_order(h).unwrap()
    }

    #[test]
    fn scheme_validation() {
        assert!(FiniteDifferenceScheme::second_order(0.0).is_err());
        assert!(FiniteDifferenceScheme::second_order(-1e-3).is_err());
        assert!(FiniteDifferenceScheme::second_order(f64::NAN).is_err());
        let s = FiniteDifferenceScheme::new(1e-3, DifferenceOrder::Fourth).unwrap();
        assert_eq!(s.reach(), 2e-3);
    }

    #[test]
    fn gradient_of_constant_vanishes() {
        let v = DVector::from_vec(vec![Complex64::new(1.0, 2.0), Complex64::new(-3.0, 0.5)]);
        let phi = MomentumWavefunction::new(2, SmoothDomain::EVERYWHERE, move |_| Ok(v.clone()));
        for g in grad_k(&phi, &k0(), &scheme(1e-3)).unwrap() {
            assert!(max_abs(&g) <= 1e-12);
        }
    }

    #[test]
    fn gradient_is_exact_on_linear_functions() {
        let v = DVector::from_vec(vec![Complex64::new(0.5, -1.0), Complex64::new(2.0, 0.0)]);
        let phi =
            MomentumWavefunction::new(2, SmoothDomain::EVERYWHERE, move |k| Ok(&v * Complex64::from(k.0.x)));
        let g = grad_k(&phi, &k0(), &scheme(0.25)).unwrap();
        let expected = DVector::from_vec(vec![Complex64::new(0.5, -1.0), Complex64::new(2.0, 0.0)]);
        assert!(max_abs(&(&g[0] - expected)) < 1e-14);
        assert!(max_abs(&g[1]) < 1e-14 && max_abs(&g[2]) < 1e-14);
    }

    #[test]
    fn stencil_near_seam_is_rejected() {
        let phi = MomentumWavefunction::localized([0.0; 3], Helicity::Plus);
        let near = KVector::new(5e-4, 0.0, -1.0);
        assert!(matches!(
            grad_k(&phi, &near, &scheme(1e-4)),
            Err(Error::StencilCrossesSingularity { .. })
        ));
        // the same point is fine for a field built on ε(−k)
        let minus = MomentumWavefunction::localized_spinor_minus([0.0; 3], Helicity::Plus);
        assert!(grad_k(&minus, &near, &scheme(1e-4)).is_ok());
        let op = PositionOperator::new(PositionOperatorKind::SpinorMinus);
        assert!(op.apply(&minus, &KVector::new(5e-4, 0.0, 1.0), &scheme(1e-4)).is_err());
    }

    #[test]
    fn component_mismatch() {
        let phi = MomentumWavefunction::localized([0.0; 3], Helicity::Plus);
        assert_eq!(
            apply_position(PositionOperatorKind::SpinorPlus, &phi, &k0(), &scheme(1e-4)).err(),
            Some(Error::ComponentMismatch { expected: 6, found: 3 })
        );
    }

    #[test]
    fn zero_eigenvalue() {
        for h in Helicity::ALL {
            let r = eigenvalue_residual([0.0; 3], h, &[k0()], &scheme(1e-4)).unwrap();
            assert!(r < 1e-7, "{h}: {r}");
        }
    }

    #[test]
    fn localized_state_is_eigenstate() {
        let x0 = [1.0, -2.0, 0.5];
        let r = eigenvalue_residual(x0, Helicity::Plus, &[k0()], &scheme(1e-4)).unwrap();
        assert!(r <= 1e-6, "{r}");
    }

    #[test]
    fn spinor_plus_reproduces_position() {
        let x = [0.7, 0.2, -1.1];
        let op = PositionOperator::new(PositionOperatorKind::SpinorPlus);
        let r = eigenvalue_residual_with(&op, x, Helicity::Minus, &[k0()], &scheme(1e-4)).unwrap();
        assert!(r <= 1e-6, "{r}");
        let op = PositionOperator::new(PositionOperatorKind::SpinorMinus);
        let r = eigenvalue_residual_with(&op, x, Helicity::Zero, &[k0()], &scheme(1e-4)).unwrap();
        assert!(r <= 1e-6, "{r}");
    }

    #[test]
    fn dropping_measure_term_breaks_eigenvalue_equation() {
        let op = PositionOperator::new(PositionOperatorKind::Hawton3).without_measure_term();
        let r = eigenvalue_residual_with(&op, [1.0, -2.0, 0.5], Helicity::Plus, &[k0()], &scheme(1e-4))
            .unwrap();
        // the missing term has relative size |k|/2ω² = 1/(2ω)
        assert!((r - 1.0 / (2.0 * k0().omega())).abs() < 1e-6, "{r}");
    }

    #[test]
    fn same_axis_commutator_is_zero() {
        let phi = MomentumWavefunction::localized([1.0, 0.0, 0.0], Helicity::Plus);
        let op = PositionOperator::new(PositionOperatorKind::Hawton3);
        assert_eq!(commutator_residual(&op, 1, 1, &phi, &k0(), &scheme(1e-3)).unwrap(), 0.0);
    }

    #[test]
    fn connection_identity() {
        let s = scheme(1e-4);
        let r = connection_identity_residual(&KVector::new(0.0, 0.0, 1.0), Helicity::Zero, &s).unwrap();
        assert!(r <= 1e-10, "{r}");
        for h in Helicity::TRANSVERSE {
            assert!(connection_identity_residual(&k0(), h, &s).unwrap() <= 1e-10);
        }
        let truncated =
            connection_identity_residual_over(&k0(), Helicity::Zero, &s, &Helicity::TRANSVERSE)
                .unwrap();
        assert!(truncated > 1e-3, "{truncated}");
    }
}
