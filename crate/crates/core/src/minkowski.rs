//! Four-vectors with the metric `diag(1, −1, −1, −1)`.

use std::ops::{Add, Neg, Sub};

use nalgebra::Vector3;

/// Four-momentum `(ω; k)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourMomentum {
    pub time: f64,
    pub space: Vector3<f64>,
}

impl FourMomentum {
    pub fn new(time: f64, x: f64, y: f64, z: f64) -> Self {
        FourMomentum { time, space: Vector3::new(x, y, z) }
    }

    pub fn from_parts(time: f64, space: Vector3<f64>) -> Self {
        FourMomentum { time, space }
    }

    /// Null vector with the given spatial part.
    pub fn lightlike(space: Vector3<f64>) -> Self {
        FourMomentum { time: space.norm(), space }
    }

    /// Minkowski product `a⁰b⁰ − a·b`.
    pub fn dot(&self, other: &FourMomentum) -> f64 {
        self.time * other.time - self.space.dot(&other.space)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.dot(self)
    }

    pub fn scale(&self, s: f64) -> FourMomentum {
        FourMomentum { time: self.time * s, space: self.space * s }
    }

    /// Pure boost with rapidity `χ` along the unit vector `axis`:
    /// `(E, p_∥) ↦ (E cosh χ − p_∥ sinh χ, p_∥ cosh χ − E sinh χ)`, transverse
    /// components unchanged.
    pub fn boost_along(&self, rapidity: f64, axis: &Vector3<f64>) -> FourMomentum {
        let n = axis.normalize();
        let (ch, sh) = (rapidity.cosh(), rapidity.sinh());
        let par = self.space.dot(&n);
        let perp = self.space - n * par;
        FourMomentum {
            time: self.time * ch - par * sh,
            space: perp + n * (par * ch - self.time * sh),
        }
    }

    /// Boost along `e3`.
    pub fn boost(&self, rapidity: f64) -> FourMomentum {
        self.boost_along(rapidity, &Vector3::z())
    }

    /// Components as `[t, x, y, z]`.
    pub fn to_array(&self) -> [f64; 4] {
        [self.time, self.space.x, self.space.y, self.space.z]
    }
}

impl Add for FourMomentum {
    type Output = FourMomentum;
    fn add(self, rhs: FourMomentum) -> FourMomentum {
        FourMomentum { time: self.time + rhs.time, space: self.space + rhs.space }
    }
}

impl Sub for FourMomentum {
    type Output = FourMomentum;
    fn sub(self, rhs: FourMomentum) -> FourMomentum {
        FourMomentum { time: self.time - rhs.time, space: self.space - rhs.space }
    }
}

impl Neg for FourMomentum {
    type Output = FourMomentum;
    fn neg(self) -> FourMomentum {
        FourMomentum { time: -self.time, space: -self.space }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_rapidity_is_identity() {
        let k = FourMomentum::new(2.0, 0.3, -1.0, 1.5);
        assert_eq!(k.boost(0.0), k);
    }

    #[test]
    fn boost_composes_additively() {
        let k = FourMomentum::new(3.0, 0.5, 0.2, 1.0);
        let two = k.boost(0.4).boost(-1.1);
        let one = k.boost(-0.7);
        assert!((two - one).to_array().iter().all(|d| d.abs() < 1e-14));
    }

    #[test]
    fn lightlike_is_null() {
        assert!(FourMomentum::lightlike(Vector3::new(1.0, -2.0, 0.5)).norm_sqr().abs() < 1e-14);
    }
}
