//! Photon position operators and waveguide kinematics.
pub mod dirac;
pub mod error;
pub mod fock;
pub mod minkowski;
pub mod momentum_basis;
pub mod position;
pub mod report;
pub mod suites;
pub mod waveguide;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/basis.md")]
    mod basis {}
    #[doc = include_str!("../../../book/src/position.md")]
    mod position {}
    #[doc = include_str!("../../../book/src/fock.md")]
    mod fock {}
    #[doc = include_str!("../../../book/src/dirac.md")]
    mod dirac {}
    #[doc = include_str!("../../../book/src/waveguide.md")]
    mod waveguide {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
