use thiserror::Error;

/// Errors raised by the photonloc library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero momentum has no polarization basis")]
    ZeroMomentum,

    #[error("wavefunctions have different component counts ({left} vs {right})")]
    MixedComponentCount { left: usize, right: usize },

    #[error("operator acts on {expected}-component fields, got {found}")]
    ComponentMismatch { expected: usize, found: usize },

    #[error("finite-difference stencil of reach {reach:e} at distance {distance:e} from a singularity")]
    StencilCrossesSingularity { reach: f64, distance: f64 },

    #[error("invalid finite-difference scheme: {0}")]
    InvalidScheme(String),

    #[error("wavefunction is not defined at {0:?}")]
    OutsideDomain([f64; 3]),

    #[error("mode index {0} is not part of the lattice")]
    UnknownMode(usize),

    #[error("lattice needs at least 3 points along each differentiated axis, got {0}")]
    LatticeTooSmall(usize),

    #[error("lattice contains k = 0")]
    LatticeContainsOrigin,

    #[error("position operator X requires a periodic lattice")]
    NonPeriodicLattice,

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("invalid waveguide dimensions b1 = {b1}, b2 = {b2}")]
    InvalidDimensions { b1: f64, b2: f64 },

    #[error("invalid mode indices (r, s) = ({r}, {s}); need r >= 1, s >= 0")]
    InvalidIndex { r: u32, s: u32 },

    #[error("negative axial wavenumber {0}")]
    NegativeWavenumber(f64),

    #[error("frequency {omega} is at or below the cutoff {cutoff}")]
    AtOrBelowCutoff { omega: f64, cutoff: f64 },

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
