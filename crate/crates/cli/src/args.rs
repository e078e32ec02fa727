use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "photonloc", version, about = "Waveguide photon kinematics and position-operator checks")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,

    #[command(subcommand)]
    pub command: Command,
}

/// Flags accepted by every command. Any of them may also come from
/// `--config`; a flag on the command line wins.
#[derive(Args, Debug, Default)]
pub struct Common {
    /// Wider transverse dimension (swapped with --b2 if smaller)
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub b1: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub b2: Option<f64>,
    /// Mode index along b1 (≥ 1)
    #[arg(long, global = true)]
    pub r: Option<u32>,
    /// Mode index along b2 (≥ 0)
    #[arg(long, global = true)]
    pub s: Option<u32>,
    /// Lengths in metres, frequencies in Hz, velocities in m/s
    #[arg(long, global = true)]
    pub si: bool,
    /// csv or json
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Write to a file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// File of `key = value` lines pre-setting any flag
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Finite-difference step
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub h: Option<f64>,
    /// Eigenvalue tolerance
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub tol: Option<f64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Table of modes sorted by cutoff
    Modes {
        #[arg(long)]
        max_r: Option<u32>,
        #[arg(long)]
        max_s: Option<u32>,
    },
    /// Sweep of dispersion and velocities above cutoff
    Dispersion {
        #[arg(long, allow_hyphen_values = true)]
        omega_min: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        omega_max: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
        /// Also write an SVG line chart of ω against k3
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Split a guided four-momentum into its apparent and frozen parts
    Decompose {
        #[arg(long, allow_hyphen_values = true)]
        k3: Option<f64>,
        /// Direction of the transverse momentum (radians); defaults to atan2(k2, k1)
        #[arg(long, allow_hyphen_values = true)]
        azimuth: Option<f64>,
    },
    /// Boost the apparent four-momentum along the guide axis
    Boost {
        #[arg(long, allow_hyphen_values = true)]
        k3: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        rapidity: Option<f64>,
    },
    /// Does a narrower guide force the photon to become evanescent?
    Tunneling {
        #[arg(long, allow_hyphen_values = true)]
        k3: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        new_b1: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        new_b2: Option<f64>,
        /// Defaults to --r
        #[arg(long)]
        new_r: Option<u32>,
        /// Defaults to --s
        #[arg(long)]
        new_s: Option<u32>,
    },
    /// Run the verification suites
    Verify {
        /// all, basis, position, fock, dirac or kinematics
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, hide = true)]
        drop_k_term: bool,
    },
}
