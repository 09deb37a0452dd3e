use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("imaginary-axis frequency must be non-negative, got {0}")]
    NegativeFrequency(f64),

    #[error("degenerate medium pair: eps_host + eps_medium = {0}")]
    DegenerateMedia(Complex64),

    #[error("local-field factor is singular at eps = -1/2")]
    LocalFieldPole,

    #[error("separation vector has zero length")]
    ZeroSeparation,

    #[error("atom at or below the interface (height {0})")]
    BelowInterface(f64),

    #[error("resonance singularity at omega = {omega} with zero linewidth")]
    ResonanceSingularity { omega: f64 },

    #[error(
        "quadrature did not converge after {doublings} doublings \
         (last estimate {last}, previous {previous})"
    )]
    NonConvergence { doublings: u32, last: f64, previous: f64 },

    #[error("enhancement undefined: the free-space resonant term vanishes")]
    ZeroFreeSpaceReference,

    #[error(
        "finite-difference step {step} is ill-conditioned \
         (round-off estimate {roundoff:e} against force scale {scale:e})"
    )]
    IllConditioned { step: f64, roundoff: f64, scale: f64 },
}

pub(crate) fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}
