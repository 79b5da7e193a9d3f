//! First-hitting-time (ruin) distribution of a lazy random walk.
//!
//! A walker on the non-negative integers steps right with probability `pr`,
//! left with `pl`, and stays put with `pp = 1 - pr - pl`. This crate computes
//! the distribution of the time the walker first reaches the origin, four
//! independent ways, and everything that hangs off it:
//!
//! - [`exact`]: the closed-form pmf — the classic ballot formula, the
//!   halting-walk finite sum, and its hypergeometric rewriting;
//! - [`oracles`]: validation routes — the defining recursion on a grid,
//!   Gauss-Legendre quadrature on the integral representation, and
//!   reproducible Monte Carlo;
//! - [`moments`]: the elementary moment generating function, closed-form low
//!   moments, an inductive solver for any order, and the total ruin
//!   probability;
//! - [`asymptotics`]: the geometric/power-law tail dichotomy, the
//!   continuum-limit inverse Gaussian density, and the off-simplex series
//!   identity;
//! - [`crosscheck`] and [`figure2`]: bulk equivalence sweeps and the survey
//!   figure data used by the command line.
//!
//! ```
//! use ruin::{HopProbabilities, StartPosition, TimeIndex};
//!
//! let params = HopProbabilities::strict(0.3, 0.5, 0.2)?;
//! let p = ruin::exact::pmf(StartPosition(1), TimeIndex(3), &params)?;
//! assert!((p.value - 0.095).abs() < 1e-13);
//!
//! let mean = ruin::moments::mean(StartPosition(5), &params)?;
//! assert_eq!(mean, 25.0);
//! # Ok::<(), ruin::Error>(())
//! ```

pub mod asymptotics;
pub mod crosscheck;
mod error;
pub mod exact;
pub mod figure2;
pub mod hypergeom;
pub mod moments;
mod numeric;
pub mod oracles;
pub mod params;
pub mod quadrature;

pub use error::{Error, Result};
pub use exact::{Method, PmfValue};
pub use numeric::{ln_gamma, log_factorial, KahanSum};
pub use params::{validate, HopProbabilities, StartPosition, TimeIndex};

/// Keeps the guide's code fences compiling: every chapter is also a doctest.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            #[allow(dead_code)]
            struct $name;
        };
    }

    chapter!(Walk, "../../../book/src/walk.md");
    chapter!(ExactChapter, "../../../book/src/exact.md");
    chapter!(Oracles, "../../../book/src/oracles.md");
    chapter!(Moments, "../../../book/src/moments.md");
    chapter!(Asymptotics, "../../../book/src/asymptotics.md");
    chapter!(Numerics, "../../../book/src/numerics.md");
}
