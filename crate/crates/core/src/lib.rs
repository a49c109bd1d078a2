//! Solvers and asymptotics for the dispersionless shallow-water (Airy) system
//!
//! ```text
//! η_t + (uη)_x = 0,    u_t + u u_x + η_x = 0
//! ```
//!
//! started from truncated-parabola data whose minimum touches the bottom. The
//! parabolic core collapses at a finite time into a global shock; this crate
//! follows the solution up to the collapse in closed form and continues the
//! weak solution past it.
//!
//! * [`exact`]: parabola coefficients, characteristics, shoulder simple waves
//!   and their cusp asymptotics before collapse.
//! * [`shock`]: jump conditions, the `Q*` cubic, the double-Riemann solution.
//! * [`scenarios`]: initial data families and the outer solutions that bracket
//!   the shocks.
//! * [`asymptotics`]: short-time post-collapse expansions and the local Taylor
//!   recursion used to cross-check them.
//! * [`spectral`]: Chebyshev collocation in shock-fitted (unfolding)
//!   coordinates.
//! * [`weno`]: fifth-order WENO shock capturing in physical coordinates.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
#![warn(missing_docs)]

extern crate alloc;

mod dual;
mod error;
mod math;

pub mod asymptotics;
pub mod exact;
pub mod interp;
pub mod roots;
pub mod scenarios;
pub mod shock;
pub mod spectral;
pub mod weno;

pub use error::{Error, Result};
pub use exact::{FieldSnapshot, ScenarioParams};
pub use scenarios::Scenario;
