use core::fmt;

/// Errors reported by the solvers and closed-form evaluators.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of a closed-form expression.
    Domain(&'static str),
    /// A query at or past the collapse time was made of a pre-collapse formula.
    PostCollapse,
    /// The point is not inside the shoulder (simple-wave) region.
    OutsideShoulder,
    /// The shoulder solution is multivalued at the query point after collapse.
    PostShockQuery,
    /// Jump relations were asked for with `[η] = 0`.
    DegenerateJump,
    /// One side of a shock is (numerically) dry.
    Vacuum,
    /// A bracketing root solve found no sign change.
    NoBracket,
    /// A root solve ran out of iterations.
    NoConvergence {
        /// Iterations performed.
        iterations: usize,
    },
    /// The step size exceeds the stability bound.
    Cfl {
        /// Requested step.
        step: f64,
        /// Largest admissible step.
        limit: f64,
    },
    /// The Newton closure of the shock boundary condition stagnated.
    BoundaryClosure {
        /// Residual left after the last iteration.
        residual: f64,
    },
    /// A nodal value became non-physical (negative depth, NaN).
    NonPhysical(&'static str),
    /// No shock was found in a snapshot.
    NoShock,
    /// A post-processing extraction could not be performed.
    Extraction(&'static str),
}

/// Shorthand for results carrying [`Error`].
pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::PostCollapse => f.write_str("domain error: post-collapse"),
            Error::OutsideShoulder => f.write_str("outside shoulder region"),
            Error::PostShockQuery => f.write_str("post-shock query refused"),
            Error::DegenerateJump => f.write_str("degenerate jump: [eta] = 0"),
            Error::Vacuum => f.write_str("vacuum state on one side of the shock"),
            Error::NoBracket => f.write_str("root is not bracketed"),
            Error::NoConvergence { iterations } => {
                write!(f, "root solve did not converge after {iterations} iterations")
            }
            Error::Cfl { step, limit } => {
                write!(f, "step {step:e} violates the CFL bound {limit:e}")
            }
            Error::BoundaryClosure { residual } => {
                write!(f, "shock boundary closure stagnated (residual {residual:e})")
            }
            Error::NonPhysical(what) => write!(f, "non-physical state: {what}"),
            Error::NoShock => f.write_str("no shock detected"),
            Error::Extraction(what) => write!(f, "extraction error: {what}"),
        }
    }
}

impl core::error::Error for Error {}
