//! Error type shared by the whole crate.

use crate::geometry::Axis;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The tetrahedron's volume is below the degeneracy threshold
    /// (coplanar or near-coplanar vertices).
    #[error("degenerate tetrahedron (volume below threshold)")]
    DegenerateTetrahedron,

    /// An operation that needs at least one point got none.
    #[error("empty sample")]
    EmptySample,

    /// Fewer points than the operation can work with.
    #[error("too few points: got {n}, need at least {min}")]
    TooFewPoints { n: usize, min: usize },

    /// A requested count was out of range (e.g. zero samples).
    #[error("invalid count: must be at least 1")]
    InvalidCount,

    /// The moment quartic has roots with imaginary parts above tolerance,
    /// so no four real coordinates are consistent with the sample moments.
    /// Usually means the sample is too small or not uniform; more points
    /// help.
    #[error("complex quartic roots{}: |Im| up to {max_imag:.3e}", axis_suffix(.axis))]
    ComplexRoots { max_imag: f64, axis: Option<Axis> },

    /// The eigenvalue iteration behind the quartic solver stalled even
    /// after symmetry-breaking shifts. Not expected on finite inputs.
    #[error("eigenvalue iteration did not converge")]
    NonConvergence,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Attach the axis a quartic-solver error came from.
    pub(crate) fn with_axis(self, ax: Axis) -> Self {
        match self {
            Error::ComplexRoots { max_imag, .. } => Error::ComplexRoots {
                max_imag,
                axis: Some(ax),
            },
            other => other,
        }
    }
}

fn axis_suffix(axis: &Option<Axis>) -> String {
    match axis {
        Some(ax) => format!(" on axis {ax}"),
        None => String::new(),
    }
}
