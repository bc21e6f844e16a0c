//! Entanglement tangles, polynomial SL(2,C) invariants, numerical convex-roof
//! three-tangles and generalised monogamy diagnostics for pure states of up to
//! four qubits.
//!
//! The runnable programs under `examples/` walk through each capability; the
//! `qtangle` binary exposes the same computations on the command line.

pub mod cli;
pub mod comb;
pub mod error;
pub mod families;
pub mod monogamy;
pub mod qstate;
pub mod roof;
pub mod tangles;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use qstate::{DensityMatrix, PureState, QubitSubset};

/// Numerical tolerances shared by all modules.
pub mod tol {
    /// Structural checks: normalisation, hermiticity, trace.
    pub const STRUCTURAL: f64 = 1e-12;
    /// Spectral checks and the eigenvalue clamping window.
    pub const SPECTRAL: f64 = 1e-10;
    /// Norms below this are treated as the zero vector.
    pub const ZERO_NORM: f64 = 1e-14;
    /// Imaginary parts of eigenvalues of `rho * rho_tilde` tolerated before failing.
    pub const SPECTRAL_IMAG: f64 = 1e-9;
    /// Eigenvalue threshold defining the numerical rank of a density matrix.
    pub const RANK: f64 = 1e-10;
}
