//! Cavity QED at desk scale: the model hierarchy from the Jaynes-Cummings
//! model through the quantum Rabi model, gauge-truncated light-matter
//! Hamiltonians, the polaron frame, and the Dicke model, together with
//! open-system engines (standard, dressed, and generalized master equations).
//!
//! Conventions used throughout:
//! - hbar = k_B = 1; frequencies are in units of the cavity frequency
//!   unless physical units are explicitly requested.
//! - Composite spaces put the photon mode at site 0 and the matter system
//!   at site 1, so a state index is `n * d_matter + s`.
//! - Spin basis ordering is (|g>, |e>) with sigma_z = diag(-1, +1) and
//!   sigma_minus = |g><e|.

pub mod analysis;
pub mod error;
pub mod matter1d;
pub mod models;
pub mod opcore;
pub mod opensys;

pub use error::CqedError;

/// Shorthand for the complex scalar used everywhere.
pub type C64 = num_complex::Complex64;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, CqedError>;
