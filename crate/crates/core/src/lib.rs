//! Spectral computations for the Feinberg-Zee random hopping matrix.
//!
//! The crate covers the periodic part of the almost-sure spectrum from
//! several directions:
//!
//! * [`signvec`]: sign patterns `k ∈ {±1}^n` and the index set `K` of the
//!   polynomial symmetries,
//! * [`charpoly`]: exact integer polynomials `q_k`, `p_k` and the Chebyshev
//!   families `P_m`, `Q_m`, `P_m*`,
//! * [`roots`]: simultaneous complex root finding and bracketed real solves,
//! * [`spectra`]: periodic spectra, finite-section eigenvalues and the
//!   inclusions between them,
//! * [`bounds`]: explicit upper bounds (numerical ranges, pseudospectra) and
//!   the explicit lower-bound region `W`,
//! * [`dynamics`]: filled Julia sets, critical orbits and the degree-18
//!   attracting fixed point certificate.

pub mod bounds;
pub mod charpoly;
pub mod dynamics;
mod error;
pub mod io;
pub mod raster;
pub mod roots;
pub mod signvec;
pub mod spectra;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use charpoly::IntPoly;
pub use raster::{RasterGrid, Window};
pub use roots::{Bracket, RootSet};
pub use signvec::{Parity, SignVector};
pub use spectra::SpectralCloud;
