//! Improved Holder exponents for planar K-quasiregular gradient mappings,
//! together with the numerical certificates backing them.
//!
//! The library splits into five layers:
//!
//! * [`exponent`]: closed-form exponents (`1/K`, `alpha1`, `alpha0`,
//!   `alpha2`) and the family `alpha(t)` they come from.
//! * [`optimize`]: concave maximization of the family, the quartic that
//!   characterizes the maximizer, and a concavity certificate.
//! * [`methods`]: the named methods behind one trait, plus sweep tables.
//! * [`pointwise`]: pointwise Jacobian algebra, margin sweeps of the
//!   weighted bound, and its discrete coefficient counterpart.
//! * [`fourier`]: sampled fields on polar grids, angular Fourier identities,
//!   energy quadrature, and decay measurements against the bounds.
//!
//! The `hbound` binary exposes all of it behind subcommands; see the crate
//! README for the command map.

pub mod cli;
pub mod error;
pub mod exponent;
pub mod fourier;
pub mod mc;
pub mod methods;
pub mod optimize;
pub mod pointwise;

pub use error::{Error, Result};
