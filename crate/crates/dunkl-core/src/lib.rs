//! Ellipsoidal and sphero-conal h-harmonics for the Dunkl-Laplacian.
//!
//! The library builds the machinery around the differential-difference
//! operator D_j u = d/dx_j u + alpha_j (u - u∘sigma_j)/x_j and its Laplacian
//! Delta_h = sum D_j^2: Stieltjes quasi-polynomials and their decaying second
//! solutions, confocal ellipsoidal coordinates, internal/external harmonics,
//! the weighted fundamental solution, exact sphere moments, and the
//! differential-difference (Niven-type) series connecting them.
//!
//! Numerics are dual-mode: all algebraic kernels are generic over a [`scalar::Coeff`]
//! field so they run either in `f64` or in exact rational arithmetic
//! (`num_rational::BigRational`). Quadrature-backed evaluators are `f64` only.
//!
//! The crate is `no_std`-compatible (with `alloc`); the `std` feature (default)
//! only toggles `std::error::Error` impls and faster float intrinsics.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod coords;
pub mod dunkl;
pub mod error;
pub mod fundamental;
pub mod harmonics;
pub mod integrals;
pub(crate) mod linalg;
pub mod math;
pub mod model;
pub mod niven;
pub mod orthopoly;
pub mod poly;
pub mod quad;
pub mod radial;
pub mod scalar;
pub mod sphere;
pub mod stieltjes;
pub mod tail;
pub(crate) mod univar;
pub mod verify;

pub use error::Error;
pub use model::{DunklParams, EllipsoidAxes, HarmonicIndex, Point};

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
