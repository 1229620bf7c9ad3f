//! Topological defect fields and their conserved charges.
//!
//! The crate builds classic defect configurations — circle-valued phase
//! fields, hedgehogs, anisotropic windings, SU(2)-valued Skyrme maps,
//! gauged Higgs monopoles, sine-Gordon kinks — and measures their integer
//! invariants several independent ways:
//!
//! * determinant-form topological currents and their volume, surface-flux,
//!   and contour-winding charges in 1 to 4 dimensions ([`charges`]);
//! * the rotation-gradient route: contortion, the Nye tensor, dislocation
//!   density, the compatibility identity Curl G + Cof G = 0, and three
//!   equivalent degree integrals for quaternion fields ([`defects`]);
//! * abelian magnetic flux and current conservation for gauged Higgs
//!   configurations ([`monopole`]);
//! * sector charges and an explicit leapfrog evolution for double
//!   sine-Gordon kinks ([`solitons`]);
//! * the probe-dimension rule and homotopy-group table behind all of the
//!   above ([`homotopy`]).
//!
//! Heavy grid sweeps run data-parallel through [rayon] when the default
//! `parallel` feature is enabled and fall back to equivalent sequential
//! loops without it; both paths use the same blocked reduction order, so
//! results are bit-identical either way ([`exec`]).

pub mod charges;
pub mod defects;
pub mod error;
pub mod exec;
pub mod fields;
pub mod grid;
pub mod homotopy;
pub mod linalg;
pub mod monopole;
pub mod profiles;
pub mod quadrature;
pub mod rotations;
pub mod solitons;

pub use error::{Error, Result};
