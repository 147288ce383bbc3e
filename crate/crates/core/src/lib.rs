//! Negative refraction in two pictures.
//!
//! Plane-wave scattering at the interface between vacuum and a left-handed
//! (negative-index) half-space, and at a two-dimensional Klein-Gordon step
//! potential in the strong regime. Both pictures refract a beam to the same
//! side of the normal; in the Klein case this comes with a negative
//! transmission coefficient and a reflection coefficient above one.
//!
//! Module map:
//! - [`media`]: Drude/Lorentz effective medium, refractive and group index.
//! - [`em_scatter`]: per-component electromagnetic refraction and coefficients.
//! - [`kg_scatter`]: regime classification, causal branch choice, Klein coefficients.
//! - [`mapping`]: index to potential transformation and its counter-dispersive energies.
//! - [`wavepacket`]: angular-spectrum beams, field assembly on a grid, beam-axis measurement.
//! - [`cli`]: config parsing, scenarios and file writers behind the `negref` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod em_scatter;
mod error;
pub mod interface;
pub mod kg_scatter;
pub mod mapping;
pub mod media;
pub mod units;
pub mod wavepacket;

pub use error::{Error, Result};
