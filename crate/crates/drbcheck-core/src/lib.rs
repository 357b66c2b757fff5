//! Exact verification engine for case analyses on character lattices of
//! algebraic tori, CM types, small Lie algebra representations, quaternion
//! representations, polarization positivity and period bookkeeping.
//!
//! The crate is `no_std` with `alloc`; file formats, reports and the command
//! line live in the `drbcheck` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod arith;
pub mod cmtype;
pub mod lattice;
pub mod liereps;
pub mod periods;
pub mod positivity;
pub mod quatrep;
pub mod torus;

pub use arith::{rat, FieldElement, GaloisElement, MultiQuadField, Rational};
