//! Exact computer algebra for the finite and combinatorial pieces of the
//! asymptotic Hecke algebra of a p-adic group.
//!
//! * [`exact`]: rationals, cyclotomic numbers, Laurent polynomials in
//!   q^{1/2}, torus characters.
//! * [`fingroup`]: small finite groups, actions, characters, 2-cocycles.
//! * [`ksquare`]: the convolution algebra K_Γ(Y×Y) and its idempotents.
//! * [`classgrp`]: unipotent classes of classical groups.
//! * [`repring`]: representation rings of classical and spin groups.
//! * [`jmodels`]: block-matrix models over character rings.
//! * [`rigid`]: rigid pairing Gram matrices of small examples.
//! * [`adjquot`]: coinvariant lattices of torus-by-finite groups.

pub mod adjquot;
pub mod classgrp;
pub mod error;
pub mod exact;
pub mod fingroup;
pub mod jmodels;
pub mod ksquare;
pub mod repring;
pub mod rigid;

pub use error::{Error, Result};
