//! Exact scalars: rationals, cyclotomic numbers, Laurent polynomials in
//! q^{1/2}, and torus characters.

pub mod cyclotomic;
pub mod laurent;
pub mod linalg;
pub(crate) mod qpoly;
pub mod rational;
pub mod torus;

pub use cyclotomic::Cyclotomic;
pub use laurent::{laurent_eval, poly_divides_power, HalfLaurent};
pub use rational::{int, rat, Rational};
pub use torus::{TorusChar, WeightParity};
