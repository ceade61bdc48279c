//! Exact scalars: rationals, the cyclotomic field Q(ζ₂₄), Laurent
//! polynomials, and seeded sampling of evaluation points.

mod cyclo;
mod poly;
mod ratfunc;
mod rational;
mod ring;
mod sample;
mod wire;

pub use cyclo::{cyclo_root, Cyclo24};
pub use poly::{poly_exact_div, IntPolynomial, Poly};
pub use ratfunc::RatFunc;
pub use rational::Rational;
pub use ring::{Field, Ring};
pub use sample::{any_point, generic_position, sample_points, Sampler, MAX_PART};
pub use wire::WireScalar;
