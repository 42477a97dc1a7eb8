//! Exact arithmetic substrate: rationals, polynomials, truncated power
//! series in the deformation parameters, and z-Laurent blocks.

mod laurent;
mod monomial;
mod parse;
mod poly;
mod rational;
mod series;

use serde::{Deserialize, Serialize};

pub use laurent::{block_scale_z, LaurentBlock};
pub use monomial::{monomials_of_integer_degree, monomials_of_total_degree, Monomial};
pub use parse::{parse_monomial, parse_poly, variables_in};
pub use poly::{poly_mul, Poly};
pub use rational::Rational;
pub use series::{sseries_mul, SSeries};

/// Serialized term record: `{exponents: [..], coeff: "p/q"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub exponents: Vec<u32>,
    pub coeff: Rational,
}
