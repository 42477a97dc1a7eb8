//! Exact computation of primitive forms for weighted homogeneous
//! singularities, together with the flat coordinates and prepotential of
//! the resulting Frobenius manifold.
//!
//! The pipeline is
//! [`milnor_basis`] -> [`build_unfolding`] -> [`solve_star`] -> [`prepotential`],
//! with [`pipeline::compute`] running all of it plus the consistency checks.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod brieskorn;
pub mod catalog;
pub mod error;
pub mod frobenius;
pub mod milnor;
pub mod mirror;
pub mod pipeline;
pub mod primitive;

pub use algebra::{LaurentBlock, Monomial, Poly, Rational, SSeries, Term};
pub use brieskorn::{reduce, verify_exact_class, FormClass, MonomialReducer, SeriesPoly};
pub use catalog::{Catalog, CatalogEntry};
pub use error::{Error, Result};
pub use frobenius::{
    euler_check, flat_coordinates, four_point_function, invert_coordinates, prepotential,
    wdvv_check, FrobeniusData,
};
pub use milnor::{central_charge, divide_by_jacobian, milnor_basis, residue_pairing, MilnorData, WeightedPolynomial};
pub use mirror::{diagonal_symmetries, transpose, weights_from_matrix, DiagonalSymmetryGroup, InvertiblePolynomial};
pub use pipeline::{compute, verify_record, Computation, PrepotentialRecord};
pub use primitive::{build_unfolding, j_components, solve_star, PrimitiveFormResult, UnfoldingState};
