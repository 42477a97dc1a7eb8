//! Inputs shared by the benchmarks.

use primform::{Catalog, MilnorData, WeightedPolynomial};

/// Catalog polynomial by name; panics on an unknown name.
pub fn polynomial(name: &str) -> WeightedPolynomial {
    Catalog::builtin().get(name).expect("catalog entry").weighted().expect("valid entry")
}

/// Milnor data using the catalog basis when the entry lists one.
pub fn milnor(name: &str) -> MilnorData {
    Catalog::builtin().get(name).expect("catalog entry").milnor().expect("valid entry")
}
