//! The bundled catalog of singularities and its TOML format.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{parse_monomial, Monomial, Poly, Rational, Term};
use crate::error::{Error, Result};
use crate::milnor::{MilnorData, WeightedPolynomial};

/// Environment variable naming an alternative catalog file.
pub const CATALOG_ENV: &str = "PRIMFORM_CATALOG";

const BUILTIN: &str = include_str!("../data/catalog.toml");

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub central_charge: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub milnor_number: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transpose: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub variables: Vec<String>,
    pub weights: Vec<Rational>,
    pub polynomial: Vec<Term>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

impl CatalogEntry {
    pub fn poly(&self) -> Result<Poly> {
        let n = self.variables.len();
        Poly::from_terms(
            n,
            self.polynomial.iter().map(|t| (Monomial::new(t.exponents.clone()), t.coeff.clone())),
        )
    }

    pub fn weighted(&self) -> Result<WeightedPolynomial> {
        WeightedPolynomial::new(self.variables.clone(), self.weights.clone(), self.poly()?)
    }

    pub fn explicit_basis(&self) -> Result<Option<Vec<Monomial>>> {
        self.basis
            .as_ref()
            .map(|b| b.iter().map(|s| parse_monomial(s, &self.variables)).collect())
            .transpose()
    }

    /// Milnor data using the listed basis when one is given.
    pub fn milnor(&self) -> Result<MilnorData> {
        let f = self.weighted()?;
        match self.explicit_basis()? {
            Some(b) => MilnorData::with_basis(&f, b),
            None => MilnorData::new(&f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    #[serde(rename = "singularity")]
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Catalog(e.to_string()))
    }

    pub fn builtin() -> Self {
        Catalog::parse(BUILTIN).expect("bundled catalog parses")
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Catalog(format!("{}: {e}", path.display())))?;
        Catalog::parse(&text)
    }

    /// Explicit path first, then the environment variable, then the bundled file.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        if let Some(p) = path {
            return Catalog::from_path(p);
        }
        match std::env::var_os(CATALOG_ENV) {
            Some(p) if !p.is_empty() => Catalog::from_path(Path::new(&p)),
            _ => Ok(Catalog::builtin()),
        }
    }

    /// Case-insensitive lookup.
    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name.eq_ignore_ascii_case(name))
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.name.as_str()).collect()
    }

    /// The entries carrying an expected transpose, i.e. the exceptional family.
    pub fn exceptional(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries
            .iter()
            .filter(|e| e.expected.as_ref().is_some_and(|x| x.transpose.is_some()))
    }
}
