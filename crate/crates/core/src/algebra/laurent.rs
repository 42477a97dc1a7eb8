use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Rational, SSeries};

/// Finite Laurent polynomial in `z` whose coefficients are vectors of
/// truncated s-series, one entry per basis class.
///
/// Canonical: z-powers whose coefficient vector vanishes are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentBlock {
    dim: usize,
    nvars: usize,
    order: u32,
    terms: BTreeMap<i32, Vec<SSeries>>,
}

impl LaurentBlock {
    pub fn zero(dim: usize, nvars: usize, order: u32) -> Self {
        LaurentBlock { dim, nvars, order, terms: BTreeMap::new() }
    }

    /// The class `z^0 * e_alpha` with constant coefficient one.
    pub fn basis_class(dim: usize, nvars: usize, order: u32, alpha: usize) -> Self {
        let mut b = LaurentBlock::zero(dim, nvars, order);
        b.add_at(0, alpha, &SSeries::one(nvars, order));
        b
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn z_powers(&self) -> impl Iterator<Item = i32> + '_ {
        self.terms.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &[SSeries])> {
        self.terms.iter().map(|(k, v)| (*k, v.as_slice()))
    }

    pub fn component(&self, zpow: i32) -> Option<&[SSeries]> {
        self.terms.get(&zpow).map(Vec::as_slice)
    }

    /// Coefficient series at `z^zpow`, basis class `alpha` (zero if absent).
    pub fn coefficient(&self, zpow: i32, alpha: usize) -> SSeries {
        self.terms
            .get(&zpow)
            .map(|v| v[alpha].clone())
            .unwrap_or_else(|| SSeries::zero(self.nvars, self.order))
    }

    pub fn add_at(&mut self, zpow: i32, alpha: usize, s: &SSeries) {
        self.add_scaled_at(zpow, alpha, s, &Rational::one());
    }

    pub fn add_scaled_at(&mut self, zpow: i32, alpha: usize, s: &SSeries, c: &Rational) {
        debug_assert!(alpha < self.dim);
        if s.is_zero() || c.is_zero() {
            return;
        }
        let (dim, nvars, order) = (self.dim, self.nvars, self.order);
        let entry = self
            .terms
            .entry(zpow)
            .or_insert_with(|| vec![SSeries::zero(nvars, order); dim]);
        entry[alpha].add_assign_scaled(s, c);
        if entry.iter().all(SSeries::is_zero) {
            self.terms.remove(&zpow);
        }
    }

    pub fn add_assign(&mut self, other: &LaurentBlock) {
        self.add_assign_scaled(other, &Rational::one());
    }

    pub fn add_assign_scaled(&mut self, other: &LaurentBlock, c: &Rational) {
        debug_assert_eq!(self.dim, other.dim);
        for (&k, v) in &other.terms {
            for (alpha, s) in v.iter().enumerate() {
                self.add_scaled_at(k, alpha, s, c);
            }
        }
    }

    pub fn sub(&self, other: &LaurentBlock) -> LaurentBlock {
        let mut out = self.clone();
        out.add_assign_scaled(other, &Rational::from_integer(-1));
        out
    }

    /// Multiplication by `z^m`.
    pub fn scale_z(&self, m: i32) -> LaurentBlock {
        LaurentBlock {
            dim: self.dim,
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(k, v)| (k + m, v.clone())).collect(),
        }
    }

    /// Part supported on z-powers `>= 0`.
    pub fn nonnegative_part(&self) -> LaurentBlock {
        self.filter_powers(|k| k >= 0)
    }

    /// Part supported on z-powers `<= -1`.
    pub fn negative_part(&self) -> LaurentBlock {
        self.filter_powers(|k| k < 0)
    }

    fn filter_powers(&self, keep: impl Fn(i32) -> bool) -> LaurentBlock {
        LaurentBlock {
            dim: self.dim,
            nvars: self.nvars,
            order: self.order,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(**k))
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    pub fn truncate(&self, order: u32) -> LaurentBlock {
        let mut out = LaurentBlock::zero(self.dim, self.nvars, order);
        for (&k, v) in &self.terms {
            for (alpha, s) in v.iter().enumerate() {
                out.add_at(k, alpha, &s.truncate(order));
            }
        }
        out
    }

    /// Every stored term as `(z-power, class, s-series)`, skipping zero series.
    pub fn entries(&self) -> impl Iterator<Item = (i32, usize, &SSeries)> {
        self.terms.iter().flat_map(|(k, v)| {
            v.iter().enumerate().filter(|(_, s)| !s.is_zero()).map(move |(a, s)| (*k, a, s))
        })
    }
}

/// `b * z^m`.
pub fn block_scale_z(b: &LaurentBlock, m: i32) -> LaurentBlock {
    b.scale_z(m)
}

#[derive(Serialize, Deserialize)]
struct BlockRepr {
    dim: usize,
    nvars: usize,
    order: u32,
    terms: Vec<ZTerm>,
}

#[derive(Serialize, Deserialize)]
struct ZTerm {
    z: i32,
    components: Vec<SSeries>,
}

impl Serialize for LaurentBlock {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BlockRepr {
            dim: self.dim,
            nvars: self.nvars,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| ZTerm { z: *k, components: v.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentBlock {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = BlockRepr::deserialize(d)?;
        let mut out = LaurentBlock::zero(repr.dim, repr.nvars, repr.order);
        for t in repr.terms {
            if t.components.len() != repr.dim {
                return Err(D::Error::custom("component count does not match dim"));
            }
            for (alpha, s) in t.components.iter().enumerate() {
                out.add_at(t.z, alpha, s);
            }
        }
        Ok(out)
    }
}
