use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Monomial, Rational, Term};
use crate::error::Error;

/// Truncated multivariate power series: every stored exponent vector has
/// total degree at most `order`, and arithmetic drops anything beyond it.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SSeries {
    nvars: usize,
    order: u32,
    terms: BTreeMap<Monomial, Rational>,
}

impl SSeries {
    pub fn zero(nvars: usize, order: u32) -> Self {
        SSeries { nvars, order, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, order: u32, c: Rational) -> Self {
        let mut s = SSeries::zero(nvars, order);
        s.add_term(Monomial::one(nvars), c);
        s
    }

    pub fn one(nvars: usize, order: u32) -> Self {
        SSeries::constant(nvars, order, Rational::one())
    }

    pub fn var(nvars: usize, order: u32, i: usize) -> Self {
        let mut s = SSeries::zero(nvars, order);
        s.add_term(Monomial::var(nvars, i), Rational::one());
        s
    }

    pub fn from_terms(
        nvars: usize,
        order: u32,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self, Error> {
        let mut s = SSeries::zero(nvars, order);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::VariableMismatch { expected: nvars, found: m.nvars() });
            }
            s.add_term(m, c);
        }
        Ok(s)
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

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Adds `c * m`; silently dropped past the truncation order.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() || m.total_degree() > self.order {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &SSeries, c: &Rational) {
        debug_assert_eq!(self.nvars, other.nvars);
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn add(&self, other: &SSeries) -> SSeries {
        let mut out = self.truncate(self.order.min(other.order));
        out.add_assign_scaled(other, &Rational::one());
        out
    }

    pub fn sub(&self, other: &SSeries) -> SSeries {
        let mut out = self.truncate(self.order.min(other.order));
        out.add_assign_scaled(other, &Rational::from_integer(-1));
        out
    }

    pub fn neg(&self) -> SSeries {
        self.scale(&Rational::from_integer(-1))
    }

    pub fn scale(&self, c: &Rational) -> SSeries {
        if c.is_zero() {
            return SSeries::zero(self.nvars, self.order);
        }
        SSeries {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Drops every term of total degree above `order` and records the new order.
    pub fn truncate(&self, order: u32) -> SSeries {
        SSeries {
            nvars: self.nvars,
            order,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() <= order)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn with_order(mut self, order: u32) -> SSeries {
        if order < self.order {
            self.terms.retain(|m, _| m.total_degree() <= order);
        }
        self.order = order;
        self
    }

    /// Product truncated at `order` (which should not exceed either operand's order).
    pub fn mul_trunc(&self, other: &SSeries, order: u32) -> SSeries {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = SSeries::zero(self.nvars, order);
        for (m, a) in &self.terms {
            let dm = m.total_degree();
            if dm > order {
                continue;
            }
            for (n, b) in &other.terms {
                if dm + n.total_degree() <= order {
                    out.add_term(m.mul(n), a * b);
                }
            }
        }
        out
    }

    /// Product at the smaller of the two truncation orders.
    pub fn mul(&self, other: &SSeries) -> SSeries {
        self.mul_trunc(other, self.order.min(other.order))
    }

    /// Multiply by a monomial with coefficient, truncating at the series order.
    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> SSeries {
        let mut out = SSeries::zero(self.nvars, self.order);
        for (n, a) in &self.terms {
            out.add_term(n.mul(m), a * c);
        }
        out
    }

    pub fn derivative(&self, i: usize) -> SSeries {
        let mut out = SSeries::zero(self.nvars, self.order.saturating_sub(1));
        for (m, c) in &self.terms {
            if let Some((e, lowered)) = m.derivative(i) {
                out.add_term(lowered, c * Rational::from_integer(e as i64));
            }
        }
        out
    }

    pub fn homogeneous_part(&self, k: u32) -> SSeries {
        SSeries {
            nvars: self.nvars,
            order: self.order,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Lowest total degree present, `None` for the zero series.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).min()
    }

    /// Substitute `subs[i]` for the i-th variable, truncating at `order`.
    ///
    /// Every substituted series must have zero constant term for the truncation
    /// to be exact; this holds for all coordinate changes used here.
    pub fn compose(&self, subs: &[SSeries], order: u32) -> SSeries {
        assert_eq!(subs.len(), self.nvars, "substitution arity mismatch");
        let target_vars = subs.first().map(SSeries::nvars).unwrap_or(0);
        let mut powers: Vec<Vec<SSeries>> = subs
            .iter()
            .map(|s| vec![SSeries::one(target_vars, order)].into_iter().chain(std::iter::once(s.truncate(order))).collect())
            .collect();
        let mut out = SSeries::zero(target_vars, order);
        for (m, c) in &self.terms {
            if m.total_degree() > order {
                continue;
            }
            let mut acc = SSeries::constant(target_vars, order, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul_trunc(&powers[i][1], order);
                    powers[i].push(next);
                }
                acc = acc.mul_trunc(&powers[i][e as usize], order);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign_scaled(&acc, &Rational::one());
        }
        out
    }

    pub fn to_records(&self) -> Vec<Term> {
        self.terms
            .iter()
            .map(|(m, c)| Term { exponents: m.exponents().to_vec(), coeff: c.clone() })
            .collect()
    }
}

/// `a * b` truncated at `order`; the order may not exceed either operand's.
pub fn sseries_mul(a: &SSeries, b: &SSeries, order: u32) -> Result<SSeries, Error> {
    if a.nvars != b.nvars {
        return Err(Error::VariableMismatch { expected: a.nvars, found: b.nvars });
    }
    if order > a.order.min(b.order) {
        return Err(Error::ContractViolation(format!(
            "product order {order} exceeds operand orders {} and {}",
            a.order, b.order
        )));
    }
    Ok(a.mul_trunc(b, order))
}

#[derive(Serialize, Deserialize)]
struct SSeriesRepr {
    nvars: usize,
    order: u32,
    terms: Vec<Term>,
}

impl Serialize for SSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SSeriesRepr { nvars: self.nvars, order: self.order, terms: self.to_records() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = SSeriesRepr::deserialize(d)?;
        SSeries::from_terms(
            repr.nvars,
            repr.order,
            repr.terms.into_iter().map(|t| (Monomial::new(t.exponents), t.coeff)),
        )
        .map_err(serde::de::Error::custom)
    }
}
