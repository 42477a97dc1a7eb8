//! Reduction of top forms `g(x, s) d^n x` to canonical classes in the formal
//! Brieskorn lattice.
//!
//! Convention: `(df + z d) Omega^{n-1} = 0`, which for `h_i` in the i-th slot
//! reads `[h_i * d_i f] = -z [d_i h_i]`. Every step lowers the weighted
//! x-degree by exactly one, so reduction terminates.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::algebra::{LaurentBlock, Monomial, Poly, Rational, SSeries};
use crate::milnor::MilnorData;

/// Polynomial in x whose coefficients are truncated s-series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesPoly {
    nvars: usize,
    svars: usize,
    order: u32,
    terms: BTreeMap<Monomial, SSeries>,
}

impl SeriesPoly {
    pub fn zero(nvars: usize, svars: usize, order: u32) -> Self {
        SeriesPoly { nvars, svars, order, terms: BTreeMap::new() }
    }

    /// Embed a polynomial with constant coefficients.
    pub fn from_poly(p: &Poly, svars: usize, order: u32) -> Self {
        let mut out = SeriesPoly::zero(p.nvars(), svars, order);
        for (m, c) in p.terms() {
            out.add_term(m.clone(), &SSeries::constant(svars, order, c.clone()));
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn svars(&self) -> usize {
        self.svars
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &SSeries)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> SSeries {
        self.terms.get(m).cloned().unwrap_or_else(|| SSeries::zero(self.svars, self.order))
    }

    pub fn add_term(&mut self, m: Monomial, s: &SSeries) {
        self.add_scaled_term(m, s, &Rational::one());
    }

    pub fn add_scaled_term(&mut self, m: Monomial, s: &SSeries, c: &Rational) {
        if s.is_zero() || c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                let mut fresh = SSeries::zero(self.svars, self.order);
                fresh.add_assign_scaled(s, c);
                if !fresh.is_zero() {
                    v.insert(fresh);
                }
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign_scaled(s, c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &SeriesPoly) {
        for (m, s) in &other.terms {
            self.add_term(m.clone(), s);
        }
    }

    /// Product, truncated at the smaller s-order.
    pub fn mul(&self, other: &SeriesPoly) -> SeriesPoly {
        let order = self.order.min(other.order);
        let mut out = SeriesPoly::zero(self.nvars, self.svars, order);
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                out.add_term(m.mul(n), &a.mul_trunc(b, order));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> SeriesPoly {
        SeriesPoly {
            nvars: self.nvars,
            svars: self.svars,
            order: self.order,
            terms: self.terms.iter().map(|(n, s)| (n.mul(m), s.clone())).collect(),
        }
    }

    pub fn mul_series(&self, s: &SSeries) -> SeriesPoly {
        let mut out = SeriesPoly::zero(self.nvars, self.svars, self.order);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), &a.mul_trunc(s, self.order));
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> SeriesPoly {
        let mut out = SeriesPoly::zero(self.nvars, self.svars, self.order);
        for (m, a) in &self.terms {
            out.add_scaled_term(m.clone(), a, c);
        }
        out
    }

    /// x-derivative.
    pub fn derivative(&self, i: usize) -> SeriesPoly {
        let mut out = SeriesPoly::zero(self.nvars, self.svars, self.order);
        for (m, s) in &self.terms {
            if let Some((e, lowered)) = m.derivative(i) {
                out.add_scaled_term(lowered, s, &Rational::from_integer(e as i64));
            }
        }
        out
    }
}

/// Canonical class: z-powers of basis coefficient vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FormClass(pub LaurentBlock);

impl FormClass {
    pub fn block(&self) -> &LaurentBlock {
        &self.0
    }

    pub fn into_block(self) -> LaurentBlock {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// Reduce `[g d^n x]` by repeated division, one z-step per pass.
pub fn reduce(g: &SeriesPoly, data: &MilnorData) -> FormClass {
    let n = data.polynomial().nvars();
    assert_eq!(g.nvars(), n, "variable count mismatch");
    let mut out = LaurentBlock::zero(data.mu(), g.svars(), g.order());
    let mut cur = g.clone();
    let mut zpow = 0;
    while !cur.is_zero() {
        let mut next = SeriesPoly::zero(n, g.svars(), g.order());
        for (m, s) in cur.terms() {
            let (coeffs, quotients) = data.divide_monomial(m);
            for (alpha, c) in coeffs {
                out.add_scaled_at(zpow, alpha, s, &c);
            }
            for (i, q) in quotients.iter().enumerate() {
                for (qm, qc) in q.terms() {
                    if let Some((e, lowered)) = qm.derivative(i) {
                        next.add_scaled_term(lowered, s, &(-qc * Rational::from_integer(e as i64)));
                    }
                }
            }
        }
        cur = next;
        zpow += 1;
    }
    FormClass(out)
}

/// Sparse scalar class: `(z-power, basis index, coefficient)`.
pub type ScalarClass = Vec<(i32, usize, Rational)>;

/// Memoized reduction of single monomials with constant coefficients.
///
/// Shareable across threads; the cache only ever grows.
#[derive(Debug)]
pub struct MonomialReducer<'a> {
    data: &'a MilnorData,
    memo: RwLock<HashMap<Monomial, Arc<ScalarClass>>>,
}

impl<'a> MonomialReducer<'a> {
    pub fn new(data: &'a MilnorData) -> Self {
        MonomialReducer { data, memo: RwLock::new(HashMap::new()) }
    }

    pub fn data(&self) -> &'a MilnorData {
        self.data
    }

    pub fn cached(&self) -> usize {
        self.memo.read().unwrap().len()
    }

    pub fn reduce_monomial(&self, m: &Monomial) -> Arc<ScalarClass> {
        if let Some(r) = self.memo.read().unwrap().get(m) {
            return r.clone();
        }
        let (coeffs, quotients) = self.data.divide_monomial(m);
        let mut acc: BTreeMap<(i32, usize), Rational> = BTreeMap::new();
        for (alpha, c) in coeffs {
            *acc.entry((0, alpha)).or_insert_with(Rational::zero) += c;
        }
        let mut next = Poly::zero(m.nvars());
        for (i, q) in quotients.iter().enumerate() {
            for (qm, qc) in q.terms() {
                if let Some((e, lowered)) = qm.derivative(i) {
                    next.add_term(lowered, -qc * Rational::from_integer(e as i64));
                }
            }
        }
        for (nm, nc) in next.terms() {
            for (j, alpha, c) in self.reduce_monomial(nm).iter() {
                *acc.entry((j + 1, *alpha)).or_insert_with(Rational::zero) += c * nc;
            }
        }
        let result: ScalarClass =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((j, a), c)| (j, a, c)).collect();
        let result = Arc::new(result);
        self.memo.write().unwrap().entry(m.clone()).or_insert(result).clone()
    }

    /// Reduce a constant-coefficient polynomial.
    pub fn reduce_poly(&self, p: &Poly) -> ScalarClass {
        let mut acc: BTreeMap<(i32, usize), Rational> = BTreeMap::new();
        for (m, c) in p.terms() {
            for (j, alpha, v) in self.reduce_monomial(m).iter() {
                *acc.entry((*j, *alpha)).or_insert_with(Rational::zero) += v * c;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((j, a), c)| (j, a, c)).collect()
    }
}

/// Whether `df ^ eta + z d eta` reduces to zero, for
/// `eta = sum_i (-1)^(i-1) h_i dx_1 ^ .. (omit dx_i) .. ^ dx_n`.
pub fn verify_exact_class(h: &[Poly], data: &MilnorData) -> bool {
    let n = data.polynomial().nvars();
    assert_eq!(h.len(), n, "one coefficient per variable expected");
    let grad = data.gradient();
    let mut wedge = Poly::zero(n);
    let mut div = Poly::zero(n);
    for i in 0..n {
        wedge = &wedge + &(&h[i] * &grad[i]);
        div = &div + &h[i].derivative(i);
    }
    let mut total = reduce(&SeriesPoly::from_poly(&wedge, 0, 0), data).into_block();
    let shifted = reduce(&SeriesPoly::from_poly(&div, 0, 0), data).into_block().scale_z(1);
    total.add_assign(&shifted);
    total.is_zero()
}
