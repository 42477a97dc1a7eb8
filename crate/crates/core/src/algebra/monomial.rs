use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::Rational;

/// Exponent vector over a fixed, ordered set of variables.
///
/// Ordered graded-lexicographically: total degree first, then lexicographic
/// comparison of the exponent vectors in declaration order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    /// Partial derivative in variable `i`: returns the multiplier and the lowered monomial.
    pub fn derivative(&self, i: usize) -> Option<(u32, Monomial)> {
        let e = self.0[i];
        if e == 0 {
            return None;
        }
        let mut lowered = self.0.clone();
        lowered[i] -= 1;
        Some((e, Monomial(lowered)))
    }

    pub fn weighted_degree(&self, weights: &[Rational]) -> Rational {
        debug_assert_eq!(weights.len(), self.nvars());
        self.0
            .iter()
            .zip(weights)
            .filter(|(e, _)| **e > 0)
            .map(|(&e, w)| w * Rational::from_integer(e as i64))
            .sum()
    }

    /// Human-readable form such as `x*z^2`; the unit monomial prints as `1`.
    pub fn display_with(&self, names: &[impl AsRef<str>]) -> String {
        let mut out = String::new();
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(names[i].as_ref());
            if e > 1 {
                let _ = write!(out, "^{e}");
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors with `sum_i e_i * weights_i == target`, where the
/// weights and the target are integers (weights strictly positive).
pub fn monomials_of_integer_degree(weights: &[u64], target: u64) -> Vec<Monomial> {
    fn rec(weights: &[u64], i: usize, rem: u64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            if rem == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let w = weights[i];
        let mut e = 0u32;
        while (e as u64) * w <= rem {
            cur.push(e);
            rec(weights, i + 1, rem - e as u64 * w, cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    rec(weights, 0, target, &mut Vec::with_capacity(weights.len()), &mut out);
    out
}

/// All exponent vectors in `nvars` variables of total degree exactly `k`.
pub fn monomials_of_total_degree(nvars: usize, k: u32) -> Vec<Monomial> {
    monomials_of_integer_degree(&vec![1; nvars], k as u64)
}
