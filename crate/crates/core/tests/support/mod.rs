//! Shared test data and independent reference implementations.
#![allow(dead_code)]

pub mod oracle;

use num_bigint::BigInt;
use num_rational::BigRational;
use primform::mirror::InvertiblePolynomial;
use primform::Rational;

/// Exceptional unimodular singularities: name, polynomial, central charge.
pub const TABLE: [(&str, &str, (i64, i64)); 14] = [
    ("E12", "x^3 + y^7", (22, 21)),
    ("E13", "x^3 + x*y^5", (16, 15)),
    ("E14", "x^2 + x*y^4 + z^3", (13, 12)),
    ("Z11", "x^3*y + y^5", (16, 15)),
    ("Z12", "x^3*y + y^4*x", (12, 11)),
    ("Z13", "x^2 + x*y^3 + y*z^3", (10, 9)),
    ("W12", "x^4 + y^5", (11, 10)),
    ("W13", "x^2 + x*y^2 + y*z^4", (9, 8)),
    ("Q10", "x^2*y + y^4 + z^3", (13, 12)),
    ("Q11", "x^2*y + y^3*z + z^3", (10, 9)),
    ("Q12", "x^2*y + x*y^3 + z^3", (17, 15)),
    ("S11", "x^2*y + y^2*z + z^4", (9, 8)),
    ("S12", "x^2*y + y^2*z + z^3*x", (15, 13)),
    ("U12", "x^3 + y^3 + z^4", (7, 6)),
];

/// Pairs exchanged by the transpose; everything else is self-dual.
pub const TRANSPOSE_PAIRS: [(&str, &str); 4] =
    [("E14", "Q10"), ("Z11", "E13"), ("Q11", "Z13"), ("S11", "W13")];

/// `(1-based index, power)` pairs and a coefficient `p/q`.
pub type PrintedTerm = (&'static [(usize, u32)], (i64, i64));

/// Printed coefficients of minus the degree-4 part of the U12 prepotential.
pub const U12_MINUS_F4: [PrintedTerm; 14] = [
    (&[(5, 2), (6, 1), (7, 1)], (1, 8)),
    (&[(3, 1), (6, 2), (8, 1)], (1, 6)),
    (&[(4, 1), (7, 2), (8, 1)], (1, 6)),
    (&[(2, 1), (5, 1), (7, 1), (9, 1)], (1, 4)),
    (&[(3, 2), (8, 1), (9, 1)], (1, 6)),
    (&[(2, 1), (5, 1), (6, 1), (10, 1)], (1, 4)),
    (&[(4, 2), (8, 1), (10, 1)], (1, 6)),
    (&[(2, 2), (9, 1), (10, 1)], (1, 8)),
    (&[(2, 1), (5, 2), (11, 1)], (1, 8)),
    (&[(3, 2), (6, 1), (11, 1)], (1, 6)),
    (&[(4, 2), (7, 1), (11, 1)], (1, 6)),
    (&[(3, 3), (12, 1)], (1, 18)),
    (&[(4, 3), (12, 1)], (1, 18)),
    (&[(2, 2), (5, 1), (12, 1)], (1, 8)),
];

pub const U12_BASIS: [&str; 12] =
    ["1", "z", "x", "y", "z^2", "x*z", "y*z", "x*y", "x*z^2", "y*z^2", "x*y*z", "x*y*z^2"];

/// Exponent vector over 12 flat coordinates from 1-based `(index, power)` pairs.
pub fn u12_exponents(pairs: &[(usize, u32)]) -> Vec<u32> {
    let mut e = vec![0; 12];
    for &(i, k) in pairs {
        e[i - 1] += k;
    }
    e
}

pub fn big(r: &Rational) -> BigRational {
    BigRational::new(r.numer().clone(), r.denom().clone())
}

pub fn from_big(r: &BigRational) -> Rational {
    Rational::from_bigints(r.numer().clone(), r.denom().clone()).unwrap()
}

pub fn brat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// All phase vectors `k / D` (with `D = |det E|`) such that `E k / D` is integral,
/// scaled by `D`. Brute force over `D^n` candidates.
pub fn brute_force_symmetries(w: &InvertiblePolynomial) -> (u64, Vec<Vec<u64>>) {
    let d = w.determinant().unsigned_abs();
    let n = w.nvars();
    let rows = w.matrix();
    let mut out = Vec::new();
    let mut k = vec![0u64; n];
    loop {
        if rows
            .iter()
            .all(|r| r.iter().zip(&k).map(|(&e, &ki)| e as u64 * ki).sum::<u64>() % d == 0)
        {
            out.push(k.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return (d, out);
            }
            k[i] += 1;
            if k[i] < d {
                break;
            }
            k[i] = 0;
            i += 1;
        }
    }
}

/// Closure of the given integer generators in `(Z/D)^n`.
pub fn generated_subgroup(gens: &[Vec<u64>], d: u64, n: usize) -> std::collections::BTreeSet<Vec<u64>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut stack = vec![vec![0u64; n]];
    seen.insert(vec![0u64; n]);
    while let Some(x) = stack.pop() {
        for g in gens {
            let y: Vec<u64> = x.iter().zip(g).map(|(a, b)| (a + b) % d).collect();
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen
}
