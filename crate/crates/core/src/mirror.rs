//! Berglund-Huebsch combinatorics for invertible polynomials: exponent
//! matrix, transpose, weights and the group of diagonal symmetries.

use serde::{Deserialize, Serialize};

use crate::algebra::{Monomial, Poly, Rational};
use crate::error::{Error, Result};
use crate::milnor::WeightedPolynomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvertiblePolynomial {
    variables: Vec<String>,
    /// Row i is the exponent vector of the i-th monomial.
    matrix: Vec<Vec<u32>>,
}

impl InvertiblePolynomial {
    /// Validate shape and the absence of `x_i x_j` monomials; rows are ordered
    /// so that diagonal entries are at least two whenever possible.
    pub fn new(variables: Vec<String>, rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = variables.len();
        if rows.len() != n {
            return Err(Error::NotInvertible(format!(
                "{} monomials for {n} variables",
                rows.len()
            )));
        }
        for r in &rows {
            if r.len() != n {
                return Err(Error::VariableMismatch { expected: n, found: r.len() });
            }
            let ones = r.iter().filter(|&&e| e == 1).count();
            if ones == 2 && r.iter().sum::<u32>() == 2 {
                return Err(Error::NotInvertible("contains a monomial x_i x_j".into()));
            }
        }
        let det = determinant(&rows);
        if det == 0 {
            return Err(Error::NotInvertible("exponent matrix is singular".into()));
        }
        let matrix = order_rows(rows);
        Ok(InvertiblePolynomial { variables, matrix })
    }

    pub fn from_poly(variables: Vec<String>, poly: &Poly) -> Result<Self> {
        let rows = poly.terms().map(|(m, _)| m.exponents().to_vec()).collect();
        InvertiblePolynomial::new(variables, rows)
    }

    pub fn from_weighted(f: &WeightedPolynomial) -> Result<Self> {
        InvertiblePolynomial::from_poly(f.variables().to_vec(), f.poly())
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.matrix
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    /// `W` with all coefficients one.
    pub fn to_poly(&self) -> Poly {
        let n = self.nvars();
        let mut p = Poly::zero(n);
        for r in &self.matrix {
            p.add_term(Monomial::new(r.clone()), Rational::one());
        }
        p
    }

    pub fn to_weighted(&self) -> Result<WeightedPolynomial> {
        WeightedPolynomial::new(self.variables.clone(), weights_from_matrix(self)?, self.to_poly())
    }

    pub fn determinant(&self) -> i64 {
        determinant(&self.matrix)
    }

    pub fn display(&self) -> String {
        self.matrix
            .iter()
            .map(|r| Monomial::new(r.clone()).display_with(&self.variables))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn order_rows(rows: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let n = rows.len();
    let mut best: Option<Vec<usize>> = None;
    let mut fallback: Option<Vec<usize>> = None;
    for_each_permutation(n, &mut |perm| {
        if best.is_some() {
            return;
        }
        let diag: Vec<u32> = (0..n).map(|i| rows[perm[i]][i]).collect();
        if diag.iter().all(|&e| e >= 2) {
            best = Some(perm.to_vec());
        } else if fallback.is_none() && diag.iter().all(|&e| e >= 1) {
            fallback = Some(perm.to_vec());
        }
    });
    match best.or(fallback) {
        Some(p) => p.into_iter().map(|i| rows[i].clone()).collect(),
        None => rows,
    }
}

/// Calls `visit` on every permutation of `0..n` in lexicographic order.
pub fn for_each_permutation(n: usize, visit: &mut dyn FnMut(&[usize])) {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, visit: &mut dyn FnMut(&[usize])) {
        if prefix.len() == used.len() {
            visit(prefix);
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, visit);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], visit);
}

fn determinant(rows: &[Vec<u32>]) -> i64 {
    let mut a: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().map(|&e| Rational::from_integer(e as i64)).collect())
        .collect();
    let n = a.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return 0;
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for r in (c + 1)..n {
            if !a[r][c].is_zero() {
                let f = &a[r][c] / &a[c][c];
                for k in c..n {
                    let v = &a[c][k] * &f;
                    a[r][k] -= v;
                }
            }
        }
    }
    det.to_i64().expect("integer determinant")
}

/// `W^T`: the exponent matrix transposed.
pub fn transpose(w: &InvertiblePolynomial) -> InvertiblePolynomial {
    let n = w.nvars();
    let rows = (0..n).map(|i| (0..n).map(|j| w.matrix[j][i]).collect()).collect();
    InvertiblePolynomial::new(w.variables.clone(), rows)
        .expect("the transpose of an invertible matrix is invertible")
}

/// `q = E^{-1} (1, ..., 1)`, each entry required in `(0, 1/2]`.
pub fn weights_from_matrix(w: &InvertiblePolynomial) -> Result<Vec<Rational>> {
    let n = w.nvars();
    let mut a: Vec<Vec<Rational>> = w
        .matrix
        .iter()
        .map(|r| {
            let mut row: Vec<Rational> = r.iter().map(|&e| Rational::from_integer(e as i64)).collect();
            row.push(Rational::one());
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).ok_or(Error::SingularMatrix)?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in 0..=n {
                    let v = &a[c][k] * &f;
                    a[r][k] -= v;
                }
            }
        }
    }
    let q: Vec<Rational> = a.into_iter().map(|r| r[n].clone()).collect();
    let half = Rational::new(1, 2);
    if let Some(bad) = q.iter().find(|x| !x.is_positive() || **x > half) {
        return Err(Error::InvalidWeights(format!("weight {bad} outside (0, 1/2]")));
    }
    Ok(q)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalSymmetryGroup {
    /// Phase vectors `theta`, each entry in `[0, 1)`, standing for `exp(2 pi i theta)`.
    pub generators: Vec<Vec<Rational>>,
    /// Cyclic orders of the generators.
    pub invariant_factors: Vec<u64>,
    pub order: u64,
    pub j: Vec<Rational>,
}

impl DiagonalSymmetryGroup {
    /// Whether `theta` lies in the group, i.e. `E theta` is integral.
    pub fn contains(&self, w: &InvertiblePolynomial, theta: &[Rational]) -> bool {
        fixes(w, theta)
    }
}

/// `E theta` integral.
pub fn fixes(w: &InvertiblePolynomial, theta: &[Rational]) -> bool {
    w.matrix.iter().all(|r| {
        let s: Rational = r.iter().zip(theta).map(|(&e, t)| Rational::from_integer(e as i64) * t).sum();
        s.is_integer()
    })
}

/// Smith normal form `U A V = D` over the integers; returns `(D diagonal, V)`.
fn smith(a: &[Vec<i64>]) -> (Vec<i64>, Vec<Vec<i64>>) {
    let n = a.len();
    let mut m: Vec<Vec<i64>> = a.to_vec();
    let mut v: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    for t in 0..n {
        loop {
            // smallest nonzero entry in the trailing block becomes the pivot
            let mut piv: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if m[i][j] != 0 && piv.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs()) {
                        piv = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = piv else {
                return ((0..n).map(|i| m[i][i].abs()).collect(), v);
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let p = m[t][t];
            let mut clean = true;
            for i in (t + 1)..n {
                let q = m[i][t] / p;
                if q != 0 {
                    for k in t..n {
                        m[i][k] -= q * m[t][k];
                    }
                }
                clean &= m[i][t] == 0;
            }
            for j in (t + 1)..n {
                let q = m[t][j] / p;
                if q != 0 {
                    for row in m.iter_mut() {
                        row[j] -= q * row[t];
                    }
                    for row in v.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // divisibility: fold a row with an entry not divisible by p back in
            let bad = ((t + 1)..n).find(|&i| ((t + 1)..n).any(|j| m[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for k in t..n {
                        m[t][k] += m[i][k];
                    }
                }
                None => break,
            }
        }
    }
    ((0..n).map(|i| m[i][i].abs()).collect(), v)
}

fn frac_part(x: Rational) -> Rational {
    x.fract_positive()
}

/// Generators `V e_i / d_i mod 1` from the Smith form of `E`, order `|det E|`.
pub fn diagonal_symmetries(w: &InvertiblePolynomial) -> Result<DiagonalSymmetryGroup> {
    let n = w.nvars();
    let det = w.determinant();
    if det == 0 {
        return Err(Error::SingularMatrix);
    }
    let a: Vec<Vec<i64>> = w.matrix.iter().map(|r| r.iter().map(|&e| e as i64).collect()).collect();
    let (d, v) = smith(&a);
    let mut generators = Vec::new();
    let mut factors = Vec::new();
    for i in 0..n {
        if d[i] > 1 {
            let g: Vec<Rational> =
                (0..n).map(|k| frac_part(Rational::new(v[k][i], d[i]))).collect();
            generators.push(g);
            factors.push(d[i] as u64);
        }
    }
    let order: u64 = d.iter().map(|&x| x as u64).product();
    debug_assert_eq!(order, det.unsigned_abs());
    let j = weights_from_matrix(w)?;
    Ok(DiagonalSymmetryGroup { generators, invariant_factors: factors, order, j })
}

/// Equal after some relabeling of the variables.
pub fn equivalent_up_to_permutation(a: &InvertiblePolynomial, b: &InvertiblePolynomial) -> bool {
    let n = a.nvars();
    if n != b.nvars() {
        return false;
    }
    let mut target: Vec<Vec<u32>> = b.matrix.clone();
    target.sort();
    let mut found = false;
    for_each_permutation(n, &mut |perm| {
        if found {
            return;
        }
        let mut rows: Vec<Vec<u32>> =
            a.matrix.iter().map(|r| (0..n).map(|i| r[perm[i]]).collect()).collect();
        rows.sort();
        found = rows == target;
    });
    found
}
