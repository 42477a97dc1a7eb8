//! Weighted homogeneous singularities and their Milnor (Jacobian) algebras.
//!
//! All linear algebra is graded: the Jacobian ideal is homogeneous, so each
//! weighted degree is an independent finite exact solve. Per-degree solves
//! are cached lazily behind a lock, which keeps `MilnorData` shareable
//! across threads while the reduction code asks for ever higher degrees.

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, RwLock};

use num_traits::ToPrimitive;

use crate::algebra::{monomials_of_integer_degree, parse_poly, variables_in, Monomial, Poly, Rational};
use crate::error::{Error, Result};

/// `f` together with its weights, normalized so every term has weighted degree one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPolynomial {
    variables: Vec<String>,
    weights: Vec<Rational>,
    poly: Poly,
}

impl WeightedPolynomial {
    pub fn new(variables: Vec<String>, weights: Vec<Rational>, poly: Poly) -> Result<Self> {
        let n = variables.len();
        if weights.len() != n {
            return Err(Error::VariableMismatch { expected: n, found: weights.len() });
        }
        if poly.nvars() != n {
            return Err(Error::VariableMismatch { expected: n, found: poly.nvars() });
        }
        if poly.is_zero() {
            return Err(Error::InvalidWeights("polynomial is zero".into()));
        }
        let half = Rational::new(1, 2);
        for (v, q) in variables.iter().zip(&weights) {
            if !q.is_positive() || *q > half {
                return Err(Error::InvalidWeights(format!(
                    "weight of `{v}` is {q}, expected 0 < q <= 1/2"
                )));
            }
        }
        for (m, _) in poly.terms() {
            let d = m.weighted_degree(&weights);
            if !d.is_one() {
                return Err(Error::NotHomogeneous { term: m.display_with(&variables), degree: d });
            }
        }
        Ok(WeightedPolynomial { variables, weights, poly })
    }

    /// Determine the weights from the monomials of `poly`; they must be unique.
    pub fn with_inferred_weights(variables: Vec<String>, poly: Poly) -> Result<Self> {
        let weights = infer_weights(&poly)?;
        WeightedPolynomial::new(variables, weights, poly)
    }

    /// Parse an expression; variables default to order of first appearance
    /// and weights are inferred when not given.
    pub fn parse(
        expr: &str,
        variables: Option<Vec<String>>,
        weights: Option<Vec<Rational>>,
    ) -> Result<Self> {
        let variables = match variables {
            Some(v) => v,
            None => variables_in(expr)?,
        };
        let poly = parse_poly(expr, &variables)?;
        match weights {
            Some(w) => WeightedPolynomial::new(variables, w, poly),
            None => WeightedPolynomial::with_inferred_weights(variables, poly),
        }
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn central_charge(&self) -> Rational {
        central_charge(self)
    }

    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.nvars()).map(|i| self.poly.derivative(i)).collect()
    }

    /// `prod_i (1/q_i - 1)`, the Milnor number predicted by the weights.
    pub fn expected_milnor_number(&self) -> Rational {
        self.weights.iter().map(|q| q.recip() - Rational::one()).product()
    }

    pub fn display(&self) -> String {
        self.poly.display_with(&self.variables)
    }
}

/// `sum_i (1 - 2 q_i)`.
pub fn central_charge(f: &WeightedPolynomial) -> Rational {
    let two = Rational::from_integer(2);
    f.weights.iter().map(|q| Rational::one() - &two * q).sum()
}

fn infer_weights(poly: &Poly) -> Result<Vec<Rational>> {
    let n = poly.nvars();
    let mut rows: Vec<Vec<Rational>> = poly
        .terms()
        .map(|(m, _)| {
            let mut r: Vec<Rational> =
                m.exponents().iter().map(|&e| Rational::from_integer(e as i64)).collect();
            r.push(Rational::one());
            r
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..=n {
                    let v = &rows[r][k] * &f;
                    rows[i][k] -= v;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return Err(Error::InvalidWeights("no weight system makes every term degree 1".into()));
    }
    if pivot_cols.len() < n {
        return Err(Error::InvalidWeights(
            "weights are not determined by the monomials; pass them explicitly".into(),
        ));
    }
    Ok((0..n).map(|i| rows[i][n].clone()).collect())
}

/// `g = sum_alpha coeffs[alpha] * phi_alpha + sum_i quotients[i] * d_i f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    pub coeffs: Vec<Rational>,
    pub quotients: Vec<Poly>,
}

#[derive(Debug)]
struct PivotRow {
    /// Non-pivot part of the normalized row: `pivot + tail` lies in the ideal.
    tail: Vec<(Monomial, Rational)>,
    /// `pivot + tail = sum_i witness[i] * d_i f`.
    witness: Vec<Poly>,
}

#[derive(Debug)]
struct DegreeTable {
    pivots: HashMap<Monomial, PivotRow>,
    standard: Vec<Monomial>,
}

type SparseRow = BTreeMap<usize, Rational>;

fn axpy(dst: &mut SparseRow, src: &SparseRow, c: &Rational) {
    for (k, v) in src {
        let e = dst.entry(*k).or_insert_with(Rational::zero);
        *e -= v * c;
        if e.is_zero() {
            dst.remove(k);
        }
    }
}

/// Milnor algebra data: basis, socle, residue pairing, and division tables.
#[derive(Debug)]
pub struct MilnorData {
    f: WeightedPolynomial,
    gradient: Vec<Poly>,
    int_weights: Vec<u64>,
    scale: u64,
    c_hat: Rational,
    basis: Vec<Monomial>,
    degrees: Vec<Rational>,
    basis_index: HashMap<Monomial, usize>,
    socle: usize,
    eta: Vec<Vec<Rational>>,
    preferred: HashSet<Monomial>,
    tables: RwLock<HashMap<u64, Arc<DegreeTable>>>,
}

/// Deterministic graded monomial basis of the Jacobian algebra.
pub fn milnor_basis(f: &WeightedPolynomial) -> Result<MilnorData> {
    MilnorData::build(f, None)
}

impl MilnorData {
    pub fn new(f: &WeightedPolynomial) -> Result<Self> {
        MilnorData::build(f, None)
    }

    /// Use an explicit monomial basis, which must be independent modulo the Jacobian ideal.
    pub fn with_basis(f: &WeightedPolynomial, basis: Vec<Monomial>) -> Result<Self> {
        MilnorData::build(f, Some(basis))
    }

    fn build(f: &WeightedPolynomial, explicit: Option<Vec<Monomial>>) -> Result<Self> {
        let n = f.nvars();
        let lcm = Rational::lcm_denominators(f.weights());
        let scale = lcm
            .to_u64()
            .ok_or_else(|| Error::InvalidWeights("weight denominators too large".into()))?;
        let int_weights: Vec<u64> = f
            .weights()
            .iter()
            .map(|q| (q * Rational::from_integer(scale as i64)).to_i64().unwrap() as u64)
            .collect();
        let c_hat = f.central_charge();
        let int_c_hat = (&c_hat * Rational::from_integer(scale as i64))
            .to_i64()
            .expect("central charge is a multiple of 1/scale") as u64;
        let max_shift = int_weights.iter().map(|w| scale - w).max().unwrap_or(0);

        let preferred: HashSet<Monomial> = explicit.iter().flatten().cloned().collect();
        if let Some(b) = &explicit {
            if preferred.len() != b.len() {
                return Err(Error::InvalidBasis("basis contains duplicates".into()));
            }
            if let Some(m) = b.iter().find(|m| m.nvars() != n) {
                return Err(Error::InvalidBasis(format!(
                    "monomial {:?} has the wrong number of variables",
                    m.exponents()
                )));
            }
        }

        let mut data = MilnorData {
            f: f.clone(),
            gradient: f.gradient(),
            int_weights,
            scale,
            c_hat: c_hat.clone(),
            basis: Vec::new(),
            degrees: Vec::new(),
            basis_index: HashMap::new(),
            socle: 0,
            eta: Vec::new(),
            preferred,
            tables: RwLock::new(HashMap::new()),
        };

        let mut standard = Vec::new();
        for d in 0..=(int_c_hat + max_shift) {
            let table = data.table(d);
            if table.standard.is_empty() {
                continue;
            }
            if d > int_c_hat {
                return Err(Error::NonIsolated { degree: data.rational_degree(d) });
            }
            standard.extend(table.standard.iter().cloned());
        }

        let expected = f.expected_milnor_number();
        if Rational::from_integer(standard.len() as i64) != expected {
            return Err(Error::InvalidWeights(format!(
                "Jacobian quotient has dimension {} but the weights predict {expected}",
                standard.len()
            )));
        }

        let basis = match explicit {
            None => {
                let mut b = standard;
                b.sort_by_cached_key(|m| (data.int_degree(m), Reverse(m.exponents().to_vec())));
                b
            }
            Some(b) => {
                if b.len() != standard.len() {
                    return Err(Error::InvalidBasis(format!(
                        "expected {} elements, got {}",
                        standard.len(),
                        b.len()
                    )));
                }
                let std_set: HashSet<&Monomial> = standard.iter().collect();
                if let Some(m) = b.iter().find(|m| !std_set.contains(m)) {
                    return Err(Error::InvalidBasis(format!(
                        "{} is dependent on the other elements modulo the Jacobian ideal",
                        m.display_with(f.variables())
                    )));
                }
                b
            }
        };

        data.degrees = basis.iter().map(|m| m.weighted_degree(f.weights())).collect();
        data.basis_index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let top: Vec<usize> =
            (0..basis.len()).filter(|&i| data.degrees[i] == data.c_hat).collect();
        if top.len() != 1 {
            return Err(Error::Internal(format!(
                "expected a one-dimensional socle in degree {}, found {}",
                data.c_hat,
                top.len()
            )));
        }
        data.socle = top[0];
        data.basis = basis;
        data.eta = residue_pairing(&data)?;
        Ok(data)
    }

    pub fn polynomial(&self) -> &WeightedPolynomial {
        &self.f
    }

    pub fn gradient(&self) -> &[Poly] {
        &self.gradient
    }

    pub fn mu(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn degrees(&self) -> &[Rational] {
        &self.degrees
    }

    pub fn central_charge(&self) -> &Rational {
        &self.c_hat
    }

    pub fn socle_index(&self) -> usize {
        self.socle
    }

    pub fn socle(&self) -> &Monomial {
        &self.basis[self.socle]
    }

    pub fn eta(&self) -> &[Vec<Rational>] {
        &self.eta
    }

    pub fn basis_index(&self, m: &Monomial) -> Option<usize> {
        self.basis_index.get(m).copied()
    }

    /// Weighted degree scaled to an integer by the lcm of the weight denominators.
    pub fn int_degree(&self, m: &Monomial) -> u64 {
        m.exponents().iter().zip(&self.int_weights).map(|(&e, &w)| e as u64 * w).sum()
    }

    fn rational_degree(&self, d: u64) -> Rational {
        Rational::new(d as i64, self.scale as i64)
    }

    fn table(&self, d: u64) -> Arc<DegreeTable> {
        if let Some(t) = self.tables.read().unwrap().get(&d) {
            return t.clone();
        }
        let built = Arc::new(self.build_table(d));
        self.tables.write().unwrap().entry(d).or_insert(built).clone()
    }

    /// Reduced row echelon form of the degree-`d` slice of the Jacobian ideal.
    ///
    /// Columns are ordered with non-preferred monomials first and, within
    /// each group, lexicographically largest first; pivots are the first
    /// nonzero column, so the surviving (standard) monomials are the
    /// preferred ones whenever they form a complement.
    fn build_table(&self, d: u64) -> DegreeTable {
        let n = self.f.nvars();
        let mut cols = monomials_of_integer_degree(&self.int_weights, d);
        cols.sort_by_cached_key(|m| (self.preferred.contains(m), Reverse(m.exponents().to_vec())));
        let col_index: HashMap<&Monomial, usize> =
            cols.iter().enumerate().map(|(i, m)| (m, i)).collect();

        let mut gens: Vec<(usize, Monomial)> = Vec::new();
        for i in 0..n {
            let shift = self.scale - self.int_weights[i];
            if d < shift {
                continue;
            }
            for m in monomials_of_integer_degree(&self.int_weights, d - shift) {
                gens.push((i, m));
            }
        }

        let mut pivots: BTreeMap<usize, (SparseRow, SparseRow)> = BTreeMap::new();
        for (g, (i, m)) in gens.iter().enumerate() {
            let mut row: SparseRow = BTreeMap::new();
            for (gm, c) in self.gradient[*i].terms() {
                let idx = col_index[&gm.mul(m)];
                let e = row.entry(idx).or_insert_with(Rational::zero);
                *e += c;
                if e.is_zero() {
                    row.remove(&idx);
                }
            }
            let mut wit: SparseRow = BTreeMap::from([(g, Rational::one())]);
            let hits: Vec<(usize, Rational)> = row
                .iter()
                .filter(|(c, _)| pivots.contains_key(c))
                .map(|(c, v)| (*c, v.clone()))
                .collect();
            for (c, v) in hits {
                let (prow, pwit) = &pivots[&c];
                axpy(&mut row, prow, &v);
                axpy(&mut wit, pwit, &v);
            }
            let Some((&pc, lead)) = row.iter().next() else {
                continue;
            };
            let inv = lead.recip();
            for v in row.values_mut() {
                *v *= &inv;
            }
            for v in wit.values_mut() {
                *v *= &inv;
            }
            for (prow, pwit) in pivots.values_mut() {
                if let Some(v) = prow.get(&pc).cloned() {
                    axpy(prow, &row, &v);
                    axpy(pwit, &wit, &v);
                }
            }
            pivots.insert(pc, (row, wit));
        }

        let standard: Vec<Monomial> = cols
            .iter()
            .enumerate()
            .filter(|(i, _)| !pivots.contains_key(i))
            .map(|(_, m)| m.clone())
            .collect();
        let pivots = pivots
            .into_iter()
            .map(|(pc, (row, wit))| {
                let tail = row
                    .into_iter()
                    .filter(|(c, _)| *c != pc)
                    .map(|(c, v)| (cols[c].clone(), v))
                    .collect();
                let mut witness = vec![Poly::zero(n); n];
                for (g, v) in wit {
                    let (i, m) = &gens[g];
                    witness[*i].add_term(m.clone(), v);
                }
                (cols[pc].clone(), PivotRow { tail, witness })
            })
            .collect();
        DegreeTable { pivots, standard }
    }

    /// Division of a single monomial: sparse basis coefficients and quotients.
    pub fn divide_monomial(&self, m: &Monomial) -> (Vec<(usize, Rational)>, Vec<Poly>) {
        let n = self.f.nvars();
        if let Some(&i) = self.basis_index.get(m) {
            return (vec![(i, Rational::one())], vec![Poly::zero(n); n]);
        }
        let table = self.table(self.int_degree(m));
        let row = table
            .pivots
            .get(m)
            .expect("every non-basis monomial is a pivot of its degree slice");
        let coeffs = row
            .tail
            .iter()
            .map(|(t, c)| (self.basis_index[t], -c))
            .collect();
        (coeffs, row.witness.clone())
    }

    /// Basis coefficients of the class of `g` in the Jacobian algebra.
    pub fn normal_form(&self, g: &Poly) -> Vec<Rational> {
        divide_by_jacobian(g, self).coeffs
    }

    /// Coordinates of `phi_a * phi_b` in the basis.
    pub fn product(&self, a: usize, b: usize) -> Vec<Rational> {
        self.normal_form(&Poly::monomial(self.basis[a].mul(&self.basis[b]), Rational::one()))
    }

    /// Unfolding parameter degrees `1 - deg(phi_alpha)`.
    pub fn parameter_degrees(&self) -> Vec<Rational> {
        self.degrees.iter().map(|d| Rational::one() - d).collect()
    }

    /// Human-readable basis, e.g. `["1", "z", "x", ...]`.
    pub fn basis_names(&self) -> Vec<String> {
        self.basis.iter().map(|m| m.display_with(self.f.variables())).collect()
    }
}

/// Split `g` as basis part plus an explicit combination of the partials of `f`.
pub fn divide_by_jacobian(g: &Poly, data: &MilnorData) -> Division {
    let n = data.f.nvars();
    assert_eq!(g.nvars(), n, "variable count mismatch");
    let mut coeffs = vec![Rational::zero(); data.mu()];
    let mut quotients = vec![Poly::zero(n); n];
    for (m, c) in g.terms() {
        let (cs, qs) = data.divide_monomial(m);
        for (i, v) in cs {
            coeffs[i] += v * c;
        }
        for (q, w) in quotients.iter_mut().zip(&qs) {
            q.add_scaled(w, c);
        }
    }
    Division { coeffs, quotients }
}

fn determinant(m: &[Vec<Poly>], nvars: usize) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(nvars);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = Poly::zero(nvars);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = &m[0][j] * &determinant(&minor, nvars);
        let sign = if j % 2 == 0 { Rational::one() } else { Rational::from_integer(-1) };
        det.add_scaled(&term, &sign);
    }
    det
}

/// Hessian determinant of `f`.
pub fn hessian(f: &WeightedPolynomial) -> Poly {
    let grad = f.gradient();
    let n = f.nvars();
    let m: Vec<Vec<Poly>> = (0..n).map(|i| (0..n).map(|j| grad[i].derivative(j)).collect()).collect();
    determinant(&m, n)
}

/// Residue pairing normalized so that the residue of the Hessian equals `mu`:
/// `eta[a][b] = r_ab * mu / h`, where `phi_a phi_b = r_ab * socle` and
/// `hess f = h * socle` modulo the Jacobian ideal.
pub fn residue_pairing(data: &MilnorData) -> Result<Vec<Vec<Rational>>> {
    let mu = data.mu();
    let h = data.normal_form(&hessian(&data.f))[data.socle].clone();
    if h.is_zero() {
        return Err(Error::Internal("Hessian vanishes in the Jacobian algebra".into()));
    }
    let scale = Rational::from_integer(mu as i64) / h;
    let mut eta = vec![vec![Rational::zero(); mu]; mu];
    for a in 0..mu {
        for b in a..mu {
            if &data.degrees[a] + &data.degrees[b] != data.c_hat {
                continue;
            }
            let r = data.product(a, b)[data.socle].clone();
            let v = r * &scale;
            eta[a][b] = v.clone();
            eta[b][a] = v;
        }
    }
    Ok(eta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wp(expr: &str) -> WeightedPolynomial {
        WeightedPolynomial::parse(expr, None, None).unwrap()
    }

    #[test]
    fn central_charges() {
        assert_eq!(central_charge(&wp("x^3 + y^7")), Rational::new(22, 21));
        assert_eq!(central_charge(&wp("x^3 + y^3 + z^4")), Rational::new(7, 6));
        assert_eq!(central_charge(&wp("x^2")), Rational::zero());
    }

    #[test]
    fn inferred_weights() {
        let f = wp("x^2*y + y^2*z + z^3*x");
        assert_eq!(f.weights(), &[Rational::new(4, 13), Rational::new(5, 13), Rational::new(3, 13)]);
        assert!(WeightedPolynomial::parse("x^3*y^3", None, None).is_err());
        assert!(WeightedPolynomial::parse("x^2 + x^3", None, None).is_err());
    }

    #[test]
    fn rejects_bad_weights() {
        let p = parse_poly("x^3", &["x"]).unwrap();
        let err = WeightedPolynomial::new(vec!["x".into()], vec![Rational::new(1, 2)], p.clone());
        assert!(matches!(err, Err(Error::NotHomogeneous { .. })));
        let err = WeightedPolynomial::new(vec!["x".into()], vec![Rational::new(2, 3)], p);
        assert!(matches!(err, Err(Error::InvalidWeights(_))));
    }

    #[test]
    fn u12_basis_matches_listed_order() {
        let data = milnor_basis(&wp("x^3 + y^3 + z^4")).unwrap();
        assert_eq!(data.mu(), 12);
        assert_eq!(
            data.basis_names(),
            ["1", "z", "x", "y", "z^2", "x*z", "y*z", "x*y", "x*z^2", "y*z^2", "x*y*z", "x*y*z^2"]
        );
        assert_eq!(data.socle().display_with(&["x", "y", "z"]), "x*y*z^2");
    }

    #[test]
    fn a1_is_one_dimensional() {
        let data = milnor_basis(&wp("x^2")).unwrap();
        assert_eq!(data.mu(), 1);
        assert_eq!(data.eta()[0][0], Rational::new(1, 2));
    }

    #[test]
    fn e12_milnor_number() {
        let data = milnor_basis(&wp("x^3 + y^7")).unwrap();
        assert_eq!(data.mu(), 12);
        assert_eq!(data.degrees().iter().max().unwrap(), &Rational::new(22, 21));
    }

    #[test]
    fn division_examples() {
        let f = wp("x^3");
        let data = milnor_basis(&f).unwrap();
        let d = divide_by_jacobian(&parse_poly("x^2", &["x"]).unwrap(), &data);
        assert!(d.coeffs.iter().all(Rational::is_zero));
        assert_eq!(d.quotients[0], Poly::constant(1, Rational::new(1, 3)));

        let data = milnor_basis(&wp("x^3 + y^7")).unwrap();
        let g = parse_poly("x^2*y^6", &["x", "y"]).unwrap();
        let d = divide_by_jacobian(&g, &data);
        assert!(d.coeffs.iter().all(Rational::is_zero));
        let grad = data.gradient();
        let rebuilt = &(&d.quotients[0] * &grad[0]) + &(&d.quotients[1] * &grad[1]);
        assert_eq!(rebuilt, g);
    }

    #[test]
    fn basis_elements_divide_to_themselves() {
        let data = milnor_basis(&wp("x^2 + x*y^4 + z^3")).unwrap();
        for (i, m) in data.basis().iter().enumerate() {
            let d = divide_by_jacobian(&Poly::monomial(m.clone(), Rational::one()), &data);
            assert!(d.quotients.iter().all(Poly::is_zero));
            for (j, c) in d.coeffs.iter().enumerate() {
                assert_eq!(c.is_one(), i == j);
                assert!(c.is_zero() || i == j);
            }
        }
    }

    #[test]
    fn non_isolated_is_rejected() {
        // x^2 y: the y-axis is critical
        let f = WeightedPolynomial::new(
            vec!["x".into(), "y".into()],
            vec![Rational::new(1, 3), Rational::new(1, 3)],
            parse_poly("x^2*y", &["x", "y"]).unwrap(),
        )
        .unwrap();
        assert!(matches!(milnor_basis(&f), Err(Error::NonIsolated { .. })));
    }

    #[test]
    fn explicit_basis_is_validated() {
        let f = wp("x^3 + y^3 + z^4");
        let v = ["x", "y", "z"];
        let names = ["1", "z", "y", "x", "z^2", "x*z", "y*z", "x*y", "x*z^2", "y*z^2", "x*y*z", "x*y*z^2"];
        let basis: Vec<Monomial> =
            names.iter().map(|s| crate::algebra::parse_monomial(s, &v).unwrap()).collect();
        let data = MilnorData::with_basis(&f, basis.clone()).unwrap();
        assert_eq!(data.basis(), &basis[..]);

        let mut bad = basis.clone();
        bad[1] = crate::algebra::parse_monomial("x^2", &v).unwrap();
        assert!(matches!(MilnorData::with_basis(&f, bad), Err(Error::InvalidBasis(_))));
        assert!(matches!(
            MilnorData::with_basis(&f, basis[..11].to_vec()),
            Err(Error::InvalidBasis(_))
        ));
    }

    #[test]
    fn non_monomial_ideal_prefers_requested_basis() {
        // E14: d_x f = 2x + y^4, so in degree 1/2 either x or y^4 spans the quotient.
        let f = wp("x^2 + x*y^4 + z^3");
        let default = milnor_basis(&f).unwrap();
        let y4 = Monomial::new(vec![0, 4, 0]);
        let x = Monomial::new(vec![1, 0, 0]);
        assert!(default.basis().contains(&y4));
        let swapped: Vec<Monomial> =
            default.basis().iter().map(|m| if *m == y4 { x.clone() } else { m.clone() }).collect();
        let data = MilnorData::with_basis(&f, swapped).unwrap();
        assert!(data.basis().contains(&x));
        let d = divide_by_jacobian(&Poly::monomial(y4, Rational::one()), &data);
        assert_eq!(d.coeffs[data.basis_index(&x).unwrap()], Rational::from_integer(-2));
    }

    #[test]
    fn u12_pairing_pairs_unit_with_socle_only() {
        let data = milnor_basis(&wp("x^3 + y^3 + z^4")).unwrap();
        let eta = data.eta();
        for b in 0..12 {
            assert_eq!(eta[0][b].is_zero(), b != data.socle_index());
        }
        assert_eq!(eta[0][11], Rational::new(1, 36));
    }
}
