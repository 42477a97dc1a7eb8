//! Flat coordinates, prepotential and the checks that the result is a
//! Frobenius manifold: WDVV, Euler homogeneity and recovery of the
//! Jacobian ring at the origin.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Monomial, Rational, SSeries};
use crate::error::{Error, Result};
use crate::milnor::MilnorData;
use crate::primitive::{j_components, PrimitiveFormResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusData {
    pub order: u32,
    pub t_of_s: Vec<SSeries>,
    pub s_of_t: Vec<SSeries>,
    pub eta: Vec<Vec<Rational>>,
    /// `deg t_alpha = 1 - d_alpha`.
    pub t_degrees: Vec<Rational>,
    pub prepotential: SSeries,
}

/// `t_alpha = J_{-1}^alpha`.
pub fn flat_coordinates(result: &PrimitiveFormResult) -> Vec<SSeries> {
    j_components(result, -1).expect("-1 is a valid z-power")
}

/// Invert `t(s) = s + O(s^2)` to `s(t)` modulo `order + 1`.
pub fn invert_coordinates(t_of_s: &[SSeries], order: u32) -> Result<Vec<SSeries>> {
    let mu = t_of_s.len();
    for (alpha, t) in t_of_s.iter().enumerate() {
        if t.nvars() != mu {
            return Err(Error::VariableMismatch { expected: mu, found: t.nvars() });
        }
        if order > 0 && t.truncate(1) != SSeries::var(mu, 1, alpha) {
            return Err(Error::ContractViolation(format!(
                "coordinate {} does not start with s_{}",
                alpha + 1,
                alpha + 1
            )));
        }
    }
    let higher: Vec<SSeries> = t_of_s
        .iter()
        .map(|t| {
            let terms = t.terms().filter(|(m, _)| m.total_degree() >= 2);
            SSeries::from_terms(mu, order, terms.map(|(m, c)| (m.clone(), c.clone())))
        })
        .collect::<Result<_>>()?;
    let mut s: Vec<SSeries> = (0..mu).map(|a| SSeries::var(mu, order, a)).collect();
    // Each pass fixes one more order of s(t) = t - h(s(t)).
    for _ in 0..order {
        s = (0..mu)
            .map(|a| SSeries::var(mu, order, a).sub(&higher[a].compose(&s, order)))
            .collect();
    }
    Ok(s)
}

fn unit(mu: usize, alpha: usize) -> Monomial {
    Monomial::var(mu, alpha)
}

/// Prepotential in flat coordinates with `d F0 / d t_alpha = sum_beta eta_ab J_{-2}^beta`.
///
/// Quadratic and lower terms are dropped; a mismatch between mixed partial
/// derivatives is reported as an error.
pub fn prepotential(result: &PrimitiveFormResult, milnor: &MilnorData) -> Result<FrobeniusData> {
    let mu = milnor.mu();
    let order = result.order;
    let eta = milnor.eta().to_vec();
    let t_degrees = milnor.parameter_degrees();
    let t_of_s = flat_coordinates(result);
    if order < 3 {
        let s_of_t = invert_coordinates(&t_of_s, order)?;
        return Ok(FrobeniusData {
            order,
            t_of_s,
            s_of_t,
            eta,
            t_degrees,
            prepotential: SSeries::zero(mu, order),
        });
    }
    let s_of_t = invert_coordinates(&t_of_s, order)?;
    let j2 = j_components(result, -2)?;

    let gradient: Vec<SSeries> = (0..mu)
        .into_par_iter()
        .map(|a| {
            let mut g = SSeries::zero(mu, order - 1);
            for (b, e) in eta[a].iter().enumerate() {
                if !e.is_zero() {
                    g.add_assign_scaled(&j2[b], e);
                }
            }
            g.compose(&s_of_t, order - 1)
        })
        .collect();

    let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
    for (a, g) in gradient.iter().enumerate() {
        for (m, c) in g.terms() {
            let up = m.mul(&unit(mu, a));
            if up.total_degree() <= 2 {
                continue;
            }
            let v = c / Rational::from_integer(up.exponent(a) as i64);
            match terms.get(&up) {
                Some(prev) if *prev != v => {
                    return Err(Error::Integrability(format!(
                        "coefficient of {:?} is {prev} from one partial and {v} from t_{}",
                        up.exponents(),
                        a + 1
                    )))
                }
                _ => {
                    terms.insert(up, v);
                }
            }
        }
    }
    // Every monomial must be reached from every variable it contains.
    for (m, c) in &terms {
        for (a, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let down = unit(mu, a).quotient_of(m).expect("e > 0");
            let got = gradient[a].coeff(&down);
            if got != c * Rational::from_integer(e as i64) {
                return Err(Error::Integrability(format!(
                    "d/dt_{} misses the term {:?}",
                    a + 1,
                    m.exponents()
                )));
            }
        }
    }
    let prepotential = SSeries::from_terms(mu, order, terms)?;
    Ok(FrobeniusData { order, t_of_s, s_of_t, eta, t_degrees, prepotential })
}

/// Degree-4 homogeneous part.
pub fn four_point_function(f0: &SSeries) -> SSeries {
    f0.homogeneous_part(4)
}

fn third_derivative(f0: &SSeries, a: usize, b: usize, c: usize) -> SSeries {
    f0.derivative(a).derivative(b).derivative(c)
}

pub fn invert_matrix(m: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
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
                for k in 0..2 * n {
                    let v = &a[c][k] * &f;
                    a[r][k] -= v;
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WdvvViolation {
    /// Indices `(a, b, c, d)`, zero-based.
    pub indices: [usize; 4],
    pub monomial: Vec<u32>,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WdvvReport {
    /// Total degree through which the products were compared.
    pub compared_through: Option<u32>,
    pub equations: usize,
    pub violations: Vec<WdvvViolation>,
}

impl WdvvReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check `F_abe eta^ef F_fcd = F_ace eta^ef F_fbd` modulo terms of degree above `order - 3`.
pub fn wdvv_check(f0: &SSeries, eta: &[Vec<Rational>], order: u32) -> Result<WdvvReport> {
    let mu = eta.len();
    if order < 3 {
        return Ok(WdvvReport::default());
    }
    let cut = order - 3;
    let inv = invert_matrix(eta)?;
    let f0 = f0.truncate(order);
    let mut third: Vec<SSeries> = Vec::with_capacity(mu * mu * mu);
    for a in 0..mu {
        let da = f0.derivative(a);
        for b in 0..mu {
            let dab = da.derivative(b);
            for c in 0..mu {
                third.push(dab.derivative(c).truncate(cut));
            }
        }
    }
    let at = |a: usize, b: usize, c: usize| &third[(a * mu + b) * mu + c];
    // raised[a][b][f] = sum_e F_abe eta^ef
    let raised: Vec<SSeries> = (0..mu * mu * mu)
        .into_par_iter()
        .map(|i| {
            let (ab, f) = (i / mu, i % mu);
            let (a, b) = (ab / mu, ab % mu);
            let mut s = SSeries::zero(mu, cut);
            for (e, row) in inv.iter().enumerate() {
                if !row[f].is_zero() {
                    s.add_assign_scaled(at(a, b, e), &row[f]);
                }
            }
            s
        })
        .collect();
    let lhs = |a: usize, b: usize, c: usize, d: usize| {
        let mut s = SSeries::zero(mu, cut);
        for f in 0..mu {
            let r = &raised[(a * mu + b) * mu + f];
            if r.is_zero() {
                continue;
            }
            s.add_assign_scaled(&r.mul_trunc(at(f, c, d), cut), &Rational::one());
        }
        s
    };
    let quads: Vec<[usize; 4]> = (0..mu)
        .flat_map(|a| {
            (0..mu).flat_map(move |b| {
                ((b + 1)..mu).flat_map(move |c| (a..mu).map(move |d| [a, b, c, d]))
            })
        })
        .collect();
    let violations: Vec<WdvvViolation> = quads
        .par_iter()
        .flat_map_iter(|&[a, b, c, d]| {
            let l = lhs(a, b, c, d);
            let r = lhs(a, c, b, d);
            let diff = l.sub(&r);
            diff.terms()
                .map(|(m, _)| WdvvViolation {
                    indices: [a, b, c, d],
                    monomial: m.exponents().to_vec(),
                    lhs: l.coeff(m),
                    rhs: r.coeff(m),
                })
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(WdvvReport { compared_through: Some(cut), equations: quads.len(), violations })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerViolation {
    pub monomial: Vec<u32>,
    pub degree: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerReport {
    pub expected_degree: Rational,
    pub terms: usize,
    pub violations: Vec<EulerViolation>,
}

impl EulerReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every monomial of `F0` must have weighted degree `3 - c_hat`.
pub fn euler_check(f0: &SSeries, t_degrees: &[Rational], c_hat: &Rational) -> EulerReport {
    let expected = Rational::from_integer(3) - c_hat;
    let violations = f0
        .terms()
        .filter_map(|(m, _)| {
            let d = m.weighted_degree(t_degrees);
            (d != expected).then(|| EulerViolation { monomial: m.exponents().to_vec(), degree: d })
        })
        .collect();
    EulerReport { expected_degree: expected, terms: f0.len(), violations }
}

/// Third derivatives at the origin against `eta(phi_a phi_b, phi_c)` in the Jacobian ring,
/// plus absence of terms of degree two or less.
pub fn origin_ring_violations(f0: &SSeries, milnor: &MilnorData) -> Vec<String> {
    let mu = milnor.mu();
    let mut out = Vec::new();
    for (m, c) in f0.terms() {
        if m.total_degree() <= 2 {
            out.push(format!("unexpected low-degree term {:?} with coefficient {c}", m.exponents()));
        }
    }
    if f0.order() < 3 {
        return out;
    }
    let eta = milnor.eta();
    for a in 0..mu {
        for b in a..mu {
            let prod = milnor.product(a, b);
            for c in b..mu {
                let expected: Rational =
                    (0..mu).map(|d| &prod[d] * &eta[d][c]).sum();
                let got = third_derivative(f0, a, b, c).coeff(&Monomial::one(mu));
                if got != expected {
                    out.push(format!(
                        "d^3 F0 / dt_{} dt_{} dt_{} at 0 is {got}, ring gives {expected}",
                        a + 1,
                        b + 1,
                        c + 1
                    ));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::milnor::{milnor_basis, WeightedPolynomial};
    use crate::primitive::{build_unfolding, solve_star};

    fn data(expr: &str) -> MilnorData {
        milnor_basis(&WeightedPolynomial::parse(expr, None, None).unwrap()).unwrap()
    }

    fn series(mu: usize, order: u32, terms: &[(&[u32], i64, i64)]) -> SSeries {
        SSeries::from_terms(
            mu,
            order,
            terms.iter().map(|(e, p, q)| (Monomial::new(e.to_vec()), Rational::new(*p, *q))),
        )
        .unwrap()
    }

    #[test]
    fn triangular_inversion() {
        let t = vec![series(2, 4, &[(&[1, 0], 1, 1), (&[0, 2], 1, 1)]), SSeries::var(2, 4, 1)];
        let s = invert_coordinates(&t, 4).unwrap();
        assert_eq!(s[0], series(2, 4, &[(&[1, 0], 1, 1), (&[0, 2], -1, 1)]));
        assert_eq!(s[1], SSeries::var(2, 4, 1));
        let ident: Vec<SSeries> = (0..3).map(|a| SSeries::var(3, 2, a)).collect();
        assert_eq!(invert_coordinates(&ident, 2).unwrap(), ident);
    }

    #[test]
    fn inversion_rejects_bad_linear_part() {
        let t = vec![series(1, 3, &[(&[1], 2, 1)])];
        assert!(matches!(invert_coordinates(&t, 3), Err(Error::ContractViolation(_))));
    }

    #[test]
    fn a1_is_a_single_cubic() {
        let d = data("x^2");
        let r = solve_star(&build_unfolding(&d, 5));
        let fd = prepotential(&r, &d).unwrap();
        assert_eq!(fd.prepotential, series(1, 5, &[(&[3], 1, 12)]));
    }

    #[test]
    fn a2_prepotential() {
        let d = data("x^3");
        let r = solve_star(&build_unfolding(&d, 4));
        let fd = prepotential(&r, &d).unwrap();
        assert_eq!(
            fd.prepotential,
            series(2, 4, &[(&[2, 1], 1, 6), (&[0, 4], -1, 216)])
        );
        assert_eq!(fd.t_of_s, vec![SSeries::var(2, 4, 0), SSeries::var(2, 4, 1)]);
    }

    #[test]
    fn a3_flat_coordinates() {
        let d = data("x^4");
        let r = solve_star(&build_unfolding(&d, 4));
        let fd = prepotential(&r, &d).unwrap();
        assert_eq!(fd.t_of_s[0], series(3, 4, &[(&[1, 0, 0], 1, 1), (&[0, 0, 2], -1, 8)]));
        assert_eq!(
            fd.prepotential,
            series(3, 4, &[(&[1, 2, 0], 1, 8), (&[2, 0, 1], 1, 8), (&[0, 2, 2], -1, 64)])
        );
    }

    #[test]
    fn checks_pass_and_catch_corruption() {
        let d = data("x^3 + y^3 + z^4");
        let r = solve_star(&build_unfolding(&d, 4));
        let fd = prepotential(&r, &d).unwrap();
        let c_hat = d.central_charge().clone();
        assert!(wdvv_check(&fd.prepotential, d.eta(), 4).unwrap().passed());
        assert!(euler_check(&fd.prepotential, &fd.t_degrees, &c_hat).passed());
        assert!(origin_ring_violations(&fd.prepotential, &d).is_empty());

        let (m, _) = fd.prepotential.homogeneous_part(4).terms().next().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut bad = fd.prepotential.clone();
        bad.add_term(m, Rational::one());
        assert!(!wdvv_check(&bad, d.eta(), 4).unwrap().passed());

        let mut off = fd.prepotential.clone();
        off.add_term(Monomial::new(vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 4]), Rational::one());
        assert!(!euler_check(&off, &fd.t_degrees, &c_hat).passed());
    }

    #[test]
    fn low_orders_give_empty_prepotential() {
        let d = data("x^3 + y^7");
        for n in 0..3 {
            let r = solve_star(&build_unfolding(&d, n));
            assert!(prepotential(&r, &d).unwrap().prepotential.is_zero());
        }
    }
}
