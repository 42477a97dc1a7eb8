//! Universal unfolding and the perturbative solution of
//! `exp((F - f)/z) zeta = J`, with `zeta` supported on z-powers `>= 0` and
//! `J - [d^n x]` on z-powers `<= -1`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{monomials_of_total_degree, LaurentBlock, Monomial, Rational, SSeries};
use crate::brieskorn::{reduce, MonomialReducer, SeriesPoly};
use crate::error::{Error, Result};
use crate::milnor::MilnorData;

/// `F = f + sum_alpha s_alpha phi_alpha` truncated at s-order `order`.
#[derive(Debug, Clone)]
pub struct UnfoldingState<'a> {
    milnor: &'a MilnorData,
    f_minus_f: SeriesPoly,
    s_degrees: Vec<Rational>,
    order: u32,
    unit: usize,
}

pub fn build_unfolding(milnor: &MilnorData, order: u32) -> UnfoldingState<'_> {
    let mu = milnor.mu();
    let n = milnor.polynomial().nvars();
    let mut f_minus_f = SeriesPoly::zero(n, mu, order);
    for (alpha, m) in milnor.basis().iter().enumerate() {
        f_minus_f.add_term(m.clone(), &SSeries::var(mu, order, alpha));
    }
    let unit = milnor
        .basis_index(&Monomial::one(n))
        .expect("the constant monomial is always a basis element");
    UnfoldingState { milnor, f_minus_f, s_degrees: milnor.parameter_degrees(), order, unit }
}

impl<'a> UnfoldingState<'a> {
    pub fn milnor(&self) -> &'a MilnorData {
        self.milnor
    }

    pub fn f_minus_f(&self) -> &SeriesPoly {
        &self.f_minus_f
    }

    /// `deg s_alpha = 1 - deg phi_alpha`.
    pub fn s_degrees(&self) -> &[Rational] {
        &self.s_degrees
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn mu(&self) -> usize {
        self.milnor.mu()
    }

    /// Index of the basis element `1`, i.e. the class `[d^n x]`.
    pub fn unit_index(&self) -> usize {
        self.unit
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveFormResult {
    pub order: u32,
    pub zeta: LaurentBlock,
    #[serde(rename = "J")]
    pub j: LaurentBlock,
}

/// Scalar classes of `(s^a / a!) phi^a phi_beta` for every `|a| = m`, as blocks per beta.
fn exponential_slice(state: &UnfoldingState, reducer: &MonomialReducer, m: u32) -> Vec<LaurentBlock> {
    let mu = state.mu();
    let n = state.milnor.polynomial().nvars();
    let basis = state.milnor.basis();
    let exps = monomials_of_total_degree(mu, m);
    let pieces: Vec<Vec<(usize, i32, usize, Rational)>> = exps
        .par_iter()
        .map(|e| {
            let mut xm = Monomial::one(n);
            let mut fac = Rational::one();
            for (alpha, &k) in e.exponents().iter().enumerate() {
                if k > 0 {
                    xm = xm.mul(&basis[alpha].pow(k));
                    fac *= Rational::inv_factorial(k);
                }
            }
            let mut out = Vec::new();
            for (beta, phi) in basis.iter().enumerate() {
                for (j, alpha, c) in reducer.reduce_monomial(&xm.mul(phi)).iter() {
                    out.push((beta, *j, *alpha, c * &fac));
                }
            }
            out
        })
        .collect();
    let mut blocks = vec![LaurentBlock::zero(mu, mu, state.order); mu];
    for (e, piece) in exps.iter().zip(pieces) {
        for (beta, j, alpha, c) in piece {
            let mut s = SSeries::zero(mu, state.order);
            s.add_term(e.clone(), c);
            blocks[beta].add_at(j, alpha, &s);
        }
    }
    blocks
}

/// Solve for `zeta` and `J` order by order in the total s-degree.
///
/// At s-order k the known part is `sum_{m=1..k} z^-m M_m zeta_{k-m}` where
/// `M_m` is the reduced action of `(F - f)^m / m!`; its z-powers `>= 0` are
/// cancelled by `zeta_k` and the rest is `J_k`.
pub fn solve_star(state: &UnfoldingState) -> PrimitiveFormResult {
    let mu = state.mu();
    let order = state.order;
    let reducer = MonomialReducer::new(state.milnor);
    let slices: Vec<Vec<LaurentBlock>> =
        (1..=order).map(|m| exponential_slice(state, &reducer, m)).collect();

    let start = LaurentBlock::basis_class(mu, mu, order, state.unit);
    let mut zeta_k: Vec<LaurentBlock> = vec![start.clone()];
    let mut zeta = start.clone();
    let mut j = start;
    for k in 1..=order {
        let mut known = LaurentBlock::zero(mu, mu, order);
        for m in 1..=k {
            let prev = &zeta_k[(k - m) as usize];
            let slice = &slices[(m - 1) as usize];
            for (jz, beta, ser) in prev.entries() {
                for (jm, alpha, ser2) in slice[beta].entries() {
                    known.add_at(jz + jm - m as i32, alpha, &ser.mul_trunc(ser2, order));
                }
            }
        }
        let mut correction = LaurentBlock::zero(mu, mu, order);
        correction.add_assign_scaled(&known.nonnegative_part(), &Rational::from_integer(-1));
        zeta.add_assign(&correction);
        j.add_assign(&known.negative_part());
        zeta_k.push(correction);
    }
    PrimitiveFormResult { order, zeta, j }
}

/// The components `J_m^alpha` at z-power `m <= -1`.
pub fn j_components(result: &PrimitiveFormResult, m: i32) -> Result<Vec<SSeries>> {
    if m > -1 {
        return Err(Error::ContractViolation(format!(
            "J components are only defined for z-powers <= -1, got {m}"
        )));
    }
    Ok((0..result.j.dim()).map(|alpha| result.j.coefficient(m, alpha)).collect())
}

fn times_series(block: &LaurentBlock, s: &SSeries, shift: i32, out: &mut LaurentBlock) {
    let order = out.order();
    for (jz, alpha, ser) in block.entries() {
        out.add_at(jz + shift, alpha, &ser.mul_trunc(s, order));
    }
}

/// `exp((F - f)/z) zeta - J`, recomputed from scratch through whole-polynomial
/// powers of `F - f` and polynomial-level reduction. Zero iff the solution is exact.
pub fn defect(state: &UnfoldingState, result: &PrimitiveFormResult) -> LaurentBlock {
    let mu = state.mu();
    let order = result.order.min(state.order);
    let n = state.milnor.polynomial().nvars();
    let mut powers = vec![SeriesPoly::from_poly(&crate::algebra::Poly::one(n), mu, order)];
    for m in 1..=order {
        let next = powers[(m - 1) as usize]
            .mul(&state.f_minus_f)
            .scale(&Rational::new(1, m as i64));
        powers.push(next);
    }
    let jobs: Vec<(u32, usize)> =
        (0..=order).flat_map(|m| (0..mu).map(move |b| (m, b))).collect();
    let reduced: Vec<LaurentBlock> = jobs
        .par_iter()
        .map(|&(m, b)| {
            let g = powers[m as usize].mul_monomial(&state.milnor.basis()[b]);
            reduce(&g, state.milnor).into_block()
        })
        .collect();
    let mut total = LaurentBlock::zero(mu, mu, order);
    for (jz, beta, ser) in result.zeta.entries() {
        for m in 0..=order {
            let block = &reduced[m as usize * mu + beta];
            times_series(block, ser, jz - m as i32, &mut total);
        }
    }
    total.sub(&result.j.truncate(order))
}

/// Terms violating `deg(s^a) + m + d_alpha = 0` for the coefficient of `z^m phi_alpha`.
pub fn grading_violations(result: &PrimitiveFormResult, milnor: &MilnorData) -> Vec<String> {
    let s_deg = milnor.parameter_degrees();
    let degs = milnor.degrees();
    let mut out = Vec::new();
    for (label, block) in [("zeta", &result.zeta), ("J", &result.j)] {
        for (jz, alpha, ser) in block.entries() {
            for (e, _) in ser.terms() {
                let d = e.weighted_degree(&s_deg) + Rational::from_integer(jz as i64) + &degs[alpha];
                if !d.is_zero() {
                    out.push(format!("{label}: z^{jz} phi_{} s^{:?} has degree {d}", alpha + 1, e.exponents()));
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

    fn data(expr: &str) -> MilnorData {
        milnor_basis(&WeightedPolynomial::parse(expr, None, None).unwrap()).unwrap()
    }

    #[test]
    fn parameter_degrees_u12() {
        let d = data("x^3 + y^3 + z^4");
        let st = build_unfolding(&d, 2);
        assert_eq!(st.s_degrees()[0], Rational::one());
        assert_eq!(st.s_degrees()[11], Rational::new(-1, 6));
        assert_eq!(st.s_degrees().iter().filter(|q| q.is_negative()).count(), 1);
        assert!(st.s_degrees().iter().all(|q| !q.is_zero()));
    }

    #[test]
    fn order_zero_is_normalization() {
        let d = data("x^3");
        let r = solve_star(&build_unfolding(&d, 0));
        assert_eq!(r.zeta, LaurentBlock::basis_class(2, 2, 0, 0));
        assert_eq!(r.j, r.zeta);
    }

    #[test]
    fn first_order_is_the_unfolding() {
        let d = data("x^2 + x*y^4 + z^3");
        let r = solve_star(&build_unfolding(&d, 1));
        let t = j_components(&r, -1).unwrap();
        for (alpha, s) in t.iter().enumerate() {
            assert_eq!(*s, SSeries::var(d.mu(), 1, alpha));
        }
        assert!(j_components(&r, -2).unwrap().iter().all(SSeries::is_zero));
        assert!(j_components(&r, 0).is_err());
    }

    #[test]
    fn a2_has_trivial_zeta() {
        let d = data("x^3");
        let st = build_unfolding(&d, 4);
        let r = solve_star(&st);
        assert_eq!(r.zeta, LaurentBlock::basis_class(2, 2, 4, 0));
        assert!(defect(&st, &r).is_zero());
        assert!(grading_violations(&r, &d).is_empty());
    }

    #[test]
    fn u12_defect_and_grading() {
        let d = data("x^3 + y^3 + z^4");
        let st = build_unfolding(&d, 3);
        let r = solve_star(&st);
        assert!(defect(&st, &r).is_zero());
        assert!(grading_violations(&r, &d).is_empty());
    }

    #[test]
    fn truncation_is_stable() {
        let d = data("x^2*y + y^2*z + z^4");
        let hi = solve_star(&build_unfolding(&d, 3));
        let lo = solve_star(&build_unfolding(&d, 2));
        assert_eq!(hi.zeta.truncate(2), lo.zeta);
        assert_eq!(hi.j.truncate(2), lo.j);
    }
}
