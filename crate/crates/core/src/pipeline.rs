//! End-to-end runs and the stored prepotential record.

use serde::{Deserialize, Serialize};

use crate::algebra::{parse_monomial, Monomial, Rational, SSeries, Term};
use crate::error::{Error, Result};
use crate::frobenius::{
    euler_check, origin_ring_violations, prepotential, wdvv_check, EulerReport, FrobeniusData,
    WdvvReport,
};
use crate::milnor::{MilnorData, WeightedPolynomial};
use crate::primitive::{build_unfolding, defect, solve_star, PrimitiveFormResult};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    #[default]
    Pass,
    Fail,
}

impl CheckStatus {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == CheckStatus::Pass
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub wdvv: CheckStatus,
    pub euler: CheckStatus,
    pub integrability: CheckStatus,
}

impl Checks {
    pub fn all_passed(&self) -> bool {
        self.wdvv.passed() && self.euler.passed() && self.integrability.passed()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct PrepotentialRecord {
    pub singularity: String,
    pub order: u32,
    pub variables: Vec<String>,
    pub weights: Vec<Rational>,
    pub polynomial: Vec<Term>,
    pub basis: Vec<String>,
    pub flat_degrees: Vec<Rational>,
    pub central_charge: Option<Rational>,
    pub eta: Vec<Vec<Rational>>,
    pub terms: Vec<Term>,
    pub checks: Checks,
}

/// Everything produced by one run.
#[derive(Debug)]
pub struct Computation {
    pub name: String,
    pub milnor: MilnorData,
    pub result: PrimitiveFormResult,
    pub frobenius: FrobeniusData,
    pub wdvv: WdvvReport,
    pub euler: EulerReport,
    pub ring: Vec<String>,
}

impl Computation {
    pub fn checks(&self) -> Checks {
        Checks {
            wdvv: CheckStatus::from_bool(self.wdvv.passed()),
            euler: CheckStatus::from_bool(self.euler.passed()),
            integrability: CheckStatus::from_bool(self.ring.is_empty()),
        }
    }

    /// Re-derive `exp((F - f)/z) zeta - J` independently; true when it vanishes.
    pub fn defect_vanishes(&self) -> bool {
        let state = build_unfolding(&self.milnor, self.result.order);
        defect(&state, &self.result).is_zero()
    }

    pub fn prepotential(&self) -> &SSeries {
        &self.frobenius.prepotential
    }

    pub fn record(&self) -> PrepotentialRecord {
        let f = self.milnor.polynomial();
        PrepotentialRecord {
            singularity: self.name.clone(),
            order: self.result.order,
            variables: f.variables().to_vec(),
            weights: f.weights().to_vec(),
            polynomial: f.poly().to_records(),
            basis: self.milnor.basis_names(),
            flat_degrees: self.frobenius.t_degrees.clone(),
            central_charge: Some(self.milnor.central_charge().clone()),
            eta: self.milnor.eta().to_vec(),
            terms: self.frobenius.prepotential.to_records(),
            checks: self.checks(),
        }
    }
}

/// Milnor data, solution of the recursion, prepotential and checks.
pub fn compute(
    name: &str,
    f: &WeightedPolynomial,
    basis: Option<Vec<Monomial>>,
    order: u32,
) -> Result<Computation> {
    let milnor = match basis {
        Some(b) => MilnorData::with_basis(f, b)?,
        None => MilnorData::new(f)?,
    };
    let result = solve_star(&build_unfolding(&milnor, order));
    let frobenius = prepotential(&result, &milnor)?;
    let f0 = &frobenius.prepotential;
    let wdvv = wdvv_check(f0, milnor.eta(), order)?;
    let euler = euler_check(f0, &frobenius.t_degrees, milnor.central_charge());
    let ring = origin_ring_violations(f0, &milnor);
    Ok(Computation { name: name.to_string(), milnor, result, frobenius, wdvv, euler, ring })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Checks,
    pub details: Vec<String>,
    pub warnings: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.all_passed()
    }
}

/// Re-run WDVV, Euler and the origin/normalization checks on a stored record.
pub fn verify_record(record: &PrepotentialRecord) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    if record.variables.is_empty() && record.polynomial.is_empty() && record.terms.is_empty() {
        report.warnings.push("empty record: nothing to verify".into());
        return Ok(report);
    }
    let f = WeightedPolynomial::new(
        record.variables.clone(),
        record.weights.clone(),
        crate::algebra::Poly::from_terms(
            record.variables.len(),
            record.polynomial.iter().map(|t| (Monomial::new(t.exponents.clone()), t.coeff.clone())),
        )?,
    )?;
    let milnor = if record.basis.is_empty() {
        MilnorData::new(&f)?
    } else {
        let b = record
            .basis
            .iter()
            .map(|s| parse_monomial(s, f.variables()))
            .collect::<Result<Vec<_>>>()?;
        MilnorData::with_basis(&f, b)?
    };
    let mu = milnor.mu();
    if let Some(bad) = record.terms.iter().find(|t| t.exponents.len() != mu) {
        return Err(Error::VariableMismatch { expected: mu, found: bad.exponents.len() });
    }
    let f0 = SSeries::from_terms(
        mu,
        u32::MAX,
        record.terms.iter().map(|t| (Monomial::new(t.exponents.clone()), t.coeff.clone())),
    )?;
    if let Some(m) = f0.terms().map(|(m, _)| m).find(|m| m.total_degree() > record.order) {
        report.details.push(format!("term {:?} exceeds the declared order", m.exponents()));
        report.checks.integrability = CheckStatus::Fail;
    }
    let f0 = f0.with_order(record.order);

    if !record.eta.is_empty() && record.eta != milnor.eta() {
        report.details.push("stored metric differs from the residue pairing".into());
        report.checks.integrability = CheckStatus::Fail;
    }
    if !record.checks.all_passed() {
        report.warnings.push("record was stored with failing checks; re-checking".into());
    }

    let wdvv = wdvv_check(&f0, milnor.eta(), record.order)?;
    for v in wdvv.violations.iter().take(10) {
        report.details.push(format!(
            "WDVV ({},{},{},{}) at {:?}: {} vs {}",
            v.indices[0] + 1,
            v.indices[1] + 1,
            v.indices[2] + 1,
            v.indices[3] + 1,
            v.monomial,
            v.lhs,
            v.rhs
        ));
    }
    report.checks.wdvv = CheckStatus::from_bool(wdvv.passed());

    let euler = euler_check(&f0, &milnor.parameter_degrees(), milnor.central_charge());
    for v in &euler.violations {
        report.details.push(format!("Euler: {:?} has degree {}", v.monomial, v.degree));
    }
    report.checks.euler = CheckStatus::from_bool(euler.passed());

    let ring = origin_ring_violations(&f0, &milnor);
    if !ring.is_empty() {
        report.checks.integrability = CheckStatus::Fail;
        report.details.extend(ring);
    }
    Ok(report)
}
