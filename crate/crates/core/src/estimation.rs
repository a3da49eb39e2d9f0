//! Outcome probabilities, classical Fisher information and quantum Fisher
//! information for estimating the rotation angle θ.
//!
//! Two routes to the classical Fisher information are provided. The direct
//! one differentiates `P±(θ) = Tr[E± U ρ± U†]` numerically; the correlation
//! one uses `F = C′² / (1 − C²)` with analytic derivatives. Tables report the
//! second; the first exists as an independent check.

use serde::{Deserialize, Serialize};

use crate::correlation::{CorrelationDerivatives, Correlator};
use crate::error::{Error, Result};
use crate::linalg::{DensityMatrix, HermitianOperator};
use crate::measurement::{prepare, NoisyDichotomicMeasurement, PreparedState, Sign};
use crate::spin::SpinSystem;

/// Below this `1 − C²` the correlation route switches to its limit value.
pub const SINGULAR_DENOMINATOR: f64 = 1e-10;
/// Largest `|C′|` compatible with a genuine extremum at `C² = 1`.
pub const SINGULAR_SLOPE: f64 = 1e-6;
/// Eigenvalue pairs with `p_k + p_l` below this are dropped from the QFI sum.
pub const QFI_CUTOFF: f64 = 1e-12;
/// Probabilities below this make the finite-difference route unusable.
pub const MIN_PROBABILITY: f64 = 1e-14;
pub const DEFAULT_FD_STEP: f64 = 1e-5;

fn outcome_pair(
    sys: &SpinSystem,
    meas: &NoisyDichotomicMeasurement,
    prepared: &PreparedState,
    theta: f64,
) -> Result<(f64, f64)> {
    let evolved = sys.evolve(&prepared.rho, theta)?;
    let prob = |sign: Sign| {
        meas.effect_diagonal(sign)
            .iter()
            .enumerate()
            .map(|(k, e)| e * evolved.matrix()[(k, k)].re)
            .sum::<f64>()
    };
    Ok((prob(Sign::Plus), prob(Sign::Minus)))
}

/// `(P₊(θ), P₋(θ))` for the second measurement after preparation `prep`.
pub fn outcome_probabilities(
    sys: &SpinSystem,
    meas: &NoisyDichotomicMeasurement,
    prep: Sign,
    theta: f64,
) -> Result<(f64, f64)> {
    let prepared = prepare(meas, prep)?;
    outcome_pair(sys, meas, &prepared, theta)
}

/// `F = Σ_l P_l (∂ ln P_l / ∂θ)²` with the derivative taken by a five-point
/// central difference of step `fd_step`.
pub fn fisher_from_probabilities(
    sys: &SpinSystem,
    meas: &NoisyDichotomicMeasurement,
    prep: Sign,
    theta: f64,
    fd_step: f64,
) -> Result<f64> {
    if !(1e-7..=1e-2).contains(&fd_step) {
        return Err(Error::InvalidArgument(format!(
            "fd_step = {fd_step} outside [1e-7, 1e-2]"
        )));
    }
    let prepared = prepare(meas, prep)?;
    let at = |t: f64| outcome_pair(sys, meas, &prepared, t);
    let (p_plus, p_minus) = at(theta)?;
    let (pp2, pm2) = at(theta + 2.0 * fd_step)?;
    let (pp1, pm1) = at(theta + fd_step)?;
    let (pp_1, pm_1) = at(theta - fd_step)?;
    let (pp_2, pm_2) = at(theta - 2.0 * fd_step)?;
    let diff = |f2: f64, f1: f64, f_1: f64, f_2: f64| {
        (-f2 + 8.0 * f1 - 8.0 * f_1 + f_2) / (12.0 * fd_step)
    };
    let d_plus = diff(pp2, pp1, pp_1, pp_2);
    let d_minus = diff(pm2, pm1, pm_1, pm_2);

    let mut fisher = 0.0;
    for (p, dp) in [(p_plus, d_plus), (p_minus, d_minus)] {
        if p < MIN_PROBABILITY {
            return Err(Error::NearSingular {
                theta,
                probability: p,
            });
        }
        fisher += dp * dp / p;
    }
    Ok(fisher)
}

/// `F = C′² / (1 − C²)` from precomputed derivatives.
///
/// Where `C² = 1` (only reachable for a projective measurement, at common
/// extrema of `C`) the ratio is replaced by its limit `|C″|`.
pub fn fisher_from_derivatives(theta: f64, d: CorrelationDerivatives) -> Result<f64> {
    let denominator = (1.0 - d.value) * (1.0 + d.value);
    if denominator <= SINGULAR_DENOMINATOR {
        if d.first.abs() > SINGULAR_SLOPE {
            return Err(Error::InconsistentState {
                theta,
                value: d.value,
                first: d.first,
            });
        }
        return Ok(d.second.abs());
    }
    Ok(d.first * d.first / denominator)
}

pub fn fisher_from_correlation(
    sys: &SpinSystem,
    meas: &NoisyDichotomicMeasurement,
    theta: f64,
) -> Result<f64> {
    let corr = Correlator::new(sys, meas)?;
    fisher_from_derivatives(theta, corr.derivatives(theta))
}

/// QFI of the unitary family `U(θ) ρ U†(θ)` generated by `generator`:
/// `2 Σ (p_k − p_l)² / (p_k + p_l) |⟨v_k|G|v_l⟩|²`.
pub fn qfi_unitary(rho: &DensityMatrix, generator: &HermitianOperator) -> Result<f64> {
    if rho.dim() != generator.dim() {
        return Err(Error::DimensionMismatch {
            expected: generator.dim(),
            actual: rho.dim(),
        });
    }
    let spectrum = rho.eigh();
    let v = &spectrum.eigenvectors;
    let g = v.adjoint() * generator.matrix() * v;
    let p = &spectrum.eigenvalues;
    let mut total = 0.0;
    for k in 0..p.len() {
        for l in 0..p.len() {
            let sum = p[k] + p[l];
            if sum > QFI_CUTOFF {
                let diff = p[k] - p[l];
                total += diff * diff / sum * g[(k, l)].norm_sqr();
            }
        }
    }
    Ok(2.0 * total)
}

/// QFI of the prepared state `ρ_prep` under rotation about x.
pub fn qfi(sys: &SpinSystem, meas: &NoisyDichotomicMeasurement, prep: Sign) -> Result<f64> {
    let prepared = prepare(meas, prep)?;
    qfi_unitary(&prepared.rho, sys.jx())
}

/// One `(θ, b)` evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimationRecord {
    pub theta: f64,
    pub b: f64,
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "K_LG")]
    pub k_lg: f64,
    #[serde(rename = "F")]
    pub fisher: f64,
    #[serde(rename = "F_Q")]
    pub qfi: f64,
    #[serde(rename = "F_ratio")]
    pub ratio: f64,
}

impl EstimationRecord {
    pub const COLUMNS: [&'static str; 7] = ["theta", "b", "C", "K_LG", "F", "F_Q", "F_ratio"];

    pub fn values(&self) -> [f64; 7] {
        [
            self.theta,
            self.b,
            self.c,
            self.k_lg,
            self.fisher,
            self.qfi,
            self.ratio,
        ]
    }

    pub fn column(&self, name: &str) -> Option<f64> {
        Self::COLUMNS
            .iter()
            .position(|c| *c == name)
            .map(|i| self.values()[i])
    }

    pub fn violates_lgi(&self) -> bool {
        crate::correlation::violates_lgi(self.k_lg)
    }
}

/// Correlation series and QFI for one measurement, reused across angles.
#[derive(Debug, Clone)]
pub struct Estimator {
    b: f64,
    correlator: Correlator,
    qfi: f64,
}

impl Estimator {
    pub fn new(sys: &SpinSystem, meas: &NoisyDichotomicMeasurement) -> Result<Self> {
        Ok(Self {
            b: meas.b(),
            correlator: Correlator::new(sys, meas)?,
            qfi: qfi(sys, meas, Sign::Plus)?,
        })
    }

    pub fn qfi(&self) -> f64 {
        self.qfi
    }

    pub fn correlator(&self) -> &Correlator {
        &self.correlator
    }

    pub fn record(&self, theta: f64) -> Result<EstimationRecord> {
        let d = self.correlator.derivatives(theta);
        let fisher = fisher_from_derivatives(theta, d)?;
        let ratio = if self.qfi > 0.0 {
            fisher / self.qfi
        } else {
            0.0
        };
        Ok(EstimationRecord {
            theta,
            b: self.b,
            c: d.value,
            k_lg: self.correlator.klg(theta),
            fisher,
            qfi: self.qfi,
            ratio,
        })
    }
}

pub fn estimation_report(
    sys: &SpinSystem,
    meas: &NoisyDichotomicMeasurement,
    theta: f64,
) -> Result<EstimationRecord> {
    Estimator::new(sys, meas)?.record(theta)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::measurement::PartitionSpec;

    fn setup(b: f64) -> (SpinSystem, NoisyDichotomicMeasurement) {
        let s = SpinSystem::new(5).unwrap();
        let m = NoisyDichotomicMeasurement::with_default_partition(&s, b).unwrap();
        (s, m)
    }

    /// spin-1/2 with each m assigned to the opposite centre: A = 0 at b = 0.
    fn null_measurement() -> (SpinSystem, NoisyDichotomicMeasurement) {
        let s = SpinSystem::new(1).unwrap();
        let p: PartitionSpec = "1:-1;-1:1".parse().unwrap();
        let m = NoisyDichotomicMeasurement::new(&s, 0.0, p).unwrap();
        assert_eq!(m.diagonal(), &[0.0, 0.0]);
        (s, m)
    }

    #[test]
    fn probabilities_projective() {
        let (s, m) = setup(1.0);
        let (p, q) = outcome_probabilities(&s, &m, Sign::Plus, 0.0).unwrap();
        assert!((p - 1.0).abs() < 1e-12 && q.abs() < 1e-12);
        let (p, q) = outcome_probabilities(&s, &m, Sign::Minus, 0.0).unwrap();
        assert!(p.abs() < 1e-12 && (q - 1.0).abs() < 1e-12);
        let (p, q) = outcome_probabilities(&s, &m, Sign::Plus, PI / 2.0).unwrap();
        assert!((p - 0.5).abs() < 1e-12 && (q - 0.5).abs() < 1e-12);
    }

    #[test]
    fn probabilities_match_correlation_closed_form() {
        let (s, m) = setup(0.83);
        let corr = Correlator::new(&s, &m).unwrap();
        for theta in [0.2, 1.1, 2.6] {
            for prep in [Sign::Plus, Sign::Minus] {
                let (p, q) = outcome_probabilities(&s, &m, prep, theta).unwrap();
                assert!((p + q - 1.0).abs() < 1e-12);
                let expected = 0.5 + 0.5 * prep.value() * corr.value(theta);
                assert!((p - expected).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn fisher_projective_half_pi() {
        let (s, m) = setup(1.0);
        let f = fisher_from_correlation(&s, &m, PI / 2.0).unwrap();
        assert!((f - 1.0).abs() < 1e-12);
        let direct =
            fisher_from_probabilities(&s, &m, Sign::Plus, PI / 2.0, DEFAULT_FD_STEP).unwrap();
        assert!((direct - 1.0).abs() < 1e-6);
    }

    #[test]
    fn fisher_flat_probabilities_vanish() {
        let (s, m) = null_measurement();
        for theta in [0.0, 0.4, 2.0] {
            let f = fisher_from_probabilities(&s, &m, Sign::Plus, theta, 1e-4).unwrap();
            assert!(f.abs() < 1e-20);
        }
        assert_eq!(qfi(&s, &m, Sign::Plus).unwrap(), 0.0);
    }

    #[test]
    fn fisher_limit_rule_and_collapse() {
        let (s, m) = setup(1.0);
        let f = fisher_from_correlation(&s, &m, PI).unwrap();
        assert!((f - 35.0 / 3.0).abs() < 1e-9);
        let (s, m) = setup(0.99);
        assert!(fisher_from_correlation(&s, &m, PI).unwrap() < 1e-6);
        let (s, m) = setup(0.6);
        assert_eq!(fisher_from_correlation(&s, &m, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn inconsistent_state_flagged() {
        let d = CorrelationDerivatives {
            value: 1.0,
            first: 0.5,
            second: -3.0,
        };
        assert!(matches!(
            fisher_from_derivatives(0.1, d),
            Err(Error::InconsistentState { .. })
        ));
    }

    #[test]
    fn direct_route_rejects_bad_step_and_singular_point() {
        let (s, m) = setup(1.0);
        assert!(fisher_from_probabilities(&s, &m, Sign::Plus, 1.0, 1e-9).is_err());
        assert!(fisher_from_probabilities(&s, &m, Sign::Plus, 1.0, 0.1).is_err());
        assert!(matches!(
            fisher_from_probabilities(&s, &m, Sign::Plus, PI, DEFAULT_FD_STEP),
            Err(Error::NearSingular { .. })
        ));
    }

    #[test]
    fn qfi_closed_forms() {
        let (s, m) = setup(1.0);
        assert!((qfi(&s, &m, Sign::Plus).unwrap() - 35.0 / 3.0).abs() < 1e-10);
        let s1 = SpinSystem::new(1).unwrap();
        let m1 = NoisyDichotomicMeasurement::with_default_partition(&s1, 1.0).unwrap();
        assert!((qfi(&s1, &m1, Sign::Plus).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn qfi_is_theta_free() {
        let (s, m) = setup(0.9);
        let prepared = prepare(&m, Sign::Plus).unwrap();
        let base = qfi_unitary(&prepared.rho, s.jx()).unwrap();
        for theta in [0.1, 1.0, 2.5] {
            let evolved = s.evolve(&prepared.rho, theta).unwrap();
            assert!((qfi_unitary(&evolved, s.jx()).unwrap() - base).abs() < 1e-8);
        }
    }

    #[test]
    fn report_at_extrema() {
        let (s, m) = setup(1.0);
        let r = estimation_report(&s, &m, PI).unwrap();
        assert!((r.c + 1.0).abs() < 1e-12);
        assert!((r.k_lg + 2.0).abs() < 1e-12);
        assert!((r.fisher - 35.0 / 3.0).abs() < 1e-9);
        assert!((r.qfi - 35.0 / 3.0).abs() < 1e-10);
        assert!((r.ratio - 1.0).abs() < 1e-9);
        let r0 = estimation_report(&s, &m, 0.0).unwrap();
        assert!((r0.c - 1.0).abs() < 1e-12);
        assert!((r0.k_lg - 2.0).abs() < 1e-12);
        assert!((r0.ratio - 1.0).abs() < 1e-9);
        assert!(!r0.violates_lgi());
    }

    #[test]
    fn no_violation_at_034_pi() {
        for i in 0..=20 {
            let (s, m) = setup(i as f64 / 20.0);
            let r = estimation_report(&s, &m, 0.34 * PI).unwrap();
            assert!(!r.violates_lgi(), "b = {} K = {}", r.b, r.k_lg);
        }
    }

    #[test]
    fn record_columns() {
        let (s, m) = setup(1.0);
        let r = estimation_report(&s, &m, 0.5).unwrap();
        assert_eq!(r.column("theta"), Some(0.5));
        assert_eq!(r.column("F_Q"), Some(r.qfi));
        assert_eq!(r.column("nope"), None);
    }
}
