//! Two-time correlations and the Leggett-Garg parameter.
//!
//! Starting from `ρ₀ = I/d` the correlation is stationary,
//! `C(θ) = Tr[A U(θ) A U†(θ)] / d`. In the eigenbasis of `Jx` (eigenvalues
//! `λ_k = −j + k`) this becomes a finite cosine series
//!
//! ```text
//! C(θ) = Σ_n c_n cos(nθ),   c_n = (1/d) Σ_{|k−l| = n} |(V†AV)_kl|²
//! ```
//!
//! which gives exact derivatives and costs `O(d)` per angle once the
//! coefficients are known.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{trace_product, DensityMatrix};
use crate::measurement::NoisyDichotomicMeasurement;
use crate::optimize::golden_section_max;
use crate::spin::SpinSystem;

/// Magnitude of `K_LG` above which the inequality counts as violated. The
/// margin keeps boundary points (`|K_LG| = 2` exactly) from flipping on
/// rounding noise.
pub const LGI_BOUND: f64 = 2.0;
pub const LGI_MARGIN: f64 = 1e-10;

pub fn violates_lgi(k_lg: f64) -> bool {
    k_lg.abs() > LGI_BOUND + LGI_MARGIN
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationDerivatives {
    pub value: f64,
    pub first: f64,
    pub second: f64,
}

/// Precomputed cosine-series coefficients of `C(θ)` for one measurement.
#[derive(Debug, Clone)]
pub struct Correlator {
    coefficients: Vec<f64>,
}

impl Correlator {
    pub fn new(sys: &SpinSystem, meas: &NoisyDichotomicMeasurement) -> Result<Self> {
        if meas.dim() != sys.dim() {
            return Err(Error::DimensionMismatch {
                expected: sys.dim(),
                actual: meas.dim(),
            });
        }
        let d = sys.dim();
        let v = &sys.jx_spectrum().eigenvectors;
        let rotated = v.adjoint() * meas.observable().matrix() * v;
        let mut coefficients = vec![0.0; d];
        for k in 0..d {
            for l in 0..d {
                coefficients[k.abs_diff(l)] += rotated[(k, l)].norm_sqr();
            }
        }
        for c in &mut coefficients {
            *c /= d as f64;
        }
        Ok(Self { coefficients })
    }

    /// `c_n` for `n = 0, …, d−1`.
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn value(&self, theta: f64) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(n, c)| c * (n as f64 * theta).cos())
            .sum()
    }

    pub fn derivatives(&self, theta: f64) -> CorrelationDerivatives {
        let mut out = CorrelationDerivatives {
            value: 0.0,
            first: 0.0,
            second: 0.0,
        };
        for (n, c) in self.coefficients.iter().enumerate() {
            let n = n as f64;
            let (s, co) = (n * theta).sin_cos();
            out.value += c * co;
            out.first -= c * n * s;
            out.second -= c * n * n * co;
        }
        out
    }

    /// `K_LG(θ) = 3C(θ) − C(3θ)`.
    pub fn klg(&self, theta: f64) -> f64 {
        3.0 * self.value(theta) - self.value(3.0 * theta)
    }

    /// `(K_LG, dK_LG/dθ, d²K_LG/dθ²)`.
    pub fn klg_derivatives(&self, theta: f64) -> (f64, f64, f64) {
        let one = self.derivatives(theta);
        let three = self.derivatives(3.0 * theta);
        (
            3.0 * one.value - three.value,
            3.0 * one.first - 3.0 * three.first,
            3.0 * one.second - 9.0 * three.second,
        )
    }
}

/// `C(θ)` from the cosine series.
pub fn correlation(sys: &SpinSystem, meas: &NoisyDichotomicMeasurement, theta: f64) -> Result<f64> {
    Ok(Correlator::new(sys, meas)?.value(theta))
}

/// `C(θ) = Tr[A U A U†] / d` by explicit matrix products.
pub fn correlation_direct(
    sys: &SpinSystem,
    meas: &NoisyDichotomicMeasurement,
    theta: f64,
) -> Result<f64> {
    let a = meas.observable().matrix();
    let u = sys.propagator(theta);
    let rotated = &u * a * u.adjoint();
    let tr = trace_product(a, &rotated)? / Complex64::new(sys.dim() as f64, 0.0);
    debug_assert!(tr.im.abs() < 1e-12);
    Ok(tr.re)
}

/// `C_ij = Tr[A U(t_j − t_i) A U(t_i) ρ₀ U†(t_i) U†(t_j − t_i)]` evaluated
/// without assuming stationarity.
pub fn correlation_two_time(
    sys: &SpinSystem,
    meas: &NoisyDichotomicMeasurement,
    t_i: f64,
    t_j: f64,
) -> Result<f64> {
    let rho0 = DensityMatrix::maximally_mixed(sys.dim());
    let a = meas.observable().matrix();
    let u_i = sys.propagator(t_i);
    let u_ij = sys.propagator(t_j - t_i);
    let evolved = &u_i * rho0.matrix() * u_i.adjoint();
    let inner = &u_ij * a * evolved * u_ij.adjoint();
    Ok(trace_product(a, &inner)?.re)
}

pub fn correlation_derivatives(
    sys: &SpinSystem,
    meas: &NoisyDichotomicMeasurement,
    theta: f64,
) -> Result<CorrelationDerivatives> {
    Ok(Correlator::new(sys, meas)?.derivatives(theta))
}

/// Equal-interval Leggett-Garg parameter `3C(θ) − C(3θ)`.
pub fn klg_equal_interval(
    sys: &SpinSystem,
    meas: &NoisyDichotomicMeasurement,
    theta: f64,
) -> Result<f64> {
    Ok(Correlator::new(sys, meas)?.klg(theta))
}

/// `C₁₂ + C₂₃ + C₃₄ − C₁₄` for four measurement times.
pub fn klg_four_time(
    sys: &SpinSystem,
    meas: &NoisyDichotomicMeasurement,
    times: [f64; 4],
) -> Result<f64> {
    if times.windows(2).any(|w| w[0] > w[1]) {
        log::warn!("measurement times {times:?} are not in increasing order");
    }
    let corr = Correlator::new(sys, meas)?;
    let [t1, t2, t3, t4] = times;
    Ok(corr.value(t2 - t1) + corr.value(t3 - t2) + corr.value(t4 - t3) - corr.value(t4 - t1))
}

/// Location and size of the largest `|K_LG|` on an interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub theta: f64,
    pub k_max: f64,
}

/// Dense-grid scan of `|K_LG(θ)|` on `[theta_lo, theta_hi]`, refined around
/// the best grid point by golden-section search. Golden section alone stalls
/// near `sqrt(eps)` on a flat peak, so an interior maximum is finished with
/// Newton steps on `dK_LG/dθ = 0`.
pub fn max_violation(
    sys: &SpinSystem,
    meas: &NoisyDichotomicMeasurement,
    theta_lo: f64,
    theta_hi: f64,
    grid_points: usize,
) -> Result<Violation> {
    if theta_lo.is_nan() || theta_hi.is_nan() || theta_lo > theta_hi {
        return Err(Error::InvalidArgument(format!(
            "empty theta range [{theta_lo}, {theta_hi}]"
        )));
    }
    if grid_points < 16 {
        return Err(Error::InvalidArgument(format!(
            "grid_points = {grid_points} (need at least 16)"
        )));
    }
    let corr = Correlator::new(sys, meas)?;
    let objective = |t: f64| corr.klg(t).abs();
    if theta_lo == theta_hi {
        return Ok(Violation {
            theta: theta_lo,
            k_max: objective(theta_lo),
        });
    }

    let step = (theta_hi - theta_lo) / (grid_points - 1) as f64;
    let at = |i: usize| {
        if i == grid_points - 1 {
            theta_hi
        } else {
            theta_lo + step * i as f64
        }
    };
    let best = (0..grid_points)
        .max_by(|&a, &b| objective(at(a)).total_cmp(&objective(at(b))))
        .expect("non-empty grid");
    let lo = at(best.saturating_sub(1));
    let hi = at((best + 1).min(grid_points - 1));
    let (mut theta, mut k_max) = golden_section_max(objective, lo, hi, 1e-7);
    if theta > lo && theta < hi {
        for _ in 0..8 {
            let (_, first, second) = corr.klg_derivatives(theta);
            if second == 0.0 {
                break;
            }
            let next = theta - first / second;
            if !(lo..=hi).contains(&next) || objective(next) < k_max - 1e-12 {
                break;
            }
            let done = (next - theta).abs() < 1e-13;
            theta = next;
            k_max = objective(next);
            if done {
                break;
            }
        }
    }
    Ok(Violation { theta, k_max })
}
