//! Spin-j angular momentum operators and the rotation `U(θ) = exp(−iθJx)`.
//!
//! States are indexed in the `Jz` eigenbasis ordered `m = j, j−1, …, −j`.
//! Quantum numbers are carried as twice their value (`two_j`, `2m`) so
//! half-integer spins stay exact.
//!
//! The evolution ignores the `ΩJ²` part of the Hamiltonian: on a fixed-j
//! irrep it is a global phase. The rotation angle `θ = ωt` is dimensionless.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    CMatrix, DensityMatrix, HermitianOperator, SpectralDecomposition, STRUCTURAL_TOL,
};

#[derive(Debug, Clone)]
pub struct SpinSystem {
    two_j: u32,
    jx: HermitianOperator,
    jz: HermitianOperator,
    jx_spectrum: SpectralDecomposition,
}

impl SpinSystem {
    /// Builds `Jx` and `Jz` for spin `two_j / 2`.
    pub fn new(two_j: u32) -> Result<Self> {
        if two_j == 0 {
            return Err(Error::ZeroSpin);
        }
        let dim = two_j as usize + 1;
        let j = two_j as f64 / 2.0;
        let m_of = |k: usize| (two_j as f64 - 2.0 * k as f64) / 2.0;

        let jz = HermitianOperator::from_real_diagonal(&(0..dim).map(m_of).collect::<Vec<_>>());

        let mut jx = DMatrix::<Complex64>::zeros(dim, dim);
        for k in 0..dim - 1 {
            // <m−1| Jx |m> with m = m_of(k)
            let m = m_of(k);
            let element = 0.5 * (j * (j + 1.0) - m * (m - 1.0)).sqrt();
            jx[(k, k + 1)] = Complex64::new(element, 0.0);
            jx[(k + 1, k)] = Complex64::new(element, 0.0);
        }
        let jx = HermitianOperator::new(jx)?;

        // The spectrum of Jx is exactly {−j, …, j}; snap the numerical values
        // onto it so that every Bohr frequency is an exact integer.
        let mut jx_spectrum = jx.eigh();
        for (k, lambda) in jx_spectrum.eigenvalues.iter_mut().enumerate() {
            let exact = -j + k as f64;
            debug_assert!((*lambda - exact).abs() <= STRUCTURAL_TOL);
            *lambda = exact;
        }

        Ok(Self {
            two_j,
            jx,
            jz,
            jx_spectrum,
        })
    }

    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    pub fn dim(&self) -> usize {
        self.two_j as usize + 1
    }

    pub fn j(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    pub fn is_half_integer(&self) -> bool {
        self.two_j % 2 == 1
    }

    /// `2m` for basis index `k`.
    pub fn twice_m(&self, index: usize) -> i32 {
        self.two_j as i32 - 2 * index as i32
    }

    /// Basis index of the state with quantum number `2m`.
    pub fn index_of(&self, twice_m: i32) -> Option<usize> {
        let tj = self.two_j as i32;
        if twice_m.abs() > tj || (tj - twice_m) % 2 != 0 {
            return None;
        }
        Some(((tj - twice_m) / 2) as usize)
    }

    /// All `2m` values in basis order.
    pub fn twice_m_values(&self) -> impl Iterator<Item = i32> + '_ {
        (0..self.dim()).map(move |k| self.twice_m(k))
    }

    pub fn jx(&self) -> &HermitianOperator {
        &self.jx
    }

    pub fn jz(&self) -> &HermitianOperator {
        &self.jz
    }

    /// Eigen-decomposition of `Jx`, eigenvalues exactly `−j, …, j`.
    pub fn jx_spectrum(&self) -> &SpectralDecomposition {
        &self.jx_spectrum
    }

    /// `U(θ) = exp(−iθJx)` evaluated on the spectrum of `Jx`.
    pub fn propagator(&self, theta: f64) -> CMatrix {
        self.jx_spectrum
            .map_complex(|lambda| Complex64::from_polar(1.0, -theta * lambda))
    }

    /// `U(θ) ρ U†(θ)`.
    pub fn evolve(&self, rho: &DensityMatrix, theta: f64) -> Result<DensityMatrix> {
        if rho.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: rho.dim(),
            });
        }
        let u = self.propagator(theta);
        DensityMatrix::from_hermitian_part(&u * rho.matrix() * u.adjoint())
    }
}
