//! Dense complex Hermitian linear algebra.
//!
//! Matrices are small (dimension `2j + 1`), so everything here is a plain
//! dense `DMatrix<Complex64>`. The eigensolver is nalgebra's Hermitian
//! tridiagonal QR; this module adds validation, ascending ordering and the
//! value types the rest of the crate passes around.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Hermiticity tolerance for operators and states.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Tolerance for structural identities (unitarity, reconstruction, spectra).
pub const STRUCTURAL_TOL: f64 = 1e-10;

/// Largest absolute entry of `m`.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest absolute entrywise difference between two equally shaped matrices.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Largest deviation of `m` from its conjugate transpose.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for k in 0..n {
        for l in k..n {
            worst = worst.max((m[(k, l)] - m[(l, k)].conj()).norm());
        }
    }
    worst
}

fn check_square(m: &CMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(m.nrows())
}

/// `Tr(AB)` without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> Result<Complex64> {
    if a.ncols() != b.nrows() || a.nrows() != b.ncols() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            actual: b.ncols(),
        });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..a.nrows() {
        for l in 0..a.ncols() {
            acc += a[(k, l)] * b[(l, k)];
        }
    }
    Ok(acc)
}

/// A square complex matrix equal to its conjugate transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: CMatrix,
}

impl HermitianOperator {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        check_square(&matrix)?;
        let defect = hermiticity_defect(&matrix);
        if defect > HERMITIAN_TOL {
            return Err(Error::NotHermitian(defect));
        }
        Ok(Self { matrix })
    }

    pub fn from_real_diagonal(diagonal: &[f64]) -> Self {
        let n = diagonal.len();
        let matrix = CMatrix::from_fn(n, n, |k, l| {
            if k == l {
                Complex64::new(diagonal[k], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        Self { matrix }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: CMatrix::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn eigh(&self) -> SpectralDecomposition {
        decompose(&self.matrix)
    }
}

/// Eigenvalues in ascending order with the matching orthonormal eigenvectors
/// stored as columns.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `V f(Λ) V†` for a real function of the eigenvalues.
    pub fn map_real(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        self.map_complex(|x| Complex64::new(f(x), 0.0))
    }

    /// `V f(Λ) V†` for a complex function of the eigenvalues.
    pub fn map_complex(&self, f: impl Fn(f64) -> Complex64) -> CMatrix {
        let v = &self.eigenvectors;
        let mut scaled = v.clone();
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            let factor = f(lambda);
            for r in 0..scaled.nrows() {
                scaled[(r, k)] *= factor;
            }
        }
        scaled * v.adjoint()
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.map_real(|x| x)
    }

    /// `‖V†V − I‖_max`.
    pub fn orthonormality_defect(&self) -> f64 {
        let n = self.dim();
        max_abs_diff(
            &(self.eigenvectors.adjoint() * &self.eigenvectors),
            &CMatrix::identity(n, n),
        )
    }
}

/// Spectral decomposition of a Hermitian matrix; non-Hermitian input is rejected.
pub fn eigh(h: &CMatrix) -> Result<SpectralDecomposition> {
    HermitianOperator::new(h.clone()).map(|op| op.eigh())
}

fn decompose(h: &CMatrix) -> SpectralDecomposition {
    let eig = nalgebra::SymmetricEigen::new(h.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let n = h.nrows();
    let eigenvectors = CMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    }
}

/// A unit-trace positive semidefinite Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        check_square(&matrix)?;
        let defect = hermiticity_defect(&matrix);
        if defect > HERMITIAN_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (deviation {defect:e})"
            )));
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > HERMITIAN_TOL || trace.im.abs() > HERMITIAN_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace {trace} != 1")));
        }
        let lowest = decompose(&matrix).eigenvalues[0];
        if lowest < -HERMITIAN_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {lowest:e}"
            )));
        }
        Ok(Self { matrix })
    }

    /// `I/d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: CMatrix::identity(dim, dim) / Complex64::new(dim as f64, 0.0),
        }
    }

    /// `|ψ⟩⟨ψ|` after normalising `psi`.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || psi.is_empty() {
            return Err(Error::InvalidDensityMatrix("zero state vector".into()));
        }
        let n = psi.len();
        let matrix = CMatrix::from_fn(n, n, |k, l| psi[k] * psi[l].conj() / (norm * norm));
        Ok(Self { matrix })
    }

    /// Projects a numerically Hermitian matrix onto its Hermitian part and
    /// validates the result.
    pub(crate) fn from_hermitian_part(matrix: CMatrix) -> Result<Self> {
        let herm = (&matrix + matrix.adjoint()) * Complex64::new(0.5, 0.0);
        Self::new(herm)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn eigh(&self) -> SpectralDecomposition {
        decompose(&self.matrix)
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_input_sorted_with_standard_basis() {
        let h = HermitianOperator::from_real_diagonal(&[2.0, 1.0]);
        let s = h.eigh();
        assert_eq!(s.eigenvalues, vec![1.0, 2.0]);
        assert!(s.eigenvectors[(1, 0)].norm() > 1.0 - 1e-12);
        assert!(s.eigenvectors[(0, 1)].norm() > 1.0 - 1e-12);
        assert!(max_abs_diff(&s.reconstruct(), h.matrix()) <= STRUCTURAL_TOL);
    }

    #[test]
    fn identity_spectrum() {
        let s = HermitianOperator::identity(5).eigh();
        assert!(s.eigenvalues.iter().all(|&x| (x - 1.0).abs() < 1e-12));
    }

    #[test]
    fn complex_hermitian_reconstructs() {
        let m = CMatrix::from_row_slice(
            3,
            3,
            &[
                c(1.0, 0.0),
                c(0.5, 0.25),
                c(0.0, -1.0),
                c(0.5, -0.25),
                c(-2.0, 0.0),
                c(0.3, 0.1),
                c(0.0, 1.0),
                c(0.3, -0.1),
                c(0.7, 0.0),
            ],
        );
        let s = eigh(&m).unwrap();
        assert!(s.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        assert!(max_abs_diff(&s.reconstruct(), &m) <= STRUCTURAL_TOL);
        assert!(s.orthonormality_defect() <= STRUCTURAL_TOL);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m =
            CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(eigh(&m), Err(Error::NotHermitian(_))));
        let m =
            CMatrix::from_row_slice(2, 2, &[c(1.0, 0.1), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(HermitianOperator::new(m).is_err());
    }

    #[test]
    fn trace_product_values() {
        let i6 = CMatrix::identity(6, 6);
        assert_eq!(trace_product(&i6, &i6).unwrap(), c(6.0, 0.0));
        let a =
            CMatrix::from_row_slice(2, 2, &[c(1.0, 2.0), c(0.0, 1.0), c(3.0, 0.0), c(-1.0, 0.5)]);
        let b =
            CMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(2.0, -1.0), c(1.0, 1.0), c(0.0, 3.0)]);
        let ab = trace_product(&a, &b).unwrap();
        let ba = trace_product(&b, &a).unwrap();
        assert!((ab - ba).norm() < 1e-12);
        assert!((ab - (&a * &b).trace()).norm() < 1e-12);
        assert!(matches!(
            trace_product(&i6, &CMatrix::identity(3, 3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn density_matrix_validation() {
        assert!(DensityMatrix::new(CMatrix::identity(2, 2)).is_err());
        let neg =
            CMatrix::from_row_slice(2, 2, &[c(1.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.5, 0.0)]);
        assert!(DensityMatrix::new(neg).is_err());
        let mixed = DensityMatrix::maximally_mixed(4);
        assert!((mixed.trace() - 1.0).abs() < 1e-15);
        let pure = DensityMatrix::pure(&[c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        assert!(DensityMatrix::new(pure.matrix().clone()).is_ok());
    }
}
