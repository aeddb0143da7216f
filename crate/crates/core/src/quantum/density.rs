use nalgebra::{Matrix4, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-10;

/// Density matrix of a target pair in the basis `{gg, ge, eg, ee}`
/// (first letter: qubit A).
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitDensity {
    matrix: Matrix4<Complex64>,
}

impl TwoQubitDensity {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: Matrix4<Complex64>) -> Result<Self> {
        let herm_err = (matrix - matrix.adjoint()).iter().map(|c| c.norm()).fold(0.0, f64::max);
        if herm_err > HERMITIAN_TOL {
            return Err(Error::InvalidDensity(format!("not Hermitian (deviation {herm_err:e})")));
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::InvalidDensity(format!("trace {trace} != 1")));
        }
        let rho = Self { matrix };
        let min_eig = rho.eigenvalues()[0];
        if min_eig < -PSD_TOL {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min_eig:e}")));
        }
        Ok(rho)
    }

    pub(crate) fn from_matrix_unchecked(matrix: Matrix4<Complex64>) -> Self {
        Self { matrix }
    }

    /// `|psi><psi|` for a normalized two-qubit vector.
    pub fn pure(psi: [Complex64; 4]) -> Result<Self> {
        let v = nalgebra::Vector4::from(psi);
        Self::new(v * v.adjoint())
    }

    pub fn maximally_mixed() -> Self {
        Self {
            matrix: Matrix4::identity() * Complex64::new(0.25, 0.0),
        }
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.matrix
    }

    /// The `(eg, ge)` coherence times two; equals `gamma` for pair states.
    pub fn coherence(&self) -> Complex64 {
        self.matrix[(2, 1)] * 2.0
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let eig = SymmetricEigen::new(self.matrix).eigenvalues;
        let mut out = [eig[0], eig[1], eig[2], eig[3]];
        out.sort_by(f64::total_cmp);
        out
    }
}

/// Reduced pair state produced by an ancilla with next-pair coherence `gamma`:
/// `(1/2) [[0,0,0,0],[0,1,conj(gamma),0],[0,gamma,1,0],[0,0,0,0]]`.
///
/// `|gamma| = 1` is the pure-state limit; larger moduli are rejected.
pub fn pair_density_matrix(gamma: Complex64) -> Result<TwoQubitDensity> {
    check_gamma(gamma)?;
    let half = Complex64::new(0.5, 0.0);
    let mut m = Matrix4::<Complex64>::zeros();
    m[(1, 1)] = half;
    m[(2, 2)] = half;
    m[(2, 1)] = gamma * 0.5;
    m[(1, 2)] = gamma.conj() * 0.5;
    Ok(TwoQubitDensity { matrix: m })
}

/// `<sigma_A(theta_a) sigma_B(theta_b)>` on [`pair_density_matrix`]`(gamma)`:
/// `-cos(2 theta_a) cos(2 theta_b) + Re(gamma) sin(2 theta_a) sin(2 theta_b)`.
pub fn correlator_exact(gamma: Complex64, theta_a: f64, theta_b: f64) -> Result<f64> {
    check_gamma(gamma)?;
    let (sa, ca) = (2.0 * theta_a).sin_cos();
    let (sb, cb) = (2.0 * theta_b).sin_cos();
    Ok(-ca * cb + gamma.re * sa * sb)
}

fn check_gamma(gamma: Complex64) -> Result<()> {
    // allow rounding slack on states that are pure in exact arithmetic
    let modulus = gamma.norm();
    if modulus > 1.0 + 1e-12 || !modulus.is_finite() {
        return Err(Error::UnphysicalCoherence(modulus));
    }
    Ok(())
}
