//! Dense complex matrices used by the verification oracles.
//!
//! Everything here is deliberately naive: matrices are built from Kronecker
//! products and multiplied directly. The simulator and the synthesis code
//! never call into this module, so the oracles stay independent of the paths
//! they check.

use ndarray::{linalg::kron, Array2};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = Array2<Complex64>;

/// Default qubit cap for dense oracle matrices.
pub const DEFAULT_ORACLE_CAP: usize = 16;

/// Environment variable that overrides [`DEFAULT_ORACLE_CAP`].
pub const ORACLE_CAP_ENV: &str = "UCCDECOMP_ORACLE_CAP";

/// Qubit cap for dense matrices, honouring the environment override.
pub fn oracle_cap() -> usize {
    std::env::var(ORACLE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_CAP)
}

pub(crate) fn check_cap(n_qubits: usize) -> Result<()> {
    let cap = oracle_cap();
    if n_qubits > cap {
        return Err(Error::CapExceeded { n_qubits, cap });
    }
    Ok(())
}

pub fn identity(dim: usize) -> CMatrix {
    Array2::from_diag_elem(dim, Complex64::new(1.0, 0.0))
}

/// Kronecker product of 2x2 factors, `factors[q]` acting on qubit `q`.
///
/// Qubit 0 is the least-significant bit of the basis index, so the product is
/// taken as `factors[n-1] ⊗ … ⊗ factors[0]`.
pub fn kron_qubits(factors: &[CMatrix]) -> CMatrix {
    let mut out = identity(1);
    for f in factors.iter().rev() {
        out = kron(&out, f);
    }
    out
}

pub fn adjoint(m: &CMatrix) -> CMatrix {
    m.t().mapv(|z| z.conj())
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.dim(), b.dim(), "matrix shapes differ");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Largest entry of `m† m - I` in absolute value.
pub fn unitarity_defect(m: &CMatrix) -> f64 {
    let prod = adjoint(m).dot(m);
    max_abs_diff(&prod, &identity(m.nrows()))
}

fn one_norm(m: &CMatrix) -> f64 {
    (0..m.ncols())
        .map(|c| m.column(c).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
pub fn expm(m: &CMatrix) -> CMatrix {
    let dim = m.nrows();
    let norm = one_norm(m);
    let mut squarings = 0u32;
    let mut scale = 1.0;
    while norm * scale > 0.25 {
        scale *= 0.5;
        squarings += 1;
    }
    let a = m.mapv(|z| z * scale);
    let mut result = identity(dim);
    let mut term = identity(dim);
    for k in 1..=30 {
        term = term.dot(&a).mapv(|z| z / k as f64);
        let size = term.iter().map(|z| z.norm()).fold(0.0, f64::max);
        result += &term;
        if size < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        result = result.dot(&result);
    }
    result
}

pub fn pauli_x() -> CMatrix {
    let o = Complex64::new(0.0, 0.0);
    let l = Complex64::new(1.0, 0.0);
    Array2::from_shape_vec((2, 2), vec![o, l, l, o]).unwrap()
}

pub fn pauli_y() -> CMatrix {
    let o = Complex64::new(0.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    Array2::from_shape_vec((2, 2), vec![o, -i, i, o]).unwrap()
}

pub fn pauli_z() -> CMatrix {
    let o = Complex64::new(0.0, 0.0);
    let l = Complex64::new(1.0, 0.0);
    Array2::from_shape_vec((2, 2), vec![l, o, o, -l]).unwrap()
}
