//! Pauli-exponential circuits and uncontrolled UCC factors.
//!
//! `exp(-iφ/2 · P)` is built as: basis change (H for X, RX(-π/2) for Y),
//! CNOT cascade along the sorted support, RZ(±φ) on the last support qubit,
//! mirrored cascade, inverse basis change. The RX sandwich maps Z to -Y, so
//! the rotation angle picks up a factor (-1)^{#Y}.

use std::f64::consts::FRAC_PI_2;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::fermion::{jw_generator, ExcitationOperator, JwConvention};
use crate::pauli::{PauliAxis, PauliString};

/// Appends `exp(-iφ/2 · P)` to `c`; `P`'s coefficient is ignored. With
/// non-empty `controls` the central rotation becomes a multi-controlled RZ.
pub(crate) fn push_pauli_rotation(
    c: &mut Circuit,
    p: &PauliString,
    phi: f64,
    controls: &[usize],
) -> Result<()> {
    let support = p.support();
    let Some(&terminus) = support.last() else {
        return Err(Error::EmptyPauliString);
    };
    let n_y = p.count(PauliAxis::Y);
    let angle = if n_y % 2 == 1 { -phi } else { phi };

    for (q, a) in p.axes() {
        match a {
            PauliAxis::X => {
                c.h(q)?;
            }
            PauliAxis::Y => {
                c.rx(q, -FRAC_PI_2)?;
            }
            _ => {}
        }
    }
    for w in support.windows(2) {
        c.cnot(w[0], w[1])?;
    }
    if controls.is_empty() {
        c.rz(terminus, angle)?;
    } else {
        c.mcrz(controls, terminus, angle)?;
    }
    for w in support.windows(2).rev() {
        c.cnot(w[0], w[1])?;
    }
    for (q, a) in p.axes() {
        match a {
            PauliAxis::X => {
                c.h(q)?;
            }
            PauliAxis::Y => {
                c.rx(q, FRAC_PI_2)?;
            }
            _ => {}
        }
    }
    Ok(())
}

/// Circuit for `exp(-iθ/2 · P)` on `n_qubits` qubits.
pub fn synth_pauli_exponential(p: &PauliString, theta: f64, n_qubits: usize) -> Result<Circuit> {
    let mut c = Circuit::new(n_qubits);
    push_pauli_rotation(&mut c, p, theta, &[])?;
    Ok(c)
}

/// Value left on the last qubit after a CNOT cascade over `bits`.
///
/// Runs the cascade on classical bits rather than folding XOR directly.
pub fn parity_of_cascade(bits: &[bool]) -> bool {
    let mut reg = bits.to_vec();
    for i in 1..reg.len() {
        if reg[i - 1] {
            reg[i] = !reg[i];
        }
    }
    reg.last().copied().unwrap_or(false)
}

/// One `(Pauli string, φ)` pair per generator term, in canonical order, such
/// that `exp(θG) = Π exp(-iφ/2 · P)`.
pub fn ucc_factor_rotations(
    op: &ExcitationOperator,
    theta: f64,
    conv: &JwConvention,
) -> Result<Vec<(PauliString, f64)>> {
    let g = jw_generator(op, conv)?;
    Ok(g.terms()
        .iter()
        .map(|t| (t.clone(), -2.0 * theta * t.coeff().im))
        .collect())
}

/// Subcircuits of [`synth_ucc_factor`], one per generator term.
pub fn ucc_factor_subcircuits(
    op: &ExcitationOperator,
    theta: f64,
    conv: &JwConvention,
) -> Result<Vec<Circuit>> {
    ucc_factor_rotations(op, theta, conv)?
        .iter()
        .map(|(p, phi)| synth_pauli_exponential(p, *phi, conv.total_qubits()))
        .collect()
}

/// Circuit for `exp(θ(A − A†))` on `conv.total_qubits()` qubits.
pub fn synth_ucc_factor(op: &ExcitationOperator, theta: f64, conv: &JwConvention) -> Result<Circuit> {
    if !theta.is_finite() {
        return Err(Error::NonFiniteAngle);
    }
    let mut c = Circuit::new(conv.total_qubits());
    for (p, phi) in ucc_factor_rotations(op, theta, conv)? {
        push_pauli_rotation(&mut c, &p, phi, &[])?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{count_gates, unitary};
    use crate::dense::{expm, max_abs_diff};
    use num_complex::Complex64;

    fn dense_rotation(p: &PauliString, theta: f64, n: usize) -> crate::dense::CMatrix {
        let m = p.with_coeff(Complex64::new(1.0, 0.0)).to_matrix(n).unwrap();
        expm(&m.mapv(|z| z * Complex64::new(0.0, -theta / 2.0)))
    }

    #[test]
    fn zzzz_cascade_shape() {
        let p = PauliString::from_label("ZZZZ").unwrap();
        let c = synth_pauli_exponential(&p, 0.4, 4).unwrap();
        let n = count_gates(&c);
        assert_eq!((n.cnot, n.single_qubit_rotation, n.single_qubit_clifford), (6, 1, 0));
        assert!(max_abs_diff(&unitary(&c).unwrap(), &dense_rotation(&p, 0.4, 4)) < 1e-12);
    }

    #[test]
    fn mixed_axes_match_dense() {
        for label in ["ZZZX", "XXYX", "YYYY", "XIZY", "Y"] {
            let p = PauliString::from_label(label).unwrap();
            let n = label.len();
            let c = synth_pauli_exponential(&p, -1.1, n).unwrap();
            let d = max_abs_diff(&unitary(&c).unwrap(), &dense_rotation(&p, -1.1, n));
            assert!(d < 1e-12, "{label}: {d}");
        }
    }

    #[test]
    fn empty_string_rejected() {
        let p = PauliString::identity(Complex64::new(1.0, 0.0));
        assert_eq!(synth_pauli_exponential(&p, 0.1, 2), Err(Error::EmptyPauliString));
    }

    #[test]
    fn parity_rows() {
        assert!(!parity_of_cascade(&[true, false, true, false]));
        assert!(parity_of_cascade(&[false, false, false, true]));
        assert!(!parity_of_cascade(&[false; 4]));
        assert!(!parity_of_cascade(&[]));
        for v in 0u32..16 {
            let bits: Vec<bool> = (0..4).map(|i| v >> i & 1 == 1).collect();
            assert_eq!(parity_of_cascade(&bits), v.count_ones() % 2 == 1);
        }
    }
}
