//! Controlled UCC factors and lowering of multi-controlled RZ.

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::fermion::{ExcitationOperator, JwConvention};
use crate::synth::{push_pauli_rotation, ucc_factor_rotations};

/// Largest control count [`lower_mcrz`] accepts.
pub const MAX_CONTROLS: usize = 4;

/// A UCC factor applied only when every control orbital is occupied.
///
/// Controls are orbitals; copy ancillas are orbitals too, resolved through the
/// same convention, one per control.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlledFactorSpec {
    pub controls: Vec<usize>,
    pub op: ExcitationOperator,
    pub theta: f64,
    pub copy_ancillas: Vec<usize>,
}

impl ControlledFactorSpec {
    pub fn validate(&self, conv: &JwConvention) -> Result<()> {
        if self.controls.len() != self.copy_ancillas.len() {
            return Err(Error::AncillaOverlap(format!(
                "{} controls but {} copy ancillas",
                self.controls.len(),
                self.copy_ancillas.len()
            )));
        }
        if self.controls.len() > MAX_CONTROLS {
            return Err(Error::UnsupportedControlCount(self.controls.len()));
        }
        self.op.validate_against(conv)?;
        let mut seen: Vec<usize> = self.op.orbitals().collect();
        for &p in self.controls.iter().chain(&self.copy_ancillas) {
            conv.qubit(p)?;
            if seen.contains(&p) {
                return Err(Error::AncillaOverlap(format!("orbital {p} used twice")));
            }
            seen.push(p);
        }
        if !self.theta.is_finite() {
            return Err(Error::NonFiniteAngle);
        }
        Ok(())
    }
}

/// Circuit for the controlled factor, with MCRZ gates left unlowered.
///
/// Controls are copied onto the ancillas first because the parity cascades
/// of later runs may pass through the control qubits.
pub fn synth_controlled_ucc(spec: &ControlledFactorSpec, conv: &JwConvention) -> Result<Circuit> {
    spec.validate(conv)?;
    let mut c = Circuit::new(conv.total_qubits());
    let pairs: Vec<(usize, usize)> = spec
        .controls
        .iter()
        .zip(&spec.copy_ancillas)
        .map(|(&ctl, &anc)| Ok((conv.qubit(ctl)?, conv.qubit(anc)?)))
        .collect::<Result<_>>()?;
    let copies: Vec<usize> = pairs.iter().map(|p| p.1).collect();
    for &(ctl, anc) in &pairs {
        c.cnot(ctl, anc)?;
    }
    for (p, phi) in ucc_factor_rotations(&spec.op, spec.theta, conv)? {
        push_pauli_rotation(&mut c, &p, phi, &copies)?;
    }
    for &(ctl, anc) in pairs.iter().rev() {
        c.cnot(ctl, anc)?;
    }
    Ok(c)
}

/// CNOT cost of [`lower_mcrz`] for `k` controls: 0, 2, 8, 26, 80.
pub fn mcrz_cnot_cost(k: usize) -> usize {
    match k {
        0 => 0,
        1 => 2,
        _ => 3 * mcrz_cnot_cost(k - 1) + 2,
    }
}

/// Single-qubit gate count of [`lower_mcrz`]: `3^k`.
pub fn mcrz_single_qubit_cost(k: usize) -> usize {
    if k == 0 {
        1
    } else {
        3usize.pow(k as u32)
    }
}

/// Lowers an MCRZ gate to CNOT and RZ gates on an `n_qubits` register.
///
/// One control uses `RZ(-θ/2) · CNOT · RZ(-θ/2) · CNOT · RZ(θ)` on the target.
/// More controls use the square-root recursion
/// `CV(c2..) · CNOT(c1,c2) · CV†(c2..) · CNOT(c1,c2) · CV(c1,c3..)` with
/// `V = RZ(θ/2)`.
pub fn lower_mcrz(gate: &Gate, n_qubits: usize) -> Result<Circuit> {
    let Gate::Mcrz {
        controls,
        target,
        angle,
    } = gate
    else {
        let mut c = Circuit::new(n_qubits);
        c.push(gate.clone())?;
        return Ok(c);
    };
    if controls.is_empty() || controls.len() > MAX_CONTROLS {
        return Err(Error::UnsupportedControlCount(controls.len()));
    }
    gate.validate(n_qubits)?;
    let mut c = Circuit::new(n_qubits);
    push_lowered(&mut c, controls, *target, *angle)?;
    Ok(c)
}

fn push_lowered(c: &mut Circuit, controls: &[usize], target: usize, angle: f64) -> Result<()> {
    match controls {
        [] => {
            c.rz(target, angle)?;
        }
        [ctl] => {
            c.rz(target, -angle / 2.0)?;
            c.cnot(*ctl, target)?;
            c.rz(target, -angle / 2.0)?;
            c.cnot(*ctl, target)?;
            c.rz(target, angle)?;
        }
        [c1, c2, rest @ ..] => {
            let inner: Vec<usize> = [*c2].iter().chain(rest).copied().collect();
            let outer: Vec<usize> = [*c1].iter().chain(rest).copied().collect();
            push_lowered(c, &inner, target, angle / 2.0)?;
            c.cnot(*c1, *c2)?;
            push_lowered(c, &inner, target, -angle / 2.0)?;
            c.cnot(*c1, *c2)?;
            push_lowered(c, &outer, target, angle / 2.0)?;
        }
    }
    Ok(())
}

/// Replaces every MCRZ in `c` by its lowering.
pub fn lower_all(c: &Circuit) -> Result<Circuit> {
    let mut out = Circuit::new(c.n_qubits());
    for g in c.gates() {
        match g {
            Gate::Mcrz { .. } => out.append(&lower_mcrz(g, c.n_qubits())?)?,
            _ => {
                out.push(g.clone())?;
            }
        }
    }
    Ok(out)
}
