//! Gate-level circuit representation.
//!
//! Gates apply left to right: the first gate in [`Circuit::gates`] acts first,
//! so the circuit unitary is `U_last ⋯ U_first`. Angles are radians and
//! `RZ(θ) = diag(e^{-iθ/2}, e^{iθ/2})`, `RX(θ) = exp(-iθX/2)`; global phase
//! is never discarded.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;
use std::ops::{Add, AddAssign};

use num_complex::Complex64;

use crate::dense::{self, CMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    H(usize),
    X(usize),
    Rx { qubit: usize, angle: f64 },
    Rz { qubit: usize, angle: f64 },
    Cnot { control: usize, target: usize },
    /// Rotation `RZ(angle)` on `target`, applied only when every control is `|1⟩`.
    Mcrz {
        controls: Vec<usize>,
        target: usize,
        angle: f64,
    },
}

impl Gate {
    /// Operand qubits; for controlled gates the controls come first.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::H(q) | Gate::X(q) => vec![*q],
            Gate::Rx { qubit, .. } | Gate::Rz { qubit, .. } => vec![*qubit],
            Gate::Cnot { control, target } => vec![*control, *target],
            Gate::Mcrz {
                controls, target, ..
            } => controls.iter().copied().chain([*target]).collect(),
        }
    }

    pub fn inverse(&self) -> Gate {
        match self {
            Gate::H(_) | Gate::X(_) | Gate::Cnot { .. } => self.clone(),
            Gate::Rx { qubit, angle } => Gate::Rx {
                qubit: *qubit,
                angle: -angle,
            },
            Gate::Rz { qubit, angle } => Gate::Rz {
                qubit: *qubit,
                angle: -angle,
            },
            Gate::Mcrz {
                controls,
                target,
                angle,
            } => Gate::Mcrz {
                controls: controls.clone(),
                target: *target,
                angle: -angle,
            },
        }
    }

    fn angle(&self) -> Option<f64> {
        match self {
            Gate::Rx { angle, .. } | Gate::Rz { angle, .. } | Gate::Mcrz { angle, .. } => {
                Some(*angle)
            }
            _ => None,
        }
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let qs = self.qubits();
        for (k, &q) in qs.iter().enumerate() {
            if q >= n_qubits {
                return Err(Error::QubitOutOfRange { qubit: q, n_qubits });
            }
            if qs[..k].contains(&q) {
                return Err(Error::RepeatedOperand(q));
            }
        }
        if let Some(a) = self.angle() {
            if !a.is_finite() {
                return Err(Error::NonFiniteAngle);
            }
        }
        Ok(())
    }

    /// Matrix on the gate's own operands, `qubits()[0]` as the low bit.
    pub fn local_matrix(&self) -> CMatrix {
        let z = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        match self {
            Gate::H(_) => {
                let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                CMatrix::from_shape_vec((2, 2), vec![s, s, s, -s]).unwrap()
            }
            Gate::X(_) => dense::pauli_x(),
            Gate::Rx { angle, .. } => {
                let c = Complex64::new((angle / 2.0).cos(), 0.0);
                let s = Complex64::new(0.0, -(angle / 2.0).sin());
                CMatrix::from_shape_vec((2, 2), vec![c, s, s, c]).unwrap()
            }
            Gate::Rz { angle, .. } => rz_matrix(*angle),
            Gate::Cnot { .. } => {
                // index = control + 2*target
                let mut m = CMatrix::zeros((4, 4));
                m[[0, 0]] = one;
                m[[2, 2]] = one;
                m[[3, 1]] = one;
                m[[1, 3]] = one;
                m
            }
            Gate::Mcrz {
                controls, angle, ..
            } => {
                let k = controls.len();
                let dim = 1usize << (k + 1);
                let all = (1usize << k) - 1;
                let rz = rz_matrix(*angle);
                let mut m = CMatrix::zeros((dim, dim));
                for idx in 0..dim {
                    m[[idx, idx]] = if idx & all == all {
                        rz[[idx >> k, idx >> k]]
                    } else {
                        one
                    };
                }
                let _ = z;
                m
            }
        }
    }
}

fn rz_matrix(angle: f64) -> CMatrix {
    let z = Complex64::new(0.0, 0.0);
    let lo = Complex64::from_polar(1.0, -angle / 2.0);
    let hi = Complex64::from_polar(1.0, angle / 2.0);
    CMatrix::from_shape_vec((2, 2), vec![lo, z, z, hi]).unwrap()
}

/// Per-category gate tallies.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct GateCounts {
    pub cnot: usize,
    pub single_qubit_rotation: usize,
    pub single_qubit_clifford: usize,
    pub multi_controlled_rotation: usize,
}

impl GateCounts {
    pub fn total(&self) -> usize {
        self.cnot
            + self.single_qubit_rotation
            + self.single_qubit_clifford
            + self.multi_controlled_rotation
    }

    /// CSV row `rank,M,scheme,cnot,rot,clifford`.
    pub fn csv_row(&self, rank: usize, orbitals: usize, scheme: &str) -> String {
        format!(
            "{rank},{orbitals},{scheme},{},{},{}",
            self.cnot, self.single_qubit_rotation, self.single_qubit_clifford
        )
    }

    pub const CSV_HEADER: &'static str = "rank,M,scheme,cnot,rot,clifford";
}

impl Add for GateCounts {
    type Output = GateCounts;

    fn add(self, o: GateCounts) -> GateCounts {
        GateCounts {
            cnot: self.cnot + o.cnot,
            single_qubit_rotation: self.single_qubit_rotation + o.single_qubit_rotation,
            single_qubit_clifford: self.single_qubit_clifford + o.single_qubit_clifford,
            multi_controlled_rotation: self.multi_controlled_rotation
                + o.multi_controlled_rotation,
        }
    }
}

impl AddAssign for GateCounts {
    fn add_assign(&mut self, o: GateCounts) {
        *self = *self + o;
    }
}

fn is_quarter_turn(angle: f64) -> bool {
    let k = angle / FRAC_PI_2;
    (k - k.round()).abs() < 1e-12
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit {
            n_qubits,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(n_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Circuit::new(n_qubits);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(self)
    }

    pub fn h(&mut self, q: usize) -> Result<&mut Self> {
        self.push(Gate::H(q))
    }

    pub fn x(&mut self, q: usize) -> Result<&mut Self> {
        self.push(Gate::X(q))
    }

    pub fn rx(&mut self, qubit: usize, angle: f64) -> Result<&mut Self> {
        self.push(Gate::Rx { qubit, angle })
    }

    pub fn rz(&mut self, qubit: usize, angle: f64) -> Result<&mut Self> {
        self.push(Gate::Rz { qubit, angle })
    }

    pub fn cnot(&mut self, control: usize, target: usize) -> Result<&mut Self> {
        self.push(Gate::Cnot { control, target })
    }

    pub fn mcrz(&mut self, controls: &[usize], target: usize, angle: f64) -> Result<&mut Self> {
        self.push(Gate::Mcrz {
            controls: controls.to_vec(),
            target,
            angle,
        })
    }

    /// Appends `other` in place; registers must match.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::QubitCountMismatch(self.n_qubits, other.n_qubits));
        }
        self.gates.extend(other.gates.iter().cloned());
        Ok(())
    }

    /// Same gates on a register of `n_qubits ≥ self.n_qubits()`.
    pub fn widened(&self, n_qubits: usize) -> Result<Circuit> {
        if n_qubits < self.n_qubits {
            return Err(Error::QubitCountMismatch(self.n_qubits, n_qubits));
        }
        Ok(Circuit {
            n_qubits,
            gates: self.gates.clone(),
        })
    }

    pub fn has_unlowered(&self) -> bool {
        self.gates.iter().any(|g| matches!(g, Gate::Mcrz { .. }))
    }

    /// One past the highest qubit any gate touches.
    pub fn active_width(&self) -> usize {
        self.gates
            .iter()
            .flat_map(|g| g.qubits())
            .max()
            .map_or(0, |q| q + 1)
    }
}

/// `a` followed by `b`.
pub fn compose(a: &Circuit, b: &Circuit) -> Result<Circuit> {
    let mut out = a.clone();
    out.append(b)?;
    Ok(out)
}

pub fn adjoint(c: &Circuit) -> Circuit {
    Circuit {
        n_qubits: c.n_qubits,
        gates: c.gates.iter().rev().map(Gate::inverse).collect(),
    }
}

/// RX by a multiple of π/2 is a basis change and counts as Clifford; every RZ
/// and every other RX counts as a rotation.
pub fn count_gates(c: &Circuit) -> GateCounts {
    let mut n = GateCounts::default();
    for g in &c.gates {
        match g {
            Gate::H(_) | Gate::X(_) => n.single_qubit_clifford += 1,
            Gate::Rx { angle, .. } if is_quarter_turn(*angle) => n.single_qubit_clifford += 1,
            Gate::Rx { .. } | Gate::Rz { .. } => n.single_qubit_rotation += 1,
            Gate::Cnot { .. } => n.cnot += 1,
            Gate::Mcrz { .. } => n.multi_controlled_rotation += 1,
        }
    }
    n
}

const QASM_HEADER: &str = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";

/// QASM-2 style text, one gate per line.
pub fn export_text(c: &Circuit) -> Result<String> {
    let mut out = String::from(QASM_HEADER);
    writeln!(out, "qreg q[{}];", c.n_qubits).unwrap();
    for g in &c.gates {
        match g {
            Gate::H(q) => writeln!(out, "h q[{q}];"),
            Gate::X(q) => writeln!(out, "x q[{q}];"),
            Gate::Rx { qubit, angle } => writeln!(out, "rx({angle}) q[{qubit}];"),
            Gate::Rz { qubit, angle } => writeln!(out, "rz({angle}) q[{qubit}];"),
            Gate::Cnot { control, target } => writeln!(out, "cx q[{control}],q[{target}];"),
            Gate::Mcrz { .. } => return Err(Error::UnloweredGate),
        }
        .unwrap();
    }
    Ok(out)
}

fn parse_qubit(tok: &str) -> Result<usize> {
    tok.trim()
        .strip_prefix("q[")
        .and_then(|r| r.strip_suffix(']'))
        .and_then(|r| r.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad qubit operand `{tok}`")))
}

/// Inverse of [`export_text`].
pub fn import_text(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty()
            || line.starts_with("//")
            || line.starts_with("OPENQASM")
            || line.starts_with("include")
        {
            continue;
        }
        let err = |msg: &str| Error::Parse(format!("line {}: {msg}: `{line}`", lineno + 1));
        let body = line.strip_suffix(';').ok_or_else(|| err("missing `;`"))?;
        if let Some(n) = body.strip_prefix("qreg ") {
            let n = parse_qubit(n).map_err(|_| err("bad register"))?;
            circuit = Some(Circuit::new(n));
            continue;
        }
        let c = circuit.as_mut().ok_or_else(|| err("gate before qreg"))?;
        let (head, args) = body.split_once(' ').ok_or_else(|| err("missing operands"))?;
        let (name, param) = match head.split_once('(') {
            Some((n, rest)) => {
                let p = rest
                    .strip_suffix(')')
                    .and_then(|p| p.parse::<f64>().ok())
                    .ok_or_else(|| err("bad angle"))?;
                (n, Some(p))
            }
            None => (head, None),
        };
        let ops: Vec<usize> = args.split(',').map(parse_qubit).collect::<Result<_>>()?;
        let gate = match (name, param, ops.as_slice()) {
            ("h", None, [q]) => Gate::H(*q),
            ("x", None, [q]) => Gate::X(*q),
            ("rx", Some(angle), [qubit]) => Gate::Rx { qubit: *qubit, angle },
            ("rz", Some(angle), [qubit]) => Gate::Rz { qubit: *qubit, angle },
            ("cx", None, [control, target]) => Gate::Cnot {
                control: *control,
                target: *target,
            },
            _ => return Err(err("unknown gate")),
        };
        c.push(gate)?;
    }
    circuit.ok_or_else(|| Error::Parse("missing qreg declaration".into()))
}

/// Dense unitary of the circuit, built by left-multiplying each gate's
/// Kronecker-embedded matrix.
pub fn unitary(c: &Circuit) -> Result<CMatrix> {
    dense::check_cap(c.n_qubits)?;
    let dim = 1usize << c.n_qubits;
    let mut u = dense::identity(dim);
    for g in &c.gates {
        left_multiply_embedded(&mut u, &g.local_matrix(), &g.qubits());
    }
    Ok(u)
}

/// `u ← (local ⊗ I_rest) · u`, where `local` acts on `qubits` (low bit first).
/// Rows are gathered per block of indices sharing the untouched bits.
fn left_multiply_embedded(u: &mut CMatrix, local: &CMatrix, qubits: &[usize]) {
    let dim = u.nrows();
    let k = qubits.len();
    let sub = 1usize << k;
    let gate_mask: usize = qubits.iter().map(|q| 1usize << q).sum();
    let offsets: Vec<usize> = (0..sub)
        .map(|j| {
            qubits
                .iter()
                .enumerate()
                .filter(|(b, _)| j >> b & 1 == 1)
                .map(|(_, q)| 1usize << q)
                .sum()
        })
        .collect();
    let mut rows = vec![Complex64::new(0.0, 0.0); sub * dim];
    for base in (0..dim).filter(|b| b & gate_mask == 0) {
        for (j, off) in offsets.iter().enumerate() {
            rows[j * dim..(j + 1) * dim]
                .iter_mut()
                .zip(u.row(base | off).iter())
                .for_each(|(d, s)| *d = *s);
        }
        for (i, off) in offsets.iter().enumerate() {
            let mut out_row = u.row_mut(base | off);
            for col in 0..dim {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..sub {
                    let l = local[[i, j]];
                    if l != Complex64::new(0.0, 0.0) {
                        acc += l * rows[j * dim + col];
                    }
                }
                out_row[col] = acc;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::max_abs_diff;

    #[test]
    fn cnot_is_standard_permutation() {
        let mut c = Circuit::new(2);
        c.cnot(0, 1).unwrap();
        let u = unitary(&c).unwrap();
        // |q1 q0⟩: control q0 set flips q1, so 1 -> 3 and 3 -> 1.
        let perm = [0usize, 3, 2, 1];
        for (col, &row) in perm.iter().enumerate() {
            assert_eq!(u[[row, col]], Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn empty_circuit_counts_and_unitary() {
        let c = Circuit::new(3);
        assert_eq!(count_gates(&c), GateCounts::default());
        assert!(max_abs_diff(&unitary(&c).unwrap(), &dense::identity(8)) < 1e-15);
    }

    #[test]
    fn adjoint_reverses_and_negates() {
        let mut c = Circuit::new(2);
        c.h(0).unwrap().rz(1, 0.4).unwrap().cnot(0, 1).unwrap();
        let a = adjoint(&c);
        assert_eq!(
            a.gates(),
            &[
                Gate::Cnot { control: 0, target: 1 },
                Gate::Rz { qubit: 1, angle: -0.4 },
                Gate::H(0)
            ]
        );
        assert_eq!(adjoint(&a), c);
    }

    #[test]
    fn operand_validation() {
        let mut c = Circuit::new(2);
        assert!(matches!(c.cnot(0, 0), Err(Error::RepeatedOperand(0))));
        assert!(matches!(c.h(2), Err(Error::QubitOutOfRange { qubit: 2, .. })));
        assert!(matches!(c.rz(0, f64::NAN), Err(Error::NonFiniteAngle)));
        assert!(compose(&Circuit::new(2), &Circuit::new(3)).is_err());
    }

    #[test]
    fn export_format() {
        let mut c = Circuit::new(2);
        assert_eq!(
            export_text(&c).unwrap(),
            "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\n"
        );
        c.h(1).unwrap().cnot(0, 1).unwrap().rz(1, 0.5).unwrap();
        let text = export_text(&c).unwrap();
        assert!(text.ends_with("h q[1];\ncx q[0],q[1];\nrz(0.5) q[1];\n"));
        assert_eq!(import_text(&text).unwrap(), c);
    }

    #[test]
    fn export_refuses_mcrz() {
        let mut c = Circuit::new(3);
        c.mcrz(&[0, 1], 2, 0.3).unwrap();
        assert_eq!(export_text(&c), Err(Error::UnloweredGate));
        assert_eq!(count_gates(&c).multi_controlled_rotation, 1);
    }

    #[test]
    fn import_rejects_garbage() {
        assert!(import_text("qreg q[2];\nfoo q[0];\n").is_err());
        assert!(import_text("h q[0];\n").is_err());
        assert!(import_text("qreg q[1];\nh q[0]\n").is_err());
    }

    #[test]
    fn clifford_versus_rotation() {
        let mut c = Circuit::new(1);
        c.rx(0, -FRAC_PI_2).unwrap().rx(0, 0.3).unwrap().rz(0, FRAC_PI_2).unwrap().h(0).unwrap();
        let n = count_gates(&c);
        assert_eq!(n.single_qubit_clifford, 2);
        assert_eq!(n.single_qubit_rotation, 2);
    }
}
