//! Dense state-vector simulation and the exact/oracle UCC factor actions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;

use crate::circuit::{Circuit, Gate};
use crate::dense::{self, CMatrix};
use crate::error::{Error, Result};
use crate::fermion::{jw_generator, ExcitationOperator, JwConvention};

/// Hard limit on simulated register size.
pub const SIM_CAP: usize = 18;

/// Amplitudes below this are left out of [`StateVector::dump`].
pub const DUMP_THRESHOLD: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Occupation bitstring over `n` orbitals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Determinant {
    n: usize,
    bits: u64,
}

impl Determinant {
    pub fn new(n: usize, bits: u64) -> Result<Self> {
        if n < 64 && bits >> n != 0 {
            return Err(Error::QubitOutOfRange {
                qubit: 63 - bits.leading_zeros() as usize,
                n_qubits: n,
            });
        }
        Ok(Determinant { n, bits })
    }

    pub fn from_occupied(n: usize, occupied: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        for &q in occupied {
            if q >= n {
                return Err(Error::QubitOutOfRange { qubit: q, n_qubits: n });
            }
            bits |= 1 << q;
        }
        Ok(Determinant { n, bits })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn index(&self) -> usize {
        self.bits as usize
    }

    pub fn is_occupied(&self, q: usize) -> bool {
        self.bits >> q & 1 == 1
    }

    pub fn occupied(&self) -> Vec<usize> {
        (0..self.n).filter(|&q| self.is_occupied(q)).collect()
    }
}

impl fmt::Display for Determinant {
    /// Qubit 0 is the leftmost character.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n {
            f.write_str(if self.is_occupied(q) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Determinant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = 0u64;
        for (q, ch) in s.chars().enumerate() {
            match ch {
                '1' => bits |= 1 << q,
                '0' => {}
                _ => return Err(Error::Parse(format!("bad bitstring `{s}`"))),
            }
        }
        Ok(Determinant { n: s.len(), bits })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

fn check_sim_cap(n: usize) -> Result<()> {
    if n > SIM_CAP {
        return Err(Error::CapExceeded {
            n_qubits: n,
            cap: SIM_CAP,
        });
    }
    Ok(())
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_sim_cap(n_qubits)?;
        let mut amps = vec![ZERO; 1 << n_qubits];
        if index >= amps.len() {
            return Err(Error::QubitOutOfRange {
                qubit: index,
                n_qubits,
            });
        }
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n_qubits, amps })
    }

    /// Takes the amplitudes as given; no normalization is applied.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let n = amps.len().trailing_zeros() as usize;
        if !amps.len().is_power_of_two() {
            return Err(Error::Parse(format!("{} is not a power of two", amps.len())));
        }
        check_sim_cap(n)?;
        Ok(StateVector { n_qubits: n, amps })
    }

    /// Superposition of determinants with the given (unnormalized) weights.
    pub fn from_determinants(n_qubits: usize, terms: &[(u64, Complex64)]) -> Result<Self> {
        check_sim_cap(n_qubits)?;
        let mut amps = vec![ZERO; 1 << n_qubits];
        for &(det, a) in terms {
            let slot = amps.get_mut(det as usize).ok_or(Error::QubitOutOfRange {
                qubit: det as usize,
                n_qubits,
            })?;
            *slot += a;
        }
        Ok(StateVector { n_qubits, amps })
    }

    /// Uniformly random complex amplitudes, normalized.
    pub fn random<R: Rng>(n_qubits: usize, rng: &mut R) -> Result<Self> {
        check_sim_cap(n_qubits)?;
        let amps = (0..1usize << n_qubits)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let mut s = StateVector { n_qubits, amps };
        s.normalize();
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: u64) -> Complex64 {
        self.amps[index as usize]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalize(&mut self) {
        let n = self.norm_sqr().sqrt();
        if n > 0.0 {
            self.amps.iter_mut().for_each(|a| *a /= n);
        }
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        assert_eq!(self.n_qubits, other.n_qubits);
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn apply_gate(&mut self, g: &Gate) -> Result<()> {
        g.validate(self.n_qubits)?;
        let a = &mut self.amps;
        match g {
            Gate::H(q) => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                for_pairs(a, *q, |x, y| {
                    let (u, v) = (*x, *y);
                    *x = (u + v) * s;
                    *y = (u - v) * s;
                });
            }
            Gate::X(q) => for_pairs(a, *q, std::mem::swap),
            Gate::Rx { qubit, angle } => {
                let c = (angle / 2.0).cos();
                let s = Complex64::new(0.0, -(angle / 2.0).sin());
                for_pairs(a, *qubit, |x, y| {
                    let (u, v) = (*x, *y);
                    *x = u * c + v * s;
                    *y = u * s + v * c;
                });
            }
            Gate::Rz { qubit, angle } => {
                let lo = Complex64::from_polar(1.0, -angle / 2.0);
                let hi = Complex64::from_polar(1.0, angle / 2.0);
                for_pairs(a, *qubit, |x, y| {
                    *x *= lo;
                    *y *= hi;
                });
            }
            Gate::Cnot { control, target } => {
                let cbit = 1usize << control;
                let tbit = 1usize << target;
                for (b, block) in a.chunks_mut(tbit << 1).enumerate() {
                    let base = b * (tbit << 1);
                    let (lo, hi) = block.split_at_mut(tbit);
                    for (j, (x, y)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                        if (base + j) & cbit != 0 {
                            std::mem::swap(x, y);
                        }
                    }
                }
            }
            Gate::Mcrz {
                controls,
                target,
                angle,
            } => {
                let cmask: usize = controls.iter().map(|c| 1usize << c).sum();
                let tbit = 1usize << target;
                let lo = Complex64::from_polar(1.0, -angle / 2.0);
                let hi = Complex64::from_polar(1.0, angle / 2.0);
                for (i, x) in a.iter_mut().enumerate() {
                    if i & cmask == cmask {
                        *x *= if i & tbit == 0 { lo } else { hi };
                    }
                }
            }
        }
        Ok(())
    }

    pub fn apply_circuit(&mut self, c: &Circuit) -> Result<()> {
        if c.n_qubits() != self.n_qubits {
            return Err(Error::QubitCountMismatch(self.n_qubits, c.n_qubits()));
        }
        self.apply_gates(c.gates())
    }

    /// Applies gates that all fit inside this register.
    pub fn apply_gates(&mut self, gates: &[Gate]) -> Result<()> {
        for g in gates {
            self.apply_gate(g)?;
        }
        Ok(())
    }

    /// Applies ops produced by [`fuse_diagonal_runs`].
    pub fn apply_ops(&mut self, ops: &[SimOp]) -> Result<()> {
        for op in ops {
            match op {
                SimOp::Gate(g) => self.apply_gate(g)?,
                SimOp::PermPhase(p) => p.apply(self)?,
            }
        }
        Ok(())
    }

    /// `exp(θ(A − A†))` applied through the determinant pairs it couples:
    /// `|s⟩ → cos θ|s⟩ + σ sin θ|t⟩`, `|t⟩ → cos θ|t⟩ − σ sin θ|s⟩` where
    /// `A|s⟩ = σ|t⟩`; every other determinant is left untouched.
    pub fn apply_ucc_factor_exact(
        &mut self,
        op: &ExcitationOperator,
        theta: f64,
        conv: &JwConvention,
    ) -> Result<()> {
        if conv.total_qubits() != self.n_qubits {
            return Err(Error::QubitCountMismatch(self.n_qubits, conv.total_qubits()));
        }
        op.validate_against(conv)?;
        let (sin, cos) = theta.sin_cos();
        let occ = conv.determinant(op.occupied())?;
        let virt = conv.determinant(op.virtual_orbitals())?;
        for s in 0..self.amps.len() as u64 {
            if s & occ != occ || s & virt != 0 {
                continue;
            }
            let (sigma, t) = op
                .apply_to_determinant(s, conv)
                .expect("mask check guarantees an excitation");
            let (a_s, a_t) = (self.amps[s as usize], self.amps[t as usize]);
            self.amps[s as usize] = a_s * cos - a_t * (sigma * sin);
            self.amps[t as usize] = a_t * cos + a_s * (sigma * sin);
        }
        Ok(())
    }

    /// Projects `qubits` onto `|0⟩`, removes them, and renormalizes. Returns
    /// the state on the remaining qubits (in index order) and the discarded
    /// weight.
    pub fn sector_restrict(&self, qubits: &[usize]) -> Result<(StateVector, f64)> {
        let (mut s, leaked) = self.sector_project(qubits)?;
        s.normalize();
        Ok((s, leaked))
    }

    /// As [`sector_restrict`](Self::sector_restrict) but without renormalizing.
    pub fn sector_project(&self, qubits: &[usize]) -> Result<(StateVector, f64)> {
        for &q in qubits {
            if q >= self.n_qubits {
                return Err(Error::QubitOutOfRange {
                    qubit: q,
                    n_qubits: self.n_qubits,
                });
            }
        }
        let keep: Vec<usize> = (0..self.n_qubits).filter(|q| !qubits.contains(q)).collect();
        let drop_mask: usize = qubits.iter().map(|q| 1usize << q).sum();
        let mut amps = vec![ZERO; 1 << keep.len()];
        let mut leaked = 0.0;
        for (i, a) in self.amps.iter().enumerate() {
            if i & drop_mask != 0 {
                leaked += a.norm_sqr();
                continue;
            }
            let j: usize = keep
                .iter()
                .enumerate()
                .map(|(k, &q)| (i >> q & 1) << k)
                .sum();
            amps[j] = *a;
        }
        Ok((
            StateVector {
                n_qubits: keep.len(),
                amps,
            },
            leaked,
        ))
    }

    /// Keeps qubits `0..n_keep`, projecting the rest onto `|0⟩`.
    pub fn truncate(&self, n_keep: usize) -> (StateVector, f64) {
        let n_keep = n_keep.min(self.n_qubits);
        let dim = 1usize << n_keep;
        let leaked = self.amps[dim..].iter().map(|a| a.norm_sqr()).sum();
        (
            StateVector {
                n_qubits: n_keep,
                amps: self.amps[..dim].to_vec(),
            },
            leaked,
        )
    }

    /// Tensors `|0⟩` qubits on top of the register.
    pub fn extend(&self, n_qubits: usize) -> Result<StateVector> {
        check_sim_cap(n_qubits)?;
        let mut amps = vec![ZERO; 1 << n_qubits.max(self.n_qubits)];
        amps[..self.amps.len()].copy_from_slice(&self.amps);
        Ok(StateVector {
            n_qubits: n_qubits.max(self.n_qubits),
            amps,
        })
    }

    /// Lines `bitstring re im` (qubit 0 leftmost) for amplitudes above
    /// [`DUMP_THRESHOLD`].
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, a) in self.amps.iter().enumerate() {
            if a.norm() > DUMP_THRESHOLD {
                let det = Determinant {
                    n: self.n_qubits,
                    bits: i as u64,
                };
                out.push_str(&format!("{det} {:.12} {:.12}\n", a.re, a.im));
            }
        }
        out
    }
}

/// A run of CNOT, X, RZ and MCRZ gates collapsed into one map
/// `|l⟩ → phase[l]·|image[l]⟩` on a few qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PermPhase {
    qubits: Vec<usize>,
    image: Vec<usize>,
    phase: Vec<Complex64>,
}

impl PermPhase {
    fn from_gates(gates: &[Gate]) -> Self {
        let mut qubits: Vec<usize> = gates.iter().flat_map(|g| g.qubits()).collect();
        qubits.sort_unstable();
        qubits.dedup();
        let local = |q: usize| 1usize << qubits.iter().position(|&p| p == q).unwrap();
        let dim = 1usize << qubits.len();
        let mut image = Vec::with_capacity(dim);
        let mut phase = Vec::with_capacity(dim);
        for l in 0..dim {
            let (mut bits, mut ph) = (l, Complex64::new(1.0, 0.0));
            for g in gates {
                match g {
                    Gate::X(q) => bits ^= local(*q),
                    Gate::Cnot { control, target } => {
                        if bits & local(*control) != 0 {
                            bits ^= local(*target);
                        }
                    }
                    Gate::Rz { qubit, angle } => {
                        let sign = if bits & local(*qubit) != 0 { 1.0 } else { -1.0 };
                        ph *= Complex64::from_polar(1.0, sign * angle / 2.0);
                    }
                    Gate::Mcrz {
                        controls,
                        target,
                        angle,
                    } => {
                        if controls.iter().all(|c| bits & local(*c) != 0) {
                            let sign = if bits & local(*target) != 0 { 1.0 } else { -1.0 };
                            ph *= Complex64::from_polar(1.0, sign * angle / 2.0);
                        }
                    }
                    _ => unreachable!("only permutation-phase gates are fused"),
                }
            }
            image.push(bits);
            phase.push(ph);
        }
        PermPhase {
            qubits,
            image,
            phase,
        }
    }

    fn apply(&self, s: &mut StateVector) -> Result<()> {
        if let Some(&q) = self.qubits.iter().find(|&&q| q >= s.n_qubits) {
            return Err(Error::QubitOutOfRange {
                qubit: q,
                n_qubits: s.n_qubits,
            });
        }
        let dim = self.image.len();
        let mask: usize = self.qubits.iter().map(|q| 1usize << q).sum();
        let offsets: Vec<usize> = (0..dim)
            .map(|l| {
                self.qubits
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| l >> k & 1 == 1)
                    .map(|(_, q)| 1usize << q)
                    .sum()
            })
            .collect();
        let mut buf = vec![ZERO; dim];
        for base in 0..s.amps.len() {
            if base & mask != 0 {
                continue;
            }
            for (l, off) in offsets.iter().enumerate() {
                buf[l] = s.amps[base | off];
            }
            for l in 0..dim {
                s.amps[base | offsets[self.image[l]]] = buf[l] * self.phase[l];
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SimOp {
    Gate(Gate),
    PermPhase(PermPhase),
}

/// Groups consecutive CNOT/X/RZ/MCRZ gates touching at most `max_qubits`
/// qubits into single [`PermPhase`] ops. Other gates pass through.
pub fn fuse_diagonal_runs(gates: &[Gate], max_qubits: usize) -> Vec<SimOp> {
    let fusable = |g: &Gate| !matches!(g, Gate::H(_) | Gate::Rx { .. });
    let mut out = Vec::new();
    let mut run: Vec<Gate> = Vec::new();
    let mut support: Vec<usize> = Vec::new();
    let flush = |run: &mut Vec<Gate>, support: &mut Vec<usize>, out: &mut Vec<SimOp>| {
        match run.len() {
            0 => {}
            1 => out.push(SimOp::Gate(run[0].clone())),
            _ => out.push(SimOp::PermPhase(PermPhase::from_gates(run))),
        }
        run.clear();
        support.clear();
    };
    for g in gates {
        if !fusable(g) {
            flush(&mut run, &mut support, &mut out);
            out.push(SimOp::Gate(g.clone()));
            continue;
        }
        let mut grown = support.clone();
        for q in g.qubits() {
            if !grown.contains(&q) {
                grown.push(q);
            }
        }
        if grown.len() > max_qubits {
            flush(&mut run, &mut support, &mut out);
            grown = g.qubits();
        }
        support = grown;
        run.push(g.clone());
    }
    flush(&mut run, &mut support, &mut out);
    out
}

fn for_pairs<F: FnMut(&mut Complex64, &mut Complex64)>(a: &mut [Complex64], q: usize, mut f: F) {
    let bit = 1usize << q;
    for block in a.chunks_mut(bit << 1) {
        let (lo, hi) = block.split_at_mut(bit);
        for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
            f(x, y);
        }
    }
}

/// Largest absolute amplitude difference; no global-phase quotient.
///
/// Panics if the registers differ in size.
pub fn deviation(a: &StateVector, b: &StateVector) -> f64 {
    assert_eq!(a.n_qubits, b.n_qubits, "state sizes differ");
    a.amps
        .iter()
        .zip(&b.amps)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Dense `exp(θG)` for the JW generator `G` of `op`.
pub fn matrix_exponential_oracle(
    op: &ExcitationOperator,
    theta: f64,
    conv: &JwConvention,
) -> Result<CMatrix> {
    dense::check_cap(conv.total_qubits())?;
    let g = jw_generator(op, conv)?.to_matrix(conv.total_qubits())?;
    Ok(dense::expm(&g.mapv(|z| z * theta)))
}

/// `exp(θG)|ψ⟩` by a Taylor series in the sparse Pauli-term action of `G`,
/// for registers too large for [`matrix_exponential_oracle`].
pub fn expm_action_oracle(
    op: &ExcitationOperator,
    theta: f64,
    conv: &JwConvention,
    state: &StateVector,
) -> Result<StateVector> {
    if conv.total_qubits() != state.n_qubits {
        return Err(Error::QubitCountMismatch(state.n_qubits, conv.total_qubits()));
    }
    let g = jw_generator(op, conv)?;
    let dim = state.amps.len();
    // Collect G column by column from the individual Pauli actions.
    let mut entries: Vec<(usize, usize, Complex64)> = Vec::new();
    let mut col = BTreeMap::new();
    for b in 0..dim {
        col.clear();
        for t in g.terms() {
            let (amp, b2) = t.apply_to_basis(b as u64);
            *col.entry(b2 as usize).or_insert(ZERO) += amp;
        }
        entries.extend(
            col.iter()
                .filter(|(_, v)| v.norm() > 1e-15)
                .map(|(&r, &v)| (r, b, v * theta)),
        );
    }
    let mut col_norm = vec![0.0; dim];
    for &(_, c, v) in &entries {
        col_norm[c] += v.norm();
    }
    let norm = col_norm.iter().cloned().fold(0.0, f64::max);
    let steps = (norm / 0.5).ceil().max(1.0) as usize;
    let scale = 1.0 / steps as f64;
    let mut v = state.amps.clone();
    for _ in 0..steps {
        let mut sum = v.clone();
        let mut term = v.clone();
        for k in 1..60 {
            let mut next = vec![ZERO; dim];
            for &(r, c, x) in &entries {
                next[r] += x * term[c];
            }
            let f = scale / k as f64;
            next.iter_mut().for_each(|z| *z *= f);
            let size = next.iter().map(|z| z.norm()).fold(0.0, f64::max);
            sum.iter_mut().zip(&next).for_each(|(s, t)| *s += t);
            term = next;
            if size < 1e-18 {
                break;
            }
        }
        v = sum;
    }
    Ok(StateVector {
        n_qubits: state.n_qubits,
        amps: v,
    })
}

/// Applies a dense matrix to a state.
pub fn apply_matrix(m: &CMatrix, s: &StateVector) -> StateVector {
    let v = ndarray::Array1::from(s.amps.clone());
    StateVector {
        n_qubits: s.n_qubits,
        amps: m.dot(&v).to_vec(),
    }
}
