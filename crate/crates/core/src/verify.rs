//! Exactness checks for compiled decomposition plans.
//!
//! A compiled plan is simulated block by block. Qubits that no remaining
//! block touches are projected onto `|0⟩` and dropped, and qubits not yet
//! touched are only added when first needed. Both moves are exact, and the
//! weight removed by projection is reported as leakage.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::fermion::JwConvention;
use crate::schemes::{compile, CompiledPlan, DecompositionPlan, Scheme};
use crate::sim::{deviation, fuse_diagonal_runs, SimOp, StateVector};

/// Deviation threshold for an exact plan.
pub const EXACT_TOL: f64 = 1e-9;

/// Leakage threshold for an exact plan.
pub const LEAK_TOL: f64 = 1e-10;

fn mask_below(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Largest qubit set fused into one permutation-phase op during simulation.
const FUSE_WIDTH: usize = 6;

/// A compiled plan prepared for repeated block-by-block simulation.
#[derive(Debug, Clone)]
pub struct PreparedPlan {
    blocks: Vec<(usize, Vec<SimOp>)>,
}

impl PreparedPlan {
    /// `physical` is the width of the input states.
    pub fn new(compiled: &CompiledPlan, physical: usize) -> Self {
        let gates = compiled.circuit.gates();
        let mut uses: Vec<u64> = vec![mask_below(physical)];
        uses.extend(compiled.blocks.iter().map(|r| {
            gates[r.clone()]
                .iter()
                .flat_map(|g| g.qubits())
                .fold(0u64, |m, q| m | 1 << q)
        }));
        uses.push(mask_below(physical));
        let blocks = compiled
            .blocks
            .iter()
            .enumerate()
            .map(|(i, range)| {
                let before = uses[..=i].iter().fold(0, |m, u| m | u);
                let after = uses[i + 1..].iter().fold(0, |m, u| m | u);
                let needed = (before & after) | uses[i + 1];
                let width = 64 - needed.leading_zeros() as usize;
                (width, fuse_diagonal_runs(&gates[range.clone()], FUSE_WIDTH))
            })
            .collect();
        PreparedPlan { blocks }
    }

    /// Physical part of the output and the weight projected away.
    pub fn run(&self, input: &StateVector) -> Result<(StateVector, f64)> {
        let physical = input.n_qubits();
        let mut state = input.clone();
        let mut leaked = 0.0;
        for (width, ops) in &self.blocks {
            if state.n_qubits() > *width {
                let (s, l) = state.truncate(*width);
                state = s;
                leaked += l;
            } else if state.n_qubits() < *width {
                state = state.extend(*width)?;
            }
            state.apply_ops(ops)?;
        }
        let (s, l) = state.truncate(physical);
        Ok((s, leaked + l))
    }
}

/// Runs `compiled` on a physical-register state and returns the physical
/// part of the output along with the weight projected away.
pub fn run_compiled(compiled: &CompiledPlan, input: &StateVector) -> Result<(StateVector, f64)> {
    PreparedPlan::new(compiled, input.n_qubits()).run(input)
}

/// Reference path: full-width simulation, then projection.
pub fn run_compiled_full(compiled: &CompiledPlan, input: &StateVector) -> Result<(StateVector, f64)> {
    let mut state = input.extend(compiled.circuit.n_qubits())?;
    state.apply_circuit(&compiled.circuit)?;
    Ok(state.truncate(input.n_qubits()))
}

/// All determinants with exactly `electrons` of the `active` qubits occupied,
/// in increasing index order. Other qubits are empty.
pub fn sector_determinants(active: &[usize], electrons: usize) -> Vec<u64> {
    let mut out = Vec::new();
    for sub in 0u64..1 << active.len() {
        if sub.count_ones() as usize == electrons {
            out.push(
                active
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| sub >> k & 1 == 1)
                    .fold(0, |m, (_, q)| m | 1 << q),
            );
        }
    }
    out
}

/// Every combination of `dets` with an arbitrary occupation of `spectators`.
pub fn with_spectators(dets: &[u64], spectators: &[usize]) -> Vec<u64> {
    let mut out = Vec::with_capacity(dets.len() << spectators.len());
    for &d in dets {
        for sub in 0u64..1 << spectators.len() {
            out.push(
                spectators
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| sub >> k & 1 == 1)
                    .fold(d, |m, (_, q)| m | 1 << q),
            );
        }
    }
    out
}

/// Random normalized superposition over `dets`.
pub fn random_superposition<R: Rng>(n_qubits: usize, dets: &[u64], rng: &mut R) -> Result<StateVector> {
    let terms: Vec<(u64, Complex64)> = dets
        .iter()
        .map(|&d| (d, Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
        .collect();
    let mut s = StateVector::from_determinants(n_qubits, &terms)?;
    s.normalize();
    Ok(s)
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub scheme: Scheme,
    pub n_qubits: usize,
    pub cases: usize,
    pub max_deviation: f64,
    pub max_leakage: f64,
    pub seed: u64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.max_deviation < EXACT_TOL && self.max_leakage < LEAK_TOL
    }
}

/// Compares the compiled plan with the exact target factor for `thetas`
/// random angles in `[-π, π]`. Inputs are random superpositions of every
/// determinant with exactly `n` electrons in the `2n` active orbitals and any
/// occupation of the remaining physical orbitals.
pub fn verify_plan(plan: &DecompositionPlan, states: usize, thetas: usize, seed: u64) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = plan.physical_orbitals();
    let conv_phys = JwConvention::identity(m);
    let conv_full = JwConvention::identity(plan.total_qubits());
    let target = plan.target();
    let active: Vec<usize> = target.orbitals().collect();
    let spectators: Vec<usize> = (0..m).filter(|p| !active.contains(p)).collect();
    let dets = with_spectators(&sector_determinants(&active, target.rank()), &spectators);
    let inputs: Vec<StateVector> = (0..states)
        .map(|_| random_superposition(m, &dets, &mut rng))
        .collect::<Result<_>>()?;
    let angles: Vec<f64> = (0..thetas)
        .map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
        .collect();

    let mut max_dev: f64 = 0.0;
    let mut max_leak: f64 = 0.0;
    for &theta in &angles {
        let compiled = compile(plan, theta, &conv_full)?;
        let prepared = PreparedPlan::new(&compiled, m);
        let results: Vec<Result<(f64, f64)>> = inputs
            .par_iter()
            .map(|input| {
                let (out, leak) = prepared.run(input)?;
                let mut exact = input.clone();
                exact.apply_ucc_factor_exact(target, theta, &conv_phys)?;
                Ok((deviation(&out, &exact), leak))
            })
            .collect();
        for r in results {
            let (d, l) = r?;
            max_dev = max_dev.max(d);
            max_leak = max_leak.max(l);
        }
    }
    Ok(VerifyReport {
        scheme: plan.scheme(),
        n_qubits: plan.total_qubits(),
        cases: states * thetas,
        max_deviation: max_dev,
        max_leakage: max_leak,
        seed,
    })
}

/// Placement of a rank-`n` target's orbitals on `2n` positions.
#[derive(Debug, Clone, PartialEq)]
pub struct Ordering {
    pub label: String,
    pub occupied: Vec<usize>,
    pub virtual_: Vec<usize>,
}

/// Block, virtual-first, and interleaved placements plus `random` seeded
/// permutations.
pub fn orderings(rank: usize, random: usize, seed: u64) -> Vec<Ordering> {
    let n = rank;
    let mk = |label: &str, occ: Vec<usize>, virt: Vec<usize>| Ordering {
        label: label.to_string(),
        occupied: occ,
        virtual_: virt,
    };
    let mut out = vec![
        mk("block", (0..n).collect(), (n..2 * n).collect()),
        mk("virtual-first", (n..2 * n).collect(), (0..n).collect()),
        mk("interleaved", (0..n).map(|i| 2 * i).collect(), (0..n).map(|i| 2 * i + 1).collect()),
        mk(
            "interleaved-virtual-first",
            (0..n).map(|i| 2 * i + 1).collect(),
            (0..n).map(|i| 2 * i).collect(),
        ),
        mk("reversed-block", (0..n).rev().collect(), (n..2 * n).rev().collect()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..random {
        let mut perm: Vec<usize> = (0..2 * n).collect();
        for i in (1..perm.len()).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        out.push(mk(&format!("random-{k}"), perm[..n].to_vec(), perm[n..].to_vec()));
    }
    out
}

/// Runs [`verify_plan`] for each ordering of the scheme's target.
pub fn ordering_sweep(
    scheme: Scheme,
    random: usize,
    states: usize,
    thetas: usize,
    seed: u64,
) -> Result<Vec<(Ordering, VerifyReport)>> {
    let n = scheme.rank();
    orderings(n, random, seed)
        .into_iter()
        .map(|o| {
            let plan = DecompositionPlan::with_ancillas(scheme, &o.occupied, &o.virtual_, [2 * n, 2 * n + 1])?;
            let report = verify_plan(&plan, states, thetas, seed)?;
            Ok((o, report))
        })
        .collect()
}

/// Amplitude of the ket `|p₁p₂…⟩` (creation operators in listed order).
pub fn ket_amplitude(state: &StateVector, orbitals: &[usize]) -> Result<Complex64> {
    let (sign, det) = JwConvention::identity(state.n_qubits()).ket(orbitals)?;
    Ok(state.amplitude(det) * sign)
}

/// State `Σ ξ_k |ket_k⟩` with kets given by orbital lists.
pub fn ket_state(n_qubits: usize, terms: &[(&[usize], Complex64)]) -> Result<StateVector> {
    let conv = JwConvention::identity(n_qubits);
    let mut dets = Vec::with_capacity(terms.len());
    for (orbitals, xi) in terms {
        let (sign, det) = conv.ket(orbitals)?;
        dets.push((det, *xi * sign));
    }
    StateVector::from_determinants(n_qubits, &dets)
}

/// Orbitals used by the failure exhibits: `a b c d = 0 1 2 3`,
/// `w x y z = 4 5 6 7`, `η₁ η₂ = 8 9`.
pub mod exhibit {
    pub const A: usize = 0;
    pub const B: usize = 1;
    pub const C: usize = 2;
    pub const D: usize = 3;
    pub const W: usize = 4;
    pub const X: usize = 5;
    pub const Y: usize = 6;
    pub const Z: usize = 7;
    pub const ETA1: usize = 8;
    pub const ETA2: usize = 9;
    pub const OCC: [usize; 4] = [A, B, C, D];
    pub const VIRT: [usize; 4] = [W, X, Y, Z];
}

/// Output of the two-doubles plan on `ξ₁|abcd⟩ + ξ₂|wxyz⟩`.
#[derive(Debug, Clone)]
pub struct NaiveOutcome {
    pub output: StateVector,
    pub exact: StateVector,
    pub abcd: Complex64,
    pub wxyz: Complex64,
    pub wxcd: Complex64,
    pub abyz: Complex64,
}

pub fn naive_exhibit(theta: f64, xi1: Complex64, xi2: Complex64) -> Result<NaiveOutcome> {
    use exhibit::*;
    let plan = crate::schemes::plan_naive_two_doubles(&OCC, &VIRT)?;
    let input = ket_state(8, &[(&OCC, xi1), (&VIRT, xi2)])?;
    let compiled = compile(&plan, theta, &JwConvention::identity(8))?;
    let (output, _) = run_compiled(&compiled, &input)?;
    let mut exact = input.clone();
    exact.apply_ucc_factor_exact(plan.target(), theta, &JwConvention::identity(8))?;
    Ok(NaiveOutcome {
        abcd: ket_amplitude(&output, &OCC)?,
        wxyz: ket_amplitude(&output, &VIRT)?,
        wxcd: ket_amplitude(&output, &[W, X, C, D])?,
        abyz: ket_amplitude(&output, &[A, B, Y, Z])?,
        output,
        exact,
    })
}

/// Full ten-qubit output of the uncontrolled plan on `ξ|acxz⟩`, ancillas kept.
#[derive(Debug, Clone)]
pub struct UncontrolledOutcome {
    pub output: StateVector,
    pub acxz: Complex64,
    pub ac_eta: Complex64,
    pub leaked: f64,
}

pub fn uncontrolled_exhibit(theta: f64, xi: Complex64) -> Result<UncontrolledOutcome> {
    use exhibit::*;
    let plan = crate::schemes::plan_uncontrolled(&OCC, &VIRT, [ETA1, ETA2])?;
    let n = plan.total_qubits();
    let input = ket_state(n, &[(&[A, C, X, Z], xi)])?;
    let compiled = compile(&plan, theta, &JwConvention::identity(n))?;
    let mut output = input;
    output.apply_circuit(&compiled.circuit)?;
    let (_, leaked) = output.sector_project(&plan.ancillas())?;
    Ok(UncontrolledOutcome {
        acxz: ket_amplitude(&output, &[A, C, X, Z])?,
        ac_eta: ket_amplitude(&output, &[A, C, ETA1, ETA2])?,
        leaked,
        output,
    })
}
