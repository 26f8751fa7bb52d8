//! Gate-count estimates for traditional and decomposed UCC factors.
//!
//! Two kinds of count appear here. Synthesized counts come from compiling a
//! circuit and counting its gates. Worst-case counts assume every run's
//! cascade spans the whole fermionic register, which is how the closed forms
//! `2^{2N}(M-1)` and `80M + 208` are derived.

use std::ops::RangeInclusive;

use crate::circuit::{count_gates, GateCounts};
use crate::controlled::{mcrz_cnot_cost, mcrz_single_qubit_cost};
use crate::error::{Error, Result};
use crate::fermion::{ExcitationOperator, JwConvention, MAX_RANK};
use crate::schemes::{compile, DecompositionPlan, Scheme};
use crate::synth::synth_ucc_factor;

/// Largest `M` searched by [`crossover`].
pub const CROSSOVER_SEARCH_LIMIT: usize = 4096;

fn check_rank(rank: usize) -> Result<()> {
    if rank == 0 || rank > MAX_RANK {
        return Err(Error::InvalidRank { rank, max: MAX_RANK });
    }
    Ok(())
}

/// Closed-form counts of an uncontrolled rank-`N` factor on `M` orbitals.
pub fn traditional_counts(rank: usize, orbitals: usize) -> Result<GateCounts> {
    check_rank(rank)?;
    if orbitals < 2 * rank {
        return Err(Error::TooFewOrbitals {
            have: orbitals,
            rank,
        });
    }
    Ok(traditional_formula(rank, orbitals))
}

fn traditional_formula(rank: usize, orbitals: usize) -> GateCounts {
    let runs = 1usize << (2 * rank - 1);
    GateCounts {
        cnot: 2 * runs * (orbitals.max(1) - 1),
        single_qubit_rotation: runs,
        single_qubit_clifford: 4 * rank * runs,
        multi_controlled_rotation: 0,
    }
}

/// Rank-`N` excitation whose strings all span orbitals `0..M`: occupied
/// `0..N`, virtual `N..2N-1` and `M-1`.
pub fn worst_case_excitation(rank: usize, orbitals: usize) -> Result<ExcitationOperator> {
    check_rank(rank)?;
    if orbitals < 2 * rank {
        return Err(Error::TooFewOrbitals {
            have: orbitals,
            rank,
        });
    }
    let occ = (0..rank).collect();
    let virt = (rank..2 * rank - 1).chain([orbitals - 1]).collect();
    ExcitationOperator::new(occ, virt)
}

/// Counts of the synthesized worst-case factor.
pub fn synthesized_traditional_counts(rank: usize, orbitals: usize) -> Result<GateCounts> {
    let op = worst_case_excitation(rank, orbitals)?;
    Ok(count_gates(&synth_ucc_factor(&op, 1.0, &JwConvention::identity(orbitals))?))
}

/// `(rank, controls)` of each step.
pub fn plan_shape(plan: &DecompositionPlan) -> Vec<(usize, usize)> {
    plan.steps()
        .iter()
        .map(|s| (s.op.rank(), s.controls.len()))
        .collect()
}

/// Worst-case counts for a plan whose steps have the given shape, with the
/// fermionic register `width` qubits wide.
///
/// Every uncontrolled rank-`r` step is charged `2^{2r}(W-1)` CNOTs. A
/// controlled step adds `2^{2r}` times the lowered rotation's CNOT cost.
/// Copy CNOTs are not charged.
pub fn worst_case_counts(shape: &[(usize, usize)], width: usize) -> GateCounts {
    let mut n = GateCounts::default();
    for &(r, k) in shape {
        let runs = 1usize << (2 * r - 1);
        n.cnot += 2 * runs * (width - 1);
        if k > 0 {
            n.cnot += 2 * runs * mcrz_cnot_cost(k);
        }
        n.single_qubit_rotation += runs * mcrz_single_qubit_cost(k);
        n.single_qubit_clifford += runs * 4 * r;
    }
    n
}

/// Worst-case and synthesized counts for one scheme at `M` orbitals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecomposedCounts {
    pub worst_case: GateCounts,
    pub synthesized: GateCounts,
}

/// Plan with occupied `0..n`, virtual `n..2n`, and any extra orbitals as
/// spectators below the η pair.
pub fn canonical_plan(scheme: Scheme, orbitals: usize) -> Result<DecompositionPlan> {
    let n = scheme.rank();
    check_rank(n)?;
    if orbitals < 2 * n {
        return Err(Error::TooFewOrbitals { have: orbitals, rank: n });
    }
    let op = ExcitationOperator::new((0..n).collect(), (n..2 * n).collect())?;
    DecompositionPlan::new(scheme, &op, orbitals)
}

pub fn decomposed_counts(scheme: Scheme, orbitals: usize) -> Result<DecomposedCounts> {
    let plan = canonical_plan(scheme, orbitals)?;
    let compiled = compile(&plan, 1.0, &JwConvention::identity(plan.total_qubits()))?;
    Ok(DecomposedCounts {
        worst_case: worst_case_counts(&plan_shape(&plan), plan.fermionic_width()),
        synthesized: compiled.counts(),
    })
}

/// Worst-case decomposed CNOTs as a function of `M`, valid for any `M ≥ 1`.
pub fn decomposed_cnot_formula(scheme: Scheme, orbitals: usize) -> Result<usize> {
    let shape = plan_shape(&canonical_plan(scheme, 2 * scheme.rank())?);
    let extra = if scheme == Scheme::NaiveTwoDoubles { 0 } else { 2 };
    Ok(worst_case_counts(&shape, orbitals + extra).cnot)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Crossover {
    Always,
    At(usize),
    Never,
}

/// Smallest `M` at which the worst-case decomposed CNOT count is strictly
/// below the traditional one.
pub fn crossover(scheme: Scheme) -> Result<Crossover> {
    let rank = scheme.rank();
    for m in 1..=CROSSOVER_SEARCH_LIMIT {
        if decomposed_cnot_formula(scheme, m)? < traditional_formula(rank, m).cnot {
            return Ok(if m == 1 { Crossover::Always } else { Crossover::At(m) });
        }
    }
    Ok(Crossover::Never)
}

/// Crossover for the default scheme of a rank; ranks 1 and 2 have nothing
/// to decompose into.
pub fn crossover_for_rank(rank: usize) -> Result<Crossover> {
    check_rank(rank)?;
    match rank {
        1 => Ok(Crossover::Never),
        2 => crossover(Scheme::Split(1, 1)),
        _ => crossover(Scheme::for_rank(rank).expect("ranks 3-6 have schemes")),
    }
}

pub const SWEEP_HEADER: &str = "rank,M,scheme,cnot_traditional,cnot_decomposed,cnot_synthesized,\
rot_traditional,rot_decomposed,clifford_traditional,clifford_decomposed";

/// Tabulated schemes of the given rank.
pub fn schemes_for_rank(rank: usize) -> Vec<Scheme> {
    Scheme::TABULATED
        .into_iter()
        .filter(|s| s.rank() == rank)
        .collect()
}

/// One CSV row per (rank, tabulated scheme, M) with `M ≥ 2·rank`. The
/// `decomposed` columns are worst-case counts; `cnot_synthesized` is the
/// compiled circuit's CNOT count.
pub fn emit_sweep_csv(ranks: &[usize], orbitals: RangeInclusive<usize>) -> Result<String> {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for &rank in ranks {
        check_rank(rank)?;
        for scheme in schemes_for_rank(rank) {
            for m in orbitals.clone().filter(|&m| m >= 2 * rank) {
                let t = traditional_formula(rank, m);
                let d = decomposed_counts(scheme, m)?;
                out.push_str(&format!(
                    "{rank},{m},{scheme},{},{},{},{},{},{},{}\n",
                    t.cnot,
                    d.worst_case.cnot,
                    d.synthesized.cnot,
                    t.single_qubit_rotation,
                    d.worst_case.single_qubit_rotation,
                    t.single_qubit_clifford,
                    d.worst_case.single_qubit_clifford
                ));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn traditional_values() {
        let q = traditional_counts(4, 10).unwrap();
        assert_eq!((q.single_qubit_rotation, q.cnot, q.single_qubit_clifford), (128, 2304, 2048));
        assert_eq!(traditional_counts(2, 6).unwrap().cnot, 80);
        let s = traditional_counts(1, 2).unwrap();
        assert_eq!((s.single_qubit_rotation, s.cnot, s.single_qubit_clifford), (2, 4, 8));
        assert!(traditional_counts(3, 5).is_err());
        assert!(traditional_counts(0, 5).is_err());
    }

    #[test]
    fn quadruple_worst_case() {
        for m in [8, 10, 33] {
            assert_eq!(decomposed_counts(Scheme::Quadruple, m).unwrap().worst_case.cnot, 80 * m + 208);
        }
        assert_eq!(crossover(Scheme::Quadruple).unwrap(), Crossover::At(3));
        assert_eq!(crossover_for_rank(2).unwrap(), Crossover::Never);
    }

    #[test]
    fn empty_sweep_is_header_only() {
        #[allow(clippy::reversed_empty_ranges)]
        let csv = emit_sweep_csv(&[4], 10..=9).unwrap();
        assert_eq!(csv, format!("{SWEEP_HEADER}\n"));
    }
}
