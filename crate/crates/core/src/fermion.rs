//! Fermionic excitation operators and their Jordan-Wigner images.
//!
//! Orbital `p` is mapped to qubit `conv.qubit(p)`. The annihilation operator
//! becomes `½(X + iY)` on that qubit times `Z` on every qubit with a strictly
//! larger index; creation uses `½(X − iY)`. Qubit state `|1⟩` means occupied.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{PauliAxis, PauliString, PauliSum};

/// Highest excitation rank handled anywhere in the crate.
pub const MAX_RANK: usize = 6;

/// `A = a†_{v1} … a†_{vn} a_{on} … a_{o1}` for occupied `(o1..on)` and
/// virtual `(v1..vn)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExcitationOperator {
    occupied: Vec<usize>,
    virtual_: Vec<usize>,
}

impl ExcitationOperator {
    pub fn new(occupied: Vec<usize>, virtual_: Vec<usize>) -> Result<Self> {
        if occupied.len() != virtual_.len() {
            return Err(Error::RankMismatch {
                occupied: occupied.len(),
                virtual_: virtual_.len(),
            });
        }
        let rank = occupied.len();
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::InvalidRank {
                rank,
                max: MAX_RANK,
            });
        }
        for list in [&occupied, &virtual_] {
            for (k, p) in list.iter().enumerate() {
                if list[..k].contains(p) {
                    return Err(Error::DuplicateOrbital(*p));
                }
            }
        }
        if let Some(p) = occupied.iter().find(|p| virtual_.contains(p)) {
            return Err(Error::OverlappingOrbitals(*p));
        }
        Ok(ExcitationOperator { occupied, virtual_ })
    }

    pub fn occupied(&self) -> &[usize] {
        &self.occupied
    }

    pub fn virtual_orbitals(&self) -> &[usize] {
        &self.virtual_
    }

    pub fn rank(&self) -> usize {
        self.occupied.len()
    }

    /// All orbitals touched, occupied first.
    pub fn orbitals(&self) -> impl Iterator<Item = usize> + '_ {
        self.occupied.iter().chain(self.virtual_.iter()).copied()
    }

    pub fn max_orbital(&self) -> usize {
        self.orbitals().max().unwrap_or(0)
    }

    /// The de-excitation read as an excitation: occupied and virtual swapped.
    pub fn reversed(&self) -> ExcitationOperator {
        ExcitationOperator {
            occupied: self.virtual_.clone(),
            virtual_: self.occupied.clone(),
        }
    }

    /// `A|det⟩` as `(sign, det')`, or `None` when `A` annihilates the determinant.
    ///
    /// Panics if an orbital is outside `conv` or maps to qubit 64 or above.
    pub fn apply_to_determinant(&self, det: u64, conv: &JwConvention) -> Option<(f64, u64)> {
        let mut sign = 1.0;
        let mut state = det;
        for &o in &self.occupied {
            state = ladder_on_bits(state, conv.qubit_unchecked(o), false, &mut sign)?;
        }
        for &v in self.virtual_.iter().rev() {
            state = ladder_on_bits(state, conv.qubit_unchecked(v), true, &mut sign)?;
        }
        Some((sign, state))
    }

    /// `A†|det⟩` as `(sign, det')`, or `None`.
    pub fn apply_adjoint_to_determinant(
        &self,
        det: u64,
        conv: &JwConvention,
    ) -> Option<(f64, u64)> {
        self.reversed().apply_to_determinant(det, conv)
    }

    pub fn validate_against(&self, conv: &JwConvention) -> Result<()> {
        for p in self.orbitals() {
            conv.qubit(p)?;
        }
        Ok(())
    }
}

/// Applies one ladder operator to a determinant bit pattern. The sign follows
/// the Z-chain on qubits above `qubit`.
fn ladder_on_bits(state: u64, qubit: usize, create: bool, sign: &mut f64) -> Option<u64> {
    let bit = 1u64 << qubit;
    let occupied = state & bit != 0;
    if occupied == create {
        return None;
    }
    if state.checked_shr(qubit as u32 + 1).unwrap_or(0).count_ones() % 2 == 1 {
        *sign = -*sign;
    }
    Some(state ^ bit)
}

impl fmt::Display for ExcitationOperator {
    /// `A[i1,i2->a1,a2]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "A[{}->{}]", join(&self.occupied), join(&self.virtual_))
    }
}

impl FromStr for ExcitationOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected `A[i,..->a,..]`, got `{s}`"));
        let body = s
            .trim()
            .strip_prefix("A[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (occ, virt) = body.split_once("->").ok_or_else(bad)?;
        let parse_list = |part: &str| -> Result<Vec<usize>> {
            part.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                .collect()
        };
        ExcitationOperator::new(parse_list(occ)?, parse_list(virt)?)
    }
}

/// Orbital-to-qubit assignment for the Jordan-Wigner map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JwConvention {
    orbital_to_qubit: Vec<usize>,
}

impl JwConvention {
    pub fn identity(total_qubits: usize) -> Self {
        JwConvention {
            orbital_to_qubit: (0..total_qubits).collect(),
        }
    }

    pub fn with_mapping(orbital_to_qubit: Vec<usize>) -> Result<Self> {
        let n = orbital_to_qubit.len();
        let mut seen = vec![false; n];
        for &q in &orbital_to_qubit {
            if q >= n || seen[q] {
                return Err(Error::InvalidMapping(n));
            }
            seen[q] = true;
        }
        Ok(JwConvention { orbital_to_qubit })
    }

    pub fn total_qubits(&self) -> usize {
        self.orbital_to_qubit.len()
    }

    pub fn qubit(&self, orbital: usize) -> Result<usize> {
        self.orbital_to_qubit
            .get(orbital)
            .copied()
            .ok_or(Error::OrbitalOutOfRange {
                orbital,
                total: self.total_qubits(),
            })
    }

    /// As [`qubit`](Self::qubit), limited to qubits that fit a `u64`
    /// determinant.
    fn bit_qubit(&self, orbital: usize) -> Result<usize> {
        let q = self.qubit(orbital)?;
        if q >= 64 {
            return Err(Error::QubitOutOfRange { qubit: q, n_qubits: 64 });
        }
        Ok(q)
    }

    pub(crate) fn qubit_unchecked(&self, orbital: usize) -> usize {
        self.orbital_to_qubit[orbital]
    }

    /// `a†_{p₁} a†_{p₂} ⋯ a†_{p_k}|vac⟩` as `(sign, det)`. Kets written by
    /// listing orbitals are read this way.
    pub fn ket(&self, orbitals: &[usize]) -> Result<(f64, u64)> {
        let mut sign = 1.0;
        let mut det = 0u64;
        for &p in orbitals.iter().rev() {
            det = ladder_on_bits(det, self.bit_qubit(p)?, true, &mut sign)
                .ok_or(Error::DuplicateOrbital(p))?;
        }
        Ok((sign, det))
    }

    /// Basis-state index with the given orbitals occupied.
    pub fn determinant(&self, occupied: &[usize]) -> Result<u64> {
        let mut det = 0u64;
        for &p in occupied {
            det |= 1u64 << self.bit_qubit(p)?;
        }
        Ok(det)
    }
}

/// Jordan-Wigner image of `a_p` (`dagger = false`) or `a†_p`.
pub fn jw_ladder(orbital: usize, dagger: bool, conv: &JwConvention) -> Result<PauliSum> {
    let q = conv.qubit(orbital)?;
    let half = Complex64::new(0.5, 0.0);
    let y_coeff = if dagger {
        Complex64::new(0.0, -0.5)
    } else {
        Complex64::new(0.0, 0.5)
    };
    let chain: Vec<(usize, PauliAxis)> = (q + 1..conv.total_qubits())
        .map(|k| (k, PauliAxis::Z))
        .collect();
    let x = PauliString::new(half, std::iter::once((q, PauliAxis::X)).chain(chain.clone()));
    let y = PauliString::new(y_coeff, std::iter::once((q, PauliAxis::Y)).chain(chain));
    Ok(PauliSum::from_terms([x, y]))
}

/// Jordan-Wigner image of the excitation operator `A` itself.
pub fn jw_excitation(op: &ExcitationOperator, conv: &JwConvention) -> Result<PauliSum> {
    op.validate_against(conv)?;
    let mut acc = PauliSum::from_terms([PauliString::identity(Complex64::new(1.0, 0.0))]);
    for &v in op.virtual_orbitals() {
        acc = acc.multiply(&jw_ladder(v, true, conv)?);
    }
    for &o in op.occupied().iter().rev() {
        acc = acc.multiply(&jw_ladder(o, false, conv)?);
    }
    Ok(acc)
}

/// Jordan-Wigner image of the anti-Hermitian generator `A − A†`.
pub fn jw_generator(op: &ExcitationOperator, conv: &JwConvention) -> Result<PauliSum> {
    let a = jw_excitation(op, conv)?;
    Ok(a.sub(&a.adjoint()))
}

/// Anticommuting-index counts between all pairs of generator terms.
pub fn pairwise_commutation_report(sum: &PauliSum) -> Vec<Vec<usize>> {
    sum.pairwise_commutation_report()
}
