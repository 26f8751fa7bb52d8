//! Pauli strings with exact phase tracking.
//!
//! A [`PauliString`] stores only its non-identity axes, keyed by qubit index,
//! together with a complex coefficient. Products are computed axis by axis so
//! the phase picked up from `XY = iZ` and friends is never lost.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::dense::{self, CMatrix};
use crate::error::{Error, Result};

/// Coefficients smaller than this are dropped when a [`PauliSum`] is canonicalized.
pub const ZERO_TOL: f64 = 1e-14;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PauliAxis {
    I,
    X,
    Y,
    Z,
}

impl PauliAxis {
    /// Single-qubit product `self · other` as `(phase, axis)`.
    pub fn product(self, other: PauliAxis) -> (Complex64, PauliAxis) {
        use PauliAxis::*;
        match (self, other) {
            (I, p) | (p, I) => (ONE, p),
            (X, X) | (Y, Y) | (Z, Z) => (ONE, I),
            (X, Y) => (I_PHASE, Z),
            (Y, X) => (-I_PHASE, Z),
            (Y, Z) => (I_PHASE, X),
            (Z, Y) => (-I_PHASE, X),
            (Z, X) => (I_PHASE, Y),
            (X, Z) => (-I_PHASE, Y),
        }
    }

    /// Two single-qubit Paulis anticommute iff both are non-identity and differ.
    pub fn anticommutes(self, other: PauliAxis) -> bool {
        self != PauliAxis::I && other != PauliAxis::I && self != other
    }

    pub fn matrix(self) -> CMatrix {
        match self {
            PauliAxis::I => dense::identity(2),
            PauliAxis::X => dense::pauli_x(),
            PauliAxis::Y => dense::pauli_y(),
            PauliAxis::Z => dense::pauli_z(),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            PauliAxis::I => 'I',
            PauliAxis::X => 'X',
            PauliAxis::Y => 'Y',
            PauliAxis::Z => 'Z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'I' => Some(PauliAxis::I),
            'X' => Some(PauliAxis::X),
            'Y' => Some(PauliAxis::Y),
            'Z' => Some(PauliAxis::Z),
            _ => None,
        }
    }
}

// `I` the axis shadows `I` the imaginary unit inside `mul`.
const I_PHASE: Complex64 = I;

#[derive(Debug, Clone, PartialEq)]
pub struct PauliString {
    axes: BTreeMap<usize, PauliAxis>,
    coeff: Complex64,
}

impl PauliString {
    pub fn identity(coeff: Complex64) -> Self {
        PauliString {
            axes: BTreeMap::new(),
            coeff,
        }
    }

    /// Builds a string from `(qubit, axis)` pairs. Identity axes are skipped;
    /// a qubit listed twice is multiplied in order.
    pub fn new<It>(coeff: Complex64, axes: It) -> Self
    where
        It: IntoIterator<Item = (usize, PauliAxis)>,
    {
        let mut out = PauliString::identity(coeff);
        for (q, a) in axes {
            out = out.multiply(&PauliString::single(q, a));
        }
        out
    }

    pub fn single(qubit: usize, axis: PauliAxis) -> Self {
        let mut axes = BTreeMap::new();
        if axis != PauliAxis::I {
            axes.insert(qubit, axis);
        }
        PauliString { axes, coeff: ONE }
    }

    /// Parses a compact label such as `"XXYX"`, character `k` acting on qubit `k`.
    pub fn from_label(label: &str) -> Result<Self> {
        let mut axes = Vec::with_capacity(label.len());
        for (q, c) in label.chars().enumerate() {
            let a = PauliAxis::from_symbol(c)
                .ok_or_else(|| Error::Parse(format!("bad Pauli symbol `{c}`")))?;
            axes.push((q, a));
        }
        Ok(PauliString::new(ONE, axes))
    }

    pub fn coeff(&self) -> Complex64 {
        self.coeff
    }

    pub fn with_coeff(&self, coeff: Complex64) -> Self {
        PauliString {
            axes: self.axes.clone(),
            coeff,
        }
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        self.with_coeff(self.coeff * factor)
    }

    pub fn axis(&self, qubit: usize) -> PauliAxis {
        self.axes.get(&qubit).copied().unwrap_or(PauliAxis::I)
    }

    /// Non-identity axes in ascending qubit order.
    pub fn axes(&self) -> impl Iterator<Item = (usize, PauliAxis)> + '_ {
        self.axes.iter().map(|(&q, &a)| (q, a))
    }

    pub fn support(&self) -> Vec<usize> {
        self.axes.keys().copied().collect()
    }

    pub fn weight(&self) -> usize {
        self.axes.len()
    }

    pub fn is_identity(&self) -> bool {
        self.axes.is_empty()
    }

    pub fn max_qubit(&self) -> Option<usize> {
        self.axes.keys().next_back().copied()
    }

    /// Axes as a sortable key, ignoring the coefficient.
    pub fn key(&self) -> Vec<(usize, PauliAxis)> {
        self.axes().collect()
    }

    pub fn count(&self, axis: PauliAxis) -> usize {
        self.axes.values().filter(|&&a| a == axis).count()
    }

    pub fn is_hermitian(&self) -> bool {
        self.coeff.im.abs() <= ZERO_TOL * self.coeff.norm().max(1.0)
    }

    pub fn is_anti_hermitian(&self) -> bool {
        self.coeff.re.abs() <= ZERO_TOL * self.coeff.norm().max(1.0)
    }

    pub fn adjoint(&self) -> Self {
        self.with_coeff(self.coeff.conj())
    }

    /// Operator product `self · other`, phase included.
    pub fn multiply(&self, other: &PauliString) -> PauliString {
        let mut coeff = self.coeff * other.coeff;
        let mut axes = self.axes.clone();
        for (&q, &b) in &other.axes {
            let a = axes.get(&q).copied().unwrap_or(PauliAxis::I);
            let (phase, c) = a.product(b);
            coeff *= phase;
            if c == PauliAxis::I {
                axes.remove(&q);
            } else {
                axes.insert(q, c);
            }
        }
        PauliString { axes, coeff }
    }

    /// Number of qubit positions where both axes are non-identity and differ.
    pub fn anticommuting_index_count(&self, other: &PauliString) -> usize {
        self.axes
            .iter()
            .filter(|(q, &a)| a.anticommutes(other.axis(**q)))
            .count()
    }

    pub fn commutes(&self, other: &PauliString) -> bool {
        self.anticommuting_index_count(other).is_multiple_of(2)
    }

    /// Dense matrix over `n_qubits`, qubit 0 as the least-significant bit.
    pub fn to_matrix(&self, n_qubits: usize) -> Result<CMatrix> {
        if let Some(q) = self.max_qubit() {
            if q >= n_qubits {
                return Err(Error::QubitOutOfRange {
                    qubit: q,
                    n_qubits,
                });
            }
        }
        dense::check_cap(n_qubits)?;
        let factors: Vec<CMatrix> = (0..n_qubits).map(|q| self.axis(q).matrix()).collect();
        Ok(dense::kron_qubits(&factors).mapv(|z| z * self.coeff))
    }

    /// Bit masks `(flip, phase)` describing the string's action on basis
    /// states: X and Y flip their bit, Y and Z contribute a sign on `|1⟩`.
    pub fn masks(&self) -> (u64, u64, usize) {
        let mut flip = 0u64;
        let mut sign = 0u64;
        let mut n_y = 0usize;
        for (&q, &a) in &self.axes {
            let bit = 1u64 << q;
            match a {
                PauliAxis::X => flip |= bit,
                PauliAxis::Y => {
                    flip |= bit;
                    sign |= bit;
                    n_y += 1;
                }
                PauliAxis::Z => sign |= bit,
                PauliAxis::I => {}
            }
        }
        (flip, sign, n_y)
    }

    /// Action on a computational basis state: `P|b⟩ = amp · |b'⟩`.
    ///
    /// Uses `Y = i·X·Z`, so each Y contributes `i` and the Z part a sign.
    pub fn apply_to_basis(&self, basis: u64) -> (Complex64, u64) {
        let (flip, sign, n_y) = self.masks();
        let mut amp = self.coeff * I.powu(n_y as u32);
        if (basis & sign).count_ones() % 2 == 1 {
            amp = -amp;
        }
        (amp, basis ^ flip)
    }
}

impl fmt::Display for PauliString {
    /// Renders as `coeff * X0 Y3 Z5`; the identity string renders as `coeff * I`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} *", format_complex(self.coeff))?;
        if self.axes.is_empty() {
            return write!(f, " I");
        }
        for (q, a) in self.axes() {
            write!(f, " {}{}", a.symbol(), q)?;
        }
        Ok(())
    }
}

pub(crate) fn format_complex(z: Complex64) -> String {
    let re = if z.re == 0.0 { 0.0 } else { z.re };
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    if im == 0.0 {
        format!("{re}")
    } else if re == 0.0 {
        format!("{im}i")
    } else if im < 0.0 {
        format!("({re}-{}i)", -im)
    } else {
        format!("({re}+{im}i)")
    }
}

/// Sum of Pauli strings with like terms merged.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PauliSum {
    terms: Vec<PauliString>,
}

impl PauliSum {
    pub fn zero() -> Self {
        PauliSum::default()
    }

    pub fn from_terms<It: IntoIterator<Item = PauliString>>(terms: It) -> Self {
        let mut merged: BTreeMap<Vec<(usize, PauliAxis)>, PauliString> = BTreeMap::new();
        for t in terms {
            merged
                .entry(t.key())
                .and_modify(|e| e.coeff += t.coeff)
                .or_insert(t);
        }
        PauliSum {
            terms: merged
                .into_values()
                .filter(|t| t.coeff.norm() > ZERO_TOL)
                .collect(),
        }
    }

    /// Terms in canonical (axis-key) order.
    pub fn terms(&self) -> &[PauliString] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &PauliSum) -> PauliSum {
        PauliSum::from_terms(self.terms.iter().chain(other.terms.iter()).cloned())
    }

    pub fn sub(&self, other: &PauliSum) -> PauliSum {
        self.add(&other.scaled(-ONE))
    }

    pub fn scaled(&self, factor: Complex64) -> PauliSum {
        PauliSum::from_terms(self.terms.iter().map(|t| t.scaled(factor)))
    }

    pub fn multiply(&self, other: &PauliSum) -> PauliSum {
        let mut out = Vec::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                out.push(a.multiply(b));
            }
        }
        PauliSum::from_terms(out)
    }

    pub fn adjoint(&self) -> PauliSum {
        PauliSum::from_terms(self.terms.iter().map(PauliString::adjoint))
    }

    pub fn is_anti_hermitian(&self) -> bool {
        self.add(&self.adjoint()).is_empty()
    }

    pub fn to_matrix(&self, n_qubits: usize) -> Result<CMatrix> {
        dense::check_cap(n_qubits)?;
        let dim = 1usize << n_qubits;
        let mut out = CMatrix::zeros((dim, dim));
        for t in &self.terms {
            out += &t.to_matrix(n_qubits)?;
        }
        Ok(out)
    }

    /// Symmetric table of anticommuting-index counts between every pair of terms.
    pub fn pairwise_commutation_report(&self) -> Vec<Vec<usize>> {
        self.terms
            .iter()
            .map(|a| {
                self.terms
                    .iter()
                    .map(|b| a.anticommuting_index_count(b))
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::max_abs_diff;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn x_times_y_is_i_z() {
        let p = PauliString::single(0, PauliAxis::X).multiply(&PauliString::single(0, PauliAxis::Y));
        assert_eq!(p.axis(0), PauliAxis::Z);
        assert_eq!(p.coeff(), c(0.0, 1.0));
    }

    #[test]
    fn square_is_coefficient_squared_identity() {
        let p = PauliString::from_label("XZYI").unwrap().scaled(c(0.3, -0.2));
        let sq = p.multiply(&p);
        assert!(sq.is_identity());
        assert!((sq.coeff() - p.coeff() * p.coeff()).norm() < 1e-15);
    }

    #[test]
    fn doubles_strings_match_dense_product() {
        let a = PauliString::from_label("XXYX").unwrap();
        let b = PauliString::from_label("YYXY").unwrap();
        let prod = a.multiply(&b);
        let dense = a.to_matrix(4).unwrap().dot(&b.to_matrix(4).unwrap());
        assert!(max_abs_diff(&prod.to_matrix(4).unwrap(), &dense) < 1e-15);
    }

    #[test]
    fn table_one_spot_values() {
        let xxyx = PauliString::from_label("XXYX").unwrap();
        let yyxy = PauliString::from_label("YYXY").unwrap();
        let yxyy = PauliString::from_label("YXYY").unwrap();
        assert_eq!(xxyx.anticommuting_index_count(&yyxy), 4);
        assert_eq!(xxyx.anticommuting_index_count(&xxyx), 0);
        assert_eq!(xxyx.anticommuting_index_count(&yxyy), 2);
        assert!(xxyx.commutes(&yyxy));
    }

    #[test]
    fn x_and_y_on_one_qubit_anticommute() {
        let x = PauliString::single(0, PauliAxis::X);
        let y = PauliString::single(0, PauliAxis::Y);
        assert!(!x.commutes(&y));
        assert!(x.commutes(&PauliString::identity(ONE)));
    }

    #[test]
    fn small_matrices() {
        let z = PauliString::single(0, PauliAxis::Z).to_matrix(1).unwrap();
        assert_eq!(z[[0, 0]], ONE);
        assert_eq!(z[[1, 1]], -ONE);
        let id = PauliString::identity(ONE).to_matrix(3).unwrap();
        assert!(max_abs_diff(&id, &dense::identity(8)) < 1e-15);

        let xy = PauliString::from_label("XY").unwrap().to_matrix(2).unwrap();
        let x0 = PauliString::single(0, PauliAxis::X).to_matrix(2).unwrap();
        let y1 = PauliString::single(1, PauliAxis::Y).to_matrix(2).unwrap();
        assert!(max_abs_diff(&xy, &x0.dot(&y1)) < 1e-15);
    }

    #[test]
    fn to_matrix_rejects_short_register_and_cap() {
        let p = PauliString::single(3, PauliAxis::X);
        assert!(matches!(
            p.to_matrix(2),
            Err(Error::QubitOutOfRange { qubit: 3, .. })
        ));
        assert!(matches!(
            p.to_matrix(40),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn basis_action_agrees_with_matrix() {
        let p = PauliString::from_label("YZXI").unwrap().scaled(c(0.0, 0.5));
        let m = p.to_matrix(4).unwrap();
        for b in 0..16u64 {
            let (amp, out) = p.apply_to_basis(b);
            for r in 0..16usize {
                let want = m[[r, b as usize]];
                let got = if r as u64 == out { amp } else { Complex64::new(0.0, 0.0) };
                assert!((want - got).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn display_format() {
        let p = PauliString::new(
            c(0.0, 0.125),
            [(0, PauliAxis::X), (3, PauliAxis::Y), (5, PauliAxis::Z)],
        );
        assert_eq!(p.to_string(), "0.125i * X0 Y3 Z5");
        assert_eq!(PauliString::identity(c(-1.0, 0.0)).to_string(), "-1 * I");
    }

    #[test]
    fn sum_merges_and_drops_zeros() {
        let a = PauliString::from_label("XZ").unwrap();
        let s = PauliSum::from_terms([a.clone(), a.scaled(-ONE), PauliString::from_label("ZZ").unwrap()]);
        assert_eq!(s.len(), 1);
        assert_eq!(s.terms()[0].key(), vec![(0, PauliAxis::Z), (1, PauliAxis::Z)]);
    }
}
