use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("orbital {orbital} is out of range for a register of {total} orbitals")]
    OrbitalOutOfRange { orbital: usize, total: usize },

    #[error("orbital {0} appears in both the occupied and the virtual list")]
    OverlappingOrbitals(usize),

    #[error("orbital {0} is listed more than once")]
    DuplicateOrbital(usize),

    #[error("excitation rank must be between 1 and {max}, got {rank}")]
    InvalidRank { rank: usize, max: usize },

    #[error("occupied and virtual lists differ in length ({occupied} vs {virtual_})")]
    RankMismatch { occupied: usize, virtual_: usize },

    #[error("orbital mapping is not a bijection over [0, {0})")]
    InvalidMapping(usize),

    #[error("circuits act on different qubit counts ({0} vs {1})")]
    QubitCountMismatch(usize, usize),

    #[error("qubit {qubit} is out of range for a {n_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },

    #[error("gate operands must be distinct, qubit {0} repeated")]
    RepeatedOperand(usize),

    #[error("gate angle must be finite")]
    NonFiniteAngle,

    #[error("{n_qubits} qubits exceeds the dense cap of {cap}")]
    CapExceeded { n_qubits: usize, cap: usize },

    #[error("Pauli string has no non-identity axis")]
    EmptyPauliString,

    #[error("circuit contains an unlowered multi-controlled rotation")]
    UnloweredGate,

    #[error("multi-controlled rotations support 1 to 4 controls, got {0}")]
    UnsupportedControlCount(usize),

    #[error("control/ancilla assignment is inconsistent: {0}")]
    AncillaOverlap(String),

    #[error("orbital index collision: {0}")]
    IndexCollision(String),

    #[error("convention covers {have} qubits but the plan needs {need}")]
    ConventionTooSmall { have: usize, need: usize },

    #[error("scheme `{scheme}` expects rank {expected}, got rank {got}")]
    SchemeRankMismatch {
        scheme: String,
        expected: usize,
        got: usize,
    },

    #[error("register of {have} orbitals cannot host a rank-{rank} excitation")]
    TooFewOrbitals { have: usize, rank: usize },

    #[error("parse error: {0}")]
    Parse(String),
}
