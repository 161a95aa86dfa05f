use thiserror::Error;

/// Everything that can go wrong across the toolkit.
///
/// Validation errors carry enough indices to point at the offending input;
/// they are compared in tests, hence `PartialEq`.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("operator width mismatch: expected {expected} qubits, got {got}")]
    WidthMismatch { expected: usize, got: usize },

    #[error("{requested} qubits exceeds the supported maximum of {cap}")]
    TooManyQubits { requested: usize, cap: usize },

    #[error("generators {i} and {j} anticommute")]
    NonAbelian { i: usize, j: usize },

    #[error("generator {index} is a product of earlier generators")]
    DependentGenerators { index: usize },

    #[error("generator {index} combines with earlier generators to put -I in the group")]
    MinusIdentityInGroup { index: usize },

    #[error("generator {index} has an imaginary phase and cannot stabilize any state")]
    GeneratorNotHermitian { index: usize },

    #[error("{generators} generators would enumerate past the 2^{cap_log2} element cap")]
    GroupTooLarge { generators: usize, cap_log2: u32 },

    #[error("dense simulation of {qubits} qubits exceeds the cap of {cap}")]
    StateTooLarge { qubits: usize, cap: usize },

    #[error("gate at location {location} maps a stabilizer generator to a branching superposition")]
    StabilizerWouldBranch { location: usize },

    #[error("operator is not a member of the transformed stabilizer group")]
    NotInStabilizerGroup,

    #[error("code is not CSS")]
    NotCss,

    #[error("code is CSS: bitwise CNOT is already the encoded CNOT and nothing fails")]
    CssCodeGiven,

    #[error("data and ancilla stayed entangled after measurement (purity {purity})")]
    DataAncillaEntangled { purity: f64 },

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
