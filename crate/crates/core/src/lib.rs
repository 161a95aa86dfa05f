//! Stabilizer-code toolkit: exact Pauli algebra, code analysis in standard
//! form, fault-tolerant gate synthesis from one- and two-body interactions,
//! a Heisenberg-picture verifier, a dense state simulator, and syndrome
//! measurement tooling.

pub mod circuit;
pub mod codes;
pub mod error;
pub mod pauli;
pub mod sim;
pub mod stab;
pub mod sum;
pub mod syndrome;
pub mod synth;
pub mod verify;

pub use circuit::{interaction_weights, max_interaction_weight, Angle, Circuit, Gate};
pub use error::{Error, Result};
pub use pauli::{pauli, Letter, PauliOperator, MAX_QUBITS};
pub use stab::{
    parse_generator_file, validate_generators, ErrorClass, ErrorClassifier, StabilizerCode,
};
pub use sum::{phase_to_complex, PauliSum};
pub use synth::{
    rotation_plan, synth_css_cnot, synth_euler, synth_general_cnot, synth_logical_rotation,
    synth_logical_zz, zz_plan, CentralBody, Layout, LogicalAxis, SeriesPlan,
};
pub use sim::{
    codespace_basis, encoded_action, exhaustive_fault_injection, phase_aligned_distance,
    sum_expectation, trotter_error, EncodedAction, InjectionCase, InjectionProtocol,
    InjectionReport, StateVector,
};
pub use syndrome::{
    audit_measurement_ft, build_syndrome_table, measure_syndrome, prepare_logical_ancilla,
    single_qubit_errors, syndrome_bits, synth_measurement_circuit, MeasurementAudit,
    SyndromeTable,
};
pub use verify::{
    bitwise_cnot_cross_contamination, heisenberg_step, heisenberg_sum_step, stabilizer_restored,
    trace_heisenberg, verify_errors_correctable, verify_protection, verify_protection_with_depth,
    verify_weight1_detection, CorrectabilityFailure, CorrectabilityReport,
    CrossContaminationRecord, DetectionLocationReport, DetectionReport, ElementLedger,
    LocationState, ProtectionReport, RestorationReport, Verdict, VerificationTrace, Weight1Breach,
};

/// Coefficients at or below this magnitude are treated as exact zeros.
pub const COEFF_TOL: f64 = 1e-12;

/// Stabilizer groups are enumerated only up to 2^ENUM_CAP_LOG2 elements.
pub const ENUM_CAP_LOG2: u32 = 20;

/// Dense state vectors are capped at this many qubits.
pub const DENSE_QUBIT_CAP: usize = 14;
