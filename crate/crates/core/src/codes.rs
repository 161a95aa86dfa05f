//! A small corpus of stabilizer codes used by tests, demos, and benches.

use crate::pauli::pauli;
use crate::stab::StabilizerCode;

/// Four qubits, generators XX on adjacent pairs. One encoded qubit with a
/// pure-Z encoded Z of weight four; detects single phase flips.
pub fn xx_chain_code() -> StabilizerCode {
    StabilizerCode::new(4, vec![pauli("XXII"), pauli("IXXI"), pauli("IIXX")]).unwrap()
}

/// The [[4,2,2]] code: generators XXXX and ZZZZ, two encoded qubits.
pub fn four_two_two_code() -> StabilizerCode {
    StabilizerCode::new(4, vec![pauli("XXXX"), pauli("ZZZZ")]).unwrap()
}

/// A six-qubit CSS code with one encoded qubit whose standard-form encoded
/// operators have weight four (Z) and three (X); a convenient middle ground
/// between the toy chains and the seven-qubit code.
pub fn six_one_code() -> StabilizerCode {
    StabilizerCode::new(
        6,
        vec![
            pauli("XIIIIX"),
            pauli("IXIIIX"),
            pauli("IIXIIX"),
            pauli("ZZZZIZ"),
            pauli("ZZZIZZ"),
        ],
    )
    .unwrap()
}

/// The Steane [[7,1,3]] code.
pub fn steane_code() -> StabilizerCode {
    StabilizerCode::new(
        7,
        vec![
            pauli("IIIXXXX"),
            pauli("IXXIIXX"),
            pauli("XIXIXIX"),
            pauli("IIIZZZZ"),
            pauli("IZZIIZZ"),
            pauli("ZIZIZIZ"),
        ],
    )
    .unwrap()
}

/// The [[5,1,3]] code, smallest distance-3 code; not CSS.
pub fn five_qubit_code() -> StabilizerCode {
    StabilizerCode::new(
        5,
        vec![pauli("XZZXI"), pauli("IXZZX"), pauli("XIXZZ"), pauli("ZXIXZ")],
    )
    .unwrap()
}

/// Four qubits, a single generator XZYX: three encoded qubits. Small enough
/// to enumerate by hand, and its mixed letters exercise the non-CSS paths.
pub fn xzyx_code() -> StabilizerCode {
    StabilizerCode::new(4, vec![pauli("XZYX")]).unwrap()
}

/// Every code in the corpus, with a short label.
pub fn corpus() -> Vec<(&'static str, StabilizerCode)> {
    vec![
        ("xx-chain", xx_chain_code()),
        ("four-two-two", four_two_two_code()),
        ("six-one", six_one_code()),
        ("steane", steane_code()),
        ("five-qubit", five_qubit_code()),
        ("xzyx", xzyx_code()),
    ]
}
