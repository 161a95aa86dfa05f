//! Syndrome tables and ancilla-coupled measurement of stabilizer elements.
//!
//! A stabilizer element is measured without touching the data directly:
//! basis changes turn every letter of the element into Z, each support
//! qubit then kicks an encoded X onto an ancilla block, and reading the
//! ancilla's encoded Z collects the parity. The data is basis-restored by
//! the mirrored Clifford set and stays unentangled from the ancilla.

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliOperator};
use crate::sim::{codespace_basis, StateVector};
use crate::stab::StabilizerCode;
use crate::sum::PauliSum;
use crate::verify::{
    stabilizer_restored, trace_heisenberg, verify_protection, ProtectionReport, RestorationReport,
};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Anticommutation bits of an error against an ordered generator list,
/// bit i set iff the error anticommutes with generator i.
pub fn syndrome_bits(error: &PauliOperator, generators: &[PauliOperator]) -> Result<u64> {
    let mut bits = 0u64;
    for (i, g) in generators.iter().enumerate() {
        if error.anticommutes_with(g)? {
            bits |= 1 << i;
        }
    }
    Ok(bits)
}

/// F2 row space of (x, z) mask pairs, for membership-up-to-phase tests
/// against a generator set that need not be a validated code.
struct MaskSpan {
    rows: Vec<u128>,
}

impl MaskSpan {
    fn pack(op: &PauliOperator) -> u128 {
        u128::from(op.x_mask()) | u128::from(op.z_mask()) << 64
    }

    fn new(ops: &[PauliOperator]) -> Self {
        let mut span = Self { rows: Vec::new() };
        for op in ops {
            let v = span.reduce(Self::pack(op));
            if v != 0 {
                span.rows.push(v);
            }
        }
        span
    }

    fn reduce(&self, mut v: u128) -> u128 {
        for r in &self.rows {
            let lead = 127 - r.leading_zeros();
            if v >> lead & 1 == 1 {
                v ^= r;
            }
        }
        v
    }

    /// Same coset: the two differ by a span element. Against the identity
    /// this is plain membership.
    fn equivalent(&self, a: &PauliOperator, b: &PauliOperator) -> bool {
        let v = Self::pack(a) ^ Self::pack(b);
        self.reduce(v) == 0
    }
}

#[derive(Debug, Clone)]
pub struct SyndromeTable {
    pub generators: Vec<PauliOperator>,
    /// Syndrome word to the correction to apply; zero maps to identity.
    pub rows: BTreeMap<u64, PauliOperator>,
    /// Syndromes claimed by errors from more than one coset of the
    /// generator span: the stored correction can silently land a
    /// normalizer element on a state hit by the other coset, so these
    /// rows are only safe for detection.
    pub ambiguities: BTreeMap<u64, Vec<PauliOperator>>,
}

impl SyndromeTable {
    pub fn n_bits(&self) -> usize {
        self.generators.len()
    }

    pub fn correction_for(&self, syndrome: u64) -> Option<PauliOperator> {
        self.rows.get(&syndrome).copied()
    }

    pub fn is_ambiguous(&self, syndrome: u64) -> bool {
        self.ambiguities.contains_key(&syndrome)
    }
}

/// Tabulate the syndrome of every candidate error against the momentary
/// generators and pick a minimum-weight representative per syndrome.
pub fn build_syndrome_table(
    generators: &[PauliOperator],
    errors: &[PauliOperator],
) -> Result<SyndromeTable> {
    if generators.len() > 64 {
        return Err(Error::Unsupported(format!(
            "{} generators exceed the 64-bit syndrome word",
            generators.len()
        )));
    }
    let n = generators
        .first()
        .or_else(|| errors.first())
        .map(PauliOperator::n_qubits)
        .ok_or_else(|| Error::Unsupported("nothing to tabulate".into()))?;
    for op in generators.iter().chain(errors) {
        if op.n_qubits() != n {
            return Err(Error::WidthMismatch { expected: n, got: op.n_qubits() });
        }
    }

    let span = MaskSpan::new(generators);
    let mut buckets: BTreeMap<u64, Vec<PauliOperator>> = BTreeMap::new();
    for e in errors {
        buckets.entry(syndrome_bits(e, generators)?).or_default().push(*e);
    }

    let mut rows = BTreeMap::new();
    rows.insert(0, PauliOperator::identity(n)?);
    let mut ambiguities = BTreeMap::new();
    for (&s, members) in &buckets {
        if s == 0 {
            continue;
        }
        let rep = members.iter().min_by_key(|e| e.weight()).expect("bucket never empty");
        rows.insert(s, rep.bare());
        if members.iter().any(|e| !span.equivalent(e, rep)) {
            ambiguities.insert(s, members.clone());
        }
    }
    Ok(SyndromeTable { generators: generators.to_vec(), rows, ambiguities })
}

/// All 3n single-qubit errors, qubit-major, X then Y then Z.
pub fn single_qubit_errors(n_qubits: usize) -> Result<Vec<PauliOperator>> {
    let mut out = Vec::with_capacity(3 * n_qubits);
    for q in 0..n_qubits {
        for letter in [Letter::X, Letter::Y, Letter::Z] {
            out.push(PauliOperator::single(n_qubits, q, letter)?);
        }
    }
    Ok(out)
}

/// The ancilla's encoded lever arms for measurement: encoded X to kick,
/// Z-only encoded Z to read out.
fn ancilla_handles(ancilla_code: &StabilizerCode) -> Result<(PauliOperator, Vec<usize>)> {
    let anc_z = ancilla_code.logical_z(0);
    let n_anc = ancilla_code.n_qubits();
    let mut readout = Vec::new();
    for q in 0..n_anc {
        match anc_z.letter_at(q) {
            Letter::Z => readout.push(q),
            Letter::I => {}
            other => {
                return Err(Error::Unsupported(format!(
                    "ancilla readout needs a Z-only encoded Z, found {other:?} in {anc_z}"
                )))
            }
        }
    }
    Ok((*ancilla_code.logical_x(0), readout))
}

/// Measurement circuit for one Hermitian Pauli on `n_data` qubits, ancilla
/// block appended after the data. No group membership is assumed, so the
/// same construction serves transformed generators mid-circuit.
fn element_circuit(
    element: &PauliOperator,
    n_data: usize,
    ancilla_code: &StabilizerCode,
) -> Result<Circuit> {
    if element.phase_exp() % 2 == 1 {
        return Err(Error::Unsupported(format!("cannot measure the non-Hermitian {element}")));
    }
    let (anc_x, readout) = ancilla_handles(ancilla_code)?;
    let n = n_data + ancilla_code.n_qubits();
    let kick = anc_x.embed(n, n_data)?;
    let mut c = Circuit::new(n);
    let support = element.support();
    for &q in &support {
        match element.letter_at(q) {
            Letter::X => c.push(Gate::R { qubit: q }),
            Letter::Y => c.push(Gate::Q { qubit: q }),
            _ => {}
        }
    }
    for &q in &support {
        c.push(Gate::ControlledPauli { control: q, pauli: kick });
    }
    for &q in &support {
        match element.letter_at(q) {
            Letter::X => c.push(Gate::R { qubit: q }),
            Letter::Y => {
                c.push(Gate::Q { qubit: q });
                c.push(Gate::Q { qubit: q });
            }
            _ => {}
        }
    }
    c.push(Gate::MeasureZ { qubits: readout.iter().map(|&q| n_data + q).collect() });
    Ok(c)
}

/// Circuit measuring a stabilizer group element of `code` through an
/// encoded ancilla appended after the data block.
pub fn synth_measurement_circuit(
    code: &StabilizerCode,
    element: &PauliOperator,
    ancilla_code: &StabilizerCode,
) -> Result<Circuit> {
    if element.n_qubits() != code.n_qubits() {
        return Err(Error::WidthMismatch { expected: code.n_qubits(), got: element.n_qubits() });
    }
    if !code.contains_mask(element) {
        return Err(Error::NotInStabilizerGroup);
    }
    element_circuit(element, code.n_qubits(), ancilla_code)
}

/// Encoded computational basis state of the ancilla code, built directly
/// from the codewords (idealized, not itself fault tolerant).
pub fn prepare_logical_ancilla(ancilla_code: &StabilizerCode, index: usize) -> Result<StateVector> {
    let l = ancilla_code.encoded_count();
    if index >= 1 << l {
        return Err(Error::Unsupported(format!(
            "logical basis index {index} out of range for {l} encoded qubit(s)"
        )));
    }
    let mut words = codespace_basis(ancilla_code)?;
    Ok(words.swap_remove(index))
}

/// Measure each generator in turn through a fresh encoded ancilla; bit i of
/// the result is 0 for the +1 outcome of generator i. The data state
/// collapses in place and must come out unentangled from every ancilla.
pub fn measure_syndrome(
    state: &mut StateVector,
    generators: &[PauliOperator],
    ancilla_code: &StabilizerCode,
    rng: &mut ChaCha8Rng,
) -> Result<u64> {
    if generators.len() > 64 {
        return Err(Error::Unsupported(format!(
            "{} generators exceed the 64-bit syndrome word",
            generators.len()
        )));
    }
    let n_data = state.n_qubits();
    let ancilla = prepare_logical_ancilla(ancilla_code, 0)?;
    let mut bits = 0u64;
    for (i, g) in generators.iter().enumerate() {
        if g.n_qubits() != n_data {
            return Err(Error::WidthMismatch { expected: n_data, got: g.n_qubits() });
        }
        let circuit = element_circuit(g, n_data, ancilla_code)?;
        let mut joint = state.tensor(&ancilla)?;
        let outcomes = joint.run_circuit(&circuit, rng)?;
        let parity = u64::from(outcomes[0].count_ones() % 2 == 1);
        // A negated generator stabilizes through the -1 outcome.
        bits |= (parity ^ u64::from(g.phase_exp() == 2)) << i;
        let (data, _) = joint.split_off_suffix(ancilla_code.n_qubits(), 1e-10)?;
        *state = data;
    }
    Ok(bits)
}

/// Audit of a measurement circuit's data-side protection: the encoded
/// information must stay shielded while the data sits basis-rotated, and
/// the mirrored Clifford set must restore the original frame exactly.
#[derive(Debug, Clone)]
pub struct MeasurementAudit {
    pub element: PauliOperator,
    /// The data-block basis changes, first set then mirror.
    pub basis_circuit: Circuit,
    pub protection: ProtectionReport,
    pub stabilizer: RestorationReport,
    pub normalizer_restored: bool,
    pub ok: bool,
}

fn sum_is_exactly(row: &PauliSum, op: &PauliOperator) -> bool {
    match row.single_term() {
        Some((c, term)) => (c.re - 1.0).abs() < 1e-12 && c.im.abs() < 1e-12 && term == *op,
        None => false,
    }
}

pub fn audit_measurement_ft(
    code: &StabilizerCode,
    element: &PauliOperator,
) -> Result<MeasurementAudit> {
    if element.n_qubits() != code.n_qubits() {
        return Err(Error::WidthMismatch { expected: code.n_qubits(), got: element.n_qubits() });
    }
    if !code.contains_mask(element) {
        return Err(Error::NotInStabilizerGroup);
    }
    let mut c = Circuit::new(code.n_qubits());
    for &q in &element.support() {
        match element.letter_at(q) {
            Letter::X => c.push(Gate::R { qubit: q }),
            Letter::Y => c.push(Gate::Q { qubit: q }),
            _ => {}
        }
    }
    for &q in &element.support() {
        match element.letter_at(q) {
            Letter::X => c.push(Gate::R { qubit: q }),
            Letter::Y => {
                c.push(Gate::Q { qubit: q });
                c.push(Gate::Q { qubit: q });
            }
            _ => {}
        }
    }
    let trace = trace_heisenberg(&c, code)?;
    let protection = verify_protection(&trace, code)?;
    let stabilizer = stabilizer_restored(&trace, code);
    let final_rows = &trace.final_state().normalizer;
    let normalizer_restored = trace
        .normalizer_sources
        .iter()
        .zip(final_rows)
        .all(|(src, row)| sum_is_exactly(row, src));
    let ok = protection.ok
        && stabilizer.group_restored
        && stabilizer.signs_exact
        && normalizer_restored;
    Ok(MeasurementAudit { element: *element, basis_circuit: c, protection, stabilizer, normalizer_restored, ok })
}
