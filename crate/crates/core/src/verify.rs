//! Heisenberg-picture tracing of a stabilizer frame through a circuit, and
//! the audits built on the traced frames.
//!
//! Gates act on operators by conjugation, op -> U op U†, in circuit order.
//! Exact quarter-turn exponentials, CNOT, R, and Q keep a single Pauli
//! operator a single Pauli operator; an arbitrary-angle exponential splits
//! an anticommuting operator into a two-term sum. Stabilizer generators are
//! required to stay single terms at every fault location; encoded operators
//! are carried as sums.

use crate::circuit::{Angle, Circuit, Gate};
use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliOperator};
use crate::stab::{ErrorClass, ErrorClassifier, StabilizerCode};
use crate::sum::PauliSum;

/// Coefficient tolerance when deciding a sum is ± a single bare operator.
const SIGN_TOL: f64 = 1e-9;

/// op -> U op U† for one gate.
///
/// `None` means the image is a genuine multi-term sum (inexact angle against
/// an anticommuting axis), which no single Pauli operator represents.
/// Controlled Paulis and measurements have no operator image here.
pub fn heisenberg_step(op: &PauliOperator, gate: &Gate) -> Result<Option<PauliOperator>> {
    match gate {
        Gate::PauliExp { axis, angle } => exp_forward(op, axis, angle),
        Gate::ParallelPauliExp { axes, angle } => {
            // The factors commute pairwise, so conjugating through them one
            // at a time in any order is conjugating through the product.
            let mut cur = *op;
            for axis in axes {
                match exp_forward(&cur, axis, angle)? {
                    Some(next) => cur = next,
                    None => return Ok(None),
                }
            }
            Ok(Some(cur))
        }
        Gate::Cnot { control, target } => op.conjugate_cnot(*control, *target).map(Some),
        Gate::R { qubit } => op.conjugate_r(*qubit).map(Some),
        Gate::Q { qubit } => op.conjugate_q(*qubit).map(Some),
        Gate::ControlledPauli { .. } => Err(Error::Unsupported(
            "controlled Pauli is outside the traced gate set".into(),
        )),
        Gate::MeasureZ { .. } => Err(Error::Unsupported(
            "measurement has no Heisenberg image".into(),
        )),
    }
}

// Forward map through exp(i * angle * axis). conjugate_quarter is the
// sandwich U†BU for U = exp(i*sign*π/4*axis), so a forward quarter turn k
// uses the sandwich with sign -k.
fn exp_forward(
    op: &PauliOperator,
    axis: &PauliOperator,
    angle: &Angle,
) -> Result<Option<PauliOperator>> {
    if op.commutes_with(axis)? {
        return Ok(Some(*op));
    }
    match angle {
        Angle::QuarterPi(k) => Ok(Some(match k.rem_euclid(4) {
            0 => *op,
            1 => op.conjugate_quarter(axis, -1)?,
            2 => op.negated(),
            _ => op.conjugate_quarter(axis, 1)?,
        })),
        Angle::Radians(_) => Ok(None),
    }
}

/// sum -> U sum U† for one gate, splitting terms where the angle is inexact.
pub fn heisenberg_sum_step(sum: &PauliSum, gate: &Gate) -> Result<PauliSum> {
    match gate {
        Gate::PauliExp { axis, angle } => exp_sum_forward(sum, axis, angle),
        Gate::ParallelPauliExp { axes, angle } => {
            let mut cur = sum.clone();
            for axis in axes {
                cur = exp_sum_forward(&cur, axis, angle)?;
            }
            Ok(cur)
        }
        Gate::Cnot { control, target } => sum.conjugate_cnot(*control, *target),
        Gate::R { qubit } => sum.conjugate_r(*qubit),
        Gate::Q { qubit } => sum.conjugate_q(*qubit),
        Gate::ControlledPauli { .. } => Err(Error::Unsupported(
            "controlled Pauli is outside the traced gate set".into(),
        )),
        Gate::MeasureZ { .. } => Err(Error::Unsupported(
            "measurement has no Heisenberg image".into(),
        )),
    }
}

fn exp_sum_forward(sum: &PauliSum, axis: &PauliOperator, angle: &Angle) -> Result<PauliSum> {
    match angle {
        // Exact quarter multiples stay exact: no trigonometry.
        Angle::QuarterPi(k) => match k.rem_euclid(4) {
            0 => Ok(sum.clone()),
            1 => sum.conjugate_quarter(axis, -1),
            2 => sum.conjugate_quarter(axis, -1)?.conjugate_quarter(axis, -1),
            _ => sum.conjugate_quarter(axis, 1),
        },
        Angle::Radians(phi) => sum.conjugate_rotation(axis, -phi),
    }
}

/// The frame at one fault location: where the code's generators and encoded
/// operators have moved after the gates so far.
#[derive(Debug, Clone)]
pub struct LocationState {
    pub stabilizer: Vec<PauliOperator>,
    pub normalizer: Vec<PauliSum>,
}

/// Frames at every fault location of a circuit.
///
/// `locations[k]` holds the frame after the first k gates, so entry 0 is the
/// untouched code and the last entry is the end of the circuit. Normalizer
/// sources are the encoded Z's in logical order followed by the encoded X's.
#[derive(Debug, Clone)]
pub struct VerificationTrace {
    pub n_qubits: usize,
    pub stabilizer_sources: Vec<PauliOperator>,
    pub normalizer_sources: Vec<PauliOperator>,
    pub locations: Vec<LocationState>,
}

impl VerificationTrace {
    pub fn final_state(&self) -> &LocationState {
        self.locations.last().expect("a trace always has the input location")
    }
}

/// Conjugate the code's generators and encoded operators through the
/// circuit, recording the frame at every fault location.
///
/// A stabilizer generator meeting an inexact rotation it anticommutes with
/// would stop being a single Pauli operator; that aborts the trace with
/// `StabilizerWouldBranch` naming the offending gate index.
pub fn trace_heisenberg(circuit: &Circuit, code: &StabilizerCode) -> Result<VerificationTrace> {
    if circuit.n_qubits != code.n_qubits() {
        return Err(Error::WidthMismatch { expected: code.n_qubits(), got: circuit.n_qubits });
    }
    let stabilizer_sources = code.generators().to_vec();
    let mut normalizer_sources =
        Vec::with_capacity(2 * code.encoded_count());
    normalizer_sources.extend_from_slice(code.standard_z());
    normalizer_sources.extend_from_slice(code.standard_x());

    let mut locations = Vec::with_capacity(circuit.len() + 1);
    locations.push(LocationState {
        stabilizer: stabilizer_sources.clone(),
        normalizer: normalizer_sources.iter().map(PauliSum::from_op).collect(),
    });
    for (k, gate) in circuit.gates.iter().enumerate() {
        let prev = locations.last().unwrap();
        let mut stabilizer = Vec::with_capacity(prev.stabilizer.len());
        for g in &prev.stabilizer {
            match heisenberg_step(g, gate)? {
                Some(img) => stabilizer.push(img),
                None => return Err(Error::StabilizerWouldBranch { location: k }),
            }
        }
        let mut normalizer = Vec::with_capacity(prev.normalizer.len());
        for s in &prev.normalizer {
            normalizer.push(heisenberg_sum_step(s, gate)?);
        }
        locations.push(LocationState { stabilizer, normalizer });
    }
    Ok(VerificationTrace {
        n_qubits: circuit.n_qubits,
        stabilizer_sources,
        normalizer_sources,
        locations,
    })
}

/// What protects one encoded element at one fault location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// The element is its own source again, up to a real sign.
    EqualsSource { sign: i8 },
    /// This member of the original normalizer anticommutes with every term
    /// of the transformed element, so no original error can mimic it.
    AnticommutesWith(PauliOperator),
    /// Neither holds: an original error could act as this encoded element.
    Violation,
}

/// One row of the protection ledger: an encoded element and its verdict at
/// every fault location.
#[derive(Debug, Clone)]
pub struct ElementLedger {
    pub source: PauliOperator,
    pub verdicts: Vec<Verdict>,
}

#[derive(Debug, Clone)]
pub struct ProtectionReport {
    pub elements: Vec<ElementLedger>,
    pub ok: bool,
}

/// Check that every transformed encoded element stays protected at every
/// fault location: it either equals its source or anticommutes with some
/// member of the original normalizer. Witnesses are searched among the
/// encoded Z, X, and Y of each logical qubit, the stabilizer generators
/// (also normalizer members, and sometimes the only witnesses available),
/// and pairwise products of those.
pub fn verify_protection(
    trace: &VerificationTrace,
    code: &StabilizerCode,
) -> Result<ProtectionReport> {
    verify_protection_with_depth(trace, code, 2)
}

/// `depth` caps the witness products: 1 searches the single elements only,
/// 2 adds pairwise products, and so on.
pub fn verify_protection_with_depth(
    trace: &VerificationTrace,
    code: &StabilizerCode,
    depth: usize,
) -> Result<ProtectionReport> {
    let pool = witness_pool(code, depth)?;
    let mut elements = Vec::with_capacity(trace.normalizer_sources.len());
    let mut ok = true;
    for (e, source) in trace.normalizer_sources.iter().enumerate() {
        let mut verdicts = Vec::with_capacity(trace.locations.len());
        for loc in &trace.locations {
            let verdict = judge(&loc.normalizer[e], source, &pool)?;
            if verdict == Verdict::Violation {
                ok = false;
            }
            verdicts.push(verdict);
        }
        elements.push(ElementLedger { source: *source, verdicts });
    }
    Ok(ProtectionReport { elements, ok })
}

fn judge(sum: &PauliSum, source: &PauliOperator, pool: &[PauliOperator]) -> Result<Verdict> {
    // Conjugation is unitary, so the sum never collapses to nothing.
    debug_assert!(!sum.is_empty());
    if let Some((sign, op)) = sum.as_signed_op(SIGN_TOL) {
        if op.same_mask(source) {
            return Ok(Verdict::EqualsSource { sign });
        }
    }
    'candidates: for m in pool {
        for (_, term) in sum.terms() {
            if term.commutes_with(m)? {
                continue 'candidates;
            }
        }
        return Ok(Verdict::AnticommutesWith(*m));
    }
    Ok(Verdict::Violation)
}

fn witness_pool(code: &StabilizerCode, depth: usize) -> Result<Vec<PauliOperator>> {
    let l = code.encoded_count();
    let mut singles = Vec::with_capacity(3 * l + code.generators().len());
    for j in 0..l {
        singles.push(*code.logical_z(j));
    }
    for j in 0..l {
        singles.push(*code.logical_x(j));
    }
    for j in 0..l {
        singles.push(code.logical_y(j));
    }
    singles.extend_from_slice(code.generators());

    let mut pool = singles.clone();
    // Products of up to `depth` distinct singles, in index order.
    let mut tier: Vec<(usize, PauliOperator)> = singles.iter().copied().enumerate().collect();
    for _ in 2..=depth {
        let mut next = Vec::new();
        for (last, prod) in &tier {
            for (j, s) in singles.iter().enumerate().skip(last + 1) {
                let p = prod.mul(s)?;
                pool.push(p);
                next.push((j, p));
            }
        }
        tier = next;
    }
    Ok(pool)
}

#[derive(Debug, Clone)]
pub struct CorrectabilityFailure {
    pub location: usize,
    /// A group error that the transformed frame can no longer see.
    pub error: PauliOperator,
    /// Transformed encoded rows the error flips (every term anticommutes),
    /// i.e. the encoded operation it silently performs.
    pub flipped_rows: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct CorrectabilityReport {
    pub errors_checked: usize,
    pub locations_checked: usize,
    pub failures: Vec<CorrectabilityFailure>,
    /// Pairwise-quotient check of the whole error set at every location.
    pub pairwise_ok: bool,
    pub ok: bool,
}

/// Classify every nonidentity group element against the transformed frame
/// at every fault location. An error that commutes with the whole frame
/// without being in it acts as an invisible encoded operation: failure.
pub fn verify_errors_correctable(
    trace: &VerificationTrace,
    code: &StabilizerCode,
) -> Result<CorrectabilityReport> {
    let errors = code.enumerate_group()?;
    let mut failures = Vec::new();
    let mut pairwise_ok = true;
    for (k, loc) in trace.locations.iter().enumerate() {
        let classifier = ErrorClassifier::new(trace.n_qubits, loc.stabilizer.clone())?;
        for e in errors.iter().skip(1) {
            if classifier.classify(e)? == ErrorClass::UndetectableLogical {
                let mut flipped_rows = Vec::new();
                'rows: for (i, row) in loc.normalizer.iter().enumerate() {
                    for (_, term) in row.terms() {
                        if term.commutes_with(e)? {
                            continue 'rows;
                        }
                    }
                    flipped_rows.push(i);
                }
                failures.push(CorrectabilityFailure { location: k, error: *e, flipped_rows });
            }
        }
        if !classifier.check_correctability(&errors)? {
            pairwise_ok = false;
        }
    }
    let ok = failures.is_empty() && pairwise_ok;
    Ok(CorrectabilityReport {
        errors_checked: errors.len() - 1,
        locations_checked: trace.locations.len(),
        failures,
        pairwise_ok,
        ok,
    })
}

/// How a single-qubit error slips past detection at some location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Weight1Breach {
    /// Same letters as a transformed encoded element that is a single term
    /// (index into the trace's normalizer rows).
    MatchesNormalizerElement { element: usize },
    /// The letters sit inside the transformed stabilizer group itself.
    StabilizerMember,
    /// Zero syndrome yet not a group member: an invisible encoded action
    /// that the tracked rows alone would not reveal.
    SilentLogical,
}

#[derive(Debug, Clone)]
pub struct DetectionLocationReport {
    pub breaches: Vec<(PauliOperator, Weight1Breach)>,
    /// Distinct single-qubit errors sharing a nonzero syndrome: both are
    /// detected, but the syndrome cannot tell them apart.
    pub ambiguities: Vec<(PauliOperator, PauliOperator)>,
}

#[derive(Debug, Clone)]
pub struct DetectionReport {
    pub locations: Vec<DetectionLocationReport>,
    pub ok: bool,
}

/// Audit every single-qubit Pauli error against the transformed frame at
/// every fault location. Detection survives iff no such error is invisible:
/// none may share letters with a single-term transformed encoded element,
/// sit inside the transformed stabilizer group, or otherwise have zero
/// syndrome. Same-syndrome collisions are reported but do not fail.
pub fn verify_weight1_detection(trace: &VerificationTrace) -> Result<DetectionReport> {
    let n = trace.n_qubits;
    let mut singles = Vec::with_capacity(3 * n);
    for q in 0..n {
        for letter in [Letter::X, Letter::Y, Letter::Z] {
            singles.push(PauliOperator::single(n, q, letter)?);
        }
    }

    let mut locations = Vec::with_capacity(trace.locations.len());
    let mut ok = true;
    for loc in &trace.locations {
        let classifier = ErrorClassifier::new(n, loc.stabilizer.clone())?;
        let single_term_rows: Vec<(usize, PauliOperator)> = loc
            .normalizer
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.single_term().map(|(_, op)| (i, op)))
            .collect();

        let mut breaches = Vec::new();
        let mut detected: Vec<(u64, PauliOperator)> = Vec::new();
        for p in &singles {
            // A single-term encoded element commutes with the whole frame,
            // so anything caught here has zero syndrome anyway.
            if let Some((i, _)) = single_term_rows.iter().find(|(_, op)| op.same_mask(p)) {
                breaches.push((*p, Weight1Breach::MatchesNormalizerElement { element: *i }));
                continue;
            }
            match classifier.classify(p)? {
                ErrorClass::InStabilizer => {
                    breaches.push((*p, Weight1Breach::StabilizerMember));
                }
                ErrorClass::UndetectableLogical => {
                    breaches.push((*p, Weight1Breach::SilentLogical));
                }
                ErrorClass::Detectable => {
                    detected.push((classifier.syndrome_bits(p)?, *p));
                }
            }
        }

        detected.sort_by_key(|(s, _)| *s);
        let mut ambiguities = Vec::new();
        let mut i = 0;
        while i < detected.len() {
            let mut j = i + 1;
            while j < detected.len() && detected[j].0 == detected[i].0 {
                j += 1;
            }
            for a in i..j {
                for b in (a + 1)..j {
                    ambiguities.push((detected[a].1, detected[b].1));
                }
            }
            i = j;
        }

        if !breaches.is_empty() {
            ok = false;
        }
        locations.push(DetectionLocationReport { breaches, ambiguities });
    }
    Ok(DetectionReport { locations, ok })
}

#[derive(Debug, Clone)]
pub struct RestorationReport {
    /// The final frame group equals the original group at the letter level.
    pub group_restored: bool,
    /// Every final generator is an exact signed member of the original
    /// group; false alone means the letters came back but a sign did not.
    pub signs_exact: bool,
    /// Final generators whose letters fall outside the original group.
    pub strays: Vec<PauliOperator>,
}

/// Does the circuit hand the stabilizer group back unchanged?
///
/// Conjugation keeps generators independent, so containment plus an equal
/// generator count already gives set equality of the two groups.
pub fn stabilizer_restored(trace: &VerificationTrace, code: &StabilizerCode) -> RestorationReport {
    let fin = trace.final_state();
    let mut strays = Vec::new();
    let mut signs_exact = true;
    for g in &fin.stabilizer {
        if !code.contains_mask(g) {
            strays.push(*g);
        } else if !code.contains_exact(g) {
            signs_exact = false;
        }
    }
    let group_restored =
        strays.is_empty() && fin.stabilizer.len() == code.generators().len();
    RestorationReport { group_restored, signs_exact: signs_exact && group_restored, strays }
}

/// What the bitwise CNOT between two blocks of a non-CSS code actually does.
#[derive(Debug, Clone)]
pub struct CrossContaminationRecord {
    pub circuit: Circuit,
    /// (source, image) rows for the encoded Z then X of block A, then the
    /// encoded Z then X of block B.
    pub table: Vec<(PauliOperator, PauliOperator)>,
    /// The audited source: block B's encoded X.
    pub source: PauliOperator,
    pub transformed: PauliOperator,
    /// Letters the image carries on block A: the Z part of the encoded X,
    /// copied backwards through the CNOT targets.
    pub a_block_part: PauliOperator,
    /// Whether that backflow is itself a stabilizer element.
    pub a_part_in_stabilizer: bool,
    /// Whether the image still commutes with the doubled stabilizer.
    pub transformed_in_normalizer: bool,
    pub restoration: RestorationReport,
}

/// Apply bitwise CNOTs between two blocks of a non-CSS code and record how
/// block B's encoded X picks up letters on block A. For a CSS code the same
/// circuit is exactly the encoded CNOT, so there is nothing to show and the
/// call is refused.
pub fn bitwise_cnot_cross_contamination(code: &StabilizerCode) -> Result<CrossContaminationRecord> {
    if code.is_css() {
        return Err(Error::CssCodeGiven);
    }
    let k = code.n_qubits();
    let l = code.encoded_count();
    // The backflow is the Z part of the encoded X; pick a logical qubit
    // that has one.
    let j = (0..l)
        .find(|&j| code.logical_x(j).z_mask() != 0)
        .ok_or_else(|| {
            Error::Unsupported("every encoded X is Z-free; bitwise CNOT stays clean".into())
        })?;

    let mut circuit = Circuit::new(2 * k);
    for q in 0..k {
        circuit.push(Gate::Cnot { control: q, target: k + q });
    }

    let doubled = code.tensor(code)?;
    let trace = trace_heisenberg(&circuit, &doubled)?;

    let mut table = Vec::with_capacity(4);
    for src in [
        code.logical_z(j).embed(2 * k, 0)?,
        code.logical_x(j).embed(2 * k, 0)?,
        code.logical_z(j).embed(2 * k, k)?,
        code.logical_x(j).embed(2 * k, k)?,
    ] {
        let mut img = src;
        for gate in &circuit.gates {
            img = heisenberg_step(&img, gate)?.expect("CNOT keeps single terms");
        }
        table.push((src, img));
    }

    let (source, transformed) = table[3];
    let a_block_part = transformed.sub_operator(0..k)?;
    let mut expected_backflow = PauliOperator::identity(k)?;
    for q in 0..k {
        if code.logical_x(j).z_mask() >> q & 1 == 1 {
            expected_backflow = expected_backflow.mul(&PauliOperator::single(k, q, Letter::Z)?)?;
        }
    }
    debug_assert!(a_block_part.same_mask(&expected_backflow));
    debug_assert!(transformed.sub_operator(k..2 * k)?.same_mask(code.logical_x(j)));

    let a_part_in_stabilizer = code.contains_mask(&a_block_part);
    let transformed_in_normalizer = doubled.in_normalizer(&transformed)?;
    let restoration = stabilizer_restored(&trace, &doubled);

    Ok(CrossContaminationRecord {
        circuit,
        table,
        source,
        transformed,
        a_block_part,
        a_part_in_stabilizer,
        transformed_in_normalizer,
        restoration,
    })
}
