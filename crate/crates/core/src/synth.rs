//! Synthesis of encoded operations from one- and two-body interactions.
//!
//! The workhorse is a conjugation series: to rotate by a high-weight
//! operator T, sandwich a short central exponential between quarter-turn
//! conjugations that grow it one qubit at a time,
//!
//!   prefix  exp(+i s_n π/4 A_n) ... exp(+i s_1 π/4 A_1)   (gate order A_1 first)
//!   central exp(i θ C)
//!   suffix  the prefix reversed with negated angles.
//!
//! The whole circuit equals exp(i θ V†CV) exactly, V the product of prefix
//! gates, so the construction reduces to picking two-body conjugators whose
//! fold lands on +T. Every conjugator here is anti-base-letter ⊗ one target
//! letter; the fold toggles the base letter between its letter and Y while
//! accreting the rest of T, and a bare anti-base fixer patches the parity
//! when T has even weight. All conjugators in one series commute pairwise,
//! which keeps the parallel layout exact and lets the two halves count as
//! single fault locations.

use crate::circuit::{Angle, Circuit, Gate};
use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliOperator};
use crate::stab::StabilizerCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogicalAxis {
    X,
    Y,
    Z,
}

/// Whether the central exponential may swallow the innermost conjugator
/// (two-body central, two gates cheaper) or stays on a single qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentralBody {
    One,
    Two,
}

/// Conjugations emitted one gate at a time, or as a single parallel step on
/// each side of the central exponential.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    Sequential,
    Parallel,
}

/// One multiplicative factor of a series target: a base qubit plus the
/// rest of the factor's letters.
struct Factor {
    base: usize,
    base_letter: Letter,
    others: Vec<(usize, Letter)>,
}

impl Factor {
    fn from_op(op: &PauliOperator, base: usize) -> Result<Self> {
        let base_letter = op.letter_at(base);
        if !matches!(base_letter, Letter::X | Letter::Z) {
            return Err(Error::Unsupported(format!(
                "series base letter must be X or Z, found {base_letter:?} at qubit {base}"
            )));
        }
        let others = op
            .support()
            .into_iter()
            .filter(|&q| q != base)
            .map(|q| (q, op.letter_at(q)))
            .collect();
        Ok(Self { base, base_letter, others })
    }

    fn anti_letter(&self) -> Letter {
        match self.base_letter {
            Letter::Z => Letter::X,
            Letter::X => Letter::Z,
            _ => unreachable!("checked at construction"),
        }
    }
}

/// A planned conjugation series: everything needed to emit the circuit and
/// to audit what it does.
#[derive(Debug, Clone)]
pub struct SeriesPlan {
    n_qubits: usize,
    /// Outermost first; the sign is the quarter-turn direction of the
    /// prefix gate (the suffix gate gets the opposite).
    pub conjugators: Vec<(PauliOperator, i8)>,
    /// Positive-mask axis of the central exponential.
    pub central_axis: PauliOperator,
    /// The central gate turns by central_sign * angle.
    pub central_sign: i8,
    pub angle: Angle,
    /// Exact conjugation of the central axis through the series: always
    /// equals +target after sign fixing.
    pub effective: PauliOperator,
}

impl SeriesPlan {
    /// Same conjugation structure, different turn angle.
    pub fn with_angle(&self, angle: Angle) -> Self {
        Self { angle, ..self.clone() }
    }

    fn central_angle(&self) -> Angle {
        if self.central_sign < 0 {
            self.angle.negated()
        } else {
            self.angle
        }
    }

    pub fn to_circuit(&self, layout: Layout) -> Circuit {
        let mut c = Circuit::new(self.n_qubits);
        let central = Gate::PauliExp { axis: self.central_axis, angle: self.central_angle() };
        if self.conjugators.is_empty() {
            c.push(central);
            return c;
        }
        match layout {
            Layout::Sequential => {
                for (op, s) in &self.conjugators {
                    c.push(Gate::PauliExp { axis: *op, angle: Angle::QuarterPi((*s).into()) });
                }
                c.push(central);
                for (op, s) in self.conjugators.iter().rev() {
                    c.push(Gate::PauliExp { axis: *op, angle: Angle::QuarterPi((-*s).into()) });
                }
            }
            Layout::Parallel => {
                let axes: Vec<PauliOperator> = self
                    .conjugators
                    .iter()
                    .map(|(op, s)| if *s < 0 { op.negated() } else { *op })
                    .collect();
                c.push(Gate::ParallelPauliExp { axes: axes.clone(), angle: Angle::QuarterPi(1) });
                c.push(central);
                c.push(Gate::ParallelPauliExp { axes, angle: Angle::QuarterPi(-1) });
            }
        }
        c
    }
}

/// Conjugate `start` through the series, innermost conjugator first.
fn fold_series(start: &PauliOperator, conjugators: &[(PauliOperator, i8)]) -> PauliOperator {
    let mut eff = *start;
    for (op, s) in conjugators.iter().rev() {
        debug_assert!(eff.anticommutes_with(op).unwrap(), "series fold stalled at {op}");
        eff = eff.conjugate_quarter(op, *s).unwrap();
    }
    eff
}

fn plan_series(
    n_qubits: usize,
    factors: &[Factor],
    target: &PauliOperator,
    angle: Angle,
    central: CentralBody,
) -> Result<SeriesPlan> {
    debug_assert_eq!(target.phase_exp(), 0);
    if target.weight() <= 2 {
        return Ok(SeriesPlan {
            n_qubits,
            conjugators: Vec::new(),
            central_axis: *target,
            central_sign: 1,
            angle,
            effective: *target,
        });
    }

    let mut conjugators: Vec<(PauliOperator, i8)> = Vec::new();
    let mut central0 = PauliOperator::identity(n_qubits)?;
    for f in factors {
        central0 = central0.with_letter(f.base, f.base_letter)?;
        let anti = f.anti_letter();
        let fixer_needed = f.others.len() % 2 == 1;
        let fixer = PauliOperator::single(n_qubits, f.base, anti)?;
        if fixer_needed && central == CentralBody::Two {
            conjugators.push((fixer, 1));
        }
        for &(q, letter) in &f.others {
            let op = PauliOperator::single(n_qubits, f.base, anti)?.with_letter(q, letter)?;
            conjugators.push((op, 1));
        }
        if fixer_needed && central == CentralBody::One {
            conjugators.push((fixer, 1));
        }
    }

    let mut central_axis = central0;
    if central == CentralBody::Two && central_axis.weight() == 1 {
        // Swallow the innermost conjugator; its sign lives on in the fold
        // because we re-derive everything from the bare merged axis.
        let (inner, _) = conjugators.pop().expect("weight > 2 target has conjugators");
        central_axis = central_axis.conjugate_quarter(&inner, 1)?.bare();
    }

    let mut central_sign: i8 = 1;
    let eff = fold_series(&central_axis, &conjugators);
    assert!(eff.same_mask(target), "series fold produced {eff}, wanted {target}");
    if eff.phase_exp() == 2 {
        match conjugators.first_mut() {
            Some(first) => first.1 = -1,
            None => central_sign = -1,
        }
    }
    let effective = if central_sign < 0 {
        fold_series(&central_axis, &conjugators).negated()
    } else {
        fold_series(&central_axis, &conjugators)
    };
    assert_eq!(effective, *target, "sign fix must land on +target");

    Ok(SeriesPlan { n_qubits, conjugators, central_axis, central_sign, angle, effective })
}

fn check_logical_index(code: &StabilizerCode, j: usize) -> Result<()> {
    if j >= code.encoded_count() {
        return Err(Error::QubitOutOfRange { index: j, n_qubits: code.encoded_count() });
    }
    Ok(())
}

/// Series plan for exp(i angle Z̄_j) or exp(i angle X̄_j).
pub fn rotation_plan(
    code: &StabilizerCode,
    axis: LogicalAxis,
    j: usize,
    angle: Angle,
    central: CentralBody,
) -> Result<SeriesPlan> {
    check_logical_index(code, j)?;
    let target = match axis {
        LogicalAxis::Z => *code.logical_z(j),
        LogicalAxis::X => *code.logical_x(j),
        LogicalAxis::Y => {
            return Err(Error::Unsupported(
                "Y rotations are compiled as X-quarter conjugated Z rotations".into(),
            ))
        }
    };
    let base = code.logical_cols()[j];
    let factor = Factor::from_op(&target, base)?;
    plan_series(code.n_qubits(), &[factor], &target, angle, central)
}

/// Series plan for exp(i angle Z̄_i Z̄_j).
pub fn zz_plan(
    code: &StabilizerCode,
    i: usize,
    j: usize,
    angle: Angle,
    central: CentralBody,
) -> Result<SeriesPlan> {
    check_logical_index(code, i)?;
    check_logical_index(code, j)?;
    if i == j {
        return Err(Error::Unsupported("coupling an encoded qubit to itself".into()));
    }
    let target = code.logical_z(i).mul(code.logical_z(j))?;
    debug_assert_eq!(target.phase_exp(), 0);
    let fi = Factor::from_op(code.logical_z(i), code.logical_cols()[i])?;
    let fj = Factor::from_op(code.logical_z(j), code.logical_cols()[j])?;
    plan_series(code.n_qubits(), &[fi, fj], &target, angle, central)
}

/// exp(i angle Ā_j) as a circuit of at-most-two-body exponentials.
///
/// Y rotations use exp(iθȲ) = exp(-iπ/4 X̄) exp(-iθZ̄) exp(+iπ/4 X̄): the
/// same Z series conjugated by an exact encoded quarter turn.
pub fn synth_logical_rotation(
    code: &StabilizerCode,
    axis: LogicalAxis,
    j: usize,
    angle: Angle,
    layout: Layout,
    central: CentralBody,
) -> Result<Circuit> {
    match axis {
        LogicalAxis::Z | LogicalAxis::X => {
            Ok(rotation_plan(code, axis, j, angle, central)?.to_circuit(layout))
        }
        LogicalAxis::Y => {
            let x_quarter = rotation_plan(code, LogicalAxis::X, j, Angle::QuarterPi(1), central)?;
            let z_turn = rotation_plan(code, LogicalAxis::Z, j, angle.negated(), central)?;
            let mut c = x_quarter.to_circuit(layout);
            c.extend(&z_turn.to_circuit(layout));
            c.extend(&x_quarter.with_angle(Angle::QuarterPi(-1)).to_circuit(layout));
            Ok(c)
        }
    }
}

/// exp(i angle Z̄_i Z̄_j) between two encoded qubits of one block.
pub fn synth_logical_zz(
    code: &StabilizerCode,
    i: usize,
    j: usize,
    angle: Angle,
    layout: Layout,
    central: CentralBody,
) -> Result<Circuit> {
    Ok(zz_plan(code, i, j, angle, central)?.to_circuit(layout))
}

/// Arbitrary encoded single-qubit unitary
/// exp(-i β/2 Z̄) exp(-i θ/2 Ȳ) exp(-i α/2 Z̄) as one gate sequence.
pub fn synth_euler(
    code: &StabilizerCode,
    j: usize,
    alpha: Angle,
    theta: Angle,
    beta: Angle,
    layout: Layout,
    central: CentralBody,
) -> Result<Circuit> {
    let z_plan = rotation_plan(code, LogicalAxis::Z, j, Angle::QuarterPi(0), central)?;
    let x_quarter = rotation_plan(code, LogicalAxis::X, j, Angle::QuarterPi(1), central)?;
    let mut c = z_plan.with_angle(alpha.halved().negated()).to_circuit(layout);
    c.extend(&x_quarter.to_circuit(layout));
    c.extend(&z_plan.with_angle(theta.halved()).to_circuit(layout));
    c.extend(&x_quarter.with_angle(Angle::QuarterPi(-1)).to_circuit(layout));
    c.extend(&z_plan.with_angle(beta.halved().negated()).to_circuit(layout));
    Ok(c)
}

/// Transversal encoded CNOT between two blocks of the same CSS code:
/// physical CNOTs from qubit i (block A) to qubit K+i (block B).
pub fn synth_css_cnot(code: &StabilizerCode) -> Result<Circuit> {
    if !code.is_css() {
        return Err(Error::NotCss);
    }
    let k = code.n_qubits();
    let mut c = Circuit::new(2 * k);
    for i in 0..k {
        c.push(Gate::Cnot { control: i, target: k + i });
    }
    Ok(c)
}

/// Encoded CNOT for any pair of codes, from the commuting product
///
///   CNOT = e^{iπ/4} exp(-iπ/4 Z̄_A) exp(-iπ/4 X̄_B) exp(+iπ/4 Z̄_A X̄_B),
///
/// each exponential synthesized as a series. The last two factors commute,
/// so slicing them into `slices` interleaved repetitions is still exact;
/// the parameter exists to study how the interleaving behaves.
pub fn synth_general_cnot(
    code_a: &StabilizerCode,
    j_a: usize,
    code_b: &StabilizerCode,
    j_b: usize,
    slices: usize,
    layout: Layout,
    central: CentralBody,
) -> Result<Circuit> {
    check_logical_index(code_a, j_a)?;
    check_logical_index(code_b, j_b)?;
    if slices == 0 {
        return Err(Error::Unsupported("need at least one slice".into()));
    }
    let n = code_a.n_qubits() + code_b.n_qubits();
    let z_a = code_a.logical_z(j_a).embed(n, 0)?;
    let x_b = code_b.logical_x(j_b).embed(n, code_a.n_qubits())?;
    let base_a = code_a.logical_cols()[j_a];
    let base_b = code_a.n_qubits() + code_b.logical_cols()[j_b];

    let plan_za = plan_series(
        n,
        &[Factor::from_op(&z_a, base_a)?],
        &z_a,
        Angle::QuarterPi(-1),
        central,
    )?;
    let slice_angle = |sign: f64| {
        if slices == 1 {
            Angle::QuarterPi(sign as i32)
        } else {
            Angle::Radians(sign * std::f64::consts::FRAC_PI_4 / slices as f64)
        }
    };
    let plan_xb = plan_series(
        n,
        &[Factor::from_op(&x_b, base_b)?],
        &x_b,
        slice_angle(-1.0),
        central,
    )?;
    let zx = z_a.mul(&x_b)?;
    debug_assert_eq!(zx.phase_exp(), 0);
    let plan_zx = plan_series(
        n,
        &[Factor::from_op(&z_a, base_a)?, Factor::from_op(&x_b, base_b)?],
        &zx,
        slice_angle(1.0),
        central,
    )?;

    let mut c = plan_za.to_circuit(layout);
    for _ in 0..slices {
        c.extend(&plan_xb.to_circuit(layout));
        c.extend(&plan_zx.to_circuit(layout));
    }
    Ok(c)
}
