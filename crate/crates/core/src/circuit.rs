//! Circuits over Pauli-exponential and Clifford gates, with a line-oriented
//! text format.
//!
//! Angles keep exact quarter-pi multiples separate from floats: a quarter
//! turn conjugates Pauli operators to Pauli operators, while a generic angle
//! branches them into sums, and the verifier needs to tell the two apart
//! without trusting float equality.

use std::fmt;

use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Angle {
    /// k * π/4, exact.
    QuarterPi(i32),
    Radians(f64),
}

impl Angle {
    pub fn radians(&self) -> f64 {
        match self {
            Angle::QuarterPi(k) => f64::from(*k) * std::f64::consts::FRAC_PI_4,
            Angle::Radians(x) => *x,
        }
    }

    pub fn negated(&self) -> Self {
        match self {
            Angle::QuarterPi(k) => Angle::QuarterPi(-k),
            Angle::Radians(x) => Angle::Radians(-x),
        }
    }

    /// Half the angle, staying exact when the half is still a quarter-pi
    /// multiple.
    pub fn halved(&self) -> Self {
        match self {
            Angle::QuarterPi(k) if k % 2 == 0 => Angle::QuarterPi(k / 2),
            other => Angle::Radians(other.radians() / 2.0),
        }
    }

    /// Exact quarter-pi multiples map Pauli operators to Pauli operators
    /// under conjugation.
    pub fn is_exact(&self) -> bool {
        matches!(self, Angle::QuarterPi(_))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(rest) = t.strip_suffix("*pi/4").or_else(|| t.strip_suffix("*pi/2")) {
            let unit = if t.ends_with("/4") { 1 } else { 2 };
            let k: i32 = rest
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad angle multiple in {t:?}")))?;
            return Ok(Angle::QuarterPi(k * unit));
        }
        match t {
            "pi/4" => return Ok(Angle::QuarterPi(1)),
            "-pi/4" => return Ok(Angle::QuarterPi(-1)),
            "pi/2" => return Ok(Angle::QuarterPi(2)),
            "-pi/2" => return Ok(Angle::QuarterPi(-2)),
            "pi" => return Ok(Angle::QuarterPi(4)),
            "-pi" => return Ok(Angle::QuarterPi(-4)),
            _ => {}
        }
        if let Some(rest) = t.strip_suffix("*pi") {
            let k: i32 = rest
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad angle multiple in {t:?}")))?;
            return Ok(Angle::QuarterPi(k * 4));
        }
        t.parse::<f64>()
            .map(Angle::Radians)
            .map_err(|_| Error::Parse(format!("bad angle {t:?}")))
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::QuarterPi(k) => write!(f, "{k}*pi/4"),
            Angle::Radians(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    /// exp(i * angle * axis). The axis may carry a sign (phase 0 or 2).
    PauliExp { axis: PauliOperator, angle: Angle },
    /// Product of exp(i * angle * axis_k) over pairwise-commuting axes,
    /// applied as one physical step.
    ParallelPauliExp { axes: Vec<PauliOperator>, angle: Angle },
    Cnot { control: usize, target: usize },
    /// Basis swap on one qubit: X <-> Z, Y -> -Y.
    R { qubit: usize },
    /// Letter cycle on one qubit: Z -> X -> Y -> Z.
    Q { qubit: usize },
    /// Applies `pauli` when `control` is set; identity otherwise.
    ControlledPauli { control: usize, pauli: PauliOperator },
    /// Projective Z measurement on each listed qubit.
    MeasureZ { qubits: Vec<usize> },
}

impl Gate {
    pub fn inverse(&self) -> Result<Gate> {
        match self {
            Gate::PauliExp { axis, angle } => Ok(Gate::PauliExp { axis: *axis, angle: angle.negated() }),
            Gate::ParallelPauliExp { axes, angle } => Ok(Gate::ParallelPauliExp {
                axes: axes.clone(),
                angle: angle.negated(),
            }),
            Gate::Cnot { .. } | Gate::R { .. } => Ok(self.clone()),
            Gate::Q { qubit } => Err(Error::Unsupported(format!(
                "no inverse gate for Q on qubit {qubit}; apply Q twice instead"
            ))),
            Gate::ControlledPauli { control, pauli } => {
                if pauli.phase_exp() % 2 == 0 {
                    Ok(Gate::ControlledPauli { control: *control, pauli: *pauli })
                } else {
                    Ok(Gate::ControlledPauli { control: *control, pauli: pauli.adjoint() })
                }
            }
            Gate::MeasureZ { .. } => {
                Err(Error::Unsupported("measurement has no inverse".into()))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub n_qubits: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Self { n_qubits, gates: Vec::new() }
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    pub fn extend(&mut self, other: &Circuit) {
        debug_assert_eq!(self.n_qubits, other.n_qubits);
        self.gates.extend(other.gates.iter().cloned());
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Structural checks: widths, qubit ranges, commuting parallel factors,
    /// Hermitian controlled Paulis that do not touch their own control.
    pub fn validate(&self) -> Result<()> {
        let n = self.n_qubits;
        let check_idx = |q: usize| {
            if q >= n {
                Err(Error::QubitOutOfRange { index: q, n_qubits: n })
            } else {
                Ok(())
            }
        };
        let check_op = |op: &PauliOperator| {
            if op.n_qubits() != n {
                Err(Error::WidthMismatch { expected: n, got: op.n_qubits() })
            } else {
                Ok(())
            }
        };
        for gate in &self.gates {
            match gate {
                Gate::PauliExp { axis, .. } => {
                    check_op(axis)?;
                    if axis.phase_exp() % 2 == 1 {
                        return Err(Error::Unsupported(
                            "exponential axis must be Hermitian (sign, not i)".into(),
                        ));
                    }
                }
                Gate::ParallelPauliExp { axes, .. } => {
                    if axes.is_empty() {
                        return Err(Error::Unsupported("empty parallel exponential".into()));
                    }
                    for a in axes {
                        check_op(a)?;
                        if a.phase_exp() % 2 == 1 {
                            return Err(Error::Unsupported(
                                "exponential axis must be Hermitian (sign, not i)".into(),
                            ));
                        }
                    }
                    for i in 0..axes.len() {
                        for j in (i + 1)..axes.len() {
                            if !axes[i].commutes_with(&axes[j])? {
                                return Err(Error::Unsupported(format!(
                                    "parallel factors {} and {} do not commute",
                                    axes[i], axes[j]
                                )));
                            }
                        }
                    }
                }
                Gate::Cnot { control, target } => {
                    check_idx(*control)?;
                    check_idx(*target)?;
                    if control == target {
                        return Err(Error::QubitOutOfRange { index: *target, n_qubits: n });
                    }
                }
                Gate::R { qubit } | Gate::Q { qubit } => check_idx(*qubit)?,
                Gate::ControlledPauli { control, pauli } => {
                    check_idx(*control)?;
                    check_op(pauli)?;
                    if pauli.phase_exp() % 2 == 1 {
                        return Err(Error::Unsupported(
                            "controlled Pauli must be Hermitian".into(),
                        ));
                    }
                    if pauli.support().contains(control) {
                        return Err(Error::Unsupported(format!(
                            "controlled Pauli {pauli} acts on its own control {control}"
                        )));
                    }
                }
                Gate::MeasureZ { qubits } => {
                    if qubits.is_empty() {
                        return Err(Error::Unsupported("empty measurement".into()));
                    }
                    let mut seen = std::collections::HashSet::new();
                    for &q in qubits {
                        check_idx(q)?;
                        if !seen.insert(q) {
                            return Err(Error::Unsupported(format!(
                                "qubit {q} measured twice in one step"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut n_qubits: Option<usize> = None;
        let mut gates = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let stamp = |msg: String| Error::Parse(format!("line {}: {msg}", lineno + 1));
            if let Some(v) = line.strip_prefix("n=").or_else(|| line.strip_prefix("n =")) {
                n_qubits = Some(
                    v.trim()
                        .parse()
                        .map_err(|_| stamp(format!("bad qubit count {v:?}")))?,
                );
                continue;
            }
            let mut parts = line.split_whitespace();
            let kind = parts.next().unwrap();
            let rest: Vec<&str> = parts.collect();
            let gate = match kind {
                "pexp" => {
                    let [op, ang] = rest.as_slice() else {
                        return Err(stamp("pexp needs <pauli> <angle>".into()));
                    };
                    Gate::PauliExp {
                        axis: op.parse().map_err(|e| stamp(format!("{e}")))?,
                        angle: Angle::parse(ang).map_err(|e| stamp(format!("{e}")))?,
                    }
                }
                "parexp" => {
                    let [ops, ang] = rest.as_slice() else {
                        return Err(stamp("parexp needs <p1,p2,...> <angle>".into()));
                    };
                    let axes = ops
                        .split(',')
                        .map(|s| s.parse())
                        .collect::<Result<Vec<PauliOperator>>>()
                        .map_err(|e| stamp(format!("{e}")))?;
                    Gate::ParallelPauliExp {
                        axes,
                        angle: Angle::parse(ang).map_err(|e| stamp(format!("{e}")))?,
                    }
                }
                "cnot" => {
                    let [c, t] = rest.as_slice() else {
                        return Err(stamp("cnot needs <control> <target>".into()));
                    };
                    Gate::Cnot {
                        control: c.parse().map_err(|_| stamp(format!("bad index {c:?}")))?,
                        target: t.parse().map_err(|_| stamp(format!("bad index {t:?}")))?,
                    }
                }
                "cliff" => {
                    let [name, q] = rest.as_slice() else {
                        return Err(stamp("cliff needs <R|Q> <qubit>".into()));
                    };
                    let qubit = q.parse().map_err(|_| stamp(format!("bad index {q:?}")))?;
                    match *name {
                        "R" => Gate::R { qubit },
                        "Q" => Gate::Q { qubit },
                        other => return Err(stamp(format!("unknown single-qubit gate {other:?}"))),
                    }
                }
                "cpauli" => {
                    let [c, op] = rest.as_slice() else {
                        return Err(stamp("cpauli needs <control> <pauli>".into()));
                    };
                    Gate::ControlledPauli {
                        control: c.parse().map_err(|_| stamp(format!("bad index {c:?}")))?,
                        pauli: op.parse().map_err(|e| stamp(format!("{e}")))?,
                    }
                }
                "measz" => {
                    let [qs] = rest.as_slice() else {
                        return Err(stamp("measz needs <q1,q2,...>".into()));
                    };
                    let qubits = qs
                        .split(',')
                        .map(|s| s.parse::<usize>().map_err(|_| stamp(format!("bad index {s:?}"))))
                        .collect::<Result<Vec<usize>>>()?;
                    Gate::MeasureZ { qubits }
                }
                other => return Err(stamp(format!("unknown gate {other:?}"))),
            };
            gates.push(gate);
        }
        let n_qubits = n_qubits.ok_or_else(|| Error::Parse("missing n= header".into()))?;
        let circuit = Circuit { n_qubits, gates };
        circuit.validate()?;
        Ok(circuit)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n_qubits)?;
        for gate in &self.gates {
            match gate {
                Gate::PauliExp { axis, angle } => writeln!(f, "pexp {axis} {angle}")?,
                Gate::ParallelPauliExp { axes, angle } => {
                    let ops: Vec<String> = axes.iter().map(|a| a.to_string()).collect();
                    writeln!(f, "parexp {} {angle}", ops.join(","))?;
                }
                Gate::Cnot { control, target } => writeln!(f, "cnot {control} {target}")?,
                Gate::R { qubit } => writeln!(f, "cliff R {qubit}")?,
                Gate::Q { qubit } => writeln!(f, "cliff Q {qubit}")?,
                Gate::ControlledPauli { control, pauli } => {
                    writeln!(f, "cpauli {control} {pauli}")?
                }
                Gate::MeasureZ { qubits } => {
                    let qs: Vec<String> = qubits.iter().map(|q| q.to_string()).collect();
                    writeln!(f, "measz {}", qs.join(","))?;
                }
            }
        }
        Ok(())
    }
}

/// Weight of the interaction each gate turns on, for checking that a
/// synthesized circuit never needs more than two-body couplings.
pub fn interaction_weights(circuit: &Circuit) -> Vec<u32> {
    circuit
        .gates
        .iter()
        .map(|g| match g {
            Gate::PauliExp { axis, .. } => axis.weight(),
            Gate::ParallelPauliExp { axes, .. } => {
                axes.iter().map(|a| a.weight()).max().unwrap_or(0)
            }
            Gate::Cnot { .. } => 2,
            Gate::R { .. } | Gate::Q { .. } => 1,
            Gate::ControlledPauli { pauli, .. } => 1 + pauli.weight(),
            Gate::MeasureZ { .. } => 1,
        })
        .collect()
}

pub fn max_interaction_weight(circuit: &Circuit) -> u32 {
    interaction_weights(circuit).into_iter().max().unwrap_or(0)
}
